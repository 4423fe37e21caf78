"""The semantic net: frames indexed by meaning plus derived triples, and the
derivation passes that enrich it (taxonomy closure, inversion, inheritance,
agent inference)."""

from __future__ import annotations

import fnmatch
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .model import INVERSES, MeaningId, ModelError, Relation, SemanticFrame, Triple, Unit, parse_tags

DEFAULT_DEPTH_LIMIT = 16
TOKEN_OF = Relation.of("TOKEN_OF")
TAXONOMY_KINDS = frozenset({"TOKEN_OF", "HAS_TOKEN"})


class NetError(ModelError):
    pass


class NotFound(NetError, KeyError):
    pass


@dataclass
class SemanticNet:
    frames: dict[MeaningId, SemanticFrame] = field(default_factory=dict)
    lemma_index: dict[str, set] = field(default_factory=dict)
    derived: list[Triple] = field(default_factory=list)

    def triples(self) -> list[Triple]:
        out = [t for mid in sorted(self.frames) for t in self.frames[mid].triples]
        return out + self.derived

    def keys(self) -> set:
        return {t.key for t in self.triples()}

    def copy(self) -> SemanticNet:
        return SemanticNet(dict(self.frames), {k: set(v) for k, v in self.lemma_index.items()},
                           list(self.derived))

    def add_derived(self, triples, keys: set | None = None) -> int:
        """Append triples whose key is new to the net; returns how many were added."""
        keys = self.keys() if keys is None else keys
        added = 0
        for t in triples:
            if t.key in keys or t.subject == t.object:
                continue
            keys.add(t.key)
            self.derived.append(t)
            added += 1
        return added

    def __len__(self) -> int:
        return len(self.frames)


def build_net(frames) -> SemanticNet:
    net = SemanticNet()
    for frame in frames:
        if frame.meaning in net.frames:
            other = net.frames[frame.meaning]
            raise NetError(f"duplicate meaning id {frame.meaning}: frames '{other.lemma}' and '{frame.lemma}'")
        net.frames[frame.meaning] = frame
        net.lemma_index.setdefault(frame.lemma, set()).add(frame.meaning)
    net.frames = dict(sorted(net.frames.items()))
    return net


# -- taxonomy ---------------------------------------------------------------

def _is_plain_token_of(t: Triple) -> bool:
    return t.relation == TOKEN_OF and t.object.kind == "WORD" and t.subject.kind == "WORD"


def token_edges(triples) -> dict[Unit, list[Triple]]:
    edges: dict[Unit, list[Triple]] = {}
    for t in triples:
        if _is_plain_token_of(t):
            edges.setdefault(t.subject, []).append(t)
    return edges


def _closure_from(start: Unit, edges, depth_limit: int) -> list[tuple[Unit, Triple]]:
    """Breadth-first TOKEN_OF targets from ``start``; each unit is visited once."""
    seen = {start}
    out = []
    queue = deque([(start, 0)])
    while queue:
        unit, depth = queue.popleft()
        if depth >= depth_limit:
            continue
        for t in edges.get(unit, []):
            if t.object in seen:
                continue
            seen.add(t.object)
            out.append((t.object, t))
            queue.append((t.object, depth + 1))
    return out


def _start_units(net: SemanticNet, lemma: str) -> list[Unit]:
    if lemma not in net.lemma_index:
        raise NotFound(f"lemma '{lemma}' not in net")
    return sorted({net.frames[m].unit for m in net.lemma_index[lemma]}, key=str)


def hypernym_chain(net: SemanticNet, start: str, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> list[Triple]:
    """TOKEN_OF closure from a lemma, breadth first, as DERIVED_TAXONOMY triples."""
    edges = token_edges(t for t in net.triples() if t.provenance in ("DIRECT", "RAISED"))
    out = []
    for unit in _start_units(net, start):
        root_anchor = min(t.anchor for t in edges.get(unit, [])) if unit in edges else MeaningId(0)
        for target, via in _closure_from(unit, edges, depth_limit):
            out.append(Triple(unit, TOKEN_OF, target, root_anchor, "DERIVED_TAXONOMY", via.node))
    return out


# -- passes -----------------------------------------------------------------

def invert_relations(net: SemanticNet) -> SemanticNet:
    """Add the inverse of every invertible triple, keeping its modifiers and anchor."""
    out = net.copy()
    new = []
    for t in net.triples():
        if t.relation.ambiguous or t.object.is_tag:
            continue
        inv = INVERSES.get(t.relation.kind)
        if inv is None:
            continue
        new.append(Triple(t.object, t.relation.with_kinds(inv), t.subject, t.anchor, "DERIVED_INVERSE", t.node))
    out.add_derived(new)
    return out


def inherit_attributes(net: SemanticNet, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> SemanticNet:
    """Taxonomy closure, then copy each type's non-taxonomic triples onto its tokens.

    TOKEN_OF and HAS_TOKEN are not copied: a type's own hypernyms come from the
    closure, and its other tokens are not tokens of its tokens.
    """
    out = net.copy()
    keys = out.keys()
    edges = token_edges(net.triples())
    closure = []
    for unit in sorted(edges, key=str):
        anchor = min(t.anchor for t in edges[unit])
        for target, via in _closure_from(unit, edges, depth_limit):
            closure.append(Triple(unit, TOKEN_OF, target, anchor, "DERIVED_TAXONOMY", via.node))
    out.add_derived(closure, keys)

    by_subject: dict[Unit, list[Triple]] = {}
    for t in out.triples():
        if not t.relation.kinds & TAXONOMY_KINDS:
            by_subject.setdefault(t.subject, []).append(t)
    inherited = []
    for link in [t for t in out.triples() if _is_plain_token_of(t)]:
        for t in by_subject.get(link.object, []):
            inherited.append(t.replace(subject=link.subject, anchor=link.anchor,
                                       provenance="DERIVED_TAXONOMY", role=None))
    out.add_derived(inherited, keys)
    return out


def _frames_of(triples) -> dict[int, list[Triple]]:
    groups: dict[int, list[Triple]] = {}
    for t in triples:
        groups.setdefault(t.anchor.entry, []).append(t)
    return groups


def _infer_round(triples, tokens_of) -> list[Triple]:
    agnt, hasobj = Relation.of("AGNT_OF"), Relation.of("HAS_OBJ")
    p_side = []  # (entry, AGNT_OF triple, o)
    q_side = []  # (entry, v2, v1, o)
    for entry, ts in sorted(_frames_of(triples).items()):
        objs = {}
        for t in ts:
            if t.relation == hasobj:
                objs.setdefault(t.subject, set()).add(t.object)
        for t in ts:
            if t.relation == agnt:
                for o in objs.get(t.object, ()):
                    p_side.append((entry, t, o))
            if t.relation == TOKEN_OF:
                for o in objs.get(t.subject, ()):
                    q_side.append((entry, t.subject, t.object, o))
    new = []
    for p_entry, p, o in p_side:
        for q_entry, v2, v1, o2 in q_side:
            if p_entry == q_entry or v1 != p.object or o2 != o:
                continue
            new.append(Triple(p.subject, agnt, v2, p.anchor, "DERIVED_INFERENCE", p.node))
            for x in sorted(tokens_of.get(p.subject, ()), key=str):
                new.append(Triple(x, agnt, v2, p.anchor, "DERIVED_INFERENCE", p.node))
    return new


def infer_roles(net: SemanticNet, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> SemanticNet:
    """If AGNT_OF(n; v1), HAS_OBJ(v1; o) hold in one frame and TOKEN_OF(v2; v1),
    HAS_OBJ(v2; o) in another, add AGNT_OF(n; v2); tokens of n get it too.

    Inferred triples join the frame of their AGNT_OF premise, so rounds repeat
    until nothing new is added.
    """
    out = net.copy()
    edges = token_edges(net.triples())
    tokens_of: dict[Unit, set] = {}
    for unit in edges:
        for target, _ in _closure_from(unit, edges, depth_limit):
            tokens_of.setdefault(target, set()).add(unit)
    keys = out.keys()
    while out.add_derived(_infer_round(out.triples(), tokens_of), keys):
        pass
    return out


PASSES = {
    "invert": invert_relations,
    "inherit": inherit_attributes,
    "infer": infer_roles,
}
DEFAULT_PASSES = ("invert", "inherit", "infer", "invert")


def derive(net: SemanticNet, passes=DEFAULT_PASSES, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> SemanticNet:
    for name in passes:
        if name not in PASSES:
            raise NetError(f"unknown pass '{name}' (known: {', '.join(PASSES)})")
        fn = PASSES[name]
        net = fn(net) if name == "invert" else fn(net, depth_limit)
    return net


# -- persistence ------------------------------------------------------------

def sorted_triples(triples) -> list[Triple]:
    return sorted(triples, key=Triple.sort_key)


def dumps_net(net: SemanticNet) -> str:
    lines = []
    for mid, f in net.frames.items():
        lines.append("\t".join(["#FRAME", str(mid), f.lemma, f.category, ",".join(f.tags) or "-"]))
    lines.extend(t.to_line() for t in sorted_triples(net.triples()))
    return "\n".join(lines) + "\n"


def save_net(net: SemanticNet, path) -> None:
    Path(path).write_text(dumps_net(net), encoding="utf-8")


def loads_net(text: str, source: str = "<net>") -> SemanticNet:
    """Rebuild a net from its file form; triples return to their frames by anchor entry."""
    frames: dict[int, SemanticFrame] = {}
    loose = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            if line.startswith("#FRAME"):
                _, mid, lemma, cat, tags = line.split("\t")
                m = MeaningId.parse(mid)
                frames[m.entry] = SemanticFrame(lemma, m, cat, () if tags == "-" else parse_tags(tags))
            else:
                loose.append(Triple.from_line(line))
        except (ValueError, ModelError) as exc:
            raise NetError(f"{source}:{lineno}: {exc}") from None
    net = build_net(frames.values())
    for t in loose:
        frame = frames.get(t.anchor.entry)
        if t.provenance in ("DIRECT", "RAISED") and frame is not None:
            frame.triples.append(t)
        else:
            net.derived.append(t)
    return net


def load_net(path) -> SemanticNet:
    path = Path(path)
    if not path.is_file():
        raise NetError(f"net file not found: {path}")
    return loads_net(path.read_text(encoding="utf-8"), str(path))


# -- query and export -------------------------------------------------------

def _unit_matches(pattern: str, unit: Unit) -> bool:
    return pattern == "*" or fnmatch.fnmatchcase(str(unit), pattern) or fnmatch.fnmatchcase(unit.lemma, pattern)


def _relation_matches(pattern: str, rel: Relation) -> bool:
    if pattern == "*":
        return True
    names = [str(rel), rel.name, *rel.kinds]
    return any(fnmatch.fnmatchcase(n, pattern) for n in names)


def parse_pattern(text: str) -> tuple[str, str, str]:
    parts = text.split() if "/" not in text else text.split("/")
    parts = [p.strip() or "*" for p in parts]
    if len(parts) != 3:
        raise NetError(f"query pattern needs subject, relation and object, got {text!r}")
    return parts[0], parts[1], parts[2]


def query(net: SemanticNet, subject: str = "*", relation: str = "*", obj: str = "*") -> list[Triple]:
    return sorted_triples(
        t for t in net.triples()
        if _unit_matches(subject, t.subject) and _relation_matches(relation, t.relation)
        and _unit_matches(obj, t.object)
    )


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(net: SemanticNet) -> str:
    triples = sorted_triples(net.triples())
    units = sorted({str(u) for t in triples for u in (t.subject, t.object)})
    lines = ["digraph semantic_net {"]
    lines.extend(f"  {_dot_quote(u)};" for u in units)
    for t in triples:
        style = "" if t.provenance in ("DIRECT", "RAISED") else ", style=dashed"
        lines.append(f"  {_dot_quote(str(t.subject))} -> {_dot_quote(str(t.object))} "
                     f"[label={_dot_quote(str(t.relation))}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
