"""Attributive functor rewriting.

Functor units (semantically empty predicates such as "tipo di" or
"caratterizzato da") are left in the frame by the translator, linked by
triples whose ``role`` is ``attribution`` (edge into the functor) or
``content`` (edge out of it). This module groups those triples into chains,
raises each functor's content onto its parent bottom-up and deletes the
functor, recording a level-by-level trace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .model import Relation, SemanticFrame, Triple, Unit

log = logging.getLogger(__name__)

CHAIN_ROLES = ("attribution", "content")
ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X")


@dataclass
class AttributionChain:
    """Triples linking a lemma to content through one or more functors.

    Levels are ordered by the source token of their object, which follows the
    gloss left to right.
    """

    levels: list[Triple]
    functors: dict[Unit, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def root(self) -> Triple:
        return self.levels[0]


@dataclass
class TraceStep:
    action: str
    slots: list[Triple | None]

    @property
    def count(self) -> int:
        return sum(1 for s in self.slots if s is not None)


@dataclass
class RewriteResult:
    frame: SemanticFrame
    traces: list[list[TraceStep]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


def _level_key(t: Triple):
    return (t.node if t.node is not None else 10**6, str(t.subject), str(t.object))


def detect_functors(frame: SemanticFrame, families=None) -> list[AttributionChain]:
    """Maximal chains of attribution/content triples that share functor units.

    ``families`` restricts detection to the named functor families; by default
    every functor recorded on the frame counts.
    """
    names = None if families is None else {getattr(f, "name", f) for f in families}
    functors = {u: fam for u, fam in frame.functors.items() if names is None or fam in names}
    if not functors:
        return []
    links = [t for t in frame.triples if t.role in CHAIN_ROLES
             and (t.subject in functors or t.object in functors)]
    # union-find over functor units
    parent = {u: u for u in functors}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for t in links:
        if t.subject in functors and t.object in functors:
            parent[find(t.subject)] = find(t.object)
    groups: dict[Unit, list[Triple]] = {}
    for t in links:
        u = t.subject if t.subject in functors else t.object
        groups.setdefault(find(u), []).append(t)
    chains = []
    for members in groups.values():
        levels = sorted(members, key=_level_key)
        used = {u for t in levels for u in (t.subject, t.object) if u in functors}
        chains.append(AttributionChain(levels, {u: functors[u] for u in used}))
    chains.sort(key=lambda c: _level_key(c.root))
    return chains


def _merge(incoming: Relation, content: Relation) -> Relation:
    """Raised relation: the incoming yield, keeping content modifiers other than ATTRIBUTION."""
    return incoming.with_modifiers(add=content.modifiers - {"ATTRIBUTION"})


class _ChainRewrite:
    def __init__(self, frame: SemanticFrame, chain: AttributionChain, reverse_siblings: bool):
        self.frame = frame
        self.chain = chain
        self.slots: list[Triple | None] = list(chain.levels)
        self.steps: list[TraceStep] = [TraceStep("initial", list(self.slots))]
        self.reverse = reverse_siblings

    def snapshot(self, action: str, compact: bool = False):
        if compact:
            live = [s for s in self.slots if s is not None]
            self.slots = live + [None] * (len(self.slots) - len(live))
        self.steps.append(TraceStep(action, list(self.slots)))

    def slot_of(self, t: Triple) -> int | None:
        for i, s in enumerate(self.slots):
            if s is not None and s.key == t.key:
                return i
        return None

    def replace(self, old: Triple, new: Triple | None):
        self.frame.triples = [x for x in self.frame.triples if x.key != old.key]
        if new is not None and new.key not in self.frame.keys():
            self.frame.triples.append(new)
        i = self.slot_of(old)
        if i is not None:
            self.slots[i] = new

    def order(self) -> list[Unit]:
        units = list(self.chain.functors)
        depth = self.frame.depths
        node = {t.object: t.node or 0 for t in self.chain.levels}
        sign = -1 if self.reverse else 1
        return sorted(units, key=lambda u: (-depth.get(u, 0), sign * node.get(u, 0), str(u)))

    def run(self):
        keys = self.frame.keys()
        missing = [t for t in self.chain.levels if t.key not in keys]
        if missing:
            raise LookupError("chain references deleted triple(s): " + "; ".join(t.short() for t in missing))
        for f in self.order():
            self.raise_functor(f)

    def raise_functor(self, f: Unit):
        incoming = [t for t in self.frame.triples if t.object == f and t.role in CHAIN_ROLES]
        content = [t for t in self.frame.triples if t.subject == f and t.role == "content"]
        if len(incoming) != 1:
            raise LookupError(f"functor {f} has {len(incoming)} incoming triples")
        if not content:
            raise LookupError(f"functor {f} has no content triple")
        inc = incoming[0]
        top = inc.subject not in self.chain.functors
        raised = []
        for c in content:
            rel = _merge(inc.relation, c.relation)
            if top:
                rel = rel.with_modifiers(remove={"ATTRIBUTION"})
            raised.append(inc.replace(relation=rel, object=c.object, node=c.node))
        # the incoming slot takes the first raised triple, further ones are appended
        i = self.slot_of(inc)
        self.replace(inc, raised[0])
        for extra in raised[1:]:
            if extra.key not in self.frame.keys():
                self.frame.triples.append(extra)
                if i is not None:
                    self.slots.insert(i + 1, extra)
        for c in content:
            self.replace(c, None)
        self.snapshot("raising and deletion")

        wrapped = [t for t in raised if "ATTRIBUTION" in t.relation.modifiers]
        if wrapped:
            for t in wrapped:
                self.replace(t, t.replace(relation=t.relation.with_modifiers(remove={"ATTRIBUTION"})))
            self.snapshot("deletion")

        moved = [t for t in self.frame.triples if t.subject == f]
        if moved:
            for t in moved:
                new = t.replace(subject=inc.subject, anchor=inc.anchor)
                self.replace(t, new)
            self.snapshot("raising", compact=True)


def raise_and_delete(frame: SemanticFrame, chains: list[AttributionChain], *,
                     reverse_siblings: bool = False) -> RewriteResult:
    """Raise every functor's content to its parent and delete the functor.

    Functors are processed deepest first, then left to right (or right to left
    with ``reverse_siblings``). A chain whose triples are no longer in the
    frame is skipped with a diagnostic and leaves the frame untouched.
    """
    out = frame.copy()
    result = RewriteResult(out)
    for chain in chains:
        work = out.copy()
        rw = _ChainRewrite(work, chain, reverse_siblings)
        try:
            rw.run()
        except LookupError as exc:
            msg = f"{frame.meaning}: functor chain skipped: {exc}"
            result.diagnostics.append(msg)
            out.warnings.append(msg)
            log.warning(msg)
            continue
        roots = {chain.root.subject}
        work.triples = [t for t in work.triples if not (t.role == "quantifier" and t.subject in roots)]
        for u in chain.functors:
            work.functors.pop(u, None)
        out.triples = work.triples
        out.functors = work.functors
        result.traces.append(rw.steps)
    return result


def mark_relative_value(frame: SemanticFrame, markers) -> SemanticFrame:
    """Flag triples qualified by a relative-value word with the RELATIVE modifier.

    For ``HAS_QUALITY(x; marker)`` the marker triple stays as it is and every
    triple whose object is ``x`` gains RELATIVE.
    """
    out = frame.copy()
    markers = set(markers)
    qualified = []
    for t in out.triples:
        if t.object.kind == "WORD" and t.object.lemma in markers and "HAS_QUALITY" in t.relation.kinds:
            if t.subject == out.unit:
                out.warnings.append(f"{frame.meaning}: relative-value marker '{t.object.lemma}' "
                                    "qualifies the gloss head, left unchanged")
                continue
            qualified.append(t.subject)
    if not qualified:
        return out
    new = []
    for t in out.triples:
        if t.object in qualified and "RELATIVE" not in t.relation.modifiers:
            t = t.replace(relation=t.relation.with_modifiers(add={"RELATIVE"}))
        if t.key not in {x.key for x in new}:
            new.append(t)
    out.triples = new
    return out


def _label(t: Triple) -> str:
    def name(u):
        return u.lemma if u.kind in ("WORD", "HEAD") else str(u)
    return f"{t.relation}({name(t.subject)}, {name(t.object)})"


def format_trace(steps: list[TraceStep]) -> str:
    """Render rewrite steps as numbered level blocks separated by blank lines."""
    blocks = []
    for step in steps:
        lines = [f"# {step.action} ({step.count})"]
        empty_marked = False
        for i, slot in enumerate(step.slots):
            num = ROMAN[i] if i < len(ROMAN) else str(i + 1)
            if slot is not None:
                lines.append(f"{num}\t{_label(slot)}")
            elif not empty_marked and step.action != "initial":
                lines.append(f"{num}\t-- {step.action}")
                empty_marked = True
            else:
                lines.append(f"{num}\t--")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
