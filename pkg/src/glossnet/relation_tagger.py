"""Dependency tree + node tags -> semantic frame.

Each head/dependent edge of the gloss tree is mapped to zero or more relation
triples. Dependents of the gloss head are attributed to the glossed lemma
itself, except when the head is an attributive functor (those are rewritten
later by the functor engine) or the head of an adjective's relative
paraphrase.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from .entity_tagger import CATEGORY_DEFAULTS
from .gloss import DependencyTree, conjuncts, gloss_head
from .model import Relation, SemanticFrame, TagSequence, Triple, Unit

log = logging.getLogger(__name__)

AMBIGUOUS_CON = ("HAS_INSTRUMENT", "HAS_MANNER", "RELATION_TO")
AMBIGUOUS_PER = ("HAS_FUNCTION", "HAS_CAUSE", "RELATION_TO")
PREPOSITION_WORDS = frozenset({"di", "a", "da", "in", "con", "per", "su", "che"})
DEFAULT_PREPOSITIONS = frozenset({"con", "per", "di", "a", "da", "in"})


def tag_preposition(prep: str, head_category: str, dependent_tag: TagSequence | None, *,
                    head_lemma: str | None = None, head_tags: TagSequence | None = None,
                    dependent_category: str | None = None, infinitive: bool = False,
                    rules=None, warnings: list | None = None) -> Relation:
    """Relation expressed by a preposition, or an ambiguous candidate set."""
    dep = set(dependent_tag or ())
    words = rules.word_list if rules is not None else (lambda name: frozenset())
    inventory = words("preposition") or DEFAULT_PREPOSITIONS

    if prep not in inventory:
        if warnings is not None:
            warnings.append(f"preposition '{prep}' outside inventory, tagged RELATION_TO")
        return Relation.of("RELATION_TO")

    if prep == "con":
        if head_category in ("NOUN", "PRON"):
            return Relation.of("HAS_PART")
        if "INSTRUMENT" in dep:
            return Relation.of("HAS_INSTRUMENT")
        if dep & {"MANNER", "QUALITY"}:
            return Relation.of("HAS_MANNER")
        if "PLACE" in dep:
            return Relation.of("HAS_SPACE")
        return Relation.of(*AMBIGUOUS_CON)

    if prep == "per":
        if infinitive or "ACTION" in dep:
            return Relation.of("HAS_FUNCTION")
        if "CAUSE" in dep:
            return Relation.of("HAS_CAUSE")
        return Relation.of(*AMBIGUOUS_PER)

    if prep == "di":
        if head_lemma in words("partword"):
            return Relation.of("PART_OF")
        if head_lemma in words("denomination"):
            return Relation.of("TOKEN_OF")
        activity = head_lemma in words("activity") or bool(set(head_tags or ()) & {"ACTIVITY", "ACT_OF"})
        if activity and (infinitive or dependent_category == "VERB"):
            return Relation.of("TOKEN_OF")
        return Relation.of("HAS_SPEC")

    if prep == "in":
        if "PLACE" in dep:
            return Relation.of("HAS_PLACE")
        if dep & {"QUALITY", "DIMENSION"}:
            return Relation.of("HAS_QUALITY")
        return Relation.of("RELATION_TO")

    # a, da
    if "PLACE" in dep:
        return Relation.of("HAS_PLACE")
    return Relation.of("RELATION_TO")


def disambiguate_change_verb(verb_tags: TagSequence, dependent_tag: TagSequence | None) -> TagSequence:
    """Resolve a CHANGE verb to motion (PLACE) or becoming (QUALITY) from its dependent."""
    tags = tuple(verb_tags)
    if "CHANGE" not in tags or "PLACE" in tags or "QUALITY" in tags or not dependent_tag:
        return tags
    if "PLACE" in dependent_tag:
        return tags + ("PLACE",)
    if "QUALITY" in dependent_tag or "DIMENSION" in dependent_tag:
        return tags + ("QUALITY",)
    return tags


@dataclass(frozen=True)
class FunctorMatch:
    family: object
    first: int
    absorbed: frozenset
    content: int
    lemma: str
    category: str


def find_functors(tree: DependencyTree, families) -> dict[int, FunctorMatch]:
    """Multiword functor occurrences, keyed by the index of their first token.

    A pattern matches a head path t1 -> t2 -> ... whose lemmas spell it; the
    functor's content is the PMOD/OBJ dependent of the last token.
    """
    found: dict[int, FunctorMatch] = {}
    taken: set[int] = set()
    for node in tree.nodes:
        if node.index in taken:
            continue
        for fam in families:
            match = None
            for pattern in sorted(fam.patterns, key=len, reverse=True):
                path = _match_path(tree, node, pattern)
                if path is None:
                    continue
                content = _content_of(tree, path)
                if content is None:
                    continue
                key = next((tree.node(i) for i in path if tree.node(i).lemma not in PREPOSITION_WORDS),
                           tree.node(path[0]))
                match = FunctorMatch(fam, path[0], frozenset(path[1:]), content, key.lemma, key.category)
                break
            if match:
                found[node.index] = match
                taken.update(match.absorbed)
                break
    return found


def _match_path(tree, node, pattern):
    if node.lemma != pattern[0]:
        return None
    path = [node.index]
    cur = node
    for word in pattern[1:]:
        nxt = next((c for c in tree.children(cur.index) if c.lemma == word), None)
        if nxt is None:
            return None
        path.append(nxt.index)
        cur = nxt
    return path


def _content_of(tree, path):
    last = path[-1]
    for c in tree.children(last):
        if c.index not in path and c.dep_label in ("PMOD", "OBJ"):
            return c.index
    for c in tree.children(last):
        if c.category == "PREP" and c.index not in path:
            for g in tree.children(c.index):
                if g.dep_label == "PMOD":
                    return g.index
    return None


class _Translator:
    def __init__(self, entry, tags, rules, inventory, entry_tags, warnings):
        self.entry = entry
        self.tree: DependencyTree = entry.gloss
        self.tags = tags
        self.rules = rules
        self.inventory = inventory
        self.warnings = warnings
        self.lemma = Unit.word(entry.lemma, entry.category)
        self.frame = SemanticFrame(entry.lemma, entry.id.with_sub(0), entry.category, tuple(entry_tags))
        self.functors = find_functors(self.tree, rules.functors)
        self.absorbed = set().union(*(m.absorbed for m in self.functors.values())) if self.functors else set()
        self.content_of = {m.content: f for f, m in self.functors.items()}
        self.head = gloss_head(self.tree)
        self.mode = self._head_mode()
        self.retarget = self.mode in ("terminal", "part", "plain")

    # -- units ------------------------------------------------------------
    def _head_mode(self) -> str:
        h = self.head
        if self.entry.lemma in self.inventory:
            return "terminal"
        if h.index in self.functors:
            return "functor"
        if self.entry.category == "ADJ":
            if h.category == "VERB":
                return "adj_verb"
            if h.category == "ADJ":
                return "adj"
        if h.lemma in self.rules.word_list("partword") and any(
                c.lemma == "di" for c in self.tree.children(h.index)):
            return "part"
        return "plain"

    def unit(self, idx: int) -> Unit:
        node = self.tree.node(idx)
        if node.dep_label == "TRACE":
            return self.unit(node.antecedent)
        if idx == self.head.index and self.retarget:
            return self.lemma
        if idx in self.functors:
            m = self.functors[idx]
            return Unit.word(m.lemma, m.category)
        if (self.mode == "adj_verb" and node.dep_label == "SUBJ" and node.head == self.head.index
                and node.category == "PRON"):
            return Unit.head()
        return Unit.word(node.lemma, node.category)

    def anchor_sub(self, idx: int) -> int:
        node = self.tree.node(idx)
        if node.dep_label == "TRACE":
            return self.anchor_sub(node.antecedent)
        if self.unit(idx) in (self.lemma, Unit.head()):
            return 0
        return idx

    def node_tags(self, idx: int) -> TagSequence | None:
        return self.tags.get(idx)

    def effective_tags(self, idx: int) -> TagSequence:
        node = self.tree.node(idx)
        return self.tags.get(idx) or CATEGORY_DEFAULTS.get(node.category, ())

    def negated(self, idx: int) -> bool:
        neg = self.rules.word_list("negation")
        return any(c.lemma in neg for c in self.tree.children(idx))

    # -- emission ---------------------------------------------------------
    def emit(self, subj_idx: int | None, rel: Relation, obj: Unit | int, node: int, role=None,
             subj_unit: Unit | None = None):
        subject = subj_unit if subj_unit is not None else self.unit(subj_idx)
        sub = 0 if subj_idx is None or subject in (self.lemma, Unit.head()) else self.anchor_sub(subj_idx)
        if isinstance(obj, int):
            if self.negated(obj):
                rel = rel.with_modifiers(add={"NEG"})
            obj = self.unit(obj)
        self.frame.add(Triple(subject, rel, obj, self.entry.id.with_sub(sub), "DIRECT", node, role))

    def emit_fan(self, subj_idx, rel, obj_idx, role=None):
        """Emit for the dependent and every conjunct coordinated with it."""
        for target in [self.tree.node(obj_idx), *conjuncts(self.tree, obj_idx)]:
            if target.category in ("CONJ",):
                continue
            self.emit(subj_idx, rel, target.index, target.index, role)

    # -- main walk --------------------------------------------------------
    def run(self) -> SemanticFrame:
        self.head_triples()
        self.tag_triples()
        seen = set()
        queue = deque([self.head.index])
        while queue:
            idx = queue.popleft()
            if idx in seen:
                continue
            seen.add(idx)
            for child in self.children_of(idx):
                self.edge(idx, child)
            if self.tree.node(idx).category == "VERB" and idx not in self.absorbed:
                self.verb_arguments(idx)
            for child in self.tree.children(idx):
                queue.append(child.index)
        self.frame.warnings.extend(self.warnings)
        return self.frame

    def children_of(self, idx: int):
        if idx in self.absorbed:
            return []
        kids = self.tree.children(idx)
        if idx in self.functors:
            for a in sorted(self.functors[idx].absorbed):
                kids.extend(self.tree.children(a))
            kids = [k for k in kids if k.index not in self.functors[idx].absorbed]
        return sorted(kids, key=lambda n: n.index)

    def head_triples(self):
        h = self.head
        tok = Relation.of("TOKEN_OF")
        if self.entry.category == "ADJ" or self.mode == "terminal":
            self.emit(None, tok, Unit.tag(self.frame.tags or ("THING",)), h.index, subj_unit=self.lemma)
        if self.mode == "part":
            tags = tuple(t for t in (self.tags.get(h.index) or ("THING",)) if t != "PART_OF") or ("THING",)
            self.emit(None, tok, Unit.tag(tags), h.index, subj_unit=self.lemma)
        elif self.mode == "functor":
            self.attribution(None, h.index, subj_unit=self.lemma)
        elif self.mode == "adj":
            for n in [h, *conjuncts(self.tree, h.index)]:
                self.emit(None, Relation.of("HAS_QUALITY"), n.index, n.index, subj_unit=self.lemma)
        elif self.mode == "plain":
            for n in [h, *conjuncts(self.tree, h.index)]:
                obj = n.index if n.index != h.index else Unit.word(h.lemma, h.category)
                rel = tok.with_modifiers(add={"NEG"}) if self.negated(n.index) else tok
                self.emit(None, rel, obj, n.index, subj_unit=self.lemma)

    def tag_triples(self):
        for n in self.tree.nodes:
            if n.index in self.absorbed or n.index in self.functors or n.dep_label == "TRACE":
                continue
            if self.mode == "part" and n.index == self.head.index:
                continue
            tags = self.node_tags(n.index)
            if not tags:
                continue
            if n.category == "VERB":
                for dep in self._dependents_with_tags(n.index):
                    tags = disambiguate_change_verb(tags, dep)
            self.frame.add(Triple(Unit.word(n.lemma, n.category), Relation.of("HAS_TAG"), Unit.tag(tags),
                                  self.entry.id.with_sub(n.index), "DIRECT", n.index))

    def _dependents_with_tags(self, idx):
        out = []
        for c in self.tree.children(idx):
            targets = [c]
            if c.category == "PREP":
                targets = [g for g in self.tree.children(c.index) if g.dep_label == "PMOD"]
            for t in targets:
                if self.tags.get(t.index):
                    out.append(self.tags[t.index])
        return out

    # -- functors ---------------------------------------------------------
    def final_content(self, f_idx: int) -> int:
        seen = set()
        cur = self.functors[f_idx].content
        while cur in self.functors and cur not in seen:
            seen.add(cur)
            cur = self.functors[cur].content
        return cur

    def functor_kind(self, f_idx: int) -> str:
        m = self.functors[f_idx]
        c = self.final_content(f_idx)
        return m.family.relation_for(self.tree.node(c).category, self.tags.get(c))

    def register_functor(self, f_idx: int):
        u = self.unit(f_idx)
        self.frame.functors[u] = self.functors[f_idx].family.name
        self.frame.depths[u] = self.tree.depth(f_idx)

    def attribution(self, subj_idx, f_idx, subj_unit=None):
        """Edge from a regular unit into a functor, then the functor's content edge."""
        self.register_functor(f_idx)
        m = self.functors[f_idx]
        rel = Relation.of(self.functor_kind(f_idx), modifiers={"ATTRIBUTION", *m.family.modifiers})
        self.emit(subj_idx, rel, f_idx, f_idx, role="attribution", subj_unit=subj_unit)
        self.content_edge(f_idx, attributed=True)

    def content_edge(self, f_idx: int, attributed: bool):
        m = self.functors[f_idx]
        mods = set(m.family.modifiers)
        if not attributed:
            mods.add("ATTRIBUTION")
        rel = Relation.of(self.functor_kind(f_idx), modifiers=mods)
        content = m.content
        if content in self.functors:
            self.register_functor(content)
            self.emit(f_idx, rel.with_modifiers(remove={"ATTRIBUTION"}), content, content, role="content")
            self.content_edge(content, attributed=False)
        else:
            for target in [self.tree.node(content), *conjuncts(self.tree, content)]:
                self.emit(f_idx, rel, target.index, target.index, role="content")

    # -- edges ------------------------------------------------------------
    def edge(self, h: int, c):
        label = c.dep_label
        if label in ("COORD", "CONJ", "TRACE", "PMOD", "SUBJ", "OBJ"):
            # coordination fans out at the governing edge; arguments are handled per verb
            if label == "PMOD" and self.tree.node(h).category != "PREP" and c.index not in self.content_of:
                self.warnings.append(f"{self.entry.id}: node {c.index}: PMOD under non-preposition skipped")
            return
        if c.index in self.content_of and self.content_of[c.index] == h:
            return
        if label == "DET":
            if c.lemma in self.rules.word_list("quantifier"):
                self.emit(h, Relation.of("HAS_SPEC"), c.index, c.index, role="quantifier")
            return
        if label == "ADVMOD":
            if c.lemma in self.rules.word_list("negation"):
                return
            base = c.feature("base")
            if base:
                self.frame.bases[c.lemma] = base
            self.emit_fan(h, Relation.of("HAS_QUALITY"), c.index)
            return
        if c.index in self.functors:
            self.attribution(h, c.index)
            return
        if label == "PREP" or c.category == "PREP":
            self.preposition(h, c)
            return
        if label in ("MOD", "COMP"):
            self.emit_fan(h, Relation.of("HAS_QUALITY"), c.index)
            return
        if label == "REL":
            if not self._has_trace_to(c.index, h):
                self.emit(h, Relation.of("HAS_QUALITY"), c.index, c.index)
            return
        self.warnings.append(f"{self.entry.id}: node {c.index}: unknown dependency label {label}, skipped")

    def _has_trace_to(self, verb_idx: int, antecedent: int) -> bool:
        group = self.verb_group(verb_idx)
        return any(k.dep_label == "TRACE" and k.antecedent == antecedent
                   for v in group for k in self.tree.children(v))

    def preposition(self, h: int, p):
        head = self.tree.node(h)
        for prep in [p, *[q for q in conjuncts(self.tree, p.index) if q.category == "PREP"]]:
            for obj in self.tree.children(prep.index):
                if obj.dep_label != "PMOD":
                    continue
                if prep.lemma == "da" and head.category == "VERB" and head.has("passive"):
                    for target in [obj, *conjuncts(self.tree, obj.index)]:
                        self.agent(target.index, h, target.index)
                    continue
                if obj.index in self.functors:
                    self.attribution(h, obj.index)
                    continue
                rel = tag_preposition(
                    prep.lemma, head.category, self.tags.get(obj.index),
                    head_lemma=head.lemma, head_tags=self.tags.get(h),
                    dependent_category=obj.category, infinitive=obj.has("infinitive"),
                    rules=self.rules, warnings=self.warnings,
                )
                self.emit_fan(h, rel, obj.index)

    # -- verbs ------------------------------------------------------------
    def verb_group(self, v: int) -> list[int]:
        top = self.tree.node(v)
        while top.dep_label == "CONJ":
            parent = self.tree.node(top.head)
            top = self.tree.node(parent.head) if parent.dep_label == "COORD" else parent
        members = [top, *conjuncts(self.tree, top.index)]
        return [n.index for n in members if n.category == "VERB"]

    def arguments(self, v: int) -> dict[str, list]:
        args: dict[str, list] = {}
        for c in self.tree.children(v):
            if c.dep_label in ("SUBJ", "OBJ"):
                args.setdefault(c.dep_label, []).append(c)
            elif c.dep_label == "TRACE":
                args.setdefault("TRACE_" + c.feature("role"), []).append(c)
        return args

    def verb_arguments(self, v: int):
        own = self.arguments(v)
        shared = dict(own)
        for other in self.verb_group(v):
            if other == v:
                continue
            for role, nodes in self.arguments(other).items():
                shared.setdefault(role, nodes)
        if "TRACE_MEMBER" in shared:
            for tr in shared["TRACE_MEMBER"]:
                for s in shared.get("SUBJ", []):
                    self.emit(tr.antecedent, Relation.of("HAS_TOKEN"), s.index, s.index)
            return
        for s in shared.get("SUBJ", []):
            for target in [s, *conjuncts(self.tree, s.index)]:
                self.subject(target.index, v, target.index)
        for tr in shared.get("TRACE_SUBJ", []):
            self.subject(tr.antecedent, v, tr.index)
        for o in shared.get("OBJ", []):
            for target in [o, *conjuncts(self.tree, o.index)]:
                if target.index in self.functors:
                    self.attribution(v, target.index)
                else:
                    self.emit(v, Relation.of("HAS_OBJ"), target.index, target.index)
        for tr in shared.get("TRACE_OBJ", []):
            self.emit(tr.antecedent, Relation.of("OBJ_OF"), v, tr.index)
        for tr in shared.get("TRACE_PLACE", []):
            self.emit(tr.antecedent, Relation.of("PLACE_OF"), v, tr.index)

    def subject(self, s: int, v: int, node: int):
        if "ACTION" in self.effective_tags(v):
            self.agent(s, v, node)
        else:
            self.emit(v, Relation.of("HAS_SUBJ"), s, node)

    def agent(self, s: int, v: int, node: int):
        self.emit(s, Relation.of("AGNT_OF"), self.verb_unit(v), node)
        self.emit(v, Relation.of("HAS_AGNT"), s, node)

    def verb_unit(self, v: int) -> Unit:
        return self.unit(v)


def translate(entry, tags: dict, rules, inventory=None, entry_tags=()) -> SemanticFrame:
    """Translate one glossed meaning into its semantic frame."""
    if entry.gloss is None:
        raise ValueError(f"{entry.id}: entry has no gloss tree")
    inventory = inventory if inventory is not None else {}
    return _Translator(entry, tags, rules, inventory, entry_tags, []).run()
