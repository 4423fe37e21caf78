"""Terminal tag assignment for glossed lemmas and gloss nodes, gloss classification,
and raising of hypernym attributes onto the glossed lemma."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .gloss import DependencyTree, conjuncts, gloss_head
from .model import Relation, SemanticFrame, TagSequence, Triple, Unit

log = logging.getLogger(__name__)

CATEGORY_DEFAULTS = {"VERB": ("ACTION",), "NOUN": ("THING",), "ADJ": ("QUALITY",), "ADV": ("MANNER",)}

PERSON_PRONOUNS = {"chi"}
THING_PRONOUNS = {"ciò", "quello", "quella"}
ACT_HEADS = {"atto", "azione", "l'atto"}
DENOMINATION_HEADS = {"nome", "denominazione"}
TYPE_HEADS = {"tipo", "genere"}
AFFECTED_HEADS = {"affetto", "colpito", "interessato"}
HUMAN_HEADS = {"persona", "uomo", "donna", "individuo"}
FEATURE_VERBS = {"essere", "avere"}


def hypernym_node(tree: DependencyTree):
    """The gloss head, looking through an open type assignment ("tipo di X" -> X)."""
    head = gloss_head(tree)
    if head.lemma in TYPE_HEADS:
        for prep in tree.children(head.index):
            if prep.category == "PREP" and prep.lemma == "di":
                for c in tree.children(prep.index):
                    if c.dep_label == "PMOD":
                        return c
    return head


def head_modifiers(tree: DependencyTree, index: int) -> set[str]:
    """Lemmas modifying a node: its dependents plus complements of its prepositions."""
    out = set()
    for c in tree.children(index):
        if c.dep_label in ("COORD", "CONJ", "TRACE"):
            continue
        out.add(c.lemma)
        if c.category == "PREP":
            out.update(g.lemma for g in tree.children(c.index) if g.dep_label == "PMOD")
    return out


def tag_entry(entry, inventory, rules) -> TagSequence:
    """Terminal tag sequence of a glossed lemma. Never fails: category defaults apply."""
    tree = entry.gloss
    if tree is None:
        return CATEGORY_DEFAULTS.get(entry.category, ("THING",))
    hyper = hypernym_node(tree)
    mods = head_modifiers(tree, hyper.index)
    candidates = [
        r for r in rules.tag_rules
        if r.category == entry.category
        and (not r.hypers or hyper.lemma in r.hypers)
        and (not r.deps or r.deps & mods)
    ]
    if candidates:
        best = max(candidates, key=lambda r: (r.specificity, r.priority))
        tags = list(best.emit)
    else:
        tags = list(CATEGORY_DEFAULTS.get(entry.category, ("THING",)))
    for mod in rules.modifier_rules:
        if hyper.lemma in mod.hypers and mod.deps & mods:
            tags.extend(t for t in mod.append if t not in tags)
    return tuple(tags)


def frame_tags(entry, inventory, rules) -> TagSequence:
    """Tags stored on a frame: a primitive's inventory tags, else ``tag_entry``."""
    inv = inventory.get(entry.lemma)
    return inv if inv else tag_entry(entry, inventory, rules)


def node_tags(tree: DependencyTree, inventory, rules) -> dict[int, TagSequence | None]:
    """Known terminal tags per node: inventory first, then lexical tags; None if unknown."""
    out = {}
    for n in tree.nodes:
        out[n.index] = inventory.get(n.lemma) or rules.lexical.get(n.lemma)
    return out


@dataclass(frozen=True)
class GlossClass:
    kind: str
    subclass: str | None = None
    low_confidence: bool = False

    def __str__(self) -> str:
        s = self.kind + (f"/{self.subclass}" if self.subclass else "")
        return s + ("?" if self.low_confidence else "")


def _content_nodes(tree):
    return [n for n in tree.nodes if n.category not in ("DET", "PREP", "CONJ") and n.dep_label != "TRACE"]


def classify_gloss(tree: DependencyTree, category: str) -> GlossClass:
    head = gloss_head(tree)
    content = _content_nodes(tree)
    coordinated = {head.index} | {c.index for c in conjuncts(tree, head.index)}
    only_heads = all(n.index in coordinated or n.dep_label == "ADVMOD" and n.lemma == "non"
                     for n in content)
    negated = any(c.lemma == "non" for c in tree.children(head.index))

    if only_heads and head.category == category and not negated:
        return GlossClass("SYNONYMY")

    if category == "NOUN":
        kids = tree.children(head.index)
        has_rel = any(c.dep_label == "REL" for c in kids)
        di_comp = [g for c in kids if c.lemma == "di" for g in tree.children(c.index)
                   if g.dep_label == "PMOD"]
        if head.lemma in PERSON_PRONOUNS and has_rel:
            return GlossClass("HYPERNYMY", "b")
        if head.lemma in THING_PRONOUNS and has_rel:
            rel = next(c for c in kids if c.dep_label == "REL")
            return GlossClass("HYPERNYMY", "f" if rel.lemma in FEATURE_VERBS else "d")
        if head.lemma in ACT_HEADS and any(g.category == "VERB" for g in di_comp):
            return GlossClass("CATEGORY_SWITCH", "e")
        if head.category == "VERB":
            return GlossClass("CATEGORY_SWITCH", "e")
        if head.lemma in TYPE_HEADS and di_comp:
            return GlossClass("HYPERNYMY", "g-token")
        if head.lemma in DENOMINATION_HEADS or (head.category == "PREP" and head.lemma == "di"):
            return GlossClass("HYPERNYMY", "g")
        if head.lemma in AFFECTED_HEADS:
            return GlossClass("HYPERNYMY", "c")
        if head.lemma in HUMAN_HEADS:
            return GlossClass("HYPERNYMY", "a")
        if head.category in ("NOUN", "PRON"):
            return GlossClass("HYPERNYMY", "d")
        return GlossClass("HYPERNYMY", "d", low_confidence=True)

    if head.category == category:
        return GlossClass("HYPERNYMY")
    if category in ("ADJ", "ADV") or head.category in ("VERB", "NOUN"):
        return GlossClass("CATEGORY_SWITCH")
    return GlossClass("HYPERNYMY", low_confidence=True)


def raise_hypernym_attributes(frame: SemanticFrame, hyper_frame: SemanticFrame | None) -> SemanticFrame:
    """Lift the hypernym's tags and the hypernym's adverbial qualities onto the lemma.

    Added triples carry provenance RAISED; the input frame is not modified.
    """
    lemma = frame.unit
    out = frame.copy()
    if hyper_frame is None:
        out.warnings.append(f"{frame.meaning}: hypernym frame missing, nothing raised")
        log.warning("hypernym frame missing for %s", frame.lemma)
        return out
    hyper = hyper_frame.unit
    linked = any(t.subject == lemma and t.relation == Relation.of("TOKEN_OF") and t.object == hyper
                 for t in frame.triples)
    if not linked:
        return out

    tags = list(hyper_frame.tags) + [t for t in frame.tags if t not in hyper_frame.tags]
    anchor = frame.meaning.with_sub(0)
    if tags:
        out.add(Triple(lemma, Relation.of("TOKEN_OF"), Unit.tag(tags), anchor, "RAISED"))
    for t in frame.triples:
        if (t.subject == lemma and t.relation == Relation.of("HAS_QUALITY")
                and t.object.kind == "WORD" and t.object.category == "ADV"):
            base = frame.bases.get(t.object.lemma)
            if base:
                out.add(Triple(lemma, Relation.of("HAS_QUALITY", modifiers={"MANNER"}),
                               Unit.word(base, "ADJ"), anchor, "RAISED", t.node))
    return out
