"""Primitive discovery: gloss-head frequencies, hypernym stop status, inventory building."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .gloss import gloss_head, validate_tree
from .model import TagSequence

DEFAULT_THRESHOLD = 200


@dataclass
class HeadFrequencyTable:
    rows: dict[str, int] = field(default_factory=dict)
    threshold: int = DEFAULT_THRESHOLD
    errors: list[str] = field(default_factory=list)
    causative: int = 0

    @property
    def total(self) -> int:
        return sum(self.rows.values())

    def sorted_rows(self) -> list[tuple[str, int]]:
        return sorted(self.rows.items(), key=lambda kv: (-kv[1], kv[0]))


@dataclass
class PrimitiveInventory:
    entries: dict[str, TagSequence] = field(default_factory=dict)
    variant_groups: list[frozenset] = field(default_factory=list)
    pending: set[str] = field(default_factory=set)
    scores: dict[str, int] = field(default_factory=dict)

    def __contains__(self, lemma: str) -> bool:
        return lemma in self.entries

    def get(self, lemma: str) -> TagSequence | None:
        return self.entries.get(lemma)

    def group_of(self, lemma: str) -> frozenset | None:
        for g in self.variant_groups:
            if lemma in g:
                return g
        return None

    @classmethod
    def from_rules(cls, rules) -> PrimitiveInventory:
        return cls(dict(rules.primitives), list(rules.groups))

    def copy(self) -> PrimitiveInventory:
        return PrimitiveInventory(dict(self.entries), list(self.variant_groups),
                                  set(self.pending), dict(self.scores))


def is_causative(tree) -> bool:
    """A 'fare' head with an infinitive verb object."""
    head = gloss_head(tree)
    if head.lemma != "fare":
        return False
    return any(c.dep_label in ("OBJ", "COMP") and c.category == "VERB" and c.has("infinitive")
               for c in tree.children(head.index))


def count_heads(lex, threshold: int = DEFAULT_THRESHOLD) -> HeadFrequencyTable:
    table = HeadFrequencyTable(threshold=threshold)
    counts: Counter = Counter()
    for entry in lex:
        if entry.gloss is None:
            continue
        problems = validate_tree(entry.gloss)
        if problems:
            table.errors.append(f"{entry.id}: " + "; ".join(problems))
            continue
        counts[gloss_head(entry.gloss).lemma] += 1
        if is_causative(entry.gloss):
            table.causative += 1
    table.rows = dict(counts)
    return table


def stop_status(net, lemma: str, depth_limit: int = 16) -> bool:
    """True when no hypernym chain leads from ``lemma`` to anything but itself."""
    from .net import hypernym_chain

    chain = hypernym_chain(net, lemma, depth_limit)
    return all(t.object.lemma == lemma for t in chain)


def build_inventory(table: HeadFrequencyTable, seeds: PrimitiveInventory,
                    stop: dict[str, bool]) -> PrimitiveInventory:
    inv = seeds.copy()
    grouped = set().union(*inv.variant_groups) if inv.variant_groups else set()
    for group in inv.variant_groups:
        score = sum(table.rows.get(m, 0) for m in group)
        key = "|".join(sorted(group))
        if score >= table.threshold and any(stop.get(m, False) for m in group):
            inv.scores[key] = score
            tags = next((inv.entries[m] for m in sorted(group) if m in inv.entries), None)
            for m in group:
                if tags is not None:
                    inv.entries.setdefault(m, tags)
                else:
                    inv.pending.add(m)
    for lemma, count in table.rows.items():
        if lemma in grouped or count < table.threshold or not stop.get(lemma, False):
            continue
        inv.scores[lemma] = count
        if lemma not in inv.entries:
            inv.pending.add(lemma)
    return inv


def format_table(table: HeadFrequencyTable, notes: dict[str, str] | None = None) -> str:
    notes = notes or {}
    rows = table.sorted_rows()
    width = max([len(w) for w, _ in rows] + [4])
    lines = [f"{'Word':<{width}}  {'Count':>6}  Note"]
    for word, count in rows:
        lines.append(f"{word:<{width}}  {count:>6}  {notes.get(word, '')}".rstrip())
    return "\n".join(lines) + "\n"


def format_records(table: HeadFrequencyTable) -> str:
    return "".join(f"{w}\t{c}\n" for w, c in table.sorted_rows())


def read_reference_table(path) -> tuple[HeadFrequencyTable, dict[str, str]]:
    """Read a bundled ``word<TAB>count<TAB>note`` frequency record."""
    rows, notes = {}, {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip() or line.startswith("#"):
                continue
            word, count, *rest = line.rstrip("\n").split("\t")
            rows[word] = int(count)
            if rest:
                notes[word] = rest[0]
    return HeadFrequencyTable(rows=rows), notes
