"""Meaning-specific lexical database: one record per word meaning.

Lexicon file layout (UTF-8, tab separated, ``#`` comment lines allowed)::

    id  lemma  category  domains  usages  valency  gloss_ref  gloss_text

``domains`` and ``usages`` are comma separated label lists, ``valency`` a
``;``-separated list of argument slots; ``-`` marks an empty field. A lemma
may carry a clitic in brackets (``muovere[si]``), stored as the bare lemma
plus a reflexive flag. ``gloss_ref`` is the id of the tree in the sibling
parse file.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .gloss import DependencyTree, GlossError, read_parses, validate_tree
from .model import Category, MeaningId, ModelError

FIELDS = ("id", "lemma", "category", "domains", "usages", "valency", "gloss_ref", "gloss_text")


class LexiconError(ModelError):
    pass


@dataclass(frozen=True)
class MeaningEntry:
    id: MeaningId
    lemma: str
    category: str
    gloss: DependencyTree | None = None
    domain_labels: frozenset = frozenset()
    usage_labels: frozenset = frozenset()
    valency: tuple[str, ...] | None = None
    reflexive: bool = False
    gloss_ref: MeaningId | None = None
    gloss_text: str = ""

    @property
    def written_lemma(self) -> str:
        return self.lemma + ("[si]" if self.reflexive else "")


def normalize_lemma(raw: str) -> tuple[str, bool]:
    raw = raw.strip().lower()
    if raw.endswith("[si]"):
        return raw[:-4], True
    return raw, False


def _labels(text: str) -> frozenset:
    return frozenset() if text == "-" else frozenset(x.strip() for x in text.split(",") if x.strip())


def _fmt_labels(labels) -> str:
    return ",".join(sorted(labels)) or "-"


class Lexicon:
    """Entries in file order plus a lemma index. Immutable after construction."""

    def __init__(self, entries=()):
        self._entries: dict[MeaningId, MeaningEntry] = {}
        self.lemma_index: dict[str, list[MeaningId]] = {}
        for e in entries:
            if e.id in self._entries:
                raise LexiconError(f"duplicate meaning id {e.id}")
            if not e.lemma:
                raise LexiconError(f"{e.id}: empty lemma")
            self._entries[e.id] = e
            self.lemma_index.setdefault(e.lemma, []).append(e.id)

    @property
    def entries(self) -> list[MeaningEntry]:
        return list(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    def __contains__(self, mid) -> bool:
        return mid in self._entries

    def get(self, mid: MeaningId) -> MeaningEntry:
        try:
            return self._entries[mid]
        except KeyError:
            raise LexiconError(f"no meaning {mid}") from None


def lookup_lemma(lex: Lexicon, lemma: str) -> list[MeaningEntry]:
    return [lex.get(mid) for mid in lex.lemma_index.get(lemma, [])]


def parse_record(line: str, lineno: int) -> MeaningEntry:
    cols = line.rstrip("\n").split("\t")
    if len(cols) != len(FIELDS):
        raise LexiconError(f"line {lineno}: expected {len(FIELDS)} fields, got {len(cols)}")
    values = dict(zip(FIELDS, cols))
    try:
        mid = MeaningId.parse(values["id"])
    except ModelError:
        raise LexiconError(f"line {lineno}: field id: bad meaning id {values['id']!r}") from None
    lemma, reflexive = normalize_lemma(values["lemma"])
    if not lemma:
        raise LexiconError(f"line {lineno}: field lemma: empty")
    if values["category"] not in Category.__members__:
        raise LexiconError(f"line {lineno}: field category: unknown {values['category']!r}")
    try:
        gref = None if values["gloss_ref"] == "-" else MeaningId.parse(values["gloss_ref"])
    except ModelError:
        raise LexiconError(f"line {lineno}: field gloss_ref: bad id {values['gloss_ref']!r}") from None
    valency = None if values["valency"] == "-" else tuple(values["valency"].split(";"))
    return MeaningEntry(
        id=mid,
        lemma=lemma,
        category=values["category"],
        domain_labels=_labels(values["domains"]),
        usage_labels=_labels(values["usages"]),
        valency=valency,
        reflexive=reflexive,
        gloss_ref=gref,
        gloss_text=values["gloss_text"],
    )


def format_record(e: MeaningEntry) -> str:
    return "\t".join([
        str(e.id),
        e.written_lemma,
        e.category,
        _fmt_labels(e.domain_labels),
        _fmt_labels(e.usage_labels),
        "-" if e.valency is None else ";".join(e.valency),
        "-" if e.gloss_ref is None else str(e.gloss_ref),
        e.gloss_text,
    ])


def default_parse_path(path: Path) -> Path:
    return path.with_suffix(".parses")


def load_lexicon(path: str | Path, parse_path: str | Path | None = None) -> Lexicon:
    """Load a lexicon file and attach gloss trees from its parse file.

    The parse file defaults to the sibling ``<stem>.parses``; when it does not
    exist, entries are loaded without trees.
    """
    path = Path(path)
    if not path.is_file():
        raise LexiconError(f"lexicon file not found: {path}")
    records: list[MeaningEntry] = []
    seen: dict[MeaningId, int] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            entry = parse_record(line, lineno)
            if entry.id in seen:
                raise LexiconError(
                    f"duplicate meaning id {entry.id} on lines {seen[entry.id]} and {lineno}"
                )
            seen[entry.id] = lineno
            records.append(entry)

    ppath = Path(parse_path) if parse_path else default_parse_path(path)
    if parse_path and not ppath.is_file():
        raise LexiconError(f"parse file not found: {ppath}")
    if ppath.is_file():
        trees = read_parses(ppath)
        attached = []
        for e in records:
            if e.gloss_ref is None:
                attached.append(e)
                continue
            tree = trees.get(e.gloss_ref)
            if tree is None:
                raise LexiconError(f"line {seen[e.id]}: field gloss_ref: no parse for {e.gloss_ref}")
            problems = validate_tree(tree)
            if problems:
                raise GlossError(f"parse {e.gloss_ref}: " + "; ".join(problems))
            attached.append(_with_gloss(e, tree))
        records = attached
    return Lexicon(records)


def _with_gloss(e: MeaningEntry, tree: DependencyTree) -> MeaningEntry:
    return MeaningEntry(e.id, e.lemma, e.category, tree, e.domain_labels, e.usage_labels,
                        e.valency, e.reflexive, e.gloss_ref, e.gloss_text)


def dumps_lexicon(lex: Lexicon) -> str:
    return "".join(format_record(e) + "\n" for e in lex)


def save_lexicon(lex: Lexicon, path: str | Path) -> None:
    Path(path).write_text(dumps_lexicon(lex), encoding="utf-8")
