"""Core value types shared by every stage: ids, tags, units, relations, triples, frames."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class Category(str, Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PRON = "PRON"
    PREP = "PREP"
    DET = "DET"
    CONJ = "CONJ"
    OTHER = "OTHER"

    def __str__(self) -> str:
        return self.value


TAGS = frozenset(
    """THING PERSON ANIMAL VEGETAL INSTRUMENT PLACE SUBSTANCE SET PART_OF ACTION ACT_OF
    ACTIVITY CHANGE QUALITY DIMENSION PLUS MINUS MANNER STATE EVENT EXPRESSION SPEECH_ACT
    COGNITION POTENTIAL NEG ATTRIBUTION EXISTENCE RELATION_TO FUNCTION CAUSE""".split()
)

RELATION_KINDS = frozenset(
    """TOKEN_OF HAS_TOKEN HAS_TAG HAS_QUALITY QUALITY_OF HAS_PART PART_OF HAS_AGNT AGNT_OF
    HAS_OBJ OBJ_OF HAS_SUBJ HAS_INSTRUMENT HAS_MANNER HAS_FUNCTION HAS_CAUSE HAS_PLACE
    PLACE_OF HAS_SPACE HAS_SPEC REFERS_TO RELATION_TO ATTRIBUTION EXISTENCE""".split()
)

# ATTRIBUTION wraps unraised functor edges; TOKEN marks inclusion ("compreso");
# MANNER marks adverbial qualities; RELATIVE marks edges qualified by a relative-value word.
MODIFIERS = frozenset({"NEG", "POTENTIAL", "ATTRIBUTION", "TOKEN", "MANNER", "RELATIVE"})

_PAIRS = [
    ("TOKEN_OF", "HAS_TOKEN"),
    ("HAS_QUALITY", "QUALITY_OF"),
    ("HAS_PART", "PART_OF"),
    ("HAS_AGNT", "AGNT_OF"),
    ("HAS_OBJ", "OBJ_OF"),
    ("HAS_PLACE", "PLACE_OF"),
]
INVERSES = {a: b for a, b in _PAIRS} | {b: a for a, b in _PAIRS}

PROVENANCES = (
    "DIRECT",
    "RAISED",
    "DERIVED_TAXONOMY",
    "DERIVED_INVERSE",
    "DERIVED_ROLE",
    "DERIVED_INFERENCE",
)
DERIVED = frozenset(PROVENANCES[2:])


class ModelError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MeaningId:
    entry: int
    sub: int = 0

    def __post_init__(self):
        if self.entry < 0 or self.sub < 0:
            raise ModelError(f"negative meaning id component: {self.entry}.{self.sub}")

    def __str__(self) -> str:
        return f"{self.entry}.{self.sub}"

    @classmethod
    def parse(cls, text: str) -> MeaningId:
        m = re.fullmatch(r"(\d+)(?:\.(\d+))?", text.strip())
        if not m:
            raise ModelError(f"bad meaning id {text!r}")
        return cls(int(m.group(1)), int(m.group(2) or 0))

    def with_sub(self, sub: int) -> MeaningId:
        return MeaningId(self.entry, sub)


TagSequence = tuple[str, ...]


def parse_tags(text: str) -> TagSequence:
    tags = tuple(t for t in re.split(r"[,\s]+", text.strip()) if t)
    unknown = [t for t in tags if t not in TAGS]
    if unknown:
        raise ModelError(f"unknown tag(s) {', '.join(unknown)}")
    return tags


@dataclass(frozen=True)
class Unit:
    """Right- or left-hand side of a relation.

    kind is one of WORD (unresolved link to a word), TAG (terminal tag
    sequence), MEANING (link to a specific meaning) or HEAD (the modified
    head of an adjective at its use site).
    """

    kind: str
    lemma: str = ""
    category: str = ""
    tags: TagSequence = ()
    meaning: MeaningId | None = None

    @classmethod
    def word(cls, lemma: str, category: Category | str) -> Unit:
        return cls("WORD", lemma=lemma, category=str(category))

    @classmethod
    def tag(cls, tags) -> Unit:
        tags = tuple(tags)
        if not tags:
            raise ModelError("empty tag unit")
        return cls("TAG", tags=tags)

    @classmethod
    def link(cls, meaning: MeaningId) -> Unit:
        return cls("MEANING", meaning=meaning)

    @classmethod
    def head(cls) -> Unit:
        return cls("HEAD", lemma="$head")

    @property
    def is_tag(self) -> bool:
        return self.kind == "TAG"

    def __str__(self) -> str:
        if self.kind == "WORD":
            return f"{self.lemma}:{self.category}"
        if self.kind == "TAG":
            return "[" + ",".join(self.tags) + "]"
        if self.kind == "MEANING":
            return f"@{self.meaning}"
        return "$head"

    @classmethod
    def parse(cls, text: str) -> Unit:
        if text == "$head":
            return cls.head()
        if text.startswith("[") and text.endswith("]"):
            return cls.tag(parse_tags(text[1:-1]))
        if text.startswith("@"):
            return cls.link(MeaningId.parse(text[1:]))
        lemma, sep, cat = text.rpartition(":")
        if not sep or not lemma:
            raise ModelError(f"bad unit {text!r}")
        if cat not in Category.__members__:
            raise ModelError(f"bad category in unit {text!r}")
        return cls.word(lemma, cat)


@dataclass(frozen=True)
class Relation:
    """A relation kind, or an ambiguous candidate set when len(kinds) > 1."""

    kinds: frozenset
    modifiers: frozenset = frozenset()

    def __post_init__(self):
        if not self.kinds:
            raise ModelError("relation without kind")
        bad = [k for k in self.kinds if k not in RELATION_KINDS]
        if bad:
            raise ModelError(f"unknown relation kind(s) {bad}")
        bad = [m for m in self.modifiers if m not in MODIFIERS]
        if bad:
            raise ModelError(f"unknown relation modifier(s) {bad}")

    @classmethod
    def of(cls, *kinds: str, modifiers=()) -> Relation:
        return cls(frozenset(kinds), frozenset(modifiers))

    @property
    def ambiguous(self) -> bool:
        return len(self.kinds) > 1

    @property
    def kind(self) -> str:
        if self.ambiguous:
            raise ModelError(f"ambiguous relation {self} has no single kind")
        return next(iter(self.kinds))

    def with_modifiers(self, add=(), remove=()) -> Relation:
        return Relation(self.kinds, (self.modifiers | frozenset(add)) - frozenset(remove))

    def with_kinds(self, *kinds: str) -> Relation:
        return Relation(frozenset(kinds), self.modifiers)

    @property
    def name(self) -> str:
        return "|".join(sorted(self.kinds))

    def __str__(self) -> str:
        return ",".join([*sorted(self.modifiers), self.name])

    @classmethod
    def parse(cls, text: str) -> Relation:
        mods, kinds = [], []
        for part in text.split(","):
            if part in MODIFIERS:
                mods.append(part)
            else:
                kinds.extend(part.split("|"))
        return cls(frozenset(kinds), frozenset(mods))


@dataclass(frozen=True)
class Triple:
    """A relation triple. Identity is (subject, relation, object); anchor,
    provenance, source node and chain role are bookkeeping."""

    subject: Unit
    relation: Relation
    object: Unit
    anchor: MeaningId = field(default=MeaningId(0), compare=False)
    provenance: str = field(default="DIRECT", compare=False)
    node: int | None = field(default=None, compare=False)
    role: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.subject.is_tag:
            raise ModelError("terminal tag cannot be a subject")
        if self.provenance not in PROVENANCES:
            raise ModelError(f"bad provenance {self.provenance}")

    @property
    def key(self) -> tuple:
        return (self.subject, self.relation, self.object)

    def replace(self, **changes) -> Triple:
        values = dict(
            subject=self.subject,
            relation=self.relation,
            object=self.object,
            anchor=self.anchor,
            provenance=self.provenance,
            node=self.node,
            role=self.role,
        )
        values.update(changes)
        return Triple(**values)

    def sort_key(self) -> tuple:
        return (self.anchor, self.relation.name, str(self.subject), str(self.relation),
                str(self.object), self.provenance)

    def to_line(self) -> str:
        return "\t".join(
            [str(self.anchor), str(self.subject), str(self.relation), str(self.object), self.provenance]
        )

    def short(self) -> str:
        return f"{self.subject} {self.relation} {self.object}"

    @classmethod
    def from_line(cls, line: str) -> Triple:
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise ModelError(f"expected 5 tab-separated fields, got {len(parts)}")
        anchor, subj, rel, obj, prov = parts
        return cls(Unit.parse(subj), Relation.parse(rel), Unit.parse(obj),
                   MeaningId.parse(anchor), prov)

    @classmethod
    def parse_short(cls, text: str, **kw) -> Triple:
        parts = text.split()
        if len(parts) != 3:
            raise ModelError(f"expected 'subject relation object', got {text!r}")
        return cls(Unit.parse(parts[0]), Relation.parse(parts[1]), Unit.parse(parts[2]), **kw)


@dataclass
class SemanticFrame:
    lemma: str
    meaning: MeaningId
    category: str
    tags: TagSequence = ()
    triples: list[Triple] = field(default_factory=list)
    functors: dict[Unit, str] = field(default_factory=dict)
    depths: dict[Unit, int] = field(default_factory=dict)
    bases: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def unit(self) -> Unit:
        return Unit.word(self.lemma, self.category)

    def add(self, triple: Triple) -> bool:
        """Append unless an equal triple is already present."""
        if any(t == triple for t in self.triples):
            return False
        self.triples.append(triple)
        return True

    def keys(self) -> set:
        return {t.key for t in self.triples}

    def copy(self) -> SemanticFrame:
        return SemanticFrame(
            self.lemma, self.meaning, self.category, self.tags, list(self.triples),
            dict(self.functors), dict(self.depths), dict(self.bases), list(self.warnings),
        )

    def header(self) -> str:
        return f'LEMMA: "{self.lemma}" MNG: {self.meaning.entry} CAT: {self.category}'
