"""Declarative rule file: primitives, lexical tags, entity tag rules, functor families
and word lists used by the taggers.

One record per line, ``#`` starts a comment. Columns are whitespace separated;
the first column names the record type::

    primitive    persona                     THING,PERSON
    group        cosa oggetto elemento       THING
    lexical      animale                     THING,ANIMAL
    tag          NOUN hyper=stato,condizione STATE priority=10
    modifier     hyper=aumentare dep=grandezza +DIMENSION,PLUS
    functor      type TOKEN_OF : tipo di | genere di
    functor      ability AGNT_OF mods=POTENTIAL verb=AGNT_OF other=HAS_QUALITY : in grado di
    partword     parte elemento membro
    ...

See ``docs/rules.md`` for the full grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .model import MODIFIERS, RELATION_KINDS, Category, ModelError, TagSequence, parse_tags

WORD_LISTS = (
    "partword", "denomination", "activity", "quantifier", "marker", "negation",
    "preposition", "prep_words",
)


class RuleError(ModelError):
    def __init__(self, problems: list[str]):
        super().__init__("invalid rule file:\n  " + "\n  ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class EntityTagRule:
    category: str
    hypers: frozenset = frozenset()
    deps: frozenset = frozenset()
    emit: TagSequence = ()
    priority: int = 0
    line: int = 0

    @property
    def match_key(self) -> tuple:
        return (self.category, self.hypers, self.deps)

    @property
    def specificity(self) -> int:
        return 1 + bool(self.hypers) + bool(self.deps)


@dataclass(frozen=True)
class ModifierRule:
    hypers: frozenset
    deps: frozenset
    append: TagSequence
    line: int = 0


@dataclass(frozen=True)
class FunctorFamily:
    name: str
    yields: str
    patterns: tuple[tuple[str, ...], ...]
    modifiers: frozenset = frozenset()
    verb_yield: str | None = None
    quality_yield: str | None = None
    other_yield: str | None = None

    def relation_for(self, content_category: str | None, content_tags: TagSequence | None):
        """Relation kind this functor mediates given what its content is."""
        if content_category == "VERB" and self.verb_yield:
            return self.verb_yield
        if content_tags and ("QUALITY" in content_tags or "MANNER" in content_tags) and self.quality_yield:
            return self.quality_yield
        if self.other_yield and content_category != "VERB":
            return self.other_yield
        return self.yields


@dataclass
class RuleSet:
    primitives: dict[str, TagSequence] = field(default_factory=dict)
    groups: list[frozenset] = field(default_factory=list)
    lexical: dict[str, TagSequence] = field(default_factory=dict)
    tag_rules: list[EntityTagRule] = field(default_factory=list)
    modifier_rules: list[ModifierRule] = field(default_factory=list)
    functors: list[FunctorFamily] = field(default_factory=list)
    words: dict[str, frozenset] = field(default_factory=dict)

    def word_list(self, name: str) -> frozenset:
        return self.words.get(name, frozenset())

    def family_of(self, lemma: str) -> FunctorFamily | None:
        for fam in self.functors:
            if any(p[0] == lemma for p in fam.patterns):
                return fam
        return None


def _split_opts(cols: list[str]) -> tuple[list[str], dict[str, str]]:
    plain, opts = [], {}
    for c in cols:
        if "=" in c:
            k, _, v = c.partition("=")
            opts[k] = v
        else:
            plain.append(c)
    return plain, opts


def _csv(value: str | None) -> frozenset:
    return frozenset(v for v in (value or "").split(",") if v)


def parse_rules(text: str, source: str = "<rules>") -> RuleSet:
    rs = RuleSet()
    problems: list[str] = []
    group_lines: dict[str, int] = {}
    pattern_owner: dict[tuple, str] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        kind, *rest = line.split()
        try:
            if kind == "primitive":
                lemma, tags = rest
                rs.primitives[lemma] = parse_tags(tags)
            elif kind == "group":
                *members, tags = rest
                tseq = parse_tags(tags)
                for m in members:
                    if m in group_lines:
                        problems.append(f"{where}: '{m}' already in the group on line {group_lines[m]}")
                    group_lines[m] = lineno
                    rs.primitives[m] = tseq
                rs.groups.append(frozenset(members))
            elif kind == "lexical":
                lemma, tags = rest
                rs.lexical[lemma] = parse_tags(tags)
            elif kind == "tag":
                plain, opts = _split_opts(rest)
                category, tags = plain
                if category not in Category.__members__:
                    raise ModelError(f"unknown category {category}")
                rs.tag_rules.append(EntityTagRule(
                    category, _csv(opts.get("hyper")), _csv(opts.get("dep")), parse_tags(tags),
                    int(opts.get("priority", 0)), lineno,
                ))
            elif kind == "modifier":
                plain, opts = _split_opts(rest)
                (tags,) = plain
                if not tags.startswith("+"):
                    raise ModelError("modifier tags must start with '+'")
                rs.modifier_rules.append(ModifierRule(
                    _csv(opts.get("hyper")), _csv(opts.get("dep")), parse_tags(tags[1:]), lineno
                ))
            elif kind == "functor":
                head, sep, pats = line[len("functor"):].partition(":")
                if not sep:
                    raise ModelError("functor record needs ': pattern | pattern'")
                plain, opts = _split_opts(head.split())
                name, yields = plain
                patterns = tuple(tuple(p.split()) for p in pats.split("|") if p.strip())
                if not patterns:
                    raise ModelError("functor family without patterns")
                mods = _csv(opts.get("mods"))
                for k in [yields, opts.get("verb"), opts.get("quality"), opts.get("other")]:
                    if k and k not in RELATION_KINDS:
                        raise ModelError(f"unknown relation kind {k}")
                if mods - MODIFIERS:
                    raise ModelError(f"unknown modifiers {sorted(mods - MODIFIERS)}")
                for p in patterns:
                    if p in pattern_owner:
                        problems.append(f"{where}: pattern '{' '.join(p)}' already in family {pattern_owner[p]}")
                    pattern_owner[p] = name
                rs.functors.append(FunctorFamily(
                    name, yields, patterns, mods, opts.get("verb"), opts.get("quality"), opts.get("other")
                ))
            elif kind in WORD_LISTS:
                rs.words[kind] = rs.words.get(kind, frozenset()) | frozenset(rest)
            else:
                problems.append(f"{where}: unknown record type '{kind}'")
        except (ValueError, ModelError) as exc:
            problems.append(f"{where}: {exc}")

    seen: dict[tuple, EntityTagRule] = {}
    for rule in rs.tag_rules:
        key = (rule.match_key, rule.priority)
        if key in seen:
            problems.append(
                f"{source}:{rule.line}: tag rule has the same match key and priority as line {seen[key].line}"
            )
        seen[key] = rule
    if problems:
        raise RuleError(problems)
    return rs


def load_rules(path: str | Path) -> RuleSet:
    path = Path(path)
    if not path.is_file():
        raise RuleError([f"rule file not found: {path}"])
    return parse_rules(path.read_text(encoding="utf-8"), str(path))


