import pytest

from glossnet.rules import RuleError, load_rules, parse_rules


def test_bundled_rules_load(bundled):
    rs = load_rules(bundled["rules.txt"])
    assert rs.primitives["chi"] == ("THING", "PERSON")
    assert rs.family_of("caratterizzato").name == "characterized"
    assert "con" in rs.word_list("preposition")
    ability = rs.family_of("capace")
    assert ability.relation_for("VERB", None) == "AGNT_OF"
    assert ability.relation_for("ADJ", ("QUALITY",)) == "HAS_QUALITY"
    assert ability.modifiers == {"POTENTIAL"}


def test_family_yield_depends_on_content():
    rs = parse_rules("functor characterized HAS_PART quality=HAS_QUALITY : caratterizzato da\n")
    fam = rs.functors[0]
    assert fam.relation_for("NOUN", ("THING",)) == "HAS_PART"
    assert fam.relation_for("NOUN", ("QUALITY",)) == "HAS_QUALITY"


@pytest.mark.parametrize("text, fragment", [
    ("bogus x y\n", "unknown record type 'bogus'"),
    ("tag FOO THING\n", "unknown category FOO"),
    ("group a b THING\ngroup b c THING\n", "'b' already in the group on line 1"),
    ("functor f LIKES : x y\n", "unknown relation kind LIKES"),
    ("functor f HAS_PART mods=MAYBE : x y\n", "unknown modifiers"),
    ("functor f HAS_PART x y\n", "needs ': pattern"),
    ("functor f HAS_PART : x y\nfunctor g TOKEN_OF : x y\n", "already in family f"),
    ("modifier hyper=a dep=b DIMENSION\n", "must start with '+'"),
    ("tag NOUN hyper=a THING\ntag NOUN hyper=a PERSON\n", "same match key and priority as line 1"),
])
def test_rule_errors_carry_line_numbers(text, fragment):
    with pytest.raises(RuleError) as info:
        parse_rules(text, "r.txt")
    assert any(fragment in p for p in info.value.problems), info.value.problems
    assert all(p.startswith("r.txt:") for p in info.value.problems)


def test_all_problems_reported_at_once():
    with pytest.raises(RuleError) as info:
        parse_rules("bogus\nfoo\ntag FOO X\n", "r.txt")
    assert len(info.value.problems) == 3


def test_missing_file(tmp_path):
    with pytest.raises(RuleError, match="not found"):
        load_rules(tmp_path / "none.txt")


def test_specific_rule_beats_generic(fixture_run):
    from glossnet.entity_tagger import tag_entry
    lex, rules, inv = fixture_run.lexicon, fixture_run.rules, fixture_run.inventory
    by_lemma = {e.lemma: e for e in lex}
    assert tag_entry(by_lemma["acquirente"], inv, rules) == ("THING", "PERSON")
    assert tag_entry(by_lemma["acacia"], inv, rules) == ("THING", "VEGETAL")
    # no hyper rule for the gloss head: category default rule applies
    assert tag_entry(by_lemma["gorilla"], inv, rules) == ("THING",)
    assert tag_entry(by_lemma["vela"], inv, rules) == ("THING", "PART_OF")
