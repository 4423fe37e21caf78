import pytest

from glossnet.model import MeaningId, ModelError, Relation, SemanticFrame, Triple, Unit


def test_meaning_id_parse_and_str():
    assert MeaningId.parse("41551") == MeaningId(41551, 0)
    assert str(MeaningId.parse("20149.5")) == "20149.5"
    assert MeaningId(3, 1) < MeaningId(3, 2) < MeaningId(4, 0)


@pytest.mark.parametrize("text", ["", "x", "1.2.3", "-4"])
def test_meaning_id_rejects_garbage(text):
    with pytest.raises(ModelError):
        MeaningId.parse(text)


@pytest.mark.parametrize("text", ["gorilla:NOUN", "[THING,PERSON]", "@41551.0", "$head"])
def test_unit_round_trip(text):
    assert str(Unit.parse(text)) == text


@pytest.mark.parametrize("text", ["gorilla", "gorilla:FOO", ":NOUN", "[]"])
def test_unit_rejects_bad_text(text):
    with pytest.raises(ModelError):
        Unit.parse(text)


def test_relation_string_sorts_modifiers_and_kinds():
    rel = Relation.of("RELATION_TO", "HAS_MANNER", "HAS_INSTRUMENT", modifiers=("POTENTIAL",))
    assert rel.ambiguous
    assert str(rel) == "POTENTIAL,HAS_INSTRUMENT|HAS_MANNER|RELATION_TO"
    assert Relation.parse(str(rel)) == rel
    with pytest.raises(ModelError):
        rel.kind


def test_relation_rejects_unknown_names():
    with pytest.raises(ModelError):
        Relation.of("LIKES")
    with pytest.raises(ModelError):
        Relation.of("HAS_PART", modifiers=("MAYBE",))


def test_triple_identity_ignores_bookkeeping():
    a = Triple.parse_short("gorilla:NOUN TOKEN_OF scimmia:NOUN", anchor=MeaningId(1))
    b = a.replace(anchor=MeaningId(2), provenance="RAISED", node=4)
    assert a == b and a.key == b.key


def test_triple_line_round_trip():
    t = Triple.parse_short("grande:ADJ RELATIVE,HAS_OBJ $head", anchor=MeaningId(43290, 2),
                           provenance="DERIVED_INVERSE")
    assert Triple.from_line(t.to_line()) == t
    assert Triple.from_line(t.to_line()).provenance == "DERIVED_INVERSE"


def test_tag_cannot_be_subject():
    with pytest.raises(ModelError):
        Triple(Unit.tag(["THING"]), Relation.of("HAS_PART"), Unit.word("x", "NOUN"))


def test_frame_add_skips_duplicates():
    f = SemanticFrame("vela", MeaningId(100480), "NOUN")
    t = Triple.parse_short("vela:NOUN TOKEN_OF tela:NOUN")
    assert f.add(t) and not f.add(t.replace(node=7))
    assert len(f.copy().triples) == 1
