import pytest

from glossnet.gloss import (GlossError, conjuncts, format_tree, gloss_head, parse_tree_lines, read_parses,
                            validate_tree, write_parses)
from glossnet.model import MeaningId


def tree(*rows):
    lines = ["\t".join(str(c) for c in r) for r in rows]
    return parse_tree_lines(list(enumerate(lines, 1)), MeaningId(1))


def good():
    return tree(
        (1, "Cosa", "cosa", "NOUN", 0, "ROOT", "_"),
        (2, "bianca", "bianco", "ADJ", 1, "MOD", "_"),
        (3, "o", "o", "CONJ", 2, "COORD", "_"),
        (4, "nera", "nero", "ADJ", 3, "CONJ", "_"),
    )


def test_valid_tree_and_head():
    t = good()
    assert validate_tree(t) == []
    assert gloss_head(t).lemma == "cosa"
    assert [n.lemma for n in conjuncts(t, 2)] == ["nero"]


@pytest.mark.parametrize("rows, fragment", [
    ([(1, "a", "a", "NOUN", 2, "MOD", "_"), (2, "b", "b", "NOUN", 1, "MOD", "_")], "no root"),
    ([(1, "a", "a", "NOUN", 0, "ROOT", "_"), (2, "b", "b", "NOUN", 0, "ROOT", "_")], "multiple roots"),
    ([(1, "a", "a", "NOUN", 0, "ROOT", "_"), (2, "b", "b", "NOUN", 9, "MOD", "_")], "does not exist"),
    ([(1, "a", "a", "NOUN", 0, "ROOT", "_"), (2, "b", "b", "NOUN", 1, "WHAT", "_")], "unknown dependency"),
    ([(1, "a", "a", "NOUN", 0, "ROOT", "_"), (2, "b", "b", "XX", 1, "MOD", "_")], "unknown category"),
    ([(1, "a", "a", "NOUN", 0, "ROOT", "_"), (2, "t", "t", "NOUN", 1, "TRACE", "role=OBJ")], "antecedent"),
    ([(1, "a", "a", "NOUN", 0, "ROOT", "_"), (2, "b", "b", "NOUN", 3, "MOD", "_"),
      (3, "c", "c", "NOUN", 2, "MOD", "_")], "cycle"),
])
def test_validation_names_the_problem(rows, fragment):
    problems = validate_tree(tree(*rows))
    assert any(fragment in p for p in problems), problems
    with pytest.raises(GlossError):
        gloss_head(tree(*rows))


def test_wrong_column_count():
    with pytest.raises(GlossError, match="7 columns"):
        parse_tree_lines([(5, "1\ta\ta\tNOUN\t0\tROOT")])


def test_parse_file_round_trip(tmp_path, bundled):
    trees = read_parses(bundled["lexicon.parses"])
    out = tmp_path / "copy.parses"
    write_parses(trees.values(), out)
    again = read_parses(out)
    assert again == trees
    assert format_tree(again[MeaningId(41551)]).startswith("# id = 41551.0\n")


def test_duplicate_parse_rejected(tmp_path):
    block = "# id = 1\n1\ta\ta\tNOUN\t0\tROOT\t_\n\n"
    p = tmp_path / "dup.parses"
    p.write_text(block + block, encoding="utf-8")
    with pytest.raises(GlossError, match="duplicate parse"):
        read_parses(p)
