from collections import Counter

import pytest

from glossnet.lexicon import load_lexicon
from glossnet.model import MeaningId, SemanticFrame
from glossnet.net import NotFound, build_net
from glossnet.primitives import (HeadFrequencyTable, PrimitiveInventory, build_inventory, count_heads,
                                 format_records, format_table, read_reference_table, stop_status)
from glossnet.pipeline import data_path

from conftest import tr


def raw_head_tally(parse_path, used_ids):
    """Independent count: the lemma column of each block's head-0 line."""
    counts, current = Counter(), None
    for line in parse_path.read_text(encoding="utf-8").splitlines():
        if line.startswith("# id ="):
            current = MeaningId.parse(line.split("=", 1)[1])
        elif line and not line.startswith("#"):
            cols = line.split("\t")
            if cols[4] == "0" and current in used_ids:
                counts[cols[2]] += 1
    return counts


def test_count_heads_matches_raw_tally(bundled):
    lex = load_lexicon(bundled["lexicon.tsv"])
    table = count_heads(lex)
    refs = Counter(e.gloss_ref for e in lex)
    oracle = Counter()
    for lemma, n in raw_head_tally(bundled["lexicon.parses"], set(refs)).items():
        oracle[lemma] += n
    assert table.rows == dict(oracle)
    assert table.total == len(lex)
    assert format_records(table).splitlines()[0] == "chi\t4"


def frame(lemma, n, *lines):
    f = SemanticFrame(lemma, MeaningId(n), "NOUN")
    for line in lines:
        f.add(tr(line, anchor=MeaningId(n)))
    return f


def test_stop_status():
    net = build_net([
        frame("gorilla", 1, "gorilla:NOUN TOKEN_OF scimmia:NOUN"),
        frame("scimmia", 2, "scimmia:NOUN TOKEN_OF animale:NOUN"),
        frame("animale", 3, "animale:NOUN TOKEN_OF [THING]"),
    ])
    assert stop_status(net, "animale")
    assert not stop_status(net, "gorilla")
    with pytest.raises(NotFound):
        stop_status(net, "sconosciuto")


def test_build_inventory_threshold_and_stop():
    table = HeadFrequencyTable(rows={"ciò": 300, "uomo": 250, "scimmia": 500, "raro": 3}, threshold=200)
    seeds = PrimitiveInventory({"ciò": ("THING",)})
    inv = build_inventory(table, seeds, {"ciò": True, "uomo": True, "scimmia": False, "raro": True})
    assert inv.scores == {"ciò": 300, "uomo": 250}
    assert inv.pending == {"uomo"}
    assert "scimmia" not in inv.scores and "raro" not in inv.scores
    assert seeds.pending == set()


def test_variant_group_scores_as_one():
    table = HeadFrequencyTable(rows={"luogo": 150, "zona": 80}, threshold=200)
    seeds = PrimitiveInventory({"luogo": ("THING", "PLACE")}, [frozenset({"luogo", "zona"})])
    inv = build_inventory(table, seeds, {"luogo": True})
    assert inv.scores == {"luogo|zona": 230}
    assert inv.get("zona") == ("THING", "PLACE")
    assert "luogo" not in inv.scores


def test_reference_table_is_bundled_and_formatted():
    table, notes = read_reference_table(data_path("table1_reference.tsv"))
    assert table.rows["ciò"] == 7087 and table.rows["chi"] == 1717
    text = format_table(table, notes)
    assert text.splitlines()[1].split()[:2] == ["ciò", "7087"]
    assert len(text.splitlines()) == len(table.rows) + 1
