import itertools

import pytest

from glossnet.entity_tagger import frame_tags, node_tags
from glossnet.functors import detect_functors, format_trace, mark_relative_value, raise_and_delete
from glossnet.model import MeaningId, SemanticFrame, Unit
from glossnet.relation_tagger import translate

from conftest import tr


@pytest.fixture(scope="module")
def raw_frames(fixture_run):
    """Translator output before functor rewriting, keyed by lemma and entry number."""
    r = fixture_run
    out = {}
    for e in r.lexicon:
        tags = node_tags(e.gloss, r.inventory, r.rules)
        out[e.id.entry] = translate(e, tags, r.rules, r.inventory, frame_tags(e, r.inventory, r.rules))
    return out


def final(frame):
    return sorted(t.short() for t in frame.triples)


def sibling_frame():
    """x --attr--> f1 with two functor children f2, f3 at the same depth."""
    f = SemanticFrame("x", MeaningId(5), "NOUN")
    rows = [
        ("x:NOUN ATTRIBUTION,TOKEN_OF f1:NOUN", "attribution", 2),
        ("f1:NOUN TOKEN_OF a:NOUN", "content", 3),
        ("f1:NOUN ATTRIBUTION,HAS_PART f2:ADJ", "attribution", 4),
        ("f2:ADJ HAS_PART b:NOUN", "content", 6),
        ("f1:NOUN ATTRIBUTION,HAS_PART f3:ADJ", "attribution", 7),
        ("f3:ADJ HAS_QUALITY c:ADJ", "content", 9),
        ("b:NOUN HAS_QUALITY d:ADJ", None, 10),
    ]
    for text, role, node in rows:
        f.add(tr(text, role=role, node=node, anchor=MeaningId(5, node)))
    f.functors = {Unit.word("f1", "NOUN"): "type", Unit.word("f2", "ADJ"): "characterized",
                  Unit.word("f3", "ADJ"): "characterized"}
    f.depths = {Unit.word("f1", "NOUN"): 1, Unit.word("f2", "ADJ"): 2, Unit.word("f3", "ADJ"): 2}
    return f


def test_sibling_order_does_not_change_result():
    f = sibling_frame()
    chains = detect_functors(f)
    assert len(chains) == 1 and len(chains[0].functors) == 3
    a = raise_and_delete(f, chains)
    b = raise_and_delete(f, chains, reverse_siblings=True)
    assert final(a.frame) == final(b.frame) == [
        "b:NOUN HAS_QUALITY d:ADJ",
        "x:NOUN HAS_PART b:NOUN",
        "x:NOUN HAS_PART c:ADJ",
        "x:NOUN TOKEN_OF a:NOUN",
    ]
    assert not a.frame.functors


def test_chain_order_does_not_change_result(raw_frames, fixture_run):
    for entry in (4775, 100690):
        frame = raw_frames[entry]
        chains = detect_functors(frame, fixture_run.rules.functors)
        results = {tuple(final(raise_and_delete(frame, list(p)).frame)) for p in itertools.permutations(chains)}
        assert len(results) == 1


def test_trace_counts_never_grow(raw_frames, fixture_run):
    for frame in raw_frames.values():
        result = raise_and_delete(frame, detect_functors(frame, fixture_run.rules.functors))
        for steps in result.traces:
            counts = [s.count for s in steps]
            assert counts == sorted(counts, reverse=True), (frame.lemma, counts)
    f = sibling_frame()
    (steps,) = raise_and_delete(f, detect_functors(f)).traces
    counts = [s.count for s in steps]
    assert counts == sorted(counts, reverse=True)


def test_overlapping_chain_is_skipped_with_diagnostic():
    f = sibling_frame()
    (chain,) = detect_functors(f)
    result = raise_and_delete(f, [chain, chain])
    assert len(result.traces) == 1
    assert len(result.diagnostics) == 1 and "skipped" in result.diagnostics[0]
    assert final(result.frame) == final(raise_and_delete(f, [chain]).frame)


def test_input_frame_untouched():
    f = sibling_frame()
    before = final(f)
    raise_and_delete(f, detect_functors(f))
    assert final(f) == before and len(f.functors) == 3


def test_format_trace_layout():
    f = sibling_frame()
    (steps,) = raise_and_delete(f, detect_functors(f)).traces
    text = format_trace(steps)
    assert text.startswith("# initial (6)\nI\tATTRIBUTION,TOKEN_OF(x, f1)\n")
    assert text.count("# ") == len(steps)


def test_relative_marker_flags_qualified_triples():
    f = SemanticFrame("grande", MeaningId(1), "ADJ")
    f.add(tr("grande:ADJ HAS_OBJ $head"))
    f.add(tr("$head HAS_QUALITY normale:ADJ"))
    out = mark_relative_value(f, {"normale"})
    assert final(out) == ["$head HAS_QUALITY normale:ADJ", "grande:ADJ RELATIVE,HAS_OBJ $head"]


def test_relative_marker_on_lemma_is_left_alone():
    f = SemanticFrame("x", MeaningId(1), "NOUN")
    f.add(tr("x:NOUN HAS_QUALITY normale:ADJ"))
    out = mark_relative_value(f, {"normale"})
    assert final(out) == final(f) and out.warnings and not f.warnings
