import io
import json
from pathlib import Path

import pytest

from glossnet.cli import build_parser, main, resolve_config

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_frame_matches_byte_golden():
    code, out, _ = call("frame", "41551")
    assert code == 0
    assert out == (GOLDEN / "gorilla.frame").read_text(encoding="utf-8")


def test_trace_matches_byte_golden():
    code, out, _ = call("trace", "103952")
    assert code == 0
    assert out == (GOLDEN / "vertebrato.trace").read_text(encoding="utf-8")


def test_ingest_lists_head_counts():
    code, out, _ = call("ingest")
    lines = out.splitlines()
    assert code == 0 and lines[:3] == ["meanings\t42", "glossed\t42", "invalid_trees\t0"]
    assert lines[3] == "chi\t4"


def test_build_then_query_export_stats_verify(tmp_path):
    code, out, _ = call("build", "--out", str(tmp_path))
    assert code == 0 and out.count("wrote") == 3
    net = str(tmp_path / "net.txt")
    code, out, _ = call("query", "orango/TOKEN_OF/*", "--net", net)
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = call("query", "orango/HAS_PART/nulla", "--net", net)
    assert code == 1 and out == ""
    code, out, _ = call("export", "--net", net, "--graph")
    assert out.startswith("digraph semantic_net {")
    code, out, _ = call("export", "--net", net)
    assert out == (tmp_path / "net.txt").read_text(encoding="utf-8")
    code, out, _ = call("stats", "--net", net)
    assert out.startswith("frames\t42\n")
    code, out, _ = call("verify", "--net", net)
    assert code == 0 and out.count("PASS") == 25


def test_derive_from_frames_only_net(tmp_path):
    call("build", "--out", str(tmp_path / "a"), "--no-passes")
    call("build", "--out", str(tmp_path / "b"))
    code, _, _ = call("derive", "--net", str(tmp_path / "a" / "net.txt"), "--out", str(tmp_path / "c"))
    assert code == 0
    assert (tmp_path / "c" / "net.txt").read_bytes() == (tmp_path / "b" / "net.txt").read_bytes()


def test_stats_reference_table():
    code, out, _ = call("stats", "--reference")
    assert code == 0
    assert out.splitlines()[1].split()[:2] == ["ciò", "7087"]


def test_errors_are_json_plus_message():
    code, out, err = call("frame", "999")
    assert code == 2 and out == ""
    record, human = err.splitlines()
    assert json.loads(record) == {"error": "ModelError", "message": "meaning 999.0 not in lexicon or has no gloss"}
    assert human.startswith("glossnet: error: meaning 999.0")


def test_bad_meaning_id_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frame", "abc"])
    assert info.value.code == 2
    assert "bad meaning id" in capsys.readouterr().err


def test_settings_precedence(tmp_path):
    cfg_file = tmp_path / "glossnet.cfg"
    cfg_file.write_text("threshold = 5\ndepth-limit = 7\nrounds = 1\n", encoding="utf-8")
    args = build_parser().parse_args(["build", "--config", str(cfg_file), "--rounds", "3"])
    cfg = resolve_config(args, {"GLOSSNET_DEPTH_LIMIT": "9", "GLOSSNET_PASSES": "invert,inherit"})
    assert (cfg.threshold, cfg.depth_limit, cfg.primitive_rounds) == (5, 9, 3)
    assert cfg.passes == ("invert", "inherit")


def test_json_config_and_unknown_keys(tmp_path):
    good = tmp_path / "c.json"
    good.write_text('{"threshold": 12}', encoding="utf-8")
    cfg = resolve_config(build_parser().parse_args(["build", "--config", str(good)]), {})
    assert cfg.threshold == 12
    bad = tmp_path / "d.json"
    bad.write_text('{"speed": 1}', encoding="utf-8")
    code, _, err = call("build", "--config", str(bad))
    assert code == 2 and "unknown setting(s) speed" in err


def test_bad_env_value():
    args = build_parser().parse_args(["build"])
    with pytest.raises(ValueError, match="bad value for threshold"):
        resolve_config(args, {"GLOSSNET_THRESHOLD": "many"})
