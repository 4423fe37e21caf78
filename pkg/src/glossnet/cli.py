"""Command-line interface.

Settings resolve in order: built-in defaults, ``--config`` file, ``GLOSSNET_*``
environment variables, command-line flags (last wins).
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import sys
from pathlib import Path

from .entity_tagger import classify_gloss, frame_tags
from .functors import format_trace
from .golden import load_goldens, verify_golden
from .lexicon import load_lexicon
from .model import MeaningId, ModelError
from .net import dumps_net, load_net, parse_pattern, query, save_net, to_dot, derive
from .pipeline import ConfigError, PipelineConfig, data_path, format_stats, run, write_outputs
from .primitives import count_heads, format_records, format_table, read_reference_table

log = logging.getLogger("glossnet")

ENV_PREFIX = "GLOSSNET_"
SETTINGS = {
    # name: (config attribute, converter)
    "lexicon": ("lexicon_path", Path),
    "parses": ("parse_path", Path),
    "rules": ("rules_path", Path),
    "out": ("output_dir", Path),
    "threshold": ("threshold", int),
    "depth_limit": ("depth_limit", int),
    "rounds": ("primitive_rounds", int),
    "passes": ("passes", lambda s: tuple(p for p in str(s).replace(",", " ").split() if p)),
}


def read_config_file(path) -> dict[str, str]:
    """Read ``key = value`` settings from a JSON object or an INI ``[glossnet]`` section."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror}") from None
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: expected a JSON object")
    else:
        parser = configparser.ConfigParser()
        try:
            parser.read_string(text if text.lstrip().startswith("[") else "[glossnet]\n" + text, str(path))
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from None
        data = dict(parser["glossnet"]) if parser.has_section("glossnet") else {}
    unknown = [k for k in data if k.replace("-", "_") not in SETTINGS]
    if unknown:
        raise ConfigError(f"{path}: unknown setting(s) {', '.join(sorted(unknown))}")
    return {k.replace("-", "_"): v for k, v in data.items()}


def resolve_config(args, environ=None) -> PipelineConfig:
    environ = os.environ if environ is None else environ
    values: dict[str, object] = {}
    if args.config:
        values.update(read_config_file(args.config))
    for name in SETTINGS:
        env = environ.get(ENV_PREFIX + name.upper())
        if env:
            values[name] = env
    for name in SETTINGS:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    cfg = PipelineConfig()
    for name, raw in values.items():
        attr, conv = SETTINGS[name]
        try:
            setattr(cfg, attr, conv(raw))
        except (TypeError, ValueError):
            raise ConfigError(f"bad value for {name}: {raw!r}") from None
    if getattr(args, "no_passes", False):
        cfg.passes = ()
    cfg.validate()
    return cfg


def _meaning(text: str) -> MeaningId:
    try:
        return MeaningId.parse(text)
    except ModelError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _frame_result(result, mid: MeaningId):
    res = result.frames.get(mid)
    if res is None:
        raise ModelError(f"meaning {mid} not in lexicon or has no gloss")
    return res


def _net_from(args, cfg):
    if getattr(args, "net", None):
        return load_net(args.net), None
    result = run(cfg)
    return result.net, result


def cmd_ingest(args, cfg, out):
    lex = load_lexicon(cfg.lexicon_path, cfg.parse_path)
    table = count_heads(lex, cfg.threshold)
    glossed = sum(1 for e in lex if e.gloss is not None)
    out.write(f"meanings\t{len(lex)}\nglossed\t{glossed}\ninvalid_trees\t{len(table.errors)}\n")
    for err in table.errors:
        out.write(f"invalid\t{err}\n")
    out.write(format_records(table))
    return 0


def cmd_tag(args, cfg, out):
    result = run(cfg)
    for mid, res in result.frames.items():
        entry = result.lexicon.get(mid)
        cls = classify_gloss(entry.gloss, entry.category)
        tags = frame_tags(entry, result.inventory, result.rules)
        out.write(f"{mid}\t{entry.lemma}\t{entry.category}\t{cls}\t[{','.join(tags)}]\n")
    return 0


def cmd_frame(args, cfg, out):
    res = _frame_result(run(cfg), args.meaning)
    out.write(res.frame.header() + "\n")
    for t in res.frame.triples:
        out.write(t.short() + "\n")
    for w in res.frame.warnings:
        out.write(f"# warning: {w}\n")
    return 0


def cmd_trace(args, cfg, out):
    res = _frame_result(run(cfg), args.meaning)
    if not res.traces:
        out.write(f"# no functor chains in {args.meaning}\n")
    for i, steps in enumerate(res.traces):
        if i:
            out.write("\n")
        out.write(format_trace(steps))
    for d in res.diagnostics:
        out.write(f"# {d}\n")
    return 0


def cmd_build(args, cfg, out):
    result = run(cfg)
    paths = write_outputs(result, cfg.output_dir)
    for p in paths:
        out.write(f"wrote {p}\n")
    return 0


def cmd_derive(args, cfg, out):
    if args.net:
        net = derive(load_net(args.net), cfg.passes, cfg.depth_limit)
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        target = cfg.output_dir / "net.txt"
        save_net(net, target)
        out.write(f"wrote {target}\n")
        return 0
    return cmd_build(args, cfg, out)


def cmd_query(args, cfg, out):
    s, r, o = parse_pattern(args.pattern)
    net, _ = _net_from(args, cfg)
    hits = query(net, s, r, o)
    for t in hits:
        out.write((t.to_line() if args.full else t.short()) + "\n")
    return 0 if hits else 1


def cmd_export(args, cfg, out):
    net, _ = _net_from(args, cfg)
    out.write(to_dot(net) if args.graph or args.format == "graph" else dumps_net(net))
    return 0


def cmd_stats(args, cfg, out):
    if args.reference:
        table, notes = read_reference_table(data_path("table1_reference.tsv"))
        out.write(format_table(table, notes))
        return 0
    net, result = _net_from(args, cfg)
    out.write(format_stats(net, result.table if result else None))
    return 0


def cmd_verify(args, cfg, out):
    goldens = load_goldens(args.goldens or data_path("goldens.txt"))
    net, _ = _net_from(args, cfg)
    report = verify_golden(net, goldens)
    out.write(report.format())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="settings file (.json, or key = value lines)")
    common.add_argument("--lexicon", help="lexicon TSV file")
    common.add_argument("--parses", help="gloss parse file (default: lexicon path with .parses suffix)")
    common.add_argument("--rules", help="rule file")
    common.add_argument("--out", help="output directory")
    common.add_argument("--threshold", type=int, help="minimum gloss-head count for primitive candidates")
    common.add_argument("--depth-limit", dest="depth_limit", type=int, help="taxonomy walk depth limit")
    common.add_argument("--rounds", type=int, help="primitive refinement rounds")
    common.add_argument("--passes", help="comma-separated derivation passes")
    common.add_argument("--no-passes", dest="no_passes", action="store_true", help="skip derivation")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="glossnet", description="Build a semantic net from dictionary glosses.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("ingest", parents=[common], help="load lexicon and parses, print gloss-head counts")
    sub.add_parser("tag", parents=[common], help="print gloss class and tags per meaning")
    for name, helptext in [("frame", "print one meaning's frame"), ("trace", "print functor rewrite trace")]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("meaning", type=_meaning)
    sub.add_parser("build", parents=[common], help="run the pipeline and write net, diagnostics, stats")
    sp = sub.add_parser("derive", parents=[common], help="apply derivation passes")
    sp.add_argument("--net", help="existing net file to derive from")
    sp = sub.add_parser("query", parents=[common], help="match triples against SUBJ/REL/OBJ globs")
    sp.add_argument("pattern")
    sp.add_argument("--net")
    sp.add_argument("--full", action="store_true", help="print full triple lines")
    sp = sub.add_parser("export", parents=[common], help="write the net as lines or DOT")
    sp.add_argument("--net")
    sp.add_argument("--graph", action="store_true", help="same as --format graph")
    sp.add_argument("--format", choices=("lines", "graph"), default="lines")
    sp = sub.add_parser("stats", parents=[common], help="print net tallies")
    sp.add_argument("--net")
    sp.add_argument("--reference", action="store_true", help="print the bundled reference frequency table")
    sp = sub.add_parser("verify", parents=[common], help="check golden frames")
    sp.add_argument("--net")
    sp.add_argument("--goldens")
    return p


COMMANDS = {
    "ingest": cmd_ingest, "tag": cmd_tag, "frame": cmd_frame, "trace": cmd_trace,
    "build": cmd_build, "derive": cmd_derive, "query": cmd_query, "export": cmd_export,
    "stats": cmd_stats, "verify": cmd_verify,
}


def report_error(exc: Exception, err) -> None:
    msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
    record = {"error": type(exc).__name__, "message": str(msg)}
    err.write(json.dumps(record, ensure_ascii=False) + "\n")
    err.write(f"glossnet: error: {record['message']}\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg, out)
    except (ModelError, KeyError, OSError) as exc:
        report_error(exc, err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
