"""End-to-end run: lexicon -> tagged frames -> functor rewriting -> net -> derivation passes."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .entity_tagger import classify_gloss, frame_tags, hypernym_node, node_tags, raise_hypernym_attributes
from .functors import detect_functors, mark_relative_value, raise_and_delete
from .lexicon import Lexicon, load_lexicon
from .model import ModelError, SemanticFrame
from .net import DEFAULT_DEPTH_LIMIT, DEFAULT_PASSES, PASSES, SemanticNet, build_net, derive, dumps_net
from .primitives import (DEFAULT_THRESHOLD, HeadFrequencyTable, PrimitiveInventory, build_inventory,
                         count_heads, stop_status)
from .relation_tagger import translate
from .rules import RuleSet, load_rules

log = logging.getLogger(__name__)


class ConfigError(ModelError):
    pass


def data_path(name: str) -> Path:
    return Path(str(resources.files("glossnet") / "data" / name))


@dataclass
class PipelineConfig:
    lexicon_path: Path = field(default_factory=lambda: data_path("lexicon.tsv"))
    parse_path: Path | None = None
    rules_path: Path = field(default_factory=lambda: data_path("rules.txt"))
    output_dir: Path = Path("out")
    threshold: int = DEFAULT_THRESHOLD
    depth_limit: int = DEFAULT_DEPTH_LIMIT
    primitive_rounds: int = 2
    passes: tuple[str, ...] = DEFAULT_PASSES

    def validate(self) -> None:
        for label, path in [("lexicon", self.lexicon_path), ("parses", self.parse_path),
                            ("rules", self.rules_path)]:
            if path is not None and not Path(path).is_file():
                raise ConfigError(f"{label} file not found: {path}")
        if self.threshold < 1:
            raise ConfigError(f"threshold must be >= 1, got {self.threshold}")
        if self.depth_limit < 1:
            raise ConfigError(f"depth limit must be >= 1, got {self.depth_limit}")
        if self.primitive_rounds < 0:
            raise ConfigError(f"rounds must be >= 0, got {self.primitive_rounds}")
        unknown = [p for p in self.passes if p not in PASSES]
        if unknown:
            raise ConfigError(f"unknown pass(es) {', '.join(unknown)}; known: {', '.join(PASSES)}")


@dataclass
class FrameResult:
    frame: SemanticFrame
    traces: list = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class PipelineResult:
    lexicon: Lexicon
    rules: RuleSet
    inventory: PrimitiveInventory
    table: HeadFrequencyTable
    frames: dict = field(default_factory=dict)
    net: SemanticNet | None = None
    diagnostics: dict = field(default_factory=dict)


def tag_and_translate(entry, rules: RuleSet, inventory: PrimitiveInventory) -> FrameResult:
    """One meaning through tagging, translation, functor rewriting and marker flagging."""
    tags = node_tags(entry.gloss, inventory, rules)
    frame = translate(entry, tags, rules, inventory, frame_tags(entry, inventory, rules))
    chains = detect_functors(frame, rules.functors)
    rewritten = raise_and_delete(frame, chains)
    frame = mark_relative_value(rewritten.frame, rules.word_list("marker"))
    return FrameResult(frame, rewritten.traces, rewritten.diagnostics)


def build_frames(lex: Lexicon, rules: RuleSet, inventory: PrimitiveInventory) -> dict:
    results = {}
    for entry in lex:
        if entry.gloss is None:
            continue
        results[entry.id] = tag_and_translate(entry, rules, inventory)
    # lift a primitive hypernym's tags and manner qualities onto the lemma
    by_lemma: dict[tuple, SemanticFrame] = {}
    for mid in sorted(results):
        f = results[mid].frame
        by_lemma.setdefault((f.lemma, f.category), f)
    for mid, res in results.items():
        entry = lex.get(mid)
        hyper = hypernym_node(entry.gloss)
        if hyper.lemma not in inventory or hyper.lemma == entry.lemma:
            continue
        hyper_frame = by_lemma.get((hyper.lemma, hyper.category))
        if hyper_frame is not None:
            res.frame = raise_hypernym_attributes(res.frame, hyper_frame)
    return dict(sorted(results.items()))


def refine_inventory(lex, rules, table, seeds, rounds, depth_limit):
    """Alternate net building and inventory building until stable or out of rounds."""
    inventory = seeds
    for _ in range(rounds):
        frames = build_frames(lex, rules, inventory)
        net = build_net(r.frame for r in frames.values())
        stop = {}
        for lemma in table.rows:
            stop[lemma] = stop_status(net, lemma, depth_limit) if lemma in net.lemma_index else True
        refined = build_inventory(table, seeds, stop)
        if refined.entries == inventory.entries and refined.pending == inventory.pending:
            inventory = refined
            break
        inventory = refined
    return inventory


def run(cfg: PipelineConfig) -> PipelineResult:
    cfg.validate()
    lex = load_lexicon(cfg.lexicon_path, cfg.parse_path)
    rules = load_rules(cfg.rules_path)
    table = count_heads(lex, cfg.threshold)
    seeds = PrimitiveInventory.from_rules(rules)
    inventory = refine_inventory(lex, rules, table, seeds, cfg.primitive_rounds, cfg.depth_limit)
    frames = build_frames(lex, rules, inventory)
    net = build_net(r.frame for r in frames.values())
    net = derive(net, cfg.passes, cfg.depth_limit)
    result = PipelineResult(lex, rules, inventory, table, frames, net)
    result.diagnostics = diagnostics(result)
    return result


def diagnostics(result: PipelineResult) -> dict:
    skipped, warnings, low, classes = [], [], [], Counter()
    ambiguous = Counter()
    for mid, res in result.frames.items():
        skipped.extend(res.diagnostics)
        warnings.extend(w for w in res.frame.warnings if w not in res.diagnostics)
        entry = result.lexicon.get(mid)
        cls = classify_gloss(entry.gloss, entry.category)
        classes[str(cls).rstrip("?")] += 1
        if cls.low_confidence:
            low.append(f"{mid} {entry.lemma}: {cls}")
        for t in res.frame.triples:
            if t.relation.ambiguous:
                ambiguous[t.relation.name] += 1
    return {
        "ambiguous_relations": dict(sorted(ambiguous.items())),
        "causative_heads": result.table.causative,
        "gloss_classes": dict(sorted(classes.items())),
        "invalid_trees": result.table.errors,
        "low_confidence": low,
        "pending_primitives": sorted(result.inventory.pending),
        "skipped_chains": skipped,
        "warnings": warnings,
    }


def format_stats(net: SemanticNet, table: HeadFrequencyTable | None = None) -> str:
    """Tally of frames, triples per provenance and per relation, and gloss-head counts."""
    triples = net.triples()
    lines = [f"frames\t{len(net.frames)}", f"triples\t{len(triples)}"]
    prov = Counter(t.provenance for t in triples)
    rel = Counter(t.relation.name for t in triples)
    lines += [f"provenance\t{k}\t{v}" for k, v in sorted(prov.items())]
    lines += [f"relation\t{k}\t{v}" for k, v in sorted(rel.items())]
    lines.append(f"ambiguous\t{sum(1 for t in triples if t.relation.ambiguous)}")
    if table is not None:
        lines += [f"head\t{w}\t{c}" for w, c in table.sorted_rows()]
    return "\n".join(lines) + "\n"


def write_outputs(result: PipelineResult, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "net.txt": dumps_net(result.net),
        "diagnostics.json": json.dumps(result.diagnostics, indent=2, ensure_ascii=False, sort_keys=True) + "\n",
        "stats.txt": format_stats(result.net, result.table),
    }
    paths = []
    for name, text in files.items():
        p = out / name
        p.write_text(text, encoding="utf-8")
        paths.append(p)
    return paths


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    result = run(cfg)
    write_outputs(result, cfg.output_dir)
    return result
