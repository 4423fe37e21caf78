"""Golden frames: expected triples per meaning and their verification against a net.

Golden file layout (UTF-8)::

    [gorilla]
    meaning = 41551.0
    scope = frame            # frame: the meaning's own DIRECT and RAISED triples
                             # anchored: every net triple anchored in the meaning
                             # lemma: every net triple whose subject is the lemma
    mode = exact             # exact: triple-set equality; contains: expected is a subset
    source = gorilla frame listing; tree reconstructed
    expect = gorilla:NOUN TOKEN_OF scimmia:NOUN
    absent = comprare:VERB HAS_OBJ prodotto:NOUN
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .model import MeaningId, ModelError, Triple

SCOPES = ("frame", "anchored", "lemma")
MODES = ("exact", "contains")


class GoldenError(ModelError):
    pass


@dataclass
class GoldenFrame:
    name: str
    meaning: MeaningId
    expected: list[Triple] = field(default_factory=list)
    absent: list[Triple] = field(default_factory=list)
    scope: str = "frame"
    mode: str = "contains"
    source: str = ""

    @property
    def reconstructed(self) -> bool:
        return "reconstructed" in self.source


@dataclass
class GoldenResult:
    name: str
    passed: bool
    missing: list[Triple] = field(default_factory=list)
    unexpected: list[Triple] = field(default_factory=list)
    present_but_forbidden: list[Triple] = field(default_factory=list)
    message: str = ""

    def diff(self) -> str:
        lines = [f"- {t.short()}" for t in self.missing]
        lines += [f"+ {t.short()}" for t in self.unexpected]
        lines += [f"! {t.short()}" for t in self.present_but_forbidden]
        return "\n".join(lines)


@dataclass
class GoldenReport:
    results: list[GoldenResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def format(self) -> str:
        out = []
        for r in self.results:
            out.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f": {r.message}" if r.message else ""))
            d = r.diff()
            if d:
                out.extend("    " + line for line in d.splitlines())
        return "\n".join(out) + "\n"


def parse_goldens(text: str, source: str = "<goldens>") -> list[GoldenFrame]:
    goldens: list[GoldenFrame] = []
    current: GoldenFrame | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(" #", 1)[0].strip()
        if not line or line.startswith("#"):
            continue
        where = f"{source}:{lineno}"
        if line.startswith("[") and line.endswith("]"):
            current = GoldenFrame(line[1:-1].strip(), MeaningId(0))
            goldens.append(current)
            continue
        if current is None:
            raise GoldenError(f"{where}: field outside a [golden] section")
        key, sep, value = (p.strip() for p in line.partition("="))
        if not sep:
            raise GoldenError(f"{where}: expected 'key = value'")
        try:
            if key == "meaning":
                current.meaning = MeaningId.parse(value)
            elif key == "scope":
                if value not in SCOPES:
                    raise GoldenError(f"scope must be one of {SCOPES}")
                current.scope = value
            elif key == "mode":
                if value not in MODES:
                    raise GoldenError(f"mode must be one of {MODES}")
                current.mode = value
            elif key == "source":
                current.source = value
            elif key == "expect":
                current.expected.append(Triple.parse_short(value))
            elif key == "absent":
                current.absent.append(Triple.parse_short(value))
            else:
                raise GoldenError(f"unknown key '{key}'")
        except ModelError as exc:
            raise GoldenError(f"{where}: {exc}") from None
    return goldens


def load_goldens(path) -> list[GoldenFrame]:
    path = Path(path)
    return parse_goldens(path.read_text(encoding="utf-8"), str(path))


def scoped_triples(net, golden: GoldenFrame) -> list[Triple]:
    frame = net.frames.get(golden.meaning)
    if frame is None:
        return []
    if golden.scope == "frame":
        return list(frame.triples)
    if golden.scope == "anchored":
        return [t for t in net.triples() if t.anchor.entry == golden.meaning.entry]
    return [t for t in net.triples() if t.subject == frame.unit]


def verify_golden(net, goldens) -> GoldenReport:
    """Compare each golden with the net; ``absent`` triples must be missing from the whole net."""
    results = []
    net_keys = net.keys()
    for g in goldens:
        if g.meaning not in net.frames:
            results.append(GoldenResult(g.name, False, list(g.expected),
                                        message=f"meaning {g.meaning} not in net"))
            continue
        actual = scoped_triples(net, g)
        have = {t.key for t in actual}
        want = {t.key for t in g.expected}
        missing = [t for t in g.expected if t.key not in have]
        unexpected = []
        if g.mode == "exact":
            unexpected = sorted((t for t in actual if t.key not in want), key=Triple.sort_key)
        forbidden = [t for t in g.absent if t.key in net_keys]
        ok = not missing and not unexpected and not forbidden
        results.append(GoldenResult(g.name, ok, missing, unexpected, forbidden))
    return GoldenReport(results)
