"""Dependency-parsed glosses: node/tree types, validation and the parse-file format.

Parse file layout (UTF-8)::

    # id = 41551.0
    1<TAB>Grande<TAB>grande<TAB>ADJ<TAB>2<TAB>MOD<TAB>_
    ...
    <blank line>

Columns are index, surface, lemma, category, head, dep_label, features.
Features are ``key=value`` or bare ``key`` items joined by ``|``; ``_`` means none.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .model import Category, MeaningId, ModelError

DEP_LABELS = frozenset(
    "ROOT SUBJ OBJ MOD PMOD PREP REL COORD CONJ DET ADVMOD COMP TRACE".split()
)
TRACE_ROLES = frozenset({"SUBJ", "OBJ", "PLACE", "MEMBER"})


class GlossError(ModelError):
    pass


@dataclass(frozen=True)
class DependencyNode:
    index: int
    surface: str
    lemma: str
    category: str
    head: int
    dep_label: str
    features: tuple[tuple[str, str], ...] = ()

    def feature(self, key: str, default: str | None = None) -> str | None:
        for k, v in self.features:
            if k == key:
                return v
        return default

    def has(self, key: str) -> bool:
        return any(k == key for k, _ in self.features)

    @property
    def antecedent(self) -> int | None:
        value = self.feature("antecedent")
        return int(value) if value is not None and value.isdigit() else None

    def to_line(self) -> str:
        feats = "|".join(k if v == "" else f"{k}={v}" for k, v in self.features) or "_"
        return "\t".join(
            [str(self.index), self.surface, self.lemma, self.category, str(self.head),
             self.dep_label, feats]
        )


def parse_features(text: str) -> tuple[tuple[str, str], ...]:
    if text in ("", "_"):
        return ()
    items = []
    for item in text.split("|"):
        key, _, value = item.partition("=")
        items.append((key, value))
    return tuple(items)


@dataclass(frozen=True)
class DependencyTree:
    nodes: tuple[DependencyNode, ...]
    id: MeaningId | None = None
    _children: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        children: dict[int, list[DependencyNode]] = {}
        for n in self.nodes:
            children.setdefault(n.head, []).append(n)
        object.__setattr__(self, "_children", children)

    def node(self, index: int) -> DependencyNode:
        for n in self.nodes:
            if n.index == index:
                return n
        raise GlossError(f"no node {index}")

    def children(self, index: int) -> list[DependencyNode]:
        return list(self._children.get(index, []))

    def depth(self, index: int) -> int:
        d, cur, seen = 0, self.node(index), set()
        while cur.head != 0:
            if cur.index in seen:
                raise GlossError("cycle in head links")
            seen.add(cur.index)
            cur = self.node(cur.head)
            d += 1
        return d

    def __len__(self) -> int:
        return len(self.nodes)


def validate_tree(tree: DependencyTree) -> list[str]:
    """Return a list of violations; an empty list means the tree is well formed."""
    problems = []
    if not tree.nodes:
        return ["empty tree"]
    indices = [n.index for n in tree.nodes]
    if len(set(indices)) != len(indices):
        problems.append("duplicate node indices")
    if indices != list(range(1, len(indices) + 1)):
        problems.append("node indices are not 1..n in order")
    known = set(indices)
    roots = [n for n in tree.nodes if n.head == 0]
    if not roots:
        problems.append("no root")
    elif len(roots) > 1:
        problems.append("multiple roots: nodes " + ", ".join(str(n.index) for n in roots))
    for n in tree.nodes:
        if n.head == n.index:
            problems.append(f"node {n.index}: self-loop")
        elif n.head != 0 and n.head not in known:
            problems.append(f"node {n.index}: head {n.head} does not exist")
        if n.dep_label not in DEP_LABELS:
            problems.append(f"node {n.index}: unknown dependency label {n.dep_label}")
        if n.category not in Category.__members__:
            problems.append(f"node {n.index}: unknown category {n.category}")
        if (n.head == 0) != (n.dep_label == "ROOT"):
            problems.append(f"node {n.index}: ROOT label must go with head 0")
        if n.dep_label == "TRACE":
            ant = n.antecedent
            if ant is None or ant not in known:
                problems.append(f"node {n.index}: trace without valid antecedent")
            if n.feature("role") not in TRACE_ROLES:
                problems.append(f"node {n.index}: trace without valid role")
    # every node must reach the root in at most len(nodes) steps
    by_index = {n.index: n for n in tree.nodes}
    for n in tree.nodes:
        cur, steps = n, 0
        while cur.head != 0 and steps <= len(tree.nodes):
            cur = by_index.get(cur.head)
            if cur is None:
                break
            steps += 1
        if cur is not None and cur.head != 0:
            problems.append(f"node {n.index}: not connected to the root (cycle)")
    return problems


def gloss_head(tree: DependencyTree) -> DependencyNode:
    problems = validate_tree(tree)
    if problems:
        raise GlossError("invalid tree: " + "; ".join(problems))
    return next(n for n in tree.nodes if n.head == 0)


def parse_tree_lines(lines: list[str], tree_id: MeaningId | None = None, where: str = "") -> DependencyTree:
    nodes = []
    for offset, line in lines:
        cols = line.split("\t")
        if len(cols) != 7:
            raise GlossError(f"{where}line {offset}: expected 7 columns, got {len(cols)}")
        try:
            index, head = int(cols[0]), int(cols[4])
        except ValueError:
            raise GlossError(f"{where}line {offset}: index and head must be integers") from None
        nodes.append(DependencyNode(index, cols[1], cols[2], cols[3], head, cols[5],
                                    parse_features(cols[6])))
    return DependencyTree(tuple(nodes), tree_id)


def read_parses(path: str | Path) -> dict[MeaningId, DependencyTree]:
    """Read a parse file into trees keyed by meaning id."""
    path = Path(path)
    trees: dict[MeaningId, DependencyTree] = {}
    current: MeaningId | None = None
    start = 0
    block: list[tuple[int, str]] = []

    def flush():
        nonlocal current, block
        if current is None:
            if block:
                raise GlossError(f"{path}:{block[0][0]}: node lines before '# id =' header")
            return
        if current in trees:
            raise GlossError(f"{path}:{start}: duplicate parse for {current}")
        trees[current] = parse_tree_lines(block, current, f"{path}:")
        current, block = None, []

    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                flush()
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                if key.strip() == "id":
                    flush()
                    current, start = MeaningId.parse(value), lineno
                continue
            block.append((lineno, line))
    flush()
    return trees


def format_tree(tree: DependencyTree) -> str:
    head = f"# id = {tree.id}\n" if tree.id is not None else ""
    return head + "\n".join(n.to_line() for n in tree.nodes) + "\n"


def write_parses(trees, path: str | Path) -> None:
    text = "\n".join(format_tree(t) for t in trees)
    Path(path).write_text(text, encoding="utf-8")


def conjuncts(tree: DependencyTree, index: int) -> list[DependencyNode]:
    """Nodes coordinated with ``index``: direct CONJ children, or CONJ children of a
    COORD child. Nested coordinations are followed."""
    out = []
    for child in tree.children(index):
        if child.dep_label == "CONJ":
            out.append(child)
            out.extend(conjuncts(tree, child.index))
        elif child.dep_label == "COORD":
            for grand in tree.children(child.index):
                if grand.dep_label == "CONJ":
                    out.append(grand)
                    out.extend(conjuncts(tree, grand.index))
    return out
