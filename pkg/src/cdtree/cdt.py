"""Causal decision tree construction and pruning."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, Union

from .dataset import BinaryDataset, ContextView, majority_outcome
from .stats import PamhResult, chi2_critical, correlated_attributes, pamh, stratify

DEFAULT_ALPHA = 0.05
DEFAULT_MAX_HEIGHT = 5
DEFAULT_CAP = 10


@dataclass(frozen=True)
class Leaf:
    label: int
    support: int


@dataclass(frozen=True)
class Branch:
    """A context-specific causal factor.

    ``test`` is the partial-association test that admitted ``attribute``,
    stratified by ``stratifying`` (attribute indices) into ``strata`` groups.
    """

    attribute: int
    test: PamhResult
    stratifying: tuple[int, ...]
    strata: int
    edge0: "Node"
    edge1: "Node"

    def child(self, value: int) -> "Node":
        return self.edge1 if value else self.edge0


Node = Union[Leaf, Branch]


@dataclass(frozen=True)
class CausalDecisionTree:
    root: Node
    alpha: float
    h_max: int
    attribute_names: tuple[str, ...]
    outcome_name: str = "Y"

    @property
    def is_empty(self) -> bool:
        return isinstance(self.root, Leaf)

    def height(self) -> int:
        return height(self.root)

    def branch_attributes(self) -> set[str]:
        return {self.attribute_names[b.attribute] for _, b in iter_branches(self.root)}

    def n_nodes(self) -> int:
        return count_nodes(self.root)


def height(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(height(node.edge0), height(node.edge1))


def count_nodes(node: Node) -> int:
    if isinstance(node, Leaf):
        return 1
    return 1 + count_nodes(node.edge0) + count_nodes(node.edge1)


def iter_branches(node: Node, path: tuple = ()) -> Iterator[tuple[tuple, Branch]]:
    """Yield ``(context, branch)`` pairs, context being the (index, value)
    assignments from the root down to the branch's parent edge."""
    if isinstance(node, Branch):
        yield path, node
        for v in (0, 1):
            yield from iter_branches(node.child(v), path + ((node.attribute, v),))


def iter_leaves(node: Node, path: tuple = ()) -> Iterator[tuple[tuple, Leaf]]:
    if isinstance(node, Leaf):
        yield path, node
    else:
        for v in (0, 1):
            yield from iter_leaves(node.child(v), path + ((node.attribute, v),))


def choose_split(view: ContextView, candidates, alpha: float, cap: int):
    """Run one split decision in ``view``.

    Returns ``(attribute, result, stratifying, n_strata)`` for the candidate with the
    largest statistic (ties to the lower index), or ``None`` when no
    candidate is correlated with the outcome.
    """
    corr = correlated_attributes(view, sorted(candidates), alpha, cap)
    best = None
    for a in sorted(corr):
        strat = tuple(c for c in corr if c != a)
        strata = stratify(view, a, strat)
        res = pamh(strata, alpha)
        score = res.statistic if res.statistic is not None else -1.0
        if best is None or score > best[0]:
            best = (score, a, res, strat, strata.r)
    if best is None:
        return None
    return best[1:]


def tree_construct(data: BinaryDataset, alpha: float = DEFAULT_ALPHA,
                   h_max: int = DEFAULT_MAX_HEIGHT, cap: int = DEFAULT_CAP) -> CausalDecisionTree:
    """Grow an unpruned causal decision tree.

    At each node the attributes not yet on the path are screened for
    correlation with the outcome; each survivor is tested by Mantel-Haenszel
    stratified on the other survivors, and the strongest significant one
    becomes the branch. At most ``h_max`` branch levels are created.
    """
    chi2_critical(alpha)
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    if cap < 1:
        raise ValueError("cap must be >= 1")

    def grow(view: ContextView, free: frozenset, depth: int, fallback: int) -> Node:
        label = majority_outcome(view) if view.n else fallback
        if not free or depth >= h_max or view.n == 0:
            return Leaf(label, view.n)
        found = choose_split(view, free, alpha, cap)
        if found is None or not found[1].significant:
            return Leaf(label, view.n)
        attr, res, strat, r = found
        rest = free - {attr}
        kids = [grow(view.restrict(attr, v), rest, depth + 1, label) for v in (0, 1)]
        return Branch(attr, res, strat, r, kids[0], kids[1])

    root = grow(data.view(), frozenset(range(data.m)), 0, majority_outcome(data.view()))
    return CausalDecisionTree(root, alpha, h_max, data.attribute_names, data.outcome_name)


def _prune(node: Node) -> Node:
    if isinstance(node, Leaf):
        return node
    e0, e1 = _prune(node.edge0), _prune(node.edge1)
    if isinstance(e0, Leaf) and isinstance(e1, Leaf) and e0.label == e1.label:
        return Leaf(e0.label, e0.support + e1.support)
    if e0 is node.edge0 and e1 is node.edge1:
        return node
    return replace(node, edge0=e0, edge1=e1)


def tree_prune(tree: CausalDecisionTree) -> CausalDecisionTree:
    """Merge sibling leaves with equal labels into their parent, repeatedly."""
    return replace(tree, root=_prune(tree.root))


def build_cdt(data: BinaryDataset, alpha: float = DEFAULT_ALPHA,
              h_max: int = DEFAULT_MAX_HEIGHT, cap: int = DEFAULT_CAP,
              prune: bool = True) -> CausalDecisionTree:
    tree = tree_construct(data, alpha, h_max, cap)
    return tree_prune(tree) if prune else tree
