"""Information-gain decision tree used as the non-causal comparator."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .cdt import Leaf
from .dataset import BinaryDataset, ContextView, majority_outcome


@dataclass(frozen=True)
class GainBranch:
    attribute: int
    gain: float
    edge0: "PlainNode"
    edge1: "PlainNode"

    def child(self, value: int) -> "PlainNode":
        return self.edge1 if value else self.edge0


PlainNode = Union[Leaf, GainBranch]


@dataclass(frozen=True)
class PlainTree:
    root: PlainNode
    h_max: int
    attribute_names: tuple[str, ...]
    outcome_name: str = "Y"
    min_gain: float = 0.0
    criterion: str = "gain"

    @property
    def is_empty(self) -> bool:
        return isinstance(self.root, Leaf)

    def height(self) -> int:
        def h(node):
            return 0 if isinstance(node, Leaf) else 1 + max(h(node.edge0), h(node.edge1))
        return h(self.root)


def _entropy(ones: float, total: float) -> float:
    if total <= 0 or ones <= 0 or ones >= total:
        return 0.0
    p = ones / total
    return float(-(p * np.log2(p) + (1 - p) * np.log2(1 - p)))


def entropy(view: ContextView) -> float:
    zeros, ones = view.outcome_counts()
    return _entropy(ones, zeros + ones)


def information_gain(view: ContextView, attribute: int) -> float:
    x = view.X[:, attribute] == 1
    w = view.weights
    pos = view.y == 1
    n = w.sum()
    if n == 0:
        return 0.0
    n1 = w[x].sum()
    n0 = n - n1
    h = _entropy(w[pos].sum(), n)
    cond = (n1 * _entropy(w[x & pos].sum(), n1) + n0 * _entropy(w[~x & pos].sum(), n0)) / n
    return max(h - cond, 0.0)


def discriminative_score(view: ContextView, attribute: int) -> float:
    """|P(Y=1 | X=1) - P(Y=0 | X=1)| over the view, 0 if X=1 never occurs."""
    if attribute in view.assigned:
        raise ValueError("attribute is fixed by the context")
    x = view.X[:, attribute] == 1
    w = view.weights
    n1 = w[x].sum()
    if n1 == 0:
        return 0.0
    ones = w[x & (view.y == 1)].sum()
    return abs(float(ones - (n1 - ones)) / float(n1))


CRITERIA = {"gain": information_gain, "discriminative": discriminative_score}


def info_gain_tree(data: BinaryDataset, h_max: int = 5, min_gain: float = 0.0,
                   criterion: str = "gain") -> PlainTree:
    """Greedy top-down tree; splits while the best score exceeds ``min_gain``.

    ``criterion="discriminative"`` ranks attributes by
    :func:`discriminative_score` instead of information gain.
    """
    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    if min_gain < 0:
        raise ValueError("min_gain must be >= 0")
    score = CRITERIA[criterion]

    def grow(view: ContextView, free: tuple, depth: int, fallback: int) -> PlainNode:
        if view.n == 0:
            return Leaf(fallback, 0)
        label = majority_outcome(view)
        zeros, ones = view.outcome_counts()
        if not free or depth >= h_max or zeros == 0 or ones == 0:
            return Leaf(label, view.n)
        best_attr, best = None, -1.0
        for a in free:
            s = float(score(view, a))
            if s > best:
                best_attr, best = a, s
        if best <= min_gain:
            return Leaf(label, view.n)
        rest = tuple(a for a in free if a != best_attr)
        kids = [grow(view.restrict(best_attr, v), rest, depth + 1, label) for v in (0, 1)]
        return GainBranch(best_attr, best, kids[0], kids[1])

    root = grow(data.view(), tuple(range(data.m)), 0, 0)
    return PlainTree(root, h_max, data.attribute_names, data.outcome_name, min_gain, criterion)
