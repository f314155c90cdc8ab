"""Synthetic data with planted causal structure, and recall scoring."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cdt import CausalDecisionTree
from .dataset import BinaryDataset

N_RECORDS = 10_000
MAX_STRUCTURE_TRIES = 200


@dataclass(frozen=True)
class GroundTruth:
    outcome: str
    direct_causes: frozenset[str]
    # ((assignments as (name, value) pairs), names affecting Y in that context)
    context_truths: tuple[tuple[tuple[tuple[str, int], ...], frozenset[str]], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "direct_causes", frozenset(self.direct_causes))
        if self.outcome in self.direct_causes:
            raise ValueError("outcome cannot be its own cause")

    def to_json(self) -> str:
        doc = {
            "outcome": self.outcome,
            "causes": sorted(self.direct_causes),
            "contexts": [
                {"context": {k: v for k, v in ctx}, "causes": sorted(names)}
                for ctx, names in self.context_truths
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GroundTruth":
        doc = json.loads(text)
        ctxs = tuple(
            (tuple(sorted((k, int(v)) for k, v in c["context"].items())), frozenset(c["causes"]))
            for c in doc.get("contexts", [])
        )
        return cls(doc["outcome"], frozenset(doc["causes"]), ctxs)

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "GroundTruth":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class EvalReport:
    recall: float
    found: frozenset[str] = field(default_factory=frozenset)
    missed: frozenset[str] = field(default_factory=frozenset)

    def to_json(self) -> str:
        return json.dumps({"recall": self.recall, "found": sorted(self.found),
                           "missed": sorted(self.missed)}, indent=2)


def _names(k: int) -> list[str]:
    return [f"v{i}" for i in range(1, k + 1)]


def _dataset(values: np.ndarray, names: list[str], outcome: int) -> BinaryDataset:
    keep = [i for i in range(values.shape[1]) if i != outcome]
    return BinaryDataset(tuple(names[i] for i in keep), names[outcome],
                         values[:, keep], values[:, outcome],
                         np.ones(values.shape[0], dtype=np.int64))


def _random_dag(num_vars: int, rng: np.random.Generator, max_parents: int) -> list[list[int]]:
    """Parent lists over a random topological order."""
    order = rng.permutation(num_vars)
    edge_p = min(1.0, 4.0 / max(num_vars - 1, 1))
    parents: list[list[int]] = [[] for _ in range(num_vars)]
    for pos in range(1, num_vars):
        child = order[pos]
        earlier = order[:pos]
        picked = earlier[rng.random(pos) < edge_p]
        if len(picked) > max_parents:
            picked = rng.choice(picked, max_parents, replace=False)
        parents[child] = sorted(int(p) for p in picked)
    return parents


def _topo(parents: list[list[int]]) -> list[int]:
    done, out = set(), []

    def visit(v):
        if v in done:
            return
        for p in parents[v]:
            visit(p)
        done.add(v)
        out.append(v)

    for v in range(len(parents)):
        visit(v)
    return out


def forward_sample(parents: list[list[int]], cpts: list[np.ndarray], n: int,
                   rng: np.random.Generator) -> np.ndarray:
    """Ancestral sampling. ``cpts[v][code]`` is P(v=1) for the parent
    configuration ``code`` (first parent is the most significant bit)."""
    values = np.zeros((n, len(parents)), dtype=np.int8)
    for v in _topo(parents):
        code = np.zeros(n, dtype=np.int64)
        for p in parents[v]:
            code = code * 2 + values[:, p]
        values[:, v] = rng.random(n) < cpts[v][code]
    return values


def gen_random_bn(num_vars: int, target_degree: int, seed: int,
                  n: int = N_RECORDS, max_parents: int = 4):
    """Random causal Bayesian network with uniform [0.1, 0.9] CPT entries.

    A node with exactly ``target_degree`` neighbours (parents plus
    children) becomes the outcome; its neighbours are the ground truth.
    """
    if not 3 <= target_degree <= 7:
        raise ValueError("target_degree must lie in [3, 7]")
    if num_vars < target_degree + 1:
        raise ValueError("num_vars must be at least target_degree + 1")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_STRUCTURE_TRIES):
        parents = _random_dag(num_vars, rng, max_parents)
        degree = np.zeros(num_vars, dtype=int)
        for v, ps in enumerate(parents):
            degree[v] += len(ps)
            for p in ps:
                degree[p] += 1
        hits = np.flatnonzero(degree == target_degree)
        if len(hits):
            break
    else:
        raise RuntimeError(f"no node of degree {target_degree} after "
                           f"{MAX_STRUCTURE_TRIES} random structures")
    outcome = int(rng.choice(hits))
    cpts = [rng.uniform(0.1, 0.9, size=2 ** len(ps)) for ps in parents]
    values = forward_sample(parents, cpts, n, rng)
    names = _names(num_vars)
    truth = {names[p] for p in parents[outcome]}
    truth |= {names[c] for c, ps in enumerate(parents) if outcome in ps}
    return _dataset(values, names, outcome), GroundTruth(names[outcome], frozenset(truth))


def _logistic(z):
    return 1.0 / (1.0 + np.exp(-z))


def gen_single_edge(num_vars: int, effect_strength: float, seed: int,
                    n: int = N_RECORDS, context_strength: float = 0.0):
    """One cause ``v1`` of the outcome ``v<num_vars>``; everything else noise.

    P(Y=1) = logistic(b0 + effect_strength * v1), with b0 centring the two
    probabilities around 1/2. A non-zero ``context_strength`` plants ``v2``
    as a cause of Y only where v1 = 1.
    """
    if num_vars < 2:
        raise ValueError("num_vars must be >= 2")
    if context_strength and num_vars < 3:
        raise ValueError("a planted context cause needs num_vars >= 3")
    rng = np.random.default_rng(seed)
    values = (rng.random((n, num_vars)) < 0.5).astype(np.int8)
    cause = values[:, 0]
    z = effect_strength * (cause - 0.5)
    if context_strength:
        z = z + context_strength * cause * (values[:, 1] - 0.5)
    values[:, -1] = rng.random(n) < _logistic(z)
    names = _names(num_vars)
    ctx = ()
    if context_strength:
        ctx = (((names[0], 1),), frozenset({names[1]})),
    return _dataset(values, names, num_vars - 1), GroundTruth(names[-1], frozenset({names[0]}), ctx)


def logistic_contrast(effect_strength: float) -> float:
    """P(Y=1|cause=1) - P(Y=1|cause=0) under :func:`gen_single_edge`."""
    return float(_logistic(effect_strength / 2) - _logistic(-effect_strength / 2))


def gen_noise(num_vars: int, n: int, seed: int) -> BinaryDataset:
    """``num_vars`` i.i.d. fair-coin columns; the last is the outcome."""
    if num_vars < 1 or n < 1:
        raise ValueError("num_vars and n must be >= 1")
    rng = np.random.default_rng(seed)
    values = (rng.random((n, num_vars + 1)) < 0.5).astype(np.int8)
    names = [*_names(num_vars), "y"]
    return _dataset(values, names, num_vars)


def eval_recall(tree: CausalDecisionTree, truth: GroundTruth) -> EvalReport:
    if not truth.direct_causes:
        raise ValueError("ground truth has no causes")
    found = frozenset(tree.branch_attributes())
    hit = found & truth.direct_causes
    return EvalReport(len(hit) / len(truth.direct_causes), found, truth.direct_causes - found)
