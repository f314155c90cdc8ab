"""Stratified 2x2 statistics: odds ratios, Mantel-Haenszel partial association,
Pearson screening and stratified average causal effects."""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

import numpy as np

from .dataset import ContextView

# Undefined / not-applicable results are represented by None.


@dataclass(frozen=True)
class StratumTable:
    """Weighted 2x2 counts of candidate Q (rows) against outcome Y (columns)."""

    n11: int  # Q=1, Y=1
    n12: int  # Q=1, Y=0
    n21: int  # Q=0, Y=1
    n22: int  # Q=0, Y=0

    def __post_init__(self):
        for c in (self.n11, self.n12, self.n21, self.n22):
            if c < 0:
                raise ValueError("cell counts must be non-negative")

    @property
    def row1(self) -> int:
        return self.n11 + self.n12

    @property
    def row2(self) -> int:
        return self.n21 + self.n22

    @property
    def col1(self) -> int:
        return self.n11 + self.n21

    @property
    def col2(self) -> int:
        return self.n12 + self.n22

    @property
    def total(self) -> int:
        return self.n11 + self.n12 + self.n21 + self.n22

    def cells(self) -> tuple[int, int, int, int]:
        return self.n11, self.n12, self.n21, self.n22

    def swap_rows(self) -> "StratumTable":
        return StratumTable(self.n21, self.n22, self.n11, self.n12)

    def swap_columns(self) -> "StratumTable":
        return StratumTable(self.n12, self.n11, self.n22, self.n21)


@dataclass(frozen=True, eq=False)
class StrataSet:
    """Per-stratum 2x2 tables; ``counts`` rows are (n11, n12, n21, n22)."""

    stratifying: tuple[int, ...]
    key_array: np.ndarray  # (r, len(stratifying)) stratum values
    counts: np.ndarray

    @classmethod
    def from_tables(cls, tables: Sequence[StratumTable], keys=None,
                    stratifying: tuple[int, ...] = ()) -> "StrataSet":
        counts = np.array([t.cells() for t in tables], dtype=np.int64).reshape(-1, 4)
        if keys is None:
            keys = [(i,) for i in range(len(counts))]
        key_array = np.array(keys, dtype=np.int64).reshape(len(counts), -1)
        return cls(tuple(stratifying), key_array, counts)

    @property
    def keys(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.key_array.tolist()))

    @property
    def r(self) -> int:
        return len(self.counts)

    @property
    def tables(self) -> tuple[StratumTable, ...]:
        return tuple(StratumTable(*map(int, c)) for c in self.counts)

    def __iter__(self):
        return iter(zip(self.keys, self.tables))

    def as_dict(self) -> dict[tuple[int, ...], StratumTable]:
        return dict(zip(self.keys, self.tables))


@dataclass(frozen=True)
class PamhResult:
    statistic: float | None
    numerator_terms: tuple[float, ...]
    variance_terms: tuple[float, ...]
    alpha: float
    critical_value: float
    significant: bool

    @property
    def applicable(self) -> bool:
        return self.statistic is not None


@dataclass(frozen=True)
class AceEstimate:
    per_stratum: tuple[tuple[tuple[int, ...], float | None, float], ...]
    aggregate: float | None


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


def chi2_critical(alpha: float) -> float:
    """Upper-alpha quantile of chi-square with one degree of freedom."""
    _check_alpha(alpha)
    z = NormalDist().inv_cdf(1.0 - alpha / 2.0)
    return z * z


COUNTING_SORT_MAX_BITS = 16


def _group_keys(X: np.ndarray) -> np.ndarray:
    """Integer code per row of the 0/1 matrix ``X`` (lexicographic order)."""
    k = X.shape[1]
    if k <= 62:
        weights = np.left_shift(np.int64(1), np.arange(k - 1, -1, -1, dtype=np.int64))
        return X.astype(np.int64) @ weights
    _, inv = np.unique(X, axis=0, return_inverse=True)
    return inv.ravel().astype(np.int64)


def stratify(view: ContextView, candidate: int, stratifying: Sequence[int],
             method: str = "auto") -> StrataSet:
    """Group the view by its values on ``stratifying`` and tabulate
    ``candidate`` against the outcome inside each group.

    Rows are ordered by their packed stratum code: a counting sort when the
    key space is small (``method="counting"``, O(n + 2**k)), otherwise a
    comparison sort (``method="argsort"``, O(n log n)). Both return the
    strata in ascending key order.
    """
    stratifying = tuple(int(s) for s in stratifying)
    if candidate in stratifying:
        raise ValueError("candidate attribute cannot also be a stratifying attribute")
    if len(set(stratifying)) != len(stratifying):
        raise ValueError("duplicate stratifying attribute")
    assigned = view.assigned
    for a in (candidate, *stratifying):
        if not 0 <= a < view.base.m:
            raise IndexError(f"attribute index {a} out of range")
        if a in assigned:
            raise ValueError(f"attribute {a} is fixed by the context")

    X, y, w = view.X, view.y, view.weights
    if len(w) == 0:
        return StrataSet(stratifying, np.zeros((0, len(stratifying)), dtype=np.int64),
                         np.zeros((0, 4), dtype=np.int64))
    S = X[:, list(stratifying)]
    cell = 2 * (1 - X[:, candidate].astype(np.int64)) + (1 - y.astype(np.int64))
    k = len(stratifying)
    if method == "auto":
        method = "counting" if k <= COUNTING_SORT_MAX_BITS else "argsort"

    if method == "counting":
        # counting sort over the 2**k possible keys, then drop empty strata
        codes = _group_keys(S) if k else np.zeros(len(w), dtype=np.int64)
        dense = np.bincount(codes * 4 + cell, weights=w, minlength=4 << k).reshape(-1, 4)
        present = np.flatnonzero(dense.any(axis=1))
        counts = dense[present].astype(np.int64)
        shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
        keys = (present[:, None] >> shifts) & 1
        return StrataSet(stratifying, keys.astype(np.int64), counts)
    if method != "argsort":
        raise ValueError(f"unknown stratification method {method!r}")

    codes = _group_keys(S) if k else np.zeros(len(w), dtype=np.int64)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]
    boundary = np.r_[True, sorted_codes[1:] != sorted_codes[:-1]]
    starts = np.flatnonzero(boundary)
    group = np.cumsum(boundary) - 1
    counts = np.bincount(group * 4 + cell[order], weights=w[order], minlength=4 * len(starts))
    counts = counts.reshape(-1, 4).astype(np.int64)
    return StrataSet(stratifying, S[order[starts]].astype(np.int64), counts)


def odds_ratio(t: StratumTable) -> float | None:
    den = t.n12 * t.n21
    if den == 0:
        return None
    return (t.n11 * t.n22) / den


def stratum_terms(counts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-stratum numerator and variance terms of the MH statistic.

    Strata holding fewer than two records contribute zero to both.
    """
    c = np.asarray(counts, dtype=np.int64).reshape(-1, 4)
    n11, n12, n21, n22 = c.T
    n = c.sum(axis=1)
    ok = n >= 2
    nf = np.where(ok, n, 2).astype(np.float64)
    num = (n11 * n22 - n21 * n12) / nf
    rows = ((n11 + n12) * (n21 + n22)).astype(np.float64)
    cols = ((n11 + n21) * (n12 + n22)).astype(np.float64)
    var = rows * cols / (nf * nf * (nf - 1.0))
    return np.where(ok, num, 0.0), np.where(ok, var, 0.0)


def pamh(strata: StrataSet | Sequence[StratumTable], alpha: float = 0.05) -> PamhResult:
    """Mantel-Haenszel partial-association statistic with a 1/2 continuity
    correction, compared against the chi-square(1) critical value.

    ``strata`` may be a :class:`StrataSet` or a plain sequence of tables.
    Sums use :func:`math.fsum`, so the statistic does not depend on stratum
    order. Zero total variance gives ``statistic=None`` (not significant).
    """
    _check_alpha(alpha)
    if not isinstance(strata, StrataSet):
        strata = StrataSet.from_tables(list(strata))
    nums, vars_ = stratum_terms(strata.counts)
    crit = chi2_critical(alpha)
    total_var = math.fsum(vars_)
    nums_t, vars_t = tuple(nums.tolist()), tuple(vars_.tolist())
    if total_var == 0.0:
        return PamhResult(None, nums_t, vars_t, alpha, crit, False)
    dev = max(abs(math.fsum(nums)) - 0.5, 0.0)
    stat = dev * dev / total_var
    return PamhResult(stat, nums_t, vars_t, alpha, crit, stat >= crit)


def pearson_chi2(t: StratumTable) -> float:
    """Uncorrected Pearson chi-square of a 2x2 table; 0 on a zero margin."""
    den = t.row1 * t.row2 * t.col1 * t.col2
    if den == 0:
        return 0.0
    d = t.n11 * t.n22 - t.n12 * t.n21
    return t.total * d * d / den


def global_table(view: ContextView, attribute: int) -> StratumTable:
    x = view.X[:, attribute].astype(bool)
    y = view.y.astype(bool)
    w = view.weights
    return StratumTable(int(w[x & y].sum()), int(w[x & ~y].sum()),
                        int(w[~x & y].sum()), int(w[~x & ~y].sum()))


def global_tables(view: ContextView, attributes: Sequence[int]) -> np.ndarray:
    """(n11, n12, n21, n22) rows for each attribute against Y over the view."""
    cols = list(attributes)
    X = view.X[:, cols].astype(np.int64)
    w = view.weights
    wy = w * view.y.astype(np.int64)
    x1 = w @ X
    n11 = wy @ X
    ones = int(wy.sum())
    n = int(w.sum())
    n12 = x1 - n11
    n21 = ones - n11
    n22 = (n - ones) - n12
    return np.column_stack([n11, n12, n21, n22]).astype(np.int64)


def correlated_attributes(view: ContextView, candidates: Sequence[int],
                          alpha: float = 0.05, cap: int = 10) -> list[int]:
    """Candidates whose Pearson chi-square with Y reaches the critical value,
    strongest first (ties by index), at most ``cap`` of them."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    candidates = list(candidates)
    if not candidates:
        return []
    crit = chi2_critical(alpha)
    scored = []
    for a, cells in zip(candidates, global_tables(view, candidates).tolist()):
        s = pearson_chi2(StratumTable(*cells))
        if s >= crit:
            scored.append((-s, a))
    scored.sort()
    return [a for _, a in scored[:cap]]


def naive_ace(t: StratumTable) -> float | None:
    """Difference in P(Y=1) between the Q=1 and Q=0 groups."""
    if t.row1 == 0 or t.row2 == 0:
        return None
    return t.n11 / t.row1 - t.n21 / t.row2


def stratified_ace(strata: StrataSet) -> AceEstimate:
    """Size-weighted mean of per-stratum naive estimates over the strata
    where both groups are present."""
    effects = [naive_ace(t) for t in strata.tables]
    usable = sum(t.total for t, e in zip(strata.tables, effects) if e is not None)
    per = []
    for key, t, e in zip(strata.keys, strata.tables, effects):
        per.append((key, e, t.total / usable if e is not None else 0.0))
    if usable == 0:
        return AceEstimate(tuple(per), None)
    agg = math.fsum(e * wt for _, e, wt in per if e is not None)
    return AceEstimate(tuple(per), agg)
