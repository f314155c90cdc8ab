"""Binary datasets with weighted records, context views and CSV ingestion."""
from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

log = logging.getLogger(__name__)

MISSING = frozenset({"", "?", "NA", "na", "NaN", "nan"})


class DataError(ValueError):
    """Raised for malformed or non-binary input data."""


@dataclass(frozen=True, eq=False)
class BinaryDataset:
    """Weighted records over named binary attributes and one binary outcome.

    ``X`` has shape (rows, m), ``y`` and ``weights`` shape (rows,). A row may
    stand for many identical observations through its weight, so ``n`` is the
    weight total rather than the row count.
    """

    attribute_names: tuple[str, ...]
    outcome_name: str
    X: np.ndarray
    y: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.int8)
        y = np.asarray(self.y, dtype=np.int8)
        w = np.asarray(self.weights, dtype=np.int64)
        names = tuple(self.attribute_names)
        if X.ndim != 2:
            X = X.reshape(len(y), len(names))
        if X.shape != (len(y), len(names)) or w.shape != y.shape:
            raise DataError(
                f"shape mismatch: X {X.shape}, y {y.shape}, weights {w.shape}, "
                f"{len(names)} names")
        if len(set(names)) != len(names):
            raise DataError("attribute names must be unique")
        if self.outcome_name in names:
            raise DataError(f"outcome {self.outcome_name!r} is also an attribute")
        if X.size and not np.isin(X, (0, 1)).all():
            raise DataError("attribute values must be 0 or 1")
        if y.size and not np.isin(y, (0, 1)).all():
            raise DataError("outcome values must be 0 or 1")
        if w.size and w.min() < 1:
            raise DataError("weights must be >= 1")
        for arr in (X, y, w):
            arr.flags.writeable = False
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "attribute_names", names)

    @classmethod
    def from_records(cls, attribute_names, outcome_name, records) -> "BinaryDataset":
        """Build from ``(values, outcome, weight)`` triples."""
        records = list(records)
        m = len(attribute_names)
        X = np.array([r[0] for r in records], dtype=np.int8).reshape(len(records), m)
        y = np.array([r[1] for r in records], dtype=np.int8)
        w = np.array([r[2] for r in records], dtype=np.int64)
        return cls(tuple(attribute_names), outcome_name, X, y, w)

    @property
    def m(self) -> int:
        return self.X.shape[1]

    @property
    def n(self) -> int:
        return int(self.weights.sum())

    def __len__(self):
        return self.n

    def records(self) -> Iterator[tuple[tuple[int, ...], int, int]]:
        for xs, yv, wv in zip(self.X.tolist(), self.y.tolist(), self.weights.tolist()):
            yield tuple(xs), yv, wv

    def index(self, name: str) -> int:
        try:
            return self.attribute_names.index(name)
        except ValueError:
            raise KeyError(f"unknown attribute {name!r}") from None

    def view(self) -> "ContextView":
        return ContextView(self)

    def exploded(self) -> "BinaryDataset":
        """Same data with every record repeated ``weight`` times at weight 1."""
        reps = self.weights
        return BinaryDataset(self.attribute_names, self.outcome_name,
                             np.repeat(self.X, reps, axis=0), np.repeat(self.y, reps),
                             np.ones(int(reps.sum()), dtype=np.int64))

    def merged(self) -> "BinaryDataset":
        """Collapse identical (attributes, outcome) rows by summing weights."""
        if not len(self.y):
            return self
        rows = np.column_stack([self.X, self.y])
        uniq, inv = np.unique(rows, axis=0, return_inverse=True)
        w = np.bincount(inv.ravel(), weights=self.weights, minlength=len(uniq))
        return BinaryDataset(self.attribute_names, self.outcome_name,
                             uniq[:, :-1], uniq[:, -1], w.astype(np.int64))

    def rename(self, mapping: dict[str, str]) -> "BinaryDataset":
        names = tuple(mapping.get(a, a) for a in self.attribute_names)
        return BinaryDataset(names, mapping.get(self.outcome_name, self.outcome_name),
                             self.X, self.y, self.weights)

    def outcome_counts(self) -> tuple[int, int]:
        """Weighted counts of (Y=0, Y=1)."""
        ones = int(self.weights[self.y == 1].sum())
        return self.n - ones, ones

    def to_csv(self, path, weight_column: str | None = "count") -> None:
        path = Path(path)
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            header = [*self.attribute_names, self.outcome_name]
            if weight_column:
                header.append(weight_column)
            writer.writerow(header)
            for xs, yv, wv in self.records():
                row = [*xs, yv]
                if weight_column:
                    row.append(wv)
                else:
                    for _ in range(wv - 1):
                        writer.writerow(row)
                writer.writerow(row)


@dataclass(frozen=True, eq=False)
class ContextView:
    """The records of ``base`` satisfying every ``(attribute, value)`` pair."""

    base: BinaryDataset
    assignments: tuple[tuple[int, int], ...] = ()
    _rows: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        seen = [a for a, _ in self.assignments]
        if len(set(seen)) != len(seen):
            raise ValueError("attribute assigned twice in context")
        for a, v in self.assignments:
            if not 0 <= a < self.base.m:
                raise IndexError(f"attribute index {a} out of range")
            if v not in (0, 1):
                raise ValueError(f"context value must be 0 or 1, got {v}")
        if self._rows is None:
            mask = np.ones(len(self.base.y), dtype=bool)
            for a, v in self.assignments:
                mask &= self.base.X[:, a] == v
            object.__setattr__(self, "_rows", np.flatnonzero(mask))

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @cached_property
    def X(self) -> np.ndarray:
        return self.base.X[self._rows]

    @cached_property
    def y(self) -> np.ndarray:
        return self.base.y[self._rows]

    @cached_property
    def weights(self) -> np.ndarray:
        return self.base.weights[self._rows]

    @property
    def n(self) -> int:
        return int(self.weights.sum())

    def __len__(self):
        return self.n

    def __iter__(self):
        for i in self._rows.tolist():
            yield tuple(self.base.X[i].tolist()), int(self.base.y[i]), int(self.base.weights[i])

    @property
    def assigned(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.assignments)

    def free_attributes(self) -> list[int]:
        taken = self.assigned
        return [i for i in range(self.base.m) if i not in taken]

    def restrict(self, attribute: int, value: int) -> "ContextView":
        return restrict(self, attribute, value)

    def describe(self) -> str:
        names = self.base.attribute_names
        return ", ".join(f"{names[a]}={v}" for a, v in self.assignments) or "(all)"

    def outcome_counts(self) -> tuple[int, int]:
        ones = int(self.weights[self.y == 1].sum())
        return self.n - ones, ones


def restrict(view: ContextView, attribute: int, value: int) -> ContextView:
    """Extend the context of ``view`` by ``attribute = value``."""
    if attribute in view.assigned:
        raise ValueError(
            f"attribute {view.base.attribute_names[attribute]!r} already in context")
    if value not in (0, 1):
        raise ValueError(f"context value must be 0 or 1, got {value}")
    rows = view.rows[view.base.X[view.rows, attribute] == value]
    return ContextView(view.base, view.assignments + ((attribute, value),), rows)


def majority_outcome(view: ContextView) -> int:
    """Most frequent weighted outcome value in the view.

    Ties defer to the base dataset's majority, then to 0. An empty view
    yields the base dataset's majority.
    """
    zeros, ones = view.outcome_counts()
    if ones != zeros:
        return int(ones > zeros)
    bzeros, bones = view.base.outcome_counts()
    return int(bones > bzeros)


# --- binarization -----------------------------------------------------------

def _as_number(text: str) -> float | None:
    try:
        return float(text)
    except ValueError:
        return None


@dataclass(frozen=True)
class BinarizationRule:
    """Derive a 0/1 column from a raw column.

    ``op`` is one of ``equals``, ``less_than``, ``greater_than``, ``in_set``.
    """

    source_column: str
    derived_name: str
    op: str
    value: object

    OPS = ("equals", "less_than", "greater_than", "in_set")

    def __post_init__(self):
        if self.op not in self.OPS:
            raise ValueError(f"unknown predicate {self.op!r}")
        if self.op == "in_set":
            object.__setattr__(self, "value", frozenset(str(v).strip() for v in self.value))
        elif self.op in ("less_than", "greater_than"):
            object.__setattr__(self, "value", float(self.value))
        else:
            object.__setattr__(self, "value", str(self.value).strip())

    def apply(self, cell: str) -> int:
        cell = cell.strip()
        if self.op == "equals":
            if cell == self.value:
                return 1
            a, b = _as_number(cell), _as_number(self.value)
            return int(a is not None and b is not None and a == b)
        if self.op == "in_set":
            return int(cell in self.value)
        num = _as_number(cell)
        if num is None:
            raise DataError(f"non-numeric value {cell!r} in column {self.source_column!r}")
        return int(num < self.value) if self.op == "less_than" else int(num > self.value)


_RULE_RE = re.compile(r"^(?P<name>\S.*?)\s+=\s+(?P<col>\S+)\s+(?P<op>==|<|>|in)\s+(?P<lit>.+?)\s*$")
_OP_NAMES = {"==": "equals", "<": "less_than", ">": "greater_than", "in": "in_set"}


def parse_rules(text: str) -> list[BinarizationRule]:
    """Parse rule lines of the form ``derived = column OP literal``.

    OP is ``==``, ``<``, ``>`` or ``in``; ``in`` takes ``{a, b, c}``. Blank
    lines and ``#`` comments are ignored. Spaces around ``=`` and OP are
    required, which lets names like ``age<30`` appear on the left.
    """
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RULE_RE.match(line)
        if not m:
            raise ValueError(f"rules line {lineno}: cannot parse {raw!r}")
        op = _OP_NAMES[m["op"]]
        lit = m["lit"]
        if op == "in_set":
            if not (lit.startswith("{") and lit.endswith("}")):
                raise ValueError(f"rules line {lineno}: 'in' needs {{...}}")
            lit = [v for v in (s.strip() for s in lit[1:-1].split(",")) if v]
        rules.append(BinarizationRule(m["col"], m["name"], op, lit))
    return rules


def load_rules(path) -> list[BinarizationRule]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))


def load_csv(path, outcome: str, weight_column: str | None = None,
             rules: Sequence[BinarizationRule] = (),
             columns: Sequence[str] | None = None) -> BinaryDataset:
    """Read a headed CSV into a :class:`BinaryDataset`.

    With ``rules``, the attributes are the derived columns in rule order
    (plus any raw ``columns`` requested); without, every raw column other
    than the outcome and weight column. The outcome may itself be derived.
    Rows missing a value in any used column are dropped.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh, skipinitialspace=True)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file, header row required") from None
        body = list(reader)

    col = {h: i for i, h in enumerate(header)}
    derived = {r.derived_name: r for r in rules}
    for r in rules:
        if r.source_column not in col:
            raise DataError(f"rule {r.derived_name!r}: unknown column {r.source_column!r}")
    if weight_column is not None and weight_column not in col:
        raise DataError(f"unknown weight column {weight_column!r}")
    if outcome not in col and outcome not in derived:
        raise DataError(f"unknown outcome column {outcome!r}")

    if columns is None:
        if rules:
            attrs = [r.derived_name for r in rules if r.derived_name != outcome]
        else:
            attrs = [h for h in header if h not in (outcome, weight_column)]
    else:
        attrs = list(columns)
        for a in attrs:
            if a not in col and a not in derived:
                raise DataError(f"unknown column {a!r}")

    def getter(name):
        if name in derived:
            rule = derived[name]
            return col[rule.source_column], rule.apply
        return col[name], None

    getters = [getter(a) for a in attrs]
    out_get = getter(outcome)
    used = sorted({i for i, _ in getters} | {out_get[0]}
                  | ({col[weight_column]} if weight_column else set()))

    X, y, w = [], [], []
    dropped = 0
    for rowno, row in enumerate(body, 2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < len(header):
            row = row + [""] * (len(header) - len(row))
        if any(row[i].strip() in MISSING for i in used):
            dropped += 1
            continue
        vals = []
        for name, (i, fn) in zip([*attrs, outcome], [*getters, out_get]):
            vals.append(_cell(row[i], fn, rowno, name))
        X.append(vals[:-1])
        y.append(vals[-1])
        if weight_column:
            try:
                wv = int(row[col[weight_column]])
            except ValueError:
                raise DataError(f"row {rowno}: non-integer weight "
                                f"{row[col[weight_column]]!r}") from None
            if wv < 1:
                raise DataError(f"row {rowno}: weight {wv} < 1")
            w.append(wv)
        else:
            w.append(1)
    if dropped:
        log.info("dropped %d rows with missing values from %s", dropped, path)
    X = np.array(X, dtype=np.int8).reshape(len(y), len(attrs))
    return BinaryDataset(tuple(attrs), outcome, X, np.array(y, dtype=np.int8),
                         np.array(w, dtype=np.int64))


def _cell(text: str, fn, rowno: int, column: str) -> int:
    if fn is not None:
        return fn(text)
    t = text.strip()
    try:
        num = float(t)
    except ValueError:
        num = None
    if num not in (0.0, 1.0):
        raise DataError(f"row {rowno}, column {column!r}: non-binary value {text!r}")
    return int(num)
