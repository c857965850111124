"""The CA input/output database and its centered/standardized forms.

The raw matrix holds, for every binary input pattern (rows, ascending
cardinal order) and every selected rule (columns, ascending rule index),
the cardinal of the rule's one-step output. Centering subtracts column
means; columns whose variance falls below a threshold (the two constant
rules 0 and 255, in the noiseless full-rule case) are pruned before the
variance weights can be applied.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np

from . import kernels
from .ca import MAX_PATTERN_LENGTH
from .noise import NoiseModel

DEFAULT_EPS_VAR = 1e-12

ALL_RULES = tuple(range(256))


@dataclass(frozen=True)
class DataMatrix:
    """Raw output-cardinal table: patterns x rules.

    Values are stored as float64 from the start; raw cardinals never exceed
    2^18 - 1 here, so they stay exactly representable.
    """

    values: np.ndarray
    row_labels: np.ndarray  # pattern cardinals
    col_labels: np.ndarray  # rule indices
    l: int

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def pattern_strings(self) -> list[str]:
        return [format(int(c), f"0{self.l}b") for c in self.row_labels]


@dataclass(frozen=True)
class CenteredMatrix:
    """Column-centered (optionally variance-scaled) database.

    ``means`` and ``variances`` describe the retained raw columns; they are
    the weights used for standardization and are kept unchanged by it.
    """

    values: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    dropped_columns: tuple[int, ...]
    row_labels: np.ndarray
    col_labels: np.ndarray
    l: int

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def pattern_strings(self) -> list[str]:
        return [format(int(c), f"0{self.l}b") for c in self.row_labels]


def build_matrix(
    l: int,
    rules: tuple[int, ...] | None = None,
    noise: NoiseModel | None = None,
) -> DataMatrix:
    """Evaluate every selected rule on every length-l pattern.

    Entry (i, j) is the cardinal of rule j's output on the pattern with
    cardinal i, with each output bit flipped per ``noise`` when given. The
    noise draw for a cell bit is keyed by (seed, pattern cardinal, rule
    index, output site), so the result is independent of evaluation order.
    """
    if not 3 <= l <= MAX_PATTERN_LENGTH:
        raise ValueError(
            f"pattern length must be in [3, {MAX_PATTERN_LENGTH}], got {l}"
        )
    if rules is None:
        rules = ALL_RULES
    rule_arr = np.unique(np.asarray(sorted(rules), dtype=np.int64))
    if rule_arr.size == 0:
        raise ValueError("rule set must be non-empty")
    if rule_arr[0] < 0 or rule_arr[-1] > 255:
        raise ValueError("rule indices must lie in [0, 255]")
    table = kernels.cardinal_table(l, rule_arr, noise)
    return DataMatrix(
        values=table.astype(np.float64),
        row_labels=np.arange(1 << l, dtype=np.int64),
        col_labels=rule_arr,
        l=l,
    )


def center_and_weigh(F: DataMatrix, eps_var: float = DEFAULT_EPS_VAR) -> CenteredMatrix:
    """Subtract column means and prune columns with no usable variance.

    Variances are population variances (divide by n). Columns with variance
    at or below ``eps_var`` cannot be weighted and are dropped; their rule
    indices are reported in ``dropped_columns``.
    """
    if F.n == 0 or F.p == 0:
        raise ValueError("empty data matrix")
    means = F.values.mean(axis=0)
    centered = F.values - means
    variances = np.mean(centered * centered, axis=0)
    keep = variances > eps_var
    if not keep.any():
        raise ValueError("no variance in database")
    dropped = tuple(int(r) for r in F.col_labels[~keep])
    return CenteredMatrix(
        values=centered[:, keep],
        means=means[keep],
        variances=variances[keep],
        dropped_columns=dropped,
        row_labels=F.row_labels,
        col_labels=F.col_labels[keep],
        l=F.l,
    )


def standardize(X: CenteredMatrix) -> CenteredMatrix:
    """Scale every column to unit population variance.

    Recomputes the current column variances, so applying this to an
    already-standardized matrix is a no-op up to rounding.
    """
    current = np.mean(X.values * X.values, axis=0)
    if np.any(current <= 0.0):
        raise RuntimeError("zero-variance column survived pruning")
    return CenteredMatrix(
        values=X.values / np.sqrt(current),
        means=X.means,
        variances=X.variances,
        dropped_columns=X.dropped_columns,
        row_labels=X.row_labels,
        col_labels=X.col_labels,
        l=X.l,
    )


def _format_value(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def write_table_csv(table: DataMatrix | CenteredMatrix, out: IO[str]) -> None:
    """CSV form: header of rule indices, one row per pattern.

    The first column is the pattern bits as a string, preserving leading
    zeros; numeric cells use round-trip precision.
    """
    out.write("pattern," + ",".join(str(int(r)) for r in table.col_labels) + "\n")
    for label, row in zip(table.pattern_strings(), table.values):
        out.write(label + "," + ",".join(_format_value(v) for v in row) + "\n")


def table_csv_string(table: DataMatrix | CenteredMatrix) -> str:
    buf = io.StringIO()
    write_table_csv(table, buf)
    return buf.getvalue()


def read_table_csv(path: str | Path) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Parse a table CSV back into (pattern strings, rule indices, values)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if header[:1] != ["pattern"]:
            raise ValueError("not a table CSV: missing pattern header")
        rules = np.asarray([int(c) for c in header[1:]], dtype=np.int64)
        patterns: list[str] = []
        rows: list[list[float]] = []
        for line in fh:
            cells = line.strip().split(",")
            patterns.append(cells[0])
            rows.append([float(c) for c in cells[1:]])
    return patterns, rules, np.asarray(rows, dtype=np.float64)
