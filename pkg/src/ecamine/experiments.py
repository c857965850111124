"""End-to-end mining runs, bundled reference tables, comparison reports.

A run chains build -> center -> standardize -> covariance -> eigensolve ->
component count. Noiseless runs are compared entry-by-entry against the
bundled reference eigenvalues; noisy reference tables are single unseeded
realizations, so only their structure is checked (component count,
near-zero tail, trace).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

from .ca import MAX_PATTERN_LENGTH
from .dataset import (
    DEFAULT_EPS_VAR,
    build_matrix,
    center_and_weigh,
    standardize,
)
from .noise import NoiseModel
from .spectral import (
    DEFAULT_TAU_REL,
    Spectrum,
    count_components,
    covariance,
    eig_sym,
)

REFERENCE_IDS = ("original", "noisy-l5", "noisy-l6")
SWEEP_L_VALUES = (4, 5, 6, 7, 9, 12)  # reference rows skip l = 8, 10, 11
NOISY_TAIL_REL = 1e-12
TRACE_TOL = 1e-6
DEFAULT_COMPARE_TOL = 1e-3


@dataclass(frozen=True)
class ExperimentConfig:
    """One mining run: pattern length, optional noise, thresholds."""

    l: int
    noise_p: float | None = None
    seed: int | None = None
    rules: tuple[int, ...] | None = None  # None = all 256
    tau_rel: float = DEFAULT_TAU_REL
    eps_var: float = DEFAULT_EPS_VAR

    def __post_init__(self) -> None:
        if not 3 <= self.l <= MAX_PATTERN_LENGTH:
            raise ValueError(
                f"pattern length must be in [3, {MAX_PATTERN_LENGTH}], got {self.l}"
            )
        if self.noise_p is not None and not 0.0 <= self.noise_p <= 1.0:
            raise ValueError(f"noise probability must be in [0, 1], got {self.noise_p}")
        if self.noisy and self.seed is None:
            raise ValueError("a seed is required when noise is enabled")

    @property
    def noisy(self) -> bool:
        return self.noise_p is not None and self.noise_p > 0.0

    def noise_model(self) -> NoiseModel | None:
        if not self.noisy:
            return None
        return NoiseModel(p=self.noise_p, seed=self.seed)


@dataclass(frozen=True)
class ReferenceTable:
    """Bundled eigenvalue table, keyed by pattern length or noise level.

    ``rows`` maps l -> top-7 eigenvalues for the noiseless table, and
    flip probability -> full descending eigenvalue column for the noisy ones.
    """

    table_id: str
    noisy: bool
    l: int | None
    rows: dict[float, tuple[float, ...]] | dict[int, tuple[float, ...]]


@dataclass(frozen=True)
class Check:
    """One pass/fail verdict; always cites the tolerance it used."""

    name: str
    passed: bool
    tolerance: str
    detail: str

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"  [{status}] {self.name} (tol {self.tolerance}): {self.detail}"


@dataclass(frozen=True)
class RunReport:
    """Outcome of one run, optionally annotated with comparison verdicts."""

    config: ExperimentConfig
    spectrum: Spectrum
    component_count: int
    dropped_columns: tuple[int, ...]
    retained: int
    trace: float
    checks: tuple[Check, ...] = ()
    rank_deltas: tuple[float, ...] | None = field(default=None)

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    @property
    def passed(self) -> bool | None:
        if not self.checks:
            return None
        return all(c.passed for c in self.checks)

    def to_json_dict(self) -> dict:
        cfg = {
            "l": self.config.l,
            "noise_p": self.config.noise_p,
            "seed": self.config.seed,
            "rules": "all" if self.config.rules is None else list(self.config.rules),
            "tau_rel": self.config.tau_rel,
            "eps_var": self.config.eps_var,
        }
        return {
            "config": cfg,
            "component_count": self.component_count,
            "dropped_columns": list(self.dropped_columns),
            "retained": self.retained,
            "trace": self.trace,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "tolerance": c.tolerance,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "rank_deltas": None
            if self.rank_deltas is None
            else list(self.rank_deltas),
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    def to_spectrum_csv(self) -> str:
        """(index, eigenvalue) rows with the run metadata as # comments."""
        cfg = self.config
        lines = [
            f"# l={cfg.l} noise_p={cfg.noise_p} seed={cfg.seed} "
            f"tau_rel={cfg.tau_rel!r} eps_var={cfg.eps_var!r}",
            f"# dropped_columns={list(self.dropped_columns)} "
            f"component_count={self.component_count} retained={self.retained}",
            "index,eigenvalue",
        ]
        lines.extend(
            f"{i},{float(v)!r}" for i, v in enumerate(self.eigenvalues, start=1)
        )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        cfg = self.config
        noise = f"p={cfg.noise_p} seed={cfg.seed}" if cfg.noisy else "noiseless"
        lines = [
            f"run l={cfg.l} ({noise}): {self.component_count} components, "
            f"{self.retained} variables retained "
            f"(dropped rules: {list(self.dropped_columns) or 'none'}), "
            f"trace {self.trace:.6f}"
        ]
        top = ", ".join(f"{v:.4f}" for v in self.eigenvalues[:7])
        lines.append(f"  top eigenvalues: {top}")
        lines.extend(c.to_text() for c in self.checks)
        if self.checks:
            lines.append(f"  verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def run(config: ExperimentConfig) -> RunReport:
    """Execute the full mining pipeline for one configuration."""
    F = build_matrix(config.l, config.rules, config.noise_model())
    X = standardize(center_and_weigh(F, config.eps_var))
    spectrum = eig_sym(covariance(X))
    return RunReport(
        config=config,
        spectrum=spectrum,
        component_count=count_components(spectrum, config.tau_rel),
        dropped_columns=X.dropped_columns,
        retained=X.p,
        trace=float(np.sum(spectrum.eigenvalues)),
    )


def load_reference(table_id: str) -> ReferenceTable:
    """Load one of the bundled reference tables by id."""
    if table_id not in REFERENCE_IDS:
        raise ValueError(f"unknown reference table {table_id!r}; one of {REFERENCE_IDS}")
    fname = table_id.replace("-", "_") + ".csv"
    text = resources.files("ecamine.reference").joinpath(fname).read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    body = [ln.split(",") for ln in lines[1:]]
    if table_id == "original":
        rows = {int(cells[0]): tuple(float(v) for v in cells[1:]) for cells in body}
        return ReferenceTable(table_id=table_id, noisy=False, l=None, rows=rows)
    p_values = [float(name.removeprefix("p=")) for name in header[1:]]
    columns = {
        p: tuple(float(cells[1 + k]) for cells in body)
        for k, p in enumerate(p_values)
    }
    return ReferenceTable(
        table_id=table_id,
        noisy=True,
        l=int(table_id.rsplit("l", 1)[1]),
        rows=columns,
    )


def _compare_noiseless(
    report: RunReport, ref: ReferenceTable, tol: float
) -> tuple[Check, ...]:
    if report.config.noisy:
        raise ValueError("reference 'original' applies to noiseless runs only")
    if report.config.l not in ref.rows:
        raise ValueError(
            f"no reference row for l={report.config.l}; rows exist for {sorted(ref.rows)}"
        )
    expected = ref.rows[report.config.l]
    checks = []
    for rank, ref_value in enumerate(expected, start=1):
        got = float(report.eigenvalues[rank - 1])
        delta = abs(got - ref_value)
        checks.append(
            Check(
                name=f"lambda_{rank} (l={report.config.l})",
                passed=delta <= tol,
                tolerance=f"{tol:g} absolute",
                detail=f"got {got!r}, reference {ref_value!r}, delta {delta:.3e}",
            )
        )
    return tuple(checks)


def _compare_noisy(report: RunReport, ref: ReferenceTable) -> tuple[Check, ...]:
    if not report.config.noisy:
        raise ValueError(f"reference {ref.table_id!r} applies to noisy runs only")
    if report.config.l != ref.l:
        raise ValueError(
            f"reference {ref.table_id!r} is for l={ref.l}, report has l={report.config.l}"
        )
    n = 1 << report.config.l
    # for large l the retained-variable count, not n-1, caps the rank
    expected_count = min(n - 1, report.retained)
    bound = "n-1" if n - 1 <= report.retained else "retained variables"
    w = report.eigenvalues
    tail_ratio = float(w[expected_count] / w[0]) if expected_count < w.size else 0.0
    trace_err = abs(report.trace - report.retained)
    checks = (
        Check(
            name="component count",
            passed=report.component_count == expected_count,
            tolerance="exact",
            detail=f"got {report.component_count}, expected {expected_count} ({bound})",
        ),
        Check(
            name=f"tail eigenvalue lambda_{expected_count + 1}/lambda_1",
            passed=tail_ratio < NOISY_TAIL_REL,
            tolerance=f"< {NOISY_TAIL_REL:g} relative",
            detail=f"ratio {tail_ratio:.3e}",
        ),
        Check(
            name="trace equals retained variable count",
            passed=trace_err <= TRACE_TOL,
            tolerance=f"{TRACE_TOL:g} absolute",
            detail=f"trace {report.trace!r} vs {report.retained}",
        ),
    )
    return checks


def compare(
    report: RunReport, ref: ReferenceTable, tol: float = DEFAULT_COMPARE_TOL
) -> RunReport:
    """Annotate a report with verdicts against a reference table.

    Noiseless references are matched entry by entry at ``tol``; noisy
    references get structural checks only, because their printed values are
    single realizations with no recorded seed.
    """
    if ref.noisy:
        checks = _compare_noisy(report, ref)
    else:
        checks = _compare_noiseless(report, ref, tol)
    return replace(report, checks=report.checks + checks)


def convergence_sweep(
    l_values: tuple[int, ...] | list[int],
    base: ExperimentConfig,
) -> list[RunReport]:
    """One run per pattern length; attach per-rank deltas between neighbors.

    As l grows the leading eigenvalues settle toward their large-l limits,
    so consecutive deltas shrink; the deltas are reported for ranks 1-7.
    """
    if not l_values:
        raise ValueError("l_values must be non-empty")
    if any(not 4 <= l <= 12 for l in l_values):
        raise ValueError("sweep lengths must lie in [4, 12]")
    reports: list[RunReport] = []
    previous: RunReport | None = None
    for l in l_values:
        report = run(replace(base, l=l))
        if previous is not None:
            deltas = tuple(
                float(abs(report.eigenvalues[i] - previous.eigenvalues[i]))
                for i in range(min(7, report.eigenvalues.size))
            )
            report = replace(report, rank_deltas=deltas)
        reports.append(report)
        previous = report
    return reports
