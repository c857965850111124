import time
from dataclasses import dataclass

import numpy as np
import pytest

from ecamine import (
    CenteredMatrix,
    ExperimentConfig,
    RunReport,
    build_matrix,
    center_and_weigh,
    covariance,
    run,
    standardize,
)

NOISELESS_L_VALUES = (4, 5, 6, 7, 9, 12)
NOISY_P_VALUES = (0.2, 0.4, 0.6, 0.8)


@dataclass
class PipelineBundle:
    """One run plus the intermediate matrices the report discards."""

    config: ExperimentConfig
    standardized: CenteredMatrix
    R: np.ndarray
    report: RunReport
    elapsed: float


def make_bundle(config: ExperimentConfig) -> PipelineBundle:
    start = time.perf_counter()
    report = run(config)
    elapsed = time.perf_counter() - start
    F = build_matrix(config.l, config.rules, config.noise_model())
    X = standardize(center_and_weigh(F, config.eps_var))
    return PipelineBundle(
        config=config,
        standardized=X,
        R=covariance(X),
        report=report,
        elapsed=elapsed,
    )


@pytest.fixture(scope="session")
def noiseless_bundles() -> dict[int, PipelineBundle]:
    return {l: make_bundle(ExperimentConfig(l=l)) for l in NOISELESS_L_VALUES}


@pytest.fixture(scope="session")
def noisy_bundles() -> dict[tuple[int, float], PipelineBundle]:
    out = {}
    for l in (5, 6):
        for p in NOISY_P_VALUES:
            out[(l, p)] = make_bundle(ExperimentConfig(l=l, noise_p=p, seed=1))
    return out
