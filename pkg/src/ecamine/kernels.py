"""Backend selection for the table-building kernel.

The compiled extension is used when the build produced it; otherwise the
numpy fallback takes over. Both return identical arrays, so nothing above
this module depends on which backend is active.
"""

from __future__ import annotations

import numpy as np

from .noise import NoiseModel

try:
    from . import _kernels as _backend

    HAVE_COMPILED_KERNELS = True
except ImportError:  # extension not built; fall back to numpy
    from . import _kernels_py as _backend

    HAVE_COMPILED_KERNELS = False


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED_KERNELS else "python"


def cardinal_table(
    l: int, rules: np.ndarray, noise: NoiseModel | None = None
) -> np.ndarray:
    """Build the (2^l, len(rules)) int64 table of output cardinals."""
    if noise is None:
        return _backend.cardinal_table(l, rules)
    return _backend.cardinal_table(
        l, rules, noise_p=noise.p, seed=noise.seed, noisy=True
    )
