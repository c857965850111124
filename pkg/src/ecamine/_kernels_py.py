"""Pure-Python (numpy) fallback for the table-building kernel.

Must stay bit-identical to the compiled extension in ``_kernels.pyx``: the
uniform variate for a (pattern, rule, site) cell is derived with the same
splitmix64 chain, here vectorized over uint64 arrays (unsigned arithmetic
wraps modulo 2^64 exactly like the C code).
"""

from __future__ import annotations

import numpy as np

from .noise import mix64 as _mix64_scalar

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_INV_2_53 = 2.0**-53


def _mix64(z: np.ndarray) -> np.ndarray:
    z = z + _GOLDEN
    z = (z ^ (z >> _S30)) * _MIX_A
    z = (z ^ (z >> _S27)) * _MIX_B
    return z ^ (z >> _S31)


def cardinal_table(
    l: int,
    rules: np.ndarray,
    noise_p: float = 0.0,
    seed: int = 0,
    noisy: bool = False,
) -> np.ndarray:
    """Cardinals of every rule output over all 2^l patterns.

    Returns an int64 array of shape (2^l, len(rules)); row i holds the
    outputs for the pattern whose cardinal is i, in the order of ``rules``.
    """
    n = 1 << l
    m = l - 2
    rules = np.asarray(rules, dtype=np.int64)
    patterns = np.arange(n, dtype=np.int64)
    # windows[i, j]: value of the 3-bit window feeding output site j
    shifts = (l - 3) - np.arange(m, dtype=np.int64)
    windows = (patterns[:, None] >> shifts[None, :]) & 7
    weights = np.left_shift(1, np.arange(m - 1, -1, -1, dtype=np.int64))
    out = np.empty((n, rules.size), dtype=np.int64)
    if noisy:
        # scalar uint64 ops can raise numpy overflow warnings; mix the seed
        # with plain ints, then switch to (silently wrapping) array arithmetic
        h_seed = np.uint64(_mix64_scalar(seed))
        h_pattern = _mix64(h_seed ^ patterns.astype(np.uint64))
        sites = np.arange(m, dtype=np.uint64)
    for k, r in enumerate(rules):
        bits = (int(r) >> windows) & 1
        if noisy:
            h = _mix64(_mix64(h_pattern ^ np.uint64(int(r)))[:, None] ^ sites)
            u = (h >> _S11).astype(np.float64) * _INV_2_53
            bits = bits ^ (u < noise_p).astype(np.int64)
        out[:, k] = bits @ weights
    return out
