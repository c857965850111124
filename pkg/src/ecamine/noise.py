"""Reproducible Bernoulli corruption of CA output bits.

Each flip decision is a pure function of (seed, pattern index, rule index,
site index): the key fields are absorbed one at a time into a splitmix64-style
mixing chain, and the resulting 64-bit word is mapped to a uniform double in
[0, 1) which is compared against the flip probability. Because no sequential
stream is involved, corrupting a table cell-by-cell in any order (or in
parallel) yields identical bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ca import BitPattern

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_INV_2_53 = 2.0**-53


def mix64(z: int) -> int:
    """One splitmix64 step: increment by the golden gamma, then finalize."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class NoiseModel:
    """Per-bit flip noise with probability ``p``, keyed by a 64-bit seed."""

    p: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"flip probability must be in [0, 1], got {self.p}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def draw(self, pattern_idx: int, rule_idx: int, site: int) -> float:
        """Uniform variate in [0, 1) for one (pattern, rule, site) cell."""
        h = mix64(self.seed)
        h = mix64(h ^ pattern_idx)
        h = mix64(h ^ rule_idx)
        h = mix64(h ^ site)
        return (h >> 11) * _INV_2_53

    def flips(self, pattern_idx: int, rule_idx: int, site: int) -> bool:
        return self.draw(pattern_idx, rule_idx, site) < self.p


def flip_bits(
    bits: BitPattern, model: NoiseModel, pattern_idx: int, rule_idx: int
) -> BitPattern:
    """Reverse each site independently with probability ``model.p``."""
    if pattern_idx < 0 or rule_idx < 0:
        raise ValueError("pattern and rule indices must be non-negative")
    out = tuple(
        b ^ 1 if model.flips(pattern_idx, rule_idx, site) else b
        for site, b in enumerate(bits.bits)
    )
    return BitPattern(out)
