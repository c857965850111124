"""Elementary one-dimensional cellular automata on finite binary patterns.

The 256 radius-1 binary rules are represented as 8-entry lookup tables
indexed by the value of the 3-site window (000 -> 0 up to 111 -> 7).
Evolution is open-boundary: a length-l pattern yields a length l-2 output,
because the rule is applied only where a full 3-site window exists.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_PATTERN_LENGTH = 20  # 2^20 patterns is already 1M rows; hard guard


@dataclass(frozen=True)
class Rule:
    """One of the 256 elementary CA transition functions.

    ``table[w]`` is the output bit for the 3-site window whose bits read as
    the number ``w`` (left neighbor most significant). The rule index is the
    integer whose bit ``w`` equals ``table[w]``, i.e. the window 111 output
    is the most significant bit of the index.
    """

    index: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.index <= 255:
            raise ValueError(f"rule index must be in [0, 255], got {self.index}")
        if len(self.table) != 8 or any(b not in (0, 1) for b in self.table):
            raise ValueError("rule table must be 8 bits")
        encoded = sum(bit << w for w, bit in enumerate(self.table))
        if encoded != self.index:
            raise ValueError(
                f"rule table encodes index {encoded}, not {self.index}"
            )


@dataclass(frozen=True)
class BitPattern:
    """Fixed-length binary word; leftmost bit is most significant."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) == 0:
            raise ValueError("empty bit pattern")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("pattern bits must be 0 or 1")

    @classmethod
    def from_cardinal(cls, value: int, length: int) -> "BitPattern":
        if length < 1:
            raise ValueError("pattern length must be positive")
        if not 0 <= value < (1 << length):
            raise ValueError(f"cardinal {value} out of range for length {length}")
        return cls(tuple((value >> (length - 1 - i)) & 1 for i in range(length)))

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def rule_from_index(index: int) -> Rule:
    """Decode a rule number into its lookup table."""
    if not 0 <= index <= 255:
        raise ValueError(f"rule index must be in [0, 255], got {index}")
    return Rule(index=index, table=tuple((index >> w) & 1 for w in range(8)))


def rule_index(rule: Rule) -> int:
    """Inverse of :func:`rule_from_index`."""
    return rule.index


def cardinal(pattern: BitPattern) -> int:
    """Read a pattern as a binary number, first bit most significant."""
    value = 0
    for b in pattern.bits:
        value = (value << 1) | b
    return value


def evolve_open(rule: Rule, pattern: BitPattern) -> BitPattern:
    """Apply one open-boundary time step; output shrinks by two sites.

    Output site j is ``rule.table`` applied to the window
    ``(pattern[j], pattern[j+1], pattern[j+2])``; boundary sites are
    consumed, not produced.
    """
    l = len(pattern)
    if l < 3:
        raise ValueError(f"pattern length must be >= 3 to evolve, got {l}")
    bits = pattern.bits
    out = tuple(
        rule.table[(bits[j] << 2) | (bits[j + 1] << 1) | bits[j + 2]]
        for j in range(l - 2)
    )
    return BitPattern(out)


def enumerate_patterns(l: int) -> list[BitPattern]:
    """All 2^l patterns of length l in ascending cardinal order."""
    if not 1 <= l <= MAX_PATTERN_LENGTH:
        raise ValueError(
            f"pattern length must be in [1, {MAX_PATTERN_LENGTH}], got {l}"
        )
    return [BitPattern.from_cardinal(v, l) for v in range(1 << l)]
