"""Deterministic random streams for the verification harness.

The generator is SplitMix64: state advances by the odd constant
0x9E3779B97F4A7C15 and each output is the new state put through two
xor-shift-multiply mixing rounds (constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB, shifts 30/27/31).  The algorithm is ten lines in any
language and produces the same stream bit for bit everywhere, so seeds
recorded in reports replay exactly, independent of Python version or
platform hash randomization.

Integer draws use plain modulo reduction.  The modulo bias is irrelevant
at the tiny ranges used here and keeps the stream definition trivial.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """A 64-bit SplitMix stream seeded with an arbitrary int."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def below(self, bound: int) -> int:
        """Uniform-ish draw from ``range(bound)``; bound must be positive."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def choice(self, seq):
        if not seq:
            raise ValueError("cannot choose from an empty sequence")
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, drawing indices from this stream."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def spawn(self, tag: int = 0) -> "SplitMix64":
        """Derive an independent child stream; used to give every trial its
        own stream so trials stay reproducible in isolation."""
        return SplitMix64(self.next_u64() ^ _mix(tag & _MASK64))


def derive_seed(seed: int, name: str) -> int:
    """Stable per-suite seed: fold the suite name into the base seed.

    Uses FNV-1a over the UTF-8 bytes of the name; avoids Python's ``hash``
    which is randomized for strings.
    """
    h = 0xCBF29CE484222325
    for b in name.encode("utf8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK64
    return _mix(seed & _MASK64) ^ h
