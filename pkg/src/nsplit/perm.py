"""Permutations on {0..d-1} and their 1-based cycle notation.

Products are read left to right: ``p * q`` applies ``p`` first, then ``q``.
This is the right-action convention, so ``x ** g == g**-1 * x * g`` matches
the exponent notation used for conjugation throughout the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm

from .errors import ParseError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection on 0..{len(self.images) - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        """Build from 0-based cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for k, p in enumerate(cyc):
                if not 0 <= p < degree:
                    raise ValueError(f"point {p} outside 0..{degree - 1}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in cycles")
                seen.add(p)
                img[p] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(img))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            p = self.images[start]
            while p != start:
                cyc.append(p)
                seen[p] = True
                p = self.images[p]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def to_cycle_string(self) -> str:
        return format_cycles(self.cycles())

    def __str__(self) -> str:
        return self.to_cycle_string()


def format_cycles(cycles) -> str:
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``()``.

    Points may be separated by spaces or commas.
    """
    s = text.strip()
    if not s:
        raise ParseError(f"empty cycle string")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ParseError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        try:
            pts = [int(tok) - 1 for tok in body]
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}") from None
        cycles.append(pts)
    if s[pos:].strip():
        raise ParseError(f"malformed cycle notation {text!r}")
    try:
        return Permutation.from_cycles(degree, cycles)
    except ValueError as exc:
        raise ParseError(f"{text!r}: {exc}") from None
