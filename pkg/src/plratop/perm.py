"""Permutations stored as one-line image tuples on ``range(degree)``.

Cycle notation is 1-based and only used for input/output, e.g.
``Permutation.from_cycles("(1 6)(3 4)", 6)``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence


class Permutation:
    __slots__ = ("image",)

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"not a permutation: {image}")
        self.image = image

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: str | Sequence[Sequence[int]], degree: int) -> Permutation:
        """Build from 1-based cycles, given as a string ``"(1 2)(3 4 5)"`` or lists."""
        if isinstance(cycles, str):
            cycles = [
                [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
                for body in re.findall(r"\(([^)]*)\)", cycles)
            ]
        image = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if not 1 <= a <= degree or a in seen:
                    raise ValueError(f"bad cycle element {a} for degree {degree}")
                seen.add(a)
                image[a - 1] = b - 1
        return cls(image)

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: Permutation) -> Permutation:
        # (p * q)(x) = p(q(x))
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        p = self.image
        return Permutation(p[x] for x in other.image)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = [False] * len(self.image)
        out = []
        for start in range(len(self.image)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.image[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __lt__(self, other: Permutation) -> bool:
        return self.image < other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"
