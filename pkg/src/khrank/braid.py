"""Braid words, their permutations, and the reduced Burau representation.

A word on l strands is written `l:w` where w lists nonzero generator indices
separated by spaces, e.g. `3:1 -2 1` for sigma1 sigma2^-1 sigma1.  Positive
index i crosses strand i over strand i+1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from khrank.laurent import Laurent2, PolyMatrix


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if a == 0 or abs(a) >= self.strands:
                raise ValueError(
                    f"letter {a} is out of range for {self.strands} strands"
                )

    # -- text --------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        """Parse `l:w`, e.g. `2:1 1 1` or `3:` for the identity braid."""
        head, sep, tail = text.partition(":")
        if not sep:
            raise ValueError(f"braid word {text!r} is missing the strand-count prefix l:")
        try:
            strands = int(head.strip())
        except ValueError:
            raise ValueError(f"bad strand count in braid word {text!r}") from None
        letters: List[int] = []
        for tok in tail.replace(",", " ").split():
            try:
                letters.append(int(tok))
            except ValueError:
                raise ValueError(f"bad letter {tok!r} in braid word {text!r}") from None
        return cls(strands, tuple(letters))

    def format(self) -> str:
        return f"{self.strands}:" + " ".join(str(a) for a in self.letters)

    def __str__(self) -> str:
        return self.format()

    # -- group structure ---------------------------------------------------

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))

    def exponent_sum(self) -> int:
        return sum(1 if a > 0 else -1 for a in self.letters)

    def permutation(self) -> List[int]:
        """perm[p] = final position of the strand starting at position p (0-based)."""
        perm = list(range(self.strands))
        # pos[p] tracks which start-strand currently occupies position p.
        pos = list(range(self.strands))
        for a in self.letters:
            i = abs(a) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        for p, start in enumerate(pos):
            perm[start] = p
        return perm

    def closure_component_count(self) -> int:
        """Number of link components of the braid closure."""
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if seen[s]:
                continue
            count += 1
            while not seen[s]:
                seen[s] = True
                s = perm[s]
        return count

    # -- reduced Burau -----------------------------------------------------

    def burau(self) -> PolyMatrix:
        """Reduced Burau matrix, size (l-1) x (l-1), entries in Z[t^{+-1}].

        The variable t is stored in the y exponent slot of Laurent2.  The
        word maps to the product of generator matrices in word order.
        """
        if self.strands < 2:
            raise ValueError("reduced Burau undefined for fewer than 2 strands")
        out = PolyMatrix.identity(self.strands - 1)
        for a in self.letters:
            out = out * _burau_generator(self.strands, a)
        return out


def _burau_generator(strands: int, letter: int) -> PolyMatrix:
    """Matrix of sigma_i^{+-1}: identity except one row touching columns i-1, i, i+1."""
    n = strands - 1
    t = Laurent2.y()
    tinv = Laurent2.monomial(1, 0, -1)
    m = [[Laurent2.one() if r == c else Laurent2.zero() for c in range(n)] for r in range(n)]
    i = abs(letter) - 1  # 0-based row index of the affected basis vector
    if letter > 0:
        row = {i - 1: t, i: -t, i + 1: Laurent2.one()}
    else:
        row = {i - 1: Laurent2.one(), i: -tinv, i + 1: tinv}
    for c, v in row.items():
        if 0 <= c < n:
            m[i][c] = v
    return PolyMatrix(m)
