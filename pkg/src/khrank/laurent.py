"""Exact integer Laurent polynomials in two variables x, y.

The y slot doubles as the braid-matrix variable t: univariate polynomials in
t keep their exponents in y and are rendered with a different variable name
on request.  All arithmetic is exact over Z; equality up to a unit monomial
+-x^a*y^b goes through a canonical normal form.
"""
from __future__ import annotations

import re
from typing import Dict, Iterator, Mapping, Tuple

Monomial = Tuple[int, int]


class ParseError(ValueError):
    """Polynomial text that does not match the term grammar."""


class Laurent2:
    """An element of Z[x^{+-1}, y^{+-1}].

    Instances are treated as immutable; arithmetic returns new objects and
    `terms` must not be mutated by callers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: Dict[Monomial, int] = {}
        if terms:
            for (ex, ey), c in terms.items():
                c = int(c)
                if c:
                    clean[(int(ex), int(ey))] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Laurent2":
        return cls()

    @classmethod
    def one(cls) -> "Laurent2":
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, c: int) -> "Laurent2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: int, ex: int = 0, ey: int = 0) -> "Laurent2":
        return cls({(ex, ey): c})

    @classmethod
    def x(cls) -> "Laurent2":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "Laurent2":
        return cls({(0, 1): 1})

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Laurent2.const(other)
        if not isinstance(other, Laurent2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(v: "Laurent2 | int") -> "Laurent2":
        return v if isinstance(v, Laurent2) else Laurent2.const(v)

    def __add__(self, other: "Laurent2 | int") -> "Laurent2":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = Laurent2.__new__(Laurent2)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "Laurent2":
        res = Laurent2.__new__(Laurent2)
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: "Laurent2 | int") -> "Laurent2":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "Laurent2":
        return self._coerce(other) + (-self)

    def __mul__(self, other: "Laurent2 | int") -> "Laurent2":
        other = self._coerce(other)
        out: Dict[Monomial, int] = {}
        for (ax, ay), ac in self.terms.items():
            for (bx, by), bc in other.terms.items():
                k = (ax + bx, ay + by)
                s = out.get(k, 0) + ac * bc
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        res = Laurent2.__new__(Laurent2)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent2":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = Laurent2.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shifted(self, dx: int, dy: int) -> "Laurent2":
        """Multiply by the monomial x^dx * y^dy."""
        res = Laurent2.__new__(Laurent2)
        res.terms = {(ex + dx, ey + dy): c for (ex, ey), c in self.terms.items()}
        return res

    # -- substitutions -----------------------------------------------------

    def reciprocal(self) -> "Laurent2":
        """Substitute x -> 1/x and y -> 1/y."""
        res = Laurent2.__new__(Laurent2)
        res.terms = {(-ex, -ey): c for (ex, ey), c in self.terms.items()}
        return res

    def subs_x_one(self) -> "Laurent2":
        """Substitute x = 1, leaving a polynomial in y."""
        out: Dict[Monomial, int] = {}
        for (_, ey), c in self.terms.items():
            s = out.get((0, ey), 0) + c
            if s:
                out[(0, ey)] = s
            else:
                out.pop((0, ey), None)
        return Laurent2(out)

    def subs_y_one(self) -> "Laurent2":
        """Substitute y = 1, leaving a polynomial in x."""
        out: Dict[Monomial, int] = {}
        for (ex, _), c in self.terms.items():
            s = out.get((ex, 0), 0) + c
            if s:
                out[(ex, 0)] = s
            else:
                out.pop((ex, 0), None)
        return Laurent2(out)

    def coeff_of_x(self, k: int) -> "Laurent2":
        """The coefficient of x^k, as a polynomial in y."""
        return Laurent2({(0, ey): c for (ex, ey), c in self.terms.items() if ex == k})

    def x_exponents(self) -> Tuple[int, int] | None:
        """(min, max) exponent of x over all terms, or None for zero."""
        if not self.terms:
            return None
        exps = [ex for ex, _ in self.terms]
        return min(exps), max(exps)

    def y_exponents(self) -> Tuple[int, int] | None:
        if not self.terms:
            return None
        exps = [ey for _, ey in self.terms]
        return min(exps), max(exps)

    def constant_value(self) -> int:
        """The value of a constant polynomial, as an int."""
        if not self.terms:
            return 0
        if set(self.terms) != {(0, 0)}:
            raise ValueError("polynomial is not constant")
        return self.terms[(0, 0)]

    # -- normalization up to units ----------------------------------------

    def abs_coeff_sum(self) -> int:
        """Sum of absolute values of all coefficients."""
        return sum(abs(c) for c in self.terms.values())

    def unit_normalized(self) -> "Laurent2":
        """Canonical representative modulo multiplication by +-x^a*y^b.

        Exponents are shifted so each variable's minimum exponent is 0, then
        the sign is fixed so the lex-largest monomial has positive
        coefficient.
        """
        if not self.terms:
            raise ValueError("zero polynomial has no unit normalization")
        mx = min(ex for ex, _ in self.terms)
        my = min(ey for _, ey in self.terms)
        shifted = self.shifted(-mx, -my)
        lead = max(shifted.terms)
        if shifted.terms[lead] < 0:
            shifted = -shifted
        return shifted

    def doteq(self, other: "Laurent2 | int") -> bool:
        """Equality up to multiplication by a unit +-x^a*y^b."""
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.terms == other.terms
        return self.unit_normalized() == other.unit_normalized()

    # -- text --------------------------------------------------------------

    def format(self, xname: str = "x", yname: str = "y") -> str:
        """Render with terms in descending (e_x, e_y) order, e.g. x^2+x*y+y^2."""
        if not self.terms:
            return "0"
        parts = []
        for (ex, ey) in sorted(self.terms, reverse=True):
            c = self.terms[(ex, ey)]
            factors = []
            for name, e in ((xname, ex), (yname, ey)):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            a = abs(c)
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(a)] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Laurent2({self.format()})"

    _FACTOR = re.compile(r"\*?(?:(\d+)|([xyt])(?:\^(-?\d+))?)")

    @classmethod
    def parse(cls, text: str) -> "Laurent2":
        """Parse term text like `x^2+x*y+y^2` or `-3*t^-1+2`.

        `t` is accepted as an alias for the second variable.  Terms are
        separated by + or -, factors within a term by optional `*`.
        """
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial text")
        out = cls.zero()
        i = 0
        first = True
        while i < len(s):
            sign = 1
            if s[i] in "+-":
                sign = -1 if s[i] == "-" else 1
                i += 1
            elif not first:
                raise ParseError(f"expected + or - at position {i} in {text!r}")
            coeff = None
            ex = ey = 0
            start = i
            if i < len(s) and s[i] == "*":
                raise ParseError(f"term cannot start with * in {text!r}")
            while i < len(s):
                m = cls._FACTOR.match(s, i)
                if not m or m.end() == i:
                    break
                digits, var, exp = m.groups()
                if digits is not None:
                    if coeff is not None or ex or ey or i != start:
                        raise ParseError(f"misplaced coefficient in {text!r}")
                    coeff = int(digits)
                else:
                    e = 1 if exp is None else int(exp)
                    if var == "x":
                        ex += e
                    else:
                        ey += e
                i = m.end()
            if i == start:
                raise ParseError(f"unreadable term at position {i} in {text!r}")
            c = sign * (1 if coeff is None else coeff)
            out = out + cls.monomial(c, ex, ey)
            first = False
        return out


def _div_exact(num: Laurent2, den: Laurent2) -> Laurent2:
    """Exact division in Z[x^{+-1}, y^{+-1}].

    Only valid when den divides num; leading terms under lex order are
    multiplicative over a domain, so peeling the leading quotient term
    terminates.  Raises ArithmeticError if the division is not exact.
    """
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q: Dict[Monomial, int] = {}
    rem = num
    (dex, dey) = max(den.terms) if den.terms else (0, 0)
    dc = den.terms[(dex, dey)]
    while rem.terms:
        (ex, ey) = max(rem.terms)
        c = rem.terms[(ex, ey)]
        if c % dc:
            raise ArithmeticError("polynomial division is not exact")
        qc = c // dc
        qk = (ex - dex, ey - dey)
        q[qk] = q.get(qk, 0) + qc
        rem = rem - den.shifted(*qk) * qc
    return Laurent2(q)


class PolyMatrix:
    """A square matrix over Z[x^{+-1}, y^{+-1}]."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        self.rows = [[Laurent2._coerce(v) for v in row] for row in rows]
        self.n = len(self.rows)
        if self.n == 0 or any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square and nonempty")

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        one, zero = Laurent2.one(), Laurent2.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.n != other.n:
            raise ValueError("matrix size mismatch")
        n = self.n
        return PolyMatrix(
            [
                [
                    sum((self.rows[i][k] * other.rows[k][j] for k in range(n)),
                        Laurent2.zero())
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )

    def determinant(self) -> Laurent2:
        """Exact determinant: cofactor expansion for n <= 4, else Bareiss."""
        if self.n <= 4:
            return _det_cofactor(self.rows)
        return _det_bareiss(self.rows)


def _det_cofactor(rows) -> Laurent2:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Laurent2.zero()
    for j, head in enumerate(rows[0]):
        if head.is_zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = head * _det_cofactor(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _det_bareiss(rows) -> Laurent2:
    m = [list(row) for row in rows]
    n = len(m)
    sign = 1
    prev = Laurent2.one()
    for k in range(n - 1):
        # Pivot on the first nonzero entry in column k at or below row k.
        pivot = next((r for r in range(k, n) if not m[r][k].is_zero), None)
        if pivot is None:
            return Laurent2.zero()
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = _div_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
            m[i][k] = Laurent2.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det
