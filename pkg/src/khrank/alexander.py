"""Two-variable Alexander polynomials of braid-axis links.

For a braid word whose closure is a knot, the closure together with the
braid axis is a two-component link whose multivariable Alexander
polynomial is, up to units, det(x*I - B(y)) with B the reduced Burau
matrix and the Burau parameter renamed y.  Here x is the axis variable
and y the closure variable.

The canonical polynomial decomposes as

    y^a + f_1(y)*x + ... + f_{l-2}(y)*x^(l-2) + x^(l-1)

for an l-strand braid.  Two checks hang off this shape: the y = 1
specialization must be 1 + x + ... + x^(l-1), and the coefficient sum of
(x-1)(y-1) times the polynomial is an even statistic bounding link
homology ranks from below.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from khrank.braid import BraidWord
from khrank.laurent import Laurent2, PolyMatrix

__all__ = [
    "AxisForm",
    "axis_form_decompose",
    "lemma_bound_report",
    "lower_bound_stat",
    "morton_axis_polynomial",
    "torres_check",
]

FLAG_HYPOTHESIS = "lemma hypothesis necessarily violated (link not exchangeably braided)"
FLAG_SHARPNESS = "sharpness contradiction"


def morton_axis_polynomial(word: BraidWord) -> Laurent2:
    """Canonical det(x*I - Burau(word)) with the Burau parameter as y.

    Requires at least two strands and a connected closure; otherwise the
    determinant is not the axis-link Alexander polynomial.
    """
    if word.strands < 2:
        raise ValueError(
            f"need at least 2 strands for an axis polynomial, got {word.strands}")
    comps = word.closure_component_count()
    if comps != 1:
        raise ValueError(f"closure has {comps} components, expected a knot")
    burau = word.burau()
    x = Laurent2.x()
    rows = [
        [x - e if i == j else -e for j, e in enumerate(row)]
        for i, row in enumerate(burau.rows)
    ]
    return PolyMatrix(rows).determinant().unit_normalized()


def torres_check(p: Laurent2, l: int) -> bool:
    """Whether p at y = 1 is 1 + x + ... + x^(l-1) up to a unit."""
    if l < 1:
        raise ValueError(f"strand count must be at least 1, got {l}")
    target = Laurent2({(k, 0): 1 for k in range(l)})
    return p.subs_y_one().doteq(target)


@dataclass(frozen=True)
class AxisForm:
    """Extreme-monomial exponent and middle coefficients of an axis polynomial.

    Normalized so the x^(l-1) coefficient is 1 and the x^0 term is +y^a;
    f holds the x^1 .. x^(l-2) coefficients, each a polynomial in y only.
    """

    l: int
    a: int
    f: Tuple[Laurent2, ...]

    def polynomial(self) -> Laurent2:
        """Reassemble y^a + f_1*x + ... + x^(l-1)."""
        p = Laurent2.monomial(1, 0, self.a) + Laurent2.monomial(1, self.l - 1, 0)
        for i, fi in enumerate(self.f, start=1):
            p = p + fi * Laurent2.monomial(1, i, 0)
        return p

    def to_dict(self) -> Dict[str, object]:
        return {"a": self.a, "f": [fi.format() for fi in self.f]}


def _unit_monomial(c: Laurent2) -> Tuple[int, int] | None:
    """(sign, y-exponent) if c is +-y^k with no x part, else None."""
    if len(c.terms) != 1:
        return None
    (ex, ey), coeff = next(iter(c.terms.items()))
    if ex != 0 or coeff not in (1, -1):
        return None
    return coeff, ey


def axis_form_decompose(p: Laurent2, l: int) -> AxisForm:
    """Split a canonical polynomial as y^a + f_1(y)x + ... + x^(l-1).

    Raises ValueError when the x-degree is not l-1, or when either
    extreme x-coefficient is not a single unit monomial in y; these are
    exactly the ways a polynomial can fail the axis-link shape.
    """
    if p.is_zero:
        raise ValueError("x-degree of 0 does not match l-1 for l = " + str(l))
    lo, hi = p.x_exponents()
    degree = hi - lo
    if degree != l - 1:
        raise ValueError(f"x-degree of {degree} does not match l-1 for l = {l}")
    top = p.coeff_of_x(hi)
    top_unit = _unit_monomial(top)
    if top_unit is None:
        raise ValueError(
            f"x^{l - 1} coefficient {top.format()} is not a monomial")
    sign, k = top_unit
    # divide by sign*y^k (and drop any x-offset) so the top term is x^(l-1)
    scaled = (p * sign).shifted(-lo, -k)
    bottom = scaled.coeff_of_x(0)
    bot_unit = _unit_monomial(bottom)
    if bot_unit is None:
        raise ValueError(
            f"x^0 coefficient {bottom.format()} is not a monomial")
    bot_sign, a = bot_unit
    if bot_sign != 1:
        raise ValueError(
            f"x^0 coefficient {bottom.format()} has negative sign")
    f = tuple(scaled.coeff_of_x(i) for i in range(1, l - 1))
    return AxisForm(l=l, a=a, f=f)


def lower_bound_stat(p: Laurent2) -> int:
    """Sum of absolute coefficients of (x-1)(y-1)p."""
    edge = (Laurent2.x() - 1) * (Laurent2.y() - 1)
    return (edge * p).abs_coeff_sum()


def lemma_bound_report(word: BraidWord) -> Dict[str, object]:
    """Axis polynomial, Torres check, shape, and bound statistic for a braid.

    Flags mark impossible combinations: a statistic below 12 on three or
    more strands rules out an exchangeably braided pair, and a statistic
    of exactly 12 away from three strands contradicts sharpness.
    """
    p = morton_axis_polynomial(word)
    l = word.strands
    stat = lower_bound_stat(p)
    form = axis_form_decompose(p, l)
    return {
        "braid": word.format(),
        "strands": l,
        "delta": p.format(),
        "torres": torres_check(p, l),
        "axis_form": form.to_dict(),
        "stat": stat,
        "flags": _flags_for(l, stat),
    }


def _flags_for(l: int, stat: int) -> List[str]:
    """Contrapositive markers for the coefficient-sum bound."""
    flags: List[str] = []
    if l >= 3 and stat < 12:
        flags.append(FLAG_HYPOTHESIS)
    if stat == 12 and l != 3:
        flags.append(FLAG_SHARPNESS)
    return flags
