"""Exact univariate rational generating functions.

Polynomials are tuples of integer (or Fraction) coefficients in ascending
powers with no trailing zeros; the empty tuple is the zero polynomial.  A
RationalGF is a ratio of integer polynomials kept in a canonical form that
makes equality a tuple comparison and guarantees the power-series expansion
has integer coefficients.  No floating point is used anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ._exactlinalg import solve
from .semilinear import LinearSet


class NotQuasiPolynomialError(ValueError):
    """The denominator has a pole that is not a root of unity."""


# ---------------------------------------------------------------------------
# polynomial helpers (private)

def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    )


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    """Exact division with remainder over the rationals."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(x) for x in a]
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for i in range(len(rem) - len(b), -1, -1):
        coeff = rem[i + len(b) - 1] / lead
        if coeff == 0:
            continue
        quo[i] = coeff
        for j, y in enumerate(b):
            rem[i + j] -= coeff * y
    return _trim(quo), _trim(rem)


def _pgcd(a, b):
    """Greatest common divisor, returned primitive over Z with positive lead."""
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    return _clear_fractions(a)


def _clear_fractions(a):
    """Scale a rational polynomial to a primitive integer one, positive lead."""
    if not a:
        return ()
    a = [Fraction(x) for x in a]
    scale = math.lcm(*(x.denominator for x in a))
    ints = [int(x * scale) for x in a]
    g = math.gcd(*(abs(x) for x in ints))
    if ints[-1] < 0:
        g = -g
    return tuple(x // g for x in ints)


def _poly_str(coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for power, c in enumerate(coeffs):
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
            continue
        mag = "z" if power == 1 else f"z^{power}"
        if c == 1:
            terms.append(mag)
        elif c == -1:
            terms.append(f"-{mag}")
        else:
            terms.append(f"{c}*{mag}")
    return " + ".join(terms).replace("+ -", "- ")


class RationalGF:
    """Exact ratio of integer polynomials in one variable, canonical form.

    Canonical form: numerator and denominator are coprime integer
    polynomials with coprime contents, and the denominator has constant term
    +1 (so the value is an integer power series and two equal values have
    identical tuples).
    """

    __slots__ = ("num", "den")

    def __init__(self, num=(), den=(1,)):
        num_t = _trim(Fraction(x) for x in num)
        den_t = _trim(Fraction(x) for x in den)
        if not den_t:
            raise ZeroDivisionError("zero denominator")
        if not num_t:
            object.__setattr__(self, "num", ())
            object.__setattr__(self, "den", (1,))
            return
        g = _pgcd(num_t, den_t)
        if len(g) > 1:
            num_t = _pdivmod(num_t, g)[0]
            den_t = _pdivmod(den_t, g)[0]
        if den_t[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        # With num/den coprime, the only rescaling that puts the constant
        # term of the denominator at +1 is division by that constant term;
        # both sides must come out integral or the series is not integral.
        scale = den_t[0]
        num_final = tuple(x / scale for x in num_t)
        den_final = tuple(x / scale for x in den_t)
        if any(x.denominator != 1 for x in itertools.chain(num_final, den_final)):
            raise ValueError(
                "value is not an integer power series in canonical form"
            )
        object.__setattr__(self, "num", tuple(int(x) for x in num_final))
        object.__setattr__(self, "den", tuple(int(x) for x in den_final))

    def __setattr__(self, name, value):
        raise AttributeError("RationalGF is immutable")

    def __eq__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return RationalGF(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __mul__(self, other):
        if not isinstance(other, RationalGF):
            return NotImplemented
        return RationalGF(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __str__(self):
        if self.den == (1,):
            return f"({_poly_str(self.num)})"
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RationalGF(num={self.num!r}, den={self.den!r})"

    @classmethod
    def zero(cls):
        return cls((), (1,))

    @classmethod
    def one(cls):
        return cls((1,), (1,))


def gf_add(a: RationalGF, b: RationalGF) -> RationalGF:
    """Canonical sum of two generating functions."""
    return a + b


def cumulative_to_exact(q: RationalGF) -> RationalGF:
    """Multiply by (1 - z): partial-sum counts become exact-distance counts."""
    return RationalGF(_pmul(q.num, (1, -1)), q.den)


def series_coeffs(q: RationalGF, n: int) -> list[int]:
    """Power-series coefficients c_0..c_n by exact long division."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num, den = q.num, q.den
    coeffs = []
    for k in range(n + 1):
        c = num[k] if k < len(num) else 0
        for j in range(1, min(k, len(den) - 1) + 1):
            c -= den[j] * coeffs[k - j]
        coeffs.append(c)
    return coeffs


def gf_unambiguous_linear(l: LinearSet, i: int) -> RationalGF:
    """Generating function of coordinate-i projections of an unambiguous
    linear set: z^(b_i) divided by the product of (1 - z^(p_i)) over periods.

    Requires base projection >= 0 and every period projection >= 1 (a period
    with projection <= 0 makes the slice counts infinite); the caller is
    responsible for supplying an unambiguous set.
    """
    idx = i - 1
    if not (0 <= idx < len(l.base)):
        raise ValueError(f"coordinate index {i} out of range")
    b_proj = l.base[idx]
    if b_proj < 0:
        raise ValueError(f"base projection {b_proj} is negative")
    num = (0,) * b_proj + (1,)
    den = (1,)
    for period in l.periods:
        e = period[idx]
        if e < 1:
            raise ValueError(
                f"period {period} has coordinate-{i} projection {e} < 1"
            )
        den = _pmul(den, (1,) + (0,) * (e - 1) + (-1,))
    return RationalGF(num, den)


def fit_rational(prefix, max_order: int, verify_window: int) -> RationalGF:
    """Minimal-order rational function whose expansion matches the prefix.

    Searches denominator degrees t = 0, 1, ... and, within each t, the
    smallest start index for the linear recurrence; the recurrence
    coefficients are solved exactly, the numerator is reconstructed, and the
    whole prefix must be reproduced.  The last ``verify_window`` entries are
    excluded from every solve and only checked, so they are predictions.
    """
    prefix = [int(v) for v in prefix]
    n = len(prefix)
    if verify_window < 0 or max_order < 0:
        raise ValueError("max_order and verify_window must be nonnegative")
    if n < verify_window + 1:
        raise ValueError(
            f"need at least {verify_window + 1} terms, got {n}"
        )
    fit_end = n - verify_window
    # orders the data cannot support (fewer than 2t fitted terms) are skipped
    for t in range(min(max_order, fit_end // 2) + 1):
        for start in range(t, fit_end + 1):
            if t > 0 and fit_end - start < t:
                break  # not enough equations to pin the coefficients down
            rows = [
                [prefix[k - i] for i in range(1, t + 1)]
                for k in range(start, fit_end)
            ]
            rhs = [prefix[k] for k in range(start, fit_end)]
            solution = solve(rows, rhs) if t > 0 else ([], [])
            if solution is None:
                continue
            if t == 0 and any(v != 0 for v in prefix[start:fit_end]):
                continue
            b = solution[0]
            den = [Fraction(1)] + [-bi for bi in b]
            num = [
                sum(den[j] * prefix[k - j] for j in range(min(k, t) + 1))
                for k in range(start)
            ]
            try:
                candidate = RationalGF(num, den)
            except ValueError:
                continue
            if series_coeffs(candidate, n - 1) == prefix:
                return candidate
    raise ValueError(
        f"no rational function of order <= {max_order} explains the prefix"
    )


@dataclass(frozen=True)
class QuasiPolynomial:
    """A sequence given by one polynomial in k per residue class mod period,
    after finitely many explicit exceptional values."""

    period: int
    residue_polynomials: tuple[tuple[Fraction, ...], ...]
    exceptional_prefix: tuple[int, ...]

    def evaluate(self, k: int):
        if k < 0:
            raise ValueError("index must be nonnegative")
        if k < len(self.exceptional_prefix):
            return self.exceptional_prefix[k]
        poly = self.residue_polynomials[k % self.period]
        value = sum(c * k**p for p, c in enumerate(poly))
        return int(value) if Fraction(value).denominator == 1 else value


def _denominator_period(den, cap):
    """Smallest P <= cap with den | (1 - z^P)^deg(den), or None."""
    deg = len(den) - 1
    for period in range(1, cap + 1):
        cyc = (1,) + (0,) * (period - 1) + (-1,)
        power = (1,)
        base = _pdivmod(cyc, den)[1]
        exponent = deg
        while exponent:
            if exponent & 1:
                power = _pdivmod(_pmul(power, base), den)[1]
            base = _pdivmod(_pmul(base, base), den)[1]
            exponent >>= 1
        if not power:
            return period
    return None


def to_quasi_polynomial(q: RationalGF, max_period: int = 360) -> QuasiPolynomial:
    """Closed quasi-polynomial form of the coefficient sequence.

    Requires every denominator root to be a root of unity, verified by
    finding the smallest P <= max_period with den | (1 - z^P)^deg(den);
    otherwise raises NotQuasiPolynomialError.  Residue polynomials are
    interpolated exactly and re-verified against the series.
    """
    deg_den = len(q.den) - 1
    deg_num = len(q.num) - 1 if q.num else -1
    prefix_len = max(0, deg_num - deg_den + 1)
    if deg_den == 0:
        coeffs = series_coeffs(q, max(prefix_len, 1))
        return QuasiPolynomial(1, ((),), tuple(coeffs[:prefix_len]))
    period = _denominator_period(q.den, max_period)
    if period is None:
        raise NotQuasiPolynomialError(
            f"denominator {q.den} has a pole that is no root of unity of "
            f"order <= {max_period}"
        )
    points = deg_den + 1
    extra = 2
    n_needed = prefix_len + period * (points + extra)
    coeffs = series_coeffs(q, n_needed)
    polys = []
    for r in range(period):
        ks = [
            k
            for k in range(prefix_len, n_needed + 1)
            if k % period == r
        ]
        sample = ks[:points]
        rows = [[Fraction(k) ** p for p in range(points)] for k in sample]
        rhs = [coeffs[k] for k in sample]
        solution = solve(rows, rhs)
        if solution is None:
            raise RuntimeError("interpolation failed; inconsistent samples")
        poly = _trim(solution[0])
        for k in ks:
            value = sum(c * k**p for p, c in enumerate(poly))
            if value != coeffs[k]:
                raise RuntimeError(
                    f"quasi-polynomial check failed at index {k}"
                )
        polys.append(tuple(poly))
    return QuasiPolynomial(period, tuple(polys), tuple(coeffs[:prefix_len]))


def gf_to_json(q: RationalGF) -> dict:
    return {"num": list(q.num), "den": list(q.den)}


def gf_from_json(data: dict) -> RationalGF:
    return RationalGF(data["num"], data["den"])
