"""Arithmetic for truncated Levi-Civita numbers.

A number is a finite, strictly increasing list of (rational exponent,
complex coefficient) terms together with a *validity bound*: the largest
exponent up to which the stored coefficients are guaranteed to equal the
exact series.  ``t`` (the canonical infinitesimal, exponent 1) generates
the whole Puiseux hierarchy; exponents are exact ``fractions.Fraction``
values, coefficients are IEEE double complex.

Every operation is a pure function on immutable values and propagates the
validity bound so that a result never claims more precision than its
inputs support:

* ``a + b``         -> min(bounds)
* ``a * b``         -> min(T_a + val(b), T_b + val(a))
* ``invert(a)``     -> T_a - 2 val(a)
* ``sqrt(a)``       -> T_a - val(a) / 2

where ``val`` is the valuation (smallest exponent) and ``T`` the bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .errors import DomainError, PrecisionError, WindowExceededError

__all__ = [
    "INF",
    "LCNumber",
    "from_terms",
    "constant",
    "monomial",
    "zero",
    "t",
    "as_exponent",
    "valuation",
    "leading_coefficient",
    "constant_part",
    "real_part",
    "imag_part",
    "is_real",
    "invert",
    "sqrt",
    "conjugate",
    "magnitude",
    "compare",
    "semi_norm",
    "eq_up_to",
    "shift_exponents",
    "truncated",
    "retruncate",
]

#: Validity bound of exactly represented numbers.
INF = math.inf

# Cleanup threshold: relative to the largest coefficient magnitude in the
# operand, with an absolute floor.  Coefficients at or below it are treated
# as floating-point residue, not data; without this cleanup valuations and
# order comparisons would be dominated by roundoff.
EPS_REL = 1e-14
EPS_FLOOR = 1e-300

ExponentLike = Union[Fraction, int, str]
BoundLike = Union[Fraction, int, str, float]
ScalarLike = Union[int, float, complex, Fraction]


def as_exponent(q: ExponentLike) -> Fraction:
    """Coerce ``q`` to an exact rational exponent."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, str)):
        return Fraction(q)
    raise TypeError(f"exponent must be rational (int, Fraction or 'p/q' string), got {q!r}")


def as_bound(b: BoundLike):
    """Coerce ``b`` to a validity bound (exact rational or +inf)."""
    if b == INF:
        return INF
    return as_exponent(b)


def _bmin(x, y):
    return x if x <= y else y


def _badd(x, y):
    if x == INF or y == INF:
        return INF
    return x + y


def _bsub(x, y):
    # x - y where x may be +inf; y is always finite here
    if x == INF:
        return INF
    return x - y


def _bhalf(x):
    if x == INF:
        return INF
    return x / 2


@dataclass(frozen=True)
class LCNumber:
    """A truncated Levi-Civita number.

    Do not build instances directly; use :func:`from_terms`,
    :func:`constant` or :func:`monomial`, which normalize the term list.
    """

    terms: Tuple[Tuple[Fraction, complex], ...]
    valid_to: object  # Fraction or INF

    # -- accessors --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __getitem__(self, q: ExponentLike) -> complex:
        """Coefficient at exponent ``q`` (0 if absent)."""
        q = as_exponent(q)
        for qi, ci in self.terms:
            if qi == q:
                return ci
            if qi > q:
                break
        return 0j

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        bound = _bmin(self.valid_to, other.valid_to)
        ta, tb = self.terms, other.terms
        # two-pointer merge of the sorted term lists
        merged = []
        i = j = 0
        na, nb = len(ta), len(tb)
        while i < na and j < nb:
            qa, ca = ta[i]
            qb, cb = tb[j]
            if qa < qb:
                merged.append(ta[i])
                i += 1
            elif qb < qa:
                merged.append(tb[j])
                j += 1
            else:
                merged.append((qa, ca + cb))
                i += 1
                j += 1
        merged.extend(ta[i:])
        merged.extend(tb[j:])
        if not merged:
            return LCNumber((), bound)
        max_mag = max(abs(c) for _, c in merged)
        if max_mag == 0.0:
            return LCNumber((), bound)
        eps = max(EPS_REL * max_mag, EPS_FLOOR)
        return LCNumber(tuple((q, c) for q, c in merged
                              if abs(c) > eps and q <= bound), bound)

    __radd__ = __add__

    def __neg__(self):
        return LCNumber(tuple((q, -c) for q, c in self.terms), self.valid_to)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LCNumber):
            return _mul(self, invert(other))
        if isinstance(other, (int, float, complex, Fraction)):
            return _mul(self, constant(1.0 / complex(other)))
        return NotImplemented

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mul(other, invert(self))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return invert(self.__pow__(-n))
        acc = constant(1.0)
        base = self
        k = n
        while k:
            if k & 1:
                acc = _mul(acc, base)
            base = _mul(base, base) if k > 1 else base
            k >>= 1
        return acc

    # -- order (real numbers only) ----------------------------------------

    def __lt__(self, other):
        return compare(self, _coerce_strict(other)) < 0

    def __le__(self, other):
        return compare(self, _coerce_strict(other)) <= 0

    def __gt__(self, other):
        return compare(self, _coerce_strict(other)) > 0

    def __ge__(self, other):
        return compare(self, _coerce_strict(other)) >= 0

    def __repr__(self):
        body = " + ".join(f"{c}*t^{q}" for q, c in self.terms) or "0"
        return f"<LC {body} | valid to {self.valid_to}>"


def _coerce(x):
    if isinstance(x, LCNumber):
        return x
    if isinstance(x, (int, float, complex, Fraction)):
        return constant(x)
    return NotImplemented


def _coerce_strict(x) -> LCNumber:
    y = _coerce(x)
    if y is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an LCNumber")
    return y


# -- construction ----------------------------------------------------------


def from_terms(raw_terms: Iterable[Tuple[ExponentLike, ScalarLike]],
               valid_to: BoundLike = INF,
               eps_zero: Optional[float] = None) -> LCNumber:
    """Build a normalized number from (exponent, coefficient) pairs.

    Duplicate exponents are merged by addition, coefficients at or below
    the cleanup threshold are dropped, and terms above ``valid_to`` are
    discarded.  Non-finite coefficients are rejected.  ``eps_zero``
    overrides the default threshold (EPS_REL times the largest magnitude,
    floored at EPS_FLOOR).
    """
    bound = as_bound(valid_to)
    merged: dict = {}
    for q, c in raw_terms:
        q = as_exponent(q)
        c = complex(c)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError(f"non-finite coefficient {c} at exponent {q}")
        merged[q] = merged.get(q, 0j) + c
    if not merged:
        return LCNumber((), bound)
    if eps_zero is None:
        max_mag = max(abs(c) for c in merged.values())
        eps_zero = max(EPS_REL * max_mag, EPS_FLOOR)
    kept = sorted((q, c) for q, c in merged.items() if abs(c) > eps_zero and q <= bound)
    return LCNumber(tuple(kept), bound)


def constant(c: ScalarLike, valid_to: BoundLike = INF) -> LCNumber:
    """The embedding of a machine scalar: a single term at exponent 0."""
    return from_terms([(0, c)], valid_to)


def monomial(q: ExponentLike, c: ScalarLike = 1.0, valid_to: BoundLike = INF) -> LCNumber:
    """c * t^q."""
    return from_terms([(as_exponent(q), c)], valid_to)


def zero(valid_to: BoundLike = INF) -> LCNumber:
    return LCNumber((), as_bound(valid_to))


#: The canonical infinitesimal (Puiseux variable).
t = monomial(1)


# -- basic queries ----------------------------------------------------------


def valuation(a: LCNumber) -> Optional[Fraction]:
    """Smallest stored exponent; None for zero."""
    if not a.terms:
        return None
    return a.terms[0][0]


def leading_coefficient(a: LCNumber) -> complex:
    if not a.terms:
        return 0j
    return a.terms[0][1]


def is_at_most_finite(a: LCNumber) -> bool:
    """True when a is zero or its valuation is >= 0 (no infinitely large part)."""
    return not a.terms or a.terms[0][0] >= 0


def constant_part(a: LCNumber) -> complex:
    """The coefficient at exponent 0.  Requires an at most finite input."""
    if a.terms and a.terms[0][0] < 0:
        raise DomainError("constant part of an infinitely large number")
    return a[0]


def is_real(a: LCNumber) -> bool:
    return all(c.imag == 0.0 for _, c in a.terms)


def real_part(a: LCNumber) -> LCNumber:
    """Coefficient-wise real part."""
    return LCNumber(tuple((q, complex(c.real, 0.0)) for q, c in a.terms if c.real != 0.0),
                    a.valid_to)


def imag_part(a: LCNumber) -> LCNumber:
    """Coefficient-wise imaginary part (a real number)."""
    return LCNumber(tuple((q, complex(c.imag, 0.0)) for q, c in a.terms if c.imag != 0.0),
                    a.valid_to)


# -- multiplication ---------------------------------------------------------


def _mul(a: LCNumber, b: LCNumber) -> LCNumber:
    # Exact zero is absorbing and exact: the product is zero everywhere.
    if not a.terms or not b.terms:
        return LCNumber((), INF)
    la = a.terms[0][0]
    lb = b.terms[0][0]
    bound = _bmin(_badd(a.valid_to, lb), _badd(b.valid_to, la))
    # Convolve on a common integer exponent grid: integer dictionary keys
    # are far cheaper than Fraction hashing in this hot path.
    grid = 1
    for q, _ in a.terms:
        grid = grid * q.denominator // math.gcd(grid, q.denominator)
    for q, _ in b.terms:
        grid = grid * q.denominator // math.gcd(grid, q.denominator)
    if bound != INF:
        grid = grid * bound.denominator // math.gcd(grid, bound.denominator)
        ibound = bound.numerator * (grid // bound.denominator)
    else:
        ibound = None
    ia = [(q.numerator * (grid // q.denominator), c) for q, c in a.terms]
    ib = [(q.numerator * (grid // q.denominator), c) for q, c in b.terms]
    lb_i = ib[0][0]
    acc: dict = {}
    for qa, ca in ia:
        if ibound is not None and qa + lb_i > ibound:
            break
        for qb, cb in ib:
            q = qa + qb
            if ibound is not None and q > ibound:
                break
            acc[q] = acc.get(q, 0j) + ca * cb
    if not acc:
        return LCNumber((), bound)
    max_mag = max(abs(c) for c in acc.values())
    if not math.isfinite(max_mag):
        raise ValueError("coefficient overflow in multiplication")
    eps = max(EPS_REL * max_mag, EPS_FLOOR)
    terms = tuple((Fraction(q, grid), c)
                  for q, c in sorted(acc.items()) if abs(c) > eps)
    return LCNumber(terms, bound)


# -- comparison and semi-norms ----------------------------------------------


def _exact_diff(a: LCNumber, b: LCNumber):
    """Componentwise a - b with exact merging and no relative cleanup.

    The relative cleanup threshold would erase genuinely tiny coefficients
    (an infinitesimal minus 1e-100 must still come out negative), so order
    comparisons work on the raw merged difference.
    """
    merged: dict = {}
    for q, c in a.terms:
        merged[q] = merged.get(q, 0j) + c
    for q, c in b.terms:
        merged[q] = merged.get(q, 0j) - c
    return sorted((q, c) for q, c in merged.items() if c != 0j)


def compare(a: LCNumber, b: LCNumber) -> int:
    """Order comparison for real numbers: -1, 0 or 1 as a < b, a = b, a > b."""
    if not is_real(a) or not is_real(b):
        raise DomainError("order comparison requires real coefficients")
    diff = _exact_diff(a, b)
    if not diff:
        return 0
    lead = diff[0][1].real
    return 1 if lead > 0 else -1


def semi_norm(a: LCNumber, r: ExponentLike) -> float:
    """sup of coefficient magnitudes over exponents <= r.

    Raises when ``r`` lies beyond the validity bound: the stored window
    cannot certify the supremum there.
    """
    r = as_exponent(r)
    if r > a.valid_to:
        raise WindowExceededError(
            f"semi-norm window {r} exceeds validity bound {a.valid_to}")
    vals = [abs(c) for q, c in a.terms if q <= r]
    return max(vals) if vals else 0.0


def eq_up_to(a: LCNumber, b: LCNumber, r: ExponentLike, tol: float) -> bool:
    """True when a and b agree coefficient-wise up to exponent r, within tol."""
    r = as_exponent(r)
    bound = _bmin(a.valid_to, b.valid_to)
    if r > bound:
        raise WindowExceededError(
            f"comparison window {r} exceeds shared validity bound {bound}")
    diff = _exact_diff(a, b)
    worst = max((abs(c) for q, c in diff if q <= r), default=0.0)
    return worst <= tol


# -- structural operations ---------------------------------------------------


def shift_exponents(a: LCNumber, shift: ExponentLike) -> LCNumber:
    """Multiply by the exact monomial t^shift: every exponent and the bound move."""
    shift = as_exponent(shift)
    return LCNumber(tuple((q + shift, c) for q, c in a.terms),
                    _badd(a.valid_to, shift))


def truncated(a: LCNumber, bound: BoundLike) -> LCNumber:
    """Restrict to exponents <= bound; the validity bound only tightens."""
    bound = _bmin(a.valid_to, as_bound(bound))
    return LCNumber(tuple((q, c) for q, c in a.terms if q <= bound), bound)


def retruncate(a: LCNumber, bound: BoundLike) -> LCNumber:
    """Set the validity window to exactly ``bound``.

    Unlike :func:`truncated` this may *widen* the recorded bound.  It is an
    explicit assertion by the caller (the iteration loop holds its window
    fixed instead of letting each step shrink it) and is never applied
    implicitly by arithmetic.
    """
    bound = as_bound(bound)
    return LCNumber(tuple((q, c) for q, c in a.terms if q <= bound), bound)


# -- inversion and square root ------------------------------------------------


def _split_leading(a: LCNumber):
    """Factor a = c * t^lam * (1 + eps) with val(eps) > 0; returns (lam, c, eps)."""
    lam, c = a.terms[0]
    tail = [(q - lam, cq / c) for q, cq in a.terms[1:]]
    eps = LCNumber(tuple(tail), _bsub(a.valid_to, lam))
    return lam, c, eps


def invert(a: LCNumber, bound: BoundLike = None) -> LCNumber:
    """Multiplicative inverse on the largest window the input supports.

    Factors out the leading monomial and sums the geometric series of the
    infinitesimal remainder; the result is valid to ``T_a - 2 val(a)``.
    An exactly represented input (infinite bound) with more than one term
    has an inverse with infinite support, so a finite ``bound`` must be
    supplied (or the input truncated) first.
    """
    if bound is not None:
        a = truncated(a, bound)
    if not a.terms:
        raise ZeroDivisionError("inverse of zero")
    lam, c, eps = _split_leading(a)
    out_bound = _bsub(a.valid_to, 2 * lam)
    if out_bound < -lam:
        raise PrecisionError("validity window leaves no representable terms for the inverse")
    if not eps.terms:
        return LCNumber(((-lam, 1.0 / c),), out_bound)
    series_bound = _bsub(a.valid_to, lam)
    if series_bound == INF:
        raise PrecisionError(
            "inverse of an unbounded non-monomial series has infinite support; "
            "truncate the input or pass bound=...")
    q_eps = eps.terms[0][0]
    n_terms = int(series_bound / q_eps) + 1  # later powers cannot reach the window
    neg_eps = -eps
    acc = constant(1.0)
    power = constant(1.0)
    for _ in range(1, n_terms):
        power = truncated(_mul(power, neg_eps), series_bound)
        if not power.terms:
            break
        acc = acc + power
    acc = truncated(acc, series_bound)
    return shift_exponents(_mul(acc, constant(1.0 / c)), -lam)


def sqrt(a: LCNumber, bound: BoundLike = None) -> LCNumber:
    """Square root of a positive real number (ordered-field root, result > 0).

    Requires real coefficients and a positive leading coefficient.  Uses
    the binomial series of the infinitesimal remainder after factoring the
    leading monomial; the result is valid to ``T_a - val(a)/2``.
    """
    if bound is not None:
        a = truncated(a, bound)
    if not a.terms:
        return LCNumber((), _bhalf(a.valid_to))
    if not is_real(a):
        raise DomainError("square root of a number with complex coefficients")
    lam, c, eps = _split_leading(a)
    c = c.real
    if c < 0:
        raise DomainError("square root of a negative number")
    out_bound = _bsub(a.valid_to, lam / 2)
    root_c = math.sqrt(c)
    half_lam = lam / 2
    if not eps.terms:
        return LCNumber(((half_lam, complex(root_c)),), out_bound)
    series_bound = _bsub(a.valid_to, lam)
    if series_bound == INF:
        raise PrecisionError(
            "square root of an unbounded non-monomial series has infinite support; "
            "truncate the input or pass bound=...")
    q_eps = eps.terms[0][0]
    n_terms = int(series_bound / q_eps) + 1
    acc = constant(1.0)
    power = constant(1.0)
    coeff = 1.0  # binomial(1/2, k), updated iteratively
    for k in range(1, n_terms):
        coeff *= (0.5 - (k - 1)) / k
        power = truncated(_mul(power, eps), series_bound)
        if not power.terms:
            break
        acc = acc + _mul(power, constant(coeff))
    acc = truncated(acc, series_bound)
    return shift_exponents(_mul(acc, constant(root_c)), half_lam)


# -- complex structure --------------------------------------------------------


def conjugate(z: LCNumber) -> LCNumber:
    return LCNumber(tuple((q, c.conjugate()) for q, c in z.terms), z.valid_to)


def magnitude(z: LCNumber) -> LCNumber:
    """|z| = sqrt(re(z)^2 + im(z)^2), a real number >= 0.

    Purely real inputs take the exact ordered-field route (sign flip of
    the leading coefficient); only genuinely complex inputs pay for the
    square-root series.
    """
    if not z.terms:
        return z
    if is_real(z):
        return z if z.terms[0][1].real > 0 else -z
    re = real_part(z)
    im = imag_part(z)
    return sqrt(_mul(re, re) + _mul(im, im))
