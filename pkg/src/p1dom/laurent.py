"""Laurent polynomials in one variable with exact coefficients.

A polynomial is a sparse map ``exponent -> coefficient`` with no zero values
stored; the zero polynomial is the empty map.  Exponents may be negative.
The four base rings K, K[x], K[x^-1] and K[x,x^-1] are tags restricting
which exponents a value may use; arithmetic itself always happens in the
full Laurent ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BaseRingViolationError, NotAUnitError, ShapeError
from .scalars import CoefficientRing, check_same_ring


class BaseRing(Enum):
    """Exponent constraint tags for the polynomial base rings over K."""

    K = "K"
    POLY = "K[x]"
    POLY_INV = "K[x^-1]"
    LAURENT = "K[x,x^-1]"

    def allows(self, exponent: int) -> bool:
        if self is BaseRing.K:
            return exponent == 0
        if self is BaseRing.POLY:
            return exponent >= 0
        if self is BaseRing.POLY_INV:
            return exponent <= 0
        return True

    @property
    def tag(self) -> str:
        return self.value


def base_from_tag(tag: str) -> BaseRing:
    for base in BaseRing:
        if base.value == tag:
            return base
    raise ShapeError(f"unknown base ring tag {tag!r}")


class LaurentPoly:
    """Immutable sparse Laurent polynomial over a coefficient ring."""

    __slots__ = ("ring", "_c", "_hash")

    def __init__(self, ring: CoefficientRing, coeffs=None):
        self.ring = ring
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                c = ring.normalise(c)
                if c != 0:
                    clean[int(e)] = c
        self._c = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def one(cls, ring):
        return cls(ring, {0: ring.one()})

    @classmethod
    def constant(cls, ring, value):
        return cls(ring, {0: value})

    @classmethod
    def monomial(cls, ring, exponent: int, coeff=1):
        return cls(ring, {exponent: ring.from_int(coeff) if isinstance(coeff, int) else coeff})

    @classmethod
    def from_pairs(cls, ring, pairs):
        """Build from ``[(exponent, coefficient), ...]``, summing repeats."""
        acc = {}
        for e, c in pairs:
            acc[e] = ring.add(acc.get(e, ring.zero()), ring.normalise(c))
        return cls(ring, acc)

    # -- canonical data ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._c

    def items(self):
        """Sorted (exponent, coefficient) pairs, exponents ascending."""
        return sorted(self._c.items())

    def coeff(self, exponent: int):
        return self._c.get(exponent, self.ring.zero())

    @property
    def mindeg(self) -> int:
        if not self._c:
            raise ShapeError("mindeg undefined on the zero polynomial")
        return min(self._c)

    @property
    def maxdeg(self) -> int:
        if not self._c:
            raise ShapeError("maxdeg undefined on the zero polynomial")
        return max(self._c)

    @property
    def core_degree(self) -> int:
        """maxdeg - mindeg: the degree of the monic core, the Euclidean
        norm of K[x,x^-1]."""
        return self.maxdeg - self.mindeg

    def respects(self, base: BaseRing) -> bool:
        return all(base.allows(e) for e in self._c)

    def check_base(self, base: BaseRing):
        if not self.respects(base):
            raise BaseRingViolationError(
                f"{self} has exponents outside {base.tag}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        check_same_ring(self.ring, other.ring)
        acc = dict(self._c)
        for e, c in other._c.items():
            acc[e] = self.ring.add(acc.get(e, self.ring.zero()), c)
        return LaurentPoly(self.ring, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly(
            self.ring, {e: self.ring.neg(c) for e, c in self._c.items()}
        )

    def __mul__(self, other):
        check_same_ring(self.ring, other.ring)
        ring = self.ring
        acc = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                acc[e] = ring.add(acc.get(e, ring.zero()), ring.mul(c1, c2))
        return LaurentPoly(ring, acc)

    def scale(self, coeff):
        return LaurentPoly(
            self.ring,
            {e: self.ring.mul(c, coeff) for e, c in self._c.items()},
        )

    def times_monomial(self, exponent: int, coeff=None):
        coeff = self.ring.one() if coeff is None else coeff
        return LaurentPoly(
            self.ring,
            {e + exponent: self.ring.mul(c, coeff) for e, c in self._c.items()},
        )

    def evaluate(self, point):
        """Evaluate at a scalar point (the point must be a unit when
        negative exponents occur)."""
        ring = self.ring
        total = ring.zero()
        inv = None
        for e, c in self._c.items():
            if e >= 0:
                term = ring.mul(c, _power(ring, point, e))
            else:
                if inv is None:
                    inv = ring.invert(point)
                term = ring.mul(c, _power(ring, inv, -e))
            total = ring.add(total, term)
        return total

    # -- units and normal form ----------------------------------------------

    @property
    def is_unit(self) -> bool:
        """Unit of K[x,x^-1]: a single term with unit coefficient."""
        if len(self._c) != 1:
            return False
        (_, c), = self._c.items()
        return self.ring.is_unit(c)

    def unit_normalise(self):
        """Write self = c * x^v * core with core monic and core(0) != 0.

        Returns ``(v, c, core)``.  Requires a field (or a unit leading
        coefficient over Z) and a nonzero polynomial.
        """
        if self.is_zero:
            raise ShapeError("cannot normalise the zero polynomial")
        v = self.mindeg
        lead = self._c[self.maxdeg]
        inv = self.ring.invert(lead)
        core = LaurentPoly(
            self.ring,
            {e - v: self.ring.mul(c, inv) for e, c in self._c.items()},
        )
        return v, lead, core

    def inverse_unit(self):
        if not self.is_unit:
            raise NotAUnitError(f"{self} is not a unit of K[x,x^-1]")
        (e, c), = self._c.items()
        return LaurentPoly(self.ring, {-e: self.ring.invert(c)})

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, tuple(sorted(self._c.items()))))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in self.items():
            cs = self.ring.render(c)
            if e == 0:
                parts.append(cs)
            elif e == 1:
                parts.append(f"{cs}*x" if cs != "1" else "x")
            else:
                parts.append(f"{cs}*x^{e}" if cs != "1" else f"x^{e}")
        return " + ".join(parts)


def _power(ring, base, n):
    out = ring.one()
    for _ in range(n):
        out = ring.mul(out, base)
    return out


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Dispatch add/sub/mul; mixed coefficient rings raise RingMismatchError."""
    check_same_ring(a.ring, b.ring)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ShapeError(f"unknown operation {op!r}")


def divmod_laurent(a: LaurentPoly, b: LaurentPoly):
    """Division with remainder in K[x,x^-1], K a field.

    Returns (q, r) with a = q*b + r and either r = 0 or
    core_degree(r) < core_degree(b).  This is the Euclidean structure used
    by the Smith normal form routine.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    ring = a.ring
    check_same_ring(ring, b.ring)
    if a.is_zero:
        return LaurentPoly.zero(ring), LaurentPoly.zero(ring)
    va = a.mindeg
    vb = b.mindeg
    # Polynomial long division of the shifted operands inside K[x].
    rem = {e - va: c for e, c in a._c.items()}
    den = {e - vb: c for e, c in b._c.items()}
    deg_den = max(den)
    lead_inv = ring.invert(den[deg_den])
    quo = {}
    while rem and max(rem) >= deg_den:
        deg_rem = max(rem)
        factor = ring.mul(rem[deg_rem], lead_inv)
        shift = deg_rem - deg_den
        quo[shift] = factor
        for e, c in den.items():
            t = e + shift
            val = ring.sub(rem.get(t, ring.zero()), ring.mul(factor, c))
            if val == 0:
                rem.pop(t, None)
            else:
                rem[t] = val
    q = LaurentPoly(ring, {e + va - vb: c for e, c in quo.items()})
    r = LaurentPoly(ring, {e + va: c for e, c in rem.items()})
    return q, r


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division; raises if b does not divide a.

    Over Z this performs polynomial division on the integer coefficients
    and verifies exactness (used by the fraction-free determinant).
    """
    ring = a.ring
    if a.is_zero:
        return LaurentPoly.zero(ring)
    if ring.is_field:
        q, r = divmod_laurent(a, b)
        if not r.is_zero:
            raise ShapeError(f"{b} does not divide {a}")
        return q
    # Integer coefficients: long division tracking exactness.
    check_same_ring(ring, b.ring)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    va, vb = a.mindeg, b.mindeg
    rem = {e - va: c for e, c in a._c.items()}
    den = {e - vb: c for e, c in b._c.items()}
    deg_den = max(den)
    lead = den[deg_den]
    quo = {}
    while rem:
        deg_rem = max(rem)
        if deg_rem < deg_den or rem[deg_rem] % lead != 0:
            raise ShapeError(f"{b} does not divide {a} over Z")
        factor = rem[deg_rem] // lead
        shift = deg_rem - deg_den
        quo[shift] = factor
        for e, c in den.items():
            t = e + shift
            val = rem.get(t, 0) - factor * c
            if val == 0:
                rem.pop(t, None)
            else:
                rem[t] = val
    return LaurentPoly(ring, {e + va - vb: c for e, c in quo.items()})


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    """True iff b divides a in K[x,x^-1] (field coefficients)."""
    if a.is_zero:
        return True
    if b.is_zero:
        return False
    _, r = divmod_laurent(a, b)
    return r.is_zero


def xgcd_laurent(a: LaurentPoly, b: LaurentPoly):
    """Extended gcd in K[x,x^-1]: returns (g, u, v) with u*a + v*b = g.

    g is normalised to a monic core with zero valuation.  Remainders are
    renormalised to unit content at every step (scaling the cofactor row by
    the same unit keeps the Bezout identity), which keeps coefficient
    growth tame over the rationals.
    """
    ring = a.ring
    check_same_ring(ring, b.ring)
    one = LaurentPoly.one(ring)
    zero = LaurentPoly.zero(ring)
    r0, u0, v0 = a, one, zero
    r1, u1, v1 = b, zero, one
    if r0.is_zero:
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r0, u0, v0
    while not r1.is_zero:
        q, r2 = divmod_laurent(r0, r1)
        u2 = u0 - q * u1
        v2 = v0 - q * v1
        if not r2.is_zero:
            val, lead, core = r2.unit_normalise()
            inv = LaurentPoly.monomial(ring, -val, 1).scale(
                ring.invert(lead))
            r2, u2, v2 = core, u2 * inv, v2 * inv
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r2, u2, v2
    if r0.is_zero:
        return zero, zero, zero
    val, lead, core = r0.unit_normalise()
    inv = LaurentPoly.monomial(ring, -val, 1).scale(ring.invert(lead))
    return core, u0 * inv, v0 * inv
