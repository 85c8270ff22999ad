"""Bounded chain complexes of finitely generated free modules.

Complexes are homologically indexed: the differential decreases the degree.
A complex stores explicit support bounds [lo, hi]; every operation treats
degrees outside the support as rank zero.  Homology over K[x,x^-1] is
computed through the Smith normal form (free rank plus torsion invariant
factors); over the base ring K plain rank-nullity applies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RingMismatchError, ShapeError, UnsupportedRingError
from .laurent import BaseRing, LaurentPoly
from .matrices import LaurentMatrix, scalar_rank
from .smith import smith_normal_form


class ChainComplex:
    """Degree-indexed ranks and differentials over a declared base ring."""

    __slots__ = ("ring", "base", "lo", "hi", "ranks", "diffs")

    def __init__(self, ring, base: BaseRing, lo: int, hi: int,
                 ranks=None, diffs=None):
        if lo > hi:
            raise ShapeError(f"support interval [{lo}, {hi}] is empty")
        self.ring = ring
        self.base = base
        self.lo = lo
        self.hi = hi
        self.ranks = {m: int((ranks or {}).get(m, 0)) for m in range(lo, hi + 1)}
        if any(r < 0 for r in self.ranks.values()):
            raise ShapeError("negative rank")
        diffs = diffs or {}
        clean = {}
        for m in range(lo + 1, hi + 1):
            d = diffs.get(m)
            if d is None:
                d = LaurentMatrix.zero(ring, self.rank(m - 1), self.rank(m),
                                       base)
            if d.rows != self.rank(m - 1) or d.cols != self.rank(m):
                raise ShapeError(
                    f"differential at degree {m} has shape "
                    f"{d.rows}x{d.cols}, expected "
                    f"{self.rank(m - 1)}x{self.rank(m)}")
            if d.ring != ring:
                raise RingMismatchError("differential over a different ring")
            clean[m] = d
        for m in diffs:
            if m not in clean and not diffs[m].is_zero:
                raise ShapeError(f"differential at degree {m} out of support")
        self.diffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring, base=BaseRing.LAURENT):
        return cls(ring, base, 0, 0)

    @classmethod
    def single(cls, ring, base, degree, rank):
        return cls(ring, base, degree, degree, {degree: rank})

    @classmethod
    def two_term(cls, ring, poly: LaurentPoly, top: int = 1,
                 base=BaseRing.LAURENT):
        """rank-1 complex (base^1 --poly--> base^1) in degrees top, top-1."""
        d = LaurentMatrix(ring, 1, 1, [[poly]], base)
        return cls(ring, base, top - 1, top,
                   {top: 1, top - 1: 1}, {top: d})

    # -- access ------------------------------------------------------------

    def rank(self, m: int) -> int:
        return self.ranks.get(m, 0)

    def diff(self, m: int) -> LaurentMatrix:
        """The differential C_m -> C_{m-1} (zero outside the support)."""
        d = self.diffs.get(m)
        if d is None:
            return LaurentMatrix.zero(self.ring, self.rank(m - 1),
                                      self.rank(m), self.base)
        return d

    @property
    def support(self):
        return (self.lo, self.hi)

    @property
    def is_zero(self) -> bool:
        return all(r == 0 for r in self.ranks.values())

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Full d.d = 0 and exponent-constraint report; [] means valid."""
        problems = []
        for m in range(self.lo + 1, self.hi + 1):
            d = self.diff(m)
            for i, row in enumerate(d.entries):
                for j, p in enumerate(row):
                    if not p.respects(self.base):
                        problems.append(
                            f"degree {m}: entry ({i},{j}) = {p} violates "
                            f"{self.base.tag}")
        for m in range(self.lo + 2, self.hi + 1):
            prod = self.diff(m - 1) @ self.diff(m)
            if not prod.is_zero:
                problems.append(f"degree {m}: d.d != 0")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.validate()

    # -- basic operations -----------------------------------------------------

    def shift(self, n: int) -> "ChainComplex":
        """Re-index degrees by +n; the differential picks up (-1)^n."""
        sign = 1 if n % 2 == 0 else -1
        ranks = {m + n: r for m, r in self.ranks.items()}
        diffs = {}
        for m, d in self.diffs.items():
            diffs[m + n] = d if sign == 1 else -d
        return ChainComplex(self.ring, self.base, self.lo + n, self.hi + n,
                            ranks, diffs)

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        if self.ring != other.ring or self.base != other.base:
            raise RingMismatchError("direct sum over different rings")
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        ranks = {m: self.rank(m) + other.rank(m) for m in range(lo, hi + 1)}
        diffs = {}
        for m in range(lo + 1, hi + 1):
            a = self.diff(m)
            b = other.diff(m)
            zal = LaurentMatrix.zero(self.ring, a.rows, b.cols, self.base)
            zbl = LaurentMatrix.zero(self.ring, b.rows, a.cols, self.base)
            diffs[m] = LaurentMatrix.block(
                self.ring, [[a, zal], [zbl, b]], self.base)
        return ChainComplex(self.ring, self.base, lo, hi, ranks, diffs)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.ring == other.ring and self.base == other.base
                and self.lo == other.lo and self.hi == other.hi
                and self.ranks == other.ranks and self.diffs == other.diffs)

    def __hash__(self):
        return hash((self.ring, self.base, self.lo, self.hi,
                     tuple(sorted(self.ranks.items()))))

    def __repr__(self):
        ranks = ", ".join(f"{m}:{self.rank(m)}" for m in self.degrees())
        return (f"ChainComplex({self.ring.tag}, {self.base.tag}, "
                f"ranks {{{ranks}}})")


class ChainMap:
    """Degreewise matrices commuting with the differentials."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components=None):
        if source.ring != target.ring or source.base != target.base:
            raise RingMismatchError("chain map between different rings")
        self.source = source
        self.target = target
        comps = {}
        lo = min(source.lo, target.lo)
        hi = max(source.hi, target.hi)
        for m in range(lo, hi + 1):
            f = (components or {}).get(m)
            if f is None:
                f = LaurentMatrix.zero(source.ring, target.rank(m),
                                       source.rank(m), source.base)
            if f.rows != target.rank(m) or f.cols != source.rank(m):
                raise ShapeError(
                    f"component at degree {m} has shape {f.rows}x{f.cols}, "
                    f"expected {target.rank(m)}x{source.rank(m)}")
            comps[m] = f
        self.components = comps

    @classmethod
    def identity(cls, c: ChainComplex):
        return cls(c, c, {m: LaurentMatrix.identity(c.ring, c.rank(m), c.base)
                          for m in c.degrees()})

    @classmethod
    def zero(cls, source, target):
        return cls(source, target)

    def component(self, m: int) -> LaurentMatrix:
        f = self.components.get(m)
        if f is None:
            return LaurentMatrix.zero(self.source.ring, self.target.rank(m),
                                      self.source.rank(m), self.source.base)
        return f

    def validate(self):
        problems = []
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for m in range(lo + 1, hi + 1):
            lhs = self.component(m - 1) @ self.source.diff(m)
            rhs = self.target.diff(m) @ self.component(m)
            if lhs != rhs:
                problems.append(f"degree {m}: f.d != d.f")
        return problems

    @property
    def is_valid(self) -> bool:
        return not self.validate()

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other (other: A -> B, self: B -> C)."""
        if other.target is not self.source and other.target != self.source:
            raise ShapeError("composition mismatch")
        lo = min(other.source.lo, self.target.lo)
        hi = max(other.source.hi, self.target.hi)
        comps = {m: self.component(m) @ other.component(m)
                 for m in range(lo, hi + 1)}
        return ChainMap(other.source, self.target, comps)


class Homotopy:
    """Degree +1 family h_m: source_m -> target_{m+1}."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components=None):
        self.source = source
        self.target = target
        comps = {}
        lo = min(source.lo, target.lo) - 1
        hi = max(source.hi, target.hi)
        for m in range(lo, hi + 1):
            h = (components or {}).get(m)
            if h is None:
                h = LaurentMatrix.zero(source.ring, target.rank(m + 1),
                                       source.rank(m), source.base)
            if h.rows != target.rank(m + 1) or h.cols != source.rank(m):
                raise ShapeError(
                    f"homotopy at degree {m} has shape {h.rows}x{h.cols}, "
                    f"expected {target.rank(m + 1)}x{source.rank(m)}")
            comps[m] = h
        self.components = comps

    @classmethod
    def zero(cls, c: ChainComplex):
        return cls(c, c)

    def component(self, m: int) -> LaurentMatrix:
        h = self.components.get(m)
        if h is None:
            return LaurentMatrix.zero(self.source.ring,
                                      self.target.rank(m + 1),
                                      self.source.rank(m), self.source.base)
        return h


# -- homology -----------------------------------------------------------------


@dataclass(frozen=True)
class HomologyEntry:
    """Structure of one homology module over the base ring."""

    free_rank: int
    torsion: tuple            # monic nonconstant invariant factors
    kdim: int | None          # dimension over K; None means infinite

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


@dataclass(frozen=True)
class HomologyReport:
    ring_tag: str
    base_tag: str
    entries: dict             # degree -> HomologyEntry

    def entry(self, q: int) -> HomologyEntry:
        return self.entries.get(
            q, HomologyEntry(free_rank=0, torsion=(), kdim=0))

    @property
    def is_acyclic(self) -> bool:
        return all(e.is_zero for e in self.entries.values())

    @property
    def all_torsion(self) -> bool:
        return all(e.free_rank == 0 for e in self.entries.values())

    def total_kdim(self) -> int | None:
        total = 0
        for e in self.entries.values():
            if e.kdim is None:
                return None
            total += e.kdim
        return total

    def free_ranks(self) -> dict:
        return {q: e.free_rank for q, e in self.entries.items()
                if e.free_rank}


def homology(c: ChainComplex) -> HomologyReport:
    """Per-degree homology structure.

    Over K[x,x^-1] (field coefficients) the module structure comes from two
    Smith normal forms per degree: the kernel of the outgoing differential
    and the presentation of the incoming image inside it.  Over the base
    ring K only dimensions are needed.  Z coefficients are unsupported.
    """
    if not c.ring.is_field:
        raise UnsupportedRingError(
            "homology needs field coefficients (Z[x,x^-1] is not a PID)")
    if c.base == BaseRing.K:
        return _homology_scalar(c)
    if c.base != BaseRing.LAURENT:
        raise UnsupportedRingError(
            f"homology is computed over K or K[x,x^-1], not {c.base.tag}")
    entries = {}
    for q in c.degrees():
        if c.rank(q) == 0:
            entries[q] = HomologyEntry(0, (), 0)
            continue
        out_snf = smith_normal_form(c.diff(q))
        kernel_rank = c.rank(q) - out_snf.rank
        incoming = c.diff(q + 1)
        if incoming.cols == 0 or kernel_rank == 0:
            free = kernel_rank
            torsion = ()
        else:
            m = out_snf.kernel_coordinates(incoming)
            m_snf = smith_normal_form(m)
            free = kernel_rank - m_snf.rank
            torsion = tuple(f for f in m_snf.factors if f.core_degree > 0)
        kdim = None if free else sum(f.core_degree for f in torsion)
        entries[q] = HomologyEntry(free, torsion, kdim)
    return HomologyReport(c.ring.tag, c.base.tag, entries)


def _homology_scalar(c: ChainComplex) -> HomologyReport:
    ranks = {}
    for m in range(c.lo, c.hi + 2):
        d = c.diff(m)
        ranks[m] = scalar_rank(d) if d.rows and d.cols else 0
    entries = {}
    for q in c.degrees():
        dim = c.rank(q) - ranks.get(q, 0) - ranks.get(q + 1, 0)
        entries[q] = HomologyEntry(dim, (), dim)
    return HomologyReport(c.ring.tag, c.base.tag, entries)


def homology_dims(c: ChainComplex) -> dict:
    """Degree -> K-dimension for a complex over base K."""
    if c.base != BaseRing.K:
        raise UnsupportedRingError("homology_dims expects a K-complex")
    report = _homology_scalar(c)
    return {q: e.kdim for q, e in report.entries.items()}


def is_acyclic(c: ChainComplex) -> bool:
    return homology(c).is_acyclic


# -- cones, retracts, views ----------------------------------------------------


def cone(f: ChainMap):
    """Mapping cone with the block differential [[d_target, f], [0, -d_source]].

    Returns (cone complex, inclusion of the target, projection onto the
    source shifted by +1).
    """
    a, b = f.source, f.target
    ring = a.ring
    lo = min(b.lo, a.lo + 1)
    hi = max(b.hi, a.hi + 1)
    ranks = {m: b.rank(m) + a.rank(m - 1) for m in range(lo, hi + 1)}
    diffs = {}
    for m in range(lo + 1, hi + 1):
        db = b.diff(m)
        da = a.diff(m - 1)
        fm = f.component(m - 1)
        z = LaurentMatrix.zero(ring, da.rows, db.cols, a.base)
        diffs[m] = LaurentMatrix.block(ring, [[db, fm], [z, -da]], a.base)
    cc = ChainComplex(ring, a.base, lo, hi, ranks, diffs)
    incl = ChainMap(b, cc, {
        m: LaurentMatrix.block(ring, [
            [LaurentMatrix.identity(ring, b.rank(m), a.base)],
            [LaurentMatrix.zero(ring, a.rank(m - 1), b.rank(m), a.base)],
        ], a.base)
        for m in b.degrees()})
    shifted = a.shift(1)
    proj = ChainMap(cc, shifted, {
        m: LaurentMatrix.block(ring, [[
            LaurentMatrix.zero(ring, a.rank(m - 1), b.rank(m), a.base),
            LaurentMatrix.identity(ring, a.rank(m - 1), a.base),
        ]], a.base)
        for m in range(lo, hi + 1)})
    return cc, incl, proj


def is_quasi_iso(f: ChainMap) -> bool:
    """Mapping-cone acyclicity, the derived-category meaning used here."""
    cc, _, _ = cone(f)
    return is_acyclic(cc)


def verify_homotopy_retract(d: ChainComplex, r: ChainMap, s: ChainMap,
                            h: Homotopy) -> bool:
    """Check r.s + d.h + h.d = id exactly in every degree.

    ``r: D -> C`` and ``s: C -> D`` exhibit C as a homotopy retract of the
    bounded free complex D; ``h`` is the witnessing homotopy on C.  The sign
    convention fixed here is id - r.s = d.h + h.d.
    """
    c = r.target
    if r.source != d:
        raise ShapeError("r must map out of D")
    if s.source != c or s.target != d:
        raise ShapeError("s must map C into D")
    for m in range(c.lo, c.hi + 1):
        rs = r.component(m) @ s.component(m)
        dh = c.diff(m + 1) @ h.component(m)
        hd = h.component(m - 1) @ c.diff(m)
        ident = LaurentMatrix.identity(c.ring, c.rank(m), c.base)
        if rs + dh + hd != ident:
            return False
    return True


def free_complement(c: ChainComplex) -> ChainComplex:
    """Zero-differential complement making the sum levelwise free.

    Free levels need no complement, so this returns the rank-zero complex
    with the same support; the operation records the contract that a
    projective (non-free) level would be padded here.
    """
    return ChainComplex(c.ring, c.base, c.lo, c.hi, {}, {})


class ScalarRestrictionView:
    """A K[x,x^-1]-complex re-tagged as a K-complex of infinite rank.

    Metadata only: consumed by homology-dimension accounting.  The K-dimension
    of each homology module is finite exactly when the module is torsion.
    """

    __slots__ = ("complex",)

    def __init__(self, c: ChainComplex):
        if c.base != BaseRing.LAURENT:
            raise UnsupportedRingError(
                "restriction of scalars applies to K[x,x^-1]-complexes")
        self.complex = c

    @property
    def base(self) -> BaseRing:
        return BaseRing.K

    def homology_kdims(self) -> dict:
        report = homology(self.complex)
        return {q: e.kdim for q, e in report.entries.items()}

    def total_kdim(self) -> int | None:
        return homology(self.complex).total_kdim()


def restrict_scalars_view(c: ChainComplex) -> ScalarRestrictionView:
    return ScalarRestrictionView(c)
