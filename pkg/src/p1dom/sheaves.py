"""Sheaves on the projective line as gluing diagrams.

A sheaf diagram holds free modules over K[x^-1], K[x,x^-1] and K[x] with
structure maps into the middle.  Each middle basis vector carries a twist
split (k, l): the stored matrices p_minus / p_plus are legal over K[x^-1]
and K[x], and the true torus maps are diag(x^k) @ p_minus and
diag(x^-l) @ p_plus.  With this bookkeeping the nth twisting sheaf stores
identity matrices and all legality checks are integer comparisons.

Global sections and first cohomology of a sum of twists are banded monomial
spaces: for a summand of twist n = k + l the section basis is
x^-l, ..., x^k (when n >= 0) and the obstruction basis is
x^{k+1}, ..., x^{-l-1} (when n <= -2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex
from .errors import (NonVanishingH1Error, BandViolationError,
                     RingMismatchError, ShapeError, UnsupportedRingError)
from .laurent import BaseRing, LaurentPoly
from .matrices import LaurentMatrix


@dataclass(frozen=True)
class TwistSummand:
    """Twist split of one line-bundle summand: n = k + l."""

    k: int
    l: int

    @property
    def n(self) -> int:
        return self.k + self.l

    def shifted(self, dk: int, dl: int) -> "TwistSummand":
        return TwistSummand(self.k + dk, self.l + dl)


class SheafDiagram:
    """One level of a sheaf of modules on the projective line."""

    __slots__ = ("ring", "twists", "p_minus", "p_plus")

    def __init__(self, ring, twists, p_minus: LaurentMatrix,
                 p_plus: LaurentMatrix):
        self.ring = ring
        self.twists = tuple(twists)
        r = len(self.twists)
        if p_minus.rows != r or p_plus.rows != r:
            raise ShapeError("structure matrices must have one row per summand")
        p_minus.with_base(BaseRing.POLY_INV)
        p_plus.with_base(BaseRing.POLY)
        self.p_minus = p_minus
        self.p_plus = p_plus

    # -- constructors ------------------------------------------------------

    @classmethod
    def twist_sum(cls, ring, twists):
        """Sum of twisting sheaves with identity structure matrices."""
        twists = tuple(twists)
        r = len(twists)
        ident_m = LaurentMatrix.identity(ring, r, BaseRing.POLY_INV)
        ident_p = LaurentMatrix.identity(ring, r, BaseRing.POLY)
        return cls(ring, twists, ident_m, ident_p)

    # -- shape --------------------------------------------------------------

    @property
    def mid_rank(self) -> int:
        return len(self.twists)

    @property
    def minus_rank(self) -> int:
        return self.p_minus.cols

    @property
    def plus_rank(self) -> int:
        return self.p_plus.cols

    @property
    def is_twist_sum(self) -> bool:
        r = self.mid_rank
        return (self.p_minus == LaurentMatrix.identity(
                    self.ring, r, BaseRing.POLY_INV)
                and self.p_plus == LaurentMatrix.identity(
                    self.ring, r, BaseRing.POLY))

    # -- the actual structure maps over the torus ----------------------------

    def mu_minus_torus(self) -> LaurentMatrix:
        return self.p_minus.monomial_row_scale([t.k for t in self.twists])

    def mu_plus_torus(self) -> LaurentMatrix:
        return self.p_plus.monomial_row_scale([-t.l for t in self.twists])

    def twist(self, n: int, k: int | None = None) -> "SheafDiagram":
        """The nth twist; the split defaults to (n, 0)."""
        dk = n if k is None else k
        dl = n - dk
        return SheafDiagram(self.ring,
                            [t.shifted(dk, dl) for t in self.twists],
                            self.p_minus, self.p_plus)

    def validate(self):
        problems = []
        for label, m in (("minus", self.p_minus), ("plus", self.p_plus)):
            base = BaseRing.POLY_INV if label == "minus" else BaseRing.POLY
            for i, j, p in m.nonzero_entries():
                if not p.respects(base):
                    problems.append(
                        f"{label} entry ({i},{j}) violates {base.tag}")
        for label, m in (("minus", self.mu_minus_torus()),
                         ("plus", self.mu_plus_torus())):
            if not m.is_square:
                problems.append(f"{label} adjoint map is not square")
            elif m.rows and not m.determinant().is_unit:
                problems.append(
                    f"{label} adjoint map is not an isomorphism over the torus")
        return problems

    @property
    def is_valid(self):
        return not self.validate()

    def __eq__(self, other):
        if not isinstance(other, SheafDiagram):
            return NotImplemented
        return (self.ring == other.ring and self.twists == other.twists
                and self.p_minus == other.p_minus
                and self.p_plus == other.p_plus)

    def __repr__(self):
        ts = ", ".join(f"O({t.n})[{t.k},{t.l}]" for t in self.twists)
        return f"SheafDiagram({self.ring.tag}; {ts})"


def twisting_sheaf(ring, n: int, k: int = 0, rank: int = 1) -> SheafDiagram:
    """r copies of the nth twisting sheaf with the split (k, l = n - k)."""
    return SheafDiagram.twist_sum(ring, [TwistSummand(k, n - k)] * rank)


# -- cohomology of a single diagram ---------------------------------------------


@dataclass(frozen=True)
class CechCohomology:
    """Kernel/cokernel data of the two-term section complex of a diagram.

    For twist sums both bases are explicit monomial lists of pairs
    (summand index, exponent); for general diagrams only dimensions and a
    cokernel presentation are available.
    """

    h0_dim: int
    h1_dim: int
    h0_basis: tuple | None
    h1_basis: tuple | None
    h1_presentation: LaurentMatrix | None


def cech_cohomology(d: SheafDiagram) -> CechCohomology:
    if d.is_twist_sum:
        h0 = []
        h1 = []
        for i, t in enumerate(d.twists):
            if t.n >= 0:
                h0.extend((i, e) for e in range(-t.l, t.k + 1))
            elif t.n <= -2:
                h1.extend((i, e) for e in range(t.k + 1, -t.l))
        return CechCohomology(len(h0), len(h1), tuple(h0), tuple(h1), None)
    return _cech_general(d)


def _cech_general(d: SheafDiagram, pad: int = 2):
    """Banded kernel/cokernel computation for a valid non-split diagram.

    The kernel and cokernel of (-mu_minus + mu_plus) live in bounded
    exponent bands once the adjoint maps are isomorphisms; the band is grown
    until the dimensions stop changing, with the initial width read off the
    entry degrees and twists.
    """
    mu_m = d.mu_minus_torus()
    mu_p = d.mu_plus_torus()
    spread = 1
    for m in (mu_m, mu_p):
        hi_deg = m.global_maxdeg()
        lo_deg = m.global_mindeg()
        if hi_deg is not None:
            spread = max(spread, abs(hi_deg), abs(lo_deg))
    width = 2 * spread * (d.mid_rank + 1) + 1
    prev = None
    while True:
        dims = _cech_banded_dims(d, mu_m, mu_p, width)
        if prev == dims:
            h0, h1 = dims
            return CechCohomology(h0, h1, None, None, None)
        prev = dims
        width += spread + pad
        if width > 40 * (spread + 1) * (d.mid_rank + 1):
            raise ShapeError("banded cohomology did not stabilise")


def _cech_banded_dims(d, mu_m, mu_p, width):
    """Dimensions of kernel and cokernel restricted to the band [-w, w]."""
    ring = d.ring
    r = d.mid_rank
    # columns: minus side carries exponents <= 0, plus side >= 0
    cols = []
    for j in range(d.minus_rank):
        for e in range(-width, 1):
            cols.append(("m", j, e))
    for j in range(d.plus_rank):
        for e in range(0, width + 1):
            cols.append(("p", j, e))
    rows = {}
    for idx, (side, j, e) in enumerate(cols):
        mat = mu_m if side == "m" else mu_p
        sign = -1 if side == "m" else 1
        for i in range(r):
            p = mat.entries[i][j]
            for ee, c in p.items():
                tot = ee + e
                if -width <= tot <= width:
                    key = (i, tot)
                    rows.setdefault(key, {})[idx] = (
                        ring.neg(c) if sign < 0 else c)
                else:
                    # contribution escapes the band: mark the column dirty
                    rows.setdefault(("escape", idx), {})[idx] = ring.one()
    row_keys = sorted(rows, key=str)
    dense = [[rows[k].get(j, ring.zero()) for j in range(len(cols))]
             for k in row_keys]
    from .matrices import field_row_rank

    rank = field_row_rank(ring, dense) if dense else 0
    h0 = len(cols) - rank
    # cokernel on the inner half-band, where the image is fully represented
    inner = width // 2
    mid_keys = [k for k in row_keys
                if k[0] != "escape" and -inner <= k[1] <= inner]
    proj = [[rows[k].get(j, ring.zero()) for j in range(len(cols))]
            for k in mid_keys]
    prank = field_row_rank(ring, proj) if proj else 0
    h1 = len(mid_keys) - prank
    return h0, h1


# -- complexes of sheaves ---------------------------------------------------------


class SheafComplex:
    """Three chain complexes glued by levelwise sheaf diagrams."""

    __slots__ = ("minus", "mid", "plus", "levels")

    def __init__(self, minus: ChainComplex, mid: ChainComplex,
                 plus: ChainComplex, levels):
        if minus.base != BaseRing.POLY_INV or plus.base != BaseRing.POLY \
                or mid.base != BaseRing.LAURENT:
            raise UnsupportedRingError(
                "sheaf complex needs bases K[x^-1], K[x,x^-1], K[x]")
        if not (minus.ring == mid.ring == plus.ring):
            raise RingMismatchError("constituents over different rings")
        self.minus = minus
        self.mid = mid
        self.plus = plus
        self.levels = dict(levels)
        for m in mid.degrees():
            lvl = self.level(m)
            if (lvl.mid_rank != mid.rank(m)
                    or lvl.minus_rank != minus.rank(m)
                    or lvl.plus_rank != plus.rank(m)):
                raise ShapeError(f"level {m} diagram ranks inconsistent")

    def level(self, m: int) -> SheafDiagram:
        lvl = self.levels.get(m)
        if lvl is None:
            return SheafDiagram.twist_sum(self.mid.ring, [])
        return lvl

    @property
    def ring(self):
        return self.mid.ring

    def degrees(self):
        return self.mid.degrees()

    @property
    def is_twist_sum(self) -> bool:
        return all(self.level(m).is_twist_sum for m in self.degrees())

    def twist_profile(self):
        """degree -> (k, l) when every level has one uniform twist split."""
        profile = {}
        for m in self.degrees():
            lvl = self.level(m)
            splits = {(t.k, t.l) for t in lvl.twists}
            if len(splits) > 1:
                raise ShapeError(f"level {m} mixes twist splits")
            profile[m] = splits.pop() if splits else (0, 0)
        return profile

    def twist(self, n: int, k: int | None = None) -> "SheafComplex":
        """Twist every level by n with the split (k, n-k); differentials on
        the two charts are unchanged by a uniform twist."""
        levels = {m: self.level(m).twist(n, k) for m in self.degrees()}
        return SheafComplex(self.minus, self.mid, self.plus, levels)

    def validate(self):
        problems = []
        for name, c in (("minus", self.minus), ("mid", self.mid),
                        ("plus", self.plus)):
            problems += [f"{name}: {p}" for p in c.validate()]
        for m in self.degrees():
            problems += [f"level {m}: {p}" for p in self.level(m).validate()]
        # structure maps commute with the differentials over the torus
        for m in self.degrees():
            if m == self.mid.lo:
                continue
            lvl = self.level(m)
            prev = self.level(m - 1)
            lhs = prev.mu_minus_torus() @ self.minus.diff(m)
            rhs = self.mid.diff(m) @ lvl.mu_minus_torus()
            if lhs != rhs:
                problems.append(f"level {m}: minus structure map not a chain map")
            lhs = prev.mu_plus_torus() @ self.plus.diff(m)
            rhs = self.mid.diff(m) @ lvl.mu_plus_torus()
            if lhs != rhs:
                problems.append(f"level {m}: plus structure map not a chain map")
        return problems

    @property
    def is_valid(self):
        return not self.validate()


def cech_complex(s: SheafComplex) -> ChainComplex:
    """The complex of global sections as a K-complex on monomial bands.

    Every level must be a sum of twists with nonnegative-or-(-1) twist so
    that first cohomology vanishes; the differential is the restriction of
    the middle differential to the bands.
    """
    ring = s.ring
    bands = {}
    for m in s.degrees():
        lvl = s.level(m)
        if not lvl.is_twist_sum:
            raise UnsupportedRingError(
                "global sections need twist-sum levels")
        for i, t in enumerate(lvl.twists):
            if t.n <= -2:
                raise NonVanishingH1Error(
                    f"level {m} summand {i} has twist {t.n} <= -2")
        band = []
        for i, t in enumerate(lvl.twists):
            band.extend((i, e) for e in range(-t.l, t.k + 1))
        bands[m] = band
    ranks = {m: len(bands[m]) for m in s.degrees()}
    index = {m: {be: pos for pos, be in enumerate(bands[m])}
             for m in s.degrees()}
    diffs = {}
    for m in range(s.mid.lo + 1, s.mid.hi + 1):
        rows = ranks.get(m - 1, 0)
        cols = ranks.get(m, 0)
        grid = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
        d = s.mid.diff(m)
        tgt_index = index.get(m - 1, {})
        for col, (j, e) in enumerate(bands[m]):
            for i in range(d.rows):
                p = d.entries[i][j]
                for ee, c in p.items():
                    key = (i, ee + e)
                    pos = tgt_index.get(key)
                    if pos is None:
                        raise BandViolationError(
                            f"degree {m}: image of band monomial "
                            f"(summand {j}, x^{e}) leaves the target band")
                    grid[pos][col] = ring.add(grid[pos][col], c)
        diffs[m] = LaurentMatrix(
            ring, rows, cols,
            [[LaurentPoly.constant(ring, c) for c in row] for row in grid],
            BaseRing.K, check=False)
    return ChainComplex(ring, BaseRing.K, s.mid.lo, s.mid.hi, ranks, diffs)


def sheaf_hyper_homology_dims(s: SheafComplex) -> dict:
    """Hypercohomology dimensions for a complex with zero differentials.

    With no differentials the totalisation splits levelwise, so its
    homology in degree n is H0 of level n plus H1 of level n+1.  General
    sheaf complexes are handled through the truncated models in the
    domination module.
    """
    for m in s.degrees():
        if not s.mid.diff(m).is_zero:
            raise UnsupportedRingError(
                "exact sheaf hypercohomology dims need zero differentials; "
                "use the truncated fpqc models otherwise")
    dims = {}
    coh = {m: cech_cohomology(s.level(m)) for m in s.degrees()}
    for n in range(s.mid.lo - 1, s.mid.hi + 1):
        total = 0
        if n in coh:
            total += coh[n].h0_dim
        if n + 1 in coh:
            total += coh[n + 1].h1_dim
        dims[n] = total
    return {n: v for n, v in dims.items()}


def sheaf_iota(s: SheafComplex):
    """Global-sections complex with its chart embeddings.

    Returns (w, minus_embedding, plus_embedding) where the embeddings send
    the band monomial x^e of summand i to x^{e-k_i} on the K[x^-1] chart and
    x^{e+l_i} on the K[x] chart.  Dropping the middle coordinate of the
    canonical inclusion into the totalisation loses nothing: the middle
    block of that inclusion is zero.
    """
    w = cech_complex(s)
    minus_emb = {}
    plus_emb = {}
    ring = s.ring
    for m in s.degrees():
        lvl = s.level(m)
        band = []
        for i, t in enumerate(lvl.twists):
            band.extend((i, t, e) for e in range(-t.l, t.k + 1))
        mrows = [[LaurentPoly.zero(ring) for _ in band]
                 for _ in range(lvl.minus_rank)]
        prows = [[LaurentPoly.zero(ring) for _ in band]
                 for _ in range(lvl.plus_rank)]
        for col, (i, t, e) in enumerate(band):
            mrows[i][col] = LaurentPoly.monomial(ring, e - t.k)
            prows[i][col] = LaurentPoly.monomial(ring, e + t.l)
        minus_emb[m] = LaurentMatrix(ring, lvl.minus_rank, len(band),
                                     mrows, BaseRing.POLY_INV)
        plus_emb[m] = LaurentMatrix(ring, lvl.plus_rank, len(band),
                                    prows, BaseRing.POLY)
    return w, minus_emb, plus_emb


def torus_diagram(s: SheafComplex):
    """The base change of a sheaf complex to the torus as a one-ring diagram.

    Both chart complexes become K[x,x^-1]-complexes and the structure maps
    turn into honest chain maps, so the quasi-isomorphism machinery for
    one-ring diagrams (sections inclusion, totalisation, cones) applies
    exactly.  The level maps are onto because the plus adjoint map is an
    isomorphism over the torus.
    """
    from .complexes import ChainMap
    from .diagrams import ComplexDiagram

    ring = s.ring

    def base_changed(c: ChainComplex) -> ChainComplex:
        diffs = {m: LaurentMatrix(ring, d.rows, d.cols, d.entries,
                                  BaseRing.LAURENT, check=False)
                 for m, d in c.diffs.items()}
        return ChainComplex(ring, BaseRing.LAURENT, c.lo, c.hi,
                            dict(c.ranks), diffs)

    minus = base_changed(s.minus)
    plus = base_changed(s.plus)
    mid = s.mid
    from_minus = ChainMap(minus, mid, {
        m: s.level(m).mu_minus_torus() for m in s.degrees()})
    from_plus = ChainMap(plus, mid, {
        m: s.level(m).mu_plus_torus() for m in s.degrees()})
    return ComplexDiagram(minus, mid, plus, from_minus, from_plus)


def sheaf_iota_exact(s: SheafComplex) -> bool:
    """Levelwise exactness of 0 -> W -> C- (+) C+ -> C -> 0.

    This is the hypothesis under which the section complex includes
    quasi-isomorphically into the hypercohomology: the embeddings compose
    to zero with (-mu_minus + mu_plus), the per-summand monomial bands
    exhaust the kernel (distinct exponent pairs are K-independent, so the
    embedding is injective for free), and every twist is at least -1 so
    the level map is onto.
    """
    for m in s.degrees():
        lvl = s.level(m)
        if not lvl.is_twist_sum:
            raise UnsupportedRingError("exactness check needs twist sums")
        if any(t.n <= -2 for t in lvl.twists):
            return False
    w, minus_emb, plus_emb = sheaf_iota(s)
    for m in s.degrees():
        lvl = s.level(m)
        composite = ((-lvl.mu_minus_torus()) @ minus_emb[m]
                     + lvl.mu_plus_torus() @ plus_emb[m])
        if not composite.is_zero:
            return False
        # kernel saturation: for a summand of twist n = k + l the pairs
        # (x^{e-k}, x^{e+l}) with e in [-l, k] are exactly the solutions
        # of x^k a- = x^-l a+ with a- in K[x^-1], a+ in K[x]
        expected = sum(t.n + 1 for t in lvl.twists if t.n >= 0)
        if w.rank(m) != expected:
            return False
    return True
