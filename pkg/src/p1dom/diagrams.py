"""Diagrams of chain complexes over one ring and their totalisation.

A diagram has the shape (minus --> mid <-- plus) with the two structure
maps being chain maps.  Its totalisation stacks, in degree n, the blocks
minus_n, plus_n, mid_{n+1}, with differential

    (a-, a+, a)  |->  (d a-, d a+, -mu_minus(a-) + mu_plus(a+) - d a).

The levelwise kernel of (-mu_minus + mu_plus) is the complex of global
sections; its inclusion into the totalisation is a quasi-isomorphism
whenever every level has vanishing first cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap, cone, is_acyclic
from .errors import RingMismatchError, ShapeError
from .matrices import LaurentMatrix
from .smith import matrix_rank, smith_normal_form


@dataclass(frozen=True)
class ComplexDiagram:
    minus: ChainComplex
    mid: ChainComplex
    plus: ChainComplex
    from_minus: ChainMap      # minus -> mid
    from_plus: ChainMap       # plus -> mid

    def __post_init__(self):
        rings = {self.minus.ring, self.mid.ring, self.plus.ring}
        bases = {self.minus.base, self.mid.base, self.plus.base}
        if len(rings) != 1 or len(bases) != 1:
            raise RingMismatchError(
                "diagram constituents live over different rings")
        if (self.from_minus.source != self.minus
                or self.from_minus.target != self.mid):
            raise ShapeError("from_minus must map minus into mid")
        if (self.from_plus.source != self.plus
                or self.from_plus.target != self.mid):
            raise ShapeError("from_plus must map plus into mid")

    @property
    def ring(self):
        return self.mid.ring

    @property
    def base(self):
        return self.mid.base

    def validate(self):
        problems = []
        for name, c in (("minus", self.minus), ("mid", self.mid),
                        ("plus", self.plus)):
            problems += [f"{name}: {p}" for p in c.validate()]
        problems += [f"from_minus: {p}" for p in self.from_minus.validate()]
        problems += [f"from_plus: {p}" for p in self.from_plus.validate()]
        return problems

    @property
    def is_valid(self):
        return not self.validate()

    @classmethod
    def constant(cls, c: ChainComplex):
        """The diagram (C == C == C) with identity structure maps."""
        ident = ChainMap.identity(c)
        return cls(c, c, c, ident, ident)


@dataclass(frozen=True)
class DiagramMap:
    """Triple of chain maps compatible with the structure maps."""

    source: ComplexDiagram
    target: ComplexDiagram
    on_minus: ChainMap
    on_mid: ChainMap
    on_plus: ChainMap

    def validate(self):
        problems = []
        for name, f in (("minus", self.on_minus), ("mid", self.on_mid),
                        ("plus", self.on_plus)):
            problems += [f"on_{name}: {p}" for p in f.validate()]
        lo = min(self.source.mid.lo, self.target.mid.lo)
        hi = max(self.source.mid.hi, self.target.mid.hi)
        for m in range(lo, hi + 1):
            left = self.on_mid.component(m) @ self.source.from_minus.component(m)
            right = self.target.from_minus.component(m) @ self.on_minus.component(m)
            if left != right:
                problems.append(f"degree {m}: minus square does not commute")
            left = self.on_mid.component(m) @ self.source.from_plus.component(m)
            right = self.target.from_plus.component(m) @ self.on_plus.component(m)
            if left != right:
                problems.append(f"degree {m}: plus square does not commute")
        return problems

    @property
    def is_valid(self):
        return not self.validate()


def _hyper_support(d: ComplexDiagram):
    lo = min(d.minus.lo, d.plus.lo, d.mid.lo - 1)
    hi = max(d.minus.hi, d.plus.hi, d.mid.hi - 1)
    return lo, hi


def hyper_block_ranks(d: ComplexDiagram, n: int):
    """(minus_n, plus_n, mid_{n+1}) block sizes of the totalisation."""
    return d.minus.rank(n), d.plus.rank(n), d.mid.rank(n + 1)


def hypercohomology(d: ComplexDiagram) -> ChainComplex:
    """Total complex of the diagram, blocks ordered (minus, plus, mid[1])."""
    ring = d.ring
    base = d.base
    lo, hi = _hyper_support(d)
    ranks = {n: sum(hyper_block_ranks(d, n)) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        dm = d.minus.diff(n)
        dp = d.plus.diff(n)
        dmid = d.mid.diff(n + 1)
        mu_m = d.from_minus.component(n)
        mu_p = d.from_plus.component(n)
        z = LaurentMatrix.zero
        grid = [
            [dm,
             z(ring, dm.rows, dp.cols, base),
             z(ring, dm.rows, dmid.cols, base)],
            [z(ring, dp.rows, dm.cols, base),
             dp,
             z(ring, dp.rows, dmid.cols, base)],
            [-mu_m, mu_p, -dmid],
        ]
        diffs[n] = LaurentMatrix.block(ring, grid, base)
    return ChainComplex(ring, base, lo, hi, ranks, diffs)


def phi_star(phi: DiagramMap) -> ChainMap:
    """Induced map on totalisations: blockwise (minus, plus, mid[1])."""
    src = hypercohomology(phi.source)
    tgt = hypercohomology(phi.target)
    ring = src.ring
    base = src.base
    comps = {}
    for n in range(min(src.lo, tgt.lo), max(src.hi, tgt.hi) + 1):
        fm = phi.on_minus.component(n)
        fp = phi.on_plus.component(n)
        fmid = phi.on_mid.component(n + 1)
        z = LaurentMatrix.zero
        grid = [
            [fm, z(ring, fm.rows, fp.cols, base), z(ring, fm.rows, fmid.cols, base)],
            [z(ring, fp.rows, fm.cols, base), fp, z(ring, fp.rows, fmid.cols, base)],
            [z(ring, fmid.rows, fm.cols, base), z(ring, fmid.rows, fp.cols, base), fmid],
        ]
        comps[n] = LaurentMatrix.block(ring, grid, base)
    return ChainMap(src, tgt, comps)


def sections_matrix(d: ComplexDiagram, n: int) -> LaurentMatrix:
    """The level-n map (-mu_minus | mu_plus): minus_n + plus_n -> mid_n."""
    return (-d.from_minus.component(n)).hstack(d.from_plus.component(n))


def levelwise_h1_trivial(d: ComplexDiagram) -> bool:
    """True iff every level map (-mu_minus + mu_plus) is surjective."""
    for n in range(min(d.minus.lo, d.plus.lo), max(d.minus.hi, d.plus.hi) + 1):
        a = sections_matrix(d, n)
        if a.rows == 0:
            continue
        snf = smith_normal_form(a)
        if snf.rank < a.rows:
            return False
        if any(f.core_degree > 0 for f in snf.factors):
            return False
    return True


def sections_complex(d: ComplexDiagram):
    """H0 applied levelwise, with its inclusion into the totalisation.

    Returns (h0 complex, iota: h0 -> hypercohomology(d)).  The kernel of
    each level map is computed by Smith normal form, so the result is an
    honest complex of free modules with the induced differential.
    """
    ring = d.ring
    base = d.base
    hyper = hypercohomology(d)
    lo = min(d.minus.lo, d.plus.lo)
    hi = max(d.minus.hi, d.plus.hi)
    kernels = {}
    snfs = {}
    for n in range(lo, hi + 1):
        a = sections_matrix(d, n)
        snf = smith_normal_form(a)
        snfs[n] = snf
        kernels[n] = snf.kernel_basis()
    ranks = {n: kernels[n].cols for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        dm = d.minus.diff(n)
        dp = d.plus.diff(n)
        z1 = LaurentMatrix.zero(ring, dm.rows, dp.cols, base)
        z2 = LaurentMatrix.zero(ring, dp.rows, dm.cols, base)
        block = LaurentMatrix.block(ring, [[dm, z1], [z2, dp]], base)
        image = block @ kernels[n]
        diffs[n] = snfs[n - 1].kernel_coordinates(image)
    h0 = ChainComplex(ring, base, lo, hi, ranks, diffs)
    comps = {}
    for n in range(lo, hi + 1):
        kb = kernels[n]
        pad = LaurentMatrix.zero(ring, d.mid.rank(n + 1), kb.cols, base)
        comps[n] = LaurentMatrix.block(ring, [[kb], [pad]], base)
    iota_map = ChainMap(h0, hyper, comps)
    return h0, iota_map


def iota(d: ComplexDiagram) -> ChainMap:
    """The inclusion of the levelwise global-sections complex."""
    _, incl = sections_complex(d)
    return incl


def iota_is_quasi_iso(d: ComplexDiagram) -> bool:
    cc, _, _ = cone(iota(d))
    return is_acyclic(cc)


def ses_check(d: ComplexDiagram, hyper: ChainComplex | None = None) -> bool:
    """Verify the natural short exact sequence of complexes

        0 -> mid[1] -> total -> minus (+) plus -> 0.

    ``hyper`` defaults to the canonical totalisation; passing a candidate
    object verifies it against the canonical block formula, so corrupted
    differentials are rejected.
    """
    canonical = hypercohomology(d)
    if hyper is None:
        hyper = canonical
    lo, hi = canonical.lo, canonical.hi
    if (hyper.lo, hyper.hi) != (lo, hi):
        return False
    sub = d.mid.shift(-1)
    quot = d.minus.direct_sum(d.plus)
    ring = d.ring
    base = d.base
    for n in range(lo, hi + 1):
        rm, rp, rmid = hyper_block_ranks(d, n)
        # ranks add
        if hyper.rank(n) != rm + rp + rmid:
            return False
        if hyper.rank(n) != sub.rank(n) + quot.rank(n):
            return False
    # the candidate differential must be the canonical block matrix
    for n in range(lo + 1, hi + 1):
        if hyper.diff(n) != canonical.diff(n):
            return False
    incl = {}
    proj = {}
    for n in range(lo, hi + 1):
        rm, rp, rmid = hyper_block_ranks(d, n)
        incl[n] = LaurentMatrix.block(ring, [
            [LaurentMatrix.zero(ring, rm + rp, rmid, base)],
            [LaurentMatrix.identity(ring, rmid, base)],
        ], base)
        proj[n] = LaurentMatrix.block(ring, [[
            LaurentMatrix.identity(ring, rm + rp, base),
            LaurentMatrix.zero(ring, rm + rp, rmid, base),
        ]], base)
    try:
        incl_map = ChainMap(sub, hyper, incl)
        proj_map = ChainMap(hyper, quot, proj)
    except ShapeError:
        return False
    if not (incl_map.is_valid and proj_map.is_valid):
        return False
    for n in range(lo, hi + 1):
        composite = proj_map.component(n) @ incl_map.component(n)
        if not composite.is_zero:
            return False
        # exactness in the middle via ranks: the inclusion has full column
        # rank, the projection full row rank, and the ranks add up.
        r_in = matrix_rank(incl_map.component(n))
        r_pr = matrix_rank(proj_map.component(n))
        if r_in != sub.rank(n) or r_pr != quot.rank(n):
            return False
        if r_in + r_pr != hyper.rank(n):
            return False
    return True
