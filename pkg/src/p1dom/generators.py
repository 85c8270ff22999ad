"""Seeded random instances for property suites.

Valid complexes are built from elementary pieces (two-term complexes and
single free levels) conjugated by random invertible basis changes, so
d.d = 0 holds by construction while differentials look generic.  The same
recipe with unit-monomial or acyclic pieces yields Novikov-acyclic
instances and quasi-isomorphisms for the diagram properties.
"""

from __future__ import annotations

import random

from .complexes import ChainComplex, ChainMap, Homotopy, cone
from .diagrams import ComplexDiagram, DiagramMap
from .laurent import BaseRing, LaurentPoly
from .matrices import LaurentMatrix
from .scalars import GF, QQ, CoefficientRing


def random_ring(rng: random.Random) -> CoefficientRing:
    return rng.choice([QQ, GF(5), GF(7), GF(10007)])


def random_poly(rng, ring, min_exp=-3, max_exp=3, terms=3,
                nonzero=False) -> LaurentPoly:
    acc = {}
    for _ in range(rng.randint(1 if nonzero else 0, terms)):
        e = rng.randint(min_exp, max_exp)
        c = rng.randint(-3, 3)
        if c:
            acc[e] = ring.add(acc.get(e, ring.zero()), ring.from_int(c))
    p = LaurentPoly(ring, acc)
    if nonzero and p.is_zero:
        return LaurentPoly.monomial(ring, rng.randint(min_exp, max_exp),
                                    rng.choice([1, -1, 2]))
    return p


def random_unit_monomial(rng, ring, span=1) -> LaurentPoly:
    c = ring.from_int(rng.choice([1, -1, 2, 3]))
    while not ring.is_unit(c):
        c = ring.from_int(rng.choice([1, -1]))
    return LaurentPoly.monomial(ring, rng.randint(-span, span)).scale(c)


def random_invertible(rng, ring, n, ops=None, span=1) -> LaurentMatrix:
    """Product of elementary operations: unit-monomial determinant."""
    m = [list(r) for r in LaurentMatrix.identity(ring, n).entries]
    ops = ops if ops is not None else 2 * n
    for _ in range(ops):
        kind = rng.randint(0, 2)
        if n < 2 and kind != 2:
            kind = 2
        if kind == 0:
            i, j = rng.sample(range(n), 2)
            q = random_poly(rng, ring, -span, span, 2)
            for col in range(n):
                m[i][col] = m[i][col] + q * m[j][col]
        elif kind == 1:
            i, j = rng.sample(range(n), 2)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(n)
            u = random_unit_monomial(rng, ring, span)
            for col in range(n):
                m[i][col] = m[i][col] * u
    return LaurentMatrix(ring, n, n, m, check=False)


def random_complex(rng, ring, max_length=4, max_rank=4, span=1,
                   base=BaseRing.LAURENT, lo=0) -> ChainComplex:
    """Random valid bounded free complex via basis-changed elementary sums."""
    length = rng.randint(1, max_length)
    hi = lo + length - 1
    pieces = []
    # two-term pieces give nontrivial differentials, singles give homology
    for _ in range(rng.randint(1, max_rank)):
        if length >= 2 and rng.random() < 0.7:
            top = rng.randint(lo + 1, hi)
            p = random_poly(rng, ring, -span, span, 3, nonzero=rng.random() < 0.8)
            pieces.append(ChainComplex.two_term(ring, p, top, base))
        else:
            d = rng.randint(lo, hi)
            pieces.append(ChainComplex.single(ring, base, d, 1))
    total = pieces[0]
    for piece in pieces[1:]:
        total = total.direct_sum(piece)
    total = ChainComplex(ring, base, lo, hi, total.ranks, total.diffs)
    if base != BaseRing.LAURENT:
        return total
    return basis_change(rng, total, span)


def basis_change(rng, c: ChainComplex, span=1) -> ChainComplex:
    """Conjugate by random invertible matrices in every degree."""
    ring = c.ring
    t = {m: random_invertible(rng, ring, c.rank(m), span=span)
         for m in c.degrees()}
    tinv = {m: _invert_unit_det(t[m]) for m in c.degrees()}
    diffs = {}
    for m in range(c.lo + 1, c.hi + 1):
        left = tinv.get(m - 1, LaurentMatrix.identity(ring, c.rank(m - 1)))
        right = t.get(m, LaurentMatrix.identity(ring, c.rank(m)))
        diffs[m] = left @ c.diff(m) @ right
    return ChainComplex(ring, c.base, c.lo, c.hi, c.ranks, diffs)


def _invert_unit_det(m: LaurentMatrix) -> LaurentMatrix:
    """Inverse of a unit-determinant Laurent matrix via the adjugate."""
    n = m.rows
    ring = m.ring
    if n == 0:
        return m
    det = m.determinant()
    det_inv = det.inverse_unit()
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            idx_r = [r for r in range(n) if r != j]
            idx_c = [c for c in range(n) if c != i]
            minor = m.submatrix(idx_r, idx_c).determinant()
            if (i + j) % 2:
                minor = -minor
            row.append(minor * det_inv)
        cof.append(row)
    return LaurentMatrix(ring, n, n, cof, check=False)


def random_novikov_acyclic(rng, ring, max_rank=3, span=1) -> ChainComplex:
    """Iterated cones of self-maps and torsion two-term pieces.

    Torsion two-term complexes have nonzero differential (hence torsion
    homology) and cones of identity maps are acyclic, so every output has
    torsion homology in all degrees.
    """
    pieces = []
    for _ in range(rng.randint(1, max_rank)):
        style = rng.random()
        if style < 0.6:
            p = random_poly(rng, ring, -span, span, 3, nonzero=True)
            pieces.append(ChainComplex.two_term(
                ring, p, rng.randint(0, 2)))
        else:
            base_piece = ChainComplex.single(ring, BaseRing.LAURENT,
                                             rng.randint(0, 1), 1)
            cc, _, _ = cone(ChainMap.identity(base_piece))
            pieces.append(cc)
    total = pieces[0]
    for piece in pieces[1:]:
        total = total.direct_sum(piece)
    return basis_change(rng, total, span)


def null_homotopic_map(rng, source: ChainComplex,
                       target: ChainComplex, span=1) -> ChainMap:
    """d.h + h.d for a random degree-raising h: always a chain map."""
    ring = source.ring
    h = {}
    lo = min(source.lo, target.lo) - 1
    hi = max(source.hi, target.hi)
    for m in range(lo, hi + 1):
        rows = target.rank(m + 1)
        cols = source.rank(m)
        h[m] = LaurentMatrix(
            ring, rows, cols,
            [[random_poly(rng, ring, -span, span, 2) for _ in range(cols)]
             for _ in range(rows)], source.base, check=False)
    def h_at(m):
        got = h.get(m)
        if got is None:
            return LaurentMatrix.zero(ring, target.rank(m + 1),
                                      source.rank(m), source.base)
        return got

    comps = {}
    for m in range(lo, hi + 1):
        dh = target.diff(m + 1) @ h_at(m)
        hd = h_at(m - 1) @ source.diff(m)
        comps[m] = dh + hd
    return ChainMap(source, target, comps)


def random_diagram(rng, ring, max_length=3, max_rank=3, span=1,
                   base=BaseRing.LAURENT) -> ComplexDiagram:
    mid = random_complex(rng, ring, max_length, max_rank, span, base)
    minus = random_complex(rng, ring, max_length, max_rank, span, base)
    plus = random_complex(rng, ring, max_length, max_rank, span, base)
    return ComplexDiagram(
        minus, mid, plus,
        null_homotopic_map(rng, minus, mid, span),
        null_homotopic_map(rng, plus, mid, span))


def random_surjective_diagram(rng, ring, max_length=3, max_rank=3,
                              span=1) -> ComplexDiagram:
    """Diagram whose level maps (-mu_minus + mu_plus) are all onto.

    The plus complex contains the middle as a summand and the plus map is
    (identity on that summand) + (a null-homotopic perturbation), so every
    level map is surjective and the levelwise first cohomology vanishes.
    """
    mid = random_complex(rng, ring, max_length, max_rank, span)
    extra = random_complex(rng, ring, max_length, max_rank, span)
    plus = mid.direct_sum(extra)
    tail = null_homotopic_map(rng, extra, mid, span)
    from_plus = ChainMap(plus, mid, {
        m: LaurentMatrix.block(mid.ring, [[
            LaurentMatrix.identity(mid.ring, mid.rank(m)),
            tail.component(m),
        ]]) for m in plus.degrees()})
    minus = random_complex(rng, ring, max_length, max_rank, span)
    return ComplexDiagram(minus, mid, plus,
                          null_homotopic_map(rng, minus, mid, span),
                          from_plus)


def quasi_iso_inflation(rng, diagram: ComplexDiagram, span=1):
    """A diagram map with quasi-isomorphism components.

    Direct-sums an acyclic diagram (cones of identities) onto the target
    and includes the source; every component is a split injection with
    acyclic cokernel, hence a quasi-isomorphism.
    """
    ring = diagram.ring

    def acyclic_like(c: ChainComplex) -> ChainComplex:
        piece = ChainComplex.single(ring, c.base, rng.randint(c.lo, c.hi), 1)
        cc, _, _ = cone(ChainMap.identity(piece))
        return cc

    a_minus = acyclic_like(diagram.minus)
    a_mid = acyclic_like(diagram.mid)
    a_plus = acyclic_like(diagram.plus)
    big = ComplexDiagram(
        diagram.minus.direct_sum(a_minus),
        diagram.mid.direct_sum(a_mid),
        diagram.plus.direct_sum(a_plus),
        _sum_map(diagram.from_minus, a_minus, a_mid,
                 null_homotopic_map(rng, a_minus, a_mid, span)),
        _sum_map(diagram.from_plus, a_plus, a_mid,
                 null_homotopic_map(rng, a_plus, a_mid, span)))
    phi = DiagramMap(
        diagram, big,
        _inclusion(diagram.minus, big.minus),
        _inclusion(diagram.mid, big.mid),
        _inclusion(diagram.plus, big.plus))
    return big, phi


def _sum_map(f: ChainMap, a_src: ChainComplex, a_tgt: ChainComplex,
             g: ChainMap) -> ChainMap:
    src = f.source.direct_sum(a_src)
    tgt = f.target.direct_sum(a_tgt)
    ring = f.source.ring
    comps = {}
    for m in src.degrees():
        fm = f.component(m)
        gm = g.component(m)
        comps[m] = LaurentMatrix.block(ring, [
            [fm, LaurentMatrix.zero(ring, fm.rows, gm.cols)],
            [LaurentMatrix.zero(ring, gm.rows, fm.cols), gm],
        ])
    return ChainMap(src, tgt, comps)


def _inclusion(small: ChainComplex, big: ChainComplex) -> ChainMap:
    ring = small.ring
    comps = {}
    for m in big.degrees():
        r_small = small.rank(m)
        r_big = big.rank(m)
        comps[m] = LaurentMatrix.block(ring, [
            [LaurentMatrix.identity(ring, r_small)],
            [LaurentMatrix.zero(ring, r_big - r_small, r_small)],
        ])
    return ChainMap(small, big, comps)


def random_retract_witness(rng, ring, span=1):
    """(D, r, s, h) with id - r.s = d.h + h.d, from a basis-changed
    projection of C (+) acyclic onto C."""
    c = random_complex(rng, ring, 3, 2, span)
    piece = ChainComplex.single(ring, c.base, rng.randint(c.lo, c.hi), 1)
    acy, _, _ = cone(ChainMap.identity(piece))
    d = c.direct_sum(acy)
    r = ChainMap(d, c, {m: LaurentMatrix.block(ring, [[
        LaurentMatrix.identity(ring, c.rank(m)),
        LaurentMatrix.zero(ring, c.rank(m), acy.rank(m)),
    ]]) for m in d.degrees()})
    s = _inclusion(c, d)
    h = Homotopy.zero(c)
    return d, r, s, h
