"""Novikov acyclicity and the finite-domination witness pipeline.

Field mode decides acyclicity over both formal Laurent series rings at once:
over a field those rings contain K[x,x^-1], so acyclicity after base change
is equivalent to every homology module being torsion, which the Smith
normal form decides exactly.  Z mode uses series arithmetic: determinant
head units for two-term complexes, and a greedy unit-pivot elimination on
truncated series matrices for longer ones (sound, possibly "unknown").

The witness produced for a Novikov-acyclic complex is the complex of global
sections W of the extension to the projective line, together with a ledger
checking, degree by degree,

    dim H_q(W) = dim_K H_q(C) + dim H_q(C+ (x) K[[x]]) + dim H_q(C- (x) K[[x^-1]]).

The chart dimensions come from quotient-window models C+/x^N.  The homology
of such a window carries, besides the torsion of degree q, the torsion of
degree q-1 (the universal-coefficient correction), so the reported values
are obtained by telescoping the stabilised window dimensions from the
bottom degree upward.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap, homology, homology_dims
from .diagrams import ComplexDiagram, hypercohomology
from .errors import (NotAUnitError, NotNovikovAcyclicError, ShapeError,
                     StabilisationFailureError, UnsupportedRingError)
from .extension import ExtensionResult, extend_complex
from .laurent import BaseRing, LaurentPoly
from .matrices import LaurentMatrix
from .series import TruncatedSeries, laurent_series
from .sheaves import cech_complex


# ---------------------------------------------------------------------------
# truncated window models
# ---------------------------------------------------------------------------


def window_complex(c: ChainComplex, order: int) -> ChainComplex:
    """Quotient model of c tensored with the chart power-series ring.

    Each generator becomes ``order`` monomial slots in the direction
    variable; multiplication drops everything at or beyond the cutoff,
    which is exactly the quotient by the Nth power of the variable.
    """
    if c.base == BaseRing.POLY:
        direction = 1
    elif c.base == BaseRing.POLY_INV:
        direction = -1
    else:
        raise UnsupportedRingError(
            "window models exist for K[x] and K[x^-1] complexes")
    ring = c.ring
    ranks = {m: c.rank(m) * order for m in c.degrees()}
    diffs = {}
    for m in range(c.lo + 1, c.hi + 1):
        d = c.diff(m)
        rows = ranks[m - 1]
        cols = ranks[m]
        grid = [[ring.zero()] * cols for _ in range(rows)]
        for i, j, p in d.nonzero_entries():
            for e, coeff in p.items():
                te = e * direction
                for tau in range(order - te):
                    grid[i * order + tau + te][j * order + tau] = ring.add(
                        grid[i * order + tau + te][j * order + tau], coeff)
        diffs[m] = LaurentMatrix(
            ring, rows, cols,
            [[LaurentPoly.constant(ring, v) for v in row] for row in grid],
            BaseRing.K, check=False)
    return ChainComplex(ring, BaseRing.K, c.lo, c.hi, ranks, diffs)


@dataclass(frozen=True)
class TruncatedSeriesComplex:
    """Window model of a chart complex with its stabilisation record."""

    base_tag: str
    order: int
    model: ChainComplex
    dims_at_order: dict
    dims_at_double: dict

    @property
    def stabilised(self) -> bool:
        return self.dims_at_order == self.dims_at_double


def truncated_series_complex(c: ChainComplex, order: int) -> TruncatedSeriesComplex:
    tag = "K[[x]]" if c.base == BaseRing.POLY else "K[[x^-1]]"
    model = window_complex(c, order)
    return TruncatedSeriesComplex(
        base_tag=tag,
        order=order,
        model=model,
        dims_at_order=homology_dims(model),
        dims_at_double=homology_dims(window_complex(c, 2 * order)),
    )


def _telescope(window_dims: dict, lo: int, hi: int) -> dict:
    """Strip the universal-coefficient carry from stabilised window dims."""
    dims = {}
    below = 0
    for q in range(lo, hi + 1):
        t = window_dims.get(q, 0) - below
        if t < 0:
            raise StabilisationFailureError(
                "window dimensions are inconsistent with a stabilised "
                "torsion profile")
        dims[q] = t
        below = t
    return dims


def stabilised_series_dims(c: ChainComplex, order: int, order_max: int):
    """Torsion K-dimensions of the chart homology after base change.

    Doubles the window until the raw dimensions agree at N and 2N (the
    stabilisation heuristic, flagged as such in reports), then telescopes.
    Raises StabilisationFailureError beyond ``order_max``.
    """
    n = order
    while True:
        tsc = truncated_series_complex(c, n)
        if tsc.stabilised:
            return _telescope(tsc.dims_at_order, c.lo, c.hi), n, tsc
        if 2 * n > order_max:
            raise StabilisationFailureError(
                f"chart homology dimensions did not stabilise by N={order_max}")
        n *= 2


# ---------------------------------------------------------------------------
# Novikov acyclicity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SideVerdict:
    acyclic: str               # "yes" | "no" | "unknown"
    method: str                # snf-torsion | unit-determinant |
    #                            truncated-contraction | euler
    certificate: dict | None = None


@dataclass(frozen=True)
class NovikovVerdict:
    x_side: SideVerdict
    x_inv_side: SideVerdict

    @property
    def both_acyclic(self) -> bool:
        return self.x_side.acyclic == "yes" and self.x_inv_side.acyclic == "yes"


def novikov_check(c: ChainComplex, order: int = 16) -> NovikovVerdict:
    if c.base != BaseRing.LAURENT:
        raise UnsupportedRingError(
            "Novikov acyclicity applies to K[x,x^-1]-complexes")
    if c.ring.is_field:
        return _novikov_field(c)
    return _novikov_integers(c, order)


def _novikov_field(c: ChainComplex) -> NovikovVerdict:
    report = homology(c)
    torsion_only = report.all_torsion
    cert = {
        "method": "snf-torsion",
        "free_ranks": {str(q): e.free_rank
                       for q, e in report.entries.items()},
        "torsion": {str(q): [str(f) for f in e.torsion]
                    for q, e in report.entries.items() if e.torsion},
    }
    side = SideVerdict("yes" if torsion_only else "no", "snf-torsion", cert)
    # over a field both Novikov conditions coincide with torsion homology
    return NovikovVerdict(side, side)


def _novikov_integers(c: ChainComplex, order: int) -> NovikovVerdict:
    euler = sum((1 if m % 2 == 0 else -1) * c.rank(m) for m in c.degrees())
    if euler != 0:
        cert = {"method": "euler", "euler_characteristic": euler}
        side = SideVerdict("no", "euler", cert)
        return NovikovVerdict(side, side)
    two_term = _two_term_square(c)
    if two_term is not None:
        det = two_term.determinant()
        return NovikovVerdict(
            _unit_det_side(det, 1, order), _unit_det_side(det, -1, order))
    return NovikovVerdict(
        _contraction_side(c, 1, order), _contraction_side(c, -1, order))


def _two_term_square(c: ChainComplex):
    present = [m for m in c.degrees() if c.rank(m) > 0]
    if not present:
        return LaurentMatrix.zero(c.ring, 0, 0)
    if len(present) != 2 or present[1] - present[0] != 1:
        return None
    if c.rank(present[0]) != c.rank(present[1]):
        return None
    return c.diff(present[1])


def _unit_det_side(det: LaurentPoly, direction: int, order: int) -> SideVerdict:
    ring = det.ring
    var = "x" if direction == 1 else "x^-1"
    if det.is_zero:
        return SideVerdict("no", "unit-determinant",
                           {"determinant": "0", "side": var})
    series = TruncatedSeries.from_laurent(
        det, laurent_series(ring, direction), order)
    try:
        inverse = series.invert()
    except NotAUnitError as exc:
        return SideVerdict("no", "unit-determinant", {
            "determinant": str(det),
            "side": var,
            "reason": str(exc),
        })
    return SideVerdict("yes", "unit-determinant", {
        "determinant": str(det),
        "side": var,
        "inverse_terms": [[e, ring.render(co)] for e, co in inverse.x_terms()],
        "order": order,
    })


def _contraction_side(c: ChainComplex, direction: int, order: int) -> SideVerdict:
    """Greedy unit-pivot elimination over truncated series.

    Each pivot with certified unit head splits off a contractible two-term
    summand; if everything cancels the complex is acyclic over the series
    ring.  Failure to finish yields "unknown" (the search is sound but
    incomplete: Z[x,x^-1] is not a PID).
    """
    sring = laurent_series(c.ring, direction)
    gens = {m: set(range(c.rank(m))) for m in c.degrees()}
    mats = {}
    for m in range(c.lo + 1, c.hi + 1):
        entries = {}
        for i, j, p in c.diff(m).nonzero_entries():
            entries[(i, j)] = TruncatedSeries.from_laurent(p, sring, order)
        mats[m] = entries
    transcript = []
    var = "x" if direction == 1 else "x^-1"
    while True:
        pivot = _find_unit_pivot(mats, c.ring)
        if pivot is None:
            break
        m, (pi, pj) = pivot
        a = mats[m].pop((pi, pj))
        try:
            a_inv = a.invert()
        except NotAUnitError:
            continue
        row = {j: s for (i, j), s in mats[m].items() if i == pi}
        col = {i: s for (i, j), s in mats[m].items() if j == pj}
        ok = True
        updates = {}
        for i2, cs in col.items():
            for j2, bs in row.items():
                try:
                    delta = cs * a_inv * bs
                except ShapeError:
                    ok = False
                    break
                key = (i2, j2)
                cur = mats[m].get(key)
                updates[key] = (-delta) if cur is None else (cur - delta)
            if not ok:
                break
        if not ok:
            # window died; put the pivot back and give up on this side
            mats[m][(pi, pj)] = a
            break
        for (i2, j2), val in updates.items():
            if val.is_zero_on_window and val.lower_exact:
                mats[m].pop((i2, j2), None)
            else:
                mats[m][(i2, j2)] = val
        for key in list(mats[m]):
            if key[0] == pi or key[1] == pj:
                del mats[m][key]
        if m + 1 in mats:
            for key in list(mats[m + 1]):
                if key[0] == pj:
                    del mats[m + 1][key]
        if m - 1 in mats:
            for key in list(mats[m - 1]):
                if key[1] == pi:
                    del mats[m - 1][key]
        gens[m].discard(pj)
        gens[m - 1].discard(pi)
        transcript.append({"degree": m, "row": pi, "col": pj,
                           "pivot_valuation": a.valuation})
    remaining = sum(len(g) for g in gens.values())
    if remaining == 0:
        return SideVerdict("yes", "truncated-contraction", {
            "side": var,
            "order": order,
            "eliminations": transcript,
        })
    return SideVerdict("unknown", "truncated-contraction", {
        "side": var,
        "order": order,
        "remaining_generators": remaining,
    })


def _find_unit_pivot(mats, ring):
    best = None
    for m, entries in mats.items():
        for (i, j), s in entries.items():
            if s.valuation is None or s.width < 2:
                continue
            if not ring.is_unit(s.coeffs[0]):
                continue
            key = (-s.width, abs(s.valuation), m, i, j)
            if best is None or key < best[0]:
                best = (key, m, (i, j))
    if best is None:
        return None
    return best[1], best[2]


# ---------------------------------------------------------------------------
# the witness pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerRow:
    degree: int
    w_dim: int
    mid_kdim: int
    plus_dim: int
    minus_dim: int

    @property
    def holds(self) -> bool:
        return self.w_dim == self.mid_kdim + self.plus_dim + self.minus_dim


@dataclass(frozen=True)
class DominationWitness:
    w: ChainComplex
    extension: ExtensionResult
    ledger: tuple
    plus_order: int
    minus_order: int
    plus_model: TruncatedSeriesComplex
    minus_model: TruncatedSeriesComplex
    stabilisation_heuristic: bool = True

    @property
    def ledger_holds(self) -> bool:
        return all(row.holds for row in self.ledger)

    def w_ranks(self) -> dict:
        return {m: self.w.rank(m) for m in self.w.degrees()}


def dominate(c: ChainComplex, order: int = 16,
             order_max: int = 64) -> DominationWitness:
    """Produce and validate the finite-domination witness.

    Requires field coefficients and Novikov acyclicity on both sides.
    """
    if not c.ring.is_field:
        raise UnsupportedRingError("dominate runs in field mode")
    verdict = novikov_check(c)
    if not verdict.both_acyclic:
        free = {q: e.free_rank for q, e in homology(c).entries.items()
                if e.free_rank}
        raise NotNovikovAcyclicError(
            f"homology has nonzero free rank in degrees {sorted(free)}")
    ext = extend_complex(c)
    w = cech_complex(ext.sheaf)
    w_dims = homology_dims(w)
    mid = homology(c)
    plus_dims, plus_order, plus_model = stabilised_series_dims(
        ext.sheaf.plus, order, order_max)
    minus_dims, minus_order, minus_model = stabilised_series_dims(
        ext.sheaf.minus, order, order_max)
    rows = []
    degrees = sorted(set(w_dims) | set(plus_dims) | set(minus_dims)
                     | set(mid.entries))
    for q in degrees:
        entry = mid.entry(q)
        rows.append(LedgerRow(
            degree=q,
            w_dim=w_dims.get(q, 0),
            mid_kdim=entry.kdim if entry.kdim is not None else -1,
            plus_dim=plus_dims.get(q, 0),
            minus_dim=minus_dims.get(q, 0),
        ))
    witness = DominationWitness(
        w=w, extension=ext, ledger=tuple(rows),
        plus_order=plus_order, minus_order=minus_order,
        plus_model=plus_model, minus_model=minus_model,
    )
    if not witness.ledger_holds:
        raise StabilisationFailureError(
            "ledger equation failed; window dimensions are unreliable")
    return witness


@dataclass(frozen=True)
class FpqcModel:
    """Truncated totalisation of the chart cover of the affine line."""

    order: int
    total: ChainComplex
    dims: dict
    dims_double: dict
    window_dims: dict
    window_dims_double: dict

    @property
    def stabilised(self) -> bool:
        return self.dims == self.dims_double

    @property
    def window_matched(self) -> bool:
        return (self.dims == self.window_dims
                and self.dims_double == self.window_dims_double)


def fpqc_hyper(c_plus: ChainComplex, order: int = 16) -> FpqcModel:
    """Totalisation of (C+ (x) K[[x]] -> C+ (x) K((x)) <- C+ (x) K[x,x^-1])
    on truncated windows, compared against the window model of C+ itself.

    The power-series chart keeps exponents [0, N); the other two keep
    [-N, N).  All three quotients are honest complexes because the
    differential only raises exponents.
    """
    if c_plus.base != BaseRing.POLY:
        raise UnsupportedRingError("fpqc model starts from a K[x]-complex")
    total = _fpqc_total(c_plus, order)
    total2 = _fpqc_total(c_plus, 2 * order)
    model = FpqcModel(
        order=order,
        total=total,
        dims=homology_dims(total),
        dims_double=homology_dims(total2),
        window_dims=_pad_degrees(homology_dims(window_complex(c_plus, order)),
                                 total),
        window_dims_double=_pad_degrees(
            homology_dims(window_complex(c_plus, 2 * order)), total2),
    )
    if not model.window_matched:
        raise StabilisationFailureError(
            "truncated fpqc totalisation does not match the chart window")
    return model


def _pad_degrees(dims: dict, like: ChainComplex) -> dict:
    return {q: dims.get(q, 0) for q in like.degrees()}


def _fpqc_total(c_plus: ChainComplex, order: int) -> ChainComplex:
    ring = c_plus.ring
    narrow = window_complex(c_plus, order)
    wide = _wide_window_complex(c_plus, order)
    incl = {}
    for m in c_plus.degrees():
        r = c_plus.rank(m)
        rows = [[ring.zero()] * (r * order) for _ in range(r * 2 * order)]
        for j in range(r):
            for tau in range(order):
                rows[j * 2 * order + tau + order][j * order + tau] = ring.one()
        incl[m] = LaurentMatrix(
            ring, r * 2 * order, r * order,
            [[LaurentPoly.constant(ring, v) for v in row] for row in rows],
            BaseRing.K, check=False)
    mu_minus = ChainMap(narrow, wide, incl)
    ident = ChainMap.identity(wide)
    diagram = ComplexDiagram(narrow, wide, wide, mu_minus, ident)
    return hypercohomology(diagram)


def _wide_window_complex(c: ChainComplex, order: int) -> ChainComplex:
    """Window [-order, order) in the chart variable; quotient at the top."""
    ring = c.ring
    width = 2 * order
    ranks = {m: c.rank(m) * width for m in c.degrees()}
    diffs = {}
    for m in range(c.lo + 1, c.hi + 1):
        d = c.diff(m)
        rows = ranks[m - 1]
        cols = ranks[m]
        grid = [[ring.zero()] * cols for _ in range(rows)]
        for i, j, p in d.nonzero_entries():
            for e, coeff in p.items():
                for tau in range(width - e):
                    grid[i * width + tau + e][j * width + tau] = ring.add(
                        grid[i * width + tau + e][j * width + tau], coeff)
        diffs[m] = LaurentMatrix(
            ring, rows, cols,
            [[LaurentPoly.constant(ring, v) for v in row] for row in grid],
            BaseRing.K, check=False)
    return ChainComplex(ring, BaseRing.K, c.lo, c.hi, ranks, diffs)


# ---------------------------------------------------------------------------
# theorem verification and K-theory class
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class TheoremReport:
    verdict: str               # "PASS" | "FAIL"
    novikov: NovikovVerdict
    checks: tuple
    witness: DominationWitness | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_dict(self) -> dict:
        data = {
            "verdict": self.verdict,
            "novikov": {
                "x_side": self.novikov.x_side.acyclic,
                "x_inv_side": self.novikov.x_inv_side.acyclic,
                "method": self.novikov.x_side.method,
            },
            "checks": [
                {"name": ch.name, "passed": ch.passed, "detail": ch.detail}
                for ch in self.checks
            ],
        }
        if self.witness is not None:
            data["witness"] = {
                "w_ranks": {str(m): r
                            for m, r in sorted(self.witness.w_ranks().items())},
                "twist_profile": [
                    {"degree": m, "k": k, "l": l}
                    for m, (k, l) in sorted(
                        self.witness.extension.profile.items())
                ],
                "ledger": [
                    {"degree": row.degree, "w_dim": row.w_dim,
                     "mid_kdim": row.mid_kdim, "plus_dim": row.plus_dim,
                     "minus_dim": row.minus_dim, "holds": row.holds}
                    for row in self.witness.ledger
                ],
                "plus_order": self.witness.plus_order,
                "minus_order": self.witness.minus_order,
                "stabilisation_heuristic":
                    self.witness.stabilisation_heuristic,
            }
        return data


def verify_theorem(c: ChainComplex, order: int = 16,
                   order_max: int = 64) -> TheoremReport:
    """Full pipeline: hypothesis check, witness production, ledger audit."""
    verdict = novikov_check(c)
    if not verdict.both_acyclic:
        free = homology(c).free_ranks()
        checks = (TheoremCheck(
            "novikov-acyclic", False,
            "free rank " + ", ".join(
                f"{r} in degree {q}" for q, r in sorted(free.items()))),)
        return TheoremReport("FAIL", verdict, checks)
    witness = dominate(c, order, order_max)
    checks = []
    w = witness.w
    bounded = w.hi - w.lo < 10 ** 9
    checks.append(TheoremCheck(
        "witness-strict-perfect", bounded and all(
            r >= 0 for r in w.ranks.values()),
        f"ranks {sorted(witness.w_ranks().items())}"))
    total = homology(c).total_kdim()
    checks.append(TheoremCheck(
        "finite-total-homology", total is not None,
        f"total dim_K = {total}"))
    checks.append(TheoremCheck(
        "ledger-equation", witness.ledger_holds,
        f"orders (plus {witness.plus_order}, minus {witness.minus_order})"))
    verdict_str = "PASS" if all(ch.passed for ch in checks) else "FAIL"
    return TheoremReport(verdict_str, verdict, tuple(checks), witness)


def k0_class_pid(c: ChainComplex) -> int:
    """Alternating rank sum: the class in K_0 of the Laurent ring.

    Over a PID the pullback from the ground ring hits everything, matching
    the fact that extension to the projective line never obstructs here.
    """
    if not c.ring.is_field:
        raise UnsupportedRingError("K_0 class computed in field mode")
    return sum((1 if m % 2 == 0 else -1) * c.rank(m) for m in c.degrees())
