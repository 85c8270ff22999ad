"""Canonical file formats for complexes, sheaf complexes and reports.

All files are JSON.  Laurent polynomials serialise as arrays of
[exponent, coefficient-string] pairs with exponents ascending; rationals
render as "a/b" or "a", GF(p) residues and integers as decimal strings.
Serialisation is bit-stable: degrees ascend, field order is fixed, and
dumps always end with a newline.
"""

from __future__ import annotations

import hashlib
import json

from .complexes import ChainComplex
from .errors import FormatError
from .laurent import BaseRing, LaurentPoly, base_from_tag
from .matrices import LaurentMatrix
from .scalars import CoefficientRing, ring_from_tag
from .sheaves import SheafComplex, SheafDiagram, TwistSummand

COMPLEX_FORMAT = "p1dom-complex"
SHEAF_FORMAT = "p1dom-sheaf-complex"
VERSION = 1


# -- polynomials and matrices ---------------------------------------------------


def poly_to_pairs(p: LaurentPoly):
    return [[e, p.ring.render(c)] for e, c in p.items()]


def poly_from_pairs(ring: CoefficientRing, pairs, where: str) -> LaurentPoly:
    if not isinstance(pairs, list):
        raise FormatError("polynomial must be an array of pairs", where)
    acc = []
    for idx, pair in enumerate(pairs):
        loc = f"{where}[{idx}]"
        if (not isinstance(pair, list) or len(pair) != 2
                or not isinstance(pair[0], int)
                or not isinstance(pair[1], str)):
            raise FormatError(
                "expected [exponent, coefficient-string]", loc)
        try:
            acc.append((pair[0], ring.parse(pair[1])))
        except Exception as exc:
            raise FormatError(f"bad coefficient: {exc}", loc) from exc
    return LaurentPoly.from_pairs(ring, acc)


def matrix_to_rows(m: LaurentMatrix):
    return [[poly_to_pairs(p) for p in row] for row in m.entries]


def matrix_from_rows(ring, rows, cols, data, base: BaseRing, where: str):
    if not isinstance(data, list) or len(data) != rows:
        raise FormatError(f"expected {rows} matrix rows", where)
    entries = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise FormatError(f"expected {cols} entries", f"{where}[{i}]")
        entries.append([
            poly_from_pairs(ring, cell, f"{where}[{i}][{j}]")
            for j, cell in enumerate(row)
        ])
    try:
        return LaurentMatrix(ring, rows, cols, entries, base)
    except Exception as exc:
        raise FormatError(str(exc), where) from exc


# -- chain complexes ---------------------------------------------------------------


def complex_to_dict(c: ChainComplex) -> dict:
    return {
        "format": COMPLEX_FORMAT,
        "version": VERSION,
        "ring": c.ring.tag,
        "variable": "x",
        "base": c.base.tag,
        "degrees": [{"degree": m, "rank": c.rank(m)} for m in c.degrees()],
        "differentials": [
            {"degree": m, "matrix": matrix_to_rows(c.diff(m))}
            for m in range(c.lo + 1, c.hi + 1)
        ],
    }


def _header(data: dict, expected_format: str):
    if not isinstance(data, dict):
        raise FormatError("top level must be an object", "$")
    fmt = data.get("format")
    if fmt != expected_format:
        raise FormatError(f"format must be {expected_format!r}, got {fmt!r}",
                          "format")
    if data.get("version") != VERSION:
        raise FormatError(f"unsupported version {data.get('version')!r}",
                          "version")
    if data.get("variable", "x") != "x":
        raise FormatError("variable must be 'x'", "variable")
    try:
        ring = ring_from_tag(str(data.get("ring")))
    except Exception as exc:
        raise FormatError(f"bad ring tag: {exc}", "ring") from exc
    try:
        base = base_from_tag(str(data.get("base", "K[x,x^-1]")))
    except Exception as exc:
        raise FormatError(f"bad base tag: {exc}", "base") from exc
    return ring, base


def _read_degrees(data):
    degrees = data.get("degrees")
    if not isinstance(degrees, list) or not degrees:
        raise FormatError("degrees must be a nonempty array", "degrees")
    ranks = {}
    for idx, item in enumerate(degrees):
        loc = f"degrees[{idx}]"
        if (not isinstance(item, dict) or not isinstance(
                item.get("degree"), int)
                or not isinstance(item.get("rank"), int)):
            raise FormatError("expected {degree, rank}", loc)
        if item["rank"] < 0:
            raise FormatError("negative rank", loc)
        if item["degree"] in ranks:
            raise FormatError("duplicate degree", loc)
        ranks[item["degree"]] = item["rank"]
    return ranks


def _read_differentials(data, ring, base, ranks, key: str):
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise FormatError(f"{key} must be an array", key)
    lo, hi = min(ranks), max(ranks)
    diffs = {}
    for idx, item in enumerate(raw):
        loc = f"{key}[{idx}]"
        if not isinstance(item, dict) or not isinstance(
                item.get("degree"), int):
            raise FormatError("expected {degree, matrix}", loc)
        m = item["degree"]
        if not (lo < m <= hi):
            raise FormatError(f"differential degree {m} out of support", loc)
        rows = ranks.get(m - 1, 0)
        cols = ranks.get(m, 0)
        diffs[m] = matrix_from_rows(ring, rows, cols, item.get("matrix"),
                                    base, f"{loc}.matrix")
    return diffs


def complex_from_dict(data: dict) -> ChainComplex:
    ring, base = _header(data, COMPLEX_FORMAT)
    ranks = _read_degrees(data)
    lo, hi = min(ranks), max(ranks)
    diffs = _read_differentials(data, ring, base, ranks, "differentials")
    try:
        c = ChainComplex(ring, base, lo, hi, ranks, diffs)
    except Exception as exc:
        raise FormatError(str(exc), "differentials") from exc
    return c


# -- sheaf complexes ------------------------------------------------------------


def sheaf_to_dict(s: SheafComplex) -> dict:
    profile = s.twist_profile()
    data = complex_to_dict(s.mid)
    data["format"] = SHEAF_FORMAT
    data["twist_profile"] = [
        {"degree": m, "k": profile[m][0], "l": profile[m][1]}
        for m in sorted(profile)
    ]
    data["minus"] = [
        {"degree": m, "matrix": matrix_to_rows(s.minus.diff(m))}
        for m in range(s.minus.lo + 1, s.minus.hi + 1)
    ]
    data["plus"] = [
        {"degree": m, "matrix": matrix_to_rows(s.plus.diff(m))}
        for m in range(s.plus.lo + 1, s.plus.hi + 1)
    ]
    return data


def sheaf_from_dict(data: dict) -> SheafComplex:
    ring, base = _header(data, SHEAF_FORMAT)
    if base != BaseRing.LAURENT:
        raise FormatError("sheaf complexes have base K[x,x^-1]", "base")
    ranks = _read_degrees(data)
    lo, hi = min(ranks), max(ranks)
    mid_diffs = _read_differentials(data, ring, base, ranks, "differentials")
    minus_diffs = _read_differentials(data, ring, BaseRing.POLY_INV, ranks,
                                      "minus")
    plus_diffs = _read_differentials(data, ring, BaseRing.POLY, ranks, "plus")
    raw_profile = data.get("twist_profile")
    if not isinstance(raw_profile, list):
        raise FormatError("twist_profile must be an array", "twist_profile")
    profile = {}
    for idx, item in enumerate(raw_profile):
        loc = f"twist_profile[{idx}]"
        if (not isinstance(item, dict)
                or not all(isinstance(item.get(f), int)
                           for f in ("degree", "k", "l"))):
            raise FormatError("expected {degree, k, l}", loc)
        profile[item["degree"]] = (item["k"], item["l"])
    for m in ranks:
        if ranks[m] and m not in profile:
            raise FormatError(f"degree {m} missing from twist_profile",
                              "twist_profile")
    try:
        mid = ChainComplex(ring, BaseRing.LAURENT, lo, hi, ranks, mid_diffs)
        minus = ChainComplex(ring, BaseRing.POLY_INV, lo, hi, ranks,
                             minus_diffs)
        plus = ChainComplex(ring, BaseRing.POLY, lo, hi, ranks, plus_diffs)
        levels = {}
        for m in ranks:
            k, l = profile.get(m, (0, 0))
            levels[m] = SheafDiagram.twist_sum(
                ring, [TwistSummand(k, l)] * ranks[m])
        sheaf = SheafComplex(minus, mid, plus, levels)
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(str(exc), "$") from exc
    problems = sheaf.validate()
    if problems:
        raise FormatError("; ".join(problems), "$")
    return sheaf


# -- canonical bytes ------------------------------------------------------------------


def dumps_canonical(obj) -> str:
    """Fixed-layout JSON text; byte-stable for identical inputs."""
    return json.dumps(obj, indent=2, sort_keys=False,
                      separators=(",", ": ")) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}",
                          f"line {exc.lineno}, column {exc.colno}") from exc


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def save_path(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(obj))


def load_complex(path) -> ChainComplex:
    with open(path, encoding="utf-8") as fh:
        return complex_from_dict(loads(fh.read()))


def load_sheaf(path) -> SheafComplex:
    with open(path, encoding="utf-8") as fh:
        return sheaf_from_dict(loads(fh.read()))
