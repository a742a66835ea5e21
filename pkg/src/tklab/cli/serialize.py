"""Canonical JSON and record conversions for engine values.

Records: complex numbers are ``[re, im]``; polynomials are ascending
coefficient lists of complex records; rational functions are
``{"num": poly, "den": poly}``; Blaschke products are
``{"zeros": [[re, im, mult], ...], "unimodular": [re, im]}``; symbols are
``{"anti": ratfun, "ana": ratfun, "power": int}``.
"""
from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from ..blaschke import BlaschkeProduct, H2Rational
from ..errors import ParseError, TklabError, ValidationError
from ..ratfun import DEFAULT_TOL, Poly, RatFun, RootMultiset, ToleranceConfig
from ..symbols import ToeplitzSymbol


# ---------------------------------------------------------------------------
# Canonical JSON
# ---------------------------------------------------------------------------


def _encode(x: Any) -> str:
    if x is None or isinstance(x, bool):
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "null"
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, (complex, np.complexfloating)):
        return _encode([x.real, x.imag])
    if isinstance(x, dict):
        items = sorted((str(k), v) for k, v in x.items())
        return "{" + ",".join(f"{json.dumps(k)}:{_encode(v)}" for k, v in items) + "}"
    if isinstance(x, (list, tuple, np.ndarray)):
        return "[" + ",".join(_encode(v) for v in x) + "]"
    raise TypeError(f"cannot encode {type(x).__name__}")


def canonical_json(x: Any) -> str:
    """Sorted keys, 17 significant digits, non-finite floats as null."""
    return _encode(x)


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from exc


# ---------------------------------------------------------------------------
# Encoders
# ---------------------------------------------------------------------------


def complex_record(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def poly_record(p: Poly) -> list:
    return [complex_record(c) for c in p.coeffs]


def ratfun_record(f: RatFun) -> dict:
    return {"num": poly_record(f.num), "den": poly_record(f.den)}


def blaschke_record(b: BlaschkeProduct) -> dict:
    zeros = [[complex(loc).real, complex(loc).imag, int(m)] for loc, m in b.zeros]
    return {"zeros": zeros, "unimodular": complex_record(b.unimodular)}


def symbol_record(s: ToeplitzSymbol) -> dict:
    return {"anti": ratfun_record(s.anti), "ana": ratfun_record(s.ana), "power": int(s.power)}


def function_record(f) -> dict:
    if isinstance(f, H2Rational):
        f = f.value
    elif isinstance(f, BlaschkeProduct):
        f = f.as_ratfun()
    return ratfun_record(f)


def to_record(x) -> Any:
    if isinstance(x, ToeplitzSymbol):
        return symbol_record(x)
    if isinstance(x, BlaschkeProduct):
        return blaschke_record(x)
    if isinstance(x, (RatFun, H2Rational)):
        return function_record(x)
    if isinstance(x, Poly):
        return poly_record(x)
    if isinstance(x, (complex, np.complexfloating)):
        return complex_record(x)
    raise TypeError(f"no record form for {type(x).__name__}")


# ---------------------------------------------------------------------------
# Validating decoders
# ---------------------------------------------------------------------------


def _number(x, path: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(path, "expected a number")
    v = float(x)
    if not math.isfinite(v):
        raise ValidationError(path, "expected a finite number")
    return v


def read_int(x, path: str, lo: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(path, "expected an integer")
    if lo is not None and x < lo:
        raise ValidationError(path, f"must be at least {lo}")
    return int(x)


def read_complex(x, path: str) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(_number(x, path))
    if not isinstance(x, list) or len(x) != 2:
        raise ValidationError(path, "expected [re, im]")
    return complex(_number(x[0], f"{path}[0]"), _number(x[1], f"{path}[1]"))


def read_poly(x, path: str) -> Poly:
    if not isinstance(x, list) or not x:
        raise ValidationError(path, "expected a nonempty coefficient list")
    return Poly([read_complex(c, f"{path}[{i}]") for i, c in enumerate(x)])


def _field(rec, key: str, path: str):
    if not isinstance(rec, dict):
        raise ValidationError(path, "expected an object")
    if key not in rec:
        raise ValidationError(f"{path}.{key}", "missing field")
    return rec[key]


def _guard(path: str, build):
    """Run a constructor and attach ``path`` to any input error it raises."""
    try:
        return build()
    except ValidationError:
        raise
    except TklabError as exc:
        raise ValidationError(path, str(exc)) from exc


def read_ratfun(rec, path: str, tol: ToleranceConfig = DEFAULT_TOL) -> RatFun:
    if isinstance(rec, (int, float)) and not isinstance(rec, bool):
        return RatFun.const(_number(rec, path), tol)
    num = read_poly(_field(rec, "num", path), f"{path}.num")
    den = read_poly(rec["den"], f"{path}.den") if "den" in rec else Poly.constant(1.0)
    if den.is_zero:
        raise ValidationError(f"{path}.den", "denominator is identically zero")
    return _guard(path, lambda: RatFun(num, den, tol))


def read_h2(rec, path: str, tol: ToleranceConfig = DEFAULT_TOL) -> H2Rational:
    f = read_ratfun(rec, path, tol)
    return _guard(path, lambda: H2Rational(f))


def read_blaschke(rec, path: str, tol: ToleranceConfig = DEFAULT_TOL) -> BlaschkeProduct:
    raw = _field(rec, "zeros", path)
    if not isinstance(raw, list):
        raise ValidationError(f"{path}.zeros", "expected a list of [re, im, multiplicity]")
    pairs = []
    for i, z in enumerate(raw):
        p = f"{path}.zeros[{i}]"
        if not isinstance(z, list) or len(z) not in (2, 3):
            raise ValidationError(p, "expected [re, im, multiplicity]")
        loc = complex(_number(z[0], f"{p}[0]"), _number(z[1], f"{p}[1]"))
        mult = read_int(z[2], f"{p}[2]", 1) if len(z) == 3 else 1
        if abs(loc) > 1 - tol.disc_margin:
            raise ValidationError(p, f"modulus {abs(loc):.6g} exceeds 1 - disc margin")
        pairs.append((loc, mult))
    unimodular = read_complex(rec.get("unimodular", [1.0, 0.0]), f"{path}.unimodular")
    if abs(abs(unimodular) - 1) > 1e-12:
        raise ValidationError(f"{path}.unimodular", "must have modulus 1")
    zeros = RootMultiset.from_pairs(pairs, tol.root_match)
    return _guard(path, lambda: BlaschkeProduct(zeros, unimodular, tol))


def read_symbol(rec, path: str, tol: ToleranceConfig = DEFAULT_TOL) -> ToeplitzSymbol:
    if not isinstance(rec, dict):
        raise ValidationError(path, "expected {anti, ana, power}")
    anti = read_ratfun(rec.get("anti", 1.0), f"{path}.anti", tol)
    ana = read_ratfun(rec.get("ana", 1.0), f"{path}.ana", tol)
    power = read_int(rec.get("power", 0), f"{path}.power")
    return _guard(path, lambda: ToeplitzSymbol(anti, ana, power, tol))
