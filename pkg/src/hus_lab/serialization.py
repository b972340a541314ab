"""JSON and CSV encodings for polynomials, function inputs and reports.

Rationals travel as "p/q" strings so big integers survive; floats are written
with 17 significant digits so a given run always produces the same bytes.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any

from .operators import Grid, OperatorSpec, Step, Taylor
from .polyalg import BernsteinPoly, ExactComplex, MonomialPoly, is_exact
from .stability import LorentzReport, StabilityReport

__all__ = [
    "FormatError",
    "dumps",
    "rational_str",
    "parse_rational",
    "parse_scalar",
    "poly_to_json",
    "poly_from_json",
    "function_to_json",
    "function_from_json",
    "report_to_json",
    "lorentz_report_to_json",
    "sweep_csv",
]


class FormatError(ValueError):
    """Malformed serialized input."""


def rational_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError) as exc:
        raise FormatError(f"not a rational: {text!r}") from exc


def _float_str(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON: insertion-ordered keys, fixed float formatting."""

    def emit(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, bool) or o is None or isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return _float_str(o)
        if isinstance(o, Fraction):
            return json.dumps(rational_str(o))
        if isinstance(o, dict):
            if not o:
                return "{}"
            if len(o) <= 3 and all(not isinstance(v, (dict, list, tuple)) for v in o.values()):
                return "{" + ", ".join(f"{json.dumps(str(k))}: {emit(v, level + 1)}" for k, v in o.items()) + "}"
            items = [f"{pad}{json.dumps(str(k))}: {emit(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(not isinstance(v, (dict, list, tuple, str)) for v in o):
                return "[" + ", ".join(emit(v, level + 1) for v in o) + "]"
            return "[\n" + ",\n".join(pad + emit(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return emit(obj, 0) + "\n"


# --- scalars and polynomials -------------------------------------------------


def _scalar_to_json(c) -> dict:
    if is_exact(c):
        if isinstance(c, ExactComplex):
            return {"re": rational_str(c.real), "im": rational_str(c.imag)}
        return {"re": rational_str(c), "im": "0/1"}
    c = complex(c)
    return {"re": float(c.real), "im": float(c.imag)}


def _part(v):
    if isinstance(v, bool):
        raise FormatError("boolean where a number was expected")
    if isinstance(v, str):
        return parse_rational(v)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    raise FormatError(f"bad scalar part {v!r}")


def parse_scalar(v):
    """A scalar from JSON: number, "p/q" string or {"re": .., "im": ..}."""
    if isinstance(v, dict):
        if "re" not in v:
            raise FormatError(f"scalar object needs 're': {v!r}")
        re_, im = _part(v["re"]), _part(v.get("im", 0))
        if isinstance(re_, float) or isinstance(im, float):
            z = complex(float(re_), float(im))
            return z.real if z.imag == 0 else z
        return ExactComplex.make(re_, im)
    return _part(v)


def poly_to_json(poly: MonomialPoly | BernsteinPoly) -> dict:
    return {
        "basis": "bernstein" if isinstance(poly, BernsteinPoly) else "monomial",
        "degree": poly.degree,
        "scalar_format": poly.scalar_format,
        "coefficients": [_scalar_to_json(c) for c in poly.coeffs],
    }


def poly_from_json(data: dict) -> MonomialPoly | BernsteinPoly:
    try:
        basis = data["basis"]
        coeffs = [parse_scalar(c) for c in data["coefficients"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed polynomial JSON: {exc}") from exc
    if basis not in ("monomial", "bernstein"):
        raise FormatError(f"unknown basis {basis!r}")
    if "degree" in data and data["degree"] != len(coeffs) - 1:
        raise FormatError("degree does not match the number of coefficients")
    if data.get("scalar_format") == "float":
        coeffs = [complex(c) if isinstance(c, (ExactComplex, complex)) else float(c) for c in coeffs]
    cls = BernsteinPoly if basis == "bernstein" else MonomialPoly
    try:
        return cls(tuple(coeffs))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# --- function inputs ---------------------------------------------------------


def _num(v):
    return rational_str(v) if is_exact(v) and not isinstance(v, ExactComplex) else (
        _scalar_to_json(v) if isinstance(v, (ExactComplex, complex)) else float(v)
    )


def function_to_json(f) -> dict:
    if isinstance(f, Grid):
        return {"variant": "grid", "nodes": [_num(x) for x in f.nodes], "values": [_num(v) for v in f.values]}
    if isinstance(f, Step):
        return {
            "variant": "step",
            "breakpoints": [_num(x) for x in f.breakpoints],
            "values": [_num(v) for v in f.values],
        }
    if isinstance(f, Taylor):
        return {"variant": "taylor", "coeffs": [_num(c) for c in f.coeffs]}
    if isinstance(f, MonomialPoly):
        return {"variant": "poly", "coeffs": [_num(c) for c in f.coeffs]}
    raise TypeError(f"cannot serialize {type(f).__name__}")


def function_from_json(data: dict):
    try:
        variant = data["variant"]
        if variant == "grid":
            return Grid(tuple(_part(x) for x in data["nodes"]), tuple(parse_scalar(v) for v in data["values"]))
        if variant == "step":
            return Step(
                tuple(_part(x) for x in data["breakpoints"]),
                tuple(parse_scalar(v) for v in data["values"]),
            )
        if variant == "taylor":
            return Taylor(tuple(parse_scalar(c) for c in data["coeffs"]))
        if variant == "poly":
            return MonomialPoly(tuple(parse_scalar(c) for c in data["coeffs"]))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed function input: {exc}") from exc
    raise FormatError(f"unknown function variant {variant!r}")


# --- reports -----------------------------------------------------------------


def report_to_json(report: StabilityReport) -> dict:
    cert = None
    if report.certificate is not None:
        c = report.certificate
        cert = {
            "extremal": poly_to_json(c.extremal),
            "attained": rational_str(c.attained),
            "attained_float": float(c.attained),
            "norm_check": c.norm_check,
        }
    return {
        "operator": report.operator.to_dict(),
        "status": report.status,
        "K_exact": rational_str(report.K_exact) if report.K_exact is not None else None,
        "K_float": report.K_float,
        "empirical_lower_bound": report.empirical_lower_bound,
        "certificate": cert,
        "notes": list(report.notes),
        "config": dict(report.config),
    }


def lorentz_report_to_json(report: LorentzReport) -> dict:
    return {
        "operator": OperatorSpec("lorentz", report.n).to_dict(),
        "status": "unstable",
        "eigenvalues": [
            {
                "j": j,
                "eigenvalue": rational_str(lam),
                "reciprocal": rational_str(rec) if rec is not None else "divergent",
            }
            for j, lam, rec in report.rows
        ],
        "max_finite_reciprocal": rational_str(report.max_finite_reciprocal),
        "max_finite_reciprocal_float": float(report.max_finite_reciprocal),
        "argmax_j": report.argmax_j,
        "kernel_witness": f"e_{report.kernel_witness}",
        "notes": list(report.notes),
    }


SWEEP_COLUMNS = ("operator", "n", "p", "status", "K_num", "K_den", "K_float")


def sweep_csv(reports, header_comments=()) -> str:
    """CSV table of reports; the K_num/K_den pair reconstructs K exactly."""
    buf = io.StringIO()
    for line in header_comments:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in reports:
        k = r.K_exact
        w.writerow([
            r.operator.kind,
            r.operator.n,
            r.operator.p,
            r.status,
            "" if k is None else k.numerator,
            "" if k is None else k.denominator,
            "" if r.K_float is None else _float_str(r.K_float),
        ])
    return buf.getvalue()
