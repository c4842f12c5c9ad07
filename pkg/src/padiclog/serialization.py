"""JSON encodings shared by the CLI.

Rationals are "num/den" strings (den omitted when 1), quadratic elements are
``{"c0": ..., "c1": ...}``, matrices are row-major nested lists and polynomials
are sparse ``{exponent: element}`` maps.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any

from .distribution import DistributionValue
from .exact import QuadElem, QuadRing, format_rational, format_valuation
from .hecke import HeckeData, Mat2
from .logmatrix import Poly


def quad_to_json(x: Any) -> dict[str, str]:
    if isinstance(x, QuadElem):
        return x.to_json()
    return {"c0": format_rational(Fraction(x)), "c1": "0"}


def mat_to_json(m: Mat2) -> list[list[dict[str, str]]]:
    return [[quad_to_json(e) for e in row] for row in m.rows()]


def mat_from_json(data: list[list[dict[str, str]]], ring: QuadRing) -> Mat2:
    return Mat2.from_rows([[QuadElem.from_json(e, ring) for e in row] for row in data])


def poly_to_json(f: Poly) -> dict[str, dict[str, str]]:
    return {str(e): quad_to_json(c) for e, c in sorted(f.terms.items())}


def poly_from_json(data: dict[str, dict[str, str]], ring: QuadRing) -> Poly:
    return Poly({int(e): QuadElem.from_json(c, ring) for e, c in data.items()})


def polymat_to_json(m: Mat2) -> list[list[dict[str, dict[str, str]]]]:
    return [[poly_to_json(e) for e in row] for row in m.rows()]


def polymat_from_json(data: Any, ring: QuadRing) -> Mat2:
    return Mat2.from_rows([[poly_from_json(e, ring) for e in row] for row in data])


def mat_to_text(m: Mat2) -> str:
    return "[[{}, {}], [{}, {}]]".format(*(str(e) for e in m))


def distribution_record(dv: DistributionValue) -> dict[str, Any]:
    ds = dv.digit_string
    return {
        "ctx": dv.ctx.to_json(),
        "b": dv.b,
        "n": dv.n,
        "digits": list(ds.digits),
        "runs": list(dv.runs.runs),
        "matrix": mat_to_json(dv.matrix),
        "flags": list(dv.flags),
    }


def ctx_from_record(record: dict[str, Any]) -> HeckeData:
    return HeckeData.from_json(record["ctx"])


__all__ = [
    "quad_to_json",
    "mat_to_json",
    "mat_from_json",
    "poly_to_json",
    "poly_from_json",
    "polymat_to_json",
    "polymat_from_json",
    "mat_to_text",
    "distribution_record",
    "ctx_from_record",
    "format_valuation",
]
