"""Deterministic JSON encoding: rationals as "p/q" strings, keys sorted,
fixed separators.  One schema string per document kind."""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction


def encode_value(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): encode_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode_value(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(encode_value(v) for v in x)
    if is_dataclass(x):
        return encode_value(asdict(x))
    return str(x)


def dumps(doc: dict, schema: str) -> str:
    payload = {"schema": schema}
    payload.update(encode_value(doc))
    return json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def polytope_doc(poly) -> dict:
    return {
        "vertices": poly.vertices,
        "facets": poly.facets,
        "equations": poly.equations,
    }


def cone_doc(cone) -> dict:
    return {
        "rays": cone.rays,
        "lineality": cone.lineality,
        "facets": cone.facets,
        "equations": cone.equations,
        "pointed": cone.pointed,
    }


def complex_doc(complex_) -> dict:
    return {
        "dim": complex_.dim,
        "translation_basis": complex_.translation_basis,
        "quotient_basis": complex_.quotient_basis,
        "cell_labels": complex_.cell_labels,
        "cells": [polytope_doc(c) for c in complex_.cells],
        "face_classes": [
            {"dim": fc.dim, "vertices": fc.vertices} for fc in complex_.face_classes
        ],
        "incidence": complex_.incidence,
        "counts": {str(k): v for k, v in sorted(complex_.counts().items())},
        "euler_characteristic": complex_.euler_characteristic(),
    }


def chart_doc(chart) -> dict:
    return {
        "base_vertices": chart.base_vertices,
        "shift": chart.shift,
        "level": chart.level,
        "half": chart.half,
        "torus_factor": chart.torus_factor,
        "hilbert_basis": chart.hilbert_basis,
        "lineality_basis": chart.lineality_basis,
        "cone": cone_doc(chart.cone),
    }
