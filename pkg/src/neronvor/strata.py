"""Orbit stratification of the closed fiber read off the quotient complex,
the component group of the model, and per-component polygon reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core, voronoi
from .core import FCDatum
from .errors import WrongRank


@dataclass(frozen=True)
class StrataReport:
    side: str                       # "voronoi" or "delaunay"
    level: int
    half: bool
    orbit_counts: dict              # dim -> number of orbit classes
    euler_characteristic: int
    component_group_factors: tuple
    component_group_order: int
    components: tuple               # per maximal cell: vertex/edge counts
    complement_orbit_counts: dict   # dims < g only
    codimension_note: str


def component_group(datum: FCDatum) -> tuple:
    """Invariant factors of the dual-lattice quotient by the pairing image."""
    return tuple(abs(f) for f in core.smith(datum.beta_matrix).factors)


def component_group_order(datum: FCDatum) -> int:
    out = 1
    for f in component_group(datum):
        out *= f
    return out


def group_name(factors) -> str:
    parts = [f"Z/{f}" for f in factors if f != 1]
    return " x ".join(parts) if parts else "trivial"


def _cell_face_counts(complex_, cell_class):
    """Vertex/edge counts of one maximal cell polytope (not of its class)."""
    from . import polyhedra

    poly = cell_class
    lattice_faces = polyhedra.faces(poly)
    return {d: len(lattice_faces.get(d, ())) for d in range(poly.space_dim() + 1)}


def stratification(datum: FCDatum, level=1, half: bool = False,
                   side: str = "voronoi", allow_big: bool = False) -> StrataReport:
    """Orbit counts per dimension modulo the quotient lattice, the component
    list, and the complement bookkeeping."""
    g = datum.rank
    if side == "voronoi":
        complex_ = voronoi.vor_complex(datum, level, half, allow_big=allow_big)
    elif side == "delaunay":
        complex_ = voronoi.delaunay_complex(datum, allow_big=allow_big)
    else:
        raise ValueError(f"unknown side {side!r}")
    counts = complex_.counts()
    factors = component_group(datum)
    order = component_group_order(datum)
    components = []
    for idx, fc in enumerate(complex_.face_classes):
        if fc.dim != g:
            continue
        from . import polyhedra

        poly = polyhedra.hull(list(fc.vertices), dim=g)
        face_counts = _cell_face_counts(complex_, poly)
        comp = {
            "index": idx,
            "vertex_count": face_counts.get(0, 0),
            "edge_count": face_counts.get(1, 0),
            "face_counts": face_counts,
            "vertices": fc.vertices,
        }
        components.append(comp)
    complement = {d: counts[d] for d in counts if d < g}
    note = (
        "all complement orbits have fiber dimension <= g-1, "
        "hence total codimension >= 2 in the model"
    )
    return StrataReport(
        side=side,
        level=level,
        half=half,
        orbit_counts=counts,
        euler_characteristic=complex_.euler_characteristic(),
        component_group_factors=factors,
        component_group_order=order,
        components=tuple(components),
        complement_orbit_counts=complement,
        codimension_note=note,
    )


def component_polygon_report(datum: FCDatum, level=1, half: bool = False,
                             side: str = "voronoi") -> list:
    """Rank-2 only: per component, the boundary polygon size."""
    if datum.rank != 2:
        raise WrongRank("polygon report is a rank-2 operation")
    report = stratification(datum, level, half, side=side)
    out = []
    for comp in report.components:
        n = comp["vertex_count"]
        out.append(
            {
                "component": comp["index"],
                "polygon_vertices": n,
                "annotation": f"toric surface with {n} boundary curves",
            }
        )
    return out
