"""End-to-end checks: even-hypergroup fixed spaces versus Coxeter planes.

The two pipelines are computationally independent: the fixed-space path
uses only the module actions (integers from the diagram adjacency and
the fusion ring), while the plane path uses only the bilinear form.
Subspace equality is decided by the Frobenius distance of orthogonal
projectors.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass

import numpy as np

from .coxeter import (
    CoxeterDiagram,
    CoxeterError,
    bipartition,
    coxeter_plane,
    diagram,
    rotation_angle,
)
from .fusion_ring import even_subring
from .hypergroup import action_from_module, fixed_space
from .linalg import subspace_projector
from .report import CheckResult
from .zplus_module import ade_module, decompose, regular_element, restrict


def _require_ade(d: CoxeterDiagram, min_rank: int = 1):
    if not d.is_ade():
        raise CoxeterError(f"diagram {d.name} is not of ADE type")
    if d.rank < min_rank:
        raise CoxeterError(f"diagram {d.name} has rank < {min_rank}")


def check_bifurcation_lemma(d: CoxeterDiagram) -> CheckResult:
    """Delta_1 maps each bipartition class into the other, exactly."""
    _require_ade(d)
    parts = bipartition(d)
    adjacency = d.adjacency_matrix()
    blocks = [
        adjacency[np.ix_(parts.plus, parts.plus)],
        adjacency[np.ix_(parts.minus, parts.minus)],
    ]
    offenders = [
        tuple(int(x) for x in np.argwhere(b != 0)[0]) for b in blocks if np.any(b != 0)
    ]
    return CheckResult("bifurcation lemma", not offenders, offenders or None)


def check_decomposition_lemma(d: CoxeterDiagram) -> CheckResult:
    """The even restriction splits into exactly the bipartition classes."""
    _require_ade(d, min_rank=2)
    module = ade_module(d)
    even, embedding = even_subring(module.ring)
    restricted = restrict(module, even, embedding)
    _, components = decompose(restricted)
    parts = bipartition(d)
    expected = [sorted(parts.plus), sorted(parts.minus)]
    passed = len(components) == 2 and components == expected
    return CheckResult("decomposition lemma", passed, components)


def check_regular_split(d: CoxeterDiagram, tol: float = 1e-9) -> CheckResult:
    """r+ +/- r- are +/-FP(Delta_1)-eigenvectors of the Delta_1 action.

    The split r = r+ + r- is taken from the regular element of the full
    module by masking the bipartition classes, which fixes the relative
    scaling of the two halves.
    """
    _require_ade(d, min_rank=2)
    module = ade_module(d)
    reg = regular_element(module).coordinates
    parts = bipartition(d)
    r_plus = np.zeros(d.rank)
    r_minus = np.zeros(d.rank)
    r_plus[list(parts.plus)] = reg[list(parts.plus)]
    if parts.minus:
        r_minus[list(parts.minus)] = reg[list(parts.minus)]
    delta1 = module.actions[1].astype(float)
    fp1 = module.ring.fp_dim(1)
    residual_sum = float(np.linalg.norm(delta1 @ (r_plus + r_minus) - fp1 * (r_plus + r_minus)))
    residual_diff = float(np.linalg.norm(delta1 @ (r_plus - r_minus) + fp1 * (r_plus - r_minus)))
    passed = residual_sum < tol and residual_diff < tol
    return CheckResult(
        "regular split", passed, {"sum": residual_sum, "diff": residual_diff}
    )


@dataclass(frozen=True)
class TheoremReport:
    """Per-diagram outcome of the fixed-space / Coxeter-plane comparison."""

    diagram: str
    h: int
    fixed_dimension: int
    projector_distance: float
    rotation_angle: float
    bifurcation_ok: bool
    decomposition_ok: bool
    regular_split_ok: bool
    passed: bool
    seconds: float

    def to_dict(self) -> dict:
        return {
            "diagram": self.diagram,
            "h": self.h,
            "fixed_dimension": self.fixed_dimension,
            "projector_distance": float(f"{self.projector_distance:.12g}"),
            "rotation_angle": float(f"{self.rotation_angle:.12g}"),
            "bifurcation_ok": self.bifurcation_ok,
            "decomposition_ok": self.decomposition_ok,
            "regular_split_ok": self.regular_split_ok,
            "passed": self.passed,
        }


def check_main_theorem(d: CoxeterDiagram, tol: float = 1e-8) -> TheoremReport:
    """Fixed space of the even-hypergroup action equals the Coxeter plane."""
    _require_ade(d, min_rank=2)
    start = time.perf_counter()

    module = ade_module(d)
    even, embedding = even_subring(module.ring)
    restricted = restrict(module, even, embedding)
    action = action_from_module(restricted)
    fixed = fixed_space(action)

    plane = coxeter_plane(d)
    if fixed.dimension > 0:
        proj_fixed = subspace_projector(fixed.basis)
    else:
        proj_fixed = np.zeros((d.rank, d.rank))
    proj_plane = subspace_projector([plane.u_plus, plane.u_minus])
    distance = float(np.linalg.norm(proj_fixed - proj_plane))

    bif = check_bifurcation_lemma(d)
    dec = check_decomposition_lemma(d)
    split = check_regular_split(d)
    passed = fixed.dimension == 2 and distance < tol
    return TheoremReport(
        diagram=d.name,
        h=plane.h,
        fixed_dimension=fixed.dimension,
        projector_distance=distance,
        rotation_angle=rotation_angle(plane),
        bifurcation_ok=bif.passed,
        decomposition_ok=dec.passed,
        regular_split_ok=split.passed,
        passed=passed,
        seconds=time.perf_counter() - start,
    )


def default_roster() -> list[CoxeterDiagram]:
    """A_2..A_12, D_4..D_12, E6, E7, E8."""
    out = [diagram("A", n) for n in range(2, 13)]
    out += [diagram("D", n) for n in range(4, 13)]
    out += [diagram("E", n) for n in (6, 7, 8)]
    return out


def run_suite(diagrams, tol: float = 1e-8) -> list[TheoremReport]:
    return [check_main_theorem(d, tol=tol) for d in diagrams]


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], ensure_ascii=False, indent=2)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["diagram", "h", "fixed_dimension", "projector_distance", "passed"])
    for r in reports:
        writer.writerow(
            [r.diagram, r.h, r.fixed_dimension, f"{r.projector_distance:.12g}", r.passed]
        )
    return buf.getvalue()
