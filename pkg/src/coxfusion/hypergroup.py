"""Hypergroups from fusion rings, their actions and fixed subspaces.

A fusion ring induces a hypergroup by renormalising each basis element
by its Frobenius-Perron dimension; a Z+-module then induces an action
whose matrices are the integer actions divided by the same dimensions.
Fixed subspaces are extracted numerically by singular-value
thresholding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .fusion_ring import FusionRing
from .report import CheckResult
from .zplus_module import ZPlusModule


class Hypergroup:
    """Real algebra with row-stochastic nonnegative structure constants."""

    def __init__(self, labels, constants, unit: int = 0, involution=None):
        labels = tuple(str(lab) for lab in labels)
        rank = len(labels)
        constants = np.array(constants, dtype=float)
        if constants.shape != (rank, rank, rank):
            raise ValueError(
                f"constants tensor has shape {constants.shape}, expected {(rank,) * 3}"
            )
        if involution is None:
            involution = tuple(range(rank))
        constants.setflags(write=False)
        self.labels = labels
        self.constants = constants
        self.unit = unit
        self.involution = tuple(int(i) for i in involution)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def verify_axioms(self, tol: float = 1e-10) -> list[CheckResult]:
        return verify_hypergroup_axioms(self, tol)

    def to_dict(self) -> dict:
        def fmt(x: float) -> float:
            return float(f"{x:.15g}")

        return {
            "labels": list(self.labels),
            "unit": self.unit,
            "involution": list(self.involution),
            "constants": [
                [[fmt(v) for v in row] for row in mat] for mat in self.constants
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kwargs)

    def __repr__(self) -> str:
        return f"Hypergroup(rank={self.rank}, labels={list(self.labels)})"


def from_fusion_ring(ring: FusionRing) -> Hypergroup:
    """Hypergroup on the basis b_i / FP(b_i) of a fusion ring."""
    fp = ring.fp_dims()
    constants = (
        ring.constants.astype(float)
        * fp[None, None, :]
        / (fp[:, None, None] * fp[None, :, None])
    )
    labels = tuple(f"{lab}/FP({lab})" for lab in ring.labels)
    return Hypergroup(labels, constants, ring.unit, ring.involution)


def verify_hypergroup_axioms(hg: Hypergroup, tol: float = 1e-10) -> list[CheckResult]:
    """Tolerance checks of the hypergroup axioms; failures are reported."""
    c = hg.constants
    n = hg.rank
    u = hg.unit
    inv = np.array(hg.involution)
    checks = []

    nonneg = bool(np.all(c >= 0))
    witness = None
    if not nonneg:
        witness = tuple(int(x) for x in np.argwhere(c < 0)[0])
    checks.append(CheckResult("nonnegativity", nonneg, witness))

    eye = np.eye(n)
    unit_ok = np.max(np.abs(c[u] - eye)) < tol and np.max(np.abs(c[:, u, :] - eye)) < tol
    checks.append(CheckResult("unit law", bool(unit_ok)))

    sums = c.sum(axis=2)
    rows_ok = np.max(np.abs(sums - 1.0)) < tol
    witness = None
    if not rows_ok:
        i, j = np.unravel_index(int(np.argmax(np.abs(sums - 1.0))), sums.shape)
        witness = (int(i), int(j), float(sums[i, j]))
    checks.append(CheckResult("row sums equal 1", bool(rows_ok), witness))

    perm_ok = inv[u] == u and np.array_equal(inv[inv], np.arange(n))
    sym_ok = np.max(np.abs(c[:, :, u] - c[:, :, u].T)) < 1e-12
    support_ok = True
    for i in range(n):
        for j in range(n):
            positive = c[i, j, u] > 0
            if positive != (j == inv[i]):
                support_ok = False
    checks.append(
        CheckResult("involution conditions", bool(perm_ok and sym_ok and support_ok))
    )

    left = np.einsum("ijm,mkl->ijkl", c, c)
    right = np.einsum("jkm,iml->ijkl", c, c)
    assoc_err = float(np.max(np.abs(left - right)))
    checks.append(CheckResult("associativity", assoc_err < tol, assoc_err))
    return checks


@dataclass(frozen=True)
class HypergroupAction:
    """Algebra homomorphism into matrices: one matrix per basis element."""

    hypergroup: Hypergroup
    matrices: np.ndarray  # (rank, dim, dim)

    @property
    def dimension(self) -> int:
        return self.matrices.shape[1]


def action_from_module(module: ZPlusModule) -> HypergroupAction:
    """Action of the ring's hypergroup induced by a Z+-module."""
    hg = from_fusion_ring(module.ring)
    fp = module.ring.fp_dims()
    matrices = module.actions.astype(float) / fp[:, None, None]
    matrices.setflags(write=False)
    return HypergroupAction(hg, matrices)


@dataclass(frozen=True)
class FixedSpace:
    """Orthonormal basis (rows) of the common fixed subspace."""

    action: HypergroupAction
    basis: np.ndarray  # (dimension_of_fixed_space, ambient_dimension)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]


def fixed_space(action: HypergroupAction, tol: float = 1e-8) -> FixedSpace:
    """Intersection of the kernels of Theta(r_i) - I.

    The matrices Theta(r_i) - I are stacked into one tall matrix whose
    numerical kernel (singular values below ``tol``) is the fixed
    subspace.
    """
    dim = action.dimension
    eye = np.eye(dim)
    stacked = np.concatenate([mat - eye for mat in action.matrices], axis=0)
    _, svals, vt = np.linalg.svd(stacked)
    kept = int(np.sum(svals >= tol))
    basis = vt[kept:].copy()
    basis.setflags(write=False)
    return FixedSpace(action, basis)
