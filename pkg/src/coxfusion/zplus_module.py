"""Z+-modules over fusion rings and the ADE modules over Verlinde rings.

The ADE module of a diagram with Coxeter number h lives over the
Verlinde ring R_{h-1}; its generator Delta_1 acts by the diagram's
adjacency matrix and the remaining actions are generated by the
Chebyshev recursion, with the vanishing of the would-be Delta_{h-1}
action serving as a built-in self-test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .coxeter import CoxeterDiagram, CoxeterError, coxeter_number
from .fusion_ring import FusionRing, FusionRingError, verlinde_ring
from .linalg import perron_eigenpair
from .report import CheckResult


class ZPlusModuleError(Exception):
    """Malformed module data or a failed construction self-test."""


class ZPlusModule:
    """Module basis with one nonnegative integer matrix per ring basis.

    ``actions[i]`` is the matrix of the ring basis element b_i; entry
    (k, l) is the coefficient of m_k in b_i . m_l.
    """

    def __init__(self, ring: FusionRing, labels, actions):
        labels = tuple(str(lab) for lab in labels)
        m = len(labels)
        actions = np.array(actions, dtype=np.int64)
        if actions.shape != (ring.rank, m, m):
            raise ZPlusModuleError(
                f"actions tensor has shape {actions.shape}, expected {(ring.rank, m, m)}"
            )
        actions.setflags(write=False)
        self.ring = ring
        self.labels = labels
        self.actions = actions

    @property
    def rank(self) -> int:
        """Module rank (number of basis elements)."""
        return len(self.labels)

    def action(self, i: int) -> np.ndarray:
        return self.actions[i]

    def verify_axioms(self) -> list[CheckResult]:
        """Exact checks: unit action, nonnegativity, ring compatibility."""
        acts = self.actions
        c = self.ring.constants
        checks = []

        eye = np.eye(self.rank, dtype=np.int64)
        unit_ok = np.array_equal(acts[self.ring.unit], eye)
        witness = None
        if not unit_ok:
            witness = tuple(int(x) for x in np.argwhere(acts[self.ring.unit] != eye)[0])
        checks.append(CheckResult("unit acts as identity", unit_ok, witness))

        nonneg = bool(np.all(acts >= 0))
        witness = None
        if not nonneg:
            witness = tuple(int(x) for x in np.argwhere(acts < 0)[0])
        checks.append(CheckResult("nonnegative integer entries", nonneg, witness))

        left = np.einsum("iab,jbc->ijac", acts, acts)
        right = np.einsum("ijk,kac->ijac", c, acts)
        compat = np.array_equal(left, right)
        witness = None
        if not compat:
            witness = tuple(int(x) for x in np.argwhere(left != right)[0])
        checks.append(CheckResult("module compatibility", compat, witness))
        return checks

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.to_dict(),
            "labels": list(self.labels),
            "actions": self.actions.tolist(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kwargs)

    def __repr__(self) -> str:
        return f"ZPlusModule(ring_rank={self.ring.rank}, module_rank={self.rank})"


def regular_module(ring: FusionRing) -> ZPlusModule:
    """The ring acting on itself by left multiplication."""
    actions = np.stack([ring.left_mult_matrix(i) for i in range(ring.rank)])
    return ZPlusModule(ring, ring.labels, actions)


def ade_module(d: CoxeterDiagram) -> ZPlusModule:
    """The Z+-module of an ADE diagram over the Verlinde ring R_{h-1}."""
    if not d.is_ade():
        raise CoxeterError(f"diagram {d.name} is not of ADE type")
    h = coxeter_number(d)
    ring = verlinde_ring(h - 1)
    adjacency = d.adjacency_matrix()
    acts = [np.eye(d.rank, dtype=np.int64), adjacency]
    for _ in range(2, h):
        acts.append(adjacency @ acts[-1] - acts[-2])
    if np.any(acts[h - 1] != 0):
        raise ZPlusModuleError(
            f"Delta_{h - 1} does not act as zero on {d.name}; "
            "vertex ordering or Coxeter number is wrong"
        )
    acts = acts[: h - 1]
    if any(np.any(a < 0) for a in acts):
        raise ZPlusModuleError(f"generated action with negative entries for {d.name}")
    labels = tuple(f"α_{i + 1}" for i in range(d.rank))
    return ZPlusModule(ring, labels, np.stack(acts))


def restrict(module: ZPlusModule, sub: FusionRing, embedding) -> ZPlusModule:
    """View the module over a fusion subring via an index embedding."""
    embedding = tuple(int(e) for e in embedding)
    if len(embedding) != sub.rank:
        raise FusionRingError("embedding length does not match subring rank")
    parent = module.ring
    if any(not 0 <= e < parent.rank for e in embedding):
        raise FusionRingError("embedding index out of range for the parent ring")
    outside = [k for k in range(parent.rank) if k not in embedding]
    for a in range(sub.rank):
        for b in range(sub.rank):
            row = parent.constants[embedding[a], embedding[b]]
            if outside and np.any(row[outside] != 0):
                raise FusionRingError("embedding is not closed under the parent product")
            if np.any(row[list(embedding)] != sub.constants[a, b]):
                raise FusionRingError("subring constants disagree with the parent ring")
    actions = module.actions[list(embedding)]
    return ZPlusModule(sub, module.labels, actions)


def decompose(module: ZPlusModule) -> tuple[list[ZPlusModule], list[list[int]]]:
    """Split into Z+-submodules along support-graph components.

    An edge joins basis indices l and k whenever some action matrix is
    nonzero at (k, l) or (l, k); each connected component spans a
    submodule.  Components are ordered by smallest basis index.
    """
    m = module.rank
    support = np.any(module.actions != 0, axis=0)
    support = support | support.T
    np.fill_diagonal(support, False)
    seen: set[int] = set()
    components: list[list[int]] = []
    for start in range(m):
        if start in seen:
            continue
        stack = [start]
        comp = {start}
        seen.add(start)
        while stack:
            v = stack.pop()
            for w in np.nonzero(support[v])[0]:
                w = int(w)
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        components.append(sorted(comp))
    submodules = []
    for comp in components:
        idx = np.ix_(range(module.ring.rank), comp, comp)
        labels = tuple(module.labels[v] for v in comp)
        submodules.append(ZPlusModule(module.ring, labels, module.actions[idx]))
    return submodules, components


@dataclass(frozen=True)
class RegularElement:
    """Common positive eigenvector of all actions, coordinate-sum 1."""

    module: ZPlusModule
    coordinates: np.ndarray


def regular_element(module: ZPlusModule, tol: float = 1e-9) -> RegularElement:
    """Regular element of an irreducible module.

    Computed as the Perron vector of the summed action (a strictly
    positive combination preserves the Perron eigenspace), then checked
    against every generator at eigenvalue FP(b_i).
    """
    _, components = decompose(module)
    if len(components) != 1:
        raise ZPlusModuleError(
            f"module is reducible ({len(components)} components); regular element undefined"
        )
    total = module.actions.sum(axis=0)
    _, vec = perron_eigenpair(total)
    vec = vec / vec.sum()
    if np.any(vec <= 0):
        raise ZPlusModuleError("Perron vector is not strictly positive")
    fp = module.ring.fp_dims()
    for i in range(module.ring.rank):
        residual = float(np.max(np.abs(module.actions[i] @ vec - fp[i] * vec)))
        if residual > tol:
            raise ZPlusModuleError(
                f"eigen-relation for basis element {i} fails (residual {residual:.3e})"
            )
    vec.setflags(write=False)
    return RegularElement(module, vec)
