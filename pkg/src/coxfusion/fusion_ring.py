"""Fusion rings with exact integer structure constants.

Covers the generic based-ring machinery plus the two concrete families
used downstream: the Verlinde ring R_n = Z[x]/(Delta_n) with basis
Delta_0..Delta_{n-1}, and the rank-2 Fibonacci ring.  Frobenius-Perron
dimensions are computed by shifted power iteration on the left
multiplication matrices.
"""

from __future__ import annotations

import functools
import json

import numpy as np

from .chebyshev import delta, evaluate, product_support
from .linalg import perron_eigenpair
from .report import CheckResult


class FusionRingError(Exception):
    """Malformed ring data or a failed Frobenius-Perron computation."""


class FusionRing:
    """Finite-rank unital based ring with nonnegative integer constants.

    ``constants[i, j, k]`` is the coefficient of basis element k in the
    product b_i * b_j.  Instances are immutable; structure constants are
    stored as a read-only dense integer tensor.
    """

    def __init__(self, labels, constants, unit: int = 0, involution=None):
        labels = tuple(str(lab) for lab in labels)
        rank = len(labels)
        constants = np.array(constants, dtype=np.int64)
        if constants.shape != (rank, rank, rank):
            raise FusionRingError(
                f"constants tensor has shape {constants.shape}, expected {(rank,) * 3}"
            )
        if np.any(constants < 0):
            raise FusionRingError("structure constants must be nonnegative")
        if not 0 <= unit < rank:
            raise FusionRingError(f"unit index {unit} out of range")
        if involution is None:
            involution = tuple(range(rank))
        involution = tuple(int(i) for i in involution)
        if sorted(involution) != list(range(rank)):
            raise FusionRingError("involution must be a permutation of the basis indices")
        constants.setflags(write=False)
        self.labels = labels
        self.constants = constants
        self.unit = unit
        self.involution = involution
        self._fp_dims: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.labels)

    def element(self, coefficients) -> "FusionElement":
        return FusionElement(self, np.array(coefficients, dtype=np.int64))

    def basis_element(self, i: int) -> "FusionElement":
        coeffs = np.zeros(self.rank, dtype=np.int64)
        coeffs[i] = 1
        return FusionElement(self, coeffs)

    def one(self) -> "FusionElement":
        return self.basis_element(self.unit)

    def left_mult_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by b_i; entry (k, j) is c_{ij}^k."""
        if not 0 <= i < self.rank:
            raise IndexError(f"basis index {i} out of range for rank {self.rank}")
        return self.constants[i].T.copy()

    def fp_dims(self) -> np.ndarray:
        """Frobenius-Perron dimensions of all basis elements (cached)."""
        if self._fp_dims is None:
            dims = np.empty(self.rank)
            for i in range(self.rank):
                try:
                    dims[i], _ = perron_eigenpair(self.left_mult_matrix(i))
                except ArithmeticError as exc:
                    raise FusionRingError(
                        f"FP dimension of basis element {i} did not converge"
                    ) from exc
            dims.setflags(write=False)
            self._fp_dims = dims
        return self._fp_dims

    def fp_dim(self, i: int) -> float:
        if not 0 <= i < self.rank:
            raise IndexError(f"basis index {i} out of range for rank {self.rank}")
        return float(self.fp_dims()[i])

    def verify_axioms(self) -> list[CheckResult]:
        """Exact integer checks of the based-ring axioms."""
        c = self.constants
        n = self.rank
        u = self.unit
        inv = np.array(self.involution)
        eye = np.eye(n, dtype=np.int64)
        checks = []

        unit_left = np.array_equal(c[u], eye)
        unit_right = np.array_equal(c[:, u, :], eye)
        witness = None
        if not (unit_left and unit_right):
            bad = c[u] - eye if not unit_left else c[:, u, :] - eye
            witness = tuple(int(x) for x in np.argwhere(bad != 0)[0])
        checks.append(CheckResult("unit law", unit_left and unit_right, witness))

        left = np.einsum("ijm,mkl->ijkl", c, c)
        right = np.einsum("jkm,iml->ijkl", c, c)
        assoc = np.array_equal(left, right)
        witness = None
        if not assoc:
            witness = tuple(int(x) for x in np.argwhere(left != right)[0])
        checks.append(CheckResult("associativity", assoc, witness))

        expected = (np.arange(n)[None, :] == inv[:, None]).astype(np.int64)
        based = np.array_equal(c[:, :, u], expected)
        witness = None
        if not based:
            witness = tuple(int(x) for x in np.argwhere(c[:, :, u] != expected)[0])
        checks.append(CheckResult("based condition", based, witness))

        perm_ok = inv[u] == u and np.array_equal(inv[inv], np.arange(n))
        anti = np.array_equal(c, c[np.ix_(inv, inv)][:, :, inv].transpose(1, 0, 2))
        witness = None
        if not anti:
            diff = c - c[np.ix_(inv, inv)][:, :, inv].transpose(1, 0, 2)
            witness = tuple(int(x) for x in np.argwhere(diff != 0)[0])
        checks.append(CheckResult("involution anti-automorphism", bool(perm_ok and anti), witness))
        return checks

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "unit": self.unit,
            "involution": list(self.involution),
            "constants": self.constants.tolist(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "FusionRing":
        return cls(
            data["labels"], data["constants"], data.get("unit", 0), data.get("involution")
        )

    def __repr__(self) -> str:
        return f"FusionRing(rank={self.rank}, labels={list(self.labels)})"


class FusionElement:
    """Integer linear combination of the basis of one fusion ring."""

    def __init__(self, ring: FusionRing, coefficients):
        coefficients = np.asarray(coefficients, dtype=np.int64)
        if coefficients.shape != (ring.rank,):
            raise FusionRingError(
                f"coefficient vector has length {coefficients.size}, expected {ring.rank}"
            )
        self.ring = ring
        self.coefficients = coefficients

    def _check_ring(self, other: "FusionElement"):
        if self.ring is not other.ring:
            raise FusionRingError("elements belong to different rings")

    def __add__(self, other: "FusionElement") -> "FusionElement":
        self._check_ring(other)
        return FusionElement(self.ring, self.coefficients + other.coefficients)

    def __sub__(self, other: "FusionElement") -> "FusionElement":
        self._check_ring(other)
        return FusionElement(self.ring, self.coefficients - other.coefficients)

    def __mul__(self, other: "FusionElement") -> "FusionElement":
        self._check_ring(other)
        out = np.einsum(
            "i,j,ijk->k", self.coefficients, other.coefficients, self.ring.constants
        )
        return FusionElement(self.ring, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FusionElement)
            and self.ring is other.ring
            and np.array_equal(self.coefficients, other.coefficients)
        )

    def __hash__(self):
        return hash((id(self.ring), self.coefficients.tobytes()))

    def __repr__(self) -> str:
        terms = [
            f"{c}*{lab}" for c, lab in zip(self.coefficients, self.ring.labels) if c != 0
        ]
        return " + ".join(terms) if terms else "0"


def multiply(a: FusionElement, b: FusionElement) -> FusionElement:
    """Bilinear product of two elements of the same ring."""
    return a * b


@functools.lru_cache(maxsize=None)
def verlinde_ring(n: int) -> FusionRing:
    """The Verlinde fusion ring R_n with basis Delta_0 .. Delta_{n-1}."""
    if n < 1:
        raise FusionRingError(f"ring order must be positive, got {n}")
    constants = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k in product_support(i, j, n):
                constants[i, j, k] = 1
    labels = tuple(f"Δ_{k}" for k in range(n))
    return FusionRing(labels, constants)


def fib_ring() -> FusionRing:
    """Rank-2 Fibonacci ring: basis {1, x} with x*x = 1 + x."""
    constants = np.zeros((2, 2, 2), dtype=np.int64)
    constants[0] = np.eye(2, dtype=np.int64)
    constants[1, 0, 1] = 1
    constants[1, 1, 0] = 1
    constants[1, 1, 1] = 1
    return FusionRing(("1", "x"), constants)


@functools.lru_cache(maxsize=None)
def even_subring(ring: FusionRing) -> tuple[FusionRing, tuple[int, ...]]:
    """Even-indexed fusion subring of a Verlinde ring.

    Returns the subring together with the embedding map: new index k
    corresponds to old index ``embedding[k]`` = 2k.  Raises if the
    even-indexed constants are not closed (impossible for Verlinde
    rings, kept as a guard for malformed input).
    """
    evens = tuple(range(0, ring.rank, 2))
    odds = [k for k in range(ring.rank) if k % 2 == 1]
    block = ring.constants[np.ix_(evens, evens)]
    if odds and np.any(block[:, :, odds] != 0):
        raise FusionRingError("even-indexed basis elements are not multiplicatively closed")
    if any(ring.involution[e] not in evens for e in evens):
        raise FusionRingError("involution does not preserve the even-indexed basis")
    sub_constants = block[:, :, evens]
    labels = tuple(ring.labels[e] for e in evens)
    inv = tuple(evens.index(ring.involution[e]) for e in evens)
    unit = evens.index(ring.unit)
    return FusionRing(labels, sub_constants, unit, inv), evens


def verlinde_fp_closed_form(n: int, k: int) -> float:
    """FP dimension of Delta_k in R_n from the evaluation identity."""
    import math

    return evaluate(delta(k), 2.0 * math.cos(math.pi / (n + 1)))
