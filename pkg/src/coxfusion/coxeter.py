"""Coxeter diagrams, geometric representations and Coxeter planes.

Named diagrams follow the vertex orderings of the standard
classification tables: vertex 1 is a leaf and every prefix {1..k} is a
connected subtree, so the parity classes of graph distance from vertex 1
bipartition the tree.  Indices are 0-based in code; reports render them
1-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .linalg import matrix_order

#: Sentinel for an infinite bond order inside integer Coxeter matrices.
INFINITE = 0


class CoxeterError(ValueError):
    """Illegal diagram data or a precondition violation."""


class CoxeterDiagram:
    """A Coxeter matrix with a fixed vertex ordering and a display name."""

    def __init__(self, coxeter_matrix, name: str = "custom"):
        mat = np.array(coxeter_matrix, dtype=np.int64)
        n = mat.shape[0]
        if mat.shape != (n, n):
            raise CoxeterError(f"Coxeter matrix must be square, got shape {mat.shape}")
        if not np.array_equal(mat, mat.T):
            raise CoxeterError("Coxeter matrix must be symmetric")
        if np.any(np.diag(mat) != 1):
            raise CoxeterError("diagonal entries of a Coxeter matrix must be 1")
        off = mat[~np.eye(n, dtype=bool)]
        if np.any((off < 2) & (off != INFINITE)):
            raise CoxeterError("off-diagonal orders must be >= 2 (or infinite)")
        mat.setflags(write=False)
        self.coxeter_matrix = mat
        self.name = name

    @property
    def rank(self) -> int:
        return self.coxeter_matrix.shape[0]

    def order(self, i: int, j: int) -> int:
        """Bond order m(i, j); INFINITE encodes an unbounded order."""
        return int(self.coxeter_matrix[i, j])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.order(i, j)
                if m >= 3 or m == INFINITE:
                    out.append((i, j))
        return out

    def adjacency_matrix(self) -> np.ndarray:
        """0/1 adjacency of the underlying graph, exact integers."""
        adj = np.zeros((self.rank, self.rank), dtype=np.int64)
        for i, j in self.edges():
            adj[i, j] = adj[j, i] = 1
        return adj

    def has_infinite_bond(self) -> bool:
        off = self.coxeter_matrix[~np.eye(self.rank, dtype=bool)]
        return bool(np.any(off == INFINITE))

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj = self.adjacency_matrix()
        while stack:
            v = stack.pop()
            for w in np.nonzero(adj[v])[0]:
                if int(w) not in seen:
                    seen.add(int(w))
                    stack.append(int(w))
        return len(seen) == self.rank

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges()) == self.rank - 1

    def is_ade(self) -> bool:
        """Simply laced and of finite type (adjacency spectral radius < 2)."""
        off = self.coxeter_matrix[~np.eye(self.rank, dtype=bool)]
        if np.any((off != 2) & (off != 3)):
            return False
        if not self.is_connected():
            return False
        top = float(np.max(np.linalg.eigvalsh(self.adjacency_matrix().astype(float))))
        return top < 2.0 - 1e-9

    def __repr__(self) -> str:
        return f"CoxeterDiagram({self.name}, rank={self.rank})"


def _path_matrix(n: int) -> np.ndarray:
    mat = np.full((n, n), 2, dtype=np.int64)
    np.fill_diagonal(mat, 1)
    for i in range(n - 1):
        mat[i, i + 1] = mat[i + 1, i] = 3
    return mat


def diagram(family: str, rank: int | None = None, m: int | None = None) -> CoxeterDiagram:
    """Named finite irreducible diagram with the classification ordering.

    ``family`` is one of A, B, D, E, F, H, I2; ``m`` is the bond order
    for I2.  Raises CoxeterError for illegal (family, rank) pairs.
    """
    family = family.upper()
    if family == "I2":
        if rank not in (None, 2):
            raise CoxeterError("I2 diagrams have rank 2")
        if m is None or m < 3:
            raise CoxeterError(f"I2 requires a bond order m >= 3, got {m}")
        mat = np.array([[1, m], [m, 1]], dtype=np.int64)
        return CoxeterDiagram(mat, f"I2({m})")
    if rank is None:
        raise CoxeterError(f"family {family} requires a rank")
    if family == "A":
        if rank < 1:
            raise CoxeterError(f"A_n requires n >= 1, got {rank}")
        return CoxeterDiagram(_path_matrix(rank), f"A{rank}")
    if family == "B":
        if rank < 2:
            raise CoxeterError(f"B_n requires n >= 2, got {rank}")
        mat = _path_matrix(rank)
        mat[0, 1] = mat[1, 0] = 4
        return CoxeterDiagram(mat, f"B{rank}")
    if family == "D":
        if rank < 4:
            raise CoxeterError(f"D_n requires n >= 4, got {rank}")
        # Chain n-(n-1)-...-4-2 with leaves 1 and 3 on vertex 2.
        mat = np.full((rank, rank), 2, dtype=np.int64)
        np.fill_diagonal(mat, 1)
        edges = [(0, 1), (1, 2), (1, 3)] + [(i, i + 1) for i in range(3, rank - 1)]
        for i, j in edges:
            mat[i, j] = mat[j, i] = 3
        return CoxeterDiagram(mat, f"D{rank}")
    if family == "E":
        if rank not in (6, 7, 8):
            raise CoxeterError(f"E_n exists only for n in {{6, 7, 8}}, got {rank}")
        mat = np.full((rank, rank), 2, dtype=np.int64)
        np.fill_diagonal(mat, 1)
        branch = {6: 2, 7: 3, 8: 4}[rank]  # trivalent vertex, 0-based
        edges = [(i, i + 1) for i in range(rank - 2)] + [(branch, rank - 1)]
        for i, j in edges:
            mat[i, j] = mat[j, i] = 3
        return CoxeterDiagram(mat, f"E{rank}")
    if family == "F":
        if rank != 4:
            raise CoxeterError(f"F_n exists only for n = 4, got {rank}")
        mat = _path_matrix(4)
        mat[1, 2] = mat[2, 1] = 4
        return CoxeterDiagram(mat, "F4")
    if family == "H":
        if rank not in (3, 4):
            raise CoxeterError(f"H_n exists only for n in {{3, 4}}, got {rank}")
        mat = _path_matrix(rank)
        mat[0, 1] = mat[1, 0] = 5
        return CoxeterDiagram(mat, f"H{rank}")
    raise CoxeterError(f"unknown diagram family {family!r}")


_SPEC_RE = re.compile(r"^([ABDEFH])_?(\d+)$|^I_?2\((\d+)\)$", re.IGNORECASE)


def parse_diagram(spec: str) -> CoxeterDiagram:
    """Parse a diagram tag such as ``A3``, ``D4``, ``E8`` or ``I2(7)``."""
    match = _SPEC_RE.match(spec.strip())
    if not match:
        raise CoxeterError(f"cannot parse diagram spec {spec!r}")
    if match.group(3) is not None:
        return diagram("I2", m=int(match.group(3)))
    return diagram(match.group(1), int(match.group(2)))


def cartan_form(d: CoxeterDiagram) -> np.ndarray:
    """Symmetric bilinear form matrix with entries -2cos(pi/m(i, j))."""
    n = d.rank
    form = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            m = d.order(i, j)
            form[i, j] = -2.0 if m == INFINITE else -2.0 * math.cos(math.pi / m)
    return form


def reflection_matrices(d: CoxeterDiagram) -> list[np.ndarray]:
    """Matrices of the simple reflections s_i in the alpha basis."""
    form = cartan_form(d)
    n = d.rank
    out = []
    for i in range(n):
        mat = np.eye(n)
        mat[i, :] -= form[i, :]
        out.append(mat)
    return out


@dataclass(frozen=True)
class Bipartition:
    """Parity classes of graph distance from vertex 1 (index 0)."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]


def bipartition(d: CoxeterDiagram) -> Bipartition:
    if not d.is_tree():
        raise CoxeterError("bipartition requires a tree-shaped diagram")
    adj = d.adjacency_matrix()
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in np.nonzero(adj[v])[0]:
                w = int(w)
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    plus = tuple(v for v in range(d.rank) if dist[v] % 2 == 0)
    minus = tuple(v for v in range(d.rank) if dist[v] % 2 == 1)
    return Bipartition(plus, minus)


def distinguished_coxeter_element(d: CoxeterDiagram) -> np.ndarray:
    """gamma = (product of even-class reflections) * (odd-class product)."""
    parts = bipartition(d)
    refl = reflection_matrices(d)
    gamma_plus = np.eye(d.rank)
    for k in parts.plus:
        gamma_plus = gamma_plus @ refl[k]
    gamma_minus = np.eye(d.rank)
    for k in parts.minus:
        gamma_minus = gamma_minus @ refl[k]
    return gamma_plus @ gamma_minus


def coxeter_number(d: CoxeterDiagram, cap: int = 1000) -> int:
    """Order of the distinguished Coxeter element, by matrix powers."""
    if d.has_infinite_bond():
        raise CoxeterError("Coxeter number requires a finite type (no infinite bonds)")
    if not d.is_connected():
        raise CoxeterError("Coxeter number requires an irreducible (connected) diagram")
    try:
        return matrix_order(distinguished_coxeter_element(d), cap=cap)
    except ArithmeticError as exc:
        raise CoxeterError(f"Coxeter element order exceeds {cap}; non-finite type?") from exc


@dataclass(frozen=True)
class CoxeterPlane:
    """Coxeter number, plane-spanning eigenvectors and the element gamma.

    ``u_plus`` and ``u_minus`` are normalised to unit length in the
    bilinear-form norm, so that projection coordinates taken against
    them are isometric on the plane and gamma acts on them as a
    Euclidean rotation of order h.  Sign convention: u_plus is
    entrywise positive; u_minus is positive at vertex 1.
    """

    h: int
    u_plus: np.ndarray
    u_minus: np.ndarray
    gamma: np.ndarray
    form: np.ndarray


def coxeter_plane(d: CoxeterDiagram, gap_tol: float = 1e-6) -> CoxeterPlane:
    if d.rank < 2:
        raise CoxeterError("Coxeter plane requires rank >= 2")
    h = coxeter_number(d)
    form = cartan_form(d)
    sym = 2.0 * np.eye(d.rank) - form
    evals, evecs = np.linalg.eigh(sym)
    target = 2.0 * math.cos(math.pi / h)
    vectors = []
    for sign in (1.0, -1.0):
        idx = int(np.argmin(np.abs(evals - sign * target)))
        if abs(evals[idx] - sign * target) > 1e-9:
            raise CoxeterError(
                f"no eigenvalue of 2I-A near {sign * target:.12g} (closest: {evals[idx]:.12g})"
            )
        others = np.delete(evals, idx)
        if np.min(np.abs(others - evals[idx])) <= gap_tol:
            raise CoxeterError(f"eigenvalue {sign * target:.12g} is not simple")
        vectors.append(evecs[:, idx].copy())
    u_plus, u_minus = vectors
    for vec in (u_plus, u_minus):
        quad = float(vec @ form @ vec)
        if quad < 1e-12:
            raise CoxeterError("degenerate form direction on the plane")
        vec /= math.sqrt(quad)
    if u_plus[int(np.argmax(np.abs(u_plus)))] < 0:
        u_plus = -u_plus
    if np.any(u_plus <= 0):
        raise CoxeterError("plus eigenvector is not entrywise positive")
    if u_minus[0] < 0:
        u_minus = -u_minus
    gamma = distinguished_coxeter_element(d)
    for arr in (u_plus, u_minus, gamma, form):
        arr.setflags(write=False)
    return CoxeterPlane(h=h, u_plus=u_plus, u_minus=u_minus, gamma=gamma, form=form)


def plane_restriction(p: CoxeterPlane) -> np.ndarray:
    """2x2 matrix of gamma on the plane in the form-orthonormal basis."""
    cols = []
    for vec in (p.u_plus, p.u_minus):
        image = p.gamma @ vec
        cols.append([float(p.u_plus @ p.form @ image), float(p.u_minus @ p.form @ image)])
    return np.array(cols).T


def rotation_angle(p: CoxeterPlane) -> float:
    """Signed rotation angle of gamma on the plane, in radians."""
    g = plane_restriction(p)
    return math.atan2(g[1, 0], g[0, 0])


def root_system(d: CoxeterDiagram, cap: int = 10**6) -> list[np.ndarray]:
    """Closure of the simple roots under all reflections (alpha basis).

    Breadth-first closure with deduplication at 1e-9; terminates for
    finite types, raises once the cap is exceeded.
    """
    if d.has_infinite_bond():
        raise CoxeterError("root system enumeration requires a finite type")
    refl = reflection_matrices(d)
    roots: list[np.ndarray] = []
    index: dict[tuple, int] = {}

    def lookup(vec: np.ndarray) -> int | None:
        key = tuple(np.round(vec, 6) + 0.0)
        if key in index:
            return index[key]
        for pos, known in enumerate(roots):
            if np.max(np.abs(known - vec)) < 1e-9:
                index[key] = pos
                return pos
        return None

    frontier = []
    for i in range(d.rank):
        alpha = np.zeros(d.rank)
        alpha[i] = 1.0
        roots.append(alpha)
        index[tuple(np.round(alpha, 6) + 0.0)] = len(roots) - 1
        frontier.append(alpha)
    while frontier:
        nxt = []
        for vec in frontier:
            for s in refl:
                image = s @ vec
                if lookup(image) is None:
                    roots.append(image)
                    index[tuple(np.round(image, 6) + 0.0)] = len(roots) - 1
                    nxt.append(image)
                    if len(roots) > cap:
                        raise CoxeterError(f"root closure exceeded {cap} vectors")
        frontier = nxt
    return roots


def project_to_plane(vectors, p: CoxeterPlane, form: np.ndarray | None = None) -> np.ndarray:
    """Orthogonal (form-metric) projection of vectors onto the plane.

    Coordinates are <v|u+>/<u+|u+> and <v|u->/<u-|u-> in the bilinear
    form; with the form-unit eigenvectors of ``coxeter_plane`` this is
    an isometry of the plane.
    """
    if form is None:
        form = p.form
    quad_plus = float(p.u_plus @ form @ p.u_plus)
    quad_minus = float(p.u_minus @ form @ p.u_minus)
    if min(quad_plus, quad_minus) < 1e-12:
        raise CoxeterError("degenerate form direction; cannot project")
    axis_plus = form @ p.u_plus / quad_plus
    axis_minus = form @ p.u_minus / quad_minus
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    return np.column_stack([vectors @ axis_plus, vectors @ axis_minus])
