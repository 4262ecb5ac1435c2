"""Analytic spectra of diameter-4 trees and spectral projection data.

The nonzero eigenvalues in the centre's support are the roots of

    sum_j a_j / (x^2 - q_j) = 1,

one per interlacing interval (q_j, q_{j+1}) plus one above q_t.  The rest of
the spectrum is combinatorial: +-sqrt(q_j) with multiplicity a_j - 1 from
twin stems, and a zero eigenspace whose dimension depends on whether q_1 is
zero.  Projection weights for a designated vertex pair come from a dense
eigendecomposition; trees too large for that are reduced exactly through the
symmetrized quotient of the orbit partition that keeps the pair's vertices
as singleton cells (the reduced subspace is adjacency-invariant and contains
both basis vectors, so the pair's spectral data is preserved exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import InterlacingViolated, NotStronglyCospectral, RootNotConverged
from .exact import Radical, recognize_radical
from .tree import LabeledTree, TreeParams, adjacency_matrix, build_tree, validate_params

#: trees above this vertex count bypass the dense oracle for pair projections
DENSE_LIMIT = 4096

#: eigenvalues closer than this are treated as one degenerate eigenspace
GROUP_TOL = 1e-9

#: projection columns with norm at most this are outside the support
SUPPORT_TOL = 1e-9

#: x^2 within this of an integer is stored as an exact radical
RADICAL_TOL = 1e-9

_ROOT_MAXITER = 200


def _secular(u: float, q, a) -> float:
    return sum(aj / (u - qj) for qj, aj in zip(q, a)) - 1.0


def _secular_prime(u: float, q, a) -> float:
    return -sum(aj / (u - qj) ** 2 for qj, aj in zip(q, a))


def _polish_root(u0: float, q, a) -> mpmath.mpf:
    """A few Newton steps at high precision from a double-accurate start."""
    with mpmath.workdps(50):
        u = mpmath.mpf(u0)
        for _ in range(6):
            f = _secular(u, q, a)
            fp = _secular_prime(u, q, a)
            step = f / fp
            u -= step
            if abs(step) < abs(u) * mpmath.mpf(10) ** -45:
                break
        if abs(_secular(u, q, a)) > 1e-12:
            raise RootNotConverged(f"secular residual too large near u={u0}")
        return u


def _bracketed_root(lo: float, hi: float, q, a) -> mpmath.mpf:
    """Bisection on a sign-changing bracket in u = x^2, then Newton polish."""
    flo, fhi = _secular(lo, q, a), _secular(hi, q, a)
    if fhi == 0.0:
        return _polish_root(hi, q, a)
    if flo <= 0.0 or fhi >= 0.0:
        raise RootNotConverged(f"bracket [{lo}, {hi}] does not enclose a root")
    for _ in range(_ROOT_MAXITER):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _secular(mid, q, a) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, abs(hi)):
            break
    return _polish_root(0.5 * (lo + hi), q, a)


@dataclass(frozen=True)
class SupportEigenvalues:
    """Positive roots of the secular equation, ascending, with exact forms."""

    lambdas: tuple[Radical | float, ...]
    includes_zero: bool

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(l.value if isinstance(l, Radical) else l for l in self.lambdas)


def support_eigenvalues(p: TreeParams, *, allow_degenerate: bool = False) -> SupportEigenvalues:
    """Solve the secular equation on each interlacing interval.

    The bracket margins are exact: with integer parameters the root is at
    distance at least a_j/(1 + sum a) from each pole, so the endpoints
    q_j + a_j/(1 + sum a) and q_{j+1} - a_{j+1}/(1 + sum a) always have
    opposite signs.
    """
    validate_params(p, allow_degenerate=allow_degenerate)
    q, a = p.q, p.a
    total = sum(a)
    margin = 1.0 + total
    roots: list[Radical | float] = []
    for j in range(p.t):
        lo = q[j] + a[j] / margin
        if j + 1 < p.t:
            hi = q[j + 1] - a[j + 1] / margin
        else:
            hi = q[j] + float(total)
        u = _bracketed_root(lo, hi, q, a)
        uf = float(u)
        if abs(uf - round(uf)) < RADICAL_TOL and round(uf) > 0:
            roots.append(Radical.from_square(round(uf)))
        else:
            roots.append(float(mpmath.sqrt(u)))
    return SupportEigenvalues(lambdas=tuple(roots), includes_zero=q[0] >= 1)


def stems_from_spectrum(q, lambda_sq) -> list[float]:
    """Solve sum_j a_j/(lam_i^2 - q_j) = 1 for the stem counts a_j.

    Closed form: a_j = prod_i (lam_i^2 - q_j) / prod_{i != j} (q_i - q_j),
    valid under the interlacing ordering of the inputs.
    """
    q = [float(v) for v in q]
    lam2 = [float(v) for v in lambda_sq]
    if len(q) != len(lam2) or not q:
        raise InterlacingViolated("q and lambda_sq must be equal-length and nonempty")
    seq: list[float] = []
    for qi, li in zip(q, lam2):
        seq.append(qi)
        seq.append(li)
    if q[0] < 0 or any(seq[i] >= seq[i + 1] for i in range(len(seq) - 1)):
        raise InterlacingViolated(f"need 0 <= q_1 < lam_1^2 < q_2 < ... , got q={q}, lam^2={lam2}")
    out = []
    for j in range(len(q)):
        num = 1.0
        for li in lam2:
            num *= li - q[j]
        den = 1.0
        for i in range(len(q)):
            if i != j:
                den *= q[i] - q[j]
        out.append(num / den)
    return out


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    exact: Radical | None
    multiplicity: int


@dataclass(frozen=True)
class SpectrumMultiset:
    """Complete eigenvalue multiset, ascending by value."""

    entries: tuple[SpectrumEntry, ...]

    def total(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def expanded(self) -> np.ndarray:
        return np.array([e.value for e in self.entries for _ in range(e.multiplicity)])


def full_spectrum(p: TreeParams, *, allow_degenerate: bool = False) -> SpectrumMultiset:
    """Support roots (each simple), twin values +-sqrt(q_j), and the zero space.

    The zero multiplicity is 1 + sum a_j (q_j - 1) when q_1 >= 1 (zero then
    sits in the centre's support) and a_1 - 1 + sum_{j>=2} a_j (q_j - 1) when
    q_1 = 0.
    """
    sup = support_eigenvalues(p, allow_degenerate=allow_degenerate)
    q, a = p.q, p.a
    entries: list[SpectrumEntry] = []
    for lam in sup.lambdas:
        if isinstance(lam, Radical):
            entries.append(SpectrumEntry(lam.value, lam, 1))
            entries.append(SpectrumEntry((-lam).value, -lam, 1))
        else:
            entries.append(SpectrumEntry(lam, None, 1))
            entries.append(SpectrumEntry(-lam, None, 1))
    for qj, aj in zip(q, a):
        if qj >= 1 and aj >= 2:
            r = Radical.from_square(qj)
            entries.append(SpectrumEntry(r.value, r, aj - 1))
            entries.append(SpectrumEntry((-r).value, -r, aj - 1))
    if q[0] >= 1:
        zero_mult = 1 + sum(aj * (qj - 1) for qj, aj in zip(q, a))
    else:
        zero_mult = a[0] - 1 + sum(aj * (qj - 1) for qj, aj in zip(q[1:], a[1:]))
    if zero_mult > 0:
        entries.append(SpectrumEntry(0.0, Radical.zero(), zero_mult))
    entries.sort(key=lambda e: e.value)
    return SpectrumMultiset(entries=tuple(entries))


@dataclass(frozen=True)
class EigenLine:
    """One eigenvalue's projection data for a designated pair (x, y).

    ``sign`` records the strong-cospectrality relation at this eigenvalue:
    +1 when E e_x = E e_y, -1 when E e_x = -E e_y, 0 when neither holds, and
    None when the eigenvalue is outside both supports.
    """

    value: float
    exact: Radical | None
    s_x: float
    s_y: float
    cross: float
    norm_x: float
    norm_y: float
    sign: int | None


@dataclass(frozen=True)
class ProjectionData:
    x: int
    y: int
    n: int
    lines: tuple[EigenLine, ...]

    def support_x(self) -> tuple[EigenLine, ...]:
        return tuple(l for l in self.lines if l.norm_x > SUPPORT_TOL)

    def support_y(self) -> tuple[EigenLine, ...]:
        return tuple(l for l in self.lines if l.norm_y > SUPPORT_TOL)

    def is_strongly_cospectral(self) -> bool:
        sup = [l for l in self.lines if l.sign is not None]
        return self.x != self.y and bool(sup) and all(l.sign in (1, -1) for l in sup)

    def sigma_partition(self) -> tuple[tuple[EigenLine, ...], tuple[EigenLine, ...]]:
        """Support split by the sign relation; raises unless strongly cospectral."""
        sup = [l for l in self.lines if l.sign is not None]
        if self.x == self.y or not sup or any(l.sign == 0 for l in sup):
            raise NotStronglyCospectral(
                f"vertices {self.x} and {self.y} are not strongly cospectral"
            )
        plus = tuple(l for l in sup if l.sign == 1)
        minus = tuple(l for l in sup if l.sign == -1)
        return plus, minus


def _group_indices(values: np.ndarray, tol: float = GROUP_TOL) -> list[np.ndarray]:
    """Split sorted eigenvalues into degenerate groups at gaps above tol."""
    cuts = np.flatnonzero(np.diff(values) > tol)
    return np.split(np.arange(len(values)), cuts + 1)


def _classify_sign(ux: np.ndarray, uy: np.ndarray) -> int | None:
    nx = float(np.linalg.norm(ux))
    ny = float(np.linalg.norm(uy))
    if nx <= SUPPORT_TOL and ny <= SUPPORT_TOL:
        return None
    if float(np.linalg.norm(ux - uy)) <= SUPPORT_TOL:
        return 1
    if float(np.linalg.norm(ux + uy)) <= SUPPORT_TOL:
        return -1
    return 0


def _lines_from_eigensystem(values: np.ndarray, vectors: np.ndarray, x: int, y: int) -> tuple[EigenLine, ...]:
    lines = []
    for g in _group_indices(values):
        V = vectors[:, g]
        ux = V[x, :].copy()
        uy = V[y, :].copy()
        lam = float(np.mean(values[g]))
        exact = recognize_radical(lam, RADICAL_TOL)
        lines.append(
            EigenLine(
                value=exact.value if exact is not None else lam,
                exact=exact,
                s_x=float(ux @ ux),
                s_y=float(uy @ uy),
                cross=float(ux @ uy),
                norm_x=float(np.linalg.norm(ux)),
                norm_y=float(np.linalg.norm(uy)),
                sign=_classify_sign(ux, uy),
            )
        )
    return tuple(lines)


def projections_from_matrix(A: np.ndarray, x: int, y: int) -> ProjectionData:
    """Dense-oracle pair projections for an arbitrary symmetric 0/1 matrix.

    Works on any graph; this is the single source of truth the analytic
    paths are tested against.  Note E e_x coordinates in the eigenvector
    basis are the rows of the eigenvector matrix, so column comparisons
    reduce to row comparisons.
    """
    values, vectors = np.linalg.eigh(A)
    return ProjectionData(x=x, y=y, n=A.shape[0], lines=_lines_from_eigensystem(values, vectors, x, y))


def _pair_cells(tree: LabeledTree, x: int, y: int) -> list[list[int]]:
    """Orbit partition refined so x, y (and their branches) are distinguished.

    Every cell has a constant number of neighbours in every other cell, so
    the span of the normalized indicators is adjacency-invariant; keeping
    {x} and {y} as singleton cells puts e_x and e_y inside that span.
    """
    special: set[int] = set()
    cells: list[list[int]] = []
    leaf_parent = tree.leaf_parent()
    stem_leaves = tree.leaves_of_stem()

    for v in sorted({x, y}):
        cells.append([v])
        special.add(v)
    for v in sorted({x, y}):
        if v in leaf_parent and leaf_parent[v] not in special:
            s = leaf_parent[v]
            cells.append([s])
            special.add(s)
    distinguished_stems = [s for s, _ in tree.stems if s in special]
    for s in distinguished_stems:
        rest = [l for l in stem_leaves[s] if l not in special]
        if rest:
            cells.append(rest)
            special.update(rest)
    if tree.centre not in special:
        cells.append([tree.centre])
        special.add(tree.centre)
    for j in range(tree.params.t):
        generic = [s for s, jj in tree.stems if jj == j and s not in special]
        if generic:
            cells.append(generic)
            leaves = [l for s in generic for l in stem_leaves[s]]
            if leaves:
                cells.append(leaves)
    return cells


def projections_from_quotient(p: TreeParams, x: int, y: int, *, allow_degenerate: bool = False) -> ProjectionData:
    """Pair projections via the symmetrized quotient of the orbit partition.

    Exact for any diameter-4 tree and any vertex pair; the quotient has at
    most 5 + 2t cells, so this scales to trees far beyond the dense oracle.
    """
    tree = build_tree(p, allow_degenerate=allow_degenerate)
    cells = _pair_cells(tree, x, y)
    k = len(cells)
    cell_of = {}
    for i, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = i
    sizes = np.array([len(c) for c in cells], dtype=float)
    counts = np.zeros((k, k))
    for u, v in tree.edges:
        counts[cell_of[u], cell_of[v]] += 1.0
        counts[cell_of[v], cell_of[u]] += 1.0
    B = counts / np.sqrt(np.outer(sizes, sizes))
    values, vectors = np.linalg.eigh(B)
    cx, cy = cell_of[x], cell_of[y]
    return ProjectionData(x=x, y=y, n=tree.n, lines=_lines_from_eigensystem(values, vectors, cx, cy))


@lru_cache(maxsize=32)
def _dense_eigensystem(p: TreeParams, allow_degenerate: bool) -> tuple[np.ndarray, np.ndarray]:
    A = adjacency_matrix(build_tree(p, allow_degenerate=allow_degenerate))
    return np.linalg.eigh(A)


@lru_cache(maxsize=256)
def projection_data(
    p: TreeParams,
    x: int,
    y: int,
    method: str = "auto",
    allow_degenerate: bool = False,
) -> ProjectionData:
    """Pair projections for a parameterized tree.

    method: 'dense', 'quotient', or 'auto' (dense up to DENSE_LIMIT
    vertices, quotient beyond).  The two paths agree to machine precision;
    the dense one is the oracle, the quotient one is what makes the largest
    worked examples tractable.
    """
    from .tree import vertex_count

    if method == "auto":
        method = "dense" if vertex_count(p) <= DENSE_LIMIT else "quotient"
    if method == "quotient":
        return projections_from_quotient(p, x, y, allow_degenerate=allow_degenerate)
    if method != "dense":
        raise ValueError(f"unknown projection method {method!r}")
    values, vectors = _dense_eigensystem(p, allow_degenerate)
    return ProjectionData(
        x=x, y=y, n=vectors.shape[0], lines=_lines_from_eigensystem(values, vectors, x, y)
    )
