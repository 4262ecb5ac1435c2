"""Strongly cospectral pairs of diameter-4 trees.

Strong cospectrality (E e_x = +-E e_y for every eigenprojection E) occurs in
exactly three shapes on these trees:

  A  the two stems of a class with a_j = 2,
  B  the two leaves of those stems when additionally q_j = 1 (the only
     twinless leaves at distance 2 from the centre),
  C  the two leaves of any 2-leaf stem, provided the centre has a leaf of
     its own (q_1 = 0 and some q_j = 2).

The classification is computed combinatorially from the parameters and the
sign partitions are read from the spectral oracle; an exhaustive
brute-force cross-check against eigenprojections lives in the verification
suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnknownFamily
from .spectrum import SUPPORT_TOL, ProjectionData, _group_indices, projection_data
from .tree import TreeParams, build_tree, validate_params


@dataclass(frozen=True)
class CospectralPair:
    """A strongly cospectral pair with its kind and sign partition.

    ``sigma_plus``/``sigma_minus`` are the support eigenvalues where the
    projections of the two vertices agree/differ by sign.
    """

    x: int
    y: int
    kind: str
    class_index: int
    stem: int | None
    sigma_plus: tuple[float, ...]
    sigma_minus: tuple[float, ...]


def _partition_values(data: ProjectionData) -> tuple[tuple[float, ...], tuple[float, ...]]:
    plus, minus = data.sigma_partition()
    return tuple(l.value for l in plus), tuple(l.value for l in minus)


def strongly_cospectral_pairs(p: TreeParams) -> tuple[CospectralPair, ...]:
    """All strongly cospectral pairs, kinds A then B then C, ascending ids."""
    validate_params(p)
    tree = build_tree(p)
    stems_by_class: dict[int, list[int]] = {}
    for s, j in tree.stems:
        stems_by_class.setdefault(j, []).append(s)
    stem_leaves = tree.leaves_of_stem()

    pairs: list[CospectralPair] = []

    def add(x: int, y: int, kind: str, j: int, stem: int | None) -> None:
        plus, minus = _partition_values(projection_data(p, x, y))
        pairs.append(
            CospectralPair(
                x=x, y=y, kind=kind, class_index=j, stem=stem,
                sigma_plus=plus, sigma_minus=minus,
            )
        )

    for j, aj in enumerate(p.a):
        if aj == 2:
            s1, s2 = stems_by_class[j]
            add(s1, s2, "A", j, None)
    for j, (qj, aj) in enumerate(zip(p.q, p.a)):
        if qj == 1 and aj == 2:
            s1, s2 = stems_by_class[j]
            add(stem_leaves[s1][0], stem_leaves[s2][0], "B", j, None)
    if p.q[0] == 0:
        for j, qj in enumerate(p.q):
            if qj == 2:
                for s in stems_by_class[j]:
                    l1, l2 = stem_leaves[s]
                    add(l1, l2, "C", j, s)
    return tuple(pairs)


def eigenvalue_support(p: TreeParams, x: int, *, allow_degenerate: bool = False) -> tuple[float, ...]:
    """Eigenvalues whose projection does not annihilate e_x, ascending."""
    data = projection_data(p, x, x, allow_degenerate=allow_degenerate)
    return tuple(l.value for l in data.support_x())


def sign_partition(
    p: TreeParams, x: int, y: int, *, allow_degenerate: bool = False
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """(sigma_plus, sigma_minus) for a strongly cospectral pair."""
    return _partition_values(projection_data(p, x, y, allow_degenerate=allow_degenerate))


def brute_force_pairs(A: np.ndarray, tol: float = SUPPORT_TOL) -> list[tuple[int, int]]:
    """All strongly cospectral pairs of an arbitrary symmetric matrix.

    Direct eigenprojection test over every vertex pair and every degenerate
    eigenspace; quadratic in n and used only as a verification oracle.
    """
    values, vectors = np.linalg.eigh(A)
    n = A.shape[0]
    rows = [vectors[v, :] for v in range(n)]
    groups = _group_indices(values)
    out = []
    for x in range(n):
        for y in range(x + 1, n):
            ok = True
            in_support = False
            for g in groups:
                ux, uy = rows[x][g], rows[y][g]
                nx, ny = np.linalg.norm(ux), np.linalg.norm(uy)
                if nx <= tol and ny <= tol:
                    continue
                in_support = True
                if np.linalg.norm(ux - uy) > tol and np.linalg.norm(ux + uy) > tol:
                    ok = False
                    break
            if ok and in_support:
                out.append((x, y))
    return out


def _is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def pgst_obstruction_check(family: str, **params) -> str:
    """Family-specific pretty-good-state-transfer verdict.

    Returns 'pgst', 'no_pgst' or 'undecided'.  Only the three implemented
    families are decided; everything else raises UnknownFamily.  The general
    integer-relation test for arbitrary spectra is deliberately out of
    scope, so 'undecided' is an honest answer, not a failure.
    """
    if family == "t3":
        try:
            k2, k3, q3 = int(params["k2"]), int(params["k3"]), int(params["q3"])
        except KeyError as e:
            raise UnknownFamily(f"t3 family needs k2, k3, q3 (missing {e})") from None
        from .readout import T3Family

        T3Family.build(k2, k3, q3)  # raises ConditionsViolated if not a family member
        if k2 % 2 == 1 and k3 % 2 == 1:
            return "pgst"
        return "no_pgst"
    if family == "dist4":
        try:
            q2 = int(params["q2"])
        except KeyError:
            raise UnknownFamily("dist4 family needs q2") from None
        if q2 < 3:
            raise UnknownFamily(f"dist4 family needs q2 >= 3, got {q2}")
        return "no_pgst" if _is_perfect_square(2 * q2 - 1) else "pgst"
    if family == "type_c":
        try:
            k = int(params["k"])
        except KeyError:
            raise UnknownFamily("type_c family needs k") from None
        if k <= 1:
            raise UnknownFamily(f"type_c family needs k > 1, got {k}")
        if k % 2 == 1:
            return "pgst"
        return "undecided"
    raise UnknownFamily(f"no implemented family named {family!r}")
