"""Parameterization and explicit construction of diameter-4 trees.

A diameter-4 tree is a centre vertex, a number of adjacent stems, and leaves
attached to the stems.  Stems are grouped into t classes by their leaf count:
class j holds a[j] stems with q[j] leaves each, q strictly increasing.  A
leaf hanging directly off the centre is modelled as a stem with 0 leaves
(q[0] = 0), so the parameter pair (q, a) determines the tree up to
isomorphism.

Vertex ids are deterministic: centre = 0, then stems grouped by ascending
class, then leaves grouped by stem.  Test vectors and CLI output rely on
this numbering being stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DiameterNot4, MalformedParams, NonIncreasingQ, NonPositiveA, QwTreeError


@dataclass(frozen=True)
class TreeParams:
    """Leaf counts q (strictly increasing) and stem counts a, one entry per class."""

    q: tuple[int, ...]
    a: tuple[int, ...]

    @classmethod
    def of(cls, q: Iterable[int], a: Iterable[int]) -> "TreeParams":
        return cls(tuple(int(v) for v in q), tuple(int(v) for v in a))

    @property
    def t(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class VertexRole:
    """Role of a vertex: 'centre', 'stem' or 'leaf', with its class index."""

    role: str
    class_index: int | None


def validate_params(p: TreeParams, *, allow_degenerate: bool = False) -> None:
    """Raise the first violated invariant; return None when p is valid.

    ``allow_degenerate`` skips only the diameter-4 requirement, which admits
    stars and double stars for oracle-only test constructions (P2, P3).
    """
    if len(p.q) == 0 or len(p.q) != len(p.a):
        raise MalformedParams(
            f"q and a must be equal-length nonempty tuples, got {len(p.q)} and {len(p.a)}"
        )
    if any(not isinstance(v, int) for v in p.q + p.a):
        raise MalformedParams("q and a entries must be integers")
    if p.q[0] < 0 or any(p.q[j] >= p.q[j + 1] for j in range(p.t - 1)):
        raise NonIncreasingQ(f"q must be nonnegative and strictly increasing, got {p.q}")
    if any(aj < 1 for aj in p.a):
        raise NonPositiveA(f"every a entry must be >= 1, got {p.a}")
    if not allow_degenerate:
        leafy = sum(aj for qj, aj in zip(p.q, p.a) if qj >= 1)
        if leafy < 2:
            raise DiameterNot4(
                f"need at least two stems with a leaf for diameter 4, got {leafy}"
            )


def is_valid(p: TreeParams) -> bool:
    try:
        validate_params(p)
    except QwTreeError:
        return False
    return True


def vertex_count(p: TreeParams) -> int:
    """1 + sum over classes of a[j]*(q[j]+1)."""
    return 1 + sum(aj * (qj + 1) for qj, aj in zip(p.q, p.a))


@dataclass(frozen=True)
class LabeledTree:
    """Explicit vertex/edge structure with role labels.

    ``stems`` holds (vertex, class index) in id order, ``leaves`` holds
    (vertex, parent stem) in id order.
    """

    n: int
    centre: int
    stems: tuple[tuple[int, int], ...]
    leaves: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]
    params: TreeParams

    def role(self, v: int) -> VertexRole:
        if v == self.centre:
            return VertexRole("centre", None)
        j = self.stem_class().get(v)
        if j is not None:
            return VertexRole("stem", j)
        s = self.leaf_parent().get(v)
        if s is None:
            raise KeyError(f"unknown vertex {v}")
        return VertexRole("leaf", self.stem_class()[s])

    def stem_class(self) -> dict[int, int]:
        return dict(self.stems)

    def leaf_parent(self) -> dict[int, int]:
        return dict(self.leaves)

    def leaves_of_stem(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {s: [] for s, _ in self.stems}
        for leaf, s in self.leaves:
            out[s].append(leaf)
        return {s: tuple(v) for s, v in out.items()}

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_params(self) -> TreeParams:
        """Recover (q, a) from the labeled structure (roundtrip check)."""
        per_stem = {s: 0 for s, _ in self.stems}
        for _, s in self.leaves:
            per_stem[s] += 1
        counts: dict[int, int] = {}
        for s, _ in self.stems:
            counts[per_stem[s]] = counts.get(per_stem[s], 0) + 1
        qs = sorted(counts)
        return TreeParams.of(qs, [counts[q] for q in qs])


def build_tree(p: TreeParams, *, allow_degenerate: bool = False) -> LabeledTree:
    validate_params(p, allow_degenerate=allow_degenerate)
    stems: list[tuple[int, int]] = []
    edges: list[tuple[int, int]] = []
    vid = 1
    for j, aj in enumerate(p.a):
        for _ in range(aj):
            stems.append((vid, j))
            edges.append((0, vid))
            vid += 1
    leaves: list[tuple[int, int]] = []
    for s, j in stems:
        for _ in range(p.q[j]):
            leaves.append((vid, s))
            edges.append((s, vid))
            vid += 1
    return LabeledTree(
        n=vid,
        centre=0,
        stems=tuple(stems),
        leaves=tuple(leaves),
        edges=tuple(edges),
        params=p,
    )


def adjacency_matrix(tree: LabeledTree) -> np.ndarray:
    """Dense symmetric 0/1 adjacency matrix in the deterministic vertex order."""
    A = np.zeros((tree.n, tree.n))
    for u, v in tree.edges:
        A[u, v] = A[v, u] = 1.0
    return A


def eccentricity(tree: LabeledTree, v: int) -> int:
    """BFS eccentricity of v (used by structural tests; O(n))."""
    adj: dict[int, list[int]] = {u: [] for u in range(tree.n)}
    for u, w in tree.edges:
        adj[u].append(w)
        adj[w].append(u)
    dist = {v: 0}
    frontier = [v]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    return max(dist.values())
