"""Core graph machinery for the labeling algorithms.

Vertices are dense integer ids 0..n-1.  Neighborhoods are kept both as
sorted tuples and as int bitmasks; everything downstream (labelers,
validators, exact oracles) works on the bitmasks, so popcounts and
set algebra stay cheap even for the sweep harnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction input."""


class CapExceededError(ValueError):
    """Instance is larger than the cap configured for an exact computation."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


class Graph:
    """Simple undirected graph, immutable once built.

    The constructor trusts its input (no self loops, symmetric rows);
    use :func:`build_graph` for validated construction from an edge list.
    """

    __slots__ = ("n", "adj", "adj_mask", "m", "_dist2")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(row)) for row in adj)
        self.adj_mask: tuple[int, ...] = tuple(
            sum(1 << u for u in row) for row in self.adj
        )
        self.m = sum(len(row) for row in self.adj) // 2
        self._dist2: tuple[int, ...] | None = None

    @classmethod
    def from_neighbor_masks(cls, n: int, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = n
        g.adj = tuple(tuple(iter_bits(mk)) for mk in masks)
        g.adj_mask = tuple(masks)
        g.m = sum(mk.bit_count() for mk in masks) // 2
        g._dist2 = None
        return g

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_mask[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def dist2_masks(self) -> tuple[int, ...]:
        """Per-vertex bitmask of vertices at distance exactly 2."""
        if self._dist2 is None:
            out = []
            for v in range(self.n):
                reach = 0
                for u in self.adj[v]:
                    reach |= self.adj_mask[u]
                out.append(reach & ~(self.adj_mask[v] | (1 << v)))
            self._dist2 = tuple(out)
        return self._dist2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj_mask == other.adj_mask

    def __hash__(self) -> int:
        return hash((self.n, self.adj_mask))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphStats:
    """Parameters the span bounds are stated in.

    ``multiplicity`` is the maximum number of common neighbors over all
    unordered pairs of distinct vertices, adjacent or not;
    ``multiplicity_nonadjacent`` restricts the maximum to non-adjacent
    pairs.  ``omega`` is the exact clique number when it was computed,
    None when the instance exceeded the configured cap.
    """

    n: int
    m: int
    max_degree: int
    min_degree: int
    multiplicity: int
    multiplicity_nonadjacent: int
    is_connected: bool
    omega: int | None = None


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse.

    Raises GraphError for ids outside 0..n-1 or self loops.
    """
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph.from_neighbor_masks(n, masks)


def dist2_set(g: Graph, v: int) -> set[int]:
    """Vertices at distance exactly 2 from ``v`` in ``g``."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    return set(iter_bits(g.dist2_masks()[v]))


def square(g: Graph) -> Graph:
    """Graph on the same vertices with edges between all pairs at distance <= 2."""
    d2 = g.dist2_masks()
    return Graph.from_neighbor_masks(
        g.n, [g.adj_mask[v] | d2[v] for v in range(g.n)]
    )


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= g.adj_mask[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def compute_stats(g: Graph, omega_cap: int | None = 64) -> GraphStats:
    """Degree, multiplicity and connectivity statistics of ``g``.

    The clique number is computed exactly (branch and bound) only when
    ``omega_cap`` is given and n <= omega_cap; otherwise omega is None.
    """
    n = g.n
    degrees = [len(row) for row in g.adj]
    mu = 0
    mu_nonadj = 0
    for u in range(n):
        mask_u = g.adj_mask[u]
        for v in range(u + 1, n):
            common = (mask_u & g.adj_mask[v]).bit_count()
            if common > mu:
                mu = common
            if common > mu_nonadj and not mask_u >> v & 1:
                mu_nonadj = common
    omega: int | None = None
    if omega_cap is not None and n <= omega_cap:
        omega = clique_number_exact(g, cap=omega_cap)
    return GraphStats(
        n=n,
        m=g.m,
        max_degree=max(degrees, default=0),
        min_degree=min(degrees, default=0),
        multiplicity=mu,
        multiplicity_nonadjacent=mu_nonadj,
        is_connected=is_connected(g),
        omega=omega,
    )


def greedy_clique_mask(g: Graph) -> int:
    """Bitmask of a maximal clique found greedily; a lower-bound witness."""
    best = 0
    order = sorted(range(g.n), key=lambda v: -len(g.adj[v]))
    for start in order[: min(g.n, 8)]:
        mask = 1 << start
        cand = g.adj_mask[start]
        while cand:
            pick = -1
            pick_deg = -1
            for v in iter_bits(cand):
                d = (cand & g.adj_mask[v]).bit_count()
                if d > pick_deg:
                    pick, pick_deg = v, d
            mask |= 1 << pick
            cand &= g.adj_mask[pick]
        if mask.bit_count() > best.bit_count():
            best = mask
    return best


def clique_number_exact(g: Graph, cap: int = 64) -> int:
    """Exact clique number by branch and bound.

    Candidates are greedily colored at each node; a branch is cut when
    the current clique plus the candidate's color class index cannot
    beat the incumbent.  Raises CapExceededError when n > cap.
    """
    if g.n > cap:
        raise CapExceededError(
            f"instance too large for exact clique search: n={g.n} > cap={cap}"
        )
    n = g.n
    if n == 0:
        return 0
    adjm = g.adj_mask
    best = greedy_clique_mask(g).bit_count()

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if cand == 0:
            if size > best:
                best = size
            return
        order: list[tuple[int, int]] = []
        remaining = cand
        color = 0
        while remaining:
            color += 1
            pool = remaining
            while pool:
                lsb = pool & -pool
                v = lsb.bit_length() - 1
                pool &= ~adjm[v]
                pool ^= lsb
                remaining ^= lsb
                order.append((v, color))
        for v, c in reversed(order):
            if size + c <= best:
                return
            expand(cand & adjm[v], size + 1)
            cand ^= 1 << v

    expand((1 << n) - 1, 0)
    return best


def find_2k2(g: Graph) -> tuple[int, int, int, int] | None:
    """An induced pair of independent edges (a, b, c, d), or None.

    The returned quadruple satisfies: ab and cd are edges, and no edge
    joins {a, b} to {c, d}.
    """
    edges = list(g.edges())
    full = (1 << g.n) - 1
    for a, b in edges:
        closed = g.adj_mask[a] | g.adj_mask[b] | (1 << a) | (1 << b)
        rest = full & ~closed
        if not rest:
            continue
        for c in iter_bits(rest):
            other = g.adj_mask[c] & rest
            if other:
                d = (other & -other).bit_length() - 1
                return (a, b, c, d)
    return None


def is_2k2_free(g: Graph) -> bool:
    """True when no two edges are induced-disjoint (no induced 2K2)."""
    return find_2k2(g) is None
