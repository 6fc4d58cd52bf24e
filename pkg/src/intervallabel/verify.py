"""Validation, exact oracles and structural-claim checks.

Everything here is deliberately independent of the greedy labelers: the
validator re-derives distances from the graph, the exact oracles search
label space directly, and the clique/coloring routines use separate
branch-and-bound code paths.  That way a bug in a labeler cannot hide
behind shared machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .graph import (
    CapExceededError,
    Graph,
    clique_number_exact,
    compute_stats,
    find_2k2,
    greedy_clique_mask,
    iter_bits,
    square,
)
from .labeling import (
    BoundReport,
    Labeling,
    LpqParams,
    circular_construction_bound,
    class_bound,
    greedy_lpq,
)
from .reps import (
    CircularArcRep,
    ContainmentRep,
    IntervalOrderRep,
    IntervalRep,
    Representation,
    derive_graph,
    minimal_elements,
    split_circular,
)

VARIANTS = ("L1", "L2", "L3")


@dataclass(frozen=True)
class Violation:
    """One failed separation constraint.

    ``kind`` is "adjacent" for the p-condition on an edge, "distance2"
    for the q-condition at distance exactly 2 (or <= 2 under L3), and
    "common-neighbor" for the q-condition of the L2 variant.
    """

    kind: str
    u: int
    v: int
    required: int
    observed: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "u": self.u,
            "v": self.v,
            "required": self.required,
            "observed": self.observed,
        }


def validate(
    g: Graph,
    lab: Labeling,
    params: LpqParams | None = None,
    variant: str = "L1",
) -> list[Violation]:
    """All violated separation constraints of ``lab`` on ``g``.

    ``params`` overrides the labeling's own (p, q) when given.  Variants:
    L1 requires q-separation at distance exactly 2, L2 at every pair with
    a common neighbor (adjacent or not), L3 at distance <= 2.  Under L2
    and L3 an adjacent pair can therefore owe both p and q; the clauses
    are checked independently and can each produce a violation.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if len(lab.labels) != g.n:
        raise ValueError(f"labeling has {len(lab.labels)} labels for {g.n} vertices")
    p = params.p if params is not None else lab.p
    q = params.q if params is not None else lab.q
    labels = lab.labels
    d2 = g.dist2_masks()
    out: list[Violation] = []
    for u in range(g.n):
        above = ~((1 << (u + 1)) - 1)
        for v in iter_bits(g.adj_mask[u] & above):
            gap = abs(labels[u] - labels[v])
            if gap < p:
                out.append(Violation("adjacent", u, v, p, gap))
            if variant == "L3" and gap < q:
                out.append(Violation("distance2", u, v, q, gap))
        if variant == "L2":
            for v in range(u + 1, g.n):
                if g.adj_mask[u] & g.adj_mask[v]:
                    gap = abs(labels[u] - labels[v])
                    if gap < q:
                        out.append(Violation("common-neighbor", u, v, q, gap))
        else:
            for v in iter_bits(d2[u] & above):
                gap = abs(labels[u] - labels[v])
                if gap < q:
                    out.append(Violation("distance2", u, v, q, gap))
    return out


class _BudgetExceeded(Exception):
    """Internal: branching search exceeded its node budget."""


def _feasible(
    g: Graph,
    p: int,
    q: int,
    span: int,
    budget: int | None = None,
    hall_cuts: tuple[tuple[int, int], ...] = (),
) -> bool:
    """Is there a valid L1 labeling of g with labels inside [0, span]?

    Backtracking with bitmask label domains, forward checking, and
    most-constrained-vertex-first selection.  One designated vertex is
    restricted to the lower half of the label range up front: reflecting
    every label through span/2 preserves validity, so any solution has a
    mirror image satisfying the restriction.

    Each ``hall_cuts`` entry is (clique bitmask, separation): the named
    vertices need pairwise label distance >= separation, so when their
    joint domain cannot seat the remaining members the branch dies (a
    pigeonhole argument forward checking cannot make).  Raises
    _BudgetExceeded after ``budget`` search nodes; dense instances are
    handed to the label-sweep dynamic program instead.
    """
    n = g.n
    adj = g.adj_mask
    d2 = g.dist2_masks()

    full = (1 << (span + 1)) - 1
    pmask = [0] * (span + 1)
    qmask = [0] * (span + 1)
    for j in range(span + 1):
        pmask[j] = (((1 << (2 * p - 1)) - 1) << max(0, j - p + 1) >> max(0, p - 1 - j)) & full
        qmask[j] = (((1 << (2 * q - 1)) - 1) << max(0, j - q + 1) >> max(0, q - 1 - j)) & full

    domains = [full] * n
    anchor = max(range(n), key=lambda v: ((adj[v] | d2[v]).bit_count(), -v))
    domains[anchor] = (1 << (span // 2 + 1)) - 1
    nodes = 0

    def bt(unassigned: int, doms: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise _BudgetExceeded
        if unassigned == 0:
            return True
        for cmask, sep in hall_cuts:
            rest_c = unassigned & cmask
            if rest_c & (rest_c - 1):
                union = 0
                for u in iter_bits(rest_c):
                    union |= doms[u]
                need = rest_c.bit_count()
                seats = 0
                while union and seats < need:
                    j = (union & -union).bit_length() - 1
                    seats += 1
                    union &= ~((1 << (j + sep)) - 1)
                if seats < need:
                    return False
        v = -1
        v_size = span + 2
        for u in iter_bits(unassigned):
            size = doms[u].bit_count()
            if size < v_size:
                v, v_size = u, size
                if size <= 1:
                    break
        rest = unassigned ^ (1 << v)
        avail = doms[v]
        while avail:
            lsb = avail & -avail
            j = lsb.bit_length() - 1
            avail ^= lsb
            nd = list(doms)
            ok = True
            for u in iter_bits(adj[v] & rest):
                nd[u] &= ~pmask[j]
                if nd[u] == 0:
                    ok = False
                    break
            if ok:
                for u in iter_bits(d2[v] & rest):
                    nd[u] &= ~qmask[j]
                    if nd[u] == 0:
                        ok = False
                        break
            if ok and bt(rest, nd):
                return True
        return False

    return bt((1 << n) - 1, domains)


def _lambda_dp(g: Graph, p: int, q: int) -> int:
    """Exact minimum span by a label-sweep dynamic program.

    Vertices are placed in non-decreasing label order; an optimal
    labeling never needs a gap above m = max(p, q) between consecutive
    placed labels (larger gaps compress without breaking separations).
    A state is (placed set, masks of vertices at offsets 0..m-1 below
    the current top label); vertices further down constrain nothing.
    Dijkstra over states by span; fast when the square of g is dense,
    which is exactly where the branching search struggles.
    """
    import heapq

    n = g.n
    if n == 0 or g.m == 0:
        return 0
    m = max(p, q)
    adj = g.adj_mask
    d2 = g.dist2_masks()
    viol = [
        [(adj[v] if p > t else 0) | (d2[v] if q > t else 0) for t in range(m + 1)]
        for v in range(n)
    ]
    full = (1 << n) - 1
    heap: list[tuple[int, int, tuple[int, ...]]] = []
    best: dict[tuple[int, tuple[int, ...]], int] = {}
    for v in range(n):
        prof = [0] * m
        prof[0] = 1 << v
        key = (1 << v, tuple(prof))
        best[key] = 0
        heapq.heappush(heap, (0, 1 << v, tuple(prof)))
    while heap:
        cost, placed, prof = heapq.heappop(heap)
        if best.get((placed, prof), -1) != cost:
            continue
        if placed == full:
            return cost
        for v in iter_bits(full & ~placed):
            vv = viol[v]
            for gap in range(m + 1):
                ok = True
                for d in range(m):
                    if prof[d] and prof[d] & vv[min(gap + d, m)]:
                        ok = False
                        break
                if not ok:
                    continue
                nd = [0] * m
                nd[0] = 1 << v
                for d in range(m):
                    if d + gap < m:
                        nd[d + gap] |= prof[d]
                key = (placed | (1 << v), tuple(nd))
                nc = cost + gap
                if best.get(key, -1) == -1 or best[key] > nc:
                    best[key] = nc
                    heapq.heappush(heap, (nc, placed | (1 << v), tuple(nd)))
    raise AssertionError("label-sweep search exhausted without placing all vertices")


def _lambda_path_dp(g: Graph, p: int, q: int) -> int:
    """Exact minimum span when the square of g is complete.

    With every pair constrained, labels are pairwise distinct; sort them
    and the span is the sum of consecutive gaps, each at least p (edge)
    or q (distance-2 pair).  When 2 * min(p, q) >= max(p, q) any pair
    two or more steps apart accumulates at least max(p, q), so the
    consecutive constraints are the only binding ones and the answer is
    a cheapest Hamiltonian path (Held-Karp over vertex subsets).
    Callers must check both preconditions.
    """
    n = g.n
    if n <= 1:
        return 0
    adj = g.adj_mask
    cost = [[p if (adj[u] >> v) & 1 else q for v in range(n)] for u in range(n)]
    full = (1 << n) - 1
    inf = float("inf")
    dp = [[inf] * n for _ in range(full + 1)]
    for v in range(n):
        dp[1 << v][v] = 0
    for mask in range(1, full + 1):
        row = dp[mask]
        rem = full & ~mask
        if rem == 0:
            continue
        for last in iter_bits(mask):
            c = row[last]
            if c is inf:
                continue
            cl = cost[last]
            r = rem
            while r:
                b = r & -r
                r ^= b
                nxt = b.bit_length() - 1
                nm = mask | b
                nc = c + cl[nxt]
                if nc < dp[nm][nxt]:
                    dp[nm][nxt] = nc
    return int(min(dp[full]))


_FEASIBILITY_BUDGET = 120_000


def exact_lambda(g: Graph, params: LpqParams, n_cap: int = 12) -> int:
    """Minimum achievable span over all valid L1 labelings of ``g``.

    Binary search over the monotone feasibility predicate, between
    clique lower bounds (cliques of g, of its distance-2 graph, and of
    its square force pairwise p-, q- and min(p,q)-separation; a
    max-degree vertex plus its neighborhood needs Delta+1 distinct
    labels) and the best of a few first-fit greedy runs.  The same
    cliques feed pigeonhole cuts into the probes.  When a probe blows
    its node budget anyway (dense squares make refutations expensive)
    the question is re-solved whole: by a cheapest-Hamiltonian-path
    program when the square is complete and 2*min(p,q) >= max(p,q),
    otherwise by the label-sweep dynamic program.  Raises
    CapExceededError when n > n_cap.
    """
    if g.n > n_cap:
        raise CapExceededError(
            f"instance too large for exact search: n={g.n} > cap={n_cap}"
        )
    if g.n == 0 or g.m == 0:
        return 0
    p, q = params.p, params.q
    sq = square(g)
    by_sqdeg = sorted(range(g.n), key=lambda v: (-len(sq.adj[v]), v))
    ub = min(
        greedy_lpq(g, range(g.n), params).span,
        greedy_lpq(g, by_sqdeg, params).span,
    )
    d2g = Graph.from_neighbor_masks(g.n, g.dist2_masks())
    lb = max(
        max(len(row) for row in g.adj),
        (clique_number_exact(g, cap=g.n) - 1) * p,
        (clique_number_exact(d2g, cap=g.n) - 1) * q,
        (clique_number_exact(sq, cap=g.n) - 1) * min(p, q),
    )
    cuts: list[tuple[int, int]] = []
    for mask, sep in (
        (greedy_clique_mask(g), p),
        (greedy_clique_mask(d2g), q),
        (greedy_clique_mask(sq), min(p, q)),
    ):
        if mask.bit_count() >= 2 and (mask, sep) not in cuts:
            cuts.append((mask, sep))
    hall_cuts = tuple(cuts)
    lo, hi = lb, ub
    try:
        while lo < hi:
            mid = (lo + hi) // 2
            if _feasible(g, p, q, mid, budget=_FEASIBILITY_BUDGET, hall_cuts=hall_cuts):
                hi = mid
            else:
                lo = mid + 1
    except _BudgetExceeded:
        if sq.m == g.n * (g.n - 1) // 2 and 2 * min(p, q) >= max(p, q):
            return _lambda_path_dp(g, p, q)
        return _lambda_dp(g, p, q)
    return lo


def _greedy_coloring_count(g: Graph, order: Sequence[int]) -> int:
    colors = [-1] * g.n
    top = 0
    for v in order:
        used = {colors[u] for u in g.adj[v] if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
        top = max(top, c + 1)
    return top


def _k_colorable(g: Graph, k: int, order: Sequence[int]) -> bool:
    colors = [-1] * g.n

    def bt(i: int, used: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        forbidden = {colors[u] for u in g.adj[v] if colors[u] >= 0}
        # at most one fresh color per step kills color-permutation symmetry
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colors[v] = c
            if bt(i + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return bt(0, 0)


def chi_square_exact(g: Graph, n_cap: int = 10) -> int:
    """Exact chromatic number of the square of ``g``.

    Independent of the L(1,1) oracle: colors the square graph directly
    with branch and bound between a clique lower bound and a greedy
    upper bound.  Raises CapExceededError when n > n_cap.
    """
    if g.n > n_cap:
        raise CapExceededError(
            f"instance too large for exact coloring: n={g.n} > cap={n_cap}"
        )
    if g.n == 0:
        return 0
    sq = square(g)
    order = sorted(range(sq.n), key=lambda v: -len(sq.adj[v]))
    lb = clique_number_exact(sq, cap=max(sq.n, 1))
    ub = _greedy_coloring_count(sq, order)
    for k in range(lb, ub):
        if _k_colorable(sq, k, order):
            return k
    return ub


def bound_report(
    rep: Representation,
    lab: Labeling,
    params: LpqParams,
    *,
    omega_cap: int = 64,
) -> BoundReport:
    """Evaluate the class bound for ``rep`` against the achieved span.

    For circular-arc instances the clique number comes from the exact
    branch and bound when n <= omega_cap; beyond that the cut clique of
    the split is used as a lower bound and the report is annotated.
    Interval-order reports with q > p are marked report-only: the bound
    formula is known to miss some instances there.
    """
    g = derive_graph(rep)
    note = ""
    construction = None
    clique_fallback = None
    if rep.kind == "circular_arc":
        stats = compute_stats(g, omega_cap=omega_cap)
        split = split_circular(rep)
        construction = circular_construction_bound(
            params, stats.max_degree, len(split.clique_ids)
        )
        if stats.omega is None:
            clique_fallback = max(len(split.clique_ids), 1)
            note = "omega unavailable (n > cap); bound uses the cut clique size, a lower bound"
    else:
        stats = compute_stats(g, omega_cap=None)
    formula = class_bound(rep.kind, params, stats, clique_size=clique_fallback)
    report_only = rep.kind == "interval_order" and params.q > params.p
    if report_only:
        note = "report-only: the interval-order formula does not cover q > p"
    return BoundReport(
        kind=rep.kind,
        p=params.p,
        q=params.q,
        formula_value=formula,
        achieved_span=lab.span,
        holds=lab.span <= formula,
        stats=stats,
        report_only=report_only,
        construction_value=construction,
        note=note,
    )


@dataclass(frozen=True)
class ClaimCheck:
    """Outcome of one structural claim on one representation.

    ``applicable`` is False when the claim's hypotheses do not hold for
    the instance (it then carries no witnesses either way).
    """

    claim: str
    applicable: bool
    witnesses: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.witnesses


@dataclass(frozen=True)
class ClaimReport:
    """Aggregate of one claim over a sweep of instances."""

    claim: str
    checked: int
    applicable: int
    violations: tuple[tuple[int, tuple], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim": self.claim,
            "checked": self.checked,
            "applicable": self.applicable,
            "violations": [
                {"seed": seed, "witness": list(w)} for seed, w in self.violations
            ],
        }


def _claim_interval_dominator(rep: IntervalRep, g: Graph) -> ClaimCheck:
    # v: smallest right endpoint (ties: id).  w: its neighbor with the
    # largest right endpoint.  Claim: everything within distance 2 of v
    # lies in the closed neighborhood of w.
    iv = rep.intervals
    if g.n == 0:
        return ClaimCheck("interval-dominator", False, ())
    v = min(range(g.n), key=lambda i: (iv[i][1], i))
    if not g.adj[v]:
        return ClaimCheck("interval-dominator", False, ())
    w = min(g.adj[v], key=lambda u: (-iv[u][1], u))
    allowed = (g.adj_mask[w] | (1 << w)) & ~(1 << v)
    offenders = (g.adj_mask[v] | g.dist2_masks()[v]) & ~allowed
    return ClaimCheck(
        "interval-dominator",
        True,
        tuple((v, w, u) for u in iter_bits(offenders)),
    )


def _claim_containment_nesting(rep: ContainmentRep, g: Graph) -> ClaimCheck:
    # v1: smallest right endpoint.  Its neighbors, in increasing right
    # endpoint order, have nested neighborhoods outside N[v1]; and every
    # vertex at distance 2 from v1 is adjacent to the last of them.
    iv = rep.intervals
    if g.n == 0:
        return ClaimCheck("containment-nesting", False, ())
    v1 = min(range(g.n), key=lambda i: (iv[i][1], i))
    nbrs = sorted(g.adj[v1], key=lambda u: (iv[u][1], u))
    if not nbrs:
        return ClaimCheck("containment-nesting", False, ())
    witnesses: list[tuple] = []
    closed_v1 = g.adj_mask[v1] | (1 << v1)
    for a in range(len(nbrs)):
        outside = g.adj_mask[nbrs[a]] & ~closed_v1
        for b in range(a + 1, len(nbrs)):
            bad = outside & ~g.adj_mask[nbrs[b]]
            witnesses.extend((v1, nbrs[a], nbrs[b], u) for u in iter_bits(bad))
    last = nbrs[-1]
    bad2 = g.dist2_masks()[v1] & ~g.adj_mask[last]
    witnesses.extend((v1, last, u) for u in iter_bits(bad2))
    return ClaimCheck("containment-nesting", True, tuple(witnesses))


def _claim_order_min_adjacency(rep: IntervalOrderRep, g: Graph) -> ClaimCheck:
    # The vertex with the smallest right endpoint is a minimal element,
    # and every non-minimal element is adjacent to it.
    iv = rep.intervals
    if g.n == 0:
        return ClaimCheck("order-min-adjacency", False, ())
    mins = minimal_elements(rep)
    v1 = min(range(g.n), key=lambda i: (iv[i][1], i))
    witnesses: list[tuple] = []
    if v1 not in mins:
        witnesses.append((v1,))
    for u in range(g.n):
        if u != v1 and u not in mins and not g.has_edge(v1, u):
            witnesses.append((v1, u))
    return ClaimCheck("order-min-adjacency", True, tuple(witnesses))


def _claim_order_min_cover(rep: IntervalOrderRep, g: Graph) -> ClaimCheck:
    # Hypotheses: min degree >= 2 and at least two minimal elements.
    # Then every neighbor of the minimal element with the largest right
    # endpoint is adjacent to all minimal elements.
    iv = rep.intervals
    mins = minimal_elements(rep)
    degrees = [len(row) for row in g.adj]
    if g.n == 0 or min(degrees) < 2 or len(mins) < 2:
        return ClaimCheck("order-min-cover", False, ())
    w = min(mins, key=lambda u: (-iv[u][1], u))
    min_mask = sum(1 << u for u in mins)
    witnesses: list[tuple] = []
    for x in g.adj[w]:
        missing = min_mask & ~g.adj_mask[x] & ~(1 << x)
        witnesses.extend((w, x, z) for z in iter_bits(missing))
    return ClaimCheck("order-min-cover", True, tuple(witnesses))


def _claim_cointerval_equivalence(rep: IntervalOrderRep, g: Graph) -> ClaimCheck:
    # The complement of the derived graph is the interval graph of the
    # same intervals, and the derived graph has no induced 2K2.
    iv = rep.intervals
    witnesses: list[tuple] = []
    for u in range(g.n):
        lu, ru = iv[u]
        for v in range(u + 1, g.n):
            lv, rv = iv[v]
            intersect = max(lu, lv) <= min(ru, rv)
            if g.has_edge(u, v) == intersect:
                witnesses.append((u, v))
    quad = find_2k2(g)
    if quad is not None:
        witnesses.append(("2k2",) + quad)
    return ClaimCheck("cointerval-equivalence", True, tuple(witnesses))


_CLAIMS = {
    "interval-dominator": (IntervalRep, _claim_interval_dominator),
    "containment-nesting": (ContainmentRep, _claim_containment_nesting),
    "order-min-adjacency": (IntervalOrderRep, _claim_order_min_adjacency),
    "order-min-cover": (IntervalOrderRep, _claim_order_min_cover),
    "cointerval-equivalence": (IntervalOrderRep, _claim_cointerval_equivalence),
}

CLAIMS_BY_KIND = {
    "interval": ("interval-dominator",),
    "containment": ("containment-nesting",),
    "interval_order": (
        "order-min-adjacency",
        "order-min-cover",
        "cointerval-equivalence",
    ),
}


def check_structural_claims(
    rep: Representation, claims: Sequence[str] | None = None
) -> list[ClaimCheck]:
    """Check the structural claims applicable to ``rep``'s kind.

    ``claims`` restricts the set; requesting a claim for the wrong kind
    raises ValueError.
    """
    available = CLAIMS_BY_KIND.get(rep.kind, ())
    if claims is None:
        selected = available
    else:
        for name in claims:
            if name not in _CLAIMS:
                raise ValueError(f"unknown claim {name!r}")
            if name not in available:
                raise ValueError(
                    f"claim {name!r} not applicable to {rep.kind} representations"
                )
        selected = tuple(claims)
    g = derive_graph(rep)
    return [_CLAIMS[name][1](rep, g) for name in selected]
