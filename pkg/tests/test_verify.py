"""Validator variants, the exact oracles and their cross-checks, bound
reports and structural-claim checks.

The brute-force reference oracles in this file share no code with the
package's search: distances come from BFS and feasibility from a plain
recursive enumeration.
"""

import random
from collections import deque
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intervallabel import (
    CapExceededError,
    ContainmentRep,
    IntervalOrderRep,
    IntervalRep,
    Labeling,
    LpqParams,
    bound_report,
    build_graph,
    check_structural_claims,
    chi_square_exact,
    compute_stats,
    derive_graph,
    exact_lambda,
    gen_instance,
    greedy_lpq,
    label_circular_arc,
    label_instance,
    validate,
)
from intervallabel.verify import _lambda_dp, _lambda_path_dp

P21 = LpqParams(2, 1)
P11 = LpqParams(1, 1)


def _random_graph(rng, n):
    edges = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
    return build_graph(n, edges)


def _bfs_dist(g, src):
    dist = [-1] * g.n
    dist[src] = 0
    dq = deque([src])
    while dq:
        u = dq.popleft()
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                dq.append(v)
    return dist


def _naive_lambda(g, p, q):
    """Reference oracle: smallest span admitting a labeling, by trying
    spans upward with a label-by-label recursive enumeration."""
    dist = [_bfs_dist(g, u) for u in range(g.n)]

    def place(span, labels):
        v = len(labels)
        if v == g.n:
            return True
        for x in range(span + 1):
            ok = True
            for u, fu in enumerate(labels):
                d = dist[u][v]
                if d == 1 and abs(x - fu) < p:
                    ok = False
                    break
                if d == 2 and abs(x - fu) < q:
                    ok = False
                    break
            if ok and place(span, labels + [x]):
                return True
        return False

    span = 0
    while not place(span, []):
        span += 1
    return span


# ---------------------------------------------------------------------------
# validate


def test_validate_path_pins():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert validate(g, Labeling((0, 2, 4), 2, 1)) == []
    out = validate(g, Labeling((0, 2, 0), 2, 1))
    assert len(out) == 1
    assert out[0].to_dict() == {
        "kind": "distance2",
        "u": 0,
        "v": 2,
        "required": 1,
        "observed": 0,
    }


def test_validate_variants_on_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    lab = Labeling((0, 1, 2), 1, 2)
    assert validate(g, lab, variant="L1") == []
    l2 = validate(g, lab, variant="L2")
    assert [(v.kind, v.u, v.v, v.observed) for v in l2] == [
        ("common-neighbor", 0, 1, 1),
        ("common-neighbor", 1, 2, 1),
    ]
    l3 = validate(g, lab, variant="L3")
    assert {(v.kind, v.u, v.v) for v in l3} == {
        ("distance2", 0, 1),
        ("distance2", 1, 2),
    }


def test_validate_l2_edge_without_common_neighbor():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert validate(g, Labeling((0, 1, 2, 3), 1, 2), variant="L2") == []


def test_validate_params_override():
    g = build_graph(2, [(0, 1)])
    lab = Labeling((0, 2), 2, 1)
    assert validate(g, lab) == []
    out = validate(g, lab, params=LpqParams(3, 1))
    assert [v.kind for v in out] == ["adjacent"]
    assert out[0].required == 3


def test_validate_rejects_bad_input():
    g = build_graph(2, [(0, 1)])
    with pytest.raises(ValueError, match="unknown variant"):
        validate(g, Labeling((0, 2), 2, 1), variant="L4")
    with pytest.raises(ValueError, match="3 labels for 2 vertices"):
        validate(g, Labeling((0, 1, 2), 2, 1))


def test_validity_implication_chain():
    """L3-valid implies L2-valid implies L1-valid, any parameters."""
    rng = random.Random(11)
    for _ in range(120):
        g = _random_graph(rng, rng.randint(2, 7))
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        lab = Labeling(tuple(rng.randrange(8) for _ in range(g.n)), p, q)
        ok = {v: not validate(g, lab, variant=v) for v in ("L1", "L2", "L3")}
        if ok["L3"]:
            assert ok["L2"] and ok["L1"]
        if ok["L2"]:
            assert ok["L1"]


def test_variants_coincide_for_p_ge_q():
    """Greedy output (always L1-valid) stays valid under L2 and L3 when
    p >= q; the three definitions coincide there."""
    for kind in ("interval", "containment", "interval_order"):
        for seed in range(15):
            rep = gen_instance(kind, 8, seed)
            g = derive_graph(rep)
            for params in (P11, P21, LpqParams(3, 2)):
                lab = label_instance(rep, params)
                for variant in ("L1", "L2", "L3"):
                    assert validate(g, lab, variant=variant) == []


def test_violation_count_is_permutation_invariant():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(2, 7)
        g = _random_graph(rng, n)
        labels = tuple(rng.randrange(6) for _ in range(n))
        perm = list(range(n))
        rng.shuffle(perm)
        edges2 = [(perm[u], perm[v]) for u, v in g.edges()]
        g2 = build_graph(n, edges2)
        labels2 = [0] * n
        for v in range(n):
            labels2[perm[v]] = labels[v]
        for variant in ("L1", "L2", "L3"):
            a = validate(g, Labeling(labels, 2, 2), variant=variant)
            b = validate(g2, Labeling(tuple(labels2), 2, 2), variant=variant)
            assert len(a) == len(b)


# ---------------------------------------------------------------------------
# exact oracles


def test_exact_lambda_pins(three_class_rep):
    assert exact_lambda(build_graph(3, [(0, 1), (1, 2), (0, 2)]), P21) == 4
    assert exact_lambda(build_graph(3, [(0, 1), (1, 2)]), P21) == 3
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert exact_lambda(star, LpqParams(1, 5)) == 10
    assert exact_lambda(derive_graph(three_class_rep), P21) == 6


def test_exact_lambda_trivial_graphs():
    assert exact_lambda(build_graph(1, []), P21) == 0
    assert exact_lambda(build_graph(4, []), LpqParams(3, 3)) == 0


def test_exact_lambda_cap():
    g = build_graph(13, [(i, i + 1) for i in range(12)])
    with pytest.raises(CapExceededError, match="n=13 > cap=12"):
        exact_lambda(g, P21)
    assert exact_lambda(g, P21, n_cap=13) == 4


def test_exact_lambda_against_brute_force():
    rng = random.Random(97)
    for _ in range(100):
        n = rng.randint(1, 5)
        g = _random_graph(rng, n)
        p, q = rng.choice([(1, 1), (2, 1), (1, 2), (2, 3)])
        assert exact_lambda(g, LpqParams(p, q)) == _naive_lambda(g, p, q), (
            g.edges(),
            p,
            q,
        )


def test_exact_lambda_bounds_on_instances():
    for kind in ("interval", "interval_k", "circular_arc"):
        for seed in range(12):
            rep = gen_instance(kind, 8, seed)
            g = derive_graph(rep)
            lam = exact_lambda(g, P21)
            assert lam >= compute_stats(g).max_degree
            assert lam <= label_instance(rep, P21).span


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.data())
def test_exact_lambda_monotone_in_params(data):
    """Raising p or q only adds constraints, so the minimum span cannot drop."""
    n = data.draw(st.integers(1, 5))
    slots = list(combinations(range(n), 2))
    mask = data.draw(st.integers(0, (1 << len(slots)) - 1))
    g = build_graph(n, [e for i, e in enumerate(slots) if mask >> i & 1])
    p = data.draw(st.integers(1, 3))
    q = data.draw(st.integers(1, 3))
    base = exact_lambda(g, LpqParams(p, q))
    assert exact_lambda(g, LpqParams(p + 1, q)) >= base
    assert exact_lambda(g, LpqParams(p, q + 1)) >= base


def test_internal_solvers_agree():
    rng = random.Random(7)
    for _ in range(60):
        g = _random_graph(rng, rng.randint(1, 6))
        p, q = rng.choice([(1, 1), (2, 1), (1, 2), (3, 2)])
        assert _lambda_dp(g, p, q) == _naive_lambda(g, p, q)


def test_path_dp_agrees_on_complete_squares():
    cases = [
        build_graph(3, [(0, 1), (1, 2)]),
        build_graph(4, [(0, 1), (0, 2), (0, 3)]),
        build_graph(5, [(i, (i + 1) % 5) for i in range(5)]),
        build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
    ]
    for g in cases:
        for p, q in ((1, 1), (2, 1), (3, 2), (1, 2)):
            assert _lambda_path_dp(g, p, q) == _naive_lambda(g, p, q)


def test_chi_square_pins():
    assert chi_square_exact(build_graph(3, [(0, 1), (1, 2)])) == 3
    assert chi_square_exact(build_graph(1, [])) == 1
    assert chi_square_exact(build_graph(4, [(0, 1), (0, 2), (0, 3)])) == 4


def test_chi_square_cap():
    g = build_graph(11, [(i, i + 1) for i in range(10)])
    with pytest.raises(CapExceededError, match="n=11 > cap=10"):
        chi_square_exact(g)


def test_chi_square_equals_lambda_plus_one():
    rng = random.Random(23)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(1, 8))
        assert chi_square_exact(g) == exact_lambda(g, P11) + 1


# ---------------------------------------------------------------------------
# bound reports


def test_bound_report_interval_k(three_class_rep):
    lab = label_instance(three_class_rep, P21)
    rpt = bound_report(three_class_rep, lab, P21)
    assert (rpt.formula_value, rpt.achieved_span, rpt.holds) == (14, 7, True)
    assert not rpt.report_only
    assert rpt.construction_value is None
    doc = rpt.to_dict()
    assert doc["bound"] == 14 and doc["stats"]["max_degree"] == 4


def test_bound_report_interval(interval_star_rep):
    lab = label_instance(interval_star_rep, P11)
    rpt = bound_report(interval_star_rep, lab, P11)
    assert (rpt.formula_value, rpt.achieved_span, rpt.holds) == (3, 3, True)


def test_bound_report_order_report_only(star_order_rep):
    params = LpqParams(1, 5)
    lab = label_instance(star_order_rep, params)
    rpt = bound_report(star_order_rep, lab, params)
    assert (rpt.formula_value, rpt.achieved_span) == (3, 11)
    assert not rpt.holds
    assert rpt.report_only
    assert "report-only" in rpt.note
    assert exact_lambda(derive_graph(star_order_rep), params) == 10


def test_bound_report_order_p_ge_q_not_report_only(star_order_rep):
    rpt = bound_report(star_order_rep, label_instance(star_order_rep, P21), P21)
    assert not rpt.report_only
    assert rpt.holds


def test_bound_report_circular(twelve_arc_rep):
    lab = label_circular_arc(twelve_arc_rep, P21)
    rpt = bound_report(twelve_arc_rep, lab, P21)
    assert (rpt.formula_value, rpt.achieved_span, rpt.holds) == (14, 10, True)
    assert rpt.construction_value == 10
    assert rpt.stats.omega == 3
    assert rpt.to_dict()["construction_bound"] == 10


def test_bound_report_circular_omega_fallback(twelve_arc_rep):
    lab = label_circular_arc(twelve_arc_rep, P21)
    rpt = bound_report(twelve_arc_rep, lab, P21, omega_cap=1)
    assert rpt.stats.omega is None
    assert rpt.formula_value == 10
    assert rpt.holds
    assert "cut clique size" in rpt.note


# ---------------------------------------------------------------------------
# structural claims


def test_claims_star_order(star_order_rep):
    checks = {c.claim: c for c in check_structural_claims(star_order_rep)}
    assert set(checks) == {
        "order-min-adjacency",
        "order-min-cover",
        "cointerval-equivalence",
    }
    assert checks["order-min-adjacency"].applicable
    assert checks["order-min-adjacency"].ok
    assert not checks["order-min-cover"].applicable
    assert checks["cointerval-equivalence"].ok


def test_claims_antichain():
    rep = IntervalOrderRep(((0, 5), (1, 6), (2, 7)))
    checks = {c.claim: c for c in check_structural_claims(rep)}
    assert checks["order-min-adjacency"].ok
    assert not checks["order-min-cover"].applicable


def test_claim_interval_dominator(interval_star_rep):
    (check,) = check_structural_claims(interval_star_rep)
    assert check.claim == "interval-dominator"
    assert check.applicable and check.ok


def test_claims_random_sweeps():
    for kind in ("interval", "containment", "interval_order"):
        for seed in range(80):
            rep = gen_instance(kind, 3 + seed % 10, seed)
            for check in check_structural_claims(rep):
                assert check.ok, (kind, seed, check)


def test_claims_edgeless_interval_not_applicable():
    rep = IntervalRep(((0, 1), (3, 4)))
    (check,) = check_structural_claims(rep)
    assert not check.applicable


def test_claims_selection_errors(star_order_rep, containment_rep):
    with pytest.raises(ValueError, match="unknown claim 'min-degree'"):
        check_structural_claims(star_order_rep, ["min-degree"])
    with pytest.raises(ValueError, match="not applicable to containment"):
        check_structural_claims(containment_rep, ["interval-dominator"])
    (check,) = check_structural_claims(containment_rep, ["containment-nesting"])
    assert check.ok
