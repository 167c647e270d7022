import pytest

from wareflow import (
    Infeasible,
    Instance,
    WrongVariant,
    arc_candidates,
    build_network,
    check_solution,
    gen_random,
    gen_stock_levels,
    oracle_solve,
    reduce_partition,
    solve,
    solve_with_network,
    solve_wp2_direct,
    to_dot,
)
from helpers import blocked_by_fixed_cost, two_period_trade, wp2_mixed


def test_arc_purchase_is_single_candidate():
    inst = two_period_trade()
    cands = arc_candidates(inst, 1, 0, 5)
    assert len(cands) == 1
    dec = cands[0]
    assert (dec.x, dec.y, dec.w, dec.z) == (5, 0, 1, 0)
    assert dec.payoff == -5


def test_arc_hold_ignores_lower_trade_bound():
    inst = Instance(
        variant="wp1", T=1, s0=4,
        Ls=(0,), Us=(5,), Lx=(2,), Ux=(3,), Ly=(0,), Uy=(3,),
        revenue=(1,), cost=(1,), holding=(0,),
        fixed_purchase=(1,), fixed_sale=(1,),
    )
    cands = arc_candidates(inst, 1, 4, 4)
    assert len(cands) == 1
    dec = cands[0]
    assert (dec.x, dec.y, dec.w, dec.z) == (0, 0, 0, 0)
    assert dec.payoff == 0


def test_arc_below_lower_purchase_bound_is_empty():
    inst = Instance(
        variant="wp1", T=1, s0=0,
        Ls=(0,), Us=(5,), Lx=(2,), Ux=(3,), Ly=(0,), Uy=(3,),
        revenue=(1,), cost=(1,), holding=(0,),
        fixed_purchase=(1,), fixed_sale=(1,),
    )
    assert arc_candidates(inst, 1, 0, 1) == []


def test_arc_wp2_enumerates_pass_through_trades():
    inst = Instance(
        variant="wp2", T=1, s0=3,
        Ls=(0,), Us=(5,), Lx=(0,), Ux=(2,), Ly=(0,), Uy=(5,),
        revenue=(1,), cost=(1,), holding=(0,),
        fixed_purchase=(0,), fixed_sale=(0,),
    )
    cands = arc_candidates(inst, 1, 3, 2)
    pairs = [(c.x, c.y) for c in cands]
    assert (2, 3) in pairs  # buy at Ux while selling down the opening stock
    assert pairs.count((2, 3)) == 1
    assert len(cands) == len({(c.x, c.y, c.w, c.z) for c in cands})
    for c in cands:
        assert c.x >= 0 and 0 <= c.y <= 3
        assert c.y - c.x == 1


def test_build_network_two_period_trade():
    inst = two_period_trade()
    net = build_network(inst, gen_stock_levels(inst))
    assert net.layers == ((0,), (0, 5, 10), (0, 5, 10))
    assert net.node_count == 7
    assert net.arc_count == 9
    first = {(tail, net.layers[1][head]) for tail, head, _ in net.arcs[0]}
    assert first == {(0, 0), (0, 5)}  # buying 10 in one period is out of reach


def test_build_network_all_zero_chain():
    inst = Instance(
        variant="wp1", T=2, s0=0,
        Ls=(0, 0), Us=(0, 0), Lx=(0, 0), Ux=(0, 0), Ly=(0, 0), Uy=(0, 0),
        revenue=(3, 3), cost=(1, 1), holding=(2, 2),
        fixed_purchase=(0, 0), fixed_sale=(0, 0),
    )
    sol = solve(inst)
    assert sol.objective == 0
    assert sol.x == (0, 0) and sol.y == (0, 0) and sol.s == (0, 0)


def test_solve_known_objectives():
    assert solve(two_period_trade()).objective == 10
    assert solve(blocked_by_fixed_cost()).objective == 0
    inst, target = reduce_partition([1, 2, 3])
    assert solve(inst).objective == target == 9


def test_solve_reports_infeasible():
    inst = Instance(
        variant="wp1", T=1, s0=0,
        Ls=(3,), Us=(3,), Lx=(0,), Ux=(1,), Ly=(0,), Uy=(1,),
        revenue=(0,), cost=(0,), holding=(0,),
        fixed_purchase=(0,), fixed_sale=(0,),
    )
    with pytest.raises(Infeasible):
        solve(inst)


def test_solve_matches_oracle():
    for seed in range(60):
        variant = ("wp1", "wp2", "wp3")[seed % 3]
        inst = gen_random(seed, T=2 + seed % 3, variant=variant, max_bound=5)
        try:
            expected = oracle_solve(inst).objective
        except Infeasible:
            with pytest.raises(Infeasible):
                solve(inst)
            continue
        sol = solve(inst)
        assert sol.objective == expected
        assert check_solution(inst, sol).feasible


def test_wp2_direct_route_agrees():
    fixtures = [wp2_mixed()]
    fixtures += [gen_random(seed, T=2 + seed % 2, variant="wp2", max_bound=5)
                 for seed in range(40)]
    for inst in fixtures:
        try:
            doubled_objective = solve(inst).objective
        except Infeasible:
            with pytest.raises(Infeasible):
                solve_wp2_direct(inst)
            continue
        direct = solve_wp2_direct(inst)
        assert direct.objective == doubled_objective
        assert check_solution(inst, direct).feasible


def test_wp2_direct_rejects_other_variants():
    with pytest.raises(WrongVariant):
        solve_wp2_direct(two_period_trade())


def test_solve_is_deterministic():
    feasible = 0
    for seed in range(20):
        inst = gen_random(seed, T=3, variant="wp1", max_bound=6)
        try:
            first = solve(inst)
        except Infeasible:
            continue
        assert first == solve(inst)
        feasible += 1
    assert feasible >= 5


def test_solve_prefers_smallest_stock_sequence():
    # two optimal plans exist: trade 5 now or never; holding nothing wins
    inst = Instance(
        variant="wp1", T=2, s0=0,
        Ls=(0, 0), Us=(10, 10), Lx=(0, 0), Ux=(5, 5), Ly=(0, 0), Uy=(5, 5),
        revenue=(1, 1), cost=(1, 1), holding=(0, 0),
        fixed_purchase=(0, 0), fixed_sale=(0, 0),
    )
    sol = solve(inst)
    assert sol.objective == 0
    assert sol.s == (0, 0)


def test_solutions_respect_variant_rules():
    for seed in range(45):
        variant = ("wp1", "wp2", "wp3")[seed % 3]
        inst = gen_random(seed + 100, T=2 + seed % 3, variant=variant,
                          max_bound=5)
        try:
            sol = solve(inst)
        except Infeasible:
            continue
        report = check_solution(inst, sol)
        assert report.feasible, report.violations
        if variant == "wp2":
            prev = inst.s0
            for t in range(inst.T):
                assert sol.y[t] <= prev
                prev = sol.s[t]
        else:
            assert all(x * y == 0 for x, y in zip(sol.x, sol.y))


def test_network_size_is_bounded():
    for seed in range(30):
        variant = ("wp1", "wp2", "wp3")[seed % 3]
        inst = gen_random(seed, T=2 + seed % 3, variant=variant, max_bound=5)
        try:
            _, net = solve_with_network(inst)
        except Infeasible:
            continue
        periods = len(net.arcs)
        width = max(len(layer) for layer in net.layers[1:])
        assert net.node_count <= periods * width + 1
        assert net.arc_count <= periods * width**2


def test_to_dot_lists_every_node_and_arc():
    inst = two_period_trade()
    _, net = solve_with_network(inst)
    dot = to_dot(net)
    assert dot.startswith("digraph")
    assert dot.count("->") == net.arc_count
    assert 'n_0_0 [label="0:0"]' in dot
    assert dot.endswith("}\n")
