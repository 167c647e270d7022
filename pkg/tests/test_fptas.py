import random
from fractions import Fraction

import pytest

from wareflow import (
    BalancedFlow,
    DeltaOutOfRange,
    EpsilonOutOfRange,
    IndexOutOfRange,
    Instance,
    NoPositiveBounds,
    TerminalStockMismatch,
    WrongVariant,
    assemble_solution,
    balanced_flow_decompose,
    check_solution,
    fptas_params,
    fptas_solve,
    normalize_terminal,
    oracle_solve,
    reassemble,
    reduce_flow,
    scale_trade_bounds,
    solve,
)
from helpers import (
    as_wp3,
    buy_then_sell,
    random_settled_walk,
    random_trading_wp3,
    two_period_trade,
    wp2_mixed,
)


def crossing_plan():
    """Four periods, buys feeding later sales plus one sale covered later."""
    inst = Instance(
        variant="wp3", T=4, s0=2,
        Ls=(0, 0, 0, 0), Us=(6, 6, 6, 6),
        Lx=(0, 0, 0, 0), Ux=(3, 0, 0, 2),
        Ly=(0, 0, 0, 0), Uy=(0, 2, 3, 0),
        revenue=(0, 2, 2, 0), cost=(1, 0, 0, 1), holding=(0, 0, 0, 0),
        fixed_purchase=(0, 0, 0, 0), fixed_sale=(0, 0, 0, 0),
    )
    sol = assemble_solution(inst, (3, 0, 0, 2), (0, 2, 3, 0))
    return inst, sol


def test_decompose_pairs_purchases_with_sales():
    inst, sol = crossing_plan()
    flow = balanced_flow_decompose(inst, sol)
    assert flow.pairs == ((1, 2, 2), (1, 3, 1), (4, 3, 2))


def test_decompose_do_nothing_is_empty():
    inst = as_wp3(two_period_trade())
    sol = assemble_solution(inst, (0, 0), (0, 0))
    assert balanced_flow_decompose(inst, sol).pairs == ()


def test_decompose_optimal_trade():
    inst = as_wp3(two_period_trade())
    flow = balanced_flow_decompose(inst, solve(inst))
    assert flow.pairs == ((1, 2, 5),)


def test_decompose_requires_settled_terminal_stock():
    inst = as_wp3(two_period_trade())
    sol = assemble_solution(inst, (5, 0), (0, 0))
    with pytest.raises(TerminalStockMismatch):
        balanced_flow_decompose(inst, sol)


def test_decompose_conserves_period_totals():
    rng = random.Random(7)
    for seed in range(40):
        inst = random_trading_wp3(seed, T=2 + seed % 3)
        norm, sol = random_settled_walk(inst, rng)
        flow = balanced_flow_decompose(norm, sol)
        bought = [0] * norm.T
        sold = [0] * norm.T
        for buy, sale, amount in flow.pairs:
            assert amount > 0
            assert buy != sale
            bought[buy - 1] += amount
            sold[sale - 1] += amount
        assert tuple(bought) == sol.x
        assert tuple(sold) == sol.y
        assert reassemble(norm, flow) == sol


def test_reduce_flow_forward_pair():
    inst = as_wp3(two_period_trade())
    sol = solve(inst)
    flow = balanced_flow_decompose(inst, sol)
    reduced = reduce_flow(inst, sol, flow, 0, 2)
    assert reduced.x == (3, 0)
    assert reduced.y == (0, 3)
    assert reduced.s == (3, 0)
    assert check_solution(inst, reduced).feasible


def test_reduce_flow_zero_delta_is_identity():
    inst = as_wp3(two_period_trade())
    sol = solve(inst)
    flow = balanced_flow_decompose(inst, sol)
    assert reduce_flow(inst, sol, flow, 0, 0) == sol


def test_reduce_flow_backward_pair():
    inst, sol = crossing_plan()
    flow = balanced_flow_decompose(inst, sol)
    reduced = reduce_flow(inst, sol, flow, 2, 2)
    assert reduced.x == (3, 0, 0, 0)
    assert reduced.y == (0, 2, 1, 0)
    assert check_solution(inst, reduced).feasible


def test_reduce_flow_rejects_bad_arguments():
    inst = as_wp3(two_period_trade())
    sol = solve(inst)
    flow = balanced_flow_decompose(inst, sol)
    with pytest.raises(IndexOutOfRange):
        reduce_flow(inst, sol, flow, 1, 0)
    with pytest.raises(IndexOutOfRange):
        reduce_flow(inst, sol, flow, -1, 0)
    with pytest.raises(DeltaOutOfRange):
        reduce_flow(inst, sol, flow, 0, 6)
    with pytest.raises(DeltaOutOfRange):
        reduce_flow(inst, sol, flow, 0, -1)


def test_reduce_flow_keeps_walks_feasible():
    rng = random.Random(19)
    for seed in range(30):
        inst = random_trading_wp3(seed + 500, T=2 + seed % 3)
        norm, sol = random_settled_walk(inst, rng)
        flow = balanced_flow_decompose(norm, sol)
        if not flow.pairs:
            continue
        index = rng.randrange(len(flow.pairs))
        amount = flow.pairs[index][2]
        delta = amount * Fraction(rng.randint(0, 4), 4)
        reduced = reduce_flow(norm, sol, flow, index, delta)
        report = check_solution(norm, reduced)
        assert report.feasible, report.violations


def test_normalize_terminal_appends_settling_period():
    inst = as_wp3(two_period_trade())
    norm = normalize_terminal(inst)
    assert norm.T == 3
    assert norm.Ls == (0, 0, 0) and norm.Us == (10, 10, 0)
    assert norm.Ux == (5, 5, 10) and norm.Uy == (5, 5, 10)
    assert norm.revenue[-1] == 0 and norm.cost[-1] == 0
    assert norm.holding[-1] == 0


def test_normalize_terminal_is_idempotent_in_value():
    inst = as_wp3(two_period_trade())
    once = normalize_terminal(inst)
    twice = normalize_terminal(once)
    assert twice.T == 4
    assert solve(inst).objective == solve(once).objective
    assert solve(once).objective == solve(twice).objective


def test_normalize_terminal_preserves_optimum():
    for seed in range(30):
        inst = random_trading_wp3(seed + 40, T=2 + seed % 3)
        norm = normalize_terminal(inst)
        assert oracle_solve(norm).objective == oracle_solve(inst).objective


def test_normalize_terminal_requires_wp3():
    with pytest.raises(WrongVariant):
        normalize_terminal(two_period_trade())


def test_fptas_params_values():
    inst = Instance(
        variant="wp3", T=2, s0=0,
        Ls=(0, 0), Us=(8, 8), Lx=(0, 0), Ux=(4, 0), Ly=(0, 0), Uy=(0, 6),
        revenue=(0, 1), cost=(1, 0), holding=(0, 0),
        fixed_purchase=(0, 0), fixed_sale=(0, 0),
    )
    params = fptas_params(inst, Fraction(1, 2))
    assert params.U_min == 4 and params.U_max == 6
    assert params.K == 2


def test_fptas_params_rejects_bad_epsilon():
    inst = as_wp3(two_period_trade())
    for eps in (0, 1, Fraction(3, 2), -1):
        with pytest.raises(EpsilonOutOfRange):
            fptas_params(inst, eps)


def test_fptas_params_needs_a_positive_bound():
    inst = Instance(
        variant="wp3", T=1, s0=0,
        Ls=(0,), Us=(3,), Lx=(0,), Ux=(0,), Ly=(0,), Uy=(0,),
        revenue=(1,), cost=(1,), holding=(0,),
        fixed_purchase=(0,), fixed_sale=(0,),
    )
    with pytest.raises(NoPositiveBounds):
        fptas_params(inst, Fraction(1, 2))


def test_scale_trade_bounds_rounds_down():
    inst = buy_then_sell()
    params = fptas_params(inst, Fraction(2, 5))
    assert params.K == 2
    scaled = scale_trade_bounds(inst, params)
    assert scaled.Ux == (4, 0) and scaled.Uy == (0, 4)
    assert scaled.Us == inst.Us and scaled.s0 == inst.s0

    # a unit that divides every bound changes nothing
    params = fptas_params(inst, Fraction(1, 5))
    assert scale_trade_bounds(inst, params) == inst


def test_fptas_on_two_period_spread():
    inst = buy_then_sell()
    assert solve(inst).objective == 10
    sol = fptas_solve(inst, Fraction(2, 5))
    assert sol.objective == 8
    assert sol.objective >= Fraction(3, 5) * 10
    report = check_solution(inst, sol)
    assert report.feasible, report.violations


def test_fptas_guarantee_on_random_instances():
    for seed in range(25):
        inst = random_trading_wp3(seed + 900, T=2 + seed % 3)
        best = oracle_solve(inst).objective
        for eps in (Fraction(1, 2), Fraction(1, 4)):
            sol = fptas_solve(inst, eps)
            assert sol.objective >= (1 - eps) * best
            assert check_solution(inst, sol).feasible


def test_scaled_down_optimum_fits_scaled_bounds():
    # shrinking every flow pair of an optimal settled plan by a factor of
    # epsilon lands inside the rounded trade bounds: that plan is what makes
    # the approximation guarantee work
    for seed in (3, 11, 27, 50):
        inst = random_trading_wp3(seed, T=3)
        norm = normalize_terminal(inst)
        sol = solve(norm)
        flow = balanced_flow_decompose(norm, sol)
        for eps in (Fraction(1, 2), Fraction(1, 4)):
            params = fptas_params(norm, eps)
            scaled_inst = scale_trade_bounds(norm, params)
            shrunk = BalancedFlow(pairs=tuple(
                (buy, sale, amount * (1 - eps))
                for buy, sale, amount in flow.pairs
            ))
            reduced = reassemble(scaled_inst, shrunk)
            report = check_solution(scaled_inst, reduced)
            assert report.feasible, report.violations
            target = (1 - eps) * sol.objective
            assert reduced.objective == target
            assert fptas_solve(inst, eps).objective >= target


def test_fptas_requires_wp3():
    with pytest.raises(WrongVariant):
        fptas_solve(two_period_trade(), Fraction(1, 2))
    with pytest.raises(WrongVariant):
        fptas_solve(wp2_mixed(), Fraction(1, 2))
