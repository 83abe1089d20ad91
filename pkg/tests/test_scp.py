import math

import pytest
from hypothesis import given, settings, strategies as st

from romancvd import ScpInstance, brute_force_iscp, brute_force_scp, solve_iscp, solve_scp
from romancvd.generators import make_rng, random_scp_instance
from romancvd.scp import scp_all_targets


def test_scp_examples():
    sol = solve_scp(ScpInstance.from_blocks(1, [[{0}]], [1]))
    assert sol.value == 2 and sol.witness == (0,)
    sol = solve_scp(ScpInstance.from_blocks(0, [[()]], [2]))
    assert sol.value == 2 and sol.witness == (0,)  # base case counts as a pick of the first set
    assert solve_scp(ScpInstance.from_blocks(0, [[()], [()]], [1, 1])).value == 2
    assert solve_scp(ScpInstance.from_blocks(2, [[{0}], [{1}]], [1, 0])).value == 4


def test_scp_empty_family():
    sol = solve_scp(ScpInstance(2, (), (), ()))
    assert sol.value == math.inf and sol.witness == () and not sol.feasible
    assert solve_scp(ScpInstance(0, (), (), ())).value == 0


def test_iscp_examples():
    sol = solve_iscp(ScpInstance.from_blocks(0, [[(), (), ()]], [2]))
    assert sol.value == 2 and len(sol.witness) == 1
    sol = solve_iscp(ScpInstance.from_blocks(1, [[{0}, {0}]], [1]))
    assert sol.value == 2 and len(sol.witness) == 1
    sol = solve_iscp(ScpInstance.from_blocks(2, [[{0}, {1}]], [2]))
    assert sol.value == math.inf and not sol.feasible


def test_iscp_rejects_flag_zero():
    with pytest.raises(ValueError):
        solve_iscp(ScpInstance.from_blocks(0, [[()]], [0]))


def test_instance_validation():
    with pytest.raises(ValueError):
        ScpInstance(1, (1,), (0, 1), (1, 1))  # empty block
    with pytest.raises(ValueError):
        ScpInstance(1, (2,), (1,), (1,))  # outside universe
    with pytest.raises(ValueError):
        ScpInstance(1, (1,), (1,), (3,))


def test_budget_is_checked_after_optimizing():
    inst = ScpInstance.from_blocks(2, [[{0}], [{1}]], [1, 0], budget=3)
    sol = solve_scp(inst)
    assert sol.value == 4 and not sol.feasible
    assert solve_scp(ScpInstance.from_blocks(2, [[{0}], [{1}]], [1, 0], budget=4)).feasible


def test_text_round_trip():
    inst = ScpInstance.from_blocks(3, [[{0, 2}, ()], [{1}]], [2, 1], budget=5)
    text = inst.dumps()
    assert text == "u 3\nbudget 5\nblock 2\nset 0 2\nset\nblock 1\nset 1\n"
    assert ScpInstance.loads(text) == inst


def _restrict(inst, w):
    bits = [e for e in range(inst.universe_size) if w >> e & 1]
    family = tuple(sum(1 << i for i, e in enumerate(bits) if s >> e & 1) for s in inst.family)
    return ScpInstance(len(bits), family, inst.block_sizes, inst.flags)


def test_all_targets_match_restricted_solves():
    rng = make_rng(11)
    for _ in range(200):
        inst = random_scp_instance(rng, max_universe=4)
        table = scp_all_targets(inst)
        for w in range(1 << inst.universe_size):
            expect = brute_force_scp(_restrict(inst, w))[0]
            got = int(table[w])
            assert got == expect or (got >= 1 << 40 and expect == math.inf)


@st.composite
def instances(draw, flag_values=(0, 1, 2)):
    u = draw(st.integers(0, 5))
    sizes = draw(st.lists(st.integers(1, 3), min_size=1, max_size=4))
    m = sum(sizes)
    family = draw(st.lists(st.integers(0, (1 << u) - 1), min_size=m, max_size=m))
    flags = draw(st.lists(st.sampled_from(flag_values), min_size=len(sizes), max_size=len(sizes)))
    return ScpInstance(u, tuple(family), tuple(sizes), tuple(flags))


@settings(max_examples=300, deadline=None)
@given(instances())
def test_scp_matches_brute_force(inst):
    sol = solve_scp(inst)
    assert sol.value == brute_force_scp(inst)[0]
    if sol.feasible:
        assert inst.covers(sol.witness) and inst.objective(sol.witness) == sol.value


@settings(max_examples=300, deadline=None)
@given(instances((1, 2)))
def test_iscp_matches_brute_force_and_bounds_scp(inst):
    sol = solve_iscp(inst)
    assert sol.value == brute_force_iscp(inst)[0]
    assert solve_scp(inst).value <= sol.value
    if sol.feasible:
        picks = set(sol.witness)
        assert inst.objective(picks) == sol.value and inst.covers(picks)
        for r, f in zip(inst.blocks(), inst.flags):
            assert len(picks.intersection(r)) == (1 if f == 2 else len(picks.intersection(r))) <= 1


@settings(max_examples=200, deadline=None)
@given(instances(), st.data())
def test_adding_an_element_never_hurts(inst, data):
    if not inst.universe_size:
        return
    i = data.draw(st.integers(0, inst.m - 1))
    e = data.draw(st.integers(0, inst.universe_size - 1))
    family = list(inst.family)
    family[i] |= 1 << e
    bigger = ScpInstance(inst.universe_size, tuple(family), inst.block_sizes, inst.flags)
    assert solve_scp(bigger).value <= solve_scp(inst).value
    if 0 not in inst.flags:
        assert solve_iscp(bigger).value <= solve_iscp(inst).value


def test_dtype_widens_for_large_instances():
    # 2m + q + 1 beyond int16 range
    m = 17000
    inst = ScpInstance(1, tuple([1] * m), (m,), (1,))
    assert solve_scp(inst, witness=False).value == 2
