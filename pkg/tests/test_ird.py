import pytest

from romancvd import Graph, RomanLabeling, clique_components, find_cvd, solve_ird, validate_irdf
from romancvd.oracle import brute_force_ird
from romancvd.ird import (GuessRejected, IrdGuessContext, check_guess_validity,
                          classify_surviving_cliques, ird_guess_count)
from romancvd.pipeline import ModulatorIndex

from conftest import complete, cycle, path
from test_rd import star


def witness_graph():
    # clique {0, 1} with modulator 2 adjacent to 0, plus a separate clique {3, 4}
    return Graph.from_edges(5, [(0, 1), (0, 2), (3, 4)])


def test_forced_flag_on_partially_deleted_clique():
    g = witness_graph()
    d = clique_components(g, [2])
    ctx = IrdGuessContext.make(g, d, {2}, set())
    assert ctx.deleted_by_s1[0] == {0} and ctx.surviving[0] == (1,)
    cls = classify_surviving_cliques(ctx)
    assert cls.flags[0] == 2
    # the unforced reading would label the survivor 1 and leave vertex 0 undominated
    assert not validate_irdf(g, RomanLabeling((0, 1, 1, 2, 0)))
    assert validate_irdf(g, RomanLabeling((0, 2, 1, 2, 0)))
    assert solve_ird(g, {2}).value == brute_force_ird(g)[0]


def test_check_guess_validity_examples():
    # clique {0}: modulator 1 adjacent to it
    g = Graph.from_edges(2, [(0, 1)])
    d = clique_components(g, [1])
    assert not check_guess_validity(g, d, {1}, set())
    assert check_guess_validity(g, d, set(), {1})
    with pytest.raises(GuessRejected):
        classify_surviving_cliques(IrdGuessContext.make(g, d, {1}, set()))
    g = witness_graph()
    assert check_guess_validity(g, clique_components(g, [2]), {2}, set())


def test_classify_surviving_examples():
    k3 = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
    d = clique_components(k3, [3])
    assert classify_surviving_cliques(IrdGuessContext.make(k3, d, set(), set())).flags == (2,)
    k1 = Graph.from_edges(2, [])
    d = clique_components(k1, [1])
    assert classify_surviving_cliques(IrdGuessContext.make(k1, d, set(), set())).flags == (1,)


def test_guesses_must_be_independent():
    g = Graph.from_edges(3, [(0, 1)])
    d = clique_components(g, [0, 1])
    with pytest.raises(ValueError):
        IrdGuessContext.make(g, d, set(), {0, 1})


def test_solve_ird_examples():
    assert solve_ird(complete(6), ()).value == 2
    sol = solve_ird(star(3), {0})
    assert sol.value == 2 and sol.labeling.labels[0] == 2
    assert solve_ird(path(4), {1}).value == 3
    assert solve_ird(cycle(5), {0, 2}).value == 4


def test_invalid_modulator_rejected():
    with pytest.raises(ValueError):
        solve_ird(cycle(5), ())


def test_guess_count_counts_independent_pairs(corpus):
    for g, s, _ in corpus[:60]:
        idx = ModulatorIndex(g, clique_components(g, s))
        s_sorted = sorted(s)
        expected = 0
        for b2 in range(1 << len(s)):
            s2 = {s_sorted[i] for i in range(len(s)) if b2 >> i & 1}
            if not g.is_independent(s2):
                continue
            rest = sorted(set(s) - g.closed_neighborhood(s2))
            for b1 in range(1 << len(rest)):
                s1 = {rest[i] for i in range(len(rest)) if b1 >> i & 1}
                expected += g.is_independent(s1)
        assert ird_guess_count(idx) == expected == solve_ird(g, s).stats["guesses_enumerated"]


def test_modulator_choice_does_not_matter(corpus):
    for g, s, _ in corpus[:120]:
        other = find_cvd(g, len(s))
        assert solve_ird(g, s).value == solve_ird(g, other).value


def test_threads_do_not_change_results():
    from romancvd import gen_cluster_plus_k
    g, s = gen_cluster_plus_k(0, (1, 4), 10, 0.3, 6, total_clique_vertices=40)
    assert solve_ird(g, s, threads=1).to_dict() == solve_ird(g, s, threads=4).to_dict()
