from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gallai_lab.coloring import EdgeColoring, build_coloring, from_function, monochromatic
from gallai_lab.constructions import construct_cone, construct_dominant_big, construct_dominant_matching, construct_G1
from gallai_lab.patterns import SubgraphPattern, TheoremContradiction, has_rainbow
from gallai_lab.structure import (PreconditionError, classify_rainbow_k13_free, classify_rainbow_p5_free,
                                  dominant_structure, gallai_partition, is_gallai_partition, local_partition,
                                  module_closure, observation_checks)
from gallai_lab import checks


def _blow_up(base: EdgeColoring, sizes, inner):
    where = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(where)
    return from_function(n, lambda u, v: inner[where[u]] if where[u] == where[v] else base.chi(where[u], where[v]))


def test_monochromatic_k4_partition():
    gp = gallai_partition(monochromatic(4))
    assert gp.parts == [[0], [1, 2, 3]]
    assert gp.reduced_colors == {1}


def test_blow_up_of_two_colored_edge():
    base = build_coloring(2, [(0, 1, 1)])
    c = _blow_up(base, (2, 3), (2, 3))
    gp = gallai_partition(c)
    assert is_gallai_partition(c, gp.parts)
    assert len(gp.parts) == 2
    assert gp.reduced_colors == {1}


def test_singletons_are_valid_for_a_two_colored_path():
    c = build_coloring(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 2), (0, 3, 2), (1, 3, 2)])
    assert is_gallai_partition(c, [[0], [1], [2], [3]])
    gp = gallai_partition(c)
    assert is_gallai_partition(c, gp.parts)


def test_rainbow_triangle_is_rejected_with_witness():
    c = build_coloring(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])
    with pytest.raises(PreconditionError) as err:
        gallai_partition(c)
    assert tuple(err.value.witness) == (0, 1, 2)


def test_validator_rejects_bad_partitions():
    c = monochromatic(4)
    assert not is_gallai_partition(c, [[0, 1, 2, 3]])
    assert not is_gallai_partition(c, [[0, 1], [1, 2, 3]])
    c3 = from_function(4, lambda u, v: 1 + (u + v) % 3)
    assert not is_gallai_partition(c3, [[0], [1], [2], [3]])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, 2), min_size=comb(n, 2), max_size=comb(n, 2)))))
def test_two_colorings_always_partition(data):
    n, cols = data
    c = EdgeColoring(n, 2, tuple(cols))
    gp = gallai_partition(c)
    assert is_gallai_partition(c, gp.parts)


def test_module_closure_grows_to_a_module():
    c = from_function(5, lambda u, v: 1 if (u < 2) == (v < 2) else 2)
    S = module_closure(c, {0, 1})
    assert S == {0, 1}
    S = module_closure(c, {0, 2})
    for w in set(range(5)) - S:
        assert len({c.chi(w, s) for s in S}) == 1


def test_p5_classifier_cases():
    cases = {s.case for s in classify_rainbow_p5_free(construct_cone(5, 3))}
    assert "c" in cases
    assert "b" in {s.case for s in classify_rainbow_p5_free(construct_dominant_matching(4, 4))}
    assert "b" in {s.case for s in classify_rainbow_p5_free(construct_dominant_big(4, 5))}
    assert "a" in {s.case for s in classify_rainbow_p5_free(monochromatic(5))}


def test_p5_classifier_rejects_rainbow_path():
    c = from_function(5, lambda u, v: 1 + (u + v) % 5)
    assert has_rainbow(c, SubgraphPattern.path(5))
    with pytest.raises(PreconditionError):
        classify_rainbow_p5_free(c)


def test_k13_classifier_recovers_g1_parts():
    c = construct_G1(6, (2, 2, 2))
    s = classify_rainbow_k13_free(c)
    assert s.case == "b"
    assert checks.g1_clauses_hold(c, s.witness["parts"], s.renumbering)


def test_k13_classifier_dominant_case():
    s = classify_rainbow_k13_free(construct_dominant_matching(5, 5))
    assert s.case == "c"
    assert dominant_structure(construct_dominant_matching(5, 5), [k for k, v in s.renumbering.items() if v == 1][0])


def test_k13_classifier_rejects_rainbow_star():
    c = build_coloring(4, [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
    with pytest.raises(PreconditionError) as err:
        classify_rainbow_k13_free(c)
    assert err.value.witness["center"] == 0


def test_k13_classifier_small_cases():
    assert classify_rainbow_k13_free(monochromatic(5)).case == "a"


def test_local_partition_rainbow_triangle():
    c = build_coloring(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])
    lp = local_partition(c, 2)
    assert lp.shape == "m = k+1"
    assert sorted(lp.classes) == [(1, 2), (1, 3), (2, 3)]
    assert all(len(vs) == 1 for vs in lp.classes.values())


def test_local_partition_monochromatic():
    lp = local_partition(monochromatic(5), 2)
    assert lp.shape == "m <= k"
    assert sum(len(v) for v in lp.classes.values()) == 5


def test_local_partition_rejects_too_many_colors():
    c = build_coloring(4, [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
    with pytest.raises(PreconditionError):
        local_partition(c, 2)


def test_local_partition_covers_vertices():
    c = from_function(6, lambda u, v: 1 + (u % 2) + (v % 2))
    lp = local_partition(c, 3)
    seen = sorted(v for vs in lp.classes.values() for v in vs)
    assert seen == list(range(6))
    for key, vs in lp.classes.items():
        for v in vs:
            assert c.color_neighborhood(v) <= set(key)


def test_rainbow_k4_breaks_the_common_core():
    # six colors, each vertex sees three: the classes share no common pair of colors
    c = EdgeColoring(4, 6, (1, 2, 3, 4, 5, 6))
    lp = local_partition(c, 3)
    assert lp.shape == "m >= k+2"
    assert lp.core_holds is False


def test_observation_two_colors():
    c = build_coloring(4, [(0, 1, 1), (2, 3, 1), (0, 2, 2), (0, 3, 2), (1, 2, 2), (1, 3, 2)])
    rep = observation_checks(c)
    assert rep["colors"] == 2 and rep["holds"]


def test_observation_three_color_counterexample():
    # color 1 on a 4-cycle, two more colors on its diagonals: no rainbow triangle at all
    c = build_coloring(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (0, 3, 2), (1, 2, 3)])
    rep = observation_checks(c)
    assert rep["colors"] == 3
    assert rep["rainbow_triangles"] == 0
    assert rep["holds"] is False


def test_observation_preconditions():
    with pytest.raises(PreconditionError):
        observation_checks(monochromatic(5))
    c = build_coloring(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 2), (1, 3, 2), (2, 3, 2)])
    with pytest.raises(PreconditionError):
        observation_checks(c)


def test_k13_classifier_covers_every_avoider_on_k5():
    for c in checks.canonical_avoiders(SubgraphPattern.star(3), 5, 5)[5]:
        try:
            classify_rainbow_k13_free(c)
        except TheoremContradiction:
            pytest.fail(f"no case for {c.to_dict()}")
