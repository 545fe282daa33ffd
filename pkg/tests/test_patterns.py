import warnings
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from gallai_lab.coloring import EdgeColoring, build_coloring, from_function, monochromatic
from gallai_lab.patterns import (PatternError, SubgraphPattern, automorphism_count,
                                 copies_in_complete, count_matchings, count_monochromatic, count_rainbow,
                                 count_rainbow_stars, count_two_matchings_in_broom, find_mono_spanning_broom,
                                 find_rainbow_copy, find_rainbow_triangle, gm_total, has_monochromatic, has_rainbow,
                                 is_spanning_broom, parse_pattern, ramsey_total)

import oracles

PATTERNS = {
    "mK2:2": oracles.matching_edges(2),
    "mK2:3": oracles.matching_edges(3),
    "P:4": oracles.path_edges(4),
    "P:5": oracles.path_edges(5),
    "S:3": oracles.star_edges(3),
    "K3": oracles.TRIANGLE,
}


@st.composite
def colorings(draw, n_max=6, k_max=4):
    n = draw(st.integers(2, n_max))
    k = draw(st.integers(1, k_max))
    cols = draw(st.lists(st.integers(1, k), min_size=comb(n, 2), max_size=comb(n, 2)))
    return EdgeColoring(n, k, tuple(cols))


@settings(max_examples=40, deadline=None)
@given(colorings(), st.sampled_from(sorted(PATTERNS)))
def test_counts_agree_with_bruteforce(c, name):
    p = parse_pattern(name)
    edges, nv = PATTERNS[name]
    assert count_rainbow(c, p) == oracles.count_rainbow(c.n, c.colors, edges, nv)
    for color in range(1, c.k + 1):
        assert count_monochromatic(c, p, color) == oracles.count_mono(c.n, c.colors, edges, nv, color)


@settings(max_examples=30, deadline=None)
@given(colorings(n_max=7), st.integers(2, 6))
def test_rainbow_star_shortcut_matches_embedding_count(c, s):
    if s + 1 > c.n:
        return
    edges, nv = oracles.star_edges(s)
    assert count_rainbow_stars(c, s) == oracles.count_rainbow(c.n, c.colors, edges, nv)


def test_pattern_syntax_round_trip():
    for text in ("mK2:3", "P:5", "S:3", "K3", "B:3,2", "edges:[[0, 1], [1, 2]]"):
        p = parse_pattern(text)
        assert parse_pattern(str(p)) == p
    with pytest.raises(PatternError):
        parse_pattern("Q:4")
    with pytest.raises(PatternError):
        parse_pattern("P:x")


def test_arbitrary_pattern_normalizes():
    p = SubgraphPattern.arbitrary([(5, 3), (3, 7)])
    assert p.n_vertices == 3
    assert p.edges == ((0, 1), (0, 2))
    with pytest.raises(PatternError):
        SubgraphPattern.arbitrary([(1, 1)])


def test_automorphisms():
    assert automorphism_count(SubgraphPattern.matching(2)) == 8
    assert automorphism_count(SubgraphPattern.path(5)) == 2
    assert automorphism_count(SubgraphPattern.star(3)) == 6
    assert automorphism_count(SubgraphPattern.triangle()) == 6


def test_copies_in_complete_counts():
    assert len(copies_in_complete(SubgraphPattern.matching(2), 4)) == 3
    assert len(copies_in_complete(SubgraphPattern.path(5), 6)) == 360
    assert len(copies_in_complete(SubgraphPattern.star(3), 5)) == 5 * 4
    assert len(copies_in_complete(SubgraphPattern.matching(3), 6)) == 15


def test_matching_dp_against_complete_graph():
    full = (1 << 6) - 1
    masks = [full & ~(1 << v) for v in range(6)]
    assert count_matchings(masks, 2) == 45
    assert count_matchings(masks, 3) == 15
    assert count_matchings(masks, 4) == 0


def test_monochromatic_k4_examples():
    c = monochromatic(4)
    assert count_monochromatic(c, SubgraphPattern.matching(2), 1) == 3
    assert not has_rainbow(c, SubgraphPattern.triangle())


def test_rainbow_finders_return_valid_witnesses():
    c = build_coloring(4, [(0, 1, 1), (0, 2, 2), (1, 2, 3), (0, 3, 1), (1, 3, 1), (2, 3, 1)])
    tri = find_rainbow_triangle(c)
    assert tri == (0, 1, 2)
    star = find_rainbow_copy(c, SubgraphPattern.star(2))
    assert star is not None
    assert find_rainbow_copy(monochromatic(5), SubgraphPattern.path(3)) is None


def test_has_monochromatic_any_color():
    c = from_function(5, lambda u, v: 1 if u == 0 else 2)
    assert has_monochromatic(c, SubgraphPattern.matching(2))
    assert not has_monochromatic(c, SubgraphPattern.matching(2), color=1)


def test_gm_and_ramsey_totals():
    c = from_function(5, lambda u, v: 1 + (u + v) % 2)
    rep = gm_total(c, SubgraphPattern.triangle(), SubgraphPattern.matching(2))
    assert rep.rainbow == 0
    assert rep.total == sum(oracles.count_mono(5, c.colors, *oracles.matching_edges(2), color=col) for col in (1, 2))
    rt = ramsey_total(c, [SubgraphPattern.matching(2), SubgraphPattern.matching(2)])
    assert rt.total == rep.mono_total


@pytest.mark.parametrize("m,leaves,expected", [(2, 0, 0), (2, 1, 1), (3, 0, 1), (4, 0, 3), (3, 2, 5)])
def test_two_matchings_in_broom(m, leaves, expected):
    assert count_two_matchings_in_broom(m, leaves) == expected


def test_spanning_broom_found_and_validated():
    for seed in range(6):
        c = from_function(7, lambda u, v, s=seed: 1 + (((u ^ v) + s) % 2))
        b = find_mono_spanning_broom(c)
        assert b is not None
        assert is_spanning_broom(c, b)
        assert len(b.edges()) == c.n - 1


def test_spanning_broom_in_monochromatic_host_is_a_path():
    c = monochromatic(6)
    b = find_mono_spanning_broom(c)
    assert is_spanning_broom(c, b)


def test_spanning_broom_warns_on_rainbow_triangle():
    c = build_coloring(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        b = find_mono_spanning_broom(c)
    assert caught
    assert b is None or is_spanning_broom(c, b)

