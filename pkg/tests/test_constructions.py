import pytest

from gallai_lab import constructions as C
from gallai_lab.patterns import SubgraphPattern

import oracles

M2 = oracles.matching_edges(2)


def test_registry_builds_every_entry_at_small_parameters():
    params = {
        "cyclic-blowup-3col": {"n": 2}, "dominant-matching": {"k": 4, "n": 4}, "cone": {"k": 5, "n": 3},
        "dominant-big": {"k": 4, "n": 5}, "G1": {"n": 6, "sizes": (2, 2, 2)}, "GM3-K13": {"n": 2},
        "stripes-multiplicity": {"n_list": (2, 2)}, "sequential-cones": {"k": 6}, "gm-k3-matching": {"k": 6, "n": 2},
        "prop-k2n": {"k": 5, "n": 4}, "thm-k3n1": {"k": 5, "n": 6}, "lemcount": {"k": 3},
    }
    assert set(params) == set(C.CONSTRUCTIONS)
    for cid, p in params.items():
        rep = C.build_construction(cid, p)
        assert rep.coloring.n >= 2
        assert rep.to_dict()["coloring"]["n"] == rep.coloring.n


def test_sequential_cones_k9():
    c = C.construct_sequential_cones(6)
    assert c.n == 9 and c.is_exact(6)
    assert oracles.count_rainbow(9, c.colors, *oracles.TRIANGLE) == 0
    assert oracles.count_mono(9, c.colors, *M2) == 3


def test_stripes_totals():
    c = C.construct_stripes_multiplicity((2, 2))
    assert c.n == 5
    assert oracles.count_mono(5, c.colors, *M2, color=1) + oracles.count_mono(5, c.colors, *M2, color=2) == 3
    c = C.construct_stripes_multiplicity((3, 2))
    total = (oracles.count_mono(7, c.colors, *oracles.matching_edges(3), color=1)
             + oracles.count_mono(7, c.colors, *M2, color=2))
    assert total == 15


def test_cone_avoids_rainbow_p5_and_mono_matching():
    c = C.construct_cone(5, 3)
    assert c.n == 6 and c.is_exact(5)
    assert oracles.count_rainbow(6, c.colors, *oracles.path_edges(5)) == 0
    assert oracles.count_mono(6, c.colors, *oracles.matching_edges(3)) == 0


def test_dominant_matching_avoids_rainbow_star():
    c = C.construct_dominant_matching(4, 4)
    assert oracles.count_rainbow(c.n, c.colors, *oracles.star_edges(3)) == 0
    assert oracles.count_mono(c.n, c.colors, *oracles.matching_edges(4)) == 0


@pytest.mark.parametrize("seed", [None, 1, 2, 3])
def test_g1_family_is_rainbow_star_free(seed):
    c = C.construct_G1(6, (2, 2, 2), mixed_seed=seed)
    assert c.n == 6 and c.is_exact(3)
    assert oracles.count_rainbow(6, c.colors, *oracles.star_edges(3)) == 0


def test_gm3_k13_construction_counts():
    # the three-clique coloring on K_6 has 12 rainbow stars and 9 monochromatic 2-matchings
    c = C.construct_GM3_K13(2)
    assert oracles.count_rainbow(6, c.colors, *oracles.star_edges(3)) == 12
    assert oracles.count_mono(6, c.colors, *M2) == 9


def test_cyclic_blowup_claims_fail_and_strict_raises():
    rep = C.build_construction("cyclic-blowup-3col", {"n": 2})
    assert not rep.all_hold
    assert oracles.count_rainbow(5, rep.coloring.colors, *oracles.star_edges(3)) == 6
    with pytest.raises(C.ConstructionClaimError):
        C.build_construction("cyclic-blowup-3col", {"n": 2}, strict=True)


def test_lemcount_coloring_shape():
    c = C.construct_lemcount(3)
    assert c.n == 4
    # the color-1 class of K_4 minus a perfect matching is a 4-cycle, which has two 2-matchings
    assert oracles.count_mono(4, c.colors, *M2, color=1) == 2
    assert sorted(c.colors).count(1) == 4


def test_prop_k2n_host_size_and_note():
    rep = C.build_construction("prop-k2n", {"k": 5, "n": 4})
    assert rep.coloring.n == 10
    assert rep.all_hold
    assert rep.notes


def test_parameter_errors():
    with pytest.raises(C.ConstructionError):
        C.construct_dominant_matching(2, 3)
    with pytest.raises(C.ConstructionError):
        C.construct_prop_k2n(4, 2)
    with pytest.raises(C.ConstructionError):
        C.build_construction("cone", {"k": 5})
    with pytest.raises(C.ConstructionError):
        C.build_construction("nope", {})


def test_claim_descriptions_mention_patterns():
    cl = C.Claim("no_rainbow", SubgraphPattern.path(5))
    assert "P:5" in cl.describe()
    res = C.check_claim(C.construct_cone(5, 3), cl)
    assert res.holds and res.observed == 0
