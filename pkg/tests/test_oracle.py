import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from restricted2m import InstanceTooLarge, Variant, WeightedGraph, brute_force_solve, is_restricted_2matching, set_weight
from restricted2m.generate import generate
from restricted2m.oracle import iter_restricted_2matchings

from conftest import random_subcubic

# Optima computed once by the exhaustive oracle and frozen here.
FROZEN = [
    ("triangle-free", "subcubic", 8, 1, 10, 72),
    ("triangle-free", "subcubic", 10, 2, 12, 142),
    ("triangle-free", "subcubic", 12, 3, 15, 106),
    ("triangle-free", "planted-triangles", 10, 2, 14, 133),
    ("triangle-free", "planted-triangles", 12, 3, 16, 133),
    ("square-free", "vertex-induced", 8, 1, 10, 65),
    ("square-free", "vertex-induced", 12, 3, 15, 94),
    ("square-free", "planted-squares", 8, 1, 11, 56),
    ("square-free", "planted-squares", 10, 2, 15, 126),
    ("square-free", "planted-squares", 12, 3, 14, 107),
    ("c4-free", "planted-double-triangles", 8, 1, 12, 54),
    ("c4-free", "planted-double-triangles", 10, 2, 15, 86),
    ("c4-free", "planted-double-triangles", 12, 3, 15, 107),
    ("c4-free", "vertex-induced", 10, 2, 12, 130),
]


@pytest.mark.parametrize("variant, mode, n, seed, m, best", FROZEN)
def test_frozen_optima(variant, mode, n, seed, m, best):
    from restricted2m import solve

    g = generate(n, seed, mode)
    assert g.m == m
    assert set_weight(g, brute_force_solve(g, variant)) == best
    assert set_weight(g, solve(g, variant)) == best


def test_small_examples(triangle345, unit_square, unit_k4):
    assert set_weight(triangle345, brute_force_solve(triangle345, "triangle-free")) == 9
    assert set_weight(triangle345, brute_force_solve(triangle345, "square-free")) == 12
    assert set_weight(unit_square, brute_force_solve(unit_square, "square-free")) == 3
    assert set_weight(unit_k4, brute_force_solve(unit_k4, "triangle-free")) == 4
    assert set_weight(unit_k4, brute_force_solve(unit_k4, "c4-free")) == 3


def test_edge_limit():
    g = WeightedGraph(20, [(i, (i + 1) % 20, 1) for i in range(20)] + [(i, i + 10, 1) for i in range(5)])
    with pytest.raises(InstanceTooLarge):
        brute_force_solve(g, "triangle-free")


def _subsets(g, variant):
    return {
        frozenset(c)
        for r in range(g.m + 1)
        for c in combinations(range(g.m), r)
        if is_restricted_2matching(g, c, variant)
    }


@given(st.integers(0, 2**32 - 1), st.integers(1, 7), st.sampled_from(list(Variant)))
def test_enumeration_matches_subsets(seed, n, variant):
    g = random_subcubic(random.Random(seed), n, 3 * n)
    got = list(iter_restricted_2matchings(g, variant))
    assert len(got) == len(set(got))
    assert set(got) == _subsets(g, variant)


@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.sampled_from(list(Variant)))
def test_optimum_is_max_over_enumeration(seed, n, variant):
    g = random_subcubic(random.Random(seed), n, 3 * n)
    best = brute_force_solve(g, variant)
    assert is_restricted_2matching(g, best, variant)
    assert set_weight(g, best) == max(set_weight(g, s) for s in iter_restricted_2matchings(g, variant))
