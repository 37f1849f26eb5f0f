import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import bases_of, brute_force_matroids, exchange_ok

from scmm.census import almost_veronese_family
from scmm.errors import OutOfRegimeError, ZeroIdealError
from scmm.matroid import (
    BasisFamily,
    enumerate_matroidal,
    is_matroidal,
    is_polymatroidal,
)
from scmm.monomial import (
    colon,
    minimalize,
    monomial_scale,
    parse_ideal,
    permute,
    squarefree_veronese,
    support,
    variable,
    zero_ideal,
)

EXAMPLE_N5 = "x1*x2, x1*x3, x1*x4, x1*x5, x2*x3, x2*x4, x3*x5, x4*x5"


class TestRecognition:
    def test_example_n5(self):
        assert is_polymatroidal(parse_ideal(EXAMPLE_N5))

    def test_two_disjoint_edges(self):
        assert not is_polymatroidal(parse_ideal("x1*x2, x3*x4"))

    def test_single_generator(self):
        assert is_polymatroidal(parse_ideal("x1^3*x2"))
        assert is_matroidal(parse_ideal("x2*x4", 5))

    def test_four_cycle(self):
        assert is_matroidal(parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4"))

    def test_veronese_not_squarefree(self):
        I = parse_ideal("x1^2, x1*x2, x2^2")
        assert is_polymatroidal(I) and not is_matroidal(I)

    def test_uniform(self):
        assert is_matroidal(squarefree_veronese(5, 3))

    def test_mixed_degrees(self):
        assert not is_polymatroidal(parse_ideal("x1, x2*x3"))

    def test_zero(self):
        with pytest.raises(ZeroIdealError):
            is_polymatroidal(zero_ideal(3))

    @settings(max_examples=200)
    @given(st.integers(2, 5).flatmap(lambda n: st.tuples(
        st.just(n), st.integers(1, n),
        st.sets(st.integers(0, 2**n - 1), min_size=1, max_size=8),
    )))
    def test_agrees_with_set_exchange(self, args):
        n, d, raw = args
        subsets = list(combinations(range(n), d))
        bases = {frozenset(subsets[x % len(subsets)]) for x in raw}
        I = BasisFamily(n, d, frozenset(bases)).to_ideal()
        assert is_matroidal(I) == exchange_ok(bases)


class TestBasisFamily:
    def test_round_trip(self):
        I = parse_ideal(EXAMPLE_N5)
        fam = BasisFamily.from_ideal(I)
        assert fam.d == 2 and len(fam.bases) == 8 and fam.to_ideal() == I

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            BasisFamily(3, 2, frozenset({frozenset({0})}))


class TestEnumeration:
    def test_three_two(self):
        assert list(enumerate_matroidal(3, 2)) == [squarefree_veronese(3, 2)]

    def test_four_two_contains_known(self):
        got = set(enumerate_matroidal(4, 2))
        assert parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4") in got
        assert squarefree_veronese(4, 2) in got

    def test_three_three(self):
        assert list(enumerate_matroidal(3, 3, False, False)) == [parse_ideal("x1*x2*x3")]

    @pytest.mark.parametrize(
        "n,d,full,gcd1",
        [(3, 1, False, False), (4, 2, True, True), (4, 2, False, False), (5, 2, True, True),
         (5, 3, True, True), (5, 3, False, True), (4, 3, True, False)],
    )
    def test_matches_brute_force(self, n, d, full, gcd1):
        got = [bases_of(I) for I in enumerate_matroidal(n, d, full, gcd1)]
        assert len(got) == len(set(got))
        assert set(got) == brute_force_matroids(n, d, full, gcd1)

    def test_every_emitted_ideal_is_matroidal(self, census):
        for recs in census.values():
            assert all(r.report.matroidal for r in recs)

    def test_deterministic_order(self):
        assert list(enumerate_matroidal(5, 3)) == list(enumerate_matroidal(5, 3, jobs=2))

    def test_closed_under_relabeling(self):
        fam = set(enumerate_matroidal(5, 2))
        rng = random.Random(3)
        for _ in range(10):
            perm = list(range(5))
            rng.shuffle(perm)
            assert {permute(I, perm) for I in fam} == fam

    @pytest.mark.parametrize("n,d", [(7, 3), (8, 2), (6, 0), (3, 4)])
    def test_out_of_regime(self, n, d):
        with pytest.raises(OutOfRegimeError):
            list(enumerate_matroidal(n, d))


def test_almost_veronese_is_matroidal():
    for n in range(2, 7):
        for d in range(1, n):
            for I in almost_veronese_family(n, d):
                assert is_matroidal(I)


def test_scaled_veronese_is_matroidal():
    V = minimalize([g + (0,) for g in squarefree_veronese(4, 2).gens], 5)
    J = monomial_scale(variable(4, 5), V)
    assert is_matroidal(J) and exchange_ok(set(bases_of(J)))


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_relabeling_commutes(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 6)
    d = rng.randint(1, n - 1)
    subsets = list(combinations(range(n), d))
    gens = [tuple(1 if i in s else 0 for i in range(n)) for s in rng.sample(subsets, rng.randint(1, len(subsets)))]
    I = minimalize(gens, n)
    perm = list(range(n))
    rng.shuffle(perm)
    assert is_matroidal(permute(I, perm)) == is_matroidal(I)


def test_localization_stays_matroidal(census):
    for recs in census.values():
        for rec in recs:
            I = parse_ideal(rec.report.gens, rec.report.n)
            for v in support(I):
                J = colon(I, variable(v, I.n))
                assert set(J.degrees) == {I.degrees[0] - 1}
                assert is_matroidal(J)
                assert v not in support(J)
