import json
import random

import pytest
from oracles import crossed_family, mono, tail_family, triangle_family

from scmm.census import almost_veronese_family
from scmm.classify import (
    classify_degree2,
    classify_scm,
    decompose_L3,
    is_almost_squarefree_veronese,
    is_squarefree_veronese,
    l3_presentations,
    strip_gcd,
)
from scmm.duality import invariant_report, is_scm
from scmm.errors import NotMatroidalError
from scmm.matroid import enumerate_matroidal, is_matroidal
from scmm.monomial import (
    PrimeRef,
    colon,
    minimalize,
    monomial_scale,
    parse_ideal,
    permute,
    squarefree_veronese,
    support,
    variable,
)

EXAMPLE_N5 = "x1*x2, x1*x3, x1*x4, x1*x5, x2*x3, x2*x4, x3*x5, x4*x5"
RULES = {"R1", "L1", "T1a", "T1b", "P2a", "P2b", "P3a", "P3b", "P4a", "P4b", "P4c", "P4d",
         "P5a", "P5b", "P5c", "P5d", "T2a", "T2b", "T2c", "L5", "L6", "oracle"}
NEGATIVE = {"L3", "L5", "L6", "T1", "P2", "P3", "P4", "P5", "T2"}


def P(text, n=None):
    return parse_ideal(text, n)


class TestVeroneseFamily:
    def test_almost_but_not_veronese(self):
        V = squarefree_veronese(4, 2)
        I = minimalize([g for g in V.gens if g != (0, 0, 1, 1)], 4)
        assert is_almost_squarefree_veronese(I) and not is_squarefree_veronese(I)

    def test_veronese_counts_as_almost(self):
        V = squarefree_veronese(5, 3)
        assert is_squarefree_veronese(V) and is_almost_squarefree_veronese(V)

    def test_disjoint_edges(self):
        I = P("x1*x2, x3*x4")
        assert not is_squarefree_veronese(I) and not is_almost_squarefree_veronese(I)

    def test_mixed_degrees(self):
        with pytest.raises(ValueError):
            is_squarefree_veronese(P("x1, x2*x3"))


class TestStripGcd:
    def test_scaled_almost_veronese(self):
        base = minimalize([g + (0,) for g in P("x1*x2, x1*x3, x1*x4, x2*x3, x2*x4").gens], 5)
        g, core = strip_gcd(monomial_scale(variable(4, 5), base))
        assert g == (0, 0, 0, 0, 1) and core == base

    def test_identity(self):
        I = P(EXAMPLE_N5)
        assert strip_gcd(I) == ((0,) * 5, I)

    def test_two_variable_gcd(self):
        g, core = strip_gcd(P("x1*x4*x5, x2*x4*x5, x3*x4*x5"))
        assert g == (0, 0, 0, 1, 1) and core == P("x1, x2, x3", 5)


class TestDecomposition:
    def test_triangle_shape(self):
        J = P("x1*x2*x3, x1*x2*x4, x1*x2*x5, x1*x3*x4, x1*x3*x5, x2*x3*x4, x2*x3*x5")
        w = decompose_L3(J, 3)
        assert w.ys == (0, 1) and w.p == PrimeRef((2, 3, 4))
        q = P("x3*x4, x3*x5", 5)
        assert w.subideals == (q, q, minimalize([], 5))
        assert w.reassemble() == J

    def test_veronese_four_two(self):
        w = decompose_L3(squarefree_veronese(4, 2), 2)
        assert w.ys == (0,) and w.p == PrimeRef((1, 2, 3))
        assert w.subideals[0] == P("x2*x3, x2*x4, x3*x4", 4)

    def test_example_n5_matches_exhaustive_search(self):
        J = P(EXAMPLE_N5)
        valid = []
        for v in range(5):
            c = colon(J, variable(v, 5))
            if all(sum(g) == 1 for g in c.gens) and len(c.gens) == 4:
                valid.append(v)
        w = decompose_L3(J, 2)
        assert (w is None) == (not valid)
        if w is not None:
            assert w.ys == (valid[0],)
            assert not classify_scm(J).scm

    def test_presentations_are_exactly_the_prime_colons(self):
        from itertools import combinations

        for J in enumerate_matroidal(5, 3):
            found = {w.ys for w in l3_presentations(J, 3)}
            expected = set()
            for Y in combinations(range(5), 2):
                c = colon(J, mono(Y, 5))
                rest = tuple(v for v in range(5) if v not in Y)
                if c == minimalize([variable(v, 5) for v in rest], 5):
                    expected.add(Y)
            assert found == expected

    def test_not_matroidal(self):
        with pytest.raises(NotMatroidalError):
            decompose_L3(P("x1*x2, x3*x4"), 2)


class TestDegreeTwo:
    def test_case_b(self):
        J = P("x1*x2, x1*x3, x1*x4, x2*x3, x2*x4")
        r = classify_degree2(J)
        assert r.scm and r.rule == "T1b"
        assert r.witness.reassemble() == J

    def test_example_n5(self):
        r = classify_degree2(P(EXAMPLE_N5))
        assert not r.scm

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_veronese(self, n):
        V = squarefree_veronese(n, 2)
        r = classify_degree2(V)
        assert r.scm == is_scm(V) and r.rule == "T1a"
        trace = r.witness.structure.trace()
        assert len(trace) == n - 2 and "b:" in trace[-1]

    def test_wrong_degree(self):
        with pytest.raises(ValueError):
            classify_degree2(squarefree_veronese(5, 3))


class TestDispatcher:
    def test_p4_case_d(self):
        ys = "x1*x2*x3*x4, x1*x2*x3*x5, x1*x2*x3*x6"
        pieces = ", ".join(f"{a}*x4*{b}" for a in ("x1*x2", "x1*x3", "x2*x3") for b in ("x5", "x6"))
        J = P(f"{ys}, {pieces}")
        r = classify_scm(J)
        assert r.rule == "P4d" and r.scm and is_scm(J)

    def test_crossed_shape(self):
        J = P("x1*x2*x3, x1*x2*x4, x1*x2*x5, x1*x2*x6, x1*x3*x4, x1*x3*x5, x1*x3*x6, "
              "x2*x3*x4, x2*x4*x5, x2*x4*x6, x3*x4*x5, x3*x4*x6")
        assert is_matroidal(J)
        r = classify_scm(J)
        assert r.rule == "L5" and not r.scm and not is_scm(J)

    def test_triangle_shape_n5(self):
        J = P("x1*x2*x3, x1*x2*x4, x1*x2*x5, x1*x3*x4, x1*x3*x5, x2*x3*x4, x2*x3*x5")
        r = classify_scm(J)
        assert r.rule == "P3b" and r.scm

    def test_gcd_is_stripped(self):
        J = monomial_scale(variable(5, 6), minimalize([g + (0,) for g in P(EXAMPLE_N5).gens], 6))
        r = classify_scm(J)
        assert not r.scm and r.witness.gcd == (0,) * 5 + (1,)
        assert r.witness.reassemble() == J

    def test_fallback(self):
        r = classify_scm(squarefree_veronese(7, 3))
        assert r.rule == "oracle" and r.verdict == "fallback-oracle" and r.scm

    def test_not_matroidal(self):
        with pytest.raises(NotMatroidalError):
            classify_scm(P("x1*x2, x3*x4"))

    def test_json(self):
        r = classify_scm(P("x1*x2, x1*x3, x1*x4, x2*x3, x2*x4, x3*x4, x1*x5, x2*x5, x3*x5, x4*x5"))
        data = json.loads(json.dumps(r.to_json()))
        assert data["verdict"] == "SCM" and data["rule"] == r.rule
        assert data["witness"]["structure"]["kind"] in {"T1", "L3"}


class TestCensus:
    def test_rules_and_verdicts(self, census):
        for recs in census.values():
            for rec in recs:
                res = rec.result
                assert res.rule in RULES | NEGATIVE
                if res.rule in NEGATIVE:
                    assert not res.scm

    def test_witness_fidelity(self, census):
        for recs in census.values():
            for rec in recs:
                I = P(rec.report.gens, rec.report.n)
                assert rec.result.witness is not None
                assert rec.result.witness.reassemble() == I

    def test_l3_subideals_have_the_right_support(self, census):
        for key in [(5, 3), (6, 3), (6, 4)]:
            for rec in census[key]:
                s = rec.result.witness.structure
                if s is None or not rec.result.scm:
                    continue
                rest = set(s.p.vars)
                for J in s.subideals[:-1]:
                    if not J.is_zero:
                        assert support(J) <= rest

    def test_relabeling(self, census):
        rng = random.Random(9)
        for (n, _), recs in census.items():
            for rec in rng.sample(recs, min(25, len(recs))):
                I = P(rec.report.gens, rec.report.n)
                perm = list(range(n))
                rng.shuffle(perm)
                assert classify_scm(permute(I, perm)).scm == rec.result.scm


def test_small_supports_always_scm():
    for d in (1, 2, 3):
        for I in enumerate_matroidal(3, d, False, False):
            r = classify_scm(I)
            assert r.scm and r.rule in {"R1", "L1"}


@pytest.mark.parametrize("n", range(2, 7))
def test_extreme_degrees(n):
    for d in {1, n - 1, n}:
        for I in enumerate_matroidal(n, d, True, False):
            r = classify_scm(I)
            assert r.scm and r.rule == "R1" and is_scm(I)


def test_almost_veronese_family():
    for n in range(2, 7):
        for d in range(1, n):
            for I in almost_veronese_family(n, d):
                r = classify_scm(I)
                assert r.scm and is_scm(I), (I, r.rule)


def test_four_variables_projdim_equals_bight():
    for d in range(1, 5):
        for I in enumerate_matroidal(4, d, True, False):
            r = invariant_report(I)
            assert r.is_scm == (r.projdim_quotient == r.bight)


@pytest.mark.parametrize("n", [5, 6])
def test_triangle_family_scm(n):
    for J in triangle_family(n):
        assert is_matroidal(J) and is_scm(J) and classify_scm(J).scm


@pytest.mark.parametrize("n", [5, 6])
def test_crossed_family_not_scm(n):
    for J in crossed_family(n):
        r = classify_scm(J)
        assert is_matroidal(J) and not is_scm(J) and not r.scm and r.rule == "L5"


def test_tail_family_never_scm_matroidal():
    for J in tail_family(6):
        assert not (is_matroidal(J) and is_scm(J))
