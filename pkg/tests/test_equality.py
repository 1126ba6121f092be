import random
from fractions import Fraction as F

import pytest

from hgdecide import enclosure
from hgdecide.config import DEFAULT_CONFIG, EngineConfig
from hgdecide.equality import (
    _unconditional_oracle,
    compare,
    decide,
    decide_equal,
    decide_membership,
    decide_threshold,
)
from hgdecide.errors import PrecisionExceeded, UnsupportedInstance
from hgdecide.gammacanon import CanonicalConstant
from hgdecide.polys import IntPoly
from hgdecide.sequence import BruteKind, HGInstance, Problem, brute_force, term
from hgdecide.verdicts import Conditionality, Rationale


def inst(p, q, u0, t, problem=Problem.MEMBERSHIP):
    return HGInstance(IntPoly(tuple(p)), IntPoly(tuple(q)), F(u0), F(t), problem)


def trivial_const(theta, ell=0):
    return CanonicalConstant(F(theta), F(0), ell, IntPoly.of(1), IntPoly.of(1), 1, 1, True)


class TestDecideEqual:
    def test_worked_example_never_rational(self, sinh_ratio_instance):
        oracle = _unconditional_oracle(sinh_ratio_instance(F(1, 13)), DEFAULT_CONFIG)
        for t in (F(1, 13), F(22, 7), F(-3), F(10**6, 999983)):
            r = oracle.decide_equal(t)
            assert not r.equal and r.rationale is Rationale.TRANSCENDENCE_OBSTRUCTION

    def test_rational_identity(self):
        assert decide_equal(trivial_const(F(3, 2)), F(3, 2)).equal
        r = decide_equal(trivial_const(F(3, 2)), F(5, 2))
        assert not r.equal and r.rationale is Rationale.RATIONAL_IDENTITY

    def test_pi_power_obstruction(self):
        r = decide_equal(trivial_const(1, ell=1), F(22, 7))
        assert not r.equal and r.rationale is Rationale.PI_POWER_OBSTRUCTION

    def test_no_interval_evaluations(self, sinh_ratio_instance):
        oracle = _unconditional_oracle(sinh_ratio_instance(F(1, 13)), DEFAULT_CONFIG)
        rng = random.Random(11)
        before = enclosure.evaluation_count()
        for _ in range(300):
            t = F(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
            oracle.decide_equal(t)
        assert enclosure.evaluation_count() == before

    def test_deterministic(self, sinh_ratio_instance):
        oracle = _unconditional_oracle(sinh_ratio_instance(F(1, 13)), DEFAULT_CONFIG)
        a = [oracle.decide_equal(F(5, 7)) for _ in range(3)]
        assert all(x == a[0] for x in a)

    def test_irrational_theta_never_equals_rational(self):
        c = CanonicalConstant(F(0), F(2, 3), 0, IntPoly.of(1), IntPoly.of(1), 2, 1, False)
        r = decide_equal(c, F(7))
        assert not r.equal and r.rationale is Rationale.RATIONAL_IDENTITY


class TestCompare:
    def test_worked_example_sides(self, sinh_ratio_instance):
        oracle = _unconditional_oracle(sinh_ratio_instance(F(1, 13)), DEFAULT_CONFIG)
        assert oracle.compare(F(1, 26))[0] < 0  # limit ~ 4.78e-5 < 1/26
        assert oracle.compare(F(1, 10**5))[0] > 0

    def test_pi_vs_22_7(self):
        sign, bits = compare(trivial_const(1, ell=1), F(22, 7))
        assert sign < 0 and bits == 64

    def test_cap_is_resource_error(self):
        cfg = EngineConfig(precision_cap_bits=64)
        # 1/3 vs a rational insanely close to it cannot separate at 64 bits
        close = F(1, 3) + F(1, 2**200)
        with pytest.raises(PrecisionExceeded):
            compare(trivial_const(F(1, 3)), close, cfg)


class TestMembershipPipeline:
    def test_worked_example_members(self, sinh_ratio_instance):
        v = decide(sinh_ratio_instance(F(1, 13)))
        assert v.result and v.witness == 2 and v.conditionality is Conditionality.UNCONDITIONAL
        v2 = decide(sinh_ratio_instance(F(5, 13)))
        assert v2.result and v2.witness == 1

    def test_worked_example_not_member(self, sinh_ratio_instance):
        v = decide(sinh_ratio_instance(F(1, 7)))
        assert not v.result and v.conditionality is Conditionality.UNCONDITIONAL

    def test_powers_of_two(self):
        v = decide(inst([1], [2], 3, 48))
        assert v.result and v.witness == 4

    def test_least_witness(self):
        # constant-ratio sequence hitting t twice is impossible; check least
        # witness on a shrink instance where u_1 == u_0 * 1/2 etc.
        i = inst([2, 1], [1, 1], 1, F(1, 5))
        v = decide(i)
        assert v.result and v.witness == 4 and term(i, 4) == F(1, 5)

    def test_limit_equal_target_never_attained(self):
        p = IntPoly.of(4, 5, 1)
        q = IntPoly.of(6, 5, 1)
        i = HGInstance(p, q, F(3), F(9), Problem.MEMBERSHIP)  # limit = 3*u0 = 9
        v = decide(i)
        assert not v.result and v.reason == "limit_equals_target_not_attained"
        assert v.equality_rationale is Rationale.RATIONAL_IDENTITY

    def test_non_monic_balanced_unsupported(self):
        with pytest.raises(UnsupportedInstance):
            decide(inst([1, 1, 2], [3, 1, 2], 1, F(1, 2)))

    def test_non_monic_bounded_regimes_still_decide(self):
        # u_n telescopes to 2n+1, so 7 is reached at n = 3
        v = decide(inst([1, 2], [3, 2], 1, 7))
        assert v.result and v.witness == 3

    def test_ratio_minus_one_unsupported(self):
        with pytest.raises(UnsupportedInstance):
            decide(inst([1, 1], [-1, -1], 1, 5))


class TestThresholdPipeline:
    def test_worked_example_fails_at_three(self, sinh_ratio_instance):
        v = decide(sinh_ratio_instance(F(1, 26), Problem.THRESHOLD))
        assert not v.result and v.witness == 3

    def test_zero_threshold_holds(self, sinh_ratio_instance):
        v = decide(sinh_ratio_instance(F(0), Problem.THRESHOLD))
        assert v.result

    def test_powers_hold(self):
        assert decide(inst([1], [2], 1, 1, Problem.THRESHOLD)).result

    def test_decreasing_to_limit(self):
        p, q = IntPoly.of(6, 5, 1), IntPoly.of(4, 5, 1)
        mk = lambda t: HGInstance(p, q, F(3), F(t), Problem.THRESHOLD)
        assert decide(mk(1)).result  # limit exactly 1, approached from above
        assert decide(mk(F(99, 100))).result
        v = decide(mk(F(101, 100)))
        assert not v.result and term(HGInstance(p, q, F(3), F(0), Problem.THRESHOLD), v.witness) < F(101, 100)


class TestVerdictOracleConsistency:
    def test_small_random_sweep(self):
        rng = random.Random(5)
        checked = 0
        for _ in range(60):
            a = rng.randint(-3, 3)
            d = rng.choice([-1, -2, -3, -7])
            b1, b2 = rng.randint(1, 3), rng.randint(1, 3)
            i = inst(
                [a * a - b1 * b1 * d, -2 * a, 1], [a * a - b2 * b2 * d, -2 * a, 1],
                F(rng.randint(1, 4)),
                F(rng.randint(-30, 30) or 1, rng.randint(1, 30)),
                rng.choice([Problem.MEMBERSHIP, Problem.THRESHOLD]),
            )
            v = decide(i)
            bf = brute_force(i, 3000)
            if i.problem is Problem.MEMBERSHIP:
                if v.result:
                    assert bf.kind is BruteKind.FOUND_MEMBERSHIP and bf.index == v.witness
                else:
                    assert bf.kind is BruteKind.NONE_UP_TO
            else:
                if v.result:
                    assert bf.kind is BruteKind.THRESHOLD_HOLDS_UP_TO
                else:
                    assert bf.kind is BruteKind.THRESHOLD_VIOLATION and bf.index == v.witness
            checked += 1
        assert checked >= 20


class TestSpecialRegimes:
    def test_zero_initial_value(self):
        assert decide(inst([1, 1], [2, 1], 0, 0)).result
        assert not decide(inst([1, 1], [2, 1], 0, 1)).result
        assert decide(inst([1, 1], [2, 1], 0, -1, Problem.THRESHOLD)).result
        assert not decide(inst([1, 1], [2, 1], 0, 1, Problem.THRESHOLD)).result

    def test_zero_target_membership(self):
        assert decide(inst([1, 1], [-3, 1], 2, 0)).witness == 4
        assert not decide(inst([1, 1], [2, 1], 1, 0)).result

    def test_zero_tail_membership_and_threshold(self):
        v = decide(inst([1, 1], [-3, 1], 2, -6))
        assert v.result and v.witness == 1
        v2 = decide(inst([1, 1], [-3, 1], 2, -7, Problem.THRESHOLD))
        assert v2.result  # min value -6 >= -7, tail zero
        v3 = decide(inst([1, 1], [-3, 1], 2, F(1, 10), Problem.THRESHOLD))
        assert not v3.result  # tail of zeros < 1/10

    def test_constant_sequence(self):
        assert decide(inst([5, 1], [5, 1], 7, 7)).witness == 0
        assert not decide(inst([5, 1], [5, 1], 7, 8)).result
        assert decide(inst([5, 1], [5, 1], 7, 7, Problem.THRESHOLD)).result
        assert not decide(inst([5, 1], [5, 1], 7, 8, Problem.THRESHOLD)).result

    def test_alternating_growth(self):
        v = decide(inst([1], [-2], 1, 16))
        assert v.result and v.witness == 4
        assert not decide(inst([1], [-2], 1, 32)).result
        assert not decide(inst([1], [-2], 1, -100, Problem.THRESHOLD)).result
