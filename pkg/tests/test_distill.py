import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import binom, norm

from qissre.distill import (
    RM_PREP_LOGICAL,
    SPACE_EFFICIENT_LOGICAL,
    ZERO_ROUND_FACTORY,
    acceptance_probability,
    design_factory,
    factory_count,
    output_error,
    required_t_state_error,
    units_for_round,
)
from qissre.errors import FactoryInfeasibleError, ValidationError
from qissre.qec import logical_cycle_time, physical_qubits_per_logical


@pytest.mark.parametrize("m,eps,expected", [(175014, 1 / 3000, 1.90e-9), (1, 0.5, 0.5), (10, 0.001, 1e-4)])
def test_required_t_state_error(m, eps, expected):
    assert required_t_state_error(m, eps) == pytest.approx(expected, rel=3e-3)


def test_required_t_state_error_rejects_zero():
    with pytest.raises(ValidationError):
        required_t_state_error(0, 0.1)


class TestAcceptance:
    def test_worked_example(self):
        q = acceptance_probability(0.001, 5.13e-5)
        assert q == pytest.approx(0.9667, abs=1e-4)
        assert int(q * 1000) / 1000 == 0.966  # the reported figure is truncated

    def test_noiseless(self):
        assert acceptance_probability(0, 0) == 1

    def test_final_round(self):
        assert acceptance_probability(3.64e-4, 2.68e-10) == pytest.approx(0.99454, abs=1e-5)

    def test_clamped(self):
        assert acceptance_probability(0.5, 0.1) == 0


class TestUnits:
    def test_examples(self):
        assert units_for_round(0.966, 15, 0.999) == 18
        assert units_for_round(1.0, 15, 0.999) == 15
        assert units_for_round(0.966, 15, 0.999, exact_binomial=True) == 19

    def test_rejects(self):
        with pytest.raises(ValidationError):
            units_for_round(0.0, 15)
        with pytest.raises(ValidationError):
            units_for_round(0.9, 0)

    @settings(max_examples=150, deadline=None)
    @given(q=st.floats(0.5, 1.0), r=st.integers(1, 400), c=st.floats(0.5, 0.9999))
    def test_exact_matches_scipy(self, q, r, c):
        u = units_for_round(q, r, c, exact_binomial=True)
        assert binom.sf(r - 1, u, q) >= c - 1e-12
        if u > r:
            assert binom.sf(r - 1, u - 1, q) < c + 1e-12

    @settings(max_examples=150, deadline=None)
    @given(q=st.floats(0.5, 0.9999), r=st.integers(1, 400), c=st.floats(0.5, 0.9999))
    def test_normal_matches_scipy(self, q, r, c):
        u = units_for_round(q, r, c)

        def ok(n):
            return norm.cdf((n * q - (r - 0.5)) / math.sqrt(n * q * (1 - q))) >= c

        assert ok(u) or math.isclose(norm.cdf((u * q - r + 0.5) / math.sqrt(u * q * (1 - q))), c, rel_tol=1e-9)
        if u > r:
            assert not ok(u - 1) or math.isclose(
                norm.cdf(((u - 1) * q - r + 0.5) / math.sqrt((u - 1) * q * (1 - q))), c, rel_tol=1e-9
            )

    @given(q=st.floats(0.6, 0.99), dq=st.floats(0, 0.3), r=st.integers(1, 100), dr=st.integers(0, 50))
    def test_monotone(self, q, dq, r, dr):
        q2 = min(1.0, q + dq)
        assert units_for_round(q2, r) <= units_for_round(q, r)
        assert units_for_round(q, r + dr) >= units_for_round(q, r)
        assert units_for_round(q, r, 0.99) <= units_for_round(q, r, 0.999)


class TestDesign:
    def test_worked_example(self, flat3):
        f = design_factory(1e-3, 1e-3, 1.90e-9, flat3)
        assert f.distances == (5, 17)
        r1, r2 = f.rounds
        assert r1.unit is SPACE_EFFICIENT_LOGICAL and r2.unit is RM_PREP_LOGICAL
        assert (r1.unit_count, r2.unit_count) == (18, 1)
        assert r2.max_input_t_error == pytest.approx(3.64e-4, rel=5e-3)
        assert r1.clifford_error_bound == pytest.approx(5.13e-5, rel=2e-3)
        assert r1.acceptance_prob == pytest.approx(0.9667, abs=1e-4)
        assert (r1.qubits, r2.qubits) == (18000, 17918)
        assert f.qubits == 18000 and f.outputs_per_run == 1
        assert f.total_runtime == pytest.approx(101e3, rel=0.01)
        assert f.total_runtime == 13 * logical_cycle_time(5, flat3) + 11 * logical_cycle_time(17, flat3)

    def test_exact_binomial_switch(self, flat3):
        f = design_factory(1e-3, 1e-3, 1.90e-9, flat3, exact_binomial=True)
        assert f.rounds[0].unit_count == 19

    def test_single_round(self, flat3):
        f = design_factory(1e-3, 1e-3, 3.64e-4, flat3)
        assert f.distances == (5,)
        assert f.rounds[0].unit_count == 1

    def test_zero_round(self, flat3):
        assert design_factory(1e-9, 1e-3, 1e-8, flat3) is ZERO_ROUND_FACTORY
        assert ZERO_ROUND_FACTORY.qubits == 0 and ZERO_ROUND_FACTORY.total_runtime == 0
        assert ZERO_ROUND_FACTORY.outputs_per_run == 1

    def test_round_limit(self, flat3):
        with pytest.raises(FactoryInfeasibleError, match="cannot construct factory chain"):
            design_factory(1e-3, 1e-3, 1e-15, flat3, max_rounds=1)

    def test_useless_input(self, flat3):
        # 0.2 input: cubic term can never beat the input, acceptance collapses
        with pytest.raises(FactoryInfeasibleError):
            design_factory(0.2, 1e-3, 1e-10, flat3)

    @settings(max_examples=200, deadline=None)
    @given(
        lt=st.floats(-25, -4),
        p_t=st.sampled_from([1e-2, 5e-3, 1e-3, 1e-4, 1e-6, 5e-8]),
        p=st.sampled_from([5e-3, 1e-3, 1e-4, 1e-6, 1e-8]),
    )
    def test_forward_composition(self, flat3, lt, p_t, p):
        target = 10**lt
        try:
            f = design_factory(p_t, p, target, flat3)
        except FactoryInfeasibleError:
            return
        err = p_t
        for r in f.rounds:
            # recompute Clifford error independently of the library
            clifford = 0.03 * (p / 0.01) ** ((r.distance + 1) / 2)
            err = 35 * err**3 + 7.1 * clifford
            assert r.output_t_error <= r.target_t_error * (1 + 1e-9)
            assert 0 < r.acceptance_prob <= 1
            assert r.qubits == r.unit_count * r.unit.qubit_factor * physical_qubits_per_logical(r.distance)
        assert err <= target * (1 + 1e-9)
        assert list(f.distances) == sorted(f.distances)
        assert f.qubits == max((r.qubits for r in f.rounds), default=0)
        if f.rounds:
            assert f.rounds[-1].unit_count == 1
            for a, b in zip(f.rounds, f.rounds[1:]):
                assert a.output_t_error == pytest.approx(b.input_t_error, rel=1e-12)


class TestFactoryCount:
    def test_worked_example(self, flat3):
        f = design_factory(1e-3, 1e-3, 1.90e-9, flat3)
        assert factory_count(175014, f, 0.772e9) == 23
        assert 23 * f.qubits == 414000

    def test_zero(self, flat3):
        f = design_factory(1e-3, 1e-3, 1.90e-9, flat3)
        assert factory_count(0, f, 1.0) == 0

    def test_exact_division(self):
        from qissre.distill import FactoryDesign

        f = FactoryDesign(rounds=(object(),), total_runtime=1e9, qubits=1)
        assert factory_count(100, f, 100e9) == 1


def test_output_error():
    assert output_error(1e-3, 3e-5) == pytest.approx(35e-9 + 7.1 * 3e-5)
