import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qissre.counts import (
    COUNT_KEYS,
    LogicalCounts,
    dump_counts,
    parse_counts,
    qiss_algorithm_qubits,
    qiss_logical_counts,
    shop_measurements,
    solution_space_size,
)
from qissre.errors import ValidationError

N10 = LogicalCounts(q_alg=116, m_meas=5858, m_r=7938, m_t=912, m_tof=5820, d_r=3653)


@pytest.mark.parametrize("n,q", [(10, 78), (1, 21), (2, 28)])
def test_algorithm_qubits(n, q):
    assert qiss_algorithm_qubits(n) == q


def test_anchor_counts_exact():
    assert qiss_logical_counts(10) == N10
    assert shop_measurements(10) == 40


def test_twenty_days_toffolis():
    assert qiss_logical_counts(20).m_tof == 11640


@given(k=st.integers(1, 50))
def test_linear_at_multiples_of_anchor(k):
    c = qiss_logical_counts(10 * k)
    assert (c.m_meas, c.m_r, c.m_t, c.m_tof, c.d_r) == tuple(k * v for v in (5858, 7938, 912, 5820, 3653))


@given(n=st.integers(1, 200))
def test_model_invariants(n):
    c = qiss_logical_counts(n)
    assert c.d_r <= c.m_r
    assert c.q_alg >= qiss_algorithm_qubits(n)
    # independent rounding oracle: nearest integer, ties upward
    assert c.m_meas == int(5858 * n / 10 + 0.5)


@pytest.mark.parametrize("n,size", [(1, 16), (2, 256), (11, 17592186044416)])
def test_solution_space(n, size):
    assert solution_space_size(n) == size


@given(n=st.integers(1, 300))
def test_solution_space_growth_exact(n):
    assert solution_space_size(n + 1) == 16 * solution_space_size(n)
    assert isinstance(solution_space_size(n), int)


@pytest.mark.parametrize("bad", [0, -1, 1.5, True])
def test_days_validated(bad):
    with pytest.raises(ValidationError):
        qiss_logical_counts(bad)


class TestLogicalCounts:
    def test_depth_bounded_by_count(self):
        with pytest.raises(ValidationError):
            LogicalCounts(q_alg=1, m_r=2, d_r=3)

    def test_rejects_negative_and_empty(self):
        with pytest.raises(ValidationError):
            LogicalCounts(q_alg=1, m_t=-1)
        with pytest.raises(ValidationError):
            LogicalCounts(q_alg=0)

    def test_scaled(self):
        s = N10.scaled(3)
        assert s.q_alg == 116 and s.m_tof == 3 * 5820 and s.d_r == 3 * 3653


class TestParse:
    def test_round_trip(self):
        assert parse_counts(dump_counts(N10)) == N10
        assert parse_counts(io.StringIO(json.dumps(N10.to_dict()))) == N10

    def test_path(self, tmp_path):
        f = tmp_path / "c.json"
        f.write_text(dump_counts(N10))
        assert parse_counts(f) == N10

    @pytest.mark.parametrize(
        "patch,needle",
        [
            ({"d_r": 9000}, "d_r"),
            ({"q_alg": 0}, "q_alg"),
            ({"m_t": -4}, "m_t"),
            ({"m_t": "x"}, "m_t"),
            ({"extra": 1}, "extra"),
        ],
    )
    def test_rejects(self, patch, needle):
        doc = {**N10.to_dict(), **patch}
        with pytest.raises(ValidationError, match=needle):
            parse_counts(json.dumps(doc))

    def test_missing_key(self):
        doc = N10.to_dict()
        del doc["m_tof"]
        with pytest.raises(ValidationError, match="m_tof"):
            parse_counts(json.dumps(doc))

    def test_malformed(self):
        with pytest.raises(ValidationError):
            parse_counts("{not json")
        with pytest.raises(ValidationError):
            parse_counts("[1, 2]")

    def test_keys(self):
        assert COUNT_KEYS == ("q_alg", "m_meas", "m_r", "m_t", "m_tof", "d_r")
