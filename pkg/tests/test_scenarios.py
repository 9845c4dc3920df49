import io
import json

import pytest

from qissre.counts import qiss_logical_counts
from qissre.errors import AboveThresholdError, UnsupportedModalityError, ValidationError
from qissre.scenarios import (
    HIGH_FIDELITY,
    NEAR_TERM,
    T_GATE_ERROR_FLOOR,
    builtin_scenarios,
    dump_scenario,
    feasibility_year,
    get_scenario,
    load_roadmap,
    load_scenario,
    parse_roadmap,
    scenario_to_mapping,
)

# (1q, 2q, idle, meas, meas_time, 1q_time, 2q_time) from the scenario tables
TABLE = {
    "flat-1e-3": (1e-3, 1e-3, 1e-3, 1e-3, 100, 50, 50),
    "flat-1e-4": (1e-4, 1e-4, 1e-4, 1e-4, 100, 50, 50),
    "ref": (1.09e-3, 6.05e-3, 2.46e-2, 1.96e-2, 500, 25, 34),
    "rer": (1.09e-4, 6.05e-4, 2.46e-3, 1.96e-3, 500, 25, 34),
    "fm": (1.09e-3, 4.90e-3, 1.63e-3, 5.00e-3, 140, 25, 34),
    "flat-1e-6": (1e-6, 1e-6, 1e-6, 1e-6, 10, 5, 5),
    "flat-1e-8": (1e-8, 1e-8, 1e-8, 1e-8, 10, 5, 5),
    "flat-1e-9": (1e-9, 1e-9, 1e-9, 1e-9, 1, 0.5, 0.5),
}


@pytest.mark.parametrize("name", sorted(TABLE))
def test_table_values(name):
    p = get_scenario(name).params
    got = (p.one_q_gate_error, p.two_q_gate_error, p.idle_error, p.meas_error,
           p.meas_time, p.one_q_gate_time, p.two_q_gate_time)
    assert got == TABLE[name]


def test_predefined_table():
    ti = get_scenario("trapped-ion-1e-4").params
    assert (ti.meas_error, ti.two_q_gate_error, ti.t_gate_error) == (1e-4, 1e-4, 1e-6)
    assert ti.meas_time == ti.two_q_gate_time == ti.t_gate_time == 100_000
    mj = get_scenario("majorana-1e-6")
    assert mj.modality == "majorana"
    assert (mj.params.meas_error, mj.params.two_q_gate_error, mj.params.t_gate_error) == (1e-6, 1e-6, 1e-2)


def test_t_gate_floor():
    assert get_scenario("flat-1e-9").params.t_gate_error == 5e-8
    assert get_scenario("flat-1e-8").params.t_gate_error == 5e-8
    assert get_scenario("flat-1e-8").t_gate_clamped
    assert not get_scenario("flat-1e-3").t_gate_clamped


def test_groups_and_lookup():
    names = {s.name for s in builtin_scenarios()}
    assert set(NEAR_TERM) <= names and set(HIGH_FIDELITY) <= names
    assert get_scenario(" FM ").name == "fm"
    with pytest.raises(ValidationError, match="unknown scenario"):
        get_scenario("nope")


@pytest.mark.parametrize("s", builtin_scenarios(), ids=lambda s: s.name)
def test_round_trip(s):
    back = load_scenario(dump_scenario(s), check_threshold=s.name != "ref")
    assert back == s
    assert back.description == s.description


def test_ref_is_above_threshold():
    with pytest.raises(ValidationError, match="idle_error"):
        load_scenario(dump_scenario(get_scenario("ref")))
    with pytest.raises(AboveThresholdError) as e:
        get_scenario("ref").estimate(qiss_logical_counts(10), 0.25)
    assert e.value.stage == "distance"


class TestFile:
    def doc(self, **kw):
        d = scenario_to_mapping(get_scenario("flat-1e-3"))
        d.update(kw)
        return json.dumps(d)

    def test_matches_builtin(self):
        assert load_scenario(io.StringIO(self.doc())) == get_scenario("flat-1e-3")

    def test_above_threshold(self):
        with pytest.raises(ValidationError, match="two_q_gate_error"):
            load_scenario(self.doc(two_q_gate_error=0.02))

    def test_t_floor_clamp(self):
        s = load_scenario(self.doc(t_gate_error=1e-10))
        assert s.params.t_gate_error == T_GATE_ERROR_FLOOR and s.t_gate_clamped

    def test_missing_and_unknown(self):
        d = scenario_to_mapping(get_scenario("flat-1e-3"))
        del d["meas_time_ns"]
        with pytest.raises(ValidationError, match="meas_time_ns"):
            load_scenario(json.dumps(d))
        with pytest.raises(ValidationError, match="bogus"):
            load_scenario(self.doc(bogus=1))

    def test_perfect_needs_zero_errors(self):
        with pytest.raises(ValidationError):
            load_scenario(self.doc(perfect=True))


def test_majorana_unsupported():
    with pytest.raises(UnsupportedModalityError) as e:
        get_scenario("majorana-1e-4").estimate(qiss_logical_counts(5), 0.25)
    assert e.value.stage == "scenario"


def test_trapped_ion_estimates():
    r = get_scenario("trapped-ion-1e-3").estimate(qiss_logical_counts(10), 0.25)
    s = get_scenario("flat-1e-3").estimate(qiss_logical_counts(10), 0.25)
    assert r.runtime > 100 * s.runtime


class TestRoadmap:
    def test_lookup_examples(self):
        rm = load_roadmap()
        m6 = feasibility_year(604608, rm)
        assert (m6.company, m6.designation, m6.qubits) == ("Google", "M6", 1_000_000)
        condor = feasibility_year(1121, rm)
        assert (condor.designation, condor.year) == ("Condor", 2023)
        assert feasibility_year(10**9, rm) is None

    def test_lower_bound_flag(self):
        quera = [e for e in load_roadmap() if e.company == "QuEra" and e.lower_bound]
        assert {e.qubits for e in quera} == {256, 3000, 10000}

    def test_override_file(self, tmp_path):
        f = tmp_path / "rm.csv"
        f.write_text("company,modality,designation,year,qubits,released,lower_bound\nX,Superconducting,Big,2040,5000000,false,false\n")
        assert feasibility_year(604608, load_roadmap(f)).designation == "Big"

    def test_bad_rows(self):
        with pytest.raises(ValidationError):
            parse_roadmap("company,modality\nX,Y\n")
        with pytest.raises(ValidationError):
            parse_roadmap("company,modality,designation,year,qubits,released,lower_bound\nX,S,D,2020,many,true,false\n")
