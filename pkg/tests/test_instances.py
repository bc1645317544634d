"""Instance builders and the textual instance format."""

import io
import math

import numpy as np
import pytest

from ccsubmod import (
    I1Params,
    I2Params,
    InputError,
    ParameterError,
    ParseError,
    build_i1,
    build_i2,
    build_random_instance,
    read_instance,
    write_instance,
)
from ccsubmod.chance import SelectionState, surrogate_weight
from ccsubmod.instances import i1_alpha_interval, instance_from_dispersions


class TestI1:
    def test_alpha_interval_b5(self):
        lo, hi = i1_alpha_interval(5, 0.9)
        assert lo == pytest.approx(0.9 / 48.9, rel=1e-15)
        assert hi == pytest.approx(0.9 / 27.9, rel=1e-15)

    def test_alpha_interval_b3(self):
        lo, hi = i1_alpha_interval(3, 0.3)
        assert lo == pytest.approx(0.3 / 12.3, rel=1e-15)
        assert hi == pytest.approx(0.3 / 3.3, rel=1e-15)

    def test_builder_defaults(self, i1_case):
        instance, oracle, params = i1_case
        assert instance.n == 6  # budget + 1 elements by default
        assert instance.alpha == pytest.approx(0.025331, abs=1e-6)
        assert instance.delta(1) == math.sqrt(0.9)
        assert all(instance.delta(i) == 0.0 for i in range(2, 7))
        assert oracle.eval([2, 5]) == 2.0
        state = SelectionState()
        state.insert(instance.element(1), params)
        assert params.budget - 1 < surrogate_weight(state, params) < params.budget

    def test_gamma_domain(self):
        with pytest.raises(ParameterError):
            build_i1(I1Params(budget=5, gamma=0.0))
        with pytest.raises(ParameterError):
            build_i1(I1Params(budget=5, gamma=1.2))

    def test_alpha_outside_interval_rejected(self):
        lo, hi = i1_alpha_interval(5, 0.9)
        with pytest.raises(ParameterError):
            build_i1(I1Params(budget=5, gamma=0.9, alpha=hi * 1.5))

    def test_small_budget_rejected(self):
        with pytest.raises(ParameterError):
            build_i1(I1Params(budget=2, gamma=0.5))

    def test_n_too_small_rejected(self):
        with pytest.raises(ParameterError):
            build_i1(I1Params(budget=5, gamma=0.9, n=5))


class TestI2:
    def test_valid_construction(self, i2_case):
        instance, oracle, params = i2_case
        assert params.budget == 6.0
        assert instance.delta(1) == math.sqrt(0.1 / 5)
        assert instance.delta(6) == math.sqrt(0.9 / 5)
        assert oracle.eval([1]) == 1.0
        assert oracle.eval([6]) == 5.0
        state = SelectionState()
        for j in range(6, 11):
            state.insert(instance.element(j), params)
        assert surrogate_weight(state, params) == pytest.approx(5 + math.sqrt(0.9), rel=1e-14)

    def test_n_too_small(self):
        with pytest.raises(ParameterError):
            build_i2(I2Params(epsilon=5, alpha=0.25, gamma=0.1, beta=0.4, n=9))

    def test_constraint_violation(self):
        with pytest.raises(ParameterError):
            build_i2(I2Params(epsilon=5, alpha=0.25, gamma=0.3, beta=0.4))

    def test_alpha_domain(self):
        with pytest.raises(ParameterError):
            build_i2(I2Params(epsilon=5, alpha=0.6, gamma=0.1, beta=0.4))

    def test_dispersion_cap(self):
        # epsilon=1 with large beta pushes the second-block delta above 1
        with pytest.raises(ParameterError):
            build_i2(I2Params(epsilon=1, alpha=0.4, gamma=0.1, beta=1.5))


class TestRandomInstance:
    def test_deterministic(self):
        a = build_random_instance(50, 5.0, 0.1, seed=3)
        b = build_random_instance(50, 5.0, 0.1, seed=3)
        assert [e.delta for e in a.elements] == [e.delta for e in b.elements]

    def test_uniform_moments(self):
        inst = build_random_instance(10_000, 5.0, 0.1, seed=4)
        mean = float(np.mean([e.delta for e in inst.elements]))
        assert abs(mean - 0.5) <= 0.015

    def test_domains(self):
        with pytest.raises(ParameterError):
            build_random_instance(0, 5.0, 0.1, seed=0)
        with pytest.raises(ParameterError):
            build_random_instance(5, 1.0, 0.1, seed=0)


class TestInstanceType:
    def test_unknown_id(self):
        inst = instance_from_dispersions([0.1, 0.2], 3.0, 0.2)
        with pytest.raises(InputError):
            inst.delta(5)

    def test_duplicate_ids_rejected(self):
        from ccsubmod import Element, Instance

        with pytest.raises(ParameterError):
            Instance(elements=(Element(1, 0.1), Element(1, 0.2)), budget=2.0, alpha=0.5)

    def test_values_must_match_ids(self):
        from ccsubmod import Element, Instance

        with pytest.raises(ParameterError):
            Instance(elements=(Element(1, 0.1),), budget=2.0, alpha=0.5, values={2: 1.0})


class TestFileFormat:
    def test_minimal(self):
        inst = read_instance(io.StringIO("n 1\nB 2\nalpha 0.5\nelem 0 0.3\n"))
        assert inst.n == 1
        assert inst.budget == 2.0
        assert inst.delta(0) == 0.3
        assert inst.values is None

    def test_comments_ignored(self):
        inst = read_instance(io.StringIO("# c\nn 1\n# mid\nB 2\nalpha 0.5\nelem 0 0.3\n"))
        assert inst.n == 1

    def test_roundtrip_i2(self, i2_case, tmp_path):
        instance, _, _ = i2_case
        path = tmp_path / "i2.txt"
        write_instance(instance, path)
        again = read_instance(path)
        assert again.n == instance.n
        assert again.budget == instance.budget
        assert again.alpha == instance.alpha
        for v in instance.ids():
            assert again.delta(v) == instance.delta(v)
            assert again.values[v] == instance.values[v]

    def test_roundtrip_exact_decimals(self, tmp_path):
        rng = np.random.default_rng(9)
        inst = instance_from_dispersions(rng.random(20), 7.123456789123456, 0.0123456789012345)
        buf = io.StringIO()
        write_instance(inst, buf)
        again = read_instance(io.StringIO(buf.getvalue()))
        assert again.budget == inst.budget
        assert again.alpha == inst.alpha
        assert [e.delta for e in again.elements] == [e.delta for e in inst.elements]

    @pytest.mark.parametrize(
        "text,line",
        [
            ("n 1\nB 2\nalpha 0.5\nelem 0 1.5\n", 4),          # delta out of range
            ("n 2\nB 2\nalpha 0.5\nelem 0 0.1\nelem 0 0.2\n", 5),  # duplicate id
            ("n 1\nB 2\nelem 0 0.1\n", 3),                      # elem before alpha header
            ("n 1\nB 2\nalpha 0.5\nwhat 0\n", 4),               # unknown line
            ("n 1\nB 2\nalpha 0.5\nelem 0 0.1 -2\n", 4),        # negative value
            ("n 1\nn 2\nB 2\nalpha 0.5\nelem 0 0.1\n", 2),      # duplicate header
        ],
    )
    def test_parse_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as err:
            read_instance(io.StringIO(text))
        assert err.value.line == line

    def test_missing_headers_reported(self):
        with pytest.raises(ParseError):
            read_instance(io.StringIO("n 1\nB 2\n"))

    def test_element_count_mismatch(self):
        with pytest.raises(ParseError):
            read_instance(io.StringIO("n 2\nB 2\nalpha 0.5\nelem 0 0.1\n"))

    def test_mixed_values_default_to_one(self):
        inst = read_instance(io.StringIO("n 2\nB 2\nalpha 0.5\nelem 0 0.1 3\nelem 1 0.1\n"))
        assert inst.values == {0: 3.0, 1: 1.0}
