import pytest

from conolly.analysis import ConollySignature, fit_conolly, frequency, ratio_estimate
from conolly.ceiling import ceiling_sequence, seeded_ceiling_spec
from conolly.engine import evaluate
from conolly.notation import parse
from conolly.transforms import (WeaveInput, check_interleaving, interleave_order_multiplying,
                                interleaving, perturb, satisfies, shift_alpha_zero,
                                weave_fixed_order)

CONOLLY = parse("<0;1:1;2>[1,2]")


def test_weave_two_solutions():
    spec, values = weave_fixed_order(WeaveInput(parse("<1;1:3;3>"), [(0, 0, 0, 0), (1, 1, 1, 2)]), 5000)
    assert str(spec) == "<2;2:6;6>[0,2,0,2,0,2,0,4]"
    assert values[:14] == [0, 2, 0, 2, 0, 2, 0, 4, 0, 4, 0, 4, 0, 6]
    assert satisfies(spec, values) is None
    assert evaluate(spec, 5000).values == values


def test_woven_sequence_is_not_slow_and_ratios_split():
    _, values = weave_fixed_order(WeaveInput(parse("<1;1:3;3>"), [(0, 0, 0, 0), (1, 1, 1, 2)]), 20_000)
    assert ratio_estimate(values, 2, 1).ratio == 0
    assert abs(float(ratio_estimate(values, 2, 0).ratio) - 0.5) < 0.02


def test_weave_input_validation():
    with pytest.raises(ValueError):
        WeaveInput(CONOLLY, [(1, 2)])
    with pytest.raises(ValueError):
        WeaveInput(CONOLLY, [(1, 2), (1,)])
    with pytest.raises(ValueError):
        weave_fixed_order(WeaveInput(parse("<0;1:0;1>"), [(2,), (2,)]), 10)


def test_satisfies_detects_failure():
    assert satisfies(parse("<0;1:1;2>[1,2]"), [1, 2, 2, 3, 4]) is None
    assert satisfies(parse("<0;1:1;2>[1,2]"), [1, 2, 2, 4]) == 4


@pytest.mark.parametrize("m", [2, 3, 4])
def test_interleave_conolly(m):
    out = interleave_order_multiplying(CONOLLY, m)
    assert out.terms[0].offsets == (m,) * m
    assert out.terms[1].shift == m
    report = check_interleaving(CONOLLY, out, m, 500)
    assert report.is_interleaving and report.alive
    assert fit_conolly(frequency(evaluate(out, 2000).values)) == ConollySignature(0, m)


def test_interleave_literal():
    assert str(interleave_order_multiplying(CONOLLY, 2)) == "<0;2,2:2;4,4>[1,1,2,2]"
    assert str(interleave_order_multiplying(CONOLLY, 3).without_initial()) == "<0;3,3,3:3;6,6,6>"
    assert interleaving([1, 2], 3) == [1, 1, 1, 2, 2, 2]
    with pytest.raises(ValueError):
        interleave_order_multiplying(CONOLLY, 1)
    with pytest.raises(ValueError):
        interleave_order_multiplying(parse("<0;1,3:4;5,7>"), 2)


def test_perturb_example():
    out, report = perturb(CONOLLY, 2, (-1, 0), (0, 1))
    assert str(out) == "<0;2,3:2;3,4>[1,1,2,2]"
    assert report.is_interleaving


def test_zero_perturbation_is_plain_interleave():
    out, _ = perturb(CONOLLY, 2, (0, 0), (0, 0))
    assert out == interleave_order_multiplying(CONOLLY, 2)


def test_perturb_bounds():
    with pytest.raises(ValueError):
        perturb(CONOLLY, 2, (1, 0), (0, 0))
    with pytest.raises(ValueError):
        perturb(CONOLLY, 2, (-2, 0), (0, 0))
    with pytest.raises(ValueError):
        perturb(CONOLLY, 2, (0,), (0, 0))


def test_perturb_without_initial_conditions_has_no_report():
    out, report = perturb(CONOLLY.without_initial(), 3, (-2, -1, 0), (0, 1, 2))
    assert report is None
    assert out.terms[0].offsets == (3, 4, 5)


def test_shift_iterates():
    spec = parse("<0;1:2;3>")
    first = shift_alpha_zero(spec, 2)
    assert str(first) == "<1;3:3;5>"
    assert str(shift_alpha_zero(first, 2)) == "<2;5:4;7>"


def test_shift_extends_initial_conditions():
    spec = seeded_ceiling_spec(parse("<0;1:2;3>"), 1)
    out = shift_alpha_zero(spec, 2)
    assert list(out.initial) == ceiling_sequence(2, len(spec.initial) + 2)
    assert evaluate(out, 3000).values == ceiling_sequence(2, 3000)


def test_shift_order_two():
    spec = parse("<0;1,3:4;5,7>")
    out = shift_alpha_zero(spec, 4)
    assert str(out) == "<2;5,7:6;9,11>"


def test_shift_rejects_non_ceiling_input():
    with pytest.raises(ValueError):
        shift_alpha_zero(parse("<0;1:1;2>"), 2)
    with pytest.raises(ValueError):
        shift_alpha_zero(parse("<0;1:2;3>"), 0)
