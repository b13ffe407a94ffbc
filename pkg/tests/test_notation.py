import pytest
from hypothesis import given, strategies as st

from conolly.notation import RecursionSpec, RecursionTerm, SpecSyntaxError, format_spec, parse


def test_conolly_literal():
    spec = parse("<0;1:1;2>[1,2]")
    assert spec.arity == 2
    assert spec.terms == (RecursionTerm(0, (1,)), RecursionTerm(1, (2,)))
    assert spec.initial == (1, 2)


def test_order_two_without_initial_conditions():
    spec = parse("<0;1,3:4;5,7>")
    assert spec.order == (2, 2)
    assert spec.uniform_order
    assert spec.initial == ()


def test_hofstadter_q():
    spec = parse("<0;1:0;2>[1,1]")
    assert [t.shift for t in spec.terms] == [0, 0]
    assert spec.initial == (1, 1)


def test_whitespace_is_normalised():
    assert format_spec(parse("< 0 ; 1 : 1 ; 2 >")) == "<0;1:1;2>"
    assert str(parse(" <0; 1,3 :4;5, 7> [ 1 , 2 ] ")) == "<0;1,3:4;5,7>[1,2]"


def test_zero_initial_conditions_allowed():
    assert parse("<1;1:3;3>[0,0,0,0]").initial == (0, 0, 0, 0)


def test_mixed_orders():
    spec = parse("<0;1:2;3,4>")
    assert spec.order == (1, 2)
    assert not spec.uniform_order


@pytest.mark.parametrize("text, fragment, offset", [
    ("<0;:1;2>", "empty offset list", 3),
    ("<0;x:1;2>", "non-integer token", 3),
    ("<0;1:1;2>]", "trailing input", 9),
    ("<0;1:1;2", "expected '>'", 7),
    ("<0;1:1;2>[]", "empty initial condition list", 10),
    ("0;1>", "expected '<'", 0),
])
def test_syntax_errors_report_offset(text, fragment, offset):
    with pytest.raises(SpecSyntaxError) as info:
        parse(text)
    assert fragment in str(info.value)
    assert info.value.offset == offset


def test_strict_mode_rejects_nonpositive_offsets():
    with pytest.raises(SpecSyntaxError):
        parse("<0;0:1;2>")
    with pytest.raises(SpecSyntaxError):
        parse("<-1;1:1;2>")
    assert parse("<-1;0:1;2>", relaxed=True).terms[0].shift == -1


def test_negative_initial_needs_relaxed():
    with pytest.raises(SpecSyntaxError):
        parse("<0;1:1;2>[-1]")


def test_syntax_error_is_value_error():
    assert issubclass(SpecSyntaxError, ValueError)


terms = st.builds(
    lambda s, offs: RecursionTerm(s, tuple(offs)),
    st.integers(0, 50), st.lists(st.integers(1, 60), min_size=1, max_size=5))
specs = st.builds(
    lambda ts, init: RecursionSpec(tuple(ts), tuple(init)),
    st.lists(terms, min_size=1, max_size=4), st.lists(st.integers(0, 100), max_size=8))


@given(specs)
def test_print_parse_round_trip(spec):
    text = format_spec(spec)
    assert " " not in text
    assert parse(text) == spec
    assert format_spec(parse(text)) == text


@given(specs, st.sampled_from([" ", "  ", "\t", "\n"]))
def test_whitespace_insensitive(spec, ws):
    text = format_spec(spec)
    spaced = "".join(f"{ws}{c}{ws}" if c in "<>;:,[]" else c for c in text)
    assert parse(spaced) == spec
