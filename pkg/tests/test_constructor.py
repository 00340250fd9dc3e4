from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import phisidon.constructor as constructor
from oracles import sidon_pairwise
from phisidon import (
    ConstructionError,
    PreconditionError,
    check_growth,
    construct_bounded,
    construct_poly,
    is_sidon,
    iter_bounded_choices,
    parse_form,
    parse_sequence_spec,
)
from phisidon.bound_analysis import greedy_radius
from phisidon.constructor import interval_choices, scan_offsets

B_FAST = [2, 14, 70, 350, 1750, 8750, 43750, 218750]


def test_scan_order_nearest_first_smaller_on_ties():
    it = scan_offsets()
    assert [next(it) for _ in range(7)] == [0, -1, 1, -2, 2, -3, 3]


def test_construct_poly_squares():
    form = parse_form("1,3")
    trace = construct_poly(form, parse_sequence_spec("squares"), 10)
    A = trace.elements
    assert len(set(A)) == 10
    assert sidon_pairwise(form.coeffs, A)
    for step in trace:
        assert step.b_k == step.k**2
        assert step.deviation == abs(step.a_k - step.b_k)
        assert step.deviation < step.global_bound == step.k**8
        if step.k >= 2:
            assert step.step_bound == greedy_radius(2, step.k - 1)
            assert step.deviation <= step.step_bound
            assert step.candidates_examined <= 2 * step.step_bound + 1


def test_construct_poly_first_step():
    trace = construct_poly(parse_form("1,3"), [5], 1)
    (step,) = trace.steps
    assert (step.k, step.b_k, step.a_k, step.deviation, step.step_bound) == (1, 5, 5, 0, 0)


def test_construct_poly_keeps_sidon_input():
    form = parse_form("1,3")
    B = [1, 5, 25, 125, 625, 3125]
    assert sidon_pairwise(form.coeffs, B)
    trace = construct_poly(form, B, len(B))
    assert trace.elements == tuple(B)
    assert all(s.deviation == 0 and s.candidates_examined == 1 for s in trace)


def test_construct_poly_repeated_and_negative_input():
    form = parse_form("1,-2")
    B = [-7, -7, -7, 3, 3, -100, 0, 0]
    trace = construct_poly(form, B, len(B))
    assert len(set(trace.elements)) == len(B)
    assert sidon_pairwise(form.coeffs, trace.elements)


def test_construct_poly_deterministic_and_prefix_stable():
    form = parse_form("1,2,4")
    seq = parse_sequence_spec("primes")
    t9 = construct_poly(form, seq, 9)
    t10 = construct_poly(form, parse_sequence_spec("primes"), 10)
    assert t9 == construct_poly(form, parse_sequence_spec("primes"), 9)
    assert t10.steps[:9] == t9.steps


@pytest.mark.parametrize("text", ["1,1", "1,2,3", "1,-1", "2,-1,-1"])
def test_construct_poly_rejects_degenerate_forms(text):
    with pytest.raises(PreconditionError):
        construct_poly(parse_form(text), [1, 2, 3], 3)


def test_construct_poly_aborts_loudly_when_bound_is_broken(monkeypatch):
    monkeypatch.setattr(constructor, "greedy_radius", lambda h, n: 1)
    with pytest.raises(ConstructionError):
        construct_poly(parse_form("1,3"), [0, 0, 0], 3)


@pytest.mark.parametrize("form_text", ["1,3", "1,-2", "2,3,7"])
@settings(max_examples=15, deadline=None)
@given(B=st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_construct_poly_always_sidon(form_text, B):
    form = parse_form(form_text)
    trace = construct_poly(form, B, len(B))
    assert sidon_pairwise(form.coeffs, trace.elements)
    for s in trace:
        assert s.deviation < s.global_bound
        if s.k > 1:
            assert s.deviation <= s.step_bound


# -- growth check -------------------------------------------------------------

def test_check_growth_examples():
    form = parse_form("1,3")
    assert form.norm == 4
    assert check_growth(form, B_FAST, 1, 8).passed
    g = check_growth(form, [2, 13, 100], 1, 3)
    assert not g.passed and g.first_violation == 1
    assert check_growth(parse_form("1,2"), [1, 4, 13, 40], 0, 4).passed


def test_check_growth_start_violation():
    g = check_growth(parse_form("1,3"), [1, 100], 1, 2)
    assert g.first_violation == 0


def test_check_growth_rejects_bad_prefix():
    with pytest.raises(PreconditionError):
        check_growth(parse_form("1,3"), [5, 5], 0, 2)
    with pytest.raises(PreconditionError):
        check_growth(parse_form("1,3"), [0, 5], 0, 2)
    with pytest.raises(PreconditionError):
        check_growth(parse_form("1,3"), [1, 5], -1, 2)


# -- bounded construction -------------------------------------------------------

def test_interval_choices():
    assert interval_choices(10, 1) == [10]
    assert interval_choices(10, 2) == [9, 10, 11]
    assert interval_choices(10, Fraction(3, 2)) == [9, 10, 11]
    assert interval_choices(1, 3) == [1, 2, 3]


def test_construct_bounded_unit_interval_returns_input():
    form = parse_form("1,3")
    trace = construct_bounded(form, B_FAST, 1, 8, m0=1)
    assert trace.elements == tuple(B_FAST)
    assert sidon_pairwise(form.coeffs, trace.elements)
    assert all(s.deviation < 1 for s in trace)


def test_construct_bounded_example_with_m2_fails_growth():
    # b_1 = 2 is not > m = 2, so the growth hypothesis does not hold
    with pytest.raises(PreconditionError, match="growth"):
        construct_bounded(parse_form("1,3"), B_FAST, 2, 8, m0=2)


def test_construct_bounded_off_center_choices():
    form = parse_form("1,3")
    B = parse_sequence_spec("affine-geom:3,5,11")
    assert check_growth(form, B, 2, 8).passed
    trace = construct_bounded(
        form, B, 2, 8, m0=2, choose=lambda k, b, allowed: b + 1 if k % 2 == 0 else b
    )
    assert [s.deviation for s in trace] == [0, 1, 0, 1, 0, 1, 0, 1]
    assert sidon_pairwise(form.coeffs, trace.elements)
    # and the set with the same choices on the original example sequence
    A = [b + 1 if k % 2 == 0 else b for k, b in enumerate(B_FAST, 1)]
    assert is_sidon(form, A)[0]


def test_construct_bounded_m_zero_forces_input():
    form = parse_form("1,2")
    B = [1, 4, 13, 40, 121]
    trace = construct_bounded(form, B, 0, 5)
    assert trace.elements == tuple(B)
    assert is_sidon(form, B)[0]


@pytest.mark.parametrize("m, m0", [(1, 2), (3, 4), (0, 2), (2, 0), (2, -1)])
def test_construct_bounded_rejects_m0(m, m0):
    with pytest.raises(PreconditionError):
        construct_bounded(parse_form("1,3"), [10**6, 10**8], m, 2, m0=m0)


def test_construct_bounded_rejects_choice_outside_interval():
    with pytest.raises(PreconditionError):
        construct_bounded(parse_form("1,3"), B_FAST, 1, 3, choose=lambda k, b, allowed: b + 5)


def test_construct_bounded_every_choice_is_sidon():
    form = parse_form("1,3")
    B = parse_sequence_spec("affine-geom:4,5,16").prefix(6)
    assert check_growth(form, B, 3, 6).passed
    for m0 in (1, 2, 3):
        leaves = list(iter_bounded_choices(B, m0, fix_first=True))
        assert len(leaves) == (2 * m0 - 1) ** 5
        for leaf in leaves:
            assert is_sidon(form, leaf)[0], leaf
    # replay a few leaves through the construction itself
    for leaf in leaves[::997]:
        trace = construct_bounded(form, B, 3, 6, m0=3, choose=lambda k, b, allowed: leaf[k - 1])
        assert trace.elements == leaf
