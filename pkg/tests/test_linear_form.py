import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import property_n_pairs
from phisidon import (
    BudgetExceeded,
    IndexSet,
    LinearForm,
    PreconditionError,
    contraction,
    has_property_N,
    parse_form,
    subset_sum,
    vanishing_subset,
)

nonzero = st.integers(-12, 12).filter(bool)
forms = st.lists(nonzero, min_size=1, max_size=6).map(lambda c: LinearForm(tuple(c)))


@pytest.mark.parametrize(
    "text, coeffs, norm",
    [("1,3", (1, 3), 4), ("1,-2,4", (1, -2, 4), 7), (" 5 ", (5,), 5)],
)
def test_parse_form(text, coeffs, norm):
    form = parse_form(text)
    assert form.coeffs == coeffs
    assert form.h == len(coeffs)
    assert form.norm == norm


@pytest.mark.parametrize("text", ["1,0,2", "", "1,x", "1,,2", "1.5"])
def test_parse_form_rejects(text):
    with pytest.raises(PreconditionError):
        parse_form(text)


def test_zero_coefficient_message():
    with pytest.raises(PreconditionError, match="zero coefficient"):
        parse_form("1,0,2")


def test_big_coefficients():
    c = 10**60
    form = parse_form(f"{c},-{3 * c}")
    assert form.norm == 4 * c


def test_subset_sum_examples():
    assert subset_sum(parse_form("1,2,4"), {1, 3}) == 5
    assert subset_sum(parse_form("1,-2,4"), {1, 2, 3}) == 3
    assert subset_sum(parse_form("7,9"), set()) == 0
    assert subset_sum(parse_form("7,9"), IndexSet(0, 2)) == 0


def test_subset_sum_rejects_foreign_indices():
    with pytest.raises(PreconditionError):
        subset_sum(parse_form("1,2"), {3})
    with pytest.raises(PreconditionError):
        subset_sum(parse_form("1,2"), IndexSet(1, 3))


def test_index_set_complement():
    I = IndexSet.from_indices([1, 3], 4)
    assert I.indices == (1, 3)
    assert I.complement().indices == (2, 4)
    assert I.isdisjoint(I.complement())
    assert I.mask | I.complement().mask == IndexSet.full(4).mask
    assert len(I) == 2


@pytest.mark.parametrize(
    "text, holds, I1, I2, total",
    [
        ("1,1", False, (1,), (2,), 1),
        ("1,3", True, None, None, None),
        ("1,2,4", True, None, None, None),
        ("1,2,3", False, (3,), (1, 2), 3),
    ],
)
def test_property_N_examples(text, holds, I1, I2, total):
    ok, w = has_property_N(parse_form(text))
    assert ok is holds
    if holds:
        assert w is None
    else:
        assert w.I1.indices == I1
        assert w.I2.indices == I2
        assert w.common_sum == total


def test_property_N_only_one_side_empty_is_not_a_violation():
    # (1,-1): s_{1,2} = 0 but no two disjoint nonempty sets share a sum
    form = parse_form("1,-1")
    assert has_property_N(form) == (True, None)
    assert vanishing_subset(form).indices == (1, 2)
    assert not form.nondegenerate


def test_property_N_arity_ceiling():
    form = LinearForm(tuple(range(1, 23)))
    with pytest.raises(BudgetExceeded, match="arity too large"):
        has_property_N(form)
    with pytest.raises(BudgetExceeded):
        has_property_N(parse_form("1,2,3"), max_arity=2)


def test_property_N_is_cached():
    form = parse_form("1,2,4")
    assert form.property_N is True
    assert parse_form("2,2").property_N is False


@settings(max_examples=300, deadline=None)
@given(forms)
def test_property_N_matches_nested_subset_oracle(form):
    pairs = property_n_pairs(form.coeffs)
    ok, w = has_property_N(form)
    assert ok == (not pairs)
    if w is not None:
        assert w.I1.isdisjoint(w.I2) and w.I1.mask and w.I2.mask
        assert subset_sum(form, w.I1) == subset_sum(form, w.I2) == w.common_sum
        assert (frozenset(w.I1.indices), frozenset(w.I2.indices)) in pairs or (
            frozenset(w.I2.indices),
            frozenset(w.I1.indices),
        ) in pairs


@settings(max_examples=200, deadline=None)
@given(forms, st.data())
def test_subset_sum_additive(form, data):
    h = form.h
    m1 = data.draw(st.integers(0, (1 << h) - 1))
    m2 = data.draw(st.integers(0, (1 << h) - 1)) & ~m1
    I, J = IndexSet(m1, h), IndexSet(m2, h)
    assert subset_sum(form, IndexSet(m1 | m2, h)) == subset_sum(form, I) + subset_sum(form, J)


@settings(max_examples=100, deadline=None)
@given(st.lists(nonzero, min_size=2, max_size=6), st.data())
def test_equal_coefficients_break_property_N(coeffs, data):
    i = data.draw(st.integers(0, len(coeffs) - 1))
    j = data.draw(st.integers(0, len(coeffs) - 1).filter(lambda x: x != i))
    coeffs[j] = coeffs[i]
    assert has_property_N(LinearForm(tuple(coeffs)))[0] is False


def test_contraction_examples():
    form = parse_form("1,-2,4")
    sub = contraction(form, {1, 3})
    assert sub == LinearForm((1, 4))
    assert sub.positions == (1, 3)
    assert contraction(parse_form("1,3"), {1, 2}) == parse_form("1,3")
    assert contraction(parse_form("1,3"), {2}) == LinearForm((3,))


def test_contraction_of_contraction_keeps_original_positions():
    form = parse_form("5,6,7,8")
    sub = contraction(contraction(form, {2, 3, 4}), {1, 3})
    assert sub.coeffs == (6, 8)
    assert sub.positions == (2, 4)


def test_contraction_empty_rejected():
    with pytest.raises(PreconditionError):
        contraction(parse_form("1,3"), set())


def test_form_is_callable():
    assert parse_form("1,3")(2, 5) == 17
    with pytest.raises(PreconditionError):
        parse_form("1,3")(1)
