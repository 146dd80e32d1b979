import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given
import hypothesis.strategies as st

from l2b.exact import (
    DimensionMismatch,
    MalformedPermutation,
    SparseTensor,
    alternate,
    contract,
    format_rational,
    identity_matrix,
    koszul_sign,
    mat_mul,
    mat_transpose,
    parse_rational,
    permute_axes,
)
from conftest import rationals, nonzero_rationals, small_tensor


# --- rationals ---------------------------------------------------------------

def test_parse_rational_forms():
    assert parse_rational("3/4") == Q(3, 4)
    assert parse_rational("-3/4") == Q(-3, 4)
    assert parse_rational("2") == Q(2)
    assert parse_rational("4/2") == Q(2)


@pytest.mark.parametrize("bad", ["1/0", "0/0", "1.5", "a", "1/-2", "", "1//2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_round_trip():
    for q in (Q(3, 4), Q(-7, 3), Q(5), Q(0), Q(-2)):
        assert parse_rational(format_rational(q)) == q


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if c:
        assert (a / c) * c == a


# --- sparse tensors ----------------------------------------------------------

def test_tensor_canonical_zero_free():
    t = SparseTensor((2, 2), {(0, 0): Q(0), (0, 1): Q(1)})
    assert (0, 0) not in t.entries
    assert t == SparseTensor((2, 2), {(0, 1): 1})


def test_tensor_rejects_out_of_range():
    with pytest.raises(ValueError):
        SparseTensor((2,), {(2,): 1})
    with pytest.raises(DimensionMismatch):
        SparseTensor((2,), {(0, 0): 1})


def test_contract_identity_action():
    ident = SparseTensor((2, 2), {(0, 0): 1, (1, 1): 1})
    v = SparseTensor((2,), {(0,): 1})
    assert contract(ident, v, [(1, 0)]) == v


def test_contract_zero():
    z = SparseTensor.zero((2, 3))
    v = SparseTensor((3,), {(1,): 5})
    assert contract(z, v, [(1, 0)]).is_zero()


def test_contract_sl2_ef_gives_h(sl2):
    # plugging e then f into the bracket tensor leaves the h coefficient column
    e = SparseTensor((3,), {(0,): 1})
    f = SparseTensor((3,), {(1,): 1})
    m = contract(sl2.bracket, e, [(0, 0)])  # axes (j, k)
    col = contract(m, f, [(0, 0)])  # axis (k,)
    assert col == SparseTensor((3,), {(2,): 1})


def test_contract_dimension_error_names_axes():
    a = SparseTensor((2, 3), {(0, 0): 1})
    b = SparseTensor((4,), {(0,): 1})
    with pytest.raises(DimensionMismatch) as err:
        contract(a, b, [(1, 0)])
    assert "axis 1" in str(err.value) and "axis 0" in str(err.value)


@given(small_tensor((2, 3)), small_tensor((2, 3)), small_tensor((3, 2)), rationals)
def test_contract_bilinear(t1, t1p, t2, a):
    lhs = contract(t1.scale(a).add(t1p), t2, [(1, 0)])
    rhs = contract(t1, t2, [(1, 0)]).scale(a).add(contract(t1p, t2, [(1, 0)]))
    assert lhs == rhs


def test_alternate_symmetric_is_zero():
    sym = SparseTensor((2, 2), {(0, 1): 1, (1, 0): 1})
    assert alternate(sym, [0, 1]).is_zero()


def test_alternate_simple_tensor():
    t = SparseTensor((2, 2), {(0, 1): 1})  # e (x) f
    expected = SparseTensor((2, 2), {(0, 1): Q(1, 2), (1, 0): Q(-1, 2)})
    assert alternate(t, [0, 1]) == expected


def test_alternate_direct_sum_oracle():
    # brute-force antisymmetrization of a rank-3 tensor over all axes
    t = SparseTensor((2, 2, 2), {(0, 1, 1): Q(3), (1, 0, 0): Q(-1, 2)})
    alt = alternate(t, [0, 1, 2])
    for idx in itertools.product(range(2), repeat=3):
        total = Q(0)
        for perm in itertools.permutations(range(3)):
            sign = 1
            p = list(perm)
            for i in range(3):
                for j in range(i + 1, 3):
                    if p[i] > p[j]:
                        sign = -sign
            total += sign * t.get(tuple(idx[p] for p in perm)) / 6
        assert alt.get(idx) == total


@given(small_tensor((2, 2, 3)))
def test_alternate_is_projection(t):
    once = alternate(t, [0, 1])
    assert alternate(once, [0, 1]) == once


def test_alternate_dim_mismatch():
    t = SparseTensor((2, 3), {(0, 0): 1})
    with pytest.raises(DimensionMismatch):
        alternate(t, [0, 1])


def test_permute_axes():
    t = SparseTensor((2, 3), {(1, 2): Q(5)})
    p = permute_axes(t, (1, 0))
    assert p.dims == (3, 2)
    assert p.get((2, 1)) == Q(5)


# --- koszul signs ------------------------------------------------------------

def test_koszul_examples():
    assert koszul_sign((1, 1), (1, 0)) == -1
    assert koszul_sign((1, 2), (1, 0)) == 1
    assert koszul_sign((1, 1, 1), (2, 0, 1)) == 1


def test_koszul_malformed():
    with pytest.raises(MalformedPermutation):
        koszul_sign((1, 1), (0, 0))
    with pytest.raises(MalformedPermutation):
        koszul_sign((1, 1), (0,))


@given(
    st.lists(st.integers(0, 3), min_size=2, max_size=5).flatmap(
        lambda degs: st.tuples(
            st.just(degs),
            st.permutations(range(len(degs))),
            st.permutations(range(len(degs))),
        )
    )
)
def test_koszul_multiplicative(args):
    degs, p, q = args
    # composite permutation: first reorder by q, then by p relative to that
    composite = [q[p[i]] for i in range(len(p))]
    reordered = [degs[q[i]] for i in range(len(q))]
    assert koszul_sign(degs, composite) == koszul_sign(degs, q) * koszul_sign(
        reordered, p
    )


# --- matrices ----------------------------------------------------------------

def test_matrix_helpers():
    ident = identity_matrix(2)
    m = ((Q(1), Q(2)), (Q(0), Q(3)))
    assert mat_mul(ident, m) == m
    assert mat_transpose(m) == ((Q(1), Q(0)), (Q(2), Q(3)))
    assert mat_transpose(mat_transpose(m)) == m
