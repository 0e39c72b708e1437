from itertools import islice

import pytest

from klc.charsums import kloosterman
from klc.eisenstein import CycInt, additive_char
from klc.errors import UnsupportedScaleError
from klc.field import Field
from klc.groups import (
    GROUPS,
    brute_force_orthogonal,
    check_gauss_sum,
    check_trace_spectrum,
    closure_spot_check,
    coset_count,
    enumerate_group,
    gauss_sum,
    gauss_sum_closed,
    group_order,
    is_orthogonal,
    is_special_orthogonal,
    is_symplectic,
    iter_group,
    mat_det,
    mat_mul,
    mat_trace,
    q_binomial,
    trace_spectrum,
    trace_spectrum_closed,
)

_ID3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
_ID2 = ((1, 0), (0, 1))

# ---------------------------------------------------------------------------
# counting


def test_group_orders():
    assert group_order(3, "so3") == 24
    assert group_order(3, "o3") == 48
    assert group_order(3, "sp2") == 24
    assert group_order(9, "o3") == 2 * 9 * 80
    assert group_order(27, "sp2") == 27 * 728


def test_unknown_group_rejected():
    with pytest.raises(ValueError):
        group_order(3, "su2")
    with pytest.raises(ValueError):
        enumerate_group(Field(1), "gl3")


def test_q_binomial():
    assert q_binomial(3, 1, 0) == 1
    assert q_binomial(3, 1, 1) == 1
    assert q_binomial(3, 2, 1) == 4
    assert q_binomial(9, 2, 1) == 10
    assert q_binomial(3, 4, 2) == q_binomial(3, 4, 2)  # deterministic
    with pytest.raises(ValueError):
        q_binomial(3, 1, 2)


def test_coset_count():
    for q in (3, 9, 27):
        assert coset_count(q, 0) == 1
        assert coset_count(q, 1) == q
    with pytest.raises(ValueError):
        coset_count(3, 2)


# ---------------------------------------------------------------------------
# matrix helpers


def test_mat_helpers():
    f = Field(1)
    a = ((1, 2, 0), (0, 1, 0), (0, 0, 1))
    b = ((1, 0, 0), (1, 1, 0), (0, 0, 2))
    ab = mat_mul(f, a, b)
    assert ab == ((0, 2, 0), (1, 1, 0), (0, 0, 2))
    assert mat_trace(f, ab) == 0
    assert mat_det(f, a) == 1
    assert mat_det(f, ((0, 1), (2, 0))) == 1


# ---------------------------------------------------------------------------
# enumeration


@pytest.mark.parametrize("gid", GROUPS)
@pytest.mark.parametrize("r", [1, 2])
def test_enumeration_count_and_uniqueness(r, gid):
    f = Field(r)
    elems = enumerate_group(f, gid)
    assert len(elems) == group_order(f.q, gid)
    assert len(set(elems)) == len(elems)
    ident = _ID2 if gid == "sp2" else _ID3
    assert ident in set(elems)


def test_canonical_order_is_stable():
    f = Field(1)
    for gid in GROUPS:
        assert list(iter_group(f, gid)) == list(enumerate_group(f, gid))
    assert enumerate_group(f, "so3")[0] == _ID3


@pytest.mark.parametrize("special", [False, True])
def test_orthogonal_matches_brute_force(special):
    """The cell-by-cell enumeration hits exactly the 3^9-filter answer."""
    f = Field(1)
    gid = "so3" if special else "o3"
    assert set(enumerate_group(f, gid)) == set(brute_force_orthogonal(f, special))


def test_brute_force_only_at_q3():
    with pytest.raises(ValueError):
        brute_force_orthogonal(Field(2))


@pytest.mark.parametrize("r", [1, 2])
def test_symplectic_is_det_one(r):
    f = Field(r)
    got = set(enumerate_group(f, "sp2"))
    expected = set()
    for a in f.elements():
        for b in f.elements():
            for c in f.elements():
                for d in f.elements():
                    w = ((a, b), (c, d))
                    if mat_det(f, w) == 1:
                        expected.add(w)
    assert got == expected


def test_membership_predicates_agree():
    f = Field(1)
    so3 = set(enumerate_group(f, "so3"))
    o3 = set(enumerate_group(f, "o3"))
    assert so3 < o3
    assert all(is_orthogonal(f, w) for w in o3)
    assert so3 == {w for w in o3 if mat_det(f, w) == 1}
    assert all(is_special_orthogonal(f, w) for w in so3)
    assert all(is_symplectic(f, w) for w in enumerate_group(f, "sp2"))


@pytest.mark.parametrize("gid", GROUPS)
def test_closure_under_products(gid):
    for r in (1, 2):
        assert closure_spot_check(Field(r), gid, pairs=200, seed=7)


def test_group_closed_under_inverse():
    f = Field(1)
    for gid in GROUPS:
        elems = set(enumerate_group(f, gid))
        ident = _ID2 if gid == "sp2" else _ID3
        for w in elems:
            assert any(mat_mul(f, w, v) == ident for v in elems)


def test_streaming_beyond_materialization_cap():
    f = Field(4)  # q = 81
    with pytest.raises(UnsupportedScaleError):
        enumerate_group(f, "so3")
    head = list(islice(iter_group(f, "so3"), 50))
    assert len(head) == 50
    assert all(is_special_orthogonal(f, w) for w in head)


# ---------------------------------------------------------------------------
# trace spectra


def test_trace_spectrum_q3_anchors():
    f = Field(1)
    assert trace_spectrum(f, "so3") == (9, 6, 9)
    assert trace_spectrum(f, "o3") == (18, 15, 15)
    assert trace_spectrum(f, "sp2") == (6, 9, 9)


@pytest.mark.parametrize("gid", GROUPS)
@pytest.mark.parametrize("r", [1, 2, 3])
def test_closed_spectrum_matches_enumeration(r, gid):
    f = Field(r)
    rep = check_trace_spectrum(f, gid)
    assert rep.equal
    assert rep.all_positive
    assert sum(rep.enumerated) == group_order(f.q, gid)


def test_closed_spectrum_needs_no_enumeration():
    # the closed form stays available past the materialization cap
    f = Field(4)
    spec = trace_spectrum_closed(f, "so3")
    assert sum(spec) == group_order(81, "so3")


# ---------------------------------------------------------------------------
# exponential sums over the groups


def test_gauss_sum_q3_anchors():
    f = Field(1)
    assert gauss_sum(f, "so3", 1) == CycInt(0, -3)
    assert gauss_sum(f, "o3", 1) == CycInt(3, 0)
    assert gauss_sum(f, "sp2", 1) == CycInt(-3, 0)


@pytest.mark.parametrize("gid", GROUPS)
@pytest.mark.parametrize("r", [1, 2])
def test_gauss_sum_closed_form(r, gid):
    f = Field(r)
    for a in f.units():
        rep = check_gauss_sum(f, gid, a)
        assert rep.equal
        if gid == "o3":
            assert rep.closed.is_real()
        if gid == "sp2":
            assert rep.closed == CycInt(f.q * kloosterman(f, f.mul(a, a)), 0)


def test_gauss_sum_rejects_zero():
    with pytest.raises(ValueError):
        gauss_sum_closed(Field(1), "so3", 0)
    with pytest.raises(ValueError):
        gauss_sum(Field(1), "so3", 3)


@pytest.mark.parametrize("gid", GROUPS)
@pytest.mark.parametrize("r", [1, 2])
def test_spectrum_gauss_duality(r, gid):
    """Fourier inversion: q N(beta) = |G| + sum_a lambda(-a beta) G(a), exactly."""
    f = Field(r)
    spec = trace_spectrum(f, gid)
    order = group_order(f.q, gid)
    for beta in f.elements():
        acc = CycInt(order, 0)
        for a in f.units():
            acc = acc + additive_char(f, f.neg(f.mul(a, beta))) * gauss_sum_closed(f, gid, a)
        assert acc == CycInt(f.q * spec[beta], 0)
