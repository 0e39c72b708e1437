from random import Random

import pytest

from klc.codes import (
    code_dimension,
    code_length,
    code_trace_counts,
    dual_codeword,
    dual_spectrum,
    dual_weight_formula,
    dual_weights,
    pless_check,
    stirling2,
    weight_distribution_dp,
    weight_distribution_macwilliams,
)
from klc.errors import UnsupportedScaleError, VerificationError
from klc.field import Field
from klc.groups import GROUPS, trace_spectrum

# ---------------------------------------------------------------------------
# shape


def test_lengths_and_dimensions():
    f3, f9 = Field(1), Field(2)
    assert code_length(3, "so3") == 24
    assert code_length(3, "o3") == 48
    assert code_length(9, "sp2") == 720
    assert code_dimension(f3, "so3") == 23
    assert code_dimension(f9, "o3") == 1440 - 2
    with pytest.raises(ValueError):
        code_length(3, "u3")


@pytest.mark.parametrize("tag", GROUPS)
@pytest.mark.parametrize("r", [1, 2])
def test_trace_counts_partition_positions(r, tag):
    f = Field(r)
    counts = code_trace_counts(f, tag)
    assert sum(counts) == code_length(f.q, tag)
    assert counts == trace_spectrum(f, tag)


# ---------------------------------------------------------------------------
# the dual code


def test_dual_codeword_basics():
    f = Field(1)
    assert dual_codeword(f, "so3", 0) == (0,) * 24
    w1 = dual_codeword(f, "so3", 1)
    assert sum(1 for c in w1 if c) == 15
    # at r = 1 the trace is the identity, so c(2) = 2 c(1)
    assert dual_codeword(f, "so3", 2) == tuple((2 * c) % 3 for c in w1)
    with pytest.raises(ValueError):
        dual_codeword(f, "so3", 3)


@pytest.mark.parametrize("tag", GROUPS)
@pytest.mark.parametrize("r", [1, 2])
def test_dual_words_are_distinct(r, tag):
    """The map a -> c(a) is injective, so the dual code has dimension r."""
    f = Field(r)
    words = {dual_codeword(f, tag, a) for a in f.elements()}
    assert len(words) == f.q


@pytest.mark.parametrize("tag", ["so3", "o3"])
@pytest.mark.parametrize("r", [1, 2])
def test_dual_weight_formula_matches_count(r, tag):
    f = Field(r)
    weights = dual_weights(f, tag)
    assert weights[0] == 0
    for a in f.units():
        assert dual_weight_formula(f, tag, a) == weights[a]


def test_dual_weight_formula_guards():
    f = Field(1)
    with pytest.raises(ValueError):
        dual_weight_formula(f, "sp2", 1)
    with pytest.raises(ValueError):
        dual_weight_formula(f, "so3", 0)


def test_dual_spectra_q3():
    f = Field(1)
    assert dual_spectrum(f, "so3") == {0: 1, 15: 2}
    assert dual_spectrum(f, "o3") == {0: 1, 30: 2}
    assert dual_spectrum(f, "sp2") == {0: 1, 18: 2}


# ---------------------------------------------------------------------------
# Stirling numbers


def _partitions_into(h, t):
    """Count set partitions of {1..h} into exactly t blocks by growing
    restricted-growth strings; an oracle independent of the alternating sum."""
    def grow(i, used):
        if i == h:
            return 1 if used == t else 0
        total = grow(i + 1, used + 1)  # open a new block
        total += used * grow(i + 1, used)  # join an existing one
        return total

    return grow(0, 0)


def test_stirling2_values():
    assert stirling2(0, 0) == 1
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert stirling2(3, 5) == 0
    with pytest.raises(ValueError):
        stirling2(-1, 0)


def test_stirling2_against_partition_count():
    for h in range(7):
        for t in range(h + 1):
            assert stirling2(h, t) == _partitions_into(h, t)


def test_stirling2_recurrence():
    for h in range(1, 10):
        for t in range(1, h + 1):
            assert stirling2(h, t) == t * stirling2(h - 1, t) + stirling2(h - 1, t - 1)


# ---------------------------------------------------------------------------
# weight distributions


def test_dp_anchors_q3():
    f = Field(1)
    c_so3 = weight_distribution_dp(f, "so3").counts
    c_o3 = weight_distribution_dp(f, "o3").counts
    c_sp2 = weight_distribution_dp(f, "sp2").counts
    assert c_so3[0] == 1 and c_so3[1] == 18 and c_so3[2] == 354
    assert c_o3[0] == 1 and c_o3[1] == 36
    assert c_sp2[1] == 12 and c_sp2[2] == 366


@pytest.mark.parametrize("tag", GROUPS)
def test_dp_matches_macwilliams_q3(tag):
    f = Field(1)
    dp = weight_distribution_dp(f, tag)
    mw = weight_distribution_macwilliams(f, tag)
    assert dp.counts == mw.counts
    n = code_length(3, tag)
    assert len(dp.counts) == n + 1
    assert sum(dp.counts) == 3 ** (n - 1)


@pytest.mark.parametrize("tag", GROUPS)
def test_dp_matches_macwilliams_q9(tag, q9_dists):
    dp = q9_dists[(tag, "dp")]
    mw = q9_dists[(tag, "mw")]
    assert dp == mw
    n = code_length(9, tag)
    assert sum(dp) == 3 ** (n - 2)
    assert dp[0] == 1 and dp[-1] >= 0


@pytest.mark.parametrize("tag", GROUPS)
def test_truncation_is_a_prefix(tag):
    f = Field(1)
    full = weight_distribution_dp(f, tag).counts
    head = weight_distribution_dp(f, tag, truncate_at=6)
    assert head.truncated_at == 6
    assert head.counts == full[:7]
    assert weight_distribution_dp(f, tag, truncate_at=10**6).counts == full


def test_truncated_counts_beyond_cap():
    """Prefix counts stay available at scales where the full table is refused."""
    f27 = Field(3)
    with pytest.raises(UnsupportedScaleError):
        weight_distribution_dp(f27, "so3")
    with pytest.raises(UnsupportedScaleError):
        weight_distribution_macwilliams(f27, "so3")
    head = weight_distribution_dp(f27, "so3", truncate_at=2).counts
    assert head[0] == 1 and head[1] > 0 and len(head) == 3
    with pytest.raises(ValueError):
        weight_distribution_dp(f27, "so3", truncate_at=-1)


def test_sampled_codewords_hit_positive_counts():
    """Vectors orthogonal to the dual words really have weights the DP counts.

    Sample random vectors, fix up one coordinate to land in the kernel of
    c(1) (which spans the dual at r = 1), and check the resulting weight has
    a positive count.
    """
    f = Field(1)
    rng = Random(20240814)
    for tag in GROUPS:
        n = code_length(3, tag)
        gen = dual_codeword(f, tag, 1)
        pivot = next(i for i, c in enumerate(gen) if c == 1)
        counts = weight_distribution_dp(f, tag).counts
        for _ in range(100):
            vec = [rng.randrange(3) for _ in range(n)]
            s = sum(v * c for v, c in zip(vec, gen)) % 3
            vec[pivot] = (vec[pivot] - s) % 3
            assert sum(v * c for v, c in zip(vec, gen)) % 3 == 0
            assert sum(v * c for v, c in zip(vec, dual_codeword(f, tag, 2))) % 3 == 0
            assert counts[sum(1 for v in vec if v)] > 0


# ---------------------------------------------------------------------------
# the power-moment identity


@pytest.mark.parametrize("tag", GROUPS)
def test_pless_q3(tag):
    f = Field(1)
    counts = weight_distribution_dp(f, tag).counts
    for h in range(5):
        rep = pless_check(f, tag, h, counts=counts)
        assert rep.equal, f"h={h}: {rep.lhs} != {rep.rhs}"
    rep0 = pless_check(f, tag, 0, counts=counts)
    assert rep0.lhs == 3 ** (code_length(3, tag) - 1)


@pytest.mark.parametrize("tag", GROUPS)
def test_pless_q9(tag, q9_dists):
    f = Field(2)
    counts = q9_dists[(tag, "dp")]
    for h in (1, 2, 3, 4):
        rep = pless_check(f, tag, h, counts=counts)
        assert rep.equal


def test_pless_default_counts_and_guard():
    f = Field(1)
    assert pless_check(f, "so3", 2).equal
    with pytest.raises(ValueError):
        pless_check(f, "so3", -1)
