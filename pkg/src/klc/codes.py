"""Ternary linear codes attached to the group enumerations.

For a group G = {g_1, ..., g_N} over GF(3^r) (in the canonical order of
groups.enumerate_group), the associated code C(G) <= GF(3)^N is the dual
of the q-row map a -> c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)): the dual
code C(G)^perp consists of exactly these q words, and C(G) itself has
dimension N - r.

Weight distributions of C(G) are computed by two genuinely independent
routes and must agree coefficient by coefficient:

  * a combinatorial dynamic program over the trace multiplicities n(beta):
    a codeword of weight j picks nu_beta coordinates set to 1 and mu_beta
    set to 2 among the n(beta) positions with trace beta, subject to
    sum (nu_beta - mu_beta) beta == 0; the DP tracks (weight, that partial
    sum) with per-beta transitions bucketed by (nu - mu) mod 3, which is
    all that matters for the shift since the additive group has exponent 3;

  * the MacWilliams transform of the q-word dual spectrum, where the
    division by q must be exact.

All counts are exact Python integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .charsums import kloosterman_all
from .eisenstein import additive_char
from .errors import UnsupportedScaleError, VerificationError
from .field import Field
from .groups import GROUPS, enumerate_group, group_order, mat_trace, trace_spectrum_closed

_FULL_SPECTRUM_MAX_N = 2000


def _check_tag(tag: str) -> str:
    t = tag.lower()
    if t not in GROUPS:
        raise ValueError(f"unknown code {tag!r}; expected one of {GROUPS}")
    return t


def code_length(q: int, tag: str) -> int:
    return group_order(q, _check_tag(tag))


def code_dimension(field: Field, tag: str) -> int:
    return code_length(field.q, tag) - field.r


@lru_cache(maxsize=None)
def _group_traces(field: Field, tag: str) -> tuple[int, ...]:
    return tuple(mat_trace(field, w) for w in enumerate_group(field, tag))


def dual_codeword(field: Field, tag: str, a: int) -> tuple[int, ...]:
    """The word c(a) = (tr(a Tr g_1), ..., tr(a Tr g_N)) over GF(3)."""
    tag = _check_tag(tag)
    if not 0 <= a < field.q:
        raise ValueError(f"a must be an element of GF({field.q}), got {a}")
    mul, tr = field.mul, field.trace
    return tuple(tr(mul(a, t)) for t in _group_traces(field, tag))


@lru_cache(maxsize=None)
def dual_weights(field: Field, tag: str) -> tuple[int, ...]:
    """Hamming weight of c(a) for every a, by counting nonzero coordinates."""
    out = []
    for a in field.elements():
        coords = dual_codeword(field, tag, a)
        out.append(sum(1 for c in coords if c))
    return tuple(out)


def dual_weight_formula(field: Field, tag: str, a: int) -> int:
    """Closed form for the weight of c(a), a != 0, for the orthogonal codes:

        w(c(a)) = (q i / 3) * (2 (q^2 - 1) - 2Re(lambda(a)) K(a^2))

    with i = 1 for the SO(3,q) code and i = 2 for the O(3,q) code, kept
    fraction-free via the integer 2Re(lambda(a)).
    """
    tag = _check_tag(tag)
    if tag == "sp2":
        raise ValueError("closed-form dual weight is defined for the so3 and o3 codes")
    if not 1 <= a < field.q:
        raise ValueError(f"a must be a unit of GF({field.q}), got {a}")
    i = 1 if tag == "so3" else 2
    q = field.q
    k = kloosterman_all(field)[field.mul(a, a)]
    return (q * i // 3) * (2 * (q * q - 1) - additive_char(field, a).two_re() * k)


def dual_spectrum(field: Field, tag: str) -> dict[int, int]:
    """Weight -> count over the q words of the dual code."""
    spec: dict[int, int] = {}
    for w in dual_weights(field, tag):
        spec[w] = spec.get(w, 0) + 1
    return dict(sorted(spec.items()))


# ---------------------------------------------------------------------------
# Stirling numbers


def stirling2(h: int, t: int) -> int:
    """Stirling number of the second kind via the explicit alternating sum
    S(h, t) = (1/t!) sum_j (-1)^(t-j) C(t, j) j^h; zero for t > h."""
    if h < 0 or t < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if t > h:
        return 0
    acc = 0
    for j in range(t + 1):
        acc += (-1) ** (t - j) * comb(t, j) * j**h
    ft = factorial(t)
    if acc % ft:
        raise VerificationError(f"stirling2({h}, {t}) sum not divisible by {t}!")
    return acc // ft


# ---------------------------------------------------------------------------
# weight distributions


@dataclass(frozen=True)
class WeightDistribution:
    code: str
    counts: tuple[int, ...]
    truncated_at: int | None = None

    def rows(self, q: int) -> list[dict]:
        return [{"code": self.code, "q": q, "j": j, "count": str(c)}
                for j, c in enumerate(self.counts)]


def code_trace_counts(field: Field, tag: str) -> tuple[int, ...]:
    """n(beta) per beta for the code's group, from the closed forms."""
    return trace_spectrum_closed(field, _check_tag(tag))


def _site_polys(n: int, cap: int) -> list[list[int]]:
    """Per-position-class transition polynomials bucketed by (nu - mu) mod 3.

    R[k][d] = sum of multinomials C(n; nu, mu) over nu + mu = d <= cap with
    nu - mu congruent to k mod 3 (the multinomial is zero when nu + mu > n).
    """
    top = min(n, cap)
    rows = [[0] * (top + 1) for _ in range(3)]
    for nu in range(top + 1):
        c_nu = comb(n, nu)
        for mu in range(top - nu + 1):
            if nu + mu > n:
                break
            rows[(nu - mu) % 3][nu + mu] += c_nu * comb(n - nu, mu)
    return rows


def _conv_acc(target: list[int], col: list[int], poly: list[int], cap: int) -> None:
    """target += col * poly as polynomials, dropping degrees above cap."""
    for w, c in enumerate(col):
        if not c:
            continue
        end = min(w + len(poly), cap + 1)
        target[w:end] = [t + c * p for t, p in zip(target[w:end], poly)]


def weight_distribution_dp(field: Field, tag: str,
                           truncate_at: int | None = None) -> WeightDistribution:
    """Weight distribution by the combinatorial dynamic program.

    Untruncated runs are bounded to N <= 2000; pass truncate_at=J for the
    exact counts C_0..C_J at any supported q.
    """
    tag = _check_tag(tag)
    n_total = code_length(field.q, tag)
    if truncate_at is None:
        if n_total > _FULL_SPECTRUM_MAX_N:
            raise UnsupportedScaleError(
                f"full distribution bounded at N <= {_FULL_SPECTRUM_MAX_N} "
                f"(asked for N = {n_total}); use truncate_at"
            )
        cap = n_total
    else:
        if truncate_at < 0:
            raise ValueError(f"truncate_at must be nonnegative, got {truncate_at}")
        cap = min(truncate_at, n_total)

    q = field.q
    add = field.add
    counts_beta = code_trace_counts(field, tag)
    state = [[0] for _ in range(q)]
    state[0][0] = 1
    width = 0
    for beta in field.elements():
        n = counts_beta[beta]
        rows = _site_polys(n, cap)
        new_width = min(cap, width + len(rows[0]) - 1)
        new = [[0] * (new_width + 1) for _ in range(q)]
        shift = [0, beta, add(beta, beta)]
        for s in range(q):
            col = state[s]
            if not any(col):
                continue
            for k in range(3):
                _conv_acc(new[add(s, shift[k])], col, rows[k], new_width)
        state = new
        width = new_width
    return WeightDistribution(code=tag, counts=tuple(state[0]), truncated_at=truncate_at)


def _binomial_row(n: int, scale_base: int, sign: bool) -> list[int]:
    """Coefficients of (1 + scale_base*y)^n, optionally alternating in sign."""
    out = [1]
    c = 1
    for k in range(n):
        c = c * (n - k) // (k + 1)
        v = c * scale_base**(k + 1)
        out.append(-v if sign and (k + 1) % 2 else v)
    return out


def weight_distribution_macwilliams(field: Field, tag: str,
                                    allow_large: bool = False) -> WeightDistribution:
    """Weight distribution via the MacWilliams transform of the dual spectrum:

        W_C(y) = (1/q) sum_a (1 + 2y)^(N - w(a)) (1 - y)^(w(a))

    The division by q must come out exact; anything else is an error.
    """
    tag = _check_tag(tag)
    n_total = code_length(field.q, tag)
    if n_total > _FULL_SPECTRUM_MAX_N and not allow_large:
        raise UnsupportedScaleError(
            f"MacWilliams expansion bounded at N <= {_FULL_SPECTRUM_MAX_N} "
            f"(asked for N = {n_total}); pass allow_large to force it"
        )
    total = [0] * (n_total + 1)
    for w in dual_weights(field, tag):
        heavy = _binomial_row(n_total - w, 2, sign=False)
        if w == 0:
            for j, v in enumerate(heavy):
                total[j] += v
            continue
        light = _binomial_row(w, 1, sign=True)
        for j, hv in enumerate(heavy):
            if not hv:
                continue
            end = min(j + len(light), n_total + 1)
            total[j:end] = [t + hv * lv for t, lv in zip(total[j:end], light)]
    q = field.q
    counts = []
    for j, v in enumerate(total):
        if v % q:
            raise VerificationError(
                f"MacWilliams sum for {tag} at q={q} not divisible by q at degree {j}"
            )
        counts.append(v // q)
    return WeightDistribution(code=tag, counts=tuple(counts), truncated_at=None)


# ---------------------------------------------------------------------------
# the Pless power-moment identity


@dataclass(frozen=True)
class PlessReport:
    code: str
    q: int
    h: int
    lhs: int
    rhs: int
    equal: bool


def pless_check(field: Field, tag: str, h: int,
                counts: tuple[int, ...] | None = None) -> PlessReport:
    """Check the h-th Pless power moment for C(G) against its dual spectrum:

        sum_j j^h C_j ==
        sum_{j=0}^{min(N,h)} (-1)^j A_j sum_{t=j}^{h} t! S(h,t) 3^(k-t) 2^(t-j) C(N-j, N-t)

    with k = dim C = N - r and A_j the dual weight counts.  The left side
    uses a full weight distribution (computed here via MacWilliams when not
    supplied).
    """
    tag = _check_tag(tag)
    if h < 0:
        raise ValueError(f"h must be nonnegative, got {h}")
    n_total = code_length(field.q, tag)
    if counts is None:
        counts = weight_distribution_macwilliams(field, tag).counts
    lhs = sum(j**h * c for j, c in enumerate(counts))
    k = n_total - field.r
    dual = dual_spectrum(field, tag)
    rhs = 0
    for j in range(min(n_total, h) + 1):
        aj = dual.get(j, 0)
        if not aj:
            continue
        inner = 0
        for t in range(j, h + 1):
            inner += (factorial(t) * stirling2(h, t) * 3 ** (k - t)
                      * 2 ** (t - j) * comb(n_total - j, n_total - t))
        rhs += (-1) ** j * aj * inner
    return PlessReport(code=tag, q=field.q, h=h, lhs=lhs, rhs=rhs, equal=lhs == rhs)
