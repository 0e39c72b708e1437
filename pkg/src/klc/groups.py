"""The matrix groups O(3, q), SO(3, q) and Sp(2, q) over GF(3^r).

O(3, q) preserves the symmetric form with Gram matrix

    J = [[0, 1, 0],
         [1, 0, 0],
         [0, 0, 1]]

and is enumerated cell by cell rather than by filtering all of GL(3):
every element factors uniquely as u * sigma_rr * v (optionally preceded
by rho = diag(1, 1, -1)) where

    u = q(A, h) = [[A, A h^2, -A h], [0, 1/A, 0], [0, h, 1]]

runs over the subgroup Q (A a unit, h arbitrary; the membership relation
B + B + h^2 = 0 forces the corner entry B = h^2 in characteristic 3),
sigma_0 = I, sigma_1 swaps the first two coordinates, and v runs over
coset representatives: just the identity for rr = 0, and {q(1, h')} for
rr = 1.  Elements with determinant 1 form SO(3, q): the rr = 0 cells of Q
and the rr = 1 cells of rho Q.

Sp(2, q) is SL(2, q): the 2x2 matrices preserving the alternating form
[[0, 1], [-1, 0]], which for 2x2 matrices is exactly det == 1.  It is
enumerated by scanning (a, b, c) and solving for d.

Element order is canonical and deterministic: cells in the order
(rr=0, Q), (rr=1, Q), (rr=0, rho Q), (rr=1, rho Q), and inside a cell
lexicographic by (enc(A), enc(h), coset index).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from random import Random
from typing import Iterator

from .charsums import delta_table, kloosterman_all
from .eisenstein import CycInt, additive_char
from .errors import UnsupportedScaleError, VerificationError
from .field import Field

GROUPS = ("so3", "o3", "sp2")

_J3 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
_SIGMA1 = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
_ID3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
_ID2 = ((1, 0), (0, 1))

# Materializing a full group only makes sense at desk scale; streaming via
# iter_group stays available for larger q.
_ENUMERATE_MAX_Q = 27

Mat = tuple


def _check_gid(gid: str) -> str:
    g = gid.lower()
    if g not in GROUPS:
        raise ValueError(f"unknown group {gid!r}; expected one of {GROUPS}")
    return g


def group_order(q: int, gid: str) -> int:
    """|O(3,q)| = 2q(q^2-1); |SO(3,q)| = |Sp(2,q)| = q(q^2-1)."""
    gid = _check_gid(gid)
    base = q * (q * q - 1)
    return 2 * base if gid == "o3" else base


def q_binomial(q: int, n: int, rr: int) -> int:
    """Gaussian binomial [n choose rr]_q as an exact integer."""
    if not 0 <= rr <= n:
        raise ValueError(f"need 0 <= rr <= n, got rr={rr}, n={n}")
    num = den = 1
    for j in range(rr):
        num *= q ** (n - j) - 1
        den *= q ** (rr - j) - 1
    if num % den:
        raise VerificationError(f"Gaussian binomial [{n},{rr}]_{q} did not divide exactly")
    return num // den


def coset_count(q: int, rr: int) -> int:
    """Number of coset representatives used by the rr-th cell at n = 1:
    q^C(rr+1, 2) * [1 choose rr]_q, i.e. 1 for rr = 0 and q for rr = 1."""
    if rr not in (0, 1):
        raise ValueError(f"rr must be 0 or 1 at n = 1, got {rr}")
    return q ** comb(rr + 1, 2) * q_binomial(q, 1, rr)


# ---------------------------------------------------------------------------
# matrix helpers (matrices are tuples of row tuples of enc integers)


def mat_mul(field: Field, x: Mat, y: Mat) -> Mat:
    n = len(x)
    add, mul = field.add, field.mul
    rows = []
    for i in range(n):
        xi = x[i]
        row = []
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add(acc, mul(xi[k], y[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def mat_trace(field: Field, x: Mat) -> int:
    acc = 0
    for i in range(len(x)):
        acc = field.add(acc, x[i][i])
    return acc


def mat_det(field: Field, x: Mat) -> int:
    add, sub, mul = field.add, field.sub, field.mul
    if len(x) == 2:
        return sub(mul(x[0][0], x[1][1]), mul(x[0][1], x[1][0]))
    (a, b, c), (d, e, f), (g, h, i) = x
    m1 = mul(a, sub(mul(e, i), mul(f, h)))
    m2 = mul(b, sub(mul(d, i), mul(f, g)))
    m3 = mul(c, sub(mul(d, h), mul(e, g)))
    return add(sub(m1, m2), m3)


def _form3(field: Field, x, y) -> int:
    # bilinear form of J: x1 y2 + x2 y1 + x3 y3
    add, mul = field.add, field.mul
    return add(add(mul(x[0], y[1]), mul(x[1], y[0])), mul(x[2], y[2]))


def is_orthogonal(field: Field, w: Mat) -> bool:
    """Whether w^T J w == J, checked entrywise on column pairs."""
    cols = tuple(zip(*w))
    for i in range(3):
        for j in range(i, 3):
            if _form3(field, cols[i], cols[j]) != _J3[i][j]:
                return False
    return True


def is_special_orthogonal(field: Field, w: Mat) -> bool:
    return is_orthogonal(field, w) and mat_det(field, w) == 1


def is_symplectic(field: Field, w: Mat) -> bool:
    """Whether w preserves the alternating form [[0,1],[-1,0]].

    For 2x2 matrices the single nontrivial entry of w^T Jhat w is det(w),
    so this is det == 1.
    """
    sub, mul = field.sub, field.mul
    (a, b), (c, d) = w
    return sub(mul(a, d), mul(b, c)) == 1


_PREDICATES = {"so3": is_special_orthogonal, "o3": is_orthogonal, "sp2": is_symplectic}


def _q_elem(field: Field, a_unit: int, h: int) -> Mat:
    mul, neg, inv = field.mul, field.neg, field.inv
    h2 = mul(h, h)
    return (
        (a_unit, mul(a_unit, h2), neg(mul(a_unit, h))),
        (0, inv(a_unit), 0),
        (0, h, 1),
    )


def _swap_cols01(w: Mat) -> Mat:
    # right-multiplication by sigma_1
    return tuple((row[1], row[0], row[2]) for row in w)


def _neg_last_row(field: Field, w: Mat) -> Mat:
    # left-multiplication by rho = diag(1, 1, -1)
    return (w[0], w[1], tuple(field.neg(v) for v in w[2]))


def _iter_orthogonal(field: Field, special: bool) -> Iterator[Mat]:
    cells = [(0, False), (1, True)] if special else [(0, False), (1, False), (0, True), (1, True)]
    check = _PREDICATES["so3" if special else "o3"]
    for rr, rho in cells:
        reps = (None,) if rr == 0 else tuple(_q_elem(field, 1, hp) for hp in field.elements())
        for a_unit in field.units():
            for h in field.elements():
                base = _q_elem(field, a_unit, h)
                if rr == 1:
                    base = _swap_cols01(base)
                for rep in reps:
                    w = base if rep is None else mat_mul(field, base, rep)
                    if rho:
                        w = _neg_last_row(field, w)
                    if not check(field, w):
                        raise VerificationError(
                            f"construction bug: emitted matrix fails the defining "
                            f"relation in cell (rr={rr}, rho={rho}) at q={field.q}"
                        )
                    yield w


def _iter_symplectic(field: Field) -> Iterator[Mat]:
    add, mul, inv, neg = field.add, field.mul, field.inv, field.neg
    for a in field.elements():
        if a == 0:
            # det = -bc = 1 forces c = -1/b; d is free
            for b in field.units():
                c = neg(inv(b))
                for d in field.elements():
                    yield ((0, b), (c, d))
        else:
            ia = inv(a)
            for b in field.elements():
                for c in field.elements():
                    d = mul(ia, add(1, mul(b, c)))
                    yield ((a, b), (c, d))


def iter_group(field: Field, gid: str) -> Iterator[Mat]:
    """Stream the group in canonical order, validating each element."""
    gid = _check_gid(gid)
    if gid == "sp2":
        check = is_symplectic
        for w in _iter_symplectic(field):
            if not check(field, w):
                raise VerificationError(f"construction bug: bad Sp(2,{field.q}) element {w}")
            yield w
    else:
        yield from _iter_orthogonal(field, special=gid == "so3")


@lru_cache(maxsize=None)
def enumerate_group(field: Field, gid: str) -> tuple[Mat, ...]:
    """The whole group as a tuple in canonical order, with global checks.

    Checks that the element count matches the closed-form order and that
    no element was emitted twice.  Guarded to q <= 27; use iter_group to
    stream larger fields.
    """
    gid = _check_gid(gid)
    if field.q > _ENUMERATE_MAX_Q:
        raise UnsupportedScaleError(
            f"full materialization bounded at q <= {_ENUMERATE_MAX_Q}; stream with iter_group"
        )
    elems = tuple(iter_group(field, gid))
    expected = group_order(field.q, gid)
    if len(elems) != expected:
        raise VerificationError(
            f"{gid} at q={field.q}: enumerated {len(elems)} elements, order says {expected}"
        )
    if len(set(elems)) != len(elems):
        raise VerificationError(f"{gid} at q={field.q}: enumeration emitted duplicates")
    return elems


def brute_force_orthogonal(field: Field, special: bool = False) -> list[Mat]:
    """All 3x3 matrices over GF(3) satisfying the defining relation.

    Scans 3^9 candidate matrices; only sensible (and only allowed) at q = 3.
    """
    if field.q != 3:
        raise ValueError("the 3^9 filter oracle is only available at q = 3")
    check = is_special_orthogonal if special else is_orthogonal
    out = []
    rows = [(a, b, c) for a in range(3) for b in range(3) for c in range(3)]
    for r1 in rows:
        for r2 in rows:
            for r3 in rows:
                w = (r1, r2, r3)
                if check(field, w):
                    out.append(w)
    return out


# ---------------------------------------------------------------------------
# trace spectra


@lru_cache(maxsize=None)
def trace_spectrum(field: Field, gid: str) -> tuple[int, ...]:
    """N(beta) = #{w in G : Tr w == beta} for all beta, by enumeration."""
    counts = [0] * field.q
    for w in enumerate_group(field, gid):
        counts[mat_trace(field, w)] += 1
    return tuple(counts)


def trace_spectrum_closed(field: Field, gid: str) -> tuple[int, ...]:
    """The same counts from the closed forms in terms of delta(1, .)."""
    gid = _check_gid(gid)
    q = field.q
    d1 = delta_table(field, 1)
    out = []
    for beta in field.elements():
        if gid == "so3":
            n = q * q - q + q * d1[field.sub(beta, 1)]
        elif gid == "o3":
            n = 2 * q * q - 2 * q + q * d1[field.sub(beta, 1)] + q * d1[field.add(beta, 1)]
        else:
            n = q * q - q + q * d1[beta]
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class SpectrumReport:
    gid: str
    q: int
    enumerated: tuple[int, ...]
    closed: tuple[int, ...]
    equal: bool
    all_positive: bool


def check_trace_spectrum(field: Field, gid: str) -> SpectrumReport:
    enum = trace_spectrum(field, gid)
    closed = trace_spectrum_closed(field, gid)
    return SpectrumReport(
        gid=_check_gid(gid),
        q=field.q,
        enumerated=enum,
        closed=closed,
        equal=enum == closed,
        all_positive=all(n > 0 for n in enum),
    )


# ---------------------------------------------------------------------------
# exponential sums over the groups


def gauss_sum_closed(field: Field, gid: str, a: int) -> CycInt:
    """Closed form for sum_w lambda(a Tr w):

        SO(3,q): lambda(a) q K(a^2)
        O(3,q):  (lambda(a) + lambda(-a)) q K(a^2), a rational integer
        Sp(2,q): q K(a^2), the SO(3,q) value divided by lambda(a)
    """
    gid = _check_gid(gid)
    if not 1 <= a < field.q:
        raise ValueError(f"a must be a unit of GF({field.q}), got {a}")
    k = kloosterman_all(field)[field.mul(a, a)]
    if gid == "sp2":
        return CycInt(field.q * k, 0)
    lam = additive_char(field, a)
    if gid == "so3":
        return lam * (field.q * k)
    val = (lam + additive_char(field, field.neg(a))) * (field.q * k)
    if not val.is_real():
        raise VerificationError(f"O(3,q) exponential sum not real at q={field.q}, a={a}")
    return val


def gauss_sum(field: Field, gid: str, a: int) -> CycInt:
    """sum_w lambda(a Tr w) from the trace spectrum, asserted against the
    closed form."""
    gid = _check_gid(gid)
    if not 1 <= a < field.q:
        raise ValueError(f"a must be a unit of GF({field.q}), got {a}")
    spectrum = trace_spectrum(field, gid)
    acc = CycInt(0, 0)
    for beta, n in enumerate(spectrum):
        acc = acc + additive_char(field, field.mul(a, beta)) * n
    expected = gauss_sum_closed(field, gid, a)
    if acc != expected:
        raise VerificationError(
            f"exponential sum mismatch for {gid} at q={field.q}, a={a}: "
            f"spectrum gives {acc!r}, closed form {expected!r}"
        )
    return acc


@dataclass(frozen=True)
class GaussReport:
    gid: str
    q: int
    a: int
    from_spectrum: CycInt
    closed: CycInt
    equal: bool


def check_gauss_sum(field: Field, gid: str, a: int) -> GaussReport:
    spec_val = CycInt(0, 0)
    for beta, n in enumerate(trace_spectrum(field, gid)):
        spec_val = spec_val + additive_char(field, field.mul(a, beta)) * n
    closed = gauss_sum_closed(field, gid, a)
    return GaussReport(gid=_check_gid(gid), q=field.q, a=a,
                       from_spectrum=spec_val, closed=closed, equal=spec_val == closed)


def closure_spot_check(field: Field, gid: str, pairs: int = 100, seed: int = 0) -> bool:
    """Multiply `pairs` random pairs of enumerated elements and confirm the
    products still satisfy the defining relation."""
    gid = _check_gid(gid)
    elems = enumerate_group(field, gid)
    rng = Random(seed)
    check = _PREDICATES[gid]
    for _ in range(pairs):
        u = elems[rng.randrange(len(elems))]
        v = elems[rng.randrange(len(elems))]
        if not check(field, mat_mul(field, u, v)):
            return False
    return True
