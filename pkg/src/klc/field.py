"""Arithmetic in GF(3^r).

Field elements are plain integers 0..q-1 encoding coefficient vectors in
base 3: the element sum(c_k * t^k) is stored as enc = sum(c_k * 3^k),
where t is the residue of the indeterminate modulo the field modulus.
The encoding is a bijection onto range(q) and fixes the canonical
enumeration order used everywhere in this package.

The modulus defaults to the monic irreducible polynomial of degree r
over GF(3) with the smallest encoding (constant term least significant):
t for r = 1, t^2 + 1 for r = 2, and so on.  Any other monic irreducible
of the right degree can be passed explicitly to work in a different
polynomial basis.

Multiplicative structure goes through discrete-log tables built once at
construction from a primitive element, so mul/inv/pow are O(1) lookups.
Additive structure is digit arithmetic mod 3 (table-backed for small q).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import FieldConfigError

_MAX_R = 8
# Full q x q addition tables are only worth the memory up to this size.
_ADD_TABLE_MAX_Q = 729


def _digits(x: int, n: int) -> list[int]:
    """Base-3 digits of x, least significant first, padded to length n."""
    out = []
    for _ in range(n):
        x, d = divmod(x, 3)
        out.append(d)
    return out


def _poly_rem(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Remainder of f modulo a monic polynomial g over GF(3).

    Coefficient lists are constant term first.
    """
    f = [c % 3 for c in f]
    dg = len(g) - 1
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c:
            for k in range(dg + 1):
                f[i - dg + k] = (f[i - dg + k] - c * g[k]) % 3
    return f[:dg]


def is_irreducible(coeffs: Sequence[int]) -> bool:
    """Whether a monic polynomial over GF(3) is irreducible.

    Trial division by every monic polynomial of degree 1..deg//2; fine for
    the degrees this package supports (deg <= 8).
    """
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] % 3 != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for m in range(3**d):
            g = _digits(m, d) + [1]
            if not any(_poly_rem(coeffs, g)):
                return False
    return True


def default_modulus(r: int) -> tuple[int, ...]:
    """Smallest-encoding monic irreducible of degree r over GF(3)."""
    for m in range(3**r):
        coeffs = tuple(_digits(m, r)) + (1,)
        if is_irreducible(coeffs):
            return coeffs
    raise FieldConfigError(f"no irreducible polynomial of degree {r} found")


class Field:
    """GF(3^r) in a polynomial basis.

    Parameters
    ----------
    r : int
        Extension degree, 1 <= r <= 8.
    modulus : sequence of int, optional
        Monic irreducible polynomial of degree r over GF(3), coefficients
        constant term first, each in {0, 1, 2}.  Defaults to the
        smallest-encoding monic irreducible of degree r.
    """

    def __init__(self, r: int, modulus: Iterable[int] | None = None):
        if not isinstance(r, int) or not 1 <= r <= _MAX_R:
            raise FieldConfigError(f"extension degree must be an int in 1..{_MAX_R}, got {r!r}")
        self.r = r
        self.q = 3**r
        if modulus is None:
            mod = default_modulus(r)
        else:
            mod = tuple(int(c) for c in modulus)
            if len(mod) != r + 1:
                raise FieldConfigError(
                    f"modulus {list(mod)} has degree {len(mod) - 1}, expected {r}"
                )
            if any(c not in (0, 1, 2) for c in mod):
                raise FieldConfigError(f"modulus {list(mod)} has coefficients outside GF(3)")
            if mod[-1] != 1:
                raise FieldConfigError(f"modulus {list(mod)} is not monic")
            if not is_irreducible(mod):
                raise FieldConfigError(f"modulus {list(mod)} is reducible over GF(3)")
        self.modulus = mod
        self.zero = 0
        self.one = 1
        self._build_tables()

    # -- construction ------------------------------------------------

    def _mul_raw(self, x: int, y: int) -> int:
        """Product by polynomial convolution and reduction; used only to bootstrap."""
        a = _digits(x, self.r)
        b = _digits(y, self.r)
        prod = [0] * (2 * self.r - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for i in range(2 * self.r - 2, self.r - 1, -1):
            c = prod[i] % 3
            if c:
                for k in range(self.r):
                    prod[i - self.r + k] -= c * mod[k]
        enc = 0
        for i in range(self.r - 1, -1, -1):
            enc = enc * 3 + prod[i] % 3
        return enc

    def _build_tables(self) -> None:
        q = self.q
        # Find a primitive element by direct order computation.
        gen = None
        for cand in range(2, q):
            x, n = cand, 1
            while x != 1:
                x = self._mul_raw(x, cand)
                n += 1
                if n > q:
                    raise FieldConfigError(
                        f"modulus {list(self.modulus)} does not define a field"
                    )
            if n == q - 1:
                gen = cand
                break
        if gen is None:  # pragma: no cover - unreachable for a true field
            raise FieldConfigError(f"no primitive element found for modulus {list(self.modulus)}")
        self.generator = gen
        exp = [1] * (q - 1)
        log = [0] * q
        for i in range(1, q - 1):
            exp[i] = self._mul_raw(exp[i - 1], gen)
            log[exp[i]] = i
        self._exp = exp
        self._log = log

        if q <= _ADD_TABLE_MAX_Q:
            self._add_table = [[self._add_slow(x, y) for y in range(q)] for x in range(q)]
        else:
            self._add_table = None

        trace = []
        for x in range(q):
            t = 0
            for k in range(self.r):
                t = self.add(t, self.pow(x, 3**k))
            assert t < 3, "trace landed outside the prime field"
            trace.append(t)
        self._trace = trace

    # -- arithmetic --------------------------------------------------

    def _add_slow(self, x: int, y: int) -> int:
        out, shift = 0, 1
        while x or y:
            out += ((x % 3) + (y % 3)) % 3 * shift
            x //= 3
            y //= 3
            shift *= 3
        return out

    def add(self, x: int, y: int) -> int:
        if self._add_table is not None:
            return self._add_table[x][y]
        return self._add_slow(x, y)

    def neg(self, x: int) -> int:
        out, shift = 0, 1
        while x:
            d = x % 3
            if d:
                out += (3 - d) * shift
            x //= 3
            shift *= 3
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.q})")
        return self._exp[-self._log[x] % (self.q - 1)]

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError(f"negative power of zero in GF({self.q})")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % (self.q - 1)]

    def trace(self, x: int) -> int:
        """Absolute trace GF(3^r) -> GF(3), returned as an int in {0, 1, 2}."""
        return self._trace[x]

    def is_square(self, x: int) -> bool:
        """Whether a unit x is a square, via the Euler criterion x^((q-1)/2) == 1."""
        if x == 0:
            raise ValueError("square class of 0 is undefined; pass a unit")
        return self.pow(x, (self.q - 1) // 2) == 1

    # -- views -------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def coeffs(self, x: int) -> tuple[int, ...]:
        return tuple(_digits(x, self.r))

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.r:
            raise ValueError(f"too many coefficients for GF({self.q})")
        enc = 0
        for c in reversed([c % 3 for c in coeffs]):
            enc = enc * 3 + c
        return enc

    # -- identity ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.r, self.modulus) == (other.r, other.modulus)

    def __hash__(self) -> int:
        return hash((self.r, self.modulus))

    def __repr__(self) -> str:
        return f"Field(r={self.r}, q={self.q}, modulus={list(self.modulus)})"
