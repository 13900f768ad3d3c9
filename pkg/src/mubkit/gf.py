"""Exact arithmetic in small Galois fields GF(p^k).

Elements are stored as integers ``0 <= v < q``; the base-p digits of ``v`` are
the polynomial coefficients, constant term in the least significant digit.
Coefficient vectors in the public API are written highest degree first
(``[1, 0, 1]`` is ``x^2 + 1``), so lexicographic order on coefficient vectors
coincides with integer order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_ORDER = 4096

# highest-degree-first coefficients
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 0, 1, 1),
    9: (1, 0, 1),
    16: (1, 0, 0, 1, 1),
}


class GFError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


# polynomials below are ascending coefficient lists over F_p


def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        shift = len(a) - len(m)
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        a = _trim(a)
    return a


def is_irreducible(modulus_desc, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. k-1."""
    m = _trim(list(reversed([c % p for c in modulus_desc])))
    k = len(m) - 1
    if k < 1 or m[-1] != 1:
        return False
    for d in range(1, k):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _poly_mod(m, divisor, p):
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k in lexicographic order."""
    for tail in itertools.product(range(p), repeat=k):
        cand = (1,) + tail
        if is_irreducible(cand, p):
            return cand
    raise GFError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


@dataclass(frozen=True, eq=False)
class GaloisField:
    """GF(p^k) with a verified irreducible modulus (highest degree first)."""

    p: int
    k: int
    modulus: tuple[int, ...]
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.k

    q = order

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # -- element helpers ------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise GFError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement.from_coeffs(self, value)
        v = int(value)
        if not 0 <= v < self.order:
            raise GFError(f"element index {v} outside 0..{self.order - 1}")
        return FieldElement(self, v)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def enumerate(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.order)]

    def digits(self, v: int) -> list[int]:
        """Ascending coefficients of element index ``v``."""
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def index(self, ascending: list[int]) -> int:
        v = 0
        for c in reversed(ascending):
            v = v * self.p + (c % self.p)
        return v

    # -- integer-level arithmetic ----------------------------------------
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self.inv_table[a])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(k-1)), as a residue mod p."""
        total, term = 0, a
        for _ in range(self.k):
            total = self.add(total, term)
            term = self.power(term, self.p)
        if total >= self.p:
            raise GFError(f"trace left the prime subfield: {total}")  # modulus bug
        return total


@lru_cache(maxsize=None)
def _build(p: int, k: int, modulus: tuple[int, ...]) -> GaloisField:
    q = p**k
    m_asc = list(reversed(modulus))
    digits = np.array(
        [[(v // p**i) % p for i in range(k)] for v in range(q)], dtype=np.int64
    )
    weights = p ** np.arange(k, dtype=np.int64)
    add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
    neg_table = ((-digits) % p) @ weights
    mul_table = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            prod = [0] * (2 * k - 1)
            for i in range(k):
                if digits[a, i]:
                    for j in range(k):
                        prod[i + j] += int(digits[a, i]) * int(digits[b, j])
            red = _poly_mod(prod, m_asc, p) if k > 1 else [prod[0] % p]
            v = sum(c * p**i for i, c in enumerate(red))
            mul_table[a, b] = mul_table[b, a] = v
    inv_table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.nonzero(mul_table[a] == 1)[0]
        if len(hits) != 1:
            raise GFError(f"modulus {list(modulus)} does not give a field")
        inv_table[a] = hits[0]
    for t in (add_table, mul_table, neg_table, inv_table):
        t.setflags(write=False)
    return GaloisField(p, k, modulus, add_table, mul_table, neg_table, inv_table)


def galois_field(q: int, modulus=None, moduli: dict | None = None) -> GaloisField:
    """Build GF(q).

    ``modulus`` (highest degree first) overrides the built-in default; a
    ``moduli`` mapping ``{q: coeffs}`` (as read from a configuration file) is
    consulted next. The modulus is checked for irreducibility.
    """
    pk = prime_power(q)
    if pk is None:
        raise GFError(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise GFError(f"field order {q} exceeds desk-scale limit {MAX_ORDER}")
    p, k = pk
    if modulus is None and moduli:
        modulus = moduli.get(q, moduli.get(str(q)))
    if modulus is None:
        if k == 1:
            modulus = (1, 0)
        else:
            modulus = DEFAULT_MODULI.get(q) or find_irreducible(p, k)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != k + 1 or modulus[0] != 1:
        raise GFError(f"modulus for GF({q}) must be monic of degree {k}: {list(modulus)}")
    if not is_irreducible(modulus, p):
        raise GFError(f"modulus {list(modulus)} is reducible over F_{p}")
    return _build(p, k, modulus)


@dataclass(frozen=True)
class FieldElement:
    field: GaloisField
    value: int

    @classmethod
    def from_coeffs(cls, gf: GaloisField, coeffs) -> "FieldElement":
        """``coeffs`` highest degree first, length at most k."""
        coeffs = list(coeffs)
        if len(coeffs) > gf.k or any(not 0 <= c < gf.p for c in coeffs):
            raise GFError(f"bad coefficient vector {coeffs} for {gf!r}")
        return cls(gf, gf.index(list(reversed(coeffs))))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(reversed(self.field.digits(self.value)))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise GFError("mixed fields in arithmetic")
            return other.value
        return self.field(other).value

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg_table[self.value]))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self.field, self.field.inv(self._other(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.power(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        terms = []
        for deg, c in zip(range(self.field.k - 1, -1, -1), self.coeffs):
            if c:
                mono = "" if deg == 0 else ("x" if deg == 1 else f"x^{deg}")
                coef = str(c) if (c != 1 or deg == 0) else ""
                terms.append(coef + mono)
        return " + ".join(terms) or "0"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def trace_to_prime(a: FieldElement) -> int:
    return a.trace()


def enumerate_field(gf: GaloisField) -> list[FieldElement]:
    return gf.enumerate()
