"""Arithmetic in F_{p^e}.

Elements are handled as integer indices: the element with power-basis
coefficients ``c_0 + c_1 xi + ... + c_{e-1} xi^{e-1}`` has index
``sum(c_i * p**i)``.  :class:`FieldElem` is a thin operator-overloading view
over an index for interactive use; the bulk routines work on plain ints and on
the dense numpy tables exposed by :class:`GF`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import BadModulus, DivisionByZero, IndexOutOfRange, NotADivisor, NotPrime, TooLarge

MAX_Q = 2**16
TABLE_MAX_Q = 2048


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    for k in range(3, r + 1, 2):
        if n % k == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


# -- polynomials over F_p, coefficient lists with the constant term first -------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    m = _trim(list(m))
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _poly_powmod(a: Sequence[int], k: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        k >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Uses gcd(X^{p^i} - X, m) = 1 for every i <= deg(m)/2, iterating the
    Frobenius power X -> X^p modulo m.
    """
    m = _trim([c % p for c in modulus])
    deg = len(m) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    frob = list(x)
    for _ in range(deg // 2):
        frob = _poly_powmod(frob, p, m, p)
        if len(_poly_gcd(m, _poly_sub(frob, x, p), p)) > 1:
            return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``e``.

    Candidates are compared constant term first, so ``X`` is chosen for e = 1.
    """
    for lower in itertools.product(range(p), repeat=e):
        cand = tuple(lower) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise BadModulus(f"no irreducible polynomial of degree {e} over F_{p}")  # unreachable


class GF:
    """The finite field F_q, q = p^e, realised as F_p[X]/(modulus)."""

    def __init__(
        self,
        p: int,
        e: int = 1,
        modulus: Optional[Sequence[int]] = None,
        *,
        max_q: int = MAX_Q,
    ) -> None:
        p, e = int(p), int(e)
        if e < 1:
            raise BadModulus(f"extension degree must be >= 1, got {e}")
        if not is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        q = p**e
        if q > max_q:
            raise TooLarge(f"q = {q} exceeds the field size cap {max_q}")
        if modulus is None:
            mod = default_modulus(p, e)
        else:
            mod = tuple(int(c) for c in modulus)
            if len(mod) != e + 1:
                raise BadModulus(f"modulus must have {e + 1} coefficients, got {len(mod)}")
            if any(not 0 <= c < p for c in mod):
                raise BadModulus(f"modulus coefficients must lie in [0, {p})")
            if mod[-1] != 1:
                raise BadModulus("modulus must be monic")
            if not is_irreducible(mod, p):
                raise BadModulus(f"modulus {list(mod)} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = mod
        self._weights = [p**i for i in range(e)]

    def __repr__(self) -> str:
        return f"GF(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    @property
    def odd(self) -> bool:
        return self.p != 2

    def elements(self) -> range:
        return range(self.q)

    # -- codec ------------------------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Power-basis coefficients of the element with index ``a``."""
        self._check(a)
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def index(self, coeffs: Iterable[int]) -> int:
        cs = list(coeffs)
        if len(cs) > self.e:
            raise IndexOutOfRange(f"expected at most {self.e} coefficients, got {len(cs)}")
        return sum((int(c) % self.p) * w for c, w in zip(cs, self._weights))

    def _check(self, a: int) -> None:
        if not 0 <= a < self.q:
            raise IndexOutOfRange(f"element index {a} outside [0, {self.q})")

    def elem(self, a: int) -> "FieldElem":
        self._check(int(a))
        return FieldElem(self, int(a))

    # -- scalar arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.index((x + y) % self.p for x, y in zip(ca, cb))

    def neg(self, a: int) -> int:
        return self.index((-x) % self.p for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.index((x - y) % self.p for x, y in zip(ca, cb))

    def scale(self, c: int, a: int) -> int:
        """Multiply by an integer (an element of the prime field)."""
        return self.index((c * x) % self.p for x in self.coeffs(a))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        prod = _poly_mulmod(
            _trim(list(self.coeffs(a))), _trim(list(self.coeffs(b))), self.modulus, self.p
        )
        return self.index(prod)

    def pow(self, a: int, k: int) -> int:
        self._check(a)
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        k %= self.q - 1
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def arith(self, kind: str, a: int, b: int = 0) -> int:
        if kind == "neg":
            return self.neg(a)
        if kind == "inv":
            return self.inv(a)
        ops = {"add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div, "pow": self.pow}
        try:
            op = ops[kind]
        except KeyError:
            raise ValueError(f"unknown operation {kind!r}") from None
        return op(a, b)

    # -- structure --------------------------------------------------------------

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    @cached_property
    def primitive_element(self) -> int:
        """Generator of F_q^* with the smallest index."""
        if self.q == 2:
            return 1
        n = self.q - 1
        factors = prime_factors(n)
        for g in range(2, self.q):
            if all(self.pow(g, n // r) != 1 for r in factors):
                return g
        raise AssertionError("F_q^* is cyclic; a generator must exist")

    @cached_property
    def log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """``(exp, log)`` keyed by :attr:`primitive_element`; ``log[0]`` is -1."""
        xi = self.primitive_element
        exp = np.empty(self.q - 1, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for k in range(self.q - 1):
            exp[k] = x
            log[x] = k
            x = self.mul(x, xi)
        return exp, log

    def subfield_elements(self, e_i: int) -> frozenset[int]:
        """The copy of F_{p^{e_i}} inside F_q, as the fixed set of x -> x^{p^{e_i}}."""
        if e_i < 1 or self.e % e_i:
            raise NotADivisor(f"{e_i} does not divide the extension degree {self.e}")
        k = self.p**e_i
        return frozenset(x for x in range(self.q) if self.pow(x, k) == x)

    # -- dense tables for bulk work ------------------------------------------------

    def _require_tables(self) -> None:
        if self.q > TABLE_MAX_Q:
            raise TooLarge(f"dense tables need q <= {TABLE_MAX_Q}, got {self.q}")

    @cached_property
    def digits(self) -> np.ndarray:
        """``(q, e)`` array of power-basis coefficients for every index."""
        idx = np.arange(self.q, dtype=np.int64)
        return np.stack([(idx // w) % self.p for w in self._weights], axis=1)

    @cached_property
    def add_table(self) -> np.ndarray:
        self._require_tables()
        d = self.digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return s @ np.asarray(self._weights, dtype=np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        self._require_tables()
        d = self.digits
        s = (d[:, None, :] - d[None, :, :]) % self.p
        return s @ np.asarray(self._weights, dtype=np.int64)

    @cached_property
    def neg_array(self) -> np.ndarray:
        return ((-self.digits) % self.p) @ np.asarray(self._weights, dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        self._require_tables()
        exp, log = self.log_tables
        n = self.q - 1
        lg = log[1:]
        table = np.zeros((self.q, self.q), dtype=np.int64)
        table[1:, 1:] = exp[(lg[:, None] + lg[None, :]) % n]
        return table


@dataclass(frozen=True)
class FieldElem:
    """An element of ``field`` identified by its index."""

    field: GF
    index: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.index)

    def _other(self, other: Union["FieldElem", int]) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError("operands belong to different fields")
            return other.index
        # bare ints act as prime-field scalars
        return self.field.index([int(other) % self.field.p])

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.index, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.index, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.index))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.index))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.index, self._other(other)))

    def __pow__(self, k: int):
        return FieldElem(self.field, self.field.pow(self.index, int(k)))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.field, self.field.inv(self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else (f"{c}*xi" if i == 1 else f"{c}*xi^{i}"))
        return " + ".join(terms) or "0"


def field_new(p: int, e: int = 1, modulus: Optional[Sequence[int]] = None) -> GF:
    return GF(p, e, modulus)


def arith(ctx: GF, kind: str, a, b=0):
    """Apply ``kind`` to ints or FieldElems; returns the same flavour as ``a``."""
    ai = int(a)
    bi = int(b)
    r = ctx.arith(kind, ai, bi)
    return FieldElem(ctx, r) if isinstance(a, FieldElem) else r
