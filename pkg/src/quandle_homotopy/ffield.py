"""Exact arithmetic in F_q = F_p[t]/(f).

Elements are encoded as integer codes ``sum(c_i * p**i)`` where ``c_i`` is the
coefficient of ``t**i`` (little-endian).  The same encoding is used for the
element enumeration of Alexander quandles built on a field, so a quandle index
*is* a field code.

The default modulus of degree ``h`` is the monic irreducible polynomial whose
lower coefficients, read as a base-``p`` number, are smallest; i.e. polynomials
are ordered by degree and then by the code of ``f - t**h``.  This gives
``t^2+1`` over F_3 and ``t^3+t+1`` over F_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from ._polytext import format_poly, parse_poly


class CompositeP(ValueError):
    pass


class ReducibleModulus(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroElement(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation; the integers met here are small."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# --- polynomials over F_p as little-endian lists -------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, f, p):
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Ben-Or test: ``f`` (little-endian, degree >= 1) is irreducible over F_p."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = _ppowmod(xp, p, f, p)
        if len(_pgcd(f, _psub(xp, x, p), p)) > 1:
            return False
    return True


def default_modulus(p: int, h: int) -> tuple[int, ...]:
    if h == 1:
        return (0, 1)
    for code in range(p**h):
        low = [(code // p**i) % p for i in range(h)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


@dataclass(frozen=True)
class FqSpec:
    """The field F_p[t]/(modulus); ``modulus`` is little-endian and monic."""

    p: int
    h: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.h

    def __str__(self):
        return f"gf:{self.p}^{self.h}:{format_poly(self.modulus, 't')}"

    # encoding
    def decode(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // p**i) % p for i in range(self.h))

    def encode(self, coeffs) -> int:
        coeffs = _pmod(list(coeffs), list(self.modulus), self.p)
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def from_int(self, n: int) -> int:
        return n % self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    @property
    def generator_t(self) -> int:
        """Code of the class of ``t``."""
        return self.encode([0, 1])

    def elements(self):
        return range(self.q)

    # arithmetic on codes
    def add(self, a: int, b: int) -> int:
        p = self.p
        out, scale = 0, 1
        for _ in range(self.h):
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out, scale = 0, 1
        for _ in range(self.h):
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _polymul(self, a: int, b: int) -> int:
        prod_ = _pmul(list(self.decode(a)), list(self.decode(b)), self.p)
        return self.encode(prod_)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.q <= 1 << 16:
            lg = self._log
            return int(self._exp[(lg[a] + lg[b]) % (self.q - 1)])
        return self._polymul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in " + str(self))
        if self.q <= 1 << 16:
            return int(self._exp[(-self._log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.q <= 1 << 16:
            return int(self._exp[(self._log[a] * e) % (self.q - 1)])
        result = 1
        while e:
            if e & 1:
                result = self._polymul(result, a)
            a = self._polymul(a, a)
            e >>= 1
        return result

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroElement("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for prime in factorize(n):
            while order % prime == 0 and self.pow(a, order // prime) == 1:
                order //= prime
        return order

    # text form
    def parse(self, text: str) -> int:
        return self.encode(parse_poly(str(text), "t"))

    def format(self, code: int) -> str:
        return format_poly(self.decode(code), "t")

    def element(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, str):
            return FieldElement(self, self.parse(x))
        return FieldElement(self, self.from_int(int(x)))

    # tables ---------------------------------------------------------------
    @cached_property
    def primitive_element(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        primes = list(factorize(n))
        for g in range(2, self.q):
            if all(self._slowpow(g, n // r) != 1 for r in primes):
                return g
        raise AssertionError("multiplicative group not cyclic")  # cannot happen

    def _slowpow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._polymul(result, a)
            a = self._polymul(a, a)
            e >>= 1
        return result

    @cached_property
    def _exp(self) -> np.ndarray:
        n = self.q - 1
        exp = np.zeros(n, dtype=np.int64)
        g, x = self.primitive_element, 1
        for k in range(n):
            exp[k] = x
            x = self._polymul(x, g)
        return exp

    @cached_property
    def _log(self) -> np.ndarray:
        log = np.zeros(self.q, dtype=np.int64)
        log[self._exp] = np.arange(self.q - 1)
        return log

    @cached_property
    def digits(self) -> np.ndarray:
        """``digits[code, i]`` is the coefficient of ``t**i``."""
        codes = np.arange(self.q)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.h)], axis=1)

    @cached_property
    def add_table(self) -> np.ndarray:
        d = self.digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s * (self.p ** np.arange(self.h))).sum(axis=2)

    @cached_property
    def neg_table(self) -> np.ndarray:
        d = (-self.digits) % self.p
        return (d * (self.p ** np.arange(self.h))).sum(axis=1)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.int64)
        if q > 1:
            lg = self._log[1:]
            t[1:, 1:] = self._exp[(lg[:, None] + lg[None, :]) % (q - 1)]
        return t

    def scalar_table(self, c: int) -> np.ndarray:
        """Lookup array for ``x -> c*x``."""
        return self.mul_table[c]


def field(p: int, h: int = 1, modulus=None) -> FqSpec:
    """Build F_{p^h}; ``modulus`` may be a little-endian coefficient list or text in ``t``."""
    if not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        mod = default_modulus(p, h)
    else:
        if isinstance(modulus, str):
            modulus = parse_poly(modulus, "t")
        mod = tuple(_trim([c % p for c in modulus]))
        if len(mod) - 1 != h or mod[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {h}")
        if not is_irreducible(list(mod), p):
            raise ReducibleModulus(f"{format_poly(mod, 't')} is reducible over F_{p}")
    return FqSpec(p, h, mod)


def parse_field(text: str) -> FqSpec:
    """Parse ``gf:<p>^<h>[:<modulus>]`` or ``gf:<p>``."""
    body = text[3:] if text.startswith("gf:") else text
    head, _, mod = body.partition(":")
    if "^" in head:
        p, h = (int(s) for s in head.split("^"))
    else:
        p, h = int(head), 1
    return field(p, h, mod or None)


def p_power_exponents(spec: FqSpec) -> list[int]:
    return [spec.p**i for i in range(spec.h)]


@dataclass(frozen=True)
class FieldElement:
    field: FqSpec
    code: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.code
        return self.field.from_int(int(other))

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.code, self._coerce(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def order(self) -> int:
        return self.field.element_order(self.code)

    def __bool__(self):
        return self.code != 0

    def __str__(self):
        return self.field.format(self.code)


def all_monic(p: int, h: int):
    """All monic degree-``h`` polynomials over F_p, in the default-modulus order."""
    for low in product(range(p), repeat=h):
        yield list(reversed(low)) + [1]
