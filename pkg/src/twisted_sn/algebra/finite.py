"""Finite fields used as specialization targets.

``PrimeField(p)`` works on plain ints.  ``GaloisField(p, k)`` is F_p[T]/(m)
for a primitive polynomial ``m`` found by search; its irreducibility is
checked by trial division by every monic polynomial of degree at most k/2.
Elements are encoded as ints whose base-p digits are the coefficients of T^0,
T^1, ...; multiplication goes through log/antilog tables and addition through
Zech logarithms (or XOR when p = 2).  Above ``TABLE_LIMIT`` elements the
tables would be too large and ``ExtensionField`` multiplies polynomials
directly instead.

Both expose the same small interface: ``order``, ``characteristic``,
``zero``, ``one``, ``from_int``, ``from_rational``, ``add``, ``sub``, ``neg``,
``mul``, ``inv``, ``pow``, ``random``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fields import is_prime


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self) -> str:
        return f"F_{self.p}"

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_rational(self, c) -> int:
        if isinstance(c, Fraction):
            d = c.denominator % self.p
            if not d:
                raise ZeroDivisionError(f"{c} has a denominator divisible by {self.p}")
            return c.numerator * pow(d, -1, self.p) % self.p
        return int(c) % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def pow(self, x, e: int):
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(x, e, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def describe(self) -> str:
        return f"F_{self.p}"


# -- polynomials over F_p as digit lists (low degree first) ---------------------------


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _polymod(f: list[int], g: list[int], p: int) -> list[int]:
    f = list(f)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(_trim(f)) - 1 >= dg:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
    return f


def _monic_polys(p: int, deg: int):
    for n in range(p**deg):
        digits = []
        for _ in range(deg):
            digits.append(n % p)
            n //= p
        yield digits + [1]


def is_irreducible_bruteforce(m: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(m)//2."""
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            if not _polymod(m, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def _build_tables(p: int, k: int):
    """Find a primitive degree-k polynomial and the exp/log tables of T."""
    q = p**k
    for m in _monic_polys(p, k):
        if m[0] == 0:
            continue
        if not is_irreducible_bruteforce(m, p):
            continue
        exp = [0] * (q - 1)
        cur = [1] + [0] * (k - 1)
        ok = True
        for i in range(q - 1):
            v = 0
            for c in reversed(cur):
                v = v * p + c
            exp[i] = v
            if i and v == 1:
                ok = False
                break
            # multiply by T and reduce with T^k = -sum m_i T^i
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(k):
                    cur[j] = (cur[j] - top * m[j]) % p
        if not ok:
            continue
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        if len(set(exp)) != q - 1:
            continue
        return tuple(m), exp, log
    raise ValueError(f"no primitive polynomial of degree {k} over F_{p}")


class GaloisField:
    def __init__(self, p: int, k: int):
        if not is_prime(p) or k < 1:
            raise ValueError("need a prime p and k >= 1")
        self.p = p
        self.k = k
        self.order = p**k
        self.characteristic = p
        self.zero = 0
        self.one = 1
        self.modulus, self._exp, self._log = _build_tables(p, k)
        self._n = self.order - 1
        if p == 2:
            self._zech = None
        else:
            # zech[i] = log(1 + T^i), None when 1 + T^i = 0
            zech = [None] * self._n
            for i, v in enumerate(self._exp):
                w = self._add_digits(v, 1)
                zech[i] = None if w == 0 else self._log[w]
            self._zech = zech

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def describe(self) -> str:
        parts = []
        for i, c in reversed(list(enumerate(self.modulus))):
            if not c:
                continue
            mono = f"T^{i}" if i > 1 else ("T" if i == 1 else "")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        m = " + ".join(parts)
        return f"GF({self.p}^{self.k}) = F_{self.p}[T]/({m})"

    def _add_digits(self, x: int, y: int) -> int:
        p = self.p
        out, place = 0, 1
        while x or y:
            out += ((x % p + y % p) % p) * place
            x //= p
            y //= p
            place *= p
        return out

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_rational(self, c) -> int:
        if isinstance(c, Fraction):
            d = c.denominator % self.p
            if not d:
                raise ZeroDivisionError(f"{c} has a denominator divisible by {self.p}")
            return c.numerator * pow(d, -1, self.p) % self.p
        return int(c) % self.p

    def add(self, x, y):
        if self.p == 2:
            return x ^ y
        if not x:
            return y
        if not y:
            return x
        lx, ly = self._log[x], self._log[y]
        z = self._zech[(ly - lx) % self._n]
        if z is None:
            return 0
        return self._exp[(lx + z) % self._n]

    def neg(self, x):
        if self.p == 2 or not x:
            return x
        # -1 = T^((q-1)/2) in odd characteristic
        return self._exp[(self._log[x] + self._n // 2) % self._n]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if not x or not y:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % self._n]

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[x]) % self._n]

    def pow(self, x, e: int):
        if not x:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % self._n]

    def random(self, rng):
        return rng.randrange(self.order)


class ExtensionField:
    """F_p[T]/(m) with direct polynomial arithmetic, for orders too large for tables.

    Same element encoding and interface as :class:`GaloisField`; ``m`` is the
    first monic irreducible of degree k with nonzero constant term.
    """

    def __init__(self, p: int, k: int):
        if not is_prime(p) or k < 1:
            raise ValueError("need a prime p and k >= 1")
        self.p = p
        self.k = k
        self.order = p**k
        self.characteristic = p
        self.zero = 0
        self.one = 1
        self.modulus = next(tuple(m) for m in _monic_polys(p, k)
                            if m[0] and is_irreducible_bruteforce(m, p))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def describe(self) -> str:
        return GaloisField.describe(self)

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _pack(self, digits) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_rational(self, c) -> int:
        return PrimeField.from_rational(self, c)

    def add(self, x, y):
        return self._pack([(a + b) % self.p for a, b in zip(self._digits(x), self._digits(y))])

    def neg(self, x):
        return self._pack([-a % self.p for a in self._digits(x)])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if not x or not y:
            return 0
        p, a, b = self.p, self._digits(x), self._digits(y)
        prod = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        prod = _polymod([c % p for c in prod], list(self.modulus), p)
        return self._pack((prod + [0] * self.k)[:self.k])

    def pow(self, x, e: int):
        if not x:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        e %= self.order - 1
        out, base = 1, x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.order - 2)

    def random(self, rng):
        return rng.randrange(self.order)


TABLE_LIMIT = 1 << 20


def specialization_field(char: int, min_order: int = 1 << 16):
    """Field used to sample points for a ring of the given characteristic."""
    from .fields import DEFAULT_PRIME

    if char == 0:
        return PrimeField(DEFAULT_PRIME)
    if char >= min_order:
        return PrimeField(char)
    k = 1
    while char**k < min_order:
        k += 1
    if char**k > TABLE_LIMIT:
        return ExtensionField(char, k)
    return GaloisField(char, k)
