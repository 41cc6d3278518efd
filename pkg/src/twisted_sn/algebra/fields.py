"""Coefficient field descriptors and small number-theory helpers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# largest prime below 2**62
DEFAULT_PRIME = 4611686018427387847


@dataclass(frozen=True)
class CoeffField:
    """Base field of a polynomial ring: Q or F_p, optionally with the parameter ``a``.

    ``a`` itself is carried as an ordinary ring variable; this descriptor only
    records that the name is reserved for it.
    """

    characteristic: int = 0
    has_parameter_a: bool = False

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (not is_prime(p) or p >= 1 << 64):
            raise ValueError(f"characteristic must be 0 or a prime below 2**64, got {p}")

    @property
    def modulus(self) -> int | None:
        return self.characteristic or None

    @classmethod
    def rationals(cls, with_a: bool = True) -> "CoeffField":
        return cls(0, with_a)

    @classmethod
    def prime(cls, p: int, with_a: bool = True) -> "CoeffField":
        return cls(p, with_a)

    def coerce(self, c):
        """Map an int/Fraction into this field's canonical coefficient form."""
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise ZeroDivisionError(f"{c} has no image in F_{p}")
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        if isinstance(c, (int, Fraction)):
            return c
        raise TypeError(f"cannot coerce {c!r} into {self}")

    def inv(self, c):
        if self.characteristic:
            return pow(c, -1, self.characteristic)
        return Fraction(1) / c if isinstance(c, int) else 1 / c

    def __str__(self) -> str:
        base = "Q" if self.characteristic == 0 else f"F_{self.characteristic}"
        return base + "(a)" if self.has_parameter_a else base
