"""Ordered variable tables and packed monomial keys.

A monomial ``x_0^e_0 ... x_{n-1}^e_{n-1}`` is stored as one Python int with
``n + 1`` slots of ``WIDTH`` bits: the total degree in the top slot, then
``e_0`` down to ``e_{n-1}``.  Integer comparison of keys is therefore the
graded-lexicographic order with ``x_0 > x_1 > ...``, and monomial
multiplication is key addition.
"""

from __future__ import annotations

from functools import cached_property

WIDTH = 32
MASK = (1 << WIDTH) - 1
# exponents stay below 2**(WIDTH-1) so the top bit of a slot can act as a borrow guard
MAX_EXP = 1 << (WIDTH - 1)


class VarTable:
    """Immutable ordered list of distinct variable names.

    ``alpha`` names the distinguished square root of the parameter ``a``;
    when it is set, the table must also contain ``a``.
    """

    def __init__(self, names, alpha: str | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if alpha is not None:
            if alpha not in names:
                raise ValueError(f"alpha variable {alpha!r} not in table")
            if "a" not in names:
                raise ValueError("a table with alpha must contain the parameter 'a'")
        self.names = names
        self.alpha = alpha

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.index

    def __eq__(self, other) -> bool:
        return self is other or (
            isinstance(other, VarTable) and self.names == other.names and self.alpha == other.alpha
        )

    def __hash__(self) -> int:
        return hash((self.names, self.alpha))

    def __repr__(self) -> str:
        extra = f", alpha={self.alpha!r}" if self.alpha else ""
        return f"VarTable({list(self.names)!r}{extra})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.names)}

    @property
    def alpha_index(self) -> int | None:
        return None if self.alpha is None else self.index[self.alpha]

    # -- packing -----------------------------------------------------------

    @cached_property
    def shifts(self) -> tuple[int, ...]:
        n = len(self.names)
        return tuple(WIDTH * (n - 1 - i) for i in range(n))

    @cached_property
    def deg_unit(self) -> int:
        return 1 << (WIDTH * len(self.names))

    @cached_property
    def units(self) -> tuple[int, ...]:
        """Key increment for multiplying by one variable (slot plus degree)."""
        d = self.deg_unit
        return tuple((1 << s) + d for s in self.shifts)

    @cached_property
    def guard(self) -> int:
        g = 0
        for s in self.shifts + (WIDTH * len(self.names),):
            g |= 1 << (s + WIDTH - 1)
        return g

    def pack(self, exps) -> int:
        exps = tuple(exps)
        if len(exps) != len(self.names):
            raise ValueError(f"expected {len(self.names)} exponents, got {len(exps)}")
        key = 0
        for e, u in zip(exps, self.units):
            if e < 0 or e >= MAX_EXP:
                raise ValueError(f"exponent {e} out of range")
            key += e * u
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & MASK for s in self.shifts)

    def exponent(self, key: int, i: int) -> int:
        return (key >> self.shifts[i]) & MASK

    @staticmethod
    def degree_of(key: int, nvars: int) -> int:
        return key >> (WIDTH * nvars)

    def divides(self, small: int, big: int) -> bool:
        g = self.guard
        return ((big | g) - small) & g == g
