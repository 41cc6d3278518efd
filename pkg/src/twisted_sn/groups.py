"""Permutations of {1..n}, the twisted S_n action, and coset bookkeeping.

Composition convention: ``(s * p)(i) = s(p(i))``, i.e. ``p`` acts first.
With homs acting by substitution this gives a left action,
``twisted_hom(s) o twisted_hom(p) == twisted_hom(s * p)``; the action-law
check verifies this rather than assuming it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .algebra.fields import CoeffField
from .algebra.hom import FieldHom, hom_equal, substitute
from .algebra.poly import PolyRing
from .algebra.ratfunc import RatFunc, ratfunc


@dataclass(frozen=True)
class Perm:
    """A permutation in one-line notation: ``images[i-1] = p(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                seen.add(start)
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "1"
        return "".join("(" + "".join(str(i) for i in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({str(self)!r}, n={self.n})"


_CYCLE_TEXT = re.compile(r"^(1|(\([1-9](,?[1-9])*\))+)$")


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation such as ``"(24)(35)"`` or ``"1"``; cycles compose right to left."""
    t = text.replace(" ", "")
    if not _CYCLE_TEXT.match(t):
        raise ValueError(f"malformed cycle notation {text!r}")
    perm = Perm.identity(n)
    if t == "1":
        return perm
    for body in reversed(re.findall(r"\(([^)]*)\)", t)):
        pts = [int(c) for c in body.replace(",", "")]
        if len(set(pts)) != len(pts) or max(pts) > n:
            raise ValueError(f"bad cycle ({body}) for degree {n}")
        imgs = list(range(1, n + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            imgs[a - 1] = b
        perm = Perm(tuple(imgs)) * perm
    return perm


def perm_sign(p: Perm) -> int:
    inv = sum(1 for i, j in itertools.combinations(range(p.n), 2) if p.images[i] > p.images[j])
    return -1 if inv % 2 else 1


def symmetric_group(n: int) -> list[Perm]:
    return [Perm(t) for t in itertools.permutations(range(1, n + 1))]


def alternating_group(n: int) -> list[Perm]:
    return [p for p in symmetric_group(n) if perm_sign(p) == 1]


def generate(gens, n: int) -> frozenset[Perm]:
    """Closure of ``gens`` under composition."""
    ident = Perm.identity(n)
    elems = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


@dataclass
class CosetResult:
    ok: bool
    subgroup_order: int
    ambient_order: int
    witness: str | None = None


def verify_coset_partition(n: int, subgroup_gens, ambient, reps, product: str = "right") -> CosetResult:
    """Do the cosets H*mu (mu in reps) partition the ambient set exactly?

    ``ambient`` is ``"S_n"``, ``"A_n"`` or an iterable of generators of a
    named subgroup.  ``product="right"`` forms ``h o mu`` (mu acts first);
    ``"left"`` forms ``mu o h``, which is ``H mu`` under the left-to-right
    product convention.
    """
    H = generate(subgroup_gens, n)
    if ambient == "S_n":
        amb = frozenset(symmetric_group(n))
    elif ambient == "A_n":
        amb = frozenset(alternating_group(n))
    else:
        amb = generate(ambient, n)
    covered: dict[Perm, Perm] = {}
    for mu in reps:
        for h in H:
            x = h * mu if product == "right" else mu * h
            if x not in amb:
                return CosetResult(False, len(H), len(amb), f"{x} (from rep {mu}) lies outside the ambient set")
            if x in covered:
                return CosetResult(
                    False, len(H), len(amb), f"{x} lies in the cosets of both {covered[x]} and {mu}"
                )
            covered[x] = mu
    missing = [x for x in amb if x not in covered]
    if missing:
        return CosetResult(False, len(H), len(amb), f"{min(missing, key=lambda q: q.images)} is not covered")
    return CosetResult(True, len(H), len(amb))


# -- the twisted action as substitution homs ------------------------------------------


def x_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def twisted_ring(n: int, char: int = 0) -> PolyRing:
    return PolyRing(CoeffField(char, True), x_names(n) + ["a"])


def twisted_hom(p: Perm, ring: PolyRing | CoeffField | None = None, n: int | None = None,
                twisted: bool = True) -> FieldHom:
    """x_i -> x_{p(i)} for even p, x_i -> a/x_{p(i)} for odd p (when ``twisted``)."""
    n = n or p.n
    if ring is None or isinstance(ring, CoeffField):
        ring = twisted_ring(n, 0 if ring is None else ring.characteristic)
    odd = twisted and perm_sign(p) == -1
    imgs = {}
    for i in range(1, n + 1):
        xi = ring.gen(f"x{p(i)}")
        imgs[f"x{i}"] = RatFunc(ring.gen("a"), xi) if odd else ratfunc(xi)
    return FieldHom(ring, ring, imgs, label=(p, odd), automorphism=True)


def is_fixed(e, gens) -> bool:
    e = ratfunc(e)
    return all(substitute(e, h) == e for h in gens)


def homs_agree(h1: FieldHom, h2: FieldHom) -> bool:
    return hom_equal(h1, h2)


# the coset representatives as printed, with their subgroups
R1 = ["1", "(34)", "(354)", "(234)", "(2354)", "(24)(35)", "(1234)", "(12354)", "(124)(35)", "(13524)"]
R2 = ["1", "(34)", "(354)", "(234)", "(2354)", "(24)(35)"]
R3 = ["1", "(234)", "(243)", "(152)", "(15234)", "(15243)", "(125)", "(12345)", "(12435)",
      "(15432)", "(154)", "(15423)", "(15342)", "(15324)", "(153)"]
H1_GENS = ["(12)", "(13)", "(45)"]
H_GENS = ["(23)", "(24)", "(25)"]
H2_GENS = ["(23)", "(45)"]
H3_GENS = ["(12)(34)", "(13)(24)"]


def perms(texts, n: int = 5) -> list[Perm]:
    return [parse_cycles(t, n) for t in texts]
