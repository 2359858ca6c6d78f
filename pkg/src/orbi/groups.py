"""Finite groups, conjugacy structure, characters, 2-cocycles, discrete torsion.

Elements of every group are indices 0..order-1. Abelian groups are built from
invariant factors (n1,...,nr) with elements as exponent tuples packed by mixed
radix; arbitrary groups come from an explicit multiplication table that is
validated exhaustively (identity, two-sided inverses, associativity).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm, prod
from typing import Iterable, Optional, Sequence

from .errors import (
    BadExponentRange,
    ElementNotInGroup,
    EmptyGroup,
    NonAbelianGroup,
    NonGroupTable,
    NonHomomorphism,
)


class FiniteGroup:
    """Finite group with elements indexed 0..order-1."""

    def __init__(self, mul_table, identity, factors=None):
        self.table = tuple(tuple(row) for row in mul_table)
        self.order = len(self.table)
        self.identity = identity
        self.factors: Optional[tuple[int, ...]] = factors
        self._validate()
        self.inverse_table = self._build_inverses()
        self.abelian = all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order) for b in range(self.order)
        )
        self._orders = [self._element_order(i) for i in range(self.order)]
        self.exponent = reduce(lcm, self._orders, 1)
        self._classes: Optional[tuple[tuple[int, tuple[int, ...]], ...]] = None

    # construction

    @classmethod
    def from_factors(cls, factors: Sequence[int]) -> "FiniteGroup":
        factors = tuple(int(n) for n in factors)
        if any(n < 1 for n in factors):
            raise EmptyGroup(f"invariant factors must be >= 1, got {factors}")
        order = prod(factors) if factors else 1
        radix = _mixed_radix(factors)

        def pack(t):
            return sum(c * r for c, r in zip(t, radix))

        tuples = [t for t in itertools.product(*(range(n) for n in factors))]
        # mixed-radix pack is a bijection onto 0..order-1 in lexicographic order
        table = [[0] * order for _ in range(order)]
        for a in tuples:
            ia = pack(a)
            for b in tuples:
                table[ia][pack(b)] = pack(
                    tuple((x + y) % n for x, y, n in zip(a, b, factors)))
        g = cls(table, identity=0, factors=factors)
        assert g.abelian
        return g

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], identity: int) -> "FiniteGroup":
        if not table:
            raise EmptyGroup("empty multiplication table")
        return cls(table, identity=int(identity))

    def _validate(self):
        n = self.order
        if n == 0:
            raise EmptyGroup("group has no elements")
        for i, row in enumerate(self.table):
            if len(row) != n:
                raise NonGroupTable(f"row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not (0 <= x < n):
                    raise NonGroupTable(f"entry {x} out of range in row {i}")
        e = self.identity
        if not (0 <= e < n):
            raise NonGroupTable(f"identity index {e} out of range")
        for a in range(n):
            if self.table[e][a] != a or self.table[a][e] != a:
                raise NonGroupTable(f"identity is not neutral on element {a}")
        for a in range(n):
            if e not in self.table[a]:
                raise NonGroupTable(f"element {a} has no right inverse")
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = ta[b]
                tb = t[b]
                for c in range(n):
                    if t[tab][c] != ta[tb[c]]:
                        raise NonGroupTable(
                            f"associativity fails on triple ({a},{b},{c})")

    def _build_inverses(self):
        inv = [0] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == self.identity:
                    if self.table[b][a] != self.identity:
                        raise NonGroupTable(f"inverse of {a} is one-sided")
                    inv[a] = b
                    break
        return tuple(inv)

    def _element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    # arithmetic

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse_table[h]]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        return self._orders[a]

    def check_element(self, a: int):
        if not isinstance(a, int) or not (0 <= a < self.order):
            raise ElementNotInGroup(f"index {a} not in group of order {self.order}")

    def element(self, a: int) -> "GroupElement":
        self.check_element(a)
        return GroupElement(self, a)

    # abelian tuple coordinates

    def tuple_of(self, a: int) -> tuple[int, ...]:
        if self.factors is None:
            raise NonAbelianGroup("group has no abelian coordinates")
        radix = _mixed_radix(self.factors)
        out = []
        for r, n in zip(radix, self.factors):
            out.append((a // r) % n)
        return tuple(out)

    def index_of(self, t: Sequence[int]) -> int:
        if self.factors is None:
            raise NonAbelianGroup("group has no abelian coordinates")
        if len(t) != len(self.factors):
            raise ElementNotInGroup(f"tuple {t} has wrong rank")
        radix = _mixed_radix(self.factors)
        return sum((int(c) % n) * r for c, r, n in zip(t, radix, self.factors))

    # structure

    def conjugacy_classes(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """(representative, sorted members) per class; representative is the
        minimal index, classes sorted by representative."""
        if self._classes is None:
            seen = set()
            classes = []
            for a in range(self.order):
                if a in seen:
                    continue
                orbit = {self.conjugate(h, a) for h in range(self.order)}
                seen |= orbit
                classes.append((min(orbit), tuple(sorted(orbit))))
            self._classes = tuple(sorted(classes))
        return self._classes

    def class_representative(self, a: int) -> int:
        self.check_element(a)
        return min(self.conjugate(h, a) for h in range(self.order))

    def centralizer(self, a: int) -> tuple[int, ...]:
        self.check_element(a)
        t = self.table
        return tuple(h for h in range(self.order) if t[h][a] == t[a][h])

    def subgroup_closure(self, gens: Iterable[int]) -> tuple[int, ...]:
        members = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        for g in gens:
            self.check_element(g)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return tuple(sorted(members))

    def presentation_equal(self, other: "FiniteGroup") -> bool:
        if self.factors is not None or other.factors is not None:
            return self.factors == other.factors
        return self.table == other.table and self.identity == other.identity

    def describe(self) -> str:
        if self.factors is not None:
            if not self.factors:
                return "C1"
            return "x".join(f"C{n}" for n in self.factors)
        return f"table group of order {self.order}"

    def __repr__(self):
        return f"FiniteGroup({self.describe()})"


def _mixed_radix(factors: tuple[int, ...]) -> tuple[int, ...]:
    radix = []
    r = 1
    for n in reversed(factors):
        radix.append(r)
        r *= n
    return tuple(reversed(radix))


def build_group(spec) -> FiniteGroup:
    """spec is either a sequence of invariant factors or a dict with keys
    'table' and 'identity'."""
    if isinstance(spec, dict):
        return FiniteGroup.from_table(spec["table"], spec["identity"])
    return FiniteGroup.from_factors(spec)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteGroup
    index: int

    @property
    def order(self) -> int:
        return self.group.element_order(self.index)

    @property
    def coords(self) -> tuple[int, ...]:
        return self.group.tuple_of(self.index)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        assert self.group is other.group
        return GroupElement(self.group, self.group.mul(self.index, other.index))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv(self.index))


def _as_index(g) -> int:
    return g.index if isinstance(g, GroupElement) else g


def conjugacy_classes(G: FiniteGroup):
    return G.conjugacy_classes()


def centralizer(G: FiniteGroup, g) -> tuple[int, ...]:
    return G.centralizer(_as_index(g))


# characters


@dataclass(frozen=True, order=True)
class Character:
    """Character of an abelian group, as an exponent tuple against the
    invariant factors. Values are exponents of zeta_M with M = lcm(factors)."""

    exponents: tuple[int, ...]
    factors: tuple[int, ...]

    def __post_init__(self):
        assert len(self.exponents) == len(self.factors)
        assert all(0 <= a < n for a, n in zip(self.exponents, self.factors))

    @property
    def modulus(self) -> int:
        return reduce(lcm, self.factors, 1)

    def eval_tuple(self, t: Sequence[int]) -> int:
        m = self.modulus
        return sum(a * c * (m // n)
                   for a, c, n in zip(self.exponents, t, self.factors)) % m

    def eval_exponent(self, G: FiniteGroup, g) -> int:
        return self.eval_tuple(G.tuple_of(_as_index(g)))

    def __add__(self, other: "Character") -> "Character":
        assert self.factors == other.factors
        return Character(tuple((a + b) % n for a, b, n in
                               zip(self.exponents, other.exponents, self.factors)),
                         self.factors)

    def __sub__(self, other: "Character") -> "Character":
        assert self.factors == other.factors
        return Character(tuple((a - b) % n for a, b, n in
                               zip(self.exponents, other.exponents, self.factors)),
                         self.factors)

    def __neg__(self) -> "Character":
        return Character(tuple((-a) % n for a, n in
                               zip(self.exponents, self.factors)), self.factors)

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.exponents)

    def label(self) -> str:
        if len(self.exponents) == 1:
            return str(self.exponents[0])
        return "(" + ",".join(str(a) for a in self.exponents) + ")"


def character_group(G: FiniteGroup) -> tuple[Character, ...]:
    if not G.abelian or G.factors is None:
        raise NonAbelianGroup("character group requires an abelian presentation")
    return tuple(Character(t, G.factors) for t in
                 itertools.product(*(range(n) for n in G.factors)))


def trivial_character(G: FiniteGroup) -> Character:
    if G.factors is None:
        raise NonAbelianGroup("character requires an abelian presentation")
    return Character((0,) * len(G.factors), G.factors)


@dataclass(frozen=True)
class ValueCharacter:
    """Character of any group given by explicit value exponents per element,
    verified to be a homomorphism into Z/modulus."""

    modulus: int
    values: tuple[int, ...]

    def verify(self, G: FiniteGroup):
        if len(self.values) != G.order:
            raise NonHomomorphism(
                f"value list has length {len(self.values)}, expected {G.order}")
        m = self.modulus
        if m < 1:
            raise NonHomomorphism("modulus must be positive")
        if any(not (0 <= v < m) for v in self.values):
            raise BadExponentRange(f"character values must lie in 0..{m - 1}")
        for a in range(G.order):
            for b in range(G.order):
                if self.values[G.mul(a, b)] != (self.values[a] + self.values[b]) % m:
                    raise NonHomomorphism(
                        f"values are not a homomorphism at pair ({a},{b})")

    def eval_exponent(self, G: FiniteGroup, g) -> int:
        return self.values[_as_index(g)]

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)

    def label(self) -> str:
        return "[" + ",".join(str(v) for v in self.values) + "]"


def schur_multiplier(G: FiniteGroup) -> list[int]:
    """The multiplier of a product of cyclic groups: one Z/gcd(ni,nj) per pair
    i < j, factors equal to 1 dropped."""
    if not G.abelian or G.factors is None:
        raise NonAbelianGroup("Schur multiplier implemented for abelian groups only")
    out = []
    f = G.factors
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            d = gcd(f[i], f[j])
            if d > 1:
                out.append(d)
    return sorted(out)


# 2-cocycles with values in mu_N, N = |G|, stored as exponent tables


class Cocycle:
    """Normalized 2-cocycle alpha: G x G -> Z/N exponents, N = |G|."""

    __slots__ = ("group", "modulus", "table")

    def __init__(self, group: FiniteGroup, table: Sequence[Sequence[int]]):
        self.group = group
        self.modulus = group.order
        self.table = tuple(tuple(int(v) % self.modulus for v in row) for row in table)
        assert len(self.table) == group.order
        assert all(len(row) == group.order for row in self.table)

    def value(self, g, h) -> int:
        return self.table[_as_index(g)][_as_index(h)]

    def verify(self) -> bool:
        G, t, n = self.group, self.table, self.modulus
        e = G.identity
        for g in range(G.order):
            if t[e][g] != 0 or t[g][e] != 0:
                return False
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                for k in range(G.order):
                    if (t[g][G.mul(h, k)] + t[h][k] - t[g][h] - t[gh][k]) % n:
                        return False
        return True

    def gamma(self, g, h) -> int:
        """Exponent of the torsion pairing gamma(g,h) = alpha(g,h) - alpha(h,g)."""
        gi, hi = _as_index(g), _as_index(h)
        return (self.table[gi][hi] - self.table[hi][gi]) % self.modulus

    def gamma_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.group.order
        return tuple(tuple(self.gamma(g, h) for h in range(n)) for g in range(n))

    def is_trivial_table(self) -> bool:
        return all(v == 0 for row in self.table for v in row)

    def __eq__(self, other):
        return (isinstance(other, Cocycle) and self.group is other.group
                and self.table == other.table)

    def __hash__(self):
        return hash(self.table)


def trivial_cocycle(G: FiniteGroup) -> Cocycle:
    return Cocycle(G, [[0] * G.order for _ in range(G.order)])


def _pair_moduli(factors: tuple[int, ...]) -> list[tuple[int, int, int]]:
    out = []
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            out.append((i, j, gcd(factors[i], factors[j])))
    return out


def standard_cocycle(G: FiniteGroup, eps: Sequence[int]) -> Cocycle:
    """alpha(a,b) = sum over i<j of eps_ij * a_i * b_j * (N / gcd(ni,nj)),
    exponents mod N = |G|. eps is indexed by pairs (i,j), i<j, row-major."""
    if not G.abelian or G.factors is None:
        raise NonAbelianGroup("standard cocycles require an abelian presentation")
    pairs = _pair_moduli(G.factors)
    eps = tuple(int(x) for x in eps)
    if len(eps) != len(pairs):
        raise BadExponentRange(
            f"expected {len(pairs)} exponent(s) for factor pairs, got {len(eps)}")
    for x, (_, _, d) in zip(eps, pairs):
        if not (0 <= x < max(d, 1)):
            raise BadExponentRange(f"exponent {x} outside 0..{d - 1}")
    n = G.order
    tuples = [G.tuple_of(a) for a in range(n)]
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        ta = tuples[a]
        for b in range(n):
            tb = tuples[b]
            v = 0
            for x, (i, j, d) in zip(eps, pairs):
                v += x * ta[i] * tb[j] * (n // d)
            table[a][b] = v % n
    c = Cocycle(G, table)
    assert c.verify()
    return c


def cocycle_class_exponents(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All eps tuples parameterizing the cohomology classes of G's 2-cocycles;
    distinct eps give distinct gamma pairings (hence distinct classes)."""
    if not G.abelian or G.factors is None:
        raise NonAbelianGroup("cocycle classes require an abelian presentation")
    pairs = _pair_moduli(G.factors)
    return [tuple(t) for t in itertools.product(*(range(d) for _, _, d in pairs))]


def verify_cocycle(alpha: Cocycle) -> bool:
    return alpha.verify()


def gamma_pairing(alpha: Cocycle, g, h) -> int:
    return alpha.gamma(g, h)


def general_torsion_character(alpha: Cocycle, g) -> dict[int, int]:
    """Exponent values h -> alpha(g,h) - alpha(g h g^-1, g) over h in C(g).
    For abelian groups this is the gamma pairing."""
    G = alpha.group
    gi = _as_index(g)
    out = {}
    for h in G.centralizer(gi):
        ghg = G.conjugate(gi, h)
        out[h] = (alpha.value(gi, h) - alpha.value(ghg, gi)) % alpha.modulus
    return out


def automorphisms(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of an abelian group as element-index permutations,
    found by brute force over generator images."""
    if not G.abelian or G.factors is None:
        raise NonAbelianGroup("automorphism search requires an abelian presentation")
    r = len(G.factors)
    if r == 0:
        return [(0,)]
    gens = []
    for i in range(r):
        t = [0] * r
        t[i] = 1 if G.factors[i] > 1 else 0
        gens.append(G.index_of(t))
    out = []
    for images in itertools.product(range(G.order), repeat=r):
        if any(G.element_order(img) != G.element_order(g)
               for img, g in zip(images, gens)):
            continue
        perm = []
        ok = True
        for a in range(G.order):
            coords = G.tuple_of(a)
            img = G.identity
            for c, im in zip(coords, images):
                for _ in range(c):
                    img = G.mul(img, im)
            perm.append(img)
        if len(set(perm)) != G.order:
            ok = False
        if ok:
            out.append(tuple(perm))
    return out
