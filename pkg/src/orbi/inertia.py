"""Twisted sectors, multi-sectors, ages, evaluation and inversion maps.

Sector indices are conjugacy-class representatives (tuples of them for
multi-sectors, canonical under simultaneous conjugation). Weighted projective
spaces have a trivial group slot and are indexed by the rational rotation
number of the isotropy root of unity instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ComponentNotFixed, PositionOutOfRange, UnsupportedK
from .groups import FiniteGroup, _as_index
from .gspace import (
    CentralizerActionData,
    CustomSpace,
    FixedComponent,
    GSpace,
    MonomialSpace,
    WeightedProjective,
)


@dataclass(frozen=True, order=True)
class SectorIndex:
    """Conjugacy class of a commuting tuple (g1,...,gk), canonical
    representative: lexicographically minimal simultaneous conjugate."""

    elements: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def label(self, G: FiniteGroup) -> str:
        if G.factors is not None:
            def fmt(i):
                t = G.tuple_of(i)
                return str(t[0]) if len(t) == 1 else \
                    "(" + ",".join(map(str, t)) + ")"
        else:
            def fmt(i):
                return str(i)
        if len(self.elements) == 1:
            return fmt(self.elements[0])
        return "(" + ";".join(fmt(e) for e in self.elements) + ")"


@dataclass(frozen=True)
class WPSectorIndex:
    q: Fraction

    def label(self, G=None) -> str:
        return f"q={self.q}"


def canonical_index(G: FiniteGroup, elements: Sequence[int]) -> SectorIndex:
    elems = tuple(_as_index(e) for e in elements)
    for e in elems:
        G.check_element(e)
    best = min(tuple(G.conjugate(h, e) for e in elems) for h in G.elements())
    return SectorIndex(best)


@dataclass(frozen=True)
class Sector:
    index: object
    components: tuple[FixedComponent, ...]
    action: Optional[CentralizerActionData]

    @property
    def ages(self) -> tuple[Fraction, ...]:
        return tuple(c.age for c in self.components)


def age(space: GSpace, g, component: FixedComponent) -> Fraction:
    """Sum of the normal weight exponents of g along the component."""
    for c in space.fixed_locus(g):
        if c.label == component.label:
            return c.age
    raise ComponentNotFixed(
        f"component {component.label} is not in the fixed locus")


def twisted_sectors(space: GSpace) -> tuple[Sector, ...]:
    """One sector per conjugacy class (per isotropy root of unity for
    weighted projective spaces), ordered by canonical representative."""
    if isinstance(space, WeightedProjective):
        return tuple(
            Sector(WPSectorIndex(q), (comp,), None)
            for q, comp in space.isotropy_sectors())
    out = []
    for rep, _members in space.group.conjugacy_classes():
        comps = space.fixed_locus(rep)
        out.append(Sector(SectorIndex((rep,)), comps,
                          space.cohomology_action(rep)))
    return tuple(out)


def _commuting(G: FiniteGroup, elems: tuple[int, ...]) -> bool:
    return all(G.mul(a, b) == G.mul(b, a)
               for a, b in itertools.combinations(elems, 2))


def multi_sectors(space: GSpace, k: int) -> tuple[Sector, ...]:
    """Classes of k-tuples up to simultaneous conjugation with the components
    of the common fixed locus. Only commuting tuples carry components;
    non-commuting tuples (table groups only) are emitted empty."""
    if not (1 <= k <= 3):
        raise UnsupportedK(f"k = {k} outside the supported range 1..3")
    if isinstance(space, WeightedProjective):
        if k == 1:
            return twisted_sectors(space)
        e = space.group.identity
        comps = space.fixed_locus(e)
        return (Sector(SectorIndex((e,) * k), comps, None),)
    G = space.group
    seen = set()
    out = []
    for elems in itertools.product(G.elements(), repeat=k):
        idx = canonical_index(G, elems)
        if idx in seen:
            continue
        seen.add(idx)
        commuting = _commuting(G, idx.elements)
        if not commuting:
            comps: tuple[FixedComponent, ...] = ()
        elif isinstance(space, MonomialSpace):
            comps = space._fix_components(idx.elements)
        elif isinstance(space, CustomSpace):
            if k == 1:
                comps = space.fixed_locus(idx.elements[0])
            else:
                comps = ()  # intersection data not supplied for custom spaces
        else:
            comps = space.fixed_locus(idx.elements[0]) if k == 1 else ()
        action = space.cohomology_action(idx.elements[0]) if k == 1 else None
        out.append(Sector(idx, comps, action))
    return tuple(sorted(out, key=lambda s: s.index.elements))


def evaluation_map(G: FiniteGroup, index: SectorIndex,
                   positions: Sequence[int]) -> SectorIndex:
    """Project a multi-sector index to the 1-based positions given."""
    k = len(index.elements)
    for p in positions:
        if not (1 <= p <= k):
            raise PositionOutOfRange(f"position {p} outside 1..{k}")
    return canonical_index(G, tuple(index.elements[p - 1] for p in positions))


def inversion_map(G: FiniteGroup, index: SectorIndex) -> SectorIndex:
    return canonical_index(G, tuple(G.inv(e) for e in index.elements))
