"""Additive orbifold cohomology as rationally graded dimension vectors.

Per sector, the centralizer-invariant dimension of H^k is computed by exact
character averaging of traces; the twisted variant weights the average by the
discrete-torsion pairing and evaluates in exact cyclotomic arithmetic, with
every resulting dimension asserted to be a nonnegative rational integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .cyclotomic import Cyclotomic
from .errors import NonAbelianTwist, NonIntegerDimension, UnsupportedForCustom
from .groups import Cocycle, FiniteGroup, general_torsion_character
from .gspace import CustomSpace, GSpace, MonomialSpace, WeightedProjective
from .inertia import (
    Sector,
    SectorIndex,
    WPSectorIndex,
    inversion_map,
    multi_sectors,
    twisted_sectors,
)


@dataclass(frozen=True)
class GradedDims:
    """Map from exact rational degree to positive dimension, plus the total."""

    entries: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_dict(cls, d: Mapping[Fraction, int]) -> "GradedDims":
        items = tuple(sorted((Fraction(k), int(v)) for k, v in d.items() if v))
        assert all(deg >= 0 and dim > 0 for deg, dim in items)
        return cls(items)

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.entries)

    @property
    def total(self) -> int:
        return sum(dim for _, dim in self.entries)

    def dim_at(self, degree) -> int:
        return self.as_dict().get(Fraction(degree), 0)

    def first_difference(self, other: "GradedDims"):
        """(degree, self dim, other dim) at the smallest differing degree."""
        mine, theirs = self.as_dict(), other.as_dict()
        for deg in sorted(set(mine) | set(theirs)):
            a, b = mine.get(deg, 0), theirs.get(deg, 0)
            if a != b:
                return deg, a, b
        return None


def poincare_string(dims: GradedDims) -> str:
    if not dims.entries:
        return "0"
    terms = []
    for deg, dim in dims.entries:
        terms.append(str(dim) if deg == 0 else f"{dim} q^{{{deg}}}")
    return " + ".join(terms)


def _age_classes(components) -> list[tuple[Fraction, tuple[int, ...]]]:
    by_age: dict[Fraction, list[int]] = {}
    for i, comp in enumerate(components):
        by_age.setdefault(comp.age, []).append(i)
    return [(a, tuple(ix)) for a, ix in sorted(by_age.items())]


def _sector_contributions(space: GSpace, sector: Sector,
                          weight_exponent=None, modulus: int = 1):
    """Degree -> dimension contributions of one sector.

    With weight_exponent (a map h -> exponent mod modulus) the average is
    twisted by zeta^w(h) and evaluated in exact cyclotomic arithmetic.
    """
    out: dict[Fraction, int] = {}
    if sector.action is None:  # weighted projective sectors, trivial group
        for comp in sector.components:
            for k, b in enumerate(comp.betti):
                if b:
                    deg = k + 2 * comp.age
                    out[deg] = out.get(deg, 0) + b
        return out
    action = sector.action
    cent = action.elements
    order = len(cent)
    max_len = max((len(c.betti) for c in sector.components), default=0)
    for age_value, positions in _age_classes(sector.components):
        # centralizer elements permute components of equal age only
        for h in cent:
            perm = action.permutations[h]
            assert all(perm[i] in positions for i in positions)
        for k in range(max_len):
            if weight_exponent is None:
                total = sum(action.trace_sum(h, positions, k) for h in cent)
                avg = Fraction(total, order)
                if avg.denominator != 1 or avg < 0:
                    raise NonIntegerDimension(
                        f"invariant dimension {avg} at degree {k} in sector "
                        f"{sector.index} is not a nonnegative integer")
                dim = avg.numerator
            else:
                sums: dict[int, Fraction] = {}
                for h in cent:
                    t = action.trace_sum(h, positions, k)
                    if t:
                        w = weight_exponent[h]
                        sums[w] = sums.get(w, Fraction(0)) + Fraction(t, order)
                value = Cyclotomic.from_exponent_sums(modulus, sums)
                dim = value.as_integer()
                if dim < 0:
                    raise NonIntegerDimension(
                        f"twisted dimension {dim} at degree {k} in sector "
                        f"{sector.index} is negative")
            if dim:
                deg = k + 2 * age_value
                out[deg] = out.get(deg, 0) + dim
    return out


def cr_dimensions(space: GSpace) -> GradedDims:
    """Degree-shifted sum over sectors of centralizer-invariant dimensions."""
    acc: dict[Fraction, int] = {}
    for sector in twisted_sectors(space):
        for deg, dim in _sector_contributions(space, sector).items():
            acc[deg] = acc.get(deg, 0) + dim
    return GradedDims.from_dict(acc)


def cr_sector_table(space: GSpace) -> list[tuple[object, GradedDims]]:
    """Per-sector contributions, for reports."""
    out = []
    for sector in twisted_sectors(space):
        out.append((sector.index,
                    GradedDims.from_dict(_sector_contributions(space, sector))))
    return out


def cr_twisted_dimensions(space: GSpace, alpha: Cocycle) -> GradedDims:
    """Same assembly with the character average twisted by the torsion
    pairing of alpha."""
    G = space.group
    if isinstance(space, WeightedProjective):
        return cr_dimensions(space)
    if not G.abelian:
        raise NonAbelianTwist("twisted dimensions require an abelian group")
    assert alpha.group is G and alpha.verify()
    N = alpha.modulus
    acc: dict[Fraction, int] = {}
    for sector in twisted_sectors(space):
        g = sector.index.elements[0]
        weights = {h: alpha.gamma(g, h) for h in sector.action.elements}
        for deg, dim in _sector_contributions(
                space, sector, weight_exponent=weights, modulus=N).items():
            acc[deg] = acc.get(deg, 0) + dim
    return GradedDims.from_dict(acc)


def orbifold_euler(space: GSpace) -> int:
    """Stringy Euler number (1/|G|) sum over commuting pairs of
    chi(Y^g intersect Y^h); an oracle independent of the sector assembly.
    Weighted projective spaces use the torus-strata count sum(w_i)."""
    if isinstance(space, WeightedProjective):
        return sum(space.weights)
    G = space.group
    total = 0
    if isinstance(space, MonomialSpace):
        for g in G.elements():
            for h in G.centralizer(g):
                comps = space._fix_components((g, h))
                total += sum(c.euler for c in comps)
    elif isinstance(space, CustomSpace):
        if space.pair_euler is None:
            raise UnsupportedForCustom(
                "no pairwise intersection Euler data supplied")
        for g in G.elements():
            for h in G.centralizer(g):
                key = (g, h)
                if key not in space.pair_euler:
                    raise UnsupportedForCustom(
                        f"missing intersection Euler number for pair {key}")
                total += space.pair_euler[key]
    else:
        raise UnsupportedForCustom(f"no Euler oracle for {space.kind}")
    value = Fraction(total, G.order)
    if value.denominator != 1:
        raise NonIntegerDimension(f"stringy Euler sum {value} is not integral")
    return value.numerator


# discrete torsion line data over sectors


@dataclass(frozen=True)
class SectorCharacter:
    """Exponent-valued character on the centralizer of a sector's
    representative: values are exponents of zeta_modulus."""

    modulus: int
    values: tuple[tuple[int, int], ...]  # (element, exponent), sorted

    def value(self, h: int) -> int:
        for e, v in self.values:
            if e == h:
                return v
        raise KeyError(h)

    def domain(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.values)

    def is_trivial(self) -> bool:
        return all(v == 0 for _, v in self.values)

    def inverse(self) -> "SectorCharacter":
        return SectorCharacter(self.modulus, tuple(
            (e, (-v) % self.modulus) for e, v in self.values))


TwistLineData = dict


def torsion_line_system(space: GSpace, alpha: Cocycle) -> dict:
    """Per-sector character family induced by a 2-cocycle."""
    G = space.group
    out = {}
    for rep, _ in G.conjugacy_classes():
        vals = general_torsion_character(alpha, rep)
        out[SectorIndex((rep,))] = SectorCharacter(
            alpha.modulus, tuple(sorted(vals.items())))
    return out


def check_inner_local_system(space: GSpace, line_data: dict):
    """Character-level conditions: (a) trivial on the untwisted sector,
    (b) compatible with inversion, (c) trivial products over commuting
    triples with g1 g2 g3 = 1. Returns (ok, violation descriptions)."""
    G = space.group
    violations = []
    e = G.identity
    untwisted = SectorIndex((e,))
    if untwisted in line_data and not line_data[untwisted].is_trivial():
        violations.append("(a) untwisted sector carries a nontrivial character")
    for idx, chi in sorted(line_data.items()):
        inv_idx = inversion_map(G, idx)
        other = line_data.get(inv_idx)
        if other is None:
            violations.append(f"(b) sector {idx.label(G)}: inverse sector missing")
            continue
        expected = other.inverse()
        common = set(chi.domain()) & set(expected.domain())
        for h in sorted(common):
            if chi.value(h) != expected.value(h):
                violations.append(
                    f"(b) sector {idx.label(G)}: character disagrees with the "
                    f"inverse sector at h={h} "
                    f"({chi.value(h)} vs {expected.value(h)} mod {chi.modulus})")
                break
    for sector in multi_sectors(space, 3):
        g1, g2, g3 = sector.index.elements
        if G.mul(G.mul(g1, g2), g3) != G.identity:
            continue
        if not all(G.mul(a, b) == G.mul(b, a)
                   for a, b in ((g1, g2), (g1, g3), (g2, g3))):
            continue
        chis = []
        for g in (g1, g2, g3):
            idx = SectorIndex((G.class_representative(g),))
            if idx not in line_data:
                chis = None
                break
            chis.append(line_data[idx])
        if chis is None:
            violations.append(
                f"(c) triple {sector.index.elements}: sector character missing")
            continue
        modulus = chis[0].modulus
        common = set(chis[0].domain()) & set(chis[1].domain()) & set(chis[2].domain())
        for h in sorted(common):
            s = sum(chi.value(h) for chi in chis) % modulus
            if s:
                violations.append(
                    f"(c) triple {sector.index.elements}: product character "
                    f"nontrivial at h={h} (exponent {s} mod {modulus})")
                break
    return (not violations), violations
