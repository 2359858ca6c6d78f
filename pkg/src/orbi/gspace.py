"""G-variety models at fixed-locus resolution.

Built-in spaces are diagonal/permutation ("monomial") actions on products of
projective spaces: every group element acts by permuting the factors and
scaling coordinates by roots of unity. Fixed loci, normal weights, and the
induced centralizer action on component cohomology are all computed
combinatorially from that data. Custom spaces carry user-supplied per-class
component lists and are validated, not derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Optional, Sequence

from .errors import (
    ComponentNotFixed,
    DimensionMismatch,
    ElementNotInGroup,
    EmptyWeights,
    IncompatiblePermutation,
    MissingClass,
    NonAbelianGroup,
    NonHomomorphism,
    UnsupportedForCustom,
    ZeroNormalWeight,
)
from .groups import (
    Character,
    FiniteGroup,
    GroupElement,
    ValueCharacter,
    _as_index,
)


def _kunneth(dims: Sequence[int]) -> tuple[int, ...]:
    """Betti vector (unit degree steps) of a product of projective spaces."""
    out = [1]
    for d in dims:
        nxt = [0] * (len(out) + 2 * d)
        for i, c in enumerate(out):
            if c:
                for v in range(d + 1):
                    nxt[i + 2 * v] += c
        out = nxt
    return tuple(out)


@dataclass(frozen=True)
class FixedComponent:
    label: str
    dim: int
    betti: tuple[int, ...]  # H^0 .. H^(len-1) dimensions, unit degree steps
    normal_weights: tuple[Fraction, ...]  # each in (0,1), sorted
    key: object = field(default=None, compare=False)

    @property
    def age(self) -> Fraction:
        return sum(self.normal_weights, Fraction(0))

    @property
    def euler(self) -> int:
        return sum(c if k % 2 == 0 else -c for k, c in enumerate(self.betti))


class CentralizerActionData:
    """Action of C(g) on the components of one fixed locus.

    permutations[h] sends component position i to its image position;
    traces[h][i] is the trace vector of h* on H^* of component i when h fixes
    it, else None.
    """

    def __init__(self, elements, labels, permutations, traces):
        self.elements = tuple(elements)
        self.component_labels = tuple(labels)
        self.permutations = permutations
        self.traces = traces

    def trace_sum(self, h: int, positions: Sequence[int], degree: int) -> int:
        """Sum of traces of h over the h-fixed components among positions."""
        total = 0
        perm = self.permutations[h]
        tr = self.traces[h]
        for i in positions:
            if perm[i] == i:
                vec = tr[i]
                total += vec[degree] if degree < len(vec) else 0
        return total


class GSpace:
    kind = "abstract"

    group: FiniteGroup
    dim: int

    def fixed_locus(self, g) -> tuple[FixedComponent, ...]:
        raise NotImplementedError

    def cohomology_action(self, g) -> CentralizerActionData:
        raise NotImplementedError

    def is_generically_free(self) -> tuple[bool, Optional[int]]:
        raise NotImplementedError

    def effective(self) -> bool:
        return self.is_generically_free()[0]


# ---------------------------------------------------------------------------
# monomial actions on products of projective spaces


@dataclass(frozen=True)
class _Action:
    """One element's slot action: factor permutation + per-slot exponents."""
    perm: tuple[int, ...]
    expo: tuple[tuple[int, ...], ...]  # expo[factor][coord], exponents mod M


def _compose(a: _Action, b: _Action, modulus: int) -> _Action:
    """Action of the product a*b, i.e. apply b first: the exponent at source
    slot s accumulates b's scalar at s and a's scalar at b's image slot."""
    perm = tuple(a.perm[p] for p in b.perm)
    expo = tuple(
        tuple((b.expo[f][c] + a.expo[b.perm[f]][c]) % modulus
              for c in range(len(b.expo[f])))
        for f in range(len(b.perm))
    )
    return _Action(perm, expo)


class MonomialSpace(GSpace):
    """Shared machinery for linear and product projective actions."""

    def __init__(self, group: FiniteGroup, factor_dims: Sequence[int],
                 modulus: int, actions: Sequence[_Action]):
        self.group = group
        self.factor_dims = tuple(factor_dims)
        self.modulus = modulus
        self.actions = tuple(actions)
        self.dim = sum(self.factor_dims)
        self._verify_homomorphism()
        self._fix_cache: dict[tuple[int, ...], tuple[FixedComponent, ...]] = {}
        self._action_cache: dict[int, CentralizerActionData] = {}

    def _verify_homomorphism(self):
        G = self.group
        ident = self.actions[G.identity]
        if ident.perm != tuple(range(len(self.factor_dims))) or \
                any(v for row in ident.expo for v in row):
            raise NonHomomorphism("identity element does not act trivially")
        for a in G.elements():
            for b in G.elements():
                if _compose(self.actions[a], self.actions[b], self.modulus) \
                        != self.actions[G.mul(a, b)]:
                    raise NonHomomorphism(
                        f"action is not a homomorphism at pair ({a},{b})")

    # fixed loci

    def _power(self, g: int, k: int) -> int:
        x = self.group.identity
        for _ in range(k):
            x = self.group.mul(x, g)
        return x

    def _orbit_structure(self, subgroup: tuple[int, ...]):
        """Factor orbits under the subgroup plus per-orbit coordinate
        partitions into joint-eigenvalue pattern groups."""
        perms = {h: self.actions[h].perm for h in subgroup}
        nfac = len(self.factor_dims)
        seen = [False] * nfac
        orbits = []
        for f in range(nfac):
            if seen[f]:
                continue
            orbit = {f}
            frontier = [f]
            while frontier:
                x = frontier.pop()
                for h in subgroup:
                    y = perms[h][x]
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            orbit = tuple(sorted(orbit))
            for x in orbit:
                seen[x] = True
            base = orbit[0]
            stab = tuple(h for h in subgroup if perms[h][base] == base)
            groups: dict[tuple[int, ...], list[int]] = {}
            for c in range(self.factor_dims[base] + 1):
                pattern = tuple(self.actions[h].expo[base][c] for h in stab)
                groups.setdefault(pattern, []).append(c)
            choice = sorted((tuple(v), k) for k, v in groups.items())
            orbits.append((orbit, stab, tuple(choice)))
        return orbits

    def _fix_components(self, generators: Sequence[int]) -> tuple[FixedComponent, ...]:
        """Components of the common fixed locus of the subgroup generated by
        the given (pairwise commuting, unless the space is single-factor)
        elements. Normal weight data is not attached here."""
        subgroup = self.group.subgroup_closure(generators)
        key = subgroup
        if key in self._fix_cache:
            return self._fix_cache[key]
        orbits = self._orbit_structure(subgroup)
        multi = len(self.factor_dims) > 1
        comps = []
        for pick in itertools.product(*(range(len(ch)) for _, _, ch in orbits)):
            blocks = []
            for (orbit, _, choices), idx in zip(orbits, pick):
                coords, _pattern = choices[idx]
                blocks.append((orbit, coords))
            dims = [len(coords) - 1 for _, coords in blocks]
            if multi:
                label = "|".join(
                    "f" + ",".join(map(str, orbit)) + ":c" + ",".join(map(str, coords))
                    for orbit, coords in blocks)
            else:
                label = "c" + ",".join(map(str, blocks[0][1]))
            comps.append(FixedComponent(
                label=label, dim=sum(dims), betti=_kunneth(dims),
                normal_weights=(), key=tuple(blocks)))
        result = tuple(sorted(comps, key=lambda c: c.label))
        self._fix_cache[key] = result
        return result

    def fixed_locus(self, g) -> tuple[FixedComponent, ...]:
        gi = _as_index(g)
        self.group.check_element(gi)
        skeleton = self._fix_components((gi,))
        out = []
        for comp in skeleton:
            weights = []
            for orbit, coords in comp.key:
                ell = len(orbit)
                base = orbit[0]
                u = self._power(gi, ell)
                mu = self.actions[u].expo[base][coords[0]]
                taus = [Fraction(0)] * (len(coords) - 1)
                for c in range(self.factor_dims[base] + 1):
                    if c in coords:
                        continue
                    b = self.actions[u].expo[base][c]
                    taus.append(Fraction((b - mu) % self.modulus, self.modulus))
                for q in taus:
                    for t in range(ell):
                        w = (q + t) / ell
                        if w != 0:
                            weights.append(w)
            out.append(FixedComponent(
                label=comp.label, dim=comp.dim, betti=comp.betti,
                normal_weights=tuple(sorted(weights)), key=comp.key))
        return tuple(out)

    # centralizer action on sector cohomology

    def cohomology_action(self, g) -> CentralizerActionData:
        gi = _as_index(g)
        self.group.check_element(gi)
        if gi in self._action_cache:
            return self._action_cache[gi]
        comps = self._fix_components((gi,))
        index_of = {c.key: i for i, c in enumerate(comps)}
        # factor -> its <g>-orbit; the orbit partition is shared by all comps
        orbit_of = {}
        for orbit, _ in comps[0].key:
            for f in orbit:
                orbit_of[f] = orbit
        cent = self.group.centralizer(gi)
        perms: dict[int, tuple[int, ...]] = {}
        traces: dict[int, tuple] = {}
        for h in cent:
            hperm = self.actions[h].perm
            perm_out = []
            trace_out = []
            for comp in comps:
                img_blocks = tuple(sorted(
                    (orbit_of[hperm[orbit[0]]], coords)
                    for orbit, coords in comp.key))
                j = index_of.get(img_blocks)
                assert j is not None, "centralizer image is not a fixed component"
                perm_out.append(j)
            for i, comp in enumerate(comps):
                if perm_out[i] != i:
                    trace_out.append(None)
                    continue
                # h permutes the projective factors of this component; the
                # trace is the fixed-monomial count, all classes even degree
                blocks = list(comp.key)
                pos = {orbit: k for k, (orbit, _) in enumerate(blocks)}
                sigma = [pos[orbit_of[hperm[orbit[0]]]] for orbit, _ in blocks]
                poly = [1]
                visited = [False] * len(blocks)
                for s in range(len(blocks)):
                    if visited[s]:
                        continue
                    cyc_len = 0
                    x = s
                    d = len(blocks[s][1]) - 1
                    while not visited[x]:
                        visited[x] = True
                        assert len(blocks[x][1]) - 1 == d
                        x = sigma[x]
                        cyc_len += 1
                    step = 2 * cyc_len
                    nxt = [0] * (len(poly) + step * d)
                    for ideg, c in enumerate(poly):
                        if c:
                            for v in range(d + 1):
                                nxt[ideg + step * v] += c
                    poly = nxt
                full = [0] * (2 * comp.dim + 1)
                for ideg, c in enumerate(poly):
                    full[ideg] = c
                trace_out.append(tuple(full))
            perms[h] = tuple(perm_out)
            traces[h] = tuple(trace_out)
        data = CentralizerActionData(cent, tuple(c.label for c in comps),
                                     perms, traces)
        self._action_cache[gi] = data
        return data

    # effectiveness

    def kernel(self) -> tuple[int, ...]:
        """Elements acting projectively trivially: identity permutation and
        constant exponents within every factor."""
        out = []
        nfac = len(self.factor_dims)
        for g in self.group.elements():
            act = self.actions[g]
            if act.perm != tuple(range(nfac)):
                continue
            if all(len(set(act.expo[f])) == 1 for f in range(nfac)):
                out.append(g)
        return tuple(out)

    def is_generically_free(self) -> tuple[bool, Optional[int]]:
        ker = self.kernel()
        witnesses = [g for g in ker if g != self.group.identity]
        if witnesses:
            return False, min(witnesses)
        return True, None


class LinearProjective(MonomialSpace):
    kind = "linear_projective"

    def __init__(self, group: FiniteGroup, characters: Sequence):
        self.coordinate_characters = tuple(characters)
        if not self.coordinate_characters:
            raise DimensionMismatch("need at least one coordinate character")
        mods = set()
        for ch in self.coordinate_characters:
            if isinstance(ch, Character):
                if group.factors is None or ch.factors != group.factors:
                    raise NonAbelianGroup(
                        "tuple characters require the abelian presentation")
                mods.add(ch.modulus)
            elif isinstance(ch, ValueCharacter):
                ch.verify(group)
                mods.add(ch.modulus)
            else:
                raise NonHomomorphism(f"unsupported character object {ch!r}")
        if len(mods) != 1:
            raise NonHomomorphism("coordinate characters disagree on modulus")
        modulus = mods.pop()
        actions = []
        for g in group.elements():
            expo = tuple(ch.eval_exponent(group, g)
                         for ch in self.coordinate_characters)
            actions.append(_Action((0,), (expo,)))
        super().__init__(group, (len(self.coordinate_characters) - 1,),
                         modulus, actions)


class ProductProjective(MonomialSpace):
    kind = "product_projective"

    def __init__(self, group: FiniteGroup, factor_dims: Sequence[int],
                 generator_actions: Sequence[dict]):
        """generator_actions: one entry per abelian invariant factor of the
        group, each {'factor_images': [...], 'exponents': [[...]]} giving the
        action of that generator."""
        if not group.abelian or group.factors is None:
            raise NonAbelianGroup("product actions require an abelian group")
        factor_dims = tuple(int(d) for d in factor_dims)
        if any(d < 0 for d in factor_dims) or not factor_dims:
            raise DimensionMismatch("factor dimensions must be nonnegative")
        nfac = len(factor_dims)
        modulus = reduce(lcm, group.factors, 1)
        if len(generator_actions) != len(group.factors):
            raise NonHomomorphism(
                f"need one generator action per group factor "
                f"({len(group.factors)}), got {len(generator_actions)}")
        gens = []
        for spec in generator_actions:
            perm = tuple(int(x) for x in spec["factor_images"])
            if sorted(perm) != list(range(nfac)):
                raise IncompatiblePermutation(
                    f"factor_images {perm} is not a permutation of 0..{nfac - 1}")
            for f in range(nfac):
                if factor_dims[perm[f]] != factor_dims[f]:
                    raise IncompatiblePermutation(
                        f"factor {f} (dim {factor_dims[f]}) maps to factor "
                        f"{perm[f]} (dim {factor_dims[perm[f]]})")
            expo = spec["exponents"]
            if len(expo) != nfac or any(
                    len(expo[f]) != factor_dims[f] + 1 for f in range(nfac)):
                raise DimensionMismatch(
                    "exponents must list one value per coordinate per factor")
            gens.append(_Action(perm, tuple(
                tuple(int(v) % modulus for v in row) for row in expo)))
        ident = _Action(tuple(range(nfac)), tuple(
            (0,) * (d + 1) for d in factor_dims))
        # generator actions must commute and have the right orders for the
        # extension over exponent tuples to be well defined
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if _compose(a, b, modulus) != _compose(b, a, modulus):
                    raise NonHomomorphism("generator actions do not commute")
        powers = []
        for a, n in zip(gens, group.factors):
            pw = [ident]
            for _ in range(n):
                pw.append(_compose(a, pw[-1], modulus))
            if pw[n] != ident:
                raise NonHomomorphism(
                    f"generator action does not have order dividing {n}")
            powers.append(pw)
        actions = []
        for g in group.elements():
            coords = group.tuple_of(g)
            act = ident
            for pw, c in zip(powers, coords):
                act = _compose(act, pw[c], modulus)
            actions.append(act)
        super().__init__(group, factor_dims, modulus, actions)


# ---------------------------------------------------------------------------
# weighted projective spaces (trivial finite-group slot)


class WeightedProjective(GSpace):
    kind = "weighted_projective"

    def __init__(self, weights: Sequence[int]):
        weights = tuple(int(w) for w in weights)
        if not weights:
            raise EmptyWeights("need at least one weight")
        if any(w < 1 for w in weights):
            raise EmptyWeights(f"weights must be positive, got {weights}")
        self.weights = weights
        self.group = FiniteGroup.from_factors(())
        self.dim = len(weights) - 1

    def isotropy_sectors(self) -> tuple[tuple[Fraction, FixedComponent], ...]:
        """(q, component) per root of unity e^(2 pi i q) fixing some
        coordinate; q = 0 is the untwisted full space."""
        qs = set()
        for w in self.weights:
            for k in range(w):
                qs.add(Fraction(k, w))
        out = []
        for q in sorted(qs):
            J = tuple(i for i, w in enumerate(self.weights)
                      if (q * w).denominator == 1)
            weights = tuple(sorted(
                q * w % 1 for i, w in enumerate(self.weights) if i not in J))
            sub = ",".join(str(self.weights[i]) for i in J)
            comp = FixedComponent(
                label=f"q={q}:P({sub})", dim=len(J) - 1,
                betti=_kunneth([len(J) - 1]),
                normal_weights=weights, key=q)
            out.append((q, comp))
        return tuple(out)

    def fixed_locus(self, g) -> tuple[FixedComponent, ...]:
        self.group.check_element(_as_index(g))
        return tuple(c for q, c in self.isotropy_sectors() if q == 0)

    def cohomology_action(self, g) -> CentralizerActionData:
        comps = self.fixed_locus(g)
        e = self.group.identity
        return CentralizerActionData(
            (e,), tuple(c.label for c in comps),
            {e: tuple(range(len(comps)))},
            {e: tuple(c.betti for c in comps)})

    def is_generically_free(self) -> tuple[bool, Optional[int]]:
        return True, None


# ---------------------------------------------------------------------------
# custom spaces: user-supplied fixed-locus data


class CustomSpace(GSpace):
    kind = "custom"

    def __init__(self, group: FiniteGroup, dim: int,
                 class_components: dict[int, Sequence[FixedComponent]],
                 generically_free: bool = False, effective_flag: bool = True,
                 action_data: Optional[dict[int, CentralizerActionData]] = None,
                 pair_euler: Optional[dict[tuple[int, int], int]] = None):
        self.group = group
        self.dim = int(dim)
        reps = [rep for rep, _ in group.conjugacy_classes()]
        for rep in reps:
            if rep not in class_components:
                raise MissingClass(f"no component data for class of element {rep}")
        for rep in class_components:
            if rep not in reps:
                raise ElementNotInGroup(
                    f"element {rep} is not a class representative")
        self.class_components = {
            rep: tuple(sorted(class_components[rep], key=lambda c: c.label))
            for rep in reps}
        self._validate_components()
        self.declared_generically_free = bool(generically_free)
        self.declared_effective = bool(effective_flag)
        self.action_data = action_data or {}
        self._validate_action_data()
        self.pair_euler = pair_euler

    def _validate_components(self):
        G = self.group
        for rep, comps in self.class_components.items():
            for comp in comps:
                if len(comp.normal_weights) + comp.dim != self.dim:
                    raise DimensionMismatch(
                        f"component {comp.label}: {len(comp.normal_weights)} "
                        f"normal weights + dim {comp.dim} != ambient {self.dim}")
                for w in comp.normal_weights:
                    if w % 1 == 0:
                        raise ZeroNormalWeight(
                            f"component {comp.label}: normal weight {w} is integral")
            if rep == G.identity:
                for comp in comps:
                    if comp.normal_weights:
                        raise DimensionMismatch(
                            "identity-class components must have no normal weights")

    def _validate_action_data(self):
        for rep, data in self.action_data.items():
            comps = self.class_components[rep]
            e = self.group.identity
            if e in data.permutations:
                tr = data.traces[e]
                for comp, vec in zip(comps, tr):
                    if tuple(vec) != comp.betti:
                        raise DimensionMismatch(
                            f"identity traces differ from Betti numbers on "
                            f"{comp.label}")
            cent = data.elements
            for a in cent:
                for b in cent:
                    ab = self.group.mul(a, b)
                    if ab in data.permutations:
                        pa, pb = data.permutations[a], data.permutations[b]
                        comp_ab = tuple(pa[pb[i]] for i in range(len(pb)))
                        if comp_ab != data.permutations[ab]:
                            raise NonHomomorphism(
                                "component permutations are not a homomorphism")

    def fixed_locus(self, g) -> tuple[FixedComponent, ...]:
        gi = _as_index(g)
        self.group.check_element(gi)
        return self.class_components[self.group.class_representative(gi)]

    def cohomology_action(self, g) -> CentralizerActionData:
        gi = _as_index(g)
        rep = self.group.class_representative(gi)
        if rep in self.action_data:
            return self.action_data[rep]
        comps = self.class_components[rep]
        cent = self.group.centralizer(rep)
        ident = tuple(range(len(comps)))
        betti = tuple(c.betti for c in comps)
        return CentralizerActionData(
            cent, tuple(c.label for c in comps),
            {h: ident for h in cent}, {h: betti for h in cent})

    def is_generically_free(self) -> tuple[bool, Optional[int]]:
        return self.declared_generically_free, None

    def effective(self) -> bool:
        return self.declared_effective


# ---------------------------------------------------------------------------
# constructors mirroring the scenario schema


def build_linear_projective(group: FiniteGroup, characters) -> LinearProjective:
    return LinearProjective(group, characters)


def build_product_projective(group, factor_dims, generator_actions) -> ProductProjective:
    return ProductProjective(group, factor_dims, generator_actions)


def build_weighted_projective(weights) -> WeightedProjective:
    return WeightedProjective(weights)


def build_custom(group, dim, class_components, **kw) -> CustomSpace:
    return CustomSpace(group, dim, class_components, **kw)


def fixed_locus(space: GSpace, g) -> tuple[FixedComponent, ...]:
    return space.fixed_locus(g)


def cohomology_action(space: GSpace, g) -> CentralizerActionData:
    return space.cohomology_action(g)


def is_generically_free(space: GSpace) -> tuple[bool, Optional[int]]:
    return space.is_generically_free()
