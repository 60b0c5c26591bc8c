"""Finite abelian groups, their characters, perp duality and group-algebra idempotents.

Groups are kept in the user-supplied factor form Z_{m_1} x ... x Z_{m_k};
elements and characters are exponent vectors reduced componentwise.  The
pairing <chi, g> is tracked as an integer exponent modulo exp(G), so duality
computations (perp, restriction, orthogonality) never need field arithmetic;
only `evaluate` maps values into a concrete cyclotomic field.
"""

from __future__ import annotations

import math
from functools import reduce
from itertools import product

from .cyclo import Cyclo, CycloField
from .structalg import AlgebraElement, StructAlgebra


class AbelianGroup:
    def __init__(self, factors):
        factors = tuple(int(m) for m in factors)
        if not factors or any(m < 1 for m in factors):
            raise ValueError("factors must be positive integers")
        self.factors = factors
        self.order = math.prod(factors)
        self.exponent = reduce(math.lcm, factors, 1)

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(("AbelianGroup", self.factors))

    def __repr__(self):
        return "Z" + "xZ".join(str(m) for m in self.factors)

    def element(self, exps) -> "GroupElement":
        return GroupElement(self, exps)

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.factors))

    def generator(self, j: int) -> "GroupElement":
        exps = [0] * len(self.factors)
        exps[j] = 1
        return GroupElement(self, exps)

    def elements(self) -> list["GroupElement"]:
        return [GroupElement(self, e) for e in product(*(range(m) for m in self.factors))]

    def character(self, exps) -> "Character":
        return Character(self, exps)

    def trivial_character(self) -> "Character":
        return Character(self, (0,) * len(self.factors))

    def characters(self) -> list["Character"]:
        return [Character(self, e) for e in product(*(range(m) for m in self.factors))]


class GroupElement:
    __slots__ = ("group", "exps")

    def __init__(self, group: AbelianGroup, exps):
        exps = tuple(int(e) % m for e, m in zip(exps, group.factors))
        if len(exps) != len(group.factors):
            raise ValueError("exponent vector length does not match the group")
        self.group = group
        self.exps = exps

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._compat(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.exps, other.exps)])

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, [-a for a in self.exps])

    def __pow__(self, n: int) -> "GroupElement":
        return GroupElement(self.group, [a * n for a in self.exps])

    def order(self) -> int:
        return reduce(
            math.lcm,
            (m // math.gcd(e, m) for e, m in zip(self.exps, self.group.factors)),
            1,
        )

    def is_identity(self) -> bool:
        return not any(self.exps)

    def _compat(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")

    def __eq__(self, other):
        return isinstance(other, GroupElement) and other.group == self.group and other.exps == self.exps

    def __hash__(self):
        return hash(("g", self.group.factors, self.exps))

    def __repr__(self):
        return "g" + str(list(self.exps))


class Character:
    """chi(g_j) = zeta_{m_j}^{c_j} on the j-th cyclic generator."""

    __slots__ = ("group", "exps")

    def __init__(self, group: AbelianGroup, exps):
        exps = tuple(int(c) % m for c, m in zip(exps, group.factors))
        if len(exps) != len(group.factors):
            raise ValueError("exponent vector length does not match the group")
        self.group = group
        self.exps = exps

    def __mul__(self, other: "Character") -> "Character":
        if self.group != other.group:
            raise ValueError("characters of different groups")
        return Character(self.group, [a + b for a, b in zip(self.exps, other.exps)])

    def inverse(self) -> "Character":
        return Character(self.group, [-a for a in self.exps])

    def __pow__(self, n: int) -> "Character":
        return Character(self.group, [a * n for a in self.exps])

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def order(self) -> int:
        return reduce(
            math.lcm,
            (m // math.gcd(c, m) for c, m in zip(self.exps, self.group.factors)),
            1,
        )

    def pairing_exponent(self, g: GroupElement) -> int:
        """t with chi(g) = zeta_L^t, L = exp(G); exact, field-free."""
        if g.group != self.group:
            raise ValueError("character and element of different groups")
        L = self.group.exponent
        return sum(c * e * (L // m) for c, e, m in zip(self.exps, g.exps, self.group.factors)) % L

    def __eq__(self, other):
        return isinstance(other, Character) and other.group == self.group and other.exps == self.exps

    def __hash__(self):
        return hash(("chi", self.group.factors, self.exps))

    def __repr__(self):
        return "chi" + str(list(self.exps))


def evaluate(chi: Character, g: GroupElement, fld: CycloField) -> Cyclo:
    """chi(g) as an element of Q(zeta_M); requires exp(G) | M."""
    L = chi.group.exponent
    if fld.m % L:
        raise ValueError(f"field conductor {fld.m} is not divisible by exp(G) = {L}")
    return fld.zeta(chi.pairing_exponent(g) * (fld.m // L))


class CharSubgroup:
    """The subgroup X of the character group generated by a list of characters.

    Carries the coset partition of the full character group and the transversal
    of lexicographically least representatives, in a deterministic order.
    """

    def __init__(self, group: AbelianGroup, generators):
        self.group = group
        self.generators = list(generators)
        seen = {group.trivial_character()}
        frontier = [group.trivial_character()]
        while frontier:
            nxt = []
            for x in frontier:
                for gen in self.generators:
                    y = x * gen
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        self.elements = sorted(seen, key=lambda c: c.exps)
        self.order = len(self.elements)
        cosets = []
        transversal = []
        assigned: dict[Character, int] = {}
        for chi in group.characters():
            if chi in assigned:
                continue
            k = len(cosets)
            coset = sorted((chi * x for x in self.elements), key=lambda c: c.exps)
            for mu in coset:
                assigned[mu] = k
            cosets.append(coset)
            transversal.append(coset[0])
        self.cosets = cosets
        self.transversal = transversal
        self._coset_index = assigned

    def contains(self, chi: Character) -> bool:
        return self._coset_index.get(chi) == self._coset_index[self.group.trivial_character()]

    def coset_index(self, chi: Character) -> int:
        return self._coset_index[chi]

    def __len__(self):
        return self.order


def perp_of_characters(chars, group: AbelianGroup) -> list[GroupElement]:
    """X^perp = {g in G : chi(g) = 1 for all chi in X}, lex-sorted."""
    gens = list(chars.generators) if isinstance(chars, CharSubgroup) else list(chars)
    out = [g for g in group.elements() if all(c.pairing_exponent(g) == 0 for c in gens)]
    return sorted(out, key=lambda g: g.exps)


def perp_of_elements(elements, group: AbelianGroup) -> list[Character]:
    """S^perp = {lambda in Ghat : lambda(s) = 1 for all s in S}, lex-sorted."""
    elems = list(elements)
    out = [c for c in group.characters() if all(c.pairing_exponent(s) == 0 for s in elems)]
    return sorted(out, key=lambda c: c.exps)


class SubgroupCharacter:
    """The restriction of a character to a subgroup, as an explicit value table."""

    def __init__(self, chi: Character, elements):
        self.elements = sorted(elements, key=lambda g: g.exps)
        self.values = {g.exps: chi.pairing_exponent(g) for g in self.elements}

    def value_exponent(self, g: GroupElement) -> int:
        return self.values[g.exps]

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values.values())

    def __eq__(self, other):
        return isinstance(other, SubgroupCharacter) and other.values == self.values

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))


def restrict_character(chi: Character, elements) -> SubgroupCharacter:
    return SubgroupCharacter(chi, elements)


def group_algebra(fld: CycloField, group: AbelianGroup, check: bool = True) -> StructAlgebra:
    """kG as a structure-constant algebra on the lex-ordered element basis."""
    elems = group.elements()
    index = {g.exps: i for i, g in enumerate(elems)}
    table = {}
    for i, g in enumerate(elems):
        for j, h in enumerate(elems):
            table[(i, j)] = ((index[(g * h).exps], fld.one),)
    unit = [fld.zero] * len(elems)
    unit[index[group.identity().exps]] = fld.one
    alg = StructAlgebra(fld, [g.exps for g in elems], table=table, unit_coeffs=unit)
    if check:
        alg.check_associativity()
    alg.group = group
    alg.element_index = index
    return alg


def idempotent(alg: StructAlgebra, lam: Character) -> AlgebraElement:
    """e_lambda = |G|^{-1} sum_g lambda(g^{-1}) g in kG."""
    group: AbelianGroup = alg.group
    fld = alg.field
    coeffs = []
    for exps in alg.basis_labels:
        g = group.element(exps)
        coeffs.append(evaluate(lam, g.inverse(), fld).scale(1, group.order))
    return alg.element(coeffs)


def coset_idempotent(alg: StructAlgebra, lam: Character, X: CharSubgroup) -> AlgebraElement:
    """e_{lambda X} = sum of e_mu over the coset lambda X."""
    out = alg.zero()
    for x in X.elements:
        out = out + idempotent(alg, lam * x)
    return out
