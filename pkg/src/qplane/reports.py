"""Report dataclasses shared by the unlinked and linked classifiers.

Labels are plain strings (deterministic, derived from character exponent
vectors or root-of-unity exponents) so reports serialize cleanly and diffs
against the oracle are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .cyclo import Cyclo, discrete_log


def chi_label(exps) -> str:
    return "chi[" + ",".join(str(e) for e in exps) + "]"


def scalar_label(c: Cyclo) -> str:
    """Compact exact label: zeta-power when possible, else the coefficient form."""
    j = discrete_log(c)
    if j is not None:
        return "1" if j == 0 else f"z^{j}"
    if c.is_rational():
        return str(c.as_rational())
    return "(" + repr(c) + ")"


@dataclass
class QuiverDescription:
    vertices: list[str]
    arrows: list[tuple[str, str, int, str]]  # (source, target, multiplicity, generator label)
    relations: list[str] = dfield(default_factory=list)

    def arrow_count(self) -> int:
        return sum(m for (_s, _t, m, _g) in self.arrows)

    def validate(self):
        vs = set(self.vertices)
        for s, t, mult, _g in self.arrows:
            if s not in vs or t not in vs:
                raise ValueError(f"arrow endpoint {s}->{t} is not a vertex")
            if mult < 1:
                raise ValueError("arrow multiplicity must be positive")


@dataclass
class SimpleInfo:
    label: str
    dim: int
    weights: dict | None = None  # census of G-weights, when meaningful


@dataclass
class ProjectiveInfo:
    label: str  # label of its simple top
    dim: int
    multiplicity: int  # how many copies occur in the regular module
    loewy: list[list[tuple[str, int]]] | None = None  # per layer: (simple label, mult)


@dataclass
class BlockInfo:
    label: str
    dim: int
    rep_type: str  # semisimple | finite | tame | wild
    simples: list[str]
    radical_dim: int
    idempotent: str
    quiver: QuiverDescription | None = None


@dataclass
class ClassReport:
    label: str  # lex-least character of the coset
    dim: int
    case: str  # e.g. "unlinked nilpotent" (after per-class re-tagging)
    simples: list[SimpleInfo]
    projectives: list[ProjectiveInfo]
    blocks: list[BlockInfo]
    radical_dim: int
    notes: dict = dfield(default_factory=dict)

    def simple_dims(self) -> list[int]:
        return sorted(s.dim for s in self.simples)

    def projective_dims(self) -> list[int]:
        return sorted(p.dim for p in self.projectives)

    def block_dims(self) -> list[int]:
        return sorted(b.dim for b in self.blocks)

    def check_dimension_bookkeeping(self):
        """sum over blocks of sum(dim P * dim L) must equal the class dimension."""
        total = 0
        pdims = {p.label: (p.dim, p.multiplicity) for p in self.projectives}
        for s in self.simples:
            pd, _mult = pdims[s.label]
            total += pd * s.dim
        if total != self.dim:
            raise ArithmeticError(
                f"dimension bookkeeping fails: sum dimP*dimL = {total} != {self.dim}"
            )
