"""Reduced Lefschetz characters assembled from simplex-of-subgroups recipes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .blocks import p_valuation
from .chartab import (
    CharacterTable,
    ClassFunction,
    ClassFusion,
    VirtualCharacter,
    decompose,
    induce,
)
from .errors import RecipeInvalid, TableMismatch, ZeroDegree

__all__ = [
    "LefschetzReport",
    "RecipeTerm",
    "SimplexRecipe",
    "assemble",
    "subset_size",
    "two_adic_profile",
    "validate_recipe",
]


def _subset(label: str) -> tuple[str, ...]:
    if "," in label:
        parts = label.split(",")
    elif label.isdigit():
        parts = list(label)
    else:
        parts = [label]
    parts = [x.strip() for x in parts if x.strip()]
    if not parts:
        raise RecipeInvalid(f"empty subset label {label!r}")
    if len(set(parts)) != len(parts):
        raise RecipeInvalid(f"repeated index in subset label {label!r}")
    return tuple(parts)


def subset_size(label: str) -> int:
    """Cardinality of a subset label: ``"124"``, ``"6b"`` or ``"1,2,11"``."""
    return len(_subset(label))


@dataclass(frozen=True, eq=False)
class RecipeTerm:
    """One summand ``sign * [character]_{carrier} induced to G``."""

    label: str
    sign: int
    character: ClassFunction
    fusion: ClassFusion
    text: str = ""

    @property
    def carrier(self) -> CharacterTable:
        return self.character.table


@dataclass(frozen=True, eq=False)
class SimplexRecipe:
    ident: str
    group: CharacterTable
    terms: tuple[RecipeTerm, ...]
    reduced: bool = True
    negate: bool = False
    form: str = "full"


@dataclass(eq=False)
class LefschetzReport:
    """Assembled character plus the analysis filled in later by :mod:`projtest`."""

    recipe_id: str
    table: CharacterTable
    lam: ClassFunction
    mults: VirtualCharacter
    negated: bool = False
    prime: int | None = None
    blocks: list[Any] = field(default_factory=list)
    classification: str | None = None
    remark_witnesses: list[int] = field(default_factory=list)
    pattern: Any = None
    notes: list[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return int(self.lam.values[0])

    @property
    def values(self) -> list[int]:
        return self.lam.integer_values()

    def p_valuation_of_degree(self, p: int) -> int:
        if self.degree == 0:
            raise ZeroDegree("degree is zero")
        return p_valuation(self.degree, p)

    def p_valuation_of_group(self, p: int) -> int:
        return p_valuation(self.table.order, p)


def validate_recipe(r: SimplexRecipe) -> None:
    seen = set()
    for t in r.terms:
        key = frozenset(_subset(t.label))
        n = len(key)
        if key in seen:
            raise RecipeInvalid(f"subset {t.label} appears twice in {r.ident}")
        seen.add(key)
        want = 1 if n % 2 else -1
        if t.sign != want:
            raise RecipeInvalid(
                f"term {t.label} of {r.ident}: sign {t.sign:+d}, expected {want:+d} for |J| = {n}"
            )
        if t.fusion.from_table.ident != t.carrier.ident:
            raise RecipeInvalid(
                f"term {t.label}: fusion {t.fusion.ident} starts at {t.fusion.from_table.ident}, "
                f"carrier is {t.carrier.ident}"
            )
        if t.fusion.to_table.ident != r.group.ident:
            raise RecipeInvalid(f"term {t.label}: fusion {t.fusion.ident} does not end at {r.group.ident}")


def assemble(r: SimplexRecipe, negate: bool | None = None) -> LefschetzReport:
    """Signed sum of induced characters, minus the trivial character when reduced."""
    validate_recipe(r)
    G = r.group
    lam = G.zero()
    for t in r.terms:
        ind = induce(t.character, t.fusion)
        if ind.table.ident != G.ident:
            raise TableMismatch(f"term {t.label} induces to {ind.table.ident}")
        lam = lam + ind if t.sign > 0 else lam - ind
    if r.reduced:
        lam = lam - G.trivial()
    neg = r.negate if negate is None else negate
    if neg:
        lam = -lam
    for v in lam.values:
        int(v)  # certify integrality
    rep = LefschetzReport(r.ident, G, lam, decompose(lam), negated=neg)
    if neg:
        rep.notes.append("negated to present a positive degree")
    return rep


def two_adic_profile(rep: LefschetzReport, p: int = 2) -> tuple[int, int, int]:
    """(v_p(degree), v_p(|G|), gap); p defaults to 2, the case of interest."""
    a = rep.p_valuation_of_degree(p)
    b = rep.p_valuation_of_group(p)
    return a, b, b - a
