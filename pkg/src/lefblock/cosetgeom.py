"""Brute-force coset complexes and fixed-point Euler characteristics.

An independent check on :mod:`lefschetz`: the Lefschetz character evaluated
at g is the reduced Euler characteristic of the subcomplex fixed by g.
Only meant for small explicit permutation groups.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .chartab import CharacterTable, ClassFunction
from .errors import BoundExceeded

__all__ = [
    "CosetComplex",
    "PermGroupSpec",
    "Permutation",
    "build_complex",
    "conjugacy_classes",
    "enumerate_cosets",
    "fixed_subcomplex_euler",
    "group_elements",
    "lefschetz_by_fixed_points",
    "parse_cycles",
]

DEFAULT_BOUND = 10**7


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {0..n-1}; ``p * q`` applies q first."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        a = self.images
        return Permutation(tuple(a[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def order(self) -> int:
        from math import lcm

        seen, out = set(), 1
        for i in range(len(self.images)):
            if i in seen:
                continue
            n, j = 0, i
            while j not in seen:
                seen.add(j)
                j = self.images[j]
                n += 1
            out = lcm(out, n)
        return out

    def cycles(self) -> str:
        seen, parts = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                seen.add(i)
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts) or "()"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation on 0-based points, e.g. ``(0 1 2)(3 4)`` or ``()``."""
    img = list(range(degree))
    s = text.strip()
    if _CYCLE.sub("", s).strip():
        raise ValueError(f"bad cycle notation {text!r}")
    for body in _CYCLE.findall(s):
        pts = [int(x) for x in body.replace(",", " ").split()]
        if len(set(pts)) != len(pts) or any(not 0 <= x < degree for x in pts):
            raise ValueError(f"bad cycle ({body}) for degree {degree}")
        for k, x in enumerate(pts):
            img[x] = pts[(k + 1) % len(pts)]
    return Permutation(tuple(img))


@dataclass(frozen=True, eq=False)
class PermGroupSpec:
    ident: str
    degree: int
    generators: tuple[Permutation, ...]
    subgroups: tuple[tuple[str, tuple[Permutation, ...]], ...]
    class_reps: tuple[tuple[str, Permutation], ...] = ()
    table: str | None = None


def group_elements(gens, degree: int, bound: int = DEFAULT_BOUND) -> list[Permutation]:
    """All elements of <gens>, by breadth-first closure."""
    e = Permutation.identity(degree)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s * x
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > bound:
                    raise BoundExceeded(f"group has more than {bound} elements")
                queue.append(y)
    return out


@dataclass(eq=False)
class _Cosets:
    reps: list[Permutation]
    index_of: dict[Permutation, int]


def _cosets(gens, sub_gens, degree: int, bound: int) -> _Cosets:
    H = group_elements(sub_gens, degree, bound)
    index_of: dict[Permutation, int] = {}
    reps: list[Permutation] = []

    def add(g: Permutation) -> bool:
        if g in index_of:
            return False
        members = [g * h for h in H]
        k = len(reps)
        for x in members:
            index_of[x] = k
        reps.append(min(members))
        if len(index_of) > bound:
            raise BoundExceeded(f"coset enumeration exceeded {bound} elements")
        return True

    e = Permutation.identity(degree)
    add(e)
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s * x
            if add(y):
                queue.append(y)
    return _Cosets(reps, index_of)


def enumerate_cosets(spec: PermGroupSpec, i: int | str, bound: int = DEFAULT_BOUND) -> list[Permutation]:
    """Left cosets gH_i, each given by its least element."""
    name, sub = _subgroup(spec, i)
    return _cosets(spec.generators, sub, spec.degree, bound).reps


def _subgroup(spec: PermGroupSpec, i: int | str):
    if isinstance(i, int):
        return spec.subgroups[i]
    for name, gens in spec.subgroups:
        if name == i:
            return name, gens
    raise KeyError(f"no subgroup {i!r} in {spec.ident}")


@dataclass(eq=False)
class CosetComplex:
    types: tuple[str, ...]
    cosets: tuple[_Cosets, ...]
    simplices: list[list[tuple[tuple[int, int], ...]]] = field(default_factory=list)

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def vertex_fixed(self, g: Permutation, v: tuple[int, int]) -> bool:
        t, k = v
        c = self.cosets[t]
        return c.index_of[g * c.reps[k]] == k


def build_complex(spec: PermGroupSpec, bound: int = DEFAULT_BOUND) -> CosetComplex:
    """Simplices are sets of cosets of distinct types with a common element."""
    cos = tuple(_cosets(spec.generators, sub, spec.degree, bound) for _, sub in spec.subgroups)
    G = group_elements(spec.generators, spec.degree, bound)
    r = len(cos)
    faces: list[set] = [set() for _ in range(r)]
    for g in G:
        vert = [(t, cos[t].index_of[g]) for t in range(r)]
        for d in range(1, r + 1):
            for J in combinations(vert, d):
                faces[d - 1].add(J)
    cx = CosetComplex(tuple(n for n, _ in spec.subgroups), cos)
    cx.simplices = [sorted(f) for f in faces]
    return cx


def fixed_subcomplex_euler(c: CosetComplex, g: Permutation) -> int:
    """Reduced Euler characteristic of the subcomplex fixed vertexwise by g."""
    fixed = {}
    total = -1
    for d, faces in enumerate(c.simplices):
        n = 0
        for s in faces:
            ok = True
            for v in s:
                f = fixed.get(v)
                if f is None:
                    f = fixed[v] = c.vertex_fixed(g, v)
                if not f:
                    ok = False
                    break
            n += ok
        total += (-1) ** d * n
    return total


def conjugacy_classes(spec: PermGroupSpec, bound: int = 10**5) -> list[list[Permutation]]:
    """Exhaustive conjugacy partition, identity class first."""
    G = group_elements(spec.generators, spec.degree, bound)
    left = set(G)
    out = []
    for g in sorted(G, key=lambda x: (x.order(), x)):
        if g not in left:
            continue
        cls = set()
        queue = deque([g])
        cls.add(g)
        while queue:
            x = queue.popleft()
            for s in spec.generators:
                y = s * x * s.inverse()
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        left -= cls
        out.append(sorted(cls))
    return out


def lefschetz_by_fixed_points(
    spec: PermGroupSpec,
    reps: list[Permutation] | None = None,
    table: CharacterTable | None = None,
    bound: int = DEFAULT_BOUND,
) -> ClassFunction | list[int]:
    """Values chi~(Delta^g) at the class representatives.

    With ``table`` the result is a ClassFunction whose columns follow the
    spec's class representatives, which must be listed in table order.
    """
    if reps is None:
        reps = [r for _, r in spec.class_reps] or [c[0] for c in conjugacy_classes(spec)]
    cx = build_complex(spec, bound)
    vals = [fixed_subcomplex_euler(cx, g) for g in reps]
    if table is None:
        return vals
    if len(vals) != table.nclasses:
        raise ValueError(f"{len(vals)} representatives for {table.nclasses} classes")
    return ClassFunction(table, vals)
