"""Character tables, class functions, and induction / restriction / inflation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cyclo import Cyclotomic, NotRational
from .errors import AmbiguousName, NotVirtual, TableMismatch, UnknownName

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "ClassFusion",
    "ConjugacyClass",
    "QuotientMap",
    "ValidationReport",
    "VirtualCharacter",
    "decompose",
    "induce",
    "inflate",
    "inner_product",
    "parse_combination",
    "restrict",
    "validate_table",
]


@dataclass(frozen=True)
class ConjugacyClass:
    name: str
    size: int
    element_order: int
    centralizer_order: int


_ALIAS = re.compile(r"^(?:chi_?|χ_?|X\.)(\d+)$")


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """Ordinary character table of a finite group.

    Irreducibles are addressed by name (``"20a"``) or by 1-based position
    (``"chi_14"``, ``"χ14"``); positions follow the stored row order.
    """

    ident: str
    group_name: str
    order: int
    classes: tuple[ConjugacyClass, ...]
    power_maps: dict[int, tuple[int, ...]]
    irr_names: tuple[str, ...]
    irreducibles: tuple[tuple[Cyclotomic, ...], ...]
    source: str = ""
    _name_index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_name_index", {n: i for i, n in enumerate(self.irr_names)})

    def __repr__(self) -> str:
        return f"<CharacterTable {self.ident} ({len(self.classes)} classes)>"

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    @property
    def class_names(self) -> list[str]:
        return [c.name for c in self.classes]

    def class_index(self, name: str) -> int:
        for i, c in enumerate(self.classes):
            if c.name.lower() == name.lower():
                return i
        raise UnknownName(f"no class {name!r} in {self.ident}")

    def degree(self, i: int) -> int:
        return int(self.irreducibles[i][0])

    @property
    def degrees(self) -> list[int]:
        return [self.degree(i) for i in range(len(self.irreducibles))]

    def irr_index(self, name: str) -> int:
        """Index of an irreducible given its name or positional alias."""
        if name in self._name_index:
            return self._name_index[name]
        m = _ALIAS.match(name)
        if m:
            i = int(m.group(1)) - 1
            if 0 <= i < len(self.irreducibles):
                return i
        raise UnknownName(f"no irreducible {name!r} in {self.ident}")

    def character(self, i: int | str) -> "ClassFunction":
        if isinstance(i, str):
            i = self.irr_index(i)
        return ClassFunction(self, self.irreducibles[i])

    def irr(self) -> list["ClassFunction"]:
        return [ClassFunction(self, row) for row in self.irreducibles]

    def trivial(self) -> "ClassFunction":
        return ClassFunction(self, (Cyclotomic(1),) * self.nclasses)

    def zero(self) -> "ClassFunction":
        return ClassFunction(self, (Cyclotomic(0),) * self.nclasses)

    def p_part(self, p: int) -> int:
        n, q = self.order, 1
        while n % p == 0:
            n //= p
            q *= p
        return q


def _check_same(a: "CharacterTable", b: "CharacterTable", what: str) -> None:
    if a is not b and a.ident != b.ident:
        raise TableMismatch(f"{what}: table {a.ident} does not match {b.ident}")


class ClassFunction:
    """A class function, stored as one cyclotomic value per conjugacy class."""

    __slots__ = ("table", "values")

    def __init__(self, table: CharacterTable, values: Iterable):
        vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic(v) for v in values)
        if len(vals) != table.nclasses:
            raise ValueError(
                f"class function has {len(vals)} values, table {table.ident} has {table.nclasses} classes"
            )
        self.table = table
        self.values = vals

    def __repr__(self) -> str:
        return f"ClassFunction({self.table.ident}, [{', '.join(map(str, self.values))}])"

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        if isinstance(i, str):
            i = self.table.class_index(i)
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.table.ident == other.table.ident and self.values == other.values

    def __hash__(self):
        return hash((self.table.ident, self.values))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _check_same(self.table, other.table, "add")
        return ClassFunction(self.table, (a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _check_same(self.table, other.table, "subtract")
        return ClassFunction(self.table, (a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(self.table, (-a for a in self.values))

    def __mul__(self, k):
        if isinstance(k, ClassFunction):
            _check_same(self.table, k.table, "multiply")
            return ClassFunction(self.table, (a * b for a, b in zip(self.values, k.values)))
        return ClassFunction(self.table, (a * k for a in self.values))

    __rmul__ = __mul__

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.table, (a.conjugate() for a in self.values))

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.values)

    def integer_values(self) -> list[int]:
        """Values as Python ints; raises NotRational if any value is not an integer."""
        return [int(v) for v in self.values]


@dataclass(frozen=True, eq=False)
class VirtualCharacter:
    """Integer combination of the irreducibles of a table."""

    table: CharacterTable
    mults: tuple[int, ...]

    def __post_init__(self):
        if len(self.mults) != len(self.table.irreducibles):
            raise ValueError("multiplicity vector has wrong length")
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    def __eq__(self, other) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.table.ident == other.table.ident and self.mults == other.mults

    def __hash__(self):
        return hash((self.table.ident, self.mults))

    def __repr__(self) -> str:
        return f"VirtualCharacter({self.table.ident}, {self.describe()})"

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        _check_same(self.table, other.table, "add")
        return VirtualCharacter(self.table, tuple(a + b for a, b in zip(self.mults, other.mults)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        _check_same(self.table, other.table, "subtract")
        return VirtualCharacter(self.table, tuple(a - b for a, b in zip(self.mults, other.mults)))

    def __neg__(self) -> "VirtualCharacter":
        return VirtualCharacter(self.table, tuple(-a for a in self.mults))

    def __mul__(self, k: int) -> "VirtualCharacter":
        return VirtualCharacter(self.table, tuple(k * a for a in self.mults))

    __rmul__ = __mul__

    @property
    def degree(self) -> int:
        return sum(m * d for m, d in zip(self.mults, self.table.degrees))

    def class_function(self) -> ClassFunction:
        t = self.table
        vals = [Cyclotomic(0)] * t.nclasses
        for m, row in zip(self.mults, t.irreducibles):
            if m:
                vals = [v + r * m for v, r in zip(vals, row)]
        return ClassFunction(t, vals)

    def describe(self, positional: bool = False) -> str:
        """Human-readable sum such as ``chi_14 + 2*chi_15``."""
        parts = []
        for i, m in enumerate(self.mults):
            if not m:
                continue
            name = f"chi_{i + 1}" if positional else self.table.irr_names[i]
            term = name if abs(m) == 1 else f"{abs(m)}*{name}"
            if not parts:
                parts.append(term if m > 0 else "-" + term)
            else:
                parts.append(("+ " if m > 0 else "- ") + term)
        return " ".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class ClassFusion:
    """Map from the classes of a subgroup H to the classes of G."""

    ident: str
    from_table: CharacterTable
    to_table: CharacterTable
    map: tuple[int, ...]

    def compose(self, outer: "ClassFusion") -> "ClassFusion":
        """Fusion H -> G from H -> K (self) and K -> G (outer)."""
        _check_same(self.to_table, outer.from_table, "compose")
        return ClassFusion(
            f"{self.ident}*{outer.ident}",
            self.from_table,
            outer.to_table,
            tuple(outer.map[i] for i in self.map),
        )

    @property
    def index(self) -> int:
        return self.to_table.order // self.from_table.order


@dataclass(frozen=True, eq=False)
class QuotientMap:
    """Map from the classes of H onto the classes of a factor group Q = H/N."""

    ident: str
    from_table: CharacterTable
    quotient_table: CharacterTable
    map: tuple[int, ...]


@dataclass
class ValidationReport:
    subject: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, msg: str) -> None:
        self.violations.append(msg)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: pass"
        return f"{self.subject}: {len(self.violations)} violation(s)\n  " + "\n  ".join(self.violations)


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def validate_table(t: CharacterTable) -> ValidationReport:
    """Check every structural invariant of a character table; never raises."""
    rep = ValidationReport(f"table {t.ident}")
    k = t.nclasses
    cl = t.classes
    if len(t.irreducibles) != k:
        rep.add(f"{len(t.irreducibles)} irreducibles but {k} classes")
    if len(t.irr_names) != len(t.irreducibles):
        rep.add("irreducible name list has wrong length")
    if len(set(t.irr_names)) != len(t.irr_names):
        rep.add("duplicate irreducible names")
    if not cl or cl[0].element_order != 1:
        rep.add("first class is not the identity class")
    if sum(1 for c in cl if c.element_order == 1) != 1:
        rep.add("expected exactly one class of elements of order 1")
    for c in cl:
        if c.size * c.centralizer_order != t.order:
            rep.add(f"class {c.name}: size * centralizer order != group order")
    if sum(c.size for c in cl) != t.order:
        rep.add("class sizes do not sum to the group order")
    for i, row in enumerate(t.irreducibles):
        if len(row) != k:
            rep.add(f"irreducible {i + 1} has {len(row)} values")
    if rep.violations:
        return rep

    degs = []
    for i, row in enumerate(t.irreducibles):
        try:
            d = int(row[0])
        except NotRational:
            d = 0
        if d <= 0:
            rep.add(f"irreducible {t.irr_names[i]} (chi_{i + 1}): degree is not a positive integer")
        degs.append(d)
    if sum(d * d for d in degs) != t.order:
        rep.add("sum of squared degrees != group order")

    conj = [[v.conjugate() for v in row] for row in t.irreducibles]
    cents = [c.centralizer_order for c in cl]
    # row orthogonality
    for i in range(k):
        for j in range(i, k):
            s = Cyclotomic(0)
            for c in range(k):
                s = s + t.irreducibles[i][c] * conj[j][c] / cents[c]
            want = 1 if i == j else 0
            if s != want:
                rep.add(
                    f"row orthogonality violated at ({t.irr_names[i]}, {t.irr_names[j]}): "
                    f"<chi_{i + 1}, chi_{j + 1}> = {s}"
                )
    # column orthogonality
    for c in range(k):
        for d in range(c, k):
            s = Cyclotomic(0)
            for i in range(k):
                s = s + t.irreducibles[i][c] * conj[i][d]
            want = cents[c] if c == d else 0
            if s != want:
                rep.add(f"column orthogonality violated at ({cl[c].name}, {cl[d].name})")
    # power maps
    for q in _prime_divisors(t.order):
        if q not in t.power_maps:
            rep.add(f"missing {q}-power map")
    for q, pm in sorted(t.power_maps.items()):
        if len(pm) != k:
            rep.add(f"{q}-power map has wrong length")
            continue
        for c, img in enumerate(pm):
            o = cl[c].element_order
            if not 0 <= img < k or cl[img].element_order != o // gcd(q, o):
                rep.add(f"{q}-power map inconsistent at class {cl[c].name}")
            elif o % q and any(
                row[img] != row[c].galois(q) for row in t.irreducibles
            ):
                rep.add(f"{q}-power map values inconsistent at class {cl[c].name}")
    return rep


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """<a, b> = sum over classes of a(c) * conj(b(c)) / |C(c)|."""
    _check_same(a.table, b.table, "inner_product")
    s = Cyclotomic(0)
    for x, y, c in zip(a.values, b.values, a.table.classes):
        if x and y:
            s = s + x * y.conjugate() / c.centralizer_order
    return s


def decompose(a: ClassFunction) -> VirtualCharacter:
    """Multiplicities of the irreducibles in ``a``; raises NotVirtual if not integral."""
    t = a.table
    mults = []
    for i, chi in enumerate(t.irr()):
        ip = inner_product(a, chi)
        try:
            r = ip.rational()
        except NotRational:
            raise NotVirtual(f"<a, {t.irr_names[i]}> = {ip} is irrational") from None
        if r.denominator != 1:
            raise NotVirtual(f"<a, {t.irr_names[i]}> = {r} is not an integer")
        mults.append(r.numerator)
    v = VirtualCharacter(t, tuple(mults))
    if v.class_function() != a:
        raise NotVirtual("reconstruction from multiplicities does not match")
    return v


def induce(a: ClassFunction, f: ClassFusion) -> ClassFunction:
    """Induce a class function of H to G along the class fusion H -> G."""
    _check_same(a.table, f.from_table, "induce")
    H, G = f.from_table, f.to_table
    sums = [Cyclotomic(0)] * G.nclasses
    for k, (val, c) in enumerate(zip(a.values, H.classes)):
        if val:
            img = f.map[k]
            sums[img] = sums[img] + val / c.centralizer_order
    return ClassFunction(G, (s * c.centralizer_order for s, c in zip(sums, G.classes)))


def restrict(a: ClassFunction, f: ClassFusion) -> ClassFunction:
    _check_same(a.table, f.to_table, "restrict")
    return ClassFunction(f.from_table, (a.values[i] for i in f.map))


def inflate(a: ClassFunction, q: QuotientMap) -> ClassFunction:
    _check_same(a.table, q.quotient_table, "inflate")
    return ClassFunction(q.from_table, (a.values[i] for i in q.map))


_COMB_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*)?\s*([^\s+\-*]+)\s*")
_ATLAS = re.compile(r"^(\d+)([a-z]+)$")


def _resolve(t: CharacterTable, token: str) -> dict[int, int]:
    """Interpret one name token; doubled letters mean multiplicity, ``32ab`` a sum."""
    exact = None
    try:
        exact = t.irr_index(token)
    except UnknownName:
        pass
    split = None
    m = _ATLAS.match(token)
    if m and len(m.group(2)) > 1:
        deg, letters = m.groups()
        try:
            idx: dict[int, int] = {}
            for ch in letters:
                i = t.irr_index(deg + ch)
                idx[i] = idx.get(i, 0) + 1
            split = idx
        except UnknownName:
            split = None
    if exact is not None and split is not None:
        raise AmbiguousName(f"{token!r} is both a name and a combination in {t.ident}")
    if exact is not None:
        return {exact: 1}
    if split is not None:
        return split
    raise UnknownName(f"no irreducible {token!r} in {t.ident}")


def parse_combination(t: CharacterTable, expr: str) -> VirtualCharacter:
    """Parse an Atlas-style combination such as ``1a+6a+20aa+24a`` or ``3*20a - 5d``."""
    if not expr.strip():
        raise ValueError("empty combination")
    mults = [0] * len(t.irreducibles)
    pos = 0
    first = True
    while pos < len(expr):
        m = _COMB_TERM.match(expr, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse combination {expr!r} at offset {pos}")
        sign, coeff, token = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {expr!r} at offset {pos}")
        first = False
        k = int(coeff) if coeff else 1
        if sign == "-":
            k = -k
        for i, mult in _resolve(t, token).items():
            mults[i] += k * mult
        pos = m.end()
    return VirtualCharacter(t, tuple(mults))


def sum_class_functions(table: CharacterTable, parts: Sequence[ClassFunction]) -> ClassFunction:
    out = table.zero()
    for p in parts:
        out = out + p
    return out


def rational_vector(cf: ClassFunction) -> list[Fraction]:
    return [v.rational() for v in cf.values]
