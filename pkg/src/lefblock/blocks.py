"""p-modular block data: projective covers, block projection, Cartan matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .chartab import CharacterTable, ClassFunction, ValidationReport, VirtualCharacter
from .errors import TableMismatch, UnknownBlock

__all__ = [
    "Block",
    "BlockPart",
    "BrauerBlockData",
    "PatternVerdict",
    "block_project",
    "cartan",
    "defect_gap_check",
    "p_valuation",
    "phi_character",
    "validate_brauer",
]


def p_valuation(n: int, p: int) -> int:
    """Exponent of p in n; n must be nonzero."""
    if n == 0:
        raise ValueError("valuation of zero")
    n, v = abs(n), 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class Block:
    id: int
    defect: int


@dataclass(frozen=True, eq=False)
class BrauerBlockData:
    """Decomposition matrix of ``table`` at prime ``p``, split into blocks.

    ``D[i][j]`` is the multiplicity of Brauer character j in ordinary
    character i.  Block ids start at 1 (principal).
    """

    table: CharacterTable
    p: int
    blocks: tuple[Block, ...]
    ordinary_to_block: tuple[int, ...]
    brauer_names: tuple[str, ...]
    brauer_to_block: tuple[int, ...]
    D: tuple[tuple[int, ...], ...]
    _by_id: dict[int, Block] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {b.id: b for b in self.blocks})

    def block(self, bid: int) -> Block:
        try:
            return self._by_id[bid]
        except KeyError:
            raise UnknownBlock(f"no block {bid} at p={self.p} for {self.table.ident}") from None

    def rows(self, bid: int) -> list[int]:
        self.block(bid)
        return [i for i, b in enumerate(self.ordinary_to_block) if b == bid]

    def cols(self, bid: int) -> list[int]:
        self.block(bid)
        return [j for j, b in enumerate(self.brauer_to_block) if b == bid]

    def brauer_index(self, name: str) -> int:
        if name in self.brauer_names:
            return self.brauer_names.index(name)
        for prefix in ("phi_", "phi", "φ_", "φ"):
            if name.startswith(prefix) and name[len(prefix):].isdigit():
                j = int(name[len(prefix):]) - 1
                if 0 <= j < len(self.brauer_names):
                    return j
        raise KeyError(f"no Brauer character {name!r}")

    def block_matrix(self, bid: int) -> sympy.Matrix:
        r, c = self.rows(bid), self.cols(bid)
        return sympy.Matrix(len(r), len(c), lambda i, j: self.D[r[i]][c[j]])


@dataclass(frozen=True, eq=False)
class BlockPart:
    block_id: int
    mults: VirtualCharacter
    values: ClassFunction

    @property
    def degree(self) -> int:
        return self.mults.degree

    def block_mults(self, b: BrauerBlockData) -> list[int]:
        return [self.mults.mults[i] for i in b.rows(self.block_id)]


@dataclass(frozen=True)
class PatternVerdict:
    max_nonprincipal_defect: int | None
    gap: int
    equal: bool

    def __str__(self) -> str:
        if self.max_nonprincipal_defect is None:
            return f"no non-principal part vs gap {self.gap}: N/A"
        state = "equal" if self.equal else "VIOLATED"
        return f"defect {self.max_nonprincipal_defect} vs gap {self.gap}: {state}"


def phi_character(b: BrauerBlockData, j: int | str) -> VirtualCharacter:
    """Character of the projective cover of the j-th Brauer character (0-based or by name)."""
    if isinstance(j, str):
        j = b.brauer_index(j)
    if not 0 <= j < len(b.brauer_names):
        raise IndexError(f"Brauer index {j} out of range")
    return VirtualCharacter(b.table, tuple(row[j] for row in b.D))


def block_project(b: BrauerBlockData, v: VirtualCharacter, bid: int) -> BlockPart:
    if v.table.ident != b.table.ident:
        raise TableMismatch(f"block data for {b.table.ident}, character on {v.table.ident}")
    b.block(bid)
    mults = tuple(m if b.ordinary_to_block[i] == bid else 0 for i, m in enumerate(v.mults))
    vc = VirtualCharacter(v.table, mults)
    return BlockPart(bid, vc, vc.class_function())


def cartan(b: BrauerBlockData, bid: int) -> sympy.Matrix:
    Db = b.block_matrix(bid)
    return Db.T * Db


def _is_power(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def validate_brauer(b: BrauerBlockData) -> ValidationReport:
    """Check the structural invariants of decomposition data."""
    t, p = b.table, b.p
    rep = ValidationReport(f"brauer {t.ident} mod {p}")
    k = len(t.irreducibles)
    if t.order % p:
        rep.add(f"{p} does not divide the group order")
    if len(b.ordinary_to_block) != k:
        rep.add("block assignment has wrong length")
        return rep
    if len(b.D) != k or any(len(r) != len(b.brauer_names) for r in b.D):
        rep.add("decomposition matrix has wrong shape")
        return rep
    if len(b.brauer_to_block) != len(b.brauer_names):
        rep.add("Brauer block assignment has wrong length")
        return rep
    ids = {blk.id for blk in b.blocks}
    if 1 not in ids:
        rep.add("no principal block")
    for bid in set(b.ordinary_to_block) | set(b.brauer_to_block):
        if bid not in ids:
            rep.add(f"undeclared block {bid}")
    if rep.violations:
        return rep
    if b.ordinary_to_block[0] != 1:
        rep.add("trivial character is not in block 1")
    for i, row in enumerate(b.D):
        for j, d in enumerate(row):
            if d < 0:
                rep.add(f"negative entry D[{i + 1},{j + 1}]")
            elif d and b.ordinary_to_block[i] != b.brauer_to_block[j]:
                rep.add(
                    f"D[{i + 1},{j + 1}] = {d} links {t.irr_names[i]} (block {b.ordinary_to_block[i]}) "
                    f"to {b.brauer_names[j]} (block {b.brauer_to_block[j]})"
                )
    vg = p_valuation(t.order, p)
    for blk in b.blocks:
        rows = b.rows(blk.id)
        if not rows:
            rep.add(f"block {blk.id} has no ordinary characters")
            continue
        d = vg - min(p_valuation(t.degree(i), p) for i in rows)
        if d != blk.defect:
            rep.add(f"block {blk.id}: stored defect {blk.defect}, recomputed {d}")
        cols = b.cols(blk.id)
        if not cols:
            rep.add(f"block {blk.id} has no Brauer characters")
            continue
        Db = b.block_matrix(blk.id)
        if Db.rank() != len(cols):
            rep.add(f"block {blk.id}: decomposition columns are linearly dependent")
            continue
        det = (Db.T * Db).det()
        if not _is_power(int(det), p):
            rep.add(f"block {blk.id}: Cartan determinant {det} is not a power of {p}")
    return rep


def defect_gap_check(b: BrauerBlockData, mults: VirtualCharacter) -> PatternVerdict:
    """Compare the largest defect of a nonzero non-principal part with the valuation gap."""
    deg = mults.degree
    gap = p_valuation(b.table.order, b.p) - p_valuation(deg, b.p)
    best = None
    for blk in b.blocks:
        if blk.id == 1:
            continue
        if any(mults.mults[i] for i in b.rows(blk.id)):
            best = blk.defect if best is None else max(best, blk.defect)
    return PatternVerdict(best, gap, best == gap)
