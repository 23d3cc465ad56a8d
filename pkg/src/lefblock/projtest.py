"""Projectivity tests and decompositions into projective-cover characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

import numpy as np
import sympy
from scipy.optimize import linprog

from .blocks import BlockPart, BrauerBlockData, block_project, defect_gap_check, p_valuation
from .chartab import ClassFunction, VirtualCharacter
from .errors import BoundExceeded, MissingBlockData, NegativeMultiplicity, NotVProjective
from .lefschetz import LefschetzReport

__all__ = [
    "BlockAnalysis",
    "CLASS_LABELS",
    "ProjExpression",
    "Verdict",
    "analyze",
    "classify",
    "closest_decomposition",
    "exact_vproj_solve",
    "p_test",
    "vanishing_test",
]

CLASS_LABELS = {
    "I-evidence": "Class I evidence (Lefschetz character v-projective; character-level only)",
    "II": "Class II (Principal Block Part V-Projective)",
    "III": "Class III (Principal Block Part Non-Projective)",
}


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witnesses: tuple[tuple[str, int], ...] = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        s = "pass" if self.passed else "fail"
        if self.witnesses:
            s += " " + ", ".join(f"({c}, {v})" for c, v in self.witnesses)
        if self.detail:
            s += f" [{self.detail}]"
        return s


@dataclass(frozen=True, eq=False)
class ProjExpression:
    """``sum a_j Phi(phi_j) + sum r_i chi_i`` in Brauer/ordinary coordinates."""

    mode: str
    brauer: BrauerBlockData
    phi_coeffs: tuple[int, ...]
    residue: tuple[int, ...]

    @property
    def residue_total(self) -> int:
        return sum(self.residue)

    def reconstruct(self) -> VirtualCharacter:
        b = self.brauer
        m = list(self.residue)
        for j, a in enumerate(self.phi_coeffs):
            if a:
                for i, row in enumerate(b.D):
                    m[i] += a * row[j]
        return VirtualCharacter(b.table, tuple(m))

    def describe(self) -> str:
        parts = []
        for j, a in enumerate(self.phi_coeffs):
            if a:
                parts.append((a, f"Phi(phi_{j + 1})"))
        for i, r in enumerate(self.residue):
            if r:
                parts.append((r, f"chi_{i + 1}"))
        if not parts:
            return "0"
        out = []
        for k, (c, name) in enumerate(parts):
            term = name if abs(c) == 1 else f"{abs(c)}{name}"
            if k == 0:
                out.append(term if c > 0 else "-" + term)
            else:
                out.append(("+ " if c > 0 else "- ") + term)
        return " ".join(out)


def _degree_of(x) -> int:
    if isinstance(x, (LefschetzReport,)):
        return x.degree
    if isinstance(x, BlockPart):
        return x.degree
    if isinstance(x, VirtualCharacter):
        return x.degree
    if isinstance(x, ClassFunction):
        return int(x.values[0])
    return int(x)


def p_test(x, p: int, group_order: int | None = None) -> Verdict:
    """Pass iff |G|_p divides the degree (a necessary condition for projectivity)."""
    if group_order is None:
        group_order = (x.table if hasattr(x, "table") else x.mults.table).order
    deg = _degree_of(x)
    need = p_valuation(group_order, p)
    if deg == 0:
        return Verdict(True, detail="degree 0")
    have = p_valuation(deg, p)
    return Verdict(have >= need, detail=f"v_{p}(degree) = {have}, v_{p}(|G|) = {need}")


def _is_p_power(n: int, p: int) -> bool:
    if n <= 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def vanishing_test(cf: ClassFunction, p: int) -> Verdict:
    """Pass iff cf vanishes on every class of nontrivial p-power order."""
    wit = []
    for c, v in zip(cf.table.classes, cf.values):
        if _is_p_power(c.element_order, p) and v:
            wit.append((c.name, int(v) if v.is_rational() else str(v)))
    return Verdict(not wit, tuple(wit))


def _part_vector(part, b: BrauerBlockData) -> tuple[list[int], list[int], list[int]]:
    rows, cols = b.rows(part.block_id), b.cols(part.block_id)
    full = part.mults.mults
    return rows, cols, [full[i] for i in rows]


def _expression(b, mode, cols, a, rows, r) -> ProjExpression:
    phi = [0] * len(b.brauer_names)
    for j, v in zip(cols, a):
        phi[j] = int(v)
    res = [0] * len(b.table.irreducibles)
    for i, v in zip(rows, r):
        res[i] = int(v)
    return ProjExpression(mode, b, tuple(phi), tuple(res))


def exact_vproj_solve(part: BlockPart, b: BrauerBlockData) -> ProjExpression:
    """Solve D_B a = m_B over Q; succeed iff the unique solution is integral."""
    rows, cols, m = _part_vector(part, b)
    outside = [i for i, v in enumerate(part.mults.mults) if v and i not in set(rows)]
    if outside:
        raise ValueError(f"part has multiplicities outside block {part.block_id}")
    if not cols:
        raise NotVProjective("no-rational-solution", f"block {part.block_id} has no Brauer characters")
    Db = b.block_matrix(part.block_id)
    try:
        sol, params = Db.gauss_jordan_solve(sympy.Matrix(m))
    except ValueError:
        raise NotVProjective("no-rational-solution", f"block {part.block_id}") from None
    if params.shape[0]:
        sol = sol.subs({s: 0 for s in params})
    a = list(sol)
    bad = [x for x in a if not x.is_integer]
    if bad:
        raise NotVProjective("non-integral-solution", f"block {part.block_id}: coefficients {a}")
    return _expression(b, "exact-virtual", cols, [int(x) for x in a], rows, [0] * len(rows))


def closest_decomposition(
    part: BlockPart, b: BrauerBlockData, node_limit: int = 2_000_000
) -> ProjExpression:
    """Nonnegative a, r with m = D a + r and sum(r) minimal.

    Ties go to larger sum(a), then to the lexicographically smallest a.
    Exhaustive branch-and-bound; the linear-programming relaxation supplies
    the pruning bound.
    """
    rows, cols, m = _part_vector(part, b)
    if any(x < 0 for x in m):
        raise NegativeMultiplicity(f"block {part.block_id} part has a negative multiplicity")
    if not cols:
        return _expression(b, "closest-nonnegative", cols, [], rows, m)
    D = np.array([[b.D[i][j] for j in cols] for i in rows], dtype=np.int64)
    nr, nc = D.shape
    w = D.sum(axis=0)
    degs = [sum(b.D[i][j] * b.table.degree(i) for i in range(len(b.D))) for j in cols]
    order = sorted(range(nc), key=lambda k: (-degs[k], k))

    best_key = None
    best_a = None
    nodes = 0

    def lp_bound(free: list[int], resid: np.ndarray) -> float:
        if not free:
            return 0.0
        res = linprog(
            -w[free].astype(float),
            A_ub=D[:, free].astype(float),
            b_ub=resid.astype(float),
            bounds=[(0, None)] * len(free),
            method="highs",
        )
        return -res.fun if res.status == 0 else float("inf")

    a = [0] * nc

    def dfs(pos: int, resid: np.ndarray, score: int):
        nonlocal best_key, best_a, nodes
        nodes += 1
        if nodes > node_limit:
            raise BoundExceeded(f"closest search exceeded {node_limit} nodes")
        if pos == nc:
            key = (score, sum(a), tuple(-x for x in a))
            if best_key is None or key > best_key:
                best_key, best_a = key, list(a)
            return
        if best_key is not None:
            bound = lp_bound([order[k] for k in range(pos, nc)], resid)
            if floor(score + bound + 1e-6) < best_key[0]:
                return
        j = order[pos]
        col = D[:, j]
        ub = min(int(resid[i]) // int(col[i]) for i in range(nr) if col[i] > 0)
        for v in range(ub, -1, -1):
            a[j] = v
            dfs(pos + 1, resid - v * col, score + v * int(w[j]))
        a[j] = 0

    dfs(0, np.array(m, dtype=np.int64), 0)
    r = (np.array(m) - D @ np.array(best_a)).tolist()
    return _expression(b, "closest-nonnegative", cols, best_a, rows, r)


@dataclass(eq=False)
class BlockAnalysis:
    part: BlockPart
    defect: int
    p_test: Verdict
    vanishing: Verdict
    exact: ProjExpression | None = None
    exact_failure: str | None = None
    closest: ProjExpression | None = None
    closest_note: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def block_id(self) -> int:
        return self.part.block_id

    @property
    def is_zero(self) -> bool:
        return not any(self.part.mults.mults)

    @property
    def v_projective(self) -> bool:
        return self.exact is not None


def analyze(rep: LefschetzReport, b: BrauerBlockData | None, closest: bool = True) -> LefschetzReport:
    """Split into blocks, run every test on every part, and classify."""
    if b is None:
        raise MissingBlockData(
            f"no {rep.prime or 2}-modular block data for {rep.table.ident}; "
            "some decomposition matrices are not yet known"
        )
    p = b.p
    rep.prime = p
    rep.blocks = []
    for blk in b.blocks:
        part = block_project(b, rep.mults, blk.id)
        ba = BlockAnalysis(part, blk.defect, p_test(part, p, b.table.order), vanishing_test(part.values, p))
        try:
            ba.exact = exact_vproj_solve(part, b)
        except NotVProjective as e:
            ba.exact_failure = e.reason
        if ba.vanishing.passed != (ba.exact is not None):
            ba.notes.append("vanishing test and exact solve disagree")
        if closest and not ba.is_zero:
            try:
                ba.closest = closest_decomposition(part, b)
            except NegativeMultiplicity as e:
                ba.closest_note = f"{e}; nonnegative convention does not apply, exact mode only"
        rep.blocks.append(ba)
    rep.classification = classify(rep)
    rep.remark_witnesses = [ba.block_id for ba in rep.blocks if ba.block_id != 1 and ba.exact is None]
    rep.pattern = defect_gap_check(b, rep.mults) if rep.degree else None
    return rep


def classify(rep: LefschetzReport) -> str:
    """'I-evidence', 'II' or 'III' from the analysed block parts."""
    if not rep.blocks:
        raise MissingBlockData(f"report for {rep.table.ident} has no block analysis")
    if vanishing_test(rep.lam, rep.prime).passed:
        return "I-evidence"
    principal = next(ba for ba in rep.blocks if ba.block_id == 1)
    return "II" if principal.vanishing.passed else "III"
