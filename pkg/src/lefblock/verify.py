"""Check computed results against a bundle's expected-output records."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .blocks import BrauerBlockData, cartan, phi_character
from .chartab import induce, inner_product, restrict
from .cosetgeom import lefschetz_by_fixed_points
from .dataio import ExpectRecord, FixtureBundle
from .lefschetz import LefschetzReport, assemble, two_adic_profile
from .projtest import analyze, p_test, vanishing_test

__all__ = [
    "Outcome",
    "VerifySummary",
    "cartan_check",
    "check_record",
    "frobenius_check",
    "parse_linear",
    "route_equivalence",
    "verify_bundle",
]

_LIN = re.compile(
    r"\s*([+-])?\s*(\d+)?\s*\*?\s*(Phi\(phi_(\d+)\)|phi_(\d+)|chi_(\d+))\s*"
)


def parse_linear(text: str) -> tuple[dict[int, int], dict[int, int]]:
    """``2Phi(phi_8) + chi_24`` -> ({7: 2}, {23: 1}), 0-based indices.

    A bare ``phi_j`` (a defect-zero block written as a Brauer character)
    counts as ``Phi(phi_j)``.
    """
    phi: dict[int, int] = {}
    chi: dict[int, int] = {}
    s = text.strip()
    if s == "0":
        return phi, chi
    pos = 0
    while pos < len(s):
        m = _LIN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression {text!r} at offset {pos}")
        sign, coef, _, j1, j2, i = m.groups()
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        if i is not None:
            chi[int(i) - 1] = chi.get(int(i) - 1, 0) + c
        else:
            j = int(j1 or j2) - 1
            phi[j] = phi.get(j, 0) + c
        pos = m.end()
    return phi, chi


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


@dataclass
class Outcome:
    record: ExpectRecord
    passed: bool
    detail: str = ""


@dataclass
class VerifySummary:
    bundle: str
    outcomes: list[Outcome] = field(default_factory=list)
    routes: list[tuple[str, bool, str]] = field(default_factory=list)
    forms: list[tuple[str, bool]] = field(default_factory=list)
    equivalence: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            all(o.passed for o in self.outcomes)
            and all(r[1] for r in self.routes)
            and all(f[1] for f in self.forms)
            and all(e[1] for e in self.equivalence)
        )


def _vector_diff(got: list[int], want: list[int], names: list[str]) -> str:
    if len(got) != len(want):
        return f"length {len(got)}, expected {len(want)}"
    bad = [f"{n}: got {g}, expected {w}" for n, g, w in zip(names, got, want) if g != w]
    return "; ".join(bad)


def _expr_vectors(b: BrauerBlockData, text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    phi, chi = parse_linear(text)
    a = [0] * len(b.brauer_names)
    r = [0] * len(b.table.irreducibles)
    for j, c in phi.items():
        a[j] = c
    for i, c in chi.items():
        r[i] = c
    return tuple(a), tuple(r)


def _block(rep: LefschetzReport, bid: int):
    for ba in rep.blocks:
        if ba.block_id == bid:
            return ba
    raise KeyError(f"no block {bid}")


def check_record(e: ExpectRecord, rep: LefschetzReport, b: BrauerBlockData | None) -> Outcome:
    """Compare one record with an analysed report."""
    t = rep.table
    names = t.class_names
    k = e.kind
    try:
        if k == "vector":
            d = _vector_diff(rep.values, _ints(e.value), names)
            return Outcome(e, not d, d)
        if k == "degree":
            return Outcome(e, rep.degree == int(e.value), f"got {rep.degree}")
        if k == "mults":
            d = _vector_diff(list(rep.mults.mults), _ints(e.value), [f"chi_{i + 1}" for i in range(len(t.irreducibles))])
            return Outcome(e, not d, d)
        if k == "decomposition":
            _, chi = parse_linear(e.value)
            want = [chi.get(i, 0) for i in range(len(t.irreducibles))]
            return Outcome(e, list(rep.mults.mults) == want, f"got {rep.mults.describe(positional=True)}")
        if k == "inner":
            name, val = e.value.split(":")
            i = t.irr_index(name.strip())
            return Outcome(e, rep.mults.mults[i] == int(val), f"got {rep.mults.mults[i]}")
        if k == "profile":
            got = two_adic_profile(rep, b.p if b else 2)
            return Outcome(e, list(got) == _ints(e.value), f"got {got}")
        if k == "classification":
            return Outcome(e, rep.classification == e.value, f"got {rep.classification}")
        if k == "pattern":
            p = rep.pattern
            got = f"{p.max_nonprincipal_defect}, {p.gap}, {'equal' if p.equal else 'violated'}"
            return Outcome(e, got == e.value, f"got {got}")
        if k == "remark":
            want = [] if e.value == "none" else _ints(e.value)
            return Outcome(e, rep.remark_witnesses == want, f"got {rep.remark_witnesses}")
        if k == "vanishing":
            cf = rep.lam if e.block is None else _block(rep, e.block).part.values
            v = vanishing_test(cf, rep.prime or 2)
            got = "pass" if v.passed else ", ".join(f"({c}, {x})" for c, x in v.witnesses)
            return Outcome(e, got == e.value, f"got {got}")
        if k == "p-test":
            x = rep if e.block is None else _block(rep, e.block).part
            v = p_test(x, rep.prime or 2, t.order)
            got = "pass" if v.passed else "fail"
            return Outcome(e, got == e.value, f"got {got} ({v.detail})")
        ba = _block(rep, e.block)
        if k == "block-vector":
            d = _vector_diff(ba.part.values.integer_values(), _ints(e.value), names)
            return Outcome(e, not d, d)
        if k == "exact":
            if e.value == "not v-projective":
                return Outcome(e, ba.exact is None, "solved" if ba.exact else ba.exact_failure)
            if ba.exact is None:
                return Outcome(e, False, f"not solvable ({ba.exact_failure})")
            a, _ = _expr_vectors(b, e.value)
            return Outcome(e, ba.exact.phi_coeffs == a, f"got {ba.exact.describe()}")
        if k == "closest":
            if ba.closest is None:
                return Outcome(e, False, ba.closest_note or "no closest expression")
            a, r = _expr_vectors(b, e.value)
            got = (ba.closest.phi_coeffs, ba.closest.residue)
            return Outcome(e, got == (a, r), f"got {ba.closest.describe()}")
        if k == "closest-print":
            # a printed expression whose optimality is not assumed: it must
            # reconstruct the part; any gap to the computed optimum is reported
            a, r = _expr_vectors(b, e.value)
            m = list(r)
            for j, c in enumerate(a):
                if c:
                    for i, x in enumerate(phi_character(b, j).mults):
                        m[i] += c * x
            valid = tuple(m) == ba.part.mults.mults and min(a + r) >= 0
            note = f"printed residue {sum(r)}"
            if ba.closest is not None:
                note += f", computed optimum {ba.closest.residue_total}: {ba.closest.describe()}"
            return Outcome(e, valid, note if valid else "printed expression does not reconstruct the part; " + note)
    except (KeyError, ValueError, AttributeError, StopIteration) as exc:
        return Outcome(e, False, f"{type(exc).__name__}: {exc}")
    return Outcome(e, False, f"unknown record kind {k!r}")


def route_equivalence(bundle: FixtureBundle, bound: int = 10**7) -> list[tuple[str, bool, str]]:
    """Fixed-point route vs. algebraic route for every permutation spec."""
    out = []
    for spec in bundle.perms.values():
        if spec.table is None:
            continue
        recipes = bundle.recipes_for(spec.table)
        if not recipes:
            continue
        t = bundle.table(spec.table)
        got = lefschetz_by_fixed_points(spec, table=t, bound=bound)
        want = assemble(recipes[0], negate=False).lam
        d = _vector_diff(got.integer_values(), want.integer_values(), t.class_names)
        out.append((spec.ident, not d, d))
    return out


def frobenius_check(bundle: FixtureBundle) -> list[tuple[str, bool]]:
    """<1_H induced, chi> = <1_H, chi restricted> for every fusion and irreducible."""
    out = []
    for f in bundle.fusions.values():
        H, G = f.from_table, f.to_table
        one = H.trivial()
        up = induce(one, f)
        ok = all(inner_product(up, chi) == inner_product(one, restrict(chi, f)) for chi in G.irr())
        out.append((f"Frobenius reciprocity on {f.ident}", ok))
    return out


def cartan_check(bundle: FixtureBundle) -> list[tuple[str, bool]]:
    out = []
    for (g, p), b in bundle.brauer.items():
        for blk in b.blocks:
            C = cartan(b, blk.id)
            det = int(C.det())
            while det > 1 and det % p == 0:
                det //= p
            out.append((f"Cartan matrix of {g} mod {p}, block {blk.id}", C == C.T and det == 1))
    return out


def verify_bundle(bundle: FixtureBundle, oracle_bound: int = 10**7, closest: bool = True) -> VerifySummary:
    s = VerifySummary(bundle.ident)
    reports: dict[str, LefschetzReport] = {}
    for rid, r in bundle.recipes.items():
        rep = assemble(r)
        b = bundle.brauer_for(r.group.ident)
        if b is not None:
            analyze(rep, b, closest=closest)
            for ba in rep.blocks:
                s.equivalence.append(
                    (f"{rid} block {ba.block_id}: vanishing test agrees with exact solve", ba.vanishing.passed == (ba.exact is not None))
                )
        reports[rid] = rep
    by_group: dict[str, list[LefschetzReport]] = {}
    for rid, rep in reports.items():
        by_group.setdefault(rep.table.ident, []).append(rep)
    for g, reps in by_group.items():
        if len(reps) > 1:
            base = reps[0].lam
            s.forms.append((g, all(r.lam == base for r in reps[1:])))
    for e in bundle.expects:
        rep = reports[e.recipe]
        s.outcomes.append(check_record(e, rep, bundle.brauer_for(rep.table.ident)))
    s.routes = route_equivalence(bundle, oracle_bound)
    s.equivalence += frobenius_check(bundle) + cartan_check(bundle)
    return s
