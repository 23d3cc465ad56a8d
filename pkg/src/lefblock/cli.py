"""``lefblock`` command-line driver.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input or data,
3 non-virtual character, 4 missing block data.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .cosetgeom import DEFAULT_BOUND, lefschetz_by_fixed_points
from .dataio import available_bundles, default_data_dir, emit_report, find_bundle, load_bundle
from .errors import LefblockError, MissingBlockData, NotVirtual
from .lefschetz import assemble
from .projtest import analyze
from .verify import verify_bundle

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_NOT_VIRTUAL, EXIT_NO_BLOCKS = range(5)
MODES = ("lefschetz", "blocks", "classify", "oracle", "verify")


@dataclass(frozen=True)
class RunConfig:
    bundle: Path
    group: str | None
    prime: int
    mode: str
    format: str = "text"
    negate: bool | None = None
    oracle_bound: int = DEFAULT_BOUND


def _open(cfg: RunConfig):
    if cfg.group is None:
        raise LefblockError("--group is required for this command")
    b = load_bundle(find_bundle(cfg.bundle, cfg.group))
    group = cfg.group if cfg.group in b.groups else b.groups[0]
    order = b.table(group).order
    if order % cfg.prime:
        raise LefblockError(f"prime {cfg.prime} does not divide |{group}| = {order}")
    return b, group


def cmd_lefschetz(cfg: RunConfig) -> str:
    b, g = _open(cfg)
    rep = assemble(b.primary_recipe(g), negate=cfg.negate)
    rep.prime = cfg.prime
    return emit_report(rep, cfg.format)


def cmd_classify(cfg: RunConfig) -> str:
    b, g = _open(cfg)
    rep = assemble(b.primary_recipe(g), negate=cfg.negate)
    rep.prime = cfg.prime
    analyze(rep, b.brauer_for(g, cfg.prime), closest=True)
    if cfg.mode == "blocks":
        rep.classification = None
    return emit_report(rep, cfg.format)


def cmd_oracle(cfg: RunConfig) -> tuple[str, bool]:
    b, g = _open(cfg)
    specs = [s for s in b.perms.values() if s.table == g]
    if not specs:
        raise LefblockError(f"bundle {b.ident} has no permutation data for {g}")
    t = b.table(g)
    alg = assemble(b.primary_recipe(g), negate=False).lam.integer_values()
    lines, ok = [], True
    for s in specs:
        fp = lefschetz_by_fixed_points(s, table=t, bound=cfg.oracle_bound).integer_values()
        same = fp == alg
        ok &= same
        lines.append(f"oracle {s.ident} on {g}")
        lines.append("  classes:      " + ", ".join(t.class_names))
        lines.append("  fixed points: " + ", ".join(map(str, fp)))
        lines.append("  recipe:       " + ", ".join(map(str, alg)))
        if same:
            lines.append("  routes agree")
        else:
            bad = [n for n, x, y in zip(t.class_names, fp, alg) if x != y]
            lines.append("  routes DIFFER at " + ", ".join(bad))
    return "\n".join(lines) + "\n", ok


def cmd_verify(cfg: RunConfig) -> tuple[str, bool]:
    if cfg.group:
        dirs = [find_bundle(cfg.bundle, cfg.group)]
    else:
        dirs = list(available_bundles(cfg.bundle).values())
    lines: list[str] = []
    n = passed = routes = routes_ok = 0
    for d in dirs:
        s = verify_bundle(load_bundle(d), cfg.oracle_bound)
        lines.append(f"bundle {s.bundle}")
        for o in s.outcomes:
            n += 1
            passed += o.passed
            tag = "PASS" if o.passed else "FAIL"
            text = f"  {tag} {o.record.name} [{o.record.cite}]"
            if o.detail and (not o.passed or o.record.kind == "closest-print"):
                text += f": {o.detail}"
            lines.append(text)
        for ident, ok, diff in s.routes:
            routes += 1
            routes_ok += ok
            lines.append(f"  {'PASS' if ok else 'FAIL'} route equivalence {ident}" + ("" if ok else f": {diff}"))
        for g, ok in s.forms:
            n += 1
            passed += ok
            lines.append(f"  {'PASS' if ok else 'FAIL'} recipe forms of {g} agree")
        for name, ok in s.equivalence:
            n += 1
            passed += ok
            if not ok:
                lines.append(f"  FAIL {name}")
    lines.append(f"{n} records, {passed} passed")
    lines.append(f"route equivalence: {routes_ok}/{routes} groups")
    return "\n".join(lines) + "\n", passed == n and routes_ok == routes


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lefblock", description="Lefschetz characters and their 2-modular block analysis.")
    ap.add_argument("--version", action="version", version=f"lefblock {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bundle", type=Path, default=None, help="bundle directory or a directory of bundles (default: $LEFBLOCK_BUNDLE or the shipped data)")
    common.add_argument("--group", help="group id or bundle id")
    common.add_argument("--prime", type=int, default=2)
    common.add_argument("--negate", action="store_true", default=None, help="present the negated character")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--oracle-bound", type=int, default=DEFAULT_BOUND, help="largest group enumerated by the oracle")
    sub = ap.add_subparsers(dest="mode", required=True)
    helps = {
        "lefschetz": "assemble the character and print vector and scalar product forms",
        "blocks": "split into blocks and run the projectivity tests",
        "classify": "full block analysis with classification",
        "oracle": "compare with the fixed-point count on the coset complex",
        "verify": "check expected-output records and invariants",
    }
    for m in MODES:
        sub.add_parser(m, parents=[common], help=helps[m])
    return ap


def main(argv: list[str] | None = None) -> int:
    a = build_parser().parse_args(argv)
    bundle = a.bundle or Path(os.environ.get("LEFBLOCK_BUNDLE") or default_data_dir())
    cfg = RunConfig(bundle, a.group, a.prime, a.mode, a.format, a.negate, a.oracle_bound)
    ok = True
    try:
        if cfg.mode == "lefschetz":
            doc = cmd_lefschetz(cfg)
        elif cfg.mode in ("blocks", "classify"):
            doc = cmd_classify(cfg)
        elif cfg.mode == "oracle":
            doc, ok = cmd_oracle(cfg)
        else:
            doc, ok = cmd_verify(cfg)
    except NotVirtual as e:
        print(f"lefblock: not a virtual character: {e}", file=sys.stderr)
        return EXIT_NOT_VIRTUAL
    except MissingBlockData as e:
        print(f"lefblock: {e}", file=sys.stderr)
        return EXIT_NO_BLOCKS
    except LefblockError as e:
        print(f"lefblock: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(doc)
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
