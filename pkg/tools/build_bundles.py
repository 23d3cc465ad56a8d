"""Canonicalize raw GAP exports into lefblock bundles.

    python tools/build_bundles.py RAW_DIR [OUT_DIR]

RAW_DIR holds one directory per bundle as written by tools/gap/export.g.
Each file is parsed and re-serialized in canonical form, expected-output
records are copied from tools/expect/, and a MANIFEST with sha256 hashes
is written.  OUT_DIR defaults to the package data directory.
"""

from __future__ import annotations

import argparse
import re
import shutil
from pathlib import Path

from lefblock import dataio

EXT_KIND = {
    ".ctab": "ctab",
    ".fusion": "fusion",
    ".quotient": "quotient",
    ".brauer": "brauer",
    ".recipe": "recipe",
    ".perm": "perm",
    ".expect": "expect",
}
SUBDIR = {
    "ctab": "tables",
    "fusion": "fusions",
    "quotient": "quotients",
    "brauer": "brauer",
    "recipe": "recipes",
    "perm": "perm",
    "expect": "expect",
}
EXPECT_DIR = Path(__file__).resolve().parent / "expect"


def safe_name(s: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", s)


def canonical(kind: str, text: str, path: str) -> tuple[str, str]:
    """(id, canonical text) for one raw file."""
    if kind == "ctab":
        t = dataio.parse_table(text, path)
        return t.ident, dataio.dump_table(t)
    if kind in ("fusion", "quotient"):
        m = dataio._parse_map(text, kind, path)
        return m.ident, dataio._dump_map(kind, m.ident, m.src, m.dst, m.map)
    if kind == "recipe":
        r = dataio.parse_recipe(text, path)
        return r.ident, dataio.dump_recipe(r)
    if kind == "perm":
        s = dataio.parse_perm(text, path)
        return s.ident, dataio.dump_perm(s)
    if kind == "expect":
        recs = dataio.parse_expect(text, path)
        return Path(path).stem, dataio.dump_expect(recs)
    raise ValueError(kind)


def canonical_brauer(text: str, path: str, tables: dict) -> tuple[str, str]:
    m = dataio.parse_brauer(text, path)
    b = dataio.BrauerBlockData(
        tables[m.table], m.p, m.blocks, m.ordinary, m.names, m.brauer_blocks, m.D
    )
    return f"{m.table}.mod{m.p}", dataio.dump_brauer(b, m.source)


def build(raw: Path, out: Path) -> None:
    name = raw.name
    dest = out / name
    if dest.exists():
        shutil.rmtree(dest)
    dest.mkdir(parents=True)
    files = sorted(p for p in raw.iterdir() if p.suffix in EXT_KIND)
    exp = EXPECT_DIR / f"{name}.expect"
    if exp.is_file():
        files.append(exp)
    tables = {}
    written = []
    groups = []
    for kind in ("ctab", "fusion", "quotient", "brauer", "recipe", "perm", "expect"):
        for p in files:
            if EXT_KIND[p.suffix] != kind:
                continue
            text = p.read_text()
            if kind == "brauer":
                ident, canon = canonical_brauer(text, str(p), tables)
            else:
                ident, canon = canonical(kind, text, str(p))
            if kind == "ctab":
                tables[ident] = dataio.parse_table(canon)
            if kind == "recipe":
                g = dataio.parse_recipe(canon).group
                if g not in groups:
                    groups.append(g)
            rel = f"{SUBDIR[kind]}/{safe_name(ident)}.{kind}"
            (dest / SUBDIR[kind]).mkdir(exist_ok=True)
            (dest / rel).write_text(canon)
            written.append((kind, rel))
    if not groups:
        groups = [t for t in tables if (dest / f"brauer/{safe_name(t)}.mod2.brauer").exists()]
    dataio.write_manifest(dest, name, groups, written)
    dataio.load_bundle(dest)
    print(f"{name}: {len(written)} files, groups {', '.join(groups)}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("raw", type=Path)
    ap.add_argument("out", type=Path, nargs="?", default=dataio.default_data_dir())
    ap.add_argument("--only", nargs="*", help="bundle names to rebuild")
    a = ap.parse_args()
    for d in sorted(a.raw.iterdir()):
        if d.is_dir() and (not a.only or d.name in a.only):
            build(d, a.out)


if __name__ == "__main__":
    main()
