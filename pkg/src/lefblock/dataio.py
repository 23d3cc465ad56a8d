"""Fixture file formats and bundle loading.

Every file is line-oriented text starting with a version header such as
``lefblock-ctab v1``.  Lines are ``key: value``; blank lines and lines
starting with ``#`` are ignored.  Lists are comma separated (commas inside
parentheses do not split).  A bundle is a directory with a ``MANIFEST``
naming every file with its sha256.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from .blocks import Block, BrauerBlockData, validate_brauer
from .chartab import (
    CharacterTable,
    ClassFunction,
    ClassFusion,
    ConjugacyClass,
    QuotientMap,
    inflate,
    parse_combination,
    validate_table,
)
from .cosetgeom import PermGroupSpec, parse_cycles
from .cyclo import format_cyclotomic, parse_cyclotomic
from .errors import BundleReferenceError, LefblockError, ParseError, ValidationError
from .lefschetz import LefschetzReport, RecipeTerm, SimplexRecipe, validate_recipe
from .projtest import CLASS_LABELS

__all__ = [
    "ExpectRecord",
    "FixtureBundle",
    "available_bundles",
    "default_data_dir",
    "dump_brauer",
    "dump_expect",
    "dump_fusion",
    "dump_perm",
    "dump_quotient",
    "dump_recipe",
    "dump_table",
    "emit_report",
    "find_bundle",
    "load_bundle",
    "parse_brauer",
    "parse_fusion",
    "parse_quotient",
    "parse_table",
    "write_manifest",
]

KINDS = ("ctab", "fusion", "quotient", "brauer", "recipe", "perm", "expect")
HEADER = {k: f"lefblock-{k} v1" for k in KINDS}
MANIFEST_HEADER = "lefblock-manifest v1"


def default_data_dir() -> Path:
    return Path(__file__).resolve().parent / "data"


# ---------------------------------------------------------------- lexing


def split_top(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside parentheses, stripping whitespace."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out if out != [""] else []


@dataclass
class _Line:
    no: int
    key: str
    value: str
    col: int


class _Reader:
    def __init__(self, text: str, kind: str, path: str = ""):
        self.path = path
        lines = text.splitlines()
        if not lines or lines[0].strip() != HEADER[kind]:
            got = lines[0].strip() if lines else ""
            raise ParseError(f"expected header {HEADER[kind]!r}, got {got!r}", path, 1, 1)
        self.lines: list[_Line] = []
        for no, raw in enumerate(lines[1:], start=2):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            if ":" not in s:
                raise ParseError("expected 'key: value'", path, no, 1)
            k, v = s.split(":", 1)
            self.lines.append(_Line(no, k.strip(), v.strip(), len(k) + 2))
        self.pos = 0

    def error(self, msg: str, line: _Line | None = None) -> ParseError:
        if line is None:
            line = self.lines[self.pos] if self.pos < len(self.lines) else None
        return ParseError(msg, self.path, line.no if line else 0, line.col if line else 0)

    def peek(self) -> _Line | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self, key: str) -> _Line:
        ln = self.peek()
        if ln is None or ln.key != key:
            raise self.error(f"expected {key!r}" + (f", got {ln.key!r}" if ln else " before end of file"))
        self.pos += 1
        return ln

    def take_prefixed(self, prefix: str) -> tuple[str, _Line] | None:
        ln = self.peek()
        if ln is None or not (ln.key == prefix or ln.key.startswith(prefix + " ")):
            return None
        self.pos += 1
        return ln.key[len(prefix):].strip(), ln

    def done(self) -> None:
        if self.pos != len(self.lines):
            raise self.error(f"unexpected line {self.lines[self.pos].key!r}")


def _ints(r: _Reader, ln: _Line, text: str | None = None) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in split_top(ln.value if text is None else text))
    except ValueError:
        raise r.error("expected a list of integers", ln) from None


def _int(r: _Reader, ln: _Line) -> int:
    try:
        return int(ln.value)
    except ValueError:
        raise r.error("expected an integer", ln) from None


def _bool(r: _Reader, ln: _Line) -> bool:
    if ln.value not in ("true", "false"):
        raise r.error("expected true or false", ln)
    return ln.value == "true"


# ---------------------------------------------------------------- tables


def parse_table(text: str, path: str = "") -> CharacterTable:
    r = _Reader(text, "ctab", path)
    ident = r.take("id").value
    group = r.take("group").value
    order = _int(r, r.take("order"))
    source = ""
    if (ln := r.peek()) and ln.key == "source":
        source = r.take("source").value
    classes = []
    while (got := r.take_prefixed("class")) is not None:
        _, ln = got
        f = split_top(ln.value)
        if len(f) != 4:
            raise r.error("class needs name, size, element order, centralizer order", ln)
        try:
            classes.append(ConjugacyClass(f[0], int(f[1]), int(f[2]), int(f[3])))
        except ValueError:
            raise r.error("bad integer in class line", ln) from None
    pms = {}
    while (got := r.take_prefixed("powermap")) is not None:
        q, ln = got
        pms[int(q)] = _ints(r, ln)
    names, rows = [], []
    while (got := r.take_prefixed("irr")) is not None:
        name, ln = got
        try:
            vals = tuple(parse_cyclotomic(x) for x in split_top(ln.value))
        except ValueError as e:
            raise r.error(str(e), ln) from None
        names.append(name)
        rows.append(vals)
    r.done()
    return CharacterTable(ident, group, order, tuple(classes), pms, tuple(names), tuple(rows), source)


def dump_table(t: CharacterTable) -> str:
    out = [HEADER["ctab"], f"id: {t.ident}", f"group: {t.group_name}", f"order: {t.order}"]
    if t.source:
        out.append(f"source: {t.source}")
    for c in t.classes:
        out.append(f"class: {c.name}, {c.size}, {c.element_order}, {c.centralizer_order}")
    for q in sorted(t.power_maps):
        out.append(f"powermap {q}: " + ", ".join(map(str, t.power_maps[q])))
    for n, row in zip(t.irr_names, t.irreducibles):
        out.append(f"irr {n}: " + ", ".join(format_cyclotomic(v) for v in row))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- maps


@dataclass(frozen=True)
class _MapRecord:
    ident: str
    src: str
    dst: str
    map: tuple[int, ...]


def _parse_map(text: str, kind: str, path: str) -> _MapRecord:
    r = _Reader(text, kind, path)
    ident = r.take("id").value
    src = r.take("from").value
    dst = r.take("to").value
    m = _ints(r, r.take("map"))
    r.done()
    return _MapRecord(ident, src, dst, m)


def parse_fusion(text: str, path: str = "") -> _MapRecord:
    return _parse_map(text, "fusion", path)


def parse_quotient(text: str, path: str = "") -> _MapRecord:
    return _parse_map(text, "quotient", path)


def _dump_map(kind, ident, src, dst, m) -> str:
    return "\n".join(
        [HEADER[kind], f"id: {ident}", f"from: {src}", f"to: {dst}", "map: " + ", ".join(map(str, m))]
    ) + "\n"


def dump_fusion(f: ClassFusion) -> str:
    return _dump_map("fusion", f.ident, f.from_table.ident, f.to_table.ident, f.map)


def dump_quotient(q: QuotientMap) -> str:
    return _dump_map("quotient", q.ident, q.from_table.ident, q.quotient_table.ident, q.map)


# ---------------------------------------------------------------- Brauer data


@dataclass(frozen=True)
class _BrauerRecord:
    table: str
    p: int
    blocks: tuple[Block, ...]
    ordinary: tuple[int, ...]
    names: tuple[str, ...]
    brauer_blocks: tuple[int, ...]
    D: tuple[tuple[int, ...], ...]
    source: str


def parse_brauer(text: str, path: str = "") -> _BrauerRecord:
    r = _Reader(text, "brauer", path)
    table = r.take("table").value
    p = _int(r, r.take("prime"))
    source = ""
    if (ln := r.peek()) and ln.key == "source":
        source = r.take("source").value
    blocks = []
    while (got := r.take_prefixed("block")) is not None:
        bid, ln = got
        m = re.fullmatch(r"defect\s+(\d+)", ln.value)
        if not m or not bid.isdigit():
            raise r.error("expected 'block <id>: defect <d>'", ln)
        blocks.append(Block(int(bid), int(m.group(1))))
    ordinary = _ints(r, r.take("ordinary"))
    names, bb = [], []
    while (got := r.take_prefixed("phi")) is not None:
        name, ln = got
        names.append(name)
        bb.append(_int(r, ln))
    D = []
    while (got := r.take_prefixed("row")) is not None:
        _, ln = got
        D.append(_ints(r, ln))
    r.done()
    return _BrauerRecord(table, p, tuple(blocks), ordinary, tuple(names), tuple(bb), tuple(D), source)


def dump_brauer(b: BrauerBlockData, source: str = "") -> str:
    out = [HEADER["brauer"], f"table: {b.table.ident}", f"prime: {b.p}"]
    if source:
        out.append(f"source: {source}")
    out += [f"block {blk.id}: defect {blk.defect}" for blk in b.blocks]
    out.append("ordinary: " + ", ".join(map(str, b.ordinary_to_block)))
    out += [f"phi {n}: {blk}" for n, blk in zip(b.brauer_names, b.brauer_to_block)]
    out += [f"row {n}: " + ", ".join(map(str, row)) for n, row in zip(b.table.irr_names, b.D)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- recipes


@dataclass(frozen=True)
class _TermRecord:
    label: str
    sign: int
    carrier: str
    fusion: tuple[str, ...]
    character: str


@dataclass(frozen=True)
class _RecipeRecord:
    ident: str
    group: str
    form: str
    reduced: bool
    negate: bool
    terms: tuple[_TermRecord, ...]


_TERM_KEYS = ("J", "sign", "carrier", "fusion", "character")


def parse_recipe(text: str, path: str = "") -> _RecipeRecord:
    r = _Reader(text, "recipe", path)
    ident = r.take("id").value
    group = r.take("group").value
    form = r.take("form").value
    reduced = _bool(r, r.take("reduced"))
    negate = _bool(r, r.take("negate"))
    terms = []
    while (got := r.take_prefixed("term")) is not None:
        _, ln = got
        kv = {}
        for part in ln.value.split(";"):
            if "=" not in part:
                raise r.error(f"expected key=value in term, got {part.strip()!r}", ln)
            k, v = part.split("=", 1)
            kv[k.strip()] = v.strip()
        if set(kv) != set(_TERM_KEYS):
            raise r.error(f"term needs keys {', '.join(_TERM_KEYS)}", ln)
        try:
            sign = int(kv["sign"])
        except ValueError:
            raise r.error("sign must be +1 or -1", ln) from None
        chain = tuple(x.strip() for x in kv["fusion"].split(">>"))
        terms.append(_TermRecord(kv["J"], sign, kv["carrier"], chain, kv["character"]))
    r.done()
    return _RecipeRecord(ident, group, form, reduced, negate, tuple(terms))


def dump_recipe(rec: _RecipeRecord) -> str:
    out = [
        HEADER["recipe"],
        f"id: {rec.ident}",
        f"group: {rec.group}",
        f"form: {rec.form}",
        f"reduced: {'true' if rec.reduced else 'false'}",
        f"negate: {'true' if rec.negate else 'false'}",
    ]
    for t in rec.terms:
        out.append(
            f"term: J={t.label}; sign={t.sign:+d}; carrier={t.carrier}; "
            f"fusion={' >> '.join(t.fusion)}; character={t.character}"
        )
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- permutation specs


def parse_perm(text: str, path: str = "") -> PermGroupSpec:
    r = _Reader(text, "perm", path)
    ident = r.take("id").value
    degree = _int(r, r.take("degree"))
    table = None
    if (ln := r.peek()) and ln.key == "table":
        table = r.take("table").value

    def perm(ln, s):
        try:
            return parse_cycles(s, degree)
        except ValueError as e:
            raise r.error(str(e), ln) from None

    gens = []
    while (got := r.take_prefixed("generator")) is not None:
        _, ln = got
        gens.append(perm(ln, ln.value))
    subs = []
    while (got := r.take_prefixed("subgroup")) is not None:
        name, ln = got
        subs.append((name, tuple(perm(ln, x) for x in split_top(ln.value))))
    reps = []
    while (got := r.take_prefixed("class")) is not None:
        name, ln = got
        reps.append((name, perm(ln, ln.value)))
    r.done()
    return PermGroupSpec(ident, degree, tuple(gens), tuple(subs), tuple(reps), table)


def dump_perm(s: PermGroupSpec) -> str:
    out = [HEADER["perm"], f"id: {s.ident}", f"degree: {s.degree}"]
    if s.table:
        out.append(f"table: {s.table}")
    out += [f"generator: {g.cycles()}" for g in s.generators]
    out += [f"subgroup {n}: " + ", ".join(g.cycles() for g in gens) for n, gens in s.subgroups]
    out += [f"class {n}: {g.cycles()}" for n, g in s.class_reps]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- expected outputs


@dataclass(frozen=True)
class ExpectRecord:
    """One expected result, quoted from the published computation."""

    name: str
    group: str
    recipe: str
    kind: str
    value: str
    cite: str
    block: int | None = None


def parse_expect(text: str, path: str = "") -> list[ExpectRecord]:
    r = _Reader(text, "expect", path)
    out = []
    while r.peek() is not None:
        name = r.take("record").value
        group = r.take("group").value
        recipe = r.take("recipe").value
        kind = r.take("kind").value
        block = None
        if (ln := r.peek()) and ln.key == "block":
            block = _int(r, r.take("block"))
        value = r.take("value").value
        cite = r.take("cite").value
        out.append(ExpectRecord(name, group, recipe, kind, value, cite, block))
    return out


def dump_expect(records: list[ExpectRecord]) -> str:
    out = [HEADER["expect"]]
    for e in records:
        out += ["", f"record: {e.name}", f"group: {e.group}", f"recipe: {e.recipe}", f"kind: {e.kind}"]
        if e.block is not None:
            out.append(f"block: {e.block}")
        out += [f"value: {e.value}", f"cite: {e.cite}"]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- bundles


@dataclass(eq=False)
class FixtureBundle:
    ident: str
    path: Path
    groups: tuple[str, ...]
    tables: dict[str, CharacterTable] = field(default_factory=dict)
    fusions: dict[str, ClassFusion] = field(default_factory=dict)
    quotients: dict[str, QuotientMap] = field(default_factory=dict)
    brauer: dict[tuple[str, int], BrauerBlockData] = field(default_factory=dict)
    recipes: dict[str, SimplexRecipe] = field(default_factory=dict)
    recipe_records: dict[str, _RecipeRecord] = field(default_factory=dict)
    perms: dict[str, PermGroupSpec] = field(default_factory=dict)
    expects: list[ExpectRecord] = field(default_factory=list)
    files: list[tuple[str, str, str]] = field(default_factory=list)

    def table(self, ident: str) -> CharacterTable:
        try:
            return self.tables[ident]
        except KeyError:
            raise BundleReferenceError(f"bundle {self.ident} has no table {ident!r}") from None

    def recipes_for(self, group: str) -> list[SimplexRecipe]:
        return [r for r in self.recipes.values() if r.group.ident == group]

    def primary_recipe(self, group: str) -> SimplexRecipe:
        rs = self.recipes_for(group)
        if not rs:
            raise BundleReferenceError(f"bundle {self.ident} has no recipe for {group!r}")
        return next((r for r in rs if r.form == "cancelled"), rs[0])

    def brauer_for(self, group: str, p: int = 2) -> BrauerBlockData | None:
        return self.brauer.get((group, p))

    def expects_for(self, group: str) -> list[ExpectRecord]:
        return [e for e in self.expects if e.group == group]


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_manifest(path: Path, ident: str, groups: list[str], files: list[tuple[str, str]]) -> None:
    """Write ``MANIFEST`` for (kind, relative path) pairs, hashing each file."""
    path = Path(path)
    out = [MANIFEST_HEADER, f"bundle: {ident}", "groups: " + ", ".join(groups)]
    for kind, rel in files:
        out.append(f"file: {kind}, {rel}, {_sha256(path / rel)}")
    (path / "MANIFEST").write_text("\n".join(out) + "\n")


def _read_manifest(path: Path):
    mf = path / "MANIFEST"
    if not mf.is_file():
        raise ParseError("missing MANIFEST", str(path))
    lines = mf.read_text().splitlines()
    if not lines or lines[0].strip() != MANIFEST_HEADER:
        raise ParseError(f"expected header {MANIFEST_HEADER!r}", str(mf), 1, 1)
    ident, groups, files = None, (), []
    for no, raw in enumerate(lines[1:], start=2):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        k, _, v = s.partition(":")
        v = v.strip()
        if k == "bundle":
            ident = v
        elif k == "groups":
            groups = tuple(split_top(v))
        elif k == "file":
            f = split_top(v)
            if len(f) != 3 or f[0] not in KINDS:
                raise ParseError("expected 'file: kind, path, sha256'", str(mf), no, 1)
            files.append(tuple(f))
        else:
            raise ParseError(f"unknown manifest key {k!r}", str(mf), no, 1)
    if ident is None:
        raise ParseError("manifest has no bundle id", str(mf))
    return ident, groups, files


def _check_fusion(f: ClassFusion) -> None:
    H, G = f.from_table, f.to_table
    if len(f.map) != H.nclasses:
        raise ValidationError("fusion length", f"{f.ident} has {len(f.map)} entries, {H.ident} has {H.nclasses} classes")
    for k, img in enumerate(f.map):
        if not 0 <= img < G.nclasses:
            raise ValidationError("fusion range", f"{f.ident}: class {H.classes[k].name} maps outside {G.ident}")
        hc, gc = H.classes[k], G.classes[img]
        if hc.element_order != gc.element_order:
            raise ValidationError(
                "element order not preserved",
                f"{f.ident}: {H.ident} class {hc.name} (order {hc.element_order}) -> "
                f"{G.ident} class {gc.name} (order {gc.element_order})",
            )
        if gc.centralizer_order % hc.centralizer_order:
            raise ValidationError("centralizer order", f"{f.ident}: class {hc.name} centralizer does not divide")
    if G.order % H.order:
        raise ValidationError("subgroup order", f"{f.ident}: |{H.ident}| does not divide |{G.ident}|")


def _check_quotient(q: QuotientMap) -> None:
    H, Q = q.from_table, q.quotient_table
    if len(q.map) != H.nclasses:
        raise ValidationError("quotient length", f"{q.ident} has wrong length")
    for k, img in enumerate(q.map):
        if not 0 <= img < Q.nclasses:
            raise ValidationError("quotient range", f"{q.ident}: class {k} maps outside {Q.ident}")
        if H.classes[k].element_order % Q.classes[img].element_order:
            raise ValidationError(
                "quotient element order", f"{q.ident}: {H.classes[k].name} -> {Q.classes[img].name}"
            )
    if set(q.map) != set(range(Q.nclasses)):
        raise ValidationError("quotient not surjective", q.ident)
    if H.order % Q.order:
        raise ValidationError("quotient order", q.ident)


def build_term_character(b: FixtureBundle, carrier: CharacterTable, text: str) -> ClassFunction:
    """``expr`` on the carrier, or ``inflate(QUOTIENT-ID, expr)``."""
    m = re.fullmatch(r"inflate\((.+?),\s*(.+)\)", text.strip())
    if m is None:
        return parse_combination(carrier, text).class_function()
    qid, expr = m.groups()
    q = b.quotients.get(qid.strip())
    if q is None:
        raise BundleReferenceError(f"no quotient map {qid!r}")
    if q.from_table.ident != carrier.ident:
        raise BundleReferenceError(f"quotient map {qid} does not start at {carrier.ident}")
    return inflate(parse_combination(q.quotient_table, expr).class_function(), q)


def _build_recipe(b: FixtureBundle, rec: _RecipeRecord) -> SimplexRecipe:
    G = b.table(rec.group)
    terms = []
    for t in rec.terms:
        H = b.table(t.carrier)
        fus = None
        for fid in t.fusion:
            f = b.fusions.get(fid)
            if f is None:
                raise BundleReferenceError(f"recipe {rec.ident}: no fusion {fid!r}")
            fus = f if fus is None else fus.compose(f)
        ch = build_term_character(b, H, t.character)
        terms.append(RecipeTerm(t.label, t.sign, ch, fus, t.character))
    r = SimplexRecipe(rec.ident, G, tuple(terms), rec.reduced, rec.negate, rec.form)
    validate_recipe(r)
    return r


def load_bundle(path, validate: bool = True) -> FixtureBundle:
    """Load and cross-check a bundle directory.

    Raises ParseError, BundleReferenceError or ValidationError naming the
    failing check.
    """
    path = Path(path)
    if not path.is_dir():
        raise ParseError("bundle directory does not exist", str(path))
    ident, groups, files = _read_manifest(path)
    b = FixtureBundle(ident, path, groups)
    texts: dict[str, list[tuple[str, str]]] = {k: [] for k in KINDS}
    for kind, rel, digest in files:
        fp = path / rel
        if not fp.is_file():
            raise BundleReferenceError(f"manifest lists missing file {rel}")
        if _sha256(fp) != digest:
            raise ValidationError("manifest hash", f"{rel} does not match its recorded sha256")
        texts[kind].append((str(fp), fp.read_text()))
        b.files.append((kind, rel, digest))

    for p, t in texts["ctab"]:
        tab = parse_table(t, p)
        if tab.ident in b.tables:
            raise ValidationError("duplicate id", f"table {tab.ident}")
        if validate:
            rep = validate_table(tab)
            if not rep.ok:
                raise ValidationError("table invariants", str(rep))
        b.tables[tab.ident] = tab
    for p, t in texts["fusion"]:
        m = parse_fusion(t, p)
        f = ClassFusion(m.ident, b.table(m.src), b.table(m.dst), m.map)
        _check_fusion(f)
        b.fusions[m.ident] = f
    for p, t in texts["quotient"]:
        m = parse_quotient(t, p)
        q = QuotientMap(m.ident, b.table(m.src), b.table(m.dst), m.map)
        _check_quotient(q)
        b.quotients[m.ident] = q
    for p, t in texts["brauer"]:
        m = parse_brauer(t, p)
        bd = BrauerBlockData(b.table(m.table), m.p, m.blocks, m.ordinary, m.names, m.brauer_blocks, m.D)
        if validate:
            rep = validate_brauer(bd)
            if not rep.ok:
                raise ValidationError("block data invariants", str(rep))
        b.brauer[(m.table, m.p)] = bd
    for p, t in texts["recipe"]:
        rec = parse_recipe(t, p)
        try:
            b.recipes[rec.ident] = _build_recipe(b, rec)
        except (BundleReferenceError, ValidationError):
            raise
        except LefblockError as e:
            raise ValidationError("recipe", f"{rec.ident}: {e}") from e
        b.recipe_records[rec.ident] = rec
    for p, t in texts["perm"]:
        s = parse_perm(t, p)
        if s.table is not None:
            b.table(s.table)
        b.perms[s.ident] = s
    for p, t in texts["expect"]:
        for e in parse_expect(t, p):
            if e.recipe not in b.recipes and e.recipe != "-":
                raise BundleReferenceError(f"expected record {e.name} names unknown recipe {e.recipe!r}")
            b.expects.append(e)
    for g in groups:
        b.table(g)
    return b


def available_bundles(root=None) -> dict[str, Path]:
    """Bundle id -> directory for every bundle below ``root``."""
    root = Path(root) if root else default_data_dir()
    if (root / "MANIFEST").is_file():
        return {_read_manifest(root)[0]: root}
    out = {}
    for d in sorted(root.iterdir()):
        if (d / "MANIFEST").is_file():
            out[_read_manifest(d)[0]] = d
    return out


def find_bundle(root, group: str) -> Path:
    """Directory of the bundle below ``root`` named ``group`` or declaring it."""
    root = Path(root) if root else default_data_dir()
    if (root / "MANIFEST").is_file():
        return root
    dirs = [d for d in sorted(root.iterdir()) if (d / "MANIFEST").is_file()]
    for d in dirs:
        if _read_manifest(d)[0] == group:
            return d
    for d in dirs:
        if group in _read_manifest(d)[1]:
            return d
    raise BundleReferenceError(f"no bundle under {root} declares group {group!r}")


# ---------------------------------------------------------------- reports

REPORT_HEADER = "lefblock-report v1"


def _factor_p(n: int, p: int) -> str:
    if n == 0:
        return "0"
    k, m = 0, abs(n)
    while m % p == 0:
        m //= p
        k += 1
    sign = "-" if n < 0 else ""
    if not k:
        return f"{n}"
    return f"{sign}{p}^{k}" + (f"*{m}" if m != 1 else "")


def _cells(cf: ClassFunction) -> list[str]:
    out = []
    for v in cf.values:
        try:
            out.append(str(int(v)))
        except ValueError:
            out.append(format_cyclotomic(v))
    return out


def _vector_rows(rep: LefschetzReport, values: list[str], p: int, width: int = 10) -> list[str]:
    """Classes as columns; p-singular classes carry a ``*``."""
    t = rep.table
    cells = []
    for c, v in zip(t.classes, values):
        mark = "*" if c.element_order % p == 0 else ""
        cells.append((c.name + mark, v + mark))
    rows = []
    for k in range(0, len(cells), width):
        chunk = cells[k : k + width]
        w = [max(len(a), len(b)) for a, b in chunk]
        rows.append("  " + "  ".join(a.rjust(n) for (a, _), n in zip(chunk, w)))
        rows.append("  " + "  ".join(b.rjust(n) for (_, b), n in zip(chunk, w)))
    return rows


def emit_report(rep: LefschetzReport, fmt: str = "text") -> str:
    """Render an assembled (and possibly analysed) report.

    ``text`` is for reading; ``structured`` is ``key: value`` lines under a
    version header, stable enough to diff.
    """
    if fmt == "structured":
        return _emit_structured(rep)
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    p = rep.prime or 2
    t = rep.table
    out = [f"Lefschetz character of {t.group_name} (recipe {rep.recipe_id})"]
    out.append(f"degree: {rep.degree} = {_factor_p(rep.degree, p)}")
    out.append(f"vector form ({p}-singular classes marked *):")
    out += _vector_rows(rep, _cells(rep.lam), p)
    out.append(f"scalar product form: {rep.mults.describe(positional=True)}")
    if rep.degree:
        vd, vg = rep.p_valuation_of_degree(p), rep.p_valuation_of_group(p)
        out.append(f"{p}-adic profile: v(degree) = {vd}, v(|G|) = {vg}, gap {vg - vd}")
    for ba in rep.blocks:
        head = f"block {ba.block_id} (defect {ba.defect})"
        if ba.is_zero:
            out.append(f"{head}: zero part")
            continue
        cells = _cells(ba.part.values)
        out.append(f"{head}: degree {cells[0]}")
        out += _vector_rows(rep, cells, p)
        out.append(f"  characters: {ba.part.mults.describe(positional=True)}")
        out.append(f"  p-test: {ba.p_test}")
        out.append(f"  vanishing test: {ba.vanishing}")
        if ba.exact is not None:
            out.append(f"  v-projective: {ba.exact.describe()}")
        else:
            out.append(f"  not v-projective ({ba.exact_failure})")
        if ba.closest is not None and ba.exact is None:
            out.append(f"  closest: {ba.closest.describe()} (residue {ba.closest.residue_total})")
        elif ba.closest_note:
            out.append(f"  closest: {ba.closest_note}")
        out += [f"  note: {n}" for n in ba.notes]
    if rep.classification:
        out.append(f"classification: {CLASS_LABELS[rep.classification]}")
        w = ", ".join(str(b) for b in rep.remark_witnesses) or "none"
        out.append(f"non-principal parts failing exact solve: {w}")
        out.append(f"pattern: {rep.pattern}")
    out += [f"note: {n}" for n in rep.notes]
    return "\n".join(out) + "\n"


def _emit_structured(rep: LefschetzReport) -> str:
    p = rep.prime or 2
    t = rep.table
    out = [
        REPORT_HEADER,
        f"group: {t.ident}",
        f"recipe: {rep.recipe_id}",
        f"negated: {'true' if rep.negated else 'false'}",
        f"prime: {p}",
        f"classes: {', '.join(t.class_names)}",
        f"singular: {', '.join(c.name for c in t.classes if c.element_order % p == 0)}",
        f"values: {', '.join(map(str, rep.values))}",
        f"mults: {', '.join(map(str, rep.mults.mults))}",
        f"degree: {rep.degree}",
    ]
    for ba in rep.blocks:
        out += [
            f"block {ba.block_id} defect: {ba.defect}",
            f"block {ba.block_id} values: {', '.join(_cells(ba.part.values))}",
            f"block {ba.block_id} p-test: {'pass' if ba.p_test.passed else 'fail'}",
            f"block {ba.block_id} vanishing: "
            + ("pass" if ba.vanishing.passed else ", ".join(f"({c}, {v})" for c, v in ba.vanishing.witnesses)),
            f"block {ba.block_id} exact: " + (ba.exact.describe() if ba.exact else f"none ({ba.exact_failure})"),
        ]
        if ba.closest is not None:
            out.append(f"block {ba.block_id} closest: {ba.closest.describe()}; residue {ba.closest.residue_total}")
    if rep.classification:
        pat = rep.pattern
        out += [
            f"classification: {rep.classification}",
            f"remark: {', '.join(map(str, rep.remark_witnesses)) or 'none'}",
        ]
    if rep.classification and pat is not None:
        out += [
            f"pattern: {pat.max_nonprincipal_defect if pat.max_nonprincipal_defect is not None else 'none'}, "
            f"{pat.gap}, {'equal' if pat.equal else 'violated'}",
        ]
    return "\n".join(out) + "\n"
