import hashlib
import shutil

import pytest

from conftest import DATA, all_bundles, bundle, report
from lefblock import dataio
from lefblock.errors import BundleReferenceError, ParseError, ValidationError

PARSERS = {
    "ctab": (dataio.parse_table, dataio.dump_table),
    "recipe": (dataio.parse_recipe, dataio.dump_recipe),
    "perm": (dataio.parse_perm, dataio.dump_perm),
    "expect": (dataio.parse_expect, dataio.dump_expect),
}


def _copy(name, tmp_path):
    dst = tmp_path / name
    shutil.copytree(DATA / name, dst)
    return dst


def _rehash(d):
    lines = []
    for line in (d / "MANIFEST").read_text().splitlines():
        if line.startswith("file:"):
            kind, rel, _ = (x.strip() for x in line[5:].split(","))
            digest = hashlib.sha256((d / rel).read_bytes()).hexdigest()
            line = f"file: {kind}, {rel}, {digest}"
        lines.append(line)
    (d / "MANIFEST").write_text("\n".join(lines) + "\n")


def test_s3_toy_loads():
    b = bundle("S3-toy")
    assert len(b.tables) == 2 and len(b.fusions) == 1


def test_m12_loads_validated():
    b = bundle("M12")
    assert "M12" in b.groups and b.brauer_for("M12") is not None


def test_round_trip_is_byte_identical():
    n = 0
    for name in all_bundles():
        for kind, rel, _ in bundle(name).files:
            text = (DATA / name / rel).read_text()
            if kind in PARSERS:
                parse, dump = PARSERS[kind]
                assert dump(parse(text)) == text, rel
                n += 1
            elif kind == "brauer":
                b = bundle(name)
                m = dataio.parse_brauer(text)
                assert dataio.dump_brauer(b.brauer[(m.table, m.p)], m.source) == text
            elif kind in ("fusion", "quotient"):
                m = dataio._parse_map(text, kind, rel)
                assert dataio._dump_map(kind, m.ident, m.src, m.dst, m.map) == text
    assert n > 50


def test_every_record_is_cited():
    for name in all_bundles():
        for e in bundle(name).expects:
            assert e.cite.strip(), e.name


def test_fusion_order_corruption(tmp_path):
    d = _copy("S3-toy", tmp_path)
    f = d / "fusions" / "A3-_S3.fusion"
    f.write_text(f.read_text().replace("map: 0, 2, 2", "map: 0, 1, 2"))
    _rehash(d)
    with pytest.raises(ValidationError, match="element order not preserved"):
        dataio.load_bundle(d)


def test_hash_mismatch(tmp_path):
    d = _copy("S3-toy", tmp_path)
    f = d / "fusions" / "A3-_S3.fusion"
    f.write_text(f.read_text() + "\n")
    with pytest.raises(ValidationError) as e:
        dataio.load_bundle(d)
    assert e.value.check == "manifest hash"


def test_dangling_reference(tmp_path):
    d = _copy("S3-toy", tmp_path)
    f = d / "fusions" / "A3-_S3.fusion"
    f.write_text(f.read_text().replace("from: A3", "from: A4"))
    _rehash(d)
    with pytest.raises(BundleReferenceError):
        dataio.load_bundle(d)


def test_table_corruption_is_named(tmp_path):
    d = _copy("S3-toy", tmp_path)
    f = d / "tables" / "S3.ctab"
    f.write_text(f.read_text().replace("irr 2a: 2, 0, -1", "irr 2a: 2, 1, -1"))
    _rehash(d)
    with pytest.raises(ValidationError) as e:
        dataio.load_bundle(d)
    assert e.value.check == "table invariants"


def test_parse_error_position():
    text = "lefblock-fusion v1\nid: x\nfrom: A\nto: B\nmap: 0, two\n"
    with pytest.raises(ParseError) as e:
        dataio.parse_fusion(text, "f.fusion")
    assert e.value.line == 5


def test_wrong_header():
    with pytest.raises(ParseError) as e:
        dataio.parse_table("lefblock-ctab v2\n")
    assert e.value.line == 1


def test_find_bundle_by_group_or_id():
    assert dataio.find_bundle(DATA, "GL32").name == "GL32-toy"
    assert dataio.find_bundle(DATA, "GL32-toy").name == "GL32-toy"
    with pytest.raises(BundleReferenceError):
        dataio.find_bundle(DATA, "Monster")


def test_report_m12_vector_form():
    text = dataio.emit_report(report("M12"))
    lines = text.splitlines()
    i = next(k for k, l in enumerate(lines) if l.split()[:2] == ["1A", "2A*"])
    assert lines[i + 1].split()[:2] == ["496", "-4*"]


def test_report_labels():
    assert "Class II (Principal Block Part V-Projective)" in dataio.emit_report(report("Suz"))
    assert "pattern: defect 3 vs gap 1: VIOLATED" in dataio.emit_report(report("ON"))


def test_structured_report():
    doc = dataio.emit_report(report("HS"), "structured")
    lines = doc.splitlines()
    assert lines[0] == "lefblock-report v1"
    assert "block 1 exact: 2Phi(phi_8)" in lines
    assert "classification: II" in lines
    assert doc == dataio.emit_report(report("HS"), "structured")


def test_report_handles_irrational_block_values():
    text = dataio.emit_report(report("ON"))
    assert "E(5," in text
