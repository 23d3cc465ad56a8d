import shutil

import pytest

from conftest import DATA
from test_dataio import _rehash
from lefblock import cli
from lefblock.errors import NotVirtual


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lefschetz_m12(capsys):
    code, out, _ = run(capsys, "lefschetz", "--group", "M12")
    assert code == 0
    assert "degree: 496 = 2^4*31" in out
    assert "scalar product form: chi_14 + 2*chi_15" in out


def test_lefschetz_on_negate(capsys):
    code, out, _ = run(capsys, "lefschetz", "--group", "ON", "--negate")
    assert code == 0 and "degree: 254294272 = 2^8*993337" in out


def test_lefschetz_gl32_toy(capsys):
    code, out, _ = run(capsys, "lefschetz", "--group", "GL32-toy")
    assert code == 0 and "degree: -8" in out


@pytest.mark.parametrize("group, label", [("M12", "Class II"), ("ON", "Class III"), ("HS", "Class II")])
def test_classify(capsys, group, label):
    code, out, _ = run(capsys, "classify", "--group", group)
    assert code == 0 and f"classification: {label} (" in out
    if group == "M12":
        assert "non-principal parts failing exact solve: 2" in out
    if group == "HS":
        assert "v-projective: 2Phi(phi_8)" in out


def test_blocks_omits_classification(capsys):
    code, out, _ = run(capsys, "blocks", "--group", "J2")
    assert code == 0 and "block 2" in out and "classification" not in out


def test_structured_output_is_deterministic(capsys):
    a = run(capsys, "classify", "--group", "J2", "--format", "structured")[1]
    b = run(capsys, "classify", "--group", "J2", "--format", "structured")[1]
    assert a == b and a.startswith("lefblock-report v1\n")


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--group", "GL32")
    assert code == 0 and "routes agree" in out


def test_oracle_bound(capsys):
    code, _, err = run(capsys, "oracle", "--group", "GL32", "--oracle-bound", "50")
    assert code == 2 and "BoundExceeded" in err


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--group", "S4")
    assert code == 0
    assert "route equivalence: 1/1 groups" in out


def test_verify_detects_tampering(capsys, tmp_path):
    d = tmp_path / "M12"
    shutil.copytree(DATA / "M12", d)
    f = d / "expect" / "M12.expect"
    f.write_text(f.read_text().replace("value: 496, -4, 0,", "value: 496, -3, 0,"))
    _rehash(d)
    code, out, _ = run(capsys, "verify", "--bundle", str(d))
    assert code == 1
    assert "2A: got -4, expected -3" in out


def test_missing_block_data(capsys, tmp_path):
    d = tmp_path / "J2"
    shutil.copytree(DATA / "J2", d)
    (d / "brauer" / "J2.mod2.brauer").unlink()
    shutil.rmtree(d / "expect")
    mf = d / "MANIFEST"
    mf.write_text("".join(l for l in mf.read_text().splitlines(True) if "brauer/" not in l and "expect/" not in l))
    code, out, err = run(capsys, "classify", "--bundle", str(d), "--group", "J2")
    assert code == 4 and out == "" and "not yet known" in err
    code, out, _ = run(capsys, "lefschetz", "--bundle", str(d), "--group", "J2")
    assert code == 0 and "degree: 736" in out


def test_env_variable(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("LEFBLOCK_BUNDLE", str(DATA / "S3-points"))
    code, out, _ = run(capsys, "lefschetz", "--group", "S3")
    assert code == 0 and "degree: 2" in out


def test_invalid_inputs(capsys):
    assert run(capsys, "lefschetz", "--group", "Monster")[0] == 2
    assert run(capsys, "classify", "--group", "M12", "--prime", "7")[0] == 2


def test_not_virtual_exit_code(capsys, monkeypatch):
    def boom(*a, **k):
        raise NotVirtual("inner product 1/2 with 1a")

    monkeypatch.setattr(cli, "assemble", boom)
    code, out, err = run(capsys, "lefschetz", "--group", "M12")
    assert code == 3 and out == ""
