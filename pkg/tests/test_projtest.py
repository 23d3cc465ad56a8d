import itertools
import random

import pytest

from conftest import DATA, bundle, report
from lefblock.dataio import find_bundle
from lefblock.blocks import BlockPart, block_project
from lefblock.chartab import VirtualCharacter
from lefblock.errors import MissingBlockData, NegativeMultiplicity, NotVProjective
from lefblock.lefschetz import assemble
from lefblock.projtest import CLASS_LABELS, analyze, closest_decomposition, exact_vproj_solve, p_test, vanishing_test


def _block(group, bid):
    return next(ba for ba in report(group).blocks if ba.block_id == bid)


def _part(group, bid):
    b = bundle(find_bundle(DATA, group).name).brauer_for(group)
    return block_project(b, report(group, analysed=False).mults, bid), b


def test_p_test_examples():
    suz = report("Suz", analysed=False)
    assert not p_test(suz, 2).passed
    part, _ = _part("ON", 1)
    assert part.degree == 2**10 * 143847
    assert p_test(part, 2).passed
    assert p_test(0, 2, group_order=8).passed


def test_vanishing_examples():
    m12 = report("M12", analysed=False)
    v = vanishing_test(m12.lam, 2)
    assert not v.passed and v.witnesses == (("2A", -4),)
    assert vanishing_test(_part("HS", 1)[0].values, 2).passed
    v = vanishing_test(_part("ON", 1)[0].values, 2)
    assert ("2A", 7168) in v.witnesses


def test_exact_solves():
    assert exact_vproj_solve(*_part("Suz", 1)).describe() == "Phi(phi_13) + Phi(phi_14)"
    assert exact_vproj_solve(*_part("HS", 1)).describe() == "2Phi(phi_8)"
    with pytest.raises(NotVProjective) as e:
        exact_vproj_solve(*_part("Suz", 2))
    assert e.value.reason == "no-rational-solution"


def test_exact_solve_may_be_negative():
    assert exact_vproj_solve(*_part("GL32", 2)).describe() == "-Phi(phi_4)"


@pytest.mark.parametrize(
    "group, bid, expr, total",
    [
        ("M12", 2, "Phi(phi_6) + chi_15", 1),
        ("HS", 2, "Phi(phi_6) + Phi(phi_7) + Phi(phi_9) + chi_24", 1),
        ("J2", 2, "Phi(phi_8) + chi_16", 1),
        ("He", 2, "3Phi(phi_14) + chi_15", 1),
        ("Co3", 2, "4Phi(phi_11) + 6Phi(phi_13) + 11Phi(phi_16) + chi_32 + 2chi_38", 3),
        ("Suz", 2, "Phi(phi_15) + Phi(phi_16) + chi_43", 1),
    ],
)
def test_closest(group, bid, expr, total):
    c = closest_decomposition(*_part(group, bid))
    assert c.describe() == expr and c.residue_total == total


def test_ru_closest_tie():
    # two expressions reach residue 1; the tie-break prefers more projective summands
    part, b = _part("Ru", 2)
    c = closest_decomposition(part, b)
    assert c.residue_total == 1
    assert c.describe() == "2Phi(phi_6) + 2Phi(phi_7) + 5Phi(phi_9) + chi_32"
    alt = [0] * len(b.brauer_names)
    alt[5], alt[6], alt[8] = 1, 1, 6
    res = [0] * len(b.table.irreducibles)
    res[35] = 1
    from lefblock.projtest import ProjExpression

    other = ProjExpression("closest-nonnegative", b, tuple(alt), tuple(res))
    assert other.reconstruct() == part.mults
    assert sum(alt) < sum(c.phi_coeffs)


def test_on_closest_beats_larger_residue():
    c = closest_decomposition(*_part("ON", 1))
    assert c.residue_total == 100
    assert c.reconstruct() == _part("ON", 1)[0].mults


def test_closest_soundness_everywhere():
    for g in ("M12", "J2", "HS", "Suz", "He", "Co3", "Ru", "ON"):
        for ba in report(g).blocks:
            if ba.closest is None:
                continue
            assert ba.closest.reconstruct() == ba.part.mults
            assert min(ba.closest.phi_coeffs + ba.closest.residue) >= 0
            if ba.exact is not None and min(ba.exact.phi_coeffs) >= 0:
                assert ba.closest.residue_total == 0


def _brute(m, D):
    nr, nc = len(D), len(D[0])
    ubs = [min(m[i] // D[i][j] for i in range(nr) if D[i][j]) for j in range(nc)]
    best = None
    for a in itertools.product(*(range(u + 1) for u in ubs)):
        r = [m[i] - sum(D[i][j] * a[j] for j in range(nc)) for i in range(nr)]
        if min(r) < 0:
            continue
        key = (-sum(r), sum(a), tuple(-x for x in a))
        if best is None or key > best[0]:
            best = (key, a)
    return best[1]


def test_closest_matches_brute_force():
    b = bundle("M12").brauer_for("M12")
    rows, cols = b.rows(2), b.cols(2)
    D = [[b.D[i][j] for j in cols] for i in rows]
    rng = random.Random(5)
    n = len(b.table.irreducibles)
    for _ in range(30):
        m = [0] * n
        for i in rows:
            m[i] = rng.randint(0, 4)
        part = BlockPart(2, VirtualCharacter(b.table, tuple(m)), VirtualCharacter(b.table, tuple(m)).class_function())
        got = closest_decomposition(part, b)
        assert tuple(got.phi_coeffs[j] for j in cols) == _brute([m[i] for i in rows], D)


def test_negative_multiplicity():
    with pytest.raises(NegativeMultiplicity):
        closest_decomposition(*_part("GL32", 2))


@pytest.mark.parametrize("group, cls", [("Suz", "II"), ("ON", "III"), ("He", "II"), ("M12", "II"), ("GL32", "I-evidence")])
def test_classification(group, cls):
    assert report(group).classification == cls


def test_he_remark_witness():
    assert report("He").remark_witnesses == [2]


def test_labels():
    assert CLASS_LABELS["II"] == "Class II (Principal Block Part V-Projective)"


def test_missing_block_data():
    rep = assemble(bundle("J2").primary_recipe("J2"))
    with pytest.raises(MissingBlockData):
        analyze(rep, None)


def test_vanishing_agrees_with_exact_solve_everywhere():
    for g in ("S3", "GL32", "S4", "M12", "J2", "HS", "Suz", "He", "Co3", "Ru", "ON"):
        for ba in report(g).blocks:
            assert ba.vanishing.passed == (ba.exact is not None), (g, ba.block_id)
