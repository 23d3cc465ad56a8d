import random
from dataclasses import replace

import pytest

from conftest import bundle, report
from lefblock.chartab import (
    ClassFunction,
    VirtualCharacter,
    decompose,
    induce,
    inflate,
    inner_product,
    parse_combination,
    restrict,
    validate_table,
)
from lefblock.cyclo import E, Cyclotomic
from lefblock.errors import AmbiguousName, NotVirtual, UnknownName


def _corrupt(t, row, col, value):
    rows = [list(r) for r in t.irreducibles]
    rows[row][col] = Cyclotomic.from_terms(1, {0: value})
    return replace(t, irreducibles=tuple(tuple(r) for r in rows))


def test_s3_table_valid(s3toy):
    assert validate_table(s3toy.table("S3")).ok


def test_s3_corruption_names_column_pair(s3toy):
    bad = _corrupt(s3toy.table("S3"), 2, 1, 1)
    rep = validate_table(bad)
    assert not rep.ok
    assert any("column orthogonality violated at (1A, 2A)" in v for v in rep.violations)


def test_m12_table_valid():
    assert validate_table(bundle("M12").table("M12")).ok


def test_irreducibles_have_norm_one(s3toy):
    t = s3toy.table("S3")
    for chi in t.irr():
        assert inner_product(chi, chi) == 1


def test_regular_character():
    t = bundle("M12").table("M12")
    reg = sum((chi * t.degree(i) for i, chi in enumerate(t.irr())), t.zero())
    assert inner_product(reg, t.trivial()) == 1
    assert reg.values[0] == t.order


def test_m12_scalar_products():
    rep = report("M12", analysed=False)
    chi15 = rep.table.character("chi_15")
    assert inner_product(rep.lam, chi15) == 2
    m = [0] * 15
    m[13], m[14] = 1, 2
    assert list(rep.mults.mults) == m


def test_zero_decomposes_to_zero(s3toy):
    t = s3toy.table("S3")
    assert not any(decompose(t.zero()).mults)


def test_suz_multiplicity_vector_tail():
    assert list(report("Suz", analysed=False).mults.mults)[-6:] == [2, 2, 2, 2, 2, 3]


def test_non_virtual_rejected(s3toy):
    t = s3toy.table("S3")
    half = ClassFunction(t, (Cyclotomic.from_terms(1, {0: 1}),) + (Cyclotomic.from_terms(1, {0: 0}),) * 2)
    with pytest.raises(NotVirtual):
        decompose(half)


def test_induce_identity_fusion(s3toy):
    from lefblock.chartab import ClassFusion

    t = s3toy.table("S3")
    ident = ClassFusion("id", t, t, tuple(range(t.nclasses)))
    assert induce(t.trivial(), ident) == t.trivial()


def test_induce_from_a3(s3toy):
    f = s3toy.fusions["A3->S3"]
    up = induce(f.from_table.trivial(), f)
    assert up.integer_values() == [2, 0, 2]
    assert decompose(up).describe() == "1a + 1b"


def test_induce_on_h3_has_index_degree():
    b = bundle("ON")
    f = b.fusions["ON-H3->ON"]
    up = induce(f.from_table.trivial(), f)
    assert up.integer_values()[0] == f.to_table.order // f.from_table.order
    assert inner_product(up, f.to_table.trivial()) == 1


def test_restrict(s3toy):
    f = s3toy.fusions["A3->S3"]
    S3 = f.to_table
    assert restrict(S3.trivial(), f) == f.from_table.trivial()
    assert restrict(S3.character("1b"), f).integer_values() == [1, 1, 1]


def test_frobenius_reciprocity_s3(s3toy):
    f = s3toy.fusions["A3->S3"]
    for x in f.from_table.irr():
        for y in f.to_table.irr():
            assert inner_product(induce(x, f), y) == inner_product(x, restrict(y, f))


def test_inflate():
    b = bundle("S4-oracle")
    q = next(iter(b.quotients.values()))
    Q = q.quotient_table
    assert inflate(Q.trivial(), q) == q.from_table.trivial()
    # V4 is the class 2B in the exported ordering
    two = inflate(Q.character(next(n for n in Q.irr_names if n.startswith("2"))), q)
    assert two.integer_values() == [2, 0, 2, -1, 0]
    rng = random.Random(3)
    for _ in range(50):
        v = VirtualCharacter(Q, tuple(rng.randint(-4, 4) for _ in Q.irr_names))
        assert inflate(v.class_function(), q).values[0] == v.degree


def test_parse_combination():
    t = bundle("Suz").table("U4(2)")
    v = parse_combination(t, "1a+6a+20a")
    assert sorted(t.degree(i) for i, m in enumerate(v.mults) if m) == [1, 6, 20]
    assert parse_combination(t, "20aa").mults[t.irr_index("20a")] == 2
    with pytest.raises(UnknownName):
        parse_combination(t, "99z")


def test_parse_combination_coefficients(s3toy):
    t = s3toy.table("S3")
    assert parse_combination(t, "3*2a - 1b").mults == (0, -1, 3)
    assert parse_combination(t, "chi_3").mults == (0, 0, 1)


def test_ambiguous_doubled_token():
    from lefblock.chartab import CharacterTable, ConjugacyClass

    one = Cyclotomic.from_terms(1, {0: 1})
    cls = (ConjugacyClass("1A", 1, 1, 2), ConjugacyClass("2A", 1, 2, 2))
    t = CharacterTable("T", "T", 2, cls, {}, ("1a", "1aa"), ((one, one), (one, -one)))
    # "1aa" is both a stored name and "1a" twice
    with pytest.raises(AmbiguousName):
        parse_combination(t, "1aa")


def test_non_real_character_values():
    t = bundle("Suz").table("U4(2)")
    chi = t.character("5a")
    assert inner_product(chi, chi.conjugate()) == 0
    assert any(not v.is_rational() for v in chi.values)
    assert inner_product(chi, chi) == 1
