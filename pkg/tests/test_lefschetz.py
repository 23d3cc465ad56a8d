from dataclasses import replace

import pytest

from conftest import bundle, report
from lefblock.errors import RecipeInvalid, ZeroDegree
from lefblock.lefschetz import assemble, subset_size, two_adic_profile, validate_recipe

M12_VECTOR = [496, -4, 0, -8, -5, 0, 0, 1, -1, 0, 0, 0, 1, 1, 1]


def test_subset_size():
    assert subset_size("124") == 3
    assert subset_size("1,6a,6b") == 3
    assert subset_size("6b") == 1
    with pytest.raises(RecipeInvalid):
        subset_size("11")


def test_m12_vector():
    rep = report("M12", analysed=False)
    assert rep.degree == 496
    assert rep.values == M12_VECTOR


def test_j2_values():
    rep = report("J2", analysed=False)
    t = rep.table
    assert rep.degree == 736
    assert rep.values[t.class_index("2A")] == 0
    assert rep.values[t.class_index("2B")] == -4


def test_gl32_building():
    rep = report("GL32", analysed=False)
    assert rep.degree == -8
    assert rep.mults.describe(positional=True) == "-chi_6"


@pytest.mark.parametrize("group, profile", [("Suz", (10, 13, 3)), ("M12", (4, 6, 2)), ("ON", (8, 9, 1))])
def test_two_adic_profile(group, profile):
    assert two_adic_profile(report(group, analysed=False)) == profile


def test_negate_flag():
    r = bundle("ON").primary_recipe("ON")
    assert r.negate
    raw = assemble(r, negate=False)
    shown = assemble(r)
    assert shown.lam == -raw.lam
    assert shown.degree == 254294272 and shown.negated


@pytest.mark.parametrize("group", ["Suz", "ON"])
def test_full_and_cancelled_forms_agree(group):
    rs = bundle(group).recipes_for(group)
    assert {r.form for r in rs} == {"full", "cancelled"}
    a, b = (assemble(r).lam for r in rs)
    assert a == b


def test_sign_rule():
    r = bundle("GL32-toy").primary_recipe("GL32")
    t = r.terms[0]
    bad = replace(r, terms=(replace(t, sign=-t.sign),) + r.terms[1:])
    with pytest.raises(RecipeInvalid, match="expected"):
        validate_recipe(bad)


def test_duplicate_subset():
    r = bundle("GL32-toy").primary_recipe("GL32")
    with pytest.raises(RecipeInvalid, match="twice"):
        validate_recipe(replace(r, terms=r.terms + r.terms[:1]))


def test_fusion_must_end_at_group():
    r = bundle("GL32-toy").primary_recipe("GL32")
    inner = bundle("GL32-toy").fusions["GL32-B->GL32-P1"]
    t = next(t for t in r.terms if t.carrier.ident == "GL32-B")
    bad = replace(r, terms=tuple(replace(x, fusion=inner) if x is t else x for x in r.terms))
    with pytest.raises(RecipeInvalid):
        validate_recipe(bad)


def test_zero_degree_profile():
    rep = assemble(bundle("GL32-toy").primary_recipe("GL32"))
    rep.lam = rep.lam - rep.lam
    with pytest.raises(ZeroDegree):
        two_adic_profile(rep)
