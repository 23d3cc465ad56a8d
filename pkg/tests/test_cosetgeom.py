import pytest

from conftest import bundle
from lefblock.cosetgeom import (
    PermGroupSpec,
    Permutation,
    build_complex,
    conjugacy_classes,
    enumerate_cosets,
    fixed_subcomplex_euler,
    group_elements,
    lefschetz_by_fixed_points,
    parse_cycles,
)
from lefblock.errors import BoundExceeded


def spec(name):
    b = bundle(name)
    return next(iter(b.perms.values()))


def test_permutation_basics():
    p = parse_cycles("(0 1 2)", 3)
    q = parse_cycles("(0 1)", 3)
    assert (p * q).images == (p.images[q.images[0]], p.images[q.images[1]], p.images[q.images[2]])
    assert p.order() == 3 and (p * p * p) == Permutation.identity(3)
    assert p.inverse() * p == Permutation.identity(3)
    assert parse_cycles(p.cycles(), 3) == p
    with pytest.raises(ValueError):
        parse_cycles("(0 0 1)", 3)


def test_s3_point_stabilizer_cosets():
    s = spec("S3-points")
    assert len(enumerate_cosets(s, 0)) == 3


def test_gl32_parabolic_cosets():
    s = spec("GL32-toy")
    assert len(group_elements(s.generators, s.degree)) == 168
    assert len(enumerate_cosets(s, "P1")) == 7
    assert len(enumerate_cosets(s, "P2")) == 7


def test_fano_incidence_graph():
    c = build_complex(spec("GL32-toy"))
    assert c.f_vector == (14, 21)


def test_single_type_has_no_edges():
    assert build_complex(spec("S3-points")).f_vector == (3,)


def test_s4_edges_match_double_loop():
    s = spec("S4-oracle")
    c = build_complex(s)
    G = group_elements(s.generators, s.degree)
    H = [set(group_elements(gens, s.degree)) for _, gens in s.subgroups]
    cos = [{frozenset(g * h for h in Hi) for g in G} for Hi in H]
    edges = sum(1 for x in cos[0] for y in cos[1] if x & y)
    assert c.f_vector == (len(cos[0]) + len(cos[1]), edges)


def test_gl32_oracle_values():
    s = spec("GL32-toy")
    c = build_complex(s)
    reps = dict(s.class_reps)
    assert fixed_subcomplex_euler(c, reps["1A"]) == -8
    assert fixed_subcomplex_euler(c, reps["2A"]) == 0
    assert lefschetz_by_fixed_points(s) == [-8, 0, 1, 0, -1, -1]


def test_s3_points_oracle():
    assert lefschetz_by_fixed_points(spec("S3-points")) == [2, 0, -1]


def test_single_fixed_vertex_is_contractible():
    s = spec("S3-points")
    c = build_complex(s)
    # a transposition fixes exactly one point, hence one vertex
    assert fixed_subcomplex_euler(c, parse_cycles("(0 1)", 3)) == 0


def test_cone_when_a_subgroup_is_everything():
    s = spec("S3-points")
    cone = PermGroupSpec("cone", 3, s.generators, (("G", s.generators),) + s.subgroups)
    assert lefschetz_by_fixed_points(cone) == [0] * 3


def test_conjugacy_classes_of_s4():
    s = spec("S4-oracle")
    sizes = sorted(len(c) for c in conjugacy_classes(s))
    assert sizes == [1, 3, 6, 6, 8]


def test_bound():
    s = spec("GL32-toy")
    with pytest.raises(BoundExceeded):
        group_elements(s.generators, s.degree, bound=100)
