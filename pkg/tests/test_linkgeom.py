from fractions import Fraction

import pytest

from artin import PointOutsideBallException, ResourceLimitException, PreconditionException
from artin.angles import PI, AtLeast, type2_edge, parse_angle, format_angle, exceeds
from artin.config import Limits
from artin.garside import normal_form, tree_spec, identity
from artin.linkgeom import build_link_type2, build_link_type1, quotient_by_delta, coset_graph, link_distance, \
    fixed_link_vertices, same_tree, orbit_of, LinkGeometry, LinkPoint, VertexKind, coset_key, syllable_length
from artin.presentation import dihedral
from artin.word import Word
from tests.util import load_graph


@pytest.mark.parametrize('m', [2, 3, 4, 5])
def test_type2_edge_lengths(m):
    link = build_link_type2(m, PI)
    assert link.edge_length == Fraction(1, 2 * m)
    assert all(length == Fraction(1, 2 * m) for _, _, length in link.graph.edges(data='length'))


def test_type1_edge_lengths():
    link = build_link_type1(load_graph('path_raag.json'), 'b')
    assert all(length == Fraction(1, 2) for _, _, length in link.graph.edges(data='length'))
    assert len(link.vertices(VertexKind.TYPE2)) == 2
    assert len(link.vertices(VertexKind.COSET0)) == 2 * link.window + 1


@pytest.mark.parametrize('m', [3, 4, 5])
def test_coset_graph_edge_lengths(m):
    edges = coset_graph(build_link_type2(m, PI)).edges(data='length')
    assert edges
    assert all(length == Fraction(1, m) for _, _, length in edges)


def test_label_two_cosets_at_pi():
    """
    Distinct cosets of ``<s>`` in the label 2 link are exactly pi apart.
    """
    geometry = LinkGeometry(2)
    link = build_link_type2(2, PI + type2_edge(2), center=geometry.tbar('s'))
    for rep in ["t", "t^-1", "s t^2"]:
        assert link_distance(link, link.center, geometry.coset1(rep, 's')) == Fraction(1)
    assert geometry.coset1("s^2", 's') == link.center


def test_type0_distance_counts_syllables():
    geometry = LinkGeometry(3)
    link = build_link_type2(3, PI + type2_edge(3))
    assert link_distance(link, link.center, geometry.coset0("s")) == Fraction(1, 3)
    assert link_distance(link, link.center, geometry.coset0("s t")) == Fraction(2, 3)
    assert link_distance(link, link.center, geometry.coset0("s t s^-1")) == Fraction(1)


def test_quotient_tree_direction():
    geometry = LinkGeometry(3, quotient=True)
    link = build_link_type2(3, PI + type2_edge(3), center=geometry.tbar('s'), quotient=True)
    assert link_distance(link, link.center, geometry.coset0("t")) == Fraction(1, 2)
    assert link_distance(link, link.center, geometry.coset0("")) == Fraction(1, 6)
    assert link.tbar('s') == link.center


def test_quotient_identifies_delta_orbits():
    geometry = LinkGeometry(3, quotient=True)
    assert geometry.coset0("s t s t") == geometry.coset0("s")
    assert geometry.coset1("s t s", 't') == geometry.tbar('s')
    plain = build_link_type2(3, Fraction(1, 2))
    quotient = quotient_by_delta(plain)
    assert quotient.quotient and quotient.radius == plain.radius
    assert all(orbit_of(plain, v) in quotient for v in plain.vertices())


def test_point_on_edge():
    geometry = LinkGeometry(3)
    link = build_link_type2(3, PI)
    point = LinkPoint(link.center, geometry.coset1("", 's'), Fraction(1, 12))
    assert link_distance(link, point, link.center) == Fraction(1, 12)
    assert link_distance(link, point, geometry.coset1("", 't')) == Fraction(1, 4)


def test_distance_beyond_ball():
    geometry = LinkGeometry(3)
    link = build_link_type2(3, Fraction(1, 2))
    with pytest.raises(PointOutsideBallException):
        link_distance(link, link.center, geometry.coset0("s t s^-1 t"))
    with pytest.raises(ResourceLimitException):
        link_distance(link, geometry.coset0("s t s^-1 t"), link.center)


def test_fixed_link_vertices():
    link = build_link_type2(3, PI)
    fixed = fixed_link_vertices(link, "s^2")
    assert LinkGeometry(3).tbar('s') in fixed
    assert not any(v.kind == VertexKind.COSET0 for v in fixed)
    assert fixed_link_vertices(link, "s t") == set()


@pytest.mark.parametrize('w', ["s", "t s^2 t^-1", "s t"])
@pytest.mark.parametrize('k', [2, 3])
def test_fixed_vertices_of_powers(w, k):
    link = build_link_type2(3, PI)
    assert fixed_link_vertices(link, w) == fixed_link_vertices(link, Word.parse(w).power(k))


@pytest.mark.parametrize('m', [3, 4])
def test_quotient_distance_is_least_over_orbit(m):
    """
    Distances in the quotient are the least plain distance to any vertex of the orbit.
    """
    plain = build_link_type2(m, PI)
    quotient = quotient_by_delta(plain)
    for v in quotient.vertices():
        distance = link_distance(quotient, quotient.center, v)
        if isinstance(distance, AtLeast) or distance > Fraction(1, 2):
            continue
        lifts = [link_distance(plain, plain.center, u) for u in plain.vertices() if orbit_of(plain, u) == v]
        assert distance == min(d for d in lifts if not isinstance(d, AtLeast))


def test_syllable_length():
    assert syllable_length(identity(3), 3, 2, 0) == 0
    assert syllable_length(normal_form("s^3", 3), 3, 2, 3) == 1
    assert syllable_length(normal_form("s^5 t^-5", 3), 3, 2, 10) == 2
    assert syllable_length(normal_form("t^-2 s^4", 4), 4, 3, 6) == 2
    assert syllable_length(normal_form("s t s", 3), 3, 2, 3) is None
    with pytest.raises(PreconditionException):
        syllable_length(normal_form("s", 3), 3, 3, 1)


def test_same_tree():
    a, b = tree_spec("s t s", "s", 1), tree_spec("", "t", 2)
    assert same_tree(a, b, 3)
    assert not same_tree(a, b, 4)
    assert not same_tree(tree_spec("", "s", 1), tree_spec("t", "s", 1), 4)


def test_coset_keys():
    assert coset_key(normal_form("s t s^-1", 3), 's') == coset_key(normal_form("s t", 3), 's')
    assert coset_key(normal_form("s t", 3), 's') == coset_key(normal_form("s t s", 3), 's')
    assert coset_key(normal_form("s t", 3), 't') != coset_key(normal_form("s t", 3), 's')


def test_ball_limits():
    with pytest.raises(ResourceLimitException):
        build_link_type2(3, PI, limits=Limits(budget=10))
    with pytest.raises(ResourceLimitException):
        build_link_type2(3, Fraction(5))
    with pytest.raises(PreconditionException):
        build_link_type2(3, Fraction(1, 12))
    with pytest.raises(PreconditionException):
        build_link_type1(dihedral(3), 'u')


def test_angles():
    assert parse_angle("7/6 pi") == Fraction(7, 6)
    assert format_angle(Fraction(3, 4)) == '3pi/4'
    assert exceeds(AtLeast(Fraction(7, 6)), PI)
    assert not exceeds(Fraction(1, 2), PI)
