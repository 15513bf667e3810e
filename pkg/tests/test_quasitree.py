from fractions import Fraction

import pytest

from artin import StructureViolationException, PreconditionException, ResourceLimitException
from artin.config import Limits
from artin.export import quasitree_to_json, quasitree_to_dot, augmented_to_json, augmented_to_dot
from artin.garside import Atom
from artin.linkgeom import build_link_type2, quotient_by_delta, coset_graph
from artin.quasitree import build_quasitree, check_tree_of_simplices, simplex_at, leaf_count, ball_index, \
    build_augmented, check_separating_edges, pr_i, pr_a, EdgeKind, min_exponent_tree_elliptic_type2, f_count, \
    separating_edges, separation_tube, base_node, vertex_of

S, T = (Atom('s', 1),), (Atom('t', 1),)


@pytest.mark.parametrize('m', [3, 4, 5])
@pytest.mark.parametrize('depth', [1, 2, 3, 4])
def test_tree_of_simplices(m, depth):
    ball = build_quasitree(m, depth)
    report = check_tree_of_simplices(ball)
    assert report.vertices == leaf_count(m, depth)
    assert report.clique_size == m


def test_depth_counts():
    ball = build_quasitree(3, 3)
    assert len(ball) == 29
    assert ball_index(ball).tolist() == [1, 4, 8, 16]


def test_simplices_at_identity():
    ball = build_quasitree(3, 2)
    at_identity = {s for s in ball.simplices() if () in s}
    assert at_identity == {frozenset([(), S, (Atom('s', 2),)]), frozenset([(), T, (Atom('t', 2),)])}
    assert at_identity == {simplex_at((), 's', 3), simplex_at((), 't', 3)}


def test_injected_edge_is_caught():
    ball = build_quasitree(3, 2)
    ball.graph.add_edge(S, T, atom=None)
    with pytest.raises(StructureViolationException) as e:
        check_tree_of_simplices(ball)
    assert e.value.witness


def test_quasitree_limits():
    with pytest.raises(PreconditionException):
        build_quasitree(2, 2)
    with pytest.raises(ResourceLimitException):
        build_quasitree(3, 13)
    with pytest.raises(ResourceLimitException):
        build_quasitree(5, 4, limits=Limits(budget=50))


@pytest.mark.parametrize('m', [3, 4, 5])
def test_separating_edges(m):
    augmented = build_augmented(m, 3)
    assert check_separating_edges(augmented) == 1 + 2 * (m - 1)


def test_separating_edges_needs_quotient():
    with pytest.raises(PreconditionException):
        check_separating_edges(build_augmented(3, 1, quotiented=False))


def test_projections():
    augmented = build_augmented(3, 2)
    kinds = augmented.describe()["edges"]
    assert kinds[str(EdgeKind.INTERSECTION)] == len(augmented.base)
    collapsed = pr_i(augmented)
    assert set(collapsed.graph) == set(augmented.base.graph)
    axes = pr_a(augmented)
    assert 0 < axes.graph.number_of_edges() <= kinds[str(EdgeKind.INTERSECTION)]
    assert all(through in augmented.base for _, _, through in axes.graph.edges(data='through'))


def test_axis_projection_matches_quotient_coset_graph():
    """
    Collapsing the A edges gives the coset graph of the quotient link, restricted to edges through the ball.
    """
    augmented = build_augmented(3, 2)
    cosets = coset_graph(quotient_by_delta(build_link_type2(3, Fraction(2), window=2)))
    expected = {frozenset((x, y)) for x, y, through in cosets.edges(data='through') if through.key in augmented.base}
    axes = pr_a(augmented).graph
    assert {frozenset(edge) for edge in axes.edges} == expected
    assert set(axes) <= set(cosets)


def test_plain_augmented_graph():
    augmented = build_augmented(3, 2, quotiented=False)
    assert augmented.describe()["nodes"] == 2 * len(augmented.base)
    node = augmented.node("s", 's')
    assert augmented.translate("s^-1", node) == augmented.node("", 's')


def test_separation_along_axis():
    augmented = separation_tube(3, 's', -1, 3)
    x = base_node(augmented, 's')
    y = augmented.translate("s^2", x)
    result = separating_edges(augmented, x, y, 's', 3)
    assert result.separating == (0, 1)
    assert result.inconclusive == ()


def test_n0_for_label_three():
    result = min_exponent_tree_elliptic_type2(3, 1)
    assert result.n0 == 4
    assert result.monotone
    assert result.counts == {1: 1, 2: 2, 3: 3, 4: 4}
    assert result.window == 16


def test_n0_for_higher_power():
    assert min_exponent_tree_elliptic_type2(3, 2).n0 == 2
    assert f_count(3, -1, 2) == 2


def test_n0_edge_cases():
    assert min_exponent_tree_elliptic_type2(2, 5).n0 == 1
    with pytest.raises(PreconditionException):
        min_exponent_tree_elliptic_type2(3, 0)


def test_vertex_of():
    assert vertex_of("s t s", 3) == ()
    assert vertex_of("s t s t", 3) == S


def test_exports():
    ball = build_quasitree(3, 2)
    document = quasitree_to_json(ball)
    assert document["depth_counts"] == [1, 4, 8]
    assert len(document["vertices"]) == 13
    assert quasitree_to_json(ball) == quasitree_to_json(build_quasitree(3, 2))
    assert quasitree_to_dot(ball).startswith("graph quasitree {")
    augmented = build_augmented(3, 1)
    assert len(augmented_to_json(augmented)["vertices"]) == augmented.describe()["nodes"]
    assert "augmented" in augmented_to_dot(augmented)
