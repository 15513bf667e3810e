import json
from fractions import Fraction

import pytest

from artin import AngleTooSmallException, CaseMismatchException, CertificateException, \
    DisjointnessUnknownException, PreconditionException, SpecException
from artin.angles import PI, exceeds
from artin.certifier import certify_free, check_certificate, verify_endpoint, endpoint_minimum, tree_elliptic, \
    vertex_elliptic, spec_from_json, contact_from_json, build_contacts, InteriorEdgeContact, Type1Contact, \
    Type2Contact, EndpointCase, CertificateMode, freeness_sweep, pingpong_tree, reduced_word_count, \
    loxodromic_witness, FORMAT
from artin.export import pingpong_to_json, pingpong_to_dot
from artin.word import Word
from tests.util import load_graph, load_json, vertex_graph, numeric_leaves, mutated


@pytest.fixture(scope='module')
def path_graph():
    return load_graph('path_raag.json')


@pytest.fixture(scope='module')
def path_certificate(path_graph):
    a = spec_from_json(path_graph, load_json('spec_a.json'))
    c = spec_from_json(path_graph, load_json('spec_c.json'))
    return certify_free(path_graph, a, c)


def test_path_certificate(path_certificate):
    """
    ``a`` and ``c`` share the neighbour ``b``: the contact path runs through ``v_ab`` and ``v_cb`` and one power
    is enough.
    """
    assert path_certificate.n == 1
    assert path_certificate.mode == CertificateMode.EXACT
    assert all(a.discharged for a in path_certificate.assumptions)
    assert [r.case for r in path_certificate.endpoints] == [EndpointCase.TYPE2_TREE] * 2
    assert all(d == PI for r in path_certificate.endpoints for d in r.distances)


def test_certificate_checks(path_certificate):
    document = json.loads(json.dumps(path_certificate.to_json()))
    assert document["format"] == FORMAT
    assert check_certificate(document) == path_certificate


def test_raag_sweep(path_certificate):
    sweep = freeness_sweep(path_certificate, 6)
    assert sweep.words == reduced_word_count(6) == 1456
    assert sweep.trivial == 0
    assert sweep.first_trivial is None


def test_tamper_corpus(path_certificate):
    """
    Every single shift of a recorded number is detected.
    """
    document = path_certificate.to_json()
    leaves = numeric_leaves(document, ("n", "limits", "endpoints"))
    corpus = [mutated(document, path, delta) for path in leaves for delta in (1, -1)]
    assert len(corpus) >= 50
    for tampered in corpus:
        with pytest.raises(CertificateException):
            check_certificate(tampered)


def test_tamper_paths(path_certificate):
    document = path_certificate.to_json()
    with pytest.raises(CertificateException) as e:
        check_certificate(mutated(document, ("endpoints", 1, "distances", 0, "num"), 1))
    assert e.value.path == ("endpoints", 1, "distances", 0, "num")
    with pytest.raises(CertificateException) as e:
        check_certificate(mutated(document, ("n",), -1))
    assert e.value.path == ("n",)
    with pytest.raises(CertificateException) as e:
        check_certificate(dict(document, format="other"))
    assert e.value.path == ("format",)


def test_same_element_rejected(path_graph):
    a = tree_elliptic(path_graph, "", "a", 1)
    with pytest.raises(DisjointnessUnknownException):
        certify_free(path_graph, a, a)
    with pytest.raises(DisjointnessUnknownException):
        certify_free(path_graph, a, tree_elliptic(path_graph, "", "b", 1))


def test_exponent_must_be_positive(path_graph, path_certificate):
    with pytest.raises(PreconditionException):
        certify_free(path_graph, path_certificate.a, path_certificate.b, n=0)
    with pytest.raises(PreconditionException):
        verify_endpoint(path_graph, path_certificate.a, path_certificate.gamma[0], 0)


def test_larger_exponent(path_graph, path_certificate):
    certificate = certify_free(path_graph, path_certificate.a, path_certificate.b, n=2)
    assert certificate.n == 2
    assert check_certificate(certificate.to_json()) == certificate


def test_certificate_is_symmetric(path_graph, path_certificate):
    swapped = certify_free(path_graph, path_certificate.b, path_certificate.a)
    assert swapped.n == path_certificate.n
    assert swapped.mode == path_certificate.mode
    assert swapped.gamma == tuple(reversed(path_certificate.gamma))
    assert swapped.endpoints == tuple(reversed(path_certificate.endpoints))


def test_pingpong_tree(path_certificate):
    for depth in (1, 2, 3):
        tree = pingpong_tree(path_certificate, depth)
        assert tree.graph.number_of_edges() == reduced_word_count(depth)
    tree = pingpong_tree(path_certificate, 2)
    assert tree.graph.nodes[((0, 1), (1, -1))]['label'] == 'a c^-1'
    document = pingpong_to_json(tree.graph)
    assert len(document["nodes"]) == 17
    assert pingpong_to_dot(tree.graph).startswith("digraph pingpong {")


def test_loxodromic_witness(path_certificate):
    witness = loxodromic_witness(path_certificate)
    assert str(witness.word) == 'a c'
    assert witness.checked_powers == 4


def test_contacts_built_through_common_neighbour(path_graph, path_certificate):
    assert build_contacts(path_graph, path_certificate.a, path_certificate.b) == path_certificate.gamma
    assert path_certificate.gamma[0].vertex == ('a', 'b')


def test_spec_parsing(path_graph):
    with pytest.raises(SpecException):
        spec_from_json(path_graph, {"kind": "cone"})
    with pytest.raises(SpecException):
        spec_from_json(path_graph, {"kind": "tree", "generator": "a", "power": 0})
    with pytest.raises(SpecException):
        vertex_elliptic(path_graph, ("a", "c"), "a c")
    with pytest.raises(SpecException):
        vertex_elliptic(vertex_graph(3), ("s", "t"), "t s t^-1")
    assert contact_from_json(path_graph, {"case": "interior_edge", "perpendicular": True}) == \
        InteriorEdgeContact(True)


def test_interior_edge(path_graph):
    a = tree_elliptic(path_graph, "", "a", 1)
    record = verify_endpoint(path_graph, a, InteriorEdgeContact(True), 3)
    assert record.distances == (PI,) * 4
    with pytest.raises(CaseMismatchException):
        verify_endpoint(path_graph, a, InteriorEdgeContact(False), 1)


def test_type1_endpoint(path_graph):
    a = tree_elliptic(path_graph, "", "a", 1)
    record = verify_endpoint(path_graph, a, Type1Contact('a', {"kind": "coset0", "rep": 0}), 1)
    assert record.case == EndpointCase.TYPE1
    assert record.distances == (PI,) * 4
    with pytest.raises(CaseMismatchException):
        verify_endpoint(path_graph, a, Type1Contact('c', {"kind": "coset0", "rep": 0}), 1)


def tree_contact(rep):
    return Type2Contact(('s', 't'), {"kind": "coset0", "rep": rep}, Word())


def test_tree_endpoint_label_three():
    """
    ``gamma`` leaves ``v_st`` perpendicular to the fixed tree of ``s``; four I edges must separate, which takes
    ``n = 4``.
    """
    graph = vertex_graph(3)
    s = tree_elliptic(graph, "", "s", 1)
    record = verify_endpoint(graph, s, tree_contact("t"), 4)
    assert record.tbar_distance == Fraction(1, 2)
    assert record.n0 == 4
    assert record.f_count == 4
    assert endpoint_minimum(graph, s, tree_contact("t")) == 4
    with pytest.raises(AngleTooSmallException) as e:
        verify_endpoint(graph, s, tree_contact("t"), 3)
    assert e.value.distance == Fraction(2, 3)


def test_tree_endpoint_too_close():
    graph = vertex_graph(3)
    s = tree_elliptic(graph, "", "s", 1)
    with pytest.raises(AngleTooSmallException) as e:
        verify_endpoint(graph, s, tree_contact(""), 4)
    assert e.value.distance == Fraction(1, 6)
    along = Type2Contact(('s', 't'), {"kind": "coset1", "rep": "", "generator": "s"}, Word())
    with pytest.raises(AngleTooSmallException) as e:
        verify_endpoint(graph, s, along, 4)
    assert e.value.distance == 0


def test_vertex_endpoint_label_three():
    graph = vertex_graph(3)
    st = vertex_elliptic(graph, ("s", "t"), "s t")
    contact = tree_contact("")
    with pytest.raises(AngleTooSmallException) as e:
        verify_endpoint(graph, st, contact, 1)
    assert e.value.distance == Fraction(2, 3)
    assert endpoint_minimum(graph, st, contact) == 2
    with pytest.raises(CaseMismatchException):
        verify_endpoint(graph, st, Type2Contact(('s', 't'), {"kind": "coset0", "rep": ""}, Word.parse("s")), 2)


@pytest.mark.parametrize('n', [2, 4, 6])
def test_vertex_endpoint_multiples_pass(n):
    graph = vertex_graph(3)
    st = vertex_elliptic(graph, ("s", "t"), "s t")
    record = verify_endpoint(graph, st, tree_contact(""), n)
    assert record.case == EndpointCase.TYPE2_VERTEX
    assert record.n0 == 2
    assert all(exceeds(d, PI) for d in record.distances)


def test_vertex_endpoint_wide_syllables():
    """
    ``s^5 t^-5`` moves the identity coset only two syllables, whatever exponent window the ball was built with.
    """
    graph = vertex_graph(3)
    element = vertex_elliptic(graph, ("s", "t"), "s^5 t^-5")
    with pytest.raises(AngleTooSmallException) as e:
        verify_endpoint(graph, element, tree_contact(""), 1)
    assert e.value.distance == Fraction(2, 3)


def test_vertex_endpoint_label_two():
    """
    In the label 2 link every translate of a coset of ``<s>`` by a power of ``st`` is exactly pi away.
    """
    graph = vertex_graph(2)
    st = vertex_elliptic(graph, ("s", "t"), "s t")
    contact = Type2Contact(('s', 't'), {"kind": "coset1", "rep": "", "generator": "s"}, Word())
    record = verify_endpoint(graph, st, contact, 1)
    assert record.case == EndpointCase.TYPE2_VERTEX
    assert record.n0 == 1
    assert record.distances == (PI,) * 4
