"""
Certificates that ``<a^n, b^n>`` is free of rank two for elliptic ``a`` and ``b`` with disjoint fixed sets.

A contact path ``gamma`` runs from ``Fix(a)`` to ``Fix(b)``.  At each end the translates of ``gamma`` by the
nontrivial powers of ``a^n`` (respectively ``b^n``) must leave the fixed set at an angle of at least pi; then the
translates of ``gamma`` by reduced words concatenate to local geodesics and ping-pong gives freeness.  Each end is
checked by a case analysis on where ``gamma`` meets the fixed set, and the certificate stores every exact number
that was computed so that :func:`check_certificate` can recompute and compare them.
"""
from collections import namedtuple, deque
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache

import networkx as nx

from . import garside, quasitree
from .angles import AtLeast, PI, HALF_PI, exceeds, angle_to_json, angle_from_json, type2_edge
from .config import Limits, DEFAULT_LIMITS
from .exceptions import ArtinException, SpecException, CaseMismatchException, AngleTooSmallException, \
    BallTooSmallException, DisjointnessUnknownException, CertificateException, PreconditionException, \
    UnresolvedException, GraphSyntaxException, ModeException, ValidationException
from .garside import DihedralElement, VertexElliptic
from .linkgeom import LinkGeometry, LinkPoint, LinkVertex, VertexKind, build_link_type1, build_link_type2, \
    link_distance, fixed_link_vertices, syllable_length
from .logger import logger
from .oracles import raag_normal_form, reduced_words
from .presentation import PresentationGraph, graph_from_json, is_two_dimensional
from .word import Word, as_word

FORMAT = "freeness-cert/1"


class TreeEllipticSpec(namedtuple("TreeEllipticSpecTuple", ["conjugator", "generator", "power"])):
    """``conjugator generator^power conjugator^-1``, fixing a conjugate of the standard tree of ``generator``."""
    kind = 'tree'

    def word(self) -> Word:
        return self.conjugator * Word.power_of(self.generator, self.power) * self.conjugator.inverse

    def to_json(self) -> dict:
        return {"kind": self.kind, "conjugator": str(self.conjugator), "generator": self.generator,
                "power": self.power}


class VertexEllipticSpec(namedtuple("VertexEllipticSpecTuple", ["vertex", "element"])):
    """An element of the vertex group ``<x, y>`` fixing only the standard type 2 vertex ``v_xy``."""
    kind = 'vertex'

    def word(self) -> Word:
        return self.element

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertex": list(self.vertex), "word": str(self.element)}


EllipticSpec = TreeEllipticSpec | VertexEllipticSpec


def _vertex_label(graph: PresentationGraph, vertex) -> int:
    if len(vertex) != 2 or vertex[0] == vertex[1]:
        raise SpecException(f"A type 2 vertex needs two distinct generators, got {vertex!r}")
    m = graph.label(*vertex)
    if m is None:
        raise SpecException(f"{vertex[0]} and {vertex[1]} are not adjacent, so there is no vertex v_{''.join(vertex)}")
    return m


def _local(vertex) -> dict:
    """Renaming of the vertex generators to ``s`` and ``t``."""
    return {vertex[0]: 's', vertex[1]: 't'}


def tree_elliptic(graph: PresentationGraph, conjugator, generator: str, power: int) -> TreeEllipticSpec:
    if generator not in graph.generators:
        raise SpecException(f"{generator!r} is not a generator of {graph!r}")
    if not isinstance(power, int) or isinstance(power, bool) or power == 0:
        raise SpecException(f"A tree-elliptic power must be a nonzero integer, got {power!r}")
    return TreeEllipticSpec(as_word(conjugator, graph.generators), generator, power)


def vertex_elliptic(graph: PresentationGraph, vertex, word) -> VertexEllipticSpec:
    """
    Validated vertex-elliptic spec: the word must lie in the vertex group and classify as vertex-elliptic there.
    """
    vertex = tuple(vertex)
    m = _vertex_label(graph, vertex)
    w = as_word(word, vertex)
    if not isinstance(garside.classify_elliptic(w.rename(_local(vertex)), m), VertexElliptic):
        raise SpecException(f"{w} is conjugate to a generator power in A_{''.join(vertex)}, so it fixes a tree")
    return VertexEllipticSpec(vertex, w)


def spec_from_json(graph: PresentationGraph, document) -> EllipticSpec:
    """
    >>> g = PresentationGraph("abc", {frozenset("ab"): 2, frozenset("bc"): 2})
    >>> spec_from_json(g, {"kind": "tree", "conjugator": "", "generator": "a", "power": 1})
    TreeEllipticSpec(conjugator=Word('e'), generator='a', power=1)
    """
    try:
        match document["kind"]:
            case "tree":
                return tree_elliptic(graph, document.get("conjugator", ""), document["generator"],
                                     document.get("power", 1))
            case "vertex":
                return vertex_elliptic(graph, document["vertex"], document["word"])
            case kind:
                raise SpecException(f"Unknown elliptic kind {kind!r}; expected tree or vertex")
    except (KeyError, TypeError) as e:
        raise SpecException(f"Malformed elliptic spec {document!r}: missing {e}")


class InteriorEdgeContact(namedtuple("InteriorEdgeContactTuple", ["perpendicular"])):
    """``gamma`` meets the fixed tree in the interior of an edge."""
    case = 'interior_edge'

    def to_json(self) -> dict:
        return {"case": self.case, "perpendicular": self.perpendicular}


class Type1Contact(namedtuple("Type1ContactTuple", ["generator", "gamma_bar"])):
    """
    ``gamma`` meets the fixed tree at a type 1 vertex ``<generator>``; ``gamma_bar`` is the direction of
    ``gamma`` in its link, as a point document.
    """
    case = 'type1'

    def to_json(self) -> dict:
        return {"case": self.case, "generator": self.generator, "gamma_bar": self.gamma_bar}


class Type2Contact(namedtuple("Type2ContactTuple", ["vertex", "gamma_bar", "frame"])):
    """
    ``gamma`` meets the fixed set at the type 2 vertex ``frame v_xy``; ``gamma_bar`` is a point document in the
    link of ``v_xy`` written with the vertex generators.
    """
    case = 'type2'

    def to_json(self) -> dict:
        document = {"case": self.case, "vertex": list(self.vertex), "gamma_bar": self.gamma_bar}
        if self.frame:
            document["frame"] = str(self.frame)
        return document


ContactSpec = InteriorEdgeContact | Type1Contact | Type2Contact


def contact_from_json(graph: PresentationGraph, document) -> ContactSpec:
    try:
        match document["case"]:
            case "interior_edge":
                return InteriorEdgeContact(bool(document.get("perpendicular", False)))
            case "type1":
                if document["generator"] not in graph.generators:
                    raise SpecException(f"{document['generator']!r} is not a generator of {graph!r}")
                return Type1Contact(document["generator"], document["gamma_bar"])
            case "type2":
                vertex = tuple(document["vertex"])
                _vertex_label(graph, vertex)
                return Type2Contact(vertex, document["gamma_bar"],
                                    as_word(document.get("frame", ""), graph.generators))
            case other:
                raise SpecException(f"Unknown contact case {other!r}")
    except (KeyError, TypeError) as e:
        raise SpecException(f"Malformed contact {document!r}: missing {e}")


def link_point(geometry: LinkGeometry, document, rename: dict) -> LinkPoint:
    """
    Read a point document: ``{"kind": "coset0", "rep": w}``, ``{"kind": "coset1", "rep": w, "generator": x}``
    or ``{"kind": "edge", "from": point, "to": point, "offset": angle}``.
    """
    alphabet = tuple(rename)
    try:
        match document["kind"]:
            case "coset0":
                return LinkPoint.at(geometry.coset0(as_word(document["rep"], alphabet).rename(rename)))
            case "coset1":
                rep = as_word(document["rep"], alphabet).rename(rename)
                return LinkPoint.at(geometry.coset1(rep, rename[document["generator"]]))
            case "edge":
                start = link_point(geometry, document["from"], rename)
                end = link_point(geometry, document["to"], rename)
                if not (start.is_vertex and end.is_vertex):
                    raise SpecException("Edge point ends must be vertices")
                offset = angle_from_json(document["offset"])
                if not 0 < offset < geometry.edge_length:
                    raise SpecException(f"Offset {offset} must lie strictly inside the edge")
                zero, one = (start, end) if start.vertex.kind == VertexKind.COSET0 else (end, start)
                if one.vertex not in geometry.neighbors(zero.vertex, 0):
                    raise SpecException("Edge point ends are not adjacent")
                return LinkPoint(start.vertex, end.vertex, offset)
            case kind:
                raise SpecException(f"Unknown link point kind {kind!r}")
    except (KeyError, TypeError) as e:
        raise SpecException(f"Malformed link point {document!r}: missing {e}")
    except GraphSyntaxException as e:
        raise SpecException(f"Bad word in link point: {e}")


def translate_point(geometry: LinkGeometry, g: DihedralElement, point: LinkPoint) -> LinkPoint:
    toward = None if point.is_vertex else geometry.translate(g, point.toward)
    return LinkPoint(geometry.translate(g, point.vertex), toward, point.offset)


class EndpointCase(StrEnum):
    INTERIOR_EDGE = 'interior_edge'
    TYPE1 = 'type1'
    TYPE2_TREE = 'type2_tree'
    TYPE2_VERTEX = 'type2_vertex'


@dataclass(frozen=True)
class EndpointRecord:
    """
    Everything computed at one end.  ``distances[k - 1]`` is the angle between ``gamma`` and its translate by
    the ``k``-th power of ``a^n``; ``tbar_distance`` and ``f_count`` belong to tree-elliptic type 2 ends of label 3
    or more.
    """
    case: EndpointCase
    n: int
    n0: int
    m: int | None = None
    K: int | None = None
    window: int | None = None
    radius: Fraction | None = None
    distances: tuple = ()
    tbar_distance: Fraction | AtLeast | None = None
    f_count: int | None = None

    def to_json(self) -> dict:
        document = {"case": str(self.case), "n": self.n, "n0": self.n0}
        for name in ('m', 'K', 'window', 'f_count'):
            if getattr(self, name) is not None:
                document[name] = getattr(self, name)
        if self.radius is not None:
            document["radius"] = angle_to_json(self.radius)
        if self.tbar_distance is not None:
            document["tbar_distance"] = angle_to_json(self.tbar_distance)
        if self.distances:
            document["distances"] = [angle_to_json(d) for d in self.distances]
        return document


def _in_ball(link, point: LinkPoint) -> bool:
    return point.vertex in link and (point.is_vertex or link.graph.has_edge(point.vertex, point.toward))


def _point_distance(link, p: LinkPoint, q: LinkPoint):
    """Like :func:`link_distance`, but a point beyond the ball is reported at least the remaining radius away."""
    if not _in_ball(link, q):
        return AtLeast(link.radius - link.distance_to_center(p))
    return link_distance(link, p, q)


@lru_cache(maxsize=32)
def _plain_ball(m: int, center: LinkVertex, window: int, limits: Limits):
    return build_link_type2(m, PI + type2_edge(m), center=center, window=window, limits=limits)


def _translate_distances(m: int, gamma: LinkPoint, element: DihedralElement, n: int, K: int, window: int,
                         limits: Limits, word: Word | None = None) -> tuple:
    """
    Distances from ``gamma`` to its translates by ``element^(n k)``, ``1 <= k <= K``, in the plain link.  Given
    ``word`` for ``element``, every value of at least pi is confirmed off the ball.
    """
    link = _plain_ball(m, gamma.vertex, window, limits)
    geometry = link.geometry
    distances = []
    for k in range(1, K + 1):
        d = _point_distance(link, gamma, translate_point(geometry, element ** (n * k), gamma))
        if word is not None:
            d = _confirmed(m, gamma, word.power(n * k), d, window, limits)
        distances.append(d)
    return tuple(distances)


def _confirmed(m: int, gamma: LinkPoint, translation: Word, d, window: int, limits: Limits):
    """
    A ball value below pi is a real path.  Otherwise a type 0 ``gamma`` gets the exact syllable count of the
    translation, and any other point must at least have its translate inside the ball.
    """
    if not isinstance(d, AtLeast) and d < PI:
        return d
    if not (gamma.is_vertex and gamma.vertex.kind == VertexKind.COSET0):
        if isinstance(d, AtLeast):
            raise BallTooSmallException(f"A translate of gamma leaves the ball built with window {window}",
                                        PI + type2_edge(m))
        return d
    g = gamma.vertex.key.word()
    u = (g.inverse * translation * g).free_reduce()
    r = syllable_length(garside.normal_form(u, m), m, m - 1, len(u), limits)
    if r is not None:
        return Fraction(r, m)
    return PI if d == PI else AtLeast(PI)


def _require_pi(distances, what: str):
    for k, d in enumerate(distances, start=1):
        if not exceeds(d, PI):
            raise AngleTooSmallException(f"{what}: translate {k} is at distance {d} pi < pi", d)


def _stable(m, gamma, element, word, n, K, window, limits, what):
    """A wider window only adds shortcuts; the verdict must survive one more step of it."""
    wider = _translate_distances(m, gamma, element, n, K, window + 1, limits, word)
    if not all(exceeds(d, PI) for d in wider):
        raise BallTooSmallException(f"{what}: verdict changes when the window grows to {window + 1}",
                                    PI + type2_edge(m))


def _interior_edge(spec, contact: InteriorEdgeContact, n: int, limits: Limits) -> EndpointRecord:
    if spec.kind != 'tree':
        raise CaseMismatchException("A vertex-elliptic element fixes no edge, so gamma cannot meet an edge interior")
    if not contact.perpendicular:
        raise CaseMismatchException("Only perpendicular edge contacts are certified")
    K = limits.bounded_k
    return EndpointRecord(EndpointCase.INTERIOR_EDGE, n, 1, K=K, distances=(PI,) * K)


def _type1(graph, spec, contact: Type1Contact, n: int, limits: Limits) -> EndpointRecord:
    if spec.kind != 'tree' or spec.generator != contact.generator:
        raise CaseMismatchException(f"The type 1 vertex <{contact.generator}> is not on the fixed tree of {spec}")
    if contact.gamma_bar.get("kind") != "coset0":
        raise CaseMismatchException("At a type 1 vertex gamma must leave towards a type 0 vertex")
    rep = contact.gamma_bar.get("rep", 0)
    if not isinstance(rep, int):
        raise SpecException(f"A type 1 link direction is an integer power, got {rep!r}")
    K = limits.bounded_k
    shift = spec.power * n
    window = limits.window + abs(rep) + K * abs(shift)
    radius = Fraction(2)
    link = build_link_type1(graph, contact.generator, radius, window, limits)
    gamma = LinkVertex(VertexKind.COSET0, rep)
    distances = tuple(link_distance(link, gamma, LinkVertex(VertexKind.COSET0, rep + shift * k))
                      for k in range(1, K + 1))
    _require_pi(distances, "type 1 contact")
    return EndpointRecord(EndpointCase.TYPE1, n, 1, K=K, window=window, radius=radius, distances=distances)


def _local_conjugator(spec: TreeEllipticSpec, contact: Type2Contact) -> Word:
    u = (contact.frame.inverse * spec.conjugator).free_reduce()
    if spec.generator not in contact.vertex or not u.generators <= set(contact.vertex):
        raise CaseMismatchException(f"The vertex {contact.frame} v_{''.join(contact.vertex)} is not on the fixed "
                                    f"tree of {spec.word()}")
    return u


def _tbar_distance(m: int, gamma: LinkPoint, letter: str, window: int, limits: Limits):
    radius = PI + type2_edge(m)
    link = build_link_type2(m, radius, center=LinkGeometry(m, True).tbar(letter), window=window, quotient=True,
                            limits=limits)
    if not _in_ball(link, gamma):
        raise BallTooSmallException(f"gamma_bar is not in the quotient link ball of radius {radius} pi", 2 * radius)
    return link_distance(link, gamma, link.center)


def _type2_tree_tbar(m, spec, contact, limits):
    rename = _local(contact.vertex)
    geometry = LinkGeometry(m, quotient=True)
    u = garside.normal_form(_local_conjugator(spec, contact).rename(rename), m)
    gamma = translate_point(geometry, u.inverse(), link_point(geometry, contact.gamma_bar, rename))
    letter = rename[spec.generator]
    distance = _tbar_distance(m, gamma, letter, limits.window, limits)
    if not exceeds(distance, HALF_PI):
        raise AngleTooSmallException(f"gamma_bar is at distance {distance} pi < pi/2 from the fixed tree", distance)
    if not exceeds(_tbar_distance(m, gamma, letter, limits.window + 1, limits), HALF_PI):
        raise BallTooSmallException("Distance to the fixed tree drops when the window grows", PI + type2_edge(m))
    return letter, distance


def _type2_tree(m: int, spec, contact: Type2Contact, n: int, limits: Limits) -> EndpointRecord:
    letter, distance = _type2_tree_tbar(m, spec, contact, limits)
    n0 = quasitree.min_exponent_tree_elliptic_type2(m, spec.power, letter, limits=limits).n0
    f = quasitree.f_count(m, spec.power, n, letter, limits)
    if n < n0 or f < m + 1:
        raise AngleTooSmallException(f"n={n} separates only {f} edges (n0={n0}); the angle bound is "
                                     f"{Fraction(f - 1, m)} pi", Fraction(f - 1, m))
    return EndpointRecord(EndpointCase.TYPE2_TREE, n, n0, m=m, window=limits.window, radius=PI + type2_edge(m),
                          tbar_distance=distance, f_count=f)


def _type2_tree_rank2(spec, contact: Type2Contact, n: int, limits: Limits) -> EndpointRecord:
    rename = _local(contact.vertex)
    geometry = LinkGeometry(2)
    u = garside.normal_form(_local_conjugator(spec, contact).rename(rename), 2)
    gamma = translate_point(geometry, u.inverse(), link_point(geometry, contact.gamma_bar, rename))
    letter = rename[spec.generator]
    v = gamma.vertex
    if not gamma.is_vertex or v.kind != VertexKind.COSET1 or v.key.generator == letter:
        raise CaseMismatchException(f"With label 2 gamma_bar must be a coset of {garside.other(letter)}")
    K = limits.bounded_k
    window = limits.window + abs(v.key.body) + K * abs(spec.power) * n
    element = garside.letter_form(letter, spec.power, 2)
    distances = _translate_distances(2, gamma, element, n, K, window, limits)
    _require_pi(distances, "label 2 tree-elliptic contact")
    return EndpointRecord(EndpointCase.TYPE2_TREE, n, 1, m=2, K=K, window=window, radius=PI + type2_edge(2),
                          distances=distances)


def _vertex_setup(m, spec, contact, n, limits):
    if set(spec.vertex) != set(contact.vertex):
        raise CaseMismatchException(f"{spec.word()} fixes v_{''.join(spec.vertex)}, not v_{''.join(contact.vertex)}")
    if contact.frame.free_reduce():
        raise CaseMismatchException("A vertex-elliptic element fixes only the standard vertex; the frame must be e")
    rename = _local(contact.vertex)
    geometry = LinkGeometry(m)
    gamma = link_point(geometry, contact.gamma_bar, rename)
    word = spec.word().rename(rename)
    element = garside.normal_form(word, m)
    K = limits.bounded_k
    window = limits.window
    rep, _ = geometry.representative(gamma.vertex)
    if m == 2:
        window += max(abs(rep.p), abs(rep.q)) + K * n * max(abs(element.p), abs(element.q))
    else:
        window += max(_largest_syllable(word.power(n * K)), _largest_syllable(rep.word()))
    return gamma, element, word, K, window


def _largest_syllable(word: Word) -> int:
    return max((abs(e) for _, e in word.syllables()), default=0)


def _vertex_passes(m, gamma, element, word, n, K, window, limits) -> bool:
    return all(exceeds(d, PI) for d in _translate_distances(m, gamma, element, n, K, window, limits, word))


def _type2_vertex(m: int, spec, contact: Type2Contact, n: int, limits: Limits) -> EndpointRecord:
    gamma, element, word, K, window = _vertex_setup(m, spec, contact, n, limits)
    if m == 2:
        link = _plain_ball(2, gamma.vertex, window, limits)
        fixed = fixed_link_vertices(link, element)
        if fixed:
            raise CaseMismatchException(f"{spec.word()} fixes {len(fixed)} link vertices; it is not vertex-elliptic")
        n0 = 1
    else:
        n0 = next((k for k in range(1, n + 1) if _vertex_passes(m, gamma, element, word, k, K, window, limits)), n)
    distances = _translate_distances(m, gamma, element, n, K, window, limits, word if m > 2 else None)
    _require_pi(distances, "vertex-elliptic contact")
    if m > 2:
        _stable(m, gamma, element, word, n, K, window, limits, "vertex-elliptic contact")
    return EndpointRecord(EndpointCase.TYPE2_VERTEX, n, n0, m=m, K=K, window=window, radius=PI + type2_edge(m),
                          distances=distances)


def verify_endpoint(graph: PresentationGraph, spec: EllipticSpec, contact: ContactSpec, n: int,
                    limits: Limits = DEFAULT_LIMITS) -> EndpointRecord:
    """
    Check that every translate of ``gamma`` by a nontrivial power of ``a^n`` makes an angle of at least pi with
    ``gamma``.

    :raises CaseMismatchException: the contact does not fit the element.
    :raises AngleTooSmallException: some angle is below what the case needs; carries the exact distance.
    :raises BallTooSmallException: the ball or its window cannot decide.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise PreconditionException(f"The exponent n must be a positive integer, got {n!r}")
    match contact:
        case InteriorEdgeContact():
            record = _interior_edge(spec, contact, n, limits)
        case Type1Contact():
            record = _type1(graph, spec, contact, n, limits)
        case Type2Contact(vertex=vertex):
            m = _vertex_label(graph, vertex)
            if spec.kind == 'tree':
                record = _type2_tree_rank2(spec, contact, n, limits) if m == 2 else \
                    _type2_tree(m, spec, contact, n, limits)
            else:
                record = _type2_vertex(m, spec, contact, n, limits)
        case _:
            raise SpecException(f"Unknown contact {contact!r}")
    logger.debug("Endpoint %s with n=%d verified: %s", contact.case, n, record.case)
    return record


def endpoint_minimum(graph: PresentationGraph, spec: EllipticSpec, contact: ContactSpec,
                     limits: Limits = DEFAULT_LIMITS) -> int:
    """Smallest exponent this end needs."""
    match contact:
        case Type2Contact(vertex=vertex) if _vertex_label(graph, vertex) > 2:
            m = _vertex_label(graph, vertex)
            if spec.kind == 'tree':
                letter, _ = _type2_tree_tbar(m, spec, contact, limits)
                return quasitree.min_exponent_tree_elliptic_type2(m, spec.power, letter, limits=limits).n0
            gamma, element, word, K, window = _vertex_setup(m, spec, contact, 1, limits)
            for n in range(1, limits.n0_window + 1):
                if _vertex_passes(m, gamma, element, word, n, K, window, limits):
                    return n
            raise UnresolvedException(f"No n <= {limits.n0_window} puts every translate at distance pi",
                                      limits.n0_window)
        case _:
            return 1


class CertificateMode(StrEnum):
    EXACT = 'Exact'
    CONDITIONAL = 'ConditionalOnLabels'


class Assumption(namedtuple("AssumptionTuple", ["kind", "discharged", "note", "bound"], defaults=[None])):

    def to_json(self) -> dict:
        document = {"kind": self.kind, "discharged": self.discharged, "note": self.note}
        if self.bound is not None:
            document["K"] = self.bound
        return document


def _is_generator(spec) -> bool:
    return spec.kind == 'tree' and not spec.conjugator.free_reduce()


def disjointness(graph: PresentationGraph, a: EllipticSpec, b: EllipticSpec) -> Assumption:
    if a == b:
        raise DisjointnessUnknownException("a and b are the same element, so their fixed sets coincide")
    if graph.is_right_angled and _is_generator(a) and _is_generator(b):
        x, z = a.generator, b.generator
        if x == z:
            raise DisjointnessUnknownException(f"Powers of {x} fix the same tree")
        if graph.label(x, z) is not None:
            raise DisjointnessUnknownException(f"{x} and {z} commute, so their fixed trees meet at v_{x}{z}")
        return Assumption("disjoint_fixed_sets", True,
                          "non-adjacent generators: a common fixed type 2 vertex would make them commute")
    if a.kind == 'vertex' and b.kind == 'vertex' and set(a.vertex) == set(b.vertex):
        raise DisjointnessUnknownException("Both elements fix the same type 2 vertex")
    return Assumption("disjoint_fixed_sets", False, "asserted by the caller")


def build_contacts(graph: PresentationGraph, a: EllipticSpec, b: EllipticSpec) -> tuple[ContactSpec, ContactSpec]:
    """
    Contact path between the fixed trees of two non-adjacent generators of a right-angled graph: through the
    type 1 vertex of the first common neighbour, or through the identity when there is none.
    """
    graph.require_right_angled()
    if not (_is_generator(a) and _is_generator(b)):
        raise ModeException("Contact paths are only built between generator powers")
    x, z = a.generator, b.generator
    common = [y for y in graph.neighbors(x) if y in graph.neighbors(z)]
    if common:
        y = common[0]
        bar = {"kind": "coset1", "rep": "", "generator": y}
        return Type2Contact((x, y), bar, Word()), Type2Contact((z, y), bar, Word())
    bar = {"kind": "coset0", "rep": 0}
    return Type1Contact(x, bar), Type1Contact(z, bar)


@dataclass(frozen=True)
class FreenessCertificate:
    graph: PresentationGraph
    a: EllipticSpec
    b: EllipticSpec
    gamma: tuple
    n: int
    window: int
    K: int
    mode: CertificateMode
    assumptions: tuple
    endpoints: tuple

    def to_json(self) -> dict:
        return {"format": FORMAT, "graph": self.graph.to_json(), "a": self.a.to_json(), "b": self.b.to_json(),
                "gamma": [c.to_json() for c in self.gamma], "n": self.n,
                "limits": {"window": self.window, "K": self.K}, "mode": str(self.mode),
                "assumptions": [x.to_json() for x in self.assumptions],
                "endpoints": [r.to_json() for r in self.endpoints]}


def _certify(graph, a, b, gamma, n, limits, supplied: bool, on_failure=None) -> FreenessCertificate:
    if not is_two_dimensional(graph):
        raise PreconditionException("Freeness certificates need a two-dimensional graph")
    assumptions = [disjointness(graph, a, b)]
    if supplied:
        discharged = False
        if graph.is_right_angled and _is_generator(a) and _is_generator(b):
            discharged = tuple(gamma) == build_contacts(graph, a, b)
        assumptions.append(Assumption("contact_path", discharged,
                                      "built for non-adjacent generators" if discharged else "asserted by the caller"))
    else:
        assumptions.append(Assumption("contact_path", True, "built for non-adjacent generators"))
    if n is None:
        n = max(endpoint_minimum(graph, spec, c, limits) for spec, c in zip((a, b), gamma))
    records = []
    for i, (spec, contact) in enumerate(zip((a, b), gamma)):
        try:
            records.append(verify_endpoint(graph, spec, contact, n, limits))
        except ArtinException as e:
            if on_failure is None:
                raise
            on_failure(i, e)
        if isinstance(contact, Type2Contact) and spec.kind == 'vertex' and _vertex_label(graph, contact.vertex) > 2:
            assumptions.append(Assumption("bounded_exponent", False,
                                          f"angles checked for 0 < |k| <= {limits.bounded_k} only",
                                          limits.bounded_k))
    mode = CertificateMode.EXACT if all(x.discharged for x in assumptions) else CertificateMode.CONDITIONAL
    return FreenessCertificate(graph, a, b, tuple(gamma), n, limits.window, limits.bounded_k, mode,
                               tuple(assumptions), tuple(records))


def certify_free(graph: PresentationGraph, a: EllipticSpec, b: EllipticSpec, gamma=None, n: int | None = None,
                 limits: Limits = DEFAULT_LIMITS) -> FreenessCertificate:
    """
    Certify that ``<a^n, b^n>`` is free of rank two.  Without ``gamma`` a contact path is built (right-angled
    graphs only); without ``n`` the larger of the two endpoint minima is used.
    """
    if n is not None and (not isinstance(n, int) or isinstance(n, bool) or n < 1):
        raise PreconditionException(f"The exponent n must be a positive integer, got {n!r}")
    supplied = gamma is not None
    if not supplied:
        gamma = build_contacts(graph, a, b)
    if len(gamma) != 2:
        raise SpecException(f"A contact path has two ends, got {len(gamma)}")
    certificate = _certify(graph, a, b, gamma, n, limits, supplied)
    logger.debug("Certified <%s, %s> free for n=%d in mode %s", a.word(), b.word(), certificate.n, certificate.mode)
    return certificate


def _first_difference(recorded, expected, path=()):
    if isinstance(expected, dict):
        if not isinstance(recorded, dict) or set(recorded) != set(expected):
            return path
        for key in sorted(expected):
            found = _first_difference(recorded[key], expected[key], path + (key,))
            if found is not None:
                return found
        return None
    if isinstance(expected, list):
        if not isinstance(recorded, list) or len(recorded) != len(expected):
            return path
        for i, (r, e) in enumerate(zip(recorded, expected)):
            found = _first_difference(r, e, path + (i,))
            if found is not None:
                return found
        return None
    if type(recorded) is not type(expected) or recorded != expected:
        return path
    return None


def _field(document, key, path=None):
    try:
        return document[key]
    except (KeyError, TypeError):
        raise CertificateException(f"Certificate is missing {key!r}", path or (key,))


def check_certificate(document, limits: Limits = DEFAULT_LIMITS) -> FreenessCertificate:
    """
    Recompute every record of a certificate document from its inputs and compare bit for bit.

    :raises CertificateException: with ``path`` pointing at the first record that fails or differs.
    """
    if _field(document, "format") != FORMAT:
        raise CertificateException(f"Unknown certificate format {document.get('format')!r}", ("format",))
    n = _field(document, "n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise CertificateException(f"n must be a positive integer, got {n!r}", ("n",))
    bounds = _field(document, "limits")
    overrides = {}
    for key, name in (("window", "window"), ("K", "bounded_k")):
        value = _field(bounds, key, ("limits", key))
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise CertificateException(f"limits.{key} must be a positive integer", ("limits", key))
        overrides[name] = value
    limits = limits.override(**overrides)
    try:
        graph = graph_from_json(_field(document, "graph"))
        a = spec_from_json(graph, _field(document, "a"))
        b = spec_from_json(graph, _field(document, "b"))
        gamma = [contact_from_json(graph, c) for c in _field(document, "gamma")]
    except CertificateException:
        raise
    except ArtinException as e:
        raise CertificateException(f"Certificate inputs are invalid: {e}", ("inputs",))
    if len(gamma) != 2:
        raise CertificateException("A contact path has two ends", ("gamma",))

    def failed(i, e):
        raise CertificateException(f"Endpoint {i} fails: {e}", ("endpoints", i))

    try:
        recomputed = _certify(graph, a, b, gamma, n, limits, True, failed)
    except CertificateException:
        raise
    except ArtinException as e:
        raise CertificateException(f"Certificate does not verify: {e}", ("assumptions",))
    path = _first_difference(document, recomputed.to_json())
    if path is not None:
        raise CertificateException(f"Recorded value at {'.'.join(map(str, path))} does not match the recomputation",
                                   path)
    logger.debug("Certificate for n=%d checked", n)
    return recomputed


def _powers(certificate: FreenessCertificate) -> tuple[Word, Word]:
    return certificate.a.word().power(certificate.n), certificate.b.word().power(certificate.n)


PingPongTree = namedtuple("PingPongTree", ["graph", "depth"])


def reduced_word_count(depth: int) -> int:
    """
    Edges of the ping-pong tree: ``4 3^(k - 1)`` reduced words of each length ``k``.

    >>> reduced_word_count(1), reduced_word_count(2), reduced_word_count(3)
    (4, 16, 52)
    """
    return sum(4 * 3 ** (k - 1) for k in range(1, depth + 1))


def pingpong_tree(certificate: FreenessCertificate, depth: int) -> PingPongTree:
    """
    The tree of translates ``g_0 ... g_i gamma``: one node per reduced word in ``a^(+-n)``, ``b^(+-n)`` up to
    ``depth`` and one edge per nonempty word.  Node attribute ``word`` is the word as a :class:`Word`, ``label``
    its text.
    """
    if depth < 0:
        raise PreconditionException(f"Depth must be non-negative, got {depth}")
    a, b = _powers(certificate)
    symbols = {(0, 1): a, (0, -1): a.inverse, (1, 1): b, (1, -1): b.inverse}
    names = {(0, 1): 'A', (0, -1): 'a', (1, 1): 'B', (1, -1): 'b'}
    tree = nx.DiGraph()
    tree.add_node((), word=Word(), label='e')
    queue = deque([()])
    while queue:
        node = queue.popleft()
        if len(node) == depth:
            continue
        for symbol in symbols:
            if node and node[-1] == (symbol[0], -symbol[1]):
                continue
            child = node + (symbol,)
            word = tree.nodes[node]['word'] * symbols[symbol]
            tree.add_node(child, word=word, label=str(word))
            tree.add_edge(node, child, letter=names[symbol])
            queue.append(child)
    return PingPongTree(tree, depth)


FreenessSweep = namedtuple("FreenessSweep", ["depth", "words", "trivial", "first_trivial"])


def freeness_sweep(certificate: FreenessCertificate, depth: int) -> FreenessSweep:
    """
    Right-angled cross-check: no nonempty reduced word in ``a^n``, ``b^n`` of length at most ``depth`` is trivial.
    """
    graph = certificate.graph
    graph.require_right_angled()
    a, b = _powers(certificate)
    generators = (a, b)
    words = trivial = 0
    first = None
    for k in range(1, depth + 1):
        for combo in reduced_words("ab", k):
            w = Word()
            for i, e in combo:
                w = w * generators[i].power(e)
            words += 1
            if not raag_normal_form(w, graph).syllables:
                trivial += 1
                if first is None:
                    first = str(w)
                    logger.warning("Trivial reduced word %s", first)
    return FreenessSweep(depth, words, trivial, first)


LoxodromicWitness = namedtuple("LoxodromicWitness", ["word", "note", "checked_powers"])


def loxodromic_witness(certificate: FreenessCertificate, powers: int = 4,
                       limits: Limits = DEFAULT_LIMITS) -> LoxodromicWitness:
    """
    ``a^n b^n``, which is not conjugate to a power of ``a^n`` or ``b^n`` and so acts loxodromically.  On
    right-angled graphs its powers up to ``powers`` are checked nontrivial and different from every power of
    ``a^n`` and ``b^n`` with the same length of normal form.
    """
    check_certificate(certificate.to_json(), limits)
    a, b = _powers(certificate)
    word = a * b
    note = "not conjugate to a power of a^n or b^n; acts loxodromically"
    checked = 0
    graph = certificate.graph
    if graph.is_right_angled:
        for k in range(1, powers + 1):
            nf = raag_normal_form(word.power(k), graph)
            if not nf.syllables:
                raise ValidationException(f"({word})^{k} is trivial")
            for base in (a, b):
                for j in range(-2 * k, 2 * k + 1):
                    if raag_normal_form(base.power(j), graph) == nf:
                        raise ValidationException(f"({word})^{k} equals ({base})^{j}")
            checked = k
    return LoxodromicWitness(word, note, checked)
