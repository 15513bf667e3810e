"""
Finite balls in links of Deligne complex vertices, with exact angular edge lengths.

The link of the type 2 vertex ``v_st`` is the barycentric subdivision of the coset graph of ``A_st``: a type 0
vertex for every element ``g``, a type 1 vertex for every coset ``g<s>`` and ``g<t>``, and an edge of length
``pi / (2m)`` from ``g`` to each of its two cosets.  Cosets have infinitely many elements, so a ball only expands
``c x^j`` for ``|j| <= window`` from a coset with canonical representative ``c``; the window is part of every
ball and every result computed on it.

Cosets are keyed exactly.  Right multiplication by ``x`` eventually only appends the single letter atom
``tau^l(x)`` to the normal form, so ``g<x>`` is determined by the stable prefix and the final ``Delta``
exponent.  The right ``<Delta>`` action only shifts that exponent, which gives the orbit keys of the quotient
link directly.
"""
from collections import namedtuple, deque
from enum import StrEnum
from fractions import Fraction

import networkx as nx

from . import garside
from .angles import AtLeast, type2_edge, type1_edge, AngularValue
from .config import Limits, DEFAULT_LIMITS
from .exceptions import ResourceLimitException, PointOutsideBallException, PreconditionException, ValidationException, \
    StructureViolationException
from .garside import Atom, GarsideNF, AbelianNF, DihedralElement, TreeSpec
from .logger import logger
from .presentation import PresentationGraph
from .word import as_word, DIHEDRAL_ALPHABET


class VertexKind(StrEnum):
    COSET0 = 'coset0'
    COSET1 = 'coset1'
    TYPE2 = 'type2'


LinkVertex = namedtuple("LinkVertex", ["kind", "key"])
CosetKey = namedtuple("CosetKey", ["body", "generator"])
OrbitKey = namedtuple("OrbitKey", ["prefix", "letter"])


class LinkPoint(namedtuple("LinkPointTuple", ["vertex", "toward", "offset"])):
    """
    A link vertex, or the point at angular ``offset`` from ``vertex`` along the edge to ``toward``.
    """

    @classmethod
    def at(cls, vertex: LinkVertex) -> 'LinkPoint':
        return cls(vertex, None, Fraction(0))

    @property
    def is_vertex(self) -> bool:
        return self.toward is None


def coset_key(g: DihedralElement, x: str) -> CosetKey:
    """
    Exact key of the coset ``g<x>``.

    >>> k = coset_key(garside.normal_form("s t s^-1", 3), 's')
    >>> k == coset_key(garside.normal_form("s t", 3), 's'), k == coset_key(garside.normal_form("t s", 3), 's')
    (True, False)
    """
    if isinstance(g, AbelianNF):
        return CosetKey(g.q if x == 's' else g.p, x)
    m = g.modulus
    step = garside.letter_form(x, 1, m)
    h = g
    # terminates: each step either grows the stable tail or consumes part of the prefix
    while True:
        tail = Atom(x, 1).twist(h.delta_exp, m)
        if h.atoms and h.atoms[-1] == tail:
            prefix = h.atoms
            while prefix and prefix[-1] == tail:
                prefix = prefix[:-1]
            return CosetKey((prefix, h.delta_exp), x)
        h = h * step


def coset_representative(key: CosetKey, m: int) -> DihedralElement:
    if m == 2:
        return AbelianNF(0, key.body) if key.generator == 's' else AbelianNF(key.body, 0)
    prefix, delta_exp = key.body
    return GarsideNF(prefix, delta_exp, m)


def orbit_key(key: CosetKey, m: int) -> OrbitKey:
    """
    Key of the right ``<Delta>`` orbit of a coset.  For ``m = 2`` all cosets of one generator form one orbit.
    """
    if m == 2:
        return OrbitKey((), key.generator)
    prefix, delta_exp = key.body
    return OrbitKey(prefix, Atom(key.generator, 1).twist(delta_exp, m).start)


def element_orbit(g: DihedralElement):
    """Right ``<Delta>`` orbit of a type 0 vertex: the atoms, or ``p - q`` for ``m = 2``."""
    return g.p - g.q if isinstance(g, AbelianNF) else g.atoms


class LinkGeometry:
    """
    Vertices, adjacency and the left action for the link of ``v_st``, either plain or divided by the right
    ``<Delta>`` action.
    """

    def __init__(self, m: int, quotient: bool = False):
        if m < 2:
            raise PreconditionException(f"Dihedral label must be at least 2, got {m}")
        self.m = m
        self.quotient = quotient

    @property
    def edge_length(self) -> AngularValue:
        return type2_edge(self.m)

    def coset0(self, g) -> LinkVertex:
        g = g if isinstance(g, DihedralElement) else garside.normal_form(g, self.m)
        return LinkVertex(VertexKind.COSET0, element_orbit(g) if self.quotient else g)

    def coset1(self, g, x: str) -> LinkVertex:
        g = g if isinstance(g, DihedralElement) else garside.normal_form(g, self.m)
        key = coset_key(g, x)
        return LinkVertex(VertexKind.COSET1, orbit_key(key, self.m) if self.quotient else key)

    def tbar(self, x: str) -> LinkVertex:
        """Vertex of ``<x>``; in the quotient this is the image of the standard tree direction."""
        return self.coset1(garside.identity(self.m), x)

    def representative(self, v: LinkVertex) -> tuple[DihedralElement, str | None]:
        """
        An element of the vertex, and for type 1 vertices the generator ``x`` with vertex ``element <x>``.
        """
        m = self.m
        if v.kind == VertexKind.COSET0:
            if not self.quotient:
                return v.key, None
            return (AbelianNF(v.key, 0) if m == 2 else GarsideNF(v.key, 0, m)), None
        if not self.quotient:
            return coset_representative(v.key, m), v.key.generator
        return (garside.identity(m) if m == 2 else GarsideNF(v.key.prefix, 0, m)), v.key.letter

    def neighbors(self, v: LinkVertex, window: int) -> list[LinkVertex]:
        element, x = self.representative(v)
        if v.kind == VertexKind.COSET0:
            return [self.coset1(element, y) for y in DIHEDRAL_ALPHABET]
        return [self.coset0(element * garside.letter_form(x, j, self.m)) for j in range(-window, window + 1)]

    def translate(self, w: DihedralElement, v: LinkVertex) -> LinkVertex:
        """Left multiplication, which commutes with the right ``<Delta>`` action."""
        element, x = self.representative(v)
        if v.kind == VertexKind.COSET0:
            return self.coset0(w * element)
        return self.coset1(w * element, x)

    def label(self, v: LinkVertex) -> str:
        if v.kind == VertexKind.COSET0:
            return _format_key(v.key)
        if self.quotient:
            prefix = '.'.join(str(a) for a in v.key.prefix)
            return f"[{prefix or 'e'}]<{v.key.letter}>"
        element, x = self.representative(v)
        return f"{element}<{x}>"


def _format_key(key) -> str:
    if isinstance(key, tuple):
        return '.'.join(str(a) for a in key) or 'e'
    return str(key)


class LinkGraph:
    """
    A ball in a link.  ``graph`` carries the edge attribute ``length`` (a multiple of pi) and the node
    attribute ``hops`` (combinatorial distance from ``center``).  For a type 2 link ``geometry`` gives the
    vertex arithmetic; type 1 links have none.
    """

    def __init__(self, graph: nx.Graph, center: LinkVertex, radius: AngularValue, window: int,
                 geometry: LinkGeometry | None = None, edge_length: AngularValue | None = None):
        self.graph = graph
        self.center = center
        self.radius = radius
        self.window = window
        self.geometry = geometry
        self.edge_length = geometry.edge_length if geometry else edge_length

    @property
    def m(self) -> int | None:
        return self.geometry.m if self.geometry else None

    @property
    def quotient(self) -> bool:
        return bool(self.geometry and self.geometry.quotient)

    def __contains__(self, vertex) -> bool:
        return vertex in self.graph

    def __len__(self):
        return self.graph.number_of_nodes()

    def vertices(self, kind: VertexKind | None = None) -> list[LinkVertex]:
        return [v for v in self.graph if kind is None or v.kind == kind]

    def tbar(self, x: str) -> LinkVertex:
        if not self.quotient:
            raise PreconditionException("The image of a standard tree direction lives in the quotient link")
        return self.geometry.tbar(x)

    def distance_to_center(self, point: LinkPoint) -> AngularValue:
        """Upper bound on the distance from the centre, exact for vertices."""
        self._check_point(point)
        near = self.graph.nodes[point.vertex]['hops'] * self.edge_length + point.offset
        if point.is_vertex:
            return near
        length = self.graph.edges[point.vertex, point.toward]['length']
        return min(near, self.graph.nodes[point.toward]['hops'] * self.edge_length + length - point.offset)

    def _check_point(self, point: LinkPoint):
        if point.vertex not in self.graph:
            raise PointOutsideBallException(f"Vertex {point.vertex} is not in the ball of radius {self.radius}")
        if not point.is_vertex:
            if not self.graph.has_edge(point.vertex, point.toward):
                raise PointOutsideBallException(f"Edge {point.vertex} - {point.toward} is not in the ball")
            length = self.graph.edges[point.vertex, point.toward]['length']
            if not 0 < point.offset < length:
                raise ValidationException(f"Edge offset {point.offset} must lie strictly inside (0, {length})")

    def describe(self) -> dict:
        counts = {}
        for v in self.graph:
            counts[str(v.kind)] = counts.get(str(v.kind), 0) + 1
        return {"vertices": self.graph.number_of_nodes(), "edges": self.graph.number_of_edges(),
                "by_kind": counts, "window": self.window, "quotient": self.quotient}


def _check_coset_keys(graph: nx.Graph, m: int):
    """Every coset key in the ball must be reproduced by its own representative."""
    for v in graph:
        if v.kind == VertexKind.COSET1 and coset_key(coset_representative(v.key, m), v.key.generator) != v.key:
            raise StructureViolationException(f"Coset key {v.key} is not stable under its representative", v)


def _bfs_ball(geometry: LinkGeometry, center: LinkVertex, radius: AngularValue, window: int,
              limits: Limits) -> LinkGraph:
    if radius > limits.max_radius:
        raise ResourceLimitException(f"Radius {radius} pi exceeds the limit of {limits.max_radius} pi")
    max_hops = int(radius / geometry.edge_length)
    graph = nx.Graph()
    graph.add_node(center, hops=0)
    queue = deque([center])
    while queue:
        v = queue.popleft()
        hops = graph.nodes[v]['hops']
        if hops == max_hops:
            continue
        for u in geometry.neighbors(v, window):
            if u not in graph:
                if graph.number_of_nodes() >= limits.budget:
                    raise ResourceLimitException(f"Link ball exceeded budget of {limits.budget} vertices")
                graph.add_node(u, hops=hops + 1)
                queue.append(u)
            graph.add_edge(v, u, length=geometry.edge_length)
    if not geometry.quotient:
        _check_coset_keys(graph, geometry.m)
    logger.debug("Link ball m=%d quotient=%s radius=%s window=%d: %d vertices, %d edges", geometry.m,
                 geometry.quotient, radius, window, graph.number_of_nodes(), graph.number_of_edges())
    return LinkGraph(graph, center, radius, window, geometry)


def build_link_type2(m: int, radius: AngularValue, center: LinkVertex | None = None, window: int | None = None,
                     quotient: bool = False, limits: Limits = DEFAULT_LIMITS) -> LinkGraph:
    """
    Ball of the link of ``v_st`` around ``center`` (default the type 0 vertex of the identity).

    :param radius: angular radius, a multiple of pi.
    :param window: exponent window for expansions out of type 1 vertices; defaults to ``limits.window``.
    :param quotient: build the link divided by the right ``<Delta>`` action instead.
    """
    geometry = LinkGeometry(m, quotient)
    if radius < geometry.edge_length:
        raise PreconditionException(f"Radius must be at least pi/{2 * m}, got {radius} pi")
    center = geometry.coset0(garside.identity(m)) if center is None else center
    return _bfs_ball(geometry, center, radius, limits.window if window is None else window, limits)


def quotient_by_delta(link: LinkGraph, limits: Limits = DEFAULT_LIMITS) -> LinkGraph:
    """
    Quotient ball with the same centre, radius and window.  It is built on orbit keys rather than by folding
    ``link``, so it is saturated by construction.
    """
    if link.geometry is None or link.quotient:
        raise PreconditionException("quotient_by_delta needs a type 2 link that is not already a quotient")
    geometry = LinkGeometry(link.m, quotient=True)
    element, x = link.geometry.representative(link.center)
    center = geometry.coset0(element) if x is None else geometry.coset1(element, x)
    return _bfs_ball(geometry, center, link.radius, link.window, limits)


def orbit_of(link: LinkGraph, v: LinkVertex) -> LinkVertex:
    """Image of a plain link vertex in the quotient."""
    element, x = link.geometry.representative(v)
    geometry = LinkGeometry(link.m, quotient=True)
    return geometry.coset0(element) if x is None else geometry.coset1(element, x)


def coset_graph(link: LinkGraph) -> nx.Graph:
    """
    Type 1 vertices joined through each type 0 vertex of degree two; edge length ``pi / m``.
    """
    result = nx.Graph()
    result.add_nodes_from(link.vertices(VertexKind.COSET1))
    for v in link.vertices(VertexKind.COSET0):
        ends = list(link.graph[v])
        if len(ends) == 2:
            result.add_edge(ends[0], ends[1], length=2 * link.edge_length, through=v)
    return result


def build_link_type1(graph: PresentationGraph, a: str, radius: AngularValue = Fraction(2),
                     window: int | None = None, limits: Limits = DEFAULT_LIMITS) -> LinkGraph:
    """
    Ball of the link of the type 1 vertex ``<a>``: type 0 vertices ``a^i`` (``|i| <= window``) each joined to
    the type 2 vertex ``<a, t>`` of every neighbour ``t`` of ``a``, all edges of length pi/2.  The link is complete
    bipartite, so the ball is the whole windowed link once ``radius >= pi``.
    """
    if a not in graph.generators:
        raise PreconditionException(f"{a!r} is not a generator of {graph!r}")
    window = limits.window if window is None else window
    link = nx.Graph()
    zeros = [LinkVertex(VertexKind.COSET0, i) for i in range(-window, window + 1)]
    twos = [LinkVertex(VertexKind.TYPE2, frozenset((a, t))) for t in graph.neighbors(a)]
    center = zeros[window]
    link.add_node(center, hops=0)
    if radius >= type1_edge():
        link.add_nodes_from(twos, hops=1)
        link.add_edges_from(((center, v) for v in twos), length=type1_edge())
    if radius >= 2 * type1_edge():
        others = [v for v in zeros if v != center]
        link.add_nodes_from(others, hops=2)
        link.add_edges_from(((v, u) for v in others for u in twos), length=type1_edge())
    return LinkGraph(link, center, radius, window, edge_length=type1_edge())


def _exponents(count: int, bound: int):
    if count == 0:
        yield ()
        return
    for j in range(-bound, bound + 1):
        if j:
            for rest in _exponents(count - 1, bound - abs(j)):
                yield (j,) + rest


def syllable_length(u: DihedralElement, m: int, most: int, bound: int,
                    limits: Limits = DEFAULT_LIMITS) -> int | None:
    """
    Fewest syllables ``x_1^j_1 ... x_r^j_r`` (alternating generators, nonzero exponents) spelling ``u`` when
    that is at most ``most``, else ``None``.  Type 0 vertices ``g`` and ``g u`` of the plain link are exactly
    ``r pi / m`` apart.

    A word with fewer than ``m`` syllables has no alternating subword of length ``m`` of either sign, so it is
    geodesic; with ``bound`` the length of any word for ``u`` no exponent sum beyond it needs trying, and the
    search is complete whatever window a ball was built with.

    >>> syllable_length(garside.normal_form("s^5 t^-5", 3), 3, 2, 10)
    2
    >>> syllable_length(garside.delta(3), 3, 2, 3) is None
    True
    """
    if most >= m:
        raise PreconditionException(f"Syllable search is only complete below m={m} syllables, got {most}")
    if u.is_identity:
        return 0
    total = u.abelianization
    tried = 0
    for r in range(1, most + 1):
        for start in DIHEDRAL_ALPHABET:
            letters = garside.alternating(start, r)
            for head in _exponents(r - 1, bound):
                last = total - sum(head)
                if not last or sum(abs(j) for j in head) + abs(last) > bound:
                    continue
                tried += 1
                if tried > limits.budget:
                    raise ResourceLimitException(f"Syllable search exceeded budget of {limits.budget} words")
                candidate = garside.identity(m)
                for x, j in zip(letters, head + (last,)):
                    candidate = candidate * garside.letter_form(x, j, m)
                if candidate == u:
                    return r
    return None


def link_distance(link: LinkGraph, p, q):
    """
    Exact shortest path length between two points of the ball, or :class:`AtLeast` when every path shorter than
    the answer found would have to leave the ball.  A path that leaves the ball is at least
    ``2 radius - d(center, p) - d(center, q)`` long, which is the bound reported in that case.
    """
    p = p if isinstance(p, LinkPoint) else LinkPoint.at(p)
    q = q if isinstance(q, LinkPoint) else LinkPoint.at(q)
    for point in (p, q):
        link._check_point(point)
    horizon = 2 * link.radius - link.distance_to_center(p) - link.distance_to_center(q)
    if p == q:
        return Fraction(0)
    graph = link.graph
    source, target = p.vertex, q.vertex
    if not p.is_vertex or not q.is_vertex:
        graph = graph.copy()
        for name, point in (('p', p), ('q', q)):
            if not point.is_vertex:
                node = ('point', name)
                length = graph.edges[point.vertex, point.toward]['length']
                graph.add_edge(node, point.vertex, length=point.offset)
                graph.add_edge(node, point.toward, length=length - point.offset)
                if name == 'p':
                    source = node
                else:
                    target = node
        if not p.is_vertex and not q.is_vertex and {p.vertex, p.toward} == {q.vertex, q.toward}:
            length = graph.edges[p.vertex, p.toward]['length']
            q_offset = q.offset if q.vertex == p.vertex else length - q.offset
            graph.add_edge(('point', 'p'), ('point', 'q'), length=abs(p.offset - q_offset))
    try:
        distance = nx.dijkstra_path_length(graph, source, target, weight='length')
    except nx.NetworkXNoPath:
        return AtLeast(horizon)
    if distance < horizon:
        return Fraction(distance)
    return AtLeast(horizon)


def fixed_link_vertices(link: LinkGraph, w) -> set[LinkVertex]:
    """
    Vertices of the ball preserved by left multiplication by ``w``.  A type 0 vertex is fixed only by the
    identity.
    """
    element = w if isinstance(w, DihedralElement) else garside.normal_form(as_word(w), link.m)
    fixed = set()
    for v in link.graph:
        if v.kind == VertexKind.COSET0:
            if element.is_identity:
                fixed.add(v)
        elif link.geometry.translate(element, v) == v:
            fixed.add(v)
    return fixed


def tree_direction(spec: TreeSpec, m: int, quotient: bool = True) -> LinkVertex:
    """
    The link vertex ``g<x>`` where the fixed tree of ``g x^d g^-1`` passes through ``v_st``; in the quotient
    its orbit.
    """
    return LinkGeometry(m, quotient).coset1(spec.conjugator, spec.generator)


def same_tree(a: TreeSpec, b: TreeSpec, m: int) -> bool:
    """
    Two tree-elliptic elements of ``A_st`` have the same fixed tree iff their cosets lie in one right
    ``<Delta>`` orbit.

    >>> a, b = garside.tree_spec("s t s", "s", 1), garside.tree_spec("", "t", 2)
    >>> same_tree(a, b, 3), same_tree(a, b, 4)
    (True, False)
    """
    return tree_direction(a, m) == tree_direction(b, m)
