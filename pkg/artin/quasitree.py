"""
Balls in the Garside quasi-tree ``T_st`` (the Cayley graph of ``A_st`` over the atoms, divided by the right
``<Delta>`` action) and in the augmented graphs ``G_st`` and ``K_st``.

Vertices of ``T_st`` are left-weighted atom sequences.  Each vertex lies in exactly two maximal simplices
``P {A(x, j) : 0 <= j < m}``, one per generator, and those simplices form a tree.

The augmented graphs replace every coset of ``<s>`` and ``<t>`` by a copy of its axis (type A edges ``g - g x``)
and join the two copies of each vertex by a type I edge.  Collapsing the I edges gives the Cayley graph on
``{s, t}``; collapsing the A edges gives the coset graph of the link.
"""
from collections import namedtuple, deque
from enum import StrEnum

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import connected_components

from . import garside
from .config import Limits, DEFAULT_LIMITS
from .exceptions import PreconditionException, ResourceLimitException, StructureViolationException, \
    PointOutsideBallException, UnresolvedException
from .garside import GarsideNF, Atom
from .linkgeom import LinkGeometry, LinkVertex, VertexKind, coset_key, element_orbit
from .logger import logger
from .word import DIHEDRAL_ALPHABET


def _require_label(m: int):
    if m < 3:
        raise PreconditionException(f"The quasi-tree needs m >= 3, got {m}")


def step(prefix: tuple, atom: Atom, m: int) -> tuple:
    """Vertex reached from ``prefix`` by right multiplication by ``atom``."""
    return (GarsideNF(prefix, 0, m) * GarsideNF((atom,), 0, m)).atoms


def vertex_of(w, m: int) -> tuple:
    """The quasi-tree vertex of a word or element."""
    return element_orbit(w if isinstance(w, GarsideNF) else garside.normal_form(w, m))


def simplex_at(prefix: tuple, x: str, m: int) -> frozenset:
    """
    >>> sorted(''.join(map(str, v)) or 'e' for v in simplex_at((), 's', 3))
    ['e', 's', 'st']
    """
    return frozenset([prefix] + [step(prefix, Atom(x, j), m) for j in range(1, m)])


class QuasiTreeBall:
    """
    Vertices within ``radius`` steps of ``centers``.  Node attribute ``depth`` is the distance to the centre
    set; edge attribute ``atom`` is an atom joining the two ends.
    """

    def __init__(self, m: int, radius: int, centers: tuple, graph: nx.Graph):
        self.m = m
        self.radius = radius
        self.centers = centers
        self.graph = graph

    def __contains__(self, vertex) -> bool:
        return vertex in self.graph

    def __len__(self):
        return self.graph.number_of_nodes()

    @property
    def interior(self) -> list[tuple]:
        return [v for v, d in self.graph.nodes(data='depth') if d < self.radius]

    def depth(self, vertex) -> int:
        return self.graph.nodes[vertex]['depth']

    def simplices(self) -> set[frozenset]:
        """Maximal simplices lying entirely inside the ball."""
        result = set()
        for v in self.graph:
            for x in DIHEDRAL_ALPHABET:
                simplex = simplex_at(v, x, self.m)
                if all(u in self.graph for u in simplex):
                    result.add(simplex)
        return result


def build_quasitree(m: int, depth: int, centers=None, limits: Limits = DEFAULT_LIMITS) -> QuasiTreeBall:
    """
    :param depth: radius in atom steps; around the identity this is the number of atoms.
    :param centers: vertices to centre on (default the identity); several centres give a tube.
    """
    _require_label(m)
    if depth < 0:
        raise PreconditionException(f"Depth must be non-negative, got {depth}")
    if depth > limits.max_depth:
        raise ResourceLimitException(f"Depth {depth} exceeds the limit of {limits.max_depth}")
    centers = ((),) if centers is None else tuple(dict.fromkeys(centers))
    atoms = garside.atoms_of(m)
    graph = nx.Graph()
    queue = deque()
    for c in centers:
        graph.add_node(c, depth=0)
        queue.append(c)
    while queue:
        v = queue.popleft()
        d = graph.nodes[v]['depth']
        if d == depth:
            continue
        for atom in atoms:
            u = step(v, atom, m)
            if u not in graph:
                if graph.number_of_nodes() >= limits.budget:
                    raise ResourceLimitException(f"Quasi-tree ball exceeded budget of {limits.budget} vertices")
                graph.add_node(u, depth=d + 1)
                queue.append(u)
            if not graph.has_edge(v, u):
                graph.add_edge(v, u, atom=atom)
    # edges between boundary vertices
    for v, d in graph.nodes(data='depth'):
        if d == depth:
            for atom in atoms:
                u = step(v, atom, m)
                if u in graph and not graph.has_edge(v, u):
                    graph.add_edge(v, u, atom=atom)
    logger.debug("Quasi-tree m=%d radius %d around %d centres: %d vertices, %d edges", m, depth, len(centers),
                 graph.number_of_nodes(), graph.number_of_edges())
    return QuasiTreeBall(m, depth, centers, graph)


QuasiTreeReport = namedtuple("QuasiTreeReport", ["vertices", "edges", "cliques", "interior", "clique_size"])


def check_tree_of_simplices(ball: QuasiTreeBall) -> QuasiTreeReport:
    """
    Verify on the ball that maximal cliques through interior vertices have ``m`` vertices, that two maximal
    cliques share at most one vertex, that every interior vertex has degree ``2(m - 1)`` and lies in two maximal
    cliques, and that the vertex-clique incidence graph has no cycle.
    """
    m = ball.m
    interior = set(ball.interior)
    cliques = [frozenset(c) for c in nx.find_cliques(ball.graph) if len(c) > 1]
    through = {v: [] for v in ball.graph}
    for c in cliques:
        for v in c:
            through[v].append(c)
        if c & interior and len(c) != m:
            raise StructureViolationException(f"Maximal clique of size {len(c)} at an interior vertex, expected {m}",
                                              sorted(c))
    for v in interior:
        if ball.graph.degree(v) != 2 * (m - 1):
            raise StructureViolationException(f"Interior vertex has degree {ball.graph.degree(v)}, "
                                              f"expected {2 * (m - 1)}", [v])
        if len(through[v]) != 2:
            raise StructureViolationException(f"Interior vertex lies in {len(through[v])} maximal cliques",
                                              [sorted(c) for c in through[v]])
        for i, a in enumerate(through[v]):
            for b in through[v][i + 1:]:
                if len(a & b) > 1:
                    raise StructureViolationException("Two maximal cliques share an edge", [sorted(a), sorted(b)])
    incidence = nx.Graph()
    for i, c in enumerate(cliques):
        incidence.add_edges_from((('clique', i), ('vertex', v)) for v in c)
    if incidence.number_of_nodes() and not nx.is_forest(incidence):
        cycle = nx.find_cycle(incidence)
        raise StructureViolationException("Clique incidence graph has a cycle",
                                          [node for edge in cycle for node in edge[:1]])
    report = QuasiTreeReport(ball.graph.number_of_nodes(), ball.graph.number_of_edges(), len(cliques),
                             len(interior), m)
    logger.debug("Tree of simplices check passed: %s", report)
    return report


class EdgeKind(StrEnum):
    AXIS = 'A'
    INTERSECTION = 'I'


AugmentedNode = namedtuple("AugmentedNode", ["axis", "vertex"])


class AugmentedGraph:
    """
    ``graph`` nodes are :class:`AugmentedNode`; edge attribute ``kind`` is an :class:`EdgeKind`.  ``base`` is the
    quasi-tree ball for the quotiented graph, or the set of elements for the plain one.
    """

    def __init__(self, m: int, quotiented: bool, graph: nx.Graph, base, geometry: LinkGeometry):
        self.m = m
        self.quotiented = quotiented
        self.graph = graph
        self.base = base
        self.geometry = geometry

    def __contains__(self, node) -> bool:
        return node in self.graph

    def fiber(self, vertex) -> list[AugmentedNode]:
        """Preimage of a base vertex under the I projection."""
        return [n for n in self._nodes_at(vertex)]

    def _nodes_at(self, vertex):
        element = GarsideNF(vertex, 0, self.m) if self.quotiented else vertex
        for x in DIHEDRAL_ALPHABET:
            node = AugmentedNode(self.geometry.coset1(element, x).key, vertex)
            if node in self.graph:
                yield node

    def node(self, w, x: str) -> AugmentedNode:
        """
        The copy of the element ``w`` on its ``x`` axis.
        """
        element = w if isinstance(w, garside.DihedralElement) else garside.normal_form(w, self.m)
        vertex = element_orbit(element) if self.quotiented else element
        return AugmentedNode(self.geometry.coset1(element, x).key, vertex)

    def translate(self, g, node: AugmentedNode) -> AugmentedNode:
        """Left multiplication by ``g``."""
        g = g if isinstance(g, garside.DihedralElement) else garside.normal_form(g, self.m)
        axis = self.geometry.translate(g, LinkVertex(VertexKind.COSET1, node.axis)).key
        element = GarsideNF(node.vertex, 0, self.m) if self.quotiented else node.vertex
        product = g * element
        return AugmentedNode(axis, element_orbit(product) if self.quotiented else product)

    def separating_edge(self, vertex) -> tuple[AugmentedNode, AugmentedNode]:
        nodes = self.fiber(vertex)
        if len(nodes) != 2:
            raise PointOutsideBallException(f"Vertex {vertex} has no complete fiber in the augmented graph")
        return nodes[0], nodes[1]

    def describe(self) -> dict:
        kinds = {str(k): 0 for k in EdgeKind}
        for _, _, kind in self.graph.edges(data='kind'):
            kinds[str(kind)] += 1
        return {"m": self.m, "quotiented": self.quotiented, "nodes": self.graph.number_of_nodes(),
                "edges": kinds}


def build_augmented(m: int, depth: int, quotiented: bool = True, centers=None,
                    limits: Limits = DEFAULT_LIMITS) -> AugmentedGraph:
    """
    Axes over a ball of radius ``depth``: the quasi-tree ball when ``quotiented``, otherwise all elements of
    canonical length at most ``depth``.  Edges are only added when both ends lie over the ball.
    """
    _require_label(m)
    geometry = LinkGeometry(m, quotient=quotiented)
    if quotiented:
        base = build_quasitree(m, depth, centers, limits)
        elements = {v: GarsideNF(v, 0, m) for v in base.graph}
    else:
        if depth > limits.max_depth:
            raise ResourceLimitException(f"Depth {depth} exceeds the limit of {limits.max_depth}")
        elements = {}
        for g in garside.ball(m, depth):
            if len(elements) >= limits.budget:
                raise ResourceLimitException(f"Cayley ball exceeded budget of {limits.budget} elements")
            elements[g] = g
        base = frozenset(elements)
    letters = {x: garside.letter_form(x, 1, m) for x in DIHEDRAL_ALPHABET}
    graph = nx.Graph()
    for vertex, element in elements.items():
        ends = []
        for x in DIHEDRAL_ALPHABET:
            node = AugmentedNode(geometry.coset1(element, x).key, vertex)
            graph.add_node(node)
            ends.append(node)
            product = element * letters[x]
            neighbour = element_orbit(product) if quotiented else product
            if neighbour in elements:
                graph.add_edge(node, AugmentedNode(node.axis, neighbour), kind=EdgeKind.AXIS)
        graph.add_edge(ends[0], ends[1], kind=EdgeKind.INTERSECTION)
    logger.debug("Augmented graph m=%d quotiented=%s depth %d: %d nodes, %d edges", m, quotiented, depth,
                 graph.number_of_nodes(), graph.number_of_edges())
    return AugmentedGraph(m, quotiented, graph, base, geometry)


Projection = namedtuple("Projection", ["graph", "vertex_map"])


def _collapse(augmented: AugmentedGraph, kind: EdgeKind, image) -> Projection:
    vertex_map = {n: image(n) for n in augmented.graph}
    target = nx.Graph()
    target.add_nodes_from(vertex_map.values())
    for u, v, k in augmented.graph.edges(data='kind'):
        if k != kind:
            a, b = vertex_map[u], vertex_map[v]
            if a != b:
                target.add_edge(a, b, through=u.vertex if k == EdgeKind.INTERSECTION else None)
    return Projection(target, vertex_map)


def pr_i(augmented: AugmentedGraph) -> Projection:
    """
    Collapse the I edges.  Nodes map to their base vertex; the image is the Cayley graph on ``{s, t}`` (divided
    by ``<Delta>`` when quotiented).
    """
    return _collapse(augmented, EdgeKind.INTERSECTION, lambda n: n.vertex)


def pr_a(augmented: AugmentedGraph) -> Projection:
    """
    Collapse the A edges.  Nodes map to their axis; each I edge becomes the coset graph edge through its base
    vertex, recorded as the edge attribute ``through``.
    """
    return _collapse(augmented, EdgeKind.AXIS, lambda n: LinkVertex(VertexKind.COSET1, n.axis))


def check_separating_edges(augmented: AugmentedGraph) -> int:
    """
    For every vertex at least two steps inside the quasi-tree ball, check that its fiber is one I edge and that
    deleting that closed edge disconnects the part of the augmented graph lying over the interior.  Returns the
    number of vertices checked.
    """
    if not augmented.quotiented:
        raise PreconditionException("Separating edges are checked on the quotiented augmented graph")
    ball = augmented.base
    inner = {v for v, d in ball.graph.nodes(data='depth') if d <= ball.radius - 1}
    sub = augmented.graph.subgraph(n for n in augmented.graph if n.vertex in inner)
    checked = 0
    for v in inner:
        if ball.depth(v) > ball.radius - 2:
            continue
        fiber = augmented.fiber(v)
        if len(fiber) != 2 or augmented.graph.edges[fiber[0], fiber[1]]['kind'] != EdgeKind.INTERSECTION:
            raise StructureViolationException(f"Fiber over {v} is not a single I edge", fiber)
        rest = sub.subgraph(n for n in sub if n.vertex != v)
        if nx.number_connected_components(rest) < 2:
            raise StructureViolationException(f"Removing the I edge over {v} does not disconnect the interior",
                                              fiber)
        checked += 1
    return checked


SeparationResult = namedtuple("SeparationResult", ["count", "separating", "inconclusive"])


class _Components:
    """Connected components of a fixed graph with a few vertices deleted."""

    def __init__(self, graph: nx.Graph):
        self.nodes = list(graph)
        self.index = {n: i for i, n in enumerate(self.nodes)}
        self.matrix = nx.to_scipy_sparse_array(graph, nodelist=self.nodes, weight=None, format='csr')

    def separated(self, removed, a, b) -> bool:
        keep = np.ones(len(self.nodes), dtype=bool)
        keep[[self.index[n] for n in removed]] = False
        kept = np.flatnonzero(keep)
        _, labels = connected_components(self.matrix[kept][:, kept], directed=False)
        position = np.cumsum(keep) - 1
        return labels[position[self.index[a]]] != labels[position[self.index[b]]]


def separating_edges(augmented: AugmentedGraph, x: AugmentedNode, y: AugmentedNode, letter: str = 's',
                     span: int | None = None) -> SeparationResult:
    """
    Powers ``i`` (``|i| <= span``) for which the closed I edge ``W`` over ``letter^i`` separates ``x`` from
    ``y``.  A separation seen in the augmented ball is only counted once the quasi-tree ball minus that vertex
    separates the projections too; otherwise ``i`` is reported inconclusive.
    """
    if not augmented.quotiented:
        raise PreconditionException("Separation is measured on the quotiented augmented graph")
    for node in (x, y):
        if node not in augmented:
            raise PointOutsideBallException(f"{node} is not in the augmented ball")
    if x == y:
        return SeparationResult(0, (), ())
    m = augmented.m
    if span is None:
        span = len(augmented.base.centers) + augmented.base.radius
    ball = augmented.base.graph
    components, tree_components = _Components(augmented.graph), _Components(ball)
    separating, inconclusive = [], []
    for i in range(-span, span + 1):
        v = vertex_of(garside.letter_form(letter, i, m), m)
        if v not in ball:
            continue
        fiber = set(augmented.fiber(v))
        if x in fiber or y in fiber or len(fiber) != 2:
            continue
        if not components.separated(fiber, x, y):
            continue
        if x.vertex != v and y.vertex != v and tree_components.separated({v}, x.vertex, y.vertex):
            separating.append(i)
        else:
            inconclusive.append(i)
    if inconclusive:
        logger.warning("Separation inconclusive on the ball for powers %s", inconclusive)
    return SeparationResult(len(separating), tuple(separating), tuple(inconclusive))


def separating_count(augmented: AugmentedGraph, x: AugmentedNode, y: AugmentedNode, letter: str = 's',
                     span: int | None = None) -> int:
    return separating_edges(augmented, x, y, letter, span).count


def separation_tube(m: int, letter: str, low: int, high: int, radius: int = 2,
                    limits: Limits = DEFAULT_LIMITS) -> AugmentedGraph:
    """
    Quotiented augmented graph over the tube of the given radius around the vertices ``letter^i``,
    ``low <= i <= high``.
    """
    centers = [vertex_of(garside.letter_form(letter, i, m), m) for i in range(low, high + 1)]
    return build_augmented(m, radius, quotiented=True, centers=centers, limits=limits)


N0Result = namedtuple("N0Result", ["n0", "counts", "window", "monotone"])


def base_node(augmented: AugmentedGraph, letter: str) -> AugmentedNode:
    """Copy of the other generator on its own axis, the base point for separations along ``letter``."""
    y = garside.other(letter)
    return augmented.node(y, y)


def f_count(m: int, d: int, n: int, letter: str = 's', limits: Limits = DEFAULT_LIMITS) -> int:
    """
    ``f(n)``: how many I edges over powers of ``letter`` separate the base point from its translate by
    ``letter^(d n)``, measured on a tube just wide enough to hold both.
    """
    _require_label(m)
    shift = d * n
    lo, hi = min(0, shift) - 1, max(0, shift) + 1
    augmented = separation_tube(m, letter, lo, hi, limits=limits)
    x = base_node(augmented, letter)
    y = augmented.translate(garside.letter_form(letter, shift, m), x)
    return separating_count(augmented, x, y, letter, max(-lo, hi))


def min_exponent_tree_elliptic_type2(m: int, d: int, letter: str = 's', window: int | None = None,
                                     limits: Limits = DEFAULT_LIMITS) -> N0Result:
    """
    Smallest ``n`` with ``f(n) >= m + 1``, so that ``(f(n) - 1) pi / m >= pi``.  Label 2 needs no separation
    and gives ``n0 = 1``.
    """
    if d == 0:
        raise PreconditionException("The tree-elliptic power must be nonzero")
    if m == 2:
        return N0Result(1, {}, 0, True)
    _require_label(m)
    window = limits.n0_window if window is None else window
    counts = {}
    for n in range(1, window + 1):
        counts[n] = f_count(m, d, n, letter, limits)
        if counts[n] >= m + 1:
            values = list(counts.values())
            monotone = all(a <= b for a, b in zip(values, values[1:]))
            logger.debug("n0 for m=%d d=%d is %d (counts %s)", m, d, n, counts)
            return N0Result(n, counts, window, monotone)
    raise UnresolvedException(f"No n <= {window} separates {m + 1} I edges for m={m}, d={d}", window)


def leaf_count(m: int, depth: int) -> int:
    """
    Vertices with at most ``depth`` atoms, ``1 + sum 2 (m - 1)^k``.

    >>> leaf_count(3, 3)
    29
    """
    return 1 + sum(2 * (m - 1) ** k for k in range(1, depth + 1))


def ball_index(ball: QuasiTreeBall) -> np.ndarray:
    """Depth histogram of the ball."""
    return np.bincount([d for _, d in ball.graph.nodes(data='depth')], minlength=ball.radius + 1)
