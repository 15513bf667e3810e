"""
Presentation graphs: generators joined by labelled edges, where a missing edge means the label is infinite.

The JSON document form is::

    {"generators": ["s", "t"], "edges": [{"a": "s", "b": "t", "m": 3}]}
"""
import itertools
import json
from collections import namedtuple
from enum import StrEnum
from fractions import Fraction
from typing import Iterable

from .exceptions import GraphSyntaxException, ValidationException, PreconditionException, ModeException
from .logger import logger


class PresentationGraph:
    """
    Simple labelled graph.  Edges are keyed by ``frozenset({u, v})``; generators keep their document order.
    """

    def __init__(self, generators: Iterable[str], edges: dict[frozenset, int]):
        self.generators = tuple(generators)
        self.edges = dict(edges)
        seen = set()
        for g in self.generators:
            if not isinstance(g, str) or not g:
                raise ValidationException(f"Generator names must be nonempty strings, got {g!r}")
            if g in seen:
                raise ValidationException(f"Generator {g!r} appears twice")
            seen.add(g)
        for edge, m in self.edges.items():
            if len(edge) != 2:
                raise ValidationException(f"Loop at {'/'.join(edge)}")
            missing = edge - seen
            if missing:
                raise ValidationException(f"Edge mentions unknown generator {', '.join(sorted(missing))}")
            if not isinstance(m, int) or isinstance(m, bool) or m < 2:
                raise ValidationException(f"Label on {'-'.join(sorted(edge))} must be an integer >= 2, got {m!r}")

    def label(self, u: str, v: str) -> int | None:
        """``m_uv``, or ``None`` when ``u`` and ``v`` are not adjacent."""
        return self.edges.get(frozenset((u, v)))

    def neighbors(self, u: str) -> tuple[str, ...]:
        return tuple(v for v in self.generators if v != u and frozenset((u, v)) in self.edges)

    def sorted_edges(self) -> list[tuple[str, str, int]]:
        order = {g: i for i, g in enumerate(self.generators)}
        result = []
        for edge, m in self.edges.items():
            u, v = sorted(edge, key=order.get)
            result.append((u, v, m))
        return sorted(result, key=lambda e: (order[e[0]], order[e[1]]))

    @property
    def is_right_angled(self) -> bool:
        return all(m == 2 for m in self.edges.values())

    def require_right_angled(self):
        if not self.is_right_angled:
            labels = sorted(f"{u}-{v}:{m}" for u, v, m in self.sorted_edges() if m != 2)
            raise ModeException(f"Right-angled graph required; found labels {', '.join(labels)}")

    def delete_edge(self, u: str, v: str) -> 'PresentationGraph':
        return PresentationGraph(self.generators, {e: m for e, m in self.edges.items() if e != frozenset((u, v))})

    def to_json(self) -> dict:
        return {"generators": list(self.generators),
                "edges": [{"a": u, "b": v, "m": m} for u, v, m in self.sorted_edges()]}

    def __eq__(self, other):
        return isinstance(other, PresentationGraph) and set(self.generators) == set(other.generators) and \
            self.edges == other.edges

    def __hash__(self):
        return hash((frozenset(self.generators), frozenset(self.edges.items())))

    def __repr__(self):
        edges = ', '.join(f"{u}-{v}:{m}" for u, v, m in self.sorted_edges())
        return f"PresentationGraph([{', '.join(self.generators)}], [{edges}])"


def graph_from_json(document) -> PresentationGraph:
    """
    Build a graph from an already decoded JSON document.
    """
    if not isinstance(document, dict) or 'generators' not in document:
        raise GraphSyntaxException("Graph document must be an object with a 'generators' list")
    generators = document['generators']
    if not isinstance(generators, list):
        raise GraphSyntaxException("'generators' must be a list")
    edges = {}
    for i, edge in enumerate(document.get('edges', [])):
        try:
            u, v, m = edge['a'], edge['b'], edge['m']
        except (KeyError, TypeError):
            raise GraphSyntaxException(f"Edge {i} must have fields a, b and m")
        if u == v:
            raise ValidationException(f"Edge {i} is a loop at {u!r}")
        key = frozenset((u, v))
        if key in edges:
            raise ValidationException(f"Edge {u}-{v} is given twice")
        edges[key] = m
    return PresentationGraph(generators, edges)


def parse_graph(text: str | bytes) -> PresentationGraph:
    """
    >>> parse_graph('{"generators":["s","t"],"edges":[{"a":"s","b":"t","m":3}]}')
    PresentationGraph([s, t], [s-t:3])
    """
    try:
        document = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise GraphSyntaxException(f"Malformed graph document: {e}")
    graph = graph_from_json(document)
    logger.debug("Parsed graph with %d generators and %d edges", len(graph.generators), len(graph.edges))
    return graph


def dihedral(m: int, names: tuple[str, str] = ('s', 't')) -> PresentationGraph:
    """Single edge graph ``s -m- t``."""
    return PresentationGraph(names, {frozenset(names): m})


class Verdict(namedtuple("VerdictTuple", ["holds", "witnesses"])):
    """
    Boolean answer with the evidence for a negative one.  Truthiness follows ``holds``.
    """

    def __bool__(self):
        return bool(self.holds)


Triangle = namedtuple("Triangle", ["vertices", "labels"])
SquarePattern = namedtuple("SquarePattern", ["a", "b", "c", "d"])


def triangles(graph: PresentationGraph) -> list[Triangle]:
    """Induced triangles, in generator order."""
    result = []
    for u, v, w in itertools.combinations(graph.generators, 3):
        labels = (graph.label(u, v), graph.label(v, w), graph.label(u, w))
        if None not in labels:
            result.append(Triangle((u, v, w), labels))
    return result


def triangle_sum(labels) -> Fraction:
    return sum((Fraction(1, m) for m in labels), Fraction(0))


def is_two_dimensional(graph: PresentationGraph) -> Verdict:
    """
    Two-dimensional iff no triangle spans a spherical rank three parabolic, i.e. ``1/p + 1/q + 1/r <= 1``
    for every triangle.

    >>> is_two_dimensional(PresentationGraph("abc", {frozenset("ab"): 2, frozenset("bc"): 3, frozenset("ac"): 5}))
    Verdict(holds=False, witnesses=[Triangle(vertices=('a', 'b', 'c'), labels=(2, 3, 5))])
    """
    violations = [t for t in triangles(graph) if triangle_sum(t.labels) > 1]
    return Verdict(not violations, violations)


def _require_two_dimensional(graph: PresentationGraph):
    verdict = is_two_dimensional(graph)
    if not verdict:
        raise PreconditionException(f"Graph is not two-dimensional; spherical triangles: "
                                    f"{', '.join(str(t.labels) for t in verdict.witnesses)}")


def square_patterns(graph: PresentationGraph) -> list[SquarePattern]:
    """
    Four distinct vertices with ``a, b`` and ``c, d`` non-adjacent and every cross pair joined by a label 2
    edge.  Each pattern is reported once.
    """
    result = []
    seen = set()
    for a, b in itertools.combinations(graph.generators, 2):
        if graph.label(a, b) is not None:
            continue
        for c, d in itertools.combinations(graph.generators, 2):
            if {c, d} & {a, b} or graph.label(c, d) is not None:
                continue
            if all(graph.label(x, y) == 2 for x in (a, b) for y in (c, d)):
                key = frozenset((frozenset((a, b)), frozenset((c, d))))
                if key not in seen:
                    seen.add(key)
                    result.append(SquarePattern(a, b, c, d))
    return result


def is_hyperbolic_type(graph: PresentationGraph) -> Verdict:
    """
    Hyperbolicity of the Coxeter group, per the criterion specialised to two-dimensional graphs: a Euclidean
    triangle or a square pattern is the only possible obstruction.

    >>> is_hyperbolic_type(PresentationGraph("abc", {frozenset("ab"): 3, frozenset("bc"): 3, frozenset("ac"): 3}))
    Verdict(holds=False, witnesses=[Triangle(vertices=('a', 'b', 'c'), labels=(3, 3, 3))])
    """
    _require_two_dimensional(graph)
    witnesses = [t for t in triangles(graph) if triangle_sum(t.labels) == 1] + square_patterns(graph)
    return Verdict(not witnesses, witnesses)


class ParabolicKind(StrEnum):
    TYPE0 = 'type0'
    TYPE1 = 'type1'
    TYPE2 = 'type2'


class ParabolicDescriptor(namedtuple("ParabolicDescriptorTuple", ["kind", "generators", "label"])):
    """
    A spherical standard parabolic subgroup: trivial, cyclic on one generator, or the dihedral group of an edge.
    ``label`` is the edge label for type 2 and ``None`` otherwise.
    """

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def stabilizer(self) -> str:
        """
        Stabiliser of the matching Deligne complex vertex, described up to isomorphism.
        """
        if self.kind == ParabolicKind.TYPE0:
            return 'trivial'
        if self.kind == ParabolicKind.TYPE1:
            return 'Z'
        return 'Z^2' if self.label == 2 else f'A({self.label})'

    def __str__(self):
        if self.kind == ParabolicKind.TYPE0:
            return 'Type0'
        if self.kind == ParabolicKind.TYPE1:
            return f'Type1({self.generators[0]})'
        return f'Type2({"".join(self.generators)})'


def spherical_parabolics(graph: PresentationGraph) -> list[ParabolicDescriptor]:
    """
    >>> [str(p) for p in spherical_parabolics(dihedral(3))]
    ['Type0', 'Type1(s)', 'Type1(t)', 'Type2(st)']
    """
    _require_two_dimensional(graph)
    result = [ParabolicDescriptor(ParabolicKind.TYPE0, (), None)]
    result.extend(ParabolicDescriptor(ParabolicKind.TYPE1, (g,), None) for g in graph.generators)
    result.extend(ParabolicDescriptor(ParabolicKind.TYPE2, (u, v), m) for u, v, m in graph.sorted_edges())
    return result
