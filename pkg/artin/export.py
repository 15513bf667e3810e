"""
DOT and JSON renderings of the finite balls.  Node ids are positions in a deterministic order so that the output
is byte-identical between runs; angular lengths are written as multiples of pi.
"""
import graphviz as gv
import networkx as nx

from .angles import angle_to_json, format_angle
from .linkgeom import LinkGraph, LinkVertex, VertexKind
from .quasitree import QuasiTreeBall, AugmentedGraph, ball_index


def _format_vertex(vertex) -> str:
    if isinstance(vertex, tuple) and all(hasattr(a, 'start') for a in vertex):
        return '.'.join(str(a) for a in vertex) or 'e'
    return str(vertex)


def _link_label(link: LinkGraph, v) -> str:
    if link.geometry is not None:
        return link.geometry.label(v)
    if v.kind == VertexKind.TYPE2:
        return '<' + ','.join(sorted(v.key)) + '>'
    return f"a^{v.key}"


def _ordered(graph: nx.Graph, label) -> list:
    return sorted(graph, key=lambda v: (graph.nodes[v].get('hops', graph.nodes[v].get('depth', 0)), label(v)))


def _dot(graph: nx.Graph, label, edge_label=None, directed: bool = False, name: str = 'artin') -> str:
    g = gv.Digraph(name) if directed else gv.Graph(name)
    ids = {v: f"n{i}" for i, v in enumerate(_ordered(graph, label))}
    for v, key in ids.items():
        g.node(key, label=label(v))
    edges = sorted(graph.edges(data=True), key=lambda e: (ids[e[0]], ids[e[1]]))
    for u, v, data in edges:
        g.edge(ids[u], ids[v], **({'label': edge_label(data)} if edge_label else {}))
    return g.source


def link_to_dot(link: LinkGraph) -> str:
    return _dot(link.graph, lambda v: _link_label(link, v), lambda d: format_angle(d['length']), name='link')


def link_to_json(link: LinkGraph) -> dict:
    order = _ordered(link.graph, lambda v: _link_label(link, v))
    ids = {v: i for i, v in enumerate(order)}
    return {"center": _link_label(link, link.center), "radius": angle_to_json(link.radius), "window": link.window,
            "quotient": link.quotient,
            "vertices": [{"id": ids[v], "kind": str(v.kind), "label": _link_label(link, v),
                          "hops": link.graph.nodes[v]['hops']} for v in order],
            "edges": sorted([{"u": min(ids[u], ids[v]), "v": max(ids[u], ids[v]), "length": angle_to_json(d['length'])}
                             for u, v, d in link.graph.edges(data=True)], key=lambda e: (e["u"], e["v"]))}


def quasitree_to_dot(ball: QuasiTreeBall) -> str:
    return _dot(ball.graph, _format_vertex, lambda d: str(d['atom']), name='quasitree')


def quasitree_to_json(ball: QuasiTreeBall) -> dict:
    order = _ordered(ball.graph, _format_vertex)
    ids = {v: i for i, v in enumerate(order)}
    simplices = sorted(sorted(ids[v] for v in s) for s in ball.simplices())
    return {"m": ball.m, "radius": ball.radius, "depth_counts": ball_index(ball).tolist(),
            "vertices": [{"id": ids[v], "word": _format_vertex(v), "depth": ball.depth(v)} for v in order],
            "edges": sorted([sorted((ids[u], ids[v])) + [str(d['atom'])] for u, v, d in ball.graph.edges(data=True)]),
            "simplices": simplices}


def _augmented_label(augmented: AugmentedGraph, node) -> str:
    axis = augmented.geometry.label(_axis_vertex(node))
    return f"{axis}@{_format_vertex(node.vertex)}"


def _axis_vertex(node):
    return LinkVertex(VertexKind.COSET1, node.axis)


def augmented_to_dot(augmented: AugmentedGraph) -> str:
    return _dot(augmented.graph, lambda n: _augmented_label(augmented, n), lambda d: str(d['kind']),
                name='augmented')


def augmented_to_json(augmented: AugmentedGraph) -> dict:
    def label(n):
        return _augmented_label(augmented, n)

    order = sorted(augmented.graph, key=label)
    ids = {v: i for i, v in enumerate(order)}
    return dict(augmented.describe(),
                vertices=[{"id": ids[v], "label": label(v)} for v in order],
                edges=sorted([sorted((ids[u], ids[v])) + [str(k)] for u, v, k in augmented.graph.edges(data='kind')]))


def pingpong_to_dot(tree: nx.DiGraph) -> str:
    return _dot(tree, lambda v: tree.nodes[v]['label'], lambda d: d['letter'], directed=True, name='pingpong')


def pingpong_to_json(tree: nx.DiGraph) -> dict:
    order = sorted(tree, key=lambda v: (len(v), v))
    ids = {v: i for i, v in enumerate(order)}
    return {"nodes": [{"id": ids[v], "word": tree.nodes[v]['label'], "depth": len(v)} for v in order],
            "edges": [{"from": ids[u], "to": ids[v], "letter": d['letter']}
                      for u, v, d in sorted(tree.edges(data=True), key=lambda e: ids[e[1]])]}
