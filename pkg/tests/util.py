import copy
import json
from pathlib import Path

from artin.presentation import parse_graph, dihedral

FIXTURES = Path('tests/fixtures')


def load_json(name):
    return json.loads((FIXTURES / name).read_text())


def load_graph(name):
    return parse_graph((FIXTURES / name).read_text())


def vertex_graph(m):
    """The graph ``s -m- t``, whose group is the dihedral Artin group itself."""
    return dihedral(m)


def numeric_leaves(document, roots, path=()):
    """
    Paths to every integer leaf below the given top level keys.  Booleans are skipped; they are ints to Python
    but not numbers to a certificate.
    """
    found = []
    if isinstance(document, dict):
        for key, value in document.items():
            if path or key in roots:
                found.extend(numeric_leaves(value, roots, path + (key,)))
    elif isinstance(document, list):
        for i, value in enumerate(document):
            found.extend(numeric_leaves(value, roots, path + (i,)))
    elif isinstance(document, int) and not isinstance(document, bool):
        found.append(path)
    return found


def mutated(document, path, delta):
    """Deep copy of ``document`` with the integer at ``path`` shifted by ``delta``."""
    result = copy.deepcopy(document)
    target = result
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] += delta
    return result
