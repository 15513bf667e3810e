from artin import certify_free, check_certificate, tree_elliptic, parse_graph
from artin.certifier import freeness_sweep

GRAPH = '{"generators": ["a", "b", "c"], "edges": [{"a": "a", "b": "b", "m": 2}, {"a": "b", "b": "c", "m": 2}]}'

if __name__ == '__main__':
    graph = parse_graph(GRAPH)
    a = tree_elliptic(graph, "", "a", 1)
    c = tree_elliptic(graph, "", "c", 1)
    certificate = certify_free(graph, a, c)
    check_certificate(certificate.to_json())

    sweep = freeness_sweep(certificate, 6)
    print(f"<a^{certificate.n}, c^{certificate.n}> is free ({certificate.mode}); "
          f"{sweep.words} reduced words checked, {sweep.trivial} trivial")
