import json

import pytest

from artin.cli import run, build_parser, EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_LIMIT
from tests.util import FIXTURES


def _run(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_eq(capsys):
    assert _run(capsys, 'eq', '--m', '3', 'sts', 'tst') == (EXIT_OK, {"equal": True})
    assert _run(capsys, 'eq', '--m', '3', 'st', 'ts') == (EXIT_OK, {"equal": False})


def test_nf(capsys):
    code, payload = _run(capsys, 'nf', '--m', '3', 's t s^-1')
    assert code == EXIT_OK
    assert payload["normal_form"] == 'st.ts D^-1'
    assert payload["delta_exp"] == -1


def test_classify(capsys):
    code, payload = _run(capsys, 'classify', '--m', '3', '--search', '2', 't s^2 t^-1')
    assert code == EXIT_OK
    assert payload["class"] == 'TreeElliptic'
    assert payload["power"] == 2
    assert payload["conjugator"] is not None
    assert _run(capsys, 'classify', '--m', '3', 's t')[1]["class"] == 'VertexElliptic'


def test_validate(capsys):
    code, payload = _run(capsys, 'validate', str(FIXTURES / 'path_raag.json'))
    assert code == EXIT_OK
    assert payload["two_dimensional"] and payload["hyperbolic_type"]
    assert len(payload["parabolics"]) == 6
    assert payload["hyperbolic_criterion"] == "specialized"
    code, payload = _run(capsys, 'validate', '--graph', str(FIXTURES / 'triangle_235.json'))
    assert code == EXIT_FAILED
    assert payload["spherical_triangles"] == [[2, 3, 5]]


def test_link(capsys, tmp_path):
    dot = tmp_path / 'link.dot'
    code, payload = _run(capsys, 'link', '--m', '3', '--radius', 'pi/2', '--dot', str(dot))
    assert code == EXIT_OK
    assert payload["edge_length"] == {"num": 1, "den": 6}
    assert dot.read_text().startswith("graph link {")
    code, payload = _run(capsys, 'link', '--graph', str(FIXTURES / 'path_raag.json'), '--generator', 'b')
    assert code == EXIT_OK
    assert payload["edge_length"] == {"num": 1, "den": 2}


def test_quasitree(capsys, tmp_path):
    out = tmp_path / 'ball.json'
    code, payload = _run(capsys, 'quasitree', '--m', '3', '--depth', '3', '--check', '--json', str(out))
    assert code == EXIT_OK
    assert payload["vertices"] == 29
    assert payload["depth_counts"] == [1, 4, 8, 16]
    assert json.loads(out.read_text())["m"] == 3


def test_augmented(capsys):
    code, payload = _run(capsys, 'augmented', '--m', '3', '--depth', '3', '--quotient', '--check')
    assert code == EXIT_OK
    assert payload["separating_vertices_checked"] == 5


def test_certify_and_check(capsys, tmp_path):
    cert = tmp_path / 'cert.json'
    code, payload = _run(capsys, 'certify', '--graph', str(FIXTURES / 'path_raag.json'),
                         '--a', str(FIXTURES / 'spec_a.json'), '--b', str(FIXTURES / 'spec_c.json'),
                         '--out', str(cert))
    assert code == EXIT_OK
    assert payload == {"ok": True, "n": 1, "mode": "Exact", "out": str(cert)}
    assert _run(capsys, 'check', str(cert)) == (EXIT_OK, {"ok": True, "n": 1, "mode": "Exact"})

    document = json.loads(cert.read_text())
    document["endpoints"][0]["window"] += 1
    cert.write_text(json.dumps(document))
    code, payload = _run(capsys, 'check', str(cert))
    assert code == EXIT_FAILED
    assert payload["path"] == ["endpoints", 0, "window"]


def test_pingpong(capsys, tmp_path):
    cert = tmp_path / 'cert.json'
    run(['certify', '--graph', str(FIXTURES / 'path_raag.json'), '--a', str(FIXTURES / 'spec_a.json'),
         '--b', str(FIXTURES / 'spec_c.json'), '--out', str(cert)])
    capsys.readouterr()
    code, payload = _run(capsys, 'pingpong', str(cert), '--depth', '3', '--witness')
    assert code == EXIT_OK
    assert payload["edges"] == 52
    assert payload["loxodromic"]["word"] == 'a c'


def test_oracle_sweep(capsys):
    code, payload = _run(capsys, 'oracle-sweep', '--m', '4', '--len', '4')
    assert code == EXIT_OK
    assert payload["disagreements"] == 0
    assert payload["words"] == 341


def test_verification_failure(capsys, tmp_path):
    spec = tmp_path / 'spec_b.json'
    spec.write_text(json.dumps({"kind": "tree", "conjugator": "", "generator": "b", "power": 1}))
    code, payload = _run(capsys, 'certify', '--graph', str(FIXTURES / 'path_raag.json'),
                         '--a', str(FIXTURES / 'spec_a.json'), '--b', str(spec))
    assert code == EXIT_FAILED
    assert payload["type"] == 'DisjointnessUnknownException'


def test_resource_limit(capsys):
    code, payload = _run(capsys, '--budget', '10', 'oracle-sweep', '--m', '3', '--len', '3')
    assert code == EXIT_LIMIT
    assert payload["ok"] is False


def test_usage_errors(capsys):
    assert _run(capsys, 'frobnicate')[0] == EXIT_USAGE
    assert _run(capsys, 'nf', '--m', '3')[0] == EXIT_USAGE
    assert _run(capsys, 'validate')[0] == EXIT_USAGE
    code, payload = _run(capsys, 'nf', '--m', '3', 's x')
    assert code == EXIT_USAGE
    assert payload["type"] == 'GraphSyntaxException'


def test_help_json(capsys):
    code, payload = _run(capsys, 'certify', '--help', '--json')
    assert code == EXIT_OK
    assert payload["command"] == 'certify'
    assert {a["name"] for a in payload["arguments"]} >= {"graph", "a", "b", "n", "out"}


def test_parser_has_every_command():
    parser = build_parser()
    commands = next(a for a in parser._actions if a.dest == 'command').choices
    assert set(commands) == {'validate', 'nf', 'eq', 'classify', 'link', 'quasitree', 'augmented', 'certify',
                             'check', 'pingpong', 'oracle-sweep'}
