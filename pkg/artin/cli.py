"""
Command line entry point.  Every subcommand prints one JSON document (sorted keys) on stdout; diagnostics go to
stderr.  Exit codes: 0 success, 1 a verification failed, 2 bad usage or input, 3 a resource limit was hit.

``artin <command> --help --json`` prints the command's arguments as JSON.
"""
import argparse
import json
import sys
from pathlib import Path

from . import __version__, garside, oracles, quasitree, certifier, export
from .angles import angle_to_json, parse_angle, PI
from .config import Limits
from .exceptions import ArtinException, ResourceLimitException, AngleTooSmallException, BallTooSmallException, \
    CaseMismatchException, CertificateException, StructureViolationException, DisjointnessUnknownException, \
    UnresolvedException, GraphSyntaxException
from .linkgeom import build_link_type2, build_link_type1, LinkGeometry
from .logger import logger, attach_stderr
from .presentation import parse_graph, is_two_dimensional, is_hyperbolic_type, spherical_parabolics

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

VERIFICATION_FAILURES = (AngleTooSmallException, BallTooSmallException, CaseMismatchException, CertificateException,
                         StructureViolationException, DisjointnessUnknownException, UnresolvedException)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(payload, out=None):
    text = json.dumps(payload, sort_keys=True)
    (out or sys.stdout).write(text + "\n")


def _write(path, text: str):
    Path(path).write_text(text)
    logger.info("Wrote %s", path)


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise GraphSyntaxException(f"{path} is not valid JSON: {e}")


def _graph(path):
    return parse_graph(Path(path).read_text())


def _exports(args, dot, document):
    if getattr(args, 'dot', None):
        _write(args.dot, dot())
    if getattr(args, 'json_out', None):
        _write(args.json_out, json.dumps(document(), sort_keys=True, indent=1))


def cmd_validate(args, limits):
    graph = _graph(args.graph or args.graph_file)
    two_dim = is_two_dimensional(graph)
    payload = {"two_dimensional": two_dim.holds, "spherical_triangles": [list(t.labels) for t in two_dim.witnesses]}
    if two_dim:
        hyperbolic = is_hyperbolic_type(graph)
        payload["hyperbolic_type"] = hyperbolic.holds
        payload["hyperbolic_criterion"] = "specialized"
        payload["obstructions"] = [str(w) for w in hyperbolic.witnesses]
        payload["parabolics"] = [{"name": str(p), "rank": p.rank, "stabilizer": p.stabilizer}
                                 for p in spherical_parabolics(graph)]
    _emit(payload)
    return EXIT_OK if two_dim else EXIT_FAILED


def cmd_nf(args, limits):
    nf = garside.normal_form(args.word, args.m)
    payload = {"normal_form": str(nf), "canonical_length": nf.canonical_length, "abelianization": nf.abelianization}
    if isinstance(nf, garside.GarsideNF):
        payload.update(atoms=[[a.start, a.length] for a in nf.atoms], delta_exp=nf.delta_exp, infimum=nf.infimum,
                       supremum=nf.supremum)
    _emit(payload)
    return EXIT_OK


def cmd_eq(args, limits):
    _emit({"equal": garside.equals(args.left, args.right, args.m)})
    return EXIT_OK


def cmd_classify(args, limits):
    result = garside.classify_elliptic(args.word, args.m)
    payload = {"class": type(result).__name__, "description": str(result)}
    if result.is_tree:
        payload.update(generators=list(result.generators), power=result.power)
    if args.search is not None and result.is_tree:
        target = garside.normal_form(f"{result.generators[0]}^{result.power}", args.m)
        found = oracles.brute_conjugacy_search(args.word, target, args.m, args.search, limits)
        payload["conjugator"] = None if found is None else str(found)
    _emit(payload)
    return EXIT_OK


def cmd_link(args, limits):
    radius = parse_angle(args.radius)
    if args.generator:
        if not args.graph:
            raise UsageError("--generator needs --graph")
        link = build_link_type1(_graph(args.graph), args.generator, radius, args.window, limits)
    else:
        if args.m is None:
            raise UsageError("--m is required for type 2 links")
        center = LinkGeometry(args.m, args.quotient).tbar(args.tbar) if args.tbar else None
        link = build_link_type2(args.m, radius, center=center, window=args.window, quotient=args.quotient,
                                limits=limits)
    _exports(args, lambda: export.link_to_dot(link), lambda: export.link_to_json(link))
    payload = link.describe()
    payload["radius"] = angle_to_json(radius)
    payload["edge_length"] = angle_to_json(link.edge_length)
    _emit(payload)
    return EXIT_OK


def cmd_quasitree(args, limits):
    ball = quasitree.build_quasitree(args.m, args.depth, limits=limits)
    _exports(args, lambda: export.quasitree_to_dot(ball), lambda: export.quasitree_to_json(ball))
    payload = {"m": args.m, "depth": args.depth, "vertices": len(ball), "edges": ball.graph.number_of_edges(),
               "simplices": len(ball.simplices()), "depth_counts": quasitree.ball_index(ball).tolist()}
    if args.check:
        payload["check"] = quasitree.check_tree_of_simplices(ball)._asdict()
    _emit(payload)
    return EXIT_OK


def cmd_augmented(args, limits):
    augmented = quasitree.build_augmented(args.m, args.depth, args.quotient, limits=limits)
    _exports(args, lambda: export.augmented_to_dot(augmented), lambda: export.augmented_to_json(augmented))
    payload = augmented.describe()
    if args.check and args.quotient:
        payload["separating_vertices_checked"] = quasitree.check_separating_edges(augmented)
    if args.power:
        result = quasitree.min_exponent_tree_elliptic_type2(args.m, args.power, limits=limits)
        payload["n0"] = result.n0
        payload["f"] = {str(n): f for n, f in result.counts.items()}
        payload["monotone"] = result.monotone
    _emit(payload)
    return EXIT_OK


def cmd_certify(args, limits):
    graph = _graph(args.graph)
    a = certifier.spec_from_json(graph, _read_json(args.a))
    b = certifier.spec_from_json(graph, _read_json(args.b))
    gamma = None
    if args.gamma:
        gamma = [certifier.contact_from_json(graph, c) for c in _read_json(args.gamma)]
    certificate = certifier.certify_free(graph, a, b, gamma, args.n, limits)
    document = certificate.to_json()
    if args.out:
        _write(args.out, json.dumps(document, sort_keys=True, indent=1))
        _emit({"ok": True, "n": certificate.n, "mode": str(certificate.mode), "out": str(args.out)})
    else:
        _emit(document)
    return EXIT_OK


def cmd_check(args, limits):
    try:
        certificate = certifier.check_certificate(_read_json(args.certificate), limits)
    except CertificateException as e:
        logger.error("Certificate rejected: %s", e)
        _emit({"ok": False, "path": list(e.path), "error": str(e)})
        return EXIT_FAILED
    _emit({"ok": True, "n": certificate.n, "mode": str(certificate.mode)})
    return EXIT_OK


def cmd_pingpong(args, limits):
    certificate = certifier.check_certificate(_read_json(args.certificate), limits)
    tree = certifier.pingpong_tree(certificate, args.depth)
    _exports(args, lambda: export.pingpong_to_dot(tree.graph), lambda: export.pingpong_to_json(tree.graph))
    payload = {"depth": args.depth, "nodes": tree.graph.number_of_nodes(), "edges": tree.graph.number_of_edges()}
    if args.witness:
        witness = certifier.loxodromic_witness(certificate, limits=limits)
        payload["loxodromic"] = {"word": str(witness.word), "note": witness.note,
                                 "checked_powers": witness.checked_powers}
    _emit(payload)
    return EXIT_OK


def cmd_oracle_sweep(args, limits):
    report = oracles.oracle_sweep(args.m, args.len, args.disable_numba, limits)
    _emit(report._asdict())
    return EXIT_OK if report.disagreements == 0 else EXIT_FAILED


def _add_exports(parser):
    parser.add_argument('--dot', metavar='PATH', help="write the graph as DOT")
    parser.add_argument('--json', dest='json_out', metavar='PATH', help="write the graph as JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='artin', description="Exact local geometry and freeness certificates for two-dimensional "
                                               "Artin groups.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="more diagnostics on stderr")
    parser.add_argument('--budget', type=int, help="maximum vertices per ball (default from ARTIN_BUDGET)")
    parser.add_argument('--window', type=int, help="exponent window for coset vertices")
    parser.add_argument('--K', dest='bounded_k', type=int, help="exponents checked for vertex-elliptic endpoints")
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = commands.add_parser('validate', help="check two-dimensionality and hyperbolic type of a graph")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument('graph', nargs='?', help="graph JSON file")
    source.add_argument('--graph', dest='graph_file', help="graph JSON file, as an option")
    p.set_defaults(handler=cmd_validate)

    p = commands.add_parser('nf', help="Garside normal form of a word")
    p.add_argument('--m', type=int, required=True, help="dihedral label")
    p.add_argument('word')
    p.set_defaults(handler=cmd_nf)

    p = commands.add_parser('eq', help="decide equality of two words")
    p.add_argument('--m', type=int, required=True, help="dihedral label")
    p.add_argument('left')
    p.add_argument('right')
    p.set_defaults(handler=cmd_eq)

    p = commands.add_parser('classify', help="tree- or vertex-elliptic classification")
    p.add_argument('--m', type=int, required=True, help="dihedral label")
    p.add_argument('--search', type=int, metavar='BOUND', help="also search a conjugator up to this length")
    p.add_argument('word')
    p.set_defaults(handler=cmd_classify)

    p = commands.add_parser('link', help="ball in the link of a type 1 or type 2 vertex")
    p.add_argument('--m', type=int, help="dihedral label of the type 2 vertex")
    p.add_argument('--radius', default='pi', help="angular radius, e.g. pi, 7/6 pi")
    p.add_argument('--quotient', action='store_true', help="divide by the right Delta action")
    p.add_argument('--tbar', choices=('s', 't'), help="centre on the coset vertex of a generator")
    p.add_argument('--graph', help="graph JSON file, for type 1 links")
    p.add_argument('--generator', help="build the link of this generator's type 1 vertex")
    _add_exports(p)
    p.set_defaults(handler=cmd_link)

    p = commands.add_parser('quasitree', help="ball in the Garside quasi-tree")
    p.add_argument('--m', type=int, required=True, help="dihedral label, at least 3")
    p.add_argument('--depth', type=int, required=True, help="number of atoms")
    p.add_argument('--check', action='store_true', help="verify the tree of simplices structure")
    _add_exports(p)
    p.set_defaults(handler=cmd_quasitree)

    p = commands.add_parser('augmented', help="augmented axis graph over a ball")
    p.add_argument('--m', type=int, required=True, help="dihedral label, at least 3")
    p.add_argument('--depth', type=int, required=True, help="ball depth")
    p.add_argument('--quotient', action='store_true', help="divide by the right Delta action")
    p.add_argument('--check', action='store_true', help="verify the separating I edges")
    p.add_argument('--power', type=int, help="also search n0 for this tree-elliptic power")
    _add_exports(p)
    p.set_defaults(handler=cmd_augmented)

    p = commands.add_parser('certify', help="certify that <a^n, b^n> is free")
    p.add_argument('--graph', required=True, help="graph JSON file")
    p.add_argument('--a', required=True, help="elliptic spec JSON file for a")
    p.add_argument('--b', required=True, help="elliptic spec JSON file for b")
    p.add_argument('--gamma', help="contact path JSON file (two contacts); built when omitted")
    p.add_argument('--n', type=int, help="exponent; the smallest that works when omitted")
    p.add_argument('--out', help="certificate file to write")
    p.set_defaults(handler=cmd_certify)

    p = commands.add_parser('check', help="re-verify a certificate")
    p.add_argument('certificate')
    p.set_defaults(handler=cmd_check)

    p = commands.add_parser('pingpong', help="ping-pong tree of a certificate")
    p.add_argument('certificate')
    p.add_argument('--depth', type=int, default=2, help="length of reduced words")
    p.add_argument('--witness', action='store_true', help="also report the loxodromic a^n b^n")
    _add_exports(p)
    p.set_defaults(handler=cmd_pingpong)

    p = commands.add_parser('oracle-sweep', help="compare the Garside word problem with the amalgam oracle")
    p.add_argument('--m', type=int, required=True, help="dihedral label, at least 3")
    p.add_argument('--len', type=int, required=True, help="maximum word length")
    p.add_argument('--disable-numba', action='store_true', help="run the kernel as plain Python")
    p.set_defaults(handler=cmd_oracle_sweep)
    return parser


def describe(parser: argparse.ArgumentParser, command: str | None) -> dict:
    """Arguments of the parser, or of one of its subcommands, as a JSON document."""
    target = parser
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction) and command in action.choices:
            target = action.choices[command]
    arguments = []
    for action in target._actions:
        if isinstance(action, (argparse._HelpAction, argparse._SubParsersAction)):
            continue
        arguments.append({"name": action.dest, "flags": list(action.option_strings), "help": action.help,
                          "required": action.required, "default": action.default if action.default is not None
                          and not callable(action.default) else None})
    return {"command": command or target.prog, "description": target.description, "arguments": arguments}


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    if ('-h' in argv or '--help' in argv) and '--json' in argv:
        command = next((a for a in argv if not a.startswith('-')), None)
        _emit(describe(parser, command))
        return EXIT_OK
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"artin: {e}\n")
        return EXIT_USAGE
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK
    handler = attach_stderr(args.verbose)
    try:
        limits = Limits.from_env().override(budget=args.budget, window=args.window, bounded_k=args.bounded_k)
        return args.handler(args, limits)
    except UsageError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except ResourceLimitException as e:
        logger.error("Resource limit: %s", e)
        _emit({"ok": False, "error": str(e), "type": type(e).__name__})
        return EXIT_LIMIT
    except VERIFICATION_FAILURES as e:
        logger.error("Verification failed: %s", e)
        _emit({"ok": False, "error": str(e), "type": type(e).__name__})
        return EXIT_FAILED
    except ArtinException as e:
        logger.error("%s", e)
        _emit({"ok": False, "error": str(e), "type": type(e).__name__})
        return EXIT_USAGE
    except OSError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    finally:
        logger.removeHandler(handler)


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
