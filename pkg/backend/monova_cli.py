"""
Monova Command Line
Subcommands for checking identities, building monoids, generating families and running bounded searches
"""

import argparse
import os
import sys
from typing import List, Optional, Sequence

from crosscheck import run_crosscheck
from errors import ArgumentError
from local_monitoring import logger
from monova_config import (
    DEFAULT_AMBIENT_LEN,
    DEFAULT_MAX_STEPS,
    DEFAULT_MAX_SUB_IMAGE_LEN,
    get_server_address,
)
from variety_oracles import VerdictStatus
from verdicts import EXIT_USAGE, Verdict
import workbench


class _Parser(argparse.ArgumentParser):
    """Usage errors become ArgumentError so they map to exit code 3"""

    def error(self, message):
        raise ArgumentError(message)


def _permutation(text: str) -> List[int]:
    try:
        return [int(piece) for piece in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list of integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", type=int, default=None, help="Word length bound")
    common.add_argument("--letters", default=None, help="Letter count from the pool, or a list like a,b,t")
    common.add_argument("--budget", type=int, default=None, help="Evaluation budget (overrides MONOVA_BUDGET)")
    common.add_argument("--format", choices=("text", "machine"), default="text", dest="fmt")

    parser = _Parser(prog="monova", description="Identities of monoid varieties, checked at desk scale")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="Decide an identity in a variety")
    p.add_argument("variety")
    p.add_argument("identity")

    p = sub.add_parser("monoid", parents=[common], help="Build, dump or check a preset monoid")
    p.add_argument("action", choices=("build", "table", "idempotents", "check"))
    p.add_argument("preset")
    p.add_argument("identity", nargs="?")

    p = sub.add_parser("family", parents=[common], help="Print a family of identities")
    p.add_argument("name")
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--pi", type=_permutation)
    p.add_argument("--tau", type=_permutation)
    p.add_argument("--word", help="Alternating word for phi / phi_bar")

    p = sub.add_parser("sweep", parents=[common], help="Compare two checkers exhaustively")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("derive", parents=[common], help="Search for a derivation")
    p.add_argument("identity")
    p.add_argument("--basis", help="Basis name or identity file")
    p.add_argument("--within", action="append", default=[], help="Ambient variety, repeatable")
    _derivation_bounds(p)
    p.add_argument("--nonempty", action="store_true", help="Substitute nonempty words only")

    p = sub.add_parser("meet", parents=[common], help="Derive an identity from two varieties' identities")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("identity")
    p.add_argument("--basis", help="Extra basis rules, each valid in one of the varieties")
    _derivation_bounds(p)

    p = sub.add_parser("stability", parents=[common], help="Bounded stability of a word class")
    p.add_argument("variety")
    p.add_argument("class_spec", metavar="class")

    p = sub.add_parser("isoterm", parents=[common], help="Bounded isoterm check")
    p.add_argument("variety")
    p.add_argument("word")

    p = sub.add_parser("sc2", parents=[common], help="Bounded evidence for the SC2 hypotheses")
    p.add_argument("variety")
    p.add_argument("n_max", type=int)
    p.add_argument("stab_len", type=int)

    p = sub.add_parser("dist", parents=[common], help="Disordered occurrences of an identity")
    p.add_argument("kind")
    p.add_argument("identity")

    p = sub.add_parser("lattice", parents=[common], help="Lower lattice of band varieties")
    p.add_argument("--max-level", type=int, default=4)

    p = sub.add_parser("crosscheck", parents=[common], help="Run the acceptance checks")
    p.add_argument("--quick", action="store_true", help="Reduced bounds")

    p = sub.add_parser("serve", parents=[common], help="Start the HTTP API")
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)

    return parser


def _derivation_bounds(p: argparse.ArgumentParser):
    p.add_argument("--max-sub-image-len", type=int, default=None, help=f"default {DEFAULT_MAX_SUB_IMAGE_LEN}")
    p.add_argument("--max-steps", type=int, default=None, help=f"default {DEFAULT_MAX_STEPS}")
    p.add_argument("--ambient-len", type=int, default=None, help=f"default {DEFAULT_AMBIENT_LEN}")


def _bounds(args) -> dict:
    return {
        "max_word_len": args.max_len,
        "max_sub_image_len": args.max_sub_image_len,
        "max_steps": args.max_steps,
        "ambient_len": args.ambient_len,
    }


def _dispatch(args) -> List[Verdict]:
    command = args.command
    if command == "check":
        return [workbench.check(args.variety, args.identity)]
    if command == "monoid":
        return [workbench.monoid(args.action, args.preset, args.identity)]
    if command == "family":
        return [workbench.family(args.name, args.n, args.pi, args.tau, args.word)]
    if command == "sweep":
        return [workbench.sweep(args.first, args.second, args.max_len or 6, args.letters)]
    if command == "derive":
        return [
            workbench.derivation(
                args.identity,
                basis_name=args.basis,
                within=args.within,
                bounds=_bounds(args),
                nonempty=args.nonempty,
            )
        ]
    if command == "meet":
        return [workbench.meet(args.first, args.second, args.identity, args.basis, _bounds(args))]
    if command == "stability":
        return [workbench.stability(args.variety, args.class_spec, args.max_len or 8, args.letters)]
    if command == "isoterm":
        return [workbench.isoterm(args.variety, args.word, args.max_len or 8, args.letters)]
    if command == "sc2":
        return [workbench.sc2(args.variety, args.n_max, args.stab_len)]
    if command == "dist":
        return [workbench.dist_report(args.kind, args.identity)]
    if command == "lattice":
        return [workbench.lattice(args.max_level)]
    if command == "crosscheck":
        return run_crosscheck(quick=args.quick)
    raise ArgumentError(f"unknown command {command!r}")


def _serve(args) -> int:
    import uvicorn

    host, port = get_server_address()
    uvicorn.run("app:app", host=args.host or host, port=args.port or port)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ArgumentError as e:
        print(Verdict.from_error(e, subject="usage").render(), file=sys.stderr)
        return EXIT_USAGE

    if args.budget is not None:
        os.environ["MONOVA_BUDGET"] = str(args.budget)
    if args.command == "serve":
        return _serve(args)

    try:
        verdicts = _dispatch(args)
    except ArgumentError as e:
        verdicts = [Verdict.from_error(e, subject=args.command)]

    separator = "\n\n" if args.fmt == "text" else "\n---\n"
    print(separator.join(v.render(args.fmt) for v in verdicts))

    if len(verdicts) == 1:
        return verdicts[0].exit_code
    failed = [v for v in verdicts if v.status != VerdictStatus.HOLDS]
    logger.info(f"{len(verdicts) - len(failed)}/{len(verdicts)} checks passed")
    return 0 if not failed else max(v.exit_code for v in failed)


if __name__ == "__main__":
    sys.exit(main())
