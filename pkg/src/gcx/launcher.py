"""Command-line entry point: one subcommand per service method."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from gcx.core.models import (
    ApiResponse,
    ChainMapName,
    ChainMapRequest,
    FieldChoice,
    GrtRequest,
    RunConfig,
    VerifyTarget,
)
from gcx.errors import ConfigError, error_response

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _add_complex(parser: argparse.ArgumentParser, flavor: Optional[str] = "dGC") -> None:
    if flavor is not None:
        parser.add_argument("--flavor", default=flavor, help=f"Complex name (default: {flavor})")
    parser.add_argument("-k", type=int, default=None, help="Dimension parameter k")
    parser.add_argument("--p", type=int, default=None, help="Degree shift p, with k = p+q+1")
    parser.add_argument("--q", type=int, default=None, help="Degree shift q, with k = p+q+1")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes")


def _add_window(parser: argparse.ArgumentParser, v_max: int = 6, e_max: int = 9) -> None:
    parser.add_argument("--v-max", type=int, default=v_max, help="Largest vertex count")
    parser.add_argument("--e-max", type=int, default=e_max, help="Largest edge count")
    parser.add_argument("--cap", type=int, default=3, help="Weight cap W (default: 3)")
    parser.add_argument("--allow-tadpoles", action="store_true")


def _add_multiedge_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--no-multiedges",
        dest="allow_multiedges",
        action="store_false",
        help="Keep only graphs without parallel edges",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcx",
        description="gcx - graph complexes with exact signs and exact ranks",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level for stderr (default: WARNING)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    enumerate_cmd = commands.add_parser("enumerate", help="List the generators of one (v, e)")
    _add_complex(enumerate_cmd)
    enumerate_cmd.add_argument("--v", type=int, required=True, help="Vertex count")
    enumerate_cmd.add_argument("--e", type=int, required=True, help="Edge count")
    enumerate_cmd.add_argument("--cap", type=int, default=3, help="Weight cap W (default: 3)")
    enumerate_cmd.add_argument("--allow-tadpoles", action="store_true")
    _add_multiedge_flag(enumerate_cmd)
    enumerate_cmd.add_argument("--output", default=None, help="Write one graph per line here")

    cohomology_cmd = commands.add_parser("cohomology", help="Cohomology table at one loop number")
    _add_complex(cohomology_cmd)
    _add_window(cohomology_cmd)
    cohomology_cmd.add_argument("-b", type=int, default=None, help="Loop number")
    cohomology_cmd.add_argument("--degree-min", type=int, default=None)
    cohomology_cmd.add_argument("--degree-max", type=int, default=None)
    cohomology_cmd.add_argument(
        "--i-max", type=int, default=None, help="Loop graphs up to i (b2GC)"
    )
    cohomology_cmd.add_argument(
        "--field", choices=[f.value for f in FieldChoice], default=FieldChoice.RATIONAL.value
    )
    cohomology_cmd.add_argument("--sms-dir", default=None, help="Dump differentials as SMS here")

    verify_cmd = commands.add_parser("verify", help="Check an identity on a window")
    targets = verify_cmd.add_subparsers(dest="target", required=True)

    d2_cmd = targets.add_parser(VerifyTarget.D2.value, help="d(d(g)) = 0 for every generator")
    _add_complex(d2_cmd)
    _add_window(d2_cmd, v_max=4, e_max=6)
    _add_multiedge_flag(d2_cmd)

    chainmap_cmd = targets.add_parser(VerifyTarget.CHAINMAP.value, help="A map commutes with d")
    chainmap_cmd.add_argument("name", choices=[name.value for name in ChainMapName])
    _add_complex(chainmap_cmd, flavor=None)
    _add_window(chainmap_cmd, v_max=3, e_max=5)

    bound_cmd = targets.add_parser(VerifyTarget.DEGREE_BOUND.value, help="Nothing above (3-k)b-3")
    _add_complex(bound_cmd, flavor=None)
    bound_cmd.add_argument("-b", type=int, required=True, help="Loop number")

    grt_cmd = commands.add_parser("grt", help="The tetrahedron classes of dGC^st in k = 3")
    grt_cmd.add_argument(
        "--field", choices=[f.value for f in FieldChoice], default=FieldChoice.RATIONAL.value
    )
    grt_cmd.add_argument("--emit-derivations", action="store_true")
    grt_cmd.add_argument("--m", type=int, default=1, help="Outgoing legs (default: 1)")
    grt_cmd.add_argument("--n", type=int, default=1, help="Incoming legs (default: 1)")
    grt_cmd.add_argument("--no-lifts", action="store_true", help="Skip the lifts to dGC^st")
    return parser


def _config_fields(args: argparse.Namespace) -> dict:
    """Namespace entries that RunConfig knows, minus unset ones."""
    return {
        name: value
        for name, value in vars(args).items()
        if name in RunConfig.model_fields and value is not None
    }


def dispatch(args: argparse.Namespace) -> ApiResponse:
    """
    Run one parsed command.

    Raises:
        ValidationError: On configuration values pydantic rejects
    """
    from gcx.core.service import get_service

    service = get_service()
    if args.command == "grt":
        return service.grt(
            GrtRequest(
                field=args.field,
                emit_derivations=args.emit_derivations,
                m=args.m,
                n=args.n,
                lifts=not args.no_lifts,
            )
        )
    fields = _config_fields(args)
    if args.command == "enumerate":
        return service.enumerate(RunConfig(**fields))
    if args.command == "cohomology":
        return service.cohomology(RunConfig(**fields))
    if args.target == VerifyTarget.CHAINMAP.value:
        return service.verify_chain_map(ChainMapRequest(name=args.name, **fields))
    if args.target == VerifyTarget.DEGREE_BOUND.value:
        return service.verify_degree_bound(RunConfig(**fields))
    return service.verify_d2(RunConfig(**fields))


def exit_code(response: ApiResponse) -> int:
    """0 only when the command succeeded and every check it ran passed."""
    from gcx.core.service import FAILED_CHECK_CODES

    if not response.success or any(w.code in FAILED_CHECK_CODES for w in response.warnings):
        return EXIT_FAILED
    return EXIT_OK


def _config_error(error: ValidationError) -> ConfigError:
    first = error.errors()[0]
    field = ".".join(str(part) for part in first["loc"]) or None
    return ConfigError(f"invalid configuration: {first['msg']}", field=field)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT, stream=sys.stderr)

    try:
        response = dispatch(args)
    except ValidationError as e:
        print(f"gcx: invalid configuration: {e}", file=sys.stderr)
        print(error_response(_config_error(e)).model_dump_json(indent=2))
        return EXIT_USAGE

    print(response.model_dump_json(indent=2))
    return exit_code(response)


if __name__ == "__main__":
    sys.exit(main())
