"""
Command-line interface for branescope.

    branescope [--seed S] [--format json|csv] [--config FILE] [--log-level L] GROUP COMMAND ...

Commands are registered in hooks.commands and resolved by dotted path.
Exit codes: 0 success, 1 usage error, 2 domain error, 3 certification failure.
"""
import argparse
import inspect
import sys
from importlib import import_module

from branescope import __version__, hooks
from branescope.exceptions import BranescopeError, UsageError
from branescope.logger import configure_logging, log_error
from branescope.report import emit_report
from branescope.settings import get_settings

SOURCE = (("source",), {"help": "polytope document or bundled example name"})
POLY = (("--poly",), {"required": True, "help": "polynomial document or bundled example name"})
TRIALS = (("--trials",), {"type": int})
POINT = (("--point",), {"required": True, "help": "homogeneous coordinates, e.g. 1,0.5+2j,1"})
DILATE = (("--dilate",), {"dest": "dilation", "type": int})

ARGUMENTS = {
    ("polytope", "check"): [SOURCE, DILATE],
    ("polytope", "dual"): [SOURCE],
    ("polytope", "points"): [SOURCE, DILATE],
    ("toric", "fan"): [SOURCE],
    ("toric", "divisor-cohomology"): [SOURCE, (("--divisor",), {"required": True})],
    ("branes", "cohomology"): [SOURCE, (("--divisor",), {"required": True})],
    ("branes", "ext"): [SOURCE, (("--a",), {"required": True}), (("--b",), {"required": True})],
    ("branes", "spanning"): [
        SOURCE,
        (("--brane",), {"required": True}),
        (("--depth",), {"type": int}),
        (("--window",), {"type": int}),
        (("--reverse",), {"action": "store_true"}),
    ],
    ("branes", "rectangle"): [
        SOURCE,
        (("--brane",), {"required": True}),
        (("--b",), {"type": int, "required": True}),
        (("--i0",), {"type": int}),
    ],
    ("branes", "triangle"): [
        SOURCE,
        (("--brane",), {"default": "0", "help": "probe brane F (default O_Y)"}),
        (("--a",), {"type": int, "required": True}),
        (("--other",), {"required": True}),
        (("--decay",), {"action": "store_true"}),
    ],
    ("branes", "homdim"): [SOURCE],
    ("equivariant", "localize"): [
        SOURCE,
        (("--divisor",), {}),
        (("--paper-mode",), {"action": "store_true"}),
        (("--restrict-y",), {"action": "store_true"}),
    ],
    ("equivariant", "xi"): [(("--m",), {"required": True})],
    ("equivariant", "compare"): [SOURCE],
    ("gauge", "ym"): [POLY, TRIALS],
    ("gauge", "probe"): [POLY, TRIALS],
    ("gauge", "connection"): [POINT],
    ("gauge", "curvature"): [POINT],
    ("verify",): [SOURCE],
}


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _global_options(defaults: bool) -> ArgumentParser:
    """
    Options accepted before and after the subcommand.

    Only the top-level copy sets defaults, so a flag given after the
    subcommand is not overwritten.
    """
    default = None if defaults else argparse.SUPPRESS
    parser = ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=lambda x: int(x, 0), default=default)
    parser.add_argument("--format", dest="output_format", choices=["json", "csv"], default=default)
    parser.add_argument("--config", default=default)
    parser.add_argument("--log-level", default=default)
    return parser


def _add_command(subparsers, name: str, key: tuple, target: str):
    parser = subparsers.add_parser(name, parents=[_global_options(False)])
    for flags, options in ARGUMENTS[key]:
        parser.add_argument(*flags, **options)
    parser.set_defaults(target=target)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="branescope", parents=[_global_options(True)])
    parser.add_argument("--version", action="version", version=f"branescope {__version__}")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=ArgumentParser)

    for group, commands in hooks.commands.items():
        if isinstance(commands, str):
            _add_command(groups, group, (group,), commands)
            continue

        group_parser = groups.add_parser(group)
        subparsers = group_parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
        for name, target in commands.items():
            _add_command(subparsers, name, (group, name), target)

    return parser


def _resolve(path: str):
    module, _, name = path.rpartition(".")
    return getattr(import_module(module), name)


def _call(target: str, args: argparse.Namespace, settings):
    function = _resolve(target)
    parameters = inspect.signature(function).parameters
    values = vars(args)
    kwargs = {name: values[name] for name in parameters if name in values}
    if "settings" in parameters:
        kwargs["settings"] = settings
    return function(**kwargs)


def run(argv=None, stdout=None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (default sys.argv[1:])
        stdout: Stream for the report (default sys.stdout)

    Returns:
        Process exit code
    """
    try:
        args = build_parser().parse_args(argv)
        settings = get_settings(
            getattr(args, "config", None),
            seed=getattr(args, "seed", None),
            output_format=getattr(args, "output_format", None),
            log_level=getattr(args, "log_level", None),
        )
        configure_logging(settings.log_level)

        report = _call(args.target, args, settings)
        emit_report(report, settings.output_format, stdout)

    except BranescopeError as e:
        print(f"branescope: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        log_error(title="Unexpected failure", message=str(e))
        raise

    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
