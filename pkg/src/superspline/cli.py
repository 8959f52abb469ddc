"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 invalid arguments.
"""

import argparse
import json
import sys
from dataclasses import dataclass

from . import report as rpt
from .bernstein import SmoothnessProfile, family_profile, partition
from .dofs import UnsupportedProfile, VerificationError, build_element, count_table
from .polynomial import SizeError
from .verify import verify_continuity, verify_counts, verify_unisolvence

COMMANDS = ("count", "partition", "verify", "unisolvence", "continuity", "export")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    dim: int = 5
    smoothness: int = 1
    degree: int | None = None
    profile: tuple | None = None
    seed: int = 0
    samples: int = 50
    format: str = "text"
    output: str | None = None

    def has_overrides(self):
        return self.degree is not None or self.profile is not None

    def resolve_profile(self):
        """The smoothness profile this run works with."""
        if not self.has_overrides():
            return family_profile(self.dim, self.smoothness)
        if self.profile is not None:
            orders = tuple(self.profile)
            if len(orders) != self.dim:
                raise UsageError(
                    f"--profile has {len(orders)} orders but --dim is {self.dim}")
        else:
            orders = family_profile(self.dim, self.smoothness).orders
        degree = self.degree if self.degree is not None else 2 * orders[0] + 1
        return SmoothnessProfile(self.dim, orders, degree)


def _parse_profile(text):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"profile must be comma-separated ints: {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="superspline",
        description="Super-spline DOF counts and verification for C^m-P_k simplex elements.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--dim", type=int, default=5, help="space dimension n")
    parser.add_argument("--smoothness", type=int, default=1, help="global smoothness m")
    parser.add_argument("--degree", type=int, help="override the polynomial degree k")
    parser.add_argument("--profile", type=_parse_profile,
                        help="override orders r_0,...,r_{n-1} (comma separated)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text")
    parser.add_argument("--output", help="write the report here instead of stdout")
    return parser


def _family_only(config):
    if config.has_overrides():
        profile = config.resolve_profile()
        if not profile.is_family():
            raise UsageError(f"{config.command} needs a family profile, got {profile.label()}")
        return profile
    return family_profile(config.dim, config.smoothness)


def _render_table(table, fmt):
    if fmt == "json":
        return rpt.to_json(table)
    if fmt == "csv":
        return rpt.to_csv(table)
    return rpt.to_text(table)


def _cmd_count(config):
    profile = _family_only(config)
    table = rpt.table_from_counts(profile, count_table(profile))
    return EXIT_OK, _render_table(table, config.format)


def _cmd_partition(config):
    table = rpt.table_from_partition(partition(config.resolve_profile()))
    return EXIT_OK, _render_table(table, config.format)


def _cmd_verify(config):
    profile = _family_only(config)
    cmp = verify_counts(profile.n, profile.smoothness())
    if config.format == "json":
        out = json.dumps({
            "dimension": profile.n,
            "degree": profile.degree,
            "passed": cmp.passed,
            "checks": len(cmp.expected),
            "mismatches": [
                {"label": label, "expected": str(e), "actual": str(a)}
                for label, e, a in cmp.mismatches
            ],
        }, indent=2) + "\n"
    else:
        lines = [f"{label}: expected {e} got {a}" for label, e, a in cmp.mismatches]
        status = "PASS" if cmp.passed else "FAIL"
        lines.append(f"{status} {len(cmp.expected) - len(cmp.mismatches)}/{len(cmp.expected)} "
                     f"count checks, n={profile.n} m={profile.smoothness()} k={profile.degree}")
        out = "\n".join(lines) + "\n"
    return (EXIT_OK if cmp.passed else EXIT_FAIL), out


def _cmd_unisolvence(config):
    profile = _family_only(config)
    res = verify_unisolvence(profile.n, profile.smoothness())
    status = "PASS" if res.passed else "FAIL"
    out = f"{status} rank {res.rank} of {res.size} (n={res.n} m={res.m})\n"
    return (EXIT_OK if res.passed else EXIT_FAIL), out


def _cmd_continuity(config):
    profile = _family_only(config)
    jump = verify_continuity(profile.n, profile.smoothness(), config.seed, config.samples)
    out = f"max jump = {jump}\n"
    return (EXIT_OK if jump == 0 else EXIT_FAIL), out


def _cmd_export(config):
    profile = config.resolve_profile()
    if profile.n > 3:
        raise UsageError("export lists functionals for dimensions up to 3 only")
    element = build_element(profile=profile)
    if config.format == "json":
        return EXIT_OK, rpt.functionals_to_json(element)
    if config.format == "csv":
        return EXIT_OK, rpt.functionals_to_csv(element)
    return EXIT_OK, rpt.functionals_to_text(element)


HANDLERS = {
    "count": _cmd_count,
    "partition": _cmd_partition,
    "verify": _cmd_verify,
    "unisolvence": _cmd_unisolvence,
    "continuity": _cmd_continuity,
    "export": _cmd_export,
}


def run(config, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    if config.command not in HANDLERS:
        print(f"unknown command {config.command!r}", file=stderr)
        return EXIT_USAGE
    try:
        code, text = HANDLERS[config.command](config)
    except (UsageError, UnsupportedProfile, SizeError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=stderr)
        return EXIT_FAIL
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        dim=args.dim,
        smoothness=args.smoothness,
        degree=args.degree,
        profile=args.profile,
        seed=args.seed,
        samples=args.samples,
        format=args.format,
        output=args.output,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
