"""Command-line entry point: run verification suites, emit JSON reports.

Exit codes: 0 all checks pass, 1 at least one check failed,
2 configuration error (bad flags, unknown/unsupported algebra),
3 resource limit (dimension or degree beyond the guarded budget).

Every flag has an environment-variable override COVJORD_<FLAG>.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .jordan import UnsupportedKindError
from .suites import (
    SUITE_NAMES,
    ConfigurationError,
    ResourceLimitError,
    SuiteConfig,
    run_suite,
)

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIGURATION = 2
EXIT_RESOURCE_LIMIT = 3

_ENV_PREFIX = "COVJORD_"


def _env_default(name: str, fallback=None):
    return os.environ.get(_ENV_PREFIX + name.upper().replace("-", "_"), fallback)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covjord",
        description="Exact verification suites for covariant bi-differential "
                    "operator families on simple real Jordan algebras.",
    )
    parser.add_argument("--suite", default=_env_default("suite", "all"),
                        help=f"one of: {', '.join(SUITE_NAMES)}")
    parser.add_argument("--algebra", default=_env_default("algebra"),
                        help="algebra spec, e.g. sym:3, mat:2, hermc:2, rpq:2,1")
    parser.add_argument("--max-degree", type=int,
                        default=int(_env_default("max_degree", 3)),
                        help="polynomial degree budget for sampled checks")
    parser.add_argument("--seed", type=int, default=int(_env_default("seed", 0)),
                        help="seed determining every random draw")
    parser.add_argument("--tolerance", type=float,
                        default=(lambda v: float(v) if v is not None else None)(
                            _env_default("tolerance")),
                        help="numeric tolerance override for floating checks")
    parser.add_argument("--report", default=_env_default("report"),
                        help="path for the JSON report (stdout summary either way)")
    parser.add_argument("--jobs", type=int, default=int(_env_default("jobs", 1)),
                        help="worker pool width for independent checks")
    parser.add_argument("--registry", action="store_true",
                        help="print the algebra classification registry as JSON and exit")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.registry:
        from .jordan import registry_json

        print(json.dumps(registry_json(), indent=2, sort_keys=True))
        return EXIT_PASS

    if args.suite not in SUITE_NAMES:
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return EXIT_CONFIGURATION
    if args.jobs < 1 or args.max_degree < 0:
        print("error: --jobs must be >= 1 and --max-degree >= 0", file=sys.stderr)
        return EXIT_CONFIGURATION

    config = SuiteConfig(
        suite=args.suite,
        algebra=args.algebra,
        max_degree=args.max_degree,
        seed=args.seed,
        tolerance=args.tolerance,
        jobs=args.jobs,
    )
    try:
        report = run_suite(config)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_LIMIT
    except (ConfigurationError, UnsupportedKindError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIGURATION

    for check in report["checks"]:
        status = check["status"].upper()
        residual = check["residual"]
        print(f"[{status:4}] {check['id']:34} residual={residual:.3e} "
              f"({check['millis']:.0f} ms)  {check['identity']}")
    print(f"suite={report['suite']} algebra={report['algebra']} seed={report['seed']}: "
          f"{report['passed']} passed, {report['failed']} failed")

    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")

    return EXIT_PASS if report["failed"] == 0 else EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
