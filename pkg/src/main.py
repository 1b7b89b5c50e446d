import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import TypeAdapter, ValidationError

from commands import COMMANDS, get_command_service, load_problem, render_text
from config import get_settings
from errors import CanonSymmetryError
from gallery import load_gallery
from models import Report

logger = logging.getLogger(__name__)

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="canon-symmetry",
        description="Check first integrals and infinitesimal contact transformations of canonical systems.",
    )
    parser.add_argument("command", choices=COMMANDS + ("all",), help="Check to run")
    parser.add_argument("problem", nargs="?", type=Path, help="JSON problem file")
    parser.add_argument("--json", type=Path, dest="json_path", help="Write the machine-readable report here")
    parser.add_argument("--csv", type=Path, dest="csv_dir", help="Write drift series per candidate into this directory")
    parser.add_argument("--seed", type=int, help="Seed of the probabilistic zero test")
    parser.add_argument("--tol", type=float, help="Relative tolerance of the zero test")
    parser.add_argument("--gallery", action="store_true", help="Run the command over the shipped example problems")
    args = parser.parse_args(argv)
    if args.gallery == (args.problem is not None):
        parser.error("give exactly one of a problem file or --gallery")
    return args


def run(args: argparse.Namespace) -> List[Report]:
    if args.gallery:
        problems = load_gallery()
    else:
        problems = {str(args.problem): load_problem(args.problem)}

    reports: List[Report] = []
    for source, problem in problems.items():
        service = get_command_service(problem, source, seed=args.seed, tolerance=args.tol, csv_dir=args.csv_dir)
        reports.extend(service.run(args.command))
    return reports


def write_json(path: Path, reports: List[Report]) -> None:
    if len(reports) == 1:
        payload = reports[0].model_dump_json(indent=2)
    else:
        payload = TypeAdapter(List[Report]).dump_json(reports, indent=2).decode("utf-8")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(payload + "\n", encoding="utf-8")


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=get_settings().log_level, format="%(levelname)s %(name)s: %(message)s")

    try:
        reports = run(args)
    except (CanonSymmetryError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    for report in reports:
        print(render_text(report))
        print()
    if args.json_path is not None:
        write_json(args.json_path, reports)

    return EXIT_PASSED if all(report.passed for report in reports) else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
