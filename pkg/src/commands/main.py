"""
Command orchestration: turns a problem file into systems, candidates and
fields, runs one command over them and collects a report.
"""

import json
import logging
import re
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from canonical import HamiltonianSystem, IntegralCandidate, PhaseSpace, first_integral_test
from config import VERSION, Settings, get_settings
from correspondence import field_from_integral, integral_from_field, kinetic_potential, levy_cerruti_split, normalize_addend
from discovery import discover_integrals, enumerate_basis
from errors import (
    BasePointSingular,
    HNotKineticMinusPotential,
    NoClosedFormAntiderivative,
    NonIntegrableAlongPath,
    NotContactField,
    NotInvariant,
    ProblemFileError,
    WNotLinearHomogeneous,
)
from exparse import parse, render
from fields import ContactField, invariance_check
from models import ProblemFile, Report, ReportConfig, ResultEntry
from numverify import choose_method, drift_report, flow_commutation_check, integrate_hamilton, write_drift_csv
from symcore import ZeroStatus, normalize

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "correspond", "reconstruct", "invariance", "levy-cerruti", "discover", "simulate", "commute")


def load_problem(path: Union[str, Path]) -> ProblemFile:
    """
    Read and validate a JSON problem file.

    Raises:
        ProblemFileError: If the file cannot be read or is not JSON
        pydantic.ValidationError: If the content does not match the schema
    """
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ProblemFileError(f"Cannot read problem file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"Problem file {path} is not valid JSON: {exc}") from exc
    return ProblemFile.model_validate(raw)


def _safe_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name)


def _status_details(verdict) -> Dict:
    details = {"probes": verdict.probes}
    if verdict.witness is not None:
        details["witness"] = verdict.witness
        details["witness_value"] = verdict.witness_value
    return details


def _error_entry(name: str, exc: Exception) -> ResultEntry:
    """Failed result for an object whose operation raised; the verdict is the error name."""
    return ResultEntry(name=name, verdict=type(exc).__name__, passed=False, details={"error": str(exc)})


class CommandService:
    def __init__(self, problem: ProblemFile, source: str, settings: Settings,
                 csv_dir: Optional[Path] = None):
        self.problem = problem
        self.source = source
        self.settings = settings
        self.zero_test = settings.zero_test()
        self.csv_dir = csv_dir
        self.space = PhaseSpace(n=problem.n)
        self.system = HamiltonianSystem(space=self.space, H=parse(problem.hamiltonian, self.space, "hamiltonian"))
        self.candidates = [
            IntegralCandidate(name=spec.name, W=parse(spec.expression, self.space, f"candidates[{k}].expression"))
            for k, spec in enumerate(problem.candidates)
        ]
        self.fields = [
            ContactField(
                space=self.space,
                name=spec.name,
                xi=tuple(parse(e, self.space, f"fields[{k}].xi[{i}]") for i, e in enumerate(spec.xi)),
                pi=tuple(parse(e, self.space, f"fields[{k}].pi[{i}]") for i, e in enumerate(spec.pi)),
            )
            for k, spec in enumerate(problem.fields)
        ]

    def run(self, command: str) -> List[Report]:
        """
        Run one command, or every applicable command for "all".

        Raises:
            ProblemFileError: If the command is unknown or needs a block the problem lacks
        """
        if command == "all":
            selected = [c for c in COMMANDS if self._applicable(c)]
        elif command in COMMANDS:
            selected = [command]
        else:
            raise ProblemFileError(f"Unknown command '{command}', expected one of {COMMANDS + ('all',)}")
        return [self._report(c, self._handlers()[c]()) for c in selected]

    def _applicable(self, command: str) -> bool:
        if command == "discover":
            return self.problem.ansatz is not None
        if command in ("simulate", "commute"):
            return self.problem.simulate is not None
        if command == "levy-cerruti":
            try:
                kinetic_potential(self.system)
            except HNotKineticMinusPotential as exc:
                logger.info("Skipping levy-cerruti: %s", exc)
                return False
        return True

    def _handlers(self) -> Dict[str, Callable[[], List[ResultEntry]]]:
        return {
            "verify": self.verify,
            "correspond": self.correspond,
            "reconstruct": self.reconstruct,
            "invariance": self.invariance,
            "levy-cerruti": self.levy_cerruti,
            "discover": self.discover,
            "simulate": self.simulate,
            "commute": self.commute,
        }

    def _report(self, command: str, results: List[ResultEntry]) -> Report:
        failed = [r.name for r in results if not r.passed]
        logger.info("%s on %s: %d results, %d failed", command, self.source, len(results), len(failed))
        return Report(
            command=command,
            inputs={"source": self.source, "problem": self.problem.model_dump(mode="json")},
            results=results,
            config=ReportConfig(
                version=VERSION,
                seed=self.settings.seed,
                tolerances=self.settings.tolerances(),
                hamiltonian=render(normalize(self.system.H)),
            ),
        )

    def verify(self) -> List[ResultEntry]:
        results = []
        for W in self.candidates:
            verdict = first_integral_test(W, self.system, self.zero_test)
            if verdict.status == ZeroStatus.NUMERICALLY_ZERO:
                logger.warning("%s passed only numerically (%d probes)", W.name, verdict.probes)
            details = _status_details(verdict)
            if not verdict.is_zero:
                try:
                    corrected = normalize_addend(W, self.system, self.zero_test)
                    details["corrected"] = render(corrected.W)
                except (NotInvariant, NoClosedFormAntiderivative) as exc:
                    logger.debug("No additive correction for %s: %s", W.name, exc)
            results.append(ResultEntry(
                name=W.name,
                verdict=verdict.status.value,
                passed=verdict.is_zero,
                residual=render(verdict.residual),
                details=details,
            ))
        return results

    def correspond(self) -> List[ResultEntry]:
        results = []
        for W in self.candidates:
            f = field_from_integral(W, self.space)
            report = invariance_check(f, self.system, self.zero_test)
            failures = report.failures()
            results.append(ResultEntry(
                name=W.name,
                verdict="Invariant" if report.passed else "NotInvariant",
                passed=report.passed,
                residual=render(failures[0].verdict.residual) if failures else None,
                field={"xi": [render(c) for c in f.xi], "pi": [render(c) for c in f.pi]},
                details={"failures": [entry.label for entry in failures]},
            ))
        return results

    def reconstruct(self) -> List[ResultEntry]:
        base_point = None
        if self.problem.base_point is not None:
            base_point = [Fraction(str(b)) for b in self.problem.base_point]
        results = []
        for f in self.fields:
            try:
                W = integral_from_field(f, self.system, base_point, self.zero_test)
            except NotContactField as exc:
                results.append(ResultEntry(
                    name=f.name,
                    verdict="NotContactField",
                    passed=False,
                    residual=exc.residual,
                    details={"condition": exc.kind, "pair": list(exc.pair)},
                ))
                continue
            except (BasePointSingular, NonIntegrableAlongPath) as exc:
                logger.warning("Cannot reconstruct %s: %s", f.name, exc)
                results.append(_error_entry(f.name, exc))
                continue
            verdict = first_integral_test(W, self.system, self.zero_test)
            results.append(ResultEntry(
                name=f.name,
                verdict=verdict.status.value,
                passed=verdict.is_zero,
                residual=render(verdict.residual),
                details={"W": render(W.W), "normalized": W.normalized, **_status_details(verdict)},
            ))
        return results

    def invariance(self) -> List[ResultEntry]:
        results = []
        for f in self.fields:
            report = invariance_check(f, self.system, self.zero_test)
            failures = report.failures()
            results.append(ResultEntry(
                name=f.name,
                verdict="Invariant" if report.passed else "NotInvariant",
                passed=report.passed,
                residual=render(failures[0].verdict.residual) if failures else None,
                details={"equations": {e.label: e.verdict.status.value for e in report.equations}},
            ))
        return results

    def levy_cerruti(self) -> List[ResultEntry]:
        results = []
        for W in self.candidates:
            try:
                report = levy_cerruti_split(W, self.system, self.zero_test)
            except WNotLinearHomogeneous:
                # not a point transformation; nothing to check
                results.append(ResultEntry(name=W.name, verdict="NotLinearHomogeneous", passed=True))
                continue
            except HNotKineticMinusPotential as exc:
                results.append(_error_entry(W.name, exc))
                continue
            integral = first_integral_test(W, self.system, self.zero_test)
            details = report.model_dump(mode="json")
            details["first_integral"] = integral.status.value
            results.append(ResultEntry(
                name=W.name,
                verdict="Admits" if report.admits else "DoesNotAdmit",
                passed=report.admits,
                details=details,
            ))
        return results

    def discover(self) -> List[ResultEntry]:
        ansatz_spec = self.problem.ansatz
        if ansatz_spec is None:
            raise ProblemFileError("Command 'discover' needs an 'ansatz' block")
        ansatz = enumerate_basis(self.space, ansatz_spec.degree, ansatz_spec.include_t, self.settings.max_basis_size)
        basis = discover_integrals(self.system, ansatz, self.zero_test, self.settings.max_basis_size)
        results = [ResultEntry(
            name="basis",
            verdict=f"dimension {basis.dimension}",
            passed=True,
            details={"dimension": basis.dimension, "ansatz_size": basis.ansatz_size, "rank": basis.rank},
        )]
        for generator in basis.generators:
            results.append(ResultEntry(
                name=generator.name,
                verdict=ZeroStatus.PROVED_ZERO.value,
                passed=True,
                details={"W": render(generator.W)},
            ))
        return results

    def simulate(self) -> List[ResultEntry]:
        spec = self.problem.simulate
        if spec is None:
            raise ProblemFileError("Command 'simulate' needs a 'simulate' block")
        method = spec.method or choose_method(self.system)
        traj = integrate_hamilton(self.system, spec.initial, spec.t0, spec.t1, spec.h, method, self.settings)
        results = []
        for W in self.candidates:
            stats = drift_report(W, traj, self.system, keep_values=self.csv_dir is not None)
            if self.csv_dir is not None:
                target = self.csv_dir / f"{_safe_name(self.source)}_{_safe_name(W.name)}.csv"
                write_drift_csv(target, traj, stats)
                logger.info("Wrote drift series to %s", target)
            conserved = stats.within(self.settings.drift_tolerance)
            results.append(ResultEntry(
                name=W.name,
                verdict="Conserved" if conserved else "Drifts",
                passed=conserved,
                stats=stats.model_dump(mode="json", exclude={"values"}),
            ))
        return results

    def commute(self) -> List[ResultEntry]:
        spec = self.problem.simulate
        if spec is None:
            raise ProblemFileError("Command 'commute' needs a 'simulate' block")
        results = []
        for W in self.candidates:
            report = flow_commutation_check(
                W, self.system, spec.initial, spec.flow_parameter, spec.t1, spec.h,
                t0=spec.t0, method=spec.method, settings=self.settings,
            )
            results.append(ResultEntry(
                name=W.name,
                verdict="Commutes" if report.passed else "DoesNotCommute",
                passed=report.passed,
                stats=report.model_dump(mode="json"),
            ))
        return results


def get_command_service(problem: ProblemFile, source: str, seed: Optional[int] = None,
                        tolerance: Optional[float] = None, csv_dir: Optional[Path] = None,
                        settings: Optional[Settings] = None) -> CommandService:
    """
    Build a command service with settings layered as environment, then the
    problem's seed, then explicit overrides.

    Args:
        problem: Validated problem file
        source: Label used in reports and CSV file names
        seed: Zero-test seed override
        tolerance: Zero-test tolerance override
        csv_dir: Directory for drift series, None to skip CSV output
        settings: Base settings, defaults to the environment settings

    Returns:
        CommandService
    """
    settings = (settings or get_settings()).with_overrides(seed=problem.seed)
    settings = settings.with_overrides(seed=seed, zero_tolerance=tolerance)
    return CommandService(problem, source, settings, csv_dir)


def render_text(report: Report) -> str:
    """Human-readable report: one line per result, details indented below."""
    lines = [f"== {report.command} ({report.inputs['source']}) ==", f"H = {report.config.hamiltonian}"]
    for result in report.results:
        lines.append(f"{result.name}: {result.verdict}")
        if result.residual is not None and not result.passed:
            lines.append(f"    residual: {result.residual}")
        if result.field is not None:
            lines.append(f"    xi: {', '.join(result.field['xi'])}")
            lines.append(f"    pi: {', '.join(result.field['pi'])}")
        for key in ("corrected", "W", "error"):
            if result.details and key in result.details:
                lines.append(f"    {key}: {result.details[key]}")
        if result.stats is not None:
            for key, value in result.stats.items():
                if key not in ("A", "B"):
                    lines.append(f"    {key}: {value}")
    lines.append(f"seed {report.config.seed}, version {report.config.version}")
    return "\n".join(lines)
