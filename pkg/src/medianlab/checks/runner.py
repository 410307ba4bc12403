from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ..boxes.box import intersection_graph, snap_to_grid
from ..boxes.burling import burling_family
from ..coloring.clique import max_clique
from ..coloring.models import Budget, ColoringResult
from ..coloring.solver import chromatic_number
from ..config.budget_file import BudgetConfig
from ..console import format_table
from ..errors import MedianlabError, SchemaError, ThetaError
from ..events.bijection import roundtrip_pointed
from ..graphs.cubes import cube_condition
from ..graphs.export import to_dot, write_dot
from ..graphs.graph import Graph, graph_from_payload, read_json, write_json
from ..graphs.median import MedianMode, is_median
from ..graphs.oriented import orient
from ..graphs.theta import theta_classes
from ..lifting.chain import build_chain, verify_chain
from ..lifting.grid import build_grid
from ..lifting.lemmas import (
    LemmaVerdict,
    certify_amalgam_sequence,
    verify_class_census,
    verify_clique_identity,
    verify_cube_condition,
    verify_lemma_coloring,
    verify_lemma_crossing,
    verify_lemma_degree,
    verify_lemma_intersection,
    verify_median,
    verify_orientation,
)
from ..lifting.lift import LiftedGraph, is_lifted_payload, lift, lifted_dot, lifted_from_payload
from .executor import default_workers, run_ordered
from .models import CheckResult
from .report import ProgressReporter, print_check, print_stage, print_summary
from .status import (
    STATUS_ERROR,
    STATUS_FAIL,
    STATUS_LIMIT,
    STATUS_PASS,
    STATUS_SKIP,
    exit_code_for,
    status_for_error,
)


GRAPH_CHECKS = ("theta", "median", "cube", "events")
LIFT_CHECKS = ("census", "orientation", "crossing", "intersection", "degree", "coloring", "cliques", "amalgam")
ALL_CHECKS = GRAPH_CHECKS + LIFT_CHECKS


@dataclass(frozen=True)
class CheckSettings:
    mode: str | None = None
    samples: int = 1_000_000
    seed: int = 0
    exhaustive_limit: int = 2000
    max_lift_vertices: int = 200_000
    domain_limit: int = 100_000
    budget: Budget = field(default_factory=Budget)
    basepoint: int | None = None

    @classmethod
    def from_config(cls, config: BudgetConfig, **overrides) -> CheckSettings:
        values = {
            "samples": config.samples,
            "seed": config.seed,
            "exhaustive_limit": config.exhaustive_vertices,
            "max_lift_vertices": config.max_lift_vertices,
            "domain_limit": config.domain_limit,
            "budget": Budget(config.max_nodes, config.max_seconds),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def validate_checks(names: list[str]) -> list[str]:
    unknown = [name for name in names if name not in ALL_CHECKS]
    if unknown:
        raise SchemaError(f"unknown check {unknown[0]!r}; choose from {', '.join(ALL_CHECKS)}")
    return list(dict.fromkeys(names))


def result_from_verdict(verdict: LemmaVerdict, duration: float) -> CheckResult:
    if not verdict.ok:
        status = STATUS_FAIL
    elif verdict.exhausted:
        status = STATUS_LIMIT
    else:
        status = STATUS_PASS
    return CheckResult(verdict.name, status, duration, verdict.detail, verdict.witness, dict(verdict.measured))


def _timed(name: str, action: Callable[[], LemmaVerdict]) -> CheckResult:
    start = time.time()
    try:
        verdict = action()
    except ThetaError as exc:
        return CheckResult(name, STATUS_FAIL, time.time() - start, f"{exc.code}: {exc}", exc.witness)
    except MedianlabError as exc:
        return CheckResult(name, status_for_error(exc), time.time() - start, f"{exc.code}: {exc}", exc.witness)
    return result_from_verdict(verdict, time.time() - start)


def _median_mode(size: int, settings: CheckSettings) -> MedianMode:
    if settings.mode:
        return MedianMode(settings.mode)
    return MedianMode.EXHAUSTIVE if size <= settings.exhaustive_limit else MedianMode.SAMPLED


def _graph_theta(graph: Graph, settings: CheckSettings) -> LemmaVerdict:
    basepoint = graph.vertices[0] if settings.basepoint is None else settings.basepoint
    t = theta_classes(graph, basepoint, exact_limit=settings.exhaustive_limit)
    return LemmaVerdict("theta", True, f"{len(t.classes)} classes", measured={"classes": len(t.classes), "exact": t.exact})


def _graph_median(graph: Graph, settings: CheckSettings) -> LemmaVerdict:
    mode = _median_mode(len(graph), settings)
    verdict = is_median(graph, mode, samples=settings.samples, seed=settings.seed, exhaustive_limit=settings.exhaustive_limit)
    measured = {"mode": mode.value, "triplets": verdict.triplets}
    if verdict.witness_size is not None:
        measured["witness_size"] = verdict.witness_size
    return LemmaVerdict("median", verdict.ok, verdict.reason, verdict.witness, measured)


def _graph_cube(graph: Graph) -> LemmaVerdict:
    verdict = cube_condition(graph, (0, 1))
    if verdict.ok:
        return LemmaVerdict("cube", True, measured={"checked": verdict.checked})
    witness = [sorted(cell) for cell in verdict.witness]
    return LemmaVerdict("cube", False, f"k = {verdict.dim} fails at vertex {verdict.corner}", witness)


def _events_roundtrip(graph: Graph, lg: LiftedGraph | None, settings: CheckSettings) -> LemmaVerdict:
    if lg is not None:
        og, t = lg.orientation, lg.theta
    else:
        basepoint = graph.vertices[0] if settings.basepoint is None else settings.basepoint
        og = orient(graph, basepoint)
        t = theta_classes(graph, basepoint, exact_limit=settings.exhaustive_limit)
    verdict = roundtrip_pointed(og, t, limit=settings.domain_limit)
    return LemmaVerdict("events", verdict.ok, verdict.reason or verdict.method, measured={"events": len(t.classes), "method": verdict.method})


def run_graph_checks(graph: Graph, names: list[str], settings: CheckSettings) -> list[CheckResult]:
    actions: dict[str, Callable[[], LemmaVerdict]] = {
        "theta": lambda: _graph_theta(graph, settings),
        "median": lambda: _graph_median(graph, settings),
        "cube": lambda: _graph_cube(graph),
        "events": lambda: _events_roundtrip(graph, None, settings),
    }
    results = []
    for name in names:
        if name in actions:
            results.append(_timed(name, actions[name]))
        else:
            results.append(CheckResult(name, STATUS_SKIP, 0.0, "needs a lifted graph"))
    return results


def _lift_theta(lg: LiftedGraph) -> LemmaVerdict:
    t = lg.theta
    return LemmaVerdict("theta", True, f"{len(t.classes)} classes", measured={"classes": len(t.classes), "exact": t.exact})


def run_lift_checks(lg: LiftedGraph, names: list[str], settings: CheckSettings) -> list[CheckResult]:
    budget = settings.budget
    actions: dict[str, Callable[[], LemmaVerdict]] = {
        "theta": lambda: _lift_theta(lg),
        "median": lambda: verify_median(
            lg, _median_mode(len(lg.graph), settings), samples=settings.samples, seed=settings.seed,
            exhaustive_limit=settings.exhaustive_limit,
        ),
        "cube": lambda: verify_cube_condition(lg),
        "events": lambda: _events_roundtrip(lg.graph, lg, settings),
        "census": lambda: verify_class_census(lg),
        "orientation": lambda: verify_orientation(lg),
        "crossing": lambda: verify_lemma_crossing(lg),
        "intersection": lambda: verify_lemma_intersection(lg),
        "degree": lambda: verify_lemma_degree(lg, budget=budget),
        "coloring": lambda: verify_lemma_coloring(lg, budget),
        "cliques": lambda: verify_clique_identity(lg, budget),
        "amalgam": lambda: certify_amalgam_sequence(lg),
    }
    return [_timed(name, actions[name]) for name in names]


def load_for_checks(path: Path, settings: CheckSettings) -> tuple[Graph, LiftedGraph | None]:
    payload = read_json(path)
    if is_lifted_payload(payload):
        lg = lifted_from_payload(payload, max_vertices=settings.max_lift_vertices, exact_limit=settings.exhaustive_limit)
        return lg.graph, lg
    return graph_from_payload(payload), None


@dataclass
class VerifyOptions:
    graph_path: Path
    checks: list[str]
    settings: CheckSettings
    timings: bool = True
    dot: Path | None = None


def graph_dot(graph: Graph, lg: LiftedGraph | None, basepoint: int | None = None) -> str:
    if lg is not None:
        return lifted_dot(lg)
    try:
        t = theta_classes(graph, graph.vertices[0] if basepoint is None else basepoint)
    except ThetaError:
        return to_dot(graph)
    return to_dot(graph, t)


def run_verify(options: VerifyOptions) -> tuple[list[CheckResult], int]:
    names = validate_checks(options.checks)
    graph, lg = load_for_checks(options.graph_path, options.settings)
    if options.dot is not None:
        write_dot(options.dot, graph_dot(graph, lg, options.settings.basepoint))
    print_stage("verify")
    if lg is not None:
        results = run_lift_checks(lg, names, options.settings)
    else:
        results = run_graph_checks(graph, names, options.settings)
    for result in results:
        print_check(result, timings=options.timings)
    print_summary([("checks", results)])
    return results, exit_code_for(result.status for result in results)


@dataclass
class ReportRow:
    n: int
    status: str
    duration: float
    facts: dict[str, object] = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    detail: str = ""

    def to_payload(self, *, timings: bool = False) -> dict[str, object]:
        payload: dict[str, object] = {"n": self.n, "status": self.status, **self.facts}
        payload["checks"] = [check.to_payload(timings=timings) for check in self.checks]
        if self.detail:
            payload["detail"] = self.detail
        if timings:
            payload["seconds"] = round(self.duration, 3)
        return payload


@dataclass
class ReportOptions:
    n_max: int
    config: BudgetConfig
    checks: list[str]
    settings: CheckSettings
    out: Path | None = None
    timings: bool = False
    no_progress: bool = False


def _chi_fact(result: ColoringResult) -> dict[str, object]:
    payload = result.to_payload()
    payload.pop("clique", None)
    return payload


def _bracket_from_boxes(chi_boxes: dict[str, object]) -> dict[str, object]:
    # Lifted classes of intersecting boxes are adjacent in Γ_α, so χ(B) is a lower bound.
    lower = chi_boxes["chi"] if chi_boxes.get("optimal") else chi_boxes["lower"]
    return {"chi": None, "lower": lower, "upper": None, "optimal": False}


def _row_status(checks: list[CheckResult]) -> str:
    statuses = {check.status for check in checks}
    for status in (STATUS_FAIL, STATUS_ERROR, STATUS_LIMIT):
        if status in statuses:
            return status
    return STATUS_PASS


def build_report_row(n: int, options: ReportOptions) -> ReportRow:
    """One instance of the pipeline: B(n), its lift, and every selected check on the lift."""
    start = time.time()
    settings = options.settings
    facts: dict[str, object] = {}
    try:
        family = burling_family(n, max_n=options.config.max_burling_n)
        boxes = intersection_graph(family)
        clique = max_clique(boxes, settings.budget)
        facts["boxes"] = len(family)
        facts["omega_boxes"] = clique.size
        facts["chi_boxes"] = _chi_fact(chromatic_number(boxes, settings.budget))
        snapped = snap_to_grid(family)
        gc = build_grid(snapped)
        facts["grid"] = list(gc.dims)
        lg = lift(gc, snapped, max_vertices=settings.max_lift_vertices, exact_limit=settings.exhaustive_limit)
        facts["vertices"] = len(lg.graph)
        facts["classes"] = len(lg.theta.classes)
        facts["max_out_degree"] = lg.orientation.max_out_degree()
        facts["max_degree"] = lg.graph.max_degree()
    except MedianlabError as exc:
        if "chi_boxes" in facts and "vertices" not in facts:
            bracket = _bracket_from_boxes(facts["chi_boxes"])  # type: ignore[arg-type]
            facts["chi_pointed"] = bracket
            facts["chi_pointed_lifted"] = dict(bracket)
        return ReportRow(n, status_for_error(exc), time.time() - start, facts, detail=f"{exc.code}: {exc}")

    checks = run_lift_checks(lg, options.checks, settings)
    for check in checks:
        if check.name == "coloring" and check.measured:
            facts["chi_contact"] = check.measured.get("contact")
            facts["chi_pointed"] = check.measured.get("pointed")
            facts["chi_pointed_lifted"] = check.measured.get("pointed_lifted")
    return ReportRow(n, _row_status(checks), time.time() - start, facts, checks)


def build_chain_row(options: ReportOptions) -> ReportRow:
    k = min(options.n_max, options.config.max_chain_blocks)
    start = time.time()
    settings = options.settings
    check_start = time.time()
    try:
        chain = build_chain(
            k,
            max_blocks=options.config.max_chain_blocks,
            max_n=options.config.max_burling_n,
            max_vertices=settings.max_lift_vertices,
            exact_limit=settings.exhaustive_limit,
            workers=options.config.workers,
        )
        check_start = time.time()
        verdict = verify_chain(chain, settings.budget)
    except ThetaError as exc:
        result = CheckResult("chain", STATUS_FAIL, time.time() - check_start, f"{exc.code}: {exc}", exc.witness)
        return ReportRow(k, STATUS_FAIL, time.time() - start, {"blocks": k}, [result])
    except MedianlabError as exc:
        return ReportRow(k, status_for_error(exc), time.time() - start, {"blocks": k}, detail=f"{exc.code}: {exc}")
    result = result_from_verdict(verdict, time.time() - check_start)
    facts = {"blocks": k, **{key: value for key, value in verdict.measured.items() if key != "blocks"}}
    return ReportRow(k, result.status, time.time() - start, facts, [result])


def _format_chi(value: object) -> str:
    if not isinstance(value, dict):
        return "-"
    if value.get("optimal"):
        return str(value.get("chi"))
    if value.get("upper") is None:
        return f"≥{value.get('lower')}"
    return f"[{value.get('lower')},{value.get('upper')}]"


def report_table(rows: list[ReportRow]) -> str:
    header = ["n", "boxes", "grid", "|V|", "classes", "out", "deg", "ω", "χ(B)", "χ(Γα|Θi)", "χ(Γα)", "χ(Γ)", "status"]
    lines = []
    for row in rows:
        facts = row.facts
        grid = facts.get("grid")
        lines.append([
            str(row.n),
            str(facts.get("boxes", "-")),
            "x".join(str(d) for d in grid) if isinstance(grid, list) else "-",
            str(facts.get("vertices", "-")),
            str(facts.get("classes", "-")),
            str(facts.get("max_out_degree", "-")),
            str(facts.get("max_degree", "-")),
            str(facts.get("omega_boxes", "-")),
            _format_chi(facts.get("chi_boxes")),
            _format_chi(facts.get("chi_pointed_lifted")),
            _format_chi(facts.get("chi_pointed")),
            _format_chi(facts.get("chi_contact")),
            row.status.lower(),
        ])
    return format_table(header, lines)


def report_payload(options: ReportOptions, rows: list[ReportRow], chain: ReportRow | None) -> dict[str, object]:
    payload: dict[str, object] = {
        "n_max": options.n_max,
        "seed": options.settings.seed,
        "checks": list(options.checks),
        "rows": [row.to_payload(timings=options.timings) for row in rows],
    }
    if chain is not None:
        payload["chain"] = chain.to_payload(timings=options.timings)
    return payload


def run_report(options: ReportOptions) -> int:
    options.checks = validate_checks(options.checks)
    progress = ProgressReporter(enabled=not options.no_progress)
    indices = list(range(1, options.n_max + 1))

    print_stage("report")
    progress.start(len(indices))
    try:
        rows = run_ordered(
            indices,
            lambda n: build_report_row(n, options),
            max_workers=default_workers(options.config.workers, len(indices)),
            on_result=lambda n, row: progress.advance(f"n={n}", row.status),
        )
    finally:
        progress.stop()
    for row in rows:
        print_stage(f"n={row.n}")
        if row.detail:
            print_check(CheckResult("pipeline", row.status, row.duration, row.detail), timings=options.timings)
        for check in row.checks:
            print_check(check, timings=options.timings)

    chain = None
    if options.config.max_chain_blocks >= 1:
        print_stage("chain")
        chain = build_chain_row(options)
        if chain.detail:
            print_check(CheckResult("chain", chain.status, chain.duration, chain.detail), timings=options.timings)
        for check in chain.checks:
            print_check(check, timings=options.timings)

    print_stage("table")
    print(report_table(rows))
    if options.out is not None:
        write_json(options.out, report_payload(options, rows, chain))
        print(f"report written to {options.out}")

    row_results = [CheckResult(f"n={row.n}", row.status, row.duration) for row in rows]
    chain_results = [CheckResult("chain", chain.status, chain.duration)] if chain is not None else []
    print_summary([("rows", row_results), ("chain", chain_results)])
    return exit_code_for([*(row.status for row in rows), *(r.status for r in chain_results)])
