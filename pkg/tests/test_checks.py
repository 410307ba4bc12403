from __future__ import annotations

import io
import tempfile
import threading
import time
import unittest
from contextlib import redirect_stdout
from pathlib import Path

from medianlab.checks.executor import default_workers, run_ordered
from medianlab.checks.models import CheckResult
from medianlab.checks.runner import (
    CheckSettings,
    VerifyOptions,
    run_graph_checks,
    run_verify,
    validate_checks,
)
from medianlab.checks.status import (
    EXIT_FAILED,
    EXIT_INPUT,
    EXIT_LIMIT,
    EXIT_OK,
    STATUS_ERROR,
    STATUS_FAIL,
    STATUS_LIMIT,
    STATUS_PASS,
    STATUS_SKIP,
    exit_code_for,
    exit_code_for_error,
    status_for_error,
)
from medianlab.config.budget_file import BudgetConfig
from medianlab.errors import DomainTooLargeError, ResourceLimitError, SchemaError
from medianlab.graphs.graph import cycle_graph, hypercube, save_graph


class StatusTests(unittest.TestCase):
    def test_exit_code_precedence(self):
        self.assertEqual(exit_code_for([STATUS_PASS, STATUS_SKIP]), EXIT_OK)
        self.assertEqual(exit_code_for([STATUS_PASS, STATUS_ERROR]), EXIT_INPUT)
        self.assertEqual(exit_code_for([STATUS_ERROR, STATUS_LIMIT]), EXIT_LIMIT)
        self.assertEqual(exit_code_for([STATUS_LIMIT, STATUS_FAIL]), EXIT_FAILED)
        self.assertEqual(exit_code_for([]), EXIT_OK)

    def test_limits_map_to_limit_status(self):
        self.assertEqual(status_for_error(ResourceLimitError("too big")), STATUS_LIMIT)
        self.assertEqual(status_for_error(DomainTooLargeError(10)), STATUS_LIMIT)
        self.assertEqual(status_for_error(SchemaError("bad")), STATUS_ERROR)
        self.assertEqual(exit_code_for_error(ResourceLimitError("too big")), EXIT_LIMIT)
        self.assertEqual(exit_code_for_error(SchemaError("bad")), EXIT_INPUT)


class ExecutorTests(unittest.TestCase):
    def test_results_come_back_in_input_order(self):
        seen: list[int] = []
        lock = threading.Lock()

        def slow_square(value: int) -> int:
            time.sleep(0.01 * (5 - value))
            return value * value

        def record(item: int, _result: int) -> None:
            with lock:
                seen.append(item)

        results = run_ordered(range(5), slow_square, max_workers=3, on_result=record)
        self.assertEqual(results, [0, 1, 4, 9, 16])
        self.assertEqual(sorted(seen), [0, 1, 2, 3, 4])

    def test_first_failure_is_reraised(self):
        def explode(value: int) -> int:
            if value == 2:
                raise ValueError("two")
            return value

        with self.assertRaises(ValueError):
            run_ordered(range(4), explode, max_workers=2)

    def test_default_workers(self):
        self.assertEqual(default_workers(4, 2), 2)
        self.assertEqual(default_workers(3, 10), 3)
        self.assertGreaterEqual(default_workers(0, 10), 1)
        self.assertEqual(run_ordered([], lambda item: item), [])


class CheckResultTests(unittest.TestCase):
    def test_payload_is_json_ready(self):
        result = CheckResult("median", STATUS_FAIL, 1.23456, "not median", (0, 2, 4), {"cells": frozenset({2, 1})})
        payload = result.to_payload(timings=True)
        self.assertEqual(payload["witness"], [0, 2, 4])
        self.assertEqual(payload["measured"], {"cells": [1, 2]})
        self.assertEqual(payload["seconds"], 1.235)
        self.assertNotIn("seconds", result.to_payload())


class GraphCheckTests(unittest.TestCase):
    def test_cube_passes_and_lift_checks_are_skipped(self):
        results = run_graph_checks(hypercube(3), ["theta", "median", "cube", "census"], CheckSettings())
        statuses = {result.name: result.status for result in results}
        self.assertEqual(statuses, {"theta": STATUS_PASS, "median": STATUS_PASS, "cube": STATUS_PASS, "census": STATUS_SKIP})

    def test_hexagon_fails(self):
        results = run_graph_checks(cycle_graph(6), ["theta", "median"], CheckSettings())
        self.assertEqual([result.status for result in results], [STATUS_FAIL, STATUS_FAIL])
        self.assertIsNotNone(results[1].witness)

    def test_events_roundtrip_on_cube(self):
        (result,) = run_graph_checks(hypercube(3), ["events"], CheckSettings())
        self.assertEqual(result.status, STATUS_PASS)
        self.assertEqual(result.measured["events"], 3)

    def test_events_domain_limit(self):
        (result,) = run_graph_checks(hypercube(3), ["events"], CheckSettings(domain_limit=4))
        self.assertEqual(result.status, STATUS_LIMIT)
        self.assertIn("DOMAIN_TOO_LARGE", result.detail)

    def test_unknown_check_names(self):
        with self.assertRaises(SchemaError):
            validate_checks(["median", "telepathy"])
        self.assertEqual(validate_checks(["median", "median", "theta"]), ["median", "theta"])

    def test_settings_follow_config_with_overrides(self):
        config = BudgetConfig(seed=4, samples=10, exhaustive_vertices=50)
        settings = CheckSettings.from_config(config, mode="sampled", samples=None)
        self.assertEqual(settings.seed, 4)
        self.assertEqual(settings.samples, 10)
        self.assertEqual(settings.mode, "sampled")
        self.assertEqual(settings.exhaustive_limit, 50)

    def test_verify_writes_dot_and_returns_exit_code(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir)
            save_graph(root / "c6.json", cycle_graph(6))
            options = VerifyOptions(root / "c6.json", ["median"], CheckSettings(), dot=root / "c6.dot")
            with redirect_stdout(io.StringIO()):
                results, code = run_verify(options)
            self.assertTrue((root / "c6.dot").exists())
        self.assertEqual(code, EXIT_FAILED)
        self.assertEqual(results[0].status, STATUS_FAIL)


if __name__ == "__main__":
    unittest.main()
