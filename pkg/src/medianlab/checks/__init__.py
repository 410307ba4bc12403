"""Check verdicts, reporting and parallel execution."""
