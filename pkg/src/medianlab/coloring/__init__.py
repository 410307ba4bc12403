"""Clique and chromatic number solvers."""
