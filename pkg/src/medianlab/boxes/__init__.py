"""Axis-parallel boxes and the Burling construction."""
