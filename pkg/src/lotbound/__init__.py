"""Exact solvers for two-level lot sizing with inventory bounds."""
