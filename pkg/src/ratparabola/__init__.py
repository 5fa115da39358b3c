"""Exact rational-distance constructions on the half-parabola y = x^2."""
