"""Computational services: torus geometry, foliations and projections."""
