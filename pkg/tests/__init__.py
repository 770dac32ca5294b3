"""Tests package for teich-projections."""
