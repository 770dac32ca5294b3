"""Reproduction harnesses: constants measurement and one module per experiment."""
