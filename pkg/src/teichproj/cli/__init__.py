"""Command-line front end."""

from teichproj.cli.parser import build_parser

__all__ = ["build_parser"]
