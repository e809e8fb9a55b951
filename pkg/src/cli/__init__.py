"""Command-line front end and report rendering."""

from .main import RunConfig, main, parse_args, run

__all__ = ["RunConfig", "main", "parse_args", "run"]
