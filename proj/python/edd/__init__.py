"""ED discriminants of plane curves with Gaussian rational coefficients."""

import json

from . import _core
from ._core import ParseError, ed_degree, render_svg, round_trip

__all__ = ["ParseError", "cross_validate", "ed_degree", "render_svg", "report", "report_text", "round_trip",
           "track_path"]


def report_text(poly, coords="cartesian", **options):
    """The report exactly as the command line tool writes it."""
    return _core.report(poly, coords, **options)


def report(poly, coords="cartesian", **options):
    return json.loads(report_text(poly, coords, **options))


def cross_validate(poly, coords="cartesian", seed=0, focal_targets=True):
    return json.loads(_core.cross_validate(poly, coords, seed, focal_targets))


def track_path(poly, path, coords="cartesian", steps=40):
    return json.loads(_core.track_path(poly, path, coords, steps))
