"""Exact combinatorics for branched-cover trisections of CP^2.

Braid factorizations of the full twist, torus diagrams of branch curves,
Riemann-Hurwitz bookkeeping with a cell-complex oracle, discrete symplectic
1-cocycles and characteristic-class arithmetic.
"""

from importlib import resources

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path to a JSON file shipped in ``trisectkit/fixtures``."""
    return resources.files(__name__).joinpath("fixtures", name)
