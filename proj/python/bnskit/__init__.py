"""BNS invariants, HNN decompositions and Kahler obstructions.

Functions taking file contents also accept a ``pathlib.Path``.
"""

from fractions import Fraction
from os import PathLike
from pathlib import Path

from . import _bnskit
from ._bnskit import BnsError, antipode, smith_normal_form

__all__ = [
    "BnsError",
    "abelianization",
    "antipode",
    "canonical_ray",
    "character_ray",
    "classify",
    "criterion",
    "export_graph",
    "invert",
    "kahler_verdict",
    "sigma_ball",
    "smith_normal_form",
    "valuation_check",
]


def _text(source):
    if isinstance(source, PathLike):
        return Path(source).read_text()
    return source


def abelianization(presentation):
    return _bnskit.abelianization(_text(presentation))


def character_ray(presentation, character):
    return _bnskit.character_ray(_text(presentation), _text(character))


def canonical_ray(values):
    return _bnskit.canonical_ray([str(Fraction(v)) for v in values])


def sigma_ball(presentation, character, radius=4, margin=1):
    return _bnskit.sigma_ball(_text(presentation), _text(character), radius, margin)


def export_graph(presentation, character, format="dot", radius=4, include_dropped=False):
    return _bnskit.export_graph(_text(presentation), _text(character), format, radius, include_dropped)


def classify(decomposition):
    return _bnskit.classify(_text(decomposition))


def invert(decomposition):
    return _bnskit.invert(_text(decomposition))


def criterion(decomposition):
    return _bnskit.criterion(_text(decomposition))


def valuation_check(decomposition, **options):
    return _bnskit.valuation_check(_text(decomposition), **options)


def kahler_verdict(source, flags=None, **options):
    flags = {k: (str(v).lower() if isinstance(v, bool) else v) for k, v in (flags or {}).items()}
    return _bnskit.kahler_verdict(_text(source), flags, **options)
