"""Exact equivariant localization on toric varieties.

Inputs are fan or polytope descriptions, either as JSON text or as plain
dicts; exact results come back as strings such as ``"4*pi"`` or
``"-4/3*pi^2"``.
"""

import json as _json
from fractions import Fraction

from . import _core
from ._core import EqlocError

__all__ = [
    "EqlocError",
    "volume",
    "cbar",
    "futaki",
    "df_product",
    "df_dnc",
    "localize",
    "polytope_volume",
    "run",
]


def _text(source):
    return source if isinstance(source, str) else _json.dumps(source)


def _strs(values):
    return [str(v) for v in values]


def volume(source):
    return _core.volume(_text(source))


def cbar(source):
    return Fraction(_core.cbar(_text(source)))


def futaki(source, b, route="sum"):
    return _core.futaki(_text(source), _strs(b), route)


def df_product(source, lam, components=False):
    return _core.df_product(_text(source), list(lam), components)


def df_dnc(source, y, s, route="direct"):
    return _core.df_dnc(_text(source), list(y), str(s), route)


def localize(source, expr, at):
    return _core.localize(_text(source), expr, _strs(at))


def polytope_volume(source):
    return Fraction(_core.polytope_volume(_text(source)))


def run(*args):
    """Runs the command-line front end in-process: (status, stdout, stderr)."""
    return _core.run(_strs(args))
