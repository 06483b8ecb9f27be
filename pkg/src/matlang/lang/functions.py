"""Catalog of pointwise functions usable in ``apply(...)``.

A function name is either a plain identifier (``indicator_nonzero``) or a
family identifier with bracketed rational parameters (``affine[2,-1]``,
``const[1/2]``).  Every function must be total on the complex numbers.
Exact-evaluable entries map Gaussian rationals to Gaussian rationals; the
rest only have a float implementation and force float evaluation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from ..errors import UnknownFunction
from ..linalg import GaussianRational, ONE, ZERO


@dataclass(frozen=True)
class PointwiseFunction:
    name: str
    arity: int
    exact: bool
    exact_fn: Optional[Callable]
    float_fn: Callable  # numpy arrays in, numpy array out

    def __call__(self, *args):
        if self.exact_fn is None:
            raise TypeError(f"{self.name} has no exact implementation")
        return self.exact_fn(*args)


_fixed: dict = {}
_families: dict = {}

_NAME = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\[(.*)\])?$")


def register_function(name: str, arity: int, float_fn: Callable, exact_fn: Optional[Callable] = None) -> None:
    """Extensibility hook: add a fixed (parameter-free) function to the catalog."""
    _fixed[name] = PointwiseFunction(name, arity, exact_fn is not None, exact_fn, float_fn)


def register_family(name: str, factory: Callable) -> None:
    """Add a parametrised family; ``factory(params, canonical_name)`` returns a PointwiseFunction."""
    _families[name] = factory


def _parse_params(text: str):
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            out.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            raise UnknownFunction(f"bad function parameter {part!r}")
    return out


def canonical_name(name: str, params=None) -> str:
    if not params:
        return name
    return f"{name}[{','.join(str(Fraction(p)) for p in params)}]"


def lookup(fn: str) -> PointwiseFunction:
    m = _NAME.match(fn.replace(" ", ""))
    if not m:
        raise UnknownFunction(f"malformed function name {fn!r}")
    base, params = m.group(1), m.group(2)
    if params is None:
        if base in _fixed:
            return _fixed[base]
        raise UnknownFunction(f"unknown function {fn!r}")
    if base not in _families:
        raise UnknownFunction(f"unknown function family {base!r}")
    ps = _parse_params(params)
    return _families[base](ps, canonical_name(base, ps))


def known_functions() -> list:
    return sorted(_fixed) + [f"{name}[...]" for name in sorted(_families)]


# built-in catalog

register_function(
    "indicator_nonzero", 1,
    float_fn=lambda x: (x != 0).astype(complex),
    exact_fn=lambda x: ZERO if x.is_zero() else ONE,
)
register_function(
    "abs2", 1,
    float_fn=lambda x: (x * np.conj(x)).astype(complex),
    exact_fn=lambda x: GaussianRational(x.abs2()),
)
register_function(
    "prod", 2,
    float_fn=lambda x, y: x * y,
    exact_fn=lambda x, y: x * y,
)
register_function(
    "exp", 1,
    float_fn=lambda x: np.exp(x),
)


def _affine(params, name):
    if len(params) != 2:
        raise UnknownFunction("affine takes two parameters a,b")
    a, b = (GaussianRational(p) for p in params)
    fa, fb = float(params[0]), float(params[1])
    return PointwiseFunction(name, 1, True, lambda x: a * x + b, lambda x: fa * x + fb)


def _const(params, name):
    if len(params) != 1:
        raise UnknownFunction("const takes one parameter")
    c = GaussianRational(params[0])
    fc = float(params[0])
    return PointwiseFunction(name, 1, True, lambda x: c, lambda x: np.full_like(x, fc, dtype=complex))


register_family("affine", _affine)
register_family("const", _const)
