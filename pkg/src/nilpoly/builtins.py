"""Built-in Lie algebras with their customary sign conventions."""
from __future__ import annotations

import re

from .hall import free_nilpotent
from .lie import LieAlgebra, LieAlgebraError

__all__ = ["heisenberg", "engel", "f23", "abelian", "aff_plus", "sl2r", "builtin", "BUILTIN_NAMES"]


def heisenberg() -> LieAlgebra:
    """``[X1, X2] = X3``."""
    return LieAlgebra.from_brackets(
        ["X1", "X2", "X3"], {("X1", "X2"): {"X3": 1}}, weights=[1, 1, 2], name="heisenberg"
    )


def engel() -> LieAlgebra:
    """``[X1, X2] = X3``, ``[X1, X3] = X4``."""
    return LieAlgebra.from_brackets(
        ["X1", "X2", "X3", "X4"],
        {("X1", "X2"): {"X3": 1}, ("X1", "X3"): {"X4": 1}},
        weights=[1, 1, 2, 3],
        name="engel",
    )


def f23() -> LieAlgebra:
    """Free step-3 rank-2: ``[X2,X1]=X3``, ``[X3,X1]=X4``, ``[X3,X2]=X5``."""
    return LieAlgebra.from_brackets(
        ["X1", "X2", "X3", "X4", "X5"],
        {("X2", "X1"): {"X3": 1}, ("X3", "X1"): {"X4": 1}, ("X3", "X2"): {"X5": 1}},
        weights=[1, 1, 2, 3, 3],
        name="f23",
    )


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, weights=[1] * n, name=f"abelian({n})")


def aff_plus() -> LieAlgebra:
    """Affine group of the line, fields ``X = y d_x``, ``Y = y d_y``: ``[X, Y] = -X``. Not nilpotent."""
    return LieAlgebra.from_brackets(["X", "Y"], {("X", "Y"): {"X": -1}}, name="aff_plus")


def sl2r() -> LieAlgebra:
    """``sl(2, R)`` in the basis ``X1 = H``, ``X2``, ``X3`` realised by the counterexample fields."""
    return LieAlgebra.from_brackets(
        ["X1", "X2", "X3"],
        {("X1", "X2"): {"X2": 2}, ("X1", "X3"): {"X3": -2}, ("X2", "X3"): {"X1": 1}},
        name="sl2r",
    )


_FIXED = {
    "heisenberg": heisenberg,
    "engel": engel,
    "f23": f23,
    "aff_plus": aff_plus,
    "sl2r": sl2r,
}

BUILTIN_NAMES = tuple(_FIXED) + ("free-M-S", "abelian-N")

_FREE = re.compile(r"^free-(\d+)-(\d+)$")
_ABELIAN = re.compile(r"^abelian-(\d+)$")


def builtin(name: str) -> LieAlgebra:
    """Look up ``heisenberg``, ``engel``, ``f23``, ``aff_plus``, ``sl2r``, ``free-m-s`` or ``abelian-n``."""
    if name in _FIXED:
        return _FIXED[name]()
    m = _FREE.match(name)
    if m:
        return free_nilpotent(int(m.group(1)), int(m.group(2)))
    m = _ABELIAN.match(name)
    if m:
        return abelian(int(m.group(1)))
    raise LieAlgebraError(f"unknown built-in algebra {name!r}; known: {', '.join(BUILTIN_NAMES)}")
