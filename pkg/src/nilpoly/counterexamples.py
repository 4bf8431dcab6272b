"""Exact checks on two non-nilpotent groups where S-polynomial does not mean polynomial.

``aff_plus``: the affine group of the line in coordinates ``(x, y)``, ``y > 0``,
with ``X = y d_x`` and ``Y = y d_y``; ``f = (x + 1) L`` where ``L = log y``
is a generator with ``d_y L = 1/y``.

``sl2r``: ``SL(2, R)`` near the identity in coordinates ``(x1, x2, x3)`` with
``X1 = x1 d_1 - x2 d_2 + x3 d_3``, ``X2 = x1 d_2``, ``X3 = x2 d_1 + (1 + x2 x3)/x1 d_3``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .builtins import aff_plus, sl2r
from .derivation import Derivation
from .lie import LieAlgebra
from .poly import Ring

__all__ = ["CounterexampleReport", "verify_builtin_counterexample", "aff_plus_model", "sl2r_model", "COUNTEREXAMPLES"]


@dataclass
class CounterexampleReport:
    name: str
    verdict: str
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "ok": self.ok,
            "checks": [{"identity": label, "holds": passed} for label, passed in self.checks],
        }


def aff_plus_model():
    """``(ring, {"X": ..., "Y": ...}, f)``."""
    ring = Ring(("x", "y", "L"), laurent=("y",), derivatives={"L": {"x": "0", "y": "y^-1"}})
    X = Derivation(ring, {"x": "y"})
    Y = Derivation(ring, {"y": "y"})
    return ring, {"X": X, "Y": Y}, ring.parse("(x + 1)*L")


def sl2r_model():
    """``(ring, {"X1": ..., "X2": ..., "X3": ...})``."""
    ring = Ring(("x1", "x2", "x3"), laurent=("x1",))
    X1 = Derivation(ring, {"x1": "x1", "x2": "-x2", "x3": "x3"})
    X2 = Derivation(ring, {"x2": "x1"})
    X3 = Derivation(ring, {"x1": "x2", "x3": "x1^-1 + x2*x3*x1^-1"})
    return ring, {"X1": X1, "X2": X2, "X3": X3}


def _power(D: Derivation, f, n: int):
    for _ in range(n):
        f = D(f)
    return f


def _realizes(fields: dict, algebra: LieAlgebra) -> bool:
    names = list(algebra.names)
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            want = Derivation(fields[a].ring)
            for k, c in enumerate(algebra.bracket(algebra.basis_vector(i), algebra.basis_vector(j))):
                if c:
                    want = want + fields[names[k]] * c
            if fields[a].commutator(fields[b]) != want:
                return False
    return True


def _aff_plus() -> CounterexampleReport:
    ring, F, f = aff_plus_model()
    X, Y = F["X"], F["Y"]
    XY = X + Y
    yL = ring.parse("y*L")
    y = ring.var("y")
    checks = [
        ("[X, Y] = -X", _realizes(F, aff_plus())),
        ("X^2 f = 0", not _power(X, f, 2)),
        ("Y^2 f = 0", not _power(Y, f, 2)),
    ]
    Xf = X(f)
    for a in range(6):
        checks.append((f"Y^{a} X f = y L + {a} y", _power(Y, Xf, a) == yL + y * a))
    checks.append(("(X + Y) f = y L + x + 1", XY(f) == yL + ring.parse("x + 1")))
    for n in range(2, 6):
        checks.append((f"(X + Y)^{n} f = y L + {n} y", _power(XY, f, n) == yL + y * n))
    return CounterexampleReport("aff_plus", "S-polynomial but not g-polynomial", checks)


def _sl2r() -> CounterexampleReport:
    ring, F = sl2r_model()
    x3 = ring.var("x3")
    checks = [
        ("fields realize sl(2): [X2, X3] = X1", _realizes(F, sl2r())),
        ("X2 x3 = 0", not F["X2"](x3)),
        ("X3^2 x3 = 0", not _power(F["X3"], x3, 2)),
    ]
    for k in range(1, 5):
        checks.append((f"X1^{k} x3 = x3", _power(F["X1"], x3, k) == x3))
    return CounterexampleReport("sl2r", "x3 not polynomial à la Leibman", checks)


COUNTEREXAMPLES = {"aff_plus": _aff_plus, "sl2r": _sl2r}


def verify_builtin_counterexample(name: str) -> CounterexampleReport:
    try:
        runner = COUNTEREXAMPLES[name]
    except KeyError:
        raise ValueError(f"unknown counterexample {name!r}; known: {', '.join(COUNTEREXAMPLES)}") from None
    return runner()
