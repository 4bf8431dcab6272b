"""First-order differential operators with polynomial coefficients."""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .poly import Polynomial, Ring, RingMismatchError, as_fraction

__all__ = ["Derivation", "OperatorWord", "apply_derivation", "apply_word"]


class Derivation:
    """``sum_i c_i * d/dx_i`` over the base (non-generator) variables of a ring.

    Generators are differentiated through the ring's derivative table, so a
    derivation never carries its own coefficient for them.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Mapping[str, object] | Sequence | None = None):
        self.ring = ring
        table: dict[int, Polynomial] = {}
        if coeffs is None:
            coeffs = {}
        if isinstance(coeffs, Mapping):
            items = ((ring.index(k) if isinstance(k, str) else k, v) for k, v in coeffs.items())
        else:
            if len(coeffs) != ring.nvars:
                raise ValueError("coefficient vector length must equal the number of ring variables")
            items = enumerate(coeffs)
        for i, c in items:
            if c is None:
                continue
            if isinstance(c, Polynomial):
                if c.ring != ring:
                    raise RingMismatchError(f"coefficient over {c.ring!r}, derivation over {ring!r}")
            elif isinstance(c, str):
                c = ring.parse(c)
            else:
                c = ring.constant(c)
            if not c:
                continue
            if ring.is_generator(i):
                if c:
                    raise ValueError(
                        f"{ring.names[i]!r} is a generator; its derivative comes from the ring table"
                    )
                continue
            table[i] = c
        self.coeffs = table

    @classmethod
    def partial(cls, ring: Ring, name: str) -> Derivation:
        return cls(ring, {name: 1})

    def coefficient(self, name: str) -> Polynomial:
        return self.coeffs.get(self.ring.index(name), self.ring.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"derivation over {self.ring!r} applied to polynomial over {f.ring!r}")
        result = self.ring.zero()
        for i, c in self.coeffs.items():
            d = f.partial(i)
            if d:
                result = result + c * d
        return result

    def __add__(self, other: Derivation) -> Derivation:
        if not isinstance(other, Derivation):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError("derivations over different rings")
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out[i] + c if i in out else c
        return Derivation(self.ring, out)

    def __neg__(self) -> Derivation:
        return Derivation(self.ring, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: Derivation) -> Derivation:
        return self + (-other)

    def __mul__(self, scalar) -> Derivation:
        if isinstance(scalar, Polynomial):
            if scalar.ring != self.ring:
                raise RingMismatchError("scalar polynomial over a different ring")
            return Derivation(self.ring, {i: scalar * c for i, c in self.coeffs.items()})
        s = as_fraction(scalar)
        return Derivation(self.ring, {i: c.scale(s) for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def commutator(self, other: Derivation) -> Derivation:
        """``[self, other] = self*other - other*self`` as a derivation."""
        out: dict[int, Polynomial] = {}
        for i in set(self.coeffs) | set(other.coeffs):
            a = self(other.coeffs[i]) if i in other.coeffs else self.ring.zero()
            b = other(self.coeffs[i]) if i in self.coeffs else self.ring.zero()
            out[i] = a - b
        return Derivation(self.ring, out)

    def embed(self, ring: Ring) -> Derivation:
        return Derivation(ring, {self.ring.names[i]: c.embed(ring) for i, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            name = f"d_{self.ring.names[i]}"
            if c == 1:
                parts.append(name)
            elif c.is_constant() or len(c) == 1:
                parts.append(f"{c}*{name}")
            else:
                parts.append(f"({c})*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class OperatorWord(tuple):
    """Composition ``D_1 D_2 ... D_r``; the rightmost derivation acts first."""

    def __new__(cls, derivations: Iterable[Derivation] = ()):
        return super().__new__(cls, tuple(derivations))

    def __call__(self, f: Polynomial) -> Polynomial:
        for d in reversed(self):
            if not f:
                return f
            f = d(f)
        return f


def apply_derivation(d: Derivation, f: Polynomial) -> Polynomial:
    return d(f)


def apply_word(word: Sequence[Derivation], f: Polynomial) -> Polynomial:
    return OperatorWord(word)(f)

