"""Degree bound for functions that are polynomial along concatenated flows."""
from __future__ import annotations

from dataclasses import dataclass

__all__ = ["DegreeBoundWitness", "degree_bound"]


@dataclass(frozen=True)
class DegreeBoundWitness:
    """Full recursion trace for ``nu(k, s, l)``.

    ``a`` holds ``a_0 .. a_{l-1}`` and ``nus`` holds ``nu_1 .. nu_{l-1}``;
    ``nu`` bounds the degree of ``t -> f(p exp(t_1 Y_1) ... exp(t_l Y_l))``
    and ``D = a_0`` bounds the jet order of ``f`` at ``p`` it depends on.
    """

    k: int
    s: int
    l: int
    a: tuple[int, ...]
    nus: tuple[int, ...]
    nu: int
    D: int

    def as_dict(self) -> dict:
        return {"k": self.k, "s": self.s, "l": self.l, "a": list(self.a), "nus": list(self.nus), "nu": self.nu, "D": self.D}

    def __str__(self) -> str:
        a = ", ".join(f"a{j}={v}" for j, v in enumerate(self.a))
        nus = ", ".join(f"nu{j + 1}={v}" for j, v in enumerate(self.nus))
        parts = [f"k={self.k} s={self.s} l={self.l}", a]
        if nus:
            parts.append(nus)
        parts.append(f"nu={self.nu} D={self.D}")
        return "; ".join(parts)


def degree_bound(k: int, s: int, l: int) -> DegreeBoundWitness:
    for label, v in (("k", k), ("s", s), ("l", l)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"{label} must be a positive integer, got {v!r}")
    a = [0] * l
    a[l - 1] = k - 1
    for j in range(l - 1, 0, -1):
        a[j - 1] = s * a[j] + k - 1
    if l == 1:
        return DegreeBoundWitness(k, s, l, tuple(a), (), k - 1, k - 1)
    nus = [k - 1 + a[1] * (s - 1)]
    for j in range(1, l - 1):
        nus.append(nus[-1] + k - 1 + a[j + 1] * (s - 1))
    nu = nus[-1] + k - 1
    return DegreeBoundWitness(k, s, l, tuple(a), tuple(nus), nu, a[0])
