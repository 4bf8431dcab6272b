"""Free-nilpotent Lie algebras on a Hall basis, and homomorphisms out of them.

Hall convention (M. Hall's basic commutators): generators ``X1 < X2 < ... <
Xm`` come first; elements are ordered by bracket length and, within one
length, by order of creation.  ``[u, v]`` is basic when ``u > v`` and, if
``u = [u1, u2]``, also ``u2 <= v``.  With two generators this gives
``[X2,X1]``, ``[[X2,X1],X1]``, ``[[X2,X1],X2]``, ... which is exactly the
basis labelling used for the free step-3 rank-2 group in the literature.

Brackets of basic elements are rewritten into the basis with the Jacobi
identity ``[[a1,a2],b] = [[a1,b],a2] + [a1,[a2,b]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .linalg import rank
from .lie import LieAlgebra, LieAlgebraError, lower_central_series

__all__ = ["free_nilpotent", "hall_basis", "hall_label", "AlgebraHom", "extend_hom"]


def hall_basis(m: int, s: int) -> list:
    """Hall words up to length ``s``: ints for generators, pairs for brackets."""
    words: list = list(range(m))
    length = {g: 1 for g in range(m)}
    position = {g: g for g in range(m)}
    for n in range(2, s + 1):
        new = []
        for u in list(words):
            for v in list(words):
                if length[u] + length[v] != n:
                    continue
                if position[u] <= position[v]:
                    continue
                if isinstance(u, tuple) and position[u[1]] > position[v]:
                    continue
                new.append((u, v))
        for w in new:
            length[w] = n
            position[w] = len(words)
            words.append(w)
    return words


def hall_label(word, names: Sequence[str]) -> str:
    if isinstance(word, tuple):
        return f"[{hall_label(word[0], names)},{hall_label(word[1], names)}]"
    return names[word]


def _word_length(word) -> int:
    return 1 if not isinstance(word, tuple) else _word_length(word[0]) + _word_length(word[1])


def _structure_constants(m: int, s: int):
    words = hall_basis(m, s)
    pos = {w: i for i, w in enumerate(words)}
    length = [_word_length(w) for w in words]

    @lru_cache(maxsize=None)
    def br(i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """``[h_i, h_j]`` as a sparse combination of Hall elements."""
        if i == j or length[i] + length[j] > s:
            return ()
        if i < j:
            return tuple((k, -c) for k, c in br(j, i))
        u = words[i]
        if not isinstance(u, tuple) or pos[u[1]] <= j:
            return ((pos[(u, words[j])], Fraction(1)),)
        a1, a2 = pos[u[0]], pos[u[1]]
        acc: dict[int, Fraction] = {}
        # [[a1,a2],b] = [[a1,b],a2] + [a1,[a2,b]]
        for k, c in br(a1, j):
            for k2, c2 in br(k, a2):
                acc[k2] = acc.get(k2, 0) + c * c2
        for k, c in br(a2, j):
            for k2, c2 in br(a1, k):
                acc[k2] = acc.get(k2, 0) + c * c2
        return tuple(sorted((k, c) for k, c in acc.items() if c))

    constants = {}
    for i in range(len(words)):
        for j in range(len(words)):
            for k, c in br(i, j):
                constants[(i, j, k)] = c
    return words, length, constants


def free_nilpotent(m: int, s: int, generator_names: Sequence[str] | None = None) -> LieAlgebra:
    """Free-nilpotent Lie algebra of step ``s`` on ``m >= 2`` generators, graded by bracket length."""
    if m < 2:
        raise LieAlgebraError(
            "free-nilpotent algebras are defined here for m >= 2 generators only "
            f"(got m={m}); a single generator spans an abelian line"
        )
    if s < 1:
        raise LieAlgebraError("step must be at least 1")
    gen_names = tuple(generator_names) if generator_names else tuple(f"X{i + 1}" for i in range(m))
    words, length, constants = _structure_constants(m, s)
    names = [hall_label(w, gen_names) for w in words]
    return LieAlgebra(
        len(words),
        constants,
        names=names,
        weights=length,
        name=f"free_nilpotent({m},{s})",
        hall_words=words,
    )


@dataclass(frozen=True)
class AlgebraHom:
    """Linear map ``source -> target`` given by a ``target.dim x source.dim`` matrix."""

    source: LieAlgebra
    target: LieAlgebra
    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, x: Sequence) -> tuple:
        return tuple(sum((r[j] * x[j] for j in range(self.source.dim)), Fraction(0)) for r in self.matrix)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.matrix)

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.source.dim)

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def kernel_dimension(self) -> int:
        return self.source.dim - self.rank

    def is_homomorphism(self) -> bool:
        src = self.source.basis()
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self(self.source.bracket(src[i], src[j]))
                rhs = self.target.bracket(self.column(i), self.column(j))
                if lhs != rhs:
                    return False
        return True


def extend_hom(F: LieAlgebra, A: LieAlgebra, targets: Sequence[Sequence]) -> AlgebraHom:
    """Unique homomorphism from the free algebra ``F`` sending generator i to ``targets[i]``."""
    if F.hall_words is None:
        raise LieAlgebraError("source algebra must come from free_nilpotent")
    words = F.hall_words
    m = sum(1 for w in words if not isinstance(w, tuple))
    if len(targets) != m:
        raise LieAlgebraError(f"need {m} target elements, got {len(targets)}")
    s = max(F.weights)
    step_a = lower_central_series(A).step
    if step_a > s:
        raise LieAlgebraError(f"target algebra has step {step_a} > {s}; no homomorphism extends")
    images: dict = {}

    def image(w):
        if w not in images:
            if isinstance(w, tuple):
                images[w] = A.bracket(image(w[0]), image(w[1]))
            else:
                images[w] = tuple(Fraction(c) for c in A._check(targets[w]))
        return images[w]

    cols = [image(w) for w in words]
    matrix = tuple(tuple(cols[j][i] for j in range(F.dim)) for i in range(A.dim))
    hom = AlgebraHom(F, A, matrix)
    if not hom.is_homomorphism():
        raise LieAlgebraError("extension is not a homomorphism (target step exceeds the free step?)")
    return hom
