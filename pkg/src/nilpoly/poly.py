"""Sparse multivariate Laurent polynomials with exact rational coefficients.

A :class:`Ring` fixes an ordered variable list.  Some variables may be
flagged *Laurent* (negative exponents allowed) and some may be declared
*transcendental generators*: symbols such as ``L = log y`` whose partial
derivatives with respect to the other variables are supplied by the user.

Polynomials are immutable.  Terms are kept in a dict keyed by exponent
tuples; printing and every canonical listing use the graded-lexicographic
order on the declared variable list (first variable most significant).
"""
from __future__ import annotations

import ast
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "Ring",
    "Polynomial",
    "RingMismatchError",
    "grlex_key",
    "as_fraction",
]


class RingMismatchError(ValueError):
    pass


def as_fraction(value) -> Fraction:
    """Exact conversion of ``int``/``Fraction``/``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Ring:
    """Variable list plus Laurent flags and a derivative table for generators.

    ``derivatives`` maps a generator name to ``{variable: expression}``;
    expressions may be strings (parsed in this ring) or term dicts.
    """

    __slots__ = ("names", "laurent", "generators", "_index", "_dtable", "_key", "_hash")

    def __init__(
        self,
        names: Iterable[str],
        laurent: Iterable[str] = (),
        derivatives: Mapping[str, Mapping[str, object]] | None = None,
    ):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self._index = {name: i for i, name in enumerate(self.names)}
        self.laurent = frozenset(laurent)
        for name in self.laurent:
            if name not in self._index:
                raise ValueError(f"Laurent variable {name!r} is not a ring variable")
        derivatives = dict(derivatives or {})
        self.generators = frozenset(derivatives)
        for gen in self.generators:
            if gen not in self._index:
                raise ValueError(f"generator {gen!r} is not a ring variable")
        table: dict[int, dict[int, dict]] = {}
        self._dtable = table
        for gen, row in derivatives.items():
            gi = self._index[gen]
            table[gi] = {}
            for var, expr in row.items():
                if var not in self._index:
                    raise ValueError(f"derivative of {gen!r} w.r.t. unknown variable {var!r}")
                if var in self.generators:
                    raise ValueError("derivatives are declared with respect to base variables only")
                if isinstance(expr, Polynomial):
                    terms = dict(expr.terms)
                elif isinstance(expr, Mapping):
                    terms = {tuple(k): as_fraction(v) for k, v in expr.items()}
                else:
                    terms = dict(self.parse(str(expr)).terms)
                table[gi][self._index[var]] = terms
        frozen = tuple(
            sorted(
                (g, tuple(sorted((v, tuple(sorted(t.items()))) for v, t in row.items())))
                for g, row in table.items()
            )
        )
        self._key = (self.names, tuple(sorted(self.laurent)), frozen)
        self._hash = hash(self._key)

    # -- basic structure -------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of ring {self.names}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        extra = ""
        if self.laurent:
            extra += f", laurent={sorted(self.laurent)}"
        if self.generators:
            extra += f", generators={sorted(self.generators)}"
        return f"Ring({list(self.names)}{extra})"

    def is_generator(self, i: int) -> bool:
        return i in self._dtable

    def base_indices(self) -> list[int]:
        return [i for i in range(self.nvars) if i not in self._dtable]

    def generator_derivative(self, gen: int, var: int) -> Polynomial:
        """Declared ``d gen / d var``; raises naming the generator if undeclared."""
        row = self._dtable[gen]
        if var not in row:
            raise KeyError(
                f"no derivative declared for generator {self.names[gen]!r} "
                f"with respect to {self.names[var]!r}"
            )
        return Polynomial(self, row[var])

    def extend(self, names: Iterable[str], laurent: Iterable[str] = ()) -> Ring:
        """Ring with extra (plain or Laurent) variables appended; keeps the generator table."""
        new = [n for n in names if n not in self._index]
        derivs = {
            self.names[g]: {self.names[v]: t for v, t in row.items()}
            for g, row in self._dtable.items()
        }
        pad = (0,) * len(new)
        derivs = {
            g: {v: {k + pad: c for k, c in t.items()} for v, t in row.items()}
            for g, row in derivs.items()
        }
        return Ring(self.names + tuple(new), self.laurent | frozenset(laurent), derivs)

    # -- constructors ----------------------------------------------------
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = as_fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> Polynomial:
        i = self.index(name)
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, exps, coeff=1) -> Polynomial:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector {exps} has wrong length for {self!r}")
        c = as_fraction(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def parse(self, text: str) -> Polynomial:
        """Parse ``"x1*x3 - 1/2*x1^2*x2"``-style text; ``^`` and ``**`` both mean power."""
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _eval_ast(tree.body, self)


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
}


def _eval_ast(node, ring: Ring):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed, got {node.value!r}")
        return ring.constant(node.value)
    if isinstance(node, ast.Name):
        return ring.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_ast(node.operand, ring)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, ring)
        if isinstance(node.op, ast.Pow):
            exp = _eval_ast(node.right, ring)
            if not exp.is_constant() or exp.constant_value().denominator != 1:
                raise ValueError("exponents must be integer constants")
            return left ** int(exp.constant_value())
        right = _eval_ast(node.right, ring)
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or not right.constant_value():
                raise ValueError("division is only allowed by nonzero constants")
            return left * (1 / right.constant_value())
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ValueError(f"unsupported operator {type(node.op).__name__}")
        return op(left, right)
    raise ValueError(f"unsupported expression element {ast.dump(node)}")


class Polynomial:
    """Exact sparse polynomial over a :class:`Ring`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.ring = ring
        if terms:
            clean = {}
            for k, c in terms.items():
                if c:
                    clean[k] = c if isinstance(c, Fraction) else as_fraction(c)
            self.terms = clean
        else:
            self.terms = {}
        self._hash = None

    # -- trusted fast constructor ----------------------------------------
    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    def _check(self, other: Polynomial) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError(
                f"polynomials live in different rings: {self.ring!r} vs {other.ring!r}"
            )

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {k: -c for k, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return (-self) + other

    def scale(self, c) -> Polynomial:
        c = as_fraction(c)
        if not c:
            return Polynomial._raw(self.ring, {})
        return Polynomial._raw(self.ring, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial._raw(self.ring, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = tuple([x + y for x, y in zip(ka, kb)])
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        out = {k: v for k, v in out.items() if v}
        return Polynomial._raw(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("polynomial powers must be integers")
        if n < 0:
            return self._inverse_monomial() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _inverse_monomial(self) -> Polynomial:
        if len(self.terms) != 1:
            raise ValueError("only monomials can be inverted")
        (k, c), = self.terms.items()
        for i, e in enumerate(k):
            if e and self.ring.names[i] not in self.ring.laurent:
                raise ValueError(
                    f"variable {self.ring.names[i]!r} is not Laurent; cannot invert {self}"
                )
        return Polynomial._raw(self.ring, {tuple(-e for e in k): 1 / c})

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.constant(other).terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- inspection ------------------------------------------------------
    def sorted_terms(self, descending: bool = True):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=descending)

    def leading_monomial(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def monic(self) -> Polynomial:
        return self.scale(1 / self.leading_coefficient()) if self.terms else self

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self, weights=None) -> int:
        """Total degree, or weighted degree when ``weights`` is given; -1 for zero."""
        if not self.terms:
            return -1
        if weights is None:
            return max(sum(k) for k in self.terms)
        return max(sum(w * e for w, e in zip(weights, k)) for k in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((k[i] for k in self.terms), default=-1)

    def variables(self) -> tuple[str, ...]:
        used = set()
        for k in self.terms:
            used.update(i for i, e in enumerate(k) if e)
        return tuple(self.ring.names[i] for i in sorted(used))

    def homogeneous_components(self, weights) -> dict[int, Polynomial]:
        parts: dict[int, dict] = {}
        for k, c in self.terms.items():
            d = sum(w * e for w, e in zip(weights, k))
            parts.setdefault(d, {})[k] = c
        return {d: Polynomial._raw(self.ring, t) for d, t in sorted(parts.items())}

    def coefficients_in(self, names: Iterable[str]) -> dict[tuple[int, ...], Polynomial]:
        """Group by the exponents of ``names``: ``{exps: coefficient polynomial}``."""
        idx = [self.ring.index(n) for n in names]
        out: dict[tuple[int, ...], dict] = {}
        for k, c in self.terms.items():
            key = tuple(k[i] for i in idx)
            rest = list(k)
            for i in idx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {k: Polynomial._raw(self.ring, t) for k, t in out.items()}

    # -- calculus --------------------------------------------------------
    def partial(self, var) -> Polynomial:
        """Partial derivative; generators contribute through their declared derivatives."""
        i = var if isinstance(var, int) else self.ring.index(var)
        if self.ring.is_generator(i):
            raise ValueError("differentiate with respect to base variables only")
        out: dict = {}
        gens_present: dict[int, dict] = {}
        for k, c in self.terms.items():
            e = k[i]
            if e:
                kk = list(k)
                kk[i] = e - 1
                kk = tuple(kk)
                out[kk] = out.get(kk, 0) + c * e
            for g in self.ring._dtable:
                eg = k[g]
                if eg:
                    kk = list(k)
                    kk[g] = eg - 1
                    kk = tuple(kk)
                    gp = gens_present.setdefault(g, {})
                    gp[kk] = gp.get(kk, 0) + c * eg
        result = Polynomial(self.ring, out)
        for g, terms in gens_present.items():
            result = result + Polynomial(self.ring, terms) * self.ring.generator_derivative(g, i)
        return result

    # -- substitution ----------------------------------------------------
    def subs(self, mapping: Mapping[str, object], ring: Ring | None = None) -> Polynomial:
        """Substitute polynomials (or rationals) for variables.

        The result lives in ``ring`` (default: the ring of the substituted values,
        or this ring).  Unsubstituted variables are carried over by name.
        """
        if ring is None:
            ring = self.ring
            for v in mapping.values():
                if isinstance(v, Polynomial):
                    ring = v.ring
                    break
        images: list = []
        for name in self.ring.names:
            if name in mapping:
                v = mapping[name]
                images.append(v if isinstance(v, Polynomial) else ring.constant(v))
            else:
                images.append(ring.var(name) if name in ring else None)
        return self.compose(images, ring)

    def compose(self, images, ring: Ring) -> Polynomial:
        """Substitute ``images[i]`` for the i-th variable (all in ``ring``)."""
        n = self.ring.nvars
        cache: list[dict[int, Polynomial]] = [dict() for _ in range(n)]
        identity_pos: list[int | None] = [None] * n
        for i, img in enumerate(images):
            if isinstance(img, Polynomial):
                img._check_ring(ring)
                if len(img.terms) == 1:
                    (k, c), = img.terms.items()
                    if c == 1 and [e for e in k if e] == [1]:
                        identity_pos[i] = k.index(1)

        def power(i: int, e: int) -> Polynomial:
            got = cache[i].get(e)
            if got is None:
                img = images[i]
                if img is None:
                    raise ValueError(
                        f"variable {self.ring.names[i]!r} has no image in the target ring"
                    )
                got = img ** e
                cache[i][e] = got
            return got

        acc: dict = {}
        zero_key = (0,) * ring.nvars
        for k, c in self.terms.items():
            # monomial part whose images are plain variables is applied by exponent shift
            shift = list(zero_key)
            term = None
            for i, e in enumerate(k):
                if not e:
                    continue
                pos = identity_pos[i]
                if pos is not None:
                    shift[pos] += e
                    continue
                p = power(i, e)
                term = p if term is None else term * p
            shift = tuple(shift)
            if term is None:
                acc[shift] = acc.get(shift, 0) + c
                continue
            for kk, cc in term.terms.items():
                key = tuple([x + y for x, y in zip(kk, shift)]) if any(shift) else kk
                acc[key] = acc.get(key, 0) + c * cc
        return Polynomial(ring, acc)

    def _check_ring(self, ring: Ring) -> None:
        if self.ring is not ring and self.ring != ring:
            raise RingMismatchError(f"expected a polynomial over {ring!r}, got {self.ring!r}")

    def embed(self, ring: Ring) -> Polynomial:
        """Re-express in a ring containing all variables that occur here (matched by name)."""
        if ring is self.ring or ring == self.ring:
            return self
        pos = []
        for i, name in enumerate(self.ring.names):
            pos.append(ring.index(name) if name in ring else None)
        out = {}
        zero = [0] * ring.nvars
        for k, c in self.terms.items():
            kk = list(zero)
            for i, e in enumerate(k):
                if e:
                    if pos[i] is None:
                        raise RingMismatchError(
                            f"variable {self.ring.names[i]!r} does not exist in {ring!r}"
                        )
                    kk[pos[i]] = e
            out[tuple(kk)] = c
        return Polynomial._raw(ring, out)

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Exact value at a rational point (every occurring variable must be given)."""
        total = Fraction(0)
        vals = []
        for name in self.ring.names:
            vals.append(as_fraction(values[name]) if name in values else None)
        for k, c in self.terms.items():
            term = c
            for i, e in enumerate(k):
                if e:
                    if vals[i] is None:
                        raise KeyError(f"no value given for {self.ring.names[i]!r}")
                    term *= vals[i] ** e
            total += term
        return total

    # -- printing --------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, k)
                if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"
