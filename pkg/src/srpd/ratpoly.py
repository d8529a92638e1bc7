"""Exact rational polynomial algebra on the unit sphere.

Scalars are arbitrary-precision rationals (:data:`Rational`, an alias for
``fractions.Fraction``): always in lowest terms, denominator positive.  A
:class:`Poly` is a sparse multivariate polynomial over ambient coordinates
``y0 .. y{n-1}``, stored as a map from exponent tuples to nonzero
coefficients.  A :class:`QPoly` is a Poly in *sphere normal form*: the
canonical representative of a polynomial function on the unit sphere,
obtained by eliminating every power ``y0^k`` with ``k >= 2`` through the
relation ``y0^2 = 1 - y1^2 - ... - y{n-1}^2``.

The relation generates a principal ideal whose single generator has leading
monomial ``y0^2`` under lex order with ``y0`` largest, so the remainder is a
unique normal form: two QPolys are equal as functions on the unit sphere
exactly when their term maps coincide.  All values are immutable and all
operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

Monomial = tuple  # tuple[int, ...], one exponent per ambient coordinate
Scalar = Union[int, Fraction]

_ZERO = Fraction(0)


class DimensionMismatch(ValueError):
    """Operands live over different ambient dimensions."""


class PointNotOnSphere(ValueError):
    """Evaluation point does not satisfy sum(p_i^2) == 1 exactly."""


def _coerce_scalar(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational scalar, got {type(value).__name__}")


class Poly:
    """Sparse polynomial in Q[y0 .. y{n-1}].

    ``terms`` maps exponent tuples of length ``ambient_dim`` to nonzero
    Fraction coefficients; the zero polynomial has an empty map.  Instances
    are immutable by convention: no method mutates ``terms`` after
    construction.
    """

    __slots__ = ("terms", "ambient_dim", "_hash")

    def __init__(
        self,
        terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]],
        ambient_dim: int,
    ):
        if ambient_dim < 2:
            raise ValueError("ambient dimension must be at least 2")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != ambient_dim:
                raise DimensionMismatch(
                    f"exponent tuple {exps} does not match ambient dimension {ambient_dim}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in monomial {exps}")
            c = acc.get(exps, _ZERO) + _coerce_scalar(coeff)
            if c:
                acc[exps] = c
            elif exps in acc:
                del acc[exps]
        self.terms = acc
        self.ambient_dim = ambient_dim
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Poly:
        return cls({}, n)

    @classmethod
    def const(cls, value: Scalar, n: int) -> Poly:
        return cls({(0,) * n: value}, n)

    @classmethod
    def variable(cls, index: int, n: int) -> Poly:
        if not 0 <= index < n:
            raise IndexError(f"variable index {index} out of range for dimension {n}")
        exps = [0] * n
        exps[index] = 1
        return cls({tuple(exps): 1}, n)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1) -> Poly:
        return cls({tuple(exps): coeff}, len(exps))

    # -- ring structure ----------------------------------------------------

    def _lift(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, Poly):
            if other.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(
                    f"dimension {other.ambient_dim} vs {self.ambient_dim}"
                )
            return other
        return Poly.const(_coerce_scalar(other), self.ambient_dim)

    def __add__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        other = self._lift(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, _ZERO) + c
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
        return _raw_poly(out, self.ambient_dim)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return _raw_poly({e: -c for e, c in self.terms.items()}, self.ambient_dim)

    def __sub__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self._lift(other) + (-self)

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        if not isinstance(other, Poly):
            c = _coerce_scalar(other)
            if not c:
                return Poly.zero(self.ambient_dim)
            return _raw_poly({e: c * v for e, v in self.terms.items()}, self.ambient_dim)
        other = self._lift(other)
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(m, _ZERO) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return _raw_poly(out, self.ambient_dim)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Poly.const(1, self.ambient_dim)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- structure queries ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {(0,) * self.ambient_dim}

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if not self.is_constant():
            raise ValueError(f"polynomial {self} is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        if not self.terms:
            return 0
        return max(e[index] for e in self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.ambient_dim)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, frozenset(self.terms.items())))
        return self._hash

    # -- calculus ------------------------------------------------------------

    def partial(self, index: int) -> Poly:
        """Partial derivative with respect to ``y{index}``."""
        if not 0 <= index < self.ambient_dim:
            raise IndexError(
                f"coordinate index {index} out of range for dimension {self.ambient_dim}"
            )
        out: dict[Monomial, Fraction] = {}
        for exps, c in self.terms.items():
            e = exps[index]
            if e:
                m = exps[:index] + (e - 1,) + exps[index + 1 :]
                s = out.get(m, _ZERO) + c * e
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return _raw_poly(out, self.ambient_dim)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point (no sphere membership check)."""
        if len(point) != self.ambient_dim:
            raise DimensionMismatch(
                f"point of length {len(point)} vs dimension {self.ambient_dim}"
            )
        pt = [_coerce_scalar(v) for v in point]
        total = _ZERO
        for exps, c in self.terms.items():
            v = c
            for p, e in zip(pt, exps):
                if e:
                    v *= p**e
            total += v
        return total

    def divided_by_monomial(self, exps: Sequence[int]) -> Poly:
        """Exact quotient by a monomial that divides every term."""
        exps = tuple(exps)
        out = {}
        for m, c in self.terms.items():
            q = tuple(a - b for a, b in zip(m, exps))
            if any(e < 0 for e in q):
                raise ValueError(f"monomial {exps} does not divide term {m}")
            out[q] = c
        return _raw_poly(out, self.ambient_dim)

    # -- printing ------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical print order: degree descending, then lex."""
        return sorted(
            self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[tuple[str, str]] = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"y{i}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            )
            if mono:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            chunks.append(("-" if c < 0 else "+", body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, n={self.ambient_dim})"


def _raw_poly(terms: dict, n: int) -> Poly:
    """Internal fast constructor: terms are already clean (nonzero, canonical)."""
    p = object.__new__(Poly)
    p.terms = terms
    p.ambient_dim = n
    p._hash = None
    return p


def sphere_relation(n: int) -> Poly:
    """The defining polynomial ``y0^2 + ... + y{n-1}^2 - 1``."""
    terms: dict[Monomial, Scalar] = {(0,) * n: -1}
    for i in range(n):
        exps = [0] * n
        exps[i] = 2
        terms[tuple(exps)] = 1
    return Poly(terms, n)


@lru_cache(maxsize=None)
def _complement_power(n: int, q: int) -> Poly:
    """``(1 - y1^2 - ... - y{n-1}^2) ** q`` (contains no y0)."""
    terms: dict[Monomial, Scalar] = {(0,) * n: 1}
    for i in range(1, n):
        exps = [0] * n
        exps[i] = 2
        terms[tuple(exps)] = -1
    return Poly(terms, n) ** q


class QPoly:
    """A polynomial function on the unit sphere, held in normal form.

    The wrapped :class:`Poly` contains no monomial divisible by ``y0^2``.
    Construct via :func:`reduce`; the constructor only accepts polynomials
    that are already normal.
    """

    __slots__ = ("inner",)

    def __init__(self, inner: Poly):
        for exps in inner.terms:
            if exps[0] >= 2:
                raise ValueError(
                    f"{inner} is not in sphere normal form; build QPolys with reduce()"
                )
        self.inner = inner

    @property
    def ambient_dim(self) -> int:
        return self.inner.ambient_dim

    @property
    def terms(self) -> dict:
        return self.inner.terms

    @classmethod
    def zero(cls, n: int) -> QPoly:
        return cls(Poly.zero(n))

    @classmethod
    def const(cls, value: Scalar, n: int) -> QPoly:
        return cls(Poly.const(value, n))

    @classmethod
    def variable(cls, index: int, n: int) -> QPoly:
        return cls(Poly.variable(index, n))

    def _lift(self, other: QPoly | Scalar) -> QPoly:
        if isinstance(other, QPoly):
            if other.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(
                    f"dimension {other.ambient_dim} vs {self.ambient_dim}"
                )
            return other
        return QPoly.const(_coerce_scalar(other), self.ambient_dim)

    def __add__(self, other: QPoly | Scalar) -> QPoly:
        if not isinstance(other, (QPoly, int, Fraction)):
            return NotImplemented
        # sums of normal forms are normal
        return QPoly(self.inner + self._lift(other).inner)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly(-self.inner)

    def __sub__(self, other: QPoly | Scalar) -> QPoly:
        if not isinstance(other, (QPoly, int, Fraction)):
            return NotImplemented
        return QPoly(self.inner - self._lift(other).inner)

    def __rsub__(self, other: QPoly | Scalar) -> QPoly:
        if not isinstance(other, (QPoly, int, Fraction)):
            return NotImplemented
        return QPoly(self._lift(other).inner - self.inner)

    def __mul__(self, other: QPoly | Scalar) -> QPoly:
        if not isinstance(other, (QPoly, int, Fraction)):
            return NotImplemented
        if not isinstance(other, QPoly):
            return QPoly(self.inner * _coerce_scalar(other))
        return reduce(self.inner * self._lift(other).inner)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> QPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = QPoly.const(1, self.ambient_dim)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, value: Scalar) -> QPoly:
        return self * _coerce_scalar(value)

    def partial(self, index: int) -> QPoly:
        """Derivative of the normal-form representative, renormalized."""
        return reduce(self.inner.partial(index))

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point lying exactly on the unit sphere."""
        assert_on_sphere(point)
        return self.inner.eval(point)

    def __bool__(self) -> bool:
        return bool(self.inner)

    def is_zero(self) -> bool:
        return self.inner.is_zero()

    def is_constant(self) -> bool:
        return self.inner.is_constant()

    def constant_value(self) -> Fraction:
        return self.inner.constant_value()

    def total_degree(self) -> int:
        return self.inner.total_degree()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.inner == other
        if isinstance(other, QPoly):
            return self.inner == other.inner
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("QPoly", self.inner))

    def __str__(self) -> str:
        return str(self.inner)

    def __repr__(self) -> str:
        return f"QPoly({str(self)!r}, n={self.ambient_dim})"


def reduce(p: Poly | QPoly) -> QPoly:
    """Canonical representative of ``p`` modulo the unit-sphere relation.

    Idempotent; the result equals ``p`` as a function on the sphere.
    """
    if isinstance(p, QPoly):
        return p
    n = p.ambient_dim
    out: dict[Monomial, Fraction] = {}
    pending: list[tuple[Fraction, int, Monomial]] = []
    for exps, c in p.terms.items():
        e0 = exps[0]
        if e0 < 2:
            s = out.get(exps, _ZERO) + c
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
        else:
            q, r = divmod(e0, 2)
            pending.append((c, q, (r,) + exps[1:]))
    for c, q, rest in pending:
        for sexps, sc in _complement_power(n, q).terms.items():
            m = tuple(a + b for a, b in zip(sexps, rest))
            s = out.get(m, _ZERO) + c * sc
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return QPoly(_raw_poly(out, n))


# -- exact sphere points ----------------------------------------------------


def assert_on_sphere(point: Sequence[Scalar]) -> None:
    total = sum(_coerce_scalar(v) ** 2 for v in point)
    if total != 1:
        raise PointNotOnSphere(f"sum of squares is {total}, not 1")


def random_sphere_point(rng: Random, n: int, permute: bool = True) -> tuple[Fraction, ...]:
    """Exact rational point on the unit sphere S^{n-1}.

    Stereographic image of a random rational vector u:
    ``((|u|^2 - 1), 2 u) / (|u|^2 + 1)``, optionally coordinate-permuted.
    """
    u = [Fraction(rng.randint(-12, 12), rng.randint(1, 8)) for _ in range(n - 1)]
    s = sum(v * v for v in u)
    denom = s + 1
    point = [(s - 1) / denom] + [2 * v / denom for v in u]
    if permute:
        order = list(range(n))
        rng.shuffle(order)
        point = [point[i] for i in order]
    return tuple(point)
