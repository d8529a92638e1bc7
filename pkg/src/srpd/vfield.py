"""Vector fields, 1-forms, and symmetric 2-tensors on the unit sphere.

All objects carry ambient components (one :class:`QPoly` per coordinate
``y0 .. y{n-1}``); tangency to the sphere is a checkable property, not a type
constraint.  Everything is immutable and operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ratpoly import DimensionMismatch, Poly, QPoly, Scalar, reduce


def _check_same_dim(a, b) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"dimension {a.ambient_dim} vs {b.ambient_dim}")


@dataclass(frozen=True)
class VectorField:
    """Ambient vector field sum_i components[i] * d/dy_i."""

    components: tuple[QPoly, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("vector field needs at least one component")
        n = self.components[0].ambient_dim
        if len(self.components) != n:
            raise DimensionMismatch(
                f"{len(self.components)} components for ambient dimension {n}"
            )
        for c in self.components:
            if c.ambient_dim != n:
                raise DimensionMismatch("mixed ambient dimensions in components")

    @property
    def ambient_dim(self) -> int:
        return len(self.components)

    @classmethod
    def zero(cls, n: int) -> VectorField:
        return cls(tuple(QPoly.zero(n) for _ in range(n)))

    def __add__(self, other: VectorField) -> VectorField:
        _check_same_dim(self, other)
        return VectorField(
            tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: VectorField) -> VectorField:
        _check_same_dim(self, other)
        return VectorField(
            tuple(a - b for a, b in zip(self.components, other.components))
        )

    def __neg__(self) -> VectorField:
        return VectorField(tuple(-a for a in self.components))

    def __mul__(self, factor: QPoly | Scalar) -> VectorField:
        return VectorField(tuple(c * factor for c in self.components))

    __rmul__ = __mul__

    def __call__(self, f: QPoly) -> QPoly:
        """Directional derivative of a sphere function along this field."""
        return direct_deriv(self, f)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_tangent(self) -> bool:
        """True when sum_i components[i] * y_i vanishes on the sphere."""
        n = self.ambient_dim
        acc = QPoly.zero(n)
        for i, c in enumerate(self.components):
            acc = acc + c * QPoly.variable(i, n)
        return acc.is_zero()

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


@dataclass(frozen=True)
class OneForm:
    """Differential 1-form sum_i components[i] * dy_i."""

    components: tuple[QPoly, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("one-form needs at least one component")
        n = self.components[0].ambient_dim
        if len(self.components) != n:
            raise DimensionMismatch(
                f"{len(self.components)} components for ambient dimension {n}"
            )

    @property
    def ambient_dim(self) -> int:
        return len(self.components)

    def __add__(self, other: OneForm) -> OneForm:
        _check_same_dim(self, other)
        return OneForm(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> OneForm:
        return OneForm(tuple(-a for a in self.components))

    def __sub__(self, other: OneForm) -> OneForm:
        return self + (-other)

    def __mul__(self, factor: QPoly | Scalar) -> OneForm:
        return OneForm(tuple(c * factor for c in self.components))

    __rmul__ = __mul__

    def __call__(self, field: VectorField) -> QPoly:
        return pair(self, field)

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.components) + "]"


@dataclass(frozen=True)
class SymTensor2:
    """Symmetric 2-tensor sum_{ij} entries[i][j] dy_i (x) dy_j."""

    entries: tuple[tuple[QPoly, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise DimensionMismatch("tensor entries must form a square matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"tensor not symmetric at entry ({i}, {j})")

    @property
    def ambient_dim(self) -> int:
        return len(self.entries)

    def apply(self, x: VectorField, y: VectorField) -> QPoly:
        return tensor_apply(self, x, y)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymTensor2):
            return NotImplemented
        return self.entries == other.entries


def lie_bracket(x: VectorField, y: VectorField) -> VectorField:
    """Commutator [x, y]: acts on functions as x(y(f)) - y(x(f))."""
    _check_same_dim(x, y)
    n = x.ambient_dim
    comps = []
    for i in range(n):
        acc = QPoly.zero(n)
        xi = x.components[i]
        yi = y.components[i]
        for j in range(n):
            acc = acc + x.components[j] * yi.partial(j) - y.components[j] * xi.partial(j)
        comps.append(acc)
    return VectorField(tuple(comps))


def direct_deriv(x: VectorField, f: QPoly) -> QPoly:
    """Directional derivative sum_j x^j d f / d y_j, renormalized."""
    if f.ambient_dim != x.ambient_dim:
        raise DimensionMismatch(f"dimension {f.ambient_dim} vs {x.ambient_dim}")
    acc = QPoly.zero(x.ambient_dim)
    for j in range(x.ambient_dim):
        acc = acc + x.components[j] * f.partial(j)
    return acc


def pair(omega: OneForm, x: VectorField) -> QPoly:
    """Natural pairing omega(x) = sum_i omega_i x^i."""
    _check_same_dim(omega, x)
    acc = QPoly.zero(x.ambient_dim)
    for a, b in zip(omega.components, x.components):
        acc = acc + a * b
    return acc


def tensor_apply(g: SymTensor2, x: VectorField, y: VectorField) -> QPoly:
    """g(x, y) = sum_{ij} g_ij x^i y^j."""
    _check_same_dim(g, x)
    _check_same_dim(g, y)
    n = x.ambient_dim
    acc = QPoly.zero(n)
    for i in range(n):
        xi = x.components[i]
        if xi.is_zero():
            continue
        row = g.entries[i]
        for j in range(n):
            yj = y.components[j]
            if yj.is_zero() or row[j].is_zero():
                continue
            acc = acc + row[j] * xi * yj
    return acc


def dot(x: VectorField, y: VectorField) -> QPoly:
    """Ambient Euclidean inner product of two fields."""
    _check_same_dim(x, y)
    acc = QPoly.zero(x.ambient_dim)
    for a, b in zip(x.components, y.components):
        acc = acc + a * b
    return acc


def flat(x: VectorField) -> OneForm:
    """Euclidean musical dual: same components, read as a 1-form."""
    return OneForm(x.components)


def radial_field(n: int) -> VectorField:
    """The field (y0, ..., y{n-1}); normal to the sphere."""
    return VectorField(tuple(QPoly.variable(i, n) for i in range(n)))


def linear_field(matrix: Sequence[Sequence[int]]) -> VectorField:
    """Field with components (A y)_i from an integer/rational matrix A."""
    n = len(matrix)
    comps = []
    for row in matrix:
        if len(row) != n:
            raise DimensionMismatch("matrix must be square")
        terms = {}
        for j, a in enumerate(row):
            if a:
                exps = [0] * n
                exps[j] = 1
                terms[tuple(exps)] = a
        comps.append(reduce(Poly(terms, n)))
    return VectorField(tuple(comps))


def is_tangent(x: VectorField) -> bool:
    return x.is_tangent()
