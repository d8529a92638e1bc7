"""Parallelizable distributions on unit spheres.

A distribution is described by an ordered horizontal frame of tangent fields.
Building one derives its Gram matrix, the dual forms (which satisfy
``omega_i(X_j) = delta_ij`` and annihilate the Euclidean-orthogonal
complement of the frame span), the induced metric, and the horizontal and
vertical projectors.

The ambient Euclidean inner product is the fixed metric extension: the
vertical space is the Euclidean-orthogonal complement of the horizontal span
inside the tangent space.  All derived data is computed eagerly at build
time, so instances are immutable and freely shareable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence

from .linalg import SpanTracker, qpoly_adjugate, qpoly_det, rational_rank
from .ratpoly import DimensionMismatch, QPoly, random_sphere_point
from .vfield import OneForm, SymTensor2, VectorField, dot, flat, pair


class NotTangent(ValueError):
    """A field meant to be a sphere section fails the tangency identity."""


class DependentFrame(ValueError):
    """Frame fields are generically linearly dependent."""


class GramSingular(ValueError):
    """Gram matrix is singular over the fraction field."""


class NonConstantGram(ValueError):
    """Gram determinant is not a nonzero constant on the sphere.

    The dual forms then fail to be polynomial, so metric and connection
    operations are unavailable; rank and step analysis still work.
    """


class InvalidVerticalFrame(ValueError):
    """Supplied vertical fields do not form an orthogonal complement basis."""


@dataclass(frozen=True)
class PDistribution:
    """A parallelizable distribution with its derived structure."""

    frame: tuple[VectorField, ...]
    vertical_frame: tuple[VectorField, ...] | None
    gram: tuple[tuple[QPoly, ...], ...]
    dual_forms: tuple[OneForm, ...]
    gram_det: QPoly
    metric: SymTensor2
    name: str = ""

    @property
    def ambient_dim(self) -> int:
        return self.frame[0].ambient_dim

    @property
    def manifold_dim(self) -> int:
        return self.ambient_dim - 1

    @property
    def rank(self) -> int:
        return len(self.frame)

    @property
    def adapted_basis(self) -> tuple[VectorField, ...]:
        """Frame followed by the vertical frame (when supplied)."""
        return self.frame + (self.vertical_frame or ())

    def frame_labels(self) -> list[str]:
        return [f"X{i + 1}" for i in range(len(self.frame))]

    def adapted_labels(self) -> list[str]:
        labels = self.frame_labels()
        if self.vertical_frame:
            labels += [f"V{i + 1}" for i in range(len(self.vertical_frame))]
        return labels

    def coefficients(self, y: VectorField) -> list[QPoly]:
        """Pairings omega_i(y) of a field against every dual form."""
        return [pair(omega, y) for omega in self.dual_forms]

    def h_project(self, y: VectorField) -> VectorField:
        """Horizontal projector: sum_i omega_i(y) X_i.  Requires tangent y."""
        if not y.is_tangent():
            raise NotTangent("projectors are defined on tangent fields only")
        return self._h(y)

    def v_project(self, y: VectorField) -> VectorField:
        """Vertical projector: y - h(y).  Requires tangent y."""
        if not y.is_tangent():
            raise NotTangent("projectors are defined on tangent fields only")
        return y - self._h(y)

    def _h(self, y: VectorField) -> VectorField:
        acc = VectorField.zero(self.ambient_dim)
        for omega, x in zip(self.dual_forms, self.frame):
            acc = acc + pair(omega, y) * x
        return acc

    def _v(self, y: VectorField) -> VectorField:
        return y - self._h(y)

    def is_horizontal(self, y: VectorField) -> bool:
        """True when the frame reconstructs y: sum_i omega_i(y) X_i == y."""
        return (y - self._h(y)).is_zero()

    def sr_metric(self) -> SymTensor2:
        return self.metric

    def g(self, a: VectorField, b: VectorField) -> QPoly:
        """Metric pairing sum_i omega_i(a) omega_i(b)."""
        acc = QPoly.zero(self.ambient_dim)
        for omega in self.dual_forms:
            acc = acc + pair(omega, a) * pair(omega, b)
        return acc


def _component_rows(fields: Sequence[VectorField]) -> list[list[QPoly]]:
    return [list(f.components) for f in fields]


def generic_rank(fields: Sequence[VectorField]) -> int:
    """Rank of the component matrix over the sphere's fraction field."""
    fields = list(fields)
    if not fields:
        return 0
    tracker = SpanTracker(fields[0].ambient_dim)
    for f in fields:
        tracker.add(list(f.components))
    return tracker.rank


@dataclass(frozen=True)
class RankCertificate:
    """Generic rank plus a pointwise sampling certificate."""

    generic_rank: int
    samples: int
    seed: int
    drops: tuple[tuple[tuple[Fraction, ...], int], ...]
    constant_gram_certificate: bool

    @property
    def ok(self) -> bool:
        return not self.drops


def pointwise_rank_certify(
    fields: Sequence[VectorField], count: int = 20, seed: int = 0
) -> RankCertificate:
    """Evaluate the component matrix at exact rational sphere points and
    compare each pointwise rank with the generic rank.

    When the Gram determinant of the fields reduces to a nonzero constant,
    the rank can never drop anywhere on the sphere; that algebraic
    certificate is reported alongside the samples.
    """
    fields = list(fields)
    rank = generic_rank(fields)
    constant_cert = False
    if fields and rank == len(fields):
        gram = [[dot(a, b) for b in fields] for a in fields]
        det = qpoly_det(gram)
        constant_cert = det.is_constant() and not det.is_zero()
    rng = Random(seed)
    drops = []
    n = fields[0].ambient_dim if fields else 2
    for _ in range(count):
        point = random_sphere_point(rng, n)
        rows = [[c.inner.eval(point) for c in f.components] for f in fields]
        r = rational_rank(rows)
        if r != rank:
            drops.append((point, r))
    return RankCertificate(
        generic_rank=rank,
        samples=count,
        seed=seed,
        drops=tuple(drops),
        constant_gram_certificate=constant_cert,
    )


def _identity_gram(gram: list[list[QPoly]]) -> bool:
    k = len(gram)
    for i in range(k):
        for j in range(k):
            expected = 1 if i == j else 0
            if gram[i][j] != expected:
                return False
    return True


def dual_forms(
    fields: Sequence[VectorField], gram: Sequence[Sequence[QPoly]] | None = None
) -> tuple[OneForm, ...]:
    """Forms omega_i with omega_i(X_j) = delta_ij, zero on the Euclidean
    complement of the frame span.

    For a Euclidean-orthonormal frame this is the component-wise musical
    dual.  Otherwise the Gram matrix is inverted; that stays polynomial
    exactly when the Gram determinant is a nonzero constant (the only case
    in which it is a unit of the coordinate ring).
    """
    fields = list(fields)
    if gram is None:
        gram = [[dot(a, b) for b in fields] for a in fields]
    gram = [list(row) for row in gram]
    if _identity_gram(gram):
        return tuple(flat(f) for f in fields)
    det = qpoly_det(gram)
    if det.is_zero():
        raise GramSingular("Gram matrix is singular: frame is degenerate")
    if not det.is_constant():
        raise NonConstantGram(
            f"Gram determinant {det} is not constant; dual forms are not "
            "polynomial for this frame"
        )
    inv_det = Fraction(1) / det.constant_value()
    adj = qpoly_adjugate(gram)
    n = fields[0].ambient_dim
    forms = []
    for i in range(len(fields)):
        omega = OneForm(tuple(QPoly.zero(n) for _ in range(n)))
        for j, f in enumerate(fields):
            omega = omega + flat(f) * (adj[i][j] * inv_det)
        forms.append(omega)
    return tuple(forms)


def build(
    fields: Sequence[VectorField],
    vertical: Sequence[VectorField] | None = None,
    name: str = "",
) -> PDistribution:
    """Assemble a distribution from an ordered horizontal frame.

    Validates tangency and generic independence, then derives the Gram
    matrix, dual forms, and induced metric.  An optional ``vertical`` frame
    must be tangent, Euclidean-orthogonal to the horizontal fields, and
    complete the frame to a basis of the tangent space.
    """
    fields = tuple(fields)
    if not fields:
        raise ValueError("frame must contain at least one field")
    n = fields[0].ambient_dim
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    k = len(fields)
    if k >= n:
        raise ValueError(f"frame of {k} fields cannot fit in dimension {n}")
    for idx, f in enumerate(fields):
        if f.ambient_dim != n:
            raise DimensionMismatch(
                f"frame field {idx + 1} has a different ambient dimension"
            )
        if not f.is_tangent():
            raise NotTangent(f"frame field {idx + 1} is not tangent to the sphere")
    if generic_rank(fields) < k:
        raise DependentFrame("frame fields are generically dependent")
    gram = [[dot(a, b) for b in fields] for a in fields]
    forms = dual_forms(fields, gram)
    det = qpoly_det(gram)

    vertical_t: tuple[VectorField, ...] | None = None
    if vertical is not None:
        vertical_t = tuple(vertical)
        expected = n - 1 - k
        if len(vertical_t) != expected:
            raise InvalidVerticalFrame(
                f"vertical frame must have {expected} fields, got {len(vertical_t)}"
            )
        for idx, v in enumerate(vertical_t):
            if not v.is_tangent():
                raise NotTangent(f"vertical field {idx + 1} is not tangent")
            for jdx, x in enumerate(fields):
                if not dot(x, v).is_zero():
                    raise InvalidVerticalFrame(
                        f"vertical field {idx + 1} is not Euclidean-orthogonal "
                        f"to frame field {jdx + 1}"
                    )
        if generic_rank(fields + vertical_t) != n - 1:
            raise InvalidVerticalFrame(
                "frame plus vertical frame does not span the tangent space"
            )

    metric = _metric_from_forms(forms, n)
    return PDistribution(
        frame=fields,
        vertical_frame=vertical_t,
        gram=tuple(tuple(row) for row in gram),
        dual_forms=forms,
        gram_det=det,
        metric=metric,
        name=name,
    )


def _metric_from_forms(forms: Sequence[OneForm], n: int) -> SymTensor2:
    entries = [[QPoly.zero(n) for _ in range(n)] for _ in range(n)]
    for omega in forms:
        for i in range(n):
            ci = omega.components[i]
            if ci.is_zero():
                continue
            for j in range(i, n):
                cj = omega.components[j]
                if cj.is_zero():
                    continue
                entries[i][j] = entries[i][j] + ci * cj
    for i in range(n):
        for j in range(i):
            entries[i][j] = entries[j][i]
    return SymTensor2(tuple(tuple(row) for row in entries))


def sr_metric(pd: PDistribution) -> SymTensor2:
    """The induced metric sum_i omega_i (x) omega_i as an ambient tensor."""
    return pd.metric


# -- random exact test data ---------------------------------------------------


def random_qpoly(rng: Random, n: int, degree: int = 2, terms: int = 3) -> QPoly:
    """Small random sphere function with exact rational coefficients."""
    from .ratpoly import Poly, reduce as _reduce

    acc = Poly.zero(n)
    for _ in range(rng.randint(1, terms)):
        exps = [0] * n
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(n)] += 1
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        acc = acc + Poly.monomial(exps, c)
    return _reduce(acc)


def random_tangent(rng: Random, n: int, degree: int = 1) -> VectorField:
    """Random tangent field: ambient components minus the radial part."""
    from .vfield import radial_field

    raw = VectorField(tuple(random_qpoly(rng, n, degree) for _ in range(n)))
    radial = radial_field(n)
    correction = dot(raw, radial)
    return raw - correction * radial


def random_horizontal(pd: PDistribution, rng: Random, degree: int = 1) -> VectorField:
    """Random section of the distribution: sum f_i X_i with random f_i."""
    acc = VectorField.zero(pd.ambient_dim)
    for x in pd.frame:
        acc = acc + random_qpoly(rng, pd.ambient_dim, degree) * x
    return acc
