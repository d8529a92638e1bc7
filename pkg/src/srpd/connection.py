"""Linear connections on a parallelizable distribution.

Three connections are realized operationally, each as an ``apply(direction,
section) -> horizontal field`` map built from explicit formulas:

* the Weitzenboeck connection, which makes every frame field parallel:
  ``nabla_Y Z = sum_i (Y . omega_i(Z)) X_i``;
* the averaged auxiliary connection
  ``hat(nabla)_Y Z = (nabla_Y Z + nabla_Z hY + h[Y, Z]) / 2``;
* the sub-Riemannian connection
  ``srnabla_W Z = hat(nabla)_W Z - (1/2) (L_{X_i} g)(hW, Z) X_i
  - (1/2) g(Z, h[vW, X_k]) X_k``
  (sums over the frame), the unique metric connection whose torsion vanishes
  horizontally and is symmetric against vertical arguments.

Torsion uses ``T(Y, Z) = nabla_Y hZ - nabla_Z hY - h[Y, Z]`` and curvature
``R(Y, Z) W = nabla_Y nabla_Z W - nabla_Z nabla_Y W - nabla_{[Y,Z]} W``; the
horizontal Lie derivative of the metric is
``(L_W g)(Y, Z) = W . g(Y, Z) + g(h[Y, W], Z) + g(h[Z, W], Y)``.

All identities are exact polynomial identities on the sphere; randomized
checks use seeded exact rational sections, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence

from .frame import NotTangent, PDistribution, random_horizontal
from .ratpoly import QPoly
from .vfield import VectorField, direct_deriv, lie_bracket, pair


class NotHorizontal(ValueError):
    """Section argument is not reconstructed by the frame."""


class MissingVerticalFrame(ValueError):
    """The requested check needs an explicit vertical frame."""


def _require_tangent(x: VectorField, role: str) -> None:
    if not x.is_tangent():
        raise NotTangent(f"{role} must be tangent to the sphere")


def _require_horizontal(pd: PDistribution, z: VectorField, role: str) -> None:
    if not pd.is_horizontal(z):
        raise NotHorizontal(
            f"{role} is not horizontal: frame reconstruction leaves a residual"
        )


class Connection:
    """Operator (direction, horizontal section) -> horizontal section."""

    kind = "abstract"

    def __init__(self, pd: PDistribution):
        self.pd = pd

    def apply(
        self, direction: VectorField, section: VectorField, check: bool = True
    ) -> VectorField:
        raise NotImplementedError

    def __call__(self, direction: VectorField, section: VectorField) -> VectorField:
        return self.apply(direction, section)

    def coefficient_table(self) -> "CoefficientTable":
        return CoefficientTable.from_connection(self)


class WeitzenbockConnection(Connection):
    """The unique connection for which every frame field is parallel."""

    kind = "weitzenbock"

    def apply(
        self, direction: VectorField, section: VectorField, check: bool = True
    ) -> VectorField:
        if check:
            _require_tangent(direction, "direction")
            _require_horizontal(self.pd, section, "section")
        pd = self.pd
        acc = VectorField.zero(pd.ambient_dim)
        for omega, x in zip(pd.dual_forms, pd.frame):
            acc = acc + direct_deriv(direction, pair(omega, section)) * x
        return acc


class HatConnection(Connection):
    """Averaged auxiliary connection used to assemble the sR connection."""

    kind = "hat"

    def __init__(self, pd: PDistribution):
        super().__init__(pd)
        self._nabla = WeitzenbockConnection(pd)

    def apply(
        self, direction: VectorField, section: VectorField, check: bool = True
    ) -> VectorField:
        if check:
            _require_tangent(direction, "direction")
            _require_horizontal(self.pd, section, "section")
        pd = self.pd
        nabla = self._nabla
        h_dir = pd._h(direction)
        total = (
            nabla.apply(direction, section, check=False)
            + nabla.apply(section, h_dir, check=False)
            + pd._h(lie_bracket(direction, section))
        )
        return total * Fraction(1, 2)


class SubRiemannianConnection(Connection):
    """Metric connection with vanishing horizontal torsion and symmetric
    vertical torsion."""

    kind = "sub_riemannian"

    def __init__(self, pd: PDistribution):
        super().__init__(pd)
        self._hat = HatConnection(pd)

    def apply(
        self, direction: VectorField, section: VectorField, check: bool = True
    ) -> VectorField:
        # Assembled in frame coordinates: with cw = omega(direction) and
        # cz = omega(section), the coefficient of X_i is
        #   (W.cz_i + Z.cw_i + omega_i([W,Z])
        #    - (L_{X_i} g)(hW, Z) - g(Z, h[vW, X_i])) / 2,
        # using omega_j(hA) = omega_j(A), which collapses every horizontal
        # projection and metric pairing into plain form pairings.
        if check:
            _require_tangent(direction, "direction")
            _require_horizontal(self.pd, section, "section")
        pd = self.pd
        forms = pd.dual_forms
        frame = pd.frame
        n = pd.ambient_dim
        half = Fraction(1, 2)
        cz = [pair(omega, section) for omega in forms]
        cw = [pair(omega, direction) for omega in forms]
        h_dir = VectorField.zero(n)
        for c, x in zip(cw, frame):
            if not c.is_zero():
                h_dir = h_dir + c * x
        v_dir = direction - h_dir
        v_zero = v_dir.is_zero()
        wz = lie_bracket(direction, section)
        g_hw_z = QPoly.zero(n)
        for a, b in zip(cw, cz):
            if not (a.is_zero() or b.is_zero()):
                g_hw_z = g_hw_z + a * b
        h_for_brackets = direction if v_zero else h_dir

        total = VectorField.zero(n)
        for i, x in enumerate(frame):
            coeff = (
                direct_deriv(direction, cz[i])
                + direct_deriv(section, cw[i])
                + pair(forms[i], wz)
            )
            lie_coeff = direct_deriv(x, g_hw_z)
            if not all(c.is_zero() for c in cw):
                b1 = lie_bracket(h_for_brackets, x)
                for omega, c in zip(forms, cz):
                    if not c.is_zero():
                        lie_coeff = lie_coeff + pair(omega, b1) * c
            b2 = lie_bracket(section, x)
            for omega, c in zip(forms, cw):
                if not c.is_zero():
                    lie_coeff = lie_coeff + pair(omega, b2) * c
            coeff = coeff - lie_coeff
            if not v_zero:
                bv = lie_bracket(v_dir, x)
                for omega, c in zip(forms, cz):
                    if not c.is_zero():
                        coeff = coeff - pair(omega, bv) * c
            coeff = coeff * half
            if not coeff.is_zero():
                total = total + coeff * x
        return total


def weitzenbock(pd: PDistribution) -> WeitzenbockConnection:
    return WeitzenbockConnection(pd)


def hat_connection(pd: PDistribution) -> HatConnection:
    return HatConnection(pd)


def sr_connection(pd: PDistribution) -> SubRiemannianConnection:
    return SubRiemannianConnection(pd)


def torsion(conn: Connection, y: VectorField, z: VectorField) -> VectorField:
    """T(y, z) = conn_y hz - conn_z hy - h[y, z]."""
    _require_tangent(y, "first torsion argument")
    _require_tangent(z, "second torsion argument")
    pd = conn.pd
    hy = pd._h(y)
    hz = pd._h(z)
    return (
        conn.apply(y, hz, check=False)
        - conn.apply(z, hy, check=False)
        - pd._h(lie_bracket(y, z))
    )


def curvature(
    conn: Connection, y: VectorField, z: VectorField, w: VectorField
) -> VectorField:
    """R(y, z) w = conn_y conn_z w - conn_z conn_y w - conn_[y,z] w."""
    _require_tangent(y, "first curvature argument")
    _require_tangent(z, "second curvature argument")
    _require_horizontal(conn.pd, w, "curvature section")
    zw = conn.apply(z, w, check=False)
    yw = conn.apply(y, w, check=False)
    return (
        conn.apply(y, zw, check=False)
        - conn.apply(z, yw, check=False)
        - conn.apply(lie_bracket(y, z), w, check=False)
    )


def hlie(
    pd: PDistribution,
    w: VectorField,
    y: VectorField,
    z: VectorField,
    check: bool = True,
) -> QPoly:
    """Horizontal Lie derivative of the metric:
    (L_w g)(y, z) = w . g(y, z) + g(h[y, w], z) + g(h[z, w], y)."""
    if check:
        _require_tangent(w, "derivative direction")
        _require_horizontal(pd, y, "first metric argument")
        _require_horizontal(pd, z, "second metric argument")
    return (
        direct_deriv(w, pd.g(y, z))
        + pd.g(pd._h(lie_bracket(y, w)), z)
        + pd.g(pd._h(lie_bracket(z, w)), y)
    )


def killing_check(pd: PDistribution, x: VectorField) -> bool:
    """True when the horizontal Lie derivative along x annihilates the
    metric on every frame pair."""
    _require_tangent(x, "candidate Killing field")
    k = len(pd.frame)
    for i in range(k):
        for j in range(i, k):
            if not hlie(pd, x, pd.frame[i], pd.frame[j], check=False).is_zero():
                return False
    return True


def metric_compat_check(
    conn: Connection, samples: int = 4, seed: int = 0
) -> bool:
    """Exact metric compatibility:
    w . g(y, z) - g(conn_w y, z) - g(y, conn_w z) == 0
    for every adapted-basis direction w and both frame pairs and seeded
    random horizontal pairs (y, z)."""
    pd = conn.pd
    rng = Random(seed)
    pairs: list[tuple[VectorField, VectorField]] = []
    for i in range(len(pd.frame)):
        for j in range(i, len(pd.frame)):
            pairs.append((pd.frame[i], pd.frame[j]))
    for _ in range(samples):
        pairs.append(
            (random_horizontal(pd, rng, degree=1), random_horizontal(pd, rng, degree=1))
        )
    for w in pd.adapted_basis:
        for y, z in pairs:
            lhs = (
                direct_deriv(w, pd.g(y, z))
                - pd.g(conn.apply(w, y, check=False), z)
                - pd.g(y, conn.apply(w, z, check=False))
            )
            if not lhs.is_zero():
                return False
    return True


@dataclass(frozen=True)
class CoefficientTable:
    """Connection coefficients over an adapted basis: for direction B_a and
    frame section X_j, ``apply(B_a, X_j) = sum_i gamma[a][j][i] X_i``."""

    kind: str
    direction_labels: tuple[str, ...]
    gammas: tuple[tuple[tuple[QPoly, ...], ...], ...]
    pd: PDistribution

    @classmethod
    def from_connection(cls, conn: Connection) -> CoefficientTable:
        pd = conn.pd
        directions = pd.adapted_basis
        gammas = []
        for b in directions:
            row = []
            for x in pd.frame:
                out = conn.apply(b, x, check=False)
                row.append(tuple(pair(omega, out) for omega in pd.dual_forms))
            gammas.append(tuple(row))
        return cls(
            kind=conn.kind,
            direction_labels=tuple(pd.adapted_labels()),
            gammas=tuple(gammas),
            pd=pd,
        )

    def reconstruct(self, a: int, j: int) -> VectorField:
        """sum_i gamma[a][j][i] X_i; equals apply on the basis pair."""
        acc = VectorField.zero(self.pd.ambient_dim)
        for coeff, x in zip(self.gammas[a][j], self.pd.frame):
            acc = acc + coeff * x
        return acc

    def apply_with_leibniz(self, a: int, section: VectorField) -> VectorField:
        """Second computation path: expand the section over the frame and use
        the Leibniz rule with the stored coefficients."""
        pd = self.pd
        direction = pd.adapted_basis[a]
        acc = VectorField.zero(pd.ambient_dim)
        for j, (omega, x) in enumerate(zip(pd.dual_forms, pd.frame)):
            fj = pair(omega, section)
            acc = acc + direct_deriv(direction, fj) * x
            if not fj.is_zero():
                acc = acc + fj * self.reconstruct(a, j)
        return acc

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "directions": list(self.direction_labels),
            "sections": self.pd.frame_labels(),
            "gamma": [
                [[str(c) for c in cell] for cell in row] for row in self.gammas
            ],
        }


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        data = {"name": self.name, "passed": self.passed}
        if self.witness:
            data["witness"] = self.witness
        return data


@dataclass(frozen=True)
class PropertyReport:
    connection_kind: str
    checks: tuple[PropertyCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "connection": self.connection_kind,
            "all_passed": self.all_passed,
            "checks": [c.to_json() for c in self.checks],
        }


def sr_characterization_report(
    pd: PDistribution,
    conn: Connection | None = None,
    samples: int = 3,
    seed: int = 0,
) -> PropertyReport:
    """Check the three properties characterizing the sub-Riemannian
    connection, plus the closed form of its vertical torsion.

    (a) metric compatibility; (b) torsion vanishes on horizontal pairs;
    (c) g(T(V, Y), Z) == g(T(V, Z), Y) for vertical V and horizontal Y, Z.
    Property (c) and the closed-form comparison need the vertical frame.
    """
    if pd.vertical_frame is None:
        raise MissingVerticalFrame(
            "vertical-torsion symmetry needs an explicit vertical frame"
        )
    if conn is None:
        conn = sr_connection(pd)
    rng = Random(seed)
    checks: list[PropertyCheck] = []

    # (a) metricity
    passed = metric_compat_check(conn, samples=samples, seed=seed)
    checks.append(PropertyCheck("metric_compatibility", passed))

    # (b) horizontal torsion vanishes
    horizontals = list(pd.frame) + [
        random_horizontal(pd, rng, degree=1) for _ in range(samples)
    ]
    witness = None
    ok = True
    for i in range(len(horizontals)):
        for j in range(i + 1, len(horizontals)):
            t = torsion(conn, horizontals[i], horizontals[j])
            if not t.is_zero():
                ok = False
                witness = f"T(h{i}, h{j}) = {t}"
                break
        if not ok:
            break
    checks.append(PropertyCheck("horizontal_torsion_vanishes", ok, witness))

    # (c) symmetry of vertical torsion
    ok = True
    witness = None
    for v in pd.vertical_frame:
        for i in range(len(pd.frame)):
            for j in range(i, len(pd.frame)):
                y, z = pd.frame[i], pd.frame[j]
                lhs = pd.g(torsion(conn, v, y), z)
                rhs = pd.g(torsion(conn, v, z), y)
                if lhs != rhs:
                    ok = False
                    witness = (
                        f"g(T(V,X{i + 1}),X{j + 1}) = {lhs} but "
                        f"g(T(V,X{j + 1}),X{i + 1}) = {rhs}"
                    )
                    break
            if not ok:
                break
        if not ok:
            break
    checks.append(PropertyCheck("vertical_torsion_symmetry", ok, witness))

    # closed form of the vertical torsion, checked against the direct one
    ok = True
    witness = None
    half = Fraction(1, 2)
    for v in pd.vertical_frame:
        for kk, xk in enumerate(pd.frame):
            direct = torsion(conn, v, xk)
            closed = VectorField.zero(pd.ambient_dim)
            for xi in pd.frame:
                closed = closed + pd.g(xk, pd._h(lie_bracket(v, xi))) * xi
            closed = (closed + pd._h(lie_bracket(v, xk))) * (-half)
            if direct != closed:
                ok = False
                witness = f"T(V,X{kk + 1}): direct {direct} vs closed form {closed}"
                break
        if not ok:
            break
    checks.append(PropertyCheck("vertical_torsion_closed_form", ok, witness))

    return PropertyReport(connection_kind=conn.kind, checks=tuple(checks))
