"""Exact elimination over sphere polynomials and rationals.

Rank computations run over the fraction field of the sphere's coordinate
ring (an integral domain: the defining relation is irreducible).  Rows are
eliminated Bareiss-style in the ambient polynomial ring, so intermediate
entries are genuine bordered minors -- the division by the previous pivot is
exact and degree growth stays linear.  Pivot tests happen in the quotient
ring: a pivot must be nonzero *modulo the sphere relation*, and a row counts
as dependent exactly when every entry reduces to zero on the sphere.  With
pivot minors invertible over the fraction field, the bordering-minor lemma
makes the resulting rank exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .ratpoly import Poly, QPoly, _raw_poly, reduce

_ZERO = Fraction(0)


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of an exact rational matrix via Gaussian elimination."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for r in range(row_idx, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row_idx], m[pivot] = m[pivot], m[row_idx]
        pv = m[row_idx][col]
        for r in range(row_idx + 1, len(m)):
            f = m[r][col]
            if f:
                ratio = f / pv
                m[r] = [a - ratio * b for a, b in zip(m[r], m[row_idx])]
        row_idx += 1
        rank += 1
        if row_idx == len(m):
            break
    return rank


def poly_div_exact(num: Poly, den: Poly) -> Poly:
    """Exact multivariate quotient num / den (divisibility is guaranteed by
    the caller; raises if it does not hold)."""
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero():
        return num
    if den.is_constant():
        inv = Fraction(1) / den.constant_value()
        return num * inv
    den_lead = max(den.terms)
    den_lc = den.terms[den_lead]
    rem = dict(num.terms)
    out: dict[tuple, Fraction] = {}
    while rem:
        lead = max(rem)
        qexp = tuple(a - b for a, b in zip(lead, den_lead))
        if any(e < 0 for e in qexp):
            raise ArithmeticError("inexact polynomial division")
        qc = rem[lead] / den_lc
        out[qexp] = qc
        for dexp, dc in den.terms.items():
            m = tuple(a + b for a, b in zip(qexp, dexp))
            v = rem.get(m, _ZERO) - qc * dc
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return _raw_poly(out, num.ambient_dim)


def _entry_weight(p: Poly) -> tuple[int, int]:
    return (p.total_degree(), len(p.terms))


class QPolyEchelon:
    """Incremental exact rank tracker over the sphere's fraction field.

    Stored pivot rows are kept in Bareiss form (entries are bordered minors
    of the accepted rows, as ambient polynomials).  :meth:`add` reduces an
    incoming row through every stage with exact minor divisions, then tests
    the residual entries modulo the sphere relation: the row enlarges the
    span exactly when some residual entry is nonzero on the sphere.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        # (pivot_col, row entries as Poly, pivot value as Poly)
        self.rows: list[tuple[int, list[Poly], Poly]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def clone(self) -> QPolyEchelon:
        """Independent tracker sharing the (immutable) stored rows."""
        other = QPolyEchelon(self.ncols)
        other.rows = list(self.rows)
        return other

    def _reduce(self, row: list[Poly]) -> list[Poly]:
        prev_pivot: Poly | None = None
        for pivot_col, base, pivot_val in self.rows:
            coeff = row[pivot_col]
            if coeff.is_zero():
                updated = [pivot_val * e for e in row]
            else:
                updated = [pivot_val * e - coeff * b for e, b in zip(row, base)]
            if prev_pivot is not None and not prev_pivot.is_constant():
                row = [poly_div_exact(e, prev_pivot) for e in updated]
            elif prev_pivot is not None:
                inv = Fraction(1) / prev_pivot.constant_value()
                row = [e * inv for e in updated]
            else:
                row = updated
            prev_pivot = pivot_val
        return row

    def add(self, row: Sequence[QPoly | Poly]) -> bool:
        """Insert a row; True when it enlarges the row space on the sphere."""
        polys = [e.inner if isinstance(e, QPoly) else e for e in row]
        reduced = self._reduce(list(polys))
        candidates = []
        for i, entry in enumerate(reduced):
            if entry.is_zero():
                continue
            if reduce(entry).is_zero():
                continue  # vanishes on the sphere: unusable as pivot
            candidates.append((i, entry))
        if not candidates:
            return False
        pivot_col = min(candidates, key=lambda ie: (_entry_weight(ie[1]), ie[0]))[0]
        self.rows.append((pivot_col, reduced, reduced[pivot_col]))
        return True


def qpoly_matrix_rank(rows: Sequence[Sequence[QPoly]]) -> int:
    """Generic rank of a QPoly matrix over the sphere's fraction field."""
    if not rows:
        return 0
    echelon = QPolyEchelon(len(list(rows[0])))
    for row in rows:
        echelon.add(list(row))
    return echelon.rank


class SpanTracker:
    """Exact incremental row-span tracker for field component rows.

    Every verdict carries an exact certificate.  Independence is certified by
    a rank jump of the evaluated matrix at an exact rational sphere point (a
    bordered minor with nonzero rational value cannot vanish identically on
    the sphere).  Dependence is certified by producing constant coefficients
    at a sample point and verifying the linear combination as a polynomial
    identity.  When neither certificate applies (e.g. dependence with
    non-constant function coefficients), the Bareiss echelon decides.

    Rows must be ambient component vectors: ``ncols`` equals the ambient
    dimension, and sample points are drawn on the corresponding sphere.
    """

    def __init__(self, ncols: int, seed: int = 0, initial_points: int = 2):
        from random import Random
        from .ratpoly import random_sphere_point

        self.ncols = ncols
        self.rows: list[list[QPoly]] = []
        self._rng = Random(seed)
        self._points = [
            random_sphere_point(self._rng, ncols) for _ in range(initial_points)
        ]
        self._evals: list[list[list[Fraction]]] = [[] for _ in self._points]
        self._bareiss: QPolyEchelon | None = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def clone(self) -> SpanTracker:
        from random import Random

        other = SpanTracker.__new__(SpanTracker)
        other.ncols = self.ncols
        other.rows = list(self.rows)
        other._rng = Random()
        other._rng.setstate(self._rng.getstate())
        other._points = list(self._points)
        other._evals = [list(per_point) for per_point in self._evals]
        other._bareiss = self._bareiss.clone() if self._bareiss is not None else None
        return other

    @staticmethod
    def _eval_row(row: list[QPoly], point) -> list[Fraction]:
        return [entry.inner.eval(point) for entry in row]

    def _accept(self, row: list[QPoly], evals: list[list[Fraction]]) -> None:
        self.rows.append(row)
        for per_point, ev in zip(self._evals, evals):
            per_point.append(ev)

    def _draw_fresh_point(self) -> int:
        from .ratpoly import random_sphere_point

        point = random_sphere_point(self._rng, self.ncols)
        self._points.append(point)
        self._evals.append([self._eval_row(r, point) for r in self.rows])
        return len(self._points) - 1

    def _solve_constant(
        self, row: list[QPoly], cand_evals: list[list[Fraction]]
    ) -> list[Fraction] | None:
        """Constant coefficients a with sum a_i rows[i] == candidate at one
        full-rank sample point, or None."""
        r = len(self.rows)
        if r == 0:
            return []
        pivot_point = None
        for _ in range(3):
            for pi in range(len(self._points)):
                if rational_rank(self._evals[pi]) == r:
                    pivot_point = pi
                    break
            if pivot_point is not None:
                break
            pi = self._draw_fresh_point()
            cand_evals.append(self._eval_row(row, self._points[pi]))
        if pivot_point is None:
            return None
        # solve the n x r system (columns are row evaluations)
        aug = [
            [self._evals[pivot_point][i][j] for i in range(r)]
            + [cand_evals[pivot_point][j]]
            for j in range(self.ncols)
        ]
        return _solve_exact(aug, r)

    def add(self, row: Sequence[QPoly]) -> bool:
        """Insert a row; True when it enlarges the span over the sphere's
        fraction field."""
        row = list(row)
        cand_evals = [self._eval_row(row, p) for p in self._points]
        r = len(self.rows)
        for pi in range(len(self._points)):
            if rational_rank(self._evals[pi] + [cand_evals[pi]]) == r + 1:
                self._accept(row, cand_evals)
                return True
        coeffs = self._solve_constant(row, cand_evals)
        if coeffs is not None and self._is_constant_combo(row, coeffs):
            return False
        self._bareiss_sync()
        probe = self._bareiss.clone()
        if probe.add(row):
            self._accept(row, cand_evals)
            self._bareiss = probe
            return True
        return False

    def _is_constant_combo(self, row: list[QPoly], coeffs: list[Fraction]) -> bool:
        for j in range(self.ncols):
            acc = row[j]
            for a, base in zip(coeffs, self.rows):
                if a:
                    acc = acc - base[j] * a
            if not acc.is_zero():
                return False
        return True

    def _bareiss_sync(self) -> None:
        if self._bareiss is None:
            self._bareiss = QPolyEchelon(self.ncols)
        while self._bareiss.rank < len(self.rows):
            if not self._bareiss.add(self.rows[self._bareiss.rank]):
                raise RuntimeError("accepted row unexpectedly dependent")


def _solve_exact(aug: list[list[Fraction]], unknowns: int) -> list[Fraction] | None:
    """Solve an exact overdetermined system in row-augmented form; None when
    inconsistent."""
    m = [list(map(Fraction, row)) for row in aug]
    nrows = len(m)
    pivots: list[tuple[int, int]] = []
    row_idx = 0
    for col in range(unknowns):
        pivot = None
        for rr in range(row_idx, nrows):
            if m[rr][col]:
                pivot = rr
                break
        if pivot is None:
            continue
        m[row_idx], m[pivot] = m[pivot], m[row_idx]
        pv = m[row_idx][col]
        m[row_idx] = [v / pv for v in m[row_idx]]
        for rr in range(nrows):
            if rr != row_idx and m[rr][col]:
                f = m[rr][col]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[row_idx])]
        pivots.append((row_idx, col))
        row_idx += 1
    solution = [Fraction(0)] * unknowns
    for rr, col in pivots:
        solution[col] = m[rr][unknowns]
    for rr in range(nrows):
        if any(m[rr][:unknowns]):
            continue
        if m[rr][unknowns]:
            return None  # inconsistent
    return solution


def qpoly_det(matrix: Sequence[Sequence[QPoly]]) -> QPoly:
    """Determinant of a square QPoly matrix (Laplace expansion with memoized
    minors over column subsets; intended for small matrices)."""
    k = len(matrix)
    if k == 0:
        raise ValueError("empty matrix")
    n = matrix[0][0].ambient_dim
    for row in matrix:
        if len(row) != k:
            raise ValueError("matrix must be square")
    # minors[cols] = det of rows 0..r-1 restricted to column tuple cols
    minors: dict[tuple[int, ...], QPoly] = {(): QPoly.const(1, n)}
    for r in range(k):
        nxt: dict[tuple[int, ...], QPoly] = {}
        for cols, minor in minors.items():
            if minor.is_zero():
                continue
            used = set(cols)
            for c in range(k):
                if c in used:
                    continue
                entry = matrix[r][c]
                if entry.is_zero():
                    continue
                new_cols = tuple(sorted(cols + (c,)))
                pos = new_cols.index(c)
                sign = 1 if (r + pos) % 2 == 0 else -1
                contrib = entry * minor
                if sign < 0:
                    contrib = -contrib
                if new_cols in nxt:
                    nxt[new_cols] = nxt[new_cols] + contrib
                else:
                    nxt[new_cols] = contrib
        minors = nxt
        if not minors:
            return QPoly.zero(n)
    return minors.get(tuple(range(k)), QPoly.zero(n))


def qpoly_adjugate(matrix: Sequence[Sequence[QPoly]]) -> list[list[QPoly]]:
    """Adjugate matrix: adj[i][j] = (-1)^(i+j) * det(matrix without row j, col i)."""
    k = len(matrix)
    adj: list[list[QPoly]] = [[None] * k for _ in range(k)]  # type: ignore[list-item]
    for i in range(k):
        for j in range(k):
            sub = [
                [matrix[r][c] for c in range(k) if c != i]
                for r in range(k)
                if r != j
            ]
            if sub:
                d = qpoly_det(sub)
            else:
                d = QPoly.const(1, matrix[0][0].ambient_dim)
            adj[i][j] = d if (i + j) % 2 == 0 else -d
    return adj
