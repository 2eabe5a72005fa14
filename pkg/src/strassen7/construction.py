"""Constructive derivation of a rank-7 bilinear 2x2 multiplication.

The pipeline: pick a rotation D (trace -1, determinant 1, non-scalar), a
column vector u that is not an eigenvector of D, form the perp row vector
u_perp (u_perp u = 0, u_perp D u = 1) and the nilpotent M = u u_perp.  M
and its two conjugates under D span the traceless matrices; adding D (resp.
D^-1) yields a basis for X (resp. Y).  Reading the multiplication table of
those two bases off the identities M^2 = 0, MDM = M, MD^-1M = -M groups the
product XY into exactly seven summands u_k(X) v_k(Y) W_k.

Every identity used along the way is re-verified with exact arithmetic at
construction time; nothing is trusted to algebra done on paper.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .fields import Field, FieldElement, require_exact
from .linalg import (
    ColVec2,
    Mat2,
    RowVec2,
    SingularSystemError,
    SquareSystem,
    independent,
    outer,
    solve,
)


class RotationError(ValueError):
    """The candidate matrix cannot serve as the rotation D."""


class BadTraceError(RotationError):
    """Trace is not -1."""


class BadDeterminantError(RotationError):
    """Determinant is not 1."""


class ScalarMatrixError(RotationError):
    """The matrix is a scalar multiple of the identity (possible only in
    characteristic 3, where (x - 1)^2 = x^2 + x + 1)."""


class ZeroVectorError(ValueError):
    """u = 0 admits no perp vector."""


class EigenvectorError(ValueError):
    """u is an eigenvector of D, so the perp conditions are inconsistent."""


class InvariantError(RuntimeError):
    """An identity that must hold for valid inputs failed; this indicates a
    bug in the arithmetic backend, not bad input."""


@dataclass(frozen=True)
class Rotation:
    """A validated order-3 rotation: D with char poly x^2 + x + 1, plus its
    cached inverse (which equals D^2)."""

    d: Mat2
    d_inv: Mat2

    @property
    def field(self) -> Field:
        return self.d.field


@dataclass(frozen=True)
class PerpPair:
    """A column vector u with its perp row vector u_perp."""

    u: ColVec2
    u_perp: RowVec2


def validate_rotation(d: Mat2) -> Rotation:
    """Check trace/determinant/non-scalarity, then re-verify the order-3
    identities D^3 = id, id + D + D^-1 = 0, trace(D^-1) = -1."""
    require_exact(d.field, "rotation validation")
    field = d.field
    if d.trace() != field(-1):
        raise BadTraceError(f"trace is {d.trace()}, want -1")
    if d.det() != field.one():
        raise BadDeterminantError(f"determinant is {d.det()}, want 1")
    if d.is_scalar():
        raise ScalarMatrixError("rotation must not be a multiple of the identity")
    d_inv = d.inverse()
    ident = Mat2.identity(field)
    if d @ d @ d != ident:
        raise InvariantError("D^3 != id")
    if d_inv != d @ d:
        raise InvariantError("D^-1 != D^2")
    if ident + d + d_inv != Mat2.zero(field):
        raise InvariantError("id + D + D^-1 != 0")
    if d_inv.trace() != field(-1):
        raise InvariantError("trace(D^-1) != -1")
    return Rotation(d, d_inv)


def default_rotation(field: Field) -> Rotation:
    """The companion matrix of x^2 + x + 1; valid over every field since it
    is never scalar."""
    require_exact(field, "rotation construction")
    return validate_rotation(Mat2(field, [0, -1, 1, -1]))


def perp_vector(rot: Rotation, u: ColVec2) -> PerpPair:
    """Solve for the row vector u_perp with u_perp u = 0 and u_perp D u = 1.

    The 2x2 system is singular exactly when {u, Du} is linearly dependent,
    i.e. when u is an eigenvector of D (or zero).
    """
    field = rot.field
    if u.field != field:
        u = ColVec2(field, [u.x, u.y])
    if u.is_zero():
        raise ZeroVectorError("u must be nonzero")
    du = rot.d @ u
    system = SquareSystem.build(field, [[u.x, u.y], [du.x, du.y]], [0, 1])
    try:
        a, b = solve(system)
    except SingularSystemError as exc:
        raise EigenvectorError("u is an eigenvector of D") from exc
    u_perp = RowVec2(field, [a, b])
    if u_perp @ u != field.zero() or (u_perp @ rot.d) @ u != field.one():
        raise InvariantError("perp vector fails its defining conditions")
    if (u_perp @ rot.d_inv) @ u != field(-1):
        raise InvariantError("u_perp D^-1 u != -1")
    return PerpPair(u, u_perp)


def default_u(rot: Rotation) -> ColVec2:
    """First of e1, e2, e1+e2 that is not an eigenvector of D.

    One of the three always works: if e1 and e2 were both eigenvectors, D
    would be diagonal, and e1+e2 on top of that forces equal eigenvalues,
    i.e. a scalar D, which validation rejects.
    """
    field = rot.field
    for candidate in ([1, 0], [0, 1], [1, 1]):
        u = ColVec2(field, candidate)
        try:
            perp_vector(rot, u)
        except EigenvectorError:
            continue
        return u
    raise InvariantError("no standard candidate vector avoids the eigenspaces")


class StrassenBasis:
    """The two derived bases of the 2x2 matrix space.

    ``m`` is the nilpotent u u_perp; ``m1`` its conjugate D^-1 M D and
    ``m2`` the conjugate D M D^-1.  basis_x = (D, M, M1, M2) and
    basis_y = (D^-1, M, M1, M2).
    """

    __slots__ = ("rotation", "perp", "m", "m1", "m2")

    def __init__(self, rotation: Rotation, perp: PerpPair, m: Mat2, m1: Mat2, m2: Mat2):
        self.rotation = rotation
        self.perp = perp
        self.m = m
        self.m1 = m1
        self.m2 = m2

    @property
    def field(self) -> Field:
        return self.rotation.field

    @property
    def basis_x(self) -> tuple:
        return (self.rotation.d, self.m, self.m1, self.m2)

    @property
    def basis_y(self) -> tuple:
        return (self.rotation.d_inv, self.m, self.m1, self.m2)


def build_basis(rot: Rotation, pp: PerpPair) -> StrassenBasis:
    """Form M = u u_perp and its conjugates, verifying the nilpotency and
    simplification identities plus linear independence of both bases."""
    field = rot.field
    d, d_inv = rot.d, rot.d_inv
    m = outer(pp.u, pp.u_perp)
    m1 = d_inv @ m @ d
    m2 = d @ m @ d_inv
    zero = Mat2.zero(field)
    if m @ m != zero:
        raise InvariantError("M^2 != 0")
    if m @ d @ m != m:
        raise InvariantError("M D M != M")
    if m @ d_inv @ m != -m:
        raise InvariantError("M D^-1 M != -M")
    if any(c.trace() != field.zero() for c in (m, m1, m2)):
        raise InvariantError("M or a conjugate is not traceless")
    if not independent([m, m1, m2]):
        raise InvariantError("M and its conjugates are linearly dependent")
    basis = StrassenBasis(rot, pp, m, m1, m2)
    if not independent(basis.basis_x) or not independent(basis.basis_y):
        raise InvariantError("derived four-matrix basis is degenerate")
    return basis


def coordinates(basis: Sequence[Mat2], x: Mat2) -> tuple:
    """Coefficients (c1..c4) with x = sum c_i basis_i, via one 4x4 solve
    over the row-major flattenings."""
    field = x.field
    flat = [m.flatten() for m in basis]
    matrix = [[flat[j][i] for j in range(4)] for i in range(4)]
    system = SquareSystem.build(field, matrix, list(x.flatten()))
    return tuple(solve(system))


@dataclass(frozen=True)
class Term:
    """One summand of the decomposition: scalar forms u, v (coefficients in
    the standard dual basis, ordered by x11, x12, x21, x22) and the matrix W."""

    u_coeffs: tuple
    v_coeffs: tuple
    w: Mat2

    def u(self, x: Mat2) -> FieldElement:
        return _apply_form(self.u_coeffs, x)

    def v(self, y: Mat2) -> FieldElement:
        return _apply_form(self.v_coeffs, y)


def _apply_form(coeffs: tuple, x: Mat2) -> FieldElement:
    acc = x.field.zero()
    for c, e in zip(coeffs, x.flatten()):
        acc = acc + c * e
    return acc


@dataclass(frozen=True)
class Provenance:
    """The (D, u) pair a decomposition was derived from."""

    d: Mat2
    u: ColVec2


@dataclass(frozen=True)
class BilinearDecomposition:
    """A list of (u_k, v_k, W_k) terms asserting XY = sum u_k(X) v_k(Y) W_k.

    Immutable after creation; holding rank 7 is the normal case but not an
    invariant, so that files carrying other bilinear algorithms can still be
    parsed and verified (the recursion engine rejects rank != 7).
    """

    field: Field
    terms: tuple
    provenance: Optional[Provenance] = None

    @property
    def rank(self) -> int:
        return len(self.terms)


def standard_units(field: Field) -> tuple:
    """The four matrix units e11, e12, e21, e22 in row-major order."""
    return (
        Mat2(field, [1, 0, 0, 0]),
        Mat2(field, [0, 1, 0, 0]),
        Mat2(field, [0, 0, 1, 0]),
        Mat2(field, [0, 0, 0, 1]),
    )


def derive_decomposition(rot: Rotation, pp: PerpPair) -> BilinearDecomposition:
    """Produce the seven terms by grouping the product of the two basis
    expansions according to the multiplication table.

    The coordinate forms x_i (of X in basis_x) and y_j (of Y in basis_y) are
    materialized as standard-dual-basis coefficient vectors by running
    ``coordinates`` on the four matrix units and transposing.
    """
    field = rot.field
    basis = build_basis(rot, pp)
    units = standard_units(field)
    unit_coords_x = [coordinates(basis.basis_x, e) for e in units]
    unit_coords_y = [coordinates(basis.basis_y, e) for e in units]
    # x[i][j] = coefficient of the j-th matrix entry in the form x_{i+1}
    x = [tuple(unit_coords_x[j][i] for j in range(4)) for i in range(4)]
    y = [tuple(unit_coords_y[j][i] for j in range(4)) for i in range(4)]

    def diff(a: tuple, b: tuple) -> tuple:
        return tuple(p - q for p, q in zip(a, b))

    def add(a: tuple, b: tuple) -> tuple:
        return tuple(p + q for p, q in zip(a, b))

    d, d_inv, m = rot.d, rot.d_inv, basis.m
    terms = (
        Term(x[0], y[0], Mat2.identity(field)),
        Term(x[1], add(y[0], y[3]), m @ d_inv),
        Term(x[2], add(y[0], y[1]), d_inv @ m),
        Term(x[3], add(y[0], y[2]), d @ m @ d),
        Term(diff(x[0], x[3]), y[1], d @ m),
        Term(diff(x[0], x[1]), y[2], m @ d),
        Term(diff(x[0], x[2]), y[3], d_inv @ m @ d_inv),
    )
    return BilinearDecomposition(field, terms, Provenance(rot.d, pp.u))
