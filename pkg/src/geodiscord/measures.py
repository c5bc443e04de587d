"""Geometric quantum-correlation measures for two-qubit states.

Two quantities are computed, both squared Hilbert-Schmidt distances from the
state to the set it would belong to if the relevant correlations vanished:

* ``gd``   one-sided geometric discord (projective measurement on side A),
* ``ggqd`` its symmetric two-sided extension (product measurement on A and B),
  equal to tr(rho^2) minus the largest purity reachable by local dephasing.

For X states (nonzero entries only on the diagonal and antidiagonal) both
have closed forms in the diagonal d0..d3 and the antidiagonal magnitudes
a03 = rho_03, a12 = rho_12 once those are made real and nonnegative:

    gd   = H + 2(a12^2 + a03^2) - max(H, (a12 + a03)^2)
    ggqd = Q + 2(a12^2 + a03^2) - max(Q, (a12 + a03)^2)

with H = (1/2) sum d_i^2 - d0 d2 - d1 d3 and Q = sum d_i^2 - 1/4.  Since
Q - H = (2(d0 + d2) - 1)^2 / 4 >= 0, the ordering of (a12 + a03)^2 against Q
and H splits the family into three cases with per-case gap formulas; see
:func:`classify_x_case` and :func:`gap_x`.

General states get ``gd`` from the closed Bloch-space form (largest
eigenvalue of x x^t + T T^t) and ``ggqd`` from a sphere maximization over the
side-B axis, the side-A maximization being available in closed form.  An
independent evaluator, :func:`ggqd_matrix_form`, maximizes the same quantity
through literal block-matrix products and a characteristic-polynomial
eigenvalue, and serves as a cross-check of :func:`ggqd_general`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _sphere
from ._sphere import OptimizerConfig, OptimizerDidNotConverge
from .core import (
    TOL_IMAG,
    BlochForm,
    DensityMatrix4,
    MeasurementAxis,
    bloch_decompose,
)

# Negative round-off in a measure value is clamped to zero down to this bound.
CLAMP_FLOOR = -1e-10


class ComplexInput(ValueError):
    """Antidiagonal parameters must be real and nonnegative here.

    Closed forms below assume phase-normalized X states.  Run
    ``states.normalize_x_phases`` first for general antidiagonals.
    """


class Method(enum.Enum):
    """How a MeasureResult was obtained."""

    ANALYTIC_X = "analytic_x"
    DAKIC = "dakic"
    GENERAL_OPT = "general_opt"
    BRUTE_FORCE = "brute_force"
    TQC_SEQUENTIAL = "tqc_sequential"


@dataclass(frozen=True)
class MeasureResult:
    """Value of a correlation measure plus how it was computed.

    maximizer  optimal measurement axes (a, b) when the method produces
               them; either entry may be None.
    clamped    True when a tiny negative value (>= CLAMP_FLOOR) was clamped
               to exactly zero.
    history    for grid searches, the running maximum of the searched
               purity per refinement round (base grid first).
    """

    value: float
    method: Method
    maximizer: tuple[MeasurementAxis | None, MeasurementAxis | None] | None = None
    clamped: bool = False
    history: tuple[float, ...] | None = None


def _finalize(value: float) -> tuple[float, bool]:
    if CLAMP_FLOOR <= value < 0.0:
        return 0.0, True
    return float(value), False


@dataclass(frozen=True)
class XStateParams:
    """Parameters of a two-qubit X state.

    d0..d3 are the diagonal entries (populations), a03 and a12 the two
    independent antidiagonal entries rho_03 and rho_12.  Positivity of the
    corresponding matrix is equivalent to |a03| <= sqrt(d0 d3) and
    |a12| <= sqrt(d1 d2), which is enforced here with a 1e-12 slack.
    """

    d0: float
    d1: float
    d2: float
    d3: float
    a03: complex = 0.0
    a12: complex = 0.0

    def __post_init__(self):
        d = [float(self.d0), float(self.d1), float(self.d2), float(self.d3)]
        a03 = complex(self.a03)
        a12 = complex(self.a12)
        values = d + [a03.real, a03.imag, a12.real, a12.imag]
        if not all(np.isfinite(v) for v in values):
            raise ValueError("X-state parameters must be finite")
        if min(d) < -1e-12:
            raise ValueError(f"populations must be nonnegative, got {d}")
        total = d[0] + d[1] + d[2] + d[3]
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"populations must sum to 1, got {total!r}")
        b03 = np.sqrt(max(d[0], 0.0) * max(d[3], 0.0))
        b12 = np.sqrt(max(d[1], 0.0) * max(d[2], 0.0))
        if abs(a03) > b03 + 1e-12:
            raise ValueError(f"|a03| = {abs(a03)!r} exceeds sqrt(d0 d3) = {b03!r}")
        if abs(a12) > b12 + 1e-12:
            raise ValueError(f"|a12| = {abs(a12)!r} exceeds sqrt(d1 d2) = {b12!r}")
        object.__setattr__(self, "d0", d[0])
        object.__setattr__(self, "d1", d[1])
        object.__setattr__(self, "d2", d[2])
        object.__setattr__(self, "d3", d[3])
        object.__setattr__(self, "a03", a03)
        object.__setattr__(self, "a12", a12)

    @property
    def diagonal(self) -> np.ndarray:
        return np.array([self.d0, self.d1, self.d2, self.d3])


class Case(enum.Enum):
    """Which ordering of (a12+a03)^2 against Q and H an X state falls in."""

    CASE1 = 1
    CASE2 = 2
    CASE3 = 3


@dataclass(frozen=True)
class XCase:
    """Case tag with the three compared quantities.

    lhs = (a12 + a03)^2, mid = sum d_i^2 - 1/4, rhs = the one-sided
    half-form (1/2) sum d_i^2 - d0 d2 - d1 d3.  mid >= rhs always.
    """

    tag: Case
    lhs: float
    mid: float
    rhs: float


def _real_nonneg(value, name: str) -> float:
    z = complex(value)
    if abs(z.imag) > TOL_IMAG:
        raise ComplexInput(
            f"{name} has imaginary part {z.imag!r}; normalize phases first"
        )
    if z.real < -TOL_IMAG:
        raise ComplexInput(f"{name} is negative ({z.real!r}); normalize phases first")
    return max(z.real, 0.0)


def _x_invariants(p: XStateParams):
    """(a03, a12, Q, H, smax) with the d1/d2 terms grouped so that the
    expressions are bitwise symmetric under the d1 <-> d2 exchange where the
    math is."""
    a03 = _real_nonneg(p.a03, "a03")
    a12 = _real_nonneg(p.a12, "a12")
    sum_sq = p.d0 * p.d0 + (p.d1 * p.d1 + p.d2 * p.d2) + p.d3 * p.d3
    q = sum_sq - 0.25
    h = 0.5 * sum_sq - p.d0 * p.d2 - p.d1 * p.d3
    s = a12 + a03
    return a03, a12, q, h, s * s


def gd_x(p: XStateParams) -> MeasureResult:
    """Closed-form geometric discord of a phase-normalized X state.

    Raises ComplexInput unless a03 and a12 are real and nonnegative.
    """
    a03, a12, _, h, s2 = _x_invariants(p)
    value = h + 2.0 * (a12 * a12 + a03 * a03) - max(h, s2)
    value, clamped = _finalize(value)
    axis = _AXIS_Z if h >= s2 else _AXIS_X
    return MeasureResult(value, Method.ANALYTIC_X, (axis, None), clamped)


def ggqd_x(p: XStateParams) -> MeasureResult:
    """Closed-form two-sided measure of a phase-normalized X state.

    The optimal local dephasing is along z when sum d_i^2 - 1/4 dominates
    (a12 + a03)^2 and along x otherwise.
    """
    a03, a12, q, _, s2 = _x_invariants(p)
    value = q + 2.0 * (a12 * a12 + a03 * a03) - max(q, s2)
    value, clamped = _finalize(value)
    axes = (_AXIS_Z, _AXIS_Z) if q >= s2 else (_AXIS_X, _AXIS_X)
    return MeasureResult(value, Method.ANALYTIC_X, axes, clamped)


def classify_x_case(p: XStateParams) -> XCase:
    """Place an X state in one of the three orderings of lhs = (a12+a03)^2
    against mid = sum d_i^2 - 1/4 and rhs = the half-form.

    Ties go to the lower-numbered case.
    """
    _, _, q, h, s2 = _x_invariants(p)
    if s2 >= q:
        tag = Case.CASE1
    elif s2 >= h:
        tag = Case.CASE2
    else:
        tag = Case.CASE3
    return XCase(tag, s2, q, h)


def gap_x(p: XStateParams) -> float:
    """Closed-form ggqd - gd gap of an X state, by case.

    Case 1: (2(d0 + d2) - 1)^2 / 4
    Case 2: (a12 + a03)^2 - ((d0 - d2)^2 + (d1 - d3)^2) / 2
    Case 3: 0

    Always nonnegative up to round-off.
    """
    case = classify_x_case(p)
    if case.tag is Case.CASE1:
        t = 2.0 * (p.d0 + p.d2) - 1.0
        return t * t / 4.0
    if case.tag is Case.CASE2:
        u = p.d0 - p.d2
        v = p.d1 - p.d3
        return case.lhs - 0.5 * (u * u + v * v)
    return 0.0


def sym3_eigmax(mat: np.ndarray, deg_tol: float = 1e-9) -> float:
    """Largest eigenvalue of a symmetric 3x3 matrix.

    Uses the trigonometric solution of the characteristic cubic; near a
    degenerate spectrum (cubic discriminant within deg_tol of zero) it falls
    back to a dense eigensolve, since the arccos sensitivity there costs a
    few digits (observed errors around 5e-12 just outside the window).
    """
    a = np.asarray(mat, dtype=float)
    q = a.trace() / 3.0
    b = a - q * np.eye(3)
    p2 = (b * b).sum() / 6.0
    if p2 == 0.0:
        return float(q)
    p = np.sqrt(p2)
    r = np.linalg.det(b) / (2.0 * p2 * p)
    if 1.0 - r * r < deg_tol:
        return float(np.linalg.eigvalsh(a)[-1])
    phi = np.arccos(r) / 3.0
    return float(q + 2.0 * p * np.cos(phi))


def sym3_eigmax_batch(mats: np.ndarray) -> np.ndarray:
    """Largest eigenvalues of a (..., 3, 3) stack of symmetric matrices.

    Same trigonometric formula as :func:`sym3_eigmax`; the arccos argument is
    clipped, which keeps the largest eigenvalue accurate to O(eps * scale)
    even at degenerate spectra.
    """
    a = np.asarray(mats, dtype=float)
    q = np.trace(a, axis1=-2, axis2=-1) / 3.0
    b = a - q[..., None, None] * np.eye(3)
    p2 = (b * b).sum(axis=(-2, -1)) / 6.0
    p = np.sqrt(p2)
    det = (
        b[..., 0, 0] * (b[..., 1, 1] * b[..., 2, 2] - b[..., 1, 2] * b[..., 2, 1])
        - b[..., 0, 1] * (b[..., 1, 0] * b[..., 2, 2] - b[..., 1, 2] * b[..., 2, 0])
        + b[..., 0, 2] * (b[..., 1, 0] * b[..., 2, 1] - b[..., 1, 1] * b[..., 2, 0])
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(p2 > 0.0, det / (2.0 * p2 * p), 1.0)
    phi = np.arccos(np.clip(r, -1.0, 1.0)) / 3.0
    return q + 2.0 * p * np.cos(phi)


_AXIS_X = MeasurementAxis(np.array([1.0, 0.0, 0.0]))
_AXIS_Z = MeasurementAxis(np.array([0.0, 0.0, 1.0]))


def _canonical_axis(v: np.ndarray) -> MeasurementAxis:
    """Unit axis with a deterministic overall sign."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        return _AXIS_Z
    v = v / n
    lead = np.flatnonzero(np.abs(v) > 1e-14)
    if lead.size and v[lead[0]] < 0.0:
        v = -v
    return MeasurementAxis(v / np.linalg.norm(v))


def gd_dakic(state: DensityMatrix4) -> MeasureResult:
    """Geometric discord of an arbitrary two-qubit state.

    Closed Bloch-space form: (|x|^2 + |T|^2 - k_max)/4 where k_max is the
    largest eigenvalue of x x^t + T T^t.  The optimal side-A measurement axis
    is the corresponding eigenvector.
    """
    bloch = bloch_decompose(state)
    x, t = bloch.x, bloch.T
    k = np.outer(x, x) + t @ t.T
    kmax = sym3_eigmax(k)
    value = (x @ x + (t * t).sum() - kmax) / 4.0
    value, clamped = _finalize(value)
    _, vecs = np.linalg.eigh(k)
    return MeasureResult(value, Method.DAKIC, (_canonical_axis(vecs[:, -1]), None), clamped)


def _top_a_axis(x: np.ndarray, tb: np.ndarray) -> MeasurementAxis:
    k = np.outer(x, x) + np.outer(tb, tb)
    _, vecs = np.linalg.eigh(k)
    return _canonical_axis(vecs[:, -1])


def ggqd_general(
    state: DensityMatrix4, opt: OptimizerConfig = OptimizerConfig()
) -> MeasureResult:
    """Two-sided measure of an arbitrary two-qubit state.

    For a fixed side-B axis b the side-A maximization has the closed form

        f(b) = (b.y)^2 + lam_max(x x^t + (Tb)(Tb)^t)
             = (b.y)^2 + [|x|^2 + |Tb|^2
                          + sqrt((|x|^2 - |Tb|^2)^2 + 4 (x.Tb)^2)] / 2

    (lam_max of a sum of two rank-1 Gram terms), so only b is searched, with
    the deterministic multi-start ascent from the optimizer module.  The
    returned value is (|x|^2 + |y|^2 + |T|^2 - f(b*)) / 4 and the search
    tracks 2 f(b) internally.

    Raises OptimizerDidNotConverge when the multi-start spread exceeds
    opt.tol.
    """
    bloch = bloch_decompose(state)
    x, y, t = bloch.x, bloch.y, bloch.T
    nx2 = float(x @ x)
    s_total = nx2 + float(y @ y) + float((t * t).sum())

    def objective(theta, phi):
        b = _sphere.unit_vectors(theta, phi)
        tb = b @ t.T
        ntb2 = (tb * tb).sum(axis=-1)
        xd = tb @ x
        yd = b @ y
        root = np.sqrt((nx2 - ntb2) ** 2 + 4.0 * xd * xd)
        return nx2 + ntb2 + root + 2.0 * yd * yd

    th, ph, fmax = _sphere.maximize_on_sphere(objective, opt)
    value, clamped = _finalize((s_total - 0.5 * fmax) / 4.0)
    b_axis = MeasurementAxis.from_angles(th, ph)
    a_axis = _top_a_axis(x, b_axis.n @ t.T)
    return MeasureResult(value, Method.GENERAL_OPT, (a_axis, b_axis), clamped)


_EXTRACT_POINTS = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0, 1.0, 0.0],
        [1.0, 0.0, 1.0],
        [0.0, 1.0, 1.0],
    ]
)


def _monomials(v: np.ndarray) -> np.ndarray:
    """(..., 3) -> (..., 6): v1^2, v2^2, v3^2, v1 v2, v1 v3, v2 v3."""
    return np.stack(
        [
            v[..., 0] * v[..., 0],
            v[..., 1] * v[..., 1],
            v[..., 2] * v[..., 2],
            v[..., 0] * v[..., 1],
            v[..., 0] * v[..., 2],
            v[..., 1] * v[..., 2],
        ],
        axis=-1,
    )


def _block_row(v: np.ndarray) -> np.ndarray:
    """The 2x4 block (1/sqrt2) [[1, v], [1, -v]]."""
    out = np.empty((2, 4))
    out[0, 0] = out[1, 0] = 1.0
    out[0, 1:] = v
    out[1, 1:] = -v
    return out / np.sqrt(2.0)


def ggqd_matrix_form(
    state: DensityMatrix4, opt: OptimizerConfig = OptimizerConfig()
) -> MeasureResult:
    """Two-sided measure through literal block-matrix products.

    Evaluates tr(C C^t) - max_{a,b} tr(A C B^t B C^t A^t) with
    C = (1/2) [[1, y^t], [x, T]] and A, B the 2x4 blocks
    (1/sqrt2) [[1, a], [1, -a]] built from unit vectors a and b.  The trace
    objective is an exact biquadratic polynomial in (a, b); its coefficients
    are recovered from a fixed set of literal evaluations, after which the
    inner maximization over a reduces to the largest eigenvalue of a 3x3
    quadratic form and only b is searched on the sphere.  This shares no
    algebra with :func:`ggqd_general` beyond the coefficient matrix C, so it
    serves as an independent check of that route.
    """
    c = bloch_decompose(state).coefficient_matrix()
    trcc = float((c * c).sum())

    def literal(a_vec, b_vec):
        m = _block_row(a_vec) @ c @ _block_row(b_vec).T
        return float((m * m).sum())

    zero = np.zeros(3)
    c0 = literal(zero, zero)
    qa = _quadratic_form(lambda v: literal(v, zero) - c0)
    qb = _quadratic_form(lambda v: literal(zero, v) - c0)

    pts = _EXTRACT_POINTS
    mono = _monomials(pts)
    hq = np.empty((6, 6))
    for m in range(6):
        for n in range(6):
            hq[m, n] = (
                literal(pts[m], pts[n])
                - c0
                - pts[m] @ qa @ pts[m]
                - pts[n] @ qb @ pts[n]
            )
    ghat = np.linalg.solve(mono, np.linalg.solve(mono, hq).T).T

    def objective(theta, phi):
        b = _sphere.unit_vectors(theta, phi)
        gb = _monomials(b) @ ghat.T
        mats = np.empty(b.shape[:-1] + (3, 3))
        mats[..., 0, 0] = qa[0, 0] + gb[..., 0]
        mats[..., 1, 1] = qa[1, 1] + gb[..., 1]
        mats[..., 2, 2] = qa[2, 2] + gb[..., 2]
        mats[..., 0, 1] = mats[..., 1, 0] = qa[0, 1] + 0.5 * gb[..., 3]
        mats[..., 0, 2] = mats[..., 2, 0] = qa[0, 2] + 0.5 * gb[..., 4]
        mats[..., 1, 2] = mats[..., 2, 1] = qa[1, 2] + 0.5 * gb[..., 5]
        quad_b = np.einsum("...i,ij,...j->...", b, qb, b)
        return c0 + quad_b + sym3_eigmax_batch(mats)

    th, ph, inner = _sphere.maximize_on_sphere(objective, opt)
    value, clamped = _finalize(trcc - inner)
    b_axis = MeasurementAxis.from_angles(th, ph)
    gb = _monomials(b_axis.n) @ ghat.T
    amat = qa + np.array(
        [
            [gb[0], 0.5 * gb[3], 0.5 * gb[4]],
            [0.5 * gb[3], gb[1], 0.5 * gb[5]],
            [0.5 * gb[4], 0.5 * gb[5], gb[2]],
        ]
    )
    _, vecs = np.linalg.eigh(amat)
    return MeasureResult(
        value, Method.GENERAL_OPT, (_canonical_axis(vecs[:, -1]), b_axis), clamped
    )


def _quadratic_form(f) -> np.ndarray:
    """Recover the symmetric 3x3 matrix of an even quadratic v -> f(v)."""
    q = np.empty((3, 3))
    e = np.eye(3)
    for i in range(3):
        q[i, i] = f(e[i])
    for i, j in ((0, 1), (0, 2), (1, 2)):
        q[i, j] = q[j, i] = (f(e[i] + e[j]) - q[i, i] - q[j, j]) / 2.0
    return q
