"""Holevo Cramér-Rao bound for pure Gaussian displacement probes.

For a pure probe the bound is a finite-dimensional minimization.  Writing
``psi_0`` for the state and ``psi_1, psi_2`` for its derivatives with
respect to the two displacement components (all at the reference point),
everything is determined by their Gram matrix.  An orthonormal basis
``{e_0, e_1, ...}`` spanning the three vectors reduces each estimator
observable ``X_j`` to the complex entries ``W[j, n] = <e_0|X_j|e_n>``
(n >= 1); all other components either vanish by the zero-mean constraint
or do not enter the objective.  In terms of ``W``:

* ``Z = W W^H`` (Hermitian, positive semidefinite),
* objective ``h = trace(Re Z) + trabs(Im Z)``,
* local unbiasedness is the linear system ``2 Re(sum_n c[j, n] W[k, n]) =
  delta_jk`` where ``c[j, n]`` are the basis coordinates of ``psi_j``.

Real components are named following the convention

    W[0] = (t1 + i j1,  s1 + i k1)      (single-mode probes drop s, k)
    W[1] = (t2 + i j2,  s2 + i k2)

For the two-mode probe the four constraints eliminate (t1, j1, t2, j2),
leaving free variables ordered ``(s1, k2, k1, s2)``, and the objective
splits as ``h = f + 2 |g|`` with ``f`` the sum of the eight squared
components and ``g = j2 t1 - j1 t2 + k2 s1 - k1 s2`` the imaginary part
of the off-diagonal Z entry.  The analytic solver resolves the
Karush-Kuhn-Tucker case analysis of this non-smooth problem; the numeric
solver cross-checks it by multi-start constrained minimization of the two
smooth branches.

Both solvers evaluate at reference point zero only: for displacement
models the covariance and mean Jacobian are parameter independent, and a
two-stage measurement (rough estimate, then re-centering displacement)
transfers the result to any true parameter value.  The simulator's
two-stage mode demonstrates this; it is not re-proved here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from cvmb.bounds import trabs

__all__ = [
    "PureModelGram",
    "HolevoProblem",
    "HolevoSolution",
    "KKTCaseAudit",
    "ConvergenceError",
    "gram_single_mode",
    "gram_two_mode",
    "build_problem",
    "assemble_constraints",
    "eliminate_two_mode",
    "two_mode_objective",
    "two_mode_g",
    "components_to_w",
    "z_matrix",
    "holevo_value",
    "assemble_x_operators",
    "constraint_residual",
    "solve_analytic",
    "solve_numeric",
    "kkt_case_audit",
]

GRAM_TOL = 1e-12
FEASIBILITY_TOL = 1e-10

_SINGLE_NAMES = ("t1", "j1", "t2", "j2")
_TWO_MODE_NAMES = ("t1", "j1", "s1", "k1", "t2", "j2", "s2", "k2")
_FREE_NAMES = ("s1", "k2", "k1", "s2")
# positions of the free variables inside the 8-component vector
_FREE_IDX = (2, 7, 3, 6)


class ConvergenceError(RuntimeError):
    """Numeric solver failed to converge; carries the best iterate found."""

    def __init__(self, message: str, best: "HolevoSolution | None" = None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class PureModelGram:
    """Gram matrix of {psi_0, psi_1, ..., psi_d} for a pure model.

    ``overlaps[j, k] = <psi_j|psi_k>`` with psi_0 the normalized state and
    psi_j (j >= 1) its parameter derivatives at the reference point.
    """

    dim: int
    overlaps: np.ndarray

    def __post_init__(self):
        overlaps = np.asarray(self.overlaps, dtype=complex)
        n = self.dim + 1
        if overlaps.shape != (n, n):
            raise ValueError(f"overlaps must be {n}x{n} for dim {self.dim}")
        if np.max(np.abs(overlaps - overlaps.conj().T)) > GRAM_TOL:
            raise ValueError("overlap matrix must be Hermitian")
        if abs(overlaps[0, 0] - 1.0) > GRAM_TOL:
            raise ValueError("state must be normalized: <psi_0|psi_0> = 1")
        diag = np.diag(overlaps)
        if np.any(diag.real < 0) or np.max(np.abs(diag.imag)) > GRAM_TOL:
            raise ValueError("diagonal overlaps must be real and non-negative")
        overlaps = overlaps.copy()
        overlaps.setflags(write=False)
        object.__setattr__(self, "overlaps", overlaps)


@dataclass(frozen=True)
class HolevoProblem:
    """Reduced data for the pure-model minimization.

    ``psi_coords[j - 1, n - 1] = <e_n|psi_j>`` are the derivative-vector
    coordinates in the orthonormal basis (psi_0 = e_0 has no free
    coordinates).  ``free_vars`` names the un-eliminated components of the
    X observables, in solver order.
    """

    kind: str
    r: float
    basis_dim: int
    psi_coords: np.ndarray
    free_vars: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in {"single", "two_mode"}:
            raise ValueError(f"unknown probe kind {self.kind!r}")
        coords = np.asarray(self.psi_coords, dtype=complex)
        if coords.shape != (2, self.basis_dim - 1):
            raise ValueError("psi_coords must have shape (2, basis_dim - 1)")
        coords = coords.copy()
        coords.setflags(write=False)
        object.__setattr__(self, "psi_coords", coords)

    @property
    def component_names(self) -> tuple[str, ...]:
        return _SINGLE_NAMES if self.basis_dim == 2 else _TWO_MODE_NAMES


@dataclass(frozen=True)
class HolevoSolution:
    """Result of a Holevo-bound minimization."""

    bound: float
    minimizer: np.ndarray
    z_matrix: np.ndarray
    method: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in {"analytic-KKT", "numeric"}:
            raise ValueError(f"unknown method {self.method!r}")
        z = np.asarray(self.z_matrix, dtype=complex)
        minimizer = np.asarray(self.minimizer, dtype=float)
        z.setflags(write=False)
        minimizer.setflags(write=False)
        object.__setattr__(self, "z_matrix", z)
        object.__setattr__(self, "minimizer", minimizer)


def gram_single_mode(r: float) -> PureModelGram:
    """Gram data for the squeezed-vacuum probe of squeezing r.

    The derivative overlaps are ``<psi_1|psi_1> = e^2r / 4``,
    ``<psi_2|psi_2> = e^-2r / 4`` and ``<psi_1|psi_2> = i/4``; the state is
    orthogonal to both derivatives.
    """
    overlaps = np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, np.exp(2.0 * r) / 4.0, 0.25j],
            [0.0, -0.25j, np.exp(-2.0 * r) / 4.0],
        ],
        dtype=complex,
    )
    return PureModelGram(2, overlaps)


def gram_two_mode(r: float) -> PureModelGram:
    """Gram data for the two-mode squeezed vacuum probe of squeezing r.

    Both derivative norms are ``cosh 2r / 4`` and the cross overlap is
    ``i/4``; at r = 0 this coincides with the single-mode Gram.
    """
    d = np.cosh(2.0 * r) / 4.0
    overlaps = np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, d, 0.25j],
            [0.0, -0.25j, d],
        ],
        dtype=complex,
    )
    return PureModelGram(2, overlaps)


def build_problem(probe_kind: str, r: float) -> HolevoProblem:
    """Construct the HolevoProblem with the explicit orthonormal basis.

    The basis split is chosen so the derivative coordinates are real
    multiples of convenient units rather than an arbitrary Cholesky
    factor:

    * single: ``psi_1 = (e^r / 2) e_1``, ``psi_2 = (i e^-r / 2) e_1``
    * two_mode: ``psi_1 = (cosh r) e_1 / 2 + (sinh r) e_2 / 2``,
      ``psi_2 = i (cosh r) e_1 / 2 - i (sinh r) e_2 / 2``

    The reconstructed Gram is verified against the probe's Gram data to
    within 1e-12.
    """
    if probe_kind == "single":
        gram = gram_single_mode(r)
        coords = np.array([[np.exp(r) / 2.0], [1j * np.exp(-r) / 2.0]])
        free: tuple[str, ...] = ()
    elif probe_kind == "two_mode":
        gram = gram_two_mode(r)
        ch, sh = np.cosh(r), np.sinh(r)
        coords = np.array(
            [
                [ch / 2.0, sh / 2.0],
                [1j * ch / 2.0, -1j * sh / 2.0],
            ]
        )
        free = _FREE_NAMES
    else:
        raise ValueError(f"unknown probe kind {probe_kind!r}")
    rebuilt = coords.conj() @ coords.T
    if np.max(np.abs(rebuilt - gram.overlaps[1:, 1:])) > GRAM_TOL:
        raise AssertionError("basis coordinates do not reproduce the Gram matrix")
    return HolevoProblem(probe_kind, float(r), coords.shape[1] + 1, coords, free)


def assemble_constraints(problem: HolevoProblem) -> tuple[np.ndarray, np.ndarray]:
    """Local-unbiasedness constraints as a real linear system A x = b.

    ``x`` stacks (Re, Im) of the W components of X_1 then X_2 (see module
    docstring for the naming); rows are ordered (j, k) = (1,1), (1,2),
    (2,1), (2,2) for the conditions ``2 Re <psi_0|X_k|psi_j> = delta_jk``.
    The zero-mean conditions ``<e_0|X_j|e_0> = 0`` are built into the
    parametrization rather than into A.
    """
    coords = problem.psi_coords
    nvar_per_x = 2 * (problem.basis_dim - 1)
    a = np.zeros((4, 2 * nvar_per_x))
    b = np.zeros(4)
    row = 0
    for j in range(2):
        for k in range(2):
            base = k * nvar_per_x
            for n in range(problem.basis_dim - 1):
                a[row, base + 2 * n] = 2.0 * coords[j, n].real
                a[row, base + 2 * n + 1] = -2.0 * coords[j, n].imag
            b[row] = 1.0 if j == k else 0.0
            row += 1
    return a, b


def eliminate_two_mode(free_vars: np.ndarray, r: float) -> np.ndarray:
    """Map free variables (s1, k2, k1, s2) to the full 8-component vector.

    Solves the four constraints for (t1, j1, t2, j2)::

        t1 = sech r - s1 tanh r        j1 = k1 tanh r
        t2 = -s2 tanh r                j2 = -sech r + k2 tanh r
    """
    s1, k2, k1, s2 = np.asarray(free_vars, dtype=float)
    th = np.tanh(r)
    sc = 1.0 / np.cosh(r)
    t1 = sc - s1 * th
    j1 = k1 * th
    t2 = -s2 * th
    j2 = -sc + k2 * th
    return np.array([t1, j1, s1, k1, t2, j2, s2, k2])


def two_mode_g(free_vars: np.ndarray, r: float) -> float:
    """Branch function g = j2 t1 - j1 t2 + k2 s1 - k1 s2 (= Im Z[1, 0])."""
    t1, j1, s1, k1, t2, j2, s2, k2 = eliminate_two_mode(free_vars, r)
    return float(j2 * t1 - j1 * t2 + k2 * s1 - k1 * s2)


def two_mode_objective(free_vars: np.ndarray, r: float) -> float:
    """Objective h = f + 2 |g| over the eliminated two-mode variables."""
    x = eliminate_two_mode(free_vars, r)
    f = float(x @ x)
    return f + 2.0 * abs(two_mode_g(free_vars, r))


def components_to_w(x: np.ndarray, basis_dim: int) -> np.ndarray:
    """Pack the real component vector into the complex 2 x (basis_dim - 1) W."""
    x = np.asarray(x, dtype=float)
    n = basis_dim - 1
    if x.size != 4 * n:
        raise ValueError(f"expected {4 * n} components, got {x.size}")
    w = x.reshape(2, n, 2)
    return w[..., 0] + 1j * w[..., 1]


def z_matrix(w: np.ndarray) -> np.ndarray:
    """Z = W W^H: second moments of the estimator observables."""
    w = np.asarray(w, dtype=complex)
    return w @ w.conj().T


def holevo_value(z: np.ndarray) -> float:
    """Objective value trace(Re Z) + trabs(Im Z) of a candidate Z."""
    z = np.asarray(z, dtype=complex)
    return float(np.trace(z.real)) + trabs(z.imag)


def assemble_x_operators(
    problem: HolevoProblem,
    w: np.ndarray,
    blocks: tuple[np.ndarray, np.ndarray] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Build the full Hermitian X_1, X_2 in the orthonormal basis.

    Row/column 0 carries the W components (with ``<e_0|X_j|e_0> = 0``);
    ``blocks`` optionally fills the remaining Hermitian block on the
    derivative subspace, which does not enter Z for a pure state.
    """
    bd = problem.basis_dim
    ops = []
    for j in range(2):
        x = np.zeros((bd, bd), dtype=complex)
        x[0, 1:] = w[j]
        x[1:, 0] = w[j].conj()
        if blocks is not None:
            block = np.asarray(blocks[j], dtype=complex)
            if block.shape != (bd - 1, bd - 1):
                raise ValueError("block shape must match the derivative subspace")
            if np.max(np.abs(block - block.conj().T)) > GRAM_TOL:
                raise ValueError("blocks must be Hermitian")
            x[1:, 1:] = block
        ops.append(x)
    return ops[0], ops[1]


def constraint_residual(problem: HolevoProblem, w: np.ndarray) -> float:
    """Worst violation of ``2 Re <psi_0|X_k|psi_j> = delta_jk`` for a W."""
    coords = problem.psi_coords
    resid = 0.0
    for j in range(2):
        for k in range(2):
            val = 2.0 * np.real(np.sum(coords[j] * w[k]))
            resid = max(resid, abs(val - (1.0 if j == k else 0.0)))
    return resid


def _pinned_single_solution(r: float) -> tuple[np.ndarray, np.ndarray]:
    """Single-mode probes leave no freedom: the constraints pin W entirely."""
    x = np.array([np.exp(-r), 0.0, 0.0, -np.exp(r)])
    return x, components_to_w(x, 2)


def solve_analytic(probe_kind: str, r: float) -> HolevoSolution:
    """Closed-form Holevo bound from the KKT case analysis.

    * single: the constraints fix everything; bound ``2 + 2 cosh 2r`` with
      ``Z = [[e^-2r, i], [-i, e^2r]]``.
    * two_mode: the only KKT point that survives the case analysis (see
      :func:`kkt_case_audit`) sits on the g = 0 boundary at
      ``s1 = k2 = e^-r``, ``k1 = s2 = 0``; bound ``4 exp(-2r)`` with
      ``Z = 2 e^-2r I``.  At r = 0 the problem degenerates to the
      single-mode (coherent-probe) case and the same expression applies.
    """
    if probe_kind == "single":
        x, w = _pinned_single_solution(r)
        z = np.array(
            [[np.exp(-2.0 * r), 1.0j], [-1.0j, np.exp(2.0 * r)]], dtype=complex
        )
        bound = 2.0 + 2.0 * np.cosh(2.0 * r)
        return HolevoSolution(float(bound), x, z, "analytic-KKT")
    if probe_kind == "two_mode":
        u = np.exp(-r)
        free = np.array([u, u, 0.0, 0.0])
        z = 2.0 * np.exp(-2.0 * r) * np.eye(2, dtype=complex)
        bound = 4.0 * np.exp(-2.0 * r)
        return HolevoSolution(float(bound), free, z, "analytic-KKT")
    raise ValueError(f"unknown probe kind {probe_kind!r}")


def _branch_values(x: np.ndarray, basis_dim: int) -> tuple[float, float]:
    """(f, g) of a full component vector: f = sum of squares, g = Im Z[1, 0]."""
    w = components_to_w(x, basis_dim)
    f = float(np.asarray(x) @ np.asarray(x))
    g = float(np.imag(np.sum(w[1] * w[0].conj())))
    return f, g


def _branch_gradients(x: np.ndarray, basis_dim: int) -> tuple[np.ndarray, np.ndarray]:
    n = basis_dim - 1
    x = np.asarray(x, dtype=float)
    grad_f = 2.0 * x
    a = x[0 : 2 * n : 2]
    b = x[1 : 2 * n : 2]
    c = x[2 * n :: 2]
    d = x[2 * n + 1 :: 2]
    grad_g = np.empty_like(x)
    grad_g[0 : 2 * n : 2] = d
    grad_g[1 : 2 * n : 2] = -c
    grad_g[2 * n :: 2] = -b
    grad_g[2 * n + 1 :: 2] = a
    return grad_f, grad_g


def solve_numeric(
    problem: HolevoProblem,
    seed: int = 0,
    restarts: int = 16,
    parametrization: str = "reduced",
    init_range: float = 2.0,
) -> HolevoSolution:
    """Minimize the Holevo objective by multi-start local descent.

    The absolute value is handled by solving the two smooth branches
    (g >= 0 with objective f + 2g, g <= 0 with f - 2g) and keeping the
    best feasible result.  Each branch is attacked with SLSQP from
    ``restarts`` uniformly random starting points in
    ``[-init_range, init_range]``; results are deterministic for a fixed
    (seed, restarts).

    Parametrizations:

    * "reduced": free variables after constraint elimination (two-mode:
      (s1, k2, k1, s2); single-mode: none, the solution is pinned),
    * "full": all W components with the unbiasedness constraints imposed
      as explicit linear equalities,
    * "span": "full" plus the Hermitian components of the X operators on
      the derivative subspace, which provably do not enter Z; included to
      confirm that truncating them is loss-free.

    Raises:
        ConvergenceError: no restart converged on any branch; the error's
            ``best`` attribute carries the best iterate seen, if any.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    if parametrization not in {"reduced", "full", "span"}:
        raise ValueError(f"unknown parametrization {parametrization!r}")

    if parametrization == "reduced" and problem.kind == "single":
        x, w = _pinned_single_solution(problem.r)
        z = z_matrix(w)
        return HolevoSolution(
            holevo_value(z), np.array([]), z, "numeric",
            {"parametrization": "reduced", "restarts": restarts, "converged": restarts,
             "note": "constraints pin the solution; no free variables"},
        )

    bd = problem.basis_dim
    n_w = 4 * (bd - 1)

    if parametrization == "reduced":
        r = problem.r
        dim = 4

        def value_split(x):
            full = eliminate_two_mode(x, r)
            return _branch_values(full, bd)

        def full_components(x):
            return eliminate_two_mode(x, r)

        th = np.tanh(r)
        elim = np.zeros((8, 4))
        # d(full)/d(free) for (s1, k2, k1, s2); constants drop out
        elim[2, 0] = 1.0
        elim[0, 0] = -th
        elim[7, 1] = 1.0
        elim[5, 1] = th
        elim[3, 2] = 1.0
        elim[1, 2] = th
        elim[6, 3] = 1.0
        elim[4, 3] = -th

        def gradients(x):
            gf, gg = _branch_gradients(eliminate_two_mode(x, r), bd)
            return gf @ elim, gg @ elim

        eq_constraints: list[dict] = []
    else:
        extra = 0 if parametrization == "full" else (bd - 1) ** 2 * 2
        dim = n_w + extra
        a_mat, b_vec = assemble_constraints(problem)

        def value_split(x):
            return _branch_values(x[:n_w], bd)

        def full_components(x):
            return np.asarray(x[:n_w], dtype=float)

        def gradients(x):
            gf, gg = _branch_gradients(x[:n_w], bd)
            out_f = np.zeros(dim)
            out_g = np.zeros(dim)
            out_f[:n_w] = gf
            out_g[:n_w] = gg
            return out_f, out_g

        eq_constraints = [
            {
                "type": "eq",
                "fun": lambda x: a_mat @ x[:n_w] - b_vec,
                "jac": lambda x: np.hstack([a_mat, np.zeros((4, dim - n_w))]),
            }
        ]

    rng = np.random.default_rng(seed)
    starts = rng.uniform(-init_range, init_range, size=(restarts, dim))

    best_val = np.inf
    best_x = None
    fallback_val = np.inf
    fallback_x = None
    converged = 0
    for sign in (1.0, -1.0):

        def objective(x, s=sign):
            f, g = value_split(x)
            return f + 2.0 * s * g

        def objective_jac(x, s=sign):
            gf, gg = gradients(x)
            return gf + 2.0 * s * gg

        cons = list(eq_constraints) + [
            {
                "type": "ineq",
                "fun": lambda x, s=sign: s * value_split(x)[1],
                "jac": lambda x, s=sign: s * gradients(x)[1],
            }
        ]
        for x0 in starts:
            res = minimize(
                objective,
                x0,
                jac=objective_jac,
                method="SLSQP",
                constraints=cons,
                options={"ftol": 1e-14, "maxiter": 500},
            )
            f, g = value_split(res.x)
            val = f + 2.0 * abs(g)
            if not res.success:
                if val < fallback_val:
                    fallback_val, fallback_x = val, res.x
                continue
            converged += 1
            if val < best_val - 1e-15:
                best_val = val
                best_x = res.x

    def _pack(x):
        w = components_to_w(full_components(x), bd)
        z = z_matrix(w)
        diagnostics = {
            "parametrization": parametrization,
            "restarts": restarts,
            "converged": converged,
            "constraint_residual": constraint_residual(problem, w),
        }
        return HolevoSolution(holevo_value(z), np.asarray(x, dtype=float), z,
                              "numeric", diagnostics)

    if best_x is None:
        best = None if fallback_x is None else _pack(fallback_x)
        raise ConvergenceError(
            f"no restart converged out of {restarts} per branch", best=best
        )
    return _pack(best_x)


@dataclass(frozen=True)
class KKTCaseAudit:
    """Candidate-by-candidate record of the two-mode KKT case analysis.

    Case 1 minimizes f + 2g subject to g >= 0 with multiplier lam;
    case 2 minimizes f - 2g on g < 0, which forces lam = 0.  Stationary
    candidates are checked against the explicit linear system; residuals
    are max-norm violations of that system.
    """

    r: float
    case_1a_g: float            # g at the lam = 0 candidate (negative: infeasible)
    case_2_g: float             # g at the case-2 candidate (positive: contradiction)
    bound: float                # h on the surviving branch, 4 exp(-2r)
    spurious_value: float       # h on the other g = 0 branch, 4 exp(+2r)
    optimal_multiplier: float   # lam = 4 e^-r cosh r
    spurious_multiplier: float  # lam = 4 e^+r cosh r
    optimal_residual: float
    spurious_residual: float


def _case1_stationarity_residual(free: np.ndarray, lam: float, r: float) -> float:
    """Residual of the case-1 stationarity system at a candidate point."""
    c2 = np.cosh(2.0 * r)
    sh = np.sinh(r)
    m = np.array(
        [
            [-2.0 * c2, lam - 2.0, 0.0, 0.0],
            [lam - 2.0, -2.0 * c2, 0.0, 0.0],
            [0.0, 0.0, 2.0 * c2, lam - 2.0],
            [0.0, 0.0, lam - 2.0, 2.0 * c2],
        ]
    )
    rhs = np.array([-lam * sh, -lam * sh, 0.0, 0.0])
    return float(np.max(np.abs(m @ np.asarray(free) - rhs)))


def kkt_case_audit(r: float) -> KKTCaseAudit:
    """Evaluate every KKT candidate of the two-mode minimization at r != 0.

    * case 1a (lam = 0, all free variables zero): g = -sech^2 r < 0,
      infeasible for the g >= 0 branch.
    * case 1b (g = 0): two stationary points, s1 = k2 = e^-r with
      h = 4 e^-2r (the minimum) and s1 = k2 = -e^r with h = 4 e^+2r
      (stationary but larger).
    * case 2 (g < 0 forces lam = 0): the candidate s1 = k2 = csch r gives
      g = csch^2 r > 0, contradicting its own branch.
    """
    if r == 0:
        raise ValueError("the case analysis assumes r != 0; at r = 0 the problem "
                         "reduces to the coherent single-mode case")
    zeros = np.zeros(4)
    case_1a_g = two_mode_g(zeros, r)

    csch = 1.0 / np.sinh(r)
    case_2_point = np.array([csch, csch, 0.0, 0.0])
    case_2_g = two_mode_g(case_2_point, r)

    u_opt = np.exp(-r)
    opt_point = np.array([u_opt, u_opt, 0.0, 0.0])
    lam_opt = 4.0 * np.exp(-r) * np.cosh(r)

    u_sp = -np.exp(r)
    sp_point = np.array([u_sp, u_sp, 0.0, 0.0])
    lam_sp = 4.0 * np.exp(r) * np.cosh(r)

    return KKTCaseAudit(
        r=float(r),
        case_1a_g=case_1a_g,
        case_2_g=case_2_g,
        bound=two_mode_objective(opt_point, r),
        spurious_value=two_mode_objective(sp_point, r),
        optimal_multiplier=float(lam_opt),
        spurious_multiplier=float(lam_sp),
        optimal_residual=_case1_stationarity_residual(opt_point, lam_opt, r),
        spurious_residual=_case1_stationarity_residual(sp_point, lam_sp, r),
    )
