"""Per-mode evolution of the forced Stokes vorticity system, plus oracles.

``duhamel_solve`` evaluates the Green's-function representation

    omega(t) = G(t) omega_0
             + int_0^t G(t-s) f(s) ds
             + int_0^t G(t-s, y; 0) (g(s), 0)^T ds,

with the full tangential kernel (heat part + residual part) on the first two
components and the Dirichlet heat kernel on the third.  The time integrals use
the substitution s = t - sigma^2 with Gauss-Legendre in sigma, which removes
the (nu (t-s))^{-1/2} trace singularity of the boundary term and keeps all
integrands smooth.

``crank_nicolson_oracle`` is an independent finite-difference solve of the same
initial-boundary-value problem (ghost-node boundary condition, far-field
Dirichlet, unconditionally stable theta = 1/2 stepping) used to validate the
representation, and ``finite_difference_resolvent_general`` is the stationary
analog for the general-boundary-condition resolvent.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .actions import hankel_apply, image_action_gauss
from .core import FourierMode, HalfLineGrid, ModeField, SpectralPoint, projection_matrix
from .errors import AsymmetricModeSet, IncompatibleData, StabilityWarning
from .kernels import residual_profiles_time
from .resolvent import BoundaryOperatorD

__all__ = [
    "StokesProblem",
    "Trajectory",
    "duhamel_solve",
    "crank_nicolson_oracle",
    "finite_difference_resolvent_general",
    "uniqueness_demo",
    "assemble_3d",
]


@dataclass
class StokesProblem:
    """One per-mode initial-boundary-value problem on the half line.

    ``forcing(t)`` returns interior force node values of shape (3, n) and
    ``boundary_g(t)`` the tangential boundary datum pair; both default to zero.
    Initial data with omega_3(0) != 0 is incompatible with the boundary
    condition and is corrected by zeroing the first node (linear interpolation
    over the first cell); the correction size is recorded.
    """

    mode: FourierMode
    nu: float
    omega0: ModeField
    forcing: object = None
    boundary_g: object = None
    t_final: float = 1.0
    compat_correction: float = field(init=False, default=0.0)

    def __post_init__(self):
        if self.nu <= 0:
            raise IncompatibleData(f"viscosity must be positive, got {self.nu}")
        if self.t_final <= 0:
            raise IncompatibleData(f"t_final must be positive, got {self.t_final}")
        if self.omega0.ncomp != 3:
            raise IncompatibleData("omega0 must have 3 components")
        w3_0 = self.omega0.values[2, 0]
        if w3_0 != 0.0:
            vals = self.omega0.values.copy()
            vals[2, 0] = 0.0
            self.omega0 = ModeField(self.omega0.grid, vals)
            self.compat_correction = abs(w3_0)

    def force_at(self, t: float) -> np.ndarray:
        if self.forcing is None:
            return np.zeros_like(self.omega0.values)
        return np.asarray(self.forcing(t), dtype=complex)

    def g_at(self, t: float) -> np.ndarray:
        if self.boundary_g is None:
            return np.zeros(2, dtype=complex)
        return np.asarray(self.boundary_g(t), dtype=complex)


@dataclass
class Trajectory:
    """Output times (starting at 0) and the states at those times."""

    times: np.ndarray
    states: list

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if self.times[0] != 0.0 or np.any(np.diff(self.times) <= 0):
            raise IncompatibleData("times must start at 0 and increase")
        if len(self.states) != self.times.size:
            raise IncompatibleData("one state per time required")

    def state_at(self, t: float) -> ModeField:
        i = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[i] - t) > 1e-9 * max(t, 1.0):
            raise IncompatibleData(f"time {t} not in trajectory")
        return self.states[i]


# ---------------------------------------------------------------------------
# Duhamel representation


def _residual_action(grid, nu, mode, t, pair, n_arm=192, n_arc=96):
    """Apply the residual kernel rho(t, y+z) P to a tangential pair by quadrature."""
    n = grid.n
    s_all = np.arange(2 * n - 1) * grid.h
    rho1, rho2 = residual_profiles_time(t, nu, mode, s_all, n_arm=n_arm, n_arc=n_arc)
    rho = rho1 + rho2
    P = projection_matrix(mode)
    weighted = np.einsum("ab,bn->an", P, pair) * grid.weights
    return hankel_apply(rho, weighted)


def _propagate(grid, nu, mode, t, values, n_arm=192, n_arc=96, warn=False):
    """Apply the 3-component solution operator at time t to node values."""
    c = nu * t
    decay = np.exp(-nu * mode.norm**2 * t)
    out = np.empty_like(values)
    out[:2] = decay * image_action_gauss(grid, values[:2], c, +1, warn_truncation=warn)
    out[2] = decay * image_action_gauss(grid, values[2:], c, -1, warn_truncation=warn)[0]
    if not mode.is_zero:
        out[:2] += _residual_action(grid, nu, mode, t, values[:2], n_arm, n_arc)
    return out


def _boundary_kernel_column(grid, nu, mode, t, n_arm=192, n_arc=96):
    """G(t, y; 0) restricted to the tangential pair: a (2, 2, n) array."""
    y = grid.nodes
    c = 4.0 * nu * t
    h = 2.0 / np.sqrt(np.pi * c) * np.exp(-(y**2) / c) * np.exp(-nu * mode.norm**2 * t)
    out = h[None, None, :] * np.eye(2)[:, :, None]
    if not mode.is_zero:
        rho1, rho2 = residual_profiles_time(t, nu, mode, y, n_arm=n_arm, n_arc=n_arc)
        out = out + (rho1 + rho2)[None, None, :] * projection_matrix(mode)[:, :, None]
    return out


def duhamel_solve(problem: StokesProblem, times, n_quad: int = 48,
                  n_arm: int = 192, n_arc: int = 96) -> Trajectory:
    """Evaluate the Green's-function representation at the requested times.

    ``n_quad`` Gauss-Legendre nodes are used in the substituted time variable
    sigma = sqrt(t - s) for both the forcing and the boundary Duhamel terms.
    """
    grid = problem.omega0.grid
    nu, mode = problem.nu, problem.mode
    times = np.asarray(times, dtype=float)
    states = []
    x_gl, w_gl = np.polynomial.legendre.leggauss(n_quad)
    has_force = problem.forcing is not None
    has_g = problem.boundary_g is not None and not mode.is_zero
    for t in times:
        if t == 0.0:
            states.append(problem.omega0)
            continue
        vals = _propagate(grid, nu, mode, t, problem.omega0.values, n_arm, n_arc)
        if has_force or has_g:
            sig = 0.5 * np.sqrt(t) * (x_gl + 1.0)
            wts = 0.5 * np.sqrt(t) * w_gl * 2.0 * sig  # ds = 2 sigma dsigma
            for sigma, wt in zip(sig, wts):
                tk = sigma**2  # kernel time t - s
                if has_force:
                    vals = vals + wt * _propagate(grid, nu, mode, tk,
                                                  problem.force_at(t - tk),
                                                  n_arm, n_arc)
                if has_g:
                    col = _boundary_kernel_column(grid, nu, mode, tk, n_arm, n_arc)
                    vals[:2] += wt * np.einsum("abn,b->an", col, problem.g_at(t - tk))
        states.append(ModeField(grid, vals))
    if times[0] != 0.0:
        times = np.concatenate([[0.0], times])
        states = [problem.omega0] + states
    return Trajectory(times=times, states=states)


# ---------------------------------------------------------------------------
# Crank-Nicolson finite-difference oracle


def _tangential_operator(grid: HalfLineGrid, nu: float, mode: FourierMode):
    """Sparse CN spatial operator for the interleaved tangential pair (2n x 2n).

    Node 0 uses the ghost-node elimination of the boundary condition
    -(d/dz + |xi|) omega + Q omega = g/nu, which contributes the coupling
    (2/h) P/|xi| at the boundary row and a (2/h) g source handled separately;
    the far node is pinned (homogeneous Dirichlet).
    """
    n = grid.n
    h = grid.h
    lap = sp.diags([np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)],
                   [-1, 0, 1], format="lil", dtype=complex) / h**2
    lap[0, 1] = 2.0 / h**2
    lap[n - 1, :] = 0.0
    A = sp.kron(sp.eye(2), nu * (lap - mode.norm**2 * sp.eye(n))).tolil()
    A[n - 1, :] = 0.0
    A[2 * n - 1, :] = 0.0
    if not mode.is_zero:
        C = nu * (2.0 / h) * projection_matrix(mode) / mode.norm
        for a in range(2):
            for b in range(2):
                A[a * n, b * n] += C[a, b]
    return A.tocsc()


def _dirichlet_operator(grid: HalfLineGrid, nu: float, mode: FourierMode):
    n = grid.n
    h = grid.h
    lap = sp.diags([np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)],
                   [-1, 0, 1], format="lil", dtype=complex) / h**2
    lap[0, :] = 0.0
    lap[n - 1, :] = 0.0
    A = nu * (lap - mode.norm**2 * sp.eye(n)).tolil()
    A[0, 0] = 0.0
    A[n - 1, n - 1] = 0.0
    return A.tocsc()


def crank_nicolson_oracle(problem: StokesProblem, dt: float,
                          grid: HalfLineGrid | None = None,
                          snapshot_times=None) -> Trajectory:
    """Second-order finite-difference solve of the per-mode system.

    The scheme is unconditionally stable; a StabilityWarning is emitted when
    nu dt / h^2 is large enough that the requested accuracy is unlikely.
    """
    if grid is None:
        grid = problem.omega0.grid
    if not grid.is_uniform:
        raise IncompatibleData("the finite-difference oracle needs a uniform grid")
    nu, mode = problem.nu, problem.mode
    n = grid.n
    h = grid.h
    if nu * dt / h**2 > 200.0:
        warnings.warn("nu dt / h^2 is very large; Crank-Nicolson accuracy degrades",
                      StabilityWarning, stacklevel=2)
    if snapshot_times is None:
        snapshot_times = [problem.t_final]
    snapshot_times = np.asarray(sorted(set(float(t) for t in snapshot_times)))
    nsteps = int(round(problem.t_final / dt))
    dt = problem.t_final / nsteps
    snap_steps = {int(round(t / dt)): t for t in snapshot_times if t > 0}

    A_t = _tangential_operator(grid, nu, mode)
    A_d = _dirichlet_operator(grid, nu, mode)
    I2n = sp.eye(2 * n, format="csc")
    In = sp.eye(n, format="csc")
    lu_t = splu((I2n - 0.5 * dt * A_t).tocsc())
    lu_d = splu((In - 0.5 * dt * A_d).tocsc())
    M_t = (I2n + 0.5 * dt * A_t).tocsc()
    M_d = (In + 0.5 * dt * A_d).tocsc()

    def source(t):
        src = np.zeros(2 * n, dtype=complex)
        f = problem.force_at(t)
        src[:n] = f[0]
        src[n:] = f[1]
        g = problem.g_at(t)
        src[0] += (2.0 / h) * g[0]
        src[n] += (2.0 / h) * g[1]
        src[n - 1] = 0.0
        src[2 * n - 1] = 0.0
        return src, f[2]

    w = np.concatenate([problem.omega0.values[0], problem.omega0.values[1]])
    w3 = problem.omega0.values[2].copy()
    w3[0] = 0.0
    w[n - 1] = w[2 * n - 1] = w3[-1] = 0.0

    times = [0.0]
    states = [ModeField(grid, np.array([w[:n], w[n:], w3]))]
    s_prev, f3_prev = source(0.0)
    for k in range(1, nsteps + 1):
        t_new = k * dt
        s_new, f3_new = source(t_new)
        w = lu_t.solve(M_t @ w + 0.5 * dt * (s_prev + s_new))
        rhs3 = M_d @ w3 + 0.5 * dt * (f3_prev + f3_new)
        rhs3[0] = rhs3[-1] = 0.0
        w3 = lu_d.solve(rhs3)
        s_prev, f3_prev = s_new, f3_new
        if k in snap_steps:
            times.append(snap_steps[k])
            states.append(ModeField(grid, np.array([w[:n], w[n:], w3])))
    return Trajectory(times=np.asarray(times), states=states)


def finite_difference_resolvent_general(f: ModeField, point: SpectralPoint,
                                        D: BoundaryOperatorD) -> np.ndarray:
    """Stationary finite-difference solve of (lambda - nu Delta_xi) u = f
    with the general boundary condition du/dz(0) + D u(0) = 0 (ghost node).

    Independent oracle for ``resolvent_apply_general``; returns node values (2, n).
    """
    grid = f.grid
    n, h = grid.n, grid.h
    nu, lam = point.nu, point.lam
    lap = sp.diags([np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)],
                   [-1, 0, 1], format="lil", dtype=complex) / h**2
    lap[0, 1] = 2.0 / h**2
    lap[n - 1, :] = 0.0
    A = sp.kron(sp.eye(2), lam * sp.eye(n) - nu * (lap - point.mode.norm**2 * sp.eye(n))).tolil()
    # ghost elimination u_{-1} = u_1 + 2 h D u_0 adds -nu (2/h) D at the corner
    Dm = D.matrix
    for a in range(2):
        for b in range(2):
            A[a * n, b * n] -= nu * (2.0 / h) * Dm[a, b]
        A[a * n + n - 1, :] = 0.0
        A[a * n + n - 1, a * n + n - 1] = 1.0
    rhs = np.concatenate([f.values[0], f.values[1]]).astype(complex)
    rhs[n - 1] = rhs[2 * n - 1] = 0.0
    u = splu(A.tocsc()).solve(rhs)
    return np.array([u[:n], u[n:]])


# ---------------------------------------------------------------------------
# demonstrations and assembly


def uniqueness_demo(mode: FourierMode, nu: float, perturbation: float,
                    grid: HalfLineGrid | None = None, t_final: float = 1.0,
                    dt: float = 1e-3, seed: int = 0) -> dict:
    """Evolve the homogeneous system from noise-scale data.

    Dissipativity forces the norm to stay at the noise scale (uniqueness), and
    the xi . omega_tau component obeys a decoupled Neumann heat equation, so it
    cannot be excited beyond its initial size.
    """
    if grid is None:
        grid = HalfLineGrid.uniform(20.0, 513)
    rng = np.random.default_rng(seed)
    vals = perturbation * (rng.normal(size=(3, grid.n))
                           + 1j * rng.normal(size=(3, grid.n)))
    vals[:, -1] = 0.0
    vals[2, 0] = 0.0
    problem = StokesProblem(mode=mode, nu=nu, omega0=ModeField(grid, vals),
                            t_final=t_final)
    snaps = np.linspace(0.0, t_final, 6)[1:]
    traj = crank_nicolson_oracle(problem, dt, snapshot_times=snaps)
    norms = [st.norm_l2() for st in traj.states]
    xi_vec = mode.as_array()
    xi_dot = [float(np.max(np.abs(xi_vec @ st.values[:2]))) for st in traj.states]
    return {"times": traj.times.tolist(), "norms": norms,
            "xi_dot_max": xi_dot, "perturbation": perturbation, "seed": seed,
            "monotone": bool(np.all(np.diff(norms) <= 1e-10 * max(norms[0], 1e-300)))}


def assemble_3d(mode_states: dict, x_points) -> np.ndarray:
    """Sum per-mode states over a conjugate-symmetric mode set at tangential points.

    ``mode_states`` maps FourierMode -> node values (ncomp, n); ``x_points`` is
    an (npts, 2) array of tangential sample locations.  The result
    (npts, ncomp, n) is asserted real and returned as a float array.
    """
    x_points = np.atleast_2d(np.asarray(x_points, dtype=float))
    out = None
    for mode, vals in mode_states.items():
        conj_mode = mode.conjugate()
        if conj_mode not in mode_states:
            raise AsymmetricModeSet(f"mode {mode} present without {conj_mode}")
        if not np.allclose(mode_states[conj_mode], np.conj(vals), rtol=1e-10, atol=1e-12):
            raise AsymmetricModeSet(f"data at {conj_mode} is not the conjugate of {mode}")
        phase = np.exp(1j * (x_points @ mode.as_array()))
        term = phase[:, None, None] * np.asarray(vals, dtype=complex)[None, :, :]
        out = term if out is None else out + term
    if out is None:
        raise IncompatibleData("empty mode set")
    scale = np.max(np.abs(out))
    if scale > 0 and np.max(np.abs(out.imag)) > 1e-10 * scale:
        raise AsymmetricModeSet("assembled field has a nonreal residue")
    return out.real
