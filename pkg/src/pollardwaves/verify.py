"""Numerical verification that the constructed fields solve the governing equations.

Every check compares independent evaluation routes:

* momentum balance: closed-form acceleration and Coriolis terms against the
  Eulerian gradient of the closed-form scalar pressure (transported through
  the label Jacobian) -- an identity check at near-machine tolerance;
* pressure consistency: finite differences of the scalar pressure against
  the chain-rule transport of the momentum-equation gradient;
* boundary conditions: the dynamic condition pointwise and the kinematic
  condition by finite differences of the Eulerian sheet elevation;
* incompressibility: time invariance of the Jacobian determinant and the
  finite-difference Eulerian divergence through map inversion;
* vorticity: the closed form against the inverse-Jacobian matrix product
  and against a finite-difference Eulerian curl.

Identity checks and finite-difference checks carry separate tolerances so a
failure distinguishes roundoff from truncation.  All random sampling is
seeded; reports are deterministic.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .dispersion import WaveParameters
from .flowfield import (
    LagrangianLabel,
    acceleration,
    dynamic_pressure,
    eulerian_velocity,
    jacobian,
    label_jacobian,
    position,
    pressure,
    pressure_gradient,
    sheet_elevation,
    velocity,
    velocity_label_gradient,
    vorticity,
)
from .geo import Site, Stratification


@dataclass(frozen=True)
class VerifyConfig:
    """Sampling grids, random seed and tolerances for the checks."""

    n_theta: int = 16
    n_s: int = 16
    n_time: int = 5
    n_random: int = 50
    seed: int = 0
    tol_identity: float = 1e-12      # closed-form identities, relative
    tol_fd: float = 1e-6             # finite-difference checks, relative
    tol_jacobian_time: float = 1e-14  # |J(t) - J(0)|
    tol_curl: float = 1e-5           # FD curl vs analytic vorticity, relative
    tol_dynamic: float = 1e-9        # dynamic condition, x |P0|
    tol_kinematic: float = 1e-8      # kinematic condition [m/s]
    fd_space: float = 1e-4           # spatial FD step [m]
    fd_time_factor: float = 1e-3     # temporal FD step, / (k c)


@dataclass(frozen=True)
class CheckComponent:
    """One residual family inside a check, with its own tolerance."""

    name: str
    max_residual: float
    tolerance: float
    worst_sample: dict


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check; headline numbers belong to the worst family."""

    check_name: str
    max_residual: float
    tolerance: float
    n_samples: int
    passed: bool
    worst_sample: dict
    components: tuple = field(default_factory=tuple)


def _sample_dict(label: LagrangianLabel, t: float) -> dict:
    return {"q": label.q, "r": label.r, "s": label.s, "t": t}


def _component(name, residuals, tolerance):
    """Fold a list of (residual, label, t) into a CheckComponent."""
    worst = max(residuals, key=lambda item: item[0])
    return CheckComponent(name=name, max_residual=worst[0],
                          tolerance=tolerance,
                          worst_sample=_sample_dict(worst[1], worst[2]))


def _report(check_name, n_samples, components):
    worst = max(components, key=lambda c: c.max_residual / c.tolerance)
    return VerificationReport(
        check_name=check_name,
        max_residual=worst.max_residual,
        tolerance=worst.tolerance,
        n_samples=n_samples,
        passed=all(c.max_residual <= c.tolerance for c in components),
        worst_sample=worst.worst_sample,
        components=tuple(components),
    )


def wave_period(params: WaveParameters) -> float:
    """Time period 2 pi / (k |c|) of the travelling wave."""
    return 2.0 * math.pi / (params.k * abs(params.c))


def build_grid(params: WaveParameters, config: VerifyConfig):
    """Deterministic (label, t) samples: a phase/height/time lattice plus
    seeded random interior points."""
    period = wave_period(params)
    qs = np.linspace(0.0, params.L, config.n_theta, endpoint=False)
    ss = np.linspace(params.s0, params.s_plus, config.n_s)
    ts = np.linspace(0.0, period, config.n_time, endpoint=False)
    grid = [(LagrangianLabel(q=float(q), r=0.0, s=float(s)), float(t))
            for q in qs for s in ss for t in ts]
    rng = np.random.default_rng(config.seed)
    for _ in range(config.n_random):
        grid.append((LagrangianLabel(
            q=float(rng.uniform(0.0, params.L)),
            r=float(rng.uniform(-10.0, 10.0)),
            s=float(rng.uniform(params.s0, params.s_plus))),
            float(rng.uniform(0.0, period))))
    return grid


def build_sheet_grid(params: WaveParameters, config: VerifyConfig):
    """Deterministic (label, t) samples on the thermocline sheet s = s0."""
    period = wave_period(params)
    qs = np.linspace(0.0, params.L, config.n_theta, endpoint=False)
    ts = np.linspace(0.0, period, config.n_time, endpoint=False)
    grid = [(LagrangianLabel(q=float(q), r=0.0, s=params.s0), float(t))
            for q in qs for t in ts]
    rng = np.random.default_rng(config.seed + 1)
    for _ in range(config.n_random):
        grid.append((LagrangianLabel(
            q=float(rng.uniform(0.0, params.L)),
            r=float(rng.uniform(-10.0, 10.0)),
            s=params.s0), float(rng.uniform(0.0, period))))
    return grid


def check_euler(params: WaveParameters, site: Site, strat: Stratification,
                grid=None, config: VerifyConfig | None = None) -> VerificationReport:
    """Residuals of the three momentum equations, normalized by g.

    The pressure gradient is the Eulerian gradient of the closed-form
    scalar pressure; for a consistent parameter set all three residuals are
    pure roundoff.
    """
    config = config or VerifyConfig()
    grid = grid if grid is not None else build_grid(params, config)
    f, fh, g = site.f, site.f_hat, strat.g
    residuals = []
    for label, t in grid:
        du, dv, dw = acceleration(params, label, t)
        u, v, w = velocity(params, label, t)
        px, py, pz = pressure_gradient(params, strat, label, t)
        r1 = du + fh * w - f * v + px / strat.rho0
        r2 = dv + f * u + py / strat.rho0
        r3 = dw - fh * u + pz / strat.rho0 + g
        residuals.append((max(abs(r1), abs(r2), abs(r3)) / g, label, t))
    comp = _component("momentum_residual", residuals, config.tol_identity)
    return _report("euler", len(grid), [comp])


def _momentum_pressure_gradient(params, strat, label, t):
    """(P_x, P_y, P_z) demanded by the momentum equations (closed forms)."""
    du, dv, dw = acceleration(params, label, t)
    u, v, w = velocity(params, label, t)
    f, fh = params.f, params.f_hat
    return np.array([
        -strat.rho0 * (du + fh * w - f * v),
        -strat.rho0 * (dv + f * u),
        -strat.rho0 * (dw - fh * u + strat.g),
    ])


def check_pressure_consistency(params: WaveParameters, strat: Stratification,
                               grid=None,
                               config: VerifyConfig | None = None) -> VerificationReport:
    """Finite-difference gradients of the scalar pressure against the
    chain-rule transport of the momentum-equation gradient.

    Also verifies that the pressure is independent of the latitudinal label
    and that the transported gradient has symmetric mixed partials, which is
    exactly the compatibility content of the construction.
    """
    config = config or VerifyConfig()
    grid = grid if grid is not None else build_grid(params, config)
    h = config.fd_space
    floor = config.tol_fd * strat.rho0 * strat.g  # [Pa/m] noise floor
    grad_res, mixed_res, rfree_res = [], [], []
    for label, t in grid:
        transported = label_jacobian(params, label, t) @ \
            _momentum_pressure_gradient(params, strat, label, t)
        # q and r differences act on the wave part only: the hydrostatic
        # column term is constant in both and would otherwise dominate the
        # cancellation error
        fd = np.array([
            (dynamic_pressure(params, strat, replace(label, q=label.q + h), t)
             - dynamic_pressure(params, strat, replace(label, q=label.q - h), t)) / (2 * h),
            (dynamic_pressure(params, strat, replace(label, r=label.r + h), t)
             - dynamic_pressure(params, strat, replace(label, r=label.r - h), t)) / (2 * h),
            (pressure(params, strat, replace(label, s=label.s + h), t)
             - pressure(params, strat, replace(label, s=label.s - h), t)) / (2 * h),
        ])
        err = max(abs(fd[i] - transported[i])
                  / max(abs(fd[i]), abs(transported[i]), floor)
                  for i in range(3))
        grad_res.append((err, label, t))
        # symmetry of the transported mixed partials d2P/dqds vs d2P/dsdq
        pq_s = (_transported_component(params, strat,
                                       replace(label, s=label.s + h), t, 0)
                - _transported_component(params, strat,
                                         replace(label, s=label.s - h), t, 0)) / (2 * h)
        ps_q = (_transported_component(params, strat,
                                       replace(label, q=label.q + h), t, 2)
                - _transported_component(params, strat,
                                         replace(label, q=label.q - h), t, 2)) / (2 * h)
        mixed = abs(pq_s - ps_q) / max(abs(pq_s), abs(ps_q), floor)
        mixed_res.append((mixed, label, t))
        # r-independence of the scalar pressure
        p0 = pressure(params, strat, label, t)
        p1 = pressure(params, strat, replace(label, r=label.r + 7.5), t)
        rfree_res.append((abs(p1 - p0) / max(abs(p0), abs(p1)), label, t))
    comps = [
        _component("gradient_transport", grad_res, config.tol_fd),
        _component("mixed_partials", mixed_res, config.tol_fd),
        _component("r_independence", rfree_res, config.tol_identity),
    ]
    return _report("pressure_consistency", len(grid), comps)


def _transported_component(params, strat, label, t, index):
    transported = label_jacobian(params, label, t) @ \
        _momentum_pressure_gradient(params, strat, label, t)
    return transported[index]


def check_boundary(params: WaveParameters, strat: Stratification,
                   grid=None, config: VerifyConfig | None = None) -> VerificationReport:
    """Dynamic and kinematic conditions on the thermocline sheet s = s0.

    Dynamic: P = P0 - rho_plus g z pointwise, within tol_dynamic * |P0|.
    Kinematic: w = eta_t + u eta_x + v eta_y with sheet derivatives by
    central differences (eta is independent of y), within tol_kinematic.
    """
    config = config or VerifyConfig()
    grid = grid if grid is not None else build_sheet_grid(params, config)
    ht = config.fd_time_factor / (params.k * abs(params.c))
    hx = config.fd_space
    dyn_res, kin_res = [], []
    for label, t in grid:
        x, _, z = position(params, label, t)
        p = pressure(params, strat, label, t)
        dyn = abs(p - (params.P0 - strat.rho_plus * strat.g * z)) / abs(params.P0)
        dyn_res.append((dyn, label, t))
        u, v, w = velocity(params, label, t)
        eta_t = (sheet_elevation(params, params.s0, x, t + ht)
                 - sheet_elevation(params, params.s0, x, t - ht)) / (2 * ht)
        eta_x = (sheet_elevation(params, params.s0, x + hx, t)
                 - sheet_elevation(params, params.s0, x - hx, t)) / (2 * hx)
        eta_y = 0.0  # the sheet is y-invariant
        kin_res.append((abs(w - (eta_t + u * eta_x + v * eta_y)), label, t))
    comps = [
        _component("dynamic_condition", dyn_res, config.tol_dynamic),
        _component("kinematic_condition", kin_res, config.tol_kinematic),
    ]
    return _report("boundary", len(grid), comps)


def check_incompressibility(params: WaveParameters, grid=None, t_grid=None,
                            config: VerifyConfig | None = None) -> VerificationReport:
    """Volume preservation: J constant in time and FD Eulerian divergence.

    The divergence of the velocity recovered through map inversion is
    compared against zero at the scale k |c| (tolerance tol_fd * k |c|).
    """
    config = config or VerifyConfig()
    grid = grid if grid is not None else build_grid(params, config)
    if t_grid is None:
        t_grid = np.linspace(0.0, wave_period(params), 100)
    jac_res = []
    labels = dict.fromkeys(label for label, _ in grid)  # dedupe, keep order
    for label in labels:
        _, det0 = jacobian(params, label, float(t_grid[0]))
        worst = 0.0
        for t in t_grid[1:]:
            _, det = jacobian(params, label, float(t))
            worst = max(worst, abs(det - det0))
        jac_res.append((worst, label, float(t_grid[0])))
    h = config.fd_space
    speed_scale = params.k * abs(params.c)
    div_res = []
    rng = np.random.default_rng(config.seed + 2)
    for _ in range(config.n_random):
        label = LagrangianLabel(q=float(rng.uniform(0.0, params.L)),
                                r=float(rng.uniform(-10.0, 10.0)),
                                s=float(rng.uniform(params.s0, params.s_plus)))
        t = float(rng.uniform(0.0, wave_period(params)))
        base = np.array(position(params, label, t))
        div = 0.0
        for axis in range(3):
            step = np.zeros(3)
            step[axis] = h
            vel_p = eulerian_velocity(params, base + step, t)[axis]
            vel_m = eulerian_velocity(params, base - step, t)[axis]
            div += (vel_p - vel_m) / (2 * h)
        div_res.append((abs(div) / speed_scale, label, t))
    comps = [
        _component("jacobian_time_invariance", jac_res, config.tol_jacobian_time),
        _component("eulerian_divergence", div_res, config.tol_fd),
    ]
    return _report("incompressibility", len(jac_res) + len(div_res), comps)


def check_vorticity(params: WaveParameters, site: Site, grid=None,
                    config: VerifyConfig | None = None) -> VerificationReport:
    """Analytic vorticity against two independent constructions.

    (i) the inverse-Jacobian matrix product (antisymmetrized velocity
    gradient), an identity at tol_identity; (ii) a finite-difference curl
    of the Eulerian velocity through map inversion, at tol_curl.
    """
    config = config or VerifyConfig()
    grid = grid if grid is not None else build_grid(params, config)
    # deep in the layer the vorticity decays like e^(-2 m s) while matrix
    # roundoff does not; a tiny fraction of the advective scale k|c| keeps
    # the relative comparison meaningful there
    scale_floor = 1e-6 * params.k * abs(params.c)
    mp_res = []
    for label, t in grid:
        omega = np.array(vorticity(params, site, label, t))
        grad_t = np.linalg.solve(label_jacobian(params, label, t),
                                 velocity_label_gradient(params, label, t))
        gv = grad_t.T  # gv[i][j] = d u_i / d x_j
        omega_mp = np.array([gv[2][1] - gv[1][2],
                             gv[0][2] - gv[2][0],
                             gv[1][0] - gv[0][1]])
        scale = max(np.max(np.abs(omega)), np.max(np.abs(omega_mp)), scale_floor)
        err = np.max(np.abs(omega - omega_mp)) / scale
        mp_res.append((err, label, t))
    h = config.fd_space
    curl_res = []
    rng = np.random.default_rng(config.seed + 3)
    for _ in range(config.n_random):
        label = LagrangianLabel(q=float(rng.uniform(0.0, params.L)),
                                r=float(rng.uniform(-10.0, 10.0)),
                                s=float(rng.uniform(params.s0, params.s_plus)))
        t = float(rng.uniform(0.0, wave_period(params)))
        base = np.array(position(params, label, t))
        grad = np.zeros((3, 3))  # grad[i][j] = d u_i / d x_j
        for axis in range(3):
            step = np.zeros(3)
            step[axis] = h
            vel_p = np.array(eulerian_velocity(params, base + step, t))
            vel_m = np.array(eulerian_velocity(params, base - step, t))
            grad[:, axis] = (vel_p - vel_m) / (2 * h)
        curl = np.array([grad[2][1] - grad[1][2],
                         grad[0][2] - grad[2][0],
                         grad[1][0] - grad[0][1]])
        omega = np.array(vorticity(params, site, label, t))
        scale = max(np.max(np.abs(omega)), np.max(np.abs(curl)), scale_floor)
        err = np.max(np.abs(omega - curl)) / scale
        curl_res.append((err, label, t))
    comps = [
        _component("matrix_product", mp_res, config.tol_identity),
        _component("fd_curl", curl_res, config.tol_curl),
    ]
    return _report("vorticity", len(grid) + config.n_random, comps)


def run_all(params: WaveParameters, site: Site, strat: Stratification,
            config: VerifyConfig | None = None):
    """Execute every check; reports are returned sorted by check name.

    Failures are collected, never short-circuited; output is deterministic
    for a fixed config (including its seed).
    """
    config = config or VerifyConfig()
    reports = [
        check_euler(params, site, strat, config=config),
        check_pressure_consistency(params, strat, config=config),
        check_boundary(params, strat, config=config),
        check_incompressibility(params, config=config),
        check_vorticity(params, site, config=config),
    ]
    return sorted(reports, key=lambda r: r.check_name)
