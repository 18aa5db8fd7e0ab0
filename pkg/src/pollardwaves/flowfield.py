"""Evaluation of the explicit Lagrangian wave solution.

A particle with label (q, r, s) sits at

    x = q - b e^(-m s) sin(theta),
    y = r - d e^(-m s) cos(theta),      theta = k (q - c t),
    z = s - a e^(-m s) cos(theta),

so every quantity below is a closed form in the label, the time and the
solved :class:`~pollardwaves.dispersion.WaveParameters`.  Labels are not
range-checked here: the latitudinal half-width r0 of the strip and the
vertical extent [s0, s_plus] are modelling choices enforced upstream, and
every formula is well defined wherever the flow map stays a local
diffeomorphism.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dispersion import WaveParameters
from .errors import DiffeomorphismError, InversionError
from .geo import Site, Stratification

_INVERT_TOL = 1e-12   # [m] Newton residual target for map inversion
_INVERT_MAX_ITER = 50


@dataclass(frozen=True)
class LagrangianLabel:
    """Particle label: longitudinal q, latitudinal r, vertical s (all m)."""

    q: float
    r: float
    s: float


@dataclass(frozen=True)
class FlowSample:
    """All field quantities at one label and time."""

    t: float
    label: LagrangianLabel
    position: tuple      # (x, y, z) [m]
    velocity: tuple      # (u, v, w) [m/s]
    acceleration: tuple  # (Du/Dt, Dv/Dt, Dw/Dt) [m/s^2]
    pressure: float      # [Pa]
    vorticity: tuple     # (w1, w2, w3) [1/s]
    jacobian_det: float


@dataclass(frozen=True)
class SurfaceSample:
    """Point of a parametrized material sheet (fixed s, r, t)."""

    q: float
    position: tuple


def phase(params: WaveParameters, q: float, t: float) -> float:
    """Travelling-wave phase theta = k (q - c t)."""
    return params.k * (q - params.c * t)


def position(params: WaveParameters, label: LagrangianLabel, t: float):
    """Particle position (x, y, z)."""
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    return (label.q - params.b * e * math.sin(th),
            label.r - params.d * e * math.cos(th),
            label.s - params.a * e * math.cos(th))


def velocity(params: WaveParameters, label: LagrangianLabel, t: float):
    """Particle velocity (u, v, w)."""
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    kc = params.k * params.c
    return (kc * params.b * e * math.cos(th),
            -kc * params.d * e * math.sin(th),
            -kc * params.a * e * math.sin(th))


def acceleration(params: WaveParameters, label: LagrangianLabel, t: float):
    """Particle acceleration (Du/Dt, Dv/Dt, Dw/Dt)."""
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    kc2 = (params.k * params.c) ** 2
    return (kc2 * params.b * e * math.sin(th),
            kc2 * params.d * e * math.cos(th),
            kc2 * params.a * e * math.cos(th))


def label_jacobian(params: WaveParameters, label: LagrangianLabel,
                   t: float) -> np.ndarray:
    """3x3 matrix with rows d(x,y,z)/dq, d(x,y,z)/dr, d(x,y,z)/ds."""
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    k, m = params.k, params.m
    a, b, d = params.a, params.b, params.d
    ct, st = math.cos(th), math.sin(th)
    return np.array([
        [1.0 - k * b * e * ct, k * d * e * st, k * a * e * st],
        [0.0, 1.0, 0.0],
        [m * b * e * st, m * d * e * ct, 1.0 + m * a * e * ct],
    ])


def jacobian(params: WaveParameters, label: LagrangianLabel, t: float):
    """Label Jacobian and its determinant.

    The determinant is 1 + (m a - k b) e^(-m s) cos(theta) - k m a b e^(-2 m s),
    hence time independent once m a = k b holds.  A non-positive value means
    the flow map degenerated (unreachable for gated parameter sets).
    """
    mat = label_jacobian(params, label, t)
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    det = (1.0
           + (params.m * params.a - params.k * params.b) * e * math.cos(th)
           - params.k * params.m * params.a * params.b * e * e)
    if not det > 0.0:
        raise DiffeomorphismError(
            f"flow map is singular at s={label.s!r} (det={det!r})")
    return mat, det


def velocity_label_gradient(params: WaveParameters, label: LagrangianLabel,
                            t: float) -> np.ndarray:
    """3x3 matrix with rows d(u,v,w)/dq, d(u,v,w)/dr, d(u,v,w)/ds."""
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    k, m, c = params.k, params.m, params.c
    a, b, d = params.a, params.b, params.d
    ct, st = math.cos(th), math.sin(th)
    return np.array([
        [-k**2 * c * b * e * st, -k**2 * c * d * e * ct, -k**2 * c * a * e * ct],
        [0.0, 0.0, 0.0],
        [-m * k * c * b * e * ct, m * k * c * d * e * st, m * k * c * a * e * st],
    ])


def dynamic_pressure(params: WaveParameters, strat: Stratification,
                     label: LagrangianLabel, t: float) -> float:
    """Wave part of the pressure: P + rho0 g s - P0_tilde [Pa].

    Evaluated without the hydrostatic column term, so differences in q or r
    do not cancel against rho0 g s.
    """
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    e2 = e * e
    k, c = params.k, params.c
    a, b, d = params.a, params.b, params.d
    f, fh = params.f, params.f_hat
    return -strat.rho0 * (
        -0.5 * k**2 * c**2 * b**2 * e2
        + 0.5 * fh * k * c * a * b * e2
        - 0.5 * f * k * c * b * d * e2
        + (c * a * fh - c * d * f - k * c**2 * b - a * strat.g) * e * math.cos(th))


def pressure(params: WaveParameters, strat: Stratification,
             label: LagrangianLabel, t: float) -> float:
    """Pressure at a label [Pa].

    The quadratic cos^2 term of the raw expression carries the coefficient
    a^2 + d^2 - b^2, identically zero for a solved set, and is dropped; the
    gauge constant P0_tilde pins P = P0 - rho_plus g z on the thermocline.
    """
    return (dynamic_pressure(params, strat, label, t)
            - strat.rho0 * strat.g * label.s + params.P0_tilde)


def pressure_label_gradient(params: WaveParameters, strat: Stratification,
                            label: LagrangianLabel, t: float):
    """Analytic gradient (P_q, P_r, P_s) of the scalar pressure.

    P_r vanishes identically: the pressure carries no r dependence.
    """
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    e2 = e * e
    k, m, c = params.k, params.m, params.c
    a, b, d = params.a, params.b, params.d
    f, fh = params.f, params.f_hat
    g = strat.g
    cos_coeff = c * a * fh - c * d * f - k * c**2 * b - a * g
    p_q = -strat.rho0 * (-k * cos_coeff * e * math.sin(th))
    p_s = -strat.rho0 * (m * k**2 * c**2 * b**2 * e2
                         - m * fh * k * c * a * b * e2
                         + m * f * k * c * b * d * e2
                         - m * cos_coeff * e * math.cos(th)
                         + g)
    return (p_q, 0.0, p_s)


def pressure_gradient(params: WaveParameters, strat: Stratification,
                      label: LagrangianLabel, t: float):
    """Eulerian pressure gradient (P_x, P_y, P_z) at the particle.

    Transports the analytic label gradient through the label Jacobian:
    (P_q, P_r, P_s) = J_label . (P_x, P_y, P_z).
    """
    mat, _ = jacobian(params, label, t)
    grad_q = np.array(pressure_label_gradient(params, strat, label, t))
    return tuple(np.linalg.solve(mat, grad_q))


def vorticity(params: WaveParameters, site: Site, label: LagrangianLabel,
              t: float):
    """Vorticity (w_y - v_z, u_z - w_x, v_x - u_y) at a label.

    Closed form with prefactor 1/(1 - m^2 a^2 e^(-2 m s)).  The third
    component is f m a (cos(theta) + m a e^(-m s)) e^(-m s) times the
    prefactor, the sign of the inner product term following from the
    inverse-Jacobian construction.
    """
    th = phase(params, label.q, t)
    e = math.exp(-params.m * label.s)
    k, m, c, a = params.k, params.m, params.c, params.a
    f = site.f
    denom = 1.0 - m**2 * a**2 * e * e
    if not denom > 0.0:
        raise DiffeomorphismError(
            f"vorticity prefactor degenerate at s={label.s!r} "
            f"(1 - m^2 a^2 e^(-2 m s) = {denom!r})")
    w1 = (m**2 * a * f / k) * e * math.sin(th)
    w2 = (-c * (m**2 - k**2) * a * e * math.cos(th)
          + c * m * a**2 * (m**2 + k**2) * e * e)
    w3 = f * m * a * (math.cos(th) + m * a * e) * e
    return (w1 / denom, w2 / denom, w3 / denom)


def sample_flow(params: WaveParameters, site: Site, strat: Stratification,
                label: LagrangianLabel, t: float) -> FlowSample:
    """Evaluate every field quantity at one label and time."""
    _, det = jacobian(params, label, t)
    return FlowSample(
        t=t,
        label=label,
        position=position(params, label, t),
        velocity=velocity(params, label, t),
        acceleration=acceleration(params, label, t),
        pressure=pressure(params, strat, label, t),
        vorticity=vorticity(params, site, label, t),
        jacobian_det=det,
    )


def trajectory(params: WaveParameters, site: Site, strat: Stratification,
               label: LagrangianLabel, t_span, n_samples: int):
    """Particle path sampled uniformly in time over t_span = (t0, t1).

    The positions trace a circle of radius b e^(-m s) centred at
    (q, r, s), lying in the plane spanned by the longitudinal direction
    and (0, -d, -a)/b.
    """
    if n_samples < 2:
        raise ValueError("trajectory needs at least 2 samples")
    t0, t1 = t_span
    return [sample_flow(params, site, strat, label, float(t))
            for t in np.linspace(t0, t1, n_samples)]


def profile(params: WaveParameters, s: float, r: float, t: float,
            q_span, n_samples: int):
    """Wave profile: the material sheet of labels (q, r, s) at fixed (s, r, t).

    For s = s0 this is the thermocline; sampling is uniform in q.
    """
    if n_samples < 2:
        raise ValueError("profile needs at least 2 samples")
    q0, q1 = q_span
    out = []
    for q in np.linspace(q0, q1, n_samples):
        lab = LagrangianLabel(q=float(q), r=r, s=s)
        out.append(SurfaceSample(q=float(q), position=position(params, lab, t)))
    return out


def invert_map(params: WaveParameters, x_target, t: float,
               guess: LagrangianLabel | None = None,
               tol: float = _INVERT_TOL,
               max_iter: int = _INVERT_MAX_ITER) -> LagrangianLabel:
    """Label whose position at time t equals x_target, by Newton iteration.

    The default initial guess takes the target coordinates as labels, which
    lies in the convergence basin throughout the gated domain.
    """
    target = np.asarray(x_target, dtype=float)
    lab = guess or LagrangianLabel(q=float(target[0]), r=float(target[1]),
                                   s=float(target[2]))
    current = np.array([lab.q, lab.r, lab.s], dtype=float)
    for _ in range(max_iter):
        here = LagrangianLabel(q=float(current[0]), r=float(current[1]),
                               s=float(current[2]))
        residual = np.array(position(params, here, t)) - target
        if np.linalg.norm(residual) <= tol:
            return here
        # d(position)/d(label) is the transpose of the row-layout Jacobian
        mat = label_jacobian(params, here, t).T
        current = current - np.linalg.solve(mat, residual)
    raise InversionError(
        f"map inversion did not reach |residual| <= {tol!r} in "
        f"{max_iter} iterations (target {tuple(target)!r})")


def eulerian_velocity(params: WaveParameters, x_target, t: float,
                      guess: LagrangianLabel | None = None):
    """Velocity at a fixed spatial point, through numeric map inversion."""
    lab = invert_map(params, x_target, t, guess=guess)
    return velocity(params, lab, t)


def sheet_label_q(params: WaveParameters, s: float, x: float, t: float,
                  tol: float = 1e-13, max_iter: int = 60) -> float:
    """Label q on the sheet of constant s whose position has abscissa x.

    Solves q - b e^(-m s) sin(k (q - c t)) = x by Newton; the derivative
    1 - k b e^(-m s) cos(theta) is positive under the amplitude gate, so the
    scalar map is monotone.
    """
    e = math.exp(-params.m * s)
    q = x
    for _ in range(max_iter):
        th = params.k * (q - params.c * t)
        residual = q - params.b * e * math.sin(th) - x
        if abs(residual) <= tol * max(1.0, abs(x)):
            return q
        q -= residual / (1.0 - params.k * params.b * e * math.cos(th))
    raise InversionError(
        f"sheet abscissa inversion did not converge for x={x!r}, s={s!r}")


def sheet_elevation(params: WaveParameters, s: float, x: float,
                    t: float) -> float:
    """Eulerian elevation z of the material sheet of labels with vertical s.

    Independent of y: the sheet is a cylinder along the latitudinal
    direction.  For s = s0 this is the thermocline elevation.
    """
    q = sheet_label_q(params, s, x, t)
    e = math.exp(-params.m * s)
    return s - params.a * e * math.cos(params.k * (q - params.c * t))
