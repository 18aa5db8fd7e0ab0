"""Dispersion relation of the rotating internal wave and the solved parameter set.

The dimensional relation c^2 (c^2 k^2 - f^2) = (c f_hat + g_tilde)^2 is
non-dimensionalised with X = c sqrt(k/g_tilde), eps = f / sqrt(g_tilde k),
F = f_hat / f, giving the degree-four polynomial

    P(X) = X^4 - eps^2 (1 + F^2) X^2 - 2 F eps X - 1.

In the mid-latitude regime P has exactly two real roots, one in
(1, 1 + eps F) and one in (-1, -1 + eps F).  Roots are isolated on verified
brackets, refined by bisection and polished with Newton steps; Ferrari's
closed form is available as an independent cross-check.

From a solved phase speed the dependent parameters follow in closed form:

    m^2 = k^4 c^2 / (k^2 c^2 - f^2),   b = m a / k,   d = -f m a / (k^2 c),

with the local-diffeomorphism gate m^2 a^2 e^(-2 m s0) < 1 and the
thermocline/interface pressure constants completing the set.
"""

import math
from dataclasses import dataclass, field

from .errors import (
    AmplitudeBoundError,
    BracketError,
    ConvergenceError,
    EquatorialBranchError,
    EvanescentRegimeError,
    InputError,
    InterfaceOrderingError,
    RegimeError,
    WavenumberError,
)
from .geo import PhysicalConstants, Site, Stratification

# Default gauge: thermocline reference pressure [Pa]
P0_STANDARD = 101325.0

# Relative tolerance for root residuals and closed-form identity checks
IDENTITY_TOL = 1e-12

# Absolute tolerance [m] for the interface bisection
INTERFACE_TOL = 1e-9

_MAX_BRACKET_EXPANSIONS = 10
_MAX_NEWTON_STEPS = 12


@dataclass(frozen=True)
class NondimDispersion:
    """Non-dimensional dispersion polynomial P(X) for one (site, strat, k).

    epsilon = f / sqrt(g_tilde k) and F = f_hat / f; both flip sign in the
    Southern Hemisphere but the product epsilon*F = f_hat / sqrt(g_tilde k)
    stays positive, so the polynomial (and its roots) are hemisphere
    symmetric.  ``coeffs`` holds (X^4, X^3, X^2, X, 1) coefficients.
    """

    epsilon: float
    F: float
    coeffs: tuple = field(init=False)

    def __post_init__(self):
        c2 = -self.epsilon**2 * (1.0 + self.F**2)
        c1 = -2.0 * self.F * self.epsilon
        object.__setattr__(self, "coeffs", (1.0, 0.0, c2, c1, -1.0))

    def evaluate(self, x):
        """P(x); accepts scalars or numpy arrays."""
        c4, c3, c2, c1, c0 = self.coeffs
        return (((c4 * x + c3) * x + c2) * x + c1) * x + c0

    def derivative(self, x):
        """P'(x)."""
        c4, c3, c2, c1, _ = self.coeffs
        return ((4.0 * c4 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1

    @property
    def discriminant(self) -> float:
        """Discriminant of P'(X); strictly negative in the mid-latitude regime."""
        return (128.0 * self.epsilon**6 * (1.0 + self.F**2) ** 3
                - 1728.0 * self.F**2 * self.epsilon**2)


@dataclass(frozen=True)
class DispersionRoots:
    """Both real roots of P and the corresponding dimensional phase speeds."""

    x_plus: float
    x_minus: float
    c_plus: float
    c_minus: float


@dataclass(frozen=True)
class WaveParameters:
    """Complete solved parameter set of the explicit wave.

    Lengths in m, speeds in m/s, pressures in Pa.  The Coriolis parameters
    the set was solved under are carried along (f, f_hat) so that field
    evaluation does not need the Site again.
    """

    a: float        # amplitude parameter
    k: float        # wavenumber
    L: float        # wavelength 2 pi / k
    c: float        # phase speed (signed; positive = eastward branch)
    m: float        # vertical decay rate
    b: float        # longitudinal orbit parameter, b = m a / k
    d: float        # latitudinal orbit parameter, d = -f m a / (k^2 c)
    s_star: float   # validity floor of the label domain (= s0)
    s0: float       # thermocline label
    s_plus: float   # upper interface label
    P0: float       # thermocline pressure constant
    P0_tilde: float  # pressure gauge constant
    beta0: float    # interface pressure constant
    f: float
    f_hat: float


def nondimensionalize(site: Site, strat: Stratification,
                      k: float) -> NondimDispersion:
    """Map (site, strat, k) to the non-dimensional polynomial coefficients.

    Requires k above the 4 Omega^2 / g_tilde threshold and f != 0; on the
    Equator F is undefined and callers are directed to solve_equatorial.
    """
    if site.f == 0.0:
        raise EquatorialBranchError(
            "F = f_hat/f is undefined at f = 0; use solve_equatorial")
    threshold = (site.f**2 + site.f_hat**2) / strat.g_tilde  # 4 Omega^2 / g_tilde
    if not k > threshold:
        raise WavenumberError(
            f"wavenumber k={k!r} must exceed 4*Omega^2/g_tilde={threshold!r}")
    root_gk = math.sqrt(strat.g_tilde * k)
    return NondimDispersion(epsilon=site.f / root_gk, F=site.f_hat / site.f)


def root_brackets(nd: NondimDispersion):
    """Verified sign-change brackets for the two real roots of P.

    Returns ((1, 1 + eps F), (-1, -1 + eps F)) after confirming that P
    changes sign across each interval, expanding an endpoint geometrically
    (up to 10 times) if higher-order terms at large eps spoil the estimate.
    Requires the mid-latitude regime discriminant gate.
    """
    if not nd.discriminant < 0.0:
        raise RegimeError(
            "discriminant of P' is non-negative "
            f"({nd.discriminant!r}); the two-real-root analysis only applies "
            "in the mid-latitude regime")
    w = nd.epsilon * nd.F  # positive on both hemispheres
    positive = _confirm_bracket(nd, 1.0, 1.0 + w)
    negative = _confirm_bracket(nd, -1.0, -1.0 + w)
    return positive, negative


def _confirm_bracket(nd, lo, hi):
    width = hi - lo
    p_lo = nd.evaluate(lo)
    for _ in range(_MAX_BRACKET_EXPANSIONS):
        if p_lo * nd.evaluate(hi) < 0.0:
            return (lo, hi)
        hi = lo + (hi - lo) * 2.0
    raise BracketError(
        f"no sign change of P found starting from ({lo}, {lo + width}) "
        f"after {_MAX_BRACKET_EXPANSIONS} expansions")


def _bisect_newton(nd, lo, hi, tol):
    """Bisection to convergence on a sign-change bracket, then Newton polish."""
    p_lo = nd.evaluate(lo)
    while True:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        p_mid = nd.evaluate(mid)
        if p_mid == 0.0:
            return mid
        if (p_lo < 0.0) == (p_mid < 0.0):
            lo, p_lo = mid, p_mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    best, best_res = x, abs(nd.evaluate(x))
    for _ in range(_MAX_NEWTON_STEPS):
        slope = nd.derivative(x)
        if slope == 0.0:
            break
        x = x - nd.evaluate(x) / slope
        res = abs(nd.evaluate(x))
        if res < best_res:
            best, best_res = x, res
        else:
            break
    if best_res > tol * max(1.0, best**4):
        raise ConvergenceError(
            f"root refinement stalled at X={best!r} with |P(X)|={best_res!r}")
    return best


def solve_dispersion(nd: NondimDispersion, site: Site, strat: Stratification,
                     k: float, tol: float = IDENTITY_TOL) -> DispersionRoots:
    """Both real roots of P with their dimensional phase speeds.

    Each root satisfies |P(X)| <= tol * max(1, |X|^4) and the returned
    speeds satisfy the dimensional pressure-continuity identity
    rho0^2 c^2 (c^2 k^2 - f^2) = (rho0 c f_hat + g (rho_plus - rho0))^2
    to the same relative tolerance.
    """
    scale = math.sqrt(strat.g_tilde / k)
    if nd.epsilon == 0.0:
        # rotationless degenerate limit: P(X) = X^4 - 1, exact roots +-1;
        # the polynomial did not come from the (rotating) site, so the
        # dimensional identity check below does not apply
        return DispersionRoots(x_plus=1.0, x_minus=-1.0,
                               c_plus=scale, c_minus=-scale)
    (lo_p, hi_p), (lo_m, hi_m) = root_brackets(nd)
    x_plus = _bisect_newton(nd, lo_p, hi_p, tol)
    x_minus = _bisect_newton(nd, lo_m, hi_m, tol)
    roots = DispersionRoots(x_plus=x_plus, x_minus=x_minus,
                            c_plus=x_plus * scale, c_minus=x_minus * scale)
    for c in (roots.c_plus, roots.c_minus):
        lhs = strat.rho0**2 * c**2 * (c**2 * k**2 - site.f**2)
        rhs = (strat.rho0 * c * site.f_hat
               + strat.g * (strat.rho_plus - strat.rho0)) ** 2
        if abs(lhs - rhs) > tol * max(abs(lhs), abs(rhs)):
            raise ConvergenceError(
                f"dimensional dispersion identity violated at c={c!r}: "
                f"|{lhs!r} - {rhs!r}|")
    return roots


def solve_equatorial(constants: PhysicalConstants, strat: Stratification,
                     k: float):
    """Exact phase speeds on the Equator: k c^2 - 2 Omega c - g_tilde = 0.

    Returns (c_plus, c_minus) = (Omega +- sqrt(Omega^2 + k g_tilde)) / k.
    """
    if not k > 0:
        raise WavenumberError(f"wavenumber must be positive, got {k!r}")
    disc = math.sqrt(constants.Omega**2 + k * strat.g_tilde)
    return ((constants.Omega + disc) / k, (constants.Omega - disc) / k)


def ferrari_roots(nd: NondimDispersion):
    """Real roots of P by Ferrari's closed form (cross-check oracle).

    Splits the depressed quartic into two quadratics through the resolvent
    cubic.  Accurate at moderate eps; for eps << 1 cancellation makes this
    inferior to the bracketed refinement, which is why it is only an oracle.
    Returns the sorted tuple of real roots.
    """
    _, _, p, q, r = nd.coeffs  # X^4 + p X^2 + q X + r
    if q == 0.0:
        # biquadratic: X^2 = (-p +- sqrt(p^2 - 4r)) / 2
        roots = []
        disc = p * p - 4.0 * r
        if disc >= 0.0:
            for sign in (1.0, -1.0):
                y = 0.5 * (-p + sign * math.sqrt(disc))
                if y >= 0.0:
                    roots.extend((math.sqrt(y), -math.sqrt(y)))
        return tuple(sorted(set(roots)))
    # resolvent cubic 8 t^3 + 8 p t^2 + (2 p^2 - 8 r) t - q^2 = 0
    t = _cubic_positive_root(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q)
    g = math.sqrt(2.0 * t)
    # P = (X^2 + g X + p/2 + t - q/(2g)) (X^2 - g X + p/2 + t + q/(2g))
    roots = []
    for sign in (1.0, -1.0):
        bq = sign * g
        cq = 0.5 * p + t - sign * q / (2.0 * g)
        disc = bq * bq - 4.0 * cq
        if disc >= 0.0:
            sq = math.sqrt(disc)
            roots.extend(((-bq + sq) / 2.0, (-bq - sq) / 2.0))
    return tuple(sorted(roots))


def _cubic_positive_root(a3, a2, a1, a0):
    """Largest real root of a cubic via Cardano / trigonometric form."""
    b, c, d = a2 / a3, a1 / a3, a0 / a3
    # depress: t = y - b/3
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0.0:
        sq = math.sqrt(disc)
        u = math.copysign(abs(-q / 2.0 + sq) ** (1.0 / 3.0), -q / 2.0 + sq)
        v = math.copysign(abs(-q / 2.0 - sq) ** (1.0 / 3.0), -q / 2.0 - sq)
        return u + v + shift
    # three real roots: take the largest
    rho = math.sqrt(-(p / 3.0) ** 3)
    phi = math.acos(max(-1.0, min(1.0, -q / (2.0 * rho))))
    mag = 2.0 * math.sqrt(-p / 3.0)
    return max(mag * math.cos((phi + 2.0 * math.pi * j) / 3.0)
               for j in range(3)) + shift


def _interface_map(site, strat, a, k, c, m, b, d, s):
    """RHS of the thermocline-constant equation as a function of the label s.

    Strictly increasing in s whenever the amplitude gate holds, since its
    derivative reduces to rho0 * g_tilde * (1 - m^2 a^2 e^(-2 m s)).
    """
    e2 = math.exp(-2.0 * m * s)
    bracket = (-0.5 * k**2 * c**2 * b**2 * e2
               + 0.5 * site.f_hat * k * c * a * b * e2
               - 0.5 * site.f * k * c * b * d * e2
               + strat.g * s)
    return -strat.rho0 * bracket + strat.rho_plus * strat.g * s


def _invert_interface_map(site, strat, a, k, c, m, b, d, s0, beta0):
    """Label s_plus > s0 with interface_map(s_plus) = beta0, by bisection."""
    lo = s0
    hi = s0 + 1.0
    for _ in range(80):
        if _interface_map(site, strat, a, k, c, m, b, d, hi) >= beta0:
            break
        hi = s0 + (hi - s0) * 2.0
    else:
        raise ConvergenceError(
            f"no upper bound found for the interface label with beta0={beta0!r}")
    while hi - lo > INTERFACE_TOL:
        mid = 0.5 * (lo + hi)
        if _interface_map(site, strat, a, k, c, m, b, d, mid) < beta0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_interface(params: WaveParameters, site: Site, strat: Stratification,
                    beta0: float) -> float:
    """Interface label s_plus for a given beta0 > P0 - P0_tilde.

    Bisection on the strictly increasing thermocline-constant map, to an
    absolute tolerance of 1e-9 m.
    """
    p0_offset = params.P0 - params.P0_tilde
    if not beta0 > p0_offset:
        raise InterfaceOrderingError(
            f"beta0={beta0!r} must exceed P0 - P0_tilde={p0_offset!r}")
    threshold = (site.f**2 + site.f_hat**2) / strat.g_tilde
    if not params.k > threshold:
        raise WavenumberError(
            f"monotonicity of the interface map needs k > {threshold!r}")
    return _invert_interface_map(site, strat, params.a, params.k, params.c,
                                 params.m, params.b, params.d, params.s0,
                                 beta0)


def derive_parameters(site: Site, strat: Stratification, k: float, a: float,
                      c: float, s0: float, beta0: float, *,
                      beta0_is_offset: bool = False,
                      P0: float = P0_STANDARD) -> WaveParameters:
    """Complete the parameter set for a solved phase speed c.

    m, b, d follow from the closed forms; the amplitude gate
    m^2 a^2 e^(-2 m s0) < 1 is enforced with s* = s0; the pressure
    constants are fixed by the dynamic boundary condition at s0 (gauge P0)
    and the interface label s_plus solves the monotone thermocline map for
    beta0.  With ``beta0_is_offset=True`` the given beta0 is interpreted as
    the (positive) offset above P0 - P0_tilde, which is always admissible.
    """
    if not s0 > 0:
        raise InputError(f"thermocline label must be positive, got {s0!r}")
    if a < 0:
        raise AmplitudeBoundError(f"amplitude must be non-negative, got {a!r}")
    m2_denom = k**2 * c**2 - site.f**2
    if not m2_denom > 0:
        raise EvanescentRegimeError(
            f"k^2 c^2 = {k**2 * c**2!r} must exceed f^2 = {site.f**2!r}; "
            "the vertical decay rate m diverges as k^2 c^2 -> f^2")
    m = math.sqrt(k**4 * c**2 / m2_denom)
    b = m * a / k
    d = -site.f * m * a / (k**2 * c)
    gate = (m * a * math.exp(-m * s0)) ** 2
    if not gate < 1.0:
        raise AmplitudeBoundError(
            f"amplitude a={a!r} violates m^2 a^2 e^(-2 m s0) < 1 "
            f"(got {gate!r}); the thermocline amplitude bound is 1/m = {1.0 / m!r}")
    p0_minus_ptilde = _interface_map(site, strat, a, k, c, m, b, d, s0)
    p0_tilde = P0 - p0_minus_ptilde
    if beta0_is_offset:
        if not beta0 > 0:
            raise InterfaceOrderingError(
                f"beta0 offset must be positive, got {beta0!r}")
        beta0 = p0_minus_ptilde + beta0
    elif not beta0 > p0_minus_ptilde:
        raise InterfaceOrderingError(
            f"beta0={beta0!r} must exceed P0 - P0_tilde={p0_minus_ptilde!r}")
    threshold = (site.f**2 + site.f_hat**2) / strat.g_tilde
    if not k > threshold:
        raise WavenumberError(
            f"wavenumber k={k!r} must exceed 4*Omega^2/g_tilde={threshold!r}")
    s_plus = _invert_interface_map(site, strat, a, k, c, m, b, d, s0, beta0)
    return WaveParameters(a=a, k=k, L=2.0 * math.pi / k, c=c, m=m, b=b, d=d,
                          s_star=s0, s0=s0, s_plus=s_plus, P0=P0,
                          P0_tilde=p0_tilde, beta0=beta0,
                          f=site.f, f_hat=site.f_hat)
