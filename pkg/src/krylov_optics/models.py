"""Model catalogue: parameters -> trajectories -> Krylov spread complexity.

Each family runs through up to two routes:

* ``closed``  - the per-family closed-form decomposition coefficients;
* ``numeric`` - integration of the propagator in a faithful low-dimensional
  representation followed by algorithmic decomposition (or, for the
  three-level system, spectral evolution in the Krylov basis).

``method="both"`` runs them side by side and records the deviation, which is
the package's running self-check.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.linalg import expm

from . import evolution as ev
from .algebra import Group, assemble, build_su3_fundamental, required_truncation
from .errors import (DomainError, KrylovOpticsError, NotNormalized,
                     TruncationOverflow)
from .lanczos import tridiagonalize

COMPLEXITY_BUDGET = 1e8


class ModelFamily(enum.Enum):
    SU2_STATIC = "su2-static"
    SU2_DRIVEN = "su2-driven"
    SU2_DAMPED = "su2-damped"
    SU2_KICKED = "su2-kicked"
    H1_DRIVEN = "h1"
    SU11_TWO_MODE = "su11"
    QUENCH = "quench"
    SU3_V_CONFIG = "su3"


class Regime(enum.Enum):
    OSCILLATORY = "oscillatory"
    QUADRATIC = "quadratic"
    EXPONENTIAL = "exponential"


_REQUIRED = {
    ModelFamily.SU2_STATIC: ("alpha", "gamma", "delta", "j"),
    ModelFamily.SU2_DRIVEN: ("omega0", "omega", "b0", "j"),
    ModelFamily.SU2_DAMPED: ("omega0", "omega", "b0", "eta", "j"),
    ModelFamily.SU2_KICKED: ("omega0", "kick_period", "chi", "j"),
    ModelFamily.H1_DRIVEN: ("omega0", "omega", "f0", "eta"),
    ModelFamily.SU11_TWO_MODE: ("omega0", "omega", "g", "eta", "h"),
    ModelFamily.QUENCH: ("omega0", "eta0", "tau"),
    ModelFamily.SU3_V_CONFIG: ("omega", "g1", "g2"),
}

_DEFAULTS = {
    ModelFamily.H1_DRIVEN: {"eta": 0.0},
    ModelFamily.SU11_TWO_MODE: {"eta": 0.0, "h": 0.5},
    ModelFamily.SU2_STATIC: {"delta": 0.0},
}

_INFINITE_DIM = {ModelFamily.H1_DRIVEN, ModelFamily.SU11_TWO_MODE, ModelFamily.QUENCH}


@dataclass(frozen=True)
class ModelSpec:
    """One entry of the model catalogue with its physical parameters."""

    family: ModelFamily
    params: dict[str, float] = field(default_factory=dict)
    truncation: int | None = None

    def __post_init__(self) -> None:
        merged = dict(_DEFAULTS.get(self.family, {}))
        merged.update(self.params)
        object.__setattr__(self, "params", merged)
        missing = [k for k in _REQUIRED[self.family] if k not in merged]
        if missing:
            raise ValueError(f"{self.family.value}: missing parameters {missing}")
        if "j" in merged:
            two_j = 2 * merged["j"]
            if abs(two_j - round(two_j)) > 1e-9 or two_j < 0:
                raise ValueError("j must be a non-negative half-integer")
        if self.truncation is not None:
            if self.family not in _INFINITE_DIM:
                raise ValueError("truncation only applies to h1/su11/quench families")
            if self.truncation < 16:
                raise ValueError("truncation must be >= 16")

    def __getitem__(self, key: str) -> float:
        return self.params[key]

    @property
    def group(self) -> Group:
        return {
            ModelFamily.SU2_STATIC: Group.SU2, ModelFamily.SU2_DRIVEN: Group.SU2,
            ModelFamily.SU2_DAMPED: Group.SU2, ModelFamily.SU2_KICKED: Group.SU2,
            ModelFamily.H1_DRIVEN: Group.H1, ModelFamily.SU11_TWO_MODE: Group.SU11,
            ModelFamily.QUENCH: Group.SU11, ModelFamily.SU3_V_CONFIG: Group.SU3,
        }[self.family]

    @property
    def weight(self) -> float:
        if self.group is Group.SU2:
            return self["j"]
        if self.family is ModelFamily.SU11_TWO_MODE:
            return self["h"]
        if self.family is ModelFamily.QUENCH:
            return 0.25
        return 0.0


@dataclass(frozen=True)
class ComplexityTrace:
    """Complexity over a time (or kick-count) grid, plus route bookkeeping.

    ``max_route_deviation`` compares the routes on a bounded coordinate that
    stays well conditioned where C itself diverges or saturates a pole:
    C/(2j) for SU2 families, |alpha| on the unit disc for SU(1,1), |beta|
    for the photon mode and C/2 for the three-level atom.
    """

    t: np.ndarray
    c: np.ndarray
    method: str                        # "closed" | "numeric" | "both"
    dev: np.ndarray | None = None      # per-point |C_closed - C_numeric|
    c_numeric: np.ndarray | None = None
    p: np.ndarray | None = None        # occupation probabilities, (nt, levels)
    max_route_deviation: float = float("nan")
    route_tol: float = float("nan")    # the caller's agreement budget
    family: ModelFamily | None = None
    bound: float = float("inf")        # 2j (SU2) / 2 (three-level)

    @property
    def routes_agree(self) -> bool:
        return not self.max_route_deviation > self.route_tol


# ---------------------------------------------------------------------------
# complexity evaluators
# ---------------------------------------------------------------------------

def complexity_from_lambda(group: Group, weight: float, abs_lambda_plus: float) -> float:
    """Closed-sum complexity from the raising-coefficient modulus.

    SU2: 2j x/(1+x); SU11: 2h x/(1-x) (requires |lambda|<1); H1: |beta|^2,
    with x = |lambda|^2.  The SU2 form is evaluated so that the pole
    |lambda| -> inf cleanly returns the bound 2j.
    """
    m = float(abs_lambda_plus)
    if m < 0:
        raise ValueError("|lambda| must be non-negative")
    if group is Group.SU2:
        if math.isinf(m):
            return 2.0 * weight
        x = m * m
        return 2.0 * weight * x / (1.0 + x)
    if group is Group.SU11:
        if m >= 1.0:
            raise DomainError(f"|lambda| = {m:g} >= 1 outside the SU(1,1) disc")
        x = m * m
        return 2.0 * weight * x / (1.0 - x)
    if group is Group.H1:
        return m * m
    raise ValueError(f"no closed-sum complexity for group {group}")


def complexity_from_state(psi: np.ndarray, exponent: int = 1) -> float:
    """C = sum_n n^k |psi_n|^2 for a normalized state in the Krylov ordering.

    The cost weight exponent k is limited to 1 (the mean depth used
    everywhere in this package) or 2.
    """
    if exponent not in (1, 2):
        raise ValueError("cost-weight exponent must be 1 or 2")
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-8:
        raise NotNormalized(f"||psi|| = {norm!r}")
    return float(np.sum(np.arange(len(psi)) ** exponent * np.abs(psi) ** 2))


def _c_from_pair(group: Group, weight: float, u01, u11) -> np.ndarray:
    """Bounded rational form of the closed sum, safe at raising-coefficient poles."""
    a = np.abs(np.asarray(u01)) ** 2
    b = np.abs(np.asarray(u11)) ** 2
    if group is Group.SU2:
        return 2.0 * weight * a / (a + b)
    if group is Group.SU11:
        denom = b - a
        bad = denom <= 0
        if np.any(bad):
            # a non-positive pseudo-norm with large entries means rounding
            # swallowed it, which already puts the true C far beyond any
            # budget: report inf and let the budget guard phrase the refusal.
            # Small entries mean the state genuinely left the disc.
            if np.all(np.asarray(b)[bad] > 1e4):
                return np.where(bad, np.inf,
                                2.0 * weight * a / np.where(bad, 1.0, denom))
            raise DomainError("|lambda| >= 1: state left the SU(1,1) disc")
        return 2.0 * weight * a / denom
    raise ValueError(f"pair complexity undefined for group {group}")


# occupation distributions in the Krylov ordering -------------------------

def su2_probabilities(j: float, abs_lambda_plus: float) -> np.ndarray:
    """Binomial weights C(2j,n) x^n / (1+x)^{2j}, x = |lambda|^2."""
    dim = round(2 * j) + 1
    if math.isinf(abs_lambda_plus):
        p = np.zeros(dim)
        p[-1] = 1.0
        return p
    x = abs_lambda_plus ** 2
    p = np.empty(dim)
    p[0] = 1.0
    for n in range(dim - 1):
        p[n + 1] = p[n] * x * (dim - 1 - n) / (n + 1)
    return p / (1.0 + x) ** (dim - 1)


def su11_probabilities(h: float, abs_lambda_plus: float, levels: int) -> np.ndarray:
    """Negative-binomial weights (1-x)^{2h} (2h)_n x^n / n!."""
    x = abs_lambda_plus ** 2
    if x >= 1.0:
        raise DomainError("|lambda| >= 1 outside the SU(1,1) disc")
    p = np.empty(levels)
    p[0] = (1.0 - x) ** (2 * h)
    for n in range(levels - 1):
        p[n + 1] = p[n] * x * (2 * h + n) / (n + 1)
    return p


def h1_probabilities(beta_sq: float, levels: int) -> np.ndarray:
    """Poisson weights exp(-|b|^2) |b|^{2n} / n!."""
    p = np.empty(levels)
    p[0] = math.exp(-beta_sq)
    for n in range(levels - 1):
        p[n + 1] = p[n] * beta_sq / (n + 1)
    return p


# ---------------------------------------------------------------------------
# closed-form route per family
# ---------------------------------------------------------------------------

def _point_fn(spec: ModelSpec):
    p = spec.params
    fam = spec.family
    if fam is ModelFamily.SU2_STATIC:
        return lambda t: ev.su2_static(p["alpha"], p["gamma"], p["delta"], t)
    if fam is ModelFamily.SU2_DRIVEN:
        return lambda t: ev.su2_driven(p["omega0"], p["omega"], p["b0"], t)
    if fam is ModelFamily.SU2_DAMPED:
        return lambda t: ev.su2_damped(p["omega0"], p["omega"], p["b0"], p["eta"], t)
    if fam is ModelFamily.SU2_KICKED:
        return lambda k: ev.su2_kicked(p["omega0"], p["kick_period"], p["chi"], round(k))
    if fam is ModelFamily.SU11_TWO_MODE:
        return lambda t: ev.su11_driven(p["omega0"], p["omega"], p["g"], p["eta"], t)
    if fam is ModelFamily.QUENCH:
        return lambda t: ev.quench_coefficients(p["omega0"], p["eta0"], p["tau"], t)
    raise ValueError(f"no Gauss point function for {fam.value}")


def closed_coefficients(spec: ModelSpec, t_grid) -> ev.GaussCoefficients:
    """Closed-form decomposition trajectory for a pair-carrying family."""
    return ev.closed_trajectory(_point_fn(spec), t_grid)


def su3_complexity_closed(omega: float, g1: float, g2: float, t) -> np.ndarray | float:
    """Four-cosine closed form for the V-configuration three-level atom."""
    if g1 == 0.0 and g2 == 0.0:
        raise ValueError("(g1, g2) must not both vanish")
    lam = math.sqrt(4.0 * (g1 * g1 + g2 * g2) + 9.0 * omega * omega)
    a_c = 2 * g2**2 * (7 * g1**4 + g2**4 + 2 * g1**2 * (4 * g2**2 + 9 * omega**2))
    b_c = 2 * g2**2 * (g1**4 - g2**4)
    c_c = -2 * g1**2 * g2**2 * lam * (lam + 3 * omega)
    d_c = -2 * g1**2 * g2**2 * lam * (lam - 3 * omega)
    t = np.asarray(t, dtype=float)
    value = (a_c + b_c * np.cos(lam * t)
             + c_c * np.cos(0.5 * (lam - 3 * omega) * t)
             + d_c * np.cos(0.5 * (lam + 3 * omega) * t)) / (lam**2 * (g1**2 + g2**2) ** 2)
    return value if value.ndim else float(value)


def _route_coordinate(spec: ModelSpec, c: np.ndarray,
                      u01: np.ndarray | None, u11: np.ndarray | None) -> np.ndarray:
    """Bounded per-point coordinate used for route comparison."""
    if spec.group is Group.SU2:
        return c / (2.0 * spec.weight) if spec.weight else c
    if spec.group is Group.SU11:
        return np.abs(u01) / np.abs(u11)
    if spec.group is Group.H1:
        return np.sqrt(c)            # |beta|
    return c / 2.0                   # three-level atom, C <= 2


def _closed_c(spec: ModelSpec, t_grid: np.ndarray):
    """Closed route: (C array, route coordinate, context for probabilities)."""
    fam = spec.family
    if fam is ModelFamily.SU3_V_CONFIG:
        c = np.asarray(su3_complexity_closed(spec["omega"], spec["g1"], spec["g2"], t_grid))
        return c, _route_coordinate(spec, c, None, None), None
    if fam is ModelFamily.H1_DRIVEN:
        pts = [ev.h1_driven(spec["omega0"], spec["omega"], spec["f0"], spec["eta"], float(t))
               for t in t_grid]
        c = np.array([abs(pt.beta) ** 2 for pt in pts])
        return c, _route_coordinate(spec, c, None, None), pts
    coeffs = closed_coefficients(spec, t_grid)
    c = _c_from_pair(spec.group, spec.weight, coeffs.u01, coeffs.u11)
    return c, _route_coordinate(spec, c, coeffs.u01, coeffs.u11), coeffs


# ---------------------------------------------------------------------------
# numeric route per family
# ---------------------------------------------------------------------------

def _integrate_from_zero(ham, t_grid: np.ndarray, rel_tol: float):
    """Propagate from the models' common time origin t=0, then restrict."""
    if t_grid[0] > 0.0:
        full = ev.integrate_propagator(ham, np.concatenate([[0.0], t_grid]), rel_tol)
        return ev.PropagatorTrajectory(t_grid, full.u[1:], full.method)
    return ev.integrate_propagator(ham, t_grid, rel_tol)


def _numeric_c(spec: ModelSpec, t_grid: np.ndarray, rel_tol: float):
    """Numeric route: (C array, route coordinate)."""
    p = spec.params
    fam = spec.family
    if fam is ModelFamily.SU2_STATIC:
        gen = ev.su2_defining()
        ham = assemble(gen, {"J+": p["alpha"], "J-": p["alpha"], "J0": p["gamma"]},
                       p["delta"])
        traj = _integrate_from_zero(ham, t_grid, rel_tol)
        phase = np.exp(-1j * p["delta"] * t_grid)
        coeffs = ev.decompose_trajectory(traj, Group.SU2, phase)
        return _pair_outputs(spec, coeffs)

    if fam in (ModelFamily.SU2_DRIVEN, ModelFamily.SU2_DAMPED):
        eta = p.get("eta", 0.0)
        om, b0 = p["omega"], p["b0"]

        def eps_plus(t: float) -> complex:
            return 0.5 * b0 * math.exp(-eta * t) * cmath.exp(-1j * om * t)

        ham = assemble(ev.su2_defining(),
                       {"J+": eps_plus,
                        "J-": lambda t: np.conj(eps_plus(t)),
                        "J0": lambda t: p["omega0"]})
        traj = _integrate_from_zero(ham, t_grid, rel_tol)
        return _pair_outputs(spec, ev.decompose_trajectory(traj, Group.SU2))

    if fam is ModelFamily.SU2_KICKED:
        om0, t_kick, chi = p["omega0"], p["kick_period"], p["chi"]
        half = cmath.exp(-0.5j * om0 * t_kick)
        free = np.array([[half, 0], [0, np.conj(half)]])
        ch, sh = math.cos(0.5 * chi), math.sin(0.5 * chi)
        kick = np.array([[ch, -1j * sh], [-1j * sh, ch]])
        u_t = free @ kick
        ks = np.asarray(np.rint(t_grid), dtype=int)
        u = np.empty((len(ks), 2, 2), dtype=complex)
        acc = np.linalg.matrix_power(u_t, int(ks[0]))
        u[0] = acc
        for i in range(1, len(ks)):
            for _ in range(ks[i] - ks[i - 1]):
                acc = u_t @ acc
            u[i] = acc
        traj = ev.PropagatorTrajectory(t_grid.astype(float), u, "stroboscopic")
        return _pair_outputs(spec, ev.decompose_trajectory(traj, Group.SU2))

    if fam is ModelFamily.H1_DRIVEN:
        f0, om, eta = p["f0"], p["omega"], p["eta"]

        def f(t: float) -> complex:
            return f0 * math.exp(-eta * t) * cmath.exp(1j * om * t)

        ham = assemble(ev.h1_defining(),
                       {"a": f, "adag": lambda t: np.conj(f(t)),
                        "N": lambda t: p["omega0"]})
        traj = _integrate_from_zero(ham, t_grid, rel_tol)
        beta_abs = np.array([abs(pt.beta) for pt in ev.h1_decompose(traj)])
        return beta_abs**2, beta_abs

    if fam is ModelFamily.SU11_TWO_MODE:
        g, om, eta = p["g"], p["omega"], p["eta"]

        def f(t: float) -> complex:
            return 0.5 * g * math.exp(-eta * t) * cmath.exp(-1j * om * t)

        ham = assemble(ev.su11_defining(),
                       {"K+": f, "K-": lambda t: np.conj(f(t)),
                        "K0": lambda t: p["omega0"]})
        traj = _integrate_from_zero(ham, t_grid, rel_tol)
        return _pair_outputs(spec, ev.decompose_trajectory(traj, Group.SU11))

    if fam is ModelFamily.QUENCH:
        om0, eta0, tau = p["omega0"], p["eta0"], p["tau"]
        gen = ev.su11_defining()
        h1 = assemble(gen, {"K+": eta0, "K-": eta0, "K0": 2 * (om0 + eta0)}).matrix()
        h2 = assemble(gen, {"K0": 2 * om0}).matrix()
        u = np.empty((len(t_grid), 2, 2), dtype=complex)
        for i, t in enumerate(t_grid):
            te = min(t, tau)
            ui = expm(-1j * h1 * te)
            if t > tau:
                ui = expm(-1j * h2 * (t - tau)) @ ui
            u[i] = ui
        traj = ev.PropagatorTrajectory(t_grid, u, "spectral")
        return _pair_outputs(spec, ev.decompose_trajectory(traj, Group.SU11))

    if fam is ModelFamily.SU3_V_CONFIG:
        psi = _su3_states(spec, t_grid)
        c = np.sum(np.arange(3) * np.abs(psi) ** 2, axis=1)
        return c, _route_coordinate(spec, c, None, None)

    raise ValueError(f"no numeric route for {fam.value}")


def _pair_outputs(spec: ModelSpec, coeffs: ev.GaussCoefficients):
    c = _c_from_pair(spec.group, spec.weight, coeffs.u01, coeffs.u11)
    return c, _route_coordinate(spec, c, coeffs.u01, coeffs.u11)


def _su3_states(spec: ModelSpec, t_grid: np.ndarray) -> np.ndarray:
    """Krylov-basis amplitudes of the evolving V-configuration state."""
    om, g1, g2 = spec["omega"], spec["g1"], spec["g2"]
    gen = build_su3_fundamental()
    ham = assemble(gen, {"Sz12": om, "Sz13": om, "S+12": g1, "S-12": g1,
                         "S+13": g2, "S-13": g2})
    h = ham.matrix()
    seed = np.array([1.0, 0.0, 0.0], dtype=complex)
    tri = tridiagonalize(h, seed)
    h_t = tri.matrix()
    energies, modes = np.linalg.eigh(h_t)
    amp = modes.conj().T @ np.array([1.0, 0.0, 0.0])
    return (modes[None, :, :] * np.exp(-1j * np.outer(t_grid, energies))[:, None, :]) @ amp


# ---------------------------------------------------------------------------
# run_model / classify / sweep
# ---------------------------------------------------------------------------

def _guard_budget(spec: ModelSpec, c: np.ndarray) -> None:
    if np.any(~np.isfinite(c)) or np.max(c, initial=0.0) > COMPLEXITY_BUDGET:
        msg = f"predicted complexity exceeds {COMPLEXITY_BUDGET:g}"
        if spec.family is ModelFamily.SU11_TWO_MODE:
            g = spec["g"]
            delta = spec["omega0"] - spec["omega"]
            rate = math.sqrt(max(g * g - delta * delta, 0.0))
            msg += f"; exponential regime with asymptotic rate C ~ exp({rate:g} t)"
        raise TruncationOverflow(msg + "; shorten the time window")


def _probabilities(spec: ModelSpec, t_grid, closed_ctx, c: np.ndarray) -> np.ndarray:
    fam = spec.family
    if fam is ModelFamily.SU3_V_CONFIG:
        return np.abs(_su3_states(spec, t_grid)) ** 2
    if spec.group is Group.SU2:
        lam = closed_ctx.abs_lambda_plus
        return np.vstack([su2_probabilities(spec.weight, m) for m in lam])
    if fam is ModelFamily.H1_DRIVEN:
        beta_sq = np.array([abs(pt.beta) ** 2 for pt in closed_ctx])
        peak = float(np.max(beta_sq))
        if spec.truncation:
            levels = spec.truncation
        else:
            dist_peak = h1_probabilities(peak, 513)
            levels = required_truncation(lambda n: dist_peak[n])
        levels = min(levels, 512) + 1
        p = np.vstack([h1_probabilities(b, levels) for b in beta_sq])
        if np.any(1.0 - np.sum(p, axis=1) > 1e-10):
            raise TruncationOverflow("occupations are truncation-limited at 512 levels")
        return p
    # su11 / quench: negative binomial at weight h
    h = spec.weight
    lam = closed_ctx.abs_lambda_plus
    x_peak = float(np.max(lam)) ** 2
    if x_peak >= 1.0:
        raise TruncationOverflow("occupations are truncation-limited (|lambda| -> 1)")
    if spec.truncation:
        levels = spec.truncation
    else:
        dist_peak = su11_probabilities(h, math.sqrt(x_peak), 513)
        levels = required_truncation(lambda n: dist_peak[n])
    levels = min(levels, 512) + 1
    rows = [su11_probabilities(h, m, levels) for m in lam]
    p = np.vstack(rows)
    if np.any(1.0 - np.sum(p, axis=1) > 1e-10):
        raise TruncationOverflow("occupations are truncation-limited at 512 levels")
    return p


def run_model(spec: ModelSpec, t_grid, method: str = "both", tol: float = 1e-8,
              probabilities: bool = False, rel_tol: float = 1e-11) -> ComplexityTrace:
    """Evaluate one catalogue entry on a grid.

    `tol` is the route-agreement budget, recorded on the trace and surfaced
    through `trace.routes_agree`; enforcement (exit codes etc.) is left to
    the caller.  `rel_tol` controls the numeric-route integrator.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 1:
        raise ValueError("t_grid must be a non-empty 1-d array")
    if method not in ("closed", "numeric", "both"):
        raise ValueError(f"unknown method {method!r}")
    if spec.family is ModelFamily.SU2_KICKED:
        if np.any(t_grid < 0) or np.any(np.abs(t_grid - np.rint(t_grid)) > 1e-9):
            raise ValueError("kicked-family grid must hold non-negative kick counts")

    c_closed = r_closed = ctx = None
    if method in ("closed", "both") or probabilities:
        c_closed, r_closed, ctx = _closed_c(spec, t_grid)
        _guard_budget(spec, c_closed)
    c_numeric = r_numeric = None
    if method in ("numeric", "both"):
        c_numeric, r_numeric = _numeric_c(spec, t_grid, rel_tol)
        _guard_budget(spec, c_numeric)

    if method == "closed":
        c, dev, max_dev = c_closed, None, float("nan")
    elif method == "numeric":
        c, dev, max_dev = c_numeric, None, float("nan")
    else:
        c = c_closed
        dev = np.abs(c_closed - c_numeric)
        max_dev = float(np.max(np.abs(r_closed - r_numeric)))

    p = _probabilities(spec, t_grid, ctx, c) if probabilities else None
    bound = 2.0 * spec.weight if spec.group is Group.SU2 else (
        2.0 if spec.family is ModelFamily.SU3_V_CONFIG else float("inf"))
    return ComplexityTrace(t=t_grid, c=c, method=method, dev=dev,
                           c_numeric=c_numeric, p=p,
                           max_route_deviation=max_dev, route_tol=tol,
                           family=spec.family, bound=bound)


def classify_regime(g: float, delta: float) -> Regime:
    """Pumping-strength regimes of the two-mode family.

    g below |delta| oscillates, above it grows exponentially; the quadratic
    boundary g = |delta| is resolved with relative tolerance 1e-12.
    """
    if g < 0:
        raise ValueError("g must be non-negative")
    delta = abs(delta)
    if abs(g - delta) <= 1e-12 * max(g, delta, 1.0):
        return Regime.QUADRATIC
    return Regime.OSCILLATORY if g < delta else Regime.EXPONENTIAL


@dataclass(frozen=True)
class SweepResult:
    axis_names: tuple[str, str]
    axis_values: tuple[np.ndarray, np.ndarray]
    values: np.ndarray               # floats, or strings for regime maps
    errors: list[tuple[int, int, str]]


def _cell_spec(spec: ModelSpec, name: str, value: float) -> ModelSpec:
    params = dict(spec.params)
    if name == "delta":
        # detuning axis: move the drive frequency, keep omega0
        params["omega"] = params["omega0"] - value
    else:
        params[name] = value
    return replace(spec, params=params)


def sweep(spec: ModelSpec, axes, t_grid=None, summary: str = "c_max",
          method: str = "closed", threads: int = 1) -> SweepResult:
    """Evaluate a scalar summary over a 2-axis parameter grid.

    axes = ((name1, values1), (name2, values2)); an axis named "delta"
    sweeps the detuning omega0 - omega.  Cell failures are recorded and do
    not abort the sweep.  Summaries: "c_max", "c_end", "regime".
    """
    (name1, vals1), (name2, vals2) = axes
    vals1 = np.asarray(vals1, dtype=float)
    vals2 = np.asarray(vals2, dtype=float)
    if vals1.size * vals2.size > 1_000_000:
        raise ValueError("sweep grid exceeds 1e6 cells")
    if summary not in ("c_max", "c_end", "regime"):
        raise ValueError(f"unknown summary {summary!r}")
    if summary == "regime" and spec.family is not ModelFamily.SU11_TWO_MODE:
        raise ValueError("regime maps are defined for the su11 family only")
    if summary != "regime" and t_grid is None:
        raise ValueError("c_max / c_end summaries need a t_grid")

    errors: list[tuple[int, int, str]] = []
    values = np.empty((vals1.size, vals2.size), dtype=object)

    def one_cell(idx):
        i, k = idx
        cell = _cell_spec(_cell_spec(spec, name1, float(vals1[i])), name2, float(vals2[k]))
        if summary == "regime":
            g = cell.params["g"]
            delta = cell.params["omega0"] - cell.params["omega"]
            return classify_regime(g, delta).value
        trace = run_model(cell, t_grid, method=method)
        return float(np.max(trace.c)) if summary == "c_max" else float(trace.c[-1])

    indices = [(i, k) for i in range(vals1.size) for k in range(vals2.size)]
    if threads == 1:
        for idx in indices:
            try:
                values[idx] = one_cell(idx)
            except KrylovOpticsError as exc:
                errors.append((*idx, str(exc)))
                values[idx] = None
    else:
        workers = threads if threads > 0 else None
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one_cell, idx) for idx in indices]
        for idx, fut in zip(indices, futures):
            try:
                values[idx] = fut.result()
            except KrylovOpticsError as exc:
                errors.append((*idx, str(exc)))
                values[idx] = None
    if summary == "regime":
        out = np.where(values == None, "error", values).astype(str)  # noqa: E711
    else:
        out = np.array([[float("nan") if v is None else v for v in row] for row in values])
    return SweepResult((name1, name2), (vals1, vals2), out, errors)
