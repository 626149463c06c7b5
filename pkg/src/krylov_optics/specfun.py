"""Complex-order special functions from ascending power series.

Provides the complex gamma function and the Bessel functions J_mu(z),
I_mu(z) for complex order and argument.  Everything is evaluated through
the ascending series

    J_mu(z) = (z/2)^mu / Gamma(mu+1) * sum_k (-(z/2)^2)^k / (k! (mu+1)_k)

(the non-alternating analogue for I_mu), deliberately avoiding asymptotic
expansions: the intended argument range is |z| <~ 50 where the series is
exact and convergence is fast.  When floating-point cancellation inside
the alternating sum would eat into the requested tolerance, the same sum
is transparently re-evaluated in extended working precision (stdlib
``decimal``); inputs and outputs remain ordinary complex numbers.

All functions are pure and reentrant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

from .errors import BranchError, NoConvergence, PoleError

_EPS = 2.220446049250313e-16

# Rational-approximation constants for Gamma (classical Lanczos scheme,
# g = 7, 9 terms; relative error below 1e-13 on the half-plane Re z > 0.5).
_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class SeriesControl:
    """Convergence knobs for the power series."""

    rel_tol: float = 1e-12
    max_terms: int = 500

    def __post_init__(self) -> None:
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


_DEFAULT_CONTROL = SeriesControl()


def complex_gamma(z: complex) -> complex:
    """Gamma(z) for complex z.

    Uses the fixed-coefficient rational approximation above with the
    reflection formula for Re z < 0.5.  Raises PoleError at non-positive
    integers and OverflowError when |Gamma(z)| is not representable.
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"gamma pole at z={z.real:g}")
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        if abs(z.imag) > 220.0:
            # sin(pi z) overflows; |Gamma| underflows to zero here anyway
            return 0.0 + 0.0j
        value = math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    else:
        w = z - 1.0
        acc = _LANCZOS_COEFFS[0]
        for i in range(1, _LANCZOS_G + 2):
            acc += _LANCZOS_COEFFS[i] / (w + i)
        t = w + _LANCZOS_G + 0.5
        value = math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise OverflowError(f"|gamma({z})| exceeds the representable range")
    return value


def _series_float(mu: complex, w: complex, ctl: SeriesControl):
    """Kahan-compensated sum_k w^k / (k! (mu+1)_k).

    Returns (sum, max_term_magnitude, converged).
    """
    term = 1.0 + 0.0j
    total = term
    comp = 0.0j
    max_mag = 1.0
    w_mag = abs(w)
    for k in range(1, ctl.max_terms + 1):
        term = term * w / (k * (mu + k))
        mag = abs(term)
        if mag > max_mag:
            max_mag = mag
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        # past the growth hump the ratio |t_{k+1}/t_k| < 1, so a small term
        # bounds the tail
        if mag <= ctl.rel_tol * abs(total) and (k + 1) * abs(mu + k + 1) > w_mag:
            return total, max_mag, True
    return total, max_mag, False


def _series_decimal(mu: complex, w: complex, ctl: SeriesControl, digits: int):
    """Same sum in extended precision; complex arithmetic on Decimal pairs."""
    with localcontext() as dctx:
        dctx.prec = digits
        wr, wi = Decimal(w.real), Decimal(w.imag)
        mur, mui = Decimal(mu.real), Decimal(mu.imag)
        tr, ti = Decimal(1), Decimal(0)
        sr, si = tr, ti
        tol2 = Decimal(ctl.rel_tol) ** 2
        w_mag = abs(w)
        for k in range(1, ctl.max_terms + 1):
            nr = tr * wr - ti * wi
            ni = tr * wi + ti * wr
            dr = k * (mur + k)
            di = k * mui
            dd = dr * dr + di * di
            tr = (nr * dr + ni * di) / dd
            ti = (ni * dr - nr * di) / dd
            sr += tr
            si += ti
            if (tr * tr + ti * ti) <= tol2 * (sr * sr + si * si) \
                    and (k + 1) * abs(mu + k + 1) > w_mag:
                return complex(float(sr), float(si)), True
        return complex(float(sr), float(si)), False


def _bessel_series(mu: complex, z: complex, sign: float, ctl: SeriesControl) -> complex:
    """Common body of bessel_j (sign=-1) and bessel_i (sign=+1)."""
    mu = complex(mu)
    z = complex(z)

    # negative-integer order: the term recurrence would divide by zero;
    # fold onto positive order via J_{-n} = (-1)^n J_n, I_{-n} = I_n
    if mu.imag == 0.0 and mu.real < 0.0 and mu.real == math.floor(mu.real):
        n = int(-mu.real)
        value = _bessel_series(complex(n), z, sign, ctl)
        return value if (sign > 0 or n % 2 == 0) else -value

    if z == 0:
        if mu == 0:
            return 1.0 + 0.0j
        if mu.real > 0:
            return 0.0 + 0.0j
        raise BranchError("(z/2)^mu has no limit at z=0 for Re mu <= 0")
    if z.imag == 0.0 and z.real < 0.0 and not (
            mu.imag == 0.0 and mu.real == math.floor(mu.real)):
        raise BranchError(
            "z on the negative real axis with non-integer order: "
            "choose a branch explicitly (e.g. evaluate at |z|)")

    w = sign * (z / 2.0) ** 2
    total, max_mag, converged = _series_float(mu, w, ctl)
    if not converged:
        raise NoConvergence(
            f"series did not reach rel_tol={ctl.rel_tol:g} "
            f"within {ctl.max_terms} terms")
    # cancellation guard: rounding of the largest term limits the absolute
    # accuracy of the alternating sum; redo in wider precision if that
    # breaches the requested relative tolerance.  A fully cancelled pass
    # hides how many digits were really lost, so the digit budget is
    # re-derived from each successive (better) estimate of the sum.
    digits = 16
    for _ in range(6):
        error = 4.0 * 10.0 ** (1 - digits) * max_mag
        if error <= ctl.rel_tol * max(abs(total), 1e-300):
            break
        lost = math.log10(max_mag / max(abs(total), 1e-300))
        # grow geometrically: a fully cancelled pass underestimates `lost`
        digits = max(22 + int(lost), 2 * digits)
        total, converged = _series_decimal(mu, w, ctl, digits)
        if not converged:
            raise NoConvergence(
                f"extended-precision series did not converge "
                f"within {ctl.max_terms} terms")
    else:
        raise NoConvergence("cancellation exceeds the extended-precision budget")

    prefactor = cmath.exp(mu * cmath.log(z / 2.0)) / complex_gamma(mu + 1.0)
    return prefactor * total


def bessel_j(mu: complex, z: complex, ctl: SeriesControl = _DEFAULT_CONTROL) -> complex:
    """Bessel function of the first kind, complex order and argument.

    Principal branch of the (z/2)^mu power factor.  Raises BranchError on
    the negative real axis for non-integer order and NoConvergence if the
    term budget is exhausted.
    """
    return _bessel_series(mu, z, -1.0, ctl)


def bessel_i(mu: complex, z: complex, ctl: SeriesControl = _DEFAULT_CONTROL) -> complex:
    """Modified Bessel function of the first kind (non-alternating series)."""
    return _bessel_series(mu, z, 1.0, ctl)
