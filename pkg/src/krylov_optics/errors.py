"""Exception types raised across the package."""


class KrylovOpticsError(Exception):
    """Base class for all package-specific errors."""


# --- special functions ---

class PoleError(KrylovOpticsError):
    """Gamma evaluated at a non-positive integer."""


class NoConvergence(KrylovOpticsError):
    """Power series failed to converge within the term budget."""


class BranchError(KrylovOpticsError):
    """Evaluation would cross a branch cut; the caller must pick a branch."""


# --- algebra ---

class InvalidWeight(KrylovOpticsError):
    """Representation weight outside the admissible set."""


class UnknownLabel(KrylovOpticsError):
    """Coefficient refers to a generator label the set does not contain."""


# --- lanczos ---

class NotHermitian(KrylovOpticsError):
    """Matrix fails the Hermiticity tolerance."""


class ZeroSeed(KrylovOpticsError):
    """Seed vector has (numerically) zero norm."""


class NumericalBreakdown(KrylovOpticsError):
    """Moment recursion produced a non-positive b^2 beyond tolerance."""


# --- evolution ---

class ResonantKickPole(KrylovOpticsError):
    """Kick decomposition undefined: omega0*T is a multiple of 2*pi."""


class DegenerateEntry(KrylovOpticsError):
    """Both projective-pair entries vanish (matrix not unimodular)."""


class StepUnderflow(KrylovOpticsError):
    """Adaptive integrator step size underflowed (stiff problem)."""


class ToleranceNotMet(KrylovOpticsError):
    """Integrator finished without reaching the requested tolerance."""


# --- models ---

class DomainError(KrylovOpticsError):
    """Argument outside the physical domain (e.g. |lambda|>=1 on the SU(1,1) disc)."""


class NotNormalized(KrylovOpticsError):
    """State vector is not normalized to tolerance."""


class TruncationOverflow(KrylovOpticsError):
    """Requested quantity is not trustworthy at any admissible truncation,
    or predicted complexity exceeds the overflow budget."""
