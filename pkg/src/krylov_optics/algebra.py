"""Matrix representations of the su(2), h(1), su(1,1) and su(3) generator
sets and Hamiltonian assembly from (possibly time-dependent) coefficients.

Basis ordering is fixed to lowest weight first, so the position index n of
a state component is its Krylov depth.  Infinite-dimensional algebras are
truncated at a caller-chosen level; evolved states must keep their weight
out of the top of the truncated ladder (see :func:`check_tail_mass`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

import numpy as np

from .errors import InvalidWeight, TruncationOverflow, UnknownLabel


class Group(enum.Enum):
    SU2 = "su2"
    H1 = "h1"
    SU11 = "su11"
    SU3 = "su3"


Coefficient = complex | float | Callable[[float], complex]


def _freeze(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m, dtype=complex)
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class GeneratorSet:
    """A named family of dense generator matrices for one representation."""

    group: Group
    weight: float          # spin j (SU2), Bargmann index h (SU11); 0 otherwise
    dim: int
    generators: Mapping[str, np.ndarray]

    def __getitem__(self, label: str) -> np.ndarray:
        try:
            return self.generators[label]
        except KeyError:
            raise UnknownLabel(f"no generator labelled {label!r}") from None


def _check_weight(two_w: float, what: str) -> int:
    n = round(two_w)
    if abs(two_w - n) > 1e-12 or n < 0:
        raise InvalidWeight(f"2*{what} must be a non-negative integer, got {two_w}")
    return n


def build_su2(j: float | Fraction) -> GeneratorSet:
    """su(2) spin-j generators in the ordered basis |j,-j+n>, n = 0..2j."""
    j = float(j)
    two_j = _check_weight(2 * j, "j")
    dim = two_j + 1
    n = np.arange(dim)
    j0 = np.diag(n - j).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    # <n+1| J+ |n> = sqrt((n+1)(2j-n))
    jp[np.arange(1, dim), np.arange(dim - 1)] = np.sqrt((n[:-1] + 1) * (two_j - n[:-1]))
    jm = jp.conj().T
    gens = {"J+": _freeze(jp), "J-": _freeze(jm), "J0": _freeze(j0)}
    return GeneratorSet(Group.SU2, j, dim, gens)


def build_h1(n_max: int) -> GeneratorSet:
    """Truncated oscillator algebra on |0..n_max>.

    a^dagger a = N holds exactly; [a, a^dagger] = 1 on rows 0..n_max-1, the
    last row is the truncation artifact.
    """
    if n_max < 1:
        raise InvalidWeight("n_max must be >= 1")
    dim = n_max + 1
    n = np.arange(dim)
    a = np.zeros((dim, dim), dtype=complex)
    a[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(n[1:])
    adag = a.conj().T
    gens = {"a": _freeze(a), "adag": _freeze(adag), "N": _freeze(np.diag(n).astype(complex))}
    return GeneratorSet(Group.H1, 0.0, dim, gens)


def build_su11(h: float | Fraction, n_max: int) -> GeneratorSet:
    """su(1,1) positive discrete series with Bargmann index h on |h,n>, n=0..n_max.

    Admissible weights: 2h a positive integer, or h = 1/4 (the even-Fock
    amplitude-squared realization used for the quenched oscillator).
    """
    h = float(h)
    if n_max < 1:
        raise InvalidWeight("n_max must be >= 1")
    two_h = 2 * h
    ok = (abs(two_h - round(two_h)) < 1e-12 and round(two_h) >= 1) or abs(h - 0.25) < 1e-12
    if not ok:
        raise InvalidWeight(f"2h must be a positive integer or h=1/4, got h={h}")
    dim = n_max + 1
    n = np.arange(dim)
    k0 = np.diag(n + h).astype(complex)
    kp = np.zeros((dim, dim), dtype=complex)
    # <n+1| K+ |n> = sqrt((n+1)(2h+n))
    kp[np.arange(1, dim), np.arange(dim - 1)] = np.sqrt((n[:-1] + 1) * (two_h + n[:-1]))
    km = kp.conj().T
    gens = {"K+": _freeze(kp), "K-": _freeze(km), "K0": _freeze(k0)}
    return GeneratorSet(Group.SU11, h, dim, gens)


def build_su3_fundamental() -> GeneratorSet:
    """The eight 3x3 inversion/transition matrices for a three-level atom.

    Note the Cartans carry twice the spin-1/2 normalization:
    [Sz_pq, S+_pq] = +2 S+_pq for these matrices.
    """
    def unit(i: int, j: int) -> np.ndarray:
        m = np.zeros((3, 3), dtype=complex)
        m[i, j] = 1.0
        return m

    gens = {
        "Sz12": _freeze(np.diag([0.0, 1.0, -1.0])),
        "Sz13": _freeze(np.diag([1.0, 0.0, -1.0])),
        # the 23 Cartan is the difference of the two above
        "Sz23": _freeze(np.diag([1.0, -1.0, 0.0])),
        "S+12": _freeze(unit(1, 2)),
        "S-12": _freeze(unit(2, 1)),
        "S+13": _freeze(unit(0, 2)),
        "S-13": _freeze(unit(2, 0)),
        "S+23": _freeze(unit(0, 1)),
        "S-23": _freeze(unit(1, 0)),
    }
    return GeneratorSet(Group.SU3, 0.0, 3, gens)


@dataclass(frozen=True)
class HamiltonianAssembly:
    """Evaluator for H(t) = sum_X coeff[X](t) * X + shift(t) * I."""

    gen: GeneratorSet
    coeff: Mapping[str, Coefficient]
    shift: Coefficient = 0.0

    @property
    def dim(self) -> int:
        return self.gen.dim

    @property
    def is_static(self) -> bool:
        return not (callable(self.shift) or any(callable(c) for c in self.coeff.values()))

    def matrix(self, t: float = 0.0) -> np.ndarray:
        h = np.zeros((self.dim, self.dim), dtype=complex)
        for label, c in self.coeff.items():
            value = c(t) if callable(c) else c
            h += complex(value) * self.gen[label]
        s = self.shift(t) if callable(self.shift) else self.shift
        if s != 0:
            h += complex(s) * np.eye(self.dim)
        return h

    __call__ = matrix


def assemble(gen: GeneratorSet, coeff: Mapping[str, Coefficient],
             shift: Coefficient = 0.0) -> HamiltonianAssembly:
    """Bind time-dependent coefficients to a generator set."""
    for label in coeff:
        if label not in gen.generators:
            raise UnknownLabel(f"no generator labelled {label!r} in {gen.group.value}")
    return HamiltonianAssembly(gen, dict(coeff), shift)


def tail_mass(state: np.ndarray, levels: int = 2) -> float:
    """Probability weight sitting in the top `levels` entries of a truncated state."""
    p = np.abs(np.asarray(state)) ** 2
    return float(np.sum(p[-levels:]))


def check_tail_mass(state: np.ndarray, threshold: float = 1e-10) -> None:
    """Raise TruncationOverflow if an evolved state leans on the truncation edge."""
    m = tail_mass(state)
    if m > threshold:
        raise TruncationOverflow(
            f"tail mass {m:.3e} exceeds {threshold:g}; increase the truncation")


def required_truncation(probabilities: Callable[[int], float],
                        tail: float = 1e-12, lo: int = 32, hi: int = 512) -> int:
    """Smallest n_max in [lo, hi] whose predicted tail mass is below `tail`.

    `probabilities(n)` is the closed-form occupation of level n.  Raises
    TruncationOverflow if even `hi` levels would be truncation-limited.
    """
    cumulative = 0.0
    for n in range(hi + 1):
        cumulative += probabilities(n)
        if n >= lo and 1.0 - cumulative < tail:
            return n
    if 1.0 - cumulative < tail:
        return hi
    raise TruncationOverflow(
        f"distribution needs more than {hi} levels for tail mass {tail:g}")
