import math

import numpy as np
import pytest
from scipy.linalg import expm

from krylov_optics.algebra import Group
from krylov_optics.errors import DomainError, NotNormalized, TruncationOverflow
from krylov_optics.models import (ModelFamily, ModelSpec, Regime,
                                  classify_regime, complexity_from_lambda,
                                  complexity_from_state, run_model,
                                  su2_probabilities, su3_complexity_closed,
                                  su11_probabilities, sweep)

F = ModelFamily


def spec_su11(g, omega, omega0=4.0, eta=0.0):
    return ModelSpec(F.SU11_TWO_MODE,
                     {"omega0": omega0, "omega": omega, "g": g, "eta": eta})


class TestComplexityFromLambda:
    def test_zero(self):
        for group, w in ((Group.SU2, 5.0), (Group.SU11, 0.5), (Group.H1, 0.0)):
            assert complexity_from_lambda(group, w, 0.0) == 0.0

    def test_su2_pole_saturates_bound(self):
        assert complexity_from_lambda(Group.SU2, 5.0, math.inf) == 10.0

    def test_su11_hyperbolic_identity(self):
        # x = tanh(1): x^2/(1-x^2) = sinh(1)^2
        got = complexity_from_lambda(Group.SU11, 0.5, math.tanh(1.0))
        assert got == pytest.approx(math.sinh(1.0) ** 2, rel=1e-12)

    def test_su11_domain(self):
        with pytest.raises(DomainError):
            complexity_from_lambda(Group.SU11, 0.5, 1.0)

    def test_h1(self):
        assert complexity_from_lambda(Group.H1, 0.0, 3.0) == pytest.approx(9.0)


class TestComplexityFromState:
    def test_basis_states(self):
        assert complexity_from_state(np.array([1, 0, 0])) == 0.0
        assert complexity_from_state(np.array([0, 1, 0, 0])) == pytest.approx(1.0)

    def test_spectral_oracle_spin_half(self):
        # H = J+ + J- on spin 1/2 from the lowest state; C(pi/4) = sin^2(pi/4)
        h = np.array([[0.0, 1.0], [1.0, 0.0]])
        psi = expm(-1j * h * math.pi / 4) @ np.array([1.0, 0.0])
        assert complexity_from_state(psi) == pytest.approx(0.5, abs=1e-12)

    def test_quadratic_cost_weights(self):
        psi = np.array([0.0, math.sqrt(0.5), 0.0, math.sqrt(0.5)])
        assert complexity_from_state(psi) == pytest.approx(2.0)
        assert complexity_from_state(psi, exponent=2) == pytest.approx(5.0)
        with pytest.raises(ValueError):
            complexity_from_state(psi, exponent=3)

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            complexity_from_state(np.array([1.0, 1.0]))


class TestModelSpecValidation:
    def test_missing_parameter(self):
        with pytest.raises(ValueError):
            ModelSpec(F.SU2_DRIVEN, {"omega0": 1.0})

    def test_half_integer_spin(self):
        with pytest.raises(ValueError):
            ModelSpec(F.SU2_DRIVEN, {"omega0": 1, "omega": 1, "b0": 1, "j": 0.3})

    def test_truncation_rules(self):
        with pytest.raises(ValueError):
            ModelSpec(F.SU11_TWO_MODE,
                      {"omega0": 4, "omega": 2, "g": 1}, truncation=8)
        with pytest.raises(ValueError):
            ModelSpec(F.SU2_DRIVEN,
                      {"omega0": 4, "omega": 2, "b0": 1, "j": 1}, truncation=64)


class TestRunModel:
    def test_su2_resonance_peak_and_period(self):
        spec = ModelSpec(F.SU2_DRIVEN, {"omega0": 4, "omega": 4, "b0": 2.1, "j": 5})
        t_peak = math.pi / 2.1
        trace = run_model(spec, np.array([t_peak, t_peak + math.pi / 1.05]),
                          method="closed")
        assert trace.c[0] == pytest.approx(10.0, abs=1e-9)
        assert trace.c[1] == pytest.approx(10.0, abs=1e-9)  # one period later

    def test_h1_resonance_quadratic(self):
        spec = ModelSpec(F.H1_DRIVEN, {"omega0": 4, "omega": 4, "f0": 3, "eta": 0})
        t = np.linspace(0.1, 10, 100)
        trace = run_model(spec, t, method="both")
        want = 9.0 * t**2
        assert np.max(np.abs(trace.c - want) / want) <= 1e-12
        assert np.max(np.abs(trace.c_numeric - want) / want) <= 1e-9

    def test_h1_damped_saturation(self):
        # off resonance the damped mode settles at f0^2/(eta^2 + delta^2)
        f0, eta, delta = 3.0, 0.1, -2.0
        spec = ModelSpec(F.H1_DRIVEN, {"omega0": 4, "omega": 2, "f0": f0,
                                       "eta": eta})
        c_late = run_model(spec, np.array([50.0 / eta]), method="closed").c[0]
        assert abs(c_late - f0**2 / (eta**2 + delta**2)) <= 1e-6

    def test_su11_transition_quadratic(self):
        trace = run_model(spec_su11(0.5, 3.5), np.linspace(0, 5, 101),
                          method="closed")
        want = 0.25 * 0.5**2 * trace.t**2
        assert np.max(np.abs(trace.c - want)) <= 1e-10

    def test_su11_exponential_closed_form(self):
        g, delta = 2.1, 2.0
        nu = math.sqrt(g**2 - delta**2) / 2
        trace = run_model(spec_su11(g, 2.0), np.linspace(0, 10, 51),
                          method="closed")
        want = np.sinh(nu * trace.t) ** 2 / (1 - delta**2 / g**2)
        assert np.max(np.abs(trace.c - want) / np.maximum(1, want)) <= 1e-11

    def test_quench_against_truncated_fock_oracle(self):
        om0, eta0, tau = 1.0, 0.5, 7.5
        spec = ModelSpec(F.QUENCH, {"omega0": om0, "eta0": eta0, "tau": tau})
        t = np.linspace(0, 7.5, 16)
        trace = run_model(spec, t, method="closed")
        # independent oracle: evolve the vacuum in a 301-level Fock space
        n_max = 300
        n = np.arange(n_max + 1)
        ad = np.diag(np.sqrt(n[1:]), -1)
        h1 = eta0 / 2 * (ad @ ad + (ad @ ad).T) + (om0 + eta0) * np.diag(n + 0.5)
        energies, modes = np.linalg.eigh(h1)
        psi0 = np.zeros(n_max + 1)
        psi0[0] = 1.0
        amp = modes.T @ psi0
        for i, ti in enumerate(t):
            psi = modes @ (np.exp(-1j * energies * ti) * amp)
            c_num = np.sum((n // 2) * np.abs(psi) ** 2)
            assert abs(trace.c[i] - c_num) <= 1e-10

    def test_quench_freeze(self):
        spec = ModelSpec(F.QUENCH, {"omega0": 1, "eta0": 0.5, "tau": 7.5})
        t = np.linspace(0, 15, 301)
        trace = run_model(spec, t, method="both")
        c_tau = run_model(spec, np.array([7.5]), method="closed").c[0]
        after = trace.c[trace.t > 7.5]
        assert np.max(np.abs(after - c_tau)) <= 1e-10

    def test_kicked_grid_validation(self):
        spec = ModelSpec(F.SU2_KICKED,
                         {"omega0": 1, "kick_period": 1, "chi": 1, "j": 5})
        with pytest.raises(ValueError):
            run_model(spec, np.array([0.0, 0.5, 1.0]))

    def test_budget_guard_reports_rate(self):
        spec = spec_su11(3.0, 4.0)   # resonant, C ~ sinh^2(1.5 t)
        with pytest.raises(TruncationOverflow, match="exp"):
            run_model(spec, np.linspace(0, 30, 31), method="closed")


class TestSU3Closed:
    def test_zero_at_start(self, rng):
        for _ in range(50):
            om = rng.uniform(0.1, 6)
            g1, g2 = rng.uniform(0.1, 6, size=2)
            assert abs(su3_complexity_closed(om, g1, g2, 0.0)) <= 1e-12

    def test_requires_coupling(self):
        with pytest.raises(ValueError):
            su3_complexity_closed(4.0, 0.0, 0.0, 1.0)

    def test_against_spectral_state_route(self):
        t = np.linspace(0, 20, 801)
        spec = ModelSpec(F.SU3_V_CONFIG, {"omega": 4, "g1": 5, "g2": 2})
        trace = run_model(spec, t, method="both")
        assert np.max(trace.dev) <= 1e-9
        assert np.all(trace.c <= 2 + 1e-8)

    def test_beat_structure(self):
        # the spectral-route trace is a combination of exactly the three
        # printed cosines: DC, lambda, (lambda -+ 3 omega)/2
        om, g1, g2 = 2.0, 3.0, 4.0
        lam = math.sqrt(4 * (g1**2 + g2**2) + 9 * om**2)
        t = np.linspace(0, 20, 801)
        spec = ModelSpec(F.SU3_V_CONFIG, {"omega": om, "g1": g1, "g2": g2})
        c_num = run_model(spec, t, method="numeric").c
        basis = np.column_stack([
            np.ones_like(t), np.cos(lam * t),
            np.cos(0.5 * (lam - 3 * om) * t), np.cos(0.5 * (lam + 3 * om) * t)])
        _, residual, *_ = np.linalg.lstsq(basis, c_num, rcond=None)
        assert float(residual[0] if len(residual) else 0.0) <= 1e-18


class TestRegimes:
    @pytest.mark.parametrize("g,delta,want", [
        (1.0, 2.0, Regime.OSCILLATORY),
        (0.5, 0.5, Regime.QUADRATIC),
        (2.1, 2.0, Regime.EXPONENTIAL),
        (0.5, -0.5, Regime.QUADRATIC),
    ])
    def test_classifier(self, g, delta, want):
        assert classify_regime(g, delta) is want

    def test_boundary_tolerance(self):
        assert classify_regime(1.0, 1.0 + 1e-13) is Regime.QUADRATIC
        assert classify_regime(1.0, 1.0 + 1e-9) is Regime.OSCILLATORY

    def test_rejects_negative_g(self):
        with pytest.raises(ValueError):
            classify_regime(-1.0, 2.0)


class TestProbabilities:
    def test_su2_binomial_matches_full_representation(self):
        # evolve the 11-dimensional spin-5 system directly and compare level
        # occupations with the binomial form at x = |L+|^2
        from krylov_optics.algebra import assemble, build_su2
        from krylov_optics.evolution import integrate_propagator

        j, b0, om0, om = 5.0, 2.1, 4.0, 2.0
        spec = ModelSpec(F.SU2_DRIVEN, {"omega0": om0, "omega": om, "b0": b0, "j": j})
        t = np.linspace(0, 8, 17)
        trace = run_model(spec, t, method="closed", probabilities=True)

        def eps(s):
            return 0.5 * b0 * np.exp(-1j * om * s)

        ham = assemble(build_su2(j),
                       {"J+": eps, "J-": lambda s: np.conj(eps(s)),
                        "J0": lambda s: om0})
        traj = integrate_propagator(ham, t, 1e-12)
        for i in range(len(t)):
            psi = traj.u[i][:, 0]
            assert np.max(np.abs(np.abs(psi) ** 2 - trace.p[i])) <= 1e-8

    def test_normalization(self, rng):
        for _ in range(100):
            j = rng.integers(1, 12)
            x = rng.uniform(0, 50)
            assert abs(su2_probabilities(float(j), math.sqrt(x)).sum() - 1) <= 1e-10
            h = rng.choice([0.25, 0.5, 1.0, 1.5])
            m = rng.uniform(0, 0.9)
            p = su11_probabilities(h, m, 500)
            assert abs(p.sum() - 1) <= 1e-8

    def test_su2_pole_distribution(self):
        p = su2_probabilities(2.0, math.inf)
        assert p[-1] == 1.0 and p[:-1].sum() == 0.0


class TestSweep:
    def test_regime_diagonal(self):
        values = np.linspace(0, 3, 61)
        res = sweep(spec_su11(1.0, 2.0), (("g", values), ("delta", values)),
                    summary="regime")
        for i in range(61):
            for k in range(61):
                want = "quadratic" if i == k else (
                    "oscillatory" if values[i] < values[k] else "exponential")
                assert res.values[i][k] == want

    def test_single_cell_equals_run_model(self):
        t = np.linspace(0, 5, 51)
        res = sweep(spec_su11(1.0, 2.0), (("g", [1.0]), ("delta", [2.0])),
                    t_grid=t, summary="c_max")
        trace = run_model(spec_su11(1.0, 2.0), t, method="closed")
        assert res.values[0][0] == pytest.approx(float(np.max(trace.c)), rel=1e-12)

    def test_failing_cell_is_flagged_not_fatal(self):
        t = np.linspace(0, 30, 31)
        res = sweep(spec_su11(1.0, 2.0), (("g", [0.5, 3.0]), ("delta", [0.0])),
                    t_grid=t, summary="c_max")
        assert math.isnan(res.values[1][0])
        assert np.isfinite(res.values[0][0])
        assert len(res.errors) == 1 and res.errors[0][:2] == (1, 0)

    def test_threads_match_serial(self):
        t = np.linspace(0, 4, 41)
        axes = (("g", np.linspace(0.2, 2.5, 5)), ("delta", np.linspace(0, 2, 5)))
        serial = sweep(spec_su11(1.0, 2.0), axes, t_grid=t, summary="c_end")
        threaded = sweep(spec_su11(1.0, 2.0), axes, t_grid=t, summary="c_end",
                         threads=4)
        assert np.array_equal(serial.values, threaded.values)

    def test_su2_damped_saturation_sweep(self):
        # resonant saturation C(inf) = 2j sin^2(B0 / 2 eta)
        base = ModelSpec(F.SU2_DAMPED,
                         {"omega0": 4, "omega": 4, "b0": 5, "eta": 0.09, "j": 5})
        t = np.linspace(0, 400, 201)
        res = sweep(base, (("b0", [5.0, 5.01]), ("eta", [0.09, 0.091])),
                    t_grid=t, summary="c_end")
        for i, b0 in enumerate([5.0, 5.01]):
            for k, eta in enumerate([0.09, 0.091]):
                want = 10 * math.sin(b0 / (2 * eta)) ** 2
                assert res.values[i][k] == pytest.approx(want, abs=2e-3)
