import math
import os
import tempfile
import unittest

import numpy as np

from modules.core.errors import DomainError, FiniteEscapeError, GridError, PreconditionError
from modules.comparison import (
    CollarModel,
    RiccatiInit,
    SpaceFormModel,
    collar_pullback_split,
    comparison_margins,
    constant_profile,
    convergence_order,
    decay_sample,
    endpoint_jacobi_defect,
    fund_form_envelope,
    gronwall_bound,
    hessian_pullback_defect,
    jacobi_solve,
    log_derivative,
    model_jacobi_solve,
    model_shape_operator,
    perturbed_jacobi_solve,
    random_profile,
    rauch_check,
    riccati_solve,
    scalar_envelope,
    sinusoidal_profile,
    transverse_decay_experiment,
)
from modules.geometry import DiskBody, IdealPoint, IdealPolygon, imaginary_axis


def point_at_axis_distance(r, height=1.0):
    """Point at distance r from the imaginary axis, at the given height on the unit circle scale"""
    angle = math.asin(1.0 / math.cosh(r))
    return height * complex(math.cos(angle), math.sin(angle))


class TestModelShapeOperator(unittest.TestCase):
    def test_fixed_point(self):
        """Test κ = a is stationary"""
        for t in (0.1, 1.0, 5.0):
            self.assertAlmostEqual(model_shape_operator(1.3, 1.3, t), 1.3, places=12)

    def test_closed_forms(self):
        """Test tanh and coth model solutions"""
        self.assertAlmostEqual(model_shape_operator(0.0, 1.0, 1.0), math.tanh(1.0), places=12)
        self.assertAlmostEqual(model_shape_operator(0.0, 1.0, 1.0, p_flag=True), 1.0 / math.tanh(1.0), places=12)
        self.assertAlmostEqual(model_shape_operator(0.0, 1.0, 1.0), 0.76159, places=5)
        self.assertAlmostEqual(model_shape_operator(0.0, 1.0, 1.0, p_flag=True), 1.31304, places=5)

    def test_singular_at_zero(self):
        """Test the singular model rejects t <= 0"""
        with self.assertRaises(DomainError):
            model_shape_operator(0.0, 1.0, 0.0, p_flag=True)
        with self.assertRaises(DomainError):
            model_shape_operator(-1.0, 1.0, 1.0)

    def test_monotone_toward_a(self):
        """Test solutions approach a monotonically"""
        values = [model_shape_operator(0.2, 1.0, t) for t in np.linspace(0.0, 6.0, 30)]
        self.assertTrue(all(x <= y for x, y in zip(values, values[1:])))
        coth = [model_shape_operator(0.0, 1.0, t, p_flag=True) for t in np.linspace(0.1, 6.0, 30)]
        self.assertTrue(all(x >= y for x, y in zip(coth, coth[1:])))


class TestRiccatiSolve(unittest.TestCase):
    def test_stationary(self):
        """Test S ≡ a Id for constant curvature a² and Q0 = a Id"""
        init = RiccatiInit.regular(1.2 * np.eye(2))
        path = riccati_solve(constant_profile(2, 1.2), init, 3.0, 0.01)
        self.assertLess(np.max(np.abs(path.values - 1.2 * np.eye(2))), 1e-10)

    def test_tanh(self):
        """Test S(1) = tanh(1) Id from Q0 = 0"""
        path = riccati_solve(constant_profile(3, 1.0), RiccatiInit.regular(np.zeros((3, 3))), 1.0, 0.01)
        self.assertLess(np.max(np.abs(path.values[-1] - math.tanh(1.0) * np.eye(3))), 1e-8)
        self.assertLessEqual(path.symmetry_defect(), 1e-8)

    def test_singular_start(self):
        """Test a P = Id start reproduces coth"""
        init = RiccatiInit(np.eye(1), np.zeros((1, 1)))
        path = riccati_solve(constant_profile(1, 1.0), init, 1.0, 0.005)
        self.assertAlmostEqual(path.values[-1, 0, 0], 1.0 / math.tanh(1.0), places=6)
        self.assertAlmostEqual(path.t[0], 1e-4)

    def test_finite_escape(self):
        """Test S(0) = -2 escapes where tanh t = 1/2"""
        init = RiccatiInit.regular([[-2.0]])
        with self.assertRaises(FiniteEscapeError) as ctx:
            riccati_solve(constant_profile(1, 1.0), init, 2.0, 1e-3)
        self.assertAlmostEqual(ctx.exception.escape_time, math.atanh(0.5), delta=2e-3)

    def test_fourth_order(self):
        """Test halving h shrinks the error at least 8x"""
        init = RiccatiInit.regular([[0.0]])
        hs = [0.2, 0.1, 0.05]
        errors = [abs(riccati_solve(constant_profile(1, 1.0), init, 2.0, h).values[-1, 0, 0] - math.tanh(2.0))
                  for h in hs]
        self.assertGreaterEqual(errors[0] / errors[1], 8.0)
        self.assertGreaterEqual(errors[1] / errors[2], 8.0)
        self.assertGreater(convergence_order(errors, hs), 3.5)

    def test_dimension_mismatch(self):
        """Test the init must match the profile dimension"""
        with self.assertRaises(DomainError):
            riccati_solve(constant_profile(2, 1.0), RiccatiInit.regular([[0.0]]), 1.0, 0.1)

    def test_csv_export(self):
        """Test OperatorPath CSV carries metadata comments and S_ij columns"""
        path = riccati_solve(constant_profile(2, 1.0), RiccatiInit.regular(np.zeros((2, 2))), 0.5, 0.1)
        with tempfile.TemporaryDirectory() as tmp:
            target = os.path.join(tmp, "s.csv")
            path.to_csv(target)
            with open(target) as f:
                text = f.read()
        self.assertIn("# init=", text)
        self.assertIn("t,S_00,S_01,S_10,S_11", text)


class TestRiccatiInit(unittest.TestCase):
    def test_invariants(self):
        """Test projection and kernel conditions"""
        with self.assertRaises(DomainError):
            RiccatiInit([[2.0]], [[0.0]])
        with self.assertRaises(DomainError):
            RiccatiInit(np.eye(1), [[1.0]])
        with self.assertRaises(PreconditionError):
            RiccatiInit.regular([[-1.0]], convex=True)


class TestSandwich(unittest.TestCase):
    def test_sinusoidal(self):
        """Test the sinusoidal profile sits between the a = 1 and b = 1.5 models"""
        init = RiccatiInit.regular([[0.0]])
        path = riccati_solve(sinusoidal_profile(1), init, math.pi, 0.01)
        margins = comparison_margins(path, init, 1.0, 1.5)
        self.assertTrue(margins.passed)
        self.assertGreaterEqual(margins.lower, -1e-6)
        self.assertGreaterEqual(margins.upper, -1e-6)

    def test_tight_lower_margin(self):
        """Test constant curvature a² gives a tight lower margin"""
        init = RiccatiInit.regular(np.zeros((2, 2)))
        path = riccati_solve(constant_profile(2, 1.0), init, 2.0, 0.01)
        margins = comparison_margins(path, init, 1.0, 1.5)
        self.assertLess(abs(margins.lower), 1e-8)

    def test_random_profiles(self):
        """Test the sandwich over randomized profiles and initial data"""
        rng = np.random.default_rng(2024)
        for trial in range(40):
            n = 1 + trial % 3
            profile = random_profile(n, rng)
            self.assertTrue(profile.check_pinching(np.linspace(0.0, 2.0, 11)))
            init = RiccatiInit.random(rng, n)
            path = riccati_solve(profile, init, 2.0, 0.02)
            margins = comparison_margins(path, init, profile.a, profile.b)
            self.assertTrue(margins.passed, msg=f"trial {trial}: {margins.to_json()}")

    def test_indefinite_rejected(self):
        """Test comparison margins need Q0 >= 0"""
        init = RiccatiInit.regular([[-0.5]])
        path = riccati_solve(constant_profile(1, 1.0), init, 0.5, 0.1)
        with self.assertRaises(PreconditionError):
            comparison_margins(path, init, 1.0, 1.5)

    def test_scalar_envelope(self):
        """Test a scalar start in [0.3, 0.7] stays between the two envelopes"""
        init = RiccatiInit.regular([[0.5]])
        path = riccati_solve(sinusoidal_profile(1), init, math.pi, 0.01)
        for t, S in zip(path.t, path.values):
            lower, upper = scalar_envelope(0.3, 0.7, 1.0, 1.5, t)
            self.assertGreaterEqual(S[0, 0], lower - 1e-6)
            self.assertLessEqual(S[0, 0], upper + 1e-6)

    def test_fund_form_envelope(self):
        """Test envelope endpoints and the cross-check against the solver"""
        self.assertEqual(fund_form_envelope(0.5, 0.8, 1.0, 1.5, 0.0), (0.5, 0.8))
        lower, upper = fund_form_envelope(0.5, 0.5, 1.0, 1.5, 1.0)
        self.assertLess(lower, upper)
        path = riccati_solve(constant_profile(1, 1.0), RiccatiInit.regular([[0.5]]), 1.0, 0.01)
        self.assertAlmostEqual(path.values[-1, 0, 0], lower, places=8)
        far = fund_form_envelope(0.5, 0.7, 1.0, 1.0, 30.0)
        self.assertAlmostEqual(far[0], 1.0, places=10)
        self.assertAlmostEqual(far[1], 1.0, places=10)
        with self.assertRaises(DomainError):
            fund_form_envelope(0.8, 0.5, 1.0, 1.5, 1.0)


class TestJacobi(unittest.TestCase):
    def test_cosh(self):
        """Test J(t) = cosh(bt) e1 and tight Rauch bounds in constant curvature"""
        path = jacobi_solve(constant_profile(2, 1.5), [1.0, 0.0], [0.0, 0.0], 2.0, 0.005)
        expected = np.cosh(1.5 * path.t)
        self.assertLess(np.max(np.abs(path.values[:, 0] - expected) / expected), 1e-9)
        report = rauch_check(path, 1.5)
        self.assertTrue(report.passed)
        self.assertLess(abs(report.derivative_excess), 1e-8)

    def test_sinusoidal_rauch(self):
        """Test |J(1)| <= cosh(1.5) for the sinusoidal profile"""
        path = jacobi_solve(sinusoidal_profile(1), [1.0], [0.0], 1.0, 0.005)
        self.assertLessEqual(abs(path.values[-1, 0]), math.cosh(1.5))
        self.assertTrue(rauch_check(path, 1.5).passed)
        rates = log_derivative(path)
        self.assertTrue(np.all(rates >= np.tanh(path.t) - 1e-8))
        self.assertTrue(np.all(rates <= 1.5 * np.tanh(1.5 * path.t) + 1e-8))

    def test_rauch_precondition(self):
        """Test the Rauch check refuses J'(0) != 0"""
        path = jacobi_solve(constant_profile(1, 1.0), [1.0], [0.5], 1.0, 0.01)
        with self.assertRaises(PreconditionError):
            rauch_check(path, 1.0)

    def test_bad_grid(self):
        """Test grid validation"""
        with self.assertRaises(GridError):
            jacobi_solve(constant_profile(1, 1.0), [1.0], [0.0], 1.0, 0.0)
        with self.assertRaises(DomainError):
            jacobi_solve(constant_profile(2, 1.0), [1.0], [0.0], 1.0, 0.1)


class TestPerturbedJacobi(unittest.TestCase):
    def test_zero_forcing(self):
        """Test K ≡ 0 when J ≡ 0"""
        model = SpaceFormModel(2)
        v = np.array([0.6, 0.0])
        jpath = model_jacobi_solve(model, v, [0.0, 0.0], [0.0, 0.0], 1.0, 0.01)
        kpath = perturbed_jacobi_solve(model, v, jpath)
        self.assertEqual(np.max(np.abs(kpath.values)), 0.0)

    def test_gronwall(self):
        """Test ‖(K, K')(1)‖ stays under the Gronwall bound for b|v| <= 1"""
        rng = np.random.default_rng(7)
        for trial in range(100):
            n = 2 + trial % 2
            g = rng.normal(size=n)
            g *= rng.uniform(0.0, 0.3) / np.linalg.norm(g)
            model = SpaceFormModel(n, 1.0, gradient=g, derivative_bound=float(np.linalg.norm(g)))
            v = rng.normal(size=n)
            v *= rng.uniform(0.05, 1.0) / (model.b * np.linalg.norm(v))
            w = rng.normal(size=n)
            w /= np.linalg.norm(w)
            jpath = model_jacobi_solve(model, v, w, np.zeros(n), 1.0, 0.01)
            kpath = perturbed_jacobi_solve(model, v, jpath)
            state = np.linalg.norm(np.concatenate([kpath.values[-1], kpath.derivative[-1]]))
            bound = gronwall_bound(model.b, model.derivative_bound, np.linalg.norm(v), 1.0)
            self.assertLessEqual(state, bound, msg=f"trial {trial}")

    def test_richardson(self):
        """Test K(1) against a 16x finer reference"""
        model = SpaceFormModel(2)
        v = np.array([0.5, 0.0])
        w = np.array([0.0, 1.0])
        values = []
        for h in (0.01, 0.01 / 16):
            jpath = model_jacobi_solve(model, v, w, np.zeros(2), 1.0, h)
            values.append(perturbed_jacobi_solve(model, v, jpath).values[-1])
        self.assertLessEqual(np.linalg.norm(values[0] - values[1]) / np.linalg.norm(values[1]), 1e-6)

    def test_quadratic_scaling(self):
        """Test K scales by λ² when J and w scale by λ"""
        model = SpaceFormModel(2)
        v = np.array([0.4, 0.3])
        w = np.array([0.2, 0.9])
        base = perturbed_jacobi_solve(model, v, model_jacobi_solve(model, v, w, np.zeros(2)))
        scaled = perturbed_jacobi_solve(model, v, model_jacobi_solve(model, v, 3.0 * w, np.zeros(2)))
        np.testing.assert_allclose(scaled.values, 9.0 * base.values, rtol=1e-9, atol=1e-14)

    def test_requires_derivative_bound(self):
        """Test ∇R terms need a derivative bound"""
        model = SpaceFormModel(2, gradient=[0.1, 0.0])
        v = np.array([0.5, 0.0])
        jpath = model_jacobi_solve(model, v, [0.0, 1.0], [0.0, 0.0])
        with self.assertRaises(PreconditionError):
            perturbed_jacobi_solve(model, v, jpath)

    def test_grid_mismatch(self):
        """Test the J path must share the K grid"""
        model = SpaceFormModel(2)
        v = np.array([0.5, 0.0])
        jpath = model_jacobi_solve(model, v, [0.0, 1.0], [0.0, 0.0], 1.0, 0.01)
        with self.assertRaises(GridError):
            perturbed_jacobi_solve(model, v, jpath, h=0.02)

    def test_endpoint_defect(self):
        """Test |J(1) - w| <= (cosh(b|v|) - 1)|w|"""
        rng = np.random.default_rng(3)
        model = SpaceFormModel(3, 1.0, gradient=[0.1, 0.0, 0.0], derivative_bound=0.1)
        for _ in range(20):
            v = rng.normal(size=3)
            v *= 0.8 / np.linalg.norm(v)
            defect, bound = endpoint_jacobi_defect(model, v, rng.normal(size=3))
            self.assertLessEqual(defect, bound + 1e-10)


class TestTransverseDecay(unittest.TestCase):
    def test_disk_slope(self):
        """Test the decay fit for the unit disk about i with varying boundary curvature"""
        fit = transverse_decay_experiment(DiskBody(1j, 1.0), range(2, 9), curvature_gradient=0.5)
        self.assertFalse(fit.vanishes)
        self.assertLessEqual(fit.slope, -1.5)
        self.assertLessEqual(fit.bound_slope, -0.9)
        self.assertTrue(fit.passed)
        self.assertLessEqual(fit.j0_slope, -1.0)

    def test_constant_curvature_boundary_vanishes(self):
        """Test K⊥(0) is exactly zero when the boundary curvature is constant"""
        fit = transverse_decay_experiment(DiskBody(1j, 1.0), [2.0, 4.0, 6.0])
        self.assertTrue(fit.vanishes)
        self.assertEqual(fit.slope, -math.inf)
        self.assertTrue(fit.passed)
        for sample in fit.samples:
            self.assertEqual(sample.measured, 0.0)
            self.assertEqual(sample.oracle, 0.0)
            self.assertGreater(sample.bound, 0.0)

    def test_geodesic_slope(self):
        """Test the decay fit for the imaginary axis against the collar closed form"""
        fit = transverse_decay_experiment(imaginary_axis(), [2, 4, 6, 8], curvature_gradient=0.5)
        self.assertLessEqual(fit.slope, -1.5)
        self.assertLessEqual(fit.j0_slope, -0.99)
        collar = CollarModel(0.0, 0.5)
        for sample in fit.samples:
            self.assertLessEqual(sample.measured, sample.bound)
            self.assertAlmostEqual(sample.j0, sample.jest0, delta=1e-9 * sample.jest0 + 1e-14)
            expected = collar.k_perp(0.0, sample.r)
            self.assertAlmostEqual(sample.k_perp, expected, delta=1e-6 * abs(expected))
            self.assertTrue(sample.oracle_agrees)

    def test_sign_follows_curvature_gradient(self):
        """Test K⊥(0) is negative when the boundary curvature increases and positive otherwise"""
        kappa = 1.0 / math.tanh(1.0)
        self.assertLess(decay_sample(3.0, kappa, curvature_gradient=0.4).k_perp, 0.0)
        self.assertGreater(decay_sample(3.0, kappa, curvature_gradient=-0.4).k_perp, 0.0)

    def test_closed_form_geodesic_bound(self):
        """Test the geodesic bound against its closed form"""
        r = 3.0
        sample = decay_sample(r, 0.0, h=1e-3)
        expected = (4.0 / 3.0) * (math.cosh(r) - 1.0) / (math.cosh(r) ** 2 / math.tanh(r))
        self.assertAlmostEqual(sample.bound, expected, delta=1e-8)

    def test_quadratic_in_scale(self):
        """Test K⊥(0) and its bound scale by λ²"""
        kappa = 1.0 / math.tanh(1.0)
        base = decay_sample(4.0, kappa, curvature_gradient=0.3)
        scaled = decay_sample(4.0, kappa, j_scale=2.0, curvature_gradient=0.3)
        self.assertAlmostEqual(scaled.bound, 4.0 * base.bound, delta=1e-12)
        self.assertAlmostEqual(scaled.k_perp / base.k_perp, 4.0, places=9)
        self.assertTrue(scaled.oracle_agrees)

    def test_collar_degenerates(self):
        """Test collar coordinates with j <= 0 are rejected"""
        with self.assertRaises(DomainError):
            CollarModel(-2.0).j(0.0, 5.0)

    def test_errors(self):
        """Test short radius ranges and unsupported bodies"""
        with self.assertRaises(GridError):
            transverse_decay_experiment(DiskBody(1j, 1.0), [2.0, 3.0])
        triangle = IdealPolygon([IdealPoint(-1.0), IdealPoint(1.0), IdealPoint.infinity()])
        with self.assertRaises(PreconditionError):
            transverse_decay_experiment(triangle, [2.0, 3.0, 4.0])


class TestHessianPullback(unittest.TestCase):
    def test_constant(self):
        """Test constant ψ gives zero terms"""
        split = hessian_pullback_defect(imaginary_axis(), lambda s: 2.0, lambda s: 0.0, lambda s: 0.0,
                                        point_at_axis_distance(1.5))
        self.assertEqual(split.hessian_term, 0.0)
        self.assertEqual(split.gradient_term, 0.0)
        self.assertLess(abs(split.finite_difference), 1e-6)

    def test_linear_along_geodesic(self):
        """Test linear ψ at distance 5 against finite differences"""
        split = hessian_pullback_defect(imaginary_axis(), lambda s: s, lambda s: 1.0, lambda s: 0.0,
                                        point_at_axis_distance(5.0))
        self.assertAlmostEqual(split.r, 5.0, places=8)
        self.assertLessEqual(split.defect, 1e-3)

    def test_oscillating_on_axis(self):
        """Test sin ψ near the axis matches -ψ''/cosh² r"""
        x = point_at_axis_distance(1.0, height=1.7)
        split = hessian_pullback_defect(imaginary_axis(), math.sin, math.cos, lambda s: -math.sin(s), x)
        self.assertAlmostEqual(split.hessian_term, math.sin(split.sigma) / math.cosh(1.0) ** 2, places=10)
        self.assertLess(split.defect, 1e-5)

    def test_disk(self):
        """Test a periodic ψ on a disk boundary"""
        body = DiskBody(1j, 1.0)
        scale = math.sinh(1.0)
        psi = lambda s: math.cos(2.0 * s / scale)
        dpsi = lambda s: -2.0 / scale * math.sin(2.0 * s / scale)
        d2psi = lambda s: -4.0 / scale ** 2 * math.cos(2.0 * s / scale)
        x = body.from_disk_model(0.85 * complex(math.cos(0.4), math.sin(0.4)))
        split = hessian_pullback_defect(body, psi, dpsi, d2psi, x)
        self.assertLess(split.defect, 1e-5)

    def test_gradient_bound_decays(self):
        """Test the gradient-term bound decays at rate close to 1"""
        rs = np.arange(2.0, 9.0)
        bounds = [hessian_pullback_defect(imaginary_axis(), lambda s: s, lambda s: 1.0, lambda s: 0.0,
                                          point_at_axis_distance(r)).gradient_bound for r in rs]
        slope, _ = np.polyfit(rs, np.log(bounds), 1)
        self.assertLessEqual(slope, -0.9)

    def test_collar_split_matches_finite_differences(self):
        """Test the split on a boundary of varying curvature against the collar Laplacian"""
        collar = CollarModel(1.0, 0.5)
        split = collar_pullback_split(collar, math.sin, math.cos, lambda s: -math.sin(s), 0.3, 2.0)
        self.assertNotEqual(split.gradient_term, 0.0)
        self.assertLess(split.defect, 1e-6)

    def test_collar_gradient_term_sign(self):
        """Test the gradient term of ψ = σ is ψ'∂σj/j³ and positive for increasing curvature"""
        collar = CollarModel(1.0, 0.5)
        split = collar_pullback_split(collar, lambda s: s, lambda s: 1.0, lambda s: 0.0, 0.0, 3.0)
        j = collar.j(0.0, 3.0)
        expected = 0.5 * math.sinh(3.0) / j ** 3
        self.assertGreater(split.gradient_term, 0.0)
        self.assertAlmostEqual(split.gradient_term, expected, delta=1e-6 * expected)
        self.assertLessEqual(abs(split.gradient_term), split.gradient_bound)
        self.assertLess(split.defect, 1e-6 * expected)

    def test_collar_gradient_term_decays(self):
        """Test the signed gradient term itself decays at rate at least 1"""
        collar = CollarModel(0.5, 0.5)
        rs = np.arange(2.0, 9.0)
        terms = [collar_pullback_split(collar, lambda s: s, lambda s: 1.0, lambda s: 0.0, 0.0, r).gradient_term
                 for r in rs]
        self.assertTrue(all(term > 0 for term in terms))
        slope, _ = np.polyfit(rs, np.log(terms), 1)
        self.assertLessEqual(slope, -1.0)

    def test_inside_rejected(self):
        """Test x in C raises a precondition error"""
        with self.assertRaises(PreconditionError):
            hessian_pullback_defect(imaginary_axis(), math.sin, math.cos, math.sin, 2j)


if __name__ == '__main__':
    unittest.main()
