import math
import unittest

import numpy as np

from modules.core.errors import DomainError, GridError, PreconditionError
from modules.geometry import DiskBody, imaginary_axis
from modules.localization import (
    Grid1D,
    Grid2D,
    LocalizedOperator,
    PartitionOfUnity,
    as_section,
    best_piece,
    boundary_bump,
    constant_bump,
    cutoff_decay_profile,
    first_order_defect,
    form_minimum,
    from_functions,
    ims_identity_defect,
    ims_refinement,
    make_partition,
    moving_window_sequence,
    operator_lower_bound,
    plateau,
    quasi_mode_sequence,
    random_cover,
    rayleigh,
    second_order_defect,
    tensor_partition,
)

TWO_PIECES = [(-1.0, 12.0), (8.0, 21.0)]


def bump_section(grid, center=10.0, half_width=7.0, fiber=1):
    """Smooth compactly supported section: scalar or (sin, cos)-modulated"""
    window = plateau((grid.nodes - center) / half_width)
    if fiber == 1:
        return as_section(window * np.sin(grid.nodes))
    return np.stack([window * np.sin(grid.nodes), window * np.cos(1.3 * grid.nodes)], axis=-1)


class TestGrid(unittest.TestCase):
    def test_weights(self):
        """Test quadrature integrates constants to the interval length"""
        for rule in ('simpson', 'trapezoid'):
            grid = Grid1D(0.0, 3.0, 31, rule)
            self.assertAlmostEqual(grid.integrate(np.ones(31)), 3.0, places=12)
        with self.assertRaises(GridError):
            Grid1D(1.0, 0.0, 10)
        with self.assertRaises(GridError):
            Grid1D(0.0, 1.0, 10, rule='gauss')

    def test_with_step(self):
        """Test step-based construction"""
        grid = Grid1D.with_step(0.0, 20.0, 1e-2)
        self.assertEqual(len(grid.nodes), 2001)
        self.assertAlmostEqual(grid.h, 0.01)


class TestPartition(unittest.TestCase):
    def setUp(self):
        self.grid = Grid1D(0.0, 20.0, 2001)

    def test_single_element(self):
        """Test a single cover element gives ψ ≡ 1"""
        part = make_partition(self.grid, [(-1.0, 21.0)], 1.0)
        self.assertTrue(np.all(part.values == 1.0))
        self.assertTrue(np.all(part.gradient == 0.0))

    def test_two_pieces(self):
        """Test two overlapping intervals"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        self.assertEqual(len(part), 2)
        self.assertLessEqual(part.closure_defect(), 1e-12)
        self.assertLessEqual(part.cross_defect(), 1e-10)
        self.assertTrue(np.all(part.values[0][self.grid.nodes >= 12.0] == 0.0))
        self.assertTrue(np.all(part.values[1][self.grid.nodes <= 8.0] == 0.0))

    def test_random_covers(self):
        """Test closure on random five-element covers"""
        rng = np.random.default_rng(5)
        for _ in range(20):
            cover = random_cover(rng, 0.0, 20.0, 5, 1.0)
            part = make_partition(self.grid, cover, 0.5)
            self.assertLessEqual(part.closure_defect(), 1e-12)
            self.assertLessEqual(part.cross_defect(), 1e-10)

    def test_derivatives_match_differences(self):
        """Test closed-form derivatives against finite differences"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        for k in range(2):
            numeric = np.gradient(part.values[k], self.grid.h, edge_order=2)
            self.assertLess(np.max(np.abs(numeric - part.gradient[k, 0])), 1e-3)
            numeric2 = np.gradient(part.gradient[k, 0], self.grid.h, edge_order=2)
            self.assertLess(np.max(np.abs(numeric2 - part.second[k])), 5e-2)

    def test_gap(self):
        """Test an uncovered node is reported"""
        with self.assertRaises(DomainError) as ctx:
            make_partition(self.grid, [(-1.0, 8.0), (10.0, 21.0)], 1.0)
        self.assertIn("x=8", str(ctx.exception))

    def test_tensor(self):
        """Test tensor-product partitions on a 2-D grid"""
        gx, gy = Grid1D(0.0, 10.0, 201), Grid1D(0.0, 10.0, 201)
        px = make_partition(gx, [(-1.0, 6.0), (4.0, 11.0)], 1.0)
        py = make_partition(gy, [(-1.0, 3.0), (2.0, 7.0), (6.0, 11.0)], 0.5)
        part = tensor_partition(Grid2D(gx, gy), px, py)
        self.assertEqual(len(part), 6)
        self.assertLessEqual(part.closure_defect(), 1e-12)
        self.assertLessEqual(part.cross_defect(), 1e-10)


class TestIms(unittest.TestCase):
    def setUp(self):
        self.grid = Grid1D(0.0, 20.0, 20001)

    def test_single_piece_exact(self):
        """Test ψ ≡ 1 makes both sides equal"""
        part = make_partition(self.grid, [(-1.0, 21.0)], 1.0)
        report = ims_identity_defect(bump_section(self.grid), part, LocalizedOperator(self.grid))
        self.assertEqual(report.defect, 0.0)

    def test_two_pieces(self):
        """Test the identity for a sin-bump and B = 0"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        report = ims_identity_defect(bump_section(self.grid), part, LocalizedOperator(self.grid))
        self.assertLessEqual(report.relative, 1e-5)
        self.assertIn('rate_estimate', report.to_json())

    def test_first_order_term(self):
        """Test the identity with a bounded first-order term and a potential"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        op = from_functions(self.grid, fiber=2, drift=lambda x: 0.5 + 0.3 * np.sin(x),
                            drift_prime=lambda x: 0.3 * np.cos(x), potential=lambda x: 0.2 * np.cos(x))
        report = ims_identity_defect(bump_section(self.grid, fiber=2), part, op)
        self.assertLessEqual(report.relative, 1e-5)

    def test_refinement_rate(self):
        """Test the defect shrinks at rate h²"""
        def build(grid):
            part = make_partition(grid, TWO_PIECES, 2.0)
            return bump_section(grid), part, LocalizedOperator(grid)

        grids = [Grid1D(0.0, 20.0, n) for n in (2001, 4001, 8001)]
        reports = ims_refinement(build, grids)
        self.assertGreater(reports[-1].rate_estimate, 1.5)
        self.assertLess(reports[-1].rate_estimate, 2.5)
        self.assertLess(abs(reports[-1].defect), abs(reports[0].defect))

    def test_touching_boundary(self):
        """Test sections reaching the grid boundary are rejected"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        with self.assertRaises(DomainError):
            ims_identity_defect(as_section(np.sin(self.grid.nodes)), part, LocalizedOperator(self.grid))


class TestRayleigh(unittest.TestCase):
    def setUp(self):
        self.grid = Grid1D(0.0, math.pi, 2001)
        self.op = LocalizedOperator(self.grid)

    def test_dirichlet_mode(self):
        """Test the first Dirichlet mode has quotient 1"""
        u = as_section(np.sin(self.grid.nodes))
        self.assertAlmostEqual(rayleigh(u, self.op), 1.0, delta=1e-5)
        self.assertAlmostEqual(rayleigh(7.0 * u, self.op), rayleigh(u, self.op), places=12)

    def test_two_modes(self):
        """Test sin x + sin(2x)/2 against the closed form 8/5"""
        x = self.grid.nodes
        u = as_section(np.sin(x) + 0.5 * np.sin(2.0 * x))
        self.assertAlmostEqual(rayleigh(u, self.op), 1.6, delta=1e-5)

    def test_zero_section(self):
        """Test the zero section raises"""
        with self.assertRaises(DomainError):
            rayleigh(np.zeros((2001, 1)), self.op)


class TestBestPiece(unittest.TestCase):
    def setUp(self):
        self.grid = Grid1D(0.0, 20.0, 4001)
        self.op = LocalizedOperator(self.grid)

    def test_single_piece(self):
        """Test ψ ≡ 1 returns the section's own quotient"""
        part = make_partition(self.grid, [(-1.0, 21.0)], 1.0)
        piece = best_piece(bump_section(self.grid), part, self.op)
        self.assertEqual(piece.index, 0)
        self.assertEqual(piece.rayleigh, piece.base)
        self.assertEqual(piece.bound, piece.base)

    def test_supported_in_one_piece(self):
        """Test a section inside one piece selects that piece"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        u = bump_section(self.grid, center=4.5, half_width=2.5)
        piece = best_piece(u, part, self.op)
        self.assertEqual(piece.index, 0)
        self.assertAlmostEqual(piece.rayleigh, piece.base, places=12)
        self.assertAlmostEqual(piece.bound, piece.base, places=12)

    def test_spanning_section(self):
        """Test the localized quotient bound for a section across both pieces"""
        part = make_partition(self.grid, TWO_PIECES, 2.0)
        piece = best_piece(bump_section(self.grid), part, self.op)
        self.assertTrue(piece.passed)
        self.assertLessEqual(piece.local_bound, piece.bound)
        self.assertLessEqual(piece.rayleigh, piece.local_bound + 1e-6)


class TestPointwiseBounds(unittest.TestCase):
    def setUp(self):
        self.grid = Grid1D(0.0, 20.0, 20001)
        self.two = make_partition(self.grid, TWO_PIECES, 2.0)
        self.one = make_partition(self.grid, [(-1.0, 21.0)], 1.0)
        self.dirac = LocalizedOperator(self.grid, fiber=2, drift=np.ones(20001), order=1)

    def test_first_order_constant_partition(self):
        """Test the first-order bound with ψ ≡ 1"""
        check = first_order_defect(bump_section(self.grid, fiber=2), 0.0, self.one, self.dirac)
        self.assertTrue(check.passed)
        self.assertAlmostEqual(check.ratio, 0.5, places=9)

    def test_first_order_random_bumps(self):
        """Test A = J d/dx on random bumps with a two-piece partition"""
        rng = np.random.default_rng(11)
        x = self.grid.nodes
        for _ in range(10):
            center = rng.uniform(6.0, 14.0)
            k = rng.uniform(0.5, 3.0)
            window = plateau((x - center) / rng.uniform(2.0, 5.0))
            u = np.stack([window * np.sin(k * x), window * rng.normal() * np.cos(k * x)], axis=-1)
            check = first_order_defect(u, rng.uniform(-1.0, 1.0), self.two, self.dirac)
            self.assertTrue(check.passed, msg=str(check.to_json()))

    def test_first_order_gradient_free_region(self):
        """Test the factor 2 is attained where the partition is constant"""
        u = bump_section(self.grid, center=4.5, half_width=2.5, fiber=2)
        check = first_order_defect(u, 0.0, self.two, self.dirac)
        self.assertAlmostEqual(check.ratio, 0.5, places=9)

    def test_first_order_needs_first_order(self):
        """Test the operator order is checked"""
        with self.assertRaises(PreconditionError):
            first_order_defect(bump_section(self.grid), 0.0, self.two, LocalizedOperator(self.grid))

    def test_second_order(self):
        """Test the second-order bound for constant, two-piece and sharp partitions"""
        op = LocalizedOperator(self.grid)
        u = bump_section(self.grid)
        constant = second_order_defect(u, 0.3, self.one, op)
        self.assertTrue(constant.passed)
        self.assertLessEqual(constant.ratio, 0.25 + 1e-9)
        self.assertTrue(second_order_defect(u, 0.3, self.two, op).passed)
        sharp = make_partition(self.grid, [(-1.0, 10.05), (9.95, 21.0)], 0.05)
        check = second_order_defect(u, 0.3, sharp, op)
        self.assertTrue(check.passed)
        self.assertGreater(float(np.max(check.rhs)), float(np.max(second_order_defect(u, 0.3, self.two, op).rhs)))

    def test_second_order_with_drift(self):
        """Test the second-order bound with a first-order term"""
        op = from_functions(self.grid, fiber=2, drift=lambda x: 0.5 + 0.3 * np.sin(x),
                            drift_prime=lambda x: 0.3 * np.cos(x))
        check = second_order_defect(bump_section(self.grid, fiber=2), 0.3, self.two, op)
        self.assertTrue(check.passed)

    def test_second_order_needs_hessian(self):
        """Test missing second-derivative data is an error"""
        bare = PartitionOfUnity(self.grid, self.two.values, self.two.gradient)
        with self.assertRaises(PreconditionError):
            second_order_defect(bump_section(self.grid), 0.3, bare, LocalizedOperator(self.grid))


class TestLowerBound(unittest.TestCase):
    def test_values(self):
        """Test -(c0 + σ²)"""
        self.assertEqual(operator_lower_bound(0.0, 0.0), 0.0)
        self.assertEqual(operator_lower_bound(1.0, 0.0), -1.0)
        self.assertEqual(operator_lower_bound(1.0, 2.0), -5.0)
        with self.assertRaises(DomainError):
            operator_lower_bound(1.0, -1.0)

    def test_form_minimum_oracle(self):
        """Test discretized form minima never fall below the bound"""
        grid = Grid1D(0.0, 10.0, 401)
        op = from_functions(grid, fiber=2, drift=lambda x: 2.0 * np.cos(x),
                            drift_prime=lambda x: -2.0 * np.sin(x), potential=lambda x: -np.ones_like(x))
        self.assertAlmostEqual(op.c0, 1.0)
        self.assertAlmostEqual(op.symbol_bound, 2.0)
        self.assertGreaterEqual(form_minimum(op), operator_lower_bound(op.c0, op.symbol_bound) - 1e-6)

    def test_form_minimum_dirichlet(self):
        """Test the free form minimum is the first Dirichlet eigenvalue"""
        grid = Grid1D(0.0, 10.0, 401)
        self.assertAlmostEqual(form_minimum(LocalizedOperator(grid)), (math.pi / 10.0) ** 2, delta=1e-3)


class TestSequences(unittest.TestCase):
    def test_moving_windows(self):
        """Test quotients diverge to -∞ for V(x) = -x"""
        sequence = moving_window_sequence(lambda x: -x, [10.0, 20.0, 30.0, 40.0, 50.0])
        self.assertTrue(sequence.decreasing)
        self.assertLess(sequence.quotients[-1], -40.0)

    def test_quasi_modes(self):
        """Test residuals of funnel quasi-modes shrink"""
        funnel = lambda t: 0.25 + 0.25 / np.cosh(t) ** 2
        modes = quasi_mode_sequence(funnel, 0.5, 0.25, [10.0, 20.0, 40.0, 80.0])
        residuals = [m.residual for m in modes]
        self.assertTrue(all(b < a for a, b in zip(residuals, residuals[1:])))
        self.assertLess(residuals[-1], 0.05)
        with self.assertRaises(DomainError):
            quasi_mode_sequence(funnel, 0.2, 0.25, [10.0])


class TestCutoffDecay(unittest.TestCase):
    def test_constant(self):
        """Test constant ψ has zero gradient"""
        profile = cutoff_decay_profile(imaginary_axis(), constant_bump(), [1.0, 2.0, 3.0], samples=11)
        self.assertEqual(profile.measured, [0.0, 0.0, 0.0])

    def test_axis_bound(self):
        """Test the unit-gradient bump at distance 3 from the imaginary axis"""
        psi = boundary_bump(-4.0, 4.0)
        self.assertAlmostEqual(psi.slope, 1.0)
        profile = cutoff_decay_profile(imaginary_axis(), psi, [3.0])
        self.assertAlmostEqual(profile.bounds[0], 1.0 / math.cosh(3.0), places=12)
        self.assertLessEqual(profile.measured[0], 0.10)
        self.assertLessEqual(profile.measured[0], profile.bounds[0] + 1e-6)
        self.assertGreater(profile.measured[0], 0.98 * profile.bounds[0])

    def test_ratios(self):
        """Test consecutive measurements decay like cosh(r)/cosh(r+1)"""
        radii = [2.0, 3.0, 4.0, 5.0]
        profile = cutoff_decay_profile(imaginary_axis(), boundary_bump(-4.0, 4.0), radii, samples=101)
        self.assertTrue(profile.passed)
        for r, ratio in zip(radii, profile.ratios()):
            self.assertAlmostEqual(ratio, math.cosh(r) / math.cosh(r + 1.0), delta=1e-6)

    def test_disk(self):
        """Test a bump on the boundary of a disk"""
        profile = cutoff_decay_profile(DiskBody(1j, 1.0), boundary_bump(-2.0, 2.0, width=1.0),
                                       [0.5, 1.0, 2.0, 3.0], samples=81)
        self.assertTrue(profile.passed)

    def test_radii_validation(self):
        """Test non-increasing radii are rejected"""
        with self.assertRaises(GridError):
            cutoff_decay_profile(imaginary_axis(), boundary_bump(-4.0, 4.0), [3.0, 2.0])


if __name__ == '__main__':
    unittest.main()
