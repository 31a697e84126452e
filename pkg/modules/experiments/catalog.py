"""
Experiment Catalog

Each experiment wires one or more library packages into a pass/fail check and
returns a JSON-ready report. Randomized experiments draw only from the
generator they are handed, so a report depends on the run seed and the
experiment's position in the config, never on scheduling.
"""

import logging
import math

import numpy as np

from ..casimir import (
    adjoint_representation,
    cartan_split,
    commutator_defect,
    full_casimir,
    kp_identity_defect,
    load_algebra,
    potential_via_curvature,
    sectional_curvature,
    split_consistency_defect,
    sl2,
)
from ..comparison import (
    RiccatiInit,
    SpaceFormModel,
    comparison_margins,
    constant_profile,
    endpoint_jacobi_defect,
    gronwall_bound,
    jacobi_solve,
    model_jacobi_solve,
    perturbed_jacobi_solve,
    random_profile,
    rauch_check,
    riccati_solve,
    sinusoidal_profile,
    transverse_decay_experiment,
)
from ..core.errors import ScopeError
from ..core.utilities import atomic_write_csv
from ..geometry import DiskBody, imaginary_axis
from ..localization import (
    Grid1D,
    LocalizedOperator,
    as_section,
    best_piece,
    boundary_bump,
    cutoff_decay_profile,
    first_order_defect,
    form_minimum,
    from_functions,
    ims_identity_defect,
    ims_refinement,
    make_partition,
    operator_lower_bound,
    plateau,
    random_cover,
    second_order_defect,
)
from ..mollifier import (
    EuclideanChart,
    MollifierConfig,
    PoincareDiskChart,
    coordinate_frame,
    disk_point,
    equivariance_check,
    euclidean_disk_distance,
    frame_independence,
    hyperbolic_disk_distance,
    papa_pipeline,
    rotated_frame,
    rotation,
    smoothing_bounds,
)
from ..spectra import (
    MCKEAN_NOTE,
    HyperbolicSpaceSpec,
    delta0,
    dolbeault_spectrum,
    dolbeault_table,
    hodge_spectrum,
    hodge_table,
    mckean_bound,
)
from ..spectral import (
    SurfaceDescriptor,
    cross_check,
    ess_bottom,
    make_end,
    refinement_study,
    surface_experiment,
    weyl_sequence,
)
from .registry import experiment

logger = logging.getLogger(__name__)

KNOWN_HODGE = {
    ('R', 3): [1.0, 0.0, 0.0, 1.0],
    ('C', 2): [4.0, 1.0, 1.0, 1.0, 4.0],
}

IMS_GRIDS = (1001, 2001, 4001, 8001)


def _floats(values):
    return [float(v) for v in values]


def _random_window(rng, x, length, fiber=1):
    """Plateau-windowed oscillation supported well inside [0, length]"""
    center = rng.uniform(0.4 * length, 0.6 * length)
    half = rng.uniform(0.15 * length, 0.3 * length)
    k1, k2 = rng.uniform(0.5, 2.0, size=2)
    window = plateau((x - center) / half)
    if fiber == 1:
        return as_section(window * np.sin(k1 * x))
    return np.stack([window * np.sin(k1 * x), rng.normal() * window * np.cos(k2 * x)], axis=-1)


# spectra-tables

@experiment('tables', "Hodge bottoms δ_k on real and complex hyperbolic space",
            {'field': ('R', 'str'), 'ell': (3, 'int')})
def run_tables(params, rng, ctx):
    """Hodge table for (F, ℓ) as CSV, checked against δ0, duality and tabulated rows"""
    space = HyperbolicSpaceSpec(params['field'], params['ell'])
    rows = hodge_table(space.field, space.ell)
    deltas = [row[1] for row in rows]
    atomic_write_csv(ctx.artifact('hodge.csv'), ['k', 'delta_k', 'spectrum'], rows,
                     comments={'field': space.field, 'ell': space.ell, 'm': space.m})
    checks = {
        'delta0': deltas[0] == delta0(space.m, space.d),
        'duality': deltas == deltas[::-1],
        'middle_degree_zero': space.m % 2 == 1 or hodge_spectrum(space, space.m // 2).contains(0.0),
    }
    known = KNOWN_HODGE.get((space.field, space.ell))
    if known is not None:
        checks['tabulated'] = deltas == known
    return {'field': space.field, 'ell': space.ell, 'm': space.m, 'deltas': deltas,
            'rows': [list(row) for row in rows], 'mckean': mckean_bound(space.m, 1.0),
            'mckean_note': MCKEAN_NOTE, 'checks': checks, 'passed': all(checks.values())}


@experiment('dolbeault', "Dolbeault bottoms on complex hyperbolic space", {'ell': (2, 'int')})
def run_dolbeault(params, rng, ctx):
    """Dolbeault table for ℓ as CSV; middle bidegrees carry {0}∪[1, ∞)"""
    ell = params['ell']
    rows = dolbeault_table(ell)
    atomic_write_csv(ctx.artifact('dolbeault.csv'), ['p', 'q', 'bottom', 'spectrum'], rows,
                     comments={'ell': ell})
    middle = [dolbeault_spectrum(ell, p, q) for p, q, _, _ in rows if p + q == ell]
    checks = {
        'middle_degree': all(s.contains(0.0) and s.half_line_bottom == 1.0 for s in middle),
        'off_middle': all(bottom == float((p + q - ell) ** 2) for p, q, bottom, _ in rows if p + q != ell),
        'function_bottom': dolbeault_spectrum(ell, 0, 0).half_line_bottom == float(ell ** 2),
    }
    return {'ell': ell, 'rows': [list(row) for row in rows], 'checks': checks,
            'passed': all(checks.values())}


# comparison-engine

@experiment('riccati-sandwich', "Shape-operator sandwich between the a and b model solutions",
            {'trials': (200, 'int'), 'max_dimension': (3, 'int'), 'a': (1.0, 'float'),
             'b': (1.5, 'float'), 'length': (2.0, 'float'), 'h': (0.02, 'float'),
             'slack': (1e-6, 'float')})
def run_riccati_sandwich(params, rng, ctx):
    """Randomized pinched profiles and convex initial data stay between the model shape operators"""
    a, b = params['a'], params['b']
    lower, upper = math.inf, math.inf
    failures = []
    for trial in range(params['trials']):
        n = 1 + trial % params['max_dimension']
        profile = random_profile(n, rng, a, b)
        init = RiccatiInit.random(rng, n)
        path = riccati_solve(profile, init, params['length'], params['h'])
        margins = comparison_margins(path, init, a, b, params['slack'])
        lower, upper = min(lower, margins.lower), min(upper, margins.upper)
        if not margins.passed:
            failures.append({'trial': trial, 'dimension': n, **margins.to_json()})
    init = RiccatiInit.regular([[0.0]])
    sinusoidal = comparison_margins(riccati_solve(sinusoidal_profile(1), init, math.pi, 0.01), init, 1.0, 1.5)
    return {'trials': params['trials'], 'worst_lower': lower, 'worst_upper': upper,
            'failures': failures, 'sinusoidal': sinusoidal.to_json(),
            'passed': not failures and sinusoidal.passed}


@experiment('rauch', "Jacobi fields with J'(0) = 0 and the cosh bound",
            {'b': (1.5, 'float'), 'dimension': (2, 'int'), 'length': (2.0, 'float'),
             'h': (0.005, 'float'), 'tol': (1e-8, 'float')})
def run_rauch(params, rng, ctx):
    """Constant curvature attains |J(t)| = cosh(bt)|J(0)|; a pinched profile stays below it"""
    b, n = params['b'], params['dimension']
    J0 = rng.normal(size=n)
    J0 /= np.linalg.norm(J0)
    path = jacobi_solve(constant_profile(n, b), J0, np.zeros(n), params['length'], params['h'])
    norms = np.linalg.norm(path.values, axis=1)
    tightness = float(np.max(np.abs(norms - np.cosh(b * path.t)) / np.cosh(b * path.t)))
    constant = rauch_check(path, b)
    pinched = rauch_check(jacobi_solve(sinusoidal_profile(1), [1.0], [0.0], 1.0, params['h']), 1.5)
    return {'tightness': tightness, 'constant': vars(constant), 'sinusoidal': vars(pinched),
            'passed': tightness <= params['tol'] and constant.passed and pinched.passed}


@experiment('gronwall', "Perturbed Jacobi fields under the Gronwall envelope",
            {'trials': (100, 'int'), 'k0': (1.0, 'float'), 'max_gradient': (0.3, 'float'),
             'h': (0.01, 'float')})
def run_gronwall(params, rng, ctx):
    """‖(K, K')(1)‖ against the Gronwall bound with the model's b, b|v| <= 1, plus the endpoint estimate"""
    worst_ratio = 0.0
    endpoint_excess = -math.inf
    failures = []
    for trial in range(params['trials']):
        n = 2 + trial % 2
        g = rng.normal(size=n)
        g *= rng.uniform(0.0, params['max_gradient']) / np.linalg.norm(g)
        model = SpaceFormModel(n, params['k0'], gradient=g, derivative_bound=float(np.linalg.norm(g)))
        v = rng.normal(size=n)
        v *= rng.uniform(0.05, 1.0) / (model.b * np.linalg.norm(v))
        w = rng.normal(size=n)
        w /= np.linalg.norm(w)
        jpath = model_jacobi_solve(model, v, w, np.zeros(n), 1.0, params['h'])
        kpath = perturbed_jacobi_solve(model, v, jpath)
        state = float(np.linalg.norm(np.concatenate([kpath.values[-1], kpath.derivative[-1]])))
        bound = gronwall_bound(model.b, model.derivative_bound, float(np.linalg.norm(v)), 1.0)
        if bound > 0.0:
            worst_ratio = max(worst_ratio, state / bound)
        if state > bound:
            failures.append({'trial': trial, 'state': state, 'bound': bound})
        defect, limit = endpoint_jacobi_defect(model, v, w)
        endpoint_excess = max(endpoint_excess, defect - limit)
    return {'trials': params['trials'], 'worst_ratio': worst_ratio, 'endpoint_excess': endpoint_excess,
            'failures': failures, 'passed': not failures and endpoint_excess <= 1e-10}


@experiment('decay', "Decay of the transverse gradient term away from a convex set",
            {'body': ('geodesic', 'str'), 'radius': (1.0, 'float'), 'r_min': (2.0, 'float'),
             'r_max': (8.0, 'float'), 'samples': (7, 'int'), 'curvature_gradient': (0.5, 'float')})
def run_decay(params, rng, ctx):
    """Least-squares slope of ln|K⊥(0)| against r, at most -a + 0.1 for a = 1, with a collar cross-check"""
    if params['body'] == 'geodesic':
        body = imaginary_axis()
    elif params['body'] == 'disk':
        body = DiskBody(1j, params['radius'])
    else:
        raise ScopeError(f"decay supports 'geodesic' and 'disk' bodies, got {params['body']}")
    radii = np.linspace(params['r_min'], params['r_max'], params['samples'])
    fit = transverse_decay_experiment(body, radii, curvature_gradient=params['curvature_gradient'])
    atomic_write_csv(ctx.artifact('decay.csv'), ['r', 'k_perp', 'measured', 'bound', 'oracle', 'j0'],
                     [(s.r, s.k_perp, s.measured, s.bound, s.oracle, s.j0) for s in fit.samples],
                     comments={'body': body.kind, 'curvature_gradient': params['curvature_gradient']})
    return {'body': body.kind, **fit.to_json()}


# localization

@experiment('ims', "Localization identity and its h² convergence",
            {'trials': (20, 'int'), 'length': (20.0, 'float'), 'min_rate': (1.9, 'float'),
             'max_relative': (1e-5, 'float'), 'fine_h': (1e-3, 'float')})
def run_ims(params, rng, ctx):
    """Random (u, partition, B) triples: refinement rate and the defect on the finest grid"""
    length = params['length']
    rates, relatives = [], []
    for trial in range(params['trials']):
        cover = random_cover(rng, 0.0, length, int(rng.integers(2, 5)), 1.0)
        section_seed = int(rng.integers(2 ** 32))
        amplitude, phase, scale = rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * math.pi), rng.uniform(0.0, 0.5)

        def build(grid):
            part = make_partition(grid, cover, 0.5)
            u = _random_window(np.random.default_rng(section_seed), grid.nodes, length, fiber=2)
            op = from_functions(grid, fiber=2,
                                drift=lambda s: amplitude * np.sin(s + phase),
                                drift_prime=lambda s: amplitude * np.cos(s + phase),
                                potential=lambda s: scale * np.cos(s))
            return u, part, op

        reports = ims_refinement(build, [Grid1D(0.0, length, n) for n in IMS_GRIDS])
        rates.append(reports[-1].rate_estimate)
        relatives.append(ims_identity_defect(*build(Grid1D.with_step(0.0, length, params['fine_h']))).relative)
    return {'trials': params['trials'], 'rates': rates, 'relative_defects': relatives,
            'min_rate': min(rates, default=math.nan), 'max_relative': max(relatives, default=0.0),
            'passed': all(r >= params['min_rate'] for r in rates)
            and all(r <= params['max_relative'] for r in relatives)}


@experiment('localization-bounds', "Localized Rayleigh quotient and pointwise partition bounds",
            {'trials': (500, 'int'), 'length': (20.0, 'float'), 'nodes': (4001, 'int'),
             'slack': (1e-6, 'float'), 'oracle_trials': (5, 'int')})
def run_localization_bounds(params, rng, ctx):
    """best_piece, first- and second-order pointwise bounds on random instances, and the form-minimum oracle"""
    length = params['length']
    grid = Grid1D(0.0, length, params['nodes'])
    x = grid.nodes
    laplace = LocalizedOperator(grid)
    dirac = LocalizedOperator(grid, fiber=2, drift=np.ones(len(x)), order=1)
    violations = {'best_piece': 0, 'first_order': 0, 'second_order': 0}
    for _ in range(params['trials']):
        part = make_partition(grid, random_cover(rng, 0.0, length, int(rng.integers(2, 6)), 1.0), 0.5)
        lam = rng.uniform(-1.0, 1.0)
        piece = best_piece(_random_window(rng, x, length), part, laplace)
        piece.slack = params['slack']
        first = first_order_defect(_random_window(rng, x, length, fiber=2), lam, part, dirac)
        first.slack = params['slack']
        second = second_order_defect(_random_window(rng, x, length), lam, part, laplace)
        second.slack = params['slack']
        violations['best_piece'] += not piece.passed
        violations['first_order'] += not first.passed
        violations['second_order'] += not second.passed

    oracle = []
    coarse = Grid1D(0.0, 10.0, 401)
    instances = [(2.0, 1.0)] + [(rng.uniform(0.0, 2.0), rng.uniform(0.0, 1.0))
                                for _ in range(params['oracle_trials'])]
    for sigma, c0 in instances:
        op = from_functions(coarse, fiber=2, drift=lambda s, a=sigma: a * np.cos(s),
                            drift_prime=lambda s, a=sigma: -a * np.sin(s),
                            potential=lambda s, c=c0: -c * np.ones_like(s))
        minimum = form_minimum(op)
        bound = operator_lower_bound(op.c0, op.symbol_bound)
        oracle.append({'sigma': sigma, 'c0': c0, 'form_minimum': minimum, 'bound': bound,
                       'passed': minimum >= bound - params['slack']})
    return {'trials': params['trials'], 'violations': violations, 'oracle': oracle,
            'passed': not any(violations.values()) and all(o['passed'] for o in oracle)}


@experiment('cutoff-decay', "Gradient of a boundary cutoff pulled back along the projection",
            {'radii': ([3.0, 4.0, 5.0], 'list'), 'left': (-4.0, 'float'), 'right': (4.0, 'float'),
             'samples': (201, 'int'), 'slack': (1e-3, 'float')})
def run_cutoff_decay(params, rng, ctx):
    """sup |∇(ψ∘π)| on the equidistant at r is at most C₀/cosh r"""
    psi = boundary_bump(params['left'], params['right'])
    profile = cutoff_decay_profile(imaginary_axis(), psi, _floats(params['radii']), params['samples'])
    profile.slack = params['slack']
    atomic_write_csv(ctx.artifact('cutoff.csv'), ['r', 'measured', 'bound'],
                     list(zip(profile.radii, profile.measured, profile.bounds)))
    return {'c0': psi.slope, **profile.to_json(), 'passed': profile.dominated}


# casimir

@experiment('casimir-alpha', "Curvature form of the Casimir potential on form bundles",
            {'algebra': ('sl2', 'str'), 'pairs': (100, 'int'), 'tol': (1e-10, 'float'),
             'kp_tol': (1e-12, 'float')})
def run_casimir_alpha(params, rng, ctx):
    """V' = V on every form degree, Casimir commutation and the bracket identity on random pairs"""
    algebra = sl2() if params['algebra'] == 'sl2' else load_algebra(params['algebra'])
    split = cartan_split(algebra)
    comparisons = [potential_via_curvature(split, k, tol=params['tol']) for k in range(split.p_dim + 1)]
    adjoint = adjoint_representation(split)
    casimir = full_casimir(split, adjoint)
    commute = commutator_defect(adjoint, casimir)
    consistency = split_consistency_defect(split, adjoint)
    kp = max((kp_identity_defect(split, split.k_basis @ rng.normal(size=split.k_dim),
                                 split.p_basis @ rng.normal(size=split.p_dim))
              for _ in range(params['pairs'])), default=0.0)
    curvature = sectional_curvature(split, split.X(0), split.X(1)) if split.p_dim >= 2 else None
    return {'algebra': params['algebra'], 'degrees': [c.to_json() for c in comparisons],
            'commutator_defect': commute, 'split_consistency': consistency, 'kp_defect': kp,
            'sectional_curvature': curvature,
            'passed': all(c.passed(params['tol']) for c in comparisons) and commute <= params['tol']
            and consistency <= params['tol'] and kp <= params['kp_tol']}


# mollifier

def _plane_setup(plane, radius):
    if plane == 'euclidean':
        return EuclideanChart(), euclidean_disk_distance(radius), \
            lambda s, angle: (radius + s) * complex(math.cos(angle), math.sin(angle))
    return PoincareDiskChart(), hyperbolic_disk_distance(radius), lambda s, angle: disk_point(radius + s, angle)


@experiment('mollify-bounds', "Value and gradient bounds of the frame-averaged smoothing",
            {'kappas': ([0.2, 0.1, 0.05], 'list'), 'radius': (1.0, 'float'), 'rings': (4, 'int'),
             'angles': (12, 'int'), 'tol': (1e-8, 'float')})
def run_mollify_bounds(params, rng, ctx):
    """Disk-distance functions in both planes: bounds, frame independence and rotation equivariance"""
    rows = []
    frames = [coordinate_frame(), rotated_frame(0.4, 0.7 + 0.3j)]
    rotations = [rotation(2.0 * math.pi * k / 6) for k in range(6)]
    angles = 0.1 + 2.0 * math.pi * np.arange(params['angles']) / params['angles']
    for plane in ('euclidean', 'hyperbolic'):
        chart, field, place = _plane_setup(plane, params['radius'])
        for kappa in _floats(params['kappas']):
            cfg = MollifierConfig(kappa)
            offsets = np.linspace(kappa + 0.05, 1.5, params['rings'])
            points = [place(s, a) for s in offsets for a in angles]
            bounds = smoothing_bounds(field, cfg, chart, points)
            sample = points[::max(1, len(points) // 6)]
            frame_defect = frame_independence(field, cfg, chart, frames, sample)
            equivariance = equivariance_check(field, cfg, chart, rotations, sample[:4])
            rows.append({'plane': plane, **bounds.to_json(), 'frame_defect': frame_defect,
                         'equivariance_defect': equivariance,
                         'passed': bounds.passed and frame_defect <= params['tol'] and equivariance <= params['tol']})
    atomic_write_csv(ctx.artifact('bounds.csv'),
                     ['plane', 'kappa', 'value_deviation', 'value_bound', 'gradient_deviation', 'gradient_bound'],
                     [(r['plane'], r['kappa'], r['value_deviation'], r['value_bound'], r['gradient_deviation'],
                       r['gradient_bound']) for r in rows])
    return {'rows': rows, 'passed': all(r['passed'] for r in rows)}


@experiment('mollify-papa', "Smooth strictly convex approximation of a hyperbolic disk",
            {'radius': (1.0, 'float'), 'rho': (1.0, 'float'), 'eta': (0.3, 'float'),
             'kappa': (0.0, 'float'), 'rays': (64, 'int')})
def run_mollify_papa(params, rng, ctx):
    """Level curve of the smoothed distance: convexity, curvature envelope and containment; κ = 0 picks δ/4"""
    kappa = params['kappa'] or None
    report = papa_pipeline(DiskBody(1j, params['radius']), params['rho'], params['eta'], kappa, params['rays'])
    report.write_polyline(ctx.artifact('level_curve.csv'))
    return report.to_json()


# spectral-solver

@experiment('ess-bottom', "Bottom of the essential spectrum on a model end",
            {'end': ('funnel', 'str'), 'mode': (0, 'int'), 'lengths': ([10.0, 20.0, 30.0, 40.0], 'list'),
             'h': (1e-3, 'float'), 'tol': (1e-3, 'float'), 'refine': (False, 'bool')})
def run_ess_bottom(params, rng, ctx):
    """Truncated Dirichlet bottoms extrapolated in 1/T; ¼ on funnels and cusps, cross-checked with δ0 and McKean"""
    end = make_end(params['end'], params['mode'])
    threshold = end.asymptotic_threshold()
    target = threshold if math.isfinite(threshold) else None
    report = ess_bottom(end, _floats(params['lengths']), params['h'], target=target)
    atomic_write_csv(ctx.artifact('bottoms.csv'), ['T', 'lambda0'], report.rows(), comments={'end': report.label})
    result = {**report.to_json(), 'mode': end.mode}
    if target is not None:
        result['error'] = report.error()
        result['cross_check'] = cross_check(report, params['tol'])
        passed = report.error() <= params['tol'] and report.monotone
    else:
        passed = report.monotone and report.extrapolated >= 0.25 - params['tol']
    if params['refine']:
        result['refinement'] = refinement_study(end, report.lengths[0], h=4.0 * params['h']).to_json()
    result['passed'] = passed
    return result


@experiment('surface', "Essential bottom of a surface as the minimum over its ends",
            {'ends': (['funnel', 'cusp'], 'list'), 'modes': ([], 'list'), 'name': ('surface', 'str'),
             'lengths': ([20.0, 40.0, 80.0, 160.0], 'list'), 'h': (0.01, 'float')})
def run_surface(params, rng, ctx):
    """Ends of a geometrically finite surface: ¼ for infinite volume, at least ¼ otherwise"""
    descriptor = SurfaceDescriptor([str(e) for e in params['ends']], params['name'],
                                   [int(n) for n in params['modes']])
    report = surface_experiment(descriptor, _floats(params['lengths']), params['h'])
    atomic_write_csv(ctx.artifact('bottoms.csv'), ['end', 'T', 'lambda0'],
                     [(r.label, T, value) for r in report.ends for T, value in r.rows()])
    return report.to_json()


@experiment('weyl', "Weyl sequences certifying sampled λ in the essential spectrum",
            {'kinds': (['cusp', 'funnel'], 'list'), 'lambdas': ([0.25, 0.5, 1.0], 'list'),
             'lengths': ([40.0, 80.0, 160.0, 320.0, 640.0], 'list'), 'offset': (2.0, 'float'),
             'h': (0.02, 'float'), 'tol': (1e-2, 'float')})
def run_weyl(params, rng, ctx):
    """Normalized quasi-mode residuals decrease and end below the tolerance"""
    reports = [weyl_sequence(str(kind), lam, _floats(params['lengths']), params['offset'], params['h'])
               for kind in params['kinds'] for lam in _floats(params['lambdas'])]
    atomic_write_csv(ctx.artifact('residuals.csv'), ['end', 'lambda', 'L', 'residual'],
                     [(r.label, r.lam, L, res) for r in reports for L, res in zip(r.lengths, r.residuals)])
    return {'sequences': [r.to_json() for r in reports],
            'passed': all(r.passed and r.residuals[-1] <= params['tol'] for r in reports)}
