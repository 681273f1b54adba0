from fractions import Fraction as F

import numpy as np
import pytest

from conftest import PARAMS
from heatkernel.bessel import bessel_row
from heatkernel.kernel import assemble_kernel, kernel_eval
from heatkernel.oracle import (
    GridMismatch,
    NoConvergence,
    QuadratureSpec,
    WindowTooSmall,
    circle_quadrature,
    compare_kernel_to_lattice,
    compare_report,
    lattice_evolve,
    lattice_value,
    lattice_window,
    orthogonality_gram,
)
from heatkernel.taudarboux import (
    ParamVector,
    free_operator,
    operator_build,
    tau_build,
    wave_p,
)


def test_lattice_window_structure():
    win = lattice_window(free_operator(), 3)
    assert win.matrix.shape == (7, 7)
    assert win.matrix[3, 3] == -2 and win.matrix[3, 4] == 1 and win.matrix[3, 2] == 1
    assert win.matrix[0, 1] == 1 and win.matrix[0, 0] == -2   # boundary row truncated


def test_free_evolution_matches_bessel():
    res = lattice_evolve(free_operator(), 200, 0, 1.0)
    row = bessel_row(2.0, 30)
    for n in range(-20, 21):
        assert abs(res["values"][n + 200] - row.scaled(n)) < 1e-11
    assert res["tail_bound"] < 1e-11


def test_evolution_delta_limit():
    res = lattice_evolve(free_operator(), 50, 3, 0.0)
    assert res["values"][53] == 1.0
    assert np.abs(res["values"]).sum() == 1.0


def test_mass_conservation_free():
    res = lattice_evolve(free_operator(), 200, 0, 2.0)
    assert abs(res["values"].sum() - 1.0) < 1e-11


def test_one_step_evolution_matches_closed_form():
    params = ParamVector(1, 0, [F(1, 2)])
    L = operator_build(params)
    res = lattice_evolve(L, 200, 0, 1.0)
    for n in range(-6, 7):
        closed = kernel_eval(assemble_kernel(params, n, 0), 1.0)
        assert abs(res["values"][n + 200] - closed) < 1e-10, n


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        lattice_evolve(free_operator(), 10, 0, 2.0)


def test_source_near_boundary_rejected():
    with pytest.raises(ValueError):
        lattice_evolve(free_operator(), 20, 15, 0.5)


def test_orthogonality_diagonal():
    params = ParamVector(1, 0, [F(1, 2)])
    tau = tau_build(params)
    spec = QuadratureSpec(integrand="orthogonality")
    for n in range(0, 4):
        value = circle_quadrature(spec, params, n, n)
        assert abs(value - float(tau.ratio(n + 1, n))) < 1e-10
    assert abs(circle_quadrature(spec, params, 2, 0)) < 1e-10
    assert abs(circle_quadrature(spec, params, 0, 3)) < 1e-10


def test_gram_matrix():
    params = PARAMS[(1, 1)]
    tau = tau_build(params)
    G = orthogonality_gram(params, 4)
    for i in range(4):
        for j in range(4):
            expect = float(tau.ratio(i + 1, i)) if i == j else 0.0
            assert abs(G[i, j] - expect) < 1e-10


def test_kernel_quadrature_free():
    spec = QuadratureSpec(integrand="kernel")
    value = circle_quadrature(spec, PARAMS[(0, 0)], 0, 0, t=1.0)
    assert abs(value - bessel_row(2.0, 0).scaled(0)) < 1e-12


def test_spectral_vs_adjoint_quadrature():
    params = PARAMS[(1, 1)]
    a = circle_quadrature(QuadratureSpec(integrand="kernel"), params, 1, 0, t=1.0)
    b = circle_quadrature(QuadratureSpec(integrand="kernel_adjoint"), params, 1, 0, t=1.0)
    assert abs(a - b) < 1e-12
    closed = kernel_eval(assemble_kernel(params, 1, 0), 1.0)
    assert abs(a - closed) < 1e-10


def test_quadrature_needs_time_for_kernel_mode():
    with pytest.raises(ValueError):
        circle_quadrature(QuadratureSpec(integrand="kernel"), PARAMS[(0, 0)], 0, 0)


def test_quadrature_rejects_unit_radius():
    with pytest.raises(ValueError):
        QuadratureSpec(integrand="kernel", radius=1.0)


def test_quadrature_radius_independence():
    # residues at +/-1 vanish, so any radius away from 0 and 1 agrees
    params = PARAMS[(1, 1)]
    a = circle_quadrature(QuadratureSpec(integrand="kernel", radius=0.5),
                          params, 1, 0, t=1.0)
    b = circle_quadrature(QuadratureSpec(integrand="kernel", radius=2.0),
                          params, 1, 0, t=1.0)
    c = circle_quadrature(QuadratureSpec(integrand="kernel", radius=0.7),
                          params, 1, 0, t=1.0)
    assert abs(a - b) < 1e-11 and abs(a - c) < 1e-11


def test_quadrature_geometric_convergence():
    # midpoint-rule error halves (at least) with every node doubling
    params = ParamVector(1, 0, [F(1, 2)])
    pn = wave_p(params, 1).value
    pm = wave_p(params, 1).value.inverse_var()

    def ev(lp, z):
        out = np.zeros_like(z)
        for e, c in lp.terms.items():
            out = out + float(c) * z ** e
        return out

    def quad(N):
        theta = 2.0 * np.pi * (np.arange(N) + 0.5) / N
        z = 0.5 * np.exp(1j * theta)
        vals = ev(pn.num, z) / ev(pn.den, z) * ev(pm.num, z) / ev(pm.den, z)
        return complex(np.mean(vals)).real

    truth = quad(1 << 14)
    errs = [abs(quad(1 << p) - truth) for p in range(3, 10)]
    for a, b in zip(errs, errs[1:]):
        if a < 1e-13:
            break
        assert b < 0.5 * a, errs


def test_no_convergence_guard():
    spec = QuadratureSpec(integrand="orthogonality", n_start=2, n_max=4, tol=1e-30)
    with pytest.raises(NoConvergence):
        circle_quadrature(spec, PARAMS[(1, 0)], 1, 1)


def test_compare_report_identical():
    rep = compare_report([(0, 0, 1.0)], [0.5], [0.5], 1e-10)
    assert rep.passed and rep.max_abs == 0.0


def test_compare_report_corruption_localized():
    grid = [(0, 0, 1.0), (1, 0, 1.0)]
    rep = compare_report(grid, [0.5, 0.5 + 1e-6], [0.5, 0.5], 1e-10)
    assert not rep.passed
    assert abs(rep.max_abs - 1e-6) < 1e-12
    csv = rep.to_csv()
    assert csv.splitlines()[0] == "n,m,t,closed,oracle,diff"
    assert len(csv.splitlines()) == 3


def test_compare_report_grid_mismatch():
    with pytest.raises(GridMismatch):
        compare_report([(0, 0, 1.0)], [1.0, 2.0], [1.0], 1e-10)


def test_compare_kernel_to_lattice_one_step():
    params = ParamVector(1, 0, [F(1, 2)])
    pairs = [(n, m) for n in range(-3, 4) for m in range(-3, 4)]
    rep = compare_kernel_to_lattice(params, operator_build(params), pairs,
                                    [0.5, 1.0], W=200, tolerance=1e-10)
    assert rep.passed, (rep.max_abs, rep.max_rel)
    assert rep.to_json()["pass"] is True


def test_lattice_value_accessor():
    assert abs(lattice_value(free_operator(), 100, 0, 0, 1.0)
               - bessel_row(2.0, 0).scaled(0)) < 1e-12
