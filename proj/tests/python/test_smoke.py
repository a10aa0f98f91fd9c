import math

import pytest

import roughvol as rv


def test_np_constant_value():
    # Gamma(3/2 - H) / (Gamma(H + 1/2) Gamma(2 - 2H)) at H = 0.25
    want = math.gamma(1.25) / (math.gamma(0.75) * math.gamma(1.5))
    assert rv.np_constant(0.25) == pytest.approx(want, rel=1e-12)
    with pytest.raises(ValueError):
        rv.np_constant(0.7)


def test_increment_variance_scale_reciprocal():
    h = 0.3
    assert rv.increment_variance_scale(h) == pytest.approx(
        1.0 / (2.0 * h * rv.np_constant(h)), rel=1e-12
    )


def test_riccati_shapes_and_terminal_condition():
    dt, c, a = rv.solve_riccati(
        kappa=2.0, theta=0.5, sigma=0.3, y0=0.7, nu=0.4, hurst=0.2, horizon=1.0, n_steps=128
    )
    assert dt == pytest.approx(1.0 / 128)
    assert len(c) == 129 and len(a) == 129
    assert c[-1] == 0.0 and a[-1] == 0.0
    assert all(x <= 0.0 for x in c)


def test_bootstrap_telescoping():
    knots, values = rv.bootstrap_forward_variance([0.5, 1.0], [0.2, math.sqrt(0.05)])
    assert knots == pytest.approx([0.0, 0.5, 1.0])
    assert values == pytest.approx([0.04, 0.06], rel=1e-12)


def test_premium_round_trip():
    tenors = [0.25, 0.5, 1.0]
    lam = [0.8, -0.4, 0.3]
    log_ratio = rv.premium_forward_map(tenors, lam, hurst=0.15, nu=1.2, rho=-0.6)
    xi_q = [0.04 * math.exp(lr) for lr in log_ratio]
    back = rv.extract_premium(tenors, xi_q, [0.04] * 3, hurst=0.15, nu=1.2, rho=-0.6)
    assert back == pytest.approx(lam, abs=1e-12)


def test_simulate_compensated_variance_mean():
    dt, v, s = rv.simulate(
        hurst=0.2, nu=0.5, rho=-0.5, xi=0.04, measure="p", n_steps=64, n_paths=4000, seed=11
    )
    assert dt == pytest.approx(1.0 / 64)
    assert len(v) == 4000 and len(v[0]) == 65
    terminal = [path[-1] for path in v]
    mean = sum(terminal) / len(terminal)
    se = (sum((x - mean) ** 2 for x in terminal) / (len(terminal) - 1) / len(terminal)) ** 0.5
    assert abs(mean - 0.04) < 3.0 * se
    assert all(path[0] == 1.0 for path in s)


def test_simulate_is_deterministic_in_seed():
    a = rv.simulate(hurst=0.2, nu=0.5, rho=-0.5, xi=0.04, n_steps=32, n_paths=3, seed=7)
    b = rv.simulate(hurst=0.2, nu=0.5, rho=-0.5, xi=0.04, n_steps=32, n_paths=3, seed=7)
    assert a == b


def test_martingale_suite_small_run():
    density, spot, paired = rv.martingale_suite(
        hurst=0.1, nu=1.0, rho=-0.5, xi=0.04, mu=0.03, gamma=0.2, n_steps=64, n_paths=4000, seed=3
    )
    assert density.passed and spot.passed and paired.passed
    assert density.n_samples == 4000


def test_forecast_and_estimators():
    n = 400
    hist = [math.sin(0.05 * i) for i in range(n + 1)]
    f = rv.forecast_driver(hist, dt=0.05, hurst=0.2, delta=1.0 / 12.0)
    assert math.isfinite(f)
    assert rv.forecast_error_variance(0.2, 1.0 / 12.0) > 0.0

    dt, v, s = rv.simulate(
        hurst=0.2, nu=1.0, rho=-0.6, xi=0.04, measure="p", n_steps=1200,
        horizon=1200 / 252, n_paths=1, seed=5
    )
    vol = [math.sqrt(x) for x in v[0]]
    est = rv.estimate_roughness(vol)
    assert 0.0 < est.hurst < 0.5
    assert est.nu > 0.0
