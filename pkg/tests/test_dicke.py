import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinpurge.dicke import (
    DickeTable,
    degeneracy_dj,
    dicke_sectors,
    fit_tail_decay,
    jplus,
    rt_recurrence_step,
    rt_steady_entropy,
    rt_steady_polarization,
    rt_steady_polarization_exact,
    rt_steady_purity_binomial_exact,
    rt_steady_purity_blocksum_exact,
)
from spinpurge.engine import run_cycles
from spinpurge.model import ProtocolConfig, build_schedule
from spinpurge.netgraph import NetworkGraph
from spinpurge.qmat import DensityMatrix


def star(n, g=1.0):
    return NetworkGraph(n, {}, {}, {k: g for k in range(n)})


# --- sector bookkeeping --------------------------------------------------------


def test_degeneracies_n4():
    assert degeneracy_dj(4, 2) == 1
    assert degeneracy_dj(4, 1) == 3
    assert degeneracy_dj(4, 0) == 2
    assert 1 * 5 + 3 * 3 + 2 * 1 == 16


def test_degeneracies_small():
    assert degeneracy_dj(2, 1) == 1
    assert degeneracy_dj(2, 0) == 1
    assert degeneracy_dj(1, 0.5) == 1


@pytest.mark.parametrize("n", range(1, 11))
def test_degeneracy_completeness(n):
    total = sum(degeneracy_dj(n, j) * int(2 * j + 1) for j in dicke_sectors(n))
    assert total == 2**n


def test_degeneracy_rejects_bad_parity():
    with pytest.raises(ValueError):
        degeneracy_dj(4, 0.5)
    with pytest.raises(ValueError):
        degeneracy_dj(3, 2.5)


def test_jplus_values():
    assert jplus(0.5, -0.5) == pytest.approx(1.0)
    assert jplus(1.0, 1.0) == pytest.approx(0.0)
    assert jplus(1.0, 0.0) == pytest.approx(np.sqrt(2))
    with pytest.raises(ValueError):
        jplus(0.5, 1.5)


# --- recurrence ------------------------------------------------------------------


def test_top_rung_table_is_fixed_point():
    n = 3
    blocks = {}
    for j in dicke_sectors(n):
        twoj = int(round(2 * j))
        for alpha in range(degeneracy_dj(n, j)):
            v = np.zeros(twoj + 1)
            v[-1] = 1.0 / (degeneracy_dj(n, j) * len(dicke_sectors(n)))
            blocks[(twoj, alpha)] = v
    table = DickeTable(n, blocks)
    total0 = table.total()
    stepped = rt_recurrence_step(table, 0.9)
    for key in blocks:
        assert np.allclose(stepped.blocks[key], table.blocks[key])
    assert stepped.total() == pytest.approx(total0)


def test_single_spin_full_transfer():
    table = DickeTable.maximally_mixed(1)
    stepped = rt_recurrence_step(table, np.pi / 2)  # sin^2(J+ x) = 1
    v = stepped.blocks[(1, 0)]
    assert v[0] == pytest.approx(0.0, abs=1e-15)
    assert v[1] == pytest.approx(1.0)


@settings(max_examples=20, deadline=None)
@given(n=st.integers(1, 6), x=st.floats(0.05, 3.0), steps=st.integers(1, 50))
def test_probability_conservation(n, x, steps):
    table = DickeTable.maximally_mixed(n)
    for _ in range(steps):
        table = rt_recurrence_step(table, x)
    assert table.total() == pytest.approx(1.0, abs=1e-12)
    for v in table.blocks.values():
        assert np.all(v >= -1e-15)


def test_long_run_conservation_tight():
    table = DickeTable.maximally_mixed(4)
    for _ in range(10_000):
        table = rt_recurrence_step(table, 1.0)
    assert abs(table.total() - 1.0) < 1e-12


# --- closed forms -----------------------------------------------------------------


def test_polarization_values():
    assert rt_steady_polarization(1) == pytest.approx(1.0)
    assert rt_steady_polarization(4) == pytest.approx(54 / 256)
    assert rt_steady_polarization(6) == pytest.approx(13 * 20 / 4096)


def test_polarization_falls_exponentially():
    # per-spin decay factor sits near 1/2 (the closed form goes as sqrt(N) 2^-N)
    for n in range(8, 12):
        ratio = rt_steady_polarization(n + 1) / rt_steady_polarization(n)
        assert 0.35 < ratio < 0.65


@pytest.mark.parametrize("n", range(1, 13))
def test_closed_form_identities_exact(n):
    # the three published forms agree as exact rationals
    a = rt_steady_polarization_exact(n)
    b = rt_steady_purity_blocksum_exact(n)
    c = rt_steady_purity_binomial_exact(n)
    assert a == b == c


@pytest.mark.parametrize("n", range(2, 9))
def test_recurrence_converges_to_closed_form(n):
    # x = 1.3 keeps every rung's per-cycle drain above 1.8e-3 for N <= 8
    table = DickeTable.maximally_mixed(n)
    prev = -1.0
    for _ in range(20_000):
        table = rt_recurrence_step(table, 1.3)
        cur = table.purity()
        if abs(cur - prev) < 1e-15:
            break
        prev = cur
    assert table.purity() == pytest.approx(rt_steady_polarization(n), abs=1e-9)
    # steady weights sit on the top rungs
    for (twoj, _), v in table.items():
        if len(v) > 1:
            assert v[:-1].max() < 1e-6


def test_steady_entropy_values():
    assert rt_steady_entropy(1) == pytest.approx(0.0, abs=1e-12)
    expected = -(0.75 * np.log(0.75) + 0.25 * np.log(0.25))
    assert rt_steady_entropy(2) == pytest.approx(expected, abs=1e-12)
    assert rt_steady_entropy(2) == pytest.approx(0.5623, abs=5e-4)


# --- dense-engine oracle equivalence ------------------------------------------------


def test_gtau_calibration_single_spin():
    # locks the ladder argument convention: x = (g/2) * (RT segment time);
    # must hold exactly at N=1 before any multi-spin comparison
    g = star(1, g=1.0)
    tau = 1.3
    sched = build_schedule(ProtocolConfig(tau=tau, delta=0.0, protocol="RT"), g)
    _, trace = run_cycles(DensityMatrix.maximally_mixed(1), sched, n_cycles=30, steady_tol=0)
    table = DickeTable.maximally_mixed(1)
    for cyc in range(30):
        table = rt_recurrence_step(table, 0.5 * 1.0 * tau)
        assert trace.purity[cyc] == pytest.approx(table.purity(), abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dense_engine_matches_recurrence(n, tau=2.0):
    sched = build_schedule(ProtocolConfig(tau=tau, delta=0.0, protocol="RT"), star(n))
    _, trace = run_cycles(
        DensityMatrix.maximally_mixed(n), sched, n_cycles=80, steady_tol=0
    )
    table = DickeTable.maximally_mixed(n)
    worst = 0.0
    for cyc in range(80):
        table = rt_recurrence_step(table, 0.5 * tau)
        worst = max(worst, abs(trace.purity[cyc] - table.purity()))
    assert worst < 1e-8


# --- tail fits ------------------------------------------------------------------------


def test_fit_tail_recovers_geometric_law():
    n = np.arange(1, 200)
    eps = 3.0 * np.exp(-0.05 * n)
    fit = fit_tail_decay(eps, tail_start=20)
    assert fit.geometric_rate == pytest.approx(-0.05, abs=1e-6)
    assert fit.geometric_residual < 1e-9
    assert fit.power_residual > fit.geometric_residual


def test_fit_tail_recovers_power_law():
    n = np.arange(1, 200)
    eps = 2.0 * n**-1.5
    fit = fit_tail_decay(eps, tail_start=20)
    assert fit.power_exponent == pytest.approx(-1.5, abs=1e-6)
    assert fit.power_residual < 1e-9
    assert fit.geometric_residual > fit.power_residual


def test_fit_tail_needs_points():
    with pytest.raises(ValueError):
        fit_tail_decay(np.array([1.0, 0.5]), tail_start=1)
