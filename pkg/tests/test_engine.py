import numpy as np
import pytest

from spinpurge import presets
from spinpurge.dicke import rt_steady_polarization
from spinpurge.engine import (
    SteadyStateClass,
    apply_cycle,
    build_superoperator,
    classify_rc,
    cycle_unitary,
    hermitian_basis,
    numeric_rank_nullity,
    rank_report,
    reset_channel,
    run_cycles,
    matrix_element_apply,
)
from spinpurge.model import PiecewiseHamiltonian, ProtocolConfig, ResetSpec, build_schedule
from spinpurge.netgraph import (
    NetworkGraph,
    analytic_rank_nullity,
    automorphism_orbits,
    enumerate_connected_graphs,
    spectral_report,
)
from spinpurge.qmat import (
    DensityMatrix,
    exchange_on_sites,
    fgs_density,
    maximally_mixed,
    partial_trace_ancilla,
    purity,
)


def star(n, g=1.0):
    return NetworkGraph(n, {}, {}, {k: g for k in range(n)})


def rt_schedule(graph, tau, delta=0.5):
    return build_schedule(ProtocolConfig(tau=tau, delta=delta, protocol="RT"), graph)


GENERIC = dict(tau=1.9, delta=0.37)


# --- run_cycles -----------------------------------------------------------------


def test_single_spin_full_swap_purifies_in_one_cycle():
    # (g/2) tau = pi/2 is a complete excitation swap into the ancilla
    g = star(1)
    sched = rt_schedule(g, tau=np.pi, delta=0.0)
    rho, trace = run_cycles(DensityMatrix.maximally_mixed(1), sched, n_cycles=1, steady_tol=0)
    assert trace.purity[0] == pytest.approx(1.0, abs=1e-12)
    assert trace.fgs_fidelity[0] == pytest.approx(1.0, abs=1e-12)


def test_zero_hamiltonian_is_fixed_point():
    sched = PiecewiseHamiltonian(((np.zeros((8, 8), dtype=complex), 1.0),))
    rng = np.random.default_rng(0)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho0 = a @ a.conj().T
    rho0 /= np.trace(rho0).real
    rho, trace = run_cycles(rho0, sched, n_cycles=5, steady_tol=0)
    assert np.abs(rho.mat - rho0).max() < 1e-12
    assert np.allclose(trace.purity, purity(rho0))


def test_star4_reaches_closed_form_purity():
    sched = rt_schedule(star(4), tau=2.0, delta=0.0)
    rho, trace = run_cycles(
        DensityMatrix.maximally_mixed(4), sched, n_cycles=4000, steady_tol=1e-11
    )
    assert trace.converged_at is not None
    assert trace.purity[-1] == pytest.approx(54 / 256, abs=1e-3)


def test_dimension_mismatch_rejected():
    sched = rt_schedule(star(2), tau=1.0)
    with pytest.raises(ValueError):
        run_cycles(DensityMatrix.maximally_mixed(3), sched, n_cycles=1)


# --- reset channel ---------------------------------------------------------------


def test_reset_ideal_discards_ancilla():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho_s = a @ a.conj().T
    rho_s /= np.trace(rho_s).real
    psi = np.array([[0.5, 0.5], [0.5, 0.5]])  # |+><+| ancilla
    joint = np.kron(psi, rho_s)
    out = reset_channel(joint, ResetSpec())
    assert np.allclose(out, np.kron([[1, 0], [0, 0]], rho_s))


def test_reset_parametric_zero_equals_ideal():
    rng = np.random.default_rng(2)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    joint = a @ a.conj().T
    joint /= np.trace(joint).real
    ideal = reset_channel(joint, ResetSpec())
    par = reset_channel(joint, ResetSpec("parametric", z=0.0, x=0.0))
    assert np.allclose(ideal, par)


def test_hot_ancilla_limits_single_spin_purity():
    # full-swap cycle with a half-excited reset state: steady purity stays
    # pinned at the ancilla's own purity (here z = 0.5, purity 1/2)
    g = star(1)
    sched = rt_schedule(g, tau=np.pi, delta=0.0)
    reset = ResetSpec("parametric", z=0.5, x=0.0)
    rho, trace = run_cycles(
        DensityMatrix.maximally_mixed(1), sched, reset, n_cycles=60, steady_tol=1e-12
    )
    assert trace.purity[-1] < 1.0 - 1e-3
    assert trace.purity[-1] == pytest.approx(0.5, abs=1e-9)


# --- superoperator ----------------------------------------------------------------


def test_hermitian_basis_orthonormal():
    B = hermitian_basis(4)
    G = np.einsum("aij,bji->ab", B, B)
    assert np.abs(G - np.eye(16)).max() < 1e-12
    assert np.allclose(B[0], np.eye(4) / 2)
    for k in range(1, 16):
        assert abs(np.trace(B[k])) < 1e-12


def test_superoperator_n1_full_swap_unique_steady_state():
    sched = rt_schedule(star(1), tau=np.pi, delta=0.0)
    sop = build_superoperator(sched)
    rank, nullity = numeric_rank_nullity(sop)
    # trace-projected nullity 0 <=> one steady state on the full space
    assert (rank, nullity) == (3, 0)
    assert classify_rc(nullity) is SteadyStateClass.UNIQUE_SSS
    # and that steady state is the polarized one
    U = cycle_unitary(sched)
    out = apply_cycle(fgs_density(1), U, ResetSpec().ancilla_state())
    assert np.abs(out - fgs_density(1)).max() < 1e-12


def test_superoperator_identity_chain_n2():
    g = NetworkGraph(2, {(0, 1): 1.0}, {}, {0: 1.0})
    sop = build_superoperator(rt_schedule(g, **GENERIC))
    rank, nullity = numeric_rank_nullity(sop)
    assert nullity == 0
    assert classify_rc(nullity) is SteadyStateClass.UNIQUE_SSS


def test_superoperator_complete3():
    # orbit counting gives rank 51 / nullity 12 for the (1, 2) distribution;
    # the dynamical fixed space is strictly smaller (the orbit count treats
    # every symmetry-identified correlator as dark, but the antisymmetric
    # sector decays under the cycle map except for the pair-singlet block),
    # leaving exactly one traceless fixed direction
    g = NetworkGraph(3, {(0, 1): 1.0, (0, 2): 1.0, (1, 2): 1.0}, {}, {0: 1.0})
    assert analytic_rank_nullity(automorphism_orbits(g).counts, 3) == (51, 12)
    sop = build_superoperator(rt_schedule(g, **GENERIC))
    rep = rank_report(sop)
    assert rep.nullity == 1
    assert rep.gap_ratio > 1e6
    assert classify_rc(rep.nullity) is SteadyStateClass.DEGENERATE_SSS


def test_superoperator_star2_matches_orbit_count():
    sop = build_superoperator(rt_schedule(star(2), tau=2.0, delta=0.0))
    assert numeric_rank_nullity(sop) == (12, 3)


def test_rank_report_gap_diagnostic():
    sop = build_superoperator(rt_schedule(star(2), tau=2.0, delta=0.0))
    rep = rank_report(sop)
    s = rep.singular_values
    assert rep.gap_ratio == pytest.approx(s[rep.rank - 1] / s[rep.rank])
    assert rep.gap_ratio > 1e9


def test_superoperator_size_cap():
    with pytest.raises(ValueError):
        build_superoperator(rt_schedule(star(6), tau=1.0, delta=0.0))


def test_nullity_invariant_under_relabeling():
    g = NetworkGraph(3, {(0, 1): 1.0, (1, 2): 0.6}, {}, {1: 1.0})
    perm = [2, 0, 1]
    n0 = numeric_rank_nullity(build_superoperator(rt_schedule(g, **GENERIC)))[1]
    n1 = numeric_rank_nullity(build_superoperator(rt_schedule(g.relabeled(perm), **GENERIC)))[1]
    assert n0 == n1


def test_element_formula_matches_channel():
    # the matrix-element form of the cycle map agrees with conjugate-and-trace
    rng = np.random.default_rng(3)
    for n in (1, 2):
        g = NetworkGraph(n, {(i, i + 1): 1.0 for i in range(n - 1)}, {}, {0: 1.0})
        U = cycle_unitary(rt_schedule(g, **GENERIC))
        a = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        via_channel = apply_cycle(rho, U, ResetSpec().ancilla_state())
        via_elements = matrix_element_apply(U, rho)
        assert np.abs(via_channel - via_elements).max() < 1e-12


# --- nullity triangulation against orbit counts ------------------------------------


def _nullity_comparison(n):
    rows = []
    for g in enumerate_connected_graphs(n):
        counts = automorphism_orbits(g).counts
        _, null_a = analytic_rank_nullity(counts, n)
        sop = build_superoperator(rt_schedule(g, **GENERIC))
        _, null_n = numeric_rank_nullity(sop)
        kernel = spectral_report(g.adjacency()).kernel_dim
        rows.append((g, counts, null_a, null_n, kernel))
    return rows


@pytest.mark.parametrize("n", [2, 3, 4])
def test_nullity_classification_triangulation(n):
    # the zero/nonzero verdicts of the two routes agree on every connected
    # graph: orbit-degenerate graphs have degenerate dynamical steady states
    # and probed-identity graphs have a unique one, kernel permitting
    for g, counts, null_a, null_n, kernel in _nullity_comparison(n):
        if null_a == 0 and kernel == 0:
            assert null_n == 0, (counts, null_n)
        if null_a > 0:
            assert null_n > 0, (counts, null_n)
        # the combinatorial count never undercounts on these fixtures
        assert null_a >= null_n


def test_nullity_classification_n5_samples():
    # spot checks at N=5: probed-identity chain (unique steady state despite
    # the odd-path kernel, whose vector is visible at the probed end), the
    # 5-ring (orbit-degenerate), and the star (kernel everywhere)
    cases = {
        "chain": NetworkGraph(5, {(i, i + 1): 1.0 for i in range(4)}, {}, {0: 1.0}),
        "ring": NetworkGraph(
            5, {(0, 1): 1.0, (1, 2): 1.0, (2, 3): 1.0, (3, 4): 1.0, (0, 4): 1.0}, {}, {0: 1.0}
        ),
        "star": star(5),
    }
    expectations = {}
    for name, g in cases.items():
        counts = automorphism_orbits(g).counts
        _, null_a = analytic_rank_nullity(counts, 5)
        cfg = ProtocolConfig(tau=1.9, delta=0.37, protocol="RT")
        _, null_n = numeric_rank_nullity(build_superoperator(build_schedule(cfg, g)))
        expectations[name] = (counts, null_a, null_n)
    counts, null_a, null_n = expectations["chain"]
    assert (counts, null_a, null_n) == ((1, 1, 1, 1, 1), 0, 0)
    counts, null_a, null_n = expectations["ring"]
    assert counts == (1, 2, 2)
    assert null_a > 0 and 0 < null_n <= null_a
    counts, null_a, null_n = expectations["star"]
    assert counts == (5,)
    assert null_a > 0 and 0 < null_n <= null_a


# --- symmetry constraints over the dynamics --------------------------------------------


def test_symmetric_initial_state_stays_symmetric():
    # orbit pair (1, 2) of the tailed triangle; exchange symmetry of the
    # state survives every cycle
    g = presets.network("paw_tail")
    sched = rt_schedule(g, tau=2.0, delta=0.5)
    pi_sys = exchange_on_sites(2, 3, 4)  # orbit pair {2, 3} on the system register
    rho = maximally_mixed(4)
    U = cycle_unitary(sched)
    anc = ResetSpec().ancilla_state()
    for _ in range(40):
        rho = apply_cycle(rho, U, anc)
        assert np.abs(pi_sys @ rho @ pi_sys - rho).max() < 1e-8


def test_same_orbit_nodes_have_identical_steady_reduced_states():
    g = presets.network("paw_tail")
    sched = rt_schedule(g, tau=2.0, delta=0.5)
    rho, trace = run_cycles(
        DensityMatrix.maximally_mixed(4), sched, n_cycles=6000, steady_tol=1e-12
    )
    mat = rho.mat

    def reduced(rho_sys, site, n):
        r = rho_sys.reshape((2,) * n + (2,) * n)
        src = list(range(n)) + list(range(n, 2 * n))
        for other in range(n):
            if other != site:
                src[n + other] = src[other]
        return np.einsum(r, src, [site, n + site])

    r2 = reduced(mat, 2, 4)
    r3 = reduced(mat, 3, 4)
    assert np.abs(r2 - r3).max() < 1e-8
    # sanity: the probed node is allowed to differ
    r0 = reduced(mat, 0, 4)
    assert r0.shape == (2, 2)


def test_star_rt_never_exceeds_closed_form_purity():
    # angular-momentum blocks cap the attainable purity for every cycle time
    n = 3
    cap = rt_steady_polarization(n)
    for tau in np.linspace(0.25, 5.0, 20):
        sched = rt_schedule(star(n), tau=float(tau), delta=0.0)
        _, trace = run_cycles(
            DensityMatrix.maximally_mixed(n), sched, n_cycles=400, steady_tol=1e-13
        )
        assert trace.purity.max() <= cap + 1e-9


@pytest.mark.parametrize("name,proto", [
    ("paw_tail", "adrt_default"),
    ("complete4", "adrt_complete4"),
    ("ring4", "adrt_chain"),
])
def test_adrt_breaks_blocked_networks(name, proto):
    # orbit-degenerate (and spectrally singular) networks that plateau under
    # resonant transfer reach the target state once the dispersive half-cycle
    # with distinct couplings is switched in
    g = presets.network(name)
    spec = presets.protocol_spec(proto)
    gt = presets.g_tilde_ramp(g.n_nodes, spec["g_tilde_base"], spec["g_tilde_step"])
    cfg = ProtocolConfig(
        tau=spec["tau"], delta=spec["delta"], protocol="ADRT", g_tilde=gt, n_cycles=4000
    )
    sched = build_schedule(cfg, g)
    _, trace = run_cycles(
        DensityMatrix.maximally_mixed(g.n_nodes),
        sched,
        n_cycles=4000,
        steady_tol=0,
        check_invariants=False,
    )
    assert trace.fgs_fidelity.max() > 0.99


def test_cycle_trace_fields():
    sched = rt_schedule(star(2), tau=2.0, delta=0.0)
    _, trace = run_cycles(DensityMatrix.maximally_mixed(2), sched, n_cycles=10, steady_tol=0)
    assert trace.n_cycles == 10
    assert np.allclose(trace.epsilon, 1 - trace.fgs_fidelity)
    assert np.all(trace.ancilla_purity >= 0.5 - 1e-12)
    assert np.all(trace.purity >= 0.25 - 1e-12)
