"""End-to-end acceptance checks, one test per criterion.

Every test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion. Seeds are fixed so results are reproducible.
"""

import csv
import io
import itertools
import math
import time

import numpy as np
import pytest
from scipy import stats

import qinfo as q
from qinfo import cli
from qinfo.experiments import (
    BENCH_COLUMNS,
    BenchmarkSpec,
    TeleportSpec,
    run_benchmark,
    run_teleportation,
)
from qinfo.matio import parse_matrix

from conftest import PHI, PSI, RHO, SIGMA

REPRESENTATIONS = ["kraus", "superoperator", "dynamical", "stinespring"]


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert elapsed < self.seconds, f"took {elapsed:.1f}s, budget {self.seconds}s"


@pytest.mark.criterion(1, "reference scalars within 1e-6")
def test_criterion_1_reference_scalars():
    with Budget(5):
        rp, sp = q.proj(PSI), q.proj(PHI)
        singlet = q.proj((q.ket(0, 4) - q.ket(3, 4)) / np.sqrt(2))
        rho_c = np.array([[0.25, 0.1j], [-0.1j, 0.75]])
        checks = [
            ("trace_distance", q.trace_distance(rp, sp), 0.2588190451),
            ("hs_distance", q.hs_distance(rp, sp), 0.3660254038),
            ("fidelity_sqrt", q.fidelity_sqrt(rp, sp), 0.9659258263),
            ("fidelity mm", q.fidelity(rp, sp), 0.9330127019),
            ("fidelity km", q.fidelity(PSI, sp), 0.9330127019),
            ("fidelity mk", q.fidelity(rp, PHI), 0.9330127019),
            ("fidelity kk", q.fidelity(PSI, PHI), 0.9330127019),
            ("superfidelity", q.superfidelity(rp, sp), 0.9330127019),
            ("shannon vector", q.shannon_entropy([0.3, 0.2, 0.5]), 1.0296530141),
            ("shannon point", q.shannon_entropy(0.5), 0.6931471806),
            ("vonneumann", q.vonneumann_entropy(0.4 * RHO + 0.6 * SIGMA), 0.5869295209),
            ("relative_entropy", q.relative_entropy(RHO, SIGMA), 0.1127375183),
            ("kl_divergence", q.kl_divergence(RHO, SIGMA), 0.1127375183),
            ("js_divergence", q.js_divergence(RHO, SIGMA), 0.1252860912),
            ("bures_distance", q.bures_distance(RHO, SIGMA), 0.2486755573),
            ("bures_angle", q.bures_angle(RHO, SIGMA), 0.2493208056),
            ("negativity singlet", q.negativity(singlet, [2, 2], 2), 0.5),
            ("ppt product", q.ppt(np.kron(RHO, SIGMA), [2, 2], 2), 0.0525126266),
            ("ppt singlet", q.ppt(singlet, [2, 2], 2), -0.5),
            ("concurrence product", q.concurrence(np.kron(rho_c, SIGMA)), 0.0),
            ("concurrence bell", q.concurrence(q.proj(q.max_entangled(4))), 1.0),
        ]
    bad = [(name, got, want) for name, got, want in checks if abs(got - want) > 1e-6]
    assert not bad, bad


@pytest.mark.criterion(2, "reference matrices within 1e-5")
def test_criterion_2_reference_matrices():
    with Budget(5):
        r = np.sqrt(0.6)
        ad = q.amplitude_damping(0.4)
        rho1, rho2 = q.proj(PSI), q.proj(PHI)
        psi1, psi2 = q.convert(ad, "superoperator"), q.convert(ad, "dynamical")
        e0 = q.proj(q.ket(0, 3))
        e1 = q.proj(q.ket(1, 3)) + q.proj(q.ket(2, 3))
        rho3 = q.proj((q.ket(0, 3) + q.ket(2, 3)) / np.sqrt(2))
        alpha = 0.3
        k0 = np.array([[0, 0, np.sqrt(alpha)], [0, 1, 0], [0, 0, 0]], dtype=complex)
        k1 = np.array([[1, 0, 0], [0, 0, 0], [0, 0, np.sqrt(1 - alpha)]], dtype=complex)
        pm = q.PostSelectionMeasurement(e1)
        checks = [
            ("superoperator", psi1.superoperator(),
             [[1, 0, 0, 0.4], [0, r, 0, 0], [0, 0, r, 0], [0, 0, 0, 0.6]]),
            ("dynamical", psi2.choi(), [[1, 0, 0, r], [0, 0.4, 0, 0], [0, 0, 0, 0], [r, 0, 0, 0.6]]),
            ("apply kraus", ad(rho1), [[0.7, 0.387298], [0.387298, 0.3]]),
            ("apply superoperator", psi1(rho1), [[0.7, 0.387298], [0.387298, 0.3]]),
            ("apply ket", ad(PSI), [[0.7, 0.387298], [0.387298, 0.3]]),
            ("sequential", (psi1 @ psi2)(rho1), [[0.82, 0.3], [0.3, 0.18]]),
            ("parallel", q.compose_parallel(ad, ad)(np.kron(rho1, rho2)), [
                [0.385, 0.234787, 0.213014, 0.129904],
                [0.234787, 0.315, 0.129904, 0.174284],
                [0.213014, 0.129904, 0.165, 0.100623],
                [0.129904, 0.174284, 0.100623, 0.135],
            ]),
            ("werner", q.werner_state(4, 0.4),
             [[0.35, 0, 0, 0.2], [0, 0.15, 0, 0], [0, 0, 0.15, 0], [0.2, 0, 0, 0.35]]),
            ("povm", q.POVMMeasurement([e0, e1])(rho3), np.diag([0.5, 0.5])),
            ("postselect", pm(rho3), np.diag([0, 0, 0.5])),
            ("postselect after channel", (pm @ q.KrausOperators([k0, k1]))(rho3), np.diag([0, 0, 0.35])),
        ]
    bad = [name for name, got, want in checks if np.abs(np.asarray(got) - np.asarray(want)).max() > 1e-5]
    assert not bad, bad


@pytest.mark.criterion(3, "representation coherence on 100 random channels")
def test_criterion_3_representation_coherence():
    rng = np.random.default_rng(3)
    shapes = [(2, 2), (2, 3), (3, 2)]
    worst_action = worst_reshuffle = 0.0
    with Budget(60):
        for n in range(100):
            idim, odim = shapes[n % 3]
            base = q.ChoiJamiolkowskiMatrices(idim, odim).sample(rng)
            reps = {name: q.convert(base, name) for name in REPRESENTATIONS}
            states = [q.HilbertSchmidtStates(idim).sample(rng) for _ in range(20)]
            for src, dst in itertools.product(REPRESENTATIONS, repeat=2):
                a = reps[src]
                b = q.convert(a, dst)
                for rho in states:
                    worst_action = max(worst_action, np.abs(a(rho) - b(rho)).max())
            s, j = reps["superoperator"].superoperator(), reps["dynamical"].choi()
            worst_reshuffle = max(
                worst_reshuffle,
                np.abs(q.reshuffle(s, [[odim, odim], [idim, idim]]) - j).max(),
                np.abs(q.reshuffle(j, [[odim, idim], [odim, idim]]) - s).max(),
            )
    assert worst_action <= 1e-9, worst_action
    assert worst_reshuffle <= 1e-12, worst_reshuffle


@pytest.mark.criterion(4, "diamond norm and distances")
def test_criterion_4_diamond():
    rng = np.random.default_rng(4)
    with Budget(120):
        norms = [q.norm_diamond(q.ChoiJamiolkowskiMatrices(2).sample(rng)) for _ in range(20)]
        ad = q.amplitude_damping(0.4)
        norms.append(q.norm_diamond(ad))
        self_distance = q.diamond_distance(ad, ad)
        flip = q.diamond_distance(q.IdentityChannel(2), q.UnitaryChannel(q.pauli_x))
    assert max(abs(x - 1) for x in norms) <= 1e-3, norms
    assert self_distance <= 1e-3
    assert abs(flip - 2) <= 1e-2


@pytest.mark.criterion(5, "random-object statistics")
def test_criterion_5_random_objects():
    rng = np.random.default_rng(5)
    with Budget(600):
        phases = np.concatenate([np.angle(np.linalg.eigvals(q.CUE(4).sample(rng))) for _ in range(1000)])
        counts, _ = np.histogram(phases, bins=20, range=(-np.pi, np.pi))
        chi2_p = stats.chisquare(counts).pvalue

        moment_z = {}
        for d in (2, 4):
            x = np.array([abs(q.HaarKet(d).sample(rng)[0]) ** 2 for _ in range(10_000)])
            moment_z[d] = abs(x.mean() - 1 / d) / (x.std(ddof=1) / np.sqrt(x.size))

        wish = [np.linalg.eigvalsh(q.HilbertSchmidtStates(2).sample(rng))[0] for _ in range(10_000)]
        traced = [
            np.linalg.eigvalsh(q.ptrace(q.proj(q.HaarKet(4).sample(rng)), [2, 2], [2]))[0]
            for _ in range(10_000)
        ]
        ks_p = stats.ks_2samp(wish, traced).pvalue

        ranks = {np.linalg.matrix_rank(q.WishartEnsemble(5, 1, 0.2).sample(rng), tol=1e-10) for _ in range(100)}

        choi_err = 0.0
        for n in range(100):
            idim, odim = [(2, 2), (2, 3), (3, 2)][n % 3]
            j = q.ChoiJamiolkowskiMatrices(idim, odim).sample(rng).choi()
            choi_err = max(choi_err, np.abs(q.ptrace(j, [odim, idim], [1]) - np.eye(idim)).max())
    assert chi2_p > 0.001, chi2_p
    assert all(z <= 5 for z in moment_z.values()), moment_z
    assert ks_p > 0.001, ks_p
    assert ranks == {1}, ranks
    assert choi_err <= 1e-8, choi_err


@pytest.mark.criterion(6, "teleportation experiment")
def test_criterion_6_teleportation():
    with Budget(300):
        noiseless = run_teleportation(TeleportSpec(0.0, 0.0, 0.01, trials=100, seed=6))
        _, grid_probs = run_teleportation(TeleportSpec(trials=100, seed=6), with_probabilities=True)
        n = 10_000
        rows, probs = run_teleportation(TeleportSpec(0.0, 1.0, 0.5, trials=n, seed=6), with_probabilities=True)
    assert abs(noiseless[0]["mean_fidelity"] - 1) <= 1e-9
    assert all(abs(noiseless[0][f"branch{j}"] - 1) <= 1e-9 for j in range(4))
    assert np.abs(grid_probs.sum(axis=2) - 1).max() <= 1e-9
    assert np.abs(probs.sum(axis=2) - 1).max() <= 1e-9
    # Fidelities lie in [0, 1], so 0.5 bounds the per-trial standard deviation.
    margin = 3 * math.sqrt(2) * 0.5 / math.sqrt(n)
    means = [r["mean_fidelity"] for r in rows]
    assert [r["gamma"] for r in rows] == [0.0, 0.5, 1.0]
    assert means[0] >= means[1] - margin and means[1] >= means[2] - margin, means
    assert means[0] - means[1] > margin and means[1] - means[2] > margin, means


@pytest.mark.criterion(7, "benchmark CLI contract and stationary residual")
def test_criterion_7_benchmark(capsys):
    with Budget(120):
        code = cli.main(["bench", "--task", "all", "--dims", "4,16", "--steps", "10", "--seed", "1"])
        out = capsys.readouterr().out
        residuals = {4: [], 16: []}

        def observe(task, dim, result):
            channel, rho, _ = result
            residuals[dim].append(np.abs(channel(rho) - rho).max())

        run_benchmark(BenchmarkSpec("stationary_entropy", (4, 16), 10, 1), observer=observe)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ",".join(BENCH_COLUMNS)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 14
    for row in rows:
        assert int(row["dim"]) in (4, 16) and int(row["steps"]) == 10
        assert float(row["total_seconds"]) > 0 and float(row["mean_seconds"]) > 0
    assert all(len(v) == 10 and max(v) <= 1e-6 for v in residuals.values()), residuals


@pytest.mark.criterion(8, "determinism of samplers and CLI output")
def test_criterion_8_determinism(capsys):
    descriptors = [
        q.GinibreEnsemble(3, 2, 1), q.GinibreEnsemble(3, 2, 2), q.GinibreEnsemble(3, 2, 4),
        q.WishartEnsemble(4, 2, 0.5), q.CUE(3), q.COE(3), q.CSE(2),
        q.CircularRealEnsemble(3), q.CircularQuaternionEnsemble(2),
        q.HaarKet(3), q.HilbertSchmidtStates(3),
    ]
    for desc in descriptors:
        assert np.array_equal(desc.sample(8), desc.sample(8)), desc
    ch = q.ChoiJamiolkowskiMatrices(2, 3)
    assert np.array_equal(ch.sample(8).choi(), ch.sample(8).choi())

    def cli_out(argv):
        assert cli.main(argv) == 0
        return capsys.readouterr().out

    def untimed(text):
        return [(r["task"], r["dim"], r["steps"]) for r in csv.DictReader(io.StringIO(text))]

    bench = ["bench", "--task", "all", "--dims", "4", "--steps", "2", "--seed", "8"]
    assert untimed(cli_out(bench)) == untimed(cli_out(bench))
    samples = []
    for _ in range(2):
        seen = []
        run_benchmark(BenchmarkSpec("all", (4,), 2, 8), observer=lambda t, d, r: seen.append((t, r)))
        samples.append(seen)
    for (ta, ra), (tb, rb) in zip(*samples):
        assert ta == tb
        if ta in ("rand_channel",):
            assert np.array_equal(ra.superoperator(), rb.superoperator())
        elif ta == "stationary_entropy":
            assert np.array_equal(ra[1], rb[1]) and ra[2] == rb[2]
        else:
            assert np.array_equal(ra, rb)
    tele = ["teleport", "--gamma-step", "0.25", "--trials", "20", "--seed", "8"]
    assert cli_out(tele) == cli_out(tele)
    dump = ["dump", "--ensemble", "choi_channel", "--idim", "2", "--odim", "3", "--seed", "8"]
    first = cli_out(dump)
    assert first == cli_out(dump)
    assert np.array_equal(parse_matrix(first), ch.sample(8).choi())
