"""Acceptance suite: one test per release criterion, at the stated tolerances.

Criteria 2 and 6 each contain a sub-claim that is false as stated (the
cross-bound ordering against the level-2 bound, and the first-factor partial
trace of a purification). Those tests run the claim faithfully and fail with
itemized counterexamples instead of weakening the check; everything else is
green. See the README for the status table.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

import uur
from uur import bounds, cli, moments, scenarios
from uur.moments import ModulusPair

SLACK = 1e-10


def _instance(seed: int, trial: int, dmin=2, dmax=8):
    gen = uur.trial_generator(seed=seed, trial=trial)
    d = dmin + trial % (dmax - dmin + 1)
    A = uur.random_unitary(gen, d)
    B = uur.random_unitary(gen, d)
    psi = uur.random_state(gen, d)
    return A, B, psi, d


def test_criterion_01_pairwise_bound_chains():
    violations = []
    for trial in range(1000):
        A, B, psi, d = _instance(101, trial)
        pair = moments.modulus_pair(A, B, psi)
        vp = bounds.variance_product(pair)
        lb = bounds.correlation_bound(pair)
        k_tilde, _, _ = bounds.best_split_bound_overall(pair)
        for m in range(1, d + 1):
            k = bounds.split_bound(pair, bounds.SubsetSelection.first_block(d, m))
            if not lb <= k + SLACK:
                violations.append((trial, m, "lb > k_m"))
            for v in (0.0, 0.1, 0.5, 1.0):
                kv = bounds.split_bound_blend(
                    pair, bounds.SubsetSelection.first_block(d, m), v)
                if not (k <= kv + SLACK and kv <= vp + SLACK):
                    violations.append((trial, m, f"blend chain broke at v={v}"))
            if m < d:
                km_tilde, _ = bounds.best_split_bound(pair, m)
                if not (k <= km_tilde + SLACK and km_tilde <= k_tilde + SLACK
                        and k_tilde <= vp + SLACK):
                    violations.append((trial, m, "subset chain broke"))
    assert violations == [], f"{len(violations)} chain violations, first: {violations[:5]}"


def test_criterion_02_interpolation_endpoints_and_cross_bound():
    endpoint_bad = []
    cross_bad = []
    for trial in range(1000):
        A, B, psi, d = _instance(102, trial)
        pair = moments.modulus_pair(A, B, psi)
        vp = bounds.variance_product(pair)
        lb = bounds.correlation_bound(pair)
        seq = bounds.fine_grained_sequence(pair)
        if abs(seq[0] - vp) > SLACK or abs(seq[-1] - lb) > SLACK:
            endpoint_bad.append((trial, "endpoints"))
        if any(a < b - SLACK for a, b in zip(seq, seq[1:])):
            endpoint_bad.append((trial, "not non-increasing"))
        if d >= 3:
            cross = bounds.paired_cross_bound(pair)
            if cross > vp + SLACK:
                cross_bad.append((trial, d, "cross bound above the variance product",
                                  cross - vp))
            if cross < seq[1] - SLACK:
                cross_bad.append((trial, d, "cross bound below level 2",
                                  seq[1] - cross))
    assert endpoint_bad == [], f"endpoint failures: {endpoint_bad[:5]}"
    if cross_bad:
        worst = max(gap for *_, gap in cross_bad)
        pytest.fail(
            f"the ordering 'cross bound >= level-2 bound' fails on "
            f"{len(cross_bad)} of 1000 random instances (worst gap {worst:.3e}; "
            f"first cases {cross_bad[:3]}). The two bounds are incomparable on "
            "general states: the cross bound subtracts the first-coordinate "
            "cross terms that the level-2 bound keeps. The ordering does hold "
            "on the built-in clock/shift family. The formula is implemented "
            "verbatim; this failure documents the defect rather than "
            "patching it.")


def test_criterion_03_clock_shift_closed_forms():
    deviations = []
    for d in (2, 3, 6):
        scen = scenarios.scenario("ex1", d)
        A, B = (M for _, M in scen.operators)
        for theta in scenarios.theta_grid(0.0, math.pi, 50):
            ref = scenarios.example1_reference(d, theta)
            pair = moments.modulus_pair(A, B, scen.state(theta))
            seq = bounds.fine_grained_sequence(pair)
            got = {
                "x": pair.x, "y": pair.y,
                "i_1": seq[0], "i_2": seq[1], "i_d": seq[-1],
            }
            want = {
                "x": np.asarray(ref.x), "y": np.asarray(ref.y),
                "i_1": ref.i_1, "i_2": ref.i_2, "i_d": ref.i_d,
            }
            for key in got:
                err = float(np.max(np.abs(np.asarray(got[key]) - np.asarray(want[key]))))
                if err > 1e-9:
                    deviations.append((d, round(theta, 6), key, err))
        if d == 2:
            for theta in scenarios.theta_grid(0.0, math.pi, 25):
                rep = bounds.bound_report(A, B, scen.state(theta), m=1, v=0.1)
                vals = [rep.variance_product, rep.lb, rep.k_m, rep.k_m_v,
                        rep.k_tilde_m, rep.k_tilde, *rep.i_d]
                assert max(vals) - min(vals) < SLACK, \
                    f"d=2 bounds split apart at theta={theta}"
    # The printed closed forms assign the second and last coordinate to the
    # same slot when d = 2, so deviations there are expected and itemized;
    # d = 3 and d = 6 must match exactly.
    for d, theta, key, err in deviations:
        print(f"closed-form deviation: d={d} theta={theta} field={key} |diff|={err:.3e}")
    hard = [dev for dev in deviations if dev[0] != 2]
    assert hard == [], f"closed forms deviate beyond d=2: {hard[:5]}"
    two_fields = {dev[2] for dev in deviations if dev[0] == 2}
    # x has a distinct slot per entry even at d=2; y and the scalar forms
    # share the collided slot, so only they may drift there.
    assert two_fields <= {"y", "i_1", "i_2", "i_d"}, \
        f"unexpected d=2 deviation fields: {two_fields}"


def test_criterion_04_block_choice_saturation():
    # Moving index 3 out of the leading block in favor of the last index
    # saturates the subset bound on the clock/shift family at block size 3.
    for d in range(3, 9):
        scen = scenarios.scenario("ex1", d)
        A, B = (M for _, M in scen.operators)
        indices = (1, 2, d) if d > 3 else (1, 2, 3)
        sel = bounds.SubsetSelection(n=d, indices=indices)
        for theta in scenarios.theta_grid(0.1, math.pi - 0.1, 25):
            pair = moments.modulus_pair(A, B, scen.state(theta))
            vp = bounds.variance_product(pair)
            assert bounds.split_bound(pair, sel) == pytest.approx(vp, abs=SLACK), \
                f"d={d} theta={theta}: subset {indices} fails to saturate"
    # Qubit purification example: the pair swap {2, 4} at block size 2.
    scen = scenarios.scenario("ex4")
    A, B = (M for _, M in scen.operators)
    sel = bounds.SubsetSelection(n=4, indices=(2, 4))
    for theta in scenarios.theta_grid(0.0, 2 * math.pi, 50):
        pair = moments.modulus_pair(A, B, scen.state(theta))
        vp = bounds.variance_product(pair)
        assert bounds.split_bound(pair, sel) == pytest.approx(vp, abs=SLACK), \
            f"theta={theta}: subset (2, 4) fails to saturate"
        best, _ = bounds.best_split_bound(pair, 2)
        assert best == pytest.approx(vp, abs=SLACK)


def test_criterion_05_qubit_purification_ordering():
    scen = scenarios.scenario("ex4")
    A, B = (M for _, M in scen.operators)
    for theta in scenarios.theta_grid(0.0, 2 * math.pi, 200):
        pair = moments.modulus_pair(A, B, scen.state(theta))
        vp = bounds.variance_product(pair)
        k2v = bounds.split_bound_blend(pair, bounds.SubsetSelection.first_block(4, 2), 0.1)
        seq = bounds.fine_grained_sequence(pair)
        lb = bounds.correlation_bound(pair)
        chain = [vp, k2v, seq[1], seq[2], seq[3], lb]
        for a, b in zip(chain, chain[1:]):
            assert a >= b - SLACK, f"ordering broke at theta={theta}: {chain}"


def test_criterion_06_purification_identities():
    trace_bad = []
    worst = 0.0
    for trial in range(200):
        gen = uur.trial_generator(seed=106, trial=trial)
        r = gen.uniform(-1.0, 1.0, size=3)
        norm = np.linalg.norm(r)
        if norm >= 1.0:
            r *= 0.98 / norm
        rho = moments.bloch_density(r)
        psi = moments.purify(rho)
        proj = np.outer(psi.amplitudes, psi.amplitudes.conj())
        for _ in range(20):
            U = uur.random_unitary(gen, 2)
            got = moments.expectation(moments.lift(U), psi)
            want = complex(np.trace(U @ rho.matrix))
            assert abs(got - want) <= 1e-10, \
                f"trial {trial}: lifted expectation off by {abs(got - want):.3e}"
        second = uur.partial_trace(proj, keep="second")
        first = uur.partial_trace(proj, keep="first")
        assert np.max(np.abs(second - rho.matrix)) <= 1e-9, \
            f"trial {trial}: second-factor trace misses the input state"
        dev = float(np.max(np.abs(first - rho.matrix)))
        if dev > 1e-9:
            trace_bad.append((trial, dev))
            worst = max(worst, dev)
    if trace_bad:
        pytest.fail(
            f"the partial trace over the first factor misses the input state on "
            f"{len(trace_bad)} of 200 draws (worst {worst:.3e}; first cases "
            f"{trace_bad[:3]}). That trace equals the transpose of the input "
            "for this purification, and equals the input itself only when the "
            "matrix is real. Any purification satisfying the lifted-expectation "
            "identity shares this property, so 'both partial traces equal the "
            "input' is unsatisfiable; the second-factor trace and the "
            "expectation identity above both hold.")


def test_criterion_07_mixed_state_floor():
    for trial in range(500):
        gen = uur.trial_generator(seed=107, trial=trial)
        d = 2 + trial % 3
        rho = uur.random_density(gen, d)
        A = uur.random_unitary(gen, d)
        B = uur.random_unitary(gen, d)
        va = moments.variance_mixed(A, rho)
        vb = moments.variance_mixed(B, rho)
        dec = uur.hermitian_eig(rho.matrix)
        prods, sums = [], []
        for k in range(d):
            vec = dec.eigenvectors[:, k]
            if dec.eigenvalues[k] < 1e-12:
                continue
            pure = moments.PureState(amplitudes=vec / np.linalg.norm(vec))
            pa = moments.variance_pure(A, pure)
            pb = moments.variance_pure(B, pure)
            prods.append(pa * pb)
            sums.append(pa + pb)
        assert va * vb >= min(prods) - 1e-9, f"trial {trial}: product floor broke"
        assert va + vb >= min(sums) - 1e-9, f"trial {trial}: sum floor broke"


def test_criterion_08_gram_psd_and_triple():
    for trial in range(500):
        gen = uur.trial_generator(seed=108, trial=trial)
        d = 2 + trial % 5
        n_ops = 2 + trial % 3
        ops = [uur.random_unitary(gen, d) for _ in range(n_ops)]
        psi = uur.random_state(gen, d)
        G = bounds.gram_matrix(ops, psi)
        assert float(np.min(np.linalg.eigvalsh(G))) >= -SLACK, \
            f"trial {trial}: Gram matrix not PSD"
        if n_ops == 3:
            product = math.prod(moments.variance_pure(U, psi) for U in ops)
            rhs = bounds.triple_correlation_bound(*ops, psi)
            assert rhs <= product + SLACK, \
                f"trial {trial}: triple bound exceeds the variance product"


def test_criterion_09_geometric_mean_products():
    for n_ops in (3, 4):
        for trial in range(300):
            gen = uur.trial_generator(seed=109 + n_ops, trial=trial)
            d = 2 + trial % 5
            ops = [uur.random_unitary(gen, d) for _ in range(n_ops)]
            psi = uur.random_state(gen, d)
            m = 1 + trial % max(1, d // 2)
            product = math.prod(moments.variance_pure(U, psi) for U in ops)
            vals = {}
            for flavor in ("plain", "convex", "tilde"):
                val = bounds.geometric_mean_bound(ops, psi, m, 0.1, flavor)
                vals[flavor] = val
                assert val <= product + SLACK, \
                    f"l={n_ops} trial {trial} {flavor}: bound exceeds product"
            assert vals["tilde"] >= vals["plain"] - 1e-12, \
                f"l={n_ops} trial {trial}: subset-optimized below first-block"


def test_criterion_10_permutation_oracle():
    for trial in range(100):
        gen = uur.trial_generator(seed=110, trial=trial)
        n = 2 + trial % 5
        A = uur.random_unitary(gen, n)
        B = uur.random_unitary(gen, n)
        psi = uur.random_state(gen, n)
        pair = moments.modulus_pair(A, B, psi)
        x2 = pair.x.astype(float) ** 2
        y2 = pair.y.astype(float) ** 2
        for m in range(1, n):
            by_subset = {}
            for comb in itertools.combinations(range(n), m):
                by_subset[frozenset(comb)] = bounds.split_bound(
                    pair, bounds.SubsetSelection(n=n, indices=tuple(i + 1 for i in comb)))
            perm_max = max(by_subset[frozenset(perm[:m])]
                           for perm in itertools.permutations(range(n)))
            enum_val, _ = bounds.best_split_bound(pair, m)
            assert perm_max == enum_val, \
                f"trial {trial} n={n} m={m}: permutation oracle disagrees " \
                f"({perm_max!r} vs {enum_val!r})"
        del x2, y2


def test_criterion_11_cli_determinism(tmp_path):
    pairs = [
        (["sweep", "--example", "ex1", "--dim", "4", "--steps", "40"], "sweep"),
        (["sweep", "--example", "ex6", "--steps", "25", "--format", "json"], "sweep6"),
        (["check", "--seed", "42", "--trials", "25"], "check"),
    ]
    for args, tag in pairs:
        a = tmp_path / f"{tag}_a.out"
        b = tmp_path / f"{tag}_b.out"
        assert cli.main([*args, "--output", str(a)]) == 0
        assert cli.main([*args, "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes(), f"{tag}: outputs differ between runs"
