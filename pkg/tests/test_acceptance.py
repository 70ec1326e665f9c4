"""Acceptance criteria 1-10, one test each.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".  Run on its own with

    python3 -m pytest tests/test_acceptance.py -v

Criteria 1 and 6 are evaluated exactly as stated and fail for reasons
documented in the README; their tests are strict xfails so the suite stays
green while the failure stays visible.
"""
import io
import itertools
import json
import math
import time
from contextlib import redirect_stdout

import numpy as np
import pytest

from mie_nd import ladder as lad
from mie_nd.cli import main
from mie_nd.errors import UnphysicalChannel
from mie_nd.model import Channel, derive, make_params
from mie_nd.numoracle import fd_eigenvalues, fd_problem, ode_residual
from mie_nd.observables import energy_derivative, expect_inv_r, expect_inv_r2, virial
from mie_nd.quadrature import expect_power, norm, radial_inner_product
from mie_nd.spectrum import energy, energy_kratzer_fues
from mie_nd.wavefunction import radial_state

from conftest import SWEEP, record_criterion
from test_spectrum import PRINTED_TABLE
from test_wavefunction import textbook_hydrogen

LEVELS = (0, 1, 2)


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def verify_run():
    start = time.perf_counter()
    code, out = run_cli("verify", "--format", "json")
    return code, json.loads(out), time.perf_counter() - start


@pytest.mark.xfail(strict=True, reason="the printed N=9, n=5 entry (665) disagrees with the exact count 660")
def test_criterion_01_degeneracy_table():
    start = time.perf_counter()
    code, out = run_cli("degeneracy", "--paper-table", "--format", "json")
    elapsed = time.perf_counter() - start
    got = {(r["N"], r["n"]): r["degeneracy"] for r in json.loads(out)}
    diffs = [(N, n, got[(N, n)], x) for N, row in PRINTED_TABLE.items() for n, x in enumerate(row, 1)
             if got.get((N, n)) != x]
    ok = code == 0 and len(got) == 40 and not diffs and elapsed < 1.0
    detail = f"{40 - len(diffs)}/40 entries equal the printed table, {elapsed * 1e3:.1f} ms"
    if diffs:
        detail += "; differs at " + ", ".join(f"N={N} n={n}: computed {c}, printed {p}" for N, n, c, p in diffs)
    record_criterion(1, ok, detail)
    assert ok


def test_criterion_02_spectrum_against_fd():
    start = time.perf_counter()
    worst = 0.0
    for (A, B, C), N, ell in SWEEP:
        p = make_params(A, B, C)
        fd = fd_eigenvalues(fd_problem(p, N, ell, 3), 3)
        for n in LEVELS:
            e = energy(p, Channel(N, ell, n)).energy
            worst = max(worst, abs(e - fd[n]) / abs(e))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 30
    record_criterion(2, ok, f"{len(SWEEP) * 3} levels, worst relative error {worst:.2e}, {elapsed:.1f} s")
    assert ok


def test_criterion_03_normalisation_and_orthogonality():
    worst_norm, worst_overlap, count, skipped = 0.0, 0.0, 0, 0
    for (A, B, C) in {pot for pot, _, _ in SWEEP}:
        p = make_params(A, B, C)
        for N, ell in itertools.product(range(2, 9), range(5)):
            try:
                derive(p, Channel(N, ell, 0))
            except UnphysicalChannel:
                skipped += 1
                continue
            states = [radial_state(p, Channel(N, ell, n)) for n in range(11)]
            for s in states:
                worst_norm = max(worst_norm, abs(norm(s) - 1))
                count += 1
            for i, j in itertools.combinations(range(11), 2):
                worst_overlap = max(worst_overlap, abs(radial_inner_product(states[i], states[j])))
    ok = worst_norm < 1e-10 and worst_overlap < 1e-8
    record_criterion(3, ok, f"{count} states (N<=8, l<=4, n_r<=10; {skipped} zero-radicand channels skipped), "
                            f"max |norm-1| {worst_norm:.1e}, max overlap {worst_overlap:.1e}")
    assert ok


def test_criterion_04_ode_residual(verify_run):
    worst = 0.0
    for (A, B, C), N, ell in SWEEP:
        p = make_params(A, B, C)
        for n in LEVELS:
            ch = Channel(N, ell, n)
            worst = max(worst, ode_residual(radial_state(p, ch), energy(p, ch).energy))
    h = make_params(1.0, 0.0, 0.0)
    doubled = ode_residual(radial_state(h, Channel(3, 0, 0), epsilon=2.0), -0.5)
    _, doc, _ = verify_run
    flag = next(it["status"] for it in doc["items"] if it["name"] == "probe/epsilon_decay_rate")
    ok = worst < 1e-8 and doubled > 0.1 and flag == "paper_typo_flagged"
    record_criterion(4, ok, f"worst residual {worst:.1e}; doubled decay rate gives {doubled:.2f}; verify status {flag}")
    assert ok


def test_criterion_05_hellmann_feynman():
    fd_worst, quad_worst = 0.0, 0.0
    for (A, B, C), N, ell in SWEEP:
        p = make_params(A, B, C)
        for n in LEVELS:
            ch = Channel(N, ell, n)
            s = radial_state(p, ch)
            i1, i2 = expect_inv_r(p, ch), expect_inv_r2(p, ch)
            fd_worst = max(fd_worst, abs(i1 + energy_derivative(p, ch, "A")) / i1,
                           abs(i2 - energy_derivative(p, ch, "B")) / i2)
            quad_worst = max(quad_worst, abs(i1 - expect_power(s, -1)) / i1, abs(i2 - expect_power(s, -2)) / i2)
    h, g = make_params(1.0, 0.0, 0.0), Channel(3, 0, 0)
    hyd = abs(expect_inv_r(h, g) - 1) + abs(expect_inv_r2(h, g) - 2)
    ok = fd_worst < 1e-8 and quad_worst < 1e-9 and hyd < 1e-12
    record_criterion(5, ok, f"vs dE/dA, dE/dB {fd_worst:.1e}; vs quadrature {quad_worst:.1e}; hydrogen 1s off by {hyd:.0e}")
    assert ok


@pytest.mark.xfail(strict=True, reason="with the constant C inside <V> the relation fails for C != 0")
def test_criterion_06_virial():
    literal_worst, shifted_worst, failing, b0_worst = 0.0, 0.0, 0, 0.0
    for (A, B, C), N, ell in SWEEP:
        p = make_params(A, B, C)
        for n in LEVELS:
            ch = Channel(N, ell, n)
            lit = virial(p, ch, shift_constant=False).virial_residual
            shifted = virial(p, ch).virial_residual
            literal_worst = max(literal_worst, lit)
            shifted_worst = max(shifted_worst, shifted)
            failing += lit >= 1e-8
            if B == 0:
                hv = virial(p, ch, shift_constant=False)
                b0_worst = max(b0_worst, abs(hv.beta), abs(-2 * hv.kinetic - hv.potential) / abs(hv.potential))
    total = len(SWEEP) * len(LEVELS)
    ok = literal_worst < 1e-8 and b0_worst < 1e-8
    record_criterion(6, ok, f"as stated: {failing}/{total} channels fail (all C=1), worst {literal_worst:.2f}; "
                            f"with <V> - C: worst {shifted_worst:.1e}; B=0 channels {b0_worst:.1e}")
    assert ok


def test_criterion_07_ladder_algebra():
    worst = {"move": 0.0, "commutator": 0.0, "casimir": 0.0, "energy": 0.0, "annihilate": 0.0}
    for (A, B, C), N, ell in SWEEP:
        p = make_params(A, B, C)
        fam = lad.LadderFamily.physical(p, N, ell)
        v = fam.v
        for n in range(11):
            s = fam.state(n)
            lo, up = lad.apply_lower(s), lad.apply_raise(s)
            if n == 0:
                worst["annihilate"] = max(worst["annihilate"], lo.residual)
            else:
                worst["move"] = max(worst["move"], lo.relative_residual)
            worst["move"] = max(worst["move"], up.relative_residual)
            worst["commutator"] = max(worst["commutator"],
                                      abs(lad.commutator_check(fam, n) - 2 * (n + v + 1)) / (2 * (n + v + 1)))
            cas = lad.casimir_eigenvalue(fam, n)
            worst["casimir"] = max(worst["casimir"], abs(cas - v * (v + 1)) / max(1.0, v * (v + 1)))
            ch = Channel(N, ell, n)
            e = energy(p, ch).energy
            worst["energy"] = max(worst["energy"], abs(lad.hamiltonian_via_l0(p, ch) - e) / abs(e))
    ok = (worst["move"] < 1e-10 and worst["commutator"] < 1e-12 and worst["casimir"] < 1e-12
          and worst["energy"] <= 1e-15 and worst["annihilate"] < 1e-12)
    record_criterion(7, ok, ", ".join(f"{k} {x:.1e}" for k, x in worst.items()))
    assert ok


def test_criterion_08_operator_identities(verify_run):
    r_worst, plus_worst, minus_best = 0.0, 0.0, math.inf
    for (A, B, C), N, ell in SWEEP:
        fam = lad.LadderFamily.physical(make_params(A, B, C), N, ell)
        for n in range(6):
            r_worst = max(r_worst, lad.operator_identity_r(fam, n).residuals["-N/(2eps)"])
            d = lad.operator_identity_r_ddr(fam, n)
            plus_worst = max(plus_worst, d.residuals["+1/2"])
            minus_best = min(minus_best, d.residuals["-1/2"])
    _, doc, _ = verify_run
    flag = next(it["status"] for it in doc["items"] if it["name"] == "probe/rddr_identity_sign")
    ok = r_worst < 1e-10 and plus_worst < 1e-10 and minus_best > 1e-10 and flag == "paper_typo_flagged"
    record_criterion(8, ok, f"position identity {r_worst:.1e}; r d/dr with +1/2 {plus_worst:.1e}, "
                            f"with -1/2 at least {minus_best:.2f}; verify status {flag}")
    assert ok


def test_criterion_09_coulomb_and_kratzer_reductions():
    h = make_params(1.0, 0.0, 0.0)
    r = np.linspace(0.1, 20, 2000)
    wf_worst = 0.0
    for n_r, ell in ((0, 0), (1, 0), (0, 1)):
        got = radial_state(h, Channel(3, ell, n_r))(r)
        wf_worst = max(wf_worst, float(np.max(np.abs(got - textbook_hydrogen(n_r, ell, r)))))
    e_worst = 0.0
    for (A, B, C), N, ell in SWEEP:
        if C != 0:
            continue
        p = make_params(A, B, C)
        for n in range(6):
            ch = Channel(N, ell, n)
            e = energy(p, ch).energy
            e_worst = max(e_worst, abs(energy_kratzer_fues(p, ch).energy - e) / abs(e))
    ok = wf_worst < 1e-12 and e_worst < 1e-12
    record_criterion(9, ok, f"hydrogen radial functions max deviation {wf_worst:.1e}; C=0 energies {e_worst:.1e}")
    assert ok


def test_criterion_10_end_to_end(verify_run):
    code, doc, elapsed = verify_run
    counts = doc["header"]["counts"]
    flagged = {it["name"] for it in doc["items"] if it["status"] == "paper_typo_flagged"}
    named = {"probe/alpha_definition", "probe/epsilon_decay_rate", "probe/laguerre_norm_integral",
             "probe/rddr_identity_sign", "probe/modified_kratzer_mapping"}
    ok = code == 0 and counts["mismatch"] == 0 and named <= flagged and elapsed < 120
    record_criterion(10, ok, f"exit {code}, {counts['match']} match, {counts['paper_typo_flagged']} flagged, "
                             f"{counts['mismatch']} mismatch, named probes flagged: {named <= flagged}, {elapsed:.1f} s")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
