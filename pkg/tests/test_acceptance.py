"""Acceptance gate: the nine criteria at their stated tolerances.

Each test records one PASS/FAIL line in ``ACCEPTANCE_LINES``; the conftest
hook prints them in the terminal summary, and running this file directly
prints them as well.
"""
import numpy as np
import pytest

from specrep.io import dumps
from specrep.suites import SuiteConfig, run_suite

SEED = 42
ACCEPTANCE_LINES: dict = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert ok, line


def maxres(report, key):
    return report.aggregate["max_residuals"].get(key, 0.0)


def counts(report):
    return report.aggregate["pass_count"], report.aggregate["trials"], report.aggregate["error_count"]


def test_criterion_1_polar():
    rep = run_suite(SuiteConfig("polar", trials=200, dims=list(range(2, 17)), seed=SEED, tol=1e-8))
    p, n, e = counts(rep)
    fact, unit, neg = maxres(rep, "factorization"), maxres(rep, "unitary_left"), maxres(rep, "negativity")
    kinds = {r["kind"] for r in rep.trials}
    ok = (n == 200 and p == n and e == 0 and kinds == {"invertible"}
          and fact <= 1e-8 and unit <= 1e-8 and neg <= 1e-10 and rep.wall_time < 5.0)
    record(1, "polar suite", ok,
           f"{p}/{n}, factorization {fact:.1e}, unitary {unit:.1e}, negativity {neg:.1e}, {rep.wall_time:.2f} s")


def test_criterion_2_density():
    rep = run_suite(SuiteConfig("density", trials=1, seed=SEED))
    found = {}
    ok = len(rep.trials) == 2 and rep.wall_time < 2.0
    for r in rep.trials:
        d = r["details"]
        ok = ok and set(d["target_errors"]) == {"x", "x^2", "sqrt(x)", "1/x"}
        for name, errs in d["target_errors"].items():
            errs = np.asarray(errs)
            reached = np.nonzero(errs < 1e-6)[0]
            deg = int(np.asarray(d["degrees"])[reached[0]]) if reached.size else None
            found[(r["kind"], name)] = deg
            ok = ok and deg is not None and deg <= 25 and bool(np.all(np.diff(errs) <= 1e-12))
    worst = max((v for v in found.values() if v is not None), default=None)
    record(2, "density suite", ok, f"highest degree needed {worst}, {rep.wall_time:.2f} s")


def test_criterion_3_cyclic():
    rep = run_suite(SuiteConfig("cyclic", trials=100, seed=SEED, tol=1e-8))
    p, n, e = counts(rep)
    mixed = sum(1 for r in rep.trials if max(r["details"]["multiplicities"]) > 1)
    res = {k: maxres(rep, k) for k in ("completeness", "invariance", "inverse_invariance")}
    count_ok = rep.aggregate["verdict_counts"]["count_is_max_multiplicity"]["false"] == 0
    ok = n == 100 and p == n and e == 0 and count_ok and mixed > 0 and all(v <= 1e-8 for v in res.values())
    record(3, "cyclic suite", ok,
           f"{p}/{n}, {mixed} with repeated eigenvalues, " + ", ".join(f"{k} {v:.1e}" for k, v in res.items()))


def test_criterion_4_transport():
    rep = run_suite(SuiteConfig("transport", trials=50, seed=SEED, tol=1e-8))
    p, n, e = counts(rep)
    full = all(set(r["details"]["reports"]) == {"1", "2", "3"} for r in rep.trials)
    k1 = max(maxres(rep, "k1_adjoint_image"), maxres(rep, "k1_inverse_image"), maxres(rep, "k1_images_agree"))
    summary = rep.aggregate["claims_holding_by_k"]
    ok = n == 50 and p == n and e == 0 and full and k1 <= 1e-8 and set(summary) == {"1", "2", "3"}
    record(4, "transport suite", ok,
           f"{p}/{n}, k=1 residual {k1:.1e}, images agree for k=2: {summary['2']['images_agree']}/50, "
           f"k=3: {summary['3']['images_agree']}/50")


def test_criterion_5_measure():
    rep = run_suite(SuiteConfig("measure", trials=100, seed=SEED, tol=1e-8))
    p, n, e = counts(rep)
    f, iso, inter = maxres(rep, "functional"), maxres(rep, "isometry"), maxres(rep, "intertwining")
    ok = n == 100 and p == n and e == 0 and f <= 1e-10 and iso <= 1e-8 and inter <= 1e-8
    record(5, "measure suite", ok, f"{p}/{n}, functional {f:.1e}, isometry {iso:.1e}, intertwining {inter:.1e}")


def test_criterion_6_moduli():
    ok, parts = True, []
    for suite in ("inverse_modulus", "adjoint_modulus"):
        rep = run_suite(SuiteConfig(suite, trials=100, seed=SEED, tol=1e-8))
        p, n, e = counts(rep)
        dev, conj = maxres(rep, "atom_deviation"), maxres(rep, "conjugation")
        rn_min = min(r["details"]["rn_min"] for r in rep.trials)
        ac = all(r["verdicts"]["mutual_ac"] for r in rep.trials)
        ok = ok and n == 100 and p == n and e == 0 and dev <= 1e-8 and conj <= 1e-8 and rn_min > 0 and ac
        parts.append(f"{suite} {p}/{n}, spectra {dev:.1e}, conjugation {conj:.1e}, min density {rn_min:.6f}")
    record(6, "inverse and adjoint modulus suites", ok, "; ".join(parts))


def test_criterion_7_representation():
    rep = run_suite(SuiteConfig("representation", trials=100, seed=SEED, tol=1e-8, kind="normal"))
    p, n, e = counts(rep)
    holds = all(r["verdicts"]["representation_holds"] for r in rep.trials)
    psi, eta = maxres(rep, "psi_deviation"), maxres(rep, "eta_deviation")
    fx = rep.fixed_instances[0]
    ok = (n == 100 and p == n and e == 0 and holds and psi <= 1e-8 and eta <= 1e-8
          and fx["diag_residual"] >= 0.9 and not fx["representation_holds"])
    record(7, "representation suite", ok,
           f"{p}/{n}, |psi|-1 {psi:.1e}, eta-1 {eta:.1e}, shift diag_residual {fx['diag_residual']:.3f}")


def test_criterion_8_normality():
    rep = run_suite(SuiteConfig("normality", trials=200, seed=SEED, tol=1e-8))
    p, n, e = counts(rep)
    inconsistent = sum(1 for r in rep.trials if not r["verdicts"].get("consistent"))
    kinds = sorted({r["kind"] for r in rep.trials})
    non_normal = sum(1 for r in rep.trials if r["verdicts"].get("verdict_normal") is False)
    ok = n == 200 and p == n and e == 0 and inconsistent == 0 and 0 < non_normal < n
    record(8, "normality suite", ok, f"{p}/{n}, {inconsistent} inconsistent, {non_normal} non-normal, kinds {kinds}")


def test_criterion_9_reproducibility():
    ok, shown = True, []
    for suite in ("polar", "measure", "normality", "transport", "all"):
        config = SuiteConfig(suite, trials=20, seed=SEED, tol=1e-8)
        a = dumps(run_suite(config).to_dict(include_wall_time=False))
        b = dumps(run_suite(config).to_dict(include_wall_time=False))
        ok = ok and a == b
        shown.append(suite)
    record(9, "reproducibility", ok, f"byte-identical reports for {', '.join(shown)}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
