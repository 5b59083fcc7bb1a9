"""Acceptance gate: one test per release criterion, each printing a
single PASS/FAIL line with its case count and runtime.

Run with `python3 -m pytest tests/test_acceptance.py -v -s` to see the
lines as they complete.
"""

import random
import time

from punctline.cli import run_sweep
from punctline.crossratio import RHO_PAIR, decide_lambda_char0, decide_lambda_charp
from punctline.fieldarith import FieldDesc, frobenius, is_constant
from punctline.reconstruct import (
    ReconstructionResult,
    generate_scenario,
    reconstruct,
    verify_reconstruction,
)

FIELDS = ("Q", "QRho", "FpT:2", "FpT:5")


def report(label, ok, detail):
    print()
    print("%s: %s (%s)" % (label, "PASS" if ok else "FAIL", detail))
    assert ok, "%s: %s" % (label, detail)


def timed_sweep(name, budget=None, **params):
    start = time.perf_counter()
    res = run_sweep(name, **params)
    elapsed = time.perf_counter() - start
    ok = res.ok() and (budget is None or elapsed < budget)
    detail = "%d cases, %.2fs" % (res.cases, elapsed)
    if budget is not None:
        detail += " < %.0fs" % budget
    if res.counterexample:
        detail += "; " + res.counterexample
    return ok, detail


def test_criterion_1_power_product_box():
    ok, detail = timed_sweep("power-products", budget=5.0)
    report("criterion 1 (power-product box)", ok, detail)


def test_criterion_2_fox_kernel_suite():
    ok, detail = timed_sweep(
        "fox-identity", budget=10.0, count=1000, max_len=20, max_rank=3
    )
    report("criterion 2 (derivative identity and kernel)", ok, detail)


def test_criterion_3_regularity_shadow():
    ok1, d1 = timed_sweep("limit-regularity", n_max=4, m_max=8, mp_max=8, k_max=6)
    ok2, d2 = timed_sweep("gamma-annihilator", max_order=30)
    report(
        "criterion 3 (regularity shadow)",
        ok1 and ok2,
        "box %s; splittings %s" % (d1, d2),
    )


def test_criterion_4_reconstruction_roundtrip():
    ok, detail = timed_sweep("roundtrip", budget=60.0, count=200, fields=FIELDS)
    report("criterion 4 (reconstruction round trip)", ok, detail)


def rand_lambda(field, rng):
    t = field.t()
    while True:
        lam = field.zero()
        for i in range(3):
            lam = lam + field.from_int(rng.randrange(field.p)) * t**i
        den = field.zero()
        for i in range(3):
            den = den + field.from_int(rng.randrange(field.p)) * t**i
        if den.is_zero():
            continue
        lam = lam / den
        if not lam.is_zero() and lam != field.one() and not is_constant(lam):
            return lam


def test_criterion_5_twist_uniqueness_and_perturbation():
    rng = random.Random(331)
    cases = 0
    start = time.perf_counter()
    for p in (2, 3, 5):
        field = FieldDesc.from_text("FpT:%d" % p)
        for i in range(100):
            lam = rand_lambda(field, rng)
            n = i % 5
            got = decide_lambda_charp(lam, frobenius(lam, n))
            cases += 1
            if got != n:
                report(
                    "criterion 5 (twist uniqueness)",
                    False,
                    "p=%d n=%d decided %r" % (p, n, got),
                )
    for text in FIELDS:
        field = FieldDesc.from_text(text)
        for i in range(8):
            size = 3 + i % 5
            twist = 0 if field.char() == 0 or size == 3 else i % 4
            s = generate_scenario(field, size, seed=rng.randrange(10**9), twist=twist)
            r = reconstruct(s)
            bumped = ReconstructionResult(r.w1 + 1, r.w2, r.f)
            cases += 1
            if verify_reconstruction(s, bumped):
                report(
                    "criterion 5 (twist uniqueness)",
                    False,
                    "perturbed result verified for field=%s size=%d" % (text, size),
                )
    elapsed = time.perf_counter() - start
    report(
        "criterion 5 (twist uniqueness)",
        True,
        "%d cases, %.2fs" % (cases, elapsed),
    )


def test_criterion_6_exceptional_pair():
    qrho = FieldDesc.from_text("QRho")
    rho = qrho.rho()
    identity_holds = qrho.one() - rho == rho.inverse()
    classified = decide_lambda_char0(rho, rho.inverse()) == RHO_PAIR
    ok, detail = timed_sweep("rho-pair", count=1000)
    report(
        "criterion 6 (exceptional pair)",
        identity_holds and classified and ok,
        "1 - rho = 1/rho: %s; classified: %s; %s"
        % (identity_holds, classified, detail),
    )


def test_criterion_7_negative_soundness():
    ok, detail = timed_sweep("negative-soundness", count=100)
    report("criterion 7 (negative soundness)", ok, detail)


def test_criterion_8_presentation_bookkeeping():
    ok, detail = timed_sweep("presentation-rank", g_max=5, r_max=8)
    report("criterion 8 (presentation bookkeeping)", ok, detail)
