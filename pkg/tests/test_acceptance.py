"""
Acceptance battery: one test per exit criterion, each printing a PASS/FAIL
line (run with -s to watch them live).  All tolerances are zero: integer
cells must match exactly and closed forms must be equal as extension-field
elements.

Criterion 2's "even rows match the printed table exactly" clause is known
to be unattainable: the printed table carries three misprints, at
(r=0, n=3), (r=4, n=10), and (r=5, n=12).  Three independent routes agree
on the true values (compiled brute enumeration, a pure-Python recount, and
the closed-form pipeline, whose signed r=4,5 forms match the printed
Corollary polynomial pairs exactly).  The comparison is implemented
faithfully against the verbatim fixture and therefore fails, with the
analysis in the failure message; every other clause of criterion 2 passes.
"""
import os
import random
import time

import numpy as np
import pytest

from inv3412 import _fast
from inv3412.algebra import Poly, QuadExt, RatFunc, quadext_series, sqrt_series
from inv3412.genfun import DISC_I, DISC_N, GenfunEngine
from inv3412.kernels import psi_shape, shape_catalog, validate_catalog
from inv3412.oracle import (
    brute_parity_table,
    brute_table,
    golden_count_diffs,
    golden_even_diffs,
    verify_paper_formulas,
    verify_series_vs_brute,
)
from inv3412.perms import enumerate_involutions, occurrences_3412
from inv3412.refdata import TABLE_COUNTS, TABLE_EVEN, printed_I_closed, printed_N_closed

from conftest import THREADS

INVOLUTION_NUMBERS = (1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496, 35696,
                      140152)


def report(criterion: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_table1_reproduction(table126, engine6):
    t0 = time.time()
    golden = golden_count_diffs(table126)
    pipeline_bad = []
    for r in range(7):
        series = engine6.result("I", r).series
        for n in range(13):
            if series[n] != TABLE_COUNTS[r][n]:
                pipeline_bad.append((r, n, TABLE_COUNTS[r][n], series[n]))
    ok = not golden and not pipeline_bad
    report(1, ok, f"table 1: 91/91 brute cells and 91/91 pipeline cells "
                  f"match exactly ({time.time() - t0:.1f}s beyond table build)")
    assert golden == []
    assert pipeline_bad == []


def test_criterion_2_table2_reproduction(parity126, engine6):
    # Eq.(3) clause: pipeline E_r = (I_r + N_r)/2 against enumeration
    eq3_bad = []
    for r in range(7):
        series = engine6.result("E", r).series
        for n in range(13):
            if series[n] != parity126.even[r][n]:
                eq3_bad.append((r, n, parity126.even[r][n], series[n]))
    assert eq3_bad == [], "pipeline E_r disagrees with enumeration"

    # golden clause: brute even rows against the verbatim printed table
    golden = golden_even_diffs(parity126)
    known_misprints = {(0, 3): (2, 1), (4, 10): (321, 482), (5, 12): (2247, 2747)}
    found = {(d.r, d.n): (d.fixture, d.computed) for d in golden}
    ok = not golden
    report(2, ok, "table 2: pipeline E_r matches enumeration at all 91 "
                  f"cells; printed-table comparison has {len(golden)} "
                  f"mismatched cells {sorted(found)}")
    assert found == known_misprints, (
        "unexpected even-table mismatch pattern; investigate before "
        "blaming the printed fixture")
    assert golden == [], (
        "The printed even-count table cannot be reproduced exactly: it is "
        "misprinted at (r=0,n=3) [prints 2, truth 1: of the involutions "
        "123/132/213/321 only 123 is even], at (r=4,n=10) [prints 321, "
        "truth 482; 321 is the odd count, even/odd transposed], and at "
        "(r=5,n=12) [prints 2247, truth 2747]. Brute enumeration, a "
        "pure-Python recount, and the closed-form pipeline (whose signed "
        "r=4,5 forms equal the printed polynomial pairs exactly) all agree "
        "on the truth. Every other cell matches; see refdata's docstring.")


def test_criterion_3_closed_forms(engine6):
    bad = []
    for r in range(3):
        if engine6.I_closed(r) != printed_I_closed(r):
            bad.append(f"I_{r}")
        if engine6.N_closed(r) != printed_N_closed(r):
            bad.append(f"N_{r}")
    report(3, not bad, "closed forms I_0..I_2 and N_0..N_2 equal the "
                       "printed forms exactly (extension-field equality)")
    assert bad == []


def test_criterion_4_extended_r(table136, parity136, engine6):
    t0 = time.time()
    bad = []
    for r in range(3, 6):
        series_i = engine6.result("I", r).series
        series_n = engine6.result("N", r).series
        for n in range(14):
            if series_i[n] != table136.counts[r][n]:
                bad.append(("I", r, n))
            if series_n[n] != parity136.signed(r, n):
                bad.append(("N", r, n))
    diffs = verify_paper_formulas(engine6, range(3, 7))
    mismatched = [str(d) for d in diffs if not d.matched]
    ok = not bad
    report(4, ok, f"r=3..5 pipeline matches enumeration to n=13 "
                  f"({time.time() - t0:.1f}s); non-binding printed-formula "
                  f"diffs: {len(mismatched)} "
                  f"({'; '.join(mismatched) or 'none'})")
    assert bad == []
    # non-binding, but record the expectation: exactly the corrupted G_3
    assert mismatched and all("I_3" in d for d in mismatched)


def test_criterion_5_structural_properties(engine6):
    t0 = time.time()
    # Lemma-1 bound over every involution of size <= 10
    violations = 0
    for n in range(1, 11):
        for batch in _fast.iter_involution_batches(n):
            k = batch.shape[0]
            sizes = np.empty(k, dtype=np.int64)
            caps = np.empty(k, dtype=np.int64)
            shapes = np.empty((k, n), dtype=np.int8)
            _fast.kernel_scan_batch(batch, sizes, caps, shapes)
            violations += int(((caps >= 1) & (sizes > 2 * caps + 2)).sum())
            violations += int(((caps == 0) & (sizes != 1)).sum())
    assert violations == 0

    # classifier audit for the full r <= 4 catalog, scan bound s + 4
    catalog4 = [rec for rec in engine6.catalog if rec.c <= 4]
    audits = validate_catalog(catalog4, window=4, n_cap=14)
    failed = [a for a in audits if not a.passed]
    noted = [a for a in audits if a.notes]
    assert noted == [], "every shape must get its full witness window"

    # psi uniqueness by exhaustive search for r <= 3
    psi_bad = []
    for r in (1, 2, 3):
        found = set()
        for p in enumerate_involutions(2 * r + 2):
            if len(occurrences_3412(p)) == r:
                from inv3412.kernels import kernel_of
                k = kernel_of(p)
                if len(k.positions) == 2 * r + 2:
                    found.add(p)
        if found != {psi_shape(r)}:
            psi_bad.append((r, found))
    ok = not failed and not psi_bad
    report(5, ok, f"lemma-1 bound holds for all n<=10; classifier audit "
                  f"passes for {len(audits)}/{len(audits)} shapes of the "
                  f"r<=4 catalog at scan bound s+4; psi uniqueness verified "
                  f"for r<=3 ({time.time() - t0:.0f}s)")
    assert failed == []
    assert psi_bad == []


def test_criterion_6_algebra_properties():
    rng = random.Random(3412)

    def rand_poly(max_deg, nonzero=False, regular=False):
        while True:
            p = Poly.of(*[rng.randint(-5, 5)
                          for _ in range(rng.randint(1, max_deg + 1))])
            if nonzero and p.is_zero:
                continue
            if regular and (p.is_zero or p[0] == 0):
                continue
            return p

    def rand_rf(regular=False):
        return RatFunc.make(rand_poly(3), rand_poly(3, nonzero=True,
                                                    regular=regular))

    for disc in (DISC_I, DISC_N):
        one = QuadExt(RatFunc.of(1), RatFunc.of(0), disc)
        for _ in range(200):
            u = QuadExt(rand_rf(), rand_rf(), disc)
            v = QuadExt(rand_rf(), rand_rf(), disc)
            t = QuadExt(rand_rf(), rand_rf(), disc)
            assert (u * v) * t == u * (v * t)
            assert u * (v + t) == u * v + u * t
            if not u.is_zero:
                assert u * u.inv() == one
        root = sqrt_series(disc, 64)
        square = root * root
        assert all(square[k] == disc[k] for k in range(65))
        for _ in range(25):
            u = QuadExt(rand_rf(regular=True), rand_rf(regular=True), disc)
            v = QuadExt(rand_rf(regular=True), rand_rf(regular=True), disc)
            assert quadext_series(u * v, 10).coeffs == \
                (quadext_series(u, 10) * quadext_series(v, 10)).coeffs
    report(6, True, "200 randomized field checks per discriminant, "
                    "sqrt^2 = disc to order 64, series/product exchange")


def test_criterion_7_column_sums(table126):
    bad = []
    for n in range(13):
        total = sum(table126.counts[r][n] for r in range(7))
        total += table126.overflow[n]
        if total != INVOLUTION_NUMBERS[n]:
            bad.append((n, total, INVOLUTION_NUMBERS[n]))
    report(7, not bad, "column sums + overflow equal the involution "
                       "numbers for n<=12")
    assert bad == []


@pytest.mark.skipif(os.environ.get("INV3412_SCALE") != "1",
                    reason="scale target is flagged; set INV3412_SCALE=1")
def test_criterion_8_scale_target():
    t0 = time.time()
    catalog = shape_catalog(6, threads=THREADS)
    engine = GenfunEngine(6, order=40, catalog=catalog)
    table = brute_table(12, 6, threads=THREADS)
    parity = brute_parity_table(12, 6, threads=THREADS)
    result = verify_series_vs_brute(engine, 6, 12, table=table, parity=parity)
    elapsed = time.time() - t0
    ok = result.passed and elapsed < 900
    report(8, ok, f"r=6 catalog over I_<=13 plus r=6 pipeline-vs-brute at "
                  f"n<=12 finished in {elapsed:.0f}s (limit 900s), "
                  f"{len(catalog)} shapes")
    assert result.passed
    assert elapsed < 900
