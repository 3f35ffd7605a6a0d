"""
Brute-force ground truth for the whole pipeline.

Tables of involution counts by size, occurrence count, and inversion parity
come from full enumeration (compiled batch kernels over the deterministic
involution stream).  Everything else is measured against them, in a fixed
hierarchy: enumeration outranks the embedded golden tables, which outrank
the embedded closed-form polynomial fixtures.  Mismatches against the
golden tables are binding; mismatches against the printed polynomials are
reported but non-binding, because at least one printed polynomial is
visibly corrupted.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _fast, refdata
from .algebra import QuadExt, quadext_series
from .genfun import GenfunEngine
from .perms import ResourceLimitError, involution_branches, involution_count

#: Enumerating I_15 means 10.3M involutions; beyond that is a mistake.
DEFAULT_TABLE_CAP = 14


@dataclass(frozen=True)
class CountTable:
    """counts[r][n] = involutions of size n with exactly r occurrences;
    overflow[n] = involutions with more than max_r occurrences."""
    max_n: int
    max_r: int
    counts: tuple[tuple[int, ...], ...]
    overflow: tuple[int, ...]

    def column_sum_errors(self) -> list[str]:
        errors = []
        for n in range(self.max_n + 1):
            total = sum(self.counts[r][n] for r in range(self.max_r + 1))
            total += self.overflow[n]
            expected = involution_count(n)
            if total != expected:
                errors.append(f"n={n}: columns sum to {total}, "
                              f"involution count is {expected}")
        return errors


@dataclass(frozen=True)
class ParityTable:
    """CountTable split by inversion parity, cellwise even + odd = counts."""
    max_n: int
    max_r: int
    even: tuple[tuple[int, ...], ...]
    odd: tuple[tuple[int, ...], ...]
    overflow_even: tuple[int, ...]
    overflow_odd: tuple[int, ...]

    def signed(self, r: int, n: int) -> int:
        return self.even[r][n] - self.odd[r][n]


def _check_table_args(max_n: int, max_r: int, cap: int) -> None:
    if max_r < 0 or max_n < 0:
        raise ValueError("table bounds must be nonnegative")
    if max_n > cap:
        raise ResourceLimitError(
            f"table build to n={max_n} refused: exceeds cap {cap} "
            f"({involution_count(max_n)} involutions at the top size)")


def _histogram_one_size(n: int, max_r: int, branch: int | None,
                        parity: bool, batch_size: int = 32768):
    """Histogram of capped occurrence counts over one enumeration branch.

    Returns (row,) or (even_row, odd_row); rows have max_r + 2 entries, the
    last being the overflow bucket."""
    bins = max_r + 2
    plain = np.zeros(bins, dtype=np.int64)
    even = np.zeros(bins, dtype=np.int64)
    odd = np.zeros(bins, dtype=np.int64)
    counts = np.empty(batch_size, dtype=np.int64)
    pars = np.empty(batch_size, dtype=np.int64)
    for batch in _fast.iter_involution_batches(n, batch_size, branch=branch):
        k = batch.shape[0]
        _fast.count_3412_batch(batch, max_r + 1, counts[:k])
        clipped = np.minimum(counts[:k], max_r + 1)
        if parity:
            _fast.parity_batch(batch, pars[:k])
            even += np.bincount(clipped[pars[:k] == 0], minlength=bins)
            odd += np.bincount(clipped[pars[:k] == 1], minlength=bins)
        else:
            plain += np.bincount(clipped, minlength=bins)
    return (even, odd) if parity else (plain,)


def _histogram(n: int, max_r: int, parity: bool, threads: int):
    if threads > 1 and involution_branches(n) > 1 and involution_count(n) > 10000:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [pool.submit(_histogram_one_size, n, max_r, b, parity)
                    for b in range(involution_branches(n))]
            parts = [f.result() for f in futs]
        return tuple(sum(rows[i] for rows in parts) for i in range(len(parts[0])))
    return _histogram_one_size(n, max_r, None, parity)


def brute_table(max_n: int, max_r: int, threads: int = 1,
                cap: int = DEFAULT_TABLE_CAP) -> CountTable:
    """Exact counts by full enumeration.

    >>> brute_table(6, 2).counts[2][6]
    1
    """
    _check_table_args(max_n, max_r, cap)
    cols = []
    for n in range(max_n + 1):
        (row,) = _histogram(n, max_r, parity=False, threads=threads)
        cols.append(row)
    counts = tuple(tuple(int(cols[n][r]) for n in range(max_n + 1))
                   for r in range(max_r + 1))
    overflow = tuple(int(cols[n][max_r + 1]) for n in range(max_n + 1))
    return CountTable(max_n=max_n, max_r=max_r, counts=counts, overflow=overflow)


def brute_parity_table(max_n: int, max_r: int, threads: int = 1,
                       cap: int = DEFAULT_TABLE_CAP) -> ParityTable:
    """Exact counts split by inversion parity."""
    _check_table_args(max_n, max_r, cap)
    ev_cols, od_cols = [], []
    for n in range(max_n + 1):
        even, odd = _histogram(n, max_r, parity=True, threads=threads)
        ev_cols.append(even)
        od_cols.append(odd)
    even = tuple(tuple(int(ev_cols[n][r]) for n in range(max_n + 1))
                 for r in range(max_r + 1))
    odd = tuple(tuple(int(od_cols[n][r]) for n in range(max_n + 1))
                for r in range(max_r + 1))
    return ParityTable(
        max_n=max_n, max_r=max_r, even=even, odd=odd,
        overflow_even=tuple(int(ev_cols[n][max_r + 1]) for n in range(max_n + 1)),
        overflow_odd=tuple(int(od_cols[n][max_r + 1]) for n in range(max_n + 1)))


@dataclass
class CellMismatch:
    kind: str
    r: int
    n: int
    expected: int
    got: Fraction

    def __str__(self) -> str:
        return (f"{self.kind}_{self.r}[x^{self.n}] = {self.got}, "
                f"enumeration says {self.expected}")


@dataclass
class VerifyReport:
    max_r: int
    max_n: int
    cells_checked: int = 0
    mismatches: list[CellMismatch] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        if self.passed:
            return (f"all {self.cells_checked} cells match enumeration "
                    f"(r <= {self.max_r}, n <= {self.max_n})")
        lines = [f"{len(self.mismatches)} of {self.cells_checked} cells differ:"]
        lines += [f"  {m}" for m in self.mismatches]
        return "\n".join(lines)


def verify_series_vs_brute(engine: GenfunEngine, max_r: int, max_n: int,
                           table: CountTable | None = None,
                           parity: ParityTable | None = None,
                           threads: int = 1) -> VerifyReport:
    """Binding check: pipeline coefficients against full enumeration.

    Asserts [x^n] I_r equals the table count and [x^n] N_r equals
    even - odd, for every r <= max_r and n <= max_n.  Mismatches land in
    the report; nothing is thrown.
    """
    if engine.order < max_n:
        raise ValueError(f"engine order {engine.order} < max_n {max_n}")
    if table is None:
        table = brute_table(max_n, max_r, threads=threads)
    if parity is None:
        parity = brute_parity_table(max_n, max_r, threads=threads)
    report = VerifyReport(max_r=max_r, max_n=max_n)
    for r in range(max_r + 1):
        series_i = engine.result("I", r).series
        series_n = engine.result("N", r).series
        for n in range(max_n + 1):
            report.cells_checked += 1
            if series_i[n] != table.counts[r][n]:
                report.mismatches.append(
                    CellMismatch("I", r, n, table.counts[r][n], series_i[n]))
            report.cells_checked += 1
            if series_n[n] != parity.signed(r, n):
                report.mismatches.append(
                    CellMismatch("N", r, n, parity.signed(r, n), series_n[n]))
    return report


@dataclass
class FormulaDiff:
    """Outcome of diffing one printed closed form against the pipeline."""
    kind: str
    r: int
    exact_equal: bool
    first_mismatch: tuple[int, Fraction, Fraction] | None  # (n, printed, computed)

    @property
    def matched(self) -> bool:
        return self.exact_equal and self.first_mismatch is None

    def __str__(self) -> str:
        label = {"I": "F/G", "N": "P/Q"}[self.kind]
        if self.matched:
            return f"{self.kind}_{self.r}: printed {label} pair matches exactly"
        n, printed, computed = self.first_mismatch
        return (f"{self.kind}_{self.r}: printed {label} pair DIFFERS, first at "
                f"x^{n}: printed {printed}, computed {computed}")


def verify_paper_formulas(engine: GenfunEngine, r_values,
                          order: int = 30) -> list[FormulaDiff]:
    """Non-binding diff of the embedded printed closed forms.

    Exact field equality is tried first; on failure the series are compared
    to the given order to locate the first differing coefficient.
    """
    diffs = []
    for r in r_values:
        for kind, printed, computed in (
                ("I", refdata.printed_I_closed(r), engine.I_closed(r)),
                ("N", refdata.printed_N_closed(r), engine.N_closed(r))):
            exact = printed == computed
            first = None
            if not exact:
                sp = quadext_series(printed, order)
                sc = quadext_series(computed, order)
                for n in range(order + 1):
                    if sp[n] != sc[n]:
                        first = (n, sp[n], sc[n])
                        break
            diffs.append(FormulaDiff(kind=kind, r=r, exact_equal=exact,
                                     first_mismatch=first))
    return diffs


@dataclass
class GoldenDiff:
    table: str
    r: int
    n: int
    fixture: int
    computed: int

    def __str__(self) -> str:
        return (f"{self.table}[r={self.r}][n={self.n}]: fixture says "
                f"{self.fixture}, enumeration says {self.computed}")


def golden_count_diffs(table: CountTable) -> list[GoldenDiff]:
    """Binding comparison of a brute table against the golden fixture."""
    out = []
    for r in range(min(table.max_r, 6) + 1):
        for n in range(min(table.max_n, 12) + 1):
            fix = refdata.TABLE_COUNTS[r][n]
            got = table.counts[r][n]
            if fix != got:
                out.append(GoldenDiff("counts", r, n, fix, got))
    return out


def golden_even_diffs(parity: ParityTable) -> list[GoldenDiff]:
    out = []
    for r in range(min(parity.max_r, 6) + 1):
        for n in range(min(parity.max_n, 12) + 1):
            fix = refdata.TABLE_EVEN[r][n]
            got = parity.even[r][n]
            if fix != got:
                out.append(GoldenDiff("even", r, n, fix, got))
    return out


# -- exports -----------------------------------------------------------------

def table_to_csv(table: CountTable) -> str:
    """Rows r, columns n, RFC-4180 style."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["r\\n"] + list(range(table.max_n + 1)))
    for r in range(table.max_r + 1):
        writer.writerow([r] + list(table.counts[r]))
    writer.writerow(["overflow"] + list(table.overflow))
    return buf.getvalue()


def parity_table_to_csv(parity: ParityTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["r\\n"] + list(range(parity.max_n + 1)))
    for r in range(parity.max_r + 1):
        writer.writerow([f"even_{r}"] + list(parity.even[r]))
        writer.writerow([f"odd_{r}"] + list(parity.odd[r]))
    writer.writerow(["overflow_even"] + list(parity.overflow_even))
    writer.writerow(["overflow_odd"] + list(parity.overflow_odd))
    return buf.getvalue()


def json_document(config: dict, payload: dict) -> str:
    """Wrap a payload with the run config and a payload content hash."""
    body = json.dumps(payload, separators=(",", ":"), sort_keys=True)
    digest = hashlib.sha256(body.encode()).hexdigest()
    return json.dumps({"config": config,
                       "content_hash": f"sha256:{digest}", **payload},
                      indent=2, sort_keys=True)


def table_to_json(table: CountTable, config: dict) -> str:
    return json_document(config, {
        "max_n": table.max_n, "max_r": table.max_r,
        "counts": [list(row) for row in table.counts],
        "overflow": list(table.overflow)})


def parity_table_to_json(parity: ParityTable, config: dict) -> str:
    return json_document(config, {
        "max_n": parity.max_n, "max_r": parity.max_r,
        "even": [list(row) for row in parity.even],
        "odd": [list(row) for row in parity.odd],
        "overflow_even": list(parity.overflow_even),
        "overflow_odd": list(parity.overflow_odd)})
