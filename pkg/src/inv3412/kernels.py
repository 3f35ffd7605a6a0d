"""
Kernels of involutions and their cell decompositions.

Every involution p gets a bipartite occurrence graph: entries on one side,
occurrences of 3412 on the other, an edge whenever the entry takes part in
the occurrence.  The connected component of the entry with value 1 is the
kernel of p; its order-isomorphic reduction is the kernel shape, an
involution in its own right.  A shape rho that is its own kernel shape is a
kernel involution, and the positions/value gaps between its entries cut the
plane into an s x s grid of cells.  Each cell is either

  * infeasible   - can never hold an entry without creating an occurrence
                   of 3412 through two kernel entries,
  * free         - may hold arbitrary involution content,
  * diagonal-decreasing - on the diagonal, content forced strictly
                   decreasing by a 12 pattern northwest or southeast of it,
  * decreasing   - off the diagonal, content forced strictly decreasing and
                   mirrored in the transposed cell.

Feasibility is decided by a single-entry probe (insert one entry into the
cell, mirrored if off-diagonal, and see whether an occurrence of 3412
appears); :func:`validate_classification` audits the probe exhaustively
against enumeration, and enumeration wins on any disagreement.

Counts of the cell classes (f, dd, d) together with size, capacity and
inversion parity are what the generating-function recursion consumes.
"""
from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from . import _fast
from .perms import (
    Occurrence,
    Perm,
    check_involution,
    count_pattern_21,
    enumerate_involutions,
    inversion_parity,
    involution_branches,
    occurrences_3412,
    reduce_to_pattern,
)

INFEASIBLE = "infeasible"
FREE = "free"
DIAG_DECREASING = "diagonal-decreasing"
DECREASING = "decreasing"

#: The two shapes of the occurrence-free decomposition (an involution with
#: trivial kernel starts with 1, or starts with t and has 1 at position t).
BASE_SHAPES = ((1,), (2, 1))


class StructuralViolationError(RuntimeError):
    """An entry could not be assigned to any cell, or a classification
    contradicted its own symmetry; these signal a broken structural
    assumption, never silently dropped data."""


@dataclass(frozen=True)
class OccurrenceGraph:
    """Bipartite graph joining entries of p to the 3412 occurrences."""
    n: int
    occurrences: tuple[Occurrence, ...]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """(position, occurrence index) pairs; every occurrence has degree 4."""
        return tuple((pos, q) for q, quad in enumerate(self.occurrences)
                     for pos in quad)

    def component_of_position(self, pos: int) -> tuple[int, ...]:
        """Positions in the connected component containing the given entry."""
        members = {pos}
        pending = [pos]
        remaining = list(range(len(self.occurrences)))
        while pending:
            cur = pending.pop()
            keep = []
            for q in remaining:
                quad = self.occurrences[q]
                if cur in quad:
                    for other in quad:
                        if other not in members:
                            members.add(other)
                            pending.append(other)
                else:
                    keep.append(q)
            remaining = keep
        return tuple(sorted(members))


@dataclass(frozen=True)
class Kernel:
    positions: tuple[int, ...]
    shape: Perm


@dataclass(frozen=True)
class CellGrid:
    """s x s classification; labels[m-1][l-1] is the class of cell C_{m,l}
    (value band m, position band l)."""
    size: int
    labels: tuple[tuple[str, ...], ...]

    def label(self, m: int, ell: int) -> str:
        return self.labels[m - 1][ell - 1]

    def count(self, kind: str) -> int:
        return sum(row.count(kind) for row in self.labels)


@dataclass(frozen=True)
class ShapeRecord:
    """A kernel involution with everything the recursion needs to know."""
    shape: Perm
    s: int
    c: int
    f: int
    dd: int
    d: int
    parity21: int
    grid: CellGrid

    def to_dict(self) -> dict:
        return {
            "shape": list(self.shape),
            "s": self.s,
            "c": self.c,
            "f": self.f,
            "dd": self.dd,
            "d": self.d,
            "parity21": self.parity21,
            "grid": [list(row) for row in self.grid.labels],
        }


def occurrence_graph(p) -> OccurrenceGraph:
    p = check_involution(p)
    return OccurrenceGraph(n=len(p), occurrences=tuple(occurrences_3412(p)))


def kernel_of(p) -> Kernel:
    """Kernel of a nonempty involution.

    >>> kernel_of((8, 2, 3, 13, 7, 6, 5, 1, 11, 12, 9, 10, 4, 14)).shape
    (3, 4, 1, 2)
    """
    p = check_involution(p)
    if not p:
        raise ValueError("the empty involution has no kernel")
    graph = occurrence_graph(p)
    pos1 = p.index(1) + 1
    positions = graph.component_of_position(pos1)
    return Kernel(positions=positions, shape=reduce_to_pattern(p, positions))


def is_kernel_involution(rho) -> bool:
    """True iff rho is its own kernel shape."""
    rho = check_involution(rho)
    if not rho:
        return False
    return kernel_of(rho).shape == rho


def cell_decomposition(p, kernel: Kernel) -> list[list[list[int]]]:
    """Assign every non-kernel entry of p to a cell of the kernel grid.

    cells[m-1][l-1] lists the values with position strictly between kernel
    positions l and l+1 and value strictly between kernel values m and m+1
    (upper sentinels n+1), in position order.  An entry left of the first
    kernel position or below the smallest kernel value has no cell; that
    breaks the decomposition's premise and raises StructuralViolationError.
    """
    p = check_involution(p)
    n = len(p)
    positions = kernel.positions
    s = len(positions)
    kernel_vals = sorted(p[i - 1] for i in positions)
    cells: list[list[list[int]]] = [[[] for _ in range(s)] for _ in range(s)]
    kernel_pos = set(positions)
    for j in range(1, n + 1):
        if j in kernel_pos:
            continue
        v = p[j - 1]
        ell = bisect_left(positions, j)
        m = bisect_left(kernel_vals, v)
        if ell == 0 or m == 0:
            raise StructuralViolationError(
                f"entry (pos={j}, val={v}) of {p} precedes the kernel "
                f"{positions} and belongs to no cell")
        cells[m - 1][ell - 1].append(v)
    return cells


def _probe_involution(rho: Perm, m: int, ell: int) -> Perm:
    """rho with one entry dropped into cell C_{m,ell} (plus its mirror image
    in C_{ell,m} when off-diagonal, keeping the result an involution)."""
    s = len(rho)
    if m == ell:
        vals = [v + 1 if v > m else v for v in rho]
        return tuple(vals[:m] + [m + 1] + vals[m:])
    lo, hi = min(m, ell), max(m, ell)

    def relabel(x: int) -> int:
        return x + (x > lo) + (x > hi)

    def gap_label(g: int) -> int:
        return g + 1 if g == lo else g + 2

    out = [0] * (s + 2)
    for k in range(1, s + 1):
        out[relabel(k) - 1] = relabel(rho[k - 1])
    p_pos, p_val = gap_label(ell), gap_label(m)
    out[p_pos - 1] = p_val
    out[p_val - 1] = p_pos
    return tuple(out)


def _count_capped(p: Perm, cap: int) -> int:
    arr = np.array(p, dtype=np.int8).reshape(1, -1)
    out = np.empty(1, dtype=np.int64)
    _fast.count_3412_batch(arr, cap, out)
    return int(out[0])


def _has_ascent(vals: list[int]) -> bool:
    running_min: int | None = None
    for v in vals:
        if running_min is not None and v > running_min:
            return True
        running_min = v if running_min is None else min(running_min, v)
    return False


def _has_12_northwest_or_southeast(rho: Perm, i: int) -> bool:
    """Is there an ascending pair of kernel entries entirely northwest or
    entirely southeast of the diagonal cell C_{ii}?  Northwest means
    position <= i and value > i; southeast means position > i and
    value <= i."""
    nw = [v for k, v in enumerate(rho, start=1) if k <= i and v > i]
    se = [v for k, v in enumerate(rho, start=1) if k > i and v <= i]
    return _has_ascent(nw) or _has_ascent(se)


def classify_cells(rho) -> CellGrid:
    """Classify every cell of a kernel involution (or base shape) grid.

    >>> grid = classify_cells((3, 4, 1, 2))
    >>> [grid.label(i, i) for i in range(1, 5)]
    ['free', 'diagonal-decreasing', 'free', 'free']
    """
    rho = check_involution(rho)
    if not rho:
        raise ValueError("cannot classify the empty shape")
    if rho not in BASE_SHAPES and not is_kernel_involution(rho):
        raise ValueError(f"{rho} is not a kernel involution")
    s = len(rho)
    capacity = len(occurrences_3412(rho))
    feasible = [[False] * s for _ in range(s)]
    for m in range(1, s + 1):
        for ell in range(1, m + 1):
            probe = _probe_involution(rho, m, ell)
            if m != ell and _probe_involution(rho, ell, m) != probe:
                # the entry and its mirror form one 2-cycle, so probing
                # C_{m,l} and C_{l,m} must build the same involution
                raise StructuralViolationError(
                    f"probe symmetry broken at C_{m},{ell} of {rho}")
            ok = _count_capped(probe, capacity + 1) == capacity
            feasible[m - 1][ell - 1] = ok
            feasible[ell - 1][m - 1] = ok
    labels = [[INFEASIBLE] * s for _ in range(s)]
    for m in range(1, s + 1):
        for ell in range(1, s + 1):
            if not feasible[m - 1][ell - 1]:
                continue
            if m != ell:
                labels[m - 1][ell - 1] = DECREASING
            elif _has_12_northwest_or_southeast(rho, m):
                labels[m - 1][ell - 1] = DIAG_DECREASING
            else:
                labels[m - 1][ell - 1] = FREE
    return CellGrid(size=s, labels=tuple(tuple(row) for row in labels))


def shape_record(rho) -> ShapeRecord:
    rho = check_involution(rho)
    grid = classify_cells(rho)
    s = len(rho)
    d_above = sum(1 for m in range(1, s + 1) for ell in range(m + 1, s + 1)
                  if grid.label(m, ell) == DECREASING)
    return ShapeRecord(
        shape=rho,
        s=s,
        c=len(occurrences_3412(rho)),
        f=grid.count(FREE),
        dd=sum(1 for i in range(1, s + 1) if grid.label(i, i) == DIAG_DECREASING),
        d=d_above,
        parity21=inversion_parity(rho),
        grid=grid,
    )


def psi_shape(r: int) -> Perm:
    """The unique kernel involution of capacity r and maximal size 2r+2.

    >>> psi_shape(1)
    (3, 4, 1, 2)
    >>> psi_shape(2)
    (3, 5, 1, 6, 2, 4)
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return (2, 1)
    n = 2 * r + 2
    vals = [0] * n
    cycles = [(1, 3)] + [(2 * i, 2 * i + 3) for i in range(1, r)] + [(2 * r, n)]
    for a, b in cycles:
        vals[a - 1], vals[b - 1] = b, a
    shape = tuple(vals)
    check_involution(shape)
    capacity = len(occurrences_3412(shape))
    if capacity != r:
        raise RuntimeError(
            f"psi construction for r={r} produced capacity {capacity}")
    return shape


def _kernel_shapes_of_size(n: int, r: int, batch_size: int = 32768,
                           branch: int | None = None) -> set[Perm]:
    """Kernel involutions of size exactly n with capacity between 1 and r,
    by exhaustive scan of I_n."""
    found: set[Perm] = set()
    counts = np.empty(batch_size, dtype=np.int64)
    for batch in _fast.iter_involution_batches(n, batch_size, branch=branch):
        k = batch.shape[0]
        _fast.count_3412_batch(batch, r + 1, counts[:k])
        mask = (counts[:k] >= 1) & (counts[:k] <= r)
        if not mask.any():
            continue
        sub = np.ascontiguousarray(batch[mask])
        m = sub.shape[0]
        sizes = np.empty(m, dtype=np.int64)
        caps = np.empty(m, dtype=np.int64)
        shapes = np.empty((m, n), dtype=np.int8)
        _fast.kernel_scan_batch(sub, sizes, caps, shapes)
        for row in np.nonzero(sizes == n)[0]:
            found.add(tuple(int(v) for v in sub[row]))
    return found


def shape_catalog(r: int, threads: int = 1) -> list[ShapeRecord]:
    """All kernel involutions with capacity between 1 and r.

    Exhaustive search over I_4 .. I_{2r+1} plus the closed-form psi shapes
    (the only size-2c+2 shapes of capacity c).  Sorted by (size, shape) so
    the catalog is bit-stable across runs and thread counts.

    >>> [rec.shape for rec in shape_catalog(1)]
    [(3, 4, 1, 2)]
    """
    if r < 1:
        raise ValueError("the catalog is defined for r >= 1")
    shapes: set[Perm] = set()
    for n in range(4, 2 * r + 2):
        if threads > 1 and involution_branches(n) > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=threads) as pool:
                futs = [pool.submit(_kernel_shapes_of_size, n, r, 32768, b)
                        for b in range(involution_branches(n))]
                for fut in futs:
                    shapes |= fut.result()
        else:
            shapes |= _kernel_shapes_of_size(n, r)
    for c in range(1, r + 1):
        shapes.add(psi_shape(c))
    records = [shape_record(shape) for shape in shapes]
    records.sort(key=lambda rec: (rec.s, rec.shape))
    return records


def catalog_to_json(records: list[ShapeRecord]) -> str:
    """Deterministic JSON rendering of a shape catalog."""
    return json.dumps([rec.to_dict() for rec in records],
                      separators=(",", ":"), sort_keys=True)


@dataclass
class ValidationReport:
    """Outcome of auditing one shape's classification against enumeration."""
    shape: Perm
    n_max: int
    scanned_to: int = 0
    matched: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _strictly_decreasing(vals: list[int]) -> bool:
    return all(a > b for a, b in zip(vals, vals[1:]))


def _check_against_grid(p: Perm, record: ShapeRecord,
                        report: ValidationReport) -> None:
    kern = kernel_of(p)
    if kern.shape != record.shape:
        report.failures.append(f"{p}: kernel shape mismatch {kern.shape}")
        return
    try:
        cells = cell_decomposition(p, kern)
    except StructuralViolationError as exc:
        report.failures.append(f"{p}: {exc}")
        return
    s = record.s
    grid = record.grid
    for m in range(1, s + 1):
        for ell in range(1, s + 1):
            content = cells[m - 1][ell - 1]
            if not content:
                continue
            label = grid.label(m, ell)
            if label == INFEASIBLE:
                report.failures.append(
                    f"{p}: populated infeasible cell C_{m},{ell} = {content}")
            elif label in (DECREASING, DIAG_DECREASING):
                if not _strictly_decreasing(content):
                    report.failures.append(
                        f"{p}: {label} cell C_{m},{ell} not decreasing: {content}")
            if label == DECREASING:
                mirror = cells[ell - 1][m - 1]
                if len(mirror) != len(content):
                    report.failures.append(
                        f"{p}: |C_{m},{ell}| = {len(content)} but "
                        f"|C_{ell},{m}| = {len(mirror)}")
    # value bands: of two populated decreasing cells in band m, the one in
    # the earlier position gap holds the larger values
    for m in range(1, s + 1):
        populated = [(ell, cells[m - 1][ell - 1]) for ell in range(1, s + 1)
                     if cells[m - 1][ell - 1] and grid.label(m, ell) == DECREASING]
        for (ell_a, ca), (ell_b, cb) in zip(populated, populated[1:]):
            if min(ca) <= max(cb):
                report.failures.append(
                    f"{p}: band {m} ordering broken between C_{m},{ell_a} "
                    f"and C_{m},{ell_b}")


class _ShapeAudit:
    """Accumulates checks for one catalog shape over a shared scan."""

    def __init__(self, record: ShapeRecord, n_max: int):
        self.record = record
        self.report = ValidationReport(shape=record.shape, n_max=n_max)
        s = record.s
        self.free_cells = [(m, ell) for m in range(1, s + 1)
                           for ell in range(1, s + 1)
                           if record.grid.label(m, ell) == FREE]
        self.seen: dict[tuple[int, int], set[Perm]] = {
            fc: set() for fc in self.free_cells}

    def take(self, p: Perm) -> None:
        report = self.report
        report.matched += 1
        _check_against_grid(p, self.record, report)
        cells = cell_decomposition(p, kernel_of(p))
        for (m, ell) in self.free_cells:
            content = cells[m - 1][ell - 1]
            if content:
                self.seen[(m, ell)].add(
                    reduce_to_pattern(tuple(content),
                                      tuple(range(1, len(content) + 1))))

    def finish(self) -> ValidationReport:
        report = self.report
        s = self.record.s
        if report.scanned_to < s:
            report.notes.append(
                f"never scanned: bound {report.scanned_to} below size {s}")
            return report
        if report.scanned_to < s + 2:
            report.notes.append(
                f"scan bound {report.scanned_to} too low to witness cell "
                f"freedom (needs size {s + 2})")
            return report
        for fc, patterns in self.seen.items():
            has_ascent = any(any(a < b for a, b in zip(pat, pat[1:]))
                             for pat in patterns)
            if len(patterns) < 2 or not has_ascent:
                report.failures.append(
                    f"free cell C_{fc[0]},{fc[1]} showed no freedom witness "
                    f"(patterns seen: {sorted(patterns)})")
        return report


def validate_catalog(records: list[ShapeRecord], window: int = 4,
                     n_cap: int = 14,
                     batch_size: int = 32768) -> list[ValidationReport]:
    """Audit cell classifications against full enumeration, sharing scans.

    For each record, every involution of size s .. min(s + window, n_cap)
    whose kernel shape equals the record's shape is decomposed and checked:
    populated cells must be feasible, decreasing-labelled content strictly
    decreasing, mirrored cells equal-sized, bands ordered, and each free
    cell must exhibit at least two distinct content patterns over the scan,
    one containing an ascent (a cell mislabelled free fails that witness).
    One enumeration pass per size serves all records.
    """
    audits = [_ShapeAudit(rec, min(rec.s + window, n_cap)) for rec in records]
    by_size: dict[int, list[_ShapeAudit]] = {}
    for audit in audits:
        for n in range(audit.record.s, audit.report.n_max + 1):
            by_size.setdefault(n, []).append(audit)
    for n in sorted(by_size):
        wanted = {a.record.shape: a for a in by_size[n]}
        sizes_wanted = {len(shape) for shape in wanted}
        for audit in by_size[n]:
            audit.report.scanned_to = n
        for batch in _fast.iter_involution_batches(n, batch_size):
            k = batch.shape[0]
            sizes = np.empty(k, dtype=np.int64)
            caps = np.empty(k, dtype=np.int64)
            shapes = np.empty((k, n), dtype=np.int8)
            _fast.kernel_scan_batch(batch, sizes, caps, shapes)
            candidate = np.zeros(k, dtype=bool)
            for s in sizes_wanted:
                candidate |= sizes == s
            for row in np.nonzero(candidate)[0]:
                s = int(sizes[row])
                shape = tuple(int(v) for v in shapes[row, :s])
                audit = wanted.get(shape)
                if audit is not None:
                    audit.take(tuple(int(v) for v in batch[row]))
    return [audit.finish() for audit in audits]


def validate_classification(record: ShapeRecord, n_max: int,
                            batch_size: int = 32768) -> ValidationReport:
    """Audit one shape's classification; see :func:`validate_catalog`."""
    return validate_catalog([record], window=n_max - record.s,
                            n_cap=n_max, batch_size=batch_size)[0]
