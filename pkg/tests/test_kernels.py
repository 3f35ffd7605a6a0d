import json

import pytest

from inv3412.kernels import (
    BASE_SHAPES,
    DECREASING,
    DIAG_DECREASING,
    FREE,
    INFEASIBLE,
    CellGrid,
    ShapeRecord,
    StructuralViolationError,
    catalog_to_json,
    cell_decomposition,
    classify_cells,
    is_kernel_involution,
    kernel_of,
    occurrence_graph,
    psi_shape,
    shape_catalog,
    shape_record,
    validate_catalog,
    validate_classification,
)
from inv3412.perms import enumerate_involutions, occurrences_3412

PI14 = (8, 2, 3, 13, 7, 6, 5, 1, 11, 12, 9, 10, 4, 14)
PSI3 = (3, 5, 1, 7, 2, 8, 4, 6)


def test_occurrence_graph_worked_example():
    g = occurrence_graph(PI14)
    assert g.n == 14
    assert len(g.occurrences) == 2
    # every occurrence vertex has degree exactly 4
    for quad in g.occurrences:
        assert len(quad) == 4
    assert len(g.edges) == 8


def test_occurrence_graph_trivial_cases():
    assert occurrence_graph(tuple(range(1, 7))).occurrences == ()
    g = occurrence_graph((3, 4, 1, 2))
    assert g.occurrences == ((1, 2, 3, 4),)


def test_kernel_worked_example():
    k = kernel_of(PI14)
    assert k.positions == (1, 4, 8, 13)
    assert k.shape == (3, 4, 1, 2)


def test_kernel_trivial_and_detached():
    assert kernel_of(tuple(range(1, 6))).shape == (1,)
    # an occurrence exists but does not touch the entry of value 1
    assert kernel_of((2, 1, 5, 7, 3, 6, 4)).shape == (1,)
    with pytest.raises(ValueError):
        kernel_of(())


def test_kernel_shape_is_involution_and_bounded():
    from inv3412.perms import is_involution
    for n in range(1, 9):
        for p in enumerate_involutions(n):
            k = kernel_of(p)
            assert is_involution(k.shape)
            c = len(occurrences_3412(k.shape))
            if c >= 1:
                assert len(k.positions) <= 2 * c + 2


def test_is_kernel_involution():
    assert is_kernel_involution((3, 4, 1, 2))
    assert is_kernel_involution((3, 5, 1, 6, 2, 4))
    assert not is_kernel_involution((1, 3, 2, 4))
    assert is_kernel_involution((1,))
    # the kernel of 21 is the single entry of value 1, so 21 is not its own
    # kernel shape; the recursion injects it analytically instead
    assert not is_kernel_involution((2, 1))


def test_cell_decomposition_worked_example():
    k = kernel_of(PI14)
    cells = cell_decomposition(PI14, k)
    assert cells[0][0] == [2, 3]
    assert cells[1][1] == [7, 6, 5]
    assert cells[2][2] == [11, 12, 9, 10]
    assert cells[3][3] == [14]
    others = [(m, l) for m in range(4) for l in range(4)
              if (m, l) not in ((0, 0), (1, 1), (2, 2), (3, 3))]
    assert all(cells[m][l] == [] for m, l in others)


def test_cell_decomposition_of_shape_itself_is_empty():
    for shape in ((3, 4, 1, 2), (3, 5, 1, 6, 2, 4)):
        cells = cell_decomposition(shape, kernel_of(shape))
        assert all(not cells[m][l] for m in range(len(shape))
                   for l in range(len(shape)))


def test_cell_decomposition_structural_violation():
    # entry of value 2 sits left of the kernel position of a trivial kernel
    p = (2, 1, 5, 7, 3, 6, 4)
    with pytest.raises(StructuralViolationError):
        cell_decomposition(p, kernel_of(p))


def test_cell_decomposition_total_for_nontrivial_kernels():
    # every non-kernel entry lands in exactly one cell when capacity >= 1
    for n in range(4, 9):
        for p in enumerate_involutions(n):
            k = kernel_of(p)
            if not occurrences_3412(k.shape):
                continue
            cells = cell_decomposition(p, k)
            placed = sum(len(cells[m][l]) for m in range(len(k.shape))
                         for l in range(len(k.shape)))
            assert placed == n - len(k.positions)


def test_classify_3412_grid():
    grid = classify_cells((3, 4, 1, 2))
    assert [grid.label(i, i) for i in range(1, 5)] == [
        FREE, DIAG_DECREASING, FREE, FREE]
    for m in range(1, 5):
        for ell in range(1, 5):
            if m != ell:
                assert grid.label(m, ell) == INFEASIBLE


def test_classify_base_shapes():
    g1 = classify_cells((1,))
    assert g1.labels == ((FREE,),)
    g2 = classify_cells((2, 1))
    assert g2.label(1, 1) == FREE and g2.label(2, 2) == FREE
    assert g2.label(1, 2) == INFEASIBLE and g2.label(2, 1) == INFEASIBLE


def test_classify_psi3():
    rec = shape_record(PSI3)
    assert (rec.f, rec.dd, rec.d) == (5, 3, 0)
    for i in (1, 3, 5, 7, 8):
        assert rec.grid.label(i, i) == FREE
    for i in (2, 4, 6):
        assert rec.grid.label(i, i) == DIAG_DECREASING


def test_classify_rejects_non_kernel_shapes():
    with pytest.raises(ValueError):
        classify_cells((1, 3, 2, 4))
    with pytest.raises(ValueError):
        classify_cells(())


def test_grid_symmetry_for_catalog_shapes():
    for rec in shape_catalog(3):
        g = rec.grid
        for m in range(1, rec.s + 1):
            for ell in range(1, rec.s + 1):
                assert ((g.label(m, ell) == INFEASIBLE)
                        == (g.label(ell, m) == INFEASIBLE))
                if m != ell and g.label(m, ell) != INFEASIBLE:
                    assert g.label(m, ell) == DECREASING


def test_psi_shapes():
    assert psi_shape(0) == (2, 1)
    assert psi_shape(1) == (3, 4, 1, 2)
    assert psi_shape(2) == (3, 5, 1, 6, 2, 4)
    assert psi_shape(3) == PSI3
    with pytest.raises(ValueError):
        psi_shape(-1)


def test_psi_parameters():
    for r in range(1, 5):
        rec = shape_record(psi_shape(r))
        assert (rec.s, rec.c, rec.f, rec.dd, rec.d) == \
            (2 * r + 2, r, r + 2, r, 0)
        assert rec.parity21 == (r + 1) % 2


def test_catalog_small_r():
    assert [rec.shape for rec in shape_catalog(1)] == [(3, 4, 1, 2)]
    assert [rec.shape for rec in shape_catalog(2)] == [
        (3, 4, 1, 2), (3, 5, 1, 6, 2, 4)]
    # the search at r = 3 finds two new shapes beyond the r = 2 list
    assert [rec.shape for rec in shape_catalog(3)] == [
        (3, 4, 1, 2), (3, 5, 1, 6, 2, 4), (5, 6, 3, 4, 1, 2), PSI3]


def test_catalog_rejects_r_zero():
    with pytest.raises(ValueError):
        shape_catalog(0)


def test_catalog_completeness():
    # every kernel shape of capacity 1..r occurring at size <= 2r+1 is listed
    for r in (2, 3):
        shapes = {rec.shape for rec in shape_catalog(r)}
        for n in range(1, 2 * r + 2):
            for p in enumerate_involutions(n):
                k = kernel_of(p)
                c = len(occurrences_3412(k.shape))
                if 1 <= c <= r:
                    assert k.shape in shapes


def test_catalog_thread_count_does_not_change_output():
    a = catalog_to_json(shape_catalog(3, threads=1))
    b = catalog_to_json(shape_catalog(3, threads=4))
    assert a == b


def test_catalog_base_shapes_excluded():
    shapes = {rec.shape for rec in shape_catalog(3)}
    assert not (set(BASE_SHAPES) & shapes)


def test_catalog_json_is_deterministic():
    records = shape_catalog(2)
    text = catalog_to_json(records)
    assert text == catalog_to_json(shape_catalog(2))
    parsed = json.loads(text)
    assert parsed[0]["shape"] == [3, 4, 1, 2]
    assert parsed[0]["grid"][1][1] == DIAG_DECREASING


def test_validate_classification_passes():
    assert validate_classification(shape_record((3, 4, 1, 2)), 8).passed
    assert validate_classification(shape_record((3, 5, 1, 6, 2, 4)), 10).passed


def test_validate_classification_catches_mislabeled_cell():
    good = shape_record((3, 4, 1, 2))
    labels = [list(row) for row in good.grid.labels]
    labels[1][1] = FREE  # C_22 is really diagonal-decreasing
    bad = ShapeRecord(shape=good.shape, s=good.s, c=good.c, f=good.f + 1,
                      dd=good.dd - 1, d=good.d, parity21=good.parity21,
                      grid=CellGrid(size=4, labels=tuple(tuple(r) for r in labels)))
    report = validate_classification(bad, 8)
    assert not report.passed
    assert any("C_2,2" in failure for failure in report.failures)


def test_validate_notes_insufficient_scan():
    rec = shape_record((3, 4, 1, 2))
    report = validate_classification(rec, rec.s + 1)
    assert report.passed  # no failures, only a note
    assert any("witness" in note for note in report.notes)


def test_validate_catalog_shares_scans():
    reports = validate_catalog(shape_catalog(2), window=3, n_cap=9)
    assert all(rep.passed for rep in reports)
    assert all(rep.matched > 0 for rep in reports)
