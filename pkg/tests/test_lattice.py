import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partition_lab.enumeration import iter_frequency_arrays
from partition_lab.lattice import (
    AB,
    AG,
    HAT_SENTENCE,
    ArrayShape,
    Cell,
    FrequencyArray,
    copath,
    display_pattern,
    forbidden_cells,
    hat_cell,
    is_admissible,
    is_admissible_k1,
    load_displays,
    max_path_sum,
    render,
)

from _oracles import array_rows, brute_max_path


def shapes(max_ell=4):
    out = []
    for case in (AG, AB):
        for ell in range(2, max_ell + 1):
            out += [ArrayShape(case, ell, i) for i in range(ell + 1)]
    return out


def test_shape_validation():
    assert ArrayShape("ag", 2, 1).case == AG
    assert ArrayShape(AG, 1, 0).rows == 2
    assert ArrayShape(AB, 3, 0).rows == 5
    for bad in [("XX", 2, 0), (AB, 1, 0), (AG, 2, 3), (AG, 2, -1)]:
        with pytest.raises(ValueError):
            ArrayShape(*bad)
    with pytest.raises(ValueError):
        ArrayShape(AG, 2, 0, hat_rule="other")


def test_row_parity():
    for shape in shapes():
        rows, odd = array_rows(shape.case, shape.ell, shape.i)
        assert shape.rows == rows
        assert [shape.odd_row(r) for r in range(1, rows + 1)] == odd
        # top and bottom rows agree for the odd-height arrays
        if shape.case == AB:
            assert shape.odd_row(1) == shape.odd_row(rows)


def test_hat_cell_examples():
    assert hat_cell(ArrayShape(AG, 4, 2)) == Cell(7, 1)
    assert hat_cell(ArrayShape(AG, 4, 0)) == Cell(8, 2)
    assert hat_cell(ArrayShape(AB, 4, 4)) == Cell(4, 1)
    assert hat_cell(ArrayShape(AB, 4, 0)) == Cell(1, 2)
    assert [hat_cell(ArrayShape(AG, 4, i)).row for i in range(5)] == [8, 1, 7, 3, 5]
    assert [hat_cell(ArrayShape(AB, 4, i)).row for i in range(5)] == [1, 1, 2, 3, 4]


def test_sentence_hat_rule():
    rows = [ArrayShape(AB, 4, i, HAT_SENTENCE).hat.row for i in range(5)]
    assert rows == [7, 1, 7, 3, 5]


def test_hat_is_a_slot():
    for shape in shapes():
        h = shape.hat
        assert h == shape.slot(h.row)
        assert h.value < 1


def test_cell_validation():
    shape = ArrayShape(AG, 2, 2)
    assert shape.cell(1, 1) == Cell(1, 3)
    with pytest.raises(ValueError):
        shape.cell(1, 2)  # row 1 holds odd values
    with pytest.raises(ValueError):
        shape.cell(5, 1)
    with pytest.raises(ValueError):
        copath(shape, Cell(1, 3), Cell(9, 3))


def test_copath_examples():
    shape = ArrayShape(AG, 2, 2)
    assert copath(shape, shape.cell(1, 1), shape.cell(2, 2))
    assert not copath(shape, shape.cell(1, 1), shape.cell(1, 3))
    assert copath(shape, shape.cell(1, 1), shape.cell(1, 1))
    assert not copath(shape, shape.cell(1, 1), shape.cell(2, 12))


@given(st.sampled_from(shapes(3)), st.data())
def test_copath_symmetric(shape, data):
    cells = shape.value_cells(9)
    a = data.draw(st.sampled_from(cells))
    b = data.draw(st.sampled_from(cells))
    assert copath(shape, a, b) == copath(shape, b, a)
    assert copath(shape, a, a)


def test_copath_matches_explicit_paths():
    from _oracles import all_paths

    for shape in [ArrayShape(AG, 2, 0), ArrayShape(AB, 3, 1), ArrayShape(AB, 3, 2)]:
        width = 12
        paths = all_paths(shape.case, shape.ell, shape.i, width)
        cells = [Cell(r, c) for r in range(1, shape.rows + 1) for c in range(1, width - 3)
                 if (c % 2 == 1) == shape.odd_row(r)]
        for a in cells:
            for b in cells:
                seen = any(p[a.row - 1] == a.col and p[b.row - 1] == b.col for p in paths)
                assert copath(shape, a, b) == seen


def test_max_path_sum_examples():
    shape = ArrayShape(AG, 2, 2)
    assert max_path_sum(FrequencyArray(shape)) == 1
    assert max_path_sum(FrequencyArray.from_parts(shape, [(1, 1)])) == 2
    assert max_path_sum(FrequencyArray.from_parts(shape, [(3, 1)])) == 1
    assert max_path_sum(FrequencyArray.from_parts(shape, [(3, 1)]), kvec={}) == 1
    assert max_path_sum(FrequencyArray.from_parts(shape, [(2, 2, 3), (4, 2)]), kvec={}) == 4
    assert max_path_sum(FrequencyArray.from_parts(shape, [(2, 2, 3), (1, 5)]), kvec={}) == 3


def test_max_path_sum_col_max():
    shape = ArrayShape(AB, 3, 1)
    fa = FrequencyArray.from_parts(shape, [(1, 5), (2, 2), (4, 6)])
    base = max_path_sum(fa)
    for extra in range(0, 12):
        assert max_path_sum(fa, col_max=10 + extra) == base
    with pytest.raises(ValueError):
        max_path_sum(fa, col_max=5)


@settings(max_examples=60)
@given(st.sampled_from(shapes(3)), st.data())
def test_max_path_sum_against_path_listing(shape, data):
    cells = shape.value_cells(7)
    picks = data.draw(st.lists(st.tuples(st.sampled_from(cells), st.integers(1, 2)), max_size=4))
    freq = {}
    for c, m in picks:
        freq[c] = freq.get(c, 0) + m
    fa = FrequencyArray(shape, freq)
    entries = {(c.row, c.value): m for c, m in fa.freq.items()}
    assert max_path_sum(fa) == brute_max_path(shape.case, shape.ell, shape.i, shape.hat.row, entries)


def test_admissibility_examples():
    for shape in shapes():
        assert is_admissible(FrequencyArray(shape))
    assert not is_admissible(FrequencyArray.from_parts(ArrayShape(AG, 4, 1), [(3, 1)]))
    both = FrequencyArray.from_parts(ArrayShape(AG, 4, 4), [(5, 1), (6, 2)])
    assert not is_admissible(both)
    assert is_admissible(both.without(Cell.of_value(6, 2)))
    assert is_admissible(both.without(Cell.of_value(5, 1)))
    assert is_admissible(both, k=2)


def test_forbidden_cells_examples():
    got = {(c.row, c.value) for c in forbidden_cells(ArrayShape(AG, 4, 1), 6)}
    assert got == {(3, 1), (4, 2), (5, 1), (5, 3), (6, 2), (6, 4), (7, 1), (7, 3), (7, 5), (8, 2), (8, 4), (8, 6)}
    got = {(c.row, c.value) for c in forbidden_cells(ArrayShape(AG, 4, 4), 14)}
    assert got == {(1, 1), (1, 3), (2, 2), (3, 1), (7, 1), (8, 2)}
    got = {(c.row, c.value) for c in forbidden_cells(ArrayShape(AB, 4, 0), 14)}
    assert got == {(2, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 4), (6, 1), (6, 3), (6, 5), (7, 2), (7, 4), (7, 6)}
    with pytest.raises(ValueError):
        forbidden_cells(ArrayShape(AG, 2, 0), 0)


@pytest.mark.parametrize("case", [AG, AB])
@pytest.mark.parametrize("i", range(5))
def test_display_fixtures(case, i):
    want = load_displays()[case][str(i)]
    vmax = max(r["max_value"] for r in want)
    assert display_pattern(ArrayShape(case, 4, i), vmax) == want


@pytest.mark.parametrize("case", [AG, AB])
@pytest.mark.parametrize("i", range(3))
def test_dp_matches_pairwise_exhaustive(case, i):
    shape = ArrayShape(case, 2, i)
    n = 0
    for fa in iter_frequency_arrays(shape, 8):
        assert is_admissible(fa) == is_admissible_k1(fa)
        n += 1
    assert n > 100


@settings(max_examples=80)
@given(st.sampled_from(shapes(4)), st.data())
def test_dp_matches_pairwise_random(shape, data):
    cells = shape.value_cells(12)
    chosen = data.draw(st.lists(st.sampled_from(cells), max_size=5, unique=True))
    mults = data.draw(st.lists(st.integers(1, 2), min_size=len(chosen), max_size=len(chosen)))
    fa = FrequencyArray(shape, dict(zip(chosen, mults)))
    assert is_admissible(fa) == is_admissible_k1(fa)


@settings(max_examples=60)
@given(st.sampled_from(shapes(3)), st.data())
def test_downward_closure(shape, data):
    cells = shape.value_cells(10)
    chosen = data.draw(st.lists(st.sampled_from(cells), max_size=4, unique=True))
    fa = FrequencyArray(shape, {c: 1 for c in chosen})
    if is_admissible(fa):
        for c in chosen:
            assert is_admissible(fa.without(c))


def test_frequency_array_basics():
    shape = ArrayShape(AG, 2, 2)
    fa = FrequencyArray.from_parts(shape, [(3, 1), (2, 4, 2)])
    assert fa.weight == 9
    assert fa.num_parts == 3
    assert fa.entries() == [[2, 4, 2], [3, 1, 1]]
    assert FrequencyArray.from_json(json.dumps(fa.to_json())) == fa
    assert hash(FrequencyArray.from_json(fa.to_json())) == hash(fa)
    with pytest.raises(ValueError):
        FrequencyArray(shape, {Cell(1, 1): 1})
    with pytest.raises(ValueError):
        FrequencyArray(shape, {Cell(1, 3): -1})


def test_render():
    text = render(ArrayShape(AG, 2, 2), 5)
    assert text.splitlines() == [
        " .   .   3   5",
        "   .   2   4",
        "1^   1   3   5",
        "   .   2   4",
    ]
