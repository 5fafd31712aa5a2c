import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotsearch import experiments as ex
from knotsearch.errors import EmptyGrid, MalformedResultsLine
from knotsearch.polynomial import ComplexPoint
from knotsearch.report import ResultQuery, emit_heatmap_plot_data, emit_latex, filter_rows, parse_latex, query

VOLUME_ROWS = [
    ("conway_polynomial_vector", 0.8998461019699341),
    ("jones_polynomial_vector", 0.957915108777278),
    ("kauffman_polynomial_vector", 0.8843623356506978),
    ("homfly_polynomial_vector", 0.8621613622952917),
    ("alexander_polynomial_vector", 0.918092352173835),
]

VOLUME_TABLE_BODY = r"""\begin{tabular}{|c|c|c|c|c|}
\hline
Input 1 &Output & Accuracy & Mean/Mode & Number \\\hline
\hline
conway polynomial vector&volume&0.8998461019699341&0.7692073351767865&2970\\
\hline
jones polynomial vector&volume&0.957915108777278&0.7692073351767865&2970\\
\hline
kauffman polynomial vector&volume&0.8843623356506978&0.7692073351767865&2970\\
\hline
homfly polynomial vector&volume&0.8621613622952917&0.7692073351767865&2970\\
\hline
alexander polynomial vector&volume&0.918092352173835&0.7692073351767865&2970\\
\hline
\end{tabular}"""


def volume_results(tmp_path, extra=()):
    path = tmp_path / "results_one_fin.txt"
    rows = [ex.ResultRow((c,), "volume", a, 0.7692073351767865, 2970) for c, a in VOLUME_ROWS]
    rows += list(extra)
    ex.write_results(path, rows, append=False)
    return path


def test_polynomial_volume_table_round_trip(tmp_path):
    noise = [
        ex.ResultRow(("signature",), "volume", 0.8, 0.77, 2970),
        ex.ResultRow(("jones_polynomial_vector",), "signature", 0.9, 0.3, 2977),
        ex.ResultRow(("jones_polynomial_vector", "signature"), "volume", 0.97, 0.77, 2970),
    ]
    path = volume_results(tmp_path, noise)
    rows = query(path, ResultQuery(num_inputs=1, inputs="POLY", outputs=("volume",)))
    assert len(rows) == 5
    assert VOLUME_TABLE_BODY in emit_latex(rows)


def test_accuracy_window(tmp_path):
    rows = query(volume_results(tmp_path), ResultQuery(min_accuracy=0.9, max_accuracy=1.0))
    assert [r.inputs[0] for r in rows] == ["jones_polynomial_vector", "alexander_polynomial_vector"]


def test_empty_results_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("")
    assert query(path, ResultQuery()) == []


def test_malformed_line_number(tmp_path):
    path = volume_results(tmp_path)
    with open(path, "a") as fh:
        fh.write("broken line\n")
    with pytest.raises(MalformedResultsLine) as e:
        query(path, ResultQuery())
    assert e.value.line_no == 6


@pytest.mark.parametrize(
    "kw",
    [dict(num_inputs=4), dict(min_accuracy=0.9, max_accuracy=0.8), dict(min_knots=10, max_knots=5)],
)
def test_query_validation(kw):
    with pytest.raises(ValueError):
        ResultQuery(**kw)


def test_input_filter_is_subset():
    rows = [
        ex.ResultRow(("a", "b"), "c", 0.9, 0.5, 10),
        ex.ResultRow(("a",), "c", 0.9, 0.5, 10),
        ex.ResultRow(("a", "z"), "c", 0.9, 0.5, 10),
    ]
    assert filter_rows(rows, ResultQuery(inputs=("a", "b"))) == rows[:2]
    assert filter_rows(rows, ResultQuery(inputs="a")) == rows[1:2]
    assert filter_rows(rows, ResultQuery(outputs="c", min_knots=10, max_knots=10)) == rows


def test_empty_table():
    text = emit_latex([])
    assert "Input 1 &Output & Accuracy & Mean/Mode & Number \\\\\\hline" in text
    assert parse_latex(text) == []


def test_arity_extension():
    rows = [ex.ResultRow(("a_b", "c"), "d", 0.5, 0.25, 1001), ex.ResultRow(("e",), "d", 0.75, 0.25, 1001)]
    text = emit_latex(rows)
    assert "{|c|c|c|c|c|c|}" in text
    assert "Input 1 &Input 2 &Output & Accuracy" in text
    assert "a b&c&d&0.5&0.25&1001\\\\" in text
    assert "e&&d&0.75&0.25&1001\\\\" in text
    assert parse_latex(text) == rows


names = st.text("abcxyz_", min_size=1, max_size=8).filter(lambda s: not s.startswith("_") and "__" not in s)
rows_st = st.lists(
    st.builds(
        ex.ResultRow,
        st.lists(names, min_size=1, max_size=3).map(tuple),
        names,
        st.floats(-1, 1, allow_nan=False),
        st.floats(0, 1),
        st.integers(0, 10**6),
    ),
    max_size=10,
)


@settings(max_examples=60)
@given(rows_st)
def test_latex_round_trip(rows):
    assert parse_latex(emit_latex(rows)) == rows


@settings(max_examples=60)
@given(
    rows_st,
    st.sampled_from([None, 1, 2, 3]),
    st.floats(-1, 1),
    st.sampled_from(["ALL", ("a",), ("a", "b", "x")]),
)
def test_query_pure_and_idempotent(rows, k, lo, inputs):
    q = ResultQuery(num_inputs=k, min_accuracy=lo, inputs=inputs)
    once = filter_rows(rows, q)
    assert all(r in rows for r in once)
    assert filter_rows(once, q) == once
    assert [r for r in rows if r in once] == once


def test_heatmap_plot_data():
    grid = ex.HeatmapGrid(0.1, {ComplexPoint(0.1, 0.2): 0.5, ComplexPoint(-0.6, 0.1): 0.96, ComplexPoint(-0.6, 0.0): 0.9})
    assert emit_heatmap_plot_data(grid).splitlines() == ["re,im,accuracy", "-0.6,0,0.9", "-0.6,0.1,0.96", "0.1,0.2,0.5"]


def test_heatmap_full_grid_and_empty():
    grid = ex.HeatmapGrid(0.1, {p: 0.5 for p in ex.grid_points(0.1)})
    assert len(emit_heatmap_plot_data(grid).splitlines()) == 1 + 231
    with pytest.raises(EmptyGrid):
        emit_heatmap_plot_data(ex.HeatmapGrid(0.1, {}))


def test_heatmap_nan_cell():
    grid = ex.HeatmapGrid(1.0, {ComplexPoint(0, 0): math.nan, ComplexPoint(1, 0): 0.7})
    assert emit_heatmap_plot_data(grid).splitlines()[1] == "0,0,nan"
    assert grid.best() == (ComplexPoint(1, 0), 0.7)
