"""Filter results files and render LaTeX tables and heatmap plot data."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import EmptyGrid, MalformedResultsLine
from .experiments import HeatmapGrid, ResultRow, read_results
from .knotinfo import POLYNOMIAL_COLUMNS

ALL = "ALL"
POLY = "POLY"


@dataclass(frozen=True)
class ResultQuery:
    """Row filter. ``None`` for ``num_inputs`` accepts every arity.

    ``inputs`` is ``ALL``, ``POLY`` or a list of names; a row matches when
    every one of its inputs is in the list. ``outputs`` is ``ALL`` or a list.
    Ranges are inclusive.
    """

    num_inputs: int | None = None
    min_accuracy: float = -math.inf
    max_accuracy: float = math.inf
    min_knots: int = 0
    max_knots: int | float = math.inf
    inputs: str | tuple[str, ...] = ALL
    outputs: str | tuple[str, ...] = ALL

    def __post_init__(self):
        if self.num_inputs is not None and self.num_inputs not in (1, 2, 3):
            raise ValueError("num_inputs must be 1, 2 or 3")
        if self.min_accuracy > self.max_accuracy:
            raise ValueError("min_accuracy exceeds max_accuracy")
        if self.min_knots > self.max_knots:
            raise ValueError("min_knots exceeds max_knots")
        for name in ("inputs", "outputs"):
            v = getattr(self, name)
            if isinstance(v, str):
                if v.upper() not in (ALL, POLY) or (name == "outputs" and v.upper() == POLY):
                    v = (v,)
                else:
                    v = v.upper()
            else:
                v = tuple(v)
            object.__setattr__(self, name, v)

    def input_names(self) -> frozenset | None:
        if self.inputs == ALL:
            return None
        if self.inputs == POLY:
            return frozenset(POLYNOMIAL_COLUMNS)
        return frozenset(self.inputs)

    def matches(self, row: ResultRow) -> bool:
        if self.num_inputs is not None and len(row.inputs) != self.num_inputs:
            return False
        if not self.min_accuracy <= row.accuracy <= self.max_accuracy:
            return False
        if not self.min_knots <= row.n_knots <= self.max_knots:
            return False
        allowed = self.input_names()
        if allowed is not None and not set(row.inputs) <= allowed:
            return False
        if self.outputs != ALL and row.output not in self.outputs:
            return False
        return True


def filter_rows(rows: Iterable[ResultRow], q: ResultQuery) -> list[ResultRow]:
    return [r for r in rows if q.matches(r)]


def query(results_path, q: ResultQuery) -> list[ResultRow]:
    return filter_rows(read_results(results_path), q)


def _latex_name(name: str) -> str:
    return name.replace("_", " ")


def emit_latex(rows: Sequence[ResultRow]) -> str:
    """A ``tabular`` block in the draw_output layout.

    The input column count follows the widest row; shorter rows get empty
    cells. Names are written with spaces in place of underscores.
    """
    width = max((len(r.inputs) for r in rows), default=1)
    cols = "|" + "c|" * (width + 4)
    head = "".join(f"Input {i} &" for i in range(1, width + 1))
    lines = [
        "\\begin{center}",
        f"\\begin{{tabular}}{{{cols}}}",
        "\\hline",
        f"{head}Output & Accuracy & Mean/Mode & Number \\\\\\hline",
        "\\hline",
    ]
    for r in rows:
        ins = [_latex_name(i) for i in r.inputs] + [""] * (width - len(r.inputs))
        fields = [*ins, _latex_name(r.output), repr(float(r.accuracy)), repr(float(r.baseline)), str(r.n_knots)]
        lines.append("&".join(fields) + "\\\\")
        lines.append("\\hline")
    lines.append("\\end{tabular}\\end{center}")
    return "\n".join(lines) + "\n"


def parse_latex(text: str) -> list[ResultRow]:
    """Recover rows from :func:`emit_latex` output (names get underscores back)."""
    rows = []
    for no, line in enumerate(text.splitlines(), 1):
        if not line.endswith("\\\\") or line.startswith("Input 1 ") or "\\hline" in line:
            continue
        fields = line[:-2].split("&")
        *ins, out, acc, base, n = fields
        try:
            rows.append(
                ResultRow(
                    tuple(i.replace(" ", "_") for i in ins if i),
                    out.replace(" ", "_"),
                    float(acc),
                    float(base),
                    int(n),
                )
            )
        except ValueError as exc:
            raise MalformedResultsLine(no, line, str(exc)) from None
    return rows


def _coord(x: float) -> str:
    return f"{x:.12g}"


def emit_heatmap_plot_data(grid: HeatmapGrid) -> str:
    """``re,im,accuracy`` lines sorted by (re, im), upper half plane only."""
    if not grid.cells:
        raise EmptyGrid("heatmap grid has no cells")
    lines = ["re,im,accuracy"]
    for p in sorted(grid.cells, key=lambda q: (q.re, q.im)):
        if p.im >= 0:
            lines.append(f"{_coord(p.re)},{_coord(p.im)},{grid.cells[p]!r}")
    return "\n".join(lines) + "\n"
