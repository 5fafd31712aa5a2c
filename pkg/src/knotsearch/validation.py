"""Dataset checks built from polynomial identities.

- det K = |J(-1)| = |Δ(-1)|
- g_T <= c - span(J)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data_ingest import Dataset, complete_rows
from .polynomial import evaluate_many, span

DETERMINANT_RESIDUAL = 1e-6


@dataclass(frozen=True)
class Violation:
    knot_id: str
    check: str
    detail: str


@dataclass(frozen=True)
class CheckReport:
    check: str
    rows_checked: int
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_determinants(
    ds: Dataset,
    jones: str = "jones_polynomial_vector",
    alexander: str = "alexander_polynomial_vector",
    determinant: str = "determinant",
    residual: float = DETERMINANT_RESIDUAL,
) -> CheckReport:
    d = complete_rows(ds, [jones, alexander, determinant])
    vj = np.abs(evaluate_many(d.column(jones), -1.0))
    va = np.abs(evaluate_many(d.column(alexander), -1.0))
    bad = []
    for rec, a, b in zip(d.records, vj, va):
        det = rec.get(determinant)
        rj, ra = round(a), round(b)
        res = max(abs(a - rj), abs(b - ra))
        if res > residual or not rj == ra == det:
            bad.append(Violation(rec.knot_id, "determinant", f"|J(-1)|={a:.9g} |A(-1)|={b:.9g} det={det}"))
    return CheckReport("determinant", len(d), tuple(bad))


def check_turaev_bound(
    ds: Dataset,
    jones: str = "jones_polynomial_vector",
    crossings: str = "crossing_number",
    turaev: str = "turaev_genus",
) -> CheckReport:
    d = complete_rows(ds, [jones, crossings, turaev])
    bad = []
    for rec in d.records:
        bound = rec.get(crossings) - span(rec.get(jones))
        if rec.get(turaev) > bound:
            bad.append(Violation(rec.knot_id, "turaev", f"g_T={rec.get(turaev)} > c - span = {bound}"))
    return CheckReport("turaev", len(d), tuple(bad))


def turaev_bound_accuracy(
    ds: Dataset,
    jones: str = "jones_polynomial_vector",
    crossings: str = "crossing_number",
    turaev: str = "turaev_genus",
) -> tuple[float, int]:
    """Fraction of knots whose Turaev genus equals c - span(J), and the row count."""
    d = complete_rows(ds, [jones, crossings, turaev])
    hits = sum(r.get(turaev) == r.get(crossings) - span(r.get(jones)) for r in d.records)
    return hits / len(d), len(d)


def run_all(ds: Dataset) -> list[CheckReport]:
    return [check_determinants(ds), check_turaev_bound(ds)]
