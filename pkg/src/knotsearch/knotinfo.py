"""Export the KnotInfo table shipped by ``database_knotinfo`` as a clean CSV.

The raw table mixes exact values with interval bounds (``[1,2]``), ``infty``,
``Not Hyperbolic`` and free text. The exporter keeps the columns used by the
harness, writes cells that conform to the column kind, and blanks the rest,
so the result ingests strictly with :func:`data_ingest.ingest_csv`.
"""

from __future__ import annotations

import csv
import os
from collections import Counter

from .data_ingest import (
    DEFAULT_MISSING_MARKERS,
    Dataset,
    InvariantKind,
    ingest_csv,
    parse_cell,
    write_schema_hints,
)

I = InvariantKind.INTEGER_CLASS
R = InvariantKind.REAL_VALUE
B = InvariantKind.BOOLEAN_FLAG
P = InvariantKind.POLYNOMIAL_VECTOR

POLYNOMIAL_COLUMNS = (
    "conway_polynomial_vector",
    "jones_polynomial_vector",
    "kauffman_polynomial_vector",
    "homfly_polynomial_vector",
    "alexander_polynomial_vector",
)

# The 53 invariants used for experiments, in KnotInfo's column naming.
INVARIANT_KINDS: dict[str, InvariantKind] = {
    # polynomial invariants
    "alexander_polynomial_vector": P,
    "conway_polynomial_vector": P,
    "homfly_polynomial_vector": P,
    "jones_polynomial_vector": P,
    "kauffman_polynomial_vector": P,
    # case-study numerical invariants
    "determinant": I,
    "epsilon": I,
    "ozsvath_szabo_tau_invariant": I,
    "rasmussen_invariant": I,
    "three_genus": I,
    "turaev_genus": I,
    "longitude_length": R,
    # remaining invariants
    "arc_index": I,
    "braid_index": I,
    "braid_length": I,
    "bridge_index": I,
    "crosscap_number": I,
    "morse_novikov_number": I,
    "nakanishi_index": I,
    "super_bridge_index": I,
    "thurston_bennequin_number": I,
    "tunnel_number": I,
    "unknotting_number": I,
    "width": I,
    "arf_invariant": B,
    "td_clasp_number": I,
    "fd_clasp_number": I,
    "smooth_4d_crosscap_number": I,
    "topological_4d_crosscap_number": I,
    "smooth_concordance_crosscap_number": I,
    "topological_concordance_crosscap_number": I,
    "smooth_concordance_order": I,
    "algebraic_concordance_order": I,
    "topological_concordance_order": I,
    "smooth_concordance_genus": I,
    "topological_concordance_genus": I,
    "double_slice_genus": I,
    "smooth_four_genus": I,
    "topological_four_genus": I,
    "signature": I,
    "l_space": B,
    "chern_simons_invariant": R,
    "meridian_length": R,
    "volume": R,
    "alternating": B,
    "fibered": B,
    "almost_alternating": B,
    "adequate": B,
    "quasi_alternating": B,
    "positive_braid": B,
    "positive": B,
    "quasipositive": B,
    "strongly_quasipositive": B,
}

# Needed for derived features (Turaev bound) but not itself a search target.
AUXILIARY_KINDS: dict[str, InvariantKind] = {"crossing_number": I}

EXPORT_FORMAT = 1

EXPORT_KINDS: dict[str, InvariantKind] = {**AUXILIARY_KINDS, **INVARIANT_KINDS}


def raw_rows() -> list[dict[str, str]]:
    """Rows of the packaged KnotInfo table (the description row dropped)."""
    from database_knotinfo import link_list

    return link_list()[1:]


def export_csv(path, max_crossings: int = 12, hints_path=None) -> Counter:
    """Write the ≤ ``max_crossings`` knots to ``path`` as comma-separated CSV.

    Returns a counter of blanked cells per column (values that do not conform
    to the column kind, e.g. interval bounds).
    """
    blanked: Counter = Counter()
    columns = list(EXPORT_KINDS)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["name", *columns])
        for row in raw_rows():
            if int(row["crossing_number"]) > max_crossings:
                continue
            out = [row["name"]]
            for col in columns:
                cell = row.get(col, "").strip()
                if cell in DEFAULT_MISSING_MARKERS:
                    out.append("")
                    continue
                try:
                    parse_cell(cell, EXPORT_KINDS[col])
                except ValueError:
                    blanked[col] += 1
                    cell = ""
                out.append(cell)
            w.writerow(out)
    if hints_path is not None:
        write_schema_hints(EXPORT_KINDS, hints_path)
    return blanked


def load_dataset(max_crossings: int = 12, cache_dir=None) -> Dataset:
    """Export (once, cached) and ingest the KnotInfo table."""
    cache_dir = cache_dir or os.environ.get(
        "KNOTSEARCH_CACHE", os.path.join(os.path.expanduser("~"), ".cache", "knotsearch")
    )
    os.makedirs(cache_dir, exist_ok=True)
    from database_knotinfo import version

    path = os.path.join(cache_dir, f"knotinfo_{version()}_le{max_crossings}_v{EXPORT_FORMAT}.csv")
    if not os.path.exists(path):
        tmp = path + f".{os.getpid()}.tmp"
        export_csv(tmp, max_crossings)
        os.replace(tmp, path)
    return ingest_csv(path, schema_hints=EXPORT_KINDS)
