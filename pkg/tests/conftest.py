import os

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

import pytest  # noqa: E402

from knotsearch.data_ingest import Dataset, InvariantKind, KnotRecord, ingest_csv  # noqa: E402
from knotsearch.polynomial import LaurentPolynomial  # noqa: E402

I = InvariantKind.INTEGER_CLASS
R = InvariantKind.REAL_VALUE
P = InvariantKind.POLYNOMIAL_VECTOR


@pytest.fixture(scope="session")
def knotinfo_csv(tmp_path_factory):
    """The packaged KnotInfo table (<= 12 crossings) exported to a comma CSV."""
    from knotsearch.knotinfo import export_csv

    path = tmp_path_factory.mktemp("knotinfo") / "knotinfo.csv"
    export_csv(path)
    return path


@pytest.fixture(scope="session")
def knotinfo(knotinfo_csv):
    from knotsearch.knotinfo import EXPORT_KINDS

    return ingest_csv(knotinfo_csv, schema_hints=EXPORT_KINDS)


def make_dataset(rows, schema):
    """rows: list of (knot_id, {col: value})"""
    return Dataset(tuple(schema.items()), tuple(KnotRecord(k, v) for k, v in rows))


@pytest.fixture
def toy():
    """Six knots with a few typed columns and gaps."""
    jones = {
        "0_1": LaurentPolynomial({0: 1}),
        "3_1": LaurentPolynomial({1: 1, 3: 1, 4: -1}),
        "4_1": LaurentPolynomial({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}),
        "5_1": LaurentPolynomial({2: 1, 4: 1, 5: -1, 6: 1, 7: -1}),
        "5_2": LaurentPolynomial({1: 1, 2: -1, 3: 2, 4: -1, 5: 1, 6: -1}),
        "6_1": LaurentPolynomial({-4: 1, -3: -1, -2: 1, -1: -2, 0: 2, 1: -1, 2: 1}),
    }
    det = {"0_1": 1, "3_1": 3, "4_1": 5, "5_1": 5, "5_2": 7, "6_1": 9}
    vol = {"4_1": 2.029883, "5_2": 2.828122, "6_1": 3.163963}
    sig = {"0_1": 0, "3_1": -2, "4_1": 0, "5_1": -4, "5_2": -2}
    rows = []
    for k in jones:
        v = {"jones_polynomial_vector": jones[k], "determinant": det[k]}
        if k in vol:
            v["volume"] = vol[k]
        if k in sig:
            v["signature"] = sig[k]
        rows.append((k, v))
    schema = {"jones_polynomial_vector": P, "determinant": I, "volume": R, "signature": I}
    return make_dataset(rows, schema)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: list[str] = []


def record(criterion: str, passed: bool, detail: str) -> bool:
    ACCEPTANCE.append(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
