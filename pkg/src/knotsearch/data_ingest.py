"""Typed, immutable knot-invariant tables read from CSV exports."""

from __future__ import annotations

import csv
import enum
import io
import math
import os
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from types import MappingProxyType

from .errors import (
    MalformedRow,
    NonIntegerTarget,
    NonNumericTarget,
    UnknownColumn,
    UnparseableCell,
    UnreadableFile,
)
from .polynomial import LaurentPolynomial, detect_layout, format_polynomial, parse_polynomial

DEFAULT_MISSING_MARKERS = frozenset({"", "Not Available", "N/A"})

_TRUE = {"yes", "y", "true", "1"}
_FALSE = {"no", "n", "false", "0"}
_INT_RE = re.compile(r"[-+]?\d+")


class InvariantKind(str, enum.Enum):
    INTEGER_CLASS = "integer_class"
    REAL_VALUE = "real_value"
    BOOLEAN_FLAG = "boolean_flag"
    POLYNOMIAL_VECTOR = "polynomial_vector"
    TEXT = "text"

    @property
    def numeric(self) -> bool:
        return self in (InvariantKind.INTEGER_CLASS, InvariantKind.REAL_VALUE, InvariantKind.BOOLEAN_FLAG)

    @property
    def discrete(self) -> bool:
        return self in (InvariantKind.INTEGER_CLASS, InvariantKind.BOOLEAN_FLAG)


@dataclass(frozen=True)
class KnotRecord:
    """One knot. Missing invariants are simply absent from ``values``."""

    knot_id: str
    values: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in dict(self.values).items() if v is not None}
        object.__setattr__(self, "values", MappingProxyType(clean))

    def __reduce__(self):
        return (KnotRecord, (self.knot_id, dict(self.values)))

    def get(self, name: str, default=None):
        return self.values.get(name, default)

    def has(self, name: str) -> bool:
        return name in self.values


@dataclass(frozen=True)
class Dataset:
    schema: tuple[tuple[str, InvariantKind], ...]
    records: tuple[KnotRecord, ...]
    provenance: str = ""
    id_column: str = "name"

    def __post_init__(self):
        object.__setattr__(self, "schema", tuple((n, InvariantKind(k)) for n, k in self.schema))
        object.__setattr__(self, "records", tuple(self.records))
        kinds = dict(self.schema)
        for rec in self.records:
            for name, value in rec.values.items():
                if name not in kinds:
                    raise UnknownColumn(f"record {rec.knot_id!r} has value for unknown column {name!r}")
                _check_kind(name, kinds[name], value, rec.knot_id)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def columns(self) -> list[str]:
        return [n for n, _ in self.schema]

    def kind(self, name: str) -> InvariantKind:
        for n, k in self.schema:
            if n == name:
                return k
        raise UnknownColumn(f"unknown column {name!r}")

    def require(self, names: Iterable[str]):
        known = set(self.columns)
        for n in names:
            if n not in known:
                raise UnknownColumn(f"unknown column {n!r}")

    def column(self, name: str) -> list:
        self.require([name])
        return [r.get(name) for r in self.records]

    def with_records(self, records: Iterable[KnotRecord]) -> Dataset:
        return replace(self, records=tuple(records))

    def by_id(self, knot_id: str) -> KnotRecord:
        for r in self.records:
            if r.knot_id == knot_id:
                return r
        raise KeyError(knot_id)


def _check_kind(name, kind, value, knot_id):
    ok = {
        InvariantKind.INTEGER_CLASS: lambda v: isinstance(v, int) and not isinstance(v, bool),
        InvariantKind.BOOLEAN_FLAG: lambda v: v in (0, 1) and isinstance(v, int) and not isinstance(v, bool),
        InvariantKind.REAL_VALUE: lambda v: isinstance(v, float) and math.isfinite(v),
        InvariantKind.POLYNOMIAL_VECTOR: lambda v: isinstance(v, LaurentPolynomial),
        InvariantKind.TEXT: lambda v: isinstance(v, str),
    }[kind]
    if not ok(value):
        raise UnparseableCell(name, None, repr(value), f"value of knot {knot_id!r} is not {kind.value}")


# ---------------------------------------------------------------------------
# schema hints


def normalize_column_name(name: str) -> str:
    return "_".join(name.strip().split())


def load_schema_hints(path) -> dict[str, InvariantKind]:
    """Read ``column=kind`` lines; blank lines and ``#`` comments are skipped."""
    hints = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UnreadableFile(f"cannot read schema hints {path}: {exc}") from exc
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UnparseableCell("schema_hints", no, line, "expected column=kind")
        col, kind = (s.strip() for s in line.split("=", 1))
        try:
            hints[normalize_column_name(col)] = InvariantKind(kind)
        except ValueError:
            raise UnparseableCell("schema_hints", no, line, f"unknown kind {kind!r}") from None
    return hints


def write_schema_hints(hints: Mapping[str, InvariantKind], path):
    with open(path, "w", encoding="utf-8") as fh:
        for col, kind in hints.items():
            fh.write(f"{col}={InvariantKind(kind).value}\n")


# ---------------------------------------------------------------------------
# cell parsing


def parse_cell(text: str, kind: InvariantKind, layout: str = "auto"):
    """Parse one non-missing cell as ``kind``; raises ValueError on failure."""
    s = text.strip()
    if kind is InvariantKind.INTEGER_CLASS:
        if not _INT_RE.fullmatch(s):
            raise ValueError("not an integer")
        return int(s)
    if kind is InvariantKind.BOOLEAN_FLAG:
        low = s.lower()
        if low in _TRUE:
            return 1
        if low in _FALSE:
            return 0
        raise ValueError("not a Yes/No flag")
    if kind is InvariantKind.REAL_VALUE:
        v = float(s)
        if not math.isfinite(v):
            raise ValueError("not finite")
        return v
    if kind is InvariantKind.POLYNOMIAL_VECTOR:
        try:
            return parse_polynomial(s, layout)
        except UnparseableCell as exc:
            raise ValueError(str(exc)) from None
    return text


def infer_kind(name: str, cells: Sequence[str]) -> InvariantKind:
    present = [c.strip() for c in cells]
    if not present:
        return InvariantKind.TEXT
    if "polynomial" in name:
        try:
            for c in present:
                parse_polynomial(c)
            return InvariantKind.POLYNOMIAL_VECTOR
        except UnparseableCell:
            pass
    if all(_INT_RE.fullmatch(c) for c in present):
        return InvariantKind.INTEGER_CLASS
    if all(c.lower() in {"yes", "no", "y", "n"} for c in present):
        return InvariantKind.BOOLEAN_FLAG
    try:
        if all(math.isfinite(float(c)) for c in present):
            return InvariantKind.REAL_VALUE
    except ValueError:
        pass
    return InvariantKind.TEXT


def _format_cell(value, kind: InvariantKind) -> str:
    if kind is InvariantKind.BOOLEAN_FLAG:
        return "Y" if value else "N"
    if kind is InvariantKind.REAL_VALUE:
        return repr(float(value))
    if kind is InvariantKind.POLYNOMIAL_VECTOR:
        return format_polynomial(value)
    return str(value)


# ---------------------------------------------------------------------------
# ingest / serialize


def _sniff_delimiter(header_line: str) -> str:
    if "|" in header_line and "," not in header_line:
        return "|"
    if "\t" in header_line and "," not in header_line:
        return "\t"
    return ","


def ingest_csv(
    path,
    schema_hints: Mapping[str, InvariantKind] | str | os.PathLike | None = None,
    missing_markers: Iterable[str] = DEFAULT_MISSING_MARKERS,
    delimiter: str | None = None,
) -> Dataset:
    """Read an invariant table. The first column is the knot name.

    Column kinds come from ``schema_hints`` when given (a mapping or a path
    to a ``column=kind`` file) and are inferred from the cells otherwise.
    """
    if isinstance(schema_hints, (str, os.PathLike)):
        schema_hints = load_schema_hints(schema_hints)
    hints = {normalize_column_name(k): InvariantKind(v) for k, v in (schema_hints or {}).items()}
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableFile(f"cannot read {path}: {exc}") from exc
    first = text.split("\n", 1)[0]
    if not first.strip():
        raise UnreadableFile(f"{path}: missing header row")
    reader = csv.reader(io.StringIO(text), delimiter=delimiter or _sniff_delimiter(first))
    header = [normalize_column_name(h) for h in next(reader)]
    markers = {m.strip() for m in missing_markers}

    raw_rows = []
    for row in reader:
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise MalformedRow(reader.line_num, len(header), len(row))
        raw_rows.append((reader.line_num, row))

    names = header[1:]
    schema = []
    layouts = {}
    for j, name in enumerate(names, start=1):
        present = [row[j] for _, row in raw_rows if row[j].strip() not in markers]
        kind = hints.get(name) or infer_kind(name, present)
        schema.append((name, kind))
        if kind is InvariantKind.POLYNOMIAL_VECTOR:
            layouts[name] = detect_layout(present)

    records = []
    for line_no, row in raw_rows:
        values = {}
        for j, (name, kind) in enumerate(schema, start=1):
            cell = row[j]
            if cell.strip() in markers:
                continue
            try:
                values[name] = parse_cell(cell, kind, layouts.get(name, "auto"))
            except ValueError as exc:
                raise UnparseableCell(name, line_no, cell, str(exc)) from None
        records.append(KnotRecord(row[0].strip(), values))
    return Dataset(tuple(schema), tuple(records), provenance=str(path), id_column=header[0])


def write_csv(ds: Dataset, path) -> None:
    """Serialize so that :func:`ingest_csv` with the same schema reproduces ``ds``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([ds.id_column, *ds.columns])
        for rec in ds.records:
            w.writerow(
                [rec.knot_id]
                + [
                    "" if rec.get(name) is None else _format_cell(rec.get(name), kind)
                    for name, kind in ds.schema
                ]
            )


def schema_of(ds: Dataset) -> dict[str, InvariantKind]:
    return dict(ds.schema)


# ---------------------------------------------------------------------------
# filtering and preprocessing


def complete_rows(ds: Dataset, columns: Iterable[str]) -> Dataset:
    columns = list(columns)
    ds.require(columns)
    if not columns:
        return ds
    return ds.with_records(r for r in ds.records if all(r.has(c) for c in columns))


def preprocess_output_regression(ds: Dataset, target: str) -> Dataset:
    """Drop records whose target is exactly zero (relative error needs a nonzero divisor)."""
    if not ds.kind(target).numeric:
        raise NonNumericTarget(f"column {target!r} is {ds.kind(target).value}, not numeric")
    return ds.with_records(r for r in ds.records if r.get(target) != 0)


def preprocess_output_classification(ds: Dataset, target: str) -> tuple[Dataset, int]:
    """Shift integer labels so the smallest observed label is 0; returns the shift."""
    if not ds.kind(target).discrete:
        raise NonIntegerTarget(f"column {target!r} is {ds.kind(target).value}, not integer-valued")
    present = [r.get(target) for r in ds.records if r.has(target)]
    offset = min(present) if present else 0
    if offset == 0:
        return ds, 0
    shifted = []
    for r in ds.records:
        if r.has(target):
            vals = dict(r.values)
            vals[target] = vals[target] - offset
            shifted.append(KnotRecord(r.knot_id, vals))
        else:
            shifted.append(r)
    return ds.with_records(shifted), offset
