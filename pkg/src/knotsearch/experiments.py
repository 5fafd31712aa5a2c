"""Enumerate, run, score, prune and scan prediction experiments."""

from __future__ import annotations

import hashlib
import itertools
import logging
import math
import multiprocessing
import warnings
from collections import Counter, defaultdict
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import neuralnet as nn
from .data_ingest import (
    Dataset,
    InvariantKind,
    complete_rows,
    preprocess_output_classification,
    preprocess_output_regression,
)
from .errors import (
    InsufficientData,
    LengthMismatch,
    MalformedResultsLine,
    MissingSubsetResult,
    ZeroActual,
)
from .polynomial import ComplexPoint, determinant_feature, evaluate_many, flatten_many, span

log = logging.getLogger(__name__)

CROSSING_COLUMN = "crossing_number"
DEFAULT_MIN_KNOTS = 1000
DEFAULT_PRUNE_THRESHOLD = 0.80
EVAL_PARTS = ("reim", "re", "im", "polar", "abs", "arg")
DERIVED = ("span", "turaev", "det")


# ---------------------------------------------------------------------------
# accuracy and baselines


def accuracy_regression(predicted, actual) -> float:
    """One minus the mean relative error."""
    p = np.asarray(predicted, dtype=float)
    a = np.asarray(actual, dtype=float)
    if p.shape != a.shape:
        raise LengthMismatch(f"{p.shape} predictions vs {a.shape} actual values")
    if a.size == 0:
        raise ValueError("no values to score")
    if np.any(a == 0):
        raise ZeroActual("actual value 0 in relative error")
    return float(1.0 - np.mean(np.abs((p - a) / a)))


def accuracy_classification(predicted, actual) -> float:
    p = np.asarray(predicted)
    a = np.asarray(actual)
    if p.shape != a.shape:
        raise LengthMismatch(f"{p.shape} predictions vs {a.shape} actual labels")
    if a.size == 0:
        raise ValueError("no labels to score")
    return float(np.mean(p == a))


def infer_task(kind: InvariantKind) -> str:
    if kind.discrete:
        return nn.CLASSIFICATION
    if kind is InvariantKind.REAL_VALUE:
        return nn.REGRESSION
    raise ValueError(f"cannot predict a {kind.value} column")


def baseline(ds: Dataset, target: str, task: str | None = None) -> float:
    """Accuracy of predicting the target's mode (classification) or mean (regression)."""
    task = task or infer_task(ds.kind(target))
    d = complete_rows(ds, [target])
    if task == nn.REGRESSION:
        d = preprocess_output_regression(d, target)
        values = np.array(d.column(target), dtype=float)
        return accuracy_regression(np.full_like(values, values.mean()), values)
    values = d.column(target)
    if not values:
        raise InsufficientData(f"no values for {target!r}")
    return Counter(values).most_common(1)[0][1] / len(values)


# ---------------------------------------------------------------------------
# feature descriptors


@dataclass(frozen=True)
class Feature:
    """One experiment input.

    Text forms::

        volume                              a column (polynomials are flattened)
        jones_polynomial_vector@-0.6+0.1i    evaluation, real and imaginary parts
        jones_polynomial_vector@-0.6+0.1i.re one part: .re .im .abs .arg .polar
        span(jones_polynomial_vector)        exponent span
        turaev(jones_polynomial_vector)      crossing number minus span
        det(jones_polynomial_vector)         round |p(-1)|
    """

    column: str
    op: str = "column"
    point: ComplexPoint | None = None
    part: str = "reim"

    @classmethod
    def parse(cls, text: str) -> Feature:
        s = text.strip()
        for op in DERIVED:
            if s.startswith(op + "(") and s.endswith(")"):
                return cls(s[len(op) + 1 : -1].strip(), op)
        if "@" in s:
            col, rest = s.split("@", 1)
            part = "reim"
            if "." in rest and rest.rsplit(".", 1)[1] in EVAL_PARTS:
                rest, part = rest.rsplit(".", 1)
            return cls(col.strip(), "evaluate", ComplexPoint.parse(rest), part)
        return cls(s)

    def __str__(self):
        if self.op == "column":
            return self.column
        if self.op == "evaluate":
            suffix = "" if self.part == "reim" else "." + self.part
            return f"{self.column}@{self.point}{suffix}"
        return f"{self.op}({self.column})"

    def required_columns(self) -> list[str]:
        if self.op == "turaev":
            return [self.column, CROSSING_COLUMN]
        return [self.column]

    def build(self, ds: Dataset) -> tuple[np.ndarray, list[str]]:
        """Feature matrix for every record of ``ds`` (which must be complete)."""
        kind = ds.kind(self.column)
        values = ds.column(self.column)
        name = str(self)
        if self.op == "column":
            if kind is InvariantKind.POLYNOMIAL_VECTOR:
                mat, _ = flatten_many(values) if values else (np.zeros((0, 1)), None)
                return mat, [f"{name}[{i}]" for i in range(mat.shape[1])]
            if not kind.numeric:
                raise ValueError(f"column {self.column!r} is {kind.value}, not usable as input")
            return np.asarray(values, dtype=float)[:, None], [name]
        if kind is not InvariantKind.POLYNOMIAL_VECTOR:
            raise ValueError(f"{self.op} needs a polynomial column, {self.column!r} is {kind.value}")
        if self.op == "evaluate":
            z = evaluate_many(values, self.point) if values else np.zeros(0, dtype=complex)
            parts = {
                "reim": ([z.real, z.imag], ["re", "im"]),
                "re": ([z.real], ["re"]),
                "im": ([z.imag], ["im"]),
                "polar": ([np.abs(z), np.angle(z)], ["abs", "arg"]),
                "abs": ([np.abs(z)], ["abs"]),
                "arg": ([np.angle(z)], ["arg"]),
            }[self.part]
            base = f"{self.column}@{self.point}"
            return np.column_stack(parts[0]), [f"{base}.{p}" for p in parts[1]]
        if self.op == "span":
            col = [span(p) for p in values]
        elif self.op == "turaev":
            crossings = ds.column(CROSSING_COLUMN)
            col = [c - span(p) for p, c in zip(values, crossings)]
        else:
            col = [determinant_feature(p) for p in values]
        return np.asarray(col, dtype=float)[:, None], [name]


# ---------------------------------------------------------------------------
# specs and results


def _base_column(descriptor: str) -> str:
    if "(" in descriptor or "@" in descriptor:
        return Feature.parse(descriptor).column
    return descriptor


@dataclass(frozen=True, slots=True)
class ExperimentSpec:
    inputs: tuple[str, ...]
    output: str
    task: str
    runs: int = 1
    seed_base: int = 0

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(str(i) for i in self.inputs))
        if not 1 <= len(self.inputs) <= 3:
            raise ValueError("an experiment has between one and three inputs")
        if any(_base_column(i) == self.output for i in self.inputs):
            raise ValueError(f"output {self.output!r} is also an input")
        if self.task not in (nn.CLASSIFICATION, nn.REGRESSION):
            raise ValueError(f"unknown task {self.task!r}")
        if self.runs < 1:
            raise ValueError("runs must be positive")

    def key(self) -> str:
        return "&".join(self.inputs) + "->" + self.output


@dataclass(frozen=True)
class ResultRow:
    """One results-file line: inputs, output, accuracy, baseline, knot count."""

    inputs: tuple[str, ...]
    output: str
    accuracy: float
    baseline: float
    n_knots: int
    flags: tuple[str, ...] = ()

    def to_line(self) -> str:
        return "&".join([*self.inputs, self.output, repr(float(self.accuracy)), repr(float(self.baseline)), str(self.n_knots)])


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    accuracy: float
    per_run: tuple[float, ...]
    baseline: float
    n_knots: int
    flags: tuple[str, ...] = ()

    @property
    def inputs(self) -> tuple[str, ...]:
        return self.spec.inputs

    @property
    def output(self) -> str:
        return self.spec.output

    @property
    def display_accuracy(self) -> float:
        return max(0.0, self.accuracy)

    def to_row(self) -> ResultRow:
        return ResultRow(self.inputs, self.output, self.accuracy, self.baseline, self.n_knots, self.flags)

    def to_line(self) -> str:
        return self.to_row().to_line()


def derive_seed(seed_base: int, run: int, key: str) -> int:
    """64-bit seed from the base seed, run index and experiment descriptor."""
    h = hashlib.blake2b(f"{seed_base + run}|{key}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "little")


def make_spec(ds: Dataset, inputs: Sequence[str], output: str, runs: int = 1, seed_base: int = 0) -> ExperimentSpec:
    ds.require([output])
    return ExperimentSpec(tuple(inputs), output, infer_task(ds.kind(output)), runs, seed_base)


@dataclass
class Design:
    X: np.ndarray
    y: np.ndarray
    knot_ids: list[str]
    feature_names: list[str]
    label_offset: int
    num_classes: int | None
    data: Dataset


def build_design(ds: Dataset, spec: ExperimentSpec) -> Design:
    """Complete-row filter, task preprocessing and feature assembly."""
    feats = [Feature.parse(i) for i in spec.inputs]
    required = [c for f in feats for c in f.required_columns()] + [spec.output]
    d = complete_rows(ds, dict.fromkeys(required))
    offset = 0
    if spec.task == nn.REGRESSION:
        d = preprocess_output_regression(d, spec.output)
    else:
        d, offset = preprocess_output_classification(d, spec.output)
    blocks, names = [], []
    for f in feats:
        mat, nm = f.build(d)
        blocks.append(mat)
        names.extend(nm)
    X = np.hstack(blocks) if d.records else np.zeros((0, len(names)))
    y = np.asarray(d.column(spec.output), dtype=float if spec.task == nn.REGRESSION else np.int64)
    num_classes = None
    if spec.task == nn.CLASSIFICATION:
        num_classes = max(2, int(y.max()) + 1) if y.size else 2
    return Design(X, y, [r.knot_id for r in d.records], names, offset, num_classes, d)


def _design_baseline(design: Design, task: str) -> float:
    if task == nn.REGRESSION:
        return accuracy_regression(np.full_like(design.y, design.y.mean()), design.y)
    return Counter(design.y.tolist()).most_common(1)[0][1] / len(design.y)


def run_config(base: nn.NetworkConfig, design: Design, task: str, seed: int) -> nn.NetworkConfig:
    return replace(base, task=task, num_classes=design.num_classes, seed=seed)


def run_experiment(
    ds: Dataset,
    spec: ExperimentSpec,
    config: nn.NetworkConfig | None = None,
    min_knots: int = DEFAULT_MIN_KNOTS,
    keep_models: bool = False,
):
    """Train ``spec.runs`` networks and score each on its held-out split.

    Returns an :class:`ExperimentResult`; with ``keep_models=True`` returns
    ``(result, models, design)`` where ``models`` holds ``(net, test_idx)``.
    """
    config = config or nn.NetworkConfig(task=nn.REGRESSION)
    design = build_design(ds, spec)
    n = len(design.y)
    if n <= min_knots:
        raise InsufficientData(f"{spec.key()}: {n} knots, need more than {min_knots}")
    base = _design_baseline(design, spec.task)
    accs = []
    models = []
    for r in range(spec.runs):
        seed = derive_seed(spec.seed_base, r, spec.key())
        tr, te = nn.split_indices(n, config.train_fraction, seed)
        cfg = run_config(config, design, spec.task, seed)
        net = nn.train(design.X[tr], design.y[tr], cfg, label_offset=design.label_offset)
        pred = nn.predict(net, design.X[te])
        if spec.task == nn.CLASSIFICATION:
            accs.append(accuracy_classification(pred, design.y[te] + design.label_offset))
        else:
            accs.append(accuracy_regression(pred, design.y[te]))
        if keep_models:
            models.append((net, te))
    result = ExperimentResult(spec, float(np.mean(accs)), tuple(accs), base, n)
    if keep_models:
        return result, models, design
    return result


# ---------------------------------------------------------------------------
# enumeration


def _presence_masks(ds: Dataset, columns: Iterable[str]) -> dict[str, int]:
    masks = {}
    for c in columns:
        m = 0
        for i, r in enumerate(ds.records):
            if r.has(c):
                m |= 1 << i
        masks[c] = m
    return masks


def iter_experiments(
    ds: Dataset,
    candidate_inputs: Sequence[str],
    candidate_outputs: Sequence[str],
    max_inputs: int = 3,
    min_knots: int | None = DEFAULT_MIN_KNOTS,
    runs: int = 1,
    seed_base: int = 0,
) -> Iterator[ExperimentSpec]:
    """Lazily yield the specs :func:`enumerate_experiments` returns.

    ``min_knots=None`` disables the data filter.
    """
    ds.require(list(candidate_inputs) + list(candidate_outputs))
    inputs = list(dict.fromkeys(candidate_inputs))
    outputs = [o for o in dict.fromkeys(candidate_outputs) if ds.kind(o) is not InvariantKind.TEXT and ds.kind(o) is not InvariantKind.POLYNOMIAL_VECTOR]
    masks = _presence_masks(ds, set(inputs) | set(outputs)) if min_knots is not None else {}
    for out in outputs:
        task = infer_task(ds.kind(out))
        pool = [c for c in inputs if c != out]
        out_mask = 0
        if min_knots is not None:
            out_mask = masks[out]
            if task == nn.REGRESSION:
                out_mask &= ~sum(1 << i for i, r in enumerate(ds.records) if r.get(out) == 0)
        for k in range(1, max_inputs + 1):
            for combo in itertools.combinations(pool, k):
                if min_knots is not None:
                    m = out_mask
                    for c in combo:
                        m &= masks[c]
                    if m.bit_count() <= min_knots:
                        continue
                yield ExperimentSpec(combo, out, task, runs, seed_base)


def enumerate_experiments(
    ds: Dataset,
    candidate_inputs: Sequence[str],
    candidate_outputs: Sequence[str],
    max_inputs: int = 3,
    min_knots: int | None = DEFAULT_MIN_KNOTS,
    runs: int = 1,
    seed_base: int = 0,
) -> list[ExperimentSpec]:
    """All unordered input subsets of size 1..max_inputs for each output.

    Pairings that use the output as an input are skipped, as are specs with
    at most ``min_knots`` usable rows.
    """
    return list(iter_experiments(ds, candidate_inputs, candidate_outputs, max_inputs, min_knots, runs, seed_base))


def closed_form_count(n_columns: int, n_outputs: int, max_inputs: int = 3) -> int:
    """Unfiltered spec count when every output is also an input candidate."""
    return n_outputs * sum(math.comb(n_columns - 1, k) for k in range(1, max_inputs + 1))


# ---------------------------------------------------------------------------
# batch execution

_WORKER_DS: Dataset | None = None


def _worker_run(args):
    spec, config, min_knots = args
    try:
        return run_experiment(_WORKER_DS, spec, config, min_knots)
    except InsufficientData as exc:
        return exc


def run_many(
    ds: Dataset,
    specs: Iterable[ExperimentSpec],
    config: nn.NetworkConfig,
    min_knots: int = DEFAULT_MIN_KNOTS,
    workers: int = 1,
    sink: Callable[[ExperimentResult], None] | None = None,
) -> list[ExperimentResult]:
    """Run independent experiments, optionally in worker processes.

    Results reach ``sink`` in spec order from the calling process only.
    Experiments lacking data are logged and skipped.
    """
    global _WORKER_DS
    out = []
    jobs = ((s, config, min_knots) for s in specs)

    def _collect(res):
        if isinstance(res, InsufficientData):
            log.info("skipped: %s", res)
            return
        out.append(res)
        if sink is not None:
            sink(res)

    _WORKER_DS = ds
    try:
        if workers <= 1:
            for job in jobs:
                _collect(_worker_run(job))
        else:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(workers, mp_context=ctx) as pool:
                for res in pool.map(_worker_run, jobs, chunksize=1):
                    _collect(res)
    finally:
        _WORKER_DS = None
    return out


# ---------------------------------------------------------------------------
# pruning


def _inputs_key(inputs) -> frozenset:
    return frozenset(inputs)


def prune_results(
    results: Sequence,
    threshold: float = DEFAULT_PRUNE_THRESHOLD,
    require_weak_parts: bool = False,
) -> list:
    """Keep multi-input results that beat all of their input subsets.

    A k-input result (k >= 2) survives when its accuracy strictly exceeds
    every available lower-arity result on a subset of its inputs (same
    output) and exceeds ``threshold``. With ``require_weak_parts`` every
    single input must also score at most ``threshold`` on its own.
    Single-input results pass through. A result whose single-input results
    are missing is kept with the ``missing_subset`` flag and a
    :class:`MissingSubsetResult` warning.
    """
    index: dict[tuple, float] = {}
    for r in results:
        key = (_inputs_key(r.inputs), r.output)
        index[key] = max(index.get(key, -math.inf), r.accuracy)
    kept = []
    for r in results:
        k = len(r.inputs)
        if k < 2:
            kept.append(r)
            continue
        singles = [index.get((frozenset([i]), r.output)) for i in r.inputs]
        if any(s is None for s in singles):
            warnings.warn(f"missing single-input results for {r.inputs} -> {r.output}", MissingSubsetResult, stacklevel=2)
            kept.append(r if "missing_subset" in r.flags else replace(r, flags=(*r.flags, "missing_subset")))
            continue
        subset_accs = []
        for size in range(1, k):
            for sub in itertools.combinations(r.inputs, size):
                acc = index.get((frozenset(sub), r.output))
                if acc is not None:
                    subset_accs.append(acc)
        if r.accuracy <= max(subset_accs) or r.accuracy <= threshold:
            continue
        if require_weak_parts and any(s > threshold for s in singles):
            continue
        kept.append(r)
    return kept


# ---------------------------------------------------------------------------
# complex-plane scans


@dataclass(frozen=True)
class HeatmapGrid:
    step: float
    cells: dict = field(default_factory=dict)  # ComplexPoint -> mean accuracy
    corners: tuple = (complex(-1, -1), complex(1, 1))

    def __post_init__(self):
        for p in self.cells:
            if p.im < 0:
                raise ValueError(f"grid point {p} is in the lower half plane")

    def best(self) -> tuple[ComplexPoint, float]:
        """Highest-accuracy cell (NaN cells skipped, ties to the smallest (re, im))."""
        finite = [q for q in sorted(self.cells, key=lambda q: (q.re, q.im)) if not math.isnan(self.cells[q])]
        if not finite:
            raise ValueError("no finite cells")
        p = max(finite, key=lambda q: self.cells[q])
        return p, self.cells[p]


def grid_points(step: float = 0.1) -> list[ComplexPoint]:
    """Lattice points of the square with corners ±1±i that have im >= 0."""
    n = round(2.0 / step)
    if n < 1 or not math.isclose(n * step, 2.0, rel_tol=1e-9):
        raise ValueError(f"step {step} does not divide the side length 2")
    m = n // 2 if n % 2 == 0 else None
    if m is None:
        raise ValueError(f"step {step} does not put the real axis on the lattice")
    pts = []
    for i in range(n + 1):
        for j in range(m, n + 1):
            pts.append(ComplexPoint(round(-1.0 + i * step, 10), round(-1.0 + j * step, 10) + 0.0))
    return pts


def random_points(count: int, seed: int, decimals: int = 2) -> list[ComplexPoint]:
    """Random points of the upper half of the square, rounded to ``decimals``."""
    rng = np.random.default_rng(seed)
    return [
        ComplexPoint(round(float(rng.uniform(-1, 1)), decimals), round(float(rng.uniform(0, 1)), decimals))
        for _ in range(count)
    ]


def evaluation_spec(ds: Dataset, column: str, point: ComplexPoint, output: str, runs: int, seed_base: int, part: str = "reim") -> ExperimentSpec:
    return make_spec(ds, [str(Feature(column, "evaluate", point, part))], output, runs, seed_base)


def scan_grid(
    ds: Dataset,
    polynomial_column: str,
    output: str,
    step: float = 0.1,
    runs: int = 5,
    config: nn.NetworkConfig | None = None,
    min_knots: int = 0,
    seed_base: int = 0,
    points: Sequence[ComplexPoint] | None = None,
    workers: int = 1,
    progress: Callable[[ComplexPoint, float], None] | None = None,
) -> HeatmapGrid:
    """Mean accuracy of single-evaluation experiments over the upper half square.

    Every cell's seeds derive from its own descriptor, so cells can run in
    any order or in parallel with identical results. A pole at t = 0 is
    stored as NaN.
    """
    if ds.kind(polynomial_column) is not InvariantKind.POLYNOMIAL_VECTOR:
        raise ValueError(f"{polynomial_column!r} is not a polynomial column")
    sample = next((r.get(polynomial_column) for r in ds.records if r.has(polynomial_column)), None)
    if sample is not None and sample.variable_count != 1:
        raise ValueError("evaluation scans need a single-variable polynomial")
    pts = list(points) if points is not None else grid_points(step)
    # t = 0 is a pole once any polynomial has a negative exponent; keep the cell as NaN
    negative = any(p.min_degree < 0 for p in ds.column(polynomial_column) if p is not None and not p.is_zero())
    cells = {p: math.nan for p in pts if negative and complex(p) == 0}
    specs = [evaluation_spec(ds, polynomial_column, p, output, runs, seed_base) for p in pts if p not in cells]

    def sink(res: ExperimentResult):
        p = Feature.parse(res.inputs[0]).point
        cells[p] = res.accuracy
        if progress:
            progress(p, res.accuracy)

    run_many(ds, specs, config or nn.NetworkConfig(task=nn.REGRESSION), min_knots, workers, sink)
    return HeatmapGrid(step, cells)


# ---------------------------------------------------------------------------
# grouped means


@dataclass(frozen=True)
class MeanTableRow:
    value: int
    mean: float
    stddev: float
    count: int


@dataclass(frozen=True)
class MeanTable:
    group_by: str
    target: str
    rows: tuple[MeanTableRow, ...]
    predictor_accuracy: float
    baseline: float


def mean_table(ds: Dataset, group_by: str, target: str) -> MeanTable:
    """Per-group mean and sample standard deviation of ``target``.

    Also scores the predictor that answers each knot with its group mean,
    next to the global-mean baseline on the same rows.
    """
    ds.require([group_by, target])
    d = preprocess_output_regression(complete_rows(ds, [group_by, target]), target)
    groups: dict = defaultdict(list)
    for r in d.records:
        groups[r.get(group_by)].append(float(r.get(target)))
    if not groups:
        raise InsufficientData(f"no rows with both {group_by!r} and {target!r}")
    rows = []
    means = {}
    for value in sorted(groups):
        vals = np.asarray(groups[value])
        means[value] = float(vals.mean())
        sd = float(vals.std(ddof=1)) if len(vals) > 1 else 0.0
        rows.append(MeanTableRow(value, means[value], sd, len(vals)))
    actual = np.array([float(r.get(target)) for r in d.records])
    pred = np.array([means[r.get(group_by)] for r in d.records])
    acc = accuracy_regression(pred, actual)
    base = accuracy_regression(np.full_like(actual, actual.mean()), actual)
    return MeanTable(group_by, target, tuple(rows), acc, base)


# ---------------------------------------------------------------------------
# results files and manifests


def parse_result_line(line: str, line_no: int = 0) -> ResultRow:
    fields = line.strip().split("&")
    if not 5 <= len(fields) <= 7:
        raise MalformedResultsLine(line_no, line, f"expected 5-7 fields, found {len(fields)}")
    *inputs, output, acc, base, n = (f.strip() for f in fields)
    try:
        return ResultRow(tuple(inputs), output, float(acc), float(base), int(n))
    except ValueError as exc:
        raise MalformedResultsLine(line_no, line, str(exc)) from None


def read_results(path) -> list[ResultRow]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, 1):
            if line.strip() and not line.lstrip().startswith("#"):
                rows.append(parse_result_line(line, no))
    return rows


def write_results(path, results: Iterable, append: bool = True) -> None:
    with open(path, "a" if append else "w", encoding="utf-8") as fh:
        for r in results:
            fh.write(r.to_line() + "\n")


def parse_manifest_line(line: str, line_no: int = 0) -> tuple[tuple[str, ...], str]:
    """``k input1[,input2[,input3]] output``"""
    parts = line.split()
    if len(parts) != 3:
        raise MalformedResultsLine(line_no, line, "expected 'k inputs output'")
    k, ins, out = parts
    inputs = tuple(i for i in ins.split(",") if i)
    if not k.isdigit() or int(k) != len(inputs):
        raise MalformedResultsLine(line_no, line, f"input count {k!r} does not match {len(inputs)} inputs")
    return inputs, out


def read_manifest(path) -> list[tuple[tuple[str, ...], str]]:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                entries.append(parse_manifest_line(line, no))
    return entries


def write_heatmap(grid: HeatmapGrid, path) -> None:
    from .report import emit_heatmap_plot_data

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_heatmap_plot_data(grid))


__all__ = [
    "ExperimentResult",
    "ExperimentSpec",
    "Feature",
    "HeatmapGrid",
    "ResultRow",
    "accuracy_classification",
    "accuracy_regression",
    "baseline",
    "enumerate_experiments",
    "mean_table",
    "prune_results",
    "run_experiment",
    "scan_grid",
]
