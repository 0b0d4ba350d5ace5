"""CSV ingestion, prediction/report persistence, accuracy scoring.

File conventions: UTF-8, comma separator, '.' decimal point, LF or CRLF
line endings, optional single header line. A ``.gz`` suffix switches on
gzip decompression. Labels live in a named column (default "label") when
there is a header, or in a zero-based column index when there is not.
"""

from __future__ import annotations

import csv
import gzip
import io
import json
from dataclasses import dataclass, field
from math import isfinite
from typing import Optional

import numpy as np

from .classifier import LabeledDataset
from .errors import InvalidInputError, ParseError


@dataclass(frozen=True)
class DatasetFile:
    """How to read one CSV: path, header presence, where the labels are."""

    path: str
    has_header: bool = True
    label_column: str = "label"
    label_col_index: Optional[int] = None


@dataclass
class TaskReport:
    """Everything the CLI writes about one run, JSON-serializable as-is."""

    accuracy: Optional[float]
    per_class_accuracy: Optional[list]
    n_source: int
    n_target: int
    num_classes: int
    wall_time_ms: Optional[dict]
    config: dict
    label_dictionary: dict = field(default_factory=dict)


def _open_text(path: str):
    if str(path).endswith(".gz"):
        return gzip.open(path, "rt", encoding="utf-8-sig", newline="")
    return open(path, "r", encoding="utf-8-sig", newline="")


def _read_rows(path: str) -> list[list[str]]:
    with _open_text(path) as handle:
        rows = [row for row in csv.reader(handle) if row]
    if not rows:
        raise ParseError(f"{path}: empty file")
    return rows


def _parse_cell(raw: str, path: str, row: int, col_name: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(
            f"{path}: row {row}, column {col_name}: not a number: {raw!r}"
        ) from None
    if not isfinite(value):
        raise ParseError(
            f"{path}: row {row}, column {col_name}: non-finite value {raw!r}"
        )
    return value


def _column_names(rows: list[list[str]], f: DatasetFile) -> tuple[list[str], list[list[str]]]:
    if f.has_header:
        return [name.strip() for name in rows[0]], rows[1:]
    return [f"col{i}" for i in range(len(rows[0]))], rows


def _label_position(names: list[str], f: DatasetFile, path: str) -> int:
    if f.has_header:
        if f.label_column not in names:
            raise ParseError(
                f"{path}: label column {f.label_column!r} not found in header {names}"
            )
        return names.index(f.label_column)
    if f.label_col_index is None:
        raise ParseError(f"{path}: headerless file needs a label column index")
    if not 0 <= f.label_col_index < len(names):
        raise ParseError(
            f"{path}: label column index {f.label_col_index} out of range "
            f"for {len(names)} columns"
        )
    return f.label_col_index


def _parse_matrix(
    data_rows: list[list[str]],
    names: list[str],
    skip: Optional[int],
    path: str,
    first_row_number: int,
) -> np.ndarray:
    width = len(names)
    feature_cols = [i for i in range(width) if i != skip]
    out = np.empty((len(data_rows), len(feature_cols)))
    for r, row in enumerate(data_rows):
        row_number = first_row_number + r
        if len(row) != width:
            raise ParseError(
                f"{path}: row {row_number}: expected {width} columns, got {len(row)}"
            )
        for c, i in enumerate(feature_cols):
            out[r, c] = _parse_cell(row[i], path, row_number, names[i])
    return out


def load_labeled(f: DatasetFile) -> tuple[LabeledDataset, list[str]]:
    """Load features plus labels; labels are densified to [0, C).

    Returns the dataset and the label vocabulary in first-appearance
    order (dense id == list position).
    """
    rows = _read_rows(f.path)
    names, data_rows = _column_names(rows, f)
    if not data_rows:
        raise ParseError(f"{f.path}: no data rows")
    pos = _label_position(names, f, f.path)
    first = 2 if f.has_header else 1
    features = _parse_matrix(data_rows, names, pos, f.path, first)

    vocabulary: dict[str, int] = {}
    labels = np.empty(len(data_rows), dtype=np.int64)
    for r, row in enumerate(data_rows):
        raw = row[pos]
        if raw not in vocabulary:
            vocabulary[raw] = len(vocabulary)
        labels[r] = vocabulary[raw]
    dataset = LabeledDataset(features=features, labels=labels, num_classes=len(vocabulary))
    return dataset, list(vocabulary)


def load_unlabeled(f: DatasetFile) -> np.ndarray:
    """Load a pure feature matrix; every column must be numeric."""
    rows = _read_rows(f.path)
    names, data_rows = _column_names(rows, f)
    if not data_rows:
        raise ParseError(f"{f.path}: no data rows")
    first = 2 if f.has_header else 1
    return _parse_matrix(data_rows, names, None, f.path, first)


def load_labels(f: DatasetFile) -> list[str]:
    """Read just the label column of a CSV; other columns are ignored."""
    rows = _read_rows(f.path)
    names, data_rows = _column_names(rows, f)
    if not data_rows:
        raise ParseError(f"{f.path}: no data rows")
    pos = _label_position(names, f, f.path)
    first = 2 if f.has_header else 1
    out = []
    for r, row in enumerate(data_rows):
        if pos >= len(row):
            raise ParseError(
                f"{f.path}: row {first + r}: expected at least {pos + 1} columns, "
                f"got {len(row)}"
            )
        out.append(row[pos])
    return out


def save_predictions(labels, label_names: list[str], path: str):
    """Write "index,label" rows in input order using the original vocabulary."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("index,label\n")
        for i, dense in enumerate(labels):
            handle.write(f"{i},{label_names[int(dense)]}\n")


def load_predictions(path: str) -> list[str]:
    """Read labels back from a predictions CSV ("index,label")."""
    rows = _read_rows(path)
    if [name.strip() for name in rows[0]] != ["index", "label"]:
        raise ParseError(f"{path}: expected header 'index,label', got {rows[0]}")
    out = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise ParseError(f"{path}: row {r}: expected 2 columns, got {len(row)}")
        out.append(row[1])
    return out


def save_features(x, path: str, column_names: Optional[list[str]] = None):
    """Write a feature matrix as CSV with exact (round-trippable) floats."""
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise InvalidInputError("save_features expects a 2-D matrix")
    names = column_names if column_names is not None else [f"f{i}" for i in range(a.shape[1])]
    if len(names) != a.shape[1]:
        raise InvalidInputError(f"{len(names)} column names for {a.shape[1]} columns")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(names) + "\n")
        for row in a:
            handle.write(",".join(repr(float(v)) for v in row) + "\n")


def score_predictions(
    predicted: list[str], truth: list[str], label_names: list[str]
) -> tuple[float, list]:
    """Accuracy and per-class accuracy, compared as vocabulary strings.

    The per-class vector is indexed by dense class id; classes absent from
    the truth get None.
    """
    if len(predicted) != len(truth):
        raise InvalidInputError(
            f"{len(predicted)} predictions vs {len(truth)} truth labels"
        )
    pred = np.asarray(predicted, dtype=object)
    true = np.asarray(truth, dtype=object)
    hits = pred == true
    accuracy = float(hits.mean()) if len(truth) else 0.0
    per_class: list = []
    for name in label_names:
        mask = true == name
        per_class.append(float(hits[mask].mean()) if mask.any() else None)
    return accuracy, per_class


def write_report(report: TaskReport, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(report.__dict__, handle, indent=2)
        handle.write("\n")


def render_report(report: TaskReport) -> str:
    buf = io.StringIO()
    json.dump(report.__dict__, buf, indent=2)
    return buf.getvalue()
