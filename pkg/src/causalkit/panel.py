"""Aligned multivariate time series and the preprocessing transforms."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import (
    ConfigError,
    DataError,
    DuplicateColumnName,
    EmptyFile,
    LengthTooShort,
    NonPositiveValue,
    OutOfRange,
    ParseError,
    UnknownColumn,
)


def _index_key(label):
    try:
        return (0, float(label))
    except (TypeError, ValueError):
        return (1, str(label))


@dataclass(frozen=True)
class TimeSeriesPanel:
    """Named, equally long, finite real-valued columns with an optional index.

    Lag arithmetic everywhere in the package is positional; ``index`` only
    annotates output.
    """

    columns: Mapping[str, np.ndarray]
    index: Optional[tuple] = None
    _length: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cols = {}
        length = None
        for name, values in self.columns.items():
            if not isinstance(name, str) or not name:
                raise DataError("column names must be non-empty strings")
            arr = np.array(values, dtype=float)
            if arr.ndim != 1:
                raise DataError(f"column {name!r} is not one-dimensional")
            if length is None:
                length = arr.shape[0]
            elif arr.shape[0] != length:
                raise DataError(
                    f"column {name!r} has length {arr.shape[0]}, expected {length}"
                )
            if not np.all(np.isfinite(arr)):
                raise DataError(f"column {name!r} contains non-finite values")
            arr.setflags(write=False)
            cols[name] = arr
        if not cols:
            raise DataError("a panel needs at least one column")
        if length < 1:
            raise DataError("a panel needs at least one row")
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "_length", length)
        if self.index is not None:
            idx = tuple(self.index)
            if len(idx) != length:
                raise DataError(f"index has {len(idx)} labels for {length} rows")
            keys = [_index_key(v) for v in idx]
            if any(a >= b for a, b in zip(keys, keys[1:])):
                raise DataError("index labels must be strictly increasing")
            object.__setattr__(self, "index", idx)

    def __len__(self):
        return self._length

    @property
    def names(self) -> list[str]:
        return list(self.columns)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise UnknownColumn(f"unknown column {name!r}") from None

    def array(self, names: Sequence[str]) -> np.ndarray:
        """Stack the named columns into an ``(n, len(names))`` array."""
        if not names:
            return np.empty((len(self), 0))
        return np.column_stack([self.column(n) for n in names])

    def replace(self, **updates: np.ndarray) -> "TimeSeriesPanel":
        """Return a new panel with some columns swapped out (same length)."""
        cols = dict(self.columns)
        for name, values in updates.items():
            self.column(name)
            cols[name] = values
        return TimeSeriesPanel(cols, self.index)

    def select(self, names: Sequence[str]) -> "TimeSeriesPanel":
        return TimeSeriesPanel({n: self.column(n) for n in names}, self.index)

    def label(self, row: int):
        return self.index[row] if self.index is not None else row

    def to_csv(self, path, delimiter: str = ",", index_name: str = "index") -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
            header = ([index_name] if self.index is not None else []) + self.names
            writer.writerow(header)
            data = self.array(self.names)
            for i in range(len(self)):
                row = [repr(float(v)) for v in data[i]]
                if self.index is not None:
                    row.insert(0, self.index[i])
                writer.writerow(row)


def load_csv(path, delimiter: str = ",", index_col: bool = False) -> TimeSeriesPanel:
    """Read a panel from a delimited text file.

    The first line is the header. With ``index_col`` the first column holds
    opaque, strictly increasing row labels. Every other cell must parse as a
    real number; rows are numbered from 1 (first data row) in errors.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh, delimiter=delimiter) if r]
    if not rows:
        raise EmptyFile(f"{path} is empty")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if not body:
        raise EmptyFile(f"{path} has a header but no data rows")
    names = header[1:] if index_col else header
    if any(not n for n in names):
        raise DataError("every column needs a non-empty header name")
    seen = set()
    for n in names:
        if n in seen:
            raise DuplicateColumnName(f"duplicate column name {n!r}")
        seen.add(n)

    offset = 1 if index_col else 0
    data = np.empty((len(body), len(names)))
    labels = []
    for r, row in enumerate(body, start=1):
        if len(row) != len(header):
            missing = names[len(row) - offset] if len(row) < len(header) else None
            raise ParseError(r, missing, None)
        if index_col:
            labels.append(row[0].strip())
        for c, name in enumerate(names):
            cell = row[c + offset].strip()
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(r, name, cell) from None
            if not math.isfinite(v):
                raise ParseError(r, name, cell)
            data[r - 1, c] = v
    return TimeSeriesPanel(
        {n: data[:, j] for j, n in enumerate(names)},
        tuple(labels) if index_col else None,
    )


def _drop_first(panel: TimeSeriesPanel, cols: dict) -> TimeSeriesPanel:
    index = panel.index[1:] if panel.index is not None else None
    return TimeSeriesPanel(cols, index)


def log_returns(panel: TimeSeriesPanel, columns: Optional[Iterable[str]] = None) -> TimeSeriesPanel:
    """Replace the selected columns by ``ln(c_t / c_{t-1})``.

    Unselected columns lose their first row so the panel stays rectangular.
    """
    if len(panel) < 2:
        raise LengthTooShort("log returns need at least two rows")
    selected = panel.names if columns is None else list(columns)
    for name in selected:
        values = panel.column(name)
        bad = np.flatnonzero(values <= 0)
        if bad.size:
            raise NonPositiveValue(name, int(bad[0]))
    cols = {}
    for name in panel.names:
        v = panel.column(name)
        cols[name] = np.log(v[1:] / v[:-1]) if name in selected else v[1:]
    return _drop_first(panel, cols)


def demean(panel: TimeSeriesPanel) -> TimeSeriesPanel:
    return TimeSeriesPanel(
        {n: v - v.mean() for n, v in panel.columns.items()}, panel.index
    )


def detrend(panel: TimeSeriesPanel) -> TimeSeriesPanel:
    """Subtract the per-column least-squares line over the time axis 0..n-1."""
    n = len(panel)
    if n < 2:
        raise LengthTooShort("detrending needs at least two rows")
    t = np.arange(n, dtype=float)
    tc = t - t.mean()
    cols = {}
    for name, v in panel.columns.items():
        slope = np.dot(tc, v - v.mean()) / np.dot(tc, tc)
        cols[name] = v - v.mean() - slope * tc
    return TimeSeriesPanel(cols, panel.index)


def difference(panel: TimeSeriesPanel) -> TimeSeriesPanel:
    if len(panel) < 2:
        raise LengthTooShort("differencing needs at least two rows")
    return _drop_first(panel, {n: np.diff(v) for n, v in panel.columns.items()})


def window(panel: TimeSeriesPanel, start: int, length: int) -> TimeSeriesPanel:
    if start < 0 or length < 1 or start + length > len(panel):
        raise OutOfRange(
            f"window [{start}, {start + length}) outside panel of length {len(panel)}"
        )
    stop = start + length
    index = panel.index[start:stop] if panel.index is not None else None
    return TimeSeriesPanel({n: v[start:stop] for n, v in panel.columns.items()}, index)


PREPROCESSORS = {
    "log-returns": log_returns,
    "demean": demean,
    "detrend": detrend,
    "difference": difference,
}


def preprocess(panel: TimeSeriesPanel, steps: Sequence[str]) -> TimeSeriesPanel:
    """Apply named transforms in order (see ``PREPROCESSORS``)."""
    for step in steps:
        try:
            fn = PREPROCESSORS[step]
        except KeyError:
            raise ConfigError(
                f"unknown preprocessing step {step!r}; choose from {sorted(PREPROCESSORS)}"
            ) from None
        panel = fn(panel)
    return panel
