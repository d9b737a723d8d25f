"""JSON dataset and fit files, plus a CSV importer for all-linear data.

Dataset file::

    {"predictors": 1,
     "observations": [{"y": {"dist": "linear", "a": 2, "b": 3},
                       "x": [{"dist": "linear", "a": 0, "b": 1}]}, ...]}
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import ValidationError
from .regress import Dataset, Observation
from .udist import Linear, from_literal


class ParseError(ValidationError):
    """The file is not valid JSON (or CSV); carries the location."""


def _load_json(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason} at byte {exc.start})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dataset_from_json(doc) -> Dataset:
    """Validate a decoded dataset document."""
    if not isinstance(doc, dict):
        raise ValidationError("dataset document must be a JSON object")
    p = doc.get("predictors")
    if isinstance(p, bool) or not isinstance(p, int) or p < 0:
        raise ValidationError(f"'predictors' must be a non-negative integer, got {p!r}")
    rows = doc.get("observations")
    if not isinstance(rows, list):
        raise ValidationError("'observations' must be a list")
    if not rows:
        raise ValidationError("dataset has no observations")
    observations = []
    for i, row in enumerate(rows):
        if not isinstance(row, dict) or "y" not in row or "x" not in row:
            raise ValidationError(f"observation {i}: expected an object with 'y' and 'x'")
        xs = row["x"]
        if not isinstance(xs, list) or len(xs) != p:
            raise ValidationError(f"observation {i}: field 'x' must list {p} distributions")
        try:
            y = from_literal(row["y"])
        except ValidationError as exc:
            raise ValidationError(f"observation {i}: field 'y': {exc}") from None
        x = []
        for j, lit in enumerate(xs):
            try:
                x.append(from_literal(lit))
            except ValidationError as exc:
                raise ValidationError(f"observation {i}: field 'x[{j}]': {exc}") from None
        observations.append(Observation(y, tuple(x)))
    return Dataset(p, tuple(observations))


def dataset_to_json(data: Dataset) -> dict:
    return {
        "predictors": data.p,
        "observations": [
            {"y": o.y.to_literal(), "x": [d.to_literal() for d in o.x]} for o in data.observations
        ],
    }


def parse_dataset(path) -> Dataset:
    """Read a dataset file; ``.csv`` files go through :func:`parse_csv_dataset`."""
    if str(path).lower().endswith(".csv"):
        return parse_csv_dataset(path)
    return dataset_from_json(_load_json(path))


def write_dataset(data: Dataset, path) -> None:
    Path(path).write_text(json.dumps(dataset_to_json(data), indent=2) + "\n", encoding="utf-8")


def parse_csv_dataset(path) -> Dataset:
    """All-linear data with columns ``y_a, y_b, x1_a, x1_b, ...``."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            body = list(enumerate(reader, start=2))
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    if not header:
        raise ParseError(f"{path}: empty CSV file")
    header = [h.strip() for h in header]
    if len(header) < 2 or len(header) % 2 or header[:2] != ["y_a", "y_b"]:
        raise ParseError(f"{path}: header must start with y_a,y_b followed by xJ_a,xJ_b pairs")
    p = len(header) // 2 - 1
    expected = ["y_a", "y_b"] + [f"x{j}_{e}" for j in range(1, p + 1) for e in "ab"]
    if header != expected:
        raise ParseError(f"{path}: expected header {','.join(expected)}")
    observations = []
    for lineno, row in body:
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(f"{path}: line {lineno}: expected {len(header)} columns, got {len(row)}")
        try:
            values = [float(v) for v in row]
        except ValueError as exc:
            raise ParseError(f"{path}: line {lineno}: {exc}") from None
        i = len(observations)
        try:
            y = Linear(values[0], values[1])
        except ValidationError as exc:
            raise ValidationError(f"observation {i}: field 'y': {exc}") from None
        x = []
        for j in range(p):
            try:
                x.append(Linear(values[2 + 2 * j], values[3 + 2 * j]))
            except ValidationError as exc:
                raise ValidationError(f"observation {i}: field 'x[{j}]': {exc}") from None
        observations.append(Observation(y, tuple(x)))
    if not observations:
        raise ValidationError("dataset has no observations")
    return Dataset(p, tuple(observations))


@dataclass(frozen=True)
class FitRecord:
    """Contents of a fit file."""

    model: str
    predictors: int
    loss: str
    beta: tuple[float, ...]
    objective_value: float
    converged: bool
    e_hat: float
    sigma2_hat: float
    quadrature: dict = field(default_factory=dict)
    optimizer: dict = field(default_factory=dict)
    seed: int = 42
    strict_theorem_flip: bool = False

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["beta"] = list(self.beta)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, doc) -> "FitRecord":
        if not isinstance(doc, dict):
            raise ValidationError("fit document must be a JSON object")
        names = {f for f in cls.__dataclass_fields__}
        missing = {"model", "predictors", "loss", "beta", "objective_value", "e_hat", "sigma2_hat"} - set(doc)
        if missing:
            raise ValidationError(f"fit file is missing field(s) {sorted(missing)}")
        unknown = set(doc) - names
        if unknown:
            raise ValidationError(f"fit file has unknown field(s) {sorted(unknown)}")
        kwargs = dict(doc)
        beta = kwargs["beta"]
        if not isinstance(beta, list) or not all(isinstance(b, (int, float)) and not isinstance(b, bool) for b in beta):
            raise ValidationError("'beta' must be a list of numbers")
        kwargs["beta"] = tuple(float(b) for b in beta)
        kwargs.setdefault("converged", True)
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ValidationError(f"invalid fit file: {exc}") from None


def write_fit(record: FitRecord, path) -> None:
    Path(path).write_text(record.dumps(), encoding="utf-8")


def parse_fit(path) -> FitRecord:
    return FitRecord.from_json(_load_json(path))

