"""Named-column numeric tables and their CSV / JSON serialisation.

Floats are written with ``repr``, which round-trips IEEE doubles exactly.
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

SCHEMA_VERSION = 1


@dataclass
class SampleTable:
    column_names: Tuple[str, ...]
    rows: List[Tuple[float, ...]] = field(default_factory=list)

    def __post_init__(self):
        self.column_names = tuple(self.column_names)
        self.rows = [tuple(float(v) for v in r) for r in self.rows]
        n = len(self.column_names)
        for r in self.rows:
            if len(r) != n:
                raise ValueError(f"row {r} has {len(r)} values for {n} columns")
            if not all(math.isfinite(v) for v in r):
                raise ValueError(f"non-finite value in row {r}")

    @classmethod
    def from_columns(cls, names: Sequence[str], *columns) -> "SampleTable":
        cols = [np.asarray(c, dtype=float).ravel() for c in columns]
        return cls(tuple(names), list(zip(*(c.tolist() for c in cols))))

    def column(self, name: str) -> np.ndarray:
        i = self.column_names.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.column_names)
        for r in self.rows:
            writer.writerow([repr(v) for v in r])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SampleTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        return cls(tuple(header), [tuple(float(v) for v in row) for row in reader if row])

    def to_json(self) -> str:
        return json.dumps({"columns": list(self.column_names), "rows": [list(r) for r in self.rows]})

    @classmethod
    def from_json(cls, text: str) -> "SampleTable":
        obj = json.loads(text)
        return cls(tuple(obj["columns"]), [tuple(r) for r in obj["rows"]])

    def dumps(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json() + "\n"
        raise ValueError(f"unknown format {fmt!r}")
