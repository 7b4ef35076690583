"""On-disk formats: problem JSON, dataset CSV, model JSON, canonical reports.

Conventions:
  * an interval is the two-element array ``[lo, hi]``;
  * polynomial coefficients are ascending (``[c0, c1, c2]`` is c0 + c1 x + c2 x^2);
  * dataset CSV columns are ``f1_lo, f1_hi, ..., fn_lo, fn_hi[, label]``;
  * reports are serialized with sorted keys, two-space indent, and no
    timestamps, so identical runs produce byte-identical files.

All malformed input is reported as :class:`ParseError`.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from enum import Enum
from pathlib import Path

import numpy as np
from numpy.polynomial import polynomial as P

from .calculus import Box, IVF
from .config import Config
from .exceptions import ParseError
from .intervals import Interval, IntervalVector
from .optimality import FeasibleRegion, IOPInstance
from .svm import SVMDataset, SVMSolution

MODEL_SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# canonical report encoding
# ---------------------------------------------------------------------------

def encode(obj):
    """Recursively convert package objects into plain JSON-serializable data."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, Interval):
        return [obj.lo, obj.hi]
    if isinstance(obj, IntervalVector):
        return [[iv.lo, iv.hi] for iv in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.floating, np.integer)):
        return encode(obj.item())
    if isinstance(obj, np.ndarray):
        return [encode(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [encode(v) for v in seq]
    return repr(obj)


def dump_report(obj) -> str:
    """Canonical JSON text: sorted keys, stable float repr, trailing newline."""
    return json.dumps(encode(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# intervals and function specs
# ---------------------------------------------------------------------------

def load_interval(obj) -> Interval:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)):
        raise ParseError(f"an interval must be [lo, hi], got {obj!r}")
    try:
        return Interval(float(obj[0]), float(obj[1]))
    except ValueError as e:
        raise ParseError(str(e)) from e


def _coeffs(obj, what: str) -> np.ndarray:
    if (not isinstance(obj, (list, tuple)) or not obj
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)):
        raise ParseError(f"{what} must be a nonempty list of ascending coefficients")
    return np.asarray(obj, float)


def load_function(spec, domain=None) -> IVF:
    """Function spec -> IVF.

    Kinds: ``polynomial`` (endpoint coefficient lists ``lower``/``upper``),
    ``scaled_polynomial`` (``coeffs`` times interval ``weight``), ``gallery``
    (a registered function ``id``).
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError(f"function spec must be an object with a 'kind', got {spec!r}")
    kind = spec["kind"]
    if kind == "polynomial":
        if "lower" not in spec or "upper" not in spec:
            raise ParseError("polynomial spec needs 'lower' and 'upper' coefficient lists")
        lc = _coeffs(spec["lower"], "'lower'")
        uc = _coeffs(spec["upper"], "'upper'")
        return IVF.from_polynomials(lc, uc, domain=domain,
                                    name=spec.get("name", "polynomial"))
    if kind == "scaled_polynomial":
        if "coeffs" not in spec or "weight" not in spec:
            raise ParseError("scaled_polynomial spec needs 'coeffs' and interval 'weight'")
        c = _coeffs(spec["coeffs"], "'coeffs'")
        w = load_interval(spec["weight"])
        from .gallery import scaled
        return scaled(lambda x: float(P.polyval(x[0], c)), w, 1,
                      spec.get("name", "scaled_polynomial"), domain)
    if kind == "gallery":
        if "id" not in spec:
            raise ParseError("gallery spec needs an 'id'")
        from .gallery import get_function
        f = get_function(spec["id"])
        if domain is not None and f.domain is None:
            f.domain = domain
        return f
    raise ParseError(f"unknown function kind {kind!r}")


def load_region(spec) -> FeasibleRegion:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError(f"region spec must be an object with a 'kind', got {spec!r}")
    if spec["kind"] == "box":
        if "lower" not in spec or "upper" not in spec:
            raise ParseError("box region needs 'lower' and 'upper' arrays")
        try:
            return FeasibleRegion.from_box(
                Box(tuple(float(v) for v in spec["lower"]),
                    tuple(float(v) for v in spec["upper"])))
        except (TypeError, ValueError) as e:
            raise ParseError(f"bad box region: {e}") from e
    if spec["kind"] == "whole":
        dim = spec.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise ParseError("whole-space region needs a positive integer 'dim'")
        return FeasibleRegion.whole(dim)
    raise ParseError(f"unknown region kind {spec['kind']!r}")


def load_problem(source) -> IOPInstance:
    """Problem JSON (path, file-like, or dict) -> IOPInstance.

    Layout: ``{"name": ..., "objective": fnspec, "constraints": [fnspec...],
    "region": regionspec}``; ``constraints`` may be omitted.  There is also a
    shorthand ``{"problem": "gallery-name"}`` for registered instances.
    """
    data = _load_json(source, "problem")
    if "problem" in data:
        from .gallery import get_problem
        return get_problem(data["problem"])
    if "objective" not in data or "region" not in data:
        raise ParseError("problem needs 'objective' and 'region' (or a gallery 'problem')")
    region = load_region(data["region"])
    domain = region.box if region.box is not None else None
    objective = load_function(data["objective"], domain=None)
    if objective.dim != region.dim:
        raise ParseError(f"objective dimension {objective.dim} != region dimension {region.dim}")
    constraints = []
    for i, cs in enumerate(data.get("constraints", [])):
        g = load_function(cs, domain=None)
        if g.dim != region.dim:
            raise ParseError(f"constraint {i} dimension {g.dim} != region dimension {region.dim}")
        constraints.append(g)
    name = data.get("name", "problem")
    if not isinstance(name, str):
        raise ParseError("'name' must be a string")
    try:
        return IOPInstance(name, objective, tuple(constraints), region)
    except ValueError as e:
        raise ParseError(str(e)) from e


def _load_json(source, what: str) -> dict:
    if isinstance(source, dict):
        data = source
    else:
        try:
            if hasattr(source, "read"):
                data = json.load(source)
            else:
                with open(source) as fh:
                    data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"cannot read {what} {source!r}: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{what} file must hold a JSON object")
    return data


# ---------------------------------------------------------------------------
# datasets
# ---------------------------------------------------------------------------

def dataset_header(n_features: int, labeled: bool = True) -> list:
    cols = []
    for j in range(1, n_features + 1):
        cols.extend([f"f{j}_lo", f"f{j}_hi"])
    if labeled:
        cols.append("label")
    return cols


def load_dataset_csv(source) -> SVMDataset:
    """CSV with columns ``f1_lo, f1_hi, ..., fn_lo, fn_hi[, label]``."""
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        try:
            with open(source, newline="") as fh:
                rows = list(csv.reader(fh))
        except OSError as e:
            raise ParseError(f"cannot read dataset {source!r}: {e}") from e
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("dataset CSV is empty")
    header = [c.strip() for c in rows[0]]
    labeled = header and header[-1] == "label"
    feat_cols = header[:-1] if labeled else header
    if len(feat_cols) == 0 or len(feat_cols) % 2 != 0:
        raise ParseError(f"header must pair lo/hi columns, got {header}")
    n = len(feat_cols) // 2
    if feat_cols != dataset_header(n, labeled=False):
        raise ParseError(f"header must be {dataset_header(n, labeled)} , got {header}")
    lo, hi, labels = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            vals = [float(v) for v in row[:2 * n]]
        except ValueError as e:
            raise ParseError(f"line {lineno}: {e}") from e
        if any(not math.isfinite(v) for v in vals):
            raise ParseError(f"line {lineno}: non-finite feature value")
        lo.append(vals[0::2])
        hi.append(vals[1::2])
        if any(a > b for a, b in zip(lo[-1], hi[-1])):
            raise ParseError(f"line {lineno}: feature lower bound exceeds upper bound")
        if labeled:
            raw = row[-1].strip()
            if raw not in ("-1", "1", "+1"):
                raise ParseError(f"line {lineno}: label must be -1 or +1, got {raw!r}")
            labels.append(int(raw))
    if not lo:
        raise ParseError("dataset CSV has a header but no rows")
    return SVMDataset.from_arrays(lo, hi, labels if labeled else None)


def save_dataset_csv(dataset: SVMDataset, path) -> None:
    labeled = dataset.labels is not None
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(dataset_header(dataset.n_features, labeled))
        for i, x in enumerate(dataset.samples):
            row = []
            for iv in x:
                row.extend([repr(iv.lo), repr(iv.hi)])
            if labeled:
                row.append(str(dataset.labels[i]))
            writer.writerow(row)


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

def save_model(solution: SVMSolution, path) -> None:
    payload = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "n_features": solution.n_features,
        "w": list(solution.w),
        "b": solution.b,
        "duals": list(solution.duals),
        "support_indices": list(solution.support_indices),
        "objective": solution.objective,
        "margin_width": None if math.isinf(solution.margin_width) else solution.margin_width,
    }
    Path(path).write_text(dump_report(payload))


def load_model(source) -> SVMSolution:
    data = _load_json(source, "model")
    version = data.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise ParseError(f"unsupported model schema_version {version!r}")
    required = ("n_features", "w", "b", "duals", "support_indices",
                "objective", "margin_width")
    missing = [k for k in required if k not in data]
    if missing:
        raise ParseError(f"model file lacks keys: {missing}")
    try:
        n = int(data["n_features"])
        w = tuple(float(v) for v in data["w"])
        duals = tuple(float(v) for v in data["duals"])
        support = tuple(int(v) for v in data["support_indices"])
        margin = data["margin_width"]
        margin = float("inf") if margin is None else float(margin)
        sol = SVMSolution(w=w, b=float(data["b"]), duals=duals,
                          support_indices=support,
                          objective=float(data["objective"]),
                          margin_width=margin, n_features=n)
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad model value: {e}") from e
    if len(sol.w) != n:
        raise ParseError(f"w has {len(sol.w)} entries but n_features = {n}")
    return sol


def load_config(path) -> Config:
    return Config.from_json(path)
