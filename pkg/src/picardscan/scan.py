"""Parameter-grid scans for zero-free fibers, and their CSV/JSON encodings."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .analysis import PathTrace
from .errors import DomainError, NumericalError
from .families import ParametricFamily
from .sphere import INFINITY
from .zeros import ExceedsSearchBound, Finite, count_zeros, detection_functional, first_zero_radius

CANDIDATE_TOL = 1e-8
SKIPPED = "skipped"


@dataclass(frozen=True)
class GridSpec:
    re0: float
    re1: float
    im0: float
    im1: float
    n_re: int
    n_im: int

    def __post_init__(self):
        if self.n_re < 2 or self.n_im < 2:
            raise DomainError("grid needs at least 2 points per axis")
        if not (self.re0 < self.re1 and self.im0 < self.im1):
            raise DomainError("grid bounds must satisfy re0 < re1 and im0 < im1")

    @staticmethod
    def _axis(lo, hi, n):
        # weighted form keeps symmetric midpoints such as 0 exact
        pts = [(lo * (n - 1 - i) + hi * i) / (n - 1) for i in range(n)]
        pts[0], pts[-1] = float(lo), float(hi)
        return pts

    def points(self) -> list[complex]:
        """Grid nodes in row-major order: imaginary part outer, real part inner."""
        res = self._axis(self.re0, self.re1, self.n_re)
        ims = self._axis(self.im0, self.im1, self.n_im)
        return [complex(x, y) for y in ims for x in res]


@dataclass(frozen=True)
class ScanRecord:
    w: complex
    zero_count: Union[int, str]
    r: Union[float, str]
    fp: tuple  # (p, complex | "skipped" | error tag) per requested p
    candidate: bool
    error: Optional[str] = None


@dataclass(frozen=True)
class ScanReport:
    family: str
    grid: GridSpec
    radius: float
    p_list: tuple
    records: tuple

    @property
    def errors(self) -> int:
        return sum(rec.error is not None for rec in self.records)


def default_p_list(family: ParametricFamily) -> tuple:
    if family.order_bound is None:
        return ()
    base = math.floor(family.order_bound)
    return tuple(range(base + 1, base + 5))


def _scan_point(family, w, R, p_list, skip_fp):
    error = None
    try:
        count = count_zeros(family, w, R).count
    except NumericalError as exc:
        count, error = exc.tag, exc.tag
    r: Union[float, str]
    rad = None
    if error is None:
        try:
            rad = ExceedsSearchBound(float(R)) if count == 0 else first_zero_radius(family, w, R)
            r = math.inf if isinstance(rad, ExceedsSearchBound) else rad.value
        except NumericalError as exc:
            r, error = exc.tag, exc.tag
    else:
        r = error
    fp = []
    for p in p_list:
        if skip_fp:
            fp.append((p, SKIPPED))
            continue
        try:
            fp.append((p, detection_functional(family, w, p, r=rad, R_max=R).value))
        except NumericalError as exc:
            fp.append((p, exc.tag))
            error = error or exc.tag
    candidate = (
        count == 0
        and not skip_fp
        and bool(p_list)
        and all(isinstance(v, complex) and abs(v) <= CANDIDATE_TOL for _, v in fp)
    )
    return ScanRecord(w=w, zero_count=count, r=r, fp=tuple(fp), candidate=candidate, error=error)


def exceptional_set_scan(
    family: ParametricFamily,
    grid: GridSpec,
    R: float,
    p_list: Optional[Sequence[int]] = None,
    *,
    threads: int = 1,
) -> ScanReport:
    """Zero count, first-zero radius and F_p at every grid node.

    ``p_list`` defaults to the four orders above the family's order bound.
    For families of unknown order the F_p columns are ``skipped`` and no point
    is flagged. Numerical failures become per-record error tags.
    """
    if not R > 0:
        raise DomainError("radius must be positive")
    skip_fp = family.order_bound is None
    if p_list is None:
        p_list = default_p_list(family) if not skip_fp else (1, 2, 3, 4)
    p_list = tuple(int(p) for p in p_list)
    if any(p < 1 for p in p_list):
        raise DomainError("F_p orders must be >= 1")
    if not skip_fp and any(p <= family.order_bound for p in p_list):
        raise DomainError(f"F_p orders must exceed the order bound {family.order_label}")
    points = grid.points()

    def work(w):
        return _scan_point(family, w, R, p_list, skip_fp)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(work, points))
    else:
        records = [work(w) for w in points]
    return ScanReport(family=family.key, grid=grid, radius=float(R), p_list=p_list, records=tuple(records))


def _num(x) -> str:
    if isinstance(x, str):
        return x
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def scan_header(p_list) -> list[str]:
    head = ["re_w", "im_w", "zero_count", "r"]
    for p in p_list:
        head += [f"F_{p}_re", f"F_{p}_im"]
    return head + ["candidate", "error"]


def scan_to_csv(report: ScanReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(scan_header(report.p_list))
    for rec in report.records:
        row = [_num(rec.w.real), _num(rec.w.imag), str(rec.zero_count), _num(rec.r)]
        for _, v in rec.fp:
            row += [_num(v.real), _num(v.imag)] if isinstance(v, complex) else [v, v]
        row += ["true" if rec.candidate else "false", rec.error or ""]
        writer.writerow(row)
    return buf.getvalue()


def _json_num(x):
    if isinstance(x, str):
        return x
    if math.isinf(x):
        return "inf"
    return float(x)


def scan_to_json(report: ScanReport) -> str:
    g = report.grid
    rows = []
    for rec in report.records:
        row = {
            "re_w": rec.w.real,
            "im_w": rec.w.imag,
            "zero_count": rec.zero_count,
            "r": _json_num(rec.r),
        }
        for p, v in rec.fp:
            if isinstance(v, complex):
                row[f"F_{p}_re"], row[f"F_{p}_im"] = v.real, v.imag
            else:
                row[f"F_{p}_re"] = row[f"F_{p}_im"] = v
        row["candidate"] = rec.candidate
        row["error"] = rec.error
        rows.append(row)
    doc = {
        "family": report.family,
        "grid": [g.re0, g.re1, g.im0, g.im1, g.n_re, g.n_im],
        "radius": report.radius,
        "p_list": list(report.p_list),
        "records": rows,
    }
    return json.dumps(doc, indent=1) + "\n"


def _sphere_json(a):
    if a is INFINITY:
        return "inf"
    return [a.real, a.imag]


def trace_to_json(trace: PathTrace) -> str:
    doc = {
        "samples": [
            {
                "w": [s.w.real, s.w.imag],
                "a": _sphere_json(s.a),
                "omitted_verified": s.omitted_verified,
                "search_radius": s.search_radius,
                "error": s.error,
            }
            for s in trace.samples
        ],
        "poles": [[p.real, p.imag] for p in trace.poles],
        "cr_residual": trace.cr_residual,
    }
    return json.dumps(doc, indent=1) + "\n"
