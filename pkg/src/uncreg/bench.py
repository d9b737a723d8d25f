"""Reproduce the published worked example and the LAD-vs-LS robustness tables."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from . import fixtures
from .errors import UncregError
from .infer import forecast
from .models import linear
from .optim import OptimOptions
from .pipeline import fit
from .quad import DEFAULT_RULE, QuadratureRule
from .udist import Linear, Normal

TOL_TABLE1_BETA = 0.01
TOL_E_HAT = 0.005
TOL_SIGMA2 = 0.01
TOL_MU = 0.01
TOL_B = 0.01
TOL_LS = 0.01
TOL_LAD = 0.02


@dataclass
class Cell:
    case: str
    quantity: str
    reported: list
    estimate: list | None
    tol: float
    passed: bool
    converged: bool = True
    error: str | None = None
    note: str | None = None


@dataclass
class BenchReport:
    cells: list = field(default_factory=list)

    @property
    def fit_failures(self) -> int:
        return sum(1 for c in self.cells if c.error is not None or not c.converged)

    @property
    def mismatches(self) -> int:
        return sum(1 for c in self.cells if not c.passed)

    def to_json(self) -> dict:
        return {
            "cells": [asdict(c) for c in self.cells],
            "mismatches": self.mismatches,
            "fit_failures": self.fit_failures,
        }


def _close(estimate, reported, tol) -> bool:
    return all(math.isfinite(e) and abs(e - p) <= tol for e, p in zip(estimate, reported))


def _compare(report, case, quantity, reported, estimate, tol, converged=True, note=None):
    reported, estimate = list(reported), list(estimate)
    report.cells.append(Cell(case, quantity, reported, estimate, tol, _close(estimate, reported, tol), converged, note=note))


def _fit_cells(report, case, data, ref_lad, ref_ls, q, opts, note=None):
    for loss, reported, tol in (("lad", ref_lad, TOL_LAD), ("ls", ref_ls, TOL_LS)):
        try:
            res = fit(data, linear(1), loss, q, opts)
        except UncregError as exc:
            report.cells.append(Cell(case, f"{loss} beta", list(reported), None, tol, False, False, str(exc), note))
            continue
        _compare(report, case, f"{loss} beta", reported, res.beta, tol, res.converged, note)


def _table1_cells(report, q, opts):
    case = "table1"
    try:
        res = fit(fixtures.table1(), linear(1), "lad", q, opts)
    except UncregError as exc:
        report.cells.append(Cell(case, "lad beta", list(fixtures.TABLE1_LAD_BETA), None, TOL_TABLE1_BETA, False, False, str(exc)))
        return
    conv = res.converged
    m = res.moments
    _compare(report, case, "lad beta", fixtures.TABLE1_LAD_BETA, res.beta, TOL_TABLE1_BETA, conv)
    _compare(report, case, "e_hat", [fixtures.TABLE1_E_HAT], [m.e_hat], TOL_E_HAT, conv)
    _compare(report, case, "sigma2_hat", [fixtures.TABLE1_SIGMA2_HAT], [m.sigma2_hat], TOL_SIGMA2, conv)
    x_new = [Linear(*fixtures.TABLE1_NEW_X)]
    err = Normal(m.e_hat, math.sqrt(m.sigma2_hat))
    try:
        fc = forecast(res.model, res.beta, x_new, m, fixtures.TABLE1_LEVEL, err, q)
    except UncregError as exc:
        report.cells.append(Cell(case, "forecast", [fixtures.TABLE1_MU], None, TOL_MU, False, False, str(exc)))
        return
    _compare(report, case, "mu", [fixtures.TABLE1_MU], [fc.mu], TOL_MU, conv)
    _compare(report, case, "b", [fixtures.TABLE1_B], [fc.b], TOL_B, conv)
    _compare(report, case, "interval", fixtures.TABLE1_INTERVAL, fc.interval, TOL_B, conv)


def run(q: QuadratureRule = DEFAULT_RULE, opts: OptimOptions = OptimOptions()) -> BenchReport:
    """Fit every published configuration and compare with the reported values."""
    report = BenchReport()
    _table1_cells(report, q, opts)
    for j in (1, 2, 3):
        lad, ls = fixtures.TABLE3[j]
        _fit_cells(report, f"table3/model{j}", fixtures.table2(j), lad, ls, q, opts)
    for j in (2, 3):
        lad, ls = fixtures.TABLE4[j]
        drop = fixtures.OUTLIERS[j]
        label = ",".join(str(i + 1) for i in drop)
        _fit_cells(report, f"table4/model{j}-drop{label}", fixtures.table2(j).without(drop), lad, ls, q, opts)
    lad, ls = fixtures.TABLE4[3]
    drop = fixtures.MODEL3_LITERAL_DELETION
    _fit_cells(
        report,
        "table4/model3-drop3,9",
        fixtures.table2(3).without(drop),
        lad,
        ls,
        q,
        opts,
        note="alternative deletion of the 3rd and 9th observations; the flagged outliers for model 3 are the 3rd and 10th",
    )
    return report


def format_report(report: BenchReport) -> str:
    def fmt(values):
        return "-" if values is None else "(" + ", ".join(f"{v:.4f}" for v in values) + ")"

    head = f"{'case':<24} {'quantity':<11} {'reported':<20} {'estimate':<20} {'tol':>5}  result"
    lines = [head, "-" * len(head)]
    for c in report.cells:
        verdict = "ERROR" if c.error else ("pass" if c.passed else "FAIL")
        if not c.converged and not c.error:
            verdict += " (not converged)"
        lines.append(f"{c.case:<24} {c.quantity:<11} {fmt(c.reported):<20} {fmt(c.estimate):<20} {c.tol:>5g}  {verdict}")
        if c.note:
            lines.append(f"    note: {c.note}")
    lines.append(f"{report.mismatches} of {len(report.cells)} cells differ from the published values")
    return "\n".join(lines)
