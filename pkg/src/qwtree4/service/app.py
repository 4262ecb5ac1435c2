"""FastAPI service exposing the library over HTTP.

Thin orchestration only: each endpoint resolves its request into library
calls and packs the result into an OutputDocument.  Domain errors map to
422 responses with the error class name so the CLI can relay them.
"""

from __future__ import annotations

from typing import Any

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__, readout
from ..cospectral import strongly_cospectral_pairs
from ..errors import PairNotCospectral, QwTreeError, UnknownFamily
from ..evolution import fidelity_from_projections, scan, sensitivity_from_projections
from ..spectrum import full_spectrum, projection_data
from ..tree import TreeParams, build_tree, validate_params, vertex_count
from ..verify import run_checks
from .schemas import (
    InfoRequest,
    OutputDocument,
    ScanRequest,
    ScheduleRequest,
    TreeParamsModel,
    VerifyRequest,
)


def _params(model: TreeParamsModel) -> TreeParams:
    return TreeParams.of(model.q, model.a)


def _pair_payload(pair) -> dict[str, Any]:
    return {
        "kind": pair.kind,
        "x": pair.x,
        "y": pair.y,
        "class_index": pair.class_index,
        "stem": pair.stem,
        "sigma_plus": [float(v) for v in pair.sigma_plus],
        "sigma_minus": [float(v) for v in pair.sigma_minus],
    }


def _resolve_pair(p: TreeParams, req: ScanRequest) -> tuple[int, int]:
    if req.vertices is not None:
        if len(req.vertices) != 2:
            raise QwTreeError(f"vertices must be a pair, got {req.vertices}")
        x, y = int(req.vertices[0]), int(req.vertices[1])
        n = vertex_count(p)
        if not (0 <= x < n and 0 <= y < n):
            raise QwTreeError(f"vertices ({x}, {y}) out of range for a {n}-vertex tree")
        return x, y
    pairs = strongly_cospectral_pairs(p)
    selector = req.pair or ""
    kind, _, index = selector.partition(":")
    kind = kind.upper() if kind else None
    try:
        idx = int(index) if index else 0
    except ValueError:
        raise QwTreeError(f"bad pair selector {selector!r}; expected KIND[:INDEX]") from None
    matching = [pr for pr in pairs if kind in (None, pr.kind)]
    if not matching or idx >= len(matching):
        raise PairNotCospectral(
            f"no cospectral pair matches selector {selector!r} (found {len(matching)})"
        )
    return matching[idx].x, matching[idx].y


def _scan_results(p: TreeParams, req: ScanRequest) -> dict[str, Any]:
    x, y = _resolve_pair(p, req)
    data = projection_data(p, x, y, allow_degenerate=req.oracle_tree)
    if not req.any_pair and not data.is_strongly_cospectral():
        raise PairNotCospectral(
            f"vertices ({x}, {y}) are not strongly cospectral; pass any_pair to scan anyway"
        )
    times = np.linspace(req.t0, req.t1, req.steps + 1).tolist() if req.steps > 0 else []
    records = scan(p, x, y, times, allow_degenerate=req.oracle_tree)
    return {
        "x": x,
        "y": y,
        "records": [
            {
                "time": r.time,
                "fidelity": r.fidelity,
                "sensitivity": r.sensitivity,
            }
            for r in records
        ],
    }


def _schedule_rows(p: TreeParams, x: int, y: int, steps) -> list[dict[str, Any]]:
    data = projection_data(p, x, y)
    rows = []
    for step in steps:
        direct = fidelity_from_projections(data, step.time)
        sens = sensitivity_from_projections(data, step.time)
        rows.append(
            {
                "index": step.index,
                "time_symbolic": str(step.time),
                "time": step.time.value,
                "predicted_fidelity": step.predicted_fidelity,
                "direct_fidelity": direct,
                "discrepancy": abs(step.predicted_fidelity - direct),
                "predicted_sensitivity": step.predicted_sensitivity,
                "sensitivity": sens,
            }
        )
    return rows


def _schedule_results(req: ScheduleRequest) -> dict[str, Any]:
    family = req.family
    n_list = req.n or [1, 3, 5, 7, 9]
    ells = req.ell if req.ell is not None else list(range(0, 5))
    needs_params = {"type_c": req.k, "q_readout": req.q, "dist4": req.q2}
    if family in needs_params and needs_params[family] is None and req.params is None:
        raise UnknownFamily(f"family {family!r} needs its flag or a params document")
    if family == "type_c":
        k = req.k if req.k is not None else readout.type_c_k_from_params(_params(req.params))
        sched = readout.schedule_type_c(k, n_list)
        p = readout.type_c_params(k)
        x, y = readout.type_c_leaf_pair(p)
        return {"family": family, "k": k, "params": {"q": list(p.q), "a": list(p.a)},
                "rows": _schedule_rows(p, x, y, sched.steps)}
    if family == "t3":
        if req.k2 is not None and req.k3 is not None:
            if req.q3 is not None:
                fam = readout.T3Family.build(req.k2, req.k3, req.q3)
            else:
                found = readout.search_t3(req.k2, req.k3)
                if not found:
                    raise UnknownFamily(f"no valid q3 for k2={req.k2}, k3={req.k3}")
                fam = found[0]
        elif req.params is not None:
            fam = readout.t3_from_params(_params(req.params))
        else:
            raise UnknownFamily("t3 family needs k2/k3 (and optionally q3) or params")
        sched = readout.schedule_t3(fam, n_list)
        p = fam.params
        x, y = readout.type_c_leaf_pair(p)
        return {"family": family, "k2": fam.k2, "k3": fam.k3, "q3": fam.q3,
                "params": {"q": list(p.q), "a": list(p.a)},
                "rows": _schedule_rows(p, x, y, sched.steps)}
    if family == "q_readout":
        q = req.q if req.q is not None else readout.q_from_params(_params(req.params))
        sched = readout.q_readout_schedule(q, max(ells))
        keep = [s for s in sched.steps if s.index in set(ells)]
        p = readout.q_readout_params(q)
        tree = build_tree(p)
        x, y = tree.stems[0][0], tree.stems[1][0]
        seq = {s.ell: s for s in readout.q_readout_sequence(q, max(ells))}
        rows = _schedule_rows(p, x, y, keep)
        for row in rows:
            s = seq[row["index"]]
            row.update({"N": s.big_n, "D": s.big_d, "delta": s.delta})
        return {"family": family, "q": q, "params": {"q": list(p.q), "a": list(p.a)}, "rows": rows}
    if family == "p5_leaf":
        sched = readout.p5_leaf_schedule(max(ells))
        keep = [s for s in sched.steps if s.index in set(ells)]
        p = readout.q_readout_params(1)
        tree = build_tree(p)
        leaves = [l for l, _ in tree.leaves]
        return {"family": family, "params": {"q": [1], "a": [2]},
                "rows": _schedule_rows(p, leaves[0], leaves[1], keep)}
    if family == "coupled_q2":
        rows = []
        for n in (req.n or [1, 2, 3]):
            step = readout.coupled_q2_schedule(n)
            p = readout.dist4_params(step.q2)
            x, y = readout.dist4_leaf_pair(step.q2)
            data = projection_data(p, x, y)
            direct = fidelity_from_projections(data, step.time)
            rows.append(
                {
                    "index": n,
                    "q2": step.q2,
                    "time_symbolic": str(step.time),
                    "time": step.time.value,
                    "predicted_fidelity": step.predicted_fidelity,
                    "direct_fidelity": direct,
                    "discrepancy": abs(step.predicted_fidelity - direct),
                    "sensitivity": sensitivity_from_projections(data, step.time),
                }
            )
        return {"family": family, "rows": rows}
    if family == "dist4":
        q2 = req.q2 if req.q2 is not None else readout.dist4_q2_from_params(_params(req.params))
        analysis = readout.dist4_analyze(q2, req.epsilon)
        if not analysis.pgst:
            raise QwTreeError(f"no PGST for q2={q2}: 2*q2-1 = {2 * q2 - 1} is a perfect square")
        best = readout.dist4_search_readout(q2, req.epsilon, req.r_max)
        return {
            "family": family,
            "q2": q2,
            "a2": analysis.a2,
            "support": [str(r) for r in analysis.support],
            "pgst": analysis.pgst,
            "fm_r_bound": analysis.fm_r_bound,
            "fm_time_bound": analysis.fm_time_bound,
            "best": {
                "r": best.r,
                "time_symbolic": str(best.time),
                "time": best.time.value,
                "phase_error_sqrt2": best.phase_error_sqrt2,
                "phase_error_big": best.phase_error_big,
                "eps_prime": best.eps_prime,
                "certified_bound": best.certified_bound,
                "achieved_fidelity": best.achieved_fidelity,
                "meets_target": best.meets_target,
            },
        }
    raise UnknownFamily(f"unknown schedule family {family!r}")


def create_app() -> FastAPI:
    app = FastAPI(title="qwtree4", version=__version__)

    def guarded(fn, *args):
        try:
            return fn(*args)
        except QwTreeError as e:
            raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}") from e

    @app.get("/v1/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/info", response_model=OutputDocument)
    def info(req: InfoRequest) -> OutputDocument:
        def run():
            p = _params(req.params)
            validate_params(p)
            tree = build_tree(p)
            degrees = tree.degrees()
            unique, counts = np.unique(degrees, return_counts=True)
            spectrum = full_spectrum(p)
            pairs = strongly_cospectral_pairs(p)
            return {
                "n": vertex_count(p),
                "centre_degree": int(degrees[tree.centre]),
                "degree_counts": {str(int(d)): int(c) for d, c in zip(unique, counts)},
                "spectrum": [
                    {
                        "value": e.value,
                        "exact": str(e.exact) if e.exact is not None else None,
                        "multiplicity": e.multiplicity,
                    }
                    for e in spectrum.entries
                ],
                "cospectral_pairs": [_pair_payload(pr) for pr in pairs],
            }

        results = guarded(run)
        return OutputDocument(command="info", inputs=req.model_dump(), results=results)

    @app.post("/v1/scan", response_model=OutputDocument)
    def scan_endpoint(req: ScanRequest) -> OutputDocument:
        def run():
            p = _params(req.params)
            validate_params(p, allow_degenerate=req.oracle_tree)
            return _scan_results(p, req)

        results = guarded(run)
        return OutputDocument(command="scan", inputs=req.model_dump(), results=results)

    @app.post("/v1/schedule", response_model=OutputDocument)
    def schedule(req: ScheduleRequest) -> OutputDocument:
        results = guarded(_schedule_results, req)
        return OutputDocument(command="schedule", inputs=req.model_dump(), results=results)

    @app.post("/v1/verify", response_model=OutputDocument)
    def verify(req: VerifyRequest) -> OutputDocument:
        checks = guarded(run_checks, req.scope)
        results = {
            "ok": bool(all(c.ok for c in checks)),
            "checks": [{"name": c.name, "ok": bool(c.ok), "detail": c.detail} for c in checks],
        }
        return OutputDocument(command="verify", inputs=req.model_dump(), results=results)

    return app
