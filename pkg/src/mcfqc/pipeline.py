"""End-to-end certification protocol.

The protocol sends one half of a maximally entangled pair through the fibre
and certifies the entanglement of the output state. Every criterion is
evaluated twice, once on the expanded density matrix and once through the
closed-form specialized test; the two routes are mathematically equivalent,
so any disagreement is raised as an internal-consistency error rather than
reported.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .channel import (
    ChoiOperator,
    CptpReport,
    McfChannel,
    apply,
    channel_to_config,
    choi,
    extend_one_side,
    verify_cptp,
)
from .cones import Classification, ConeVerdict, SearchBudget, classify_ds
from .linalg import DEFAULT_TOL, Tolerance, matrix_to_literal
from .states import (
    CriterionVerdict,
    DensityMatrix,
    is_ppt,
    max_coherent,
    max_entangled,
    realignment_trace_norm,
    state_to_json,
)
from .symmetric_states import (
    CldulState,
    cldui_from_choi,
    cldui_is_ppt,
    cldui_realignment_test,
)


@dataclass(frozen=True)
class DsSection:
    """Pair-weight view of the output state, present only when it exists."""

    m: np.ndarray
    classification: Classification
    cone: ConeVerdict


@dataclass(frozen=True)
class CertificationReport:
    channel: McfChannel
    cptp: CptpReport
    choi_op: ChoiOperator
    cldui: CldulState
    verdicts: tuple[CriterionVerdict, ...]
    ds_section: DsSection | None
    provenance: dict
    warnings: tuple[str, ...]

    def verdict(self, name: str) -> CriterionVerdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        obj = {
            "channel": channel_to_config(self.channel),
            "cptp": self.cptp.to_json_dict(),
            "output_state": state_to_json(self.choi_op.dm),
            "cldui": {
                "weights": matrix_to_literal(self.cldui.weights),
                "coherences": matrix_to_literal(self.cldui.coherences),
            },
            "verdicts": [_verdict_to_json(v) for v in self.verdicts],
            "ds_section": None,
            "provenance": self.provenance,
            "warnings": list(self.warnings),
        }
        if self.ds_section is not None:
            cone = self.ds_section.cone
            obj["ds_section"] = {
                "m": matrix_to_literal(self.ds_section.m),
                "classification": self.ds_section.classification.value,
                "cone": {
                    "dnn": cone.dnn,
                    "cp": cone.cp.value,
                    "evidence": cone.evidence,
                    "factor": None if cone.factor is None else matrix_to_literal(cone.factor),
                    "search": None
                    if cone.search is None
                    else {
                        "found": cone.search.found,
                        "best_residual": cone.search.best_residual,
                        "restarts_run": cone.search.restarts_run,
                        "total_iterations": cone.search.total_iterations,
                        "found_at_restart": cone.search.found_at_restart,
                    },
                },
            }
        return obj


def _verdict_to_json(v: CriterionVerdict) -> dict:
    return {"name": v.name, "value": v.value, "flag": v.flag.value, "details": dict(v.details)}


def config_digest(obj) -> str:
    """sha256 of the canonical JSON encoding of a config object."""
    payload = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _cross_check(generic: CriterionVerdict, special: CriterionVerdict, value_tol: float | None):
    if generic.flag != special.flag:
        raise RuntimeError(
            f"internal consistency violation: {generic.name} says {generic.flag.value} "
            f"but {special.name} says {special.flag.value}"
        )
    if value_tol is not None and abs(generic.value - special.value) > value_tol:
        raise RuntimeError(
            f"internal consistency violation: {generic.name} value {generic.value!r} "
            f"vs {special.name} value {special.value!r}"
        )


def run_protocol(
    ch: McfChannel,
    *,
    tol: Tolerance = DEFAULT_TOL,
    budget: SearchBudget = SearchBudget(),
    force: bool = False,
    timestamp: str | None = None,
) -> CertificationReport:
    """Generate the protocol output state and certify it every available way.

    Requires a trace-preserving channel. A channel outside the completely
    positive window is refused unless forced, in which case the report is
    marked as an unphysical-parameter evaluation and the criteria are still
    computed mechanically.
    """
    cptp = verify_cptp(ch, tol)
    if not cptp.tp_ok:
        raise ValueError("channel is not trace-preserving (crosstalk rows must sum to 1)")
    warnings: tuple[str, ...] = ()
    if not cptp.cp_ok:
        if not force:
            raise ValueError(
                "channel is not completely positive; pass force to evaluate anyway"
            )
        warnings = ("unphysical parameters",)

    d = ch.d
    output = extend_one_side(ch, max_entangled(d), force=force, tol=tol)
    choi_op = choi(ch, tol)
    if np.abs(output.mat - choi_op.dm.mat).max() > 1e-12:
        raise RuntimeError(
            "internal consistency violation: one-sided application disagrees with the Choi form"
        )
    cldui = cldui_from_choi(choi_op, tol)

    ppt = is_ppt(output, tol)
    fast_ppt = cldui_is_ppt(cldui, tol)
    realign_generic = realignment_trace_norm(output, tol)
    realign_fast = cldui_realignment_test(cldui, tol)
    _cross_check(ppt, fast_ppt, None)
    _cross_check(realign_generic, realign_fast, 1e-10)
    verdicts = (ppt, fast_ppt, realign_generic, realign_fast)

    ds_section = None
    weights = cldui.weights
    symmetric = np.abs(weights - weights.T).max() <= tol.eq_tol
    hat_matches = np.abs(cldui.coherences - weights).max() <= tol.eq_tol
    if symmetric and hat_matches:
        classification, cone = classify_ds(weights, budget, tol)
        ds_section = DsSection(weights, classification, cone)

    config = {
        "channel": channel_to_config(ch),
        "budget": {
            "restarts": budget.restarts,
            "max_iters": budget.max_iters,
            "residual_target": budget.residual_target,
            "seed": budget.seed,
        },
        "force": force,
        "tolerances": {"psd_floor": tol.psd_floor, "eq_tol": tol.eq_tol},
    }
    provenance = {
        "config_sha256": config_digest(config),
        "seed": budget.seed,
        "timestamp": timestamp,
        "tolerances": {"psd_floor": tol.psd_floor, "eq_tol": tol.eq_tol},
    }
    return CertificationReport(
        ch, cptp, choi_op, cldui, verdicts, ds_section, provenance, warnings
    )


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    cp_ok: bool
    verdicts: tuple[CriterionVerdict, ...]
    action: np.ndarray

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "cp_ok": self.cp_ok,
            "verdicts": [_verdict_to_json(v) for v in self.verdicts],
            "action_abs": matrix_to_literal(np.abs(self.action)),
        }


def sweep_alpha(
    crosstalk,
    grid,
    *,
    input_state: DensityMatrix | None = None,
    tol: Tolerance = DEFAULT_TOL,
    budget: SearchBudget = SearchBudget(),
) -> list[SweepRow]:
    """Evaluate a uniform-dephasing family over a grid of alpha values.

    Each row records the physicality check, the certification verdicts of
    the protocol output, and the channel action on a reference input state
    (the maximally coherent state by default). Rows follow the grid order;
    channels outside the completely positive window are evaluated in forced
    mode rather than skipped.
    """
    rows = []
    for alpha in grid:
        ch = McfChannel.with_uniform_dephasing(crosstalk, float(alpha))
        probe = input_state if input_state is not None else max_coherent(ch.d)
        report = run_protocol(ch, tol=tol, budget=budget, force=True)
        action = apply(ch, probe, force=True, tol=tol)
        rows.append(SweepRow(float(alpha), report.cptp.cp_ok, report.verdicts, action.mat))
    return rows
