"""Ensemble verification reports."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..bounds import Family, HolderPair, evaluate_all
from ..functional import chebyshev_direct, magnitude
from ..identities import HypothesisError, chebyshev_double_sum, chebyshev_identity1, chebyshev_identity2, chebyshev_identity3
from ..space import Instance, norm
from .ensemble import EnsembleConfig, generate_instance, signed_degenerate

IDENTITY_RTOL = 1e-10


@dataclass(frozen=True)
class IdentityCheck:
    """Largest disagreement between the direct evaluation and the other representations."""

    max_rel_discrepancy: float
    identity2_applied: bool
    identity3_applied: bool

    @property
    def ok(self) -> bool:
        return self.max_rel_discrepancy <= IDENTITY_RTOL


def identity_agreement(inst: Instance, skip_partial_sum_forms: bool = False) -> IdentityCheck:
    """Compare all representations pairwise, relative to :func:`magnitude`.

    Identities two and three are skipped when their hypotheses fail or when
    ``skip_partial_sum_forms`` is set (signed-degenerate draws).
    """
    values = [chebyshev_direct(inst), chebyshev_identity1(inst), chebyshev_double_sum(inst)]
    applied = {}
    for name, fn in (("identity2", chebyshev_identity2), ("identity3", chebyshev_identity3)):
        applied[name] = False
        if skip_partial_sum_forms:
            continue
        try:
            values.append(fn(inst))
            applied[name] = True
        except HypothesisError:
            pass
    scale = magnitude(inst)
    worst = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            gap = norm(values[i] - values[j], inst.norm)
            worst = max(worst, gap / scale if scale > 0 else gap)
    return IdentityCheck(worst, applied["identity2"], applied["identity3"])


def _evaluate_index(args: tuple[EnsembleConfig, int]) -> dict:
    cfg, index = args
    inst = generate_instance(cfg, index)
    holder = HolderPair.from_p(cfg.holder_p) if cfg.holder_p is not None else None
    degenerate = cfg.weight_mode == "signed_random" and signed_degenerate(inst.weights)
    ident = identity_agreement(inst, skip_partial_sum_forms=degenerate)
    report = evaluate_all(inst, holder)
    row = report.to_dict()
    row["instance_id"] = index
    row["identities"] = {
        "max_rel_discrepancy": ident.max_rel_discrepancy,
        "identity2": ident.identity2_applied,
        "identity3": ident.identity3_applied,
        "ok": ident.ok,
    }
    row["signed_degenerate"] = degenerate
    return row


def evaluate_ensemble(cfg: EnsembleConfig, workers: int = 1) -> list[dict]:
    """Per-instance rows in index order; ``workers > 1`` uses a process pool."""
    jobs = [(cfg, i) for i in range(cfg.trials)]
    if workers <= 1:
        return [_evaluate_index(job) for job in jobs]
    chunk = max(1, cfg.trials // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves input order, so aggregation does not depend on scheduling
        return list(pool.map(_evaluate_index, jobs, chunksize=chunk))


def summarize(rows: list[dict]) -> dict:
    families: dict[str, dict] = {}
    for family in Family:
        applicable = violations = 0
        ratios: list[float] = []
        for row in rows:
            entry = next(b for b in row["bounds"] if b["family"] == family.value)
            if not entry["applicable"]:
                continue
            applicable += 1
            if entry["valid"] is False:
                violations += 1
            if entry["ratio"] is not None:
                ratios.append(entry["ratio"])
        families[family.value] = {
            "applicable": applicable,
            "applicability_rate": applicable / len(rows) if rows else 0.0,
            "violations": violations,
            "mean_ratio": float(np.mean(ratios)) if ratios else None,
            "max_ratio": max(ratios) if ratios else None,
        }
    ident = [row["identities"] for row in rows]
    return {
        "families": families,
        "identities": {
            "max_rel_discrepancy": max(i["max_rel_discrepancy"] for i in ident),
            "failures": sum(not i["ok"] for i in ident),
            "identity2_applied": sum(i["identity2"] for i in ident),
            "identity3_applied": sum(i["identity3"] for i in ident),
            "signed_degenerate": sum(row["signed_degenerate"] for row in rows),
            "tolerance": IDENTITY_RTOL,
        },
        "violations": sum(f["violations"] for f in families.values()),
    }


def run_report(cfg: EnsembleConfig, workers: int = 1, per_instance: bool = False) -> dict:
    """Evaluate every bound family over the ensemble and aggregate per family.

    ``violations`` counts applicable bounds that fall below ``||T_n||`` by more
    than the tolerance; any nonzero count is a defect.
    """
    rows = evaluate_ensemble(cfg, workers)
    report = summarize(rows)
    report["config_echo"] = cfg.to_dict()
    report["seed"] = cfg.seed
    report["instances"] = len(rows)
    if per_instance:
        report["per_instance"] = rows
    return report
