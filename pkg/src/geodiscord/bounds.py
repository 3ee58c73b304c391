"""Executable inequality ledger for the twelve correlation measures.

The registry lists every identity and bound relating the geometric discord,
the measurement-induced discord, and the discord of response across the four
distances for a qubit on side A, plus one conjectured two-qubit bound that is
tracked separately and never fails an audit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .measures import (
    DEFAULT_CONFIG,
    OptimizerConfig,
    UnsupportedDimension,
    all_measures,
    pure_state_measure_table,
)
from .states import DensityMatrix

MAX_QUBIT_DISCORD = 2.0 - math.sqrt(2.0)
EDGE_SLACK = 1e-9


class DomainError(ValueError):
    """Argument outside the domain of a scalar bound function."""


def _g_raw(d: float) -> float:
    return 2.0 * d - d * d / 2.0


def g(d: float) -> float:
    """2d - d^2/2, increasing bijection [0, 2-sqrt(2)] -> [0, 1]."""
    if d < -EDGE_SLACK or d > MAX_QUBIT_DISCORD + EDGE_SLACK:
        raise DomainError(f"g expects d in [0, 2-sqrt(2)], got {d}")
    return _g_raw(min(max(d, 0.0), MAX_QUBIT_DISCORD))


def g_inv(d: float) -> float:
    """Inverse of g: 2 - 2 sqrt(1 - d/2) on [0, 1]."""
    if d < -EDGE_SLACK or d > 1.0 + EDGE_SLACK:
        raise DomainError(f"g_inv expects d in [0, 1], got {d}")
    d = min(max(d, 0.0), 1.0)
    return 2.0 - 2.0 * math.sqrt(1.0 - d / 2.0)


def h(d: float) -> float:
    """2 g(d) - g(d)^2 on [0, 2-sqrt(2)]."""
    val = g(d)
    return 2.0 * val - val * val


def _h_raw(d: float) -> float:
    val = _g_raw(d)
    return 2.0 * val - val * val


def _ginv_raw(d: float) -> float:
    return 2.0 - 2.0 * math.sqrt(max(1.0 - d / 2.0, 0.0))


@dataclass(frozen=True)
class BoundRecord:
    name: str
    relation_kind: str  # identity | inequality | conjecture
    lhs: float
    rhs: float
    slack: float
    satisfied: bool


@dataclass(frozen=True)
class BoundReport:
    records: tuple
    measures: dict
    n_a: int
    n_b: int
    tol_inequality: float
    tol_identity: float

    @property
    def violations(self) -> tuple:
        return tuple(
            r.name
            for r in self.records
            if not r.satisfied and r.relation_kind != "conjecture"
        )

    @property
    def conjecture_counterexamples(self) -> int:
        return sum(
            1
            for r in self.records
            if r.relation_kind == "conjecture" and not r.satisfied
        )

    @property
    def all_satisfied(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        def safe(x):
            return float(x) if math.isfinite(x) else None

        payload = {
            "n_a": self.n_a,
            "n_b": self.n_b,
            "tol_inequality": self.tol_inequality,
            "tol_identity": self.tol_identity,
            "measures": {k: safe(v) for k, v in self.measures.items()},
            "records": [
                {
                    "name": r.name,
                    "relation_kind": r.relation_kind,
                    "lhs": safe(r.lhs),
                    "rhs": safe(r.rhs),
                    "slack": safe(r.slack),
                    "satisfied": bool(r.satisfied),
                }
                for r in self.records
            ],
            "violations": list(self.violations),
            "conjecture_counterexamples": self.conjecture_counterexamples,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["relation,lhs,rhs,slack,satisfied"]
        for r in self.records:
            lines.append(
                f"{r.name},{r.lhs:.17g},{r.rhs:.17g},{r.slack:.17g},{int(r.satisfied)}"
            )
        return "\n".join(lines) + "\n"


# Registry entries: (name, kind, lhs(m, n_b), rhs(m, n_b)). The evaluators use
# the raw polynomial forms of g, g_inv, h so optimizer noise at a domain edge
# cannot raise.
_C = MAX_QUBIT_DISCORD

_REGISTRY = (
    # Trace vs Hilbert-Schmidt norm equivalence, geometric and measurement
    # variants.
    ("geo-trace-hs-lower", "inequality",
     lambda m, nb: m["G_tr"] / (2.0 * nb), lambda m, nb: m["G_hs"]),
    ("geo-trace-hs-upper", "inequality",
     lambda m, nb: m["G_hs"], lambda m, nb: m["G_tr"]),
    ("meas-trace-hs-lower", "inequality",
     lambda m, nb: m["M_tr"] / (2.0 * nb), lambda m, nb: m["M_hs"]),
    ("meas-trace-hs-upper", "inequality",
     lambda m, nb: m["M_hs"], lambda m, nb: m["M_tr"]),
    # Bures / Hellinger / trace distance comparisons, geometric and
    # measurement variants.
    ("geo-bures-hellinger-squared", "inequality",
     lambda m, nb: m["G_bu"] ** 2, lambda m, nb: m["G_he"] ** 2),
    ("geo-hellinger-squared-trace", "inequality",
     lambda m, nb: m["G_he"] ** 2, lambda m, nb: m["G_tr"]),
    ("geo-trace-two-g-bures", "inequality",
     lambda m, nb: m["G_tr"], lambda m, nb: 2.0 * _g_raw(m["G_bu"])),
    ("meas-bures-hellinger-squared", "inequality",
     lambda m, nb: m["M_bu"] ** 2, lambda m, nb: m["M_he"] ** 2),
    ("meas-hellinger-squared-trace", "inequality",
     lambda m, nb: m["M_he"] ** 2, lambda m, nb: m["M_tr"]),
    ("meas-trace-two-g-bures", "inequality",
     lambda m, nb: m["M_tr"], lambda m, nb: 2.0 * _g_raw(m["M_bu"])),
    # Trace and Hilbert-Schmidt collapse for a qubit A, plus the response
    # trace/HS sandwich.
    ("trace-geo-meas-identity", "identity",
     lambda m, nb: m["G_tr"], lambda m, nb: m["M_tr"]),
    ("trace-geo-response-identity", "identity",
     lambda m, nb: m["G_tr"], lambda m, nb: m["R_tr"]),
    ("hs-geo-meas-identity", "identity",
     lambda m, nb: m["G_hs"], lambda m, nb: m["M_hs"]),
    ("hs-response-twice-geo-identity", "identity",
     lambda m, nb: m["R_hs"], lambda m, nb: 2.0 * m["G_hs"]),
    ("response-trace-hs-lower", "inequality",
     lambda m, nb: m["R_tr"] / nb, lambda m, nb: m["R_hs"]),
    ("response-trace-hs-upper", "inequality",
     lambda m, nb: m["R_hs"], lambda m, nb: m["R_tr"]),
    # Bures chain.
    ("bures-geo-below-meas", "inequality",
     lambda m, nb: m["G_bu"], lambda m, nb: m["M_bu"]),
    ("bures-meas-below-ginv-h-geo", "inequality",
     lambda m, nb: m["M_bu"], lambda m, nb: _ginv_raw(_h_raw(m["G_bu"]))),
    ("bures-ginv-h-geo-below-response", "inequality",
     lambda m, nb: _ginv_raw(_h_raw(m["G_bu"])), lambda m, nb: m["R_bu"]),
    ("bures-response-g-geo-identity", "identity",
     lambda m, nb: m["R_bu"], lambda m, nb: _g_raw(m["G_bu"])),
    ("bures-response-below-g-meas", "inequality",
     lambda m, nb: m["R_bu"], lambda m, nb: _g_raw(m["M_bu"])),
    ("bures-geo-below-scaled-response", "inequality",
     lambda m, nb: m["G_bu"], lambda m, nb: _C * m["R_bu"]),
    ("bures-meas-below-g-geo", "inequality",
     lambda m, nb: m["M_bu"], lambda m, nb: _g_raw(m["G_bu"])),
    # Hellinger chain.
    ("hellinger-geo-below-meas", "inequality",
     lambda m, nb: m["G_he"], lambda m, nb: m["M_he"]),
    ("hellinger-meas-below-response", "inequality",
     lambda m, nb: m["M_he"], lambda m, nb: m["R_he"]),
    ("hellinger-response-g-geo-identity", "identity",
     lambda m, nb: m["R_he"], lambda m, nb: _g_raw(m["G_he"])),
    ("hellinger-response-below-g-meas", "inequality",
     lambda m, nb: m["R_he"], lambda m, nb: _g_raw(m["M_he"])),
    ("hellinger-geo-below-scaled-response", "inequality",
     lambda m, nb: m["G_he"], lambda m, nb: _C * m["R_he"]),
    ("hellinger-meas-below-g-geo", "inequality",
     lambda m, nb: m["M_he"], lambda m, nb: _g_raw(m["G_he"])),
    # Response cross-distance chain.
    ("response-bures-above-hellinger-root", "inequality",
     lambda m, nb: 1.0 - math.sqrt(max(1.0 - m["R_he"], 0.0)),
     lambda m, nb: m["R_bu"]),
    ("response-bures-below-hellinger", "inequality",
     lambda m, nb: m["R_bu"], lambda m, nb: m["R_he"]),
    ("response-hellinger-below-root-trace", "inequality",
     lambda m, nb: m["R_he"], lambda m, nb: math.sqrt(max(m["R_tr"], 0.0))),
    ("response-root-trace-below-bures-arc", "inequality",
     lambda m, nb: math.sqrt(max(m["R_tr"], 0.0)),
     lambda m, nb: math.sqrt(max(2.0 * m["R_bu"] - m["R_bu"] ** 2, 0.0))),
    ("response-bures-arc-below-hellinger-arc", "inequality",
     lambda m, nb: math.sqrt(max(2.0 * m["R_bu"] - m["R_bu"] ** 2, 0.0)),
     lambda m, nb: math.sqrt(max(2.0 * m["R_he"] - m["R_he"] ** 2, 0.0))),
    # Geometric and measurement cross comparisons between Bures and
    # Hellinger.
    ("geo-bures-below-hellinger", "inequality",
     lambda m, nb: m["G_bu"], lambda m, nb: m["G_he"]),
    ("geo-hellinger-below-ginv-h-bures", "inequality",
     lambda m, nb: m["G_he"], lambda m, nb: _ginv_raw(_h_raw(m["G_bu"]))),
    ("meas-bures-below-hellinger", "inequality",
     lambda m, nb: m["M_bu"], lambda m, nb: m["M_he"]),
    # Mixed chain linking the trace measurement discord to h of the others.
    ("trace-meas-below-h-bures-geo", "inequality",
     lambda m, nb: m["M_tr"], lambda m, nb: _h_raw(m["G_bu"])),
    ("h-bures-geo-below-h-hellinger-geo", "inequality",
     lambda m, nb: _h_raw(m["G_bu"]), lambda m, nb: _h_raw(m["G_he"])),
    ("h-bures-geo-below-h-bures-meas", "inequality",
     lambda m, nb: _h_raw(m["G_bu"]), lambda m, nb: _h_raw(m["M_bu"])),
    ("h-pair-min-below-h-hellinger-meas", "inequality",
     lambda m, nb: min(_h_raw(m["G_he"]), _h_raw(m["M_bu"])),
     lambda m, nb: _h_raw(m["M_he"])),
    ("hellinger-geo-below-scaled-root-trace-meas", "inequality",
     lambda m, nb: m["G_he"], lambda m, nb: _C * math.sqrt(max(m["M_tr"], 0.0))),
    # Qubit bound linking the Bures measurement discord to the Bures
    # response.
    ("bures-meas-response-root-bound", "inequality",
     lambda m, nb: m["M_bu"],
     lambda m, nb: 2.0 - math.sqrt(2.0) * math.sqrt(1.0 + (1.0 - m["R_bu"]) ** 2)),
)

_CONJECTURE = (
    "conjecture-hellinger-meas-root-trace-meas", "conjecture",
    lambda m, nb: m["M_he"], lambda m, nb: _C * math.sqrt(max(m["M_tr"], 0.0)),
)


def _evaluate(entries, m, n_b, tol, identity_tol):
    records = []
    for name, kind, lhs_fn, rhs_fn in entries:
        lhs = float(lhs_fn(m, n_b))
        rhs = float(rhs_fn(m, n_b))
        slack = rhs - lhs
        if kind == "identity":
            satisfied = abs(slack) <= identity_tol
        else:
            satisfied = slack >= -tol
        records.append(BoundRecord(name, kind, lhs, rhs, slack, satisfied))
    return tuple(records)


def audit(
    rho: DensityMatrix,
    tol: float = 1e-5,
    identity_tol: float = 1e-4,
    config: OptimizerConfig | None = None,
) -> BoundReport:
    """Evaluate all twelve measures once and check every ledger relation."""
    if rho.n_a != 2:
        raise UnsupportedDimension("the full ledger is defined for n_a = 2")
    results = all_measures(rho, config or DEFAULT_CONFIG)
    m = {k: r.value for k, r in results.items()}
    entries = list(_REGISTRY)
    if rho.n_b == 2:
        entries.append(_CONJECTURE)
    records = _evaluate(entries, m, rho.n_b, tol, identity_tol)
    return BoundReport(
        records=records,
        measures=m,
        n_a=rho.n_a,
        n_b=rho.n_b,
        tol_inequality=tol,
        tol_identity=identity_tol,
    )


_PURE_SATURATION = (
    # Bounds proven to become equalities on pure states; both sides come from
    # the independent pure-state closed forms.
    ("pure-response-bures-hellinger-root", "identity",
     lambda m, nb: 1.0 - math.sqrt(max(1.0 - m["R_he"], 0.0)),
     lambda m, nb: m["R_bu"]),
    ("pure-response-hs-equals-trace", "identity",
     lambda m, nb: m["R_hs"], lambda m, nb: m["R_tr"]),
    ("pure-response-trace-bures-arc", "identity",
     lambda m, nb: m["R_tr"], lambda m, nb: 2.0 * m["R_bu"] - m["R_bu"] ** 2),
    ("pure-bures-meas-response-root-bound", "identity",
     lambda m, nb: m["M_bu"],
     lambda m, nb: 2.0 - math.sqrt(2.0) * math.sqrt(1.0 + (1.0 - m["R_bu"]) ** 2)),
    ("pure-geo-hellinger-ginv-h-bures", "identity",
     lambda m, nb: m["G_he"], lambda m, nb: _ginv_raw(_h_raw(m["G_bu"]))),
    ("pure-bures-meas-ginv-h-geo", "identity",
     lambda m, nb: m["M_bu"], lambda m, nb: _ginv_raw(_h_raw(m["G_bu"]))),
)


def pure_state_saturation_check(
    mu,
    tol: float = 1e-6,
    config: OptimizerConfig | None = None,
) -> BoundReport:
    """Verify the bounds that are saturated on pure states, as equalities."""
    table = pure_state_measure_table(mu, config)
    n = int(np.asarray(mu).size)
    records = _evaluate(_PURE_SATURATION, table, n, tol, tol)
    return BoundReport(
        records=records,
        measures=table,
        n_a=n,
        n_b=n,
        tol_inequality=tol,
        tol_identity=tol,
    )
