"""Admissibility checks for a (field case, angular momentum) pair."""
from dataclasses import dataclass
from typing import Optional, Tuple

from .base import ZeroModeVerdict
from .cases import ConstantField, Eckart, PoschlTeller, GeneralizedPT, Tabulated
from .gauges import get_gauge


@dataclass(frozen=True)
class ValidationReport:
    """What is known about a (case, lambda) pair before any solve.

    `bound_states` is None when only the numeric engine can tell.
    """
    case_tag: str
    lambda_value: float
    non_physical: bool
    analytic_available: bool
    zero_mode: ZeroModeVerdict
    bound_states: Optional[bool]
    notes: Tuple[str, ...] = ()

    @property
    def ok(self):
        return bool(self.analytic_available and self.bound_states)

    def to_dict(self):
        return {"case": self.case_tag,
                "lambda": self.lambda_value,
                "non_physical": self.non_physical,
                "analytic_available": self.analytic_available,
                "zero_mode": self.zero_mode.status.value,
                "origin_exponent": self.zero_mode.origin_exponent,
                "decay_rate": self.zero_mode.decay_rate,
                "bound_states": self.bound_states,
                "notes": list(self.notes)}


def validate_case(case, lam):
    """Flag analytic solvability, zero-mode admissibility and bound-state existence.

    Never raises on physically inadmissible input. Malformed parameters are
    already rejected with `InvalidParameter` when the case is built.
    """
    gauge = get_gauge(case)
    verdict = gauge.zero_mode_verdict(lam)
    analytic = gauge.analytic_available(lam)
    notes = []

    if not lam.is_physical:
        notes.append("lambda={} is not half-odd: non-physical".format(lam))

    if isinstance(case, ConstantField) and not case.A0 > 0:
        notes.append("A0={} must be > 0 for bound states".format(case.A0))
    if isinstance(case, (Eckart, PoschlTeller)) and not analytic:
        notes.append("closed form needs lambda == lambda'={}".format(case.lambda_prime))
    if isinstance(case, PoschlTeller) and case.D2 != 0:
        notes.append("closed form needs D2 = 0")
    if isinstance(case, GeneralizedPT) and case.D3 != 0:
        notes.append("D3={} has no closed form; numeric engine only".format(case.D3))
    if isinstance(case, Tabulated):
        notes.append("tabulated gauge carries finite flux: no normalizable zero mode")
    if not verdict.admissible:
        notes.append("zero mode {}".format(verdict.status.value.replace("_", " ")))

    # the closed-form towers all sit on the zero mode
    bound_states = verdict.admissible if analytic else None
    if isinstance(case, Tabulated):
        bound_states = None

    return ValidationReport(case_tag=case.tag,
                            lambda_value=lam.value,
                            non_physical=not lam.is_physical,
                            analytic_available=analytic,
                            zero_mode=verdict,
                            bound_states=bound_states,
                            notes=tuple(notes))
