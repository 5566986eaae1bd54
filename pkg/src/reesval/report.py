"""Outcome records shared by the verification routines and the CLI."""

import math


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if type(x).__name__ == "mpq":
        return str(x)
    return str(x)


class VerificationReport:
    """Result of checking one claim.

    ``status`` is ``"pass"``, ``"fail"`` or ``"inconclusive"``; ``values``
    holds the computed quantities and ``witness`` anything that explains a
    failure.
    """

    def __init__(self, claim, status, values=None, witness=None, notes=None):
        self.claim = claim
        self.status = status
        self.values = dict(values or {})
        self.witness = witness
        self.notes = list(notes or [])

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        out = {"claim": self.claim, "status": self.status}
        out.update({k: _jsonable(v) for k, v in self.values.items()})
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def __repr__(self):
        vals = ", ".join(f"{k}={v}" for k, v in self.values.items())
        return f"<{self.claim} {self.status} {vals}>"


def status_of(ok):
    return "pass" if ok else "fail"
