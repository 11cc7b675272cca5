"""Result record for the numerical verification checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one projective identity check.

    ``lam`` is the single scalar recovered by the comparison (identities
    hold only up to one overall factor), ``deviation`` the relative
    Frobenius mismatch after dividing that scalar out.
    """

    name: str
    deviation: float
    lam: complex
    tol: float
    passed: bool
    context: dict = field(default_factory=dict)

    def oneline(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: deviation={self.deviation:.3e} (tol={self.tol:.1e})"
