"""Norm-dispatched analysis entry points."""

from __future__ import annotations

from .frameworks import Framework, RigidityReport
from .lq import analyze
from .norms import LqNorm
from .polytope import analyze_poly


def analyze_framework(framework: Framework, tol=None) -> RigidityReport:
    """Analyze under the framework's own norm (lq or polytopic)."""
    if isinstance(framework.norm, LqNorm):
        return analyze(framework, tol=tol)
    return analyze_poly(framework, tol=tol)
