"""
incidence 패키지: 원형 반선형 도표 (W_i, φ_i, ψ_i) 의 직선 모음 풀이

@since 2026-10-16
"""

from app.incidence.diagram import CircularDiagram, Link, canonical_witness, in_U_r, validate
from app.incidence.solver import LineSolution, brute_force_lines, solve_lines, verify_lines

__all__ = [
    "CircularDiagram",
    "Link",
    "canonical_witness",
    "in_U_r",
    "validate",
    "LineSolution",
    "brute_force_lines",
    "solve_lines",
    "verify_lines",
]
