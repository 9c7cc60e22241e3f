"""
Módulo que verifica a correspondência entre um sistema e o seu dual.

Este módulo contém:
- check_fundamental_conjugation: Û(x,λ) = D(λ)⁻¹U(x,λ)D(λ), D(λ) = [[0, -1/λ], [1, 0]]
- check_duality_identity: q̂(λ) = -1/(λq(λ)) com q e q̂ calculados separadamente
"""

# krein_weyl/controllers/duality_controller.py
import logging
import math
from typing import Optional

import numpy as np
import sympy as sp

from ..errors import ExcludedPointError
from ..models.duality_report import DualityReport
from ..models.fundamental_matrix import LAMBDA, FundamentalMatrix, LambdaLike, as_complex
from ..models.integral_system import IntegralSystem
from ..settings import SolverSettings, resolve
from . import propagation_controller as propagation
from .system_controller import classify, dual, sample_points
from .weyl_controller import nd_m, principal_q

logger = logging.getLogger(__name__)


def swapped_system(system: IntegralSystem) -> IntegralSystem:
    """Par trocado S[R₂, R₁] sem validação (a conjugação é uma identidade algébrica)."""
    return IntegralSystem(
        system.r2,
        system.r1,
        endpoint=system.endpoint,
        definite=system.definite,
        name=system.name,
        allow_indefinite=True,
    )


def conjugated_entries(matrix: np.ndarray, lam: complex) -> np.ndarray:
    """D⁻¹UD: ĉ = (s₂, -λs₁), ŝ = (-c₂/λ, c₁)."""
    c1, s1 = matrix[0, 0], matrix[0, 1]
    c2, s2 = matrix[1, 0], matrix[1, 1]
    return np.array([[s2, -c2 / lam], [-lam * s1, c1]], dtype=complex)


def _poly_conjugation_residual(system: IntegralSystem, x: float) -> float:
    original = propagation.monodromy_polynomial(system, x)
    swapped = propagation.monodromy_polynomial(swapped_system(system), x)
    lam_poly = sp.Poly(LAMBDA, LAMBDA, domain=sp.QQ)
    expected = (
        original.s2,
        -original.c2.exquo(lam_poly),
        -lam_poly * original.s1,
        original.c1,
    )
    residual = 0
    for got, want in zip(swapped.entries(), expected):
        for coefficient in (got - want).all_coeffs():
            residual = max(residual, abs(coefficient))
    return float(residual)


def check_fundamental_conjugation(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    exact: bool = False,
    settings: Optional[SolverSettings] = None,
) -> float:
    """
    Resíduo máximo entre Û(x,λ), propagado no par trocado, e D⁻¹U(x,λ)D.

    Args:
        system: Sistema integral.
        x: Ponto de avaliação.
        lam: Parâmetro espectral (λ ≠ 0).
        exact: Compara as matrizes de polinômios em λ (só regiões atômicas);
            o resíduo é então o maior coeficiente da diferença, 0 quando a
            identidade vale exatamente.
        settings: Configurações numéricas.

    Returns:
        float: Resíduo absoluto, dividido pela escala comum das entradas quando
        ela passa de 1.

    Raises:
        ExcludedPointError: Se λ = 0.
    """
    value = as_complex(lam)
    if value == 0:
        raise ExcludedPointError(value)
    if exact:
        return _poly_conjugation_residual(system, x)

    config = resolve(settings)
    original = propagation.fundamental_matrix(system, x, value, config)
    swapped = propagation.fundamental_matrix(swapped_system(system), x, value, config)
    common = max(original.log_scale, swapped.log_scale)
    expected = conjugated_entries(original.normalized, value) * math.exp(
        original.log_scale - common
    )
    got = swapped.normalized * math.exp(swapped.log_scale - common)
    difference = float(np.max(np.abs(got - expected)))
    peak = max(float(np.max(np.abs(got))), float(np.max(np.abs(expected))))
    if common > 0 or peak > 1.0:
        return difference / max(peak, 1.0)
    return difference


def check_duality_identity(
    system: IntegralSystem,
    lam: LambdaLike,
    tol: Optional[float] = None,
    settings: Optional[SolverSettings] = None,
) -> DualityReport:
    """
    Verifica q̂(λ) = -1/(λq(λ)) com q̂ calculado no sistema dual pelo seu próprio regime.

    Para sistemas regulares confere também q̂ = -c₁(b)/(λs₁(b)). A conjugação
    Û = D⁻¹UD é conferida em todos os pontos de sample_points e o pior resíduo
    entra no relatório. A tolerância aceita é 2·(δq/(|λ||q|²) + δq̂) + tol,
    com δ os raios de erro.

    Raises:
        ExcludedPointError: Se λ = 0 ou λ > 0.
        IndefiniteSystemError: Se o dual não passar no teste de definitude.
    """
    config = resolve(settings)
    tol = config.tol if tol is None else tol
    value = as_complex(lam)
    if value == 0:
        raise ExcludedPointError(value)

    q = principal_q(system, value, tol=tol, settings=config)
    dual_system = dual(system, config)
    q_dual = principal_q(dual_system, value, tol=tol, settings=config)

    identity_residual = abs(q_dual.value + 1.0 / (value * q.value))
    regular_residual = None
    if classify(system).is_regular:
        regular_residual = abs(q_dual.value + 1.0 / (value * nd_m(system, value, config)))

    conjugation_residual = max(
        check_fundamental_conjugation(system, x, value, settings=config)
        for x in sample_points(system)
    )

    propagated = q.error_radius / (abs(value) * abs(q.value) ** 2)
    tolerance = 2.0 * (propagated + q_dual.error_radius) + tol
    report = DualityReport(
        value,
        q,
        q_dual,
        identity_residual,
        conjugation_residual,
        tolerance,
        regular_residual,
    )
    if not report.passed:
        logger.warning("Identidade de dualidade falhou em λ=%s: %r", value, report)
    return report
