"""
Módulo que define o serviço da bateria de identidades de um sistema.

A bateria reúne os verificadores do propagador e da análise de Weyl:
Wronskiano, Green, núcleo, lei dos discos (raio, pertinência, aninhamento),
amostragem da propriedade de Stieltjes, conjugação dual, sondas assintóticas e,
para sistemas puramente atômicos, as verificações exatas em modo polinomial.
"""

# krein_weyl/services/suite_service.py
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..controllers import propagation_controller as propagation
from ..controllers import weyl_controller as weyl
from ..controllers.duality_controller import check_fundamental_conjugation
from ..controllers.system_controller import sample_points
from ..errors import IntegralSystemError
from ..models.integral_system import IntegralSystem
from ..settings import SolverSettings, resolve
from ..utils.piecewise_polynomial import to_rational

logger = logging.getLogger(__name__)

IDENTITY_LAMBDAS = (1j, 1 + 1j, -2.0)
UPPER_LAMBDAS = (1j, 1 + 1j, -1 + 1j, 0.5j)
NEGATIVE_LAMBDAS = (-0.5, -2.0)
GREEN_MU = -1.0 + 0.5j
DISC_LAMBDA = 1j
DISC_COUNT = 5
SERIES_ORDER = 6

WRONSKIAN_TOL = 1e-10
GREEN_TOL = 1e-9
RADIUS_TOL = 1e-8
MEMBERSHIP_TOL = 1e-7
NESTING_TOL = 1e-9
STIELTJES_TOL = 1e-10
ASYMPTOTIC_TOL = 1e-2


@dataclass
class SuiteCheck:
    """Um resíduo da bateria com a sua tolerância."""

    name: str
    residual: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass
class SuiteResult:
    """Resultado da bateria para um sistema."""

    system_name: str
    checks: List[SuiteCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[SuiteCheck]:
        return [check for check in self.checks if not check.passed]


class SuiteService:
    """
    Serviço responsável por executar a bateria de identidades.

    Responsabilidades:
    - Escolher os pontos x e λ de amostragem de cada verificação.
    - Ajustar as tolerâncias absolutas à escala de U(x, λ).
    - Transformar falhas estruturadas em verificações reprovadas.
    """

    def __init__(self, settings: Optional[SolverSettings] = None):
        self.settings = resolve(settings)

    # --- Pontos de amostragem ---

    @staticmethod
    def sample_points(system: IntegralSystem) -> List[float]:
        return sample_points(system)

    def disc_truncations(self, system: IntegralSystem) -> List[float]:
        """Truncamentos crescentes para a lei dos discos."""
        if math.isfinite(system.endpoint):
            end = system.endpoint
            if end == 0:
                return []
            return [end * (k + 1) / DISC_COUNT for k in range(DISC_COUNT)]
        schedule = weyl.truncation_schedule(system, self.settings.budget)
        return [l for _, l in zip(range(DISC_COUNT), schedule)]

    def _scale(self, system: IntegralSystem, x: float, lam: complex) -> float:
        left = propagation.fundamental_matrix(system, x, lam, self.settings)
        right = propagation.fundamental_matrix_right(system, x, lam, self.settings)
        peak = float(max(np.max(np.abs(left.as_array())), np.max(np.abs(right.as_array()))))
        return max(1.0, peak * peak)

    # --- Execução ---

    def _guarded(self, result: SuiteResult, name: str, action: Callable[[], None]) -> None:
        try:
            action()
        except IntegralSystemError as e:
            logger.warning("Verificação %s falhou: %s", name, e)
            result.checks.append(SuiteCheck(name, math.inf, 0.0, str(e)))

    def run(self, system: IntegralSystem) -> SuiteResult:
        """
        Executa a bateria completa.

        Returns:
            SuiteResult: Todas as verificações com resíduos e tolerâncias.
        """
        result = SuiteResult(system.name or "sistema")
        points = self.sample_points(system)
        self._guarded(result, "identities", lambda: self._identities(system, points, result))
        self._guarded(result, "weyl_discs", lambda: self._disc_law(system, result))
        self._guarded(result, "stieltjes", lambda: self._stieltjes_sampling(system, result))
        self._guarded(result, "conjugation", lambda: self._conjugation(system, points, result))
        self._guarded(result, "asymptotics", lambda: self._asymptotics(system, result))
        if self.is_atomic(system):
            self._guarded(result, "exact", lambda: self._exact(system, result))
        status = "PASS" if result.passed else "FAIL"
        logger.info("Bateria de %s: %s (%d verificações)", result.system_name, status, len(result.checks))
        return result

    @staticmethod
    def is_atomic(system: IntegralSystem) -> bool:
        """Sistema sem segmentos com densidade e sem caudas."""
        measures = (system.r1, system.r2)
        return all(m.is_finite and not any(d > 0 for _, _, d in m.segments) for m in measures)

    def _identities(self, system: IntegralSystem, points: Sequence[float], result: SuiteResult) -> None:
        for lam in IDENTITY_LAMBDAS:
            for x in points:
                scale = self._scale(system, x, lam)
                tag = f"x={x:g}, lambda={lam}"
                report = propagation.check_wronskian(system, x, lam, self.settings)
                result.checks.append(
                    SuiteCheck("wronskian", report.max_residual, WRONSKIAN_TOL * scale, tag)
                )
                report = propagation.check_green(system, x, lam, GREEN_MU, self.settings)
                result.checks.append(SuiteCheck("green", report.max_residual, GREEN_TOL * scale, tag))
                report = propagation.check_kernel_identity(system, x, lam, GREEN_MU, self.settings)
                result.checks.append(SuiteCheck("kernel", report.max_residual, GREEN_TOL * scale, tag))

    def _disc_law(self, system: IntegralSystem, result: SuiteResult) -> None:
        discs = [
            weyl.weyl_disc(system, l, DISC_LAMBDA, self.settings)
            for l in self.disc_truncations(system)
        ]
        bounded = [disc for disc in discs if disc.is_bounded]
        worst_nesting = 0.0
        for outer, inner in zip(bounded, bounded[1:]):
            excess = abs(inner.center - outer.center) - (outer.radius - inner.radius)
            worst_nesting = max(worst_nesting, excess / (1.0 + abs(outer.center)))
        result.checks.append(SuiteCheck("nesting", worst_nesting, NESTING_TOL))
        if not bounded:
            return

        # truncamento intermediário: s₁ - ωc₁ cancela pouco
        disc = bounded[len(bounded) // 2]
        l = disc.truncation
        quadrature = weyl.radius_by_quadrature(system, l, DISC_LAMBDA, self.settings)
        relative = abs(quadrature - disc.radius) / disc.radius
        result.checks.append(SuiteCheck("disc_radius", relative, RADIUS_TOL, f"l={l:g}"))
        worst = 0.0
        for theta in (0.3, 1.7, 4.0):
            omega = disc.boundary_point(theta)
            residual = weyl.membership_residual(system, l, DISC_LAMBDA, omega, self.settings)
            worst = max(worst, abs(residual) / (1.0 + omega.imag / DISC_LAMBDA.imag))
        result.checks.append(SuiteCheck("disc_membership", worst, MEMBERSHIP_TOL, f"l={l:g}"))

    def _stieltjes_sampling(self, system: IntegralSystem, result: SuiteResult) -> None:
        worst = 0.0
        for lam in UPPER_LAMBDAS:
            q = weyl.principal_q(system, lam, settings=self.settings)
            worst = max(worst, -q.value.imag)
            mirrored = weyl.principal_q(system, complex(lam).conjugate(), settings=self.settings)
            worst = max(worst, abs(mirrored.value - q.value.conjugate()))
        for lam in NEGATIVE_LAMBDAS:
            q = weyl.principal_q(system, lam, settings=self.settings)
            worst = max(worst, abs(q.value.imag), -q.value.real)
        if worst > STIELTJES_TOL:
            logger.warning("Amostragem de Stieltjes violada em %s: %.3e", result.system_name, worst)
        result.checks.append(SuiteCheck("stieltjes", worst, STIELTJES_TOL))

    def _conjugation(self, system: IntegralSystem, points: Sequence[float], result: SuiteResult) -> None:
        worst = 0.0
        for lam in IDENTITY_LAMBDAS:
            for x in points:
                worst = max(worst, check_fundamental_conjugation(system, x, lam, settings=self.settings))
        result.checks.append(SuiteCheck("conjugation", worst, WRONSKIAN_TOL))

    def _asymptotics(self, system: IntegralSystem, result: SuiteResult) -> None:
        for name, residual in weyl.asymptotic_residuals(system, self.settings).items():
            result.checks.append(SuiteCheck(f"asymptotic_{name}", residual, ASYMPTOTIC_TOL))

    def _exact(self, system: IntegralSystem, result: SuiteResult) -> None:
        x = system.endpoint
        polynomial = propagation.monodromy_polynomial(system, x)
        one = polynomial.determinant() - 1
        mismatch = max(abs(c) for c in one.all_coeffs())

        exact_x = to_rational(x)
        expected_s1 = system.r1.cdf().evaluate(exact_x)
        at_zero = (
            polynomial.coefficient("c1", 0) - 1,
            polynomial.coefficient("c2", 0),
            polynomial.coefficient("s1", 0) - expected_s1,
            polynomial.coefficient("s2", 0) - 1,
        )
        mismatch = max([mismatch] + [abs(v) for v in at_zero])

        series = propagation.series_coefficients(system, x, SERIES_ORDER)
        for k in range(1, SERIES_ORDER + 1):
            sign = (-1) ** k
            mismatch = max(
                mismatch,
                abs(polynomial.coefficient("c1", k) - sign * series.exact_phi[k - 1]),
                abs(polynomial.coefficient("c2", k) - sign * series.exact_psi[k - 1]),
            )
        result.checks.append(SuiteCheck("exact_polynomial", float(mismatch), 0.0, f"x={x:g}"))

        conjugation = check_fundamental_conjugation(system, x, 1.0, exact=True)
        result.checks.append(SuiteCheck("exact_conjugation", conjugation, 0.0, f"x={x:g}"))
