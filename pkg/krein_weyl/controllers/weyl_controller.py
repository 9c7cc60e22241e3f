"""
Módulo que implementa a análise de Weyl do sistema integral.

Este módulo contém:
- m_coefficient: m(λ, l, h) = (s₁ + h s₂)/(c₁ + h c₂) em x = l
- weyl_disc, radius_by_quadrature, membership_residual: discos de Weyl
- principal_q: coeficiente principal de Titchmarsh-Weyl com raio de erro
- neumann_m, nd_m: funções de Neumann m(λ, b, ∞) e m(λ, b, 0)
- neumann_asymptotics, asymptotic_residuals: sondas λ → -∞ e λ → 0-
- weyl_solution, slp_diagnostic: solução de Weyl e traço |ψ₁ψ₂|
"""

# krein_weyl/controllers/weyl_controller.py
import logging
import math
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..errors import (
    DivisionDegenerateError,
    ExcludedPointError,
    ImaginaryPartRequiredError,
    InfiniteR2TotalError,
    NotRegularError,
    NotSingularError,
    ToleranceUnreachableError,
    ZeroMeasureError,
)
from ..models.fundamental_matrix import (
    FundamentalMatrix,
    LambdaLike,
    StateVector,
    as_complex,
)
from ..models.integral_system import IntegralSystem
from ..models.weyl_disc import AsymptoticLimit, QEnclosure, Regime, WeylDisc
from ..settings import SolverSettings, resolve
from . import propagation_controller as propagation
from .system_controller import classify

logger = logging.getLogger(__name__)

# Pontos das sondas assintóticas
MINUS_INFINITY_SAMPLE = -1e8
ZERO_MINUS_SAMPLE = -1e-8

# Denominadores abaixo desta fração da escala são tratados como nulos
DEGENERATE_RATIO = 1e-14

# Folga relativa nas comparações com discos de Weyl
DISC_SLACK = 1e-8

# Limite de duplicações do truncamento de Dirichlet no diagnóstico
MAX_DIRICHLET_DOUBLINGS = 60

BoundaryParameter = Optional[Union[complex, float]]


def _ratio(numerator: complex, denominator: complex, scale: float, l: float, h) -> complex:
    if abs(denominator) <= DEGENERATE_RATIO * scale or denominator == 0:
        raise DivisionDegenerateError(l, h)
    return numerator / denominator


def m_coefficient(
    system: IntegralSystem,
    l: float,
    h: BoundaryParameter,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> complex:
    """
    Calcula m(λ, l, h) tal que ψ = s - m·c satisfaz ψ₁(l) + h·ψ₂(l) = 0.

    Args:
        system: Sistema integral.
        l: Ponto de truncamento (l <= b).
        h: Parâmetro de contorno; None ou math.inf dão s₂/c₂.
        lam: Parâmetro espectral.

    Raises:
        DivisionDegenerateError: Se c₁ + h·c₂ se anular em l.
    """
    entries = propagation.fundamental_matrix(system, l, lam, settings).normalized
    c1, s1, c2, s2 = entries[0, 0], entries[0, 1], entries[1, 0], entries[1, 1]
    if h is None or (isinstance(h, float) and math.isinf(h)):
        return _ratio(s2, c2, abs(c2) + abs(s2), l, h)
    h_value = complex(h)
    denominator = c1 + h_value * c2
    return _ratio(s1 + h_value * s2, denominator, abs(c1) + abs(h_value * c2), l, h)


# --- Discos de Weyl ---


def disc_from_matrix(matrix: FundamentalMatrix, l: float, lam: complex) -> WeylDisc:
    """
    Centro e raio do círculo imagem da reta real por h ↦ (s₁ + h s₂)/(c₁ + h c₂).

    centro = (s₁c̄₂ - s₂c̄₁)/(c₁c̄₂ - c₂c̄₁), raio = |det U|/|c₁c̄₂ - c₂c̄₁|;
    ambos independem da escala comum das entradas.
    """
    e = matrix.normalized
    c1, s1, c2, s2 = e[0, 0], e[0, 1], e[1, 0], e[1, 1]
    denominator = c1 * c2.conjugate() - c2 * c1.conjugate()
    if abs(denominator) <= 1e-300:
        return WeylDisc(None, math.inf, l, lam)
    center = (s1 * c2.conjugate() - s2 * c1.conjugate()) / denominator
    radius = abs(c1 * s2 - c2 * s1) / abs(denominator)
    return WeylDisc(center, radius, l, lam)


def weyl_disc(
    system: IntegralSystem,
    l: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> WeylDisc:
    """
    Disco de Weyl D_l(λ).

    Raises:
        ImaginaryPartRequiredError: Se Im λ <= 0.
    """
    value = as_complex(lam)
    if value.imag <= 0:
        raise ImaginaryPartRequiredError(value)
    matrix = propagation.fundamental_matrix(system, l, value, settings)
    return disc_from_matrix(matrix, l, value)


def radius_by_quadrature(
    system: IntegralSystem,
    l: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> float:
    """Raio 1/(2·Im λ·∫₀ˡ |c₁|² dR₂) com a integral por quadratura."""
    value = as_complex(lam)
    if value.imag <= 0:
        raise ImaginaryPartRequiredError(value)
    samples = propagation.solution_samples(system, l, value, settings)
    integral = sum(w * abs(u[0, 0]) ** 2 for w, u in samples.r2_nodes)
    if integral == 0:
        return math.inf
    return 1.0 / (2.0 * value.imag * integral)


def membership_residual(
    system: IntegralSystem,
    l: float,
    lam: LambdaLike,
    omega: complex,
    settings: Optional[SolverSettings] = None,
) -> float:
    """
    ∫₀ˡ |s₁ - ωc₁|² dR₂ - Im ω/Im λ (<= 0 dentro do disco, 0 na circunferência).
    """
    value = as_complex(lam)
    if value.imag <= 0:
        raise ImaginaryPartRequiredError(value)
    samples = propagation.solution_samples(system, l, value, settings)
    integral = sum(w * abs(u[0, 1] - omega * u[0, 0]) ** 2 for w, u in samples.r2_nodes)
    return integral - omega.imag / value.imag


def truncation_schedule(system: IntegralSystem, budget: int) -> Iterator[float]:
    """
    Pontos de truncamento: todos os pontos de quebra e depois duplicações a
    partir de max(b_rep, 1), em no máximo `budget` duplicações.
    """
    last = 0.0
    for point in system.breakpoints():
        if point > last:
            last = point
            yield point
    start = max(system.described_end, 1.0)
    for k in range(budget):
        point = start * 2.0**k
        if point > last:
            last = point
            yield point


# --- Coeficiente principal ---


def warn_if_outside_disc(matrix: FundamentalMatrix, l: float, value: complex, q: complex) -> bool:
    """
    Registra um WARNING se q não estiver no disco de Weyl do último truncamento.

    Só se aplica a Im λ > 0. Retorna True quando q está dentro do disco.
    """
    if value.imag <= 0:
        return True
    disc = disc_from_matrix(matrix, l, value)
    slack = DISC_SLACK * (1.0 + (abs(disc.center) if disc.is_bounded else 0.0))
    if disc.contains(q, slack):
        return True
    logger.warning("q=%s fora do disco de Weyl em l=%g: %r", q, l, disc)
    return False



def _nested_discs(
    system: IntegralSystem, value: complex, tol: float, budget: int, config: SolverSettings
) -> QEnclosure:
    current = FundamentalMatrix.identity()
    position = 0.0
    previous: Optional[WeylDisc] = None
    iterations = 0
    for l in truncation_schedule(system, budget):
        current = propagation.propagate(system, current, position, l, value, config)
        position = l
        iterations += 1
        disc = disc_from_matrix(current, l, value)
        if previous is not None and disc.is_bounded and previous.is_bounded:
            slack = DISC_SLACK * (1.0 + abs(previous.center))
            if not disc.is_nested_in(previous, slack):
                logger.warning("Discos não aninhados em l=%g (raio %.3e).", l, disc.radius)
        logger.debug("Truncamento l=%g: raio %.3e", l, disc.radius)
        previous = disc
        if disc.is_bounded and disc.radius < tol:
            return QEnclosure(disc.center, disc.radius, Regime.LIMIT_POINT_NESTED, iterations)
    last_radius = previous.radius if previous is not None else math.inf
    raise ToleranceUnreachableError(iterations, last_radius)


def _real_axis_limit(
    system: IntegralSystem, value: complex, tol: float, budget: int, config: SolverSettings
) -> QEnclosure:
    """
    Para λ < 0: s₁/c₁ cresce e s₂/c₂ decresce até q, com s₂/c₂ - s₁/c₁ = 1/(c₁c₂).
    """
    current = FundamentalMatrix.identity()
    position = 0.0
    iterations = 0
    gap = math.inf
    for l in truncation_schedule(system, budget):
        current = propagation.propagate(system, current, position, l, value, config)
        position = l
        iterations += 1
        e = current.normalized
        c1, s1, c2 = e[0, 0].real, e[0, 1].real, e[1, 0].real
        if c1 <= 0 or c2 <= 0:
            continue
        gap = math.exp(-2.0 * current.log_scale) / (c1 * c2)
        logger.debug("Truncamento l=%g: intervalo %.3e", l, gap)
        if gap < tol:
            lower = s1 / c1
            return QEnclosure(
                complex(lower + gap / 2.0), gap / 2.0, Regime.LIMIT_POINT_NESTED, iterations
            )
    raise ToleranceUnreachableError(iterations, gap / 2.0)


def principal_q(
    system: IntegralSystem,
    lam: LambdaLike,
    tol: Optional[float] = None,
    budget: Optional[int] = None,
    settings: Optional[SolverSettings] = None,
) -> QEnclosure:
    """
    Coeficiente principal de Titchmarsh-Weyl q(λ).

    Regimes:
        Regular: s₁/c₁ em b (pela direita), erro 0.
        Singular, círculo limite: s₂/c₂ após o suporte de dR₂, erro 0.
        Singular, ponto limite: discos de Weyl aninhados (Im λ ≠ 0) ou
            intervalo [s₁/c₁, s₂/c₂] (λ < 0) até o raio ficar abaixo de tol.

    Raises:
        ExcludedPointError: Se λ for real e >= 0.
        ToleranceUnreachableError: Se o orçamento de truncamentos acabar.
        DivisionDegenerateError: Se o denominador da fórmula fechada se anular.
    """
    config = resolve(settings)
    tol = config.tol if tol is None else tol
    budget = config.budget if budget is None else budget
    value = as_complex(lam)
    if value.imag == 0 and value.real >= 0:
        raise ExcludedPointError(value)

    classification = classify(system)
    if classification.is_regular:
        b = system.regular_end()
        matrix = propagation.fundamental_matrix_right(system, b, value, config)
        e = matrix.normalized
        q = _ratio(e[0, 1], e[0, 0], abs(e[0, 0]) + abs(e[0, 1]), b, 0.0)
        warn_if_outside_disc(matrix, b, value, q)
        return QEnclosure(q, 0.0, Regime.REGULAR_CLOSED_FORM)
    if not classification.is_limit_point:
        x = system.r2.support_end()
        matrix = propagation.fundamental_matrix_right(system, x, value, config)
        e = matrix.normalized
        q = _ratio(e[1, 1], e[1, 0], abs(e[1, 0]) + abs(e[1, 1]), x, None)
        warn_if_outside_disc(matrix, x, value, q)
        return QEnclosure(q, 0.0, Regime.LIMIT_CIRCLE_CLOSED_FORM)

    if value.imag < 0:
        return principal_q(system, value.conjugate(), tol, budget, config).conjugate()
    if value.imag == 0:
        enclosure = _real_axis_limit(system, value, tol, budget, config)
    else:
        enclosure = _nested_discs(system, value, tol, budget, config)
    logger.info(
        "q(%s) = %s ± %.3e após %d truncamentos",
        value,
        enclosure.value,
        enclosure.error_radius,
        enclosure.iterations,
    )
    return enclosure


def neumann_m(
    system: IntegralSystem,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> complex:
    """
    Função de Neumann m(λ, b, ∞) = s₂/c₂ no fim do suporte de dR₂ (u₂(b) = 0).

    Coincide com q no caso singular de círculo limite.

    Raises:
        InfiniteR2TotalError: Se R₂(b) = ∞.
        ExcludedPointError: Se λ = 0.
    """
    if not system.r2.is_finite:
        raise InfiniteR2TotalError()
    value = as_complex(lam)
    if value == 0:
        raise ExcludedPointError(value)
    x = system.r2.support_end()
    e = propagation.fundamental_matrix_right(system, x, value, settings).normalized
    return _ratio(e[1, 1], e[1, 0], abs(e[1, 0]) + abs(e[1, 1]), x, None)


def nd_m(
    system: IntegralSystem,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> complex:
    """
    m(λ, b, 0) = s₁(b)/c₁(b) de um sistema regular (condição u₁(b) = 0 do problema
    com extremo esquerdo de Neumann).

    Raises:
        NotRegularError: Se o sistema não for regular.
    """
    if not classify(system).is_regular:
        raise NotRegularError("m(λ, b, 0) exige sistema regular.")
    b = system.regular_end()
    e = propagation.fundamental_matrix_right(system, b, lam, settings).normalized
    return _ratio(e[0, 1], e[0, 0], abs(e[0, 0]) + abs(e[0, 1]), b, 0.0)


def weyl_solution(
    system: IntegralSystem,
    lam: LambdaLike,
    x: float,
    tol: Optional[float] = None,
    settings: Optional[SolverSettings] = None,
) -> StateVector:
    """Solução de Weyl ψ = s - q·c avaliada em x."""
    q = principal_q(system, lam, tol=tol, settings=settings).value
    matrix = propagation.fundamental_matrix(system, x, lam, settings)
    return StateVector(matrix.s1 - q * matrix.c1, matrix.s2 - q * matrix.c2)


# --- Assintótica ---


def neumann_asymptotics(system: IntegralSystem, limit: AsymptoticLimit) -> float:
    """
    Limite previsto a partir das medidas (sem propagação).

    MINUS_INFINITY: lim_{λ→-∞} m_N(λ) = R₁₊(a), com a = inf supp dR₂.
    ZERO_MINUS: lim_{λ→0-} λ·m_N(λ) = -1/R₂(b).

    Raises:
        InfiniteR2TotalError: ZERO_MINUS com R₂(b) = ∞.
        ZeroMeasureError: Se dR₂ for nula.
    """
    if limit is AsymptoticLimit.MINUS_INFINITY:
        return system.r1.eval_right(system.r2.inf_support())
    if not system.r2.is_finite:
        raise InfiniteR2TotalError()
    total = system.r2.total_variation()
    if total == 0:
        raise ZeroMeasureError()
    return -1.0 / total


def asymptotic_residuals(
    system: IntegralSystem, settings: Optional[SolverSettings] = None
) -> Dict[str, float]:
    """
    Compara os limites assintóticos com valores propagados.

    minus_infinity: |q(-1e8) - R₁₊(a)| / (1 + R₁₊(a)).
    zero_minus (só com R₂(b) < ∞): |λ·m_N(λ) + 1/R₂(b)|·R₂(b) em λ = -1e-8.
    """
    residuals: Dict[str, float] = {}
    limit = neumann_asymptotics(system, AsymptoticLimit.MINUS_INFINITY)
    q = principal_q(system, MINUS_INFINITY_SAMPLE, settings=settings).value
    residuals["minus_infinity"] = abs(q - limit) / (1.0 + abs(limit))
    if system.r2.is_finite:
        total = system.r2.total_variation()
        scaled = ZERO_MINUS_SAMPLE * neumann_m(system, ZERO_MINUS_SAMPLE, settings)
        residuals["zero_minus"] = abs(scaled + 1.0 / total) * total
    return residuals


# --- Diagnóstico de ponto limite forte ---


def _dirichlet_trace(
    system: IntegralSystem,
    value: complex,
    grid: Sequence[float],
    truncation: float,
    config: SolverSettings,
) -> List[float]:
    """
    |ψ₁ψ₂| para a solução com ψ₁(L) = 0 e ψ₂(0) = 1, pela transferência x → L.

    Com T = U(L)U(x)⁻¹ vale ψ(x) ∝ (-T₁₂, T₁₁); no eixo negativo as entradas de T
    são positivas e o cálculo não sofre cancelamento.
    """
    origin = propagation.transfer_matrix(system, 0.0, truncation, value, settings=config)
    log_norm = 2.0 * (math.log(abs(origin.normalized[0, 0])) + origin.log_scale)
    trace = []
    for x in grid:
        t = propagation.transfer_matrix(system, x, truncation, value, settings=config)
        product = abs(t.normalized[0, 1] * t.normalized[0, 0])
        if product == 0:
            trace.append(0.0)
            continue
        exponent = math.log(product) + 2.0 * t.log_scale - log_norm
        trace.append(math.exp(exponent) if exponent > -745 else 0.0)
    return trace


def slp_diagnostic(
    system: IntegralSystem,
    lam: LambdaLike,
    grid: Sequence[float],
    settings: Optional[SolverSettings] = None,
) -> List[Tuple[float, float]]:
    """
    Traço x ↦ |ψ₁(x)ψ₂(x)| da solução de Weyl em λ < 0.

    No caso de ponto limite ψ é o limite das soluções de Dirichlet truncadas
    (L dobrado até o traço estabilizar). No círculo limite usa-se o
    representante de Neumann ψᴺ = s - q·c com q = s₂/c₂, que tem ψ₂ ≡ 0 após
    o suporte de dR₂.

    Raises:
        ExcludedPointError: Se λ não for real negativo.
        NotSingularError: Se o sistema for regular.
    """
    config = resolve(settings)
    value = as_complex(lam)
    if value.imag != 0 or value.real >= 0:
        raise ExcludedPointError(value)
    classification = classify(system)
    if classification.is_regular:
        raise NotSingularError("Diagnóstico de ponto limite forte exige sistema singular.")
    points = sorted(float(x) for x in grid)
    if not points:
        return []

    if not classification.is_limit_point:
        q = principal_q(system, value, settings=config).value.real
        trace = []
        for x in points:
            matrix = propagation.fundamental_matrix(system, x, value, config)
            psi1 = matrix.s1 - q * matrix.c1
            psi2 = matrix.s2 - q * matrix.c2
            trace.append((x, abs(psi1 * psi2)))
        return trace

    truncation = max(2.0 * points[-1], system.described_end + 1.0, 1.0)
    previous = _dirichlet_trace(system, value, points, truncation, config)
    for _ in range(MAX_DIRICHLET_DOUBLINGS):
        truncation *= 2.0
        current = _dirichlet_trace(system, value, points, truncation, config)
        change = max(
            abs(a - b) / max(abs(b), 1e-300) if (a or b) else 0.0
            for a, b in zip(current, previous)
        )
        previous = current
        if change < config.diagnostic_tol:
            break
    else:
        logger.warning("Traço de Dirichlet não estabilizou até L=%g.", truncation)
    return list(zip(points, previous))
