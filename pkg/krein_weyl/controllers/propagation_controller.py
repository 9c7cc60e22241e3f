"""
Módulo que implementa o propagador do sistema integral.

Este módulo contém:
- fundamental_matrix / fundamental_matrix_right: U(x, λ) pela esquerda e pela direita
- transfer_matrix: U(stop)·U(start)⁻¹ para propagação incremental
- monodromy_polynomial: U exato em λ para regiões puramente atômicas
- series_coefficients: coeficientes φₙ, ψₙ por integrais de Stieltjes iteradas
- solution_samples: nós de quadratura de dR₁ e dR₂ com U em cada nó
- check_wronskian, check_green, check_kernel_identity: resíduos das identidades
"""

# krein_weyl/controllers/propagation_controller.py
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..errors import NonAtomicRegionError
from ..models.fundamental_matrix import (
    FundamentalMatrix,
    LambdaLike,
    MonodromyPolynomial,
    SeriesCoefficients,
    as_complex,
)
from ..models.identity_report import IdentityReport
from ..models.integral_system import IntegralSystem
from ..settings import SolverSettings, resolve
from ..utils import transfer_matrices as tm
from ..utils.piecewise_polynomial import PiecewisePolynomial, to_rational
from ..utils.quadrature import gauss_legendre_nodes

logger = logging.getLogger(__name__)

# Eventos da varredura em x
ATOM_R1 = "atom_r1"
ATOM_R2 = "atom_r2"
SEGMENT = "segment"

Event = Tuple  # (ATOM_R1, p, massa) | (ATOM_R2, p, massa) | (SEGMENT, p, q, alpha, beta)


def _check_range(system: IntegralSystem, x: float) -> None:
    if x < 0 or math.isinf(x) or math.isnan(x):
        raise ValueError(f"x deve ser finito e >= 0: {x!r}")
    if x > system.endpoint:
        raise ValueError(f"x={x!r} além do extremo b={system.endpoint!r}")


def iter_events(
    system: IntegralSystem, start: float, stop: float, include_stop: bool = False
) -> Iterator[Event]:
    """
    Percorre [start, stop) em ordem, emitindo átomos e segmentos.

    Átomos em p com start <= p < stop entram (e em stop se include_stop);
    em cada ponto o átomo vem antes do segmento que começa nele.
    """
    points = [p for p in system.breakpoints() if start <= p < stop]
    if stop > start and (not points or points[0] > start):
        points.insert(0, start)
    r1, r2 = system.r1, system.r2
    for i, p in enumerate(points):
        mass1 = r1.mass_at(p)
        if mass1:
            yield (ATOM_R1, p, mass1)
        mass2 = r2.mass_at(p)
        if mass2:
            yield (ATOM_R2, p, mass2)
        q = points[i + 1] if i + 1 < len(points) else stop
        if q > p:
            alpha = r1.density_at(p)
            beta = r2.density_at(p)
            if alpha > 0 or beta > 0:
                yield (SEGMENT, p, q, alpha, beta)
    if include_stop:
        mass1 = r1.mass_at(stop)
        if mass1:
            yield (ATOM_R1, stop, mass1)
        mass2 = r2.mass_at(stop)
        if mass2:
            yield (ATOM_R2, stop, mass2)


def _event_factor(event: Event, lam: complex, config: SolverSettings) -> Tuple[np.ndarray, float]:
    kind = event[0]
    if kind == ATOM_R1:
        return tm.create_r1_atom_matrix(event[2]), 0.0
    if kind == ATOM_R2:
        return tm.create_r2_atom_matrix(event[2], lam), 0.0
    _, p, q, alpha, beta = event
    return tm.create_segment_matrix(
        alpha, beta, q - p, lam, config.taylor_threshold, config.taylor_terms
    )


def transfer_matrix(
    system: IntegralSystem,
    start: float,
    stop: float,
    lam: LambdaLike,
    include_stop: bool = False,
    settings: Optional[SolverSettings] = None,
) -> FundamentalMatrix:
    """
    Matriz de transferência da fatia [start, stop): U(stop) = T·U(start).

    Args:
        system: Sistema integral.
        start: Início da fatia (átomo em start incluído).
        stop: Fim da fatia.
        lam: Parâmetro espectral.
        include_stop: Inclui o átomo em stop (valor pela direita).
        settings: Configurações numéricas.

    Returns:
        FundamentalMatrix: Produto ordenado dos fatores, com escala logarítmica.
    """
    config = resolve(settings)
    value = as_complex(lam)
    matrix = np.identity(2, dtype=complex)
    scale = 0.0
    for event in iter_events(system, start, stop, include_stop):
        factor, factor_scale = _event_factor(event, value, config)
        matrix, scale = tm.compose(
            factor, factor_scale, matrix, scale, config.renormalization_bound
        )
    return FundamentalMatrix.from_array(matrix, scale)


def fundamental_matrix(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> FundamentalMatrix:
    """
    Calcula U(x, λ) (contínua à esquerda: um átomo exatamente em x não entra).

    Raises:
        ValueError: Se x estiver fora de [0, b].
    """
    _check_range(system, x)
    return transfer_matrix(system, 0.0, x, lam, settings=settings)


def fundamental_matrix_right(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> FundamentalMatrix:
    """Calcula U₊(x, λ), incluindo os átomos em x."""
    _check_range(system, x)
    return transfer_matrix(system, 0.0, x, lam, include_stop=True, settings=settings)


def propagate(
    system: IntegralSystem,
    current: FundamentalMatrix,
    start: float,
    stop: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> FundamentalMatrix:
    """Avança U(start) até U(stop) sem refazer o caminho desde 0."""
    return transfer_matrix(system, start, stop, lam, settings=settings) @ current


# --- Modo polinomial exato ---


def monodromy_polynomial(system: IntegralSystem, x: float) -> MonodromyPolynomial:
    """
    U(x, λ) exato como matriz de polinômios em λ (coeficientes racionais).

    Raises:
        NonAtomicRegionError: Se algum segmento com densidade intersecta [0, x).
    """
    _check_range(system, x)
    result = MonodromyPolynomial.identity()
    for event in iter_events(system, 0.0, x):
        kind = event[0]
        if kind == SEGMENT:
            raise NonAtomicRegionError(event[1], event[2])
        mass = to_rational(event[2])
        if kind == ATOM_R1:
            result = result.left_multiply(tm.create_symbolic_r1_atom(mass))
        else:
            result = result.left_multiply(tm.create_symbolic_r2_atom(mass))
    return result


def series_coefficients(system: IntegralSystem, x: float, order: int) -> SeriesCoefficients:
    """
    Coeficientes φₙ(x), ψₙ(x), n = 1..order, por integrais iteradas exatas.

    ψₙ = ∫ φₙ₋₁ dR₂ (φ₀ = 1) e φₙ = ∫ ψₙ dR₁, ambos sobre [0, x).
    """
    if order < 1:
        raise ValueError(f"Ordem deve ser >= 1: {order!r}")
    _check_range(system, x)
    exact_x = to_rational(x)
    phi = PiecewisePolynomial.constant(1)
    phis, psis = [], []
    for _ in range(order):
        psi = system.r2.cumulative_integral(phi)
        phi = system.r1.cumulative_integral(psi)
        psis.append(psi.evaluate(exact_x))
        phis.append(phi.evaluate(exact_x))
    return SeriesCoefficients(phis, psis)


# --- Amostras para quadratura ---


@dataclass
class SolutionSamples:
    """Nós (peso, U(t)) das medidas dR₁ e dR₂ em [0, x) e o valor final U(x)."""

    r1_nodes: List[Tuple[float, np.ndarray]] = field(default_factory=list)
    r2_nodes: List[Tuple[float, np.ndarray]] = field(default_factory=list)
    end: np.ndarray = field(default_factory=lambda: np.identity(2, dtype=complex))


def solution_samples(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> SolutionSamples:
    """
    Amostra U(t, λ) nos nós de quadratura de dR₁ e dR₂ sobre [0, x).

    Átomos entram com o valor de U antes do salto e peso igual à massa;
    segmentos usam Gauss-Legendre composto com uma bissecção. Os nós são os
    mesmos para qualquer λ, o que permite combinar amostras de λ diferentes.
    """
    config = resolve(settings)
    _check_range(system, x)
    value = as_complex(lam)
    samples = SolutionSamples()
    current = np.identity(2, dtype=complex)
    for event in iter_events(system, 0.0, x):
        kind = event[0]
        if kind == ATOM_R1:
            samples.r1_nodes.append((event[2], current.copy()))
        elif kind == ATOM_R2:
            samples.r2_nodes.append((event[2], current.copy()))
        else:
            _, p, q, alpha, beta = event
            nodes, weights = gauss_legendre_nodes(p, q, config.gauss_order, refinements=1)
            for t, w in zip(nodes, weights):
                factor, scale = tm.create_segment_matrix(
                    alpha, beta, t - p, value, config.taylor_threshold, config.taylor_terms
                )
                at_node = (factor * math.exp(scale)) @ current
                if alpha > 0:
                    samples.r1_nodes.append((alpha * w, at_node))
                if beta > 0:
                    samples.r2_nodes.append((beta * w, at_node))
        factor, scale = _event_factor(event, value, config)
        current = (factor * math.exp(scale)) @ current
    samples.end = current
    return samples


# --- Identidades estruturais ---


def _scaled_product(a: complex, b: complex, log_scale: float) -> complex:
    product = a * b
    if log_scale == 0.0 or product == 0:
        return product
    return cmath.exp(cmath.log(product) + log_scale)


def check_wronskian(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    settings: Optional[SolverSettings] = None,
) -> IdentityReport:
    """
    Resíduos de det U = 1 e das duas variantes unilaterais
    c₁₊s₂ - c₂s₁₊ = 1 e c₁s₂₊ - c₂₊s₁ = 1.
    """
    left = fundamental_matrix(system, x, lam, settings)
    right = fundamental_matrix_right(system, x, lam, settings)
    ln, rn = left.normalized, right.normalized
    mixed = left.log_scale + right.log_scale
    plus_first = _scaled_product(rn[0, 0], ln[1, 1], mixed) - _scaled_product(
        ln[1, 0], rn[0, 1], mixed
    )
    plus_second = _scaled_product(ln[0, 0], rn[1, 1], mixed) - _scaled_product(
        rn[1, 0], ln[0, 1], mixed
    )
    return IdentityReport(
        {
            "wronskian": abs(left.determinant() - 1.0),
            "wronskian_plus_first": abs(plus_first - 1.0),
            "wronskian_plus_second": abs(plus_second - 1.0),
        }
    )


def check_green(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    mu: Optional[LambdaLike] = None,
    settings: Optional[SolverSettings] = None,
) -> IdentityReport:
    """
    Resíduos das identidades de Green para u ∈ {c, s}(λ) e v ∈ {c, s}(μ).

    Primeira: ∫ f v₁ dR₂ = ∫ u₂ v₂ dR₁ - u₂(x)v₁(x) + u₂(0)v₁(0), com f = λu₁.
    Segunda: ∫ (f v₁ - u₁ g) dR₂ = [u,v](x) - [u,v](0), com g = μv₁.
    Pares testados: (c, c), (s, s) e (c, s).
    """
    lam_value = as_complex(lam)
    mu_value = lam_value if mu is None else as_complex(mu)
    first = solution_samples(system, x, lam_value, settings)
    second = solution_samples(system, x, mu_value, settings)

    initial = np.identity(2, dtype=complex)
    residuals = {}
    for label, i, j in (("cc", 0, 0), ("ss", 1, 1), ("cs", 0, 1)):
        # u = coluna i de U(λ), v = coluna j de U(μ); linha 0 é a componente 1
        integral_r2 = sum(
            w * a[0, i] * b[0, j] for (w, a), (_, b) in zip(first.r2_nodes, second.r2_nodes)
        )
        integral_r1 = sum(
            w * a[1, i] * b[1, j] for (w, a), (_, b) in zip(first.r1_nodes, second.r1_nodes)
        )
        u_end, v_end = first.end[:, i], second.end[:, j]
        u_start, v_start = initial[:, i], initial[:, j]
        green_first = lam_value * integral_r2 - (
            integral_r1 - u_end[1] * v_end[0] + u_start[1] * v_start[0]
        )
        bracket_end = u_end[0] * v_end[1] - u_end[1] * v_end[0]
        bracket_start = u_start[0] * v_start[1] - u_start[1] * v_start[0]
        green_second = (lam_value - mu_value) * integral_r2 - (bracket_end - bracket_start)
        residuals[f"green_first_{label}"] = abs(green_first)
        residuals[f"green_second_{label}"] = abs(green_second)
    return IdentityReport(residuals)


def check_kernel_identity(
    system: IntegralSystem,
    x: float,
    lam: LambdaLike,
    mu: Optional[LambdaLike] = None,
    settings: Optional[SolverSettings] = None,
) -> IdentityReport:
    """
    Resíduo de J - U(x,μ)*JU(x,λ) = -(λ - μ̄) ∫ [c₁(μ̄), s₁(μ̄)]ᵀ[c₁(λ), s₁(λ)] dR₂.
    """
    lam_value = as_complex(lam)
    mu_value = lam_value if mu is None else as_complex(mu)
    at_lam = solution_samples(system, x, lam_value, settings)
    at_mu_bar = solution_samples(system, x, mu_value.conjugate(), settings)
    kernel = np.zeros((2, 2), dtype=complex)
    for (w, a), (_, b) in zip(at_lam.r2_nodes, at_mu_bar.r2_nodes):
        kernel += w * np.outer(b[0, :], a[0, :])
    u_mu = at_mu_bar.end.conj()
    lhs = tm.SYMPLECTIC_J - u_mu.conj().T @ tm.SYMPLECTIC_J @ at_lam.end
    residual = lhs + (lam_value - mu_value.conjugate()) * kernel
    return IdentityReport({"kernel": float(np.max(np.abs(residual)))})
