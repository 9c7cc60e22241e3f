"""
Módulo que implementa o controlador de sistemas integrais.

Este módulo contém:
- validate: checa as hipóteses (átomos disjuntos, definitude) e cria o sistema
- classify: regular/singular e ponto limite/círculo limite
- canonical_continuation: continuação singular canônica de um sistema regular
- dual: sistema dual (troca de R₁ e R₂)
- sample_points: pontos x das verificações de identidades
"""

# krein_weyl/controllers/system_controller.py
import logging
import math
from functools import lru_cache
from typing import List, Optional, Tuple

from ..errors import CommonAtomError, IndefiniteSystemError, NotRegularError
from ..models.integral_system import (
    Classification,
    EndpointType,
    IntegralSystem,
    Regularity,
)
from ..models.stieltjes_measure import StieltjesMeasure
from ..settings import SolverSettings, resolve

logger = logging.getLogger(__name__)

# Densidade da cauda de R̃₂ na continuação canônica
CONTINUATION_TAIL_DENSITY = 1.0

# Pontos de amostragem dentro da cauda, medidos a partir de b_rep
TAIL_SAMPLE_OFFSETS = (1.0, 2.5, 5.0)


def find_common_atom(r1: StieltjesMeasure, r2: StieltjesMeasure) -> Optional[float]:
    """Retorna a menor posição de átomo comum a r1 e r2, ou None."""
    common = {p for p, _ in r1.atoms} & {p for p, _ in r2.atoms}
    return min(common) if common else None


def definiteness_scan(
    r1: StieltjesMeasure,
    r2: StieltjesMeasure,
    threshold: float,
) -> Tuple[Optional[float], float]:
    """
    Teste de Gram de {1, R₁} em L²(R₂) sobre prefixos [0, t].

    Os prefixos terminam nos pontos de quebra das duas medidas (mais um ponto
    dentro das caudas, quando existem). O primeiro t com determinante
    normalizado (G11·G22 - G12²)/(G11·G22) >= threshold é o b0 registrado.

    Returns:
        Tuple[Optional[float], float]: (b0 ou None, maior determinante normalizado visto).
    """
    profile = r1.cdf()
    g11 = r2.cdf()
    g12 = r2.cumulative_integral(profile)
    g22 = r2.cumulative_integral(profile.square())

    checkpoints: List[float] = sorted({0.0} | set(r1.breakpoints()) | set(r2.breakpoints()))
    if not (r1.is_finite and r2.is_finite):
        checkpoints.append(max(r1.b_rep, r2.b_rep) + 1.0)

    best = 0.0
    for t in checkpoints:
        a = g11.evaluate_right(t)
        b = g12.evaluate_right(t)
        c = g22.evaluate_right(t)
        if a == 0 or c == 0:
            continue
        ratio = float((a * c - b * b) / (a * c))
        best = max(best, ratio)
        if ratio >= threshold:
            return t, ratio
    return None, best


def validate(
    r1: StieltjesMeasure,
    r2: StieltjesMeasure,
    endpoint: Optional[float] = None,
    name: Optional[str] = None,
    allow_indefinite: bool = False,
    settings: Optional[SolverSettings] = None,
) -> IntegralSystem:
    """
    Valida o par (R₁, R₂) e cria o sistema integral.

    Args:
        r1: Medida R₁.
        r2: Medida R₂.
        endpoint: Extremo b explícito (opcional).
        name: Rótulo opcional.
        allow_indefinite: Aceita sistemas que falham no teste de definitude,
            marcando-os com definite=False.
        settings: Configurações numéricas (limiar de Gram).

    Returns:
        IntegralSystem: Sistema validado.

    Raises:
        CommonAtomError: Se R₁ e R₂ tiverem um átomo na mesma posição.
        IndefiniteSystemError: Se span{1, R₁} for unidimensional em L²(R₂)
            e allow_indefinite for False.
    """
    config = resolve(settings)
    common = find_common_atom(r1, r2)
    if common is not None:
        raise CommonAtomError(common)

    b0, best = definiteness_scan(r1, r2, config.definiteness_threshold)
    if b0 is None:
        if not allow_indefinite:
            raise IndefiniteSystemError(best)
        logger.warning(
            "Sistema %s aceito sem definitude (Gram normalizado máximo %.3e).",
            name or "",
            best,
        )
    system = IntegralSystem(
        r1,
        r2,
        endpoint=endpoint,
        definite=b0 is not None,
        definite_from=b0,
        name=name,
        allow_indefinite=allow_indefinite,
    )
    logger.debug("Sistema validado: %r (b0=%r)", system, b0)
    return system


@lru_cache(maxsize=256)
def classify(system: IntegralSystem) -> Classification:
    """
    Classifica o sistema.

    Regular se R₁(b) + R₂(b) < ∞; círculo limite se 1 e R₁ pertencem a L²(R₂).

    Returns:
        Classification: Regularidade, tipo do extremo e testemunhas.
    """
    witnesses = (system.r2.l2_membership(None), system.r2.l2_membership(system.r1))
    total = system.r1.total_variation() + system.r2.total_variation()
    regularity = Regularity.REGULAR if math.isfinite(total) else Regularity.SINGULAR
    if witnesses[0].finite and witnesses[1].finite:
        endpoint_type = EndpointType.LIMIT_CIRCLE
    else:
        endpoint_type = EndpointType.LIMIT_POINT
    classification = Classification(regularity, endpoint_type, witnesses)
    logger.info("Classificação de %s: %s", system.name or "sistema", classification.summary())
    return classification


def canonical_continuation(system: IntegralSystem) -> IntegralSystem:
    """
    Continuação singular canônica S[R̃₁, R̃₂] de um sistema regular.

    R̃₁ congela em R₁(b) e R̃₂ ganha densidade 1 a partir de b. Para b = ∞ com
    totais finitos a continuação parte de b_rep.

    Raises:
        NotRegularError: Se o sistema não for regular.
    """
    if not classify(system).is_regular:
        raise NotRegularError()
    b = system.regular_end()
    continued = IntegralSystem(
        system.r1,
        system.r2.with_tail(CONTINUATION_TAIL_DENSITY, b),
        definite=system.definite,
        definite_from=system.definite_from,
        name=system.name,
        allow_indefinite=system.allow_indefinite,
    )
    logger.debug("Continuação canônica a partir de b=%r", b)
    return continued


def dual(system: IntegralSystem, settings: Optional[SolverSettings] = None) -> IntegralSystem:
    """
    Sistema dual: S[R₂, R₁] se singular; dual da continuação canônica se regular.

    O dual herda o modo permissivo do sistema de entrada.

    Raises:
        IndefiniteSystemError: Se o par trocado falhar no teste de definitude
            (modo estrito).
    """
    source = canonical_continuation(system) if classify(system).is_regular else system
    name = f"dual({system.name})" if system.name else None
    return validate(
        source.r2,
        source.r1,
        name=name,
        allow_indefinite=system.allow_indefinite,
        settings=settings,
    )


def sample_points(system: IntegralSystem) -> List[float]:
    """
    Pontos x usados pelas verificações de identidades.

    0, o meio e o fim da parte descrita; com cauda, mais alguns pontos
    espalhados dentro dela (b_rep + 1, + 2.5, + 5).
    """
    if math.isfinite(system.endpoint):
        end = system.endpoint
        return sorted({0.0, end / 2.0, end})
    end = system.described_end
    points = {0.0, end / 2.0, end} | {end + offset for offset in TAIL_SAMPLE_OFFSETS}
    return sorted(points)
