"""
Módulo que define o serviço de varredura de q(λ) sobre grades de λ.

Este módulo contém a grade linear (Re λ variando, Im λ fixo), a grade
logarítmica no semieixo negativo e a avaliação paralela de q nos pontos,
com as linhas devolvidas na ordem da grade.
"""

# krein_weyl/services/sweep_service.py
import concurrent.futures
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import IntegralSystemError, error_label
from ..io_handler import QRow
from ..models.integral_system import IntegralSystem
from ..settings import SolverSettings, resolve
from ..controllers.weyl_controller import principal_q

logger = logging.getLogger(__name__)


def linear_grid(re_min: float, re_max: float, n_re: int, im: float) -> List[complex]:
    """n_re pontos igualmente espaçados em Re λ ∈ [re_min, re_max] com Im λ = im."""
    if n_re < 0:
        raise ValueError(f"Número de pontos negativo: {n_re!r}")
    return [complex(re, im) for re in np.linspace(re_min, re_max, n_re)]


def log_negative_grid(t_min: float, t_max: float, n: int) -> List[complex]:
    """n pontos λ = -t com t log-espaçado em [t_min, t_max] (t_min > 0)."""
    if n < 0:
        raise ValueError(f"Número de pontos negativo: {n!r}")
    if t_min <= 0 or t_max <= 0:
        raise ValueError(f"Grade logarítmica exige t > 0: ({t_min!r}, {t_max!r})")
    return [complex(-t, 0.0) for t in np.geomspace(t_min, t_max, n)]


def evaluate_point(args: Tuple[IntegralSystem, complex, float, int, SolverSettings]) -> QRow:
    """Avalia q em um ponto; falhas estruturadas viram uma linha de erro."""
    system, lam, tol, budget, settings = args
    try:
        enclosure = principal_q(system, lam, tol=tol, budget=budget, settings=settings)
    except IntegralSystemError as e:
        return (lam, None, None, f"error: {error_label(e)}")
    return (lam, enclosure.value, enclosure.error_radius, enclosure.regime.label)


class SweepService:
    """
    Serviço responsável por avaliar q(λ) em uma grade.

    Responsabilidades:
    - Distribuir os pontos da grade entre processos (limite KW_THREADS).
    - Manter a ordem da grade nas linhas produzidas.
    - Converter falhas por ponto em linhas de erro.
    """

    def __init__(self, settings: Optional[SolverSettings] = None):
        self.settings = resolve(settings)

    def evaluate(
        self,
        system: IntegralSystem,
        grid: Sequence[complex],
        tol: Optional[float] = None,
        budget: Optional[int] = None,
    ) -> List[QRow]:
        """
        Avalia q em todos os pontos da grade.

        Args:
            system: Sistema validado.
            grid: Pontos λ.
            tol: Tolerância do regime aninhado (padrão das configurações).
            budget: Orçamento de truncamentos (padrão das configurações).

        Returns:
            List[QRow]: Uma linha por ponto, na ordem da grade.
        """
        tol = self.settings.tol if tol is None else tol
        budget = self.settings.budget if budget is None else budget
        tasks = [(system, complex(lam), tol, budget, self.settings) for lam in grid]
        if not tasks:
            return []

        num_workers = min(self.settings.threads, len(tasks))
        if num_workers <= 1:
            return [evaluate_point(task) for task in tasks]

        logger.info("Varredura de %d pontos com %d processos.", len(tasks), num_workers)
        rows: List[Optional[QRow]] = [None] * len(tasks)
        with concurrent.futures.ProcessPoolExecutor(max_workers=num_workers) as executor:
            future_to_index = {
                executor.submit(evaluate_point, task): index for index, task in enumerate(tasks)
            }
            for future in concurrent.futures.as_completed(future_to_index):
                rows[future_to_index[future]] = future.result()
        return rows
