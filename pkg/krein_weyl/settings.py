# krein_weyl/settings.py
import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)


class SolverSettings:
    """
    Guarda os parâmetros numéricos compartilhados pelos controladores.

    Responsável por:
    - Tolerância padrão e orçamento do cronograma de truncamentos.
    - Limiar e número de termos das séries de Taylor em cos/sinc.
    - Ordem da quadratura de Gauss-Legendre dos testes de identidade.
    - Limiar do teste de definitude (Gram normalizado).
    - Limite de renormalização dos produtos de matrizes.
    - Número máximo de processos das varreduras (variável KW_THREADS).

    Setters rejeitam valores inválidos com um aviso no log e mantêm o valor anterior.
    """

    # --- Constantes ---
    DEFAULT_TOL = 1e-8
    DEFAULT_BUDGET = 200
    DEFAULT_TAYLOR_THRESHOLD = 1e-4
    DEFAULT_TAYLOR_TERMS = 8
    DEFAULT_GAUSS_ORDER = 16
    DEFAULT_DEFINITENESS_THRESHOLD = 1e-12
    DEFAULT_RENORMALIZATION_BOUND = 1e64
    DEFAULT_DIAGNOSTIC_TOL = 1e-12
    THREADS_ENV_VAR = "KW_THREADS"

    def __init__(self, threads: Optional[int] = None):
        self._tol: float = self.DEFAULT_TOL
        self._budget: int = self.DEFAULT_BUDGET
        self._taylor_threshold: float = self.DEFAULT_TAYLOR_THRESHOLD
        self._taylor_terms: int = self.DEFAULT_TAYLOR_TERMS
        self._gauss_order: int = self.DEFAULT_GAUSS_ORDER
        self._definiteness_threshold: float = self.DEFAULT_DEFINITENESS_THRESHOLD
        self._renormalization_bound: float = self.DEFAULT_RENORMALIZATION_BOUND
        self._diagnostic_tol: float = self.DEFAULT_DIAGNOSTIC_TOL
        self._threads: int = os.cpu_count() or 1
        if threads is not None:
            self.set_threads(threads)

    @classmethod
    def from_environment(cls) -> "SolverSettings":
        """
        Cria as configurações lendo KW_THREADS do ambiente.

        Returns:
            SolverSettings: Instância com o limite de processos do ambiente,
            ou o número de CPUs se a variável estiver ausente ou inválida.
        """
        settings = cls()
        raw = os.environ.get(cls.THREADS_ENV_VAR)
        if raw is None or raw.strip() == "":
            return settings
        try:
            settings.set_threads(int(raw))
        except ValueError:
            logger.warning(
                "Valor inválido em %s=%r; usando %d processos.",
                cls.THREADS_ENV_VAR,
                raw,
                settings.threads,
            )
        return settings

    # --- Getters ---
    @property
    def tol(self) -> float:
        return self._tol

    @property
    def budget(self) -> int:
        return self._budget

    @property
    def taylor_threshold(self) -> float:
        return self._taylor_threshold

    @property
    def taylor_terms(self) -> int:
        return self._taylor_terms

    @property
    def gauss_order(self) -> int:
        return self._gauss_order

    @property
    def definiteness_threshold(self) -> float:
        return self._definiteness_threshold

    @property
    def renormalization_bound(self) -> float:
        return self._renormalization_bound

    @property
    def diagnostic_tol(self) -> float:
        return self._diagnostic_tol

    @property
    def threads(self) -> int:
        return self._threads

    # --- Setters ---
    def set_tol(self, tol: float) -> None:
        """Define a tolerância padrão (deve ser positiva)."""
        if not isinstance(tol, (int, float)) or not tol > 0:
            logger.warning("Tolerância inválida ignorada: %r", tol)
            return
        self._tol = float(tol)

    def set_budget(self, budget: int) -> None:
        """Define o número máximo de truncamentos no regime de ponto limite."""
        if not isinstance(budget, int) or budget < 1:
            logger.warning("Orçamento inválido ignorado: %r", budget)
            return
        self._budget = budget

    def set_taylor_threshold(self, threshold: float) -> None:
        if not isinstance(threshold, (int, float)) or not 0 < threshold < 1:
            logger.warning("Limiar de Taylor inválido ignorado: %r", threshold)
            return
        self._taylor_threshold = float(threshold)

    def set_gauss_order(self, order: int) -> None:
        if not isinstance(order, int) or order < 2:
            logger.warning("Ordem de Gauss-Legendre inválida ignorada: %r", order)
            return
        self._gauss_order = order

    def set_definiteness_threshold(self, threshold: float) -> None:
        if not isinstance(threshold, (int, float)) or not 0 < threshold < 1:
            logger.warning("Limiar de definitude inválido ignorado: %r", threshold)
            return
        self._definiteness_threshold = float(threshold)

    def set_threads(self, threads: int) -> None:
        """Define o limite de processos das varreduras (inteiro positivo)."""
        if isinstance(threads, bool) or not isinstance(threads, int) or threads < 1:
            logger.warning("Número de processos inválido ignorado: %r", threads)
            return
        self._threads = threads

    def copy(self) -> "SolverSettings":
        """Retorna uma cópia independente das configurações."""
        clone = SolverSettings(threads=self._threads)
        clone._tol = self._tol
        clone._budget = self._budget
        clone._taylor_threshold = self._taylor_threshold
        clone._taylor_terms = self._taylor_terms
        clone._gauss_order = self._gauss_order
        clone._definiteness_threshold = self._definiteness_threshold
        clone._renormalization_bound = self._renormalization_bound
        clone._diagnostic_tol = self._diagnostic_tol
        return clone

    def __repr__(self) -> str:
        return (
            f"SolverSettings(tol={self._tol:g}, budget={self._budget}, "
            f"gauss_order={self._gauss_order}, threads={self._threads})"
        )


DEFAULT_SETTINGS = SolverSettings()


def resolve(settings: Optional[SolverSettings]) -> SolverSettings:
    """Retorna as configurações dadas ou a instância padrão do módulo."""
    return settings if settings is not None else DEFAULT_SETTINGS
