"""
Módulo com a hierarquia de erros estruturados da biblioteca.

Cada falha prevista pelas operações tem uma subclasse própria que carrega os
dados relevantes como atributos (posição do átomo comum, último raio, etc.).
Todas derivam de IntegralSystemError, que por sua vez é um ValueError.
"""

# krein_weyl/errors.py
import re
from typing import Optional


class IntegralSystemError(ValueError):
    """Erro base para falhas de validação e de cálculo dos sistemas integrais."""


class ZeroMeasureError(IntegralSystemError):
    """A medida é identicamente nula (variação total 0)."""

    def __init__(self, message: str = "Medida identicamente nula: suporte vazio."):
        super().__init__(message)


class CommonAtomError(IntegralSystemError):
    """R₁ e R₂ têm um ponto de descontinuidade em comum."""

    def __init__(self, position: float):
        self.position = float(position)
        super().__init__(f"Átomo comum a R1 e R2 na posição {self.position!r}.")


class IndefiniteSystemError(IntegralSystemError):
    """As classes de 1 e R₁ são dependentes em L²(R₂) em todo intervalo inicial."""

    def __init__(self, best_ratio: float = 0.0):
        self.best_ratio = float(best_ratio)
        super().__init__(
            "Sistema indefinido: span{1, R1} tem dimensão 1 em L2(R2) "
            f"(melhor determinante de Gram normalizado = {self.best_ratio:.3e})."
        )


class NotRegularError(IntegralSystemError):
    """A continuação canônica exige um sistema regular."""

    def __init__(self, message: str = "Continuação canônica exige sistema regular."):
        super().__init__(message)


class NotSingularError(IntegralSystemError):
    """A operação exige um sistema singular."""

    def __init__(self, message: str = "Operação exige sistema singular."):
        super().__init__(message)


class NonAtomicRegionError(IntegralSystemError):
    """Um segmento com densidade intersecta a região do caminho polinomial."""

    def __init__(self, start: float, end: float):
        self.start = float(start)
        self.end = float(end)
        super().__init__(
            f"Região não atômica: densidade positiva em [{self.start!r}, {self.end!r})."
        )


class DivisionDegenerateError(IntegralSystemError):
    """O denominador c₁ + h·c₂ de m(λ,l,h) se anula."""

    def __init__(self, l: float, h: Optional[complex]):
        self.l = float(l)
        self.h = h
        super().__init__(f"Denominador nulo em m(lambda, l={self.l!r}, h={h!r}).")


class ImaginaryPartRequiredError(IntegralSystemError):
    """Disco de Weyl pedido para λ com Im λ <= 0."""

    def __init__(self, lam: complex):
        self.lam = complex(lam)
        super().__init__(f"Disco de Weyl exige Im(lambda) > 0; recebido {self.lam!r}.")


class ToleranceUnreachableError(IntegralSystemError):
    """O cronograma de truncamentos esgotou o orçamento sem atingir a tolerância."""

    def __init__(self, iterations: int, last_radius: float):
        self.iterations = int(iterations)
        self.last_radius = float(last_radius)
        super().__init__(
            f"Tolerância não atingida após {self.iterations} truncamentos "
            f"(último raio {self.last_radius:.3e})."
        )


class InfiniteR2TotalError(IntegralSystemError):
    """A sonda ZeroMinus e a função de Neumann exigem R₂(b) < ∞."""

    def __init__(self, message: str = "R2(b) infinito: sonda indisponível."):
        super().__init__(message)


class ExcludedPointError(IntegralSystemError):
    """λ fora do domínio da operação (λ = 0 ou real não negativo)."""

    def __init__(self, lam: complex):
        self.lam = complex(lam)
        super().__init__(f"Ponto excluído: lambda = {self.lam!r}.")


class SpecFormatError(IntegralSystemError):
    """Arquivo de especificação de sistema mal formado."""

    def __init__(self, path: str, detail: str):
        self.path = path
        self.detail = detail
        super().__init__(f"Erro de formato em '{path}': {detail}")


def error_label(error: Exception) -> str:
    """Rótulo curto para tabelas: ExcludedPointError -> 'excluded point'."""
    name = type(error).__name__
    if name.endswith("Error"):
        name = name[: -len("Error")]
    return re.sub(r"(?<!^)(?=[A-Z])", " ", name).lower()
