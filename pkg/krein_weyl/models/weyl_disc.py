"""
Módulo que define os discos de Weyl e as estimativas do coeficiente q.

Este módulo contém:
- WeylDisc: centro e raio de D_l(λ) no semiplano superior
- Regime: regime de cálculo de q
- QEnclosure: valor de q(λ) com raio de erro rigoroso
- AsymptoticLimit: limites assintóticos λ → -∞ e λ → 0-
"""

# krein_weyl/models/weyl_disc.py
import cmath
import math
from enum import Enum, auto
from typing import Optional


class Regime(Enum):
    """Regime usado no cálculo de q."""

    REGULAR_CLOSED_FORM = auto()
    LIMIT_CIRCLE_CLOSED_FORM = auto()
    LIMIT_POINT_NESTED = auto()

    @property
    def label(self) -> str:
        return {
            Regime.REGULAR_CLOSED_FORM: "RegularClosedForm",
            Regime.LIMIT_CIRCLE_CLOSED_FORM: "LimitCircleClosedForm",
            Regime.LIMIT_POINT_NESTED: "LimitPointNested",
        }[self]


class AsymptoticLimit(Enum):
    """Limites assintóticos da função de Neumann."""

    MINUS_INFINITY = auto()
    ZERO_MINUS = auto()


class WeylDisc:
    """
    Disco de Weyl D_l(λ): imagem da reta real de h pela aplicação de Möbius m(λ, l, h).

    Atributos:
        center: Centro do disco (None quando o disco é o semiplano inteiro).
        radius: Raio (math.inf antes de dR₂ acumular massa).
        truncation: Ponto de truncamento l.
        lam: Parâmetro espectral (Im λ > 0).
    """

    EPSILON = 1e-9

    def __init__(self, center: Optional[complex], radius: float, truncation: float, lam: complex):
        if radius < 0:
            raise ValueError(f"Raio negativo: {radius!r}")
        self.center = None if center is None else complex(center)
        self.radius = float(radius)
        self.truncation = float(truncation)
        self.lam = complex(lam)

    @property
    def is_bounded(self) -> bool:
        return self.center is not None and math.isfinite(self.radius)

    def contains(self, omega: complex, slack: float = 0.0) -> bool:
        """Verifica |ω - centro| <= raio + slack."""
        if not self.is_bounded:
            return omega.imag >= -slack
        return abs(complex(omega) - self.center) <= self.radius + slack

    def boundary_point(self, theta: float) -> complex:
        """Ponto centro + raio·e^{iθ} da circunferência."""
        if not self.is_bounded:
            raise ValueError("Disco ilimitado não tem circunferência.")
        return self.center + self.radius * cmath.exp(1j * theta)

    def is_nested_in(self, outer: "WeylDisc", slack: float = EPSILON) -> bool:
        """Verifica se este disco está contido em outer (com folga)."""
        if not outer.is_bounded:
            return True
        if not self.is_bounded:
            return False
        return abs(self.center - outer.center) <= outer.radius - self.radius + slack

    def __repr__(self) -> str:
        return (
            f"WeylDisc(center={self.center!r}, radius={self.radius:.6g}, "
            f"l={self.truncation:.6g}, lam={self.lam!r})"
        )


class QEnclosure:
    """
    Valor de q(λ) com raio de erro.

    Atributos:
        value: Estimativa de q(λ).
        error_radius: 0 nos regimes fechados; raio do último disco (ou meia
            largura do intervalo no eixo real) no regime aninhado.
        regime: Regime usado.
        iterations: Número de truncamentos visitados (0 nos regimes fechados).
    """

    def __init__(self, value: complex, error_radius: float, regime: Regime, iterations: int = 0):
        if error_radius < 0:
            raise ValueError(f"Raio de erro negativo: {error_radius!r}")
        if regime is not Regime.LIMIT_POINT_NESTED and error_radius != 0:
            raise ValueError("Regimes fechados têm raio de erro 0.")
        self.value = complex(value)
        self.error_radius = float(error_radius)
        self.regime = regime
        self.iterations = int(iterations)

    def contains(self, candidate: complex, slack: float = 0.0) -> bool:
        return abs(complex(candidate) - self.value) <= self.error_radius + slack

    def conjugate(self) -> "QEnclosure":
        return QEnclosure(self.value.conjugate(), self.error_radius, self.regime, self.iterations)

    def __repr__(self) -> str:
        return (
            f"QEnclosure(value={self.value!r}, error_radius={self.error_radius:.3e}, "
            f"regime={self.regime.label})"
        )
