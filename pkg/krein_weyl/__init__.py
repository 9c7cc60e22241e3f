# krein_weyl/__init__.py
"""
Coeficiente principal de Titchmarsh-Weyl de sistemas integrais S[R₁, R₂].

Subpacotes:
- models: medidas, sistemas, matrizes fundamentais, discos e relatórios.
- utils: polinômios por partes, fatores de transferência e quadratura.
- controllers: validação, propagação, análise de Weyl e dualidade.
- services: varreduras em λ e bateria de identidades.
"""

from .errors import IntegralSystemError
from .settings import SolverSettings

__all__ = [
    "IntegralSystemError",
    "SolverSettings",
]
