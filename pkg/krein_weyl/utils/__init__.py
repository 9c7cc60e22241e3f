# krein_weyl/utils/__init__.py
"""
Pacote de utilitários numéricos.

Contém módulos para:
- piecewise_polynomial: Polinômios por partes exatos (sympy) contínuos à esquerda.
- transfer_matrices: Fatores 2x2 de átomos e segmentos, composição com renormalização.
- quadrature: Nós de Gauss-Legendre compostos.
"""

from . import piecewise_polynomial
from . import quadrature
from . import transfer_matrices

__all__ = [
    "piecewise_polynomial",
    "quadrature",
    "transfer_matrices",
]
