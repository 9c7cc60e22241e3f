# krein_weyl/models/__init__.py
"""
Pacote que contém os modelos de dados dos sistemas integrais.

Este pacote fornece os seguintes modelos:
- StieltjesMeasure: Medida de Lebesgue-Stieltjes (átomos, segmentos, cauda).
- L2Verdict: Resultado do teste de pertinência a L².
- IntegralSystem: Par (R₁, R₂) com extremo b.
- Classification: Regular/Singular e ponto limite/círculo limite.
- FundamentalMatrix: U(x, λ) com escala logarítmica.
- MonodromyPolynomial: U(x, λ) exato em λ para sistemas atômicos.
- SeriesCoefficients: Coeficientes φₙ, ψₙ da expansão em λ.
- WeylDisc, QEnclosure: Discos de Weyl e estimativas de q.
- IdentityReport, DualityReport: Resíduos das identidades verificadas.

Cada modelo é responsável por:
- Validar os dados na construção.
- Fornecer __repr__ e __eq__ para inspeção e testes.
"""

from .stieltjes_measure import L2Verdict, StieltjesMeasure
from .integral_system import Classification, EndpointType, IntegralSystem, Regularity
from .fundamental_matrix import (
    FundamentalMatrix,
    MonodromyPolynomial,
    SeriesCoefficients,
    SpectralParameter,
    StateVector,
)
from .weyl_disc import AsymptoticLimit, QEnclosure, Regime, WeylDisc
from .identity_report import IdentityReport
from .duality_report import DualityReport

__all__ = [
    "L2Verdict",
    "StieltjesMeasure",
    "Classification",
    "EndpointType",
    "IntegralSystem",
    "Regularity",
    "FundamentalMatrix",
    "MonodromyPolynomial",
    "SeriesCoefficients",
    "SpectralParameter",
    "StateVector",
    "AsymptoticLimit",
    "QEnclosure",
    "Regime",
    "WeylDisc",
    "IdentityReport",
    "DualityReport",
]
