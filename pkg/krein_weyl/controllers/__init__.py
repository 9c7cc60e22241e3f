# krein_weyl/controllers/__init__.py
"""
Pacote que contém os controladores dos sistemas integrais.

Controladores são responsáveis por:
- Validar e classificar sistemas.
- Propagar a matriz fundamental e verificar identidades estruturais.
- Calcular discos de Weyl, q(λ) e as funções de Neumann.
- Verificar a correspondência com o sistema dual.

Controladores disponíveis:
- system_controller: validate, classify, canonical_continuation, dual.
- propagation_controller: fundamental_matrix, transfer_matrix, monodromy_polynomial, ...
- weyl_controller: m_coefficient, weyl_disc, principal_q, slp_diagnostic, ...
- duality_controller: check_fundamental_conjugation, check_duality_identity.
"""

from . import system_controller
from . import propagation_controller
from . import weyl_controller
from . import duality_controller

__all__ = [
    "system_controller",
    "propagation_controller",
    "weyl_controller",
    "duality_controller",
]
