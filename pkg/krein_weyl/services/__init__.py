# krein_weyl/services/__init__.py
"""
Pacote que contém os serviços da linha de comando.

Este pacote fornece os seguintes serviços:
- SweepService: Avalia q(λ) em grades, em paralelo, preservando a ordem.
- SuiteService: Executa a bateria de identidades de um sistema.

Cada serviço é responsável por:
- Coordenar vários controladores.
- Converter falhas estruturadas em linhas ou verificações reprovadas.
"""

from .sweep_service import SweepService
from .suite_service import SuiteResult, SuiteService

__all__ = [
    "SweepService",
    "SuiteResult",
    "SuiteService",
]
