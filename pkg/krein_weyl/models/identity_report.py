"""
Módulo que define o relatório de resíduos das identidades estruturais.
"""

# krein_weyl/models/identity_report.py
from typing import Dict


class IdentityReport:
    """
    Coleção nomeada de resíduos absolutos (Wronskiano, Green, núcleo, ...).

    Atributos:
        residuals: Mapeia o nome da identidade ao resíduo (>= 0).
    """

    def __init__(self, residuals: Dict[str, float]):
        for name, value in residuals.items():
            if not value >= 0:
                raise ValueError(f"Resíduo inválido em '{name}': {value!r}")
        self.residuals: Dict[str, float] = dict(residuals)

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def passed(self, tol: float) -> bool:
        return self.max_residual <= tol

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v:.3e}" for k, v in self.residuals.items())
        return f"IdentityReport({body})"
