"""
Módulo que define o relatório da identidade de dualidade q̂ = -1/(λq).
"""

# krein_weyl/models/duality_report.py
from typing import Optional

from .weyl_disc import QEnclosure


class DualityReport:
    """
    Resultado de check_duality_identity em um λ.

    Atributos:
        lam: Parâmetro espectral.
        q: Coeficiente do sistema.
        q_dual: Coeficiente do sistema dual, calculado de forma independente.
        identity_residual: |q̂ + 1/(λq)|.
        conjugation_residual: Maior resíduo de Û = D⁻¹UD nos pontos verificados.
        regular_residual: |q̂ + c₁(b)/(λs₁(b))| para sistemas regulares, senão None.
        tolerance: Limite aceito para os resíduos da identidade.
    """

    # Limite do resíduo de conjugação (relativo à escala das entradas)
    CONJUGATION_TOL = 1e-10

    def __init__(
        self,
        lam: complex,
        q: QEnclosure,
        q_dual: QEnclosure,
        identity_residual: float,
        conjugation_residual: float,
        tolerance: float,
        regular_residual: Optional[float] = None,
    ):
        for label, value in (
            ("identity_residual", identity_residual),
            ("conjugation_residual", conjugation_residual),
            ("regular_residual", regular_residual),
        ):
            if value is not None and not value >= 0:
                raise ValueError(f"Resíduo inválido em '{label}': {value!r}")
        self.lam = complex(lam)
        self.q = q
        self.q_dual = q_dual
        self.identity_residual = float(identity_residual)
        self.conjugation_residual = float(conjugation_residual)
        self.regular_residual = None if regular_residual is None else float(regular_residual)
        self.tolerance = float(tolerance)

    @property
    def passed(self) -> bool:
        if self.identity_residual > self.tolerance:
            return False
        if self.regular_residual is not None and self.regular_residual > self.tolerance:
            return False
        return self.conjugation_residual <= self.CONJUGATION_TOL

    def __repr__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"DualityReport(lam={self.lam!r}, q={self.q.value!r}, "
            f"q_dual={self.q_dual.value!r}, identity={self.identity_residual:.3e}, "
            f"conjugation={self.conjugation_residual:.3e}, {status})"
        )
