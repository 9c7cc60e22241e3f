"""
Módulo que define o sistema integral S[R₁, R₂] e sua classificação.

O sistema é du₁ = u₂ dR₁, du₂ = -λ u₁ dR₂ em [0, b), com soluções contínuas
à esquerda. A construção validada (átomos disjuntos, definitude) é feita por
system_controller.validate; esta classe apenas guarda os dados.
"""

# krein_weyl/models/integral_system.py
import math
from enum import Enum, auto
from typing import List, Optional, Tuple

from .stieltjes_measure import L2Verdict, StieltjesMeasure


class Regularity(Enum):
    """Regular se R₁(b) + R₂(b) < ∞."""

    REGULAR = auto()
    SINGULAR = auto()


class EndpointType(Enum):
    """Tipo do extremo b: ponto limite ou círculo limite."""

    LIMIT_POINT = auto()
    LIMIT_CIRCLE = auto()


class Classification:
    """
    Classificação de um sistema integral.

    Atributos:
        regularity: REGULAR ou SINGULAR.
        endpoint_type: LIMIT_POINT ou LIMIT_CIRCLE.
        witnesses: Veredictos de L² para 1 e para R₁ contra dR₂.
    """

    def __init__(
        self,
        regularity: Regularity,
        endpoint_type: EndpointType,
        witnesses: Tuple[L2Verdict, L2Verdict],
    ):
        if regularity is Regularity.REGULAR and endpoint_type is not EndpointType.LIMIT_CIRCLE:
            raise ValueError("Sistema regular deve ser do tipo círculo limite.")
        both_finite = witnesses[0].finite and witnesses[1].finite
        if both_finite != (endpoint_type is EndpointType.LIMIT_CIRCLE):
            raise ValueError("Testemunhas de L² incompatíveis com o tipo do extremo.")
        self.regularity = regularity
        self.endpoint_type = endpoint_type
        self.witnesses = witnesses

    @property
    def is_regular(self) -> bool:
        return self.regularity is Regularity.REGULAR

    @property
    def is_limit_point(self) -> bool:
        return self.endpoint_type is EndpointType.LIMIT_POINT

    def summary(self) -> str:
        """Texto curto no formato 'Singular, LimitCircle'."""
        regularity = "Regular" if self.is_regular else "Singular"
        endpoint = "LimitPoint" if self.is_limit_point else "LimitCircle"
        return f"{regularity}, {endpoint}"

    def __repr__(self) -> str:
        return (
            f"Classification({self.summary()}, witnesses=({self.witnesses[0]}, "
            f"{self.witnesses[1]}))"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Classification):
            return NotImplemented
        return (
            self.regularity is other.regularity
            and self.endpoint_type is other.endpoint_type
            and self.witnesses == other.witnesses
        )


class IntegralSystem:
    """
    Par de medidas (R₁, R₂) com extremo direito comum b.

    Atributos:
        r1: Medida dR₁ (comprimento / complacência).
        r2: Medida dR₂ (massa / peso espectral).
        endpoint: b; +∞ se alguma medida tiver cauda.
        definite: False quando o sistema foi aceito no modo permissivo sem
            passar no teste de definitude.
        definite_from: Menor prefixo [0, b0] em que o teste de Gram passou.
        name: Rótulo opcional vindo do arquivo de especificação.
    """

    def __init__(
        self,
        r1: StieltjesMeasure,
        r2: StieltjesMeasure,
        endpoint: Optional[float] = None,
        definite: bool = True,
        definite_from: Optional[float] = None,
        name: Optional[str] = None,
        allow_indefinite: bool = False,
    ):
        """
        Inicializa o sistema sem validar as hipóteses (ver system_controller.validate).

        Args:
            r1: Medida R₁.
            r2: Medida R₂.
            endpoint: Extremo b explícito; padrão é o maior b_rep (ou +∞ com cauda).
            definite: Resultado do teste de definitude.
            definite_from: Prefixo mínimo em que o teste passou.
            name: Rótulo opcional.
            allow_indefinite: Se o sistema foi construído no modo permissivo.

        Raises:
            TypeError: Se r1 ou r2 não forem StieltjesMeasure.
            ValueError: Se o extremo explícito não cobrir as medidas.
        """
        if not isinstance(r1, StieltjesMeasure) or not isinstance(r2, StieltjesMeasure):
            raise TypeError("r1 e r2 devem ser StieltjesMeasure.")
        described_end = max(r1.b_rep, r2.b_rep)
        if not (r1.is_finite and r2.is_finite):
            b = math.inf
            if endpoint is not None and not math.isinf(endpoint):
                raise ValueError("Medida com cauda exige extremo b = +∞.")
        elif endpoint is None:
            b = described_end
        else:
            b = float(endpoint)
            if b < described_end:
                raise ValueError(f"Extremo b={b!r} menor que a parte descrita ({described_end!r}).")
        self.r1 = r1
        self.r2 = r2
        self.endpoint: float = b
        self.definite = bool(definite)
        self.definite_from = definite_from
        self.name = name
        self.allow_indefinite = bool(allow_indefinite)

    @property
    def described_end(self) -> float:
        """Maior b_rep entre as duas medidas."""
        return max(self.r1.b_rep, self.r2.b_rep)

    @property
    def has_finite_totals(self) -> bool:
        return self.r1.is_finite and self.r2.is_finite

    def regular_end(self) -> float:
        """Extremo usado nas fórmulas regulares: b se finito, senão b_rep."""
        return self.endpoint if math.isfinite(self.endpoint) else self.described_end

    def breakpoints(self) -> List[float]:
        """União ordenada (com 0) dos pontos de quebra das duas medidas."""
        return sorted({0.0} | set(self.r1.breakpoints()) | set(self.r2.breakpoints()))

    def _key(self):
        return (self.r1, self.r2, self.endpoint)

    def __eq__(self, other: object) -> bool:
        """Igualdade estrutural (medidas e extremo)."""
        if not isinstance(other, IntegralSystem):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"IntegralSystem({label}r1={self.r1!r}, r2={self.r2!r}, b={self.endpoint})"
