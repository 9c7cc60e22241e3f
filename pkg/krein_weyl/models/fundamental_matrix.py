"""
Módulo com os objetos de valor produzidos pelo propagador.

Este módulo contém:
- SpectralParameter: o parâmetro espectral λ.
- FundamentalMatrix: U(x, λ) = [[c₁, s₁], [c₂, s₂]], com escala logarítmica.
- StateVector: um par (u₁, u₂).
- SeriesCoefficients: coeficientes φₙ, ψₙ da expansão em λ.
- MonodromyPolynomial: U(x, λ) exato como matriz de polinômios em λ.
"""

# krein_weyl/models/fundamental_matrix.py
import cmath
import math
from typing import List, Sequence, Tuple, Union

import numpy as np
import sympy as sp

# Símbolo do parâmetro espectral no modo polinomial
LAMBDA = sp.Symbol("lambda")

# Entradas acima deste valor são renormalizadas; a escala só é absorvida abaixo dele
_RENORMALIZATION_BOUND = 1e64
_ABSORB_EXPONENT = math.log(_RENORMALIZATION_BOUND)


class SpectralParameter:
    """Parâmetro espectral λ ∈ ℂ (todo o plano é admissível)."""

    def __init__(self, value: Union[complex, float, int, "SpectralParameter"]):
        if isinstance(value, SpectralParameter):
            value = value.value
        self.value: complex = complex(value)
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ValueError(f"Parâmetro espectral não finito: {value!r}")

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def conjugate(self) -> "SpectralParameter":
        return SpectralParameter(self.value.conjugate())

    def __complex__(self) -> complex:
        return self.value

    def __repr__(self) -> str:
        return f"SpectralParameter({self.value!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SpectralParameter):
            return self.value == other.value
        if isinstance(other, (int, float, complex)):
            return self.value == complex(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)


LambdaLike = Union[complex, float, int, SpectralParameter]


def as_complex(lam: LambdaLike) -> complex:
    """Converte λ (número ou SpectralParameter) para complex."""
    return SpectralParameter(lam).value


class StateVector:
    """Par solução (u₁, u₂) do sistema."""

    def __init__(self, u1: complex, u2: complex):
        self.u1 = complex(u1)
        self.u2 = complex(u2)

    def __repr__(self) -> str:
        return f"StateVector(u1={self.u1:.6g}, u2={self.u2:.6g})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateVector):
            return NotImplemented
        epsilon = 1e-12
        return abs(self.u1 - other.u1) < epsilon and abs(self.u2 - other.u2) < epsilon


class FundamentalMatrix:
    """
    Valor de U(x, λ) com colunas c = (c₁, c₂)ᵀ e s = (s₁, s₂)ᵀ.

    As entradas são guardadas normalizadas junto com log_scale: o valor
    verdadeiro é entrada·exp(log_scale). Razões como s₁/c₁ e o centro do disco
    de Weyl não dependem da escala e devem usar as entradas normalizadas.
    """

    EPSILON = 1e-9

    def __init__(
        self,
        c1: complex,
        s1: complex,
        c2: complex,
        s2: complex,
        log_scale: float = 0.0,
    ):
        self._entries = np.array([[c1, s1], [c2, s2]], dtype=complex)
        self.log_scale = float(log_scale)

    @classmethod
    def identity(cls) -> "FundamentalMatrix":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, matrix: np.ndarray, log_scale: float = 0.0) -> "FundamentalMatrix":
        """
        Cria a partir de uma matriz 2x2, absorvendo a escala quando ela cabe em float.
        """
        peak = float(np.max(np.abs(matrix)))
        if peak > _RENORMALIZATION_BOUND:
            matrix = matrix / peak
            log_scale += math.log(peak)
            peak = 1.0
        if log_scale != 0.0 and peak > 0:
            if math.log(peak) + log_scale < _ABSORB_EXPONENT:
                matrix = matrix * math.exp(log_scale)
                log_scale = 0.0
        return cls(matrix[0, 0], matrix[0, 1], matrix[1, 0], matrix[1, 1], log_scale)

    # --- Entradas ---

    @property
    def normalized(self) -> np.ndarray:
        """Cópia das entradas normalizadas (sem exp(log_scale))."""
        return self._entries.copy()

    def _true(self, value: complex) -> complex:
        if self.log_scale == 0.0:
            return complex(value)
        try:
            return complex(value) * math.exp(self.log_scale)
        except OverflowError:
            return complex(
                math.copysign(math.inf, value.real) if value.real else 0.0,
                math.copysign(math.inf, value.imag) if value.imag else 0.0,
            )

    @property
    def c1(self) -> complex:
        return self._true(self._entries[0, 0])

    @property
    def s1(self) -> complex:
        return self._true(self._entries[0, 1])

    @property
    def c2(self) -> complex:
        return self._true(self._entries[1, 0])

    @property
    def s2(self) -> complex:
        return self._true(self._entries[1, 1])

    def as_array(self) -> np.ndarray:
        """Matriz verdadeira (pode conter inf se a escala estourar)."""
        return np.array([[self.c1, self.s1], [self.c2, self.s2]], dtype=complex)

    def determinant(self) -> complex:
        """det U = c₁s₂ - c₂s₁ (deve ser 1)."""
        e = self._entries
        det = e[0, 0] * e[1, 1] - e[1, 0] * e[0, 1]
        if self.log_scale == 0.0:
            return complex(det)
        if det == 0:
            return 0j
        return cmath.exp(cmath.log(det) + 2.0 * self.log_scale)

    def __matmul__(self, other: "FundamentalMatrix") -> "FundamentalMatrix":
        if not isinstance(other, FundamentalMatrix):
            return NotImplemented
        return FundamentalMatrix.from_array(
            self._entries @ other._entries, self.log_scale + other.log_scale
        )

    def max_residual(self, other: "FundamentalMatrix") -> float:
        """Maior diferença absoluta entre entradas verdadeiras."""
        return float(np.max(np.abs(self.as_array() - other.as_array())))

    def __repr__(self) -> str:
        e = self._entries
        scale = f", log_scale={self.log_scale:.6g}" if self.log_scale else ""
        return (
            f"FundamentalMatrix(c1={e[0, 0]:.6g}, s1={e[0, 1]:.6g}, "
            f"c2={e[1, 0]:.6g}, s2={e[1, 1]:.6g}{scale})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FundamentalMatrix):
            return NotImplemented
        return self.max_residual(other) < self.EPSILON


class SeriesCoefficients:
    """
    Coeficientes φₙ(x), ψₙ(x) com c₁ = Σ (-λ)ⁿ φₙ e c₂ = Σ (-λ)ⁿ ψₙ.

    Atributos:
        exact_phi, exact_psi: Valores racionais exatos, n = 1..order.
        order: Ordem n_max.
    """

    def __init__(self, exact_phi: Sequence[sp.Rational], exact_psi: Sequence[sp.Rational]):
        if len(exact_phi) != len(exact_psi):
            raise ValueError("phi e psi devem ter o mesmo comprimento.")
        self.exact_phi: List[sp.Rational] = list(exact_phi)
        self.exact_psi: List[sp.Rational] = list(exact_psi)
        self.order: int = len(self.exact_phi)

    @property
    def phi(self) -> List[float]:
        return [float(v) for v in self.exact_phi]

    @property
    def psi(self) -> List[float]:
        return [float(v) for v in self.exact_psi]

    def __repr__(self) -> str:
        return f"SeriesCoefficients(order={self.order}, phi={self.phi}, psi={self.psi})"


class MonodromyPolynomial:
    """
    U(x, λ) exato para sistemas puramente atômicos: entradas polinomiais em λ.
    """

    def __init__(self, c1: sp.Poly, s1: sp.Poly, c2: sp.Poly, s2: sp.Poly):
        self.c1 = c1
        self.s1 = s1
        self.c2 = c2
        self.s2 = s2

    @classmethod
    def identity(cls) -> "MonodromyPolynomial":
        one = sp.Poly(1, LAMBDA, domain=sp.QQ)
        zero = sp.Poly(0, LAMBDA, domain=sp.QQ)
        return cls(one, zero, zero, one)

    def entries(self) -> Tuple[sp.Poly, sp.Poly, sp.Poly, sp.Poly]:
        return (self.c1, self.s1, self.c2, self.s2)

    def left_multiply(self, factor: Sequence[Sequence[sp.Poly]]) -> "MonodromyPolynomial":
        """Retorna factor · self."""
        (a, b), (c, d) = factor
        return MonodromyPolynomial(
            a * self.c1 + b * self.c2,
            a * self.s1 + b * self.s2,
            c * self.c1 + d * self.c2,
            c * self.s1 + d * self.s2,
        )

    def determinant(self) -> sp.Poly:
        return self.c1 * self.s2 - self.c2 * self.s1

    def coefficient(self, entry: str, power: int) -> sp.Rational:
        """Coeficiente de λ^power na entrada 'c1', 's1', 'c2' ou 's2'."""
        poly: sp.Poly = getattr(self, entry)
        return poly.coeff_monomial(LAMBDA**power)

    def degree(self) -> int:
        return max(max(p.degree(), 0) for p in self.entries())

    def evaluate(self, lam: LambdaLike) -> FundamentalMatrix:
        """Avalia as entradas em um λ numérico."""
        value = as_complex(lam)
        return FundamentalMatrix(*(_eval_poly(p, value) for p in self.entries()))

    def __repr__(self) -> str:
        return (
            f"MonodromyPolynomial(c1={self.c1.as_expr()}, s1={self.s1.as_expr()}, "
            f"c2={self.c2.as_expr()}, s2={self.s2.as_expr()})"
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonodromyPolynomial):
            return NotImplemented
        return all((a - b).is_zero for a, b in zip(self.entries(), other.entries()))


def _eval_poly(poly: sp.Poly, value: complex) -> complex:
    """Avalia um polinômio racional em um ponto complexo (Horner em float)."""
    result = 0j
    for coefficient in poly.all_coeffs():
        result = result * value + float(coefficient)
    return result
