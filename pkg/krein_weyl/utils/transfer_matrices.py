"""
Módulo que implementa as matrizes de transferência do sistema integral.

Este módulo fornece funções para:
- Criar os fatores 2x2 de átomos de R₁ e de R₂
- Criar o fator fechado de um segmento com densidades constantes
- Compor fatores mantendo uma escala logarítmica (sem overflow)
- Criar os mesmos fatores atômicos em modo exato (polinômios em λ)

Os fatores agem pela esquerda: U(depois) = F · U(antes).
"""

# krein_weyl/utils/transfer_matrices.py
import cmath
import math
from typing import Tuple

import numpy as np
import sympy as sp

from ..models.fundamental_matrix import LAMBDA

# Constantes padrão da aproximação de Taylor de cos e sinc
DEFAULT_TAYLOR_THRESHOLD = 1e-4
DEFAULT_TAYLOR_TERMS = 8

# Matriz simplética fixa J
SYMPLECTIC_J = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)

# --- Fatores atômicos ---


def create_r1_atom_matrix(mass: float) -> np.ndarray:
    """
    Cria o fator de um átomo de R₁: u₁ salta de mass·u₂.

    Args:
        mass: Massa do átomo (> 0).

    Returns:
        np.ndarray: [[1, mass], [0, 1]].
    """
    return np.array([[1.0, mass], [0.0, 1.0]], dtype=complex)


def create_r2_atom_matrix(mass: float, lam: complex) -> np.ndarray:
    """
    Cria o fator de um átomo de R₂: u₂ salta de -λ·mass·u₁.

    Args:
        mass: Massa do átomo (> 0).
        lam: Parâmetro espectral.

    Returns:
        np.ndarray: [[1, 0], [-λ·mass, 1]].
    """
    return np.array([[1.0, 0.0], [-lam * mass, 1.0]], dtype=complex)


# --- Fator de segmento ---


def _taylor_cos_sinc(z: complex, terms: int) -> Tuple[complex, complex]:
    """Séries truncadas de cos(z) e sin(z)/z."""
    z2 = z * z
    cos_sum = 0j
    sinc_sum = 0j
    term_cos = 1 + 0j  # z^(2k) / (2k)!
    term_sinc = 1 + 0j  # z^(2k) / (2k+1)!
    for k in range(terms):
        sign = -1 if k % 2 else 1
        cos_sum += sign * term_cos
        sinc_sum += sign * term_sinc
        term_cos *= z2 / ((2 * k + 1) * (2 * k + 2))
        term_sinc *= z2 / ((2 * k + 2) * (2 * k + 3))
    return cos_sum, sinc_sum


def scaled_cos_sinc(
    z: complex,
    threshold: float = DEFAULT_TAYLOR_THRESHOLD,
    terms: int = DEFAULT_TAYLOR_TERMS,
) -> Tuple[complex, complex, float]:
    """
    Calcula cos(z) e sinc(z) divididos por exp(|Im z|).

    Returns:
        Tuple[complex, complex, float]: (cos escalado, sinc escalado, |Im z|).
        Abaixo do limiar a escala é 0 e os valores vêm da série de Taylor.
    """
    if abs(z) < threshold:
        cos_z, sinc_z = _taylor_cos_sinc(z, terms)
        return cos_z, sinc_z, 0.0
    scale = abs(z.imag)
    plus = cmath.exp(1j * z - scale)
    minus = cmath.exp(-1j * z - scale)
    cos_z = (plus + minus) / 2
    sin_z = (plus - minus) / 2j
    return cos_z, sin_z / z, scale


def create_segment_matrix(
    alpha: float,
    beta: float,
    delta: float,
    lam: complex,
    threshold: float = DEFAULT_TAYLOR_THRESHOLD,
    terms: int = DEFAULT_TAYLOR_TERMS,
    branch: int = 1,
) -> Tuple[np.ndarray, float]:
    """
    Cria o fator de um segmento de comprimento delta com densidades alpha (R₁) e beta (R₂).

    Com ω² = λαβ o fator é
    [[cos ωΔ, αΔ·sinc ωΔ], [-λβΔ·sinc ωΔ, cos ωΔ]],
    devolvido dividido por exp(|Im ωΔ|).

    Args:
        alpha: Densidade de R₁ no segmento (>= 0).
        beta: Densidade de R₂ no segmento (>= 0).
        delta: Comprimento (> 0).
        lam: Parâmetro espectral.
        threshold: Limiar de |ωΔ| abaixo do qual usa Taylor.
        terms: Número de termos da série.
        branch: +1 para o ramo principal de ω, -1 para o oposto.

    Returns:
        Tuple[np.ndarray, float]: Matriz escalada e o logaritmo da escala.
    """
    omega = branch * cmath.sqrt(lam * alpha * beta)
    cos_z, sinc_z, scale = scaled_cos_sinc(omega * delta, threshold, terms)
    matrix = np.array(
        [
            [cos_z, alpha * delta * sinc_z],
            [-lam * beta * delta * sinc_z, cos_z],
        ],
        dtype=complex,
    )
    return matrix, scale


# --- Composição ---


def renormalize(matrix: np.ndarray, log_scale: float, bound: float) -> Tuple[np.ndarray, float]:
    """
    Divide a matriz pela maior entrada quando ela passa de bound.

    Returns:
        Tuple[np.ndarray, float]: Matriz e escala logarítmica atualizadas.
    """
    peak = float(np.max(np.abs(matrix)))
    if peak > bound or (0 < peak < 1.0 / bound):
        return matrix / peak, log_scale + math.log(peak)
    return matrix, log_scale


def compose(
    factor: np.ndarray,
    factor_scale: float,
    accumulated: np.ndarray,
    accumulated_scale: float,
    bound: float,
) -> Tuple[np.ndarray, float]:
    """Multiplica factor · accumulated somando as escalas e renormalizando."""
    product = factor @ accumulated
    return renormalize(product, factor_scale + accumulated_scale, bound)


# --- Fatores exatos (modo polinomial) ---


def create_symbolic_r1_atom(mass: sp.Rational):
    """Fator exato [[1, mass], [0, 1]] como polinômios em λ."""
    one = sp.Poly(1, LAMBDA, domain=sp.QQ)
    zero = sp.Poly(0, LAMBDA, domain=sp.QQ)
    return ((one, sp.Poly(mass, LAMBDA, domain=sp.QQ)), (zero, one))


def create_symbolic_r2_atom(mass: sp.Rational):
    """Fator exato [[1, 0], [-λ·mass, 1]] como polinômios em λ."""
    one = sp.Poly(1, LAMBDA, domain=sp.QQ)
    zero = sp.Poly(0, LAMBDA, domain=sp.QQ)
    return ((one, zero), (sp.Poly(-mass * LAMBDA, LAMBDA, domain=sp.QQ), one))
