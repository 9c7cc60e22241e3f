"""
Quadratura de Gauss-Legendre composta usada pelos testes de identidade.
"""

# krein_weyl/utils/quadrature.py
from functools import lru_cache
from typing import Tuple

import numpy as np


@lru_cache(maxsize=8)
def _reference_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return nodes, weights


def gauss_legendre_nodes(
    start: float, end: float, order: int = 16, refinements: int = 1
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nós e pesos da regra composta em [start, end].

    O intervalo é dividido em 2**refinements partes iguais com a regra de
    ordem `order` em cada uma.

    Args:
        start: Início do intervalo.
        end: Fim do intervalo (> start).
        order: Número de nós por subintervalo.
        refinements: Número de bissecções.

    Returns:
        Tuple[np.ndarray, np.ndarray]: Nós crescentes e pesos.
    """
    if end <= start:
        return np.empty(0), np.empty(0)
    reference_nodes, reference_weights = _reference_rule(order)
    parts = 2**refinements
    edges = np.linspace(start, end, parts + 1)
    nodes = []
    weights = []
    for a, b in zip(edges[:-1], edges[1:]):
        half = (b - a) / 2.0
        nodes.append(a + half * (reference_nodes + 1.0))
        weights.append(half * reference_weights)
    return np.concatenate(nodes), np.concatenate(weights)
