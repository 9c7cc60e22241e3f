"""
Módulo com polinômios por partes exatos, contínuos à esquerda.

Um PiecewisePolynomial é descrito por nós k1 < ... < kn e n+1 polinômios
P0, ..., Pn sobre os racionais. O valor em t é P_i(t) com
i = bisect_left(nós, t): em um nó vale o polinômio da esquerda, o que
reproduz a convenção de continuidade à esquerda das integrais ∫_[0,x).
"""

# krein_weyl/utils/piecewise_polynomial.py
import bisect
import math
from numbers import Real
from typing import List, Sequence, Union

import sympy as sp

# Variável de integração dos polinômios
T = sp.Symbol("t")

Number = Union[int, float, sp.Rational]


def to_rational(value: Number) -> sp.Rational:
    """
    Converte um número real para um racional exato do sympy.

    Floats são convertidos sem arredondamento (a fração binária exata).

    Raises:
        ValueError: Se o valor não for finito.
    """
    if isinstance(value, sp.Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("Valor booleano não é um número real.")
    if isinstance(value, int):
        return sp.Integer(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Valor não finito não pode ser racional: {value!r}")
        return sp.Rational(value)
    if isinstance(value, Real):
        return sp.Rational(value)
    converted = sp.nsimplify(value, rational=True)
    if not isinstance(converted, sp.Rational):
        raise TypeError(f"Valor não racional: {value!r}")
    return converted


def make_poly(expr) -> sp.Poly:
    """Cria um polinômio em t com coeficientes racionais."""
    if isinstance(expr, sp.Poly):
        return expr
    if isinstance(expr, (int, float)):
        expr = to_rational(expr)
    return sp.Poly(expr, T, domain=sp.QQ)


ZERO_POLY = make_poly(0)
ONE_POLY = make_poly(1)


class PiecewisePolynomial:
    """
    Polinômio por partes contínuo à esquerda em ℝ.

    Atributos:
        knots: Nós estritamente crescentes (racionais).
        pieces: Polinômios; pieces[i] vale em (knots[i-1], knots[i]].
    """

    def __init__(self, knots: Sequence[Number], pieces: Sequence[sp.Poly]):
        """
        Inicializa o polinômio por partes.

        Args:
            knots: Nós estritamente crescentes.
            pieces: Lista com len(knots) + 1 polinômios.

        Raises:
            ValueError: Se os nós não forem crescentes ou o número de peças não bater.
        """
        exact_knots = [to_rational(k) for k in knots]
        if any(b <= a for a, b in zip(exact_knots, exact_knots[1:])):
            raise ValueError("Nós devem ser estritamente crescentes.")
        if len(pieces) != len(exact_knots) + 1:
            raise ValueError(
                f"Esperadas {len(exact_knots) + 1} peças, recebidas {len(pieces)}."
            )
        self._knots: List[sp.Rational] = exact_knots
        self._pieces: List[sp.Poly] = [make_poly(p) for p in pieces]

    @classmethod
    def constant(cls, value: Number) -> "PiecewisePolynomial":
        """Cria a função constante igual a value."""
        return cls([], [make_poly(to_rational(value))])

    @classmethod
    def from_polynomial(cls, expr) -> "PiecewisePolynomial":
        """Cria um polinômio global (uma única peça) a partir de uma expressão em T."""
        return cls([], [make_poly(expr)])

    @property
    def knots(self) -> List[sp.Rational]:
        return list(self._knots)

    @property
    def pieces(self) -> List[sp.Poly]:
        return list(self._pieces)

    def degree(self) -> int:
        """Maior grau entre as peças (0 para a função nula)."""
        return max(max(p.degree(), 0) for p in self._pieces)

    def evaluate(self, t: Number) -> sp.Rational:
        """Valor exato (à esquerda) em t."""
        exact_t = to_rational(t)
        return self._pieces[bisect.bisect_left(self._knots, exact_t)].eval(exact_t)

    def evaluate_right(self, t: Number) -> sp.Rational:
        """Limite à direita exato em t."""
        exact_t = to_rational(t)
        return self._pieces[bisect.bisect_right(self._knots, exact_t)].eval(exact_t)

    # --- Aritmética ---

    def _aligned_pieces(self, knots: List[sp.Rational]) -> List[sp.Poly]:
        """Reescreve as peças sobre um refinamento dos nós."""
        aligned = []
        for i in range(len(knots) + 1):
            if i < len(knots):
                aligned.append(self._pieces[bisect.bisect_left(self._knots, knots[i])])
            else:
                aligned.append(self._pieces[len(self._knots)])
        return aligned

    def _combine(self, other: "PiecewisePolynomial", op) -> "PiecewisePolynomial":
        knots = sorted(set(self._knots) | set(other._knots))
        mine = self._aligned_pieces(knots)
        theirs = other._aligned_pieces(knots)
        return PiecewisePolynomial(knots, [op(a, b) for a, b in zip(mine, theirs)])

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other) -> "PiecewisePolynomial":
        if isinstance(other, PiecewisePolynomial):
            return self._combine(other, lambda a, b: a * b)
        if isinstance(other, (int, float, sp.Rational)):
            factor = make_poly(to_rational(other))
            return PiecewisePolynomial(self._knots, [p * factor for p in self._pieces])
        return NotImplemented

    __rmul__ = __mul__

    def square(self) -> "PiecewisePolynomial":
        return self * self

    def __repr__(self) -> str:
        knots = ", ".join(str(k) for k in self._knots)
        pieces = ", ".join(str(p.as_expr()) for p in self._pieces)
        return f"PiecewisePolynomial(knots=[{knots}], pieces=[{pieces}])"

    def __eq__(self, other: object) -> bool:
        """Igualdade funcional: compara os valores sobre o refinamento comum dos nós."""
        if not isinstance(other, PiecewisePolynomial):
            return NotImplemented
        knots = sorted(set(self._knots) | set(other._knots))
        return all(
            (a - b).is_zero
            for a, b in zip(self._aligned_pieces(knots), other._aligned_pieces(knots))
        )

    __hash__ = None
