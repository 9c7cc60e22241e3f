"""
Módulo que define a classe StieltjesMeasure para medidas de Lebesgue-Stieltjes.

Uma medida dR em [0, b) é descrita por átomos, densidades constantes por
segmento e uma densidade de cauda opcional em [b_rep, ∞). A função
R(x) = dR([0, x)) é não decrescente e contínua à esquerda: um átomo em p só
contribui para R(x) quando x > p.
"""

# krein_weyl/models/stieltjes_measure.py
import bisect
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from ..errors import ZeroMeasureError
from ..utils.piecewise_polynomial import (
    ONE_POLY,
    ZERO_POLY,
    PiecewisePolynomial,
    make_poly,
    to_rational,
)

Atom = Tuple[float, float]
Segment = Tuple[float, float, float]


@dataclass(frozen=True)
class L2Verdict:
    """Resultado de um teste de pertinência a L²: finito (com valor) ou infinito."""

    finite: bool
    value: Optional[float] = None

    def __str__(self) -> str:
        return f"finite({self.value:.17g})" if self.finite else "infinite"


class StieltjesMeasure:
    """
    Representa uma medida de Lebesgue-Stieltjes dR em [0, ∞).

    Responsável por:
    - Armazenar átomos, segmentos com densidade constante e a densidade de cauda.
    - Avaliar R pela esquerda (dR([0,x))) e pela direita (dR([0,x])).
    - Integrar exatamente polinômios por partes contra dR.
    - Decidir pertinência de 1 ou de outra função de distribuição a L²(dR).
    """

    def __init__(
        self,
        atoms: Iterable[Sequence[float]] = (),
        segments: Iterable[Sequence[float]] = (),
        tail_density: float = 0.0,
        b_rep: Optional[float] = None,
    ):
        """
        Inicializa e valida a medida.

        Args:
            atoms: Pares (posição >= 0, massa > 0).
            segments: Triplas (início, fim, densidade >= 0), disjuntas.
            tail_density: Densidade constante em [b_rep, ∞); 0 para medida finita.
            b_rep: Fim da parte descrita explicitamente. Padrão: maior fim de
                segmento ou maior posição de átomo.

        Raises:
            ValueError: Se algum dado violar as invariantes da representação.
        """
        parsed_atoms: List[Atom] = []
        for atom in atoms:
            if len(atom) != 2:
                raise ValueError(f"Átomo deve ser (posição, massa): {atom!r}")
            position, mass = float(atom[0]), float(atom[1])
            if not math.isfinite(position) or position < 0:
                raise ValueError(f"Posição de átomo inválida: {position!r}")
            if not math.isfinite(mass) or mass <= 0:
                raise ValueError(f"Massa de átomo deve ser positiva: {mass!r}")
            parsed_atoms.append((position, mass))
        parsed_atoms.sort()
        for (p, _), (q, _) in zip(parsed_atoms, parsed_atoms[1:]):
            if q <= p:
                raise ValueError(f"Átomos repetidos na posição {p!r}")

        parsed_segments: List[Segment] = []
        for segment in segments:
            if len(segment) != 3:
                raise ValueError(f"Segmento deve ser (início, fim, densidade): {segment!r}")
            start, end, density = (float(v) for v in segment)
            if not (math.isfinite(start) and math.isfinite(end)) or start < 0:
                raise ValueError(f"Segmento fora de [0, ∞): {segment!r}")
            if end <= start:
                raise ValueError(f"Segmento vazio ou invertido: {segment!r}")
            if not math.isfinite(density) or density < 0:
                raise ValueError(f"Densidade negativa ou não finita: {density!r}")
            parsed_segments.append((start, end, density))
        parsed_segments.sort()
        for (_, e1, _), (s2, _, _) in zip(parsed_segments, parsed_segments[1:]):
            if s2 < e1:
                raise ValueError(f"Segmentos sobrepostos em {s2!r}")

        tail = float(tail_density)
        if not math.isfinite(tail) or tail < 0:
            raise ValueError(f"Densidade de cauda inválida: {tail_density!r}")

        default_end = max(
            [0.0]
            + [p for p, _ in parsed_atoms]
            + [e for _, e, _ in parsed_segments]
        )
        if b_rep is None:
            end = default_end
        else:
            end = float(b_rep)
            if not math.isfinite(end) or end < default_end:
                raise ValueError(
                    f"b_rep={end!r} não cobre a parte descrita (mínimo {default_end!r})."
                )

        self._atoms: Tuple[Atom, ...] = tuple(parsed_atoms)
        self._segments: Tuple[Segment, ...] = tuple(parsed_segments)
        self._tail_density: float = tail
        self._b_rep: float = end
        self._atom_positions: List[float] = [p for p, _ in parsed_atoms]
        self._exact_cache = None

    # --- Construtores auxiliares ---

    @classmethod
    def lebesgue(cls, start: float = 0.0) -> "StieltjesMeasure":
        """Medida de Lebesgue em [start, ∞) (R(x) = max(x - start, 0))."""
        return cls(tail_density=1.0, b_rep=start)

    @classmethod
    def single_atom(cls, position: float, mass: float) -> "StieltjesMeasure":
        return cls(atoms=[(position, mass)])

    @classmethod
    def zero(cls) -> "StieltjesMeasure":
        return cls()

    def with_tail(self, density: float, start: float) -> "StieltjesMeasure":
        """
        Retorna uma cópia com densidade de cauda a partir de start.

        Raises:
            ValueError: Se start for menor que b_rep ou a medida já tiver cauda.
        """
        if self._tail_density > 0:
            raise ValueError("A medida já possui cauda infinita.")
        return StieltjesMeasure(self._atoms, self._segments, density, start)

    # --- Acesso aos dados ---

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return self._atoms

    @property
    def segments(self) -> Tuple[Segment, ...]:
        return self._segments

    @property
    def tail_density(self) -> float:
        return self._tail_density

    @property
    def b_rep(self) -> float:
        return self._b_rep

    @property
    def is_finite(self) -> bool:
        return self._tail_density == 0

    @property
    def endpoint(self) -> float:
        """b = b_rep para medidas finitas, +∞ com cauda."""
        return self._b_rep if self.is_finite else math.inf

    def total_variation(self) -> float:
        """R(b) ∈ [0, ∞]."""
        if not self.is_finite:
            return math.inf
        return sum(m for _, m in self._atoms) + sum(
            d * (e - s) for s, e, d in self._segments
        )

    def mass_at(self, position: float) -> float:
        """Massa do átomo em position (0 se não houver átomo)."""
        i = bisect.bisect_left(self._atom_positions, position)
        if i < len(self._atoms) and self._atoms[i][0] == position:
            return self._atoms[i][1]
        return 0.0

    def density_at(self, t: float) -> float:
        """Densidade em [t, t + ε) para ε pequeno."""
        if self._tail_density > 0 and t >= self._b_rep:
            return self._tail_density
        for start, end, density in self._segments:
            if start <= t < end:
                return density
        return 0.0

    def breakpoints(self) -> List[float]:
        """Posições onde a descrição muda: átomos, extremos de segmentos, início da cauda."""
        points = set(self._atom_positions)
        for start, end, _ in self._segments:
            points.add(start)
            points.add(end)
        if self._tail_density > 0:
            points.add(self._b_rep)
        return sorted(points)

    def support_end(self) -> float:
        """Último ponto de crescimento de R (+∞ com cauda, 0 para a medida nula)."""
        if not self.is_finite:
            return math.inf
        ends = [p for p, _ in self._atoms] + [
            e for _, e, d in self._segments if d > 0
        ]
        return max(ends, default=0.0)

    # --- Operações ---

    def eval_left(self, x: float) -> float:
        """
        Avalia R(x) = dR([0, x)).

        Args:
            x: Ponto de avaliação (x >= 0; math.inf dá a variação total).
        """
        if x < 0:
            raise ValueError(f"Avaliação exige x >= 0: {x!r}")
        if math.isinf(x):
            return self.total_variation()
        value = sum(m for p, m in self._atoms if p < x)
        for start, end, density in self._segments:
            if x > start:
                value += density * (min(end, x) - start)
        if self._tail_density > 0 and x > self._b_rep:
            value += self._tail_density * (x - self._b_rep)
        return value

    def eval_right(self, x: float) -> float:
        """Avalia R₊(x) = dR([0, x])."""
        if math.isinf(x):
            return self.eval_left(x)
        return self.eval_left(x) + self.mass_at(x)

    def inf_support(self) -> float:
        """
        Retorna a = inf supp dR.

        Raises:
            ZeroMeasureError: Se a medida for nula.
        """
        candidates = [p for p, _ in self._atoms]
        candidates += [s for s, _, d in self._segments if d > 0]
        if self._tail_density > 0:
            candidates.append(self._b_rep)
        if not candidates:
            raise ZeroMeasureError()
        return min(candidates)

    # --- Integração exata ---

    def _exact(self):
        if self._exact_cache is None:
            atoms = {to_rational(p): to_rational(m) for p, m in self._atoms}
            segments = [
                (to_rational(s), to_rational(e), to_rational(d))
                for s, e, d in self._segments
            ]
            self._exact_cache = (
                atoms,
                segments,
                to_rational(self._tail_density),
                to_rational(self._b_rep),
            )
        return self._exact_cache

    def _exact_density_at(self, t: sp.Rational) -> sp.Rational:
        _, segments, tail, b_rep = self._exact()
        if tail > 0 and t >= b_rep:
            return tail
        for start, end, density in segments:
            if start <= t < end:
                return density
        return sp.Integer(0)

    def cumulative_integral(self, f: PiecewisePolynomial) -> PiecewisePolynomial:
        """
        Constrói G(t) = ∫_[0,t) f dR como polinômio por partes exato.

        Em cada intervalo (k_i, k_i+1] vale
        G(t) = G(k_i) + f(k_i)·massa(k_i) + ρ_i·(A(t) - A(k_i)),
        onde A é a primitiva da peça de f e ρ_i a densidade do intervalo.

        Args:
            f: Integrando contínuo à esquerda.

        Returns:
            PiecewisePolynomial: G, nulo em t <= 0.
        """
        atoms, segments, tail, b_rep = self._exact()
        zero = sp.Integer(0)
        points = {zero} | set(atoms)
        for start, end, _ in segments:
            points.update((start, end))
        if tail > 0:
            points.add(b_rep)
        points.update(k for k in f.knots if k >= 0)
        knots = sorted(points)

        f_knots = f.knots
        f_pieces = f.pieces
        pieces = [ZERO_POLY]
        value_at_knot = zero
        for i, knot in enumerate(knots):
            jump = f.evaluate(knot) * atoms.get(knot, zero)
            start_value = make_poly(value_at_knot + jump)
            density = self._exact_density_at(knot)
            if i + 1 < len(knots):
                f_piece = f_pieces[bisect.bisect_left(f_knots, knots[i + 1])]
            else:
                f_piece = f_pieces[len(f_knots)]
            if density == 0:
                piece = start_value
            else:
                primitive = f_piece.integrate()
                piece = start_value + (primitive - make_poly(primitive.eval(knot))) * make_poly(density)
            pieces.append(piece)
            if i + 1 < len(knots):
                value_at_knot = piece.eval(knots[i + 1])
        return PiecewisePolynomial(knots, pieces)

    def cdf(self) -> PiecewisePolynomial:
        """R como polinômio por partes contínuo à esquerda."""
        return self.cumulative_integral(PiecewisePolynomial([], [ONE_POLY]))

    def integrate_poly(
        self,
        pieces: PiecewisePolynomial,
        x: float,
        inclusive: bool = False,
        exact: bool = False,
    ):
        """
        Calcula ∫_[0,x) f dR exatamente.

        Args:
            pieces: Integrando polinomial por partes cobrindo [0, x).
            x: Limite superior (finito).
            inclusive: Se True, integra sobre [0, x] (inclui átomo em x).
            exact: Se True, retorna o racional exato em vez de float.

        Returns:
            float ou sympy.Rational: O valor da integral.
        """
        if x < 0 or math.isinf(x):
            raise ValueError(f"Limite de integração deve ser finito e >= 0: {x!r}")
        exact_x = to_rational(x)
        value = self.cumulative_integral(pieces).evaluate(exact_x)
        if inclusive:
            atoms, _, _, _ = self._exact()
            value += pieces.evaluate(exact_x) * atoms.get(exact_x, sp.Integer(0))
        return value if exact else float(value)

    def l2_membership(self, profile: Optional["StieltjesMeasure"] = None) -> L2Verdict:
        """
        Decide se f pertence a L²(dR) em [0, b).

        Args:
            profile: None para f ≡ 1; caso contrário f é a função de
                distribuição da medida profile.

        Returns:
            L2Verdict: finito com o valor de ∫|f|² dR, ou infinito.
        """
        if self._tail_density > 0:
            if profile is None:
                return L2Verdict(False)
            if not profile.is_finite or profile.total_variation() > 0:
                return L2Verdict(False)
        if profile is None:
            integrand = PiecewisePolynomial([], [ONE_POLY])
        else:
            integrand = profile.cdf().square()
        return L2Verdict(True, self.integrate_poly(integrand, self._b_rep, inclusive=True))

    # --- Comparação ---

    def _key(self):
        return (self._atoms, self._segments, self._tail_density, self._b_rep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StieltjesMeasure):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_exact_cache"] = None
        return state

    def __repr__(self) -> str:
        return (
            f"StieltjesMeasure(atoms={list(self._atoms)}, segments={list(self._segments)}, "
            f"tail_density={self._tail_density}, b_rep={self._b_rep})"
        )
