# tests/conftest.py
"""Fixtures compartilhadas: sistemas de referência e gerador aleatório com semente."""

import math

import numpy as np
import pytest

from krein_weyl.controllers.propagation_controller import fundamental_matrix, fundamental_matrix_right
from krein_weyl.controllers.system_controller import validate
from krein_weyl.models.stieltjes_measure import StieltjesMeasure

SEED = 20240611


def lebesgue_tail() -> StieltjesMeasure:
    """R(x) = x em [0, ∞)."""
    return StieltjesMeasure.lebesgue()


def random_measures(rng, r1_tail: bool = False, r2_tail: bool = False):
    """
    Par (R₁, R₂) sem átomos comuns e definido em [0, 1).

    R₁: densidade em [0, 1) e átomo em 1.25; R₂: densidades em [0, 0.5) e
    [1.5, 2), átomo em 0.75. Caudas de densidade 1 a partir de 2 quando pedidas.
    """
    r1 = StieltjesMeasure(
        atoms=[(1.25, float(rng.uniform(0.2, 1.0)))],
        segments=[(0.0, 1.0, float(rng.uniform(0.5, 2.0)))],
        tail_density=1.0 if r1_tail else 0.0,
        b_rep=2.0,
    )
    r2 = StieltjesMeasure(
        atoms=[(0.75, float(rng.uniform(0.2, 1.0)))],
        segments=[
            (0.0, 0.5, float(rng.uniform(0.5, 2.0))),
            (1.5, 2.0, float(rng.uniform(0.5, 2.0))),
        ],
        tail_density=1.0 if r2_tail else 0.0,
        b_rep=2.0,
    )
    return r1, r2


def random_atomic_measures(rng, cells: int = 3):
    """String discreta: átomos de R₂ em k e de R₁ em k + 1/2 (posições diádicas)."""
    r2 = StieltjesMeasure(atoms=[(float(k), float(rng.integers(1, 5)) / 4) for k in range(cells)])
    r1 = StieltjesMeasure(
        atoms=[(k + 0.5, float(rng.integers(1, 5)) / 8) for k in range(cells)]
    )
    return r1, r2


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def lebesgue_system():
    """S[x-tail, x-tail]: singular, ponto limite, autodual, q(λ) = 1/√(-λ)."""
    return validate(lebesgue_tail(), lebesgue_tail(), name="lebesgue")


@pytest.fixture
def atom_system():
    """S[x-tail, atom(0, 2)]: singular, círculo limite, q(λ) = -1/(2λ)."""
    return validate(
        lebesgue_tail(),
        StieltjesMeasure.single_atom(0.0, 2.0),
        name="atom",
        allow_indefinite=True,
    )


@pytest.fixture
def regular_system(rng):
    r1, r2 = random_measures(rng)
    return validate(r1, r2, name="regular")


@pytest.fixture
def fleet(rng):
    """Sistemas regulares, singulares LC e singulares LP."""
    systems = []
    for r1_tail, r2_tail in ((False, False), (True, False), (False, True), (True, True)):
        r1, r2 = random_measures(rng, r1_tail, r2_tail)
        systems.append(validate(r1, r2, name=f"tails={r1_tail},{r2_tail}"))
    return systems


# --- Geração aleatória com geometria sorteada ---

# Posições em múltiplos de 1/GRID
GRID = 8
TAIL_KINDS = ((False, False), (True, False), (False, True), (True, True))
RANDOM_FLEET_SIZE = 52


def _random_segments(rng, span: int):
    """Segmento inicial [0, a) com a ∈ [1, span] e, às vezes, um segundo até span."""
    first_end = int(rng.integers(2, 2 * span + 1)) / 2
    segments = [(0.0, first_end, int(rng.integers(1, 9)) / 4)]
    if first_end < span and rng.random() < 0.5:
        start = first_end + int(rng.integers(0, int(2 * (span - first_end)))) / 2
        segments.append((start, float(span), int(rng.integers(1, 9)) / 4))
    return segments


def random_system(rng, r1_tail: bool = False, r2_tail: bool = False, extend_endpoint: bool = False):
    """
    Sistema validado com posições, massas, densidades e caudas sorteadas.

    As duas medidas têm densidade num intervalo inicial, o que garante a
    definitude do sistema e do seu dual. Átomos de R₁ e R₂ ficam em posições
    distintas da grade de 1/8 dentro de (0, span]. Sem caudas, extend_endpoint
    coloca b além da parte descrita.
    """
    span = int(rng.integers(2, 5))
    slots = rng.permutation(np.arange(1, GRID * span + 1)) / GRID
    n1, n2 = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    r1 = StieltjesMeasure(
        atoms=[(float(p), int(rng.integers(1, 9)) / 8) for p in slots[:n1]],
        segments=_random_segments(rng, span),
        tail_density=int(rng.integers(1, 5)) / 2 if r1_tail else 0.0,
        b_rep=float(span),
    )
    r2 = StieltjesMeasure(
        atoms=[(float(p), int(rng.integers(1, 9)) / 8) for p in slots[n1 : n1 + n2]],
        segments=_random_segments(rng, span),
        tail_density=int(rng.integers(1, 5)) / 2 if r2_tail else 0.0,
        b_rep=float(span),
    )
    endpoint = None
    if extend_endpoint and not (r1_tail or r2_tail):
        endpoint = float(span + int(rng.integers(1, 3)))
    name = f"random[{int(r1_tail)}{int(r2_tail)}]"
    return validate(r1, r2, endpoint=endpoint, name=name)


def make_random_fleet(seed: int, count: int):
    """count sistemas percorrendo as quatro combinações de caudas."""
    rng = np.random.default_rng(seed)
    systems = []
    for k in range(count):
        r1_tail, r2_tail = TAIL_KINDS[k % len(TAIL_KINDS)]
        extend = not (r1_tail or r2_tail) and bool(rng.integers(0, 2))
        systems.append(random_system(rng, r1_tail, r2_tail, extend))
    return systems


def random_grid_points(rng, system, count: int):
    """count pontos x da grade de 1/8 em [0, b] (ou [0, b_rep + 2] com cauda)."""
    top = system.endpoint if math.isfinite(system.endpoint) else system.described_end + 2.0
    return [int(k) / GRID for k in rng.integers(0, int(top * GRID) + 1, size=count)]


def identity_scale(system, x, lam) -> float:
    """max(1, |U|²), com |U| o maior módulo de U(x, λ) pela esquerda e pela direita."""
    left = fundamental_matrix(system, x, lam)
    right = fundamental_matrix_right(system, x, lam)
    peak = max(float(np.max(np.abs(left.as_array()))), float(np.max(np.abs(right.as_array()))))
    return max(1.0, peak * peak)


@pytest.fixture(scope="session")
def random_fleet():
    """Frota aleatória: regulares, singulares LC (cauda só em R₁) e singulares LP."""
    return make_random_fleet(SEED + 1, RANDOM_FLEET_SIZE)
