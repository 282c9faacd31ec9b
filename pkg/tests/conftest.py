import random

import pytest

from kodaira import WeierstrassModel

EX1_AINVS = ("1", "0", "1", "-190891", "-36002922")
EX2_AINVS = ("1", "0", "0", "-16513", "-916983")

SEED = 20240607
HEIGHT = 10**4


@pytest.fixture
def ex1():
    return WeierstrassModel.from_ainvs(EX1_AINVS)


@pytest.fixture
def ex2():
    return WeierstrassModel.from_ainvs(EX2_AINVS)


# (v(a4), v(a6)) pairs of short models hitting each additive type at p >= 5
_SHORT_PATTERNS = ((1, 1), (1, 2), (2, 2), (2, 3), (3, 4), (3, 5), (4, 5), (2, 4), (3, 3))


def _unit(rng: random.Random, p: int, k: int) -> int:
    bound = HEIGHT // p**k
    while True:
        w = rng.randint(-bound, bound)
        if w % p:
            return w


def _structured(rng: random.Random, p: int) -> list[int]:
    if rng.random() < 0.5:
        fits = [(v4, v6) for v4, v6 in _SHORT_PATTERNS if p ** max(v4, v6) <= HEIGHT]
        if fits:
            v4, v6 = rng.choice(fits)
            return [0, 0, 0, p**v4 * _unit(rng, p, v4), p**v6 * _unit(rng, p, v6)]
    # a_i = p^k_i * w with k_i favouring the thresholds of Tate's algorithm
    out = []
    for weight in (1, 2, 3, 4, 6):
        k = rng.choice([0, 1, 1, 2, 2, 3, 4, 5, weight])
        unit = max(1, HEIGHT // p**k) if p**k <= HEIGHT else 0
        out.append(p**k * rng.randint(-unit, unit) if unit else 0)
    return out


def random_models(n: int, seed: int = SEED, primes=(3, 5, 7, 11, 13)) -> list[WeierstrassModel]:
    """Nonsingular integral models with every |a_i| <= 10^4.

    Half are uniform, half concentrate valuations at one of ``primes``.
    """
    rng = random.Random(seed)
    models: list[WeierstrassModel] = []
    while len(models) < n:
        if len(models) % 2 == 0:
            a = [rng.randint(-HEIGHT, HEIGHT) if i > 1 else rng.randint(-1, 1) for i in range(5)]
            a[2] = rng.randint(-1, 1)
        else:
            a = _structured(rng, rng.choice(primes))
        if max(abs(x) for x in a) > HEIGHT:
            continue
        m = WeierstrassModel.from_ainvs(a)
        if not m.is_singular():
            models.append(m)
    return models


def random_squarefree(rng: random.Random, bound: int, exclude_prime: int | None = None) -> int:
    from kodaira.curve_core import is_squarefree

    while True:
        d = rng.randint(-bound, bound)
        if d in (0, 1) or not is_squarefree(d):
            continue
        if exclude_prime is not None and d % exclude_prime == 0:
            continue
        return d
