"""Random generator words with known tallies, for property checks and demos."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core_algebra import SnElement, matrix_unit
from .matrix_group import Elem, GroupWord, Mu, Theta

SCALARS = (Fraction(2), Fraction(3), Fraction(-1), Fraction(-1, 2), Fraction(1, 7), Fraction(5, 3))


def random_monomial(rng: random.Random, n: int, max_exp: int = 2, coeff: bool = False) -> SnElement:
    alpha = [rng.randint(0, max_exp) for _ in range(n)]
    beta = [rng.randint(0, max_exp) for _ in range(n)]
    c = rng.choice([1, -1, 2, Fraction(1, 2)]) if coeff else 1
    return SnElement.monomial(n, alpha, beta, c)


def random_p_entry(rng: random.Random, dim: int, support: Sequence[int]) -> SnElement:
    """A small element of the ideal p generated by E_00(k), k in the support."""
    k = rng.choice(list(support))
    unit = matrix_unit(dim, [k], [rng.randint(0, 1)], [rng.randint(0, 1)])
    m = random_monomial(rng, dim, 1)
    c = rng.choice([1, -1, 2, Fraction(1, 3)])
    return (m * unit if rng.random() < 0.5 else unit * m).scale(c)


def random_p_elementary(rng: random.Random, n: int, support: Sequence[int], rows: int = 3) -> Elem:
    p, q = rng.sample(range(rows), 2)
    return Elem(p, q, random_p_entry(rng, n - 1, support))


@dataclass
class TalliedWord:
    word: GroupWord
    n_ij: dict[tuple[int, int], int]
    lambda_k: dict[int, Fraction]


def random_congruence_word(
    rng: random.Random, n: int, support: Sequence[int], length: int = 5, elementary_only: bool = False
) -> TalliedWord:
    """Word over theta_ij({i,j,n}), mu_{k,n}(lambda) and p-elementary tokens."""
    support = sorted(support)
    tally_n: dict[tuple[int, int], int] = {}
    tally_l = {k: Fraction(1) for k in support}
    toks = []
    for _ in range(length):
        r = rng.random()
        if elementary_only or r >= 0.6:
            toks.append(random_p_elementary(rng, n, support))
        elif r < 0.3 and len(support) >= 2:
            i, j = rng.sample(support, 2)
            toks.append(Theta(i, j, (i, j, n)))
            key = (max(i, j), min(i, j))
            tally_n[key] = tally_n.get(key, 0) + (1 if i > j else -1)
        else:
            k = rng.choice(support)
            lam = rng.choice(SCALARS)
            toks.append(Mu((k, n), lam))
            tally_l[k] *= lam
    return TalliedWord(GroupWord(n, tuple(toks)), {k: v for k, v in tally_n.items() if v}, tally_l)


def random_full_word(rng: random.Random, n: int, length: int = 5) -> tuple[GroupWord, Fraction]:
    """Word over mu_n(lambda), theta and elementary tokens; returns the mu_n scalar product."""
    dim = n - 1
    lam_total = Fraction(1)
    toks = []
    for _ in range(length):
        r = rng.random()
        if r < 0.35:
            lam = rng.choice(SCALARS)
            toks.append(Mu((n,), lam))
            lam_total *= lam
        elif r < 0.55 and dim >= 2:
            i, j = rng.sample(range(1, n), 2)
            toks.append(Theta(i, j, (i, j, n)))
        else:
            p, q = rng.sample(range(3), 2)
            toks.append(Elem(p, q, random_monomial(rng, dim, 1, coeff=True)))
    return GroupWord(n, tuple(toks)), lam_total
