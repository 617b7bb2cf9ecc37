from fractions import Fraction

from hypothesis import settings, strategies as st

from snk1.core_algebra import SnElement

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool)


def monomials(n: int, max_exp: int = 3):
    exps = st.lists(st.integers(0, max_exp), min_size=n, max_size=n)
    return st.builds(lambda a, b: (tuple(a), tuple(b)), exps, exps)


def elements(n: int, max_terms: int = 4, max_exp: int = 3):
    return st.dictionaries(monomials(n, max_exp), coeffs, max_size=max_terms).map(
        lambda terms: SnElement(n, terms)
    )


def monomial_elements(n: int, max_exp: int = 3):
    return monomials(n, max_exp).map(lambda ab: SnElement.monomial(n, ab[0], ab[1]))


def frac(p: int, q: int = 1) -> Fraction:
    return Fraction(p, q)
