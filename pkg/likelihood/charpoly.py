"""
Module for character polynomials.

q_mu is a polynomial in the cycle counts a_1, a_2, ... whose value at a class
alpha is chi_[n - |mu|, mu](alpha) for every n large enough. Terms are stored in
the falling-factorial basis: an exponent e on x_i stands for (x_i)_e.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, perm, prod

import sympy

from .characters import character
from .exceptions import DomainError, InvariantViolation, ResourceLimitError
from .partitions import Partition, enumerate_cycle_types

logger = logging.getLogger(__name__)

MAX_SIZE = 8


def _trim(exponents):
    exponents = list(exponents)
    while exponents and exponents[-1] == 0:
        exponents.pop()
    return tuple(exponents)


def _display_key(item, width):
    exponents = item[0] + (0,) * (width - len(item[0]))
    return tuple(reversed(exponents))


@dataclass(frozen=True)
class CharPolynomial:
    """
    A character polynomial with exact coefficients.

    Attributes:
        mu (Partition): The partition the polynomial was built from.
        terms (tuple[tuple[tuple[int], Fraction]]): (exponents, coefficient)
            pairs with no zero coefficients, highest variable first.
    """

    mu: Partition
    terms: tuple

    @property
    def num_variables(self):
        return max((len(exponents) for exponents, _ in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    def __str__(self):
        return display(self)


@lru_cache(maxsize=None)
def character_polynomial(mu):
    """
    Build q_mu from the class expansion sum over alpha of
    chi_mu(alpha)/z_alpha * prod (i x_i - 1)^a_i, read in the falling basis.

    Args:
        mu (Partition): A partition of m <= MAX_SIZE (the empty one allowed).

    Returns:
        CharPolynomial: The polynomial q_mu.

    Raises:
        ResourceLimitError: If m exceeds MAX_SIZE.
    """
    m = mu.n
    if m > MAX_SIZE:
        raise ResourceLimitError(
            f"Character polynomials are capped at |mu| <= {MAX_SIZE}"
        )
    if m == 0:
        return CharPolynomial(mu=mu, terms=(((), Fraction(1)),))

    xs = sympy.symbols(f"x1:{m + 1}")
    total = sympy.Integer(0)
    for alpha in enumerate_cycle_types(m):
        weight = sympy.Rational(character(mu, alpha), alpha.z)
        total += weight * prod(
            (index * xs[index - 1] - 1) ** count
            for index, count in enumerate(alpha.multiplicities, start=1)
            if count
        )

    terms = []
    for monomial, coefficient in sympy.Poly(total, *xs).terms():
        if coefficient != 0:
            coefficient = sympy.Rational(coefficient)
            exact = Fraction(int(coefficient.p), int(coefficient.q))
            terms.append((_trim(monomial), exact))
    terms.sort(key=lambda item: _display_key(item, m), reverse=True)
    logger.debug("Built q_%s with %s terms", mu, len(terms))
    return CharPolynomial(mu=mu, terms=tuple(terms))


def evaluate(polynomial, alpha):
    """
    Value of the polynomial at the cycle counts of `alpha`.

    Raises:
        InvariantViolation: If the value is not an integer.
    """
    value = Fraction(0)
    for exponents, coefficient in polynomial.terms:
        value += coefficient * prod(
            perm(alpha.a(index), power) for index, power in enumerate(exponents, 1)
        )
    if value.denominator != 1:
        raise InvariantViolation(f"q_{polynomial.mu} evaluates to {value} at {alpha}")
    return value.numerator


def character_via_polynomial(partition, alpha):
    """chi_partition(alpha) through q_[lambda_2, lambda_3, ...]."""
    if partition.n != alpha.n:
        raise DomainError(
            f"Size mismatch: partition of {partition.n} against class of S_{alpha.n}"
        )
    return evaluate(character_polynomial(Partition(partition.parts[1:])), alpha)


def max_variable_index(polynomial):
    """
    Largest i such that x_i occurs in some term.

    Raises:
        DomainError: For the zero polynomial.
    """
    if polynomial.is_zero():
        raise DomainError("The zero polynomial has no variables")
    return polynomial.num_variables


def _monomial_text(exponents):
    factors = []
    for index, power in enumerate(exponents, start=1):
        if power == 1:
            factors.append(f"x{index}")
        elif power > 1:
            factors.append(f"C(x{index},{power})")
    return "*".join(factors)


def display(polynomial):
    """
    Human-readable form in the binomial basis, e.g. "x2 + C(x1,2) - x1".
    """
    if polynomial.is_zero():
        return "0"
    pieces = []
    for exponents, coefficient in polynomial.terms:
        # (x)_e = e! C(x, e)
        coefficient *= prod(factorial(power) for power in exponents)
        monomial = _monomial_text(exponents)
        magnitude = abs(coefficient)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not pieces:
            pieces.append(body if coefficient > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coefficient > 0 else '-'} {body}")
    return " ".join(pieces)


def to_ordinary(polynomial):
    """The polynomial as an expanded sympy expression in ordinary monomials."""
    xs = sympy.symbols(f"x1:{max(polynomial.num_variables, 1) + 1}")
    expression = sympy.Integer(0)
    for exponents, coefficient in polynomial.terms:
        term = sympy.Rational(coefficient.numerator, coefficient.denominator)
        for index, power in enumerate(exponents):
            term *= prod((xs[index] - j for j in range(power)), start=sympy.Integer(1))
        expression += term
    return sympy.expand(expression)
