"""Truncated Campbell-Baker-Hausdorff-Dynkin series on matrices.

Terms are enumerated with exact rational coefficients.  Every term maps to a
word in the letters X and Y; terms sharing a word are merged before any
matrix work, so a degree-10 evaluation costs at most ~2000 nested brackets.
"""

from __future__ import annotations

import functools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from cyclic_split.linalg import _same_shape, expm, frobenius_norm

__all__ = [
    "MAX_DEGREE",
    "DynkinTerm",
    "enumerate_terms",
    "word_coefficients",
    "bracket_polynomial",
    "series_polynomial",
    "log_product_polynomial",
    "low_order_coefficients",
    "nested_bracket",
    "dynkin_sum",
    "truncation_error_curve",
]

MAX_DEGREE = 10


@dataclass(frozen=True)
class DynkinTerm:
    """One composition ``((m1, n1), ..., (mk, nk))`` of the double sum."""

    exponents: tuple[tuple[int, int], ...]
    coefficient: Fraction

    @property
    def k(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(m + n for m, n in self.exponents)

    @property
    def word(self) -> str:
        return "".join("X" * m + "Y" * n for m, n in self.exponents)


def _check_degree(max_degree: int) -> int:
    max_degree = int(max_degree)
    if max_degree < 1:
        raise ValueError(f"max_degree must be >= 1, got {max_degree}")
    if max_degree > MAX_DEGREE:
        raise ValueError(f"budget: max_degree {max_degree} exceeds the ceiling {MAX_DEGREE}")
    return max_degree


def _blocks(total: int):
    """All ``(m, n)`` with ``m + n == total``."""
    return [(m, total - m) for m in range(total, -1, -1)]


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _term_coefficient(exponents) -> Fraction:
    k = len(exponents)
    degree = sum(m + n for m, n in exponents)
    denom = k * degree
    for m, n in exponents:
        denom *= math.factorial(m) * math.factorial(n)
    return Fraction((-1) ** (k - 1), denom)


@functools.lru_cache(maxsize=None)
def _terms_of_degree(degree: int) -> tuple[DynkinTerm, ...]:
    out = []
    for sizes in _compositions(degree):
        choices = [_blocks(s) for s in sizes]
        stack = [()]
        for options in choices:
            stack = [prefix + (blk,) for prefix in stack for blk in options]
        for exps in stack:
            out.append(DynkinTerm(exps, _term_coefficient(exps)))
    out.sort(key=lambda t: (t.k, t.exponents))
    return tuple(out)


def enumerate_terms(max_degree: int) -> list[DynkinTerm]:
    """Every Dynkin term of total degree ``<= max_degree``.

    Sorted by degree, then block count ``k``, then the exponent tuple.
    """
    max_degree = _check_degree(max_degree)
    terms = []
    for d in range(1, max_degree + 1):
        terms.extend(_terms_of_degree(d))
    return terms


@functools.lru_cache(maxsize=None)
def _word_coefficients(max_degree: int) -> tuple[tuple[str, Fraction], ...]:
    acc: dict[str, Fraction] = defaultdict(Fraction)
    for term in enumerate_terms(max_degree):
        acc[term.word] += term.coefficient
    words = sorted(acc, key=lambda w: (len(w), w))
    return tuple((w, acc[w]) for w in words if acc[w] != 0)


def word_coefficients(max_degree: int) -> dict[str, Fraction]:
    """Dynkin coefficients merged per letter word (zero totals dropped)."""
    return dict(_word_coefficients(_check_degree(max_degree)))


def bracket_polynomial(word: str) -> dict[str, int]:
    """Expand the right-nested bracket ``[w1, [w2, ... [w_{n-1}, w_n]]]``
    into a noncommutative polynomial ``{monomial: integer coefficient}``."""
    poly = {word[-1]: 1}
    for letter in reversed(word[:-1]):
        nxt: dict[str, int] = defaultdict(int)
        for mono, c in poly.items():
            nxt[letter + mono] += c
            nxt[mono + letter] -= c
        poly = {m: c for m, c in nxt.items() if c}
    return poly


def series_polynomial(max_degree: int) -> dict[str, Fraction]:
    """The truncated bracket series expanded in the free associative algebra."""
    acc: dict[str, Fraction] = defaultdict(Fraction)
    for word, coeff in _word_coefficients(_check_degree(max_degree)):
        for mono, c in bracket_polynomial(word).items():
            acc[mono] += coeff * c
    return {m: c for m, c in acc.items() if c}


def log_product_polynomial(max_degree: int) -> dict[str, Fraction]:
    """``log(e^X e^Y)`` truncated, from the unbracketed double sum.

    Each composition contributes its word with weight
    ``(-1)**(k-1) / (k * prod(m_i! n_i!))``; no bracket and no ``1/degree``.
    """
    acc: dict[str, Fraction] = defaultdict(Fraction)
    for term in enumerate_terms(max_degree):
        weight = term.coefficient * term.degree
        acc[term.word] += weight
    return {m: c for m, c in acc.items() if c}


def low_order_coefficients() -> dict[str, Fraction]:
    """Net coefficients through degree three on a bracket basis.

    Keys are ``X``, ``Y``, ``[X,Y]``, ``[X,[X,Y]]`` and ``[Y,[X,Y]]``.
    Right-nested words are reduced with antisymmetry, e.g. ``XYX`` is
    ``[X,[Y,X]] = -[X,[X,Y]]``; words ending in a repeated letter vanish.
    """
    w = dict(_word_coefficients(3))
    get = lambda key: w.get(key, Fraction(0))  # noqa: E731
    return {
        "X": get("X"),
        "Y": get("Y"),
        "[X,Y]": get("XY") - get("YX"),
        "[X,[X,Y]]": get("XXY") - get("XYX"),
        "[Y,[X,Y]]": get("YXY") - get("YYX"),
    }


def nested_bracket(word: str, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    mats = {"X": X, "Y": Y}
    acc = mats[word[-1]]
    for letter in reversed(word[:-1]):
        L = mats[letter]
        acc = L @ acc - acc @ L
    return acc


def dynkin_sum(X, Y, max_degree: int) -> np.ndarray:
    """``H_N(X, Y)``: the bracket series summed through total degree ``max_degree``.

    Summation runs sequentially in enumeration order, so results are
    bitwise reproducible.
    """
    X, Y = _same_shape(X, Y)
    max_degree = _check_degree(max_degree)
    out = np.zeros_like(X)
    for word, coeff in _word_coefficients(max_degree):
        if len(word) > 1 and word[-1] == word[-2]:
            continue
        out = out + (coeff.numerator / coeff.denominator) * nested_bracket(word, X, Y)
    return out


def truncation_error_curve(X, Y, degrees) -> list[tuple[int, float]]:
    """``(N, ||expm(H_N) - expm(X) expm(Y)||_F)`` for each requested degree, ascending."""
    X, Y = _same_shape(X, Y)
    size = frobenius_norm(X) + frobenius_norm(Y)
    if size > 1.0:
        raise ValueError(
            f"divergence risk: ||X||_F + ||Y||_F = {size:.6g} exceeds 1"
        )
    target = expm(X) @ expm(Y)
    rows = []
    for n in sorted(set(int(d) for d in degrees)):
        H = dynkin_sum(X, Y, n)
        rows.append((n, frobenius_norm(expm(H) - target)))
    return rows
