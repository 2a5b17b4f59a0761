"""Construction of the two-variable semigroup identity words and the
classical nilpotency / power-commutation identities.

The left word is prod_{k=1..h0} (x^d y^d)^(n+k^2) x and the right word is
x (x^d y^d)^(n-C) prod_{k=2h0-1..h0+1} x (x^d y^d)^(n+k^2), where the
correction C depends on the mode: "balanced" uses h0^2*(2h0-3), the unique
value for which both sides get equal exponent sums on x and on y, while
"literal" uses h0^2*(2h0-3)^2, which breaks the balance for h0 >= 3.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

from .words import Alphabet, Word, abelian_stats, parse_word, word_product

BALANCED = "balanced"
LITERAL = "literal"


class ParameterScaleWarning(UserWarning):
    """The parameters are structurally valid but far from the magnitude
    regime the construction is normally quoted with."""


def correction(h0, mode=BALANCED):
    base = h0 * h0 * (2 * h0 - 3)
    return base if mode == BALANCED else h0 * h0 * (2 * h0 - 3) ** 2


def square_sum(k):
    """1^2 + 2^2 + ... + k^2."""
    return k * (k + 1) * (2 * k + 1) // 6


@dataclass(frozen=True)
class IdentityParams:
    """Exponent parameters (h0, d, n) plus the correction mode."""

    h0: int
    d: int
    n: int
    mode: str = BALANCED

    def __post_init__(self):
        if self.mode not in (BALANCED, LITERAL):
            raise ValueError("mode must be %r or %r" % (BALANCED, LITERAL))
        if self.h0 < 2:
            raise ValueError("h0 must be at least 2")
        if self.d < 1 or self.n < 1:
            raise ValueError("d and n must be positive")
        if self.n < self.correction + 1:
            raise ValueError(
                "n must be at least %d so every block exponent stays positive"
                % (self.correction + 1))
        if self.n <= self.d * self.h0 * self.h0:
            warnings.warn(
                "n <= d*h0^2; far smaller than the intended magnitude ordering",
                ParameterScaleWarning, stacklevel=2)

    @property
    def correction(self):
        return correction(self.h0, self.mode)

    @classmethod
    def minimal(cls, h0, d=1, mode=BALANCED):
        """Smallest valid n for the given h0 and mode."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ParameterScaleWarning)
            return cls(h0, d, correction(h0, mode) + 1, mode)

    def as_dict(self):
        return {"h0": self.h0, "d": self.d, "n": self.n, "mode": self.mode}


@dataclass(frozen=True)
class Identity:
    """A formal identity lhs == rhs between words over a variable alphabet."""

    lhs: Word
    rhs: Word
    variables: Alphabet
    params: IdentityParams | None = None

    def __post_init__(self):
        if self.lhs.is_identity() or self.rhs.is_identity():
            raise ValueError("identity sides must be nonempty")

    def to_json(self):
        payload = {
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "variables": list(self.variables.symbols),
            "params": None,
            "mode": None,
        }
        if self.params is not None:
            payload["params"] = {"h0": self.params.h0, "d": self.params.d,
                                 "n": self.params.n}
            payload["mode"] = self.params.mode
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        extra = sum(1 for name in data["variables"] if name.startswith("u"))
        variables = Alphabet.variables(extra)
        params = None
        if data.get("params"):
            params = IdentityParams(mode=data.get("mode") or BALANCED,
                                    **data["params"])
        return cls(parse_word(data["lhs"], variables),
                   parse_word(data["rhs"], variables), variables, params)


@dataclass(frozen=True)
class BalanceReport:
    sigma_x_left: int
    sigma_x_right: int
    sigma_y_left: int
    sigma_y_right: int
    balanced: bool
    discrepancy: tuple

    def as_dict(self):
        return {
            "sigma_x_left": self.sigma_x_left,
            "sigma_x_right": self.sigma_x_right,
            "sigma_y_left": self.sigma_y_left,
            "sigma_y_right": self.sigma_y_right,
            "balanced": self.balanced,
            "discrepancy": list(self.discrepancy),
        }


def build_identity_words(params):
    """Return (left, right, difference) where difference = left * right^-1."""
    variables = Alphabet.variables()
    x = parse_word("x", variables)
    block = parse_word("x^%d y^%d" % (params.d, params.d), variables)
    h0, n = params.h0, params.n

    factors = []
    for k in range(1, h0 + 1):
        factors.extend((block ** (n + k * k), x))
    left = word_product(factors, variables)

    factors = [x, block ** (n - params.correction)]
    for k in range(2 * h0 - 1, h0, -1):
        factors.extend((x, block ** (n + k * k)))
    right = word_product(factors, variables)

    return left, right, left * right.inverse()


def semigroup_identity(params):
    """The identity left == right as an Identity record."""
    left, right, _ = build_identity_words(params)
    return Identity(left, right, left.alphabet, params)


def verify_balance(params):
    """Compare exponent sums on x and y between the two identity words."""
    left, right, _ = build_identity_words(params)
    variables = left.alphabet
    xi, yi = variables.index("x") - 1, variables.index("y") - 1
    lv = abelian_stats(left).exponent_vector
    rv = abelian_stats(right).exponent_vector
    disc = (lv[xi] - rv[xi], lv[yi] - rv[yi])
    return BalanceReport(lv[xi], rv[xi], lv[yi], rv[yi],
                         disc == (0, 0), disc)


def maltsev_pair(depth):
    """The inductively defined word pair whose identity characterises
    nilpotency of the given class: start from (x, y) and at step k wrap
    both sides around the fresh variable u_k, swapping the sides."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    variables = Alphabet.variables(depth)
    first = parse_word("x", variables)
    second = parse_word("y", variables)
    for k in range(1, depth + 1):
        u = parse_word("u%d" % k, variables)
        first, second = first * u * second, second * u * first
    return first, second


def maltsev_identity(depth):
    first, second = maltsev_pair(depth)
    return Identity(first, second, first.alphabet)


def power_commutation_pair(k):
    """The identity x^k y^k == y^k x^k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    variables = Alphabet.variables()
    x = parse_word("x", variables)
    y = parse_word("y", variables)
    return Identity(x ** k * y ** k, y ** k * x ** k, variables)
