"""Artin braid groups: words, the word problem, and full-twist factorizations.

Braids are words in the Artin generators with 1-based indices; the letter
``+i`` is sigma_i (a right-handed crossing of strands i and i+1) and ``-i``
its inverse.  Equality is decided with the left-greedy Garside normal form

    Delta^inf * A_1 * ... * A_k

where each A_j is a permutation braid (stored as its permutation), none is
the identity or Delta, and consecutive pairs are left-weighted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import perm
from .perm import Perm

ALLOWED_EXPONENTS = frozenset({-2, 1, 2, 3})


class BraidError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise BraidError(f"generator {x} out of range for B_{self.strands}")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"s{abs(x)}" + ("^-1" if x < 0 else "") for x in self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


def sigma(n: int, i: int, power: int = 1) -> BraidWord:
    sign = 1 if power > 0 else -1
    return BraidWord(n, (sign * i,) * abs(power))


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    if w1.strands != w2.strands:
        raise BraidError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    return BraidWord(w1.strands, w1.letters + w2.letters)


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, tuple(-x for x in reversed(w.letters)))


def permutation_image(w: BraidWord) -> Perm:
    """Image under B_n -> S_n, sigma_i -> (i i+1); products compose as functions."""
    n = w.strands
    return perm.compose_all(n, (perm.transposition(n, abs(x) - 1, abs(x)) for x in w.letters))


def half_twist(d: int, strands: int | None = None) -> BraidWord:
    """Positive half twist (s1)(s2 s1)(s3 s2 s1)... of length d(d-1)/2."""
    if d < 2:
        raise BraidError("half twist needs d >= 2")
    letters = [i for j in range(1, d) for i in range(j, 0, -1)]
    return BraidWord(strands or d, tuple(letters))


def full_twist(d: int, strands: int | None = None) -> BraidWord:
    h = half_twist(d, strands)
    return compose(h, h)


# --- Garside normal form ------------------------------------------------------


def _right_descents(p: Perm) -> set[int]:
    return {i for i in range(len(p) - 1) if p[i] > p[i + 1]}


def _left_descents(p: Perm) -> set[int]:
    return _right_descents(perm.inverse(p))


def _left_weight(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    n = len(a)
    while True:
        movable = _left_descents(b) - _right_descents(a)
        if not movable:
            return a, b
        i = min(movable)
        s = perm.transposition(n, i, i + 1)
        a = perm.compose(a, s)
        b = perm.compose(s, b)


@dataclass(frozen=True)
class NormalForm:
    strands: int
    inf: int
    factors: tuple[Perm, ...] = field(default=())

    def canonical_length(self) -> int:
        return len(self.factors)


def normal_form(w: BraidWord) -> NormalForm:
    n = w.strands
    ident = perm.identity(n)
    delta = tuple(reversed(ident))
    inf = 0
    factors: list[Perm] = []

    def tau(p: Perm) -> Perm:
        return perm.compose(delta, perm.compose(p, delta))

    for x in w.letters:
        s = perm.transposition(n, abs(x) - 1, abs(x))
        if x > 0:
            new = s
        else:
            # s^-1 = Delta^-1 (Delta s^-1); move Delta^-1 to the front.
            inf -= 1
            factors = [tau(f) for f in factors]
            new = perm.compose(delta, s)
        factors.append(new)
        for j in range(len(factors) - 2, -1, -1):
            a, b = _left_weight(factors[j], factors[j + 1])
            if (a, b) == (factors[j], factors[j + 1]):
                break
            factors[j], factors[j + 1] = a, b
        while factors and factors[-1] == ident:
            factors.pop()
        while factors and factors[0] == delta:
            factors.pop(0)
            inf += 1
    return NormalForm(n, inf, tuple(factors))


def words_equal(w1: BraidWord, w2: BraidWord) -> bool:
    if w1.strands != w2.strands:
        raise BraidError(f"strand mismatch: {w1.strands} vs {w2.strands}")
    return normal_form(w1) == normal_form(w2)


# --- factorizations of the full twist ----------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Ordered product of factors g sigma_1^k g^-1 with k in {-2, 1, 2, 3}."""

    strands: int
    degree: int
    factors: tuple[tuple[BraidWord, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((g, int(k)) for g, k in self.factors))
        for g, k in self.factors:
            if k not in ALLOWED_EXPONENTS:
                raise BraidError(f"exponent {k} not in {sorted(ALLOWED_EXPONENTS)}")
            if g.strands != self.strands:
                raise BraidError("conjugator strand count differs from factorization")
        if self.strands < 2:
            raise BraidError("factorizations need at least two strands")
        if not 2 <= self.degree <= self.strands:
            raise BraidError(f"degree {self.degree} incompatible with {self.strands} strands")

    def exponent_sum(self) -> int:
        return sum(k for _, k in self.factors)

    def to_json(self) -> dict:
        return {
            "strands": self.strands,
            "degree": self.degree,
            "factors": [{"conjugator": list(g.letters), "exponent": k} for g, k in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Factorization":
        try:
            n = int(data["strands"])
            factors = tuple(
                (BraidWord(n, tuple(f["conjugator"])), int(f["exponent"])) for f in data["factors"]
            )
            return cls(n, int(data["degree"]), factors)
        except (KeyError, TypeError) as exc:
            raise BraidError(f"malformed factorization: {exc!r}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def expand(f: Factorization) -> BraidWord:
    letters: list[int] = []
    for g, k in f.factors:
        letters += g.letters
        letters += sigma(f.strands, 1, k).letters
        letters += invert(g).letters
    return BraidWord(f.strands, tuple(letters))


def band_conjugator(n: int, i: int) -> BraidWord:
    """A word g with g sigma_1 g^-1 = sigma_i in B_n."""
    letters: tuple[int, ...] = ()
    for j in range(2, i + 1):
        letters = (j - 1, j) + letters
    return BraidWord(n, letters)


def positive_factorization(d: int) -> Factorization:
    """Delta^2_d written as d(d-1) conjugates of sigma_1, one per letter of (s1...s_{d-1})^d."""
    word = [i for _ in range(d) for i in range(1, d)]
    return Factorization(d, d, tuple((band_conjugator(d, i), 1) for i in word))


@dataclass
class VerificationReport:
    degree: int
    exponent_sum: int
    expected_exponent_sum: int
    exponent_sum_ok: bool
    equality_ok: bool
    equality_checked: bool
    permutation_ok: bool

    @property
    def passed(self) -> bool:
        return self.exponent_sum_ok and self.equality_ok and self.permutation_ok

    def failures(self) -> list[str]:
        names = [("exponent_sum", self.exponent_sum_ok), ("equality", self.equality_ok),
                 ("permutation", self.permutation_ok)]
        return [name for name, ok in names if not ok]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "exponent_sum": self.exponent_sum,
            "expected_exponent_sum": self.expected_exponent_sum,
            "checks": {
                "exponent_sum": self.exponent_sum_ok,
                "equality": self.equality_ok,
                "equality_checked": self.equality_checked,
                "permutation": self.permutation_ok,
            },
            "passed": self.passed,
        }


def verify_factorization(f: Factorization) -> VerificationReport:
    d = f.degree
    expected = d * (d - 1)
    total = f.exponent_sum()
    word = expand(f)
    perm_ok = permutation_image(word) == perm.identity(f.strands)
    if total != expected:
        # the exponent sum is a braid invariant, so equality is already ruled out
        return VerificationReport(d, total, expected, False, False, False, perm_ok)
    equal = words_equal(word, full_twist(d, f.strands))
    return VerificationReport(d, total, expected, True, equal, True, perm_ok)


def parse_word(n: int, letters: Iterable[int] | str) -> BraidWord:
    if isinstance(letters, str):
        letters = [int(tok) for tok in letters.replace(",", " ").split()]
    return BraidWord(n, tuple(letters))


def random_word(rng, n: int, length: int) -> BraidWord:
    gens = [i for i in range(1, n) for i in (i, -i)]
    return BraidWord(n, tuple(rng.choice(gens) for _ in range(length)))


def insert_relator(rng, w: BraidWord) -> BraidWord:
    """Insert a trivial word (inverse pair or braid/commutation relator) at a random spot."""
    n = w.strands
    i = rng.randrange(1, n)
    choices: list[Sequence[int]] = [(i, -i), (-i, i)]
    if i + 1 < n:
        j = i + 1
        choices.append((i, j, i, -j, -i, -j))
    far = [j for j in range(1, n) if abs(j - i) >= 2]
    if far:
        j = rng.choice(far)
        choices.append((i, j, -i, -j))
    rel = list(rng.choice(choices))
    if rng.random() < 0.5:
        rel = [-x for x in reversed(rel)]
    pos = rng.randrange(len(w.letters) + 1)
    return BraidWord(n, w.letters[:pos] + tuple(rel) + w.letters[pos:])
