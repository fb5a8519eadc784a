"""Free-group words for tangle complements in the genus-one handlebody.

Words are over the longitude ``l`` and meridian-type symbols (``m1``, ``m2``,
... and the local loops ``a``, ``b``, ``c``, ``d`` of a half-twist model).  A
symbol may carry an integer tag ``x[j]`` standing for the l-conjugate
``l^-j x l^j``; tags keep words short instead of expanding conjugates.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

LONGITUDE = "l"

Letter = tuple[str, int, int]  # (base name, tag depth, exponent +-1)

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\[(-?\d+)\])?(?:\^(-?\d+))?$")


class WordError(ValueError):
    pass


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for x in letters:
        if out and out[-1][:2] == x[:2] and out[-1][2] == -x[2]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for name, tag, e in self.letters:
            if e not in (1, -1):
                raise WordError(f"exponent {e} must be +-1")
            if name == LONGITUDE and tag != 0:
                raise WordError("the longitude cannot carry a conjugation tag")

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        letters: list[Letter] = []
        for tok in text.replace("*", " ").split():
            if tok in ("e", "1"):
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise WordError(f"cannot parse token {tok!r}")
            name, tag, power = m.group(1), int(m.group(2) or 0), int(m.group(3) or 1)
            if power == 0:
                continue
            sign = 1 if power > 0 else -1
            letters += [(name, tag, sign)] * abs(power)
        return cls(tuple(letters))

    @classmethod
    def of(cls, *tokens: str) -> "GroupWord":
        return cls.parse(" ".join(tokens))

    def __str__(self):
        if not self.letters:
            return "e"
        parts = []
        for name, tag, e in self.letters:
            s = name + (f"[{tag}]" if tag else "")
            parts.append(s + ("^-1" if e < 0 else ""))
        return " ".join(parts)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def reduce(self) -> "GroupWord":
        return GroupWord(_free_reduce(self.letters))

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((n, t, -e) for n, t, e in reversed(self.letters)))

    def l_exponent(self) -> int:
        return sum(e for n, _, e in self.letters if n == LONGITUDE)

    def is_l_free(self) -> bool:
        return all(n != LONGITUDE for n, _, _ in self.letters)

    def shift(self, j: int) -> "GroupWord":
        """l^-j w l^j for an l-free word, by shifting every tag."""
        if not self.is_l_free():
            raise WordError("only l-free words can be shifted")
        return GroupWord(tuple((n, t + j, e) for n, t, e in self.letters))


def identity() -> GroupWord:
    return GroupWord()


def l_power(p: int) -> GroupWord:
    return GroupWord(((LONGITUDE, 0, 1 if p > 0 else -1),) * abs(p))


def expand_tags(w: GroupWord) -> GroupWord:
    """Replace every tagged symbol x[j] by l^-j x l^j and freely reduce."""
    letters: list[Letter] = []
    for name, tag, e in w.letters:
        if tag:
            letters += l_power(-tag).letters + ((name, 0, e),) + l_power(tag).letters
        else:
            letters.append((name, 0, e))
    return GroupWord(_free_reduce(letters))


def factor_longitude_front(w: GroupWord, reduce: bool = True) -> tuple[int, GroupWord]:
    """Write w = l^p * gamma_0 with gamma_0 free of l.

    Pushing every l to the front with x l = l (l^-1 x l) tags each symbol with
    the total l-exponent that follows it.  ``reduce=False`` keeps gamma_0
    letter-for-letter aligned with the input.
    """
    p = w.l_exponent()
    out: list[Letter] = []
    suffix = 0
    for name, tag, e in reversed(w.letters):
        if name == LONGITUDE:
            suffix += e
        else:
            out.append((name, tag + suffix, e))
    gamma = tuple(reversed(out))
    return p, GroupWord(_free_reduce(gamma) if reduce else gamma)


# --- half-twist relations -----------------------------------------------------------

_TABLE = {
    1: ("a d", "c b"),
    2: ("a^-1 d a b", "c b^-1 a b"),
    -2: ("a b^-1 a^-1 c a b", "b^-1 d b a b a^-1"),
    3: ("a^-1 d a b^-1 a b", "c b^-1 a^-1 b a b"),
}


def half_twist_relations(k: int, suffix: str = "") -> tuple[GroupWord, GroupWord]:
    if k not in _TABLE:
        raise WordError(f"no half-twist relations for exponent {k}")
    r1, r2 = (GroupWord.parse(r) for r in _TABLE[k])
    if suffix:
        r1, r2 = (GroupWord(tuple((n + suffix, t, e) for n, t, e in r.letters)) for r in (r1, r2))
    return r1, r2


@dataclass(frozen=True)
class RelationSet:
    """Relators together with all of their l-conjugates (and inverses)."""

    relators: tuple[GroupWord, ...]
    closed_under_l: bool = True

    def __post_init__(self):
        rels = tuple(r.reduce() for r in self.relators)
        for r in rels:
            if not r.is_l_free():
                raise WordError("relators must be free of l")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], separate_blocks: bool = False) -> "RelationSet":
        rels: list[GroupWord] = []
        for j, k in enumerate(exponents):
            rels += half_twist_relations(k, str(j) if separate_blocks else "")
        return cls(tuple(rels))

    def _normal(self, w: GroupWord) -> GroupWord:
        # shift so the first letter carries tag 0
        if not w.letters:
            return w
        return w.shift(-w.letters[0][1])

    @property
    def _patterns(self) -> frozenset[tuple[Letter, ...]]:
        return _patterns(self.relators, self.closed_under_l)

    def contains(self, w: GroupWord) -> bool:
        w = w.reduce()
        if not w.letters or not w.is_l_free():
            return False
        if self.closed_under_l:
            return self._normal(w).letters in self._patterns
        return w.letters in self._patterns

    def closure(self, depth: int) -> list[GroupWord]:
        out = []
        shifts = range(-depth, depth + 1) if self.closed_under_l else range(1)
        for r in self.relators:
            for j in shifts:
                out += [r.shift(j), r.shift(j).inverse()]
        return out


@lru_cache(maxsize=64)
def _patterns(relators: tuple[GroupWord, ...], closed: bool) -> frozenset[tuple[Letter, ...]]:
    pats = set()
    for r in relators:
        for w in (r, r.inverse()):
            if closed and w.letters:
                w = w.shift(-w.letters[0][1])
            pats.add(w.letters)
    return frozenset(pats)


def conjugate_by_l(w: GroupWord, times: int = 1) -> GroupWord:
    return (l_power(-times) * w * l_power(times)).reduce()


def is_flat_symbol(name: str) -> bool:
    return name.startswith("m")


@dataclass(frozen=True)
class FlatFactorization:
    l_power: int
    segments: tuple[tuple[GroupWord, GroupWord], ...]  # (mu_i, rho_i); mu may be empty

    def recompose(self) -> GroupWord:
        w = l_power(self.l_power)
        for mu, rho in self.segments:
            w = w * mu * rho
        return w

    def __str__(self):
        parts = [f"l^{self.l_power}"]
        for mu, rho in self.segments:
            parts.append(f"[mu: {mu}] [rho: {rho}]")
        return " ".join(parts)


def _plan(letters, relations: RelationSet, lengths):
    @lru_cache(maxsize=None)
    def solve(i: int):
        # returns a tuple of (kind, start, stop) or None
        if i == len(letters):
            return ()
        if is_flat_symbol(letters[i][0]):
            rest = solve(i + 1)
            if rest is not None:
                return (("mu", i, i + 1),) + rest
        for L in lengths:
            if i + L <= len(letters) and relations.contains(GroupWord(letters[i:i + L])):
                rest = solve(i + L)
                if rest is not None:
                    return (("rho", i, i + L),) + rest
        return None

    plan = solve(0)
    solve.cache_clear()
    return plan


def flat_factorization(w: GroupWord, relations: RelationSet) -> FlatFactorization | None:
    """Split w as l^n mu_1 rho_1 ... mu_k rho_k, or return None.

    Each mu_i is a (possibly empty) product of flat meridian symbols and each
    rho_i is a relator from the l-conjugation closure of ``relations``.  The
    search is exhaustive over cut points (memoized), so None means that no such
    split exists for the l-free part, either letter for letter or after free
    reduction.
    """
    lengths = sorted({len(p) for p in relations._patterns})
    # try the word as given first (free reduction can fuse neighbouring relators),
    # then its reduced form
    for reduce in (False, True):
        n, gamma = factor_longitude_front(w, reduce=reduce)
        letters = gamma.letters
        plan = _plan(letters, relations, lengths)
        if plan is not None:
            break
    else:
        return None
    segments: list[tuple[GroupWord, GroupWord]] = []
    mu: list[Letter] = []
    for kind, a, b in plan:
        if kind == "mu":
            mu += letters[a:b]
        else:
            segments.append((GroupWord(tuple(mu)), GroupWord(letters[a:b])))
            mu = []
    if mu:
        segments.append((GroupWord(tuple(mu)), GroupWord()))
    return FlatFactorization(n, tuple(segments))


# --- Wirtinger meridians from a torus diagram ---------------------------------------------


def wirtinger_meridians(diagram, sector: int) -> list[str]:
    """One meridian generator per arc of the given label."""
    return [f"m{i + 1}" for i, _ in diagram.arcs_with_label(sector)]


def meridians_at_level(diagram, sector: int, level) -> frozenset[tuple[int, int]]:
    """Arc lifts (arc index, vertical shift) meeting the circle y = level.

    For label A the arcs are monotone in y, so the set only changes when the
    level passes a bridge point.
    """
    out = set()
    for i, arc in diagram.arcs_with_label(sector):
        ys = [p[1] for p in arc.path]
        lo, hi = min(ys), max(ys)
        for k in range(math.ceil(level - hi), math.floor(level - lo) + 1):
            out.add((i, k))
    return frozenset(out)


def bridge_levels(diagram) -> list:
    return sorted({b.y for b in diagram.bridge_points})
