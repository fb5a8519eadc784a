"""Exact characteristic-class arithmetic for closed 4-manifolds and line bundles.

Everything is a ``Fraction``; the only irrational numbers that appear are the
endpoints of alpha windows, which are roots of rational quadratics and are kept
symbolically with an isolating interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .monodromy import BranchDatum, riemann_hurwitz_surface
from .rational import format_rational


class CharClassError(ValueError):
    pass


@dataclass(frozen=True)
class ChernData:
    c1_sq: Fraction
    c2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c1_sq", Fraction(self.c1_sq))
        object.__setattr__(self, "c2", Fraction(self.c2))

    @property
    def chi_h(self) -> Fraction:
        return (self.c1_sq + self.c2) / 12

    @property
    def chi_h_integral(self) -> bool:
        return self.chi_h.denominator == 1

    @property
    def beta(self) -> Fraction:
        if self.c1_sq == 0:
            raise CharClassError("beta = c2 / c1^2 is undefined for c1^2 = 0")
        return self.c2 / self.c1_sq

    def warnings(self) -> list[str]:
        out = []
        if not self.chi_h_integral:
            out.append(f"c1^2 + c2 = {format_rational(self.c1_sq + self.c2)} is not divisible by 12; "
                       "no closed almost-complex 4-manifold has these numbers")
        return out


def bmy_check(cd: ChernData) -> bool:
    return cd.c1_sq <= 3 * cd.c2


def bmy_equality(cd: ChernData) -> bool:
    return cd.c1_sq == 3 * cd.c2


# --- line bundles ---------------------------------------------------------------------


@dataclass(frozen=True)
class BundleClass:
    """Intersection data of a class L: L.L, L.K, omega.L and omega.K."""

    LL: Fraction
    LK: Fraction
    omega_L: Fraction
    omega_K: Fraction

    def __post_init__(self):
        for name in ("LL", "LK", "omega_L", "omega_K"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def serre_dual(self, k_sq) -> "BundleClass":
        """The class K - L, given K.K."""
        k_sq = Fraction(k_sq)
        return BundleClass(k_sq - 2 * self.LK + self.LL, k_sq - self.LK,
                           self.omega_K - self.omega_L, self.omega_K)

    def multiple(self, m) -> "BundleClass":
        return BundleClass(m * m * self.LL, m * self.LK, m * self.omega_L, self.omega_K)

    def is_nonzero(self) -> bool:
        """True when some pairing shows the class is not zero."""
        return any(x != 0 for x in (self.LL, self.LK, self.omega_L))

    def to_json(self) -> dict:
        return {k: format_rational(getattr(self, k)) for k in ("LL", "LK", "omega_L", "omega_K")}


def riemann_roch(L: BundleClass, chi_h) -> Fraction:
    return (L.LL - L.LK) / 2 + Fraction(chi_h)


VERDICTS = ("L_effective", "KminusL_effective", "either", "none")


def _dual_nonzero(L: BundleClass, k_sq) -> bool:
    if k_sq is not None:
        return L.serre_dual(k_sq).is_nonzero()
    # without K.K only omega.(K - L) and L.(K - L) are available
    return L.omega_K != L.omega_L or L.LK != L.LL


def effective_divisor_decision(L: BundleClass, chi_h, k_sq=None) -> str:
    """Which of L, K - L is represented by an effective divisor, as far as the
    sufficient conditions decide.

    chi(L) <= 0 gives no information.  Otherwise one of L, K - L is effective,
    and a nonzero class with nonpositive symplectic area has no sections, which
    forces the other one.  The rule is applied to both sides, so the verdict is
    symmetric under L <-> K - L; "either" means the conditions do not decide.
    """
    if riemann_roch(L, chi_h) <= 0:
        return "none"
    omega_dual = L.omega_K - L.omega_L
    l_wins = omega_dual < 0 or (omega_dual == 0 and _dual_nonzero(L, k_sq))
    k_wins = L.omega_L < 0 or (L.omega_L == 0 and L.is_nonzero())
    if l_wins and not k_wins:
        return "L_effective"
    if k_wins and not l_wins:
        return "KminusL_effective"
    return "either"


def swap_verdict(v: str) -> str:
    return {"L_effective": "KminusL_effective", "KminusL_effective": "L_effective"}.get(v, v)


def stable_multiple(L: BundleClass, chi_h, k_sq=None) -> int:
    """Smallest m0 such that mL is decided L_effective for every m >= m0.

    Needs L.L > 0 and omega.L > 0: then chi(mL) grows like m^2 L^2 / 2 and
    omega.(mL) eventually exceeds omega.K.
    """
    if L.LL <= 0 or L.omega_L <= 0:
        raise CharClassError("need L.L > 0 and omega.L > 0")
    chi_h = Fraction(chi_h)
    # beyond this bound both chi(mL) > 0 and m omega.L > omega.K hold
    quad = math.floor((abs(L.LK) + 2 * abs(chi_h)) / L.LL) + 1
    lin = math.floor(L.omega_K / L.omega_L) + 1
    bound = max(quad, lin, 1)
    m0 = bound
    for m in range(bound - 1, 0, -1):
        if effective_divisor_decision(L.multiple(m), chi_h, k_sq) != "L_effective":
            break
        m0 = m
    return m0


@dataclass(frozen=True)
class AmpleShift:
    m: int
    n: int
    m_prime: int

    @property
    def pair(self) -> tuple[int, int]:
        return (self.m, self.n)


def ample_shift(L: BundleClass, H: BundleClass, HL, chi_h, k_sq=None, bound: int = 10_000) -> AmpleShift:
    """Find m, n > 0 with mH + nL decided L_effective.

    ``H`` carries H.H, H.K, omega.H (and omega.K); ``HL`` is H.L.  First the
    smallest m' with (m'H + L)^2 > 0 and H.(m'H + L) > 0, then the smallest n
    for which n(m'H + L) is decided effective; returns (n m', n).
    """
    HL = Fraction(HL)
    if H.LL <= 0:
        raise CharClassError("H.H must be positive")

    def shifted(mp: int) -> BundleClass:
        return BundleClass(mp * mp * H.LL + 2 * mp * HL + L.LL, mp * H.LK + L.LK,
                           mp * H.omega_L + L.omega_L, L.omega_K)

    mp = next((m for m in range(1, bound + 1)
               if shifted(m).LL > 0 and m * H.LL + HL > 0), None)
    if mp is None:
        raise CharClassError(f"no m' <= {bound} makes m'H + L positive; H.L = {HL}, H.H = {H.LL}")
    M = shifted(mp)
    n = next((k for k in range(1, bound + 1)
              if effective_divisor_decision(M.multiple(k), chi_h, k_sq) == "L_effective"), None)
    if n is None:
        raise CharClassError(f"no n <= {bound} decides n(m'H + L) effective (m' = {mp}, "
                             f"omega.M = {M.omega_L}, omega.K = {M.omega_K})")
    return AmpleShift(n * mp, n, mp)


# --- Miyaoka-type divisors ------------------------------------------------------------------


def miyaoka_leading(alpha, cd: ChernData) -> Fraction:
    """Leading m^3 coefficient of chi(S^m Omega tensor K^(-m alpha))."""
    a = Fraction(alpha)
    return -cd.c2 / 6 + cd.c1_sq / 6 - a * cd.c1_sq / 2 + a * a * cd.c1_sq / 2


def window_polynomial(alpha) -> Fraction:
    a = Fraction(alpha)
    return 3 * a * a - 3 * a + 1


@dataclass(frozen=True)
class QuadraticRoot:
    """The unique root of a x^2 + b x + c inside [lo, hi]."""

    a: Fraction
    b: Fraction
    c: Fraction
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self._eval(self.lo) * self._eval(self.hi) > 0 or self.lo >= self.hi:
            raise CharClassError("interval does not isolate a root")

    def _eval(self, x) -> Fraction:
        return (self.a * x + self.b) * x + self.c

    def compare(self, q) -> int:
        """Sign of (root - q)."""
        q = Fraction(q)
        if q < self.lo:
            return 1
        if q > self.hi:
            return -1
        vq = self._eval(q)
        if vq == 0:
            return 0
        lo_val = self._eval(self.lo)
        if lo_val == 0:
            return -1  # the root is lo itself and q > lo
        # the root lies on the side of q where the sign differs
        return -1 if (lo_val > 0) != (vq > 0) else 1

    def refine(self, steps: int = 30) -> "QuadraticRoot":
        lo, hi = self.lo, self.hi
        for _ in range(steps):
            mid = (lo + hi) / 2
            if self._eval(mid) == 0:
                # the root is exactly mid; keep it strictly inside a smaller interval
                return QuadraticRoot(self.a, self.b, self.c, (lo + mid) / 2, (mid + hi) / 2)
            if (self._eval(lo) > 0) != (self._eval(mid) > 0) or self._eval(lo) == 0:
                hi = mid
            else:
                lo = mid
        return QuadraticRoot(self.a, self.b, self.c, lo, hi)

    def __float__(self):
        disc = self.b * self.b - 4 * self.a * self.c
        for sign in (-1, 1):
            r = (-float(self.b) + sign * math.sqrt(float(disc))) / (2 * float(self.a))
            if float(self.lo) - 1e-12 <= r <= float(self.hi) + 1e-12:
                return r
        raise CharClassError("root not found in its interval")

    def __str__(self):
        return (f"root of {format_rational(self.a)}x^2{_signed(self.b)}x{_signed(self.c)} "
                f"in [{format_rational(self.lo)}, {format_rational(self.hi)}]")

    def to_json(self) -> dict:
        return {"quadratic": [format_rational(x) for x in (self.a, self.b, self.c)],
                "isolating_interval": [format_rational(self.lo), format_rational(self.hi)],
                "approx": round(float(self), 12)}


def _signed(q: Fraction) -> str:
    return f"+{format_rational(q)}" if q >= 0 else f"-{format_rational(-q)}"


Endpoint = Fraction | QuadraticRoot


def _cmp(x: Endpoint, q: Fraction) -> int:
    if isinstance(x, QuadraticRoot):
        return x.compare(q)
    return (x > q) - (x < q)


def _cmp_endpoints(x: Endpoint, y: Endpoint) -> int:
    if not isinstance(y, QuadraticRoot):
        return _cmp(x, y)
    if not isinstance(x, QuadraticRoot):
        return -_cmp(y, x)
    if x == y:
        return 0
    # distinct roots of quadratics: separate their isolating intervals
    while not (x.hi < y.lo or y.hi < x.lo):
        x, y = x.refine(4), y.refine(4)
    return -1 if x.hi < y.lo else 1


@dataclass(frozen=True)
class Interval:
    lo: Endpoint
    hi: Endpoint
    lo_closed: bool
    hi_closed: bool

    def is_empty(self) -> bool:
        c = _cmp_endpoints(self.lo, self.hi)
        return c > 0 or (c == 0 and not (self.lo_closed and self.hi_closed))

    def contains(self, q) -> bool:
        q = Fraction(q)
        lo, hi = _cmp(self.lo, q), _cmp(self.hi, q)
        ok_lo = lo < 0 or (lo == 0 and self.lo_closed)
        ok_hi = hi > 0 or (hi == 0 and self.hi_closed)
        return ok_lo and ok_hi

    def __str__(self):
        def fmt(x):
            return format_rational(x) if isinstance(x, Fraction) else f"{float(x):.12g}*"

        return f"{'[' if self.lo_closed else '('}{fmt(self.lo)}, {fmt(self.hi)}{']' if self.hi_closed else ')'}"

    def to_json(self) -> dict:
        def ep(x):
            return format_rational(x) if isinstance(x, Fraction) else x.to_json()

        return {"lo": ep(self.lo), "hi": ep(self.hi), "lo_closed": self.lo_closed, "hi_closed": self.hi_closed}


@dataclass(frozen=True)
class AlphaWindow:
    beta: Fraction
    intervals: tuple[Interval, ...]

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def contains(self, alpha) -> bool:
        return any(iv.contains(alpha) for iv in self.intervals)

    def __str__(self):
        if self.is_empty:
            return "empty"
        return " U ".join(str(iv) for iv in self.intervals)

    def to_json(self) -> dict:
        return {"beta": format_rational(self.beta), "empty": self.is_empty,
                "intervals": [iv.to_json() for iv in self.intervals]}


def alpha_window(beta) -> AlphaWindow:
    """All alpha in (0, 1) with beta <= 3 alpha^2 - 3 alpha + 1 and beta < alpha, 1 - alpha."""
    beta = Fraction(beta)
    if beta <= 0:
        raise CharClassError("beta must be positive")
    lo, hi = beta, 1 - beta
    if lo >= hi:
        return AlphaWindow(beta, ())
    quarter = Fraction(1, 4)
    if beta <= quarter:
        # the quadratic has minimum 1/4 at alpha = 1/2, so it never binds
        candidates = [Interval(lo, hi, False, False)]
    else:
        half = Fraction(1, 2)
        coeffs = (Fraction(3), Fraction(-3), 1 - beta)
        r1 = QuadraticRoot(*coeffs, Fraction(0), half)
        r2 = QuadraticRoot(*coeffs, half, Fraction(1))
        candidates = [Interval(lo, r1, False, True), Interval(r2, hi, True, False)]
    return AlphaWindow(beta, tuple(iv for iv in candidates if not iv.is_empty()))


# --- first Chern class as a cocycle degree ------------------------------------------------------


@dataclass(frozen=True)
class CoreLeafPairing:
    pairings: tuple[int, int, int]

    @property
    def degree(self) -> int:
        return sum(self.pairings)


def c1_cocycle_degree_cp2() -> CoreLeafPairing:
    """Each of the three cores pairs to chi(disk leaf) = 1, for degree 3."""
    leaf = riemann_hurwitz_surface(1, 1, [])
    return CoreLeafPairing((leaf, leaf, leaf))


def leaf_pairing_upstairs(n: int, branch_points: Sequence[BranchDatum] = ()) -> int:
    """Euler characteristic of the preimage of a disk leaf in an n-fold cover."""
    return riemann_hurwitz_surface(n, 1, branch_points)


def cover_c1_degree(n: int, leaf_branching: Sequence[Sequence[BranchDatum]]) -> CoreLeafPairing:
    if len(leaf_branching) != 3:
        raise CharClassError("need branching data for three leaves")
    return CoreLeafPairing(tuple(leaf_pairing_upstairs(n, b) for b in leaf_branching))
