"""Discrete 1-forms on triangulated surfaces and symplectic 1-cocycle checks.

A 1-form is a value per oriented edge (negated under reversal).  On a
triangle with consecutive boundary edges e1, e2 (counterclockwise), the wedge
of two forms that are constant on the face is

    (beta ^ gamma)(e1, e2) = beta(e1) gamma(e2) - beta(e2) gamma(e1),

which needs no vertex coordinates.  Zeros are detected with the discrete
index: going once around a vertex, a form with k sign changes on the outgoing
edges has index 1 - k/2, so a regular vertex has index 0 and a simple saddle
has index -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import monodromy
from .monodromy import CellComplex, CellComplexCover
from .rational import format_rational, parse_rational


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class TriangulatedSurface:
    complex: CellComplex

    def __post_init__(self):
        self.complex.validate()
        for f, bd in enumerate(self.complex.faces):
            if len(bd) != 3:
                raise CocycleError(f"face {f} is not a triangle")

    @property
    def num_vertices(self) -> int:
        return self.complex.num_vertices

    @property
    def edges(self):
        return self.complex.edges

    @property
    def faces(self):
        return self.complex.faces

    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2:
            raise CocycleError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def rotation(self, v: int) -> list[tuple[int, int]]:
        """Outgoing signed edges at v in cyclic order."""
        _, step = monodromy._corner_cycles(self.complex)
        start = next(((f, j) for f, bd in enumerate(self.faces) for j, se in enumerate(bd)
                      if self.complex.tail(*se) == v), None)
        if start is None:
            return []
        out, cur = [], start
        while True:
            f, j = cur
            out.append(self.faces[f][j])
            cur, _ = step(cur)
            if cur == start:
                return out


@dataclass(frozen=True)
class DiscreteOneForm:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def on(self, e: int, s: int) -> Fraction:
        return s * self.values[e]

    def __add__(self, other: "DiscreteOneForm") -> "DiscreteOneForm":
        return DiscreteOneForm(tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "DiscreteOneForm":
        return DiscreteOneForm(tuple(-a for a in self.values))

    def scale(self, c) -> "DiscreteOneForm":
        return DiscreteOneForm(tuple(c * a for a in self.values))


def is_closed(surface: TriangulatedSurface, form: DiscreteOneForm) -> bool:
    return all(sum(form.on(e, s) for e, s in bd) == 0 for bd in surface.faces)


def face_wedge(surface: TriangulatedSurface, f: int, beta: DiscreteOneForm, gamma: DiscreteOneForm) -> Fraction:
    (e1, s1), (e2, s2), _ = surface.faces[f]
    return beta.on(e1, s1) * gamma.on(e2, s2) - beta.on(e2, s2) * gamma.on(e1, s1)


@dataclass(frozen=True)
class CocycleTriple:
    surface: TriangulatedSurface
    forms: tuple[DiscreteOneForm, DiscreteOneForm, DiscreteOneForm]
    zeros: tuple[tuple[int, int], ...] = ()  # (vertex, sign f)
    area: tuple[DiscreteOneForm, DiscreteOneForm] | None = None  # coordinate forms dx, dy

    def __post_init__(self):
        if len(self.forms) != 3:
            raise CocycleError("a cocycle triple has three forms")
        for form in self.forms:
            if len(form.values) != len(self.surface.edges):
                raise CocycleError("form and surface have different edge counts")
        object.__setattr__(self, "zeros", tuple((int(v), int(f)) for v, f in self.zeros))

    def scaled(self, c) -> "CocycleTriple":
        return CocycleTriple(self.surface, tuple(b.scale(c) for b in self.forms), self.zeros, self.area)


def check_cocycle_sum(t: CocycleTriple) -> bool:
    b1, b2, b3 = t.forms
    return all(x + y + z == 0 for x, y, z in zip(b1.values, b2.values, b3.values))


PAIRS = ((1, 2), (2, 3), (3, 1))


@dataclass
class PositivityReport:
    failing: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    densities: dict[tuple[int, int], set[Fraction]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.failing.values())

    @property
    def uniform_density(self) -> Fraction | None:
        """The common density over all faces and pairs, if there is one."""
        values = set().union(*self.densities.values()) if self.densities else set()
        return next(iter(values)) if len(values) == 1 else None

    def to_json(self) -> dict:
        u = self.uniform_density
        return {
            "passed": self.passed,
            "failing_faces": {f"{a}{b}": faces for (a, b), faces in self.failing.items()},
            "uniform_density": None if u is None else format_rational(u),
        }


def check_pairwise_positivity(t: CocycleTriple) -> PositivityReport:
    """beta_l ^ beta_(l+1) >= 0 on every face, for each cyclic pair.

    Densities are reported relative to the area form dx ^ dy when coordinate
    forms are attached; otherwise the raw wedge on the face's edge pair is used.
    """
    report = PositivityReport()
    for a, b in PAIRS:
        report.failing[(a, b)] = []
        report.densities[(a, b)] = set()
        for f in range(len(t.surface.faces)):
            w = face_wedge(t.surface, f, t.forms[a - 1], t.forms[b - 1])
            if t.area is not None:
                ref = face_wedge(t.surface, f, *t.area)
                if ref == 0:
                    raise CocycleError(f"face {f} is degenerate for the reference area form")
                w = w / ref
            if w < 0:
                report.failing[(a, b)].append(f)
            report.densities[(a, b)].add(w)
    return report


def vertex_index(surface: TriangulatedSurface, form: DiscreteOneForm, v: int) -> Fraction | None:
    signs = [form.on(e, s) for e, s in surface.rotation(v)]
    signs = [x > 0 for x in signs if x != 0]
    if not signs:
        return None  # the form vanishes on every edge at v
    changes = sum(1 for i in range(len(signs)) if signs[i] != signs[i - 1])
    return 1 - Fraction(changes, 2)


def zero_set(surface: TriangulatedSurface, form: DiscreteOneForm) -> dict[int, Fraction | None]:
    out = {}
    for v in range(surface.num_vertices):
        ind = vertex_index(surface, form, v)
        if ind != 0:
            out[v] = ind
    return out


@dataclass
class ZeroStructureReport:
    expected_count: int
    listed: list[int]
    zero_sets: list[list[int]]
    sign_sum: int
    index_sum: list[Fraction | None]

    @property
    def count_ok(self) -> bool:
        return len(self.listed) == self.expected_count

    @property
    def sets_ok(self) -> bool:
        return all(z == sorted(self.listed) for z in self.zero_sets)

    @property
    def sign_sum_ok(self) -> bool:
        return self.sign_sum == 0

    @property
    def passed(self) -> bool:
        return self.count_ok and self.sets_ok and self.sign_sum_ok

    def failures(self) -> list[str]:
        names = [("count", self.count_ok), ("zero_sets", self.sets_ok), ("sign_sum", self.sign_sum_ok)]
        return [n for n, ok in names if not ok]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "expected_count": self.expected_count,
            "listed": self.listed,
            "zero_sets": self.zero_sets,
            "sign_sum": self.sign_sum,
            "failures": self.failures(),
        }


def check_zero_structure(t: CocycleTriple) -> ZeroStructureReport:
    g = t.surface.genus
    sets, sums = [], []
    for form in t.forms:
        zs = zero_set(t.surface, form)
        sets.append(sorted(zs))
        sums.append(None if None in zs.values() else sum(zs.values(), Fraction(0)))
    return ZeroStructureReport(2 * g - 2, sorted(v for v, _ in t.zeros), sets,
                               sum(f for _, f in t.zeros), sums)


# --- standard meshes and triples ----------------------------------------------------------


def torus_grid(m: int) -> tuple[TriangulatedSurface, DiscreteOneForm, DiscreteOneForm]:
    """The m x m triangulated square torus with its coordinate forms dx, dy."""
    if m < 2:
        raise CocycleError("grid needs m >= 2")

    def vid(i, j):
        return (i % m) * m + (j % m)

    edges, dx, dy = [], [], []
    index = {}
    for i in range(m):
        for j in range(m):
            for kind, (di, dj) in (("h", (1, 0)), ("v", (0, 1)), ("d", (1, 1))):
                index[(kind, i, j)] = len(edges)
                edges.append((vid(i, j), vid(i + di, j + dj)))
                dx.append(Fraction(di, m))
                dy.append(Fraction(dj, m))

    def E(kind, i, j):
        return index[(kind, i % m, j % m)]

    faces = []
    for i in range(m):
        for j in range(m):
            faces.append(((E("h", i, j), 1), (E("v", i + 1, j), 1), (E("d", i, j), -1)))
            faces.append(((E("d", i, j), 1), (E("h", i, j + 1), -1), (E("v", i, j), -1)))
    surface = TriangulatedSurface(CellComplex(m * m, tuple(edges), tuple(faces)))
    return surface, DiscreteOneForm(tuple(dx)), DiscreteOneForm(tuple(dy))


def cp2_standard_triple(m: int = 4) -> CocycleTriple:
    """(2 dtheta_1, 2 dtheta_2, -2 dtheta_1 - 2 dtheta_2) on the central torus."""
    surface, dx, dy = torus_grid(m)
    b1, b2 = dx.scale(2), dy.scale(2)
    return CocycleTriple(surface, (b1, b2, -(b1 + b2)), (), (dx, dy))


def branched_double_cover_triple(m: int = 4) -> CocycleTriple:
    """Pull the standard triple back to a genus-two double cover of the torus.

    Branched over two vertices of one grid row, joined by a cut along the
    horizontal edges between them; the two ramification points carry signs +1
    and -1.
    """
    surface, dx, dy = torus_grid(m)
    if m < 3:
        raise CocycleError("need m >= 3 for two separated branch points")
    swap = (1, 0)
    # the horizontal edges (0,0)->(1,0) and (1,0)->(2,0)
    cut = {0: swap, 3 * m: swap}
    up = monodromy.build_cell_cover(CellComplexCover(surface.complex, 2, cut))
    up_surface = TriangulatedSurface(up.complex)

    def lift(form: DiscreteOneForm) -> DiscreteOneForm:
        return DiscreteOneForm(tuple(form.values[e] for e in up.edge_over))

    base = cp2_standard_triple(m)
    forms = tuple(lift(b) for b in base.forms)
    branch = [v for v in range(up_surface.num_vertices)
              if up.vertex_over[v] in (0, 2 * m) and up.vertex_over.count(up.vertex_over[v]) == 1]
    zeros = ((branch[0], 1), (branch[1], -1))
    return CocycleTriple(up_surface, forms, zeros, (lift(dx), lift(dy)))


# --- local model of a pulled-back pair near a ramification point -----------------------------


@dataclass
class LocalModelReport:
    epsilon: int
    resolution: int
    exact: bool
    samples: int
    expected_coefficient: Fraction
    max_abs_error: Fraction | float
    matches_expected: bool
    nonnegative: bool
    zero_only_at_origin: bool
    beta1_hyperbolic: bool
    observed_ratio: Fraction | float | None

    def to_json(self) -> dict:
        def fmt(x):
            if x is None:
                return None
            return format_rational(x) if isinstance(x, Fraction) else repr(x)

        return {
            "epsilon": self.epsilon,
            "resolution": self.resolution,
            "exact": self.exact,
            "samples": self.samples,
            "expected_density": f"{format_rational(self.expected_coefficient)}*eps^2*(x^2+y^2)",
            "max_abs_error": fmt(self.max_abs_error),
            "matches_expected": self.matches_expected,
            "nonnegative": self.nonnegative,
            "zero_only_at_origin": self.zero_only_at_origin,
            "beta1_hyperbolic": self.beta1_hyperbolic,
            "observed_ratio": fmt(self.observed_ratio),
        }


def local_forms(eps, x, y):
    """Coefficients (dx, dy) of beta_1 = -4e d(xy) and beta_2 = -4e d(y^2 - x^2)."""
    b1 = (-4 * eps * y, -4 * eps * x)
    b2 = (8 * eps * x, -8 * eps * y)
    return b1, b2


def local_density(eps, x, y):
    b1, b2 = local_forms(eps, x, y)
    return b1[0] * b2[1] - b1[1] * b2[0]


def pullback_local_model(eps: int, resolution: int, exact: bool = True,
                         expected_coefficient=Fraction(16)) -> LocalModelReport:
    """Sample the wedge density of the local pair on a grid over [-1, 1]^2 and
    compare with ``expected_coefficient * eps^2 (x^2 + y^2)``."""
    if eps not in (1, -1):
        raise CocycleError("eps must be +1 or -1")
    if resolution < 2:
        raise CocycleError("resolution must be at least 2")
    coeff = Fraction(expected_coefficient)
    if exact:
        coords = [Fraction(-1) + Fraction(2 * i, resolution - 1) for i in range(resolution)]
        c = coeff
        tol = 0
    else:
        coords = [-1.0 + 2.0 * i / (resolution - 1) for i in range(resolution)]
        c = float(coeff)
        tol = 1e-12
    worst = Fraction(0) if exact else 0.0
    nonneg, zero_ok = True, True
    ratios = set()
    for x in coords:
        for y in coords:
            dens = local_density(eps, x, y)
            want = c * eps * eps * (x * x + y * y)
            worst = max(worst, abs(dens - want))
            nonneg &= dens >= 0
            b1, b2 = local_forms(eps, x, y)
            at_origin = x == 0 and y == 0
            vanish = b1 == (0, 0) and b2 == (0, 0)
            zero_ok &= vanish == at_origin
            if want != 0:
                ratios.add(dens / want if exact else round(dens / want, 9))
    # beta_1 = d(-4 e x y): Hessian determinant -16 e^2 < 0, a saddle
    hyperbolic = (0 * 0 - (-4 * eps) * (-4 * eps)) < 0
    ratio = next(iter(ratios)) if len(ratios) == 1 else None
    return LocalModelReport(eps, resolution, exact, len(coords) ** 2, coeff, worst,
                            worst <= tol, nonneg, zero_ok, hyperbolic, ratio)


# --- JSON ------------------------------------------------------------------------------------------


def _signed(e: int, s: int) -> int:
    return s * (e + 1)


def to_json(t: CocycleTriple) -> dict:
    cc = t.surface.complex
    out = {
        "vertices": cc.num_vertices,
        "edges": [list(e) for e in cc.edges],
        "faces": [[_signed(e, s) for e, s in bd] for bd in cc.faces],
        "forms": [[format_rational(v) for v in b.values] for b in t.forms],
        "zeros": [{"v": v, "f": f} for v, f in t.zeros],
    }
    if t.area is not None:
        out["area"] = [[format_rational(v) for v in b.values] for b in t.area]
    return out


def from_json(data: dict) -> CocycleTriple:
    try:
        faces = tuple(tuple((abs(x) - 1, 1 if x > 0 else -1) for x in bd) for bd in data["faces"])
        if any(x == 0 for bd in data["faces"] for x in bd):
            raise CocycleError("face entries are signed 1-based edge numbers")
        cc = CellComplex(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]), faces)
        surface = TriangulatedSurface(cc)
        forms = tuple(DiscreteOneForm(tuple(parse_rational(v) for v in f)) for f in data["forms"])
        area = data.get("area")
        area_forms = None
        if area is not None:
            area_forms = tuple(DiscreteOneForm(tuple(parse_rational(v) for v in f)) for f in area)
        zeros = tuple((int(z["v"]), int(z["f"])) for z in data.get("zeros", []))
    except (KeyError, TypeError) as exc:
        raise CocycleError(f"malformed cocycle file: {exc!r}") from exc
    return CocycleTriple(surface, forms, zeros, area_forms)


def dumps(t: CocycleTriple) -> str:
    return json.dumps(to_json(t), sort_keys=True)


def complete_triple(surface: TriangulatedSurface, b1: DiscreteOneForm, b2: DiscreteOneForm,
                    zeros: Sequence[tuple[int, int]] = ()) -> CocycleTriple:
    return CocycleTriple(surface, (b1, b2, -(b1 + b2)), tuple(zeros))
