"""Trisection parameters and their pullback under branched coverings of CP^2.

A (g; k1, k2, k3) trisection has a genus-g central surface, genus-g
handlebodies and sectors that are boundary sums of k_lambda copies of
S^1 x B^3.  Inclusion-exclusion over the pieces gives

    chi = 3 * chi(sector) - 3 * chi(handlebody) + chi(surface)
        = (3 - sum k) - 3 (1 - g) + (2 - 2g) = 2 + g - k1 - k2 - k3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import monodromy, perm
from .monodromy import CoveringError, CoveringSpec, SectorPiece


class TrisectionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TrisectionParams:
    g: int
    k: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        if len(k) != 3:
            raise TrisectionError("need exactly three sector parameters")
        object.__setattr__(self, "k", k)
        if self.g < 0 or min(k) < 0:
            raise TrisectionError("parameters must be nonnegative")
        if self.g < max(k):
            raise TrisectionError(f"genus {self.g} smaller than a sector parameter {max(k)}")

    def __str__(self):
        return f"({self.g}; {','.join(map(str, self.k))})"

    def to_json(self) -> dict:
        return {"g": self.g, "k": list(self.k)}

    @classmethod
    def from_json(cls, data: dict) -> "TrisectionParams":
        try:
            return cls(int(data["g"]), tuple(data["k"]))
        except (KeyError, TypeError) as exc:
            raise TrisectionError(f"malformed parameters: {exc!r}") from exc


def euler_characteristic(t: TrisectionParams) -> int:
    return 2 + t.g - sum(t.k)


def connected_sum(t1: TrisectionParams, t2: TrisectionParams) -> TrisectionParams:
    return TrisectionParams(t1.g + t2.g, tuple(a + b for a, b in zip(t1.k, t2.k)))


def unbalanced_sphere(sector: int) -> TrisectionParams:
    """The genus-one trisection of S^4 with S^1 x B^3 in the given sector."""
    _check_sector(sector)
    k = [0, 0, 0]
    k[sector - 1] = 1
    return TrisectionParams(1, tuple(k))


def stabilize(t: TrisectionParams, sector: int) -> TrisectionParams:
    return connected_sum(t, unbalanced_sphere(sector))


def balanced_stabilize(t: TrisectionParams) -> TrisectionParams:
    for lam in (1, 2, 3):
        t = stabilize(t, lam)
    return t


def next_sector(sector: int) -> int:
    _check_sector(sector)
    return sector % 3 + 1


def _check_sector(sector: int) -> None:
    if sector not in (1, 2, 3):
        raise TrisectionError(f"sector must be 1, 2 or 3, not {sector}")


CP2 = TrisectionParams(1, (0, 0, 0))
S4 = TrisectionParams(0, (0, 0, 0))


@dataclass(frozen=True)
class RelativeTrisectionParams:
    g: int
    k: tuple[int, int, int]
    page_genus: int
    boundary_components: int

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if len(self.k) != 3 or self.g < 0 or min(self.k) < 0 or self.page_genus < 0:
            raise TrisectionError("invalid relative trisection parameters")
        if self.g < self.page_genus:
            raise TrisectionError("genus must be at least the page genus")
        if self.boundary_components < 1:
            raise TrisectionError("a relative trisection has at least one boundary component")

    def __str__(self):
        return f"({self.g},{','.join(map(str, self.k))};{self.page_genus},{self.boundary_components})"


# --- pullback of the genus-one trisection of CP^2 -----------------------------------


@dataclass(frozen=True)
class PullbackReport:
    params: TrisectionParams
    surface_euler: int
    sector_euler: tuple[int, int, int]
    oracle_surface_euler: int
    oracle_sector_euler: tuple[int, int, int]

    @property
    def oracle_agrees(self) -> bool:
        return (self.surface_euler, self.sector_euler) == (self.oracle_surface_euler,
                                                           self.oracle_sector_euler)

    @property
    def euler_characteristic(self) -> int:
        return euler_characteristic(self.params)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "rendered": str(self.params),
            "euler_characteristic": self.euler_characteristic,
            "surface_euler": self.surface_euler,
            "sector_euler": list(self.sector_euler),
            "oracle": {
                "surface_euler": self.oracle_surface_euler,
                "sector_euler": list(self.oracle_sector_euler),
                "agrees": self.oracle_agrees,
            },
        }


def sector_pieces(diagram, spec: CoveringSpec, sector: int) -> list[SectorPiece]:
    pieces = []
    for kind, comps in diagram.sector_pieces(sector):
        disks = [[spec.image(diagram.bridge_points[b].meridian) for b in comp] for comp in comps]
        pieces.append(SectorPiece(kind, disks))
    return pieces


def _torus_cover(diagram, spec: CoveringSpec):
    n = spec.degree
    lx, ly = spec.torus_images or (perm.identity(n), perm.identity(n))
    spokes = [spec.image(b.meridian) for b in diagram.bridge_points]
    if monodromy.base_vertex_monodromy(n, [lx], [ly], spokes) != perm.identity(n):
        raise CoveringError("monodromy around the bridge points does not close up on the torus")
    return monodromy.surface_cover(n, [lx], [ly], spokes)


def pullback_report(diagram, spec: CoveringSpec) -> PullbackReport:
    from .torus_diagram import validate

    problems = validate(diagram)
    if problems:
        raise TrisectionError("diagram fails validation: " + "; ".join(problems))
    if not monodromy.is_transitive(spec):
        raise CoveringError("cover disconnected: monodromy is not transitive")
    n = spec.degree

    branch = [monodromy.BranchDatum.from_perm(f"b{i}", spec.image(b.meridian))
              for i, b in enumerate(diagram.bridge_points)]
    chi_surface = monodromy.riemann_hurwitz_surface(n, 0, branch)
    up = monodromy.build_cell_cover(_torus_cover(diagram, spec))
    if up.components != 1:
        raise CoveringError("cover disconnected: central surface has several components")
    if chi_surface % 2:
        raise TrisectionError(f"odd Euler characteristic {chi_surface} for the central surface")
    g = 1 - chi_surface // 2

    ks, chis, oracle_chis = [], [], []
    for lam in (1, 2, 3):
        pieces = sector_pieces(diagram, spec, lam)
        if monodromy.sector_components(n, pieces) != 1:
            raise CoveringError(f"cover disconnected: sector {lam} lifts to several components")
        chi = monodromy.sector_cover_euler(n, pieces)
        chis.append(chi)
        oracle_chis.append(monodromy.oracle_sector_euler(n, pieces))
        ks.append(1 - chi)
    params = TrisectionParams(g, tuple(ks))
    return PullbackReport(params, chi_surface, tuple(chis), up.euler_characteristic, tuple(oracle_chis))


def pullback_cp2(diagram, spec: CoveringSpec) -> TrisectionParams:
    return pullback_report(diagram, spec).params


def all_params(max_genus: int) -> Sequence[TrisectionParams]:
    out = []
    for g in range(max_genus + 1):
        for a in range(g + 1):
            for b in range(g + 1):
                for c in range(g + 1):
                    out.append(TrisectionParams(g, (a, b, c)))
    return out


def block_spec(diagram, degree: int) -> CoveringSpec:
    """Simple covering data for a diagram built from a factorization.

    All meridians of one half-twist block share a transposition: (1 2) for
    degree 2, and (1 2), (2 3) alternating by block for degree 3.  Points added
    by moves inherit the meridian of the point they were split from.
    """
    if degree == 1:
        return CoveringSpec(1, {})
    if degree not in (2, 3):
        raise CoveringError("block specs are defined for degree 1, 2 or 3")
    names = sorted({b.meridian for b in diagram.bridge_points})
    images = {}
    for name in names:
        block = int(name[1:].split(".")[0]) if name.startswith("f") else 0
        i = 1 + (block % 2 if degree == 3 else 0)
        images[name] = perm.transposition(degree, i - 1, i)
    return CoveringSpec(degree, images)
