"""Simple branched coverings: monodromy data, Riemann-Hurwitz bookkeeping and
an explicit cell-complex oracle.

The oracle builds the cover of a closed cellulated surface sheet by sheet.
A cover is given by a permutation per edge: sheet ``i`` of the face on the
left of edge ``e`` is glued to sheet ``perm[e][i]`` of the face on its right.
Vertex lifts are found by walking around each vertex through face corners,
so branch points are wherever that walk has nontrivial monodromy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import perm
from .perm import Perm


class CoveringError(ValueError):
    pass


# --- covering specifications ----------------------------------------------------


@dataclass(frozen=True)
class CoveringSpec:
    degree: int
    meridian_images: Mapping[str, Perm] = field(default_factory=dict)
    # images of the two torus loops of the central surface; identity when absent
    torus_images: tuple[Perm, Perm] | None = None

    def __post_init__(self):
        if self.degree < 1:
            raise CoveringError("degree must be positive")
        images = {str(k): tuple(v) for k, v in dict(self.meridian_images).items()}
        for name, p in images.items():
            if len(p) != self.degree or not perm.is_permutation(p):
                raise CoveringError(f"image of {name} is not a permutation of degree {self.degree}")
            if self.degree > 1 and not perm.is_transposition(p):
                raise CoveringError(f"image of {name} is not a transposition")
        object.__setattr__(self, "meridian_images", images)
        if self.torus_images is not None:
            tx, ty = (tuple(p) for p in self.torus_images)
            for p in (tx, ty):
                if len(p) != self.degree or not perm.is_permutation(p):
                    raise CoveringError("torus image is not a permutation of the right degree")
            object.__setattr__(self, "torus_images", (tx, ty))

    def image(self, name: str) -> Perm:
        if self.degree == 1:
            return (0,)
        try:
            return self.meridian_images[name]
        except KeyError:
            raise CoveringError(f"no monodromy given for meridian {name!r}") from None

    def to_json(self) -> dict:
        out: dict = {
            "degree": self.degree,
            "meridians": {k: perm.to_cycles(v) for k, v in sorted(self.meridian_images.items())},
        }
        if self.torus_images is not None:
            out["torus"] = [perm.to_cycles(p) for p in self.torus_images]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CoveringSpec":
        try:
            n = int(data["degree"])
            images = {name: _parse_cycles(n, cyc) for name, cyc in data.get("meridians", {}).items()}
            torus = data.get("torus")
            torus_images = None
            if torus is not None:
                torus_images = tuple(_parse_cycles(n, c) for c in torus)
        except (KeyError, TypeError) as exc:
            raise CoveringError(f"malformed covering spec: {exc!r}") from exc
        return cls(n, images, torus_images)


def _parse_cycles(n: int, cyc) -> Perm:
    if not cyc:
        return perm.identity(n)
    if all(isinstance(c, int) for c in cyc):
        cyc = [cyc]
    return perm.from_cycles(n, cyc)


def is_transitive(spec: CoveringSpec) -> bool:
    gens = list(spec.meridian_images.values())
    if spec.torus_images:
        gens += list(spec.torus_images)
    return perm.num_orbits(spec.degree, gens) == 1


def hopf_constraint(x: Perm, y: Perm) -> bool:
    return perm.compose(x, y) == perm.compose(y, x)


# --- Riemann-Hurwitz -------------------------------------------------------------


@dataclass(frozen=True)
class BranchDatum:
    component: str
    cycle_lengths: tuple[int, ...]

    @classmethod
    def from_perm(cls, component: str, p: Perm) -> "BranchDatum":
        return cls(component, perm.cycle_type(p))


def riemann_hurwitz_surface(n: int, chi_base: int, branch_points: Iterable[BranchDatum]) -> int:
    chi = n * chi_base
    for b in branch_points:
        if any(c < 1 for c in b.cycle_lengths) or sum(b.cycle_lengths) != n:
            raise CoveringError(f"branch datum {b.component!r} does not partition {n}")
        chi -= n - len(b.cycle_lengths)
    return chi


# --- cell complexes ----------------------------------------------------------------

SignedEdge = tuple[int, int]


@dataclass(frozen=True)
class CellComplex:
    """Closed oriented surface as a CW complex.

    ``edges[e] = (u, v)``; each face is a cyclic list of ``(edge, +-1)``,
    traversed with the face on the left.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[SignedEdge, ...], ...]

    def euler_characteristic(self) -> int:
        return self.num_vertices - len(self.edges) + len(self.faces)

    def validate(self) -> None:
        seen: dict[SignedEdge, int] = {}
        for f, bd in enumerate(self.faces):
            if not bd:
                raise CoveringError(f"face {f} has empty boundary")
            for j, (e, s) in enumerate(bd):
                if s not in (1, -1) or not 0 <= e < len(self.edges):
                    raise CoveringError(f"bad edge reference {(e, s)} in face {f}")
                if (e, s) in seen:
                    raise CoveringError(f"edge {e} used twice with sign {s}")
                seen[(e, s)] = f
                nxt = bd[(j + 1) % len(bd)]
                if self.head(e, s) != self.tail(*nxt):
                    raise CoveringError(f"face {f} boundary is not a closed path")
        for e in range(len(self.edges)):
            if (e, 1) not in seen or (e, -1) not in seen:
                raise CoveringError(f"edge {e} does not appear once in each direction")

    def tail(self, e: int, s: int) -> int:
        u, v = self.edges[e]
        return u if s > 0 else v

    def head(self, e: int, s: int) -> int:
        u, v = self.edges[e]
        return v if s > 0 else u


@dataclass(frozen=True)
class CellComplexCover:
    base: CellComplex
    sheets: int
    edge_perms: Mapping[int, Perm]

    def edge_perm(self, e: int) -> Perm:
        return tuple(self.edge_perms.get(e, perm.identity(self.sheets)))


@dataclass(frozen=True)
class CoverComplex:
    complex: CellComplex
    vertex_over: tuple[int, ...]
    components: int
    local_monodromy: Mapping[int, Perm]
    edge_over: tuple[int, ...] = ()
    face_over: tuple[int, ...] = ()

    @property
    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()


def _corner_cycles(cc: CellComplex):
    occurrence: dict[SignedEdge, tuple[int, int]] = {}
    for f, bd in enumerate(cc.faces):
        for j, se in enumerate(bd):
            occurrence[se] = (f, j)

    def step(corner):
        f, j = corner
        e, s = cc.faces[f][j]
        f2, j2 = occurrence[(e, -s)]
        return (f2, (j2 + 1) % len(cc.faces[f2])), (e, s)

    return occurrence, step


def build_cell_cover(cover: CellComplexCover) -> CoverComplex:
    cc = cover.base
    cc.validate()
    n = cover.sheets
    perms = {e: cover.edge_perm(e) for e in range(len(cc.edges))}
    for e, p in perms.items():
        if len(p) != n or not perm.is_permutation(p):
            raise CoveringError(f"edge {e} carries an invalid permutation")
    inv = {e: perm.inverse(p) for e, p in perms.items()}

    def cross(e: int, s: int, sheet: int) -> int:
        return perms[e][sheet] if s > 0 else inv[e][sheet]

    _, step = _corner_cycles(cc)
    corners = [(f, j) for f, bd in enumerate(cc.faces) for j in range(len(bd))]
    vertex_of = {c: cc.tail(*cc.faces[c[0]][c[1]]) for c in corners}

    # one rotation cycle of corners per vertex (manifold condition)
    cycle_of: dict[tuple[int, int], int] = {}
    cycles_at: dict[int, list[list[tuple[int, int]]]] = {}
    for c in corners:
        if c in cycle_of:
            continue
        cyc, cur = [], c
        while cur not in cycle_of:
            cycle_of[cur] = len(cycle_of)
            cyc.append(cur)
            cur, _ = step(cur)
        cycles_at.setdefault(vertex_of[c], []).append(cyc)
    for v in range(cc.num_vertices):
        if len(cycles_at.get(v, [])) != 1:
            raise CoveringError(f"vertex {v} is not a surface point (link has {len(cycles_at.get(v, []))} cycles)")

    # vertex lifts: union corner-sheets along the rotation
    parent: dict[tuple[int, int, int], tuple[int, int, int]] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    local: dict[int, Perm] = {}
    for v, (cyc,) in cycles_at.items():
        mono = list(range(n))
        for c in cyc:
            nxt, (e, s) = step(c)
            for i in range(n):
                union((*c, i), (*nxt, cross(e, s, i)))
            mono = [cross(e, s, i) for i in mono]
        local[v] = tuple(mono)

    labels: dict[tuple[int, int, int], int] = {}
    vertex_over: list[int] = []
    for c in corners:
        for i in range(n):
            r = find((*c, i))
            if r not in labels:
                labels[r] = len(labels)
                vertex_over.append(vertex_of[c])

    def vlabel(f, j, i):
        return labels[find((f, j % len(cc.faces[f]), i))]

    # edge lifts are indexed by (edge, sheet of the left face)
    left = {}
    for f, bd in enumerate(cc.faces):
        for j, (e, s) in enumerate(bd):
            if s > 0:
                left[e] = (f, j)
    up_edges: dict[tuple[int, int], tuple[int, int]] = {}
    for e in range(len(cc.edges)):
        f, j = left[e]
        for i in range(n):
            up_edges[(e, i)] = (vlabel(f, j, i), vlabel(f, j + 1, i))
    edge_index = {key: k for k, key in enumerate(sorted(up_edges))}

    up_faces = []
    for f, bd in enumerate(cc.faces):
        for i in range(n):
            boundary = []
            for j, (e, s) in enumerate(bd):
                if s > 0:
                    key = (e, i)
                    ends = (vlabel(f, j, i), vlabel(f, j + 1, i))
                else:
                    key = (e, inv[e][i])
                    ends = (vlabel(f, j + 1, i), vlabel(f, j, i))
                if up_edges[key] != ends:
                    raise CoveringError(f"inconsistent monodromy on edge {e}")
                boundary.append((edge_index[key], s))
            up_faces.append(tuple(boundary))

    # components via face adjacency
    comp = list(range(len(cc.faces) * n))

    def cfind(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for e in range(len(cc.edges)):
        fl, _ = left[e]
        fr = next(f for f, bd in enumerate(cc.faces) if (e, -1) in bd)
        for i in range(n):
            a, b = cfind(fl * n + i), cfind(fr * n + perms[e][i])
            if a != b:
                comp[a] = b
    components = len({cfind(x) for x in range(len(comp))})

    edges_sorted = tuple(up_edges[key] for key in sorted(up_edges))
    complex_ = CellComplex(len(labels), edges_sorted, tuple(up_faces))
    edge_over = tuple(e for e, _ in sorted(up_edges))
    face_over = tuple(f for f in range(len(cc.faces)) for _ in range(n))
    return CoverComplex(complex_, tuple(vertex_over), components, local, edge_over, face_over)


def oracle_euler(cover: CellComplexCover) -> int:
    return build_cell_cover(cover).euler_characteristic


def branch_data(cover: CellComplexCover) -> list[BranchDatum]:
    """Branch points detected by the oracle, with their local cycle structure."""
    up = build_cell_cover(cover)
    ident = perm.identity(cover.sheets)
    return [BranchDatum(f"v{v}", perm.cycle_type(p)) for v, p in sorted(up.local_monodromy.items()) if p != ident]


# --- standard surface models ------------------------------------------------------


def marked_surface_complex(genus: int, marked: int) -> CellComplex:
    """Genus-g surface with ``marked`` extra vertices joined to the base vertex by spokes.

    Edges: a_1, b_1, ..., a_g, b_g (loops at vertex 0) then spokes s_j: 0 -> j+1.
    One face, boundary a_1 b_1 a_1^-1 b_1^-1 ... followed by s_j s_j^-1 for each j.
    """
    if genus == 0 and marked == 0:
        return CellComplex(1, ((0, 0),), (((0, 1),), ((0, -1),)))
    edges = [(0, 0)] * (2 * genus) + [(0, j + 1) for j in range(marked)]
    bd: list[SignedEdge] = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        bd += [(a, 1), (b, 1), (a, -1), (b, -1)]
    for j in range(marked):
        s = 2 * genus + j
        bd += [(s, 1), (s, -1)]
    return CellComplex(1 + marked, tuple(edges), (tuple(bd),))


def surface_cover(n: int, a_images: Sequence[Perm], b_images: Sequence[Perm],
                  point_images: Sequence[Perm]) -> CellComplexCover:
    genus = len(a_images)
    if len(b_images) != genus:
        raise CoveringError("need one b image per a image")
    cc = marked_surface_complex(genus, len(point_images))
    perms: dict[int, Perm] = {}
    for i in range(genus):
        perms[2 * i] = tuple(a_images[i])
        perms[2 * i + 1] = tuple(b_images[i])
    for j, p in enumerate(point_images):
        perms[2 * genus + j] = tuple(p)
    return CellComplexCover(cc, n, perms)


def base_vertex_monodromy(n: int, a_images: Sequence[Perm], b_images: Sequence[Perm],
                          point_images: Sequence[Perm]) -> Perm:
    """Monodromy around the base vertex of :func:`marked_surface_complex`.

    The rotation at the base vertex crosses a_i, b_i^-1, a_i^-1, b_i for each
    handle and then every spoke; a cover is branched only at the marked points
    exactly when this is the identity.
    """
    word: list[Perm] = []
    for a, b in zip(a_images, b_images):
        word += [a, perm.inverse(b), perm.inverse(a), b]
    word += list(point_images)
    return perm.compose_all(n, reversed(word))


def close_up_branch_point(n: int, a_images: Sequence[Perm], b_images: Sequence[Perm],
                          point_images: Sequence[Perm]) -> Perm:
    """The last spoke image that makes the base vertex unbranched."""
    partial = base_vertex_monodromy(n, a_images, b_images, point_images)
    return perm.inverse(partial)


# --- 4-dimensional sectors ----------------------------------------------------------

PIECE_KINDS = ("unknot", "hopf", "trefoil")


@dataclass(frozen=True)
class SectorPiece:
    """One boundary-link piece of a sector with the meridian images of each disk.

    ``unknot``: one trivial disk; ``hopf``: two trivial disks meeting in a node;
    ``trefoil``: cone on a right-handed trefoil (a single cone disk).
    ``disks[i]`` lists the images of the meridians met along disk ``i``.
    """

    kind: str
    disks: tuple[tuple[Perm, ...], ...]

    def __post_init__(self):
        if self.kind not in PIECE_KINDS:
            raise CoveringError(f"unknown piece kind {self.kind!r}")
        disks = tuple(tuple(tuple(p) for p in d) for d in self.disks)
        object.__setattr__(self, "disks", disks)
        want = 2 if self.kind == "hopf" else 1
        if len(disks) != want or not all(disks):
            raise CoveringError(f"a {self.kind} piece needs {want} nonempty disk(s)")

    @property
    def generators(self) -> tuple[Perm, ...]:
        return tuple(p for d in self.disks for p in d)


def piece_deficiency(n: int, piece: SectorPiece) -> int:
    # the sheets over the singular point (or the disk) are the orbits of the local group
    return n - perm.num_orbits(n, piece.generators)


def sector_cover_euler(n: int, pieces: Sequence[SectorPiece], sector_chi: int = 1) -> int:
    return n * sector_chi - sum(piece_deficiency(n, p) for p in pieces)


def sector_components(n: int, pieces: Sequence[SectorPiece]) -> int:
    return perm.num_orbits(n, [p for piece in pieces for p in piece.generators])


# explicit cell models; each entry is (dimension, generators of the local group)
_DISK_CELLS = (("c", 0), ("p", 0), ("a", 1), ("e", 1), ("F", 2))


def _piece_cells(piece: SectorPiece) -> list[tuple[int, tuple[Perm, ...]]]:
    cells = []
    if piece.kind in ("unknot", "hopf"):
        # D^2 x D^2, branched over {c} x D^2 (and D^2 x {c} for a node)
        first = piece.disks[0]
        second = piece.disks[1] if piece.kind == "hopf" else ()
        for (s, ds), (t, dt) in itertools.product(_DISK_CELLS, _DISK_CELLS):
            gens: tuple[Perm, ...] = ()
            if s == "c":
                gens += first
            if t == "c":
                gens += second
            cells.append((ds + dt, gens))
        return cells
    # cone on S^3 = (S^1 x D^2) u (D^2 x S^1) with the trefoil on the splitting
    # torus: knot cells v, K; torus cells m, T; solid tori D1, B1 and D2, B2
    knot = piece.disks[0]
    s3 = [(0, knot), (1, knot), (1, ()), (2, ()), (2, ()), (3, ()), (2, ()), (3, ())]
    cells.append((0, knot))
    for d, gens in s3:
        cells.append((d, gens))
        cells.append((d + 1, gens))
    return cells


def oracle_sector_euler(n: int, pieces: Sequence[SectorPiece]) -> int:
    """Euler characteristic of the cover of B^4 counted cell by cell.

    Each piece lives in its own 4-ball; the balls are boundary-summed along
    unbranched 3-balls, each gluing identifying n lifted 3-balls.
    """
    if not pieces:
        return n
    total = 0
    for piece in pieces:
        for dim, gens in _piece_cells(piece):
            total += (-1) ** dim * perm.num_orbits(n, gens)
    return total - n * (len(pieces) - 1)
