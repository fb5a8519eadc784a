"""Torus diagrams for branch curves in bridge position over CP^2.

The central surface of the genus-one trisection of CP^2 is the unit square
with opposite sides identified.  A diagram has signed bridge points and three
families of arcs (labels A, B, C, i.e. 1, 2, 3), the projections of the three
tangles.  Arcs run from negative to positive bridge points.  An arc with label
lambda is geometrically transverse when every segment is positive against

    beta_1 = dy,   beta_2 = -dx,   beta_3 = dx - dy.

Sector lambda sees the link formed by the lambda- and (lambda+1)-arcs, so its
components are the cycles of the union of those two matchings.  The knot type
of each component (unknot, Hopf pair, trefoil) is carried as an annotation,
since the projection alone does not record over/under information.

Paths are piecewise linear with exact rational vertices, stored unwrapped:
``path[0]`` is the position of the start point and ``path[-1]`` agrees with
the end point modulo 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .braid import Factorization, verify_factorization
from .rational import format_rational, parse_rational

Point = tuple[Fraction, Fraction]
LABELS = ("A", "B", "C")
KINDS = ("unknot", "hopf", "trefoil")
FORMS = {1: (Fraction(0), Fraction(1)), 2: (Fraction(-1), Fraction(0)), 3: (Fraction(1), Fraction(-1))}


class DiagramError(ValueError):
    pass


class ClearanceError(DiagramError):
    pass


def label_index(label: str | int) -> int:
    if isinstance(label, int):
        if label not in (1, 2, 3):
            raise DiagramError(f"bad label {label}")
        return label
    try:
        return LABELS.index(label) + 1
    except ValueError:
        raise DiagramError(f"bad label {label!r}") from None


def pairing(lam: int, v: Point) -> Fraction:
    a, b = FORMS[lam]
    return a * v[0] + b * v[1]


@dataclass(frozen=True)
class BridgePoint:
    x: Fraction
    y: Fraction
    sign: int
    meridian: str

    @property
    def pos(self) -> Point:
        return (self.x, self.y)


@dataclass(frozen=True)
class Arc:
    label: str
    start: int
    end: int
    path: tuple[Point, ...]

    @property
    def lam(self) -> int:
        return label_index(self.label)

    def segments(self):
        return list(zip(self.path, self.path[1:]))


@dataclass(frozen=True)
class LinkFeature:
    """Knot type of one sector piece, located by bridge points on its components."""

    sector: int
    kind: str
    reps: tuple[int, ...]


@dataclass(frozen=True)
class Block:
    """A local half-twist model: exponent and its four bridge points N1, P1, N2, P2."""

    exponent: int
    points: tuple[int, ...]


@dataclass(frozen=True)
class TorusDiagram:
    bridge_points: tuple[BridgePoint, ...] = ()
    arcs: tuple[Arc, ...] = ()
    features: tuple[LinkFeature, ...] = ()
    blocks: tuple[Block, ...] = ()

    @property
    def bridge_index(self) -> int:
        return len(self.bridge_points) // 2

    def arcs_with_label(self, lam: int) -> list[tuple[int, Arc]]:
        return [(i, a) for i, a in enumerate(self.arcs) if a.lam == lam]

    def incident_arc(self, bridge: int, lam: int) -> int:
        found = [i for i, a in self.arcs_with_label(lam) if bridge in (a.start, a.end)]
        if len(found) != 1:
            raise DiagramError(f"bridge point {bridge} meets {len(found)} arcs of label {LABELS[lam - 1]}")
        return found[0]

    def matching(self, lam: int) -> dict[int, int]:
        out = {}
        for _, a in self.arcs_with_label(lam):
            out[a.start] = a.end
            out[a.end] = a.start
        return out

    def sector_cycles(self, sector: int) -> list[tuple[int, ...]]:
        m1, m2 = self.matching(sector), self.matching(sector % 3 + 1)
        seen: set[int] = set()
        cycles = []
        for start in range(len(self.bridge_points)):
            if start in seen:
                continue
            cyc, cur, use_first = [], start, True
            while True:
                seen.add(cur)
                cyc.append(cur)
                nxt = (m1 if use_first else m2).get(cur)
                if nxt is None:
                    raise DiagramError(f"bridge point {cur} lacks an arc in sector {sector}")
                cur, use_first = nxt, not use_first
                if cur == start and use_first:
                    break
            cycles.append(tuple(cyc))
        return cycles

    def sector_pieces(self, sector: int) -> list[tuple[str, list[tuple[int, ...]]]]:
        """Pieces of the sector: (kind, component cycles), annotated ones first."""
        cycles = self.sector_cycles(sector)
        owner = {b: c for c in cycles for b in c}
        used: set[tuple[int, ...]] = set()
        pieces = []
        for feat in self.features:
            if feat.sector != sector:
                continue
            comps = [owner[r] for r in feat.reps]
            used.update(comps)
            pieces.append((feat.kind, comps))
        for c in cycles:
            if c not in used:
                pieces.append(("unknot", [c]))
        return pieces


# --- exact geometry ------------------------------------------------------------------


def _sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def _scale(t, p: Point) -> Point:
    return (t * p[0], t * p[1])


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]) and _cross(a, b, p) == 0)


def segments_intersect(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    d1, d2 = _cross(b1, b2, a1), _cross(b1, b2, a2)
    d3, d4 = _cross(a1, a2, b1), _cross(a1, a2, b2)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        return True
    return (_on_segment(a1, b1, b2) or _on_segment(a2, b1, b2)
            or _on_segment(b1, a1, a2) or _on_segment(b2, a1, a2))


def _shift_range(lo1, hi1, lo2, hi2, slack=Fraction(0)) -> range:
    # integer k with [lo2 + k, hi2 + k] meeting [lo1 - slack, hi1 + slack]
    return range(math.ceil(lo1 - slack - hi2), math.floor(hi1 + slack - lo2) + 1)


def _reduce(p: Point) -> Point:
    return (p[0] - math.floor(p[0]), p[1] - math.floor(p[1]))


def _normalize_path(path: Sequence[Point]) -> tuple[Point, ...]:
    k = (Fraction(math.floor(path[0][0])), Fraction(math.floor(path[0][1])))
    return tuple(_sub(p, k) for p in path)


def _torus_segments_meet(s: tuple[Point, Point], t: tuple[Point, Point]) -> bool:
    (a1, a2), (b1, b2) = s, t
    for i in _shift_range(min(a1[0], a2[0]), max(a1[0], a2[0]), min(b1[0], b2[0]), max(b1[0], b2[0])):
        for j in _shift_range(min(a1[1], a2[1]), max(a1[1], a2[1]), min(b1[1], b2[1]), max(b1[1], b2[1])):
            k = (Fraction(i), Fraction(j))
            if segments_intersect(a1, a2, _add(b1, k), _add(b2, k)):
                return True
    return False


# --- validation and transversality ------------------------------------------------------


def validate(d: TorusDiagram) -> list[str]:
    problems = []
    npts = len(d.bridge_points)
    for i, b in enumerate(d.bridge_points):
        if b.sign not in (1, -1):
            problems.append(f"bridge point {i} has sign {b.sign}")
        if not (0 <= b.x < 1 and 0 <= b.y < 1):
            problems.append(f"bridge point {i} not in the unit square")
    for i, a in enumerate(d.arcs):
        if a.label not in LABELS:
            problems.append(f"arc {i} has bad label {a.label!r}")
            continue
        if not (0 <= a.start < npts and 0 <= a.end < npts) or a.start == a.end:
            problems.append(f"arc {i} has bad endpoints")
            continue
        if len(a.path) < 2:
            problems.append(f"arc {i} has fewer than two vertices")
            continue
        if d.bridge_points[a.start].sign != -1 or d.bridge_points[a.end].sign != 1:
            problems.append(f"arc {i} does not run from a negative to a positive point")
        if a.path[0] != d.bridge_points[a.start].pos:
            problems.append(f"arc {i} does not start at its start point")
        if _reduce(a.path[-1]) != d.bridge_points[a.end].pos:
            problems.append(f"arc {i} does not end at its end point")
    if problems:
        return problems
    for lam in (1, 2, 3):
        count = [0] * npts
        for _, a in d.arcs_with_label(lam):
            count[a.start] += 1
            count[a.end] += 1
        for i, c in enumerate(count):
            if c != 1:
                problems.append(f"bridge point {i} meets {c} arcs of label {LABELS[lam - 1]}")
    for lam in (1, 2, 3):
        segs = [(i, j, s) for i, a in d.arcs_with_label(lam) for j, s in enumerate(a.segments())]
        for x in range(len(segs)):
            for y in range(x + 1, len(segs)):
                (i1, j1, s1), (i2, j2, s2) = segs[x], segs[y]
                if i1 == i2 and abs(j1 - j2) == 1:
                    # adjacent segments share a vertex; they may only touch there
                    lo, hi = (s1, s2) if j1 < j2 else (s2, s1)
                    if _cross(lo[0], lo[1], hi[1]) == 0 and _on_segment(hi[1], lo[0], lo[1]) or \
                            _cross(lo[0], lo[1], hi[1]) == 0 and _on_segment(lo[0], hi[0], hi[1]):
                        problems.append(f"arc {i1} folds back on itself")
                    continue
                if _torus_segments_meet(s1, s2):
                    problems.append(f"{LABELS[lam - 1]} arcs {i1} and {i2} intersect")
    valid_ids = set(range(npts))
    for f in d.features:
        if f.kind not in KINDS or f.sector not in (1, 2, 3) or not set(f.reps) <= valid_ids:
            problems.append(f"bad link annotation {f}")
    if not problems:
        for lam in (1, 2, 3):
            owner = {b: c for c in d.sector_cycles(lam) for b in c}
            seen = set()
            for f in d.features:
                if f.sector != lam:
                    continue
                comps = [owner[r] for r in f.reps]
                want = 2 if f.kind == "hopf" else 1
                if len(comps) != want or len(set(comps)) != want or seen & set(comps):
                    problems.append(f"link annotation {f} does not match the sector components")
                seen.update(comps)
    return problems


@dataclass
class TransversalityReport:
    violations: list[tuple[int, int, str, Fraction]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [{"arc": a, "segment": s, "label": lab, "value": format_rational(v)}
                           for a, s, lab, v in self.violations],
        }


def check_geometric_transversality(d: TorusDiagram) -> TransversalityReport:
    report = TransversalityReport()
    for i, a in enumerate(d.arcs):
        for j, (p, q) in enumerate(a.segments()):
            value = pairing(a.lam, _sub(q, p))
            if value <= 0:
                report.violations.append((i, j, a.label, value))
    return report


def alpha2_crossings(arc: Arc) -> int:
    """Number of times the arc crosses the vertical curve x = 0 (mod 1).

    Each segment counts the integers in the half-open range (low x, high x],
    so a crossing through a path vertex is counted once.
    """
    count = 0
    for p, q in arc.segments():
        lo, hi = sorted((p[0], q[0]))
        count += math.floor(hi) - math.floor(lo)
    return count


# --- local models ---------------------------------------------------------------------

HALF_WIDTH = Fraction(1, 8)
EXPONENT_FEATURES = {
    # exponent -> (sector, kind, block-point indices of representatives)
    1: (),
    2: ((2, "hopf", (0, 2)),),
    -2: ((2, "hopf", (2, 0)),),
    3: ((3, "trefoil", (0,)),),
}


def _block(j: int, total: int, exponent: int, offset: int, meridian: str):
    h = Fraction(1, total)
    y0 = j * h
    w = HALF_WIDTH
    lv = lambda t: y0 + h * Fraction(t, 5)  # noqa: E731
    n1, n2 = (w, lv(1)), (w, lv(2))
    p2, p1 = (-w, lv(3)), (-w, lv(4))
    pts = [
        BridgePoint(n1[0], n1[1], -1, f"{meridian}.0"),
        BridgePoint(1 - w, p1[1], 1, f"{meridian}.0"),
        BridgePoint(n2[0], n2[1], -1, f"{meridian}.1"),
        BridgePoint(1 - w, p2[1], 1, f"{meridian}.1"),
    ]
    N1, P1, N2, P2 = (offset + i for i in range(4))

    def straight(lab, s, e, a, b):
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        return Arc(lab, s, e, (a, mid, b))

    def wrap(lab, s, e, a, b):
        b = (b[0] + 1, b[1])
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        return Arc(lab, s, e, (a, mid, b))

    arcs = [
        straight("A", N1, P1, n1, p1),
        wrap("A", N2, P2, n2, p2),
        straight("B", N1, P2, n1, p2),
        straight("B", N2, P1, n2, p1),
        wrap("C", N1, P2, n1, p2),
        wrap("C", N2, P1, n2, p1),
    ]
    ids = (N1, P1, N2, P2)
    feats = [LinkFeature(sec, kind, tuple(ids[r] for r in reps)) for sec, kind, reps in EXPONENT_FEATURES[exponent]]
    return pts, arcs, feats, Block(exponent, ids)


def build_from_factorization(f: Factorization, require_full_twist: bool = True) -> TorusDiagram:
    """Stack one half-twist block per factor, then mini-stabilize once per
    letter of each conjugator.

    With ``require_full_twist=False`` the exponent-sum check is skipped, which
    allows building the local model of a partial product (e.g. a single factor).
    The empty factorization gives the empty diagram.
    """
    if not f.factors:
        return TorusDiagram((), (), (), ())
    report = verify_factorization(f) if require_full_twist else None
    if report is not None and not report.exponent_sum_ok:
        raise DiagramError(
            f"exponent sum {report.exponent_sum} differs from {report.expected_exponent_sum}")
    total = len(f.factors)
    pts: list[BridgePoint] = []
    arcs: list[Arc] = []
    feats: list[LinkFeature] = []
    blocks: list[Block] = []
    for j, (_, k) in enumerate(f.factors):
        p, a, fe, bl = _block(j, total, k, len(pts), f"f{j}")
        pts += p
        arcs += a
        feats += fe
        blocks.append(bl)
    d = TorusDiagram(tuple(pts), tuple(arcs), tuple(feats), tuple(blocks))
    for _, arc in d.arcs_with_label(2):
        if alpha2_crossings(arc) != 1:
            raise DiagramError("a B arc of a local model misses the curve x = 0")
    # one mini-stabilization per crossing of each conjugating word
    for j, (g, _) in enumerate(f.factors):
        for i in range(len(g.letters)):
            d = finger_perturbation(d, blocks[j].points[i % 4], 1)
    return d


# --- finger perturbation -----------------------------------------------------------------

_T = ((0, -1), (1, -1))  # carries beta_1-transverse to beta_2-transverse, and so on cyclically


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _frame(sector: int, sign: int):
    m = ((1, 0), (0, 1))
    for _ in range(sector - 1):
        m = _matmul(_T, m)
    if sign < 0:
        m = tuple(tuple(-x for x in row) for row in m)
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    inv = ((m[1][1] * det, -m[0][1] * det), (-m[1][0] * det, m[0][0] * det))
    return m, inv


def _apply(m, p: Point) -> Point:
    return (m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def _linf(p: Point) -> Fraction:
    return max(abs(p[0]), abs(p[1]))


def _linf_to_segment(a: Point, b: Point) -> Fraction:
    """Exact L-infinity distance from the origin to segment ab."""
    du, dv = b[0] - a[0], b[1] - a[1]
    ts = {Fraction(0), Fraction(1)}
    for num, den in ((-a[0], du), (-a[1], dv), (a[1] - a[0], du - dv), (-a[0] - a[1], du + dv)):
        if den != 0:
            t = Fraction(num) / den
            if 0 <= t <= 1:
                ts.add(t)
    return min(_linf((a[0] + t * du, a[1] + t * dv)) for t in ts)


CLEARANCE_CAP = Fraction(1, 8)


def clearance(d: TorusDiagram, bridge: int, inv) -> Fraction:
    """L-infinity distance (in frame coordinates) from a bridge point to everything
    not incident to it, capped at ``CLEARANCE_CAP``."""
    origin = d.bridge_points[bridge].pos
    cap = CLEARANCE_CAP
    best = cap
    zero = (Fraction(0), Fraction(0))
    for i, p in enumerate(d.bridge_points):
        q = _apply(inv, _sub(p.pos, origin))
        for a in _shift_range(Fraction(0), Fraction(0), q[0], q[0], cap):
            for b in _shift_range(Fraction(0), Fraction(0), q[1], q[1], cap):
                r = (q[0] + a, q[1] + b)
                if r == zero:
                    continue
                best = min(best, _linf(r))
    for arc in d.arcs:
        for p1, p2 in arc.segments():
            a1, a2 = _apply(inv, _sub(p1, origin)), _apply(inv, _sub(p2, origin))
            for i in _shift_range(Fraction(0), Fraction(0), min(a1[0], a2[0]), max(a1[0], a2[0]), cap):
                for j in _shift_range(Fraction(0), Fraction(0), min(a1[1], a2[1]), max(a1[1], a2[1]), cap):
                    k = (Fraction(i), Fraction(j))
                    s1, s2 = _add(a1, k), _add(a2, k)
                    if s1 == zero or s2 == zero:
                        continue  # a segment incident to the bridge point itself
                    best = min(best, _linf_to_segment(s1, s2))
    return best


def finger_perturbation(d: TorusDiagram, bridge: int, sector: int,
                        eps: Fraction | None = None) -> TorusDiagram:
    """Add a cancelling pair of bridge points next to ``bridge``.

    The sector-lambda arc at the point is split and rerouted through the new
    pair, and arcs of the other two labels join the pair; sector lambda+1
    gains one unknotted component.  Worked out in a frame where lambda plays
    the role of label A and the point is positive (at the origin): the new
    positive point sits at (-2e, -3e), the new negative point at (-e, -e).
    """
    if not 0 <= bridge < len(d.bridge_points):
        raise DiagramError(f"no bridge point {bridge}")
    if sector not in (1, 2, 3):
        raise DiagramError(f"sector must be 1, 2 or 3, not {sector}")
    b = d.bridge_points[bridge]
    s = b.sign
    m, inv = _frame(sector, s)
    arc_idx = d.incident_arc(bridge, sector)
    arc = d.arcs[arc_idx]
    arriving = list(arc.path) if s > 0 else list(reversed(arc.path))
    end = arriving[-1]
    S = _apply(inv, _sub(arriving[-2], end))
    if S[1] >= 0:
        raise DiagramError(f"arc {arc_idx} is not transverse at bridge point {bridge}")

    delta = clearance(d, bridge, inv)
    r = min(delta / 2, Fraction(1, 16))
    Q = _scale(r / _linf(S), S)
    room = min(r, -Q[1])
    if eps is None:
        eps = room / 8
    elif not 0 < eps <= room / 4:
        raise ClearanceError(f"eps={eps} exceeds the available clearance {room / 4}")

    def real(p: Point) -> Point:
        return _add(end, _apply(m, p))

    X = real((-2 * eps, -3 * eps))  # takes over the old arc; same sign as b
    Y = real((-eps, -eps))
    Qr = real(Q)
    xid, yid = len(d.bridge_points), len(d.bridge_points) + 1
    new_points = d.bridge_points + (
        BridgePoint(*_reduce(X), s, b.meridian),
        BridgePoint(*_reduce(Y), -s, b.meridian),
    )

    def oriented(label, start, stop, path):
        # built in arrival orientation; flip for a negative bridge point
        if s < 0:
            start, stop, path = stop, start, list(reversed(path))
        return Arc(label, start, stop, _normalize_path(path))

    lab = LABELS[sector - 1]
    old = oriented(lab, arc.start if s > 0 else arc.end, xid, arriving[:-1] + [Qr, X])
    arcs = list(d.arcs)
    arcs[arc_idx] = old
    arcs.append(oriented(lab, yid, bridge, [Y, end]))
    for other in (sector % 3 + 1, (sector + 1) % 3 + 1):
        arcs.append(oriented(LABELS[other - 1], yid, xid, [Y, X]))
    # the new pair closes up into an unknot in sector lambda+1; nothing to annotate
    return TorusDiagram(new_points, tuple(arcs), d.features, d.blocks)


# --- statistics ---------------------------------------------------------------------------


def statistics(d: TorusDiagram) -> dict:
    comps, links = [], []
    for lam in (1, 2, 3):
        pieces = d.sector_pieces(lam) if d.bridge_points else []
        comps.append(sum(len(c) for _, c in pieces))
        kinds = {k: 0 for k in KINDS}
        for kind, _ in pieces:
            kinds[kind] += 1
        links.append(kinds)
    return {
        "bridge_points": len(d.bridge_points),
        "bridge_index": d.bridge_index,
        "components": comps,
        "links": links,
        "sign_sum": sum(b.sign for b in d.bridge_points),
    }


# --- serialization ---------------------------------------------------------------------------


def _pt_json(p: Point) -> list[str]:
    return [format_rational(p[0]), format_rational(p[1])]


def to_json(d: TorusDiagram) -> dict:
    return {
        "bridge_points": [
            {"x": format_rational(b.x), "y": format_rational(b.y), "sign": b.sign, "meridian": b.meridian}
            for b in d.bridge_points
        ],
        "arcs": [{"label": a.label, "start": a.start, "end": a.end, "path": [_pt_json(p) for p in a.path]}
                 for a in d.arcs],
        "sector_links": [{"sector": f.sector, "kind": f.kind, "reps": list(f.reps)} for f in d.features],
        "blocks": [{"exponent": b.exponent, "points": list(b.points)} for b in d.blocks],
    }


def from_json(data: dict) -> TorusDiagram:
    try:
        pts = tuple(BridgePoint(parse_rational(b["x"]), parse_rational(b["y"]), int(b["sign"]),
                                str(b.get("meridian", f"m{i}")))
                    for i, b in enumerate(data.get("bridge_points", [])))
        arcs = tuple(Arc(a["label"], int(a["start"]), int(a["end"]),
                         tuple((parse_rational(x), parse_rational(y)) for x, y in a["path"]))
                     for a in data.get("arcs", []))
        feats = tuple(LinkFeature(int(f["sector"]), f["kind"], tuple(int(r) for r in f["reps"]))
                      for f in data.get("sector_links", []))
        blocks = tuple(Block(int(b["exponent"]), tuple(int(p) for p in b["points"]))
                       for b in data.get("blocks", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed diagram: {exc}") from exc
    return TorusDiagram(pts, arcs, feats, blocks)


def dumps(d: TorusDiagram) -> str:
    return json.dumps(to_json(d), indent=1, sort_keys=True)


# --- SVG ---------------------------------------------------------------------------------------

COLORS = {"A": "#d62728", "B": "#1f77b4", "C": "#2ca02c"}
SIZE = 400
MARGIN = 20


def _svg_xy(p: Point) -> str:
    x = MARGIN + float(p[0]) * SIZE
    y = MARGIN + (1 - float(p[1])) * SIZE
    return f'{x:.3f}', f'{y:.3f}'


def render_svg(d: TorusDiagram) -> str:
    total = SIZE + 2 * MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
        f'<defs><clipPath id="torus"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/>'
        '</clipPath></defs>',
        f'<rect class="torus" x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" '
        'fill="none" stroke="black" stroke-width="1"/>',
        '<g clip-path="url(#torus)">',
    ]
    for i, a in enumerate(d.arcs):
        for j, (p, q) in enumerate(a.segments()):
            for dx in _shift_range(Fraction(0), Fraction(1), min(p[0], q[0]), max(p[0], q[0])):
                for dy in _shift_range(Fraction(0), Fraction(1), min(p[1], q[1]), max(p[1], q[1])):
                    k = (Fraction(dx), Fraction(dy))
                    (x1, y1), (x2, y2) = _svg_xy(_add(p, k)), _svg_xy(_add(q, k))
                    out.append(f'<line class="seg {a.label}" data-arc="{i}" data-seg="{j}" x1="{x1}" y1="{y1}" '
                               f'x2="{x2}" y2="{y2}" stroke="{COLORS[a.label]}" stroke-width="1.5"/>')
    out.append('</g>')
    for i, b in enumerate(d.bridge_points):
        x, y = _svg_xy(b.pos)
        fill = "black" if b.sign > 0 else "white"
        out.append(f'<circle class="bridge" data-id="{i}" data-sign="{b.sign:+d}" cx="{x}" cy="{y}" r="3" '
                   f'fill="{fill}" stroke="black"/>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def two_point_diagram() -> TorusDiagram:
    """Smallest nonempty diagram: one negative and one positive bridge point
    joined by a single straight arc of each label (one unknot per sector)."""
    neg = (Fraction(1, 8), Fraction(1, 4))
    pos = (Fraction(7, 8), Fraction(3, 4))
    pts = (BridgePoint(*neg, -1, "x"), BridgePoint(*pos, 1, "y"))
    arcs = (
        Arc("A", 0, 1, (neg, pos)),
        Arc("B", 0, 1, (neg, (pos[0] - 1, pos[1]))),
        Arc("C", 0, 1, (neg, (pos[0], pos[1] - 1))),
    )
    return TorusDiagram(pts, arcs, (), ())


def corpus_factorizations() -> list[Factorization]:
    """Small factorizations covering every exponent and a conjugated factor."""
    from .braid import BraidWord, positive_factorization

    def fac(n, d, factors):
        return Factorization(n, d, tuple((BraidWord(n, tuple(g)), k) for g, k in factors))

    return [
        fac(2, 2, [((), 2)]),
        fac(2, 2, [((), 1), ((), 1)]),
        fac(2, 2, [((), 3), ((), -2), ((), 1)]),
        fac(3, 3, [((), 3), ((), 3)]),
        fac(3, 2, [((2,), 1), ((), 1)]),
        positive_factorization(3),
    ]


def iter_bridge_sector_choices(d: TorusDiagram) -> Iterable[tuple[int, int]]:
    for b in range(len(d.bridge_points)):
        for lam in (1, 2, 3):
            yield b, lam
