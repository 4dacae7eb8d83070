"""
Planar arc diagrams: the fixed arc system, its braid image in minimal
position, and diagram-level moves.

Coordinates are chosen once and for all:

* HalfArc mode: marked point z_i = (2i, 0); the fixed half arc gamma_i
  runs straight up to the top boundary edge y = 4.  The moving arc starts
  as a leftward pushoff sharing both endpoints (the top shared endpoint
  is the contact vertex).
* Capped mode: z_i = (2i, -3) and z_{k+i} = (2i, 3); fixed arcs are
  vertical segments, moving arcs leftward pushoffs sharing both marked
  endpoints.  Braid twists act on the bottom row only.

Half twists are exact PL maps (see twist.py); excess intersections are
removed by innermost-bigon rerouting, which keeps all coordinates
rational and is re-validated after every move.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Literal, Optional

from braidfloer.braid import BraidWord, underlying_permutation
from braidfloer.errors import DegeneratePosition, NonEmbeddedInput
from braidfloer.geometry import (
    Point,
    Polyline,
    cross,
    dist2,
    lerp,
    on_segment,
    point_in_polygon,
    polyline_intersections,
    pt,
    seg_intersect,
    segments_overlap,
    sub,
)
from braidfloer.twist import HalfTwist

Mode = Literal["capped", "halfarc", "model"]

# Positive braid letters twist counterclockwise; fixed by the requirement
# that sigma_BP,3 reproduce the published intersection table.
POSITIVE_TWIST_SIGN = +1
# Letters act on the diagram left to right (reading order).
TWIST_CORE = Fraction(5, 4)
TWIST_OUTER = Fraction(15, 8)


@dataclass(frozen=True)
class DiagramConfig:
    mode: Mode
    strands: int
    fiber_dim_n: int = 2

    def __post_init__(self):
        if self.fiber_dim_n != 2:
            raise ValueError("this engine fixes the fiber half-dimension to n = 2")
        if self.strands < 1:
            raise ValueError("need at least one strand")
        if self.mode not in ("capped", "halfarc", "model"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class ArcDiagram:
    mode: Mode
    strands: int
    marked_points: list[Point]
    boundary: list[Point]          # rectangle corners, ccw
    fixed: list[Polyline]
    moving: list[Polyline]

    def copy(self) -> "ArcDiagram":
        return ArcDiagram(
            self.mode,
            self.strands,
            list(self.marked_points),
            list(self.boundary),
            [Polyline(p.points) for p in self.fixed],
            [Polyline(p.points) for p in self.moving],
        )


def _rectangle(xmin, xmax, ymin, ymax) -> list[Point]:
    return [pt(xmin, ymin), pt(xmax, ymin), pt(xmax, ymax), pt(xmin, ymax)]


def build_base_diagram(cfg: DiagramConfig) -> ArcDiagram:
    """Fixed arcs plus the Hamiltonian-pushoff moving arcs, untwisted."""
    k = cfg.strands
    if cfg.mode == "halfarc":
        marked = [pt(2 * i, 0) for i in range(1, k + 1)]
        boundary = _rectangle(Fraction(1, 2), 2 * k + Fraction(3, 2), Fraction(-5, 2), 4)
        fixed = [Polyline([pt(2 * i, 0), pt(2 * i, 4)]) for i in range(1, k + 1)]
        moving = [
            Polyline(
                [
                    pt(2 * i, 0),
                    pt(2 * i - Fraction(1, 2), 1),
                    pt(2 * i - Fraction(1, 2), 3),
                    pt(2 * i, 4),
                ]
            )
            for i in range(1, k + 1)
        ]
        return ArcDiagram("halfarc", k, marked, boundary, fixed, moving)
    if cfg.mode == "capped":
        marked = [pt(2 * i, -3) for i in range(1, k + 1)] + [pt(2 * i, 3) for i in range(1, k + 1)]
        boundary = _rectangle(Fraction(1, 2), 2 * k + Fraction(3, 2), -6, 6)
        fixed = [Polyline([pt(2 * i, -3), pt(2 * i, 3)]) for i in range(1, k + 1)]
        moving = [
            Polyline(
                [
                    pt(2 * i, -3),
                    pt(2 * i - Fraction(1, 2), -2),
                    pt(2 * i - Fraction(1, 2), 2),
                    pt(2 * i, 3),
                ]
            )
            for i in range(1, k + 1)
        ]
        return ArcDiagram("capped", k, marked, boundary, fixed, moving)
    raise ValueError("build_base_diagram handles capped and halfarc modes only")


def _twist_for_letter(d: ArcDiagram, letter: int) -> HalfTwist:
    i = abs(letter)
    if i >= d.strands:
        raise NonEmbeddedInput(f"letter {letter} incompatible with {d.strands} strands")
    row = Fraction(0) if d.mode == "halfarc" else Fraction(-3)
    center = (Fraction(2 * i + 1), row)
    sign = POSITIVE_TWIST_SIGN if letter > 0 else -POSITIVE_TWIST_SIGN
    return HalfTwist(center, TWIST_CORE, TWIST_OUTER, sign)


def apply_braid(d: ArcDiagram, b: BraidWord, cleanup: bool = True) -> ArcDiagram:
    """
    Replace the moving arcs by their images under the braid's half twists
    (letters act in reading order), then remove excess bigons.
    """
    if b.strands != d.strands:
        raise NonEmbeddedInput("braid strand count differs from diagram")
    out = d.copy()
    for letter in b.letters:
        tw = _twist_for_letter(out, letter)
        out.moving = tw.apply_polylines(out.moving)
        if cleanup:
            out = minimal_position(out)
    validate_diagram(out)
    return out


# --------------------------------------------------------------------------
# Diagram validation
# --------------------------------------------------------------------------


def _arc_endpoint_set(d: ArcDiagram) -> set[Point]:
    pts: set[Point] = set()
    for p in d.fixed + d.moving:
        pts.add(p.start)
        pts.add(p.end)
    return pts


def _boundary_segments(d: ArcDiagram):
    corners = d.boundary
    return [(corners[i], corners[(i + 1) % len(corners)]) for i in range(len(corners))]


def validate_diagram(d: ArcDiagram) -> None:
    """Embeddedness, disjointness within each system, genericity."""
    for arc in d.fixed + d.moving:
        if not arc.is_embedded():
            raise NonEmbeddedInput("self-intersecting arc")
    for system in (d.fixed, d.moving):
        for i in range(len(system)):
            for j in range(i + 1, len(system)):
                hits = polyline_intersections(system[i], system[j])
                for (si, ti), (sj, tj), x in hits:
                    raise NonEmbeddedInput(f"arcs of one system meet at {x}")
    # arcs may touch the boundary only at their own endpoints
    endpoint = _arc_endpoint_set(d)
    for arc in d.fixed + d.moving:
        for a, b in arc.segments():
            for c, e in _boundary_segments(d):
                if segments_overlap(a, b, c, e):
                    raise DegeneratePosition("arc runs along the boundary")
                hit = seg_intersect(a, b, c, e)
                if hit is not None and hit[2] not in endpoint:
                    raise NonEmbeddedInput("arc crosses the disk boundary")
    # fixed/moving crossings: transverse, pairwise distinct, off endpoints
    seen: dict[Point, tuple[int, int]] = {}
    for i, f in enumerate(d.fixed):
        for j, m in enumerate(d.moving):
            shared = {f.start, f.end} & {m.start, m.end}
            for (si, ti), (sj, tj), x in polyline_intersections(f, m):
                if x in shared:
                    continue
                if x in {f.start, f.end, m.start, m.end}:
                    raise DegeneratePosition(f"arc endpoint touches another arc at {x}")
                fverts = set(f.points[1:-1])
                mverts = set(m.points[1:-1])
                if x in fverts or x in mverts:
                    # crossing exactly at a bend: fine as long as transverse,
                    # but keep genericity strict for simplicity
                    raise DegeneratePosition(f"crossing at a polyline bend {x}")
                if x in seen:
                    raise DegeneratePosition(f"triple point at {x}")
                seen[x] = (i, j)


# --------------------------------------------------------------------------
# Minimal position: innermost-bigon removal
# --------------------------------------------------------------------------


def _crossings(f: Polyline, m: Polyline) -> list[tuple[tuple[int, Fraction], tuple[int, Fraction], Point]]:
    shared = {f.start, f.end} & {m.start, m.end}
    return [rec for rec in polyline_intersections(f, m) if rec[2] not in shared]


def _subpath(poly: Polyline, a: tuple[int, Fraction], b: tuple[int, Fraction]) -> list[Point]:
    """Path along poly from position a to position b (a before b)."""
    (ia, ta), (ib, tb) = a, b
    pa = lerp(poly.points[ia], poly.points[ia + 1], ta)
    pb = lerp(poly.points[ib], poly.points[ib + 1], tb)
    if ia == ib:
        return [pa, pb]
    mid = [poly.points[k] for k in range(ia + 1, ib + 1)]
    return [pa] + mid + [pb]


def _pos_key(p: tuple[int, Fraction]):
    return (p[0], p[1])


def _find_bigon(d: ArcDiagram, fi: int, mi: int):
    """
    An innermost empty bigon of the pair (fixed fi, moving mi):
    two crossings adjacent along both arcs, whose enclosed region meets no
    other arc and contains no marked point.  Returns (u_rec, v_rec) or None.
    """
    f, m = d.fixed[fi], d.moving[mi]
    recs = _crossings(f, m)
    if len(recs) < 2:
        return None
    by_f = sorted(recs, key=lambda r: _pos_key(r[0]))
    by_m_order = {r[2]: k for k, r in enumerate(sorted(recs, key=lambda r: _pos_key(r[1])))}
    for a, b in zip(by_f, by_f[1:]):
        if abs(by_m_order[a[2]] - by_m_order[b[2]]) != 1:
            continue
        # orient along m
        first, second = (a, b) if _pos_key(a[1]) <= _pos_key(b[1]) else (b, a)
        pf = _subpath(f, a[0], b[0])
        pm = _subpath(m, first[1], second[1])
        # sides must be free of crossings with any other arc
        if not _path_clear(d, pf, skip=("fixed", fi)):
            continue
        if not _path_clear(d, pm, skip=("moving", mi)):
            continue
        # the closed region: pf from a to b, then pm traversed back
        if pm[0] == pf[0] and pm[-1] == pf[-1]:
            ring = pf[:-1] + pm[::-1][:-1]
        elif pm[0] == pf[-1] and pm[-1] == pf[0]:
            ring = pf[:-1] + pm[:-1]
        else:
            continue
        if any(point_in_polygon(z, ring) for z in d.marked_points):
            continue
        return (a, b)
    return None


def _path_clear(d: ArcDiagram, path: list[Point], skip: tuple[str, int]) -> bool:
    """No arc other than `skip` crosses the open interior of the path."""
    segs = list(zip(path, path[1:]))
    ends = {path[0], path[-1]}
    for kind, arcs in (("fixed", d.fixed), ("moving", d.moving)):
        for idx, arc in enumerate(arcs):
            if (kind, idx) == skip:
                continue
            for a, b in arc.segments():
                for c, e in segs:
                    if segments_overlap(a, b, c, e):
                        return False
                    hit = seg_intersect(a, b, c, e)
                    if hit is not None and hit[2] not in ends:
                        return False
    return True


def _offset_route(pf: list[Point], side: int, eps: Fraction) -> list[Point]:
    """Bevel-joined offset of path pf, displaced to `side` (+1 left)."""
    out: list[Point] = []
    for a, b in zip(pf, pf[1:]):
        dvec = sub(b, a)
        normal = (-dvec[1] * side, dvec[0] * side)
        # scale displacement by eps relative to the segment's own size
        scale = eps / max(abs(normal[0]), abs(normal[1]))
        off = (normal[0] * scale, normal[1] * scale)
        out.append((a[0] + off[0], a[1] + off[1]))
        out.append((b[0] + off[0], b[1] + off[1]))
    return out


def _remove_bigon(d: ArcDiagram, fi: int, mi: int, rec_a, rec_b) -> bool:
    """Reroute the moving arc across the bigon; True on success."""
    f, m = d.fixed[fi], d.moving[mi]
    a, b = rec_a, rec_b
    first, second = (a, b) if _pos_key(a[1]) <= _pos_key(b[1]) else (b, a)
    pf = _subpath(f, a[0], b[0])
    if first[2] != pf[0]:
        pf = pf[::-1]  # align pf to run from first crossing to second (along m)
    # bigon side of pf: probe toward the moving sub-path
    pm = _subpath(m, first[1], second[1])
    probe = lerp(pm[0], pm[1], Fraction(1, 2)) if len(pm) > 1 else pm[0]
    base_dir = sub(pf[1], pf[0])
    s = cross(base_dir, sub(probe, pf[0]))
    if s == 0 and len(pm) > 2:
        s = cross(base_dir, sub(pm[len(pm) // 2], pf[0]))
    if s == 0:
        return False
    far_side = -1 if s > 0 else 1

    old_pair_count = len(_crossings(f, m))
    (iu, tu), (iv, tv) = first[1], second[1]

    eps = Fraction(1, 8)
    delta = Fraction(1, 8)
    for _attempt in range(48):
        route = _offset_route(pf, far_side, eps)
        # splice strictly before u and after v along m (both on the far side)
        q1 = lerp(m.points[iu], m.points[iu + 1], tu * (1 - delta))
        q2 = lerp(m.points[iv], m.points[iv + 1], tv + (1 - tv) * delta)
        pre = m.points[: iu + 1] + [q1]
        post = [q2] + m.points[iv + 1 :]
        try:
            candidate = Polyline(pre + route + post).simplified()
        except ValueError:
            eps /= 2
            delta /= 2
            continue
        trial = d.copy()
        trial.moving[mi] = candidate
        if _reroute_ok(trial, d, fi, mi, old_pair_count):
            d.moving[mi] = candidate
            return True
        eps /= 2
        delta /= 2
    raise DegeneratePosition("bigon rerouting failed to find clearance")


def _reroute_ok(trial: ArcDiagram, orig: ArcDiagram, fi: int, mi: int, old_pair_count: int) -> bool:
    m = trial.moving[mi]
    if not m.is_embedded():
        return False
    # stays inside the rectangle
    xs = [p[0] for p in trial.boundary]
    ys = [p[1] for p in trial.boundary]
    for p in m.points[1:-1]:
        if not (min(xs) < p[0] < max(xs) and min(ys) < p[1] < max(ys)):
            return False
    try:
        # moving-moving disjointness
        for j, other in enumerate(trial.moving):
            if j != mi and polyline_intersections(m, other):
                return False
        # crossing counts: -2 with fixed fi, unchanged with other fixed arcs
        for idx, arc in enumerate(trial.fixed):
            n_new = len(_crossings(arc, m))
            n_old = len(_crossings(orig.fixed[idx], orig.moving[mi]))
            if idx == fi:
                if n_new != old_pair_count - 2:
                    return False
            elif n_new != n_old:
                return False
        validate_diagram(trial)
    except (DegeneratePosition, NonEmbeddedInput):
        return False
    return True


def minimal_position(d: ArcDiagram) -> ArcDiagram:
    """Remove all empty bigons between fixed and moving arcs."""
    out = d.copy()
    progress = True
    while progress:
        progress = False
        for fi in range(len(out.fixed)):
            for mi in range(len(out.moving)):
                found = _find_bigon(out, fi, mi)
                if found is not None:
                    if _remove_bigon(out, fi, mi, *found):
                        progress = True
                        break
            if progress:
                break
    for mi in range(len(out.moving)):
        out.moving[mi] = out.moving[mi].simplified()
    return out


# --------------------------------------------------------------------------
# Special diagrams
# --------------------------------------------------------------------------


def build_handleslide_diagram() -> ArcDiagram:
    """
    The two-strand capped diagram whose moving system is {arc-slid copy of
    the first arc, pushoff of the second}: the index-calibration diagram
    with the annulus A and lune B.
    """
    marked = [pt(2, -3), pt(4, -3), pt(2, 3), pt(4, 3)]
    boundary = _rectangle(Fraction(1, 2), Fraction(19, 2), -6, 6)
    fixed = [
        Polyline([pt(2, -3), pt(2, 3)]),
        Polyline([pt(4, -3), pt(4, 3)]),
    ]
    slid = Polyline(
        [pt(2, -3), pt(3, -4), pt(7, -4), pt(7, 4), pt(3, 4), pt(2, 3)]
    )
    pushoff = Polyline(
        [pt(4, -3), pt(Fraction(9, 2), -2), pt(Fraction(9, 2), 2), pt(4, 3)]
    )
    d = ArcDiagram("capped", 2, marked, boundary, fixed, [slid, pushoff])
    validate_diagram(d)
    return d


def build_model_2x2_diagram() -> ArcDiagram:
    """
    Two vertical and two horizontal arcs in a square, four transverse
    crossings, no marked points: the local model for stabilization.
    """
    boundary = _rectangle(0, 3, 0, 3)
    fixed = [
        Polyline([pt(1, 0), pt(1, 3)]),
        Polyline([pt(2, 0), pt(2, 3)]),
    ]
    moving = [
        Polyline([pt(0, 1), pt(3, 1)]),
        Polyline([pt(0, 2), pt(3, 2)]),
    ]
    d = ArcDiagram("model", 2, [], boundary, fixed, moving)
    validate_diagram(d)
    return d


def build_model_2x2():
    """Compiled cell complex of the 2x2 grid model."""
    from braidfloer.cellcomplex import build_cell_complex as _compile

    return _compile(build_model_2x2_diagram())


def build_cell_complex(d: ArcDiagram):
    from braidfloer.cellcomplex import build_cell_complex as _compile

    return _compile(d)


def build_braid_complex(b: BraidWord, mode: Mode = "halfarc"):
    """Base diagram -> braid image -> minimal position -> compiled complex."""
    cfg = DiagramConfig(mode, b.strands)
    d = build_base_diagram(cfg)
    d = apply_braid(d, b)
    d = minimal_position(d)
    return build_cell_complex(d)
