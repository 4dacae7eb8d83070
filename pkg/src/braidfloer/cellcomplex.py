"""
Compilation of an arc diagram into a planar cell complex.

The complex records the full DCEL structure (vertices, directed edges,
faces with holes), the generator slots carried by each vertex, and the
per-arc edge chains used by the corner-constraint system:

* transverse fixed/moving crossings carry two slots (hat, check);
* marked-point pins (where a fixed and a moving arc both end) carry one
  critical slot;
* shared boundary endpoints in half-arc mode carry one contact slot.

Faces may be multiply connected (the handleslide annulus is the standard
example); chi(face) = 2 - number of boundary cycles, and the global Euler
relation V - E + sum chi = 1 is asserted on every build.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from braidfloer.errors import DegeneratePosition, NonEmbeddedInput
from braidfloer.geometry import (
    Point,
    Polyline,
    angle_key,
    cross,
    lerp,
    point_in_polygon,
    signed_area2,
)


@dataclass
class Vertex:
    vid: int
    point: Point
    kind: str                       # crossing | pin | contact | anchor | corner
    pair: Optional[tuple[int, int]] = None   # (fixed index, moving index)
    marked_index: Optional[int] = None       # index into marked_points for pins


@dataclass
class Edge:
    eid: int
    owner: tuple[str, Optional[int]]         # ("fixed", i) | ("moving", j) | ("boundary", None)
    path: list[Point]                        # directed along the owner arc
    v_from: int
    v_to: int


@dataclass
class Face:
    fid: int
    cycles: list[list[int]]                  # half-edge ids; cycles[0] is the outer one
    is_exterior: bool = False
    boundary_adjacent: bool = False

    @property
    def chi(self) -> int:
        return 2 - len(self.cycles)


@dataclass
class Slot:
    sid: int
    vid: int
    decoration: str                          # hat | check | critical | contact
    pair: tuple[int, int]

    def label(self, complex_: "CellComplex") -> str:
        v = complex_.vertices[self.vid]
        return f"{self.decoration}@({v.point[0]},{v.point[1]})"


class CellComplex:
    """Immutable compiled diagram; all structure is plain data."""

    def __init__(self, mode: str, strands: int, marked_points: list[Point]):
        self.mode = mode
        self.strands = strands
        self.marked_points = marked_points
        self.vertices: list[Vertex] = []
        self.edges: list[Edge] = []
        self.faces: list[Face] = []
        self.he_face: list[int] = []
        self.arc_edges: dict[tuple[str, int], list[int]] = {}
        # per (arc, interior crossing vertex): (edge_before, edge_after)
        self.arc_interior: dict[tuple[str, int], list[tuple[int, int, int]]] = {}
        self.arc_ends: dict[tuple[str, int], tuple[int, int]] = {}
        # crossing vid -> {(ef, em): fid}, plus arc directions
        self.quads: dict[int, dict[tuple[int, int], int]] = {}
        # pin vid -> {"fm": fid, "mf": fid, "fm_convex": bool,
        #             "fixed_end": "start"|"end", "moving_end": ...}
        self.pins: dict[int, dict] = {}
        # contact vid -> {"middle": fid, "sides": [fid, fid], ...}
        self.contacts: dict[int, dict] = {}
        self.slots: list[Slot] = []
        self.slots_at_vertex: dict[int, list[int]] = {}
        self.pair_slots: dict[tuple[int, int], list[int]] = {}
        self.exterior_fid: Optional[int] = None

    # -- small accessors ----------------------------------------------------

    def he(self, eid: int, forward: bool) -> int:
        return 2 * eid + (0 if forward else 1)

    def he_edge(self, he: int) -> Edge:
        return self.edges[he // 2]

    def he_forward(self, he: int) -> bool:
        return he % 2 == 0

    def he_tail(self, he: int) -> int:
        e = self.he_edge(he)
        return e.v_from if self.he_forward(he) else e.v_to

    def he_head(self, he: int) -> int:
        e = self.he_edge(he)
        return e.v_to if self.he_forward(he) else e.v_from

    def he_germ(self, he: int) -> Point:
        e = self.he_edge(he)
        if self.he_forward(he):
            a, b = e.path[0], e.path[1]
        else:
            a, b = e.path[-1], e.path[-2]
        return (b[0] - a[0], b[1] - a[1])

    def he_points(self, he: int) -> list[Point]:
        e = self.he_edge(he)
        return e.path if self.he_forward(he) else e.path[::-1]

    def face_of(self, he: int) -> int:
        return self.he_face[he]

    def edge_sides(self, eid: int) -> tuple[int, int]:
        """(left face, right face) of the edge, relative to its direction."""
        return self.he_face[self.he(eid, True)], self.he_face[self.he(eid, False)]

    def interior_faces(self) -> list[Face]:
        return [f for f in self.faces if not f.is_exterior]

    def usable_faces(self) -> list[int]:
        """Faces that weighted domains may use (interior, off the boundary)."""
        return [f.fid for f in self.faces if not f.is_exterior and not f.boundary_adjacent]

    def slot(self, sid: int) -> Slot:
        return self.slots[sid]

    def euler_lhs(self) -> int:
        v = len(self.vertices)
        e = len(self.edges)
        chi = sum(f.chi for f in self.faces if not f.is_exterior)
        return v - e + chi

    def contact_slot_ids(self) -> list[int]:
        """One designated contact-type slot per arc pair, ordered by pair."""
        out = []
        if self.mode == "halfarc":
            for s in self.slots:
                if s.decoration == "contact":
                    out.append(s.sid)
        elif self.mode == "capped":
            k = self.strands
            tops = {self._marked_vertex(k + i): i for i in range(1, k + 1)}
            for s in self.slots:
                if s.decoration == "critical" and s.vid in tops:
                    out.append(s.sid)
        out.sort(key=lambda sid: self.vertices[self.slots[sid].vid].point)
        return out

    def _marked_vertex(self, one_based_index: int) -> int:
        p = self.marked_points[one_based_index - 1]
        for v in self.vertices:
            if v.point == p:
                return v.vid
        raise KeyError(f"marked point {p} has no vertex")

    # -- validation ----------------------------------------------------------

    def validate(self) -> None:
        if self.euler_lhs() != 1:
            raise NonEmbeddedInput(f"Euler relation failed: {self.euler_lhs()} != 1")
        for v in self.vertices:
            nslots = len(self.slots_at_vertex.get(v.vid, []))
            if v.kind == "crossing" and nslots != 2:
                raise NonEmbeddedInput("transverse vertex must carry 2 slots")
            if v.kind in ("pin", "contact") and nslots != 1:
                raise NonEmbeddedInput(f"{v.kind} vertex must carry 1 slot")

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        def fstr(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "mode": self.mode,
            "strands": self.strands,
            "marked_points": [[fstr(p[0]), fstr(p[1])] for p in self.marked_points],
            "vertices": [
                {
                    "id": v.vid,
                    "point": [fstr(v.point[0]), fstr(v.point[1])],
                    "kind": v.kind,
                    "pair": list(v.pair) if v.pair else None,
                    "slots": [self.slots[s].decoration for s in self.slots_at_vertex.get(v.vid, [])],
                }
                for v in self.vertices
            ],
            "edges": [
                {"id": e.eid, "owner": list(e.owner), "from": e.v_from, "to": e.v_to}
                for e in self.edges
            ],
            "faces": [
                {
                    "id": f.fid,
                    "chi": f.chi,
                    "exterior": f.is_exterior,
                    "boundary": f.boundary_adjacent,
                    "cycles": [[he for he in cyc] for cyc in f.cycles],
                }
                for f in self.faces
            ],
        }

    def combinatorial_signature(self):
        """Isomorphism-grade invariant used by the JSON round-trip check."""
        pair_table = {}
        for (pair, sids) in sorted(self.pair_slots.items()):
            pair_table[pair] = sorted(self.slots[s].decoration for s in sids)
        face_sig = sorted(
            (f.chi, f.boundary_adjacent, sorted(len(c) for c in f.cycles))
            for f in self.faces
            if not f.is_exterior
        )
        return (
            len(self.vertices),
            len(self.edges),
            tuple(sorted(pair_table.items())),
            tuple(face_sig),
        )


def load_complex_json(doc: dict) -> dict:
    """Parse a complex dump back into plain data (counts and tables)."""
    pair_table: dict[tuple[int, int], list[str]] = {}
    for v in doc["vertices"]:
        if v["pair"] is not None and v["slots"]:
            pair_table.setdefault(tuple(v["pair"]), []).extend(v["slots"])
    for key in pair_table:
        pair_table[key].sort()
    face_sig = sorted(
        (f["chi"], f["boundary"], sorted(len(c) for c in f["cycles"]))
        for f in doc["faces"]
        if not f["exterior"]
    )
    return {
        "mode": doc["mode"],
        "strands": doc["strands"],
        "signature": (
            len(doc["vertices"]),
            len(doc["edges"]),
            tuple(sorted(pair_table.items())),
            tuple(face_sig),
        ),
    }


# ---------------------------------------------------------------------------
# Compiler
# ---------------------------------------------------------------------------


def build_cell_complex(diagram) -> CellComplex:
    from braidfloer.diagram import validate_diagram

    validate_diagram(diagram)
    cc = CellComplex(diagram.mode, diagram.strands, list(diagram.marked_points))

    vertex_ids: dict[Point, int] = {}

    def get_vertex(p: Point, kind: str, pair=None, marked_index=None) -> int:
        if p in vertex_ids:
            v = cc.vertices[vertex_ids[p]]
            if kind == "crossing" and v.kind != "crossing":
                raise DegeneratePosition(f"crossing collides with {v.kind} at {p}")
            return v.vid
        vid = len(cc.vertices)
        cc.vertices.append(Vertex(vid, p, kind, pair, marked_index))
        vertex_ids[p] = vid
        return vid

    marked_lookup = {p: i + 1 for i, p in enumerate(diagram.marked_points)}

    # --- vertices at arc endpoints -------------------------------------------
    arcs: list[tuple[str, int, Polyline]] = [("fixed", i, a) for i, a in enumerate(diagram.fixed)]
    arcs += [("moving", j, a) for j, a in enumerate(diagram.moving)]

    fixed_end_at: dict[Point, int] = {}
    moving_end_at: dict[Point, int] = {}
    for kind, idx, arc in arcs:
        table = fixed_end_at if kind == "fixed" else moving_end_at
        for p in (arc.start, arc.end):
            if p in table:
                raise NonEmbeddedInput("two arcs of one system share an endpoint")
            table[p] = idx

    boundary_pts = set()
    bx = [p[0] for p in diagram.boundary]
    by = [p[1] for p in diagram.boundary]

    def on_boundary(p: Point) -> bool:
        return (
            (p[0] in (min(bx), max(bx)) and min(by) <= p[1] <= max(by))
            or (p[1] in (min(by), max(by)) and min(bx) <= p[0] <= max(bx))
        )

    for p in set(fixed_end_at) | set(moving_end_at):
        fi = fixed_end_at.get(p)
        mj = moving_end_at.get(p)
        if p in marked_lookup:
            if fi is None or mj is None:
                raise NonEmbeddedInput(f"marked point {p} must end one fixed and one moving arc")
            get_vertex(p, "pin", (fi, mj), marked_lookup[p])
        elif on_boundary(p):
            if fi is not None and mj is not None:
                get_vertex(p, "contact", (fi, mj))
                boundary_pts.add(p)
            else:
                get_vertex(p, "anchor", None)
                boundary_pts.add(p)
        else:
            raise NonEmbeddedInput(f"arc endpoint {p} is neither marked nor on the boundary")

    for corner in diagram.boundary:
        get_vertex(corner, "corner", None)

    # --- transverse crossings --------------------------------------------------
    from braidfloer.geometry import polyline_intersections

    split_events: dict[tuple[str, int], list[tuple[int, Fraction, int]]] = {
        (kind, idx): [] for kind, idx, _ in arcs
    }
    for i, f in enumerate(diagram.fixed):
        for j, m in enumerate(diagram.moving):
            shared = {f.start, f.end} & {m.start, m.end}
            for (fi_pos, mj_pos, x) in polyline_intersections(f, m):
                if x in shared:
                    continue
                vid = get_vertex(x, "crossing", (i, j))
                split_events[("fixed", i)].append((fi_pos[0], fi_pos[1], vid))
                split_events[("moving", j)].append((mj_pos[0], mj_pos[1], vid))

    # --- edges along arcs --------------------------------------------------------
    def split_arc(kind: str, idx: int, arc: Polyline):
        events = sorted(split_events[(kind, idx)])
        vstart = vertex_ids[arc.start]
        vend = vertex_ids[arc.end]
        cc.arc_ends[(kind, idx)] = (vstart, vend)
        pts = arc.points
        cur_path = [pts[0]]
        cur_vertex = vstart
        eids: list[int] = []
        interior: list[tuple[int, int, int]] = []
        ev_i = 0
        for seg in range(len(pts) - 1):
            a, b = pts[seg], pts[seg + 1]
            seg_events = []
            while ev_i < len(events) and events[ev_i][0] == seg:
                seg_events.append(events[ev_i])
                ev_i += 1
            for (_, t, vid) in seg_events:
                x = lerp(a, b, t)
                if x != cur_path[-1]:
                    cur_path.append(x)
                if len(cur_path) < 2:
                    raise DegeneratePosition("zero-length edge piece")
                eid = len(cc.edges)
                cc.edges.append(Edge(eid, (kind, idx), list(cur_path), cur_vertex, vid))
                eids.append(eid)
                interior.append((vid, eid, -1))
                cur_path = [x]
                cur_vertex = vid
            if b != cur_path[-1]:
                cur_path.append(b)
        eid = len(cc.edges)
        cc.edges.append(Edge(eid, (kind, idx), list(cur_path), cur_vertex, vend))
        eids.append(eid)
        # fill in edge_after for interior records
        fixed_interior = []
        for pos, (vid, e_before, _) in enumerate(interior):
            fixed_interior.append((vid, e_before, eids[eids.index(e_before) + 1]))
        cc.arc_edges[(kind, idx)] = eids
        cc.arc_interior[(kind, idx)] = fixed_interior

    for kind, idx, arc in arcs:
        split_arc(kind, idx, arc)

    # --- boundary edges ---------------------------------------------------------
    corners = diagram.boundary
    boundary_eids = []
    for ci in range(len(corners)):
        a, b = corners[ci], corners[(ci + 1) % len(corners)]
        # points on this closed side, ordered from a to b
        side_pts = [p for p in boundary_pts if _on_closed_segment(a, b, p)]
        dvec = (b[0] - a[0], b[1] - a[1])

        def along(p):
            return (p[0] - a[0]) * dvec[0] + (p[1] - a[1]) * dvec[1]

        chain = [a] + sorted(side_pts, key=along) + [b]
        for u, w in zip(chain, chain[1:]):
            if u == w:
                continue
            eid = len(cc.edges)
            cc.edges.append(Edge(eid, ("boundary", None), [u, w], vertex_ids[u], vertex_ids[w]))
            boundary_eids.append(eid)

    # --- DCEL rotation system ----------------------------------------------------
    n_he = 2 * len(cc.edges)
    out_hes: dict[int, list[int]] = {v.vid: [] for v in cc.vertices}
    for e in cc.edges:
        out_hes[e.v_from].append(cc.he(e.eid, True))
        out_hes[e.v_to].append(cc.he(e.eid, False))
    rotation: dict[int, list[int]] = {}
    rot_pos: dict[int, int] = {}
    for vid, hes in out_hes.items():
        germs = [(angle_key(cc.he_germ(h)), h) for h in hes]
        for (k1, h1) in germs:
            for (k2, h2) in germs:
                if h1 < h2 and k1 == k2:
                    raise DegeneratePosition(
                        f"parallel germs at vertex {cc.vertices[vid].point}"
                    )
        germs.sort(key=lambda kh: kh[0])
        ordered = [h for _, h in germs]
        rotation[vid] = ordered
        for pos, h in enumerate(ordered):
            rot_pos[h] = pos

    def twin(h: int) -> int:
        return h ^ 1

    def next_he(h: int) -> int:
        w = cc.he_head(h)
        ring = rotation[w]
        pos = rot_pos[twin(h)]
        return ring[(pos - 1) % len(ring)]

    # --- face orbits ---------------------------------------------------------------
    cc.he_face = [-1] * n_he
    cycles: list[list[int]] = []
    for h0 in range(n_he):
        if cc.he_face[h0] != -1:
            continue
        orbit = []
        h = h0
        while True:
            orbit.append(h)
            cc.he_face[h] = len(cycles)  # provisional: cycle id
            h = next_he(h)
            if h == h0:
                break
        cycles.append(orbit)

    def cycle_area2(orbit: list[int]) -> Fraction:
        ring: list[Point] = []
        for h in orbit:
            ring.extend(cc.he_points(h)[:-1])
        return signed_area2(ring)

    def cycle_ring(orbit: list[int]) -> list[Point]:
        ring: list[Point] = []
        for h in orbit:
            ring.extend(cc.he_points(h)[:-1])
        return ring

    areas = [cycle_area2(c) for c in cycles]

    # connected components of the underlying graph
    parent = list(range(len(cc.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in cc.edges:
        a, b = find(e.v_from), find(e.v_to)
        if a != b:
            parent[a] = b
    comp_of_cycle = [find(cc.he_tail(c[0])) for c in cycles]

    ccw_ids = [i for i, a in enumerate(areas) if a > 0]
    cw_ids = [i for i, a in enumerate(areas) if a < 0]
    if any(a == 0 for a in areas):
        raise DegeneratePosition("degenerate zero-area face cycle")

    ccw_rings = {i: cycle_ring(cycles[i]) for i in ccw_ids}

    # faces: one per ccw cycle, plus the exterior face
    face_of_cycle: dict[int, int] = {}
    for i in ccw_ids:
        fid = len(cc.faces)
        cc.faces.append(Face(fid, [cycles[i]]))
        face_of_cycle[i] = fid
    exterior = Face(len(cc.faces), [], is_exterior=True)
    cc.faces.append(exterior)
    cc.exterior_fid = exterior.fid

    # assign cw contours as holes
    comp_leftmost: dict[int, Point] = {}
    for v in cc.vertices:
        c = find(v.vid)
        if c not in comp_leftmost or v.point < comp_leftmost[c]:
            comp_leftmost[c] = v.point
    for i in cw_ids:
        comp = comp_of_cycle[i]
        p = comp_leftmost[comp]
        best = None
        for j in ccw_ids:
            if comp_of_cycle[j] == comp:
                continue
            if point_in_polygon(p, ccw_rings[j]):
                if best is None or abs(areas[j]) < abs(areas[best]):
                    best = j
        if best is None:
            exterior.cycles.append(cycles[i])
            face_of_cycle[i] = exterior.fid
        else:
            fid = face_of_cycle[best]
            cc.faces[fid].cycles.append(cycles[i])
            face_of_cycle[i] = fid

    for h in range(n_he):
        cc.he_face[h] = face_of_cycle[cc.he_face[h]]

    for f in cc.faces:
        f.boundary_adjacent = any(
            cc.he_edge(h).owner[0] == "boundary" for cyc in f.cycles for h in cyc
        )

    # --- per-vertex sector structure ---------------------------------------------
    for v in cc.vertices:
        if v.kind == "crossing":
            fi, mj = v.pair
            germs = {}
            for h in rotation[v.vid]:
                e = cc.he_edge(h)
                key = (e.owner[0], "out" if _leaves_along(cc, h) else "in")
                germs[key] = h
            fdir = cc.he_germ(germs[("fixed", "out")])
            mdir = cc.he_germ(germs[("moving", "out")])
            quads = {}
            ring = rotation[v.vid]
            for pos, h in enumerate(ring):
                g1 = cc.he_germ(h)
                g2 = cc.he_germ(ring[(pos + 1) % len(ring)])
                mid = (g1[0] + g2[0], g1[1] + g2[1])
                ef = 1 if cross(fdir, mid) > 0 else -1
                em = 1 if cross(mdir, mid) > 0 else -1
                quads[(ef, em)] = cc.face_of(h)
            if len(quads) != 4:
                raise DegeneratePosition(f"bad quadrant structure at {v.point}")
            cc.quads[v.vid] = quads
        elif v.kind == "pin":
            fi, mj = v.pair
            hf = hm = None
            for h in rotation[v.vid]:
                if cc.he_edge(h).owner[0] == "fixed":
                    hf = h
                else:
                    hm = h
            gf, gm = cc.he_germ(hf), cc.he_germ(hm)
            cc.pins[v.vid] = {
                "fm": cc.face_of(hf),
                "mf": cc.face_of(hm),
                "fm_convex": cross(gf, gm) > 0,
                "fixed_end": "start" if cc.he_forward(hf) else "end",
                "moving_end": "start" if cc.he_forward(hm) else "end",
            }
        elif v.kind == "contact":
            ring = rotation[v.vid]
            arc_pos = {}
            for pos, h in enumerate(ring):
                owner = cc.he_edge(h).owner[0]
                if owner in ("fixed", "moving"):
                    arc_pos[owner] = (pos, h)
            (pf, hf), (pm, hm) = arc_pos["fixed"], arc_pos["moving"]
            n = len(ring)
            if (pf + 1) % n == pm:
                middle = cc.face_of(hf)
            elif (pm + 1) % n == pf:
                middle = cc.face_of(hm)
            else:
                raise DegeneratePosition(f"contact germs not adjacent at {v.point}")
            side_faces = [cc.face_of(h) for h in ring if h not in (hf, hm)]
            cc.contacts[v.vid] = {
                "middle": middle,
                "sides": side_faces,
                "fm_first": (pf + 1) % n == pm,
                "fixed_end": "start" if cc.he_forward(hf) else "end",
                "moving_end": "start" if cc.he_forward(hm) else "end",
                "gf": cc.he_germ(hf),
                "gm": cc.he_germ(hm),
            }

    # --- slots ----------------------------------------------------------------------
    def add_slot(vid: int, decoration: str, pair: tuple[int, int]):
        sid = len(cc.slots)
        cc.slots.append(Slot(sid, vid, decoration, pair))
        cc.slots_at_vertex.setdefault(vid, []).append(sid)
        cc.pair_slots.setdefault(pair, []).append(sid)

    for v in cc.vertices:
        if v.kind == "crossing":
            add_slot(v.vid, "hat", v.pair)
            add_slot(v.vid, "check", v.pair)
        elif v.kind == "pin":
            add_slot(v.vid, "critical", v.pair)
        elif v.kind == "contact":
            add_slot(v.vid, "contact", v.pair)

    cc.validate()
    return cc


def _on_closed_segment(a: Point, b: Point, p: Point) -> bool:
    from braidfloer.geometry import on_segment

    return p not in (a, b) and on_segment(a, b, p)


def _leaves_along(cc: CellComplex, h: int) -> bool:
    """
    True if the half-edge h leaves its tail in the owner arc's direction
    (tail is earlier along the arc).
    """
    return cc.he_forward(h)
