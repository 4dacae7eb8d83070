"""
Exact piecewise-linear half twists.

A half twist about two marked points is modelled in "square-polar"
coordinates centred between them: writing rho = max(|dx|, |dy|) and s for
the ccw perimeter parameter on the square of radius rho,

  * rho <= t0:  exact point reflection through the centre,
  * t0 < rho < t1:  s -> s + sign * 4*t0*(t1 - rho)/(t1 - t0)  (affine!),
  * rho >= t1:  identity.

Every branch is affine with rational breakpoints, so polylines map to
polylines exactly.  The two marked points sit inside the core and are
swapped by the reflection.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from braidfloer.geometry import Point, Polyline, lerp

ZERO = Fraction(0)


class HalfTwist:
    """Half twist supported on the square annulus around `center`."""

    def __init__(self, center: Point, t0: Fraction, t1: Fraction, sign: int):
        if not ZERO < t0 < t1:
            raise ValueError("need 0 < t0 < t1")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.center = (Fraction(center[0]), Fraction(center[1]))
        self.t0 = Fraction(t0)
        self.t1 = Fraction(t1)
        self.sign = sign

    # ---- square-polar helpers -------------------------------------------

    def _rho(self, d: Point) -> Fraction:
        return max(abs(d[0]), abs(d[1]))

    @staticmethod
    def _perimeter(d: Point, rho: Fraction) -> Fraction:
        """Ccw perimeter parameter in [0, 8*rho), start at corner (rho,-rho)."""
        dx, dy = d
        if dx == rho and dy < rho:
            return dy + rho
        if dy == rho:
            return 3 * rho - dx
        if dx == -rho:
            return 5 * rho - dy
        return 7 * rho + dx

    @staticmethod
    def _at_perimeter(rho: Fraction, s: Fraction) -> Point:
        s = s % (8 * rho)
        if s < 2 * rho:
            return (rho, s - rho)
        if s < 4 * rho:
            return (3 * rho - s, rho)
        if s < 6 * rho:
            return (-rho, 5 * rho - s)
        return (s - 7 * rho, -rho)

    def _shift(self, rho: Fraction) -> Fraction:
        return self.sign * 4 * self.t0 * (self.t1 - rho) / (self.t1 - self.t0)

    # ---- point map -------------------------------------------------------

    def apply_point(self, p: Point) -> Point:
        cx, cy = self.center
        d = (p[0] - cx, p[1] - cy)
        rho = self._rho(d)
        if rho >= self.t1:
            return p
        if rho <= self.t0:
            return (cx - d[0], cy - d[1])
        s = self._perimeter(d, rho)
        out = self._at_perimeter(rho, s + self._shift(rho))
        return (cx + out[0], cy + out[1])

    # ---- segment subdivision ----------------------------------------------

    def _breakpoints(self, a: Point, b: Point) -> list[Fraction]:
        """Parameters in (0,1) where the piecewise structure can change."""
        cx, cy = self.center
        ax, ay = a[0] - cx, a[1] - cy
        bx, by = b[0] - cx, b[1] - cy
        vx, vy = bx - ax, by - ay
        ts: set[Fraction] = set()

        def line(c0: Fraction, c1: Fraction):
            # solve c0 + c1*t = 0
            if c1 != 0:
                t = -c0 / c1
                if 0 < t < 1:
                    ts.add(t)

        for thr in (self.t0, self.t1, -self.t0, -self.t1):
            line(ax - thr, vx)   # dx = thr
            line(ay - thr, vy)   # dy = thr
        line(ax - ay, vx - vy)   # dx = dy
        line(ax + ay, vx + vy)   # dx = -dy
        return sorted(ts)

    def _ring_breakpoints(self, a: Point, b: Point) -> list[Fraction]:
        """
        Extra breakpoints for a piece already inside one (ring, side) region:
        parameters where the shifted perimeter value crosses a corner, i.e.
        s + shift = 2*k*rho.
        """
        cx, cy = self.center
        ax, ay = a[0] - cx, a[1] - cy
        vx = (b[0] - cx) - ax
        vy = (b[1] - cy) - ay
        # affine rho(t) and s(t) on this side
        mid = (ax + vx / 2, ay + vy / 2)
        rho_mid = self._rho(mid)
        # which side: determine from midpoint
        if mid[0] == rho_mid:
            rho0, rho1 = ax, vx
            s0, s1 = ay + ax, vy + vx
        elif mid[1] == rho_mid:
            rho0, rho1 = ay, vy
            s0, s1 = 3 * ay - ax, 3 * vy - vx
        elif mid[0] == -rho_mid:
            rho0, rho1 = -ax, -vx
            s0, s1 = -5 * ax - ay, -5 * vx - vy
        else:
            rho0, rho1 = -ay, -vy
            s0, s1 = -7 * ay + ax, -7 * vy + vx
        # shift(t) = sign * 4 t0 (t1 - rho(t)) / (t1 - t0)
        c = self.sign * 4 * self.t0 / (self.t1 - self.t0)
        sh0 = c * (self.t1 - rho0)
        sh1 = -c * rho1
        ts: set[Fraction] = set()
        for k in range(-2, 7):
            # s(t) + shift(t) - 2*k*rho(t) = 0
            c0 = s0 + sh0 - 2 * k * rho0
            c1 = s1 + sh1 - 2 * k * rho1
            if c1 != 0:
                t = -c0 / c1
                if 0 < t < 1:
                    ts.add(t)
        return sorted(ts)

    def apply_polyline(self, poly: Polyline) -> Polyline:
        out: list[Point] = [self.apply_point(poly.points[0])]
        for a, b in poly.segments():
            cuts = [ZERO] + self._breakpoints(a, b) + [Fraction(1)]
            pieces: list[tuple[Point, Point]] = []
            for t0, t1 in zip(cuts, cuts[1:]):
                pieces.append((lerp(a, b, t0), lerp(a, b, t1)))
            for pa, pb in pieces:
                mid = lerp(pa, pb, Fraction(1, 2))
                d = (mid[0] - self.center[0], mid[1] - self.center[1])
                rho = self._rho(d)
                if self.t0 < rho < self.t1:
                    subcuts = [ZERO] + self._ring_breakpoints(pa, pb) + [Fraction(1)]
                else:
                    subcuts = [ZERO, Fraction(1)]
                for u0, u1 in zip(subcuts, subcuts[1:]):
                    q = lerp(pa, pb, u1)
                    out.append(self.apply_point(q))
        return Polyline(out).simplified()

    def apply_polylines(self, polys: Sequence[Polyline]) -> list[Polyline]:
        return [self.apply_polyline(p) for p in polys]
