"""Fixed point index via the degree of Id - f, in dimensions one and two.

In dimension one the index is the Bolzano sign rule on F = Id - f at the
endpoints, each sign proven by a point interval evaluation.  In dimension
two the winding number of F along the rectangle boundary is computed by
quadrant transition accumulation: the oriented boundary is subdivided until
every segment's interval image box excludes the origin (equivalently, lies
in one of the four open axis half-planes); signed quarter-turn transitions
between consecutive segments telescope to four times the winding number.
The integer bookkeeping is exact, so a returned value is rigorous whenever
every segment was classified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .geometry import RectDomain
from .interval import Box, DimensionMismatchError, Interval
from .mapdsl import MapSpec, blend_with_parameter
from .subdivision import UNKNOWN, VERIFIED, adaptive_cover


class BoundaryZeroError(ArithmeticError):
    """Id - f could not be proven nonvanishing on the domain boundary."""


@dataclass
class DegreeResult:
    value: int
    verified: bool
    boundary_evidence: list  # (segment box, image box)
    segments: int
    depth: int

    def to_json_dict(self):
        return {
            "value": self.value,
            "verified": self.verified,
            "segments": self.segments,
            "depth": self.depth,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def _field_interval(f: MapSpec, box: Box) -> Box:
    """Interval image of F = Id - f over a box."""
    img = f.eval_interval(box)
    return Box(tuple(x - g for x, g in zip(box.coords, img.coords)))


def degree_1d(f: MapSpec, domain, max_depth: int = 24) -> DegreeResult:
    """Bolzano sign degree of Id - f on an interval domain."""
    if f.dim != 1:
        raise DimensionMismatchError("degree_1d needs a map of dimension 1")
    if isinstance(domain, RectDomain):
        iv = domain.box.coords[0]
    elif isinstance(domain, Interval):
        iv = domain
    else:
        iv = Interval(*domain)

    signs = []
    evidence = []
    for endpoint in (iv.lo, iv.hi):
        pt = Box((Interval(endpoint),))
        fv = _field_interval(f, pt).coords[0]
        evidence.append((pt, Box((fv,))))
        if fv.hi < 0.0:
            signs.append(-1)
        elif fv.lo > 0.0:
            signs.append(+1)
        else:
            raise BoundaryZeroError(
                f"Id - f not provably nonzero at endpoint {endpoint}"
            )
    if signs == [-1, +1]:
        value = +1
    elif signs == [+1, -1]:
        value = -1
    else:
        value = 0
    return DegreeResult(value, True, evidence, segments=2, depth=0)


# Half-plane codes, counterclockwise: x>0, y>0, x<0, y<0.
_EAST, _NORTH, _WEST, _SOUTH = 0, 1, 2, 3


def _half_plane(img: Box):
    x, y = img.coords
    if x.lo > 0.0:
        return _EAST
    if y.lo > 0.0:
        return _NORTH
    if x.hi < 0.0:
        return _WEST
    if y.hi < 0.0:
        return _SOUTH
    return None


def _boundary_edges(rect: RectDomain):
    """Counterclockwise oriented edges as (fixed axis, fixed value,
    moving axis, start, end)."""
    (x, y) = rect.box.coords
    return (
        (1, y.lo, 0, x.lo, x.hi),  # bottom, left to right
        (0, x.hi, 1, y.lo, y.hi),  # right, bottom to top
        (1, y.hi, 0, x.hi, x.lo),  # top, right to left
        (0, x.lo, 1, y.hi, y.lo),  # left, top to bottom
    )


def winding_degree_2d(f: MapSpec, rect: RectDomain,
                      max_depth: int = 24, max_boxes: int = 40000) -> DegreeResult:
    """Winding number of Id - f along the rectangle boundary."""
    if f.dim != 2:
        raise DimensionMismatchError("winding_degree_2d needs a map of dimension 2")

    ordered = []  # (edge index, param start, halfplane, segment box, image box)
    evidence = []
    segments = 0
    depth_reached = 0
    boxes_used = 0

    for edge_idx, (fix_axis, fix_val, mov_axis, start, end) in enumerate(_boundary_edges(rect)):
        stack = [(min(start, end), max(start, end), 0)]
        leaves = []
        while stack:
            lo, hi, depth = stack.pop()
            boxes_used += 1
            if boxes_used > max_boxes:
                raise BoundaryZeroError(
                    "boundary subdivision budget exhausted before the field could be "
                    "proven nonvanishing"
                )
            depth_reached = max(depth_reached, depth)
            coords = [None, None]
            coords[fix_axis] = Interval(fix_val)
            coords[mov_axis] = Interval(lo, hi)
            seg = Box(tuple(coords))
            img = _field_interval(f, seg)
            hp = _half_plane(img)
            if hp is None:
                if depth >= max_depth or hi <= lo:
                    raise BoundaryZeroError(
                        "a boundary segment's field image could not be separated "
                        f"from the origin at depth {depth}"
                    )
                m = lo + 0.5 * (hi - lo)
                if not lo < m < hi:
                    raise BoundaryZeroError("boundary segment too thin to split")
                stack.append((m, hi, depth + 1))
                stack.append((lo, m, depth + 1))
                continue
            leaves.append((lo, hi, hp, seg, img))
        leaves.sort(key=lambda item: item[0], reverse=(start > end))
        for lo, hi, hp, seg, img in leaves:
            param = lo if start < end else -hi
            ordered.append((edge_idx, param, hp, seg, img))
            evidence.append((seg, img))
            segments += 1

    total = 0
    for k in range(len(ordered)):
        h0 = ordered[k][2]
        h1 = ordered[(k + 1) % len(ordered)][2]
        step = ((h1 - h0 + 1) % 4) - 1
        if step == 2 or (h1 - h0) % 4 == 2:
            raise BoundaryZeroError(
                "inconsistent half-plane transition; boundary image too coarse"
            )
        total += step
    if total % 4 != 0:
        raise BoundaryZeroError("quarter-turn total not divisible by four")
    return DegreeResult(total // 4, True, evidence, segments=segments, depth=depth_reached)


def fixed_point_index(f: MapSpec, rect: RectDomain,
                      max_depth: int = 24, max_boxes: int = 40000) -> DegreeResult:
    """Fixed point index of f over a rectangle: degree of Id - f."""
    if f.dim == 1:
        return degree_1d(f, rect, max_depth=max_depth)
    if f.dim == 2:
        return winding_degree_2d(f, rect, max_depth=max_depth, max_boxes=max_boxes)
    raise DimensionMismatchError("fixed point index implemented for dimensions 1 and 2")


def homotopy_nonvanishing(f: MapSpec, g: MapSpec, rect: RectDomain,
                          max_depth: int = 18, max_boxes: int = 60000) -> bool:
    """Verify Id - ((1-t) f + t g) never vanishes on the boundary, t in [0,1].

    Subdivides the product of the parameter interval with each boundary
    edge. Returns True on full verification, False when the budget ran out
    (the homotopy might pass through zero on the boundary).
    """
    if f.dim != 2 or g.dim != 2:
        raise DimensionMismatchError("homotopy check implemented for dimension 2")
    blend = blend_with_parameter(f, g)

    def classify(aug: Box):
        t = aug.coords[0]
        xbox = Box(aug.coords[1:])
        img = blend.eval_interval(xbox, t)
        fx = Box(tuple(x - v for x, v in zip(xbox.coords, img.coords)))
        if _half_plane(fx) is not None:
            return VERIFIED, None
        return UNKNOWN, None

    for fix_axis, fix_val, mov_axis, start, end in _boundary_edges(rect):
        coords = [None, None]
        coords[fix_axis] = Interval(fix_val)
        coords[mov_axis] = Interval(min(start, end), max(start, end))
        seed = Box((Interval(0.0, 1.0),) + tuple(coords))
        cover = adaptive_cover([seed], classify, max_depth, max_boxes)
        if cover.status != "verified":
            return False
    return True
