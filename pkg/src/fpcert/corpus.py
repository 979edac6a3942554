"""Seeded random problem generators for fuzzing and property experiments.

Maps are generated as expression sources so they pass through the same
parser as user input.  Generators are biased toward problems with a known
certifiable structure (contractions toward an interior point, expansions
through the box) with optional bounded nonlinear perturbations, so a fuzz
run exercises CERTIFIED, REFUTED and INDETERMINATE outcomes.
"""

from __future__ import annotations

import random

from .geometry import ConeShellSpec, CylinderSpec, Functional, RectDomain
from .interval import Box, Interval
from .mapdsl import MapSpec, parse_map


def _fmt(v: float) -> str:
    return repr(round(float(v), 6))


def _affine_source(dim: int, rows, offsets) -> list:
    lines = []
    for i in range(dim):
        terms = [f"{_fmt(rows[i][j])}*x{j + 1}" for j in range(dim)]
        lines.append(f"map g{i + 1} = " + " + ".join(terms) + f" + {_fmt(offsets[i])}")
    return lines


_WOBBLES = (
    "{amp}*sin({freq}*x{var})",
    "{amp}*cos({freq}*x{var})",
    "{amp}*tanh(x{var})",
    "{amp}*x{var}^2",
)


def _wobble(rng: random.Random, dim: int, amp: float) -> str:
    pat = rng.choice(_WOBBLES)
    return pat.format(
        amp=_fmt(rng.uniform(-amp, amp)),
        freq=_fmt(rng.uniform(0.5, 3.0)),
        var=rng.randrange(dim) + 1,
    )


def random_rect_problem(rng: random.Random):
    """Random (map, rectangle) pair with a mixed certifiability profile."""
    dim = rng.choice((1, 1, 2, 2, 2, 3))
    bounds = []
    for _ in range(dim):
        lo = rng.uniform(-2.0, 1.0)
        bounds.append((lo, lo + rng.uniform(0.5, 2.5)))
    rect = RectDomain(Box.from_bounds(bounds))
    centre = [0.5 * (lo + hi) for lo, hi in bounds]
    half = [0.5 * (hi - lo) for lo, hi in bounds]

    kind = rng.random()
    rows = [[0.0] * dim for _ in range(dim)]
    offsets = [0.0] * dim
    if kind < 0.45:  # contraction toward an interior point
        for i in range(dim):
            s = rng.uniform(-0.6, 0.6)
            rows[i][i] = s
            target = centre[i] + rng.uniform(-0.3, 0.3) * half[i]
            offsets[i] = target - s * centre[i]
        amp = 0.05 * min(half)
    elif kind < 0.7:  # expansion through the box
        for i in range(dim):
            s = rng.uniform(1.6, 3.0)
            rows[i][i] = s
            offsets[i] = centre[i] - s * centre[i]
        amp = 0.05 * min(half)
    elif kind < 0.85:  # translation off the box: refutable
        for i in range(dim):
            rows[i][i] = 1.0
            offsets[i] = (2.0 * half[i] + rng.uniform(0.5, 1.5)) * rng.choice((-1.0, 1.0))
        amp = 0.0
    else:  # mixed directions with coupling
        for i in range(dim):
            s = rng.choice((-0.5, 0.5, 2.0))
            rows[i][i] = s
            offsets[i] = centre[i] - s * centre[i]
            for j in range(dim):
                if j != i:
                    rows[i][j] = rng.uniform(-0.1, 0.1)
        amp = 0.03 * min(half)

    lines = _affine_source(dim, rows, offsets)
    if amp > 0.0 and rng.random() < 0.6:
        i = rng.randrange(dim)
        lines[i] += " + " + _wobble(rng, dim, amp)
    src = f"dim {dim}\n" + "\n".join(lines) + "\n"
    return parse_map(src), rect


def random_cylinder_problem(rng: random.Random):
    """Random (map, cylinder, form) with height conditions of a known form."""
    k = rng.choice((1, 1, 2))
    a = rng.uniform(-1.0, 0.5)
    b = a + rng.uniform(0.8, 2.0)
    base_bounds = []
    for _ in range(k):
        lo = rng.uniform(-1.0, 0.5)
        base_bounds.append((lo, lo + rng.uniform(0.5, 1.5)))
    cyl = CylinderSpec(Interval(a, b), Box.from_bounds(base_bounds))
    mid_t = 0.5 * (a + b)

    form = rng.choice(("expansive", "compressive"))
    if form == "expansive":
        s = rng.uniform(1.7, 3.0)
    else:
        s = rng.uniform(-0.6, 0.6)
    t_off = mid_t - s * mid_t
    lines = [f"map g1 = {_fmt(s)}*x1 + {_fmt(t_off)}"]
    for j in range(k):
        lo, hi = base_bounds[j]
        c = 0.5 * (lo + hi)
        sj = rng.uniform(-0.5, 0.5)
        off = c + rng.uniform(-0.2, 0.2) * (hi - lo) * 0.5 - sj * c
        lines.append(f"map g{j + 2} = {_fmt(sj)}*x{j + 2} + {_fmt(off)}")
    if rng.random() < 0.15:  # occasionally break the height condition
        lines[0] = f"map g1 = x1 + {_fmt(rng.uniform(1.0, 2.0) * (b - a))}"
    src = f"dim {1 + k}\n" + "\n".join(lines) + "\n"
    return parse_map(src), cyl, form


def random_cone_problem(rng: random.Random):
    """Random scaled quadratic cone map over a shell around its fixed slice."""
    lam = rng.uniform(0.7, 1.4)
    a = rng.uniform(0.3, 0.7) / lam
    b = rng.uniform(1.5, 2.5) / lam
    spec = ConeShellSpec(2, Functional.ones(2), a, b)
    src = (
        "dim 2\n"
        f"map g1 = {_fmt(lam)}*(x1 + x2)*x1\n"
        f"map g2 = {_fmt(lam)}*(x1 + x2)*x2\n"
    )
    return parse_map(src), spec, "expansive"


def random_polynomial_map_2d(rng: random.Random, rect: RectDomain,
                             allow_nonlinear: bool = True) -> MapSpec:
    """Planar map with fixed points generically off the rectangle boundary."""
    (xr, yr) = rect.box.coords
    cx, cy = xr.mid, yr.mid
    lines = []
    for i, c in enumerate((cx, cy)):
        s = rng.choice((-2.0, -0.5, 0.5, 2.5))
        off = c - s * c + rng.uniform(-0.15, 0.15)
        term = f"{_fmt(s)}*x{i + 1} + {_fmt(off)}"
        if allow_nonlinear and rng.random() < 0.5:
            q = rng.uniform(-0.15, 0.15)
            term += f" + {_fmt(q)}*x{2 - i}^2"
        lines.append(f"map g{i + 1} = {term}")
    return parse_map("dim 2\n" + "\n".join(lines) + "\n")


def random_expression_map(rng: random.Random, dim: int, depth: int = 3) -> MapSpec:
    """Total-function-safe random expression map (no div or sqrt)."""

    def expr(d):
        if d == 0 or rng.random() < 0.28:
            if rng.random() < 0.55:
                return f"x{rng.randrange(dim) + 1}"
            return _fmt(rng.uniform(-2.0, 2.0))
        choice = rng.random()
        if choice < 0.45:
            op = rng.choice(("+", "-", "*"))
            return f"({expr(d - 1)} {op} {expr(d - 1)})"
        if choice < 0.72:
            fn = rng.choice(("sin", "cos", "tanh"))
            return f"{fn}({expr(d - 1)})"
        if choice < 0.82:
            return f"({expr(d - 1)})^{rng.choice((2, 3))}"
        if choice < 0.92:
            return f"(-{expr(d - 1)})"
        fn = rng.choice(("min", "max"))
        return f"{fn}({expr(d - 1)}, {expr(d - 1)})"

    lines = [f"map g{i + 1} = {expr(depth)}" for i in range(dim)]
    return parse_map(f"dim {dim}\n" + "\n".join(lines) + "\n")


def random_box(rng: random.Random, dim: int, scale: float = 2.0) -> Box:
    bounds = []
    for _ in range(dim):
        lo = rng.uniform(-scale, scale)
        bounds.append((lo, lo + rng.uniform(1e-3, scale)))
    return Box.from_bounds(bounds)


def sample_in_box(rng: random.Random, box: Box):
    return tuple(c.lo + rng.random() * (c.hi - c.lo) for c in box.coords)
