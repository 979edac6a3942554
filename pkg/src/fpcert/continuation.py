"""Desk-scale witnesses for fixed-point continua of parametrized families.

The parameter range is cut into grid cells; on each cell the fixed points
of psi(t, .) are enclosed jointly for every t in the cell (the parameter
enters localization as an interval), giving slabs in (t, x) space.  A
breadth-first search then looks for a chain of slabs overlapping as point
sets that connects the t = a side to the t = b side.  Such a discrete
chain is evidence of the guaranteed connected branch, not a proof of
connectedness, and is labelled accordingly.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .geometry import RectDomain
from .interval import Box, Interval
from .localize import localize_fixed_points
from .mapdsl import MapSpec


@dataclass(frozen=True)
class Slab:
    id: int
    cell: int
    t: Interval
    box: Box
    status: str

    def to_json_dict(self):
        return {
            "id": self.id,
            "cell": self.cell,
            "t": [self.t.lo, self.t.hi],
            "box": self.box.bounds(),
            "status": self.status,
        }


@dataclass
class ContinuumWitness:
    t_grid: tuple
    slabs: list
    chain: list  # slab ids, or empty
    complete: bool
    max_t_reached: float
    exhausted: bool = False
    start_index: "int | None" = None

    def chain_slabs(self):
        by_id = {s.id: s for s in self.slabs}
        return [by_id[i] for i in self.chain]

    def to_json_dict(self):
        return {
            "complete": self.complete,
            "cells": len(self.t_grid) - 1,
            "chain": [
                {"t": [s.t.lo, s.t.hi], "box": s.box.bounds()} for s in self.chain_slabs()
            ],
            "max_t_reached": self.max_t_reached,
            "slabs": len(self.slabs),
            "exhausted": self.exhausted,
            "start_index": self.start_index,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2)


def trace_continuum(psi: MapSpec, t_range, x_box: Box, grid: int = 16,
                    tol: float = 1e-3, budget_per_cell: int = 200_000,
                    check_start_index: bool = False) -> ContinuumWitness:
    """Trace fixed-point enclosures of psi(t, .) across the parameter range.

    Returns a witness whose chain, when complete, projects onto the whole
    parameter interval.  When some cell has no surviving enclosure the
    chain necessarily breaks there and max_t_reached reports how far the
    connected component of the t = a side extends.
    """
    if not psi.has_param:
        raise ValueError("trace_continuum needs a parametrized map (param t)")
    if grid < 1:
        raise ValueError("grid must be at least 1")
    a, b = (t_range.lo, t_range.hi) if isinstance(t_range, Interval) else map(float, t_range)
    if not a < b:
        raise ValueError("parameter range must have positive width")

    t_grid = tuple(a + (b - a) * j / grid for j in range(grid + 1))
    rect = RectDomain(x_box)
    slabs = []
    exhausted = False
    per_cell = []
    for cell in range(grid):
        t_iv = Interval(t_grid[cell], t_grid[cell + 1])
        res = localize_fixed_points(psi, rect, tol, budget=budget_per_cell,
                                    t=t_iv, upgrade=False)
        exhausted = exhausted or res.exhausted
        cell_slabs = []
        for enc in res.enclosures:
            slab = Slab(len(slabs), cell, t_iv, enc.box, enc.status)
            slabs.append(slab)
            cell_slabs.append(slab)
        per_cell.append(cell_slabs)

    start_index = None
    if check_start_index and psi.dim in (1, 2):
        from .degree import BoundaryZeroError, fixed_point_index

        frozen = _bind_parameter(psi, a)
        try:
            start_index = fixed_point_index(frozen, rect).value
        except BoundaryZeroError:
            start_index = None

    # Adjacency: same-cell slabs touching in x, consecutive-cell slabs
    # intersecting in x (they share the dividing t value).
    adjacency = {s.id: [] for s in slabs}

    def link(u, v):
        adjacency[u.id].append(v.id)
        adjacency[v.id].append(u.id)

    for cell in range(grid):
        group = per_cell[cell]
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                if group[i].box.intersects(group[j].box):
                    link(group[i], group[j])
        if cell + 1 < grid:
            for u in group:
                for v in per_cell[cell + 1]:
                    if u.box.intersects(v.box):
                        link(u, v)
    for ids in adjacency.values():
        ids.sort()

    starts = [s.id for s in per_cell[0]] if per_cell else []
    goal_cells = grid - 1
    parent = {}
    seen = set(starts)
    queue = deque(starts)
    goal = None
    while queue:
        sid = queue.popleft()
        if slabs[sid].cell == goal_cells:
            goal = sid
            break
        for nxt in adjacency[sid]:
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = sid
                queue.append(nxt)

    if goal is not None:
        chain = [goal]
        while chain[-1] in parent:
            chain.append(parent[chain[-1]])
        chain.reverse()
        return ContinuumWitness(t_grid, slabs, chain, True, b, exhausted, start_index)

    max_t = a
    for sid in seen:
        max_t = max(max_t, slabs[sid].t.hi)
    return ContinuumWitness(t_grid, slabs, [], False, max_t, exhausted, start_index)


def _bind_parameter(psi: MapSpec, value: float) -> MapSpec:
    """Freeze the parameter of psi to a point value."""
    from .mapdsl import Param, Neg, BinOp, Power, Call, float_const

    def subst(e):
        if isinstance(e, Param):
            return float_const(value)
        if isinstance(e, Neg):
            return Neg(subst(e.arg))
        if isinstance(e, BinOp):
            return BinOp(e.op, subst(e.left), subst(e.right))
        if isinstance(e, Power):
            return Power(subst(e.base), e.exponent)
        if isinstance(e, Call):
            return Call(e.func, tuple(subst(a) for a in e.args))
        return e

    return MapSpec(psi.dim, tuple(subst(c) for c in psi.components), has_param=False)
