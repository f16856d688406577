"""Z2 cellular chain complexes, products, and homology by rank computation.

Used as an oracle for Betti vectors; it never calls the package's Betti code.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian


@dataclass
class Complex:
    # cells[d] lists the d-cells; boundary maps a cell to the set of its faces (mod 2)
    cells: dict
    boundary: dict

    @property
    def dim(self):
        return max(d for d, cs in self.cells.items() if cs)


def sphere(k: int) -> Complex:
    """Two cells in every dimension 0..k (upper and lower hemispheres)."""
    cells = {d: [(f"e{d}", s) for s in "+-"] for d in range(k + 1)}
    boundary = {}
    for d in range(k + 1):
        for c in cells[d]:
            boundary[c] = set(cells[d - 1]) if d else set()
    return Complex(cells, boundary)


def surface(genus: int) -> Complex:
    """The 4g-gon cut along one diagonal into two faces; genus 0 is the 2-sphere."""
    if genus == 0:
        return sphere(2)
    v = ("v",)
    edges = [(f"a{i}",) for i in range(genus)] + [(f"b{i}",) for i in range(genus)] + [("d",)]
    faces = [("F1",), ("F2",)]
    boundary = {v: set()}
    for e in edges:
        boundary[e] = set()  # single vertex: both ends cancel
    # F1 = a0 b0 d^-1, F2 = d a0^-1 b0^-1 [a1, b1] ... ; mod 2 the commutators vanish
    for f in faces:
        boundary[f] = {("a0",), ("b0",), ("d",)}
    return Complex({0: [v], 1: edges, 2: faces}, boundary)


def lens(p: int) -> Complex:
    """One cell per dimension; the 2-cell wraps p times around the 1-cell."""
    cells = {d: [(f"e{d}",)] for d in range(4)}
    boundary = {("e0",): set(), ("e1",): set(), ("e3",): set()}
    boundary[("e2",)] = {("e1",)} if p % 2 else set()
    return Complex(cells, boundary)


def cross(a: Complex, b: Complex) -> Complex:
    cells = {}
    boundary = {}
    for da, ca in a.cells.items():
        for db, cb in b.cells.items():
            for x, y in cartesian(ca, cb):
                cell = (x, y)
                cells.setdefault(da + db, []).append(cell)
                faces = set()
                for fx in a.boundary[x]:
                    faces ^= {(fx, y)}
                for fy in b.boundary[y]:
                    faces ^= {(x, fy)}
                boundary[cell] = faces
    return Complex(cells, boundary)


def _rank_mod2(rows):
    rank = 0
    pivots = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                rank += 1
                break
    return rank


def _boundary_rank(c: Complex, d: int) -> int:
    if d not in c.cells or d - 1 not in c.cells:
        return 0
    index = {cell: i for i, cell in enumerate(c.cells[d - 1])}
    rows = []
    for cell in c.cells[d]:
        mask = 0
        for face in c.boundary[cell]:
            mask ^= 1 << index[face]
        rows.append(mask)
    return _rank_mod2(rows)


def betti(c: Complex) -> list[int]:
    top = c.dim
    return [
        len(c.cells.get(d, [])) - _boundary_rank(c, d) - _boundary_rank(c, d + 1)
        for d in range(top + 1)
    ]
