"""Two-colored hexagonal grids and their boundary-line machinery.

Cells live on an n-by-m grid, row 1 at the top, and each cell touches
six neighbours: the four axis ones plus the two anti-diagonal ones.
A two-coloring of the cells induces boundary lines: walks in the dual
graph that separate unequal colors.  This module traces those lines,
verifies their structural invariants, finds their critical and good
points, classifies the boundaries hanging off the top row, and decides
the top-cells-or-long-line dichotomy that the thinning pipeline needs.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    GoodPointsUnavailable,
    InconsistencyError,
    ShapeError,
    SizeLimitError,
)
from .passes import CheckReport, DirectionTable
from .product import EdgeKind
from .sequences import Direction

Cell = tuple[int, int]

# Neighbour offsets: axis plus the two anti-diagonal directions.
NEIGHBOR_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1))


@dataclass(frozen=True)
class HexGrid:
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")

    def valid(self, cell: Cell) -> bool:
        i, j = cell
        return 1 <= i <= self.rows and 1 <= j <= self.cols

    def cells(self) -> Iterable[Cell]:
        for i in range(1, self.rows + 1):
            for j in range(1, self.cols + 1):
                yield (i, j)

    def neighbors(self, cell: Cell) -> list[Cell]:
        i, j = cell
        out = []
        for di, dj in NEIGHBOR_OFFSETS:
            other = (i + di, j + dj)
            if self.valid(other):
                out.append(other)
        return out

    def edge_kind(self, a: Cell, b: Cell) -> Optional[EdgeKind]:
        """Kind of the grid edge between two cells, or None if not adjacent."""
        (i1, j1), (i2, j2) = a, b
        if not (self.valid(a) and self.valid(b)):
            return None
        d = (i1 - i2, j1 - j2)
        if d in ((1, 0), (-1, 0)):
            return EdgeKind.VERTICAL
        if d in ((0, 1), (0, -1)):
            return EdgeKind.HORIZONTAL
        if d in ((1, -1), (-1, 1)):
            return EdgeKind.DIAGONAL
        return None

    def h_edges(self) -> list[tuple[Cell, Cell, EdgeKind]]:
        """All grid edges, deeper (or leftmost) cell first."""
        out = []
        for i in range(1, self.rows + 1):
            for j in range(1, self.cols + 1):
                if i + 1 <= self.rows:
                    out.append(((i + 1, j), (i, j), EdgeKind.VERTICAL))
                if j + 1 <= self.cols:
                    out.append(((i, j), (i, j + 1), EdgeKind.HORIZONTAL))
                if i + 1 <= self.rows and j + 1 <= self.cols:
                    out.append(((i + 1, j), (i, j + 1), EdgeKind.DIAGONAL))
        return out


class HexColoring:
    """Assignment of a Direction to every cell of a HexGrid."""

    def __init__(self, grid: HexGrid, chi: Mapping[Cell, Direction]):
        self.grid = grid
        self.chi = dict(chi)
        for cell in grid.cells():
            if cell not in self.chi:
                raise ShapeError(f"cell {cell} has no color")
            if not isinstance(self.chi[cell], Direction):
                raise ValueError(f"cell {cell} color is not a Direction")
        if len(self.chi) != grid.rows * grid.cols:
            extra = set(self.chi) - set(grid.cells())
            raise ShapeError(f"colors given for cells outside the grid: {sorted(extra)[:4]}")

    def color(self, cell: Cell) -> Direction:
        return self.chi[cell]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "HexColoring":
        rows = len(matrix)
        if rows == 0:
            raise ShapeError("empty coloring matrix")
        cols = len(matrix[0])
        if any(len(row) != cols for row in matrix):
            raise ShapeError("ragged coloring matrix")
        chi = {}
        for i, row in enumerate(matrix, start=1):
            for j, value in enumerate(row, start=1):
                if isinstance(value, Direction):
                    chi[(i, j)] = value
                else:
                    chi[(i, j)] = Direction.DEC if int(value) else Direction.INC
        return cls(HexGrid(rows, cols), chi)

    def to_json(self) -> dict:
        return {
            "n": self.grid.rows,
            "m": self.grid.cols,
            "chi": [
                [0 if self.chi[(i, j)] is Direction.INC else 1 for j in range(1, self.grid.cols + 1)]
                for i in range(1, self.grid.rows + 1)
            ],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "HexColoring":
        matrix = doc["chi"]
        out = cls.from_matrix(matrix)
        if out.grid.rows != int(doc["n"]) or out.grid.cols != int(doc["m"]):
            raise ShapeError("declared grid size disagrees with the color matrix")
        return out


def random_coloring(rows: int, cols: int, rng) -> HexColoring:
    matrix = [[rng.randrange(2) for _ in range(cols)] for _ in range(rows)]
    return HexColoring.from_matrix(matrix)


# ---------------------------------------------------------------------------
# The dual graph.

@dataclass(frozen=True)
class DualVertex:
    """Corner of the dual graph; sign -1 or +1 picks one of two triangles."""

    depth: int
    col: int
    sign: int

    def key(self) -> tuple[int, int, int]:
        return (self.depth, 0 if self.sign < 0 else 1, self.col)

    def __str__(self) -> str:
        return f"({self.depth},{self.col},{'-' if self.sign < 0 else '+'})"


@dataclass(frozen=True)
class DualEdge:
    """Dual edge crossing exactly one grid edge; cells deeper-first."""

    minus: DualVertex
    plus: DualVertex
    kind: EdgeKind
    cells: tuple[Cell, Cell]


def dual_edges(grid: HexGrid) -> list[DualEdge]:
    """Every dual edge, one per grid edge it crosses."""
    n, m = grid.rows, grid.cols
    out = []
    for i in range(2, n + 1):
        for j in range(1, m + 1):
            out.append(
                DualEdge(
                    DualVertex(i, j, -1),
                    DualVertex(i, j - 1, +1),
                    EdgeKind.VERTICAL,
                    ((i, j), (i - 1, j)),
                )
            )
        for j in range(1, m):
            out.append(
                DualEdge(
                    DualVertex(i, j, -1),
                    DualVertex(i, j, +1),
                    EdgeKind.DIAGONAL,
                    ((i, j), (i - 1, j + 1)),
                )
            )
    for i in range(2, n + 2):
        for j in range(1, m):
            out.append(
                DualEdge(
                    DualVertex(i, j, -1),
                    DualVertex(i - 1, j, +1),
                    EdgeKind.HORIZONTAL,
                    ((i - 1, j), (i - 1, j + 1)),
                )
            )
    return out


def boundary_subgraph(coloring: HexColoring) -> list[DualEdge]:
    """Dual edges whose crossed cells carry different colors."""
    out = []
    for edge in dual_edges(coloring.grid):
        a, b = edge.cells
        if coloring.color(a) != coloring.color(b):
            out.append(edge)
    return out


# ---------------------------------------------------------------------------
# Boundary lines.

class BoundaryLine:
    """One separating walk, stored as oriented cell pairs plus the dual walk.

    Pair t is (a_t, b_t): the cells on the two sides of the t-th crossed
    grid edge, the a side holding color_a everywhere along the line.
    The walk has one more vertex than there are pairs (equal counts for
    a closed line, where the last vertex joins back to the first).
    """

    def __init__(
        self,
        grid: HexGrid,
        pairs: Sequence[tuple[Cell, Cell]],
        walk: Sequence[DualVertex],
        closed: bool,
        color_a: Direction,
        color_b: Direction,
    ):
        if not pairs:
            raise ValueError("a boundary line needs at least one pair")
        self.grid = grid
        self.pairs = tuple(pairs)
        self.walk = tuple(walk)
        self.closed = closed
        self.color_a = color_a
        self.color_b = color_b

    @property
    def length(self) -> int:
        return len(self.pairs)

    def side(self, color: Direction) -> str:
        if color == self.color_a:
            return "a"
        if color == self.color_b:
            return "b"
        raise ValueError(f"{color} is on neither side of this line")

    def oriented(self, color: Direction) -> "BoundaryLine":
        """The same line with the a side carrying the given color."""
        if self.side(color) == "a":
            return self
        return BoundaryLine(
            self.grid,
            [(b, a) for a, b in self.pairs],
            self.walk,
            self.closed,
            self.color_b,
            self.color_a,
        )

    def subline(self, start: int, stop: int) -> "BoundaryLine":
        if not (0 <= start < stop <= len(self.pairs)):
            raise ValueError("empty or out-of-range pair slice")
        return BoundaryLine(
            self.grid,
            self.pairs[start:stop],
            self.walk[start : stop + 1],
            False,
            self.color_a,
            self.color_b,
        )

    def verify(self, coloring: HexColoring) -> list[str]:
        """All violations of the four line invariants, empty when sound."""
        out = []
        if self.color_a == self.color_b:
            out.append("sides: the two side colors are equal")
        for t, (a, b) in enumerate(self.pairs):
            if coloring.color(a) != self.color_a or coloring.color(b) != self.color_b:
                out.append(f"sides: pair {t} colors are not (a={self.color_a.value}, b={self.color_b.value})")
            if self.grid.edge_kind(a, b) is None:
                out.append(f"pair-shape: pair {t} cells {a} and {b} are not grid-adjacent")
        steps = list(zip(range(len(self.pairs) - 1), self.pairs, self.pairs[1:]))
        if self.closed and len(self.pairs) > 1:
            steps.append((len(self.pairs) - 1, self.pairs[-1], self.pairs[0]))
        for t, (a1, b1), (a2, b2) in steps:
            if (a1 == a2) == (b1 == b2):
                out.append(f"step: pairs {t} and {t + 1} must share exactly one side")
        seen = set()
        for t, pair in enumerate(self.pairs):
            key = frozenset(pair)
            if key in seen:
                out.append(f"duplicate: pair {t} repeats an earlier pair")
            seen.add(key)
        return out


def _walks(edges: list[DualEdge]) -> list[tuple[list[DualVertex], list[int], bool]]:
    adjacency: dict[DualVertex, list[int]] = defaultdict(list)
    for idx, edge in enumerate(edges):
        adjacency[edge.minus].append(idx)
        adjacency[edge.plus].append(idx)
    for vertex, incident in adjacency.items():
        if len(incident) > 2:
            raise InconsistencyError(f"dual vertex {vertex} has boundary degree {len(incident)}")
    used = [False] * len(edges)

    def follow(start: DualVertex) -> tuple[list[DualVertex], list[int]]:
        vertices = [start]
        walk_edges = []
        current = start
        while True:
            free = [i for i in adjacency[current] if not used[i]]
            if not free:
                return vertices, walk_edges
            i = free[0]
            used[i] = True
            edge = edges[i]
            current = edge.plus if edge.minus == current else edge.minus
            walk_edges.append(i)
            vertices.append(current)

    walks = []
    endpoints = sorted(
        (v for v, incident in adjacency.items() if len(incident) == 1),
        key=DualVertex.key,
    )
    for v in endpoints:
        if all(used[i] for i in adjacency[v]):
            continue
        vertices, walk_edges = follow(v)
        walks.append((vertices, walk_edges, False))
    for idx in range(len(edges)):
        if used[idx]:
            continue
        vertices, walk_edges = follow(edges[idx].minus)
        walks.append((vertices[:-1], walk_edges, True))
    return walks


def trace_boundary(coloring: HexColoring) -> list[BoundaryLine]:
    """Decompose the boundary subgraph into its separating lines."""
    edges = boundary_subgraph(coloring)
    lines = []
    for vertices, edge_indices, closed in _walks(edges):
        crossed = [edges[i].cells for i in edge_indices]
        first = crossed[0]
        if first[0][0] != first[1][0]:
            lead = max(first, key=lambda c: c[0])
        else:
            lead = min(first, key=lambda c: c[1])
        color_a = coloring.color(lead)
        pairs = []
        for x, y in crossed:
            if coloring.color(x) == color_a:
                pairs.append((x, y))
            else:
                pairs.append((y, x))
        color_b = coloring.color(pairs[0][1])
        lines.append(BoundaryLine(coloring.grid, pairs, vertices, closed, color_a, color_b))
    return lines


# ---------------------------------------------------------------------------
# Critical points and good points.

@dataclass(frozen=True)
class CriticalPoint:
    """Local depth minimum of a line's dual walk."""

    vertex: DualVertex
    base: Direction
    walk_index: int
    d3_pair_index: Optional[int]


def critical_points(line: BoundaryLine, coloring: HexColoring) -> list[CriticalPoint]:
    """Local minima of the walk under (depth, sign), minus-signed first.

    On an open line each end is trimmed by one edge when it finishes in
    a plus vertex shallower than its neighbour, so that what remains
    bottoms out in minus vertices whose deepest bordered cell names the
    base color.  Each critical point also records the index of its
    vertical crossing when one of its walk edges is one.
    """
    walk = line.walk
    keys = [v.key()[:2] for v in walk]
    count = len(walk)

    def pair_kind(t: int) -> EdgeKind:
        a, b = line.pairs[t]
        return line.grid.edge_kind(a, b)

    candidates: list[int] = []
    if line.closed:
        for t in range(count):
            before = keys[(t - 1) % count]
            after = keys[(t + 1) % count]
            if keys[t] < before and keys[t] < after:
                candidates.append(t)
    else:
        lo, hi = 0, count - 1
        if len(line.pairs) >= 2:
            if walk[0].sign > 0 and keys[0] < keys[1]:
                lo = 1
            if walk[-1].sign > 0 and keys[-1] < keys[-2]:
                hi = count - 2
        for t in range(lo, hi + 1):
            left_ok = t == lo or keys[t] < keys[t - 1]
            right_ok = t == hi or keys[t] < keys[t + 1]
            if left_ok and right_ok:
                candidates.append(t)

    out = []
    for t in candidates:
        vertex = walk[t]
        base_cell = (vertex.depth, vertex.col)
        if not line.grid.valid(base_cell):
            raise InconsistencyError(f"critical vertex {vertex} borders no deepest cell")
        if line.closed:
            incident = [((t - 1) % len(line.pairs)), t % len(line.pairs)]
        else:
            incident = [e for e in (t - 1, t) if 0 <= e < len(line.pairs)]
        d3 = next((e for e in incident if pair_kind(e) is EdgeKind.VERTICAL), None)
        out.append(CriticalPoint(vertex, coloring.color(base_cell), t, d3))
    return out


def good_points_threshold(count: int) -> int:
    """Line length guaranteeing `count` pairwise-good critical points."""
    if count < 1:
        raise ValueError("count must be positive")
    c = 1
    for k in range(1, count):
        u = (k + 1) * (2 * c + 5)
        c = u * (k + 1) * c
    return c


@dataclass(frozen=True)
class GoodPoint:
    vertex: DualVertex
    base: Direction
    segment: tuple[int, int]
    pair_index: int


@dataclass(frozen=True)
class GoodPointsResult:
    line: BoundaryLine
    points: tuple[GoodPoint, ...]
    base: Direction


def _pairwise_good(
    line: BoundaryLine,
    criticals: Sequence[CriticalPoint],
    x: CriticalPoint,
    y: CriticalPoint,
    base: Direction,
) -> bool:
    lo, hi = sorted((x.walk_index, y.walk_index))
    segment = line.walk[lo : hi + 1]
    floor = min(v.depth for v in segment)
    if floor < min(x.vertex.depth, y.vertex.depth):
        return False
    for z in criticals:
        if lo < z.walk_index < hi and z.vertex.depth == floor and z.base != base:
            return False
    return True


def find_good_points(line: BoundaryLine, coloring: HexColoring, s: int) -> GoodPointsResult:
    """Pick s+1 same-base pairwise-good critical points with vertical crossings.

    The search is opportunistic: it greedily grows a pairwise-good set
    per base color and succeeds as soon as 2s+1 points are found, of
    which the first s+1 are returned.  A line at least as long as the
    guarantee threshold always has such a set; shorter lines may raise
    GoodPointsUnavailable anyway.  The selection is re-verified from
    scratch: pairwise goodness, vertical a-side-deeper crossings, and
    no base-side cell between two points shallower than either of them.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    wanted = 2 * s + 1
    criticals = critical_points(line, coloring)
    selectable = [c for c in criticals if c.d3_pair_index is not None]
    bases = sorted(
        {c.base for c in selectable},
        key=lambda b: (-sum(1 for c in selectable if c.base == b), b.value),
    )
    chosen = None
    for base in bases:
        picked: list[CriticalPoint] = []
        for c in (c for c in selectable if c.base == base):
            if all(_pairwise_good(line, criticals, p, c, base) for p in picked):
                picked.append(c)
                if len(picked) == wanted:
                    break
        if len(picked) == wanted:
            chosen = (base, picked)
            break
    if chosen is None:
        raise GoodPointsUnavailable(wanted, line.length, good_points_threshold(wanted))
    base, picked = chosen
    final = picked[: s + 1]
    oriented = line.oriented(base)

    for x, y in itertools.combinations(final, 2):
        if not _pairwise_good(line, criticals, x, y, base):
            raise InconsistencyError("selected points fail the pairwise goodness recheck")
    for c in final:
        a, b = oriented.pairs[c.d3_pair_index]
        if not (a[1] == b[1] and a[0] == b[0] + 1):
            raise InconsistencyError(
                f"crossing {c.d3_pair_index} is not vertical with the base side deeper"
            )
    for x, y in itertools.combinations(final, 2):
        lo, hi = sorted((x.d3_pair_index, y.d3_pair_index))
        floor = min(x.vertex.depth, y.vertex.depth)
        for t in range(lo + 1, hi):
            a, _ = oriented.pairs[t]
            if a[0] < floor:
                raise InconsistencyError(
                    f"base-side cell {a} between crossings {lo} and {hi} rises above depth {floor}"
                )

    points = []
    for idx, c in enumerate(final):
        seg_lo = final[idx - 1].walk_index if idx > 0 else 0
        seg_hi = final[idx + 1].walk_index if idx + 1 < len(final) else len(line.walk) - 1
        points.append(GoodPoint(c.vertex, c.base, (seg_lo, seg_hi), c.d3_pair_index))
    return GoodPointsResult(oriented, tuple(points), base)


# ---------------------------------------------------------------------------
# Top cuts and the boundaries hanging off them.

def cut_points(coloring: HexColoring) -> list[int]:
    """Columns x whose top cell differs in color from its right neighbour."""
    out = []
    for x in range(1, coloring.grid.cols):
        if coloring.color((1, x)) != coloring.color((1, x + 1)):
            out.append(x)
    return out


@dataclass(frozen=True)
class TopBoundary:
    left: int
    right: int
    line: BoundaryLine


@dataclass(frozen=True)
class TopBoundaries:
    all: tuple[TopBoundary, ...]
    maximal: tuple[TopBoundary, ...]
    flagged: tuple[BoundaryLine, ...]


def maximal_boundaries(coloring: HexColoring) -> TopBoundaries:
    """Boundary lines with both ends at top cuts, and the maximal ones.

    Every top cut is an endpoint of exactly one line.  Lines joining
    two cuts x < y form intervals that must nest or stay disjoint, and
    the top colors just outside a boundary must agree; either failing
    raises InconsistencyError.  Lines leaving a cut but ending at some
    other border are reported in `flagged` and take no further part.
    """
    lines = trace_boundary(coloring)
    cuts = cut_points(coloring)
    tops: list[TopBoundary] = []
    flagged: list[BoundaryLine] = []
    claimed: list[int] = []
    for line in lines:
        if line.closed:
            continue
        ends = [line.walk[0], line.walk[-1]]
        top_cols = sorted(v.col for v in ends if v.depth == 1 and v.sign > 0)
        if len(top_cols) == 2:
            tops.append(TopBoundary(top_cols[0], top_cols[1], line))
            claimed.extend(top_cols)
        elif len(top_cols) == 1:
            flagged.append(line)
            claimed.extend(top_cols)
    if sorted(claimed) != cuts:
        raise InconsistencyError(
            f"cuts {cuts} are not exactly the top endpoints {sorted(claimed)}"
        )
    tops.sort(key=lambda tb: (tb.left, tb.right))
    for one, two in itertools.combinations(tops, 2):
        nested = (one.left < two.left and two.right < one.right) or (
            two.left < one.left and one.right < two.right
        )
        disjoint = one.right < two.left or two.right < one.left
        if not (nested or disjoint):
            raise InconsistencyError(
                f"boundaries ({one.left},{one.right}) and ({two.left},{two.right}) cross"
            )
    maximal = [
        tb
        for tb in tops
        if not any(
            other is not tb and other.left < tb.left and tb.right < other.right
            for other in tops
        )
    ]
    for prev, nxt in zip(maximal, maximal[1:]):
        if nxt.left <= prev.right:
            raise InconsistencyError("maximal boundaries overlap")
    for tb in tops:
        outside_left = coloring.color((1, tb.left))
        outside_right = coloring.color((1, tb.right + 1))
        if outside_left != outside_right:
            raise InconsistencyError(
                f"boundary ({tb.left},{tb.right}) has unequal outside top colors"
            )
    return TopBoundaries(tuple(tops), tuple(maximal), tuple(flagged))


# ---------------------------------------------------------------------------
# Spanning paths and the top-or-long dichotomy.

@dataclass(frozen=True)
class SpanningPath:
    cells: tuple[Cell, ...]
    color: Direction
    axis: str
    extent: tuple[int, int]


def _color_class(coloring: HexColoring, color: Direction) -> set[Cell]:
    return {cell for cell in coloring.grid.cells() if coloring.color(cell) == color}


def monochromatic_spanning_path(coloring: HexColoring) -> SpanningPath:
    """A one-color path crossing the grid; each color gets its own axis.

    The first color tries to span the columns left to right, the second
    the rows top to bottom.  The adjacency includes the anti-diagonal
    neighbours, which is what rules out a double draw; failure of both
    colors means the coloring data is corrupt.
    """
    grid = coloring.grid
    plans = (
        (Direction.INC, "columns", lambda c: c[1] == 1, lambda c: c[1] == grid.cols, (1, grid.cols)),
        (Direction.DEC, "rows", lambda c: c[0] == 1, lambda c: c[0] == grid.rows, (1, grid.rows)),
    )
    for color, axis, is_source, is_target, extent in plans:
        cells = _color_class(coloring, color)
        frontier = deque(sorted(c for c in cells if is_source(c)))
        parent: dict[Cell, Optional[Cell]] = {c: None for c in frontier}
        goal = None
        while frontier:
            cur = frontier.popleft()
            if is_target(cur):
                goal = cur
                break
            for nb in grid.neighbors(cur):
                if nb in cells and nb not in parent:
                    parent[nb] = cur
                    frontier.append(nb)
        if goal is None:
            continue
        path = []
        at: Optional[Cell] = goal
        while at is not None:
            path.append(at)
            at = parent[at]
        path.reverse()
        span = grid.cols if axis == "columns" else grid.rows
        if len(path) < span:
            raise InconsistencyError("spanning path shorter than the spanned side")
        return SpanningPath(tuple(path), color, axis, extent)
    raise InconsistencyError("neither color spans its axis")


@dataclass(frozen=True)
class TopCellsWitness:
    color: Direction
    cells: tuple[Cell, ...]
    component_size: int


@dataclass(frozen=True)
class LongBoundaryWitness:
    line: BoundaryLine


def _components(coloring: HexColoring) -> list[set[Cell]]:
    grid = coloring.grid
    seen: set[Cell] = set()
    out = []
    for start in grid.cells():
        if start in seen:
            continue
        color = coloring.color(start)
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            cur = queue.popleft()
            for nb in grid.neighbors(cur):
                if nb not in seen and coloring.color(nb) == color:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        out.append(comp)
    return out


def required_grid_size(s: int, long_length: int) -> tuple[int, int]:
    """Minimum (rows, cols) for the top-or-long dichotomy."""
    return (long_length, 2 * (s + 2) * long_length + 2 * long_length)


def top_or_long(coloring: HexColoring, s: int, long_length: int):
    """Either a component holding s+1 top cells, or a boundary of length >= long_length.

    Wide enough grids always provide one of the two.  The returned
    witness is re-verified before being handed back; a wide grid where
    both searches and the recheck come up empty is inconsistent data.
    """
    grid = coloring.grid
    rows_needed, cols_needed = required_grid_size(s, long_length)
    if grid.rows < rows_needed or grid.cols < cols_needed:
        raise SizeLimitError(
            f"grid is {grid.rows}x{grid.cols} but the dichotomy needs at least "
            f"{rows_needed}x{cols_needed}"
        )
    for comp in _components(coloring):
        top = sorted(c for c in comp if c[0] == 1)
        if len(top) >= s + 1:
            chosen = tuple(top[: s + 1])
            color = coloring.color(chosen[0])
            again = {chosen[0]}
            queue = deque([chosen[0]])
            while queue:
                cur = queue.popleft()
                for nb in grid.neighbors(cur):
                    if nb not in again and coloring.color(nb) == color:
                        again.add(nb)
                        queue.append(nb)
            if not all(c in again for c in chosen):
                raise InconsistencyError("top cells witness failed its connectivity recheck")
            return TopCellsWitness(color, chosen, len(comp))
    for line in trace_boundary(coloring):
        if line.length >= long_length:
            problems = line.verify(coloring)
            if problems:
                raise InconsistencyError(f"long line failed recheck: {problems[0]}")
            return LongBoundaryWitness(line)
    raise InconsistencyError(
        "grid is large enough yet has neither witness; the coloring data is corrupt"
    )


# ---------------------------------------------------------------------------
# Linking direction tables back to grids.

def direction_layer(table: DirectionTable, layer: int) -> HexColoring:
    """Layer `layer` of a direction table viewed as a colored grid.

    Row r, column p of the grid holds entry (layer, layer + r - 1, p);
    the grid has height + 1 - layer rows and path_len columns.
    """
    if not (1 <= layer <= table.height):
        raise ValueError(f"layer {layer} outside 1..{table.height}")
    rows = table.height - layer + 1
    chi = {}
    for r in range(1, rows + 1):
        for p in range(1, table.path_len + 1):
            chi[(r, p)] = table.direction(layer, layer + r - 1, p)
    return HexColoring(HexGrid(rows, table.path_len), chi)


def boundary_preservation_check(table: DirectionTable) -> CheckReport:
    """Check that layer boundaries persist one layer up, equalities one down.

    For adjacent layers, a grid-edge pair of the deeper-rooted layer and
    its shift in the other layer must agree on equal-versus-unequal in
    the one direction the propagation rules promise: unequal pairs away
    from the first row stay unequal in the next layer, equivalently
    equal pairs there were already equal one layer back.
    """
    violations = []
    checked = 0
    for layer in range(1, table.height):
        low = direction_layer(table, layer)
        high = direction_layer(table, layer + 1)
        for a, b, kind in low.grid.h_edges():
            if a[0] < 2 or b[0] < 2:
                continue
            shifted_a = (a[0] - 1, a[1])
            shifted_b = (b[0] - 1, b[1])
            checked += 1
            if low.color(a) != low.color(b) and high.color(shifted_a) == high.color(shifted_b):
                violations.append((layer, a, b, kind.value))
    return CheckReport(violations, checked)
