"""Exhaustive generation of diagonally convex polyominoes.

A diagonally convex polyomino meets every diagonal i + j = t in one
contiguous run of cells, and its occupied diagonals form an interval,
so listing the run intervals diagonal by diagonal describes each shape
exactly once.  The subtlety is connectivity: cells on a common diagonal
are never edge-adjacent to each other, and a cell on the next diagonal
at column c touches only the cells at columns c and c - 1 of the run
below it.  A growing prefix of runs can therefore fall into several
pieces that a later run reconnects, and a piece with no cell on the
newest run is lost for good.

The walk tracks exactly that: its state is the partition of the newest
run's cells into connected blocks of the prefix.  Extending by a new
run merges every block it touches, spawns a singleton block for each
new cell hanging past the old run, and is discarded when some old
block is left untouched.  A prefix is recorded as a polyomino exactly
when the partition is a single block.  Perimeter is carried
incrementally: a run of b cells sharing a adjacencies with the run
below adds 4b - 2a.

The module also enumerates two reference families the same way: chains
of runs that can only keep or extend their window by one (the directed
shapes, counted by diagonals) and column-convex polyominoes (contiguous
vertical runs overlapping their neighbor), counted by perimeter.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

from .counts import CountTable, NoseClass


class UndefinedForSingleDiagonal(ValueError):
    """A single-diagonal shape has no previous run to define noses."""


class Run(NamedTuple):
    diag: int
    lo: int
    hi: int


_NOSE_BY_COUNT = {0: NoseClass.ZERO, 1: NoseClass.ONE, 2: NoseClass.TWO}


def _overlap(a1, b1, a2, b2):
    return max(0, min(b1, b2) - max(a1, a2) + 1)


def _children(memo, classes, budget):
    """Sorted one-diagonal extensions of a frontier state.

    ``classes`` maps each cell of the newest run (by position) to its
    connected-block id.  A child is a run of b cells whose lowest column
    sits at offset ``rel`` from the old run's lowest column; it is kept
    only if every old block receives a neighbor.  Children are returned
    as (dpe, b, rel, classes2, blocks2, nose) tuples sorted by the
    perimeter increase dpe, so a walk can stop at its budget.
    """
    cached = memo.get(classes)
    if cached is not None:
        return cached
    width = len(classes)
    nblocks = len(set(classes))
    out = []
    for b in range(1, width + budget // 4 + 1):
        for rel in range(1 - b, width + 1):
            hi = rel + b - 1
            # old cell j is touched iff the new run covers column j or j+1
            reached = len(
                {classes[j] for j in range(max(0, rel - 1), min(width - 1, hi) + 1)}
            )
            if reached < nblocks:
                continue
            a = _overlap(rel, hi, 0, width - 1) + _overlap(rel - 1, hi - 1, 0, width - 1)
            dpe = 4 * b - 2 * a
            if dpe > budget:
                continue
            left = max(0, -rel)
            right = max(0, hi - width)
            mid = b - left - right
            classes2 = (
                tuple(range(left))
                + (left,) * mid
                + tuple(range(left + 1, left + 1 + right))
            )
            nose = _NOSE_BY_COUNT[
                (1 if rel <= 0 <= hi else 0) + (1 if rel <= width <= hi else 0)
            ]
            out.append((dpe, b, rel, classes2, left + right + 1, nose))
    out.sort(key=lambda c: (c[0], c[1], c[2]))
    memo[classes] = out
    return out


def _walk_counts(max_perimeter, memo, classes, pe, depth, tally):
    """Depth-first count of all completions of one prefix state."""
    budget = max_perimeter - 4
    stack = [(classes, pe, depth)]
    while stack:
        classes, pe, depth = stack.pop()
        for dpe, b, _rel, classes2, blocks2, nose in _children(memo, classes, budget):
            pe2 = pe + dpe
            if pe2 > max_perimeter:
                break
            if blocks2 == 1:
                key = (pe2, depth + 1, nose, b)
                tally[key] = tally.get(key, 0) + 1
            stack.append((classes2, pe2, depth + 1))


def _root_states(max_perimeter):
    """First-diagonal states: a run of s cells is s isolated blocks."""
    return [
        (tuple(range(s)), 4 * s, 1) for s in range(1, max_perimeter // 4 + 1)
    ]


def _count_task(args):
    max_perimeter, classes, pe, depth = args
    tally = {}
    _walk_counts(max_perimeter, {}, classes, pe, depth, tally)
    return tally


def generate(max_perimeter, workers=None):
    """Census of all diagonally convex polyominoes up to a perimeter.

    Returns a ``CountTable`` keyed by (perimeter, diagonals, nose,
    last_run).  With ``workers`` set, the first-diagonal subtrees run in
    separate processes and their tallies merge in submission order; the
    result is identical to the serial walk.
    """
    tally = {}
    if max_perimeter >= 4:
        tally[(4, 1, None, 1)] = 1
    roots = _root_states(max_perimeter)
    if workers is not None and workers > 1 and roots:
        tasks = [(max_perimeter, classes, pe, depth) for classes, pe, depth in roots]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_task, tasks):
                for key, count in part.items():
                    tally[key] = tally.get(key, 0) + count
    else:
        memo = {}
        for classes, pe, depth in roots:
            _walk_counts(max_perimeter, memo, classes, pe, depth, tally)
    return CountTable(tally)


def iter_shapes(max_perimeter):
    """Yield every diagonally convex polyomino with perimeter <= bound.

    Shapes come out as ``DcpShape`` values in depth-first order; each is
    produced exactly once because the run decomposition is unique.
    """
    if max_perimeter < 4:
        return
    memo = {}
    budget = max_perimeter - 4
    stack = []
    for classes, pe, depth in reversed(_root_states(max_perimeter)):
        runs = ((0, len(classes) - 1),)
        stack.append((classes, pe, runs, len(classes) == 1))
    while stack:
        classes, pe, runs, is_shape = stack.pop()
        if is_shape:
            yield DcpShape.from_intervals(runs)
        last_lo = runs[-1][0]
        for dpe, _b, rel, classes2, blocks2, _nose in _children(memo, classes, budget):
            pe2 = pe + dpe
            if pe2 > max_perimeter:
                break
            lo2 = last_lo + rel
            stack.append(
                (classes2, pe2, runs + ((lo2, lo2 + len(classes2) - 1),), blocks2 == 1)
            )


@dataclass(frozen=True)
class DcpShape:
    """A diagonally convex polyomino as its tuple of diagonal runs.

    Runs are normalized so the first diagonal is 0 and the smallest
    column is 0.  All statistics are recomputed from the cell set, so
    the class double-checks whatever walk produced it.
    """

    runs: tuple

    @classmethod
    def from_intervals(cls, intervals):
        """Build from (lo, hi) column intervals on consecutive diagonals."""
        if not intervals:
            raise ValueError("a shape needs at least one run")
        for lo, hi in intervals:
            if hi < lo:
                raise ValueError("empty run interval")
        shift = min(lo for lo, _ in intervals)
        return cls(
            tuple(
                Run(t, lo - shift, hi - shift)
                for t, (lo, hi) in enumerate(intervals)
            )
        )

    def cells(self):
        """Cell set as (column, row) pairs; a run cell at column c on
        diagonal t sits at row t - c."""
        return frozenset(
            (c, run.diag - c)
            for run in self.runs
            for c in range(run.lo, run.hi + 1)
        )

    def cell_count(self):
        return sum(run.hi - run.lo + 1 for run in self.runs)

    def perimeter(self):
        cells = self.cells()
        adjacent = sum(
            ((i + 1, j) in cells) + ((i, j + 1) in cells) for i, j in cells
        )
        return 4 * len(cells) - 2 * adjacent

    def diagonal_count(self):
        return len(self.runs)

    def last_run_length(self):
        last = self.runs[-1]
        return last.hi - last.lo + 1

    def nose_class(self):
        """Class of the last run against the run below it.

        The two nose cells extend the previous run: one directly above
        its uppermost (lowest-column) cell, one directly right of its
        rightmost cell.  Both land on the last diagonal, at columns lo
        and hi + 1 of the previous run.
        """
        if len(self.runs) == 1:
            raise UndefinedForSingleDiagonal("no previous diagonal")
        prev, last = self.runs[-2], self.runs[-1]
        count = (1 if last.lo <= prev.lo <= last.hi else 0) + (
            1 if last.lo <= prev.hi + 1 <= last.hi else 0
        )
        return _NOSE_BY_COUNT[count]

    def is_connected(self):
        cells = self.cells()
        seen = set()
        frontier = [next(iter(cells))]
        while frontier:
            i, j = frontier.pop()
            if (i, j) in seen or (i, j) not in cells:
                continue
            seen.add((i, j))
            frontier.extend([(i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)])
        return len(seen) == len(cells)

    def is_diagonally_convex(self):
        cells = self.cells()
        by_diag = {}
        for i, j in cells:
            by_diag.setdefault(i + j, set()).add(i)
        diags = sorted(by_diag)
        if diags != list(range(diags[0], diags[-1] + 1)):
            return False
        return all(
            cols == set(range(min(cols), max(cols) + 1))
            for cols in by_diag.values()
        )

    def is_directed(self):
        """True when one cell on the first diagonal reaches every cell
        by north and east steps inside the shape."""
        if self.runs[0].hi != self.runs[0].lo:
            return False
        cells = self.cells()
        root = (self.runs[0].lo, self.runs[0].diag - self.runs[0].lo)
        seen = set()
        frontier = [root]
        while frontier:
            i, j = frontier.pop()
            if (i, j) in seen or (i, j) not in cells:
                continue
            seen.add((i, j))
            frontier.extend([(i + 1, j), (i, j + 1)])
        return len(seen) == len(cells)

    def canonical_text(self):
        return ";".join("%d:%d-%d" % run for run in self.runs)


def directed_counts_by_diagonals(max_diagonals):
    """Exhaustive count of directed shapes with up to so many diagonals.

    Directed means every run fits inside the window of the one below it
    extended one column to the right, starting from a single cell; each
    new cell then has a predecessor to the south or west.  The walk is
    explicit, so keep the depth small; the count grows geometrically.
    """
    out = {}

    def walk(width, depth):
        out[depth] = out.get(depth, 0) + 1
        if depth == max_diagonals:
            return
        for rel in range(0, width + 1):
            for b in range(1, width - rel + 2):
                walk(b, depth + 1)

    if max_diagonals >= 1:
        walk(1, 1)
    return dict(sorted(out.items()))


def column_convex_counts(max_perimeter):
    """Perimeter census of column-convex polyominoes.

    Columns are contiguous vertical runs; adjacent columns must share at
    least one row.  A column of b cells overlapping its neighbor in v
    rows adds 2b + 2 - 2v to the perimeter, which is always positive,
    so the walk is bounded by the perimeter alone.
    """
    counts = {}
    if max_perimeter < 4:
        return counts
    budget = max_perimeter - 4
    memo = {}

    def children(width):
        cached = memo.get(width)
        if cached is not None:
            return cached
        out = []
        for b in range(1, width + (budget - 2) // 2 + 2):
            for rel in range(1 - b, width):
                v = min(width - 1, rel + b - 1) - max(0, rel) + 1
                dpe = 2 * b + 2 - 2 * v
                if dpe <= budget:
                    out.append((dpe, b))
        out.sort()
        memo[width] = out
        return out

    stack = []
    for s in range(1, (max_perimeter - 2) // 2 + 1):
        pe = 2 * s + 2
        if pe <= max_perimeter:
            counts[pe] = counts.get(pe, 0) + 1
            stack.append((s, pe))
    while stack:
        width, pe = stack.pop()
        for dpe, b in children(width):
            pe2 = pe + dpe
            if pe2 > max_perimeter:
                break
            counts[pe2] = counts.get(pe2, 0) + 1
            stack.append((b, pe2))
    return dict(sorted(counts.items()))
