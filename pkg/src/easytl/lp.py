"""Exact solver for the class-annotation linear program.

The program assigns each of n_t target columns a unit of probability mass
over C classes so that

    minimize    sum_cj D[c, j] * M[c, j]
    subject to  0 <= M[c, j] <= 1
                sum_c M[c, j]  = 1   for every column j
                sum_j M[c, j] >= 1   for every class  c

The constraint matrix is the incidence structure of a bipartite
transportation problem (columns are unit supplies, classes are demands
with lower bound 1, a slack sink absorbs the n_t - C surplus), so it is
totally unimodular and a vertex optimum is integral: every column ends up
wholly assigned to one class.

The solver exploits that structure instead of running a generic simplex.
Routing a column through the slack sink costs that column's row-minimum,
so subtracting per-column minima factors the slack routes out exactly.
What remains is the C mandatory demand units: a minimum-cost matching of
classes to distinct columns on the regret matrix

    R[c, j] = D[c, j] - min_r D[r, j]

solved by successive shortest augmenting paths with dual potentials (one
Dijkstra pass per class). Cost of the optimum: sum_j min_r D[r, j] plus
the matching cost. Every step is deterministic: ties in the per-column
argmin resolve to the lowest class index, and ties inside the path search
resolve to unmatched columns first, then the lowest column index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InfeasibleProblemError, InvalidInputError

# Enumeration guard for the brute-force oracle: C^n_t may not exceed this.
BRUTE_FORCE_MAX_CLASSES = 5
BRUTE_FORCE_MAX_TARGETS = 10

_BRUTE_CHUNK = 1 << 18


@dataclass(frozen=True)
class AnnotationProblem:
    """Cost matrix of shape (num_classes, num_targets) with finite entries >= 0."""

    costs: np.ndarray

    def __post_init__(self):
        costs = np.asarray(self.costs, dtype=np.float64)
        if costs.ndim != 2:
            raise InvalidInputError(f"costs must be 2-D, got ndim={costs.ndim}")
        if costs.shape[0] < 1:
            raise InvalidInputError("costs must have at least one class row")
        if not np.isfinite(costs).all():
            raise InvalidInputError("costs contain non-finite entries")
        if costs.size and costs.min() < 0:
            raise InvalidInputError("costs must be non-negative")
        object.__setattr__(self, "costs", costs)

    @property
    def num_classes(self) -> int:
        return self.costs.shape[0]

    @property
    def num_targets(self) -> int:
        return self.costs.shape[1]


@dataclass(frozen=True)
class AnnotationMatrix:
    """Solved annotation matrix and its objective value.

    ``values`` has shape (num_classes, num_targets); columns sum to one and,
    for solutions produced by :func:`solve`, every row sums to at least one
    and entries are exactly 0 or 1.
    """

    values: np.ndarray
    objective: float


def constraint_violation(problem: AnnotationProblem, annotation: AnnotationMatrix) -> float:
    """Largest violation of the program's constraints by ``annotation``.

    Checks the box bounds, the unit column sums, the row coverage lower
    bounds, and consistency of the stored objective with the cost matrix.
    Feasible exact solutions return a value at floating-point noise level.
    """
    m = annotation.values
    d = problem.costs
    if m.shape != d.shape:
        raise InvalidInputError(f"annotation shape {m.shape} != costs shape {d.shape}")
    box = max(float((-m).max(initial=0.0)), float((m - 1.0).max(initial=0.0)))
    col = float(np.abs(m.sum(axis=0) - 1.0).max(initial=0.0))
    row = float((1.0 - m.sum(axis=1)).max(initial=0.0))
    obj = abs(float((d * m).sum()) - annotation.objective)
    return max(box, col, row, obj, 0.0)


def _check_feasible(problem: AnnotationProblem):
    c, n = problem.num_classes, problem.num_targets
    if n < c:
        raise InfeasibleProblemError(
            f"infeasible: {n} target columns cannot cover {c} classes; "
            f"row coverage needs n_t >= C"
        )


def _shortest_augmenting_paths(regret: np.ndarray) -> np.ndarray:
    """Min-cost matching of every row to a distinct column.

    Successive shortest augmenting paths with dual potentials on the dense
    bipartite graph, processing rows in index order. Requires
    rows <= columns and finite non-negative costs. Returns the matched
    column index per row.
    """
    num_rows, num_cols = regret.shape
    u = np.zeros(num_rows)
    v = np.zeros(num_cols)
    col_of_row = np.full(num_rows, -1, dtype=np.int64)
    row_of_col = np.full(num_cols, -1, dtype=np.int64)

    for cur_row in range(num_rows):
        dist = np.full(num_cols, np.inf)
        parent = np.full(num_cols, -1, dtype=np.int64)
        scanned_col = np.zeros(num_cols, dtype=bool)
        scanned_row = np.zeros(num_rows, dtype=bool)
        min_val = 0.0
        i = cur_row
        sink = -1
        while sink < 0:
            scanned_row[i] = True
            active = ~scanned_col
            cand = min_val + regret[i] - u[i] - v
            better = active & (cand < dist)
            dist[better] = cand[better]
            parent[better] = i

            masked = np.where(active, dist, np.inf)
            lowest = masked.min()
            if not np.isfinite(lowest):
                raise InfeasibleProblemError("augmenting path search exhausted all columns")
            ties = active & (dist == lowest)
            free_ties = ties & (row_of_col < 0)
            j = int(np.argmax(free_ties)) if free_ties.any() else int(np.argmax(ties))
            min_val = lowest
            scanned_col[j] = True
            if row_of_col[j] < 0:
                sink = j
            else:
                i = int(row_of_col[j])

        u[cur_row] += min_val
        others = scanned_row.copy()
        others[cur_row] = False
        idx = np.nonzero(others)[0]
        u[idx] += min_val - dist[col_of_row[idx]]
        sc = np.nonzero(scanned_col)[0]
        v[sc] -= min_val - dist[sc]

        j = sink
        while True:
            i = int(parent[j])
            row_of_col[j] = i
            col_of_row[i], j = j, col_of_row[i]
            if i == cur_row:
                break

    return col_of_row


def _annotation_from_labels(costs: np.ndarray, labels: np.ndarray) -> AnnotationMatrix:
    num_classes, num_targets = costs.shape
    values = np.zeros((num_classes, num_targets))
    cols = np.arange(num_targets)
    values[labels, cols] = 1.0
    objective = float(costs[labels, cols].sum())
    return AnnotationMatrix(values=values, objective=objective)


def solve(problem: AnnotationProblem) -> AnnotationMatrix:
    """Solve the annotation program to optimality at an integral vertex.

    Raises
    ------
    InfeasibleProblemError
        If the problem has fewer target columns than classes.
    """
    _check_feasible(problem)
    costs = problem.costs
    num_classes, num_targets = costs.shape

    base = costs.argmin(axis=0)
    regret = costs - costs[base, np.arange(num_targets)]

    col_of_class = _shortest_augmenting_paths(regret)
    labels = base.copy()
    labels[col_of_class] = np.arange(num_classes)
    return _annotation_from_labels(costs, labels)


def brute_force_solve(problem: AnnotationProblem) -> AnnotationMatrix:
    """Exhaustive oracle: enumerate every integral column-to-class assignment.

    Keeps assignments that cover all classes and returns the cheapest,
    ties resolved by enumeration order. Guarded to C <= 5 and n_t <= 10 so
    the enumeration stays below ~10^7 assignments.
    """
    c, n = problem.num_classes, problem.num_targets
    if c > BRUTE_FORCE_MAX_CLASSES or n > BRUTE_FORCE_MAX_TARGETS:
        raise CapacityError(
            f"instance too large for enumeration: C={c} (max {BRUTE_FORCE_MAX_CLASSES}), "
            f"n_t={n} (max {BRUTE_FORCE_MAX_TARGETS})"
        )
    _check_feasible(problem)
    costs = problem.costs
    total = c**n
    powers = c ** np.arange(n, dtype=np.int64)
    cols = np.arange(n)

    best_cost = np.inf
    best_labels = None
    for lo in range(0, total, _BRUTE_CHUNK):
        ks = np.arange(lo, min(lo + _BRUTE_CHUNK, total), dtype=np.int64)
        assign = (ks[:, None] // powers[None, :]) % c
        covered = np.ones(len(ks), dtype=bool)
        for cls in range(c):
            covered &= (assign == cls).any(axis=1)
        if not covered.any():
            continue
        chunk_costs = costs[assign, cols[None, :]].sum(axis=1)
        chunk_costs[~covered] = np.inf
        k = int(np.argmin(chunk_costs))
        if chunk_costs[k] < best_cost:
            best_cost = float(chunk_costs[k])
            best_labels = assign[k].copy()

    if best_labels is None:
        raise InfeasibleProblemError("no assignment covers every class")
    return _annotation_from_labels(costs, best_labels)
