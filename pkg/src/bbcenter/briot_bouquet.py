"""Formal solutions of Briot-Bouquet systems x y' = f(x, y) and the full
resonant trichotomy.

A system is stored split: the linear-in-y matrix A, the linear-in-x column,
and the nonlinear remainder (total degree >= 2).  Holomorphic solutions
through the singular point are controlled by the eigenvalues of A:

* no positive integer eigenvalue: the order-k coefficient equations
  (k I - A) c_k = r_k are all uniquely solvable, giving one solution;
* positive integer eigenvalues: a cascade of shearing substitutions
  u -> x (u + shift) lowers every eigenvalue by one per step, and at each
  step whose matrix becomes singular at order one the linear-in-x column is
  the exact obstruction.  A nonzero obstruction on an unsolvable row kills
  all solutions; a solvable singular step contributes free parameters.

Every decision in this module is an exact zero test; nothing is tolerant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (BlockedStep, DimensionMismatch, OrderTooSmall,
                     ResonantEigenvalue)
from .series import EC_ZERO, ExactComplex, MultiSeries
from .spectra import SmallMatrix, solve_affine

KIND_NO_SOLUTION = "no_solution"
KIND_UNIQUE = "unique"
KIND_FAMILY = "family"

# obstruction constants are named by (resonance ordinal, row)
_OBSTRUCTION_NAMES = (("pbar", "rbar"), ("phat", "rhat"))


class BBSystem:
    """A Briot-Bouquet system x y_i' = p_i x + (A y)_i + f_i(x, y).

    ``nonlinear`` holds one series per dependent variable in the variables
    (x, y_1, ..., y_n); all its terms have total degree >= 2, so f(0) = 0 and
    the linear data live entirely in ``A`` and ``px``.
    """

    __slots__ = ("A", "px", "nonlinear")

    def __init__(self, A, px, nonlinear):
        if not isinstance(A, SmallMatrix):
            A = SmallMatrix(A)
        n = A.dim
        px = tuple(ExactComplex.coerce(v) for v in px)
        nonlinear = tuple(nonlinear)
        if len(px) != n or len(nonlinear) != n:
            raise DimensionMismatch("px and nonlinear must have one entry per variable")
        for s in nonlinear:
            if s.nvars != n + 1:
                raise DimensionMismatch(
                    f"nonlinear series must have {n + 1} variables, got {s.nvars}")
            if s.terms and s.min_degree() < 2:
                raise ValueError("nonlinear part contains terms of degree < 2")
        self.A = A
        self.px = px
        self.nonlinear = nonlinear

    @property
    def n(self):
        return self.A.dim

    @property
    def order(self):
        return min(s.order for s in self.nonlinear)

    def __repr__(self):
        return f"<BBSystem n={self.n} order={self.order}>"


@dataclass(frozen=True)
class FormalSolution:
    """A solution germ y_i(x) = sum_k c_k[i] x^k, with its free-parameter slots.

    ``coefficients[k - 1][i]`` is the order-k coefficient of variable i along
    the representative (every free parameter set to zero).  ``free_parameters``
    lists (order, variable, id) slots in ascending order.
    """

    order: int
    coefficients: tuple
    free_parameters: tuple
    representative: tuple

    def coefficient(self, k, i):
        return self.coefficients[k - 1][i]


@dataclass(frozen=True)
class BBClassification:
    """Trichotomy verdict: no solution / unique / infinite family.

    ``obstructions`` records the linear-in-x constants read at each resonant
    level of the cascade, as exact values, so a NoSolution verdict is
    auditable.  ``blocking_order`` is the order at which solvability failed.
    """

    kind: str
    obstructions: dict
    solution: FormalSolution | None
    blocking_order: int | None = None


@dataclass(frozen=True)
class ReductionStep:
    """One eigenvalue-lowering step of the cascade."""

    system: BBSystem
    shifts: tuple
    free_columns: tuple
    resonant: bool
    px_entry: tuple


# ---------------------------------------------------------------------------
# univariate helpers (solution series are plain {order: coefficient} maps)

def _poly_mul(a, b, upto):
    out = {}
    for ka, ca in a.items():
        if ka > upto:
            continue
        for kb, cb in b.items():
            k = ka + kb
            if k > upto:
                continue
            prev = out.get(k)
            prod = ca * cb
            out[k] = prod if prev is None else prev + prod
    return {k: c for k, c in out.items() if not c.is_zero()}


def _compose_row(series, sols, upto):
    """Coefficients of f(x, y_1(x), ..., y_n(x)) through x^upto.

    ``sols`` are zero-constant univariate maps, so a term of total degree d
    only contributes from order d on and the truncation is exact.
    """
    pow_cache = [{} for _ in sols]

    def power(j, e):
        cache = pow_cache[j]
        if e not in cache:
            if e == 1:
                cache[1] = sols[j]
            else:
                cache[e] = _poly_mul(power(j, e - 1), sols[j], upto)
        return cache[e]

    out = {}
    for exps, coeff in series.terms.items():
        if sum(exps) > upto:
            continue
        prod = {exps[0]: coeff}
        for j, e in enumerate(exps[1:]):
            if e:
                prod = _poly_mul(prod, power(j, e), upto)
                if not prod:
                    break
        for k, c in prod.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
    return out


def _charpoly_at(A, k):
    """det(k I - A), exactly."""
    coeffs = A.charpoly()
    acc = EC_ZERO
    x = ExactComplex(k)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def formal_solve_nonresonant(bb, order):
    """Unique solution germ when no eigenvalue of A is a positive integer <= order.

    Solves (k I - A) c_k = r_k for k = 1..order, where r_k collects the
    linear-in-x column at k = 1 and the nonlinear image of all lower orders.
    """
    n = bb.n
    for k in range(1, order + 1):
        if _charpoly_at(bb.A, k).is_zero():
            raise ResonantEigenvalue(
                f"{k} is an eigenvalue of the linear part; use classify()")
    sols = [{} for _ in range(n)]
    table = []
    for k in range(1, order + 1):
        rhs = []
        for i in range(n):
            r = bb.px[i] if k == 1 else EC_ZERO
            composed = _compose_row(bb.nonlinear[i], sols, k)
            r = r + composed.get(k, EC_ZERO)
            rhs.append(r)
        matrix = SmallMatrix.identity(n) * ExactComplex(k) - bb.A
        solved = solve_affine(matrix.rows, rhs)
        assert solved is not None and not solved[1]
        c = solved[0]
        for i in range(n):
            if not c[i].is_zero():
                sols[i][k] = c[i]
        table.append(tuple(c))
    reps = tuple(
        MultiSeries(1, order, {(k,): v for k, v in sols[i].items()})
        for i in range(n))
    return FormalSolution(order, tuple(table), (), reps)


def reduction_step(bb):
    """One step of the eigenvalue-lowering cascade.

    The shifts solve the order-one equations (I - A) c = px exactly; when that
    system is singular but consistent the free components are set to zero and
    reported, and when it is inconsistent the step is blocked and the
    linear-in-x column is the non-existence witness.
    """
    n = bb.n
    matrix = SmallMatrix.identity(n) - bb.A
    solved = solve_affine(matrix.rows, bb.px)
    if solved is None:
        raise BlockedStep("resonant order with nonvanishing obstruction", bb.px)
    shifts, free_cols, _ = solved
    sheared = []
    for i in range(n):
        g = bb.nonlinear[i]
        for j in range(n):
            g = g.shear_substitute(j + 1, shifts[j])
        sheared.append(g.divide_by_x())
    new_px = []
    new_nonlinear = []
    for i, g in enumerate(sheared):
        px_exps = (1,) + (0,) * n
        new_px.append(g.coeff(px_exps))
        kept = {}
        for exps, coeff in g.terms.items():
            d = sum(exps)
            if d >= 2:
                kept[exps] = coeff
            elif d == 1 and exps[0] == 0:
                # a pure-y linear term cannot arise: every transformed term
                # keeps at least one power of x after the division
                raise AssertionError("shear produced a linear dependent-variable term")
        new_nonlinear.append(MultiSeries(n + 1, g.order, kept))
    new_A = bb.A - SmallMatrix.identity(n)
    return ReductionStep(
        system=BBSystem(new_A, new_px, new_nonlinear),
        shifts=shifts,
        free_columns=free_cols,
        resonant=bool(free_cols),
        px_entry=bb.px,
    )


def _positive_integer_eigenvalues(A, order):
    """Positive integers k <= order that are eigenvalues of A, found by exact
    determinant scan (no spectrum certification needed)."""
    return [k for k in range(1, order + 1) if _charpoly_at(A, k).is_zero()]


def classify(bb, order=12):
    """Full trichotomy of a Briot-Bouquet system, exactly.

    Dispatches on the positive-integer eigenvalues of A.  With none, the
    unique solution comes straight from the non-resonant recursion.  Otherwise
    the cascade runs one step per order up to the largest integer eigenvalue,
    reading the obstruction constants at every singular step; the surviving
    system is solved non-resonantly and the solution is lifted back through
    the shears.

    The step equations are solved affinely in whatever coordinates the system
    arrives in, so upper-triangular and Jordan linear parts (with the nilpotent
    parameter kept symbolic) need no preliminary change of basis; the verdict
    and the free-parameter count are basis independent.
    """
    integers = _positive_integer_eigenvalues(bb.A, order)
    if not integers:
        return BBClassification(KIND_UNIQUE, {}, formal_solve_nonresonant(bb, order))
    if bb.n > 2:
        raise DimensionMismatch(
            "the resonant cascade is implemented for systems with n <= 2")
    top = max(integers)
    if order < top + 2:
        raise OrderTooSmall(
            f"order {order} cannot expose the resonance at order {top}; "
            f"need at least {top + 2}")

    current = bb
    obstructions = {}
    slots = []
    shifts_stack = []
    resonances = 0
    for level in range(top):
        try:
            step = reduction_step(current)
        except BlockedStep as blocked:
            names = _OBSTRUCTION_NAMES[min(resonances, 1)]
            for i, value in enumerate(blocked.px):
                obstructions[names[i]] = value
            return BBClassification(
                KIND_NO_SOLUTION, obstructions, None, blocking_order=level + 1)
        if step.resonant:
            names = _OBSTRUCTION_NAMES[min(resonances, 1)]
            for i, value in enumerate(step.px_entry):
                obstructions[names[i]] = value
            resonances += 1
            for col in step.free_columns:
                slots.append((level + 1, col, f"c{level + 1}[{col}]"))
        shifts_stack.append(step.shifts)
        current = step.system

    tail = formal_solve_nonresonant(current, order - top)
    reps = list(tail.representative)
    for shifts in reversed(shifts_stack):
        lifted = []
        for i, rep in enumerate(reps):
            terms = {(k + 1,): c for (k,), c in rep.terms.items()}
            if not shifts[i].is_zero():
                terms[(1,)] = terms.get((1,), EC_ZERO) + shifts[i]
            lifted.append(MultiSeries(1, rep.order + 1, terms))
        reps = lifted
    table = tuple(
        tuple(reps[i].coeff((k,)) for i in range(bb.n))
        for k in range(1, order + 1))
    solution = FormalSolution(order, table, tuple(slots), tuple(reps))
    kind = KIND_FAMILY if slots else KIND_UNIQUE
    return BBClassification(kind, obstructions, solution)


def residual(bb, solution, order=None):
    """x y'(x) - f(x, y(x)) along the representative, one exact univariate
    series per equation.  All coefficients through the requested order vanish
    exactly iff the representative really solves the system."""
    if order is None:
        order = solution.order
    if order > solution.order:
        raise ValueError("cannot check a residual beyond the solved order")
    n = bb.n
    reps = [rep.truncate(order) if rep.order > order else rep
            for rep in solution.representative]
    x = MultiSeries.variable(1, order, 0)
    subs = [x] + [rep.with_order(order) for rep in reps]
    out = []
    for i in range(n):
        lhs = reps[i].with_order(order).euler_derivative(0)
        rhs = x * bb.px[i]
        for j in range(n):
            rhs = rhs + reps[j].with_order(order) * bb.A.entry(i, j)
        rhs = rhs + bb.nonlinear[i].substitute(subs, order)
        out.append(lhs - rhs)
    return tuple(out)
