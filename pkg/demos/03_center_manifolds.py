"""Enumerating holomorphic center manifolds of a 3d holomorphic system.

Each purely imaginary eigenvalue direction is a chart: graphing the other
coordinates over it with z_k = t u_k(t) turns invariance into a
Briot-Bouquet system whose trichotomy counts the manifolds tangent to that
axis.  Every manifold carries an isochronous family of periodic orbits with
period 2*pi/|omega|.
"""

from fractions import Fraction

from bbcenter import (ExactComplex, HoloSystem, MultiSeries, SmallMatrix,
                      enumerate_centers, manifold_residual)


def ec(re, im=0):
    return ExactComplex(Fraction(re), Fraction(im))


I = ec(0, 1)
NAMES = "xyz"


def describe(h, title, order=10):
    print(title)
    for r in enumerate_centers(h, order=order):
        chart = NAMES[r.chart] if r.chart is not None else "origin"
        line = (f"  [{chart}] {r.multiplicity:8s} {r.tangency:22s} "
                f"period 2*pi*{r.period_factor}  ({r.theorem_tag})")
        print(line)
        if r.obstructions:
            for k, v in sorted(r.obstructions.items()):
                print(f"        witness {k} = {v}")
        if r.graphs and any(not g.is_zero() for g in r.graphs.values()):
            for k, g in sorted(r.graphs.items()):
                if not g.is_zero():
                    print(f"        {NAMES[k]}(t) = {g.pretty(('t',))}")
        if r.multiplicity != "none" and r.chart is not None:
            ok = all(row.is_zero() for row in manifold_residual(h, r).values())
            print(f"        exact invariance residual zero: {ok}")
    print()


# --- a resonant eigenvalue pair: the obstruction decides -----------------------

# x' = ix + ..., y' = 2iy + b*x^2, z' = z: the ratio 2 makes the x-chart
# resonant, and the x^2 coefficient in the middle equation is the obstruction.
for b in (1, 0):
    linear = SmallMatrix.diagonal([I, ec(0, 2), ec(1)])
    rows = [MultiSeries.zero(3, 10),
            MultiSeries(3, 10, {(2, 0, 0): ec(b)} if b else {}),
            MultiSeries.zero(3, 10)]
    describe(HoloSystem(linear, rows),
             f"x' = ix, y' = 2iy + {b}*x^2, z' = z")

# --- a Jordan block kills its chart ---------------------------------------------

jordan = SmallMatrix([[I, ec(1), ec(0)], [ec(0), I, ec(0)],
                      [ec(0), ec(0), ec(1)]])
rows = [MultiSeries(3, 10, {(0, 2, 0): ec(Fraction(1, 4))}),
        MultiSeries(3, 10, {(2, 0, 0): ec(Fraction(1, 8))}),
        MultiSeries.zero(3, 10)]
describe(HoloSystem(jordan, rows),
         "x' = ix + y + ..., y' = iy + ..., z' = z   (2x2 Jordan block)")

# --- all eigenvalues equal: an isochronous center at the origin ------------------

equal = SmallMatrix.diagonal([I, I, I])
rows = [MultiSeries(3, 10, {(0, 2, 0): ec(Fraction(1, 4))}),
        MultiSeries(3, 10, {(1, 0, 1): ec(Fraction(-1, 8))}),
        MultiSeries(3, 10, {(2, 0, 0): ec(Fraction(1, 8))})]
describe(HoloSystem(equal, rows),
         "all eigenvalues i, diagonalizable, quadratic perturbation")
