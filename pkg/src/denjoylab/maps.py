"""Circle diffeomorphisms represented by their lifts.

A lift is a strictly increasing F: R -> R with F(x + 1) = F(x) + 1; the
circle map it covers is x mod 1 -> F(x) mod 1.  Everything downstream
(rotation numbers, wandering intervals, semi-conjugacies) consumes this
representation, so the invariants here are checked on a grid by
``validate_lift`` rather than trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NotDifferentiableError, RootFindError
from .util import adaptive_simpson, frac

#: default tolerance for pointwise lift evaluations / identity checks
EVAL_TOL = 1e-12
#: default tolerance for inverse evaluation (bisection target; a Newton
#: polish usually lands far below this when a derivative is available)
ROOT_TOL = 1e-10
#: default grid size for lift validation
VALIDATE_GRID = 10_000


@dataclass(frozen=True)
class Arc:
    """Closed circular arc from start to end, counter-clockwise.

    Positions live in [0, 1); ``length`` is the ccw extent and must stay
    in (0, 1) -- a full-circle or empty arc is rejected.
    """

    start: float
    end: float

    def __post_init__(self):
        object.__setattr__(self, "start", float(frac(self.start)))
        object.__setattr__(self, "end", float(frac(self.end)))
        if not 0.0 < self.length < 1.0:
            raise ValueError(
                f"arc length {self.length!r} outside (0, 1): start={self.start}, end={self.end}"
            )

    @property
    def length(self) -> float:
        return float(frac(self.end - self.start))

    def contains(self, point: float, tol: float = 0.0) -> bool:
        """Closed-arc membership, with optional tolerance padding."""
        return bool(frac(point - self.start) <= self.length + tol
                    or frac(self.start - point) <= tol)

    def intersects(self, other: "Arc", tol: float = 0.0) -> bool:
        """True when the closed arcs come within tol of each other."""
        return (frac(other.start - self.start) <= self.length + tol
                or frac(self.start - other.start) <= other.length + tol)

    def midpoint(self) -> float:
        return float(frac(self.start + 0.5 * self.length))


@dataclass(frozen=True)
class CircleDiffeo:
    """Degree-one circle map given by its lift.

    Fields:
        lift_eval: the lift F, accepting floats or numpy arrays.
        lift_derivative: F' when the map is C1, else None.
        degree_offset: always 1 for orientation-preserving degree-one maps;
            kept explicit so validation can state what it checked.
        label: human-readable tag used in reports.
    """

    lift_eval: Callable
    lift_derivative: Callable | None = None
    degree_offset: int = 1
    label: str = ""

    def lift(self, x):
        return self.lift_eval(x)

    def derivative(self, x):
        if self.lift_derivative is None:
            raise NotDifferentiableError(f"map {self.label!r} is not C1: no derivative stored")
        return self.lift_derivative(x)

    def angle(self, x):
        """Circle position of the image of x."""
        return frac(self.lift_eval(x))


def periodic_lift(displacement: Callable, displacement_derivative: Callable | None = None,
                  label: str = "") -> CircleDiffeo:
    """Build a lift F(x) = x + g(frac(x)) from a period-one displacement g.

    Evaluating g on the fractional part makes F(x + 1) = F(x) + 1 hold to
    the last bit, not merely to rounding of a transcendental argument.
    """
    def lift(x):
        u = frac(x)
        return x + displacement(u)

    deriv = None
    if displacement_derivative is not None:
        def deriv(x):  # noqa: F811 - intentional rebinding
            return 1.0 + displacement_derivative(frac(x))

    return CircleDiffeo(lift_eval=lift, lift_derivative=deriv, label=label)


def eval_and_derivative(diffeo: CircleDiffeo, x: float) -> tuple[float, float]:
    """Return (F(x), F'(x)); raises NotDifferentiableError without a derivative."""
    return float(diffeo.lift_eval(x)), float(diffeo.derivative(x))


def inverse_eval(diffeo: CircleDiffeo, y: float, tol: float = ROOT_TOL) -> float:
    """Solve F(x) = y for the lift F.

    Bracketed bisection on [y - 1, y + 1] (valid whenever the displacement
    F(x) - x stays inside (-1, 1), which holds for every catalog map),
    followed by a Newton polish when a derivative is available.
    """
    lo, hi = y - 1.0, y + 1.0
    flo = float(diffeo.lift_eval(lo)) - y
    fhi = float(diffeo.lift_eval(hi)) - y
    # widen once if the displacement convention pushes the root outside
    widen = 0
    while flo > 0.0 or fhi < 0.0:
        lo -= 1.0
        hi += 1.0
        flo = float(diffeo.lift_eval(lo)) - y
        fhi = float(diffeo.lift_eval(hi)) - y
        widen += 1
        if widen > 4:
            raise RootFindError(
                f"no bracket for F(x) = {y!r}: F({lo}) - y = {flo:.3g}, F({hi}) - y = {fhi:.3g}"
            )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = float(diffeo.lift_eval(mid)) - y
        if fmid <= 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    else:
        raise RootFindError(
            f"bisection stalled solving F(x) = {y!r}; bracket [{lo!r}, {hi!r}]"
        )
    x = 0.5 * (lo + hi)
    if diffeo.lift_derivative is not None:
        for _ in range(3):
            fx = float(diffeo.lift_eval(x)) - y
            dfx = float(diffeo.lift_derivative(x))
            if dfx <= 0.0:
                break
            step = fx / dfx
            x -= step
            if abs(step) < 1e-16:
                break
        if not lo - tol <= x <= hi + tol:
            x = 0.5 * (lo + hi)
    return x


def iterate(diffeo: CircleDiffeo, n: int, x: float) -> float:
    """n-fold lift iterate; negative n walks through the inverse."""
    z = float(x)
    if n >= 0:
        for _ in range(n):
            z = float(diffeo.lift_eval(z))
    else:
        for _ in range(-n):
            z = inverse_eval(diffeo, z)
    return z


def orbit_lift(diffeo: CircleDiffeo, x0: float, n: int) -> np.ndarray:
    """Lift orbit [x0, F(x0), ..., F^n(x0)] as one array."""
    out = np.empty(n + 1)
    out[0] = x0
    z = float(x0)
    for k in range(1, n + 1):
        z = float(diffeo.lift_eval(z))
        out[k] = z
    return out


def arc_image(diffeo: CircleDiffeo, arc: Arc) -> Arc:
    """Image of a closed arc under the circle map."""
    return Arc(float(frac(diffeo.lift_eval(arc.start))),
               float(frac(diffeo.lift_eval(arc.start + arc.length))))


@dataclass(frozen=True)
class LiftValidationReport:
    """Grid-check summary for a claimed lift.

    Defects are worst-case absolute violations over the grid; ``passed``
    means every defect is within the requested tolerance.
    """

    grid_size: int
    tol: float
    periodicity_defect: float
    monotonicity_defect: float
    derivative_min: float | None
    increment_defect: float | None

    @property
    def passed(self) -> bool:
        ok = (self.periodicity_defect <= self.tol
              and self.monotonicity_defect <= self.tol)
        if self.derivative_min is not None:
            ok = ok and self.derivative_min > 0.0
        if self.increment_defect is not None:
            ok = ok and self.increment_defect <= self.tol
        return ok


def validate_lift(diffeo: CircleDiffeo, grid_size: int = VALIDATE_GRID,
                  tol: float = 1e-8, quadrature_tol: float = 1e-12) -> LiftValidationReport:
    """Check periodicity, monotonicity and derivative consistency on a grid.

    The derivative/increment check integrates F' over each grid cell with
    adaptive Simpson and compares against F(b) - F(a); it is skipped when
    the map carries no derivative.
    """
    xs = np.linspace(0.0, 1.0, grid_size + 1)
    fx = np.asarray(diffeo.lift_eval(xs), dtype=float)
    fx1 = np.asarray(diffeo.lift_eval(xs + 1.0), dtype=float)
    periodicity = float(np.max(np.abs(fx1 - fx - 1.0)))
    increments = np.diff(fx)
    monotonicity = float(max(0.0, -np.min(increments)))

    derivative_min = None
    increment_defect = None
    if diffeo.lift_derivative is not None:
        dx = np.asarray(diffeo.lift_derivative(xs), dtype=float)
        derivative_min = float(np.min(dx))
        worst = 0.0
        deriv = diffeo.lift_derivative
        for a, b, df in zip(xs[:-1], xs[1:], increments):
            integral = adaptive_simpson(lambda t: float(deriv(t)), float(a), float(b),
                                        tol=quadrature_tol)
            worst = max(worst, abs(integral - float(df)))
        increment_defect = worst

    return LiftValidationReport(
        grid_size=grid_size,
        tol=tol,
        periodicity_defect=periodicity,
        monotonicity_defect=monotonicity,
        derivative_min=derivative_min,
        increment_defect=increment_defect,
    )


def compose(outer: CircleDiffeo, inner: CircleDiffeo, label: str = "") -> CircleDiffeo:
    """Lift composition outer o inner."""
    def lift(x):
        return outer.lift_eval(inner.lift_eval(x))

    deriv = None
    if outer.lift_derivative is not None and inner.lift_derivative is not None:
        def deriv(x):  # noqa: F811
            y = inner.lift_eval(x)
            return outer.lift_derivative(y) * inner.lift_derivative(x)

    return CircleDiffeo(lift_eval=lift, lift_derivative=deriv,
                        label=label or f"({outer.label} o {inner.label})")


def conjugate(h: CircleDiffeo, f: CircleDiffeo, label: str = "") -> CircleDiffeo:
    """The conjugated map h o f o h^{-1} (h must be a diffeomorphism).

    inverse_eval lands in [0, 1), so the integer part stripped from the
    argument is restored afterwards to keep the result a degree-one lift.
    """
    def _lift_inverse(v: float) -> tuple[float, float]:
        z = inverse_eval(h, v)
        return z, round(v - float(h.lift_eval(z)))

    def _lift_one(v: float) -> float:
        z, m = _lift_inverse(v)
        return float(h.lift_eval(f.lift_eval(z))) + m

    def _vectorized(scalar_fn, x):
        if np.ndim(x) == 0:
            return scalar_fn(float(x))
        flat = np.asarray(x, dtype=float)
        out = np.fromiter((scalar_fn(float(v)) for v in flat.ravel()),
                          dtype=float, count=flat.size)
        return out.reshape(flat.shape)

    def lift(x):
        return _vectorized(_lift_one, x)

    deriv = None
    if h.lift_derivative is not None and f.lift_derivative is not None:
        def _deriv_one(v: float) -> float:
            z, _ = _lift_inverse(v)
            fz = f.lift_eval(z)
            return float(h.lift_derivative(fz) * f.lift_derivative(z)
                         / h.lift_derivative(z))

        def deriv(x):  # noqa: F811
            return _vectorized(_deriv_one, x)

    return CircleDiffeo(lift_eval=lift, lift_derivative=deriv,
                        label=label or f"conj({h.label}, {f.label})")
