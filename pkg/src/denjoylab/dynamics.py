"""Orbit limit sets, wandering-interval detection, and the numeric
semi-conjugacy to a rigid rotation.

The semi-conjugacy pairs the sorted orbit of an anchor with the sorted
rotation orbit of the estimated rotation number, anchored so the base
point maps to 0.  When the map really is (semi-)conjugate this is the
Poincare construction sampled at n points; plateau signatures in the
pairing (large domain gap carrying almost no target mass) are the
footprint of wandering intervals.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PeriodicOrbitError
from .maps import Arc, CircleDiffeo, arc_image, inverse_eval, orbit_lift
from .rotation import birkhoff_estimate
from .util import ccw_gap, circle_dist, frac

#: target gap below target_factor/n qualifies a knot pair as flat
PLATEAU_TARGET_FACTOR = 8.0
#: domain gap above domain_factor/n qualifies a knot pair as wide
PLATEAU_DOMAIN_FACTOR = 10.0
#: final orbit gap below this multiple of 1/n reads as dense coverage
DENSE_GAP_FACTOR = 8.0
#: stabilized orbit gap above this multiple of 1/n reads as a Cantor gap
CANTOR_GAP_FACTOR = 20.0
#: relative agreement of the last two gap-trend values for "stabilized"
STABLE_RTOL = 0.05
#: displacement distance to an integer that counts as a closed orbit
PERIOD_TOL = 1e-9


@dataclass(frozen=True)
class OrbitProfile:
    """Finite-orbit approximation of a limit set.

    ``gap_trend`` holds (budget, largest complementary gap) checkpoints;
    ``points`` is the visited set deduplicated at the stated resolution.
    The verdict is one of dense-like, Cantor-like, periodic-like or
    unresolved, judged from the trend at the final budget.
    """

    points: np.ndarray
    max_gap: float
    gap_trend: tuple
    periodicity: int | None
    verdict: str
    direction: str = "forward"


@dataclass(frozen=True)
class WanderingVerdict:
    """Outcome of the pairwise-disjointness scan of an arc's images."""

    kind: str
    pair: tuple | None = None
    min_length: float | None = None


@dataclass(frozen=True)
class SemiConjugacy:
    """Monotone degree-1 knot interpolant sending orbit to rotation orbit.

    ``knots`` pairs each circle position f^k(x0) with its target on the
    rigid orbit of alpha; ``plateaus`` lists (arc, flatness) for maximal
    knot gaps that are wide in the domain yet almost collapsed in the
    target, with flatness the target/domain gap ratio.
    """

    anchor: float
    alpha: float
    knots: tuple
    defect: float
    plateaus: tuple
    _domain: np.ndarray
    _target: np.ndarray

    def interpolant(self, x):
        """Evaluate the piecewise-linear lift h with h(x+1) = h(x) + 1."""
        out = _interp_lift(self._domain, self._target, np.asarray(x, dtype=float))
        return float(out) if np.ndim(x) == 0 else out


def _interp_lift(domain: np.ndarray, target: np.ndarray, arr: np.ndarray):
    """Degree-1 piecewise-linear interpolation through circular knots."""
    base = np.floor(arr)
    u = arr - base
    dom = np.concatenate([domain, [domain[0] + 1.0]])
    tgt = np.concatenate([target, [target[0] + 1.0]])
    shift = np.where(u < dom[0], 1.0, 0.0)
    return np.interp(u + shift, dom, tgt) - shift + base


@dataclass(frozen=True)
class ConjugacyVerdict:
    """Scale-limited conjugacy classification of a circle map."""

    kind: str
    arc: Arc | None = None
    period: int | None = None
    detail: str = ""


def _detect_period(diffeo: CircleDiffeo, budget: int, x0: float = 0.0,
                   burn_in: int | None = None) -> int | None:
    """Smallest q <= budget whose displacement after burn-in is within
    PERIOD_TOL of an integer, or None."""
    if burn_in is None:
        burn_in = min(200, budget // 4)
    start = float(orbit_lift(diffeo, x0, burn_in)[-1]) if burn_in else x0
    tail = orbit_lift(diffeo, start, budget)
    disp = tail[1:] - tail[0]
    off = np.abs(disp - np.round(disp))
    hits = np.nonzero(off <= PERIOD_TOL)[0]
    return int(hits[0]) + 1 if hits.size else None


def interval_orbit(diffeo: CircleDiffeo, arc: Arc, n: int) -> list[Arc]:
    """The first n forward images of the arc, in order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    out = []
    cur = arc
    for _ in range(n):
        cur = arc_image(diffeo, cur)
        out.append(cur)
    return out


def wandering_verdict(diffeo: CircleDiffeo, arc: Arc, n: int,
                      tol: float) -> WanderingVerdict:
    """Scan the arc and its first n images for pairwise disjointness.

    All separated by more than tol reads wandering-up-to-n.  Otherwise,
    images shrunk below tol with no detected period read contracted
    (shrinking without closing certifies wandering at the sampled scale);
    any other clash reports the first overlapping index pair.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    images = [arc] + interval_orbit(diffeo, arc, n)
    first_clash = None
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i].intersects(images[j], tol=tol):
                first_clash = (i, j)
                break
        if first_clash:
            break
    min_length = min(a.length for a in images)
    if first_clash is None:
        return WanderingVerdict("wandering-up-to-n", min_length=min_length)
    if min_length <= tol and _detect_period(diffeo, n, arc.start) is None:
        return WanderingVerdict("contracted", min_length=min_length)
    return WanderingVerdict("overlap-at", pair=first_clash, min_length=min_length)


def _max_circular_gap(points: np.ndarray) -> float:
    s = np.sort(points)
    if s.size < 2:
        return 1.0
    gaps = np.diff(s)
    return float(max(np.max(gaps), 1.0 - s[-1] + s[0]))


def omega_gap_profile(diffeo: CircleDiffeo, x0: float, n: int,
                      resolution: int, direction: str = "forward") -> OrbitProfile:
    """Gap structure of the forward (or backward) orbit of x0.

    Records the largest complementary gap at budgets n/4, n/2 and n, then
    judges the limit-set trichotomy: gaps shrinking below 8/n look dense,
    a gap stabilized far above 1/n looks like a Cantor complement, and a
    near-integer displacement is periodic.
    """
    if n < 10:
        raise ValueError(f"n must be >= 10, got {n}")
    if direction == "forward":
        pts = frac(orbit_lift(diffeo, x0, n))
    elif direction == "backward":
        vals = [x0]
        for _ in range(n):
            vals.append(inverse_eval(diffeo, vals[-1]))
        pts = frac(np.array(vals))
    else:
        raise ValueError(f"direction must be forward or backward, got {direction!r}")

    checkpoints = sorted({max(10, n // 4), max(10, n // 2), n})
    trend = tuple((k, _max_circular_gap(pts[:k + 1])) for k in checkpoints)
    max_gap = trend[-1][1]
    period = _detect_period(diffeo, min(n, 1000), x0) if direction == "forward" else None

    if period is not None:
        verdict = "periodic-like"
    elif max_gap < DENSE_GAP_FACTOR / n:
        verdict = "dense-like"
    elif (len(trend) >= 2
          and abs(trend[-1][1] - trend[-2][1]) <= STABLE_RTOL * trend[-1][1]
          and max_gap > CANTOR_GAP_FACTOR / n):
        verdict = "Cantor-like"
    else:
        verdict = "unresolved"

    scale = 2.0 ** resolution
    dedup = np.unique(np.round(pts * scale) / scale) % 1.0
    return OrbitProfile(points=dedup, max_gap=max_gap, gap_trend=trend,
                        periodicity=period, verdict=verdict, direction=direction)


def build_semiconjugacy(diffeo: CircleDiffeo, x0: float, n: int) -> SemiConjugacy:
    """Construct the n-point Poincare pairing of the orbit of x0 with the
    rigid orbit of the estimated rotation number.

    Orbit positions and targets are each sorted circularly and paired by
    rank, anchored so x0 pairs with 0; that makes the interpolant
    monotone by construction and the knot equivariance defect zero
    whenever the orbit is circularly order-isomorphic to the rigid one.
    """
    if n < 10:
        raise ValueError(f"n must be >= 10, got {n}")
    q = _detect_period(diffeo, min(n, 1000), x0)
    if q is not None:
        raise PeriodicOrbitError(
            q, "rational case; monotone circle-map classification applies, "
               "no semi-conjugacy built")

    lift_orbit = orbit_lift(diffeo, x0, n)
    pts = frac(lift_orbit[:n])
    alpha = birkhoff_estimate(diffeo, x0, n).value
    targets_sorted = np.sort(frac(np.arange(n) * alpha))

    order = np.argsort(pts)
    rank = np.empty(n, dtype=int)
    rank[order] = np.arange(n)
    assigned = targets_sorted[(np.arange(n) - rank[0]) % n]

    domain = pts[order]
    # unwrap the cyclically increasing targets into a monotone array
    wrap_at = int(np.argmin(assigned))
    target_inc = assigned + np.where(np.arange(n) < wrap_at, -1.0, 0.0)

    knot_targets = np.empty(n)
    knot_targets[order] = assigned
    defect = 0.0
    for k in range(n - 1):
        defect = max(defect, circle_dist(knot_targets[k + 1],
                                         knot_targets[k] + alpha))
    h_last = float(_interp_lift(domain, target_inc,
                                np.asarray(frac(lift_orbit[n]))))
    defect = max(defect, circle_dist(h_last, knot_targets[n - 1] + alpha))

    dom_gaps = np.diff(np.concatenate([domain, [domain[0] + 1.0]]))
    tgt_gaps = np.diff(np.concatenate([target_inc, [target_inc[0] + 1.0]]))
    flat = (tgt_gaps < PLATEAU_TARGET_FACTOR / n) & (
        dom_gaps > PLATEAU_DOMAIN_FACTOR / n)

    plateaus = []
    if np.all(flat):
        plateaus.append((Arc(domain[0], domain[0] + 1.0 - 1e-12), 1.0))
    else:
        starts = [i for i in range(n) if flat[i] and not flat[(i - 1) % n]]
        for i in starts:
            j = i
            while flat[(j + 1) % n]:
                j += 1
            members = [(i + k) % n for k in range(j - i + 1)]
            lo = domain[i]
            hi = domain[(j + 1) % n]
            span_d = float(np.sum(dom_gaps[members]))
            span_t = float(np.sum(tgt_gaps[members]))
            plateaus.append((Arc(lo, hi), span_t / span_d))

    knots = tuple((float(p), float(t)) for p, t in zip(pts, knot_targets))
    return SemiConjugacy(anchor=float(x0), alpha=float(alpha), knots=knots,
                         defect=float(defect), plateaus=tuple(plateaus),
                         _domain=domain, _target=target_inc)


def conjugacy_verdict(target_map, budget: int) -> ConjugacyVerdict:
    """Classify a circle map as conjugate-evidence,
    wandering-interval-found, or rational-rotation.

    Accepts either a plain diffeomorphism or a wandering-interval
    construction (whose base map and distinguished minimal-set anchor are
    then used).  Each plateau candidate is confirmed by running the
    disjointness scan on its middle half before being reported; all
    positive conjugacy statements are scale-limited.
    """
    if budget < 100:
        raise ValueError(f"budget must be >= 100, got {budget}")
    diffeo = getattr(target_map, "base", target_map)
    anchor = getattr(target_map, "cantor_anchor", None)
    if anchor is None:
        anchor = 0.1234567891

    try:
        semi = build_semiconjugacy(diffeo, float(anchor), budget)
    except PeriodicOrbitError as err:
        return ConjugacyVerdict("rational-rotation", period=err.period,
                                detail="closed displacement detected")

    for arc, flatness in sorted(semi.plateaus, key=lambda p: -p[0].length):
        quarter = 0.25 * arc.length
        middle = Arc(arc.start + quarter, arc.start + 3.0 * quarter)
        probe = wandering_verdict(diffeo, middle, n=50, tol=1e-12)
        if probe.kind in ("wandering-up-to-n", "contracted"):
            return ConjugacyVerdict(
                "wandering-interval-found", arc=arc,
                detail=f"plateau flatness {flatness:.3e}; images disjoint "
                       f"for 50 steps")
    detail = ("no plateau at this resolution"
              if not semi.plateaus else "plateaus present but unconfirmed")
    return ConjugacyVerdict("conjugate-evidence",
                            detail=detail + "; scale-limited statement")
