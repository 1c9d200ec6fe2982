"""Rays, beams, and the exact action of an automorphism on the dimension data.

A ray is a cylinder set fixing all coordinates up to some level; we represent
its defining left tail as an eventually periodic edge sequence (cycle word plus
finite transient, with the last transient edge sitting at the level).  Beams
are finite unions of distinct rays at a common level.  The theta map sends a
beam to an exact rational vector inside the eventual range, and pushing
canonical zero-rays through a certified automorphism yields the automorphism's
matrix on that space.  The verifiers at the bottom evaluate the entropy and
spectral-radius inequalities with certified interval right-hand sides.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import ratmat
from .codes import resolve_budget
from .coding_range import (
    CodingRangeProfile,
    lyapunov_bounds,
    w_values,
)
from .errors import (
    InconsistentSystem,
    InternalInvariantViolation,
    NonPositiveRatio,
    PreconditionFailed,
    ReducibleInput,
    ShiftMismatch,
    WindowBudgetExceeded,
)
from .shifts import DEFAULT_TOL, dimension_data, perron_data


def _primitive_root(cycle):
    p = len(cycle)
    for d in range(1, p + 1):
        if p % d == 0 and cycle == cycle[:d] * (p // d):
            return cycle[:d]
    raise AssertionError("unreachable")


def _canonical_tail(cycle, transient):
    """Unique (cycle, transient) normal form of an eventually periodic tail.

    The cycle is reduced to its primitive root, then transient edges that
    merely continue the periodic pattern are absorbed by rotating the cycle.
    Two representations describe the same tail iff their normal forms agree.
    """
    r = _primitive_root(tuple(cycle))
    t = tuple(transient)
    while t and t[0] == r[0]:
        r = r[1:] + r[:1]
        t = t[1:]
    return r, t


@dataclass(frozen=True, eq=False)
class Ray:
    """Cylinder set fixing coordinates (-inf, level]: the tail repeats
    ``cycle`` leftward forever and finishes with ``transient``, whose last
    edge sits at coordinate ``level``."""

    shift: object
    level: int
    cycle: tuple
    transient: tuple

    def __post_init__(self):
        cycle = tuple(self.cycle)
        transient = tuple(self.transient)
        object.__setattr__(self, "cycle", cycle)
        object.__setattr__(self, "transient", transient)
        if not cycle:
            raise PreconditionFailed("ray cycle must be nonempty")
        # doubling the cycle checks the wrap-around adjacency as well
        self.shift.check_admissible(cycle + cycle + transient)
        object.__setattr__(self, "_key", _canonical_tail(cycle, transient))

    @property
    def end_state(self):
        last = self.transient[-1] if self.transient else self.cycle[-1]
        return self.shift.edges[last][1]

    def tail_edge(self, i):
        """Edge at coordinate i <= level of the defining tail."""
        if i > self.level:
            raise PreconditionFailed(
                f"coordinate {i} beyond ray level {self.level}"
            )
        back = self.level - i
        q = len(self.transient)
        if back < q:
            return self.transient[q - 1 - back]
        back -= q
        p = len(self.cycle)
        return self.cycle[p - 1 - (back % p)]

    def word(self, lo, hi):
        return tuple(self.tail_edge(i) for i in range(lo, hi + 1))

    def __eq__(self, other):
        if not isinstance(other, Ray):
            return NotImplemented
        return (
            self.shift == other.shift
            and self.level == other.level
            and self._key == other._key
        )

    def __hash__(self):
        return hash((self.shift, self.level, self._key))

    def __repr__(self):
        return (
            f"Ray(level={self.level}, cycle={self.cycle}, "
            f"transient={self.transient})"
        )


@dataclass(frozen=True)
class Beam:
    """Disjoint union of distinct rays at a common level."""

    level: int
    rays: tuple

    def __post_init__(self):
        rays = tuple(self.rays)
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise PreconditionFailed("beam must contain at least one ray")
        shift = rays[0].shift
        for r in rays:
            if r.level != self.level:
                raise PreconditionFailed("beam rays must share the beam level")
            if r.shift != shift:
                raise ShiftMismatch("beam rays live on different shifts")
        if len({r._key for r in rays}) != len(rays):
            raise PreconditionFailed("beam rays must be pairwise distinct")

    @property
    def shift(self):
        return self.rays[0].shift

    @property
    def count_vector(self):
        """Number of rays ending at each state, as a row vector."""
        v = [0] * self.shift.k
        for r in self.rays:
            v[r.end_state] += 1
        return tuple(v)


def canonical_zero_ray(shift, state, variant=0):
    """Deterministic 0-ray ending at ``state``.

    Candidate cycles through the state are enumerated by (length, lex) order
    of their edge words and deduplicated by tail equality; ``variant`` picks
    the variant-th distinct tail (0 = canonical, 1 = the alternative used by
    well-definedness tests).
    """
    found = []
    seen = set()
    limit = max(2 * shift.k, 4) + variant
    for length in range(1, limit + 1):
        for w in shift.words(length, start_state=state):
            if shift.edges[w[-1]][1] != state:
                continue
            ray = Ray(shift, 0, w, ())
            if ray._key in seen:
                continue
            seen.add(ray._key)
            found.append(ray)
            if len(found) > variant:
                return found[variant]
    raise InternalInvariantViolation(
        f"fewer than {variant + 1} distinct cycles through state {state}"
    )


def refine_ray(ray, to_level):
    """Present a ray as a beam at a deeper level by enumerating all
    admissible extensions of its tail."""
    if to_level < ray.level:
        raise PreconditionFailed("can only refine to a deeper level")
    exts = ray.shift.words(to_level - ray.level, start_state=ray.end_state)
    rays = tuple(
        Ray(ray.shift, to_level, ray.cycle, ray.transient + ext)
        for ext in exts
    )
    return Beam(level=to_level, rays=rays)


def theta(beam, dim):
    """Exact rational image of the beam's class in the eventual range:
    the count vector at level m is pushed through A^k and delta^-(k+m)."""
    v = tuple(Fraction(x) for x in beam.count_vector)
    afrac = ratmat.frac_matrix(dim._matrix)
    w = ratmat.vec_mat(v, ratmat.mat_pow(afrac, dim.k))
    return dim.apply_delta_power(w, -(dim.k + beam.level))


def unstable_measure(beam, perron):
    """Measure of the beam: sum over rays of lambda^-level weighted by the
    right Perron eigenvector at the end state."""
    lam = perron.lambda_
    v = beam.count_vector
    total = sum(v[i] * perron.v_right[i] for i in range(len(v)))
    return lam ** (-beam.level) * total


def apply_automorphism_to_ray(auto, n, ray, budget=None):
    """Image of a 0-ray under the n-th power of a certified automorphism,
    as a beam at level -W^-(n, phi^-1).

    Output coordinates far enough left inherit the input tail's period; the
    finitely many undetermined coordinates are enumerated over all admissible
    right extensions of the tail, and distinct output words become the rays.
    """
    shift = auto.shift
    if ray.shift != shift:
        raise ShiftMismatch("ray does not live on the automorphism's shift")
    if ray.level != 0:
        raise PreconditionFailed("image beams are computed from 0-rays")
    if n == 0:
        return Beam(level=0, rays=(ray,))
    budget = resolve_budget(budget)
    code = auto.power(n)
    mem, ant = code.memory, code.anticipation
    wv = w_values(auto, n, budget=budget)
    level_out = -wv.minus_inv
    w_fwd = wv.minus
    p = len(ray.cycle)
    q = len(ray.transient)
    # outputs at j <= -ant - q read inputs from the pure-cycle zone and are
    # p-periodic; keep the cut strictly left of the variable region too
    cut = min(-ant - q, w_fwd - 1)
    ext_len = max(0, level_out + ant)
    needed = shift.word_count(ext_len)
    if needed > budget:
        raise WindowBudgetExceeded(needed=needed, budget=budget)

    def output_segment(ext):
        def edge_at(i):
            return ray.tail_edge(i) if i <= 0 else ext[i - 1]

        seg = []
        for j in range(cut - p + 1, level_out + 1):
            window = tuple(edge_at(i) for i in range(j - mem, j + ant + 1))
            seg.append(code.rule[window])
        return tuple(seg)

    fixed_len = p + (w_fwd - 1 - cut)
    fixed_part = None
    variable_words = []
    seen = set()
    for ext in shift.words(ext_len, start_state=ray.end_state):
        seg = output_segment(ext)
        if fixed_part is None:
            fixed_part = seg[:fixed_len]
        elif seg[:fixed_len] != fixed_part:
            raise InternalInvariantViolation(
                "output coordinates left of W^- varied with the extension"
            )
        word = seg[fixed_len:]
        if word not in seen:
            seen.add(word)
            variable_words.append(word)
    out_cycle = fixed_part[:p]
    base = fixed_part[p:]
    rays = [
        Ray(shift, level_out, out_cycle, base + word)
        for word in variable_words
    ]
    rays.sort(key=lambda r: r._key)
    return Beam(level=level_out, rays=tuple(rays))


@dataclass(frozen=True)
class DimensionAction:
    """Exact matrix of an automorphism on the eventual-range basis (rows act
    by right multiplication), with its numeric invariants."""

    S_phi: tuple
    lambda_phi: float
    rho: float
    inert: bool
    order_if_finite: object


def _perron_left_coords(dim, tol):
    """Numeric left Perron direction of A, in eventual-range coordinates."""
    a = dim._matrix
    k = dim.k
    u = [1.0 / k] * k
    for _ in range(5000):
        # power iteration on A + I keeps periodic matrices convergent
        nxt = [sum(u[i] * a[i][j] for i in range(k)) + u[j] for j in range(k)]
        norm = sum(abs(x) for x in nxt)
        nxt = [x / norm for x in nxt]
        delta = sum(abs(nxt[j] - u[j]) for j in range(k))
        u = nxt
        if delta <= 1e-15:
            break
    return [u[p] for p in dim.pivots]


def lambda_phi_of(action, dim, perron, tol=DEFAULT_TOL):
    """Rayleigh ratio of the action on the numeric Perron direction of the
    restricted multiplication map; positive by the theory."""
    c = _perron_left_coords(dim, tol)
    d = len(c)
    s = [[float(x) for x in row] for row in action.S_phi]
    cs = [sum(c[i] * s[i][j] for i in range(d)) for j in range(d)]
    denom = sum(x * x for x in c)
    lam = sum(cs[j] * c[j] for j in range(d)) / denom
    resid = sum(abs(cs[j] - lam * c[j]) for j in range(d))
    scale = max(1.0, abs(lam)) * sum(abs(x) for x in c)
    if resid > max(tol, 1e-8) * scale:
        raise InternalInvariantViolation(
            "Perron direction is not an eigenvector of the action"
        )
    if lam <= 0:
        raise NonPositiveRatio(f"measure multiplier {lam} must be positive")
    return lam


def _spectrum(s_phi):
    """Distinct eigenvalues of the exact matrix, via its squarefree
    characteristic polynomial."""
    cp = ratmat.char_poly(s_phi)
    coeffs = [Fraction(c) for c in cp]
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    reduced = ratmat.squarefree_part(ints)
    return [complex(z) for z in np.roots([float(c) for c in reduced])]


def dimension_matrix(auto, dim=None, perron=None, tol=DEFAULT_TOL, budget=None):
    """Solve for the exact matrix of the automorphism on the eventual range.

    For each state the canonical 0-ray's class and its image class give one
    linear condition; the stacked conditions determine the matrix, and the
    redundant conditions double as a well-definedness check.
    """
    shift = auto.shift
    if not shift.irreducible:
        raise ReducibleInput("dimension action needs an irreducible shift")
    if not shift.positive_entropy:
        raise PreconditionFailed("dimension action needs positive entropy")
    if dim is None:
        dim = dimension_data(shift)
    if perron is None:
        perron = perron_data(shift, tol=tol)
    k = shift.k
    d = dim.d
    c_rows = []
    y_rows = []
    for state in range(k):
        ray = canonical_zero_ray(shift, state)
        c_rows.append(dim.coords(theta(Beam(level=0, rays=(ray,)), dim)))
        image = apply_automorphism_to_ray(auto, 1, ray, budget=budget)
        y_rows.append(dim.coords(theta(image, dim)))
    # pick d independent condition rows, then check the rest for consistency
    chosen = []
    for i in range(k):
        trial = chosen + [i]
        reduced, _ = ratmat.rref([c_rows[j] for j in trial])
        if len(reduced) == len(trial):
            chosen = trial
        if len(chosen) == d:
            break
    if len(chosen) < d:
        raise InternalInvariantViolation(
            "zero-ray classes do not span the eventual range"
        )
    c_sq = tuple(c_rows[i] for i in chosen)
    y_sq = tuple(y_rows[i] for i in chosen)
    s_phi = ratmat.mat_mul(ratmat.inverse(c_sq), y_sq)
    for i in range(k):
        if ratmat.vec_mat(c_rows[i], s_phi) != tuple(y_rows[i]):
            raise InconsistentSystem(
                f"image of state {i}'s ray class contradicts the solved matrix"
            )
    delta = dim.delta_restricted
    if ratmat.mat_mul(s_phi, delta) != ratmat.mat_mul(delta, s_phi):
        raise InternalInvariantViolation(
            "action does not commute with the multiplication map"
        )
    try:
        ratmat.inverse(s_phi)
    except InternalInvariantViolation:
        raise InternalInvariantViolation("dimension action must be invertible")
    ident = ratmat.identity(d)
    inert = s_phi == ident
    order = None
    power = s_phi
    for j in range(1, 65):
        if power == ident:
            order = j
            break
        power = ratmat.mat_mul(power, s_phi)
    rho = max(abs(z) for z in _spectrum(s_phi))
    action = DimensionAction(
        S_phi=s_phi,
        lambda_phi=1.0,
        rho=float(rho),
        inert=inert,
        order_if_finite=order,
    )
    lam = lambda_phi_of(action, dim, perron, tol=tol)
    return DimensionAction(
        S_phi=s_phi,
        lambda_phi=float(lam),
        rho=float(rho),
        inert=inert,
        order_if_finite=order,
    )


def verify_entropy_bound(auto, entropy_estimate, action, tol=DEFAULT_TOL):
    """|log lambda_phi| against a certified lower bound on the automorphism's
    entropy; a lower bound can confirm but never falsify."""
    lhs = abs(math.log(action.lambda_phi))
    status = "Confirmed" if lhs <= entropy_estimate + tol else "Inconclusive"
    return {
        "name": "entropy-bound",
        "status": status,
        "lhs": lhs,
        "rhs": float(entropy_estimate),
        "tol": tol,
    }


def _abs_interval(interval):
    lo, hi = interval
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return Fraction(0), max(-lo, hi)


def _inequality_status(lhs, rhs_lo, rhs_hi, tol):
    if lhs <= rhs_lo + tol:
        return "Confirmed"
    if lhs <= rhs_hi + tol:
        return "Consistent"
    return "Violated"


def _swap_profile(profile):
    return CodingRangeProfile(
        n_max=profile.n_max,
        w_minus=profile.w_minus_inv,
        w_plus=profile.w_plus_inv,
        w_minus_inv=profile.w_minus,
        w_plus_inv=profile.w_plus,
        a_minus=profile.a_plus,
        a_plus=profile.a_minus,
    )


def verify_main_bounds(auto, profile, action, dim, perron, tol=DEFAULT_TOL):
    """Spectral-radius inequalities with certified interval right-hand sides.

    The growth-direction inequality uses the left slopes of the automorphism
    and its inverse; its mirror uses the right slopes with the roles of the
    pair swapped, which is the form the coordinate-reversal argument proves
    (on the shift both become equalities, as do the one-sided variants).
    The one-sided inequalities apply only when their sign hypothesis is
    certain from the enclosure; the unit-circle conclusion applies when all
    four slope enclosures collapse to zero.
    """
    bounds_f = lyapunov_bounds(auto, profile.n_max, profile=profile)
    bounds_i = lyapunov_bounds(
        auto.inverse_automorphism(),
        profile.n_max,
        profile=_swap_profile(profile),
    )
    am, ap = bounds_f.alpha_minus, bounds_f.alpha_plus
    ami, api = bounds_i.alpha_minus, bounds_i.alpha_plus
    h = perron.entropy
    log_rho_minus = math.log(dim.rho_minus)
    growth = h + log_rho_minus  # log(lambda / smallest modulus) >= 0
    lhs = math.log(action.rho)
    checks = []

    abs_ami = _abs_interval(ami)
    checks.append(
        {
            "name": "bound-minus",
            "status": None,
            "lhs": lhs,
            "rhs_lo": float(abs_ami[0]) * growth - float(am[1]) * h,
            "rhs_hi": float(abs_ami[1]) * growth - float(am[0]) * h,
        }
    )
    abs_ap = _abs_interval(ap)
    checks.append(
        {
            "name": "bound-plus",
            "status": None,
            "lhs": lhs,
            "rhs_lo": float(abs_ap[0]) * growth + float(api[0]) * h,
            "rhs_hi": float(abs_ap[1]) * growth + float(api[1]) * h,
        }
    )
    if ami[0] > 0:
        checks.append(
            {
                "name": "one-sided-minus",
                "status": None,
                "lhs": lhs,
                "rhs_lo": -float(am[1]) * h,
                "rhs_hi": -float(am[0]) * h,
            }
        )
    else:
        checks.append(
            {
                "name": "one-sided-minus",
                "status": "Inconclusive",
                "note": "left slope of the inverse not certainly positive",
            }
        )
    if ap[1] < 0:
        checks.append(
            {
                "name": "one-sided-plus",
                "status": None,
                "lhs": lhs,
                "rhs_lo": float(api[0]) * h,
                "rhs_hi": float(api[1]) * h,
            }
        )
    else:
        checks.append(
            {
                "name": "one-sided-plus",
                "status": "Inconclusive",
                "note": "right slope of the map not certainly negative",
            }
        )
    for check in checks:
        if check["status"] is None:
            check["status"] = _inequality_status(
                check["lhs"], check["rhs_lo"], check["rhs_hi"], tol
            )

    zero = (Fraction(0), Fraction(0))
    if (am, ap, ami, api) == (zero, zero, zero, zero):
        deviation = max(abs(abs(z) - 1.0) for z in _spectrum(action.S_phi))
        checks.append(
            {
                "name": "unit-circle",
                "status": "Confirmed" if deviation <= tol else "Violated",
                "lhs": deviation,
                "rhs_lo": 0.0,
                "rhs_hi": 0.0,
            }
        )
    else:
        checks.append(
            {
                "name": "unit-circle",
                "status": "Inconclusive",
                "note": "slope enclosures are not all exactly zero",
            }
        )

    applicable = [c for c in checks if "rhs_lo" in c]
    gaps = [c["rhs_lo"] - c["lhs"] for c in applicable]
    statuses = [c["status"] for c in applicable]
    if "Violated" in statuses:
        overall = "Violated"
    elif "Consistent" in statuses:
        overall = "Consistent"
    else:
        overall = "Confirmed"
    return {
        "name": "main-bounds",
        "status": overall,
        "gap": min(gaps) if gaps else float("nan"),
        "tol": tol,
        "checks": checks,
    }


def distortion_spectrum_check(action, tol=DEFAULT_TOL):
    """Whether the action's spectral radius is 1 and its whole spectrum sits
    on the unit circle, as distortion would force."""
    spectrum = _spectrum(action.S_phi)
    deviation = max(abs(abs(z) - 1.0) for z in spectrum)
    log_rho_zero = abs(math.log(action.rho)) <= tol
    on_circle = deviation <= tol
    return {
        "name": "distortion-spectrum",
        "status": "Confirmed" if (log_rho_zero and on_circle) else "Inconclusive",
        "log_rho_zero": log_rho_zero,
        "unit_circle": on_circle,
        "deviation": deviation,
        "eigenvalues": [(z.real, z.imag) for z in spectrum],
        "tol": tol,
    }
