"""How far coding windows propagate under iteration of an automorphism.

For a code psi with memory M and anticipation A', say the half-line
(-inf, 0] *codes* coordinate j when any two points agreeing on (-inf, 0]
have psi-images agreeing at j.  W^- is the largest m such that (-inf, 0]
codes all of (-inf, m]; W^+ is the dual for right half-lines.  Per
coordinate this is decidable from the rule table: group windows by their
content on the agreed side and ask whether any group admits two outputs.

Scans are bracketed by proved inequalities: W^-(n,phi) >= -A'(n) and
W^+(n,phi) <= M(n) come for free from window shapes, and the sum
inequalities W^-(n,phi) + W^-(n,phi^-1) <= 0, W^+(n,phi) + W^+(n,phi^-1)
>= 0 cap the other side.  When a scan exhausts its bracket without finding
an uncoded coordinate, the bracket endpoint is forced exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

from .codes import (
    Automorphism,
    SlidingBlockCode,
    factor_product_code,
    resolve_budget,
    shift_power_of,
)
from .errors import InternalInvariantViolation, PreconditionFailed
from .shifts import transpose_shift


def _require_scannable(shift):
    if not shift.irreducible:
        raise PreconditionFailed("coding-range analysis needs an irreducible shift")
    if not shift.positive_entropy:
        raise PreconditionFailed("coding-range analysis needs positive entropy")


def coded_minus(code, j):
    """Do points agreeing on (-inf, 0] have images agreeing at coordinate j?"""
    _require_scannable(code.source)
    m, a = code.memory, code.anticipation
    if j + a <= 0:
        return True  # the whole window sits in the agreed half-line
    shift = code.source
    if j - m <= 0:
        shared = m - j + 1  # window positions covering coordinates <= 0
        seen = {}
        for w, out in code.rule.items():
            key = w[:shared]
            prev = seen.setdefault(key, out)
            if prev != out:
                return False
        return True
    # window fully to the right of 0: the two points diverge at coordinate 1
    # from a common state, reaching the window starts by paths of equal length
    ell = j - m - 1
    reach = shift.reach_exact(ell)
    by_start = {}
    for w, out in code.rule.items():
        by_start.setdefault(shift.source(w[0]), set()).add(out)
    for s in range(shift.k):
        outputs = set()
        for t in range(shift.k):
            if reach[s][t] and t in by_start:
                outputs |= by_start[t]
                if len(outputs) > 1:
                    return False
    return True


def coded_plus(code, j):
    """Dual of :func:`coded_minus` for agreement on [0, +inf)."""
    _require_scannable(code.source)
    m, a = code.memory, code.anticipation
    if j - m >= 0:
        return True
    shift = code.source
    if j + a >= 0:
        shared = j + a + 1  # window positions covering coordinates >= 0
        seen = {}
        for w, out in code.rule.items():
            key = w[len(w) - shared :]
            prev = seen.setdefault(key, out)
            if prev != out:
                return False
        return True
    ell = -(j + a) - 1
    reach = shift.reach_exact(ell)
    by_end = {}
    for w, out in code.rule.items():
        by_end.setdefault(shift.target(w[-1]), set()).add(out)
    for s in range(shift.k):
        outputs = set()
        for t in range(shift.k):
            if reach[t][s] and t in by_end:
                outputs |= by_end[t]
                if len(outputs) > 1:
                    return False
    return True


# -- literal-definition oracles (small systems only; used to guard the
#    grouped implementations in tests) --


def coded_minus_naive(code, j):
    _require_scannable(code.source)
    m, a = code.memory, code.anticipation
    if j + a <= 0:
        return True
    shift = code.source
    free = j + a
    if j - m <= 0:
        shared_len = m - j + 1
        for w in shift.words(shared_len):
            state = shift.target(w[-1])
            tails = list(shift.words(free, start_state=state))
            for u in tails:
                for v in tails:
                    if code.rule[w + u] != code.rule[w + v]:
                        return False
        return True
    ell = j - m - 1
    reach = shift.reach_exact(ell)
    windows = list(shift.words(m + a + 1))
    for s in range(shift.k):
        group = [w for w in windows if reach[s][shift.source(w[0])]]
        for u in group:
            for v in group:
                if code.rule[u] != code.rule[v]:
                    return False
    return True


def coded_plus_naive(code, j):
    _require_scannable(code.source)
    m, a = code.memory, code.anticipation
    if j - m >= 0:
        return True
    shift = code.source
    free = m - j
    if j + a >= 0:
        shared_len = j + a + 1
        for w in shift.words(shared_len):
            state = shift.source(w[0])
            heads = [
                u for u in shift.words(free) if shift.target(u[-1]) == state
            ]
            for u in heads:
                for v in heads:
                    if code.rule[u + w] != code.rule[v + w]:
                        return False
        return True
    ell = -(j + a) - 1
    reach = shift.reach_exact(ell)
    windows = list(shift.words(m + a + 1))
    for s in range(shift.k):
        group = [w for w in windows if reach[shift.target(w[-1])][s]]
        for u in group:
            for v in group:
                if code.rule[u] != code.rule[v]:
                    return False
    return True


def _scan_minus(code, start, ceiling):
    for j in range(start, ceiling + 1):
        if not coded_minus(code, j):
            return j - 1
    return ceiling


def _scan_plus(code, start, floor):
    for j in range(start, floor - 1, -1):
        if not coded_plus(code, j):
            return j + 1
    return floor


@dataclass(frozen=True)
class WValues:
    """W^-, W^+ at one power n, for the automorphism and its inverse."""

    n: int
    minus: int
    plus: int
    minus_inv: int
    plus_inv: int


def w_values(auto, n, budget=None):
    """Exact W^-(n, phi), W^+(n, phi) and the same for phi^-1.

    The inverse side is scanned first inside window-derived brackets, then
    the forward side inside the tighter brackets the sum inequalities give.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    budget = resolve_budget(budget)
    fwd = auto.power(n, budget=budget)
    inv = auto.power(-n, budget=budget)
    m_f, a_f = fwd.memory, fwd.anticipation
    m_i, a_i = inv.memory, inv.anticipation
    wm_i = _scan_minus(inv, -a_i + 1, a_f)
    wp_i = _scan_plus(inv, m_i - 1, -m_f)
    wm_f = _scan_minus(fwd, -a_f + 1, -wm_i)
    wp_f = _scan_plus(fwd, m_f - 1, -wp_i)
    if wm_f + wm_i > 0 or wp_f + wp_i < 0:
        raise InternalInvariantViolation(
            f"sum inequalities failed at n={n}: "
            f"W-=({wm_f},{wm_i}) W+=({wp_f},{wp_i})"
        )
    return WValues(n=n, minus=wm_f, plus=wp_f, minus_inv=wm_i, plus_inv=wp_i)


@dataclass(frozen=True)
class CodingRangeProfile:
    """W^± sequences for phi and phi^-1 at n = 1..n_max, plus the derived
    divergence sequences used by the ray-count bounds."""

    n_max: int
    w_minus: tuple
    w_plus: tuple
    w_minus_inv: tuple
    w_plus_inv: tuple
    a_minus: tuple
    a_plus: tuple

    def at(self, n):
        i = n - 1
        return WValues(
            n=n,
            minus=self.w_minus[i],
            plus=self.w_plus[i],
            minus_inv=self.w_minus_inv[i],
            plus_inv=self.w_plus_inv[i],
        )


def coding_range_profile(auto, n_max, budget=None):
    budget = resolve_budget(budget)
    vals = [w_values(auto, n, budget=budget) for n in range(1, n_max + 1)]
    wm = tuple(v.minus for v in vals)
    wp = tuple(v.plus for v in vals)
    wmi = tuple(v.minus_inv for v in vals)
    wpi = tuple(v.plus_inv for v in vals)
    # proved shape constraints; failing any is a library bug
    for seq, label, super_add in (
        (wm, "W^-(phi)", True),
        (wmi, "W^-(phi^-1)", True),
        (wp, "W^+(phi)", False),
        (wpi, "W^+(phi^-1)", False),
    ):
        for p in range(1, n_max + 1):
            for q in range(1, n_max + 1 - p):
                lhs = seq[p + q - 1]
                rhs = seq[p - 1] + seq[q - 1]
                if super_add and lhs < rhs:
                    raise InternalInvariantViolation(
                        f"{label} not superadditive at {p}+{q}"
                    )
                if not super_add and lhs > rhs:
                    raise InternalInvariantViolation(
                        f"{label} not subadditive at {p}+{q}"
                    )
    a_minus = tuple(abs(wmi[i]) - wm[i] for i in range(n_max))
    a_plus = tuple(abs(wm[i]) - wmi[i] for i in range(n_max))
    return CodingRangeProfile(
        n_max=n_max,
        w_minus=wm,
        w_plus=wp,
        w_minus_inv=wmi,
        w_plus_inv=wpi,
        a_minus=a_minus,
        a_plus=a_plus,
    )


@dataclass(frozen=True)
class LyapunovBounds:
    """Certified enclosures for the asymptotic coding slopes alpha^±.

    Endpoints are exact rationals.  The generic enclosure is
    alpha^-(phi) in [max_n W^-(n,phi)/n, min_n -W^-(n,phi^-1)/n] (the left
    end by superadditivity, the right end by the sum inequality), and
    dually for alpha^+.  When the rule is recognized exactly as a shift
    power or a product of shift powers, the slopes are exact and the
    enclosure collapses to a point.
    """

    alpha_minus: tuple
    alpha_plus: tuple
    n_minus: tuple
    n_plus: tuple
    method: str
    verdict: str

    def distorted_candidate(self):
        return self.verdict == "consistent-with-distortion"


def _argbest(values, best):
    target = best(values)
    for i, v in enumerate(values):
        if v == target:
            return i + 1, target
    raise AssertionError


def recognized_exponents(auto):
    """Shift-power exponents when the forward rule is exactly sigma^s or
    sigma^s1 x sigma^s2 on a recorded product; None otherwise."""
    s = shift_power_of(auto.forward)
    if s is not None:
        return ("shift-power", (s,))
    factors = factor_product_code(auto.forward)
    if factors is not None:
        s1 = shift_power_of(factors[0])
        s2 = shift_power_of(factors[1])
        if s1 is not None and s2 is not None:
            return ("product", (s1, s2))
    return None


def lyapunov_bounds(auto, n_max, profile=None, budget=None):
    if profile is None:
        profile = coding_range_profile(auto, n_max, budget=budget)
    n_max = profile.n_max
    lo_m_n, lo_m = _argbest(
        [Fraction(profile.w_minus[i], i + 1) for i in range(n_max)], max
    )
    hi_m_n, hi_m = _argbest(
        [Fraction(-profile.w_minus_inv[i], i + 1) for i in range(n_max)], min
    )
    lo_p_n, lo_p = _argbest(
        [Fraction(-profile.w_plus_inv[i], i + 1) for i in range(n_max)], max
    )
    hi_p_n, hi_p = _argbest(
        [Fraction(profile.w_plus[i], i + 1) for i in range(n_max)], min
    )
    method = "interval"
    recognized = recognized_exponents(auto)
    if recognized is not None:
        kind, exps = recognized
        am = Fraction(min(-s for s in exps))
        ap = Fraction(max(-s for s in exps))
        for i in range(n_max):
            n = i + 1
            ok = (
                profile.w_minus[i] == n * am
                and profile.w_plus[i] == n * ap
                and profile.w_minus_inv[i] == n * min(s for s in exps)
                and profile.w_plus_inv[i] == n * max(s for s in exps)
            )
            if not ok:
                raise InternalInvariantViolation(
                    f"recognized {kind} exponents {exps} contradict W data at n={n}"
                )
        if not (lo_m <= am <= hi_m and lo_p <= ap <= hi_p):
            raise InternalInvariantViolation(
                "exact slopes escape the generic enclosure"
            )
        lo_m = hi_m = am
        lo_p = hi_p = ap
        method = f"exact-{kind}"
    inside_m = lo_m <= 0 <= hi_m
    inside_p = lo_p <= 0 <= hi_p
    verdict = (
        "consistent-with-distortion"
        if inside_m and inside_p
        else "certified-not-distorted"
    )
    return LyapunovBounds(
        alpha_minus=(lo_m, hi_m),
        alpha_plus=(lo_p, hi_p),
        n_minus=(lo_m_n, hi_m_n),
        n_plus=(lo_p_n, hi_p_n),
        method=method,
        verdict=verdict,
    )


def reverse_code(code, tshift=None, bijection=None):
    """Conjugate by coordinate reversal: windows reverse, memory and
    anticipation swap, and edges pass through the transpose bijection."""
    if code.source != code.target:
        raise PreconditionFailed("reverse_code needs an endomorphism-shaped code")
    if tshift is None:
        tshift, bijection = transpose_shift(code.source)
    rule = {
        tuple(bijection[e] for e in reversed(w)): bijection[out]
        for w, out in code.rule.items()
    }
    return SlidingBlockCode(
        tshift, tshift, code.anticipation, code.memory, rule, check=False
    )


def reverse_automorphism(auto):
    """The automorphism seen through x_i -> x_{-i}; returns
    (transpose shift, reversed automorphism, edge bijection)."""
    tshift, bijection = transpose_shift(auto.shift)
    fwd = reverse_code(auto.forward, tshift, bijection)
    inv = reverse_code(auto.inverse, tshift, bijection)
    cert = {"method": "reverse", "base": auto.certificate.get("method")}
    return tshift, Automorphism(fwd, inv, cert), bijection
