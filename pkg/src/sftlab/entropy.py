"""Desk-scale entropy estimation for automorphisms.

Three instruments: a spacetime column census (how many distinct space-time
columns of width 2w+1 appear over n iterates), the iterate-window counter
used by the measure-growth argument, and invariant-subsystem restriction,
which transfers exactly computable entropies as certified lower bounds.
Estimates are heuristic unless the rule is a recognized (product of) shift
power(s) or the value rides on a certified invariant subsystem.
"""

import math
from dataclasses import dataclass

from .codes import (
    Automorphism,
    SlidingBlockCode,
    factor_product_code,
    resolve_budget,
    shift_power_of,
    verify_automorphism,
)
from .errors import NotInvariant, WindowBudgetExceeded, ZeroMatrix
from .shifts import EdgeShift, build_edge_shift, count_words, perron_data


@dataclass(frozen=True)
class ColumnCensus:
    """Distinct tuples (x|[-w,w], phi(x)|[-w,w], ..., phi^{n-1}(x)|[-w,w])."""

    w: int
    n: int
    count: int
    estimate: float
    certified: bool
    method: str


def _track_window_count(track_shift, w, n, s):
    """Words revealed by n sliding windows of a shift power on one track."""
    span = 2 * w + 1 + abs(s) * (n - 1)
    return count_words(track_shift, span)


def column_census(auto, w, n, budget=None):
    """Census of spacetime columns, by closed form when the rule is a
    recognized shift power (windows must overlap track by track), else by
    exact enumeration over the dependence window."""
    if w < 0 or n < 1:
        raise ValueError("need w >= 0 and n >= 1")
    budget = resolve_budget(budget)
    shift = auto.shift

    s = shift_power_of(auto.forward)
    if s is not None and abs(s) <= 2 * w + 1:
        count = _track_window_count(shift, w, n, s)
        return ColumnCensus(
            w=w,
            n=n,
            count=count,
            estimate=math.log(count) / n,
            certified=True,
            method="product-form",
        )
    factors = factor_product_code(auto.forward)
    if factors is not None and shift.product_of is not None:
        exps = tuple(shift_power_of(f) for f in factors)
        if all(e is not None and abs(e) <= 2 * w + 1 for e in exps):
            count = 1
            for track, e in zip(shift.product_of, exps):
                count *= _track_window_count(track, w, n, e)
            return ColumnCensus(
                w=w,
                n=n,
                count=count,
                estimate=math.log(count) / n,
                certified=True,
                method="product-form",
            )

    powers = [auto.power(i) for i in range(n)]
    mem = max(code.memory for code in powers)
    ant = max(code.anticipation for code in powers)
    length = (2 * w + 1) + mem + ant
    needed = shift.word_count(length)
    if needed > budget:
        raise WindowBudgetExceeded(needed=needed, budget=budget)
    seen = set()
    lo = -w - mem
    for word in shift.words(length):
        # word[j] is the edge at coordinate lo + j
        column = []
        for code in powers:
            out = tuple(
                code.rule[
                    word[j - code.memory - lo : j + code.anticipation - lo + 1]
                ]
                for j in range(-w, w + 1)
            )
            column.append(out)
        seen.add(tuple(column))
    count = len(seen)
    return ColumnCensus(
        w=w,
        n=n,
        count=count,
        estimate=math.log(count) / n,
        certified=False,
        method="enumeration",
    )


def _iterate_window_sets(auto, n, ordered, budget):
    """Distinct collections of iterate windows phi^i(y)|[k, k+2r+1], i=0..n,
    with r the coding range of the forward rule and k = -W^-(n, phi^-1)."""
    from .coding_range import w_values  # local import avoids a cycle at load

    budget = resolve_budget(budget)
    shift = auto.shift
    r = max(auto.forward.memory, auto.forward.anticipation)
    width = 2 * r + 2
    # the count is invariant under shifting the window, so k only pins the
    # reported coordinates; it is computed to honor the pinned choice
    w_values(auto, n, budget=budget)
    powers = [auto.power(i) for i in range(n + 1)]
    mem = max(code.memory for code in powers)
    ant = max(code.anticipation for code in powers)
    length = width + mem + ant
    needed = shift.word_count(length)
    if needed > budget:
        raise WindowBudgetExceeded(needed=needed, budget=budget)
    seen = set()
    for word in shift.words(length):
        windows = []
        for code in powers:
            out = tuple(
                code.rule[word[j - code.memory : j + code.anticipation + 1]]
                for j in range(mem, mem + width)
            )
            windows.append(out)
        seen.add(tuple(windows) if ordered else frozenset(windows))
    return len(seen)


def c_phi_count(auto, n, budget=None):
    """Number of distinct iterate-window collections (set semantics)."""
    return _iterate_window_sets(auto, n, ordered=False, budget=budget)


def c_phi_count_ordered(auto, n, budget=None):
    """Ordered-tuple variant of the iterate-window count, for diagnostics."""
    return _iterate_window_sets(auto, n, ordered=True, budget=budget)


def c_phi_diagnostic(auto, n, action, budget=None):
    """Finite-n growth rate of the iterate-window count next to the measure
    multiplier; finite n can land on either side, so this only flags."""
    card = c_phi_count(auto, n, budget=budget)
    rate = math.log(card) / n
    target = math.log(action.lambda_phi)
    return {
        "name": "iterate-window-growth",
        "status": "Inconclusive",
        "card": card,
        "rate": rate,
        "log_lambda_phi": target,
        "flag": rate < target,
    }


def _prune_states(k, edges, allowed):
    """Drop states that lose all outgoing or incoming allowed edges, until
    stable; returns the surviving states in order."""
    alive = set(range(k))
    while True:
        outs = {s for s in alive}
        has_out = {s: False for s in alive}
        has_in = {s: False for s in alive}
        for e in allowed:
            s, t, _ = edges[e]
            if s in alive and t in alive:
                has_out[s] = True
                has_in[t] = True
        nxt = {s for s in outs if has_out[s] and has_in[s]}
        if nxt == alive:
            return sorted(alive)
        alive = nxt
        if not alive:
            raise ZeroMatrix("no states survive the restriction")


def restrict_code_to_subsystem(code, allowed_edges):
    """Restrict a sliding block code to the edge shift on a subset of edges.

    Every admissible window of the restricted shift must output an allowed
    edge; a failing window is returned as the NotInvariant witness.
    """
    shift = code.source
    allowed = tuple(sorted(set(allowed_edges)))
    states = _prune_states(shift.k, shift.edges, allowed)
    state_of = {s: i for i, s in enumerate(states)}
    kept = [
        e
        for e in allowed
        if shift.edges[e][0] in state_of and shift.edges[e][1] in state_of
    ]
    matrix = [[0] * len(states) for _ in states]
    new_index = {}
    for e in kept:
        s, t, _ = shift.edges[e]
        new_index[e] = (state_of[s], state_of[t], matrix[state_of[s]][state_of[t]])
        matrix[state_of[s]][state_of[t]] += 1
    sub = build_edge_shift(tuple(tuple(row) for row in matrix))
    to_sub = {e: sub.edge_index[triple] for e, triple in new_index.items()}
    to_orig = {v: k for k, v in to_sub.items()}
    rule = {}
    width = code.memory + code.anticipation + 1
    for sub_word in sub.words(width):
        window = tuple(to_orig[e] for e in sub_word)
        out = code.rule[window]
        if out not in to_sub:
            raise NotInvariant(witness=window, output=out)
        rule[sub_word] = to_sub[out]
    restricted = SlidingBlockCode(
        sub, sub, code.memory, code.anticipation, rule
    )
    return sub, restricted, to_sub


def restrict_to_subsystem(auto, allowed_edges, budget=None):
    """Restriction of a certified automorphism to an invariant edge subset;
    both directions must keep the subset invariant."""
    sub, fwd, _ = restrict_code_to_subsystem(auto.forward, allowed_edges)
    sub2, inv, _ = restrict_code_to_subsystem(auto.inverse, allowed_edges)
    assert sub.matrix == sub2.matrix
    return sub, verify_automorphism(fwd, inv, budget=budget)


@dataclass(frozen=True)
class ProductForm:
    """Coordinatewise factorization of an automorphism's forward rule on a
    recorded product shift, with exact entropy when both factors are shift
    powers (h = sum of |exponent| times the track entropy)."""

    left: object
    right: object
    exponents: object
    exact_entropy: object


def recognize_product_form(auto):
    """Track factorization of the forward rule, when the shift is a recorded
    product and the rule acts coordinatewise; None otherwise."""
    shift = auto.shift
    if shift.product_of is None:
        return None
    factors = factor_product_code(auto.forward)
    if factors is None:
        return None
    left, right = factors
    exps = (shift_power_of(left), shift_power_of(right))
    entropy = None
    if all(e is not None for e in exps):
        entropy = sum(
            abs(e) * perron_data(track).entropy
            for track, e in zip(shift.product_of, exps)
        )
    return ProductForm(
        left=left, right=right, exponents=exps, exact_entropy=entropy
    )


def exact_entropy_of(auto):
    """Exact h_top of the automorphism when its rule is a recognized (product
    of) shift power(s); None otherwise."""
    s = shift_power_of(auto.forward)
    if s is not None:
        return abs(s) * perron_data(auto.shift).entropy
    form = recognize_product_form(auto)
    if form is not None:
        return form.exact_entropy
    return None
