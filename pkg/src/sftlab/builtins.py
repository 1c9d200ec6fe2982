"""Named example systems: shifts and certified automorphisms.

``make_builtin(name, params)`` returns an (EdgeShift, Automorphism) pair.
The five-symbol reflection rule takes a ``completion`` parameter naming the
output on the one window its table leaves open (a lone pair symbol between
two walls); see FIVE_SYMBOL_COMPLETIONS.
"""

from .codes import (
    Automorphism,
    SlidingBlockCode,
    identity_code,
    infer_inverse,
    inverse_shift_code,
    product_code,
    shift_code,
    verify_automorphism,
)
from .errors import UnknownBuiltin
from .shifts import build_edge_shift, kronecker_product

GOLDEN_MEAN = ((1, 1), (1, 0))
SWAP_B = ((2, 1), (1, 2))

_SHIFT_BUILTINS = {
    "golden_mean": lambda: build_edge_shift(GOLDEN_MEAN),
    "full_2": lambda: build_edge_shift([[2]]),
    "full_3": lambda: build_edge_shift([[3]]),
    "full_5": lambda: build_edge_shift([[5]]),
    "vertex_swap_B": lambda: build_edge_shift(SWAP_B),
    "golden_mean_product": lambda: kronecker_product(
        build_edge_shift(GOLDEN_MEAN), build_edge_shift(GOLDEN_MEAN)
    ),
    "full_2_product": lambda: kronecker_product(
        build_edge_shift([[2]]), build_edge_shift([[2]])
    ),
}


def shift_builtin(name):
    try:
        return _SHIFT_BUILTINS[name]()
    except KeyError:
        raise UnknownBuiltin(f"no shift builtin named {name!r}") from None


def _resolve_shift(params, default="full_2"):
    spec = params.get("shift", default)
    if isinstance(spec, str):
        return shift_builtin(spec)
    return spec  # an EdgeShift


# -- five-symbol reflection rule ------------------------------------------
#
# Alphabet: four pair symbols (a, b) with a, b in {0, 1}, plus a wall symbol
# c, as the five edges of the full 5-shift.  Edge i < 4 carries the pair
# (i >> 1, i & 1); edge 4 is the wall.  Away from walls the first track
# pulls from the right and the second track pushes from the left; next to a
# wall the missing neighbour is replaced by the centre's other track.

FIVE_SYMBOL_WALL = 4

FIVE_SYMBOL_COMPLETIONS = {
    "identity": lambda a, b: _pair_edge(a, b),
    "swap": lambda a, b: _pair_edge(b, a),
    "first": lambda a, b: _pair_edge(a, a),
    "second": lambda a, b: _pair_edge(b, b),
    "wall": lambda a, b: FIVE_SYMBOL_WALL,
}


def _pair_edge(a, b):
    return (a << 1) | b


def _pair(e):
    return (e >> 1, e & 1)


def five_symbol_code(completion="swap"):
    """Forward rule of the five-symbol example on the full 5-shift.

    Always constructible, for every completion; invertibility is a separate
    question settled by ``infer_inverse``.
    """
    try:
        complete = FIVE_SYMBOL_COMPLETIONS[completion]
    except KeyError:
        raise UnknownBuiltin(
            f"unknown completion {completion!r}; choose from "
            f"{sorted(FIVE_SYMBOL_COMPLETIONS)}"
        ) from None
    shift = shift_builtin("full_5")
    wall = FIVE_SYMBOL_WALL
    rule = {}
    for left in range(5):
        for centre in range(5):
            for right in range(5):
                if centre == wall:
                    out = wall
                elif left == wall and right == wall:
                    out = complete(*_pair(centre))
                elif left == wall:
                    a, _ = _pair(centre)
                    ap, _ = _pair(right)
                    out = _pair_edge(ap, a)
                elif right == wall:
                    _, b = _pair(left)
                    _, bp = _pair(centre)
                    out = _pair_edge(bp, b)
                else:
                    _, b = _pair(left)
                    app, _ = _pair(right)
                    out = _pair_edge(app, b)
                rule[(left, centre, right)] = out
    return shift, SlidingBlockCode(shift, shift, 1, 1, rule, check=False)


def five_symbol_no_wall_edges():
    """The four pair edges, i.e. the wall-free subsystem's allowed set."""
    return tuple(e for e in range(5) if e != FIVE_SYMBOL_WALL)


def _identity(params):
    shift = _resolve_shift(params)
    code = identity_code(shift)
    return shift, verify_automorphism(code, code)


def _shift(params):
    shift = _resolve_shift(params)
    return shift, verify_automorphism(shift_code(shift), inverse_shift_code(shift))


def _inverse_shift(params):
    shift = _resolve_shift(params)
    return shift, verify_automorphism(inverse_shift_code(shift), shift_code(shift))


def _full_shift_symbol_permutation(params):
    n = int(params.get("n", 2))
    perm = tuple(params.get("permutation", tuple(reversed(range(n)))))
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm!r}")
    shift = build_edge_shift([[n]])
    fwd = SlidingBlockCode(shift, shift, 0, 0, {(e,): perm[e] for e in range(n)}, check=False)
    inv_perm = [0] * n
    for i, p in enumerate(perm):
        inv_perm[p] = i
    inv = SlidingBlockCode(shift, shift, 0, 0, {(e,): inv_perm[e] for e in range(n)}, check=False)
    return shift, verify_automorphism(fwd, inv)


def _vertex_swap_B(params):
    shift = shift_builtin("vertex_swap_B")
    mapping = {
        e: shift.edge_index[(1 - s, 1 - t, c)] for e, (s, t, c) in enumerate(shift.edges)
    }
    code = SlidingBlockCode(
        shift, shift, 0, 0, {(e,): mapping[e] for e in range(shift.n_edges)}, check=False
    )
    return shift, verify_automorphism(code, code)


def product_automorphism(left, right, budget=None):
    """Coordinatewise product of two certified automorphisms."""
    prod = kronecker_product(left.shift, right.shift)
    fwd = product_code(left.forward, right.forward, prod, budget=budget)
    inv = product_code(left.inverse, right.inverse, prod, budget=budget)
    return prod, verify_automorphism(fwd, inv, budget=budget)


def _product(params):
    left_name, left_params = params["left"]
    right_name, right_params = params["right"]
    _, left = make_builtin(left_name, left_params)
    _, right = make_builtin(right_name, right_params)
    return product_automorphism(left, right)


def _tau_golden(params):
    golden = shift_builtin("golden_mean")
    _, ident = _identity({"shift": golden})
    _, inv_shift = _inverse_shift({"shift": golden})
    return product_automorphism(ident, inv_shift)


def _sigma_x_sigma_inv(params):
    base = _resolve_shift(params)
    _, fwd = _shift({"shift": base})
    _, inv = _inverse_shift({"shift": base})
    return product_automorphism(fwd, inv)


def _five_symbol(params):
    completion = params.get("completion", "swap")
    r_max = int(params.get("R_max", 3))
    shift, code = five_symbol_code(completion)
    return shift, infer_inverse(code, r_max=r_max)


_AUTOMORPHISM_BUILTINS = {
    "identity": _identity,
    "shift": _shift,
    "inverse_shift": _inverse_shift,
    "full_shift_symbol_permutation": _full_shift_symbol_permutation,
    "vertex_swap_B": _vertex_swap_B,
    "product": _product,
    "five_symbol": _five_symbol,
    "tau_golden": _tau_golden,
    "sigma_x_sigma_inv": _sigma_x_sigma_inv,
}


def make_builtin(name, params=None):
    """Build a named automorphism; returns (shift, automorphism)."""
    try:
        builder = _AUTOMORPHISM_BUILTINS[name]
    except KeyError:
        raise UnknownBuiltin(f"no automorphism builtin named {name!r}") from None
    return builder(params or {})


#: Default instantiations used by the verification suites.
DEFAULT_SUITE = (
    ("identity", {}),
    ("shift", {}),
    ("inverse_shift", {}),
    ("full_shift_symbol_permutation", {"n": 2, "permutation": (1, 0)}),
    ("vertex_swap_B", {}),
    ("tau_golden", {}),
    ("sigma_x_sigma_inv", {}),
    ("five_symbol", {"completion": "swap"}),
)
