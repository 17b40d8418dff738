"""Independent reference computations used by the tests.

Nothing here calls into the arithmetic of the package under test: products
are expanded with plain dictionaries and nested loops.
"""
import random

from rimcalc.knot import BraidWord, closure_components
from rimcalc.laurent import GroupRingElement
from rimcalc.swtheory import ManifoldCharacteristics, PairDescriptor, SWInvariant


def fibration_euler(g: int) -> int:
    """e(Y_g) = e(S^2) e(S_g) + (4g+2) * mu, each singular fiber adding its
    Milnor number mu = (2-1)(2g+1-1) = 2g."""
    return 2 * (2 - 2 * g) + (4 * g + 2) * (2 * g)


def hand_det2(V):
    """det(V - t V^T) for a 2x2 integer V, as {exponent: coefficient}."""
    (a, b), (c, d) = V
    # entries: [a - a t, b - c t], [c - b t, d - d t]
    poly = {}

    def add(e, x):
        poly[e] = poly.get(e, 0) + x

    # (a - a t)(d - d t) = ad - 2ad t + ad t^2
    add(0, a * d); add(1, -2 * a * d); add(2, a * d)  # noqa: E702
    # -(b - c t)(c - b t) = -bc + (b^2 + c^2) t - bc t^2
    add(0, -b * c); add(1, b * b + c * c); add(2, -b * c)  # noqa: E702
    return {e: x for e, x in poly.items() if x}


def brute_force_surgery(base: dict, delta: dict, r: int) -> dict:
    """Expand sum_b sum_m base_b * delta_m * exp(b + 2m e_r) term by term."""
    out: dict = {}
    for b, cb in base.items():
        for m, dm in delta.items():
            cls = list(b)
            cls[r] += 2 * m
            cls = tuple(cls)
            out[cls] = out.get(cls, 0) + cb * dm
    return {k: v for k, v in out.items() if v}


def brute_force_collections(base: dict, delta: dict, r: int) -> dict:
    """For each base class b, the predicted classes b + 2m e_r that survive."""
    support = set(brute_force_surgery(base, delta, r))
    out = {}
    for b in base:
        predicted = []
        for m in sorted(delta):
            cls = list(b)
            cls[r] += 2 * m
            predicted.append(tuple(cls))
        out[b] = tuple(c for c in predicted if c in support)
    return out


def random_knot_braid(rng: random.Random, max_strands=4, max_len=10) -> BraidWord:
    while True:
        n = rng.randint(2, max_strands)
        word = tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, max_len)))
        b = BraidWord(n, word)
        if closure_components(b) == 1:
            return b


def random_chars(rng: random.Random) -> ManifoldCharacteristics:
    sign = -rng.randint(0, 40)
    euler = rng.randint(2, 60)
    euler += (-(euler + sign)) % 4
    return ManifoldCharacteristics(euler, sign, rng.randint(2, 9))


def random_symmetric_value(rng: random.Random, rank: int, eps: int) -> dict:
    terms: dict = {}
    for _ in range(rng.randint(1, 4)):
        beta = tuple(rng.randint(-3, 3) for _ in range(rank))
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        neg = tuple(-x for x in beta)
        if beta == neg:
            if eps == 1:
                terms[beta] = c
            continue
        terms[beta] = c
        terms[neg] = eps * c
    return terms


def random_pair(rng: random.Random, rank: int = 2) -> PairDescriptor:
    while True:
        chars = random_chars(rng)
        value = random_symmetric_value(rng, rank, chars.symmetry_sign())
        if value:
            break
    labels = tuple("T" if i == rank - 1 else f"B{i}" for i in range(rank))
    sw = SWInvariant(labels, GroupRingElement(rank, value), chars)
    return PairDescriptor(1, 0, sw, "T", symplectic=True, name="random")
