"""Alexander polynomial engines.

Three independent routes to the same invariant:

* ``alexander_via_seifert``: det(V - t V^T) from the closed-braid Seifert matrix;
* ``alexander_via_burau``: det(I - rho(b)) (1 - t) / (1 - t^n) from the reduced Burau matrix;
* ``alexander_via_fox``: Fox calculus on the Wirtinger presentation of a PD diagram;

plus the torus-knot closed form.  All results are passed through
``normalize_alexander``, so agreement is exact equality.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import EngineDisagreement, EngineNotApplicable, InvalidLabels
from .knot import (
    BraidWord,
    DTCode,
    KnotPresentation,
    PDCode,
    _require_knot,
    dt_to_pd,
    pd_crossing_sign,
    reduced_burau,
    seifert_matrix_from_braid,
    torus_knot,
)
from .laurent import LaurentPolynomial, laurent_gcd, normalize_alexander

__all__ = [
    "determinant",
    "maximal_minor_gcd",
    "alexander_via_seifert",
    "alexander_via_burau",
    "alexander_via_fox",
    "alexander_torus_closed_form",
    "wirtinger_alexander_matrix",
    "applicable_engines",
    "alexander_all",
    "check_agreement",
    "alexander",
]

Matrix = Sequence[Sequence[LaurentPolynomial]]

_ONE = LaurentPolynomial({0: 1})
_ZERO = LaurentPolynomial()


def _eliminate_units(rows: list[dict[int, LaurentPolynomial]], cols: set[int]):
    """Pivot on unit entries until none remain; the pivots are dropped.

    Only correct up to units, which is all the callers need.
    """
    changed = True
    while changed:
        changed = False
        for r_idx, row in enumerate(rows):
            pivot_col = next((c for c, v in row.items() if v.is_unit()), None)
            if pivot_col is None:
                continue
            inv = row[pivot_col].inverse()
            for other in rows:
                if other is row:
                    continue
                x = other.pop(pivot_col, None)
                if x is None:
                    continue
                factor = x * inv
                for c, v in row.items():
                    if c == pivot_col:
                        continue
                    nv = other.get(c, _ZERO) - factor * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
            rows.pop(r_idx)
            cols.discard(pivot_col)
            changed = True
            break
    return rows, cols


def _bareiss(M: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    n = len(M)
    if n == 0:
        return _ONE
    M = [list(r) for r in M]
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return _ZERO
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            for j in range(k + 1, n):
                num = pivot * M[i][j] - mik * M[k][j]
                M[i][j] = num.exact_div(prev) if num else _ZERO
            M[i][k] = _ZERO
        prev = pivot
    return M[n - 1][n - 1] * sign


def determinant(M: Matrix) -> LaurentPolynomial:
    """Exact determinant over Z[t, t^-1] by fraction-free (Bareiss) elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    return _bareiss([list(r) for r in M])


def maximal_minor_gcd(M: Matrix) -> LaurentPolynomial:
    """gcd of the maximal minors of an m x k matrix (m >= k), up to units.

    Pivoting on a unit entry changes the ideal of maximal minors only by that
    unit, so unit pivots are eliminated first; the minors of the small
    remainder are then computed with Bareiss and combined by gcd.
    """
    m = len(M)
    k = len(M[0]) if m else 0
    if m < k:
        raise ValueError("need at least as many rows as columns")
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    rows, cols = _eliminate_units(rows, set(range(k)))
    cols = sorted(cols)
    if not cols:
        return _ONE
    dense = [[r.get(c, _ZERO) for c in cols] for r in rows]
    g = _ZERO
    for chosen in combinations(range(len(dense)), len(cols)):
        minor = _bareiss([dense[i] for i in chosen])
        g = laurent_gcd(g, minor)
    return g


# -- engines -------------------------------------------------------------------

def alexander_via_seifert(k: KnotPresentation) -> LaurentPolynomial:
    if not isinstance(k, BraidWord):
        raise EngineNotApplicable("the Seifert engine needs a braid presentation")
    V = seifert_matrix_from_braid(k).entries
    t = LaurentPolynomial({1: 1})
    n = len(V)
    A = [[LaurentPolynomial({0: V[i][j]}) - t * V[j][i] for j in range(n)] for i in range(n)]
    return normalize_alexander(determinant(A))


def alexander_via_burau(b: BraidWord) -> LaurentPolynomial:
    if not isinstance(b, BraidWord):
        raise EngineNotApplicable("the Burau engine needs a braid presentation")
    _require_knot(b)
    R = reduced_burau(b)
    k = len(R)
    A = [[(R[i][j] - _ONE) if i == j else R[i][j] for j in range(k)] for i in range(k)]
    one_minus_t = LaurentPolynomial({0: 1, 1: -1})
    one_minus_tn = LaurentPolynomial({0: 1, b.strands: -1})
    raw = (determinant(A) * one_minus_t).exact_div(one_minus_tn)
    return normalize_alexander(raw)


def _wirtinger_arcs(pd: PDCode) -> dict[int, int]:
    """Map each edge label to its arc (Wirtinger generator) index.

    Arcs are numbered in order of their smallest edge label.
    """
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in pd.crossings:
        parent[find(b)] = find(d)
    roots: dict[int, int] = {}
    arc_of = {}
    for e in sorted({v for x in pd.crossings for v in x}):
        r = find(e)
        arc_of[e] = roots.setdefault(r, len(roots))
    return arc_of


def wirtinger_alexander_matrix(pd: PDCode) -> list[list[LaurentPolynomial]]:
    """Abelianized Fox Jacobian of the Wirtinger presentation.

    Row per crossing, column per arc.  With over-arc ``x_k``, incoming
    under-arc ``x_i`` and outgoing ``x_j``, a positive crossing contributes the
    relator ``x_k x_i x_k^-1 x_j^-1`` -> (1 - t, t, -1) and a negative one
    ``x_k^-1 x_i x_k x_j^-1`` -> (t - 1, 1, -t) after clearing t^-1.
    """
    arc_of = _wirtinger_arcs(pd)
    n_arcs = len(set(arc_of.values()))
    edge_count = 2 * pd.crossing_count
    t = LaurentPolynomial({1: 1})
    rows = []
    for x in pd.crossings:
        a, b, c, d = x
        row = [_ZERO] * n_arcs
        k, i, j = arc_of[b], arc_of[a], arc_of[c]
        if pd_crossing_sign(x, edge_count) > 0:
            contrib = ((k, _ONE - t), (i, t), (j, -_ONE))
        else:
            contrib = ((k, t - _ONE), (i, _ONE), (j, -t))
        for col, v in contrib:
            row[col] = row[col] + v
        rows.append(row)
    return rows


def alexander_via_fox(pd: PDCode | DTCode, drop_column: int = -1) -> LaurentPolynomial:
    """Alexander polynomial from the Wirtinger presentation of a diagram.

    One generator column is deleted (the last by default; any choice gives the
    same answer up to units) and the gcd of the remaining maximal minors is
    normalized.  DT codes are first converted to PD.
    """
    if isinstance(pd, DTCode):
        pd = dt_to_pd(pd)
    if not isinstance(pd, PDCode):
        raise EngineNotApplicable("the Fox engine needs a PD or DT presentation")
    if pd.crossing_count == 0:
        return _ONE
    A = wirtinger_alexander_matrix(pd)
    n_cols = len(A[0])
    if len(A) < n_cols:
        raise InvalidLabels("diagram has more arcs than crossings")
    drop = drop_column % n_cols
    reduced = [[v for j, v in enumerate(r) if j != drop] for r in A]
    return normalize_alexander(maximal_minor_gcd(reduced))


def alexander_torus_closed_form(p: int, q: int) -> LaurentPolynomial:
    """(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)), normalized."""
    torus_knot(p, q)  # validates coprimality
    def tm1(k):
        return LaurentPolynomial({k: 1, 0: -1})

    num = tm1(p * q) * tm1(1)
    den = tm1(p) * tm1(q)
    return normalize_alexander(num.exact_div(den))


# -- dispatch ------------------------------------------------------------------

ENGINES = {
    "seifert": alexander_via_seifert,
    "burau": alexander_via_burau,
    "fox": alexander_via_fox,
}


def applicable_engines(k: KnotPresentation) -> list[str]:
    if isinstance(k, BraidWord):
        return ["seifert", "burau"]
    if isinstance(k, (PDCode, DTCode)):
        return ["fox"]
    raise EngineNotApplicable(f"unsupported presentation {type(k).__name__}")


def alexander_all(*presentations: KnotPresentation) -> dict[str, LaurentPolynomial]:
    """Run every applicable engine on every presentation.

    Keys look like ``"burau:braid"``; a repeated format gets a ``#2``, ``#3``
    suffix.
    """
    results: dict[str, LaurentPolynomial] = {}
    seen: dict[str, int] = {}
    for k in presentations:
        seen[k.format] = seen.get(k.format, 0) + 1
        suffix = "" if seen[k.format] == 1 else f"#{seen[k.format]}"
        for name in applicable_engines(k):
            results[f"{name}:{k.format}{suffix}"] = ENGINES[name](k)
    return results


def check_agreement(results: dict[str, LaurentPolynomial]) -> LaurentPolynomial:
    values = set(results.values())
    if len(values) != 1:
        detail = ", ".join(f"{name}: {p}" for name, p in results.items())
        raise EngineDisagreement(f"Alexander engines disagree ({detail})", results)
    return next(iter(values))


def alexander(*presentations: KnotPresentation) -> LaurentPolynomial:
    """Alexander polynomial of a knot given by one or more presentations.

    Every applicable engine runs on every presentation; any disagreement
    raises EngineDisagreement rather than picking a winner.
    """
    if not presentations:
        raise EngineNotApplicable("no presentation given")
    return check_agreement(alexander_all(*presentations))
