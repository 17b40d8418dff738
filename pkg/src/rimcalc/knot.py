"""Knot presentations and diagram-level machinery.

Three text formats are understood:

* braid  ``"3: 1 -2 1 -2"``: strand count, then signed generator indices
  (``i`` is sigma_i, ``-i`` its inverse);
* PD     ``"X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"``: each crossing lists its
  four edge labels counterclockwise, starting at the incoming under-strand;
  edges are numbered consecutively along the orientation;
* DT     ``"4 6 2"``: the even partners of the odd labels 1, 3, 5, ...; a
  negative entry means the strand passes over at the even label.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from importlib import resources
from itertools import groupby
from math import gcd
from pathlib import Path
from typing import Iterator, Union

from .errors import (
    InvalidLabels,
    NotAKnot,
    NotCoprime,
    PresentationSyntaxError,
)
from .laurent import LaurentPolynomial

__all__ = [
    "BraidWord",
    "PDCode",
    "DTCode",
    "KnotPresentation",
    "SeifertMatrix",
    "TableEntry",
    "parse_presentation",
    "torus_knot",
    "closure_components",
    "connected_sum",
    "mirror",
    "unknot",
    "dt_to_pd",
    "seifert_matrix_from_braid",
    "reduced_burau",
    "burau_generator",
    "load_knot_table",
    "iter_table_knots",
    "bundled_table_path",
]

FORMATS = ("braid", "pd", "dt")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    format = "braid"

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(g) for g in self.letters))
        if self.strands < 2:
            raise InvalidLabels(f"a braid needs at least 2 strands, got {self.strands}")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise InvalidLabels(f"generator {g} is out of range for {self.strands} strands")

    @property
    def crossing_count(self) -> int:
        return len(self.letters)

    def to_text(self) -> str:
        if not self.letters:
            return f"{self.strands}:"
        return f"{self.strands}: " + " ".join(str(g) for g in self.letters)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...] = ()

    format = "pd"

    def __post_init__(self):
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        object.__setattr__(self, "crossings", xs)
        _validate_pd(xs)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def to_text(self) -> str:
        return " ".join("X(%d,%d,%d,%d)" % x for x in self.crossings)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class DTCode:
    evens: tuple[int, ...] = ()

    format = "dt"

    def __post_init__(self):
        evens = tuple(int(e) for e in self.evens)
        object.__setattr__(self, "evens", evens)
        n = len(evens)
        if sorted(abs(e) for e in evens) != list(range(2, 2 * n + 1, 2)):
            raise InvalidLabels(f"DT entries must be a signed permutation of 2..{2 * n} step 2")

    @property
    def crossing_count(self) -> int:
        return len(self.evens)

    def to_text(self) -> str:
        return " ".join(str(e) for e in self.evens)

    def __str__(self):
        return self.to_text()


KnotPresentation = Union[BraidWord, PDCode, DTCode]


# -- parsing -------------------------------------------------------------------

_BRAID_RE = re.compile(r"\s*(\d+)\s*:((?:\s*[+-]?\d+)*)\s*")
_PD_CROSSING_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")
_PD_RE = re.compile(r"\s*(?:X\(\s*\d+\s*(?:,\s*\d+\s*){3}\)\s*)*")
_DT_RE = re.compile(r"\s*(?:[+-]?\d+\s*)*")


def parse_presentation(text: str, format: str) -> KnotPresentation:
    """Parse ``text`` in the given format and check it presents a knot."""
    if format == "braid":
        m = _BRAID_RE.fullmatch(text)
        if not m:
            raise PresentationSyntaxError(f"not a braid word: {text!r} (expected '<strands>: <letters>')")
        braid = BraidWord(int(m.group(1)), tuple(int(x) for x in m.group(2).split()))
        _require_knot(braid)
        return braid
    if format == "pd":
        if not _PD_RE.fullmatch(text):
            raise PresentationSyntaxError(f"not a PD code: {text!r} (expected 'X(a,b,c,d) ...')")
        xs = tuple(tuple(int(v) for v in m.groups()) for m in _PD_CROSSING_RE.finditer(text))
        pd = PDCode(xs)
        if pd_components(pd) != 1:
            raise NotAKnot("PD code describes more than one component")
        return pd
    if format == "dt":
        if not _DT_RE.fullmatch(text):
            raise PresentationSyntaxError(f"not a DT code: {text!r}")
        evens = tuple(int(x) for x in text.split())
        if any(e % 2 for e in evens):
            raise InvalidLabels(f"DT code entries must be even: {text!r}")
        return DTCode(evens)
    raise PresentationSyntaxError(f"unknown format {format!r}; expected one of {FORMATS}")


def _require_knot(braid: BraidWord) -> None:
    k = closure_components(braid)
    if k != 1:
        raise NotAKnot(f"closure of {braid} has {k} components")


# -- braids --------------------------------------------------------------------

def closure_components(braid: BraidWord) -> int:
    """Number of components of the closed braid."""
    at = list(range(braid.strands))  # position -> strand currently there
    for g in braid.letters:
        i = abs(g) - 1
        at[i], at[i + 1] = at[i + 1], at[i]
    nxt = {at[p]: p for p in range(braid.strands)}
    seen, count = set(), 0
    for s in range(braid.strands):
        if s in seen:
            continue
        count += 1
        while s not in seen:
            seen.add(s)
            s = nxt[s]
    return count


def torus_knot(p: int, q: int) -> BraidWord:
    """The braid ``(sigma_1 ... sigma_{p-1})^q`` whose closure is T(p, q)."""
    if p < 2 or q < 2:
        raise InvalidLabels("torus knot parameters must be at least 2")
    if gcd(p, q) != 1:
        raise NotCoprime(f"T({p},{q}) is a {gcd(p, q)}-component link")
    return BraidWord(p, tuple(range(1, p)) * q)


def unknot() -> BraidWord:
    return BraidWord(2, (1,))


def mirror(k: BraidWord) -> BraidWord:
    return BraidWord(k.strands, tuple(-g for g in k.letters))


def connected_sum(k1: BraidWord, k2: BraidWord) -> BraidWord:
    """Stack ``k2`` on the strands above ``k1``, sharing one strand."""
    _require_knot(k1)
    _require_knot(k2)
    shift = k1.strands - 1
    letters = k1.letters + tuple(g + shift if g > 0 else g - shift for g in k2.letters)
    return BraidWord(k1.strands + k2.strands - 1, letters)


# -- PD codes ------------------------------------------------------------------

def _validate_pd(crossings) -> None:
    n = len(crossings)
    counts: dict[int, int] = {}
    for x in crossings:
        if len(x) != 4:
            raise InvalidLabels(f"PD crossing {x} does not have four labels")
        for v in x:
            counts[v] = counts.get(v, 0) + 1
    if set(counts) != set(range(1, 2 * n + 1)):
        raise InvalidLabels(f"PD edge labels must be exactly 1..{2 * n}")
    bad = [v for v, c in counts.items() if c != 2]
    if bad:
        raise InvalidLabels(f"PD edge labels {sorted(bad)} do not appear exactly twice")
    for a, b, c, d in crossings:
        if (c - a) % (2 * n) != 1 % (2 * n):
            raise InvalidLabels(f"under-strand {a}->{c} is not consecutively labelled")
        if (b - d) % (2 * n) not in (1 % (2 * n), (2 * n - 1) % (2 * n)):
            raise InvalidLabels(f"over-strand {b},{d} is not consecutively labelled")


def pd_components(pd: PDCode) -> int:
    """Components of the diagram, following strands through crossings."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c, d in pd.crossings:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    return len({find(v) for x in pd.crossings for v in x}) if pd.crossings else 1


def pd_crossing_sign(crossing: tuple[int, int, int, int], edge_count: int) -> int:
    """+1 for a positive (right-handed) crossing, -1 for a negative one."""
    a, b, c, d = crossing
    # b sits to the right of the upward under-strand; the over-strand running
    # left to right (d -> b) gives a positive crossing.
    return 1 if (b - d) % edge_count == 1 else -1


# -- DT codes ------------------------------------------------------------------

def _dt_gauss(dt: DTCode):
    """Visit positions (0-based) and over-visit for each crossing."""
    visits, over = [], []
    for i, e in enumerate(dt.evens):
        odd, even = 2 * i, abs(e) - 1
        visits.append((min(odd, even), max(odd, even)))
        over.append(even if e < 0 else odd)
    return visits, over


def _count_faces(visits, eps) -> int:
    n = len(visits)
    # dart = (crossing, slot) with slots out1=0, out2=1, in1=2, in2=3
    at_position = {}
    for j, (p, q) in enumerate(visits):
        at_position[p] = (j, 0)
        at_position[q] = (j, 1)
    partner = {}
    for k in range(2 * n):
        j, which = at_position[k]
        j2, which2 = at_position[(k + 1) % (2 * n)]
        partner[(j, which)] = (j2, which2 + 2)
        partner[(j2, which2 + 2)] = (j, which)
    succ = {}
    for j in range(n):
        order = (0, 1, 2, 3) if eps[j] > 0 else (0, 3, 2, 1)
        for idx, slot in enumerate(order):
            succ[(j, slot)] = (j, order[(idx + 1) % 4])
    seen, faces = set(), 0
    for start in partner:
        if start in seen:
            continue
        faces += 1
        d = start
        while d not in seen:
            seen.add(d)
            d = succ[partner[d]]
    return faces


def _planar_orientations(visits):
    """Yield sign vectors making the Gauss curve planar (first entry fixed to +1).

    Each crossing ``i`` splits the curve into two loops; loops in the plane
    have algebraic intersection zero, which gives one linear condition per
    crossing on the local orientations of the interlaced crossings.  Those
    conditions prune the search; planarity is then confirmed by counting
    faces of the induced rotation system.
    """
    n = len(visits)
    constraints: list[list[tuple[int, int]]] = []
    for i, (p, q) in enumerate(visits):
        terms = []
        for j, (pj, qj) in enumerate(visits):
            inside_p, inside_q = p < pj < q, p < qj < q
            if inside_p != inside_q:
                terms.append((j, 1 if inside_p else -1))
        if len(terms) % 2:
            return
        if terms:
            constraints.append(terms)
    by_last: dict[int, list] = {}
    for terms in constraints:
        by_last.setdefault(max(j for j, _ in terms), []).append(terms)

    eps = [0] * n

    def search(k):
        if k == n:
            if _count_faces(visits, eps) == n + 2:
                yield list(eps)
            return
        for s in ((1,) if k == 0 else (1, -1)):
            eps[k] = s
            if all(sum(sg * eps[j] for j, sg in t) == 0 for t in by_last.get(k, ())):
                yield from search(k + 1)
        eps[k] = 0

    yield from search(0)


def dt_to_pd(dt: DTCode) -> PDCode:
    """Reconstruct a PD code from a DT code.

    The planar embedding of a prime diagram is unique up to reflection; for
    composite diagrams the first embedding found is used, which can differ
    from the intended one by mirroring a summand.  The Alexander polynomial
    does not see the difference.
    """
    n = dt.crossing_count
    if n == 0:
        return PDCode(())
    visits, over = _dt_gauss(dt)
    eps = next(_planar_orientations(visits), None)
    if eps is None:
        raise InvalidLabels(f"DT code {dt} is not realizable by a planar diagram")
    m = 2 * n

    def incoming(pos):  # 1-based position -> label of the edge arriving there
        return pos - 1 if pos > 1 else m

    crossings = []
    for j, (p, q) in enumerate(visits):
        first_over = over[j] == p
        writhe = eps[j] if first_over else -eps[j]
        under_pos = (q if first_over else p) + 1
        over_pos = (p if first_over else q) + 1
        a, c = incoming(under_pos), under_pos
        if writhe > 0:
            b, d = over_pos, incoming(over_pos)
        else:
            b, d = incoming(over_pos), over_pos
        crossings.append((a, b, c, d))
    return PDCode(tuple(crossings))


# -- Seifert matrix ------------------------------------------------------------

@dataclass(frozen=True)
class SeifertMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> SeifertMatrix:
        return SeifertMatrix(tuple(zip(*self.entries)) if self.entries else ())


def seifert_matrix_from_braid(braid: BraidWord) -> SeifertMatrix:
    """Seifert matrix of the closed braid's canonical Seifert surface.

    The surface is one disk per strand joined by a half-twisted band per
    letter.  The first homology has one loop for each pair of consecutive
    bands between the same two disks; loops are ordered by (strand pair,
    occurrence).  Entries are the linking numbers lk(a, b^+).
    """
    _require_knot(braid)
    bands: dict[int, list[tuple[int, int]]] = {}
    for pos, g in enumerate(braid.letters):
        bands.setdefault(abs(g), []).append((pos, 1 if g > 0 else -1))
    loops = []  # (column, start, end, sign_start, sign_end)
    for col in range(1, braid.strands):
        seq = bands.get(col, [])
        for (p1, s1), (p2, s2) in zip(seq, seq[1:]):
            loops.append((col, p1, p2, s1, s2))
    size = len(loops)
    V = [[0] * size for _ in range(size)]
    for a, (col, p1, p2, s1, s2) in enumerate(loops):
        V[a][a] = -(s1 + s2) // 2
        for b in range(a + 1, size):
            col_b, q1, q2, _, _ = loops[b]
            if col_b == col and q1 == p2:
                # consecutive loops sharing the band at p2
                V[a][b] = (s2 + 1) // 2
                V[b][a] = (s2 - 1) // 2
            elif col_b == col + 1:
                # loops on neighbouring strand pairs meet only when their
                # band intervals interleave
                if p1 < q1 < p2 < q2:
                    V[a][b] = -1
                elif q1 < p1 < q2 < p2:
                    V[a][b] = 1
    return SeifertMatrix(tuple(tuple(r) for r in V))


# -- reduced Burau -------------------------------------------------------------

_T = LaurentPolynomial({1: 1})
_MINUS_T = LaurentPolynomial({1: -1})
_T_INV = LaurentPolynomial({-1: 1})
_MINUS_T_INV = LaurentPolynomial({-1: -1})
_ONE = LaurentPolynomial({0: 1})
_ZERO = LaurentPolynomial()


def _identity(k: int) -> list[list[LaurentPolynomial]]:
    return [[_ONE if i == j else _ZERO for j in range(k)] for i in range(k)]


def burau_generator(i: int, sign: int, strands: int) -> list[list[LaurentPolynomial]]:
    """Reduced Burau image of ``sigma_i^sign`` as an explicit matrix.

    ``sigma_i`` differs from the identity only in row ``i-1``, which holds
    ``t, -t, 1`` in columns ``i-2, i-1, i`` (entries outside the matrix are
    dropped); the inverse has ``1, -t^-1, t^-1`` there.
    """
    k = strands - 1
    M = _identity(k)
    r = i - 1
    row = (_T, _MINUS_T, _ONE) if sign > 0 else (_ONE, _MINUS_T_INV, _T_INV)
    M[r] = [_ZERO] * k
    for offset, val in zip((-1, 0, 1), row):
        c = r + offset
        if 0 <= c < k:
            M[r][c] = val
    return M


def _apply_generator(M, r: int, sign: int) -> None:
    # In-place M <- M * S for the generator matrix S with special row r.
    k = len(M)
    for row in M:
        x = row[r]
        if not x:
            continue
        if sign > 0:
            if r - 1 >= 0:
                row[r - 1] = row[r - 1] + x * _T
            if r + 1 < k:
                row[r + 1] = row[r + 1] + x
            row[r] = x * _MINUS_T
        else:
            if r - 1 >= 0:
                row[r - 1] = row[r - 1] + x
            if r + 1 < k:
                row[r + 1] = row[r + 1] + x * _T_INV
            row[r] = x * _MINUS_T_INV


def reduced_burau(braid: BraidWord) -> list[list[LaurentPolynomial]]:
    """Product of the reduced Burau images of the letters, left to right."""
    M = _identity(braid.strands - 1)
    for g in braid.letters:
        _apply_generator(M, abs(g) - 1, 1 if g > 0 else -1)
    return M


# -- knot table ----------------------------------------------------------------

@dataclass(frozen=True)
class TableEntry:
    name: str
    format: str
    code: str

    def presentation(self) -> KnotPresentation:
        return parse_presentation(self.code, self.format)


def bundled_table_path() -> Path:
    return Path(str(resources.files("rimcalc") / "data" / "knot_table.csv"))


def load_knot_table(source: str | Path | io.TextIOBase | None = None) -> list[TableEntry]:
    """Read a ``name,format,code`` CSV (the bundled table by default)."""
    if source is None:
        source = bundled_table_path()
    if isinstance(source, (str, Path)):
        try:
            with open(source, newline="") as fh:
                return _read_table(fh)
        except OSError as exc:
            raise PresentationSyntaxError(f"cannot read knot table {source}: {exc}") from exc
    return _read_table(source)


def _read_table(fh) -> list[TableEntry]:
    reader = csv.DictReader(fh)
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["name", "format", "code"]:
        raise PresentationSyntaxError("knot table must have the header name,format,code")
    return [TableEntry(row["name"].strip(), row["format"].strip(), row["code"] or "") for row in reader]


def iter_table_knots(entries: list[TableEntry]) -> Iterator[tuple[str, list[TableEntry]]]:
    """Group consecutive rows sharing a name."""
    for name, rows in groupby(entries, key=lambda e: e.name):
        yield name, list(rows)
