"""Exact integer Laurent polynomials and group-ring elements.

Both types are sparse maps ``exponent -> coefficient`` with every zero
coefficient purged, so equality is plain map equality.  Coefficients are
Python ints (unbounded).  Values are immutable once constructed.

``LaurentPolynomial`` lives in Z[t, t^-1]; ``GroupRingElement`` lives in the
group ring Z[Z^r], with exponent vectors stored as length-r int tuples.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

from .errors import (
    DivisionNotExact,
    NonSymmetrizable,
    NotUnitNormalizable,
    RankMismatch,
)

__all__ = [
    "LaurentPolynomial",
    "GroupRingElement",
    "substitute_monomial",
    "normalize_alexander",
    "is_normalized_alexander",
    "laurent_gcd",
]


def _purged(items) -> dict:
    return {e: c for e, c in items if c}


class LaurentPolynomial:
    """Integer Laurent polynomial in one variable ``t``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        if terms is None:
            items = ()
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            acc[e] = acc.get(e, 0) + c
        self._terms = _purged(acc.items())
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPolynomial:
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, coeff: int = 1, exp: int = 0) -> LaurentPolynomial:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPolynomial:
        return cls({0: c})

    @classmethod
    def t(cls) -> LaurentPolynomial:
        return cls({1: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], valuation: int = 0) -> LaurentPolynomial:
        """Build from a dense coefficient list, lowest exponent first."""
        return cls((valuation + i, c) for i, c in enumerate(coeffs))

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    __getitem__ = coefficient

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True for the units of Z[t, t^-1], namely ``±t^k``."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(self._terms)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return min(self._terms)

    def evaluate(self, x: int) -> int:
        """Exact evaluation at a nonzero integer (``x = ±1`` keeps it integral)."""
        if x in (1, -1):
            return sum(c * (x ** (e % 2)) for e, c in self._terms.items())
        from fractions import Fraction

        val = sum(c * Fraction(x) ** e for e, c in self._terms.items())
        return val if val.denominator != 1 else int(val)

    __call__ = evaluate

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> LaurentPolynomial | None:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial._raw({0: other} if other else {})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return LaurentPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial._raw(_purged(acc.items()))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise DivisionNotExact("only units have negative powers")
            return self.inverse() ** (-n)
        result = LaurentPolynomial._raw({0: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> LaurentPolynomial:
        if not self.is_unit():
            raise DivisionNotExact(f"{self} is not a unit")
        ((e, c),) = self._terms.items()
        return LaurentPolynomial._raw({-e: c})

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by ``t^k``."""
        return LaurentPolynomial._raw({e + k: c for e, c in self._terms.items()})

    def reflect(self) -> LaurentPolynomial:
        """The substitution ``t -> t^-1``."""
        return LaurentPolynomial._raw({-e: c for e, c in self._terms.items()})

    def exact_div(self, other) -> LaurentPolynomial:
        """Quotient ``self / other``; raises DivisionNotExact on a nonzero remainder."""
        divisor = self._coerce(other)
        if divisor is None:
            raise TypeError(f"cannot divide by {type(other).__name__}")
        other = divisor
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return LaurentPolynomial()
        d_top = max(other._terms)
        d_lead = other._terms[d_top]
        lowest = min(self._terms) - min(other._terms)
        rem = dict(self._terms)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            c = rem[top]
            qe = top - d_top
            if qe < lowest or c % d_lead:
                raise DivisionNotExact(f"{other} does not divide {self}")
            qc = c // d_lead
            quot[qe] = qc
            for de, dc in other._terms.items():
                k = qe + de
                v = rem.get(k, 0) - qc * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPolynomial._raw(quot)

    def content(self) -> int:
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial._raw({0: other} if other else {})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPolynomial:
        return cls((int(k), int(v)) for k, v in data.items())

    def __repr__(self):
        return f"LaurentPolynomial({self.to_json()!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


class GroupRingElement:
    """Integer formal sum over the lattice Z^rank.

    A term ``{(a1, ..., ar): c}`` stands for ``c * t1^a1 ... tr^ar``; in the
    Seiberg-Witten reading the exponent vector is a homology class ``beta``
    and the monomial is ``exp(beta)``.
    """

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[tuple, int] | Iterable | None = None):
        if rank < 1:
            raise RankMismatch(f"rank must be positive, got {rank}")
        if terms is None:
            items = ()
        elif isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[tuple, int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != rank:
                raise RankMismatch(f"exponent {e} has length {len(e)}, expected {rank}")
            acc[e] = acc.get(e, 0) + int(c)
        self.rank = rank
        self._terms = _purged(acc.items())
        self._hash = None

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> GroupRingElement:
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def one(cls, rank: int) -> GroupRingElement:
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff: int = 1) -> GroupRingElement:
        exp = tuple(exp)
        return cls(len(exp), {exp: coeff})

    @property
    def terms(self) -> dict[tuple, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self) -> set[tuple]:
        return set(self._terms)

    def coefficient(self, exp: Iterable[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    __getitem__ = coefficient

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other) -> GroupRingElement | None:
        if isinstance(other, int):
            return GroupRingElement._raw(self.rank, {(0,) * self.rank: other} if other else {})
        if not isinstance(other, GroupRingElement):
            return None
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return GroupRingElement._raw(self.rank, acc)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement._raw(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        acc: dict[tuple, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return GroupRingElement._raw(self.rank, _purged(acc.items()))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = GroupRingElement.one(self.rank)
        for _ in range(n):
            result = result * self
        return result

    def negate_exponents(self) -> GroupRingElement:
        """The involution ``exp(beta) -> exp(-beta)``."""
        return GroupRingElement._raw(
            self.rank, {tuple(-x for x in e): c for e, c in self._terms.items()}
        )

    def exact_div(self, other) -> GroupRingElement:
        """Exact quotient by leading-term elimination in lexicographic order.

        Lex order on Z^r is translation invariant, so the lex-leading term of a
        product is the product of leading terms.  Degrees in each variable add
        under multiplication, so every quotient exponent lies in a box fixed by
        the operands; leaving the box means the division is not exact, and the
        remainder's leading term strictly decreases inside a finite set, so the
        loop terminates.
        """
        other = self._check(other)
        if other is None:
            raise TypeError("can only divide by a GroupRingElement or int")
        if not other._terms:
            raise ZeroDivisionError("division by zero")
        if not self._terms:
            return GroupRingElement._raw(self.rank, {})
        d_top = max(other._terms)
        d_lead = other._terms[d_top]
        lo = [min(e[i] for e in self._terms) - min(e[i] for e in other._terms) for i in range(self.rank)]
        hi = [max(e[i] for e in self._terms) - max(e[i] for e in other._terms) for i in range(self.rank)]
        rem = dict(self._terms)
        quot: dict[tuple, int] = {}
        while rem:
            top = max(rem)
            c = rem[top]
            qe = tuple(a - b for a, b in zip(top, d_top))
            if c % d_lead or any(not lo[i] <= qe[i] <= hi[i] for i in range(self.rank)):
                raise DivisionNotExact("divisor does not divide dividend in the group ring")
            qc = c // d_lead
            quot[qe] = qc
            for de, dc in other._terms.items():
                k = tuple(a + b for a, b in zip(qe, de))
                v = rem.get(k, 0) - qc * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return GroupRingElement._raw(self.rank, quot)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement._raw(self.rank, {(0,) * self.rank: other} if other else {})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def to_json(self) -> dict[str, int]:
        return {",".join(map(str, e)): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int], rank: int | None = None) -> GroupRingElement:
        items = []
        for k, v in data.items():
            try:
                exp = tuple(int(x) for x in k.split(","))
            except ValueError as exc:
                raise RankMismatch(f"bad exponent key {k!r}") from exc
            items.append((exp, v))
        if rank is None:
            if not items:
                raise RankMismatch("rank is required for an empty element")
            rank = len(items[0][0])
        return cls(rank, items)

    def __repr__(self):
        return f"GroupRingElement({self.rank}, {self.to_json()!r})"


def substitute_monomial(p: LaurentPolynomial, image: Iterable[int], rank: int) -> GroupRingElement:
    """Send ``t^m`` to the lattice monomial at ``m * image``.

    With ``image = 2 e_T`` this is the substitution ``t = exp(2[T])`` for a
    rim torus class ``T``.
    """
    image = tuple(int(x) for x in image)
    if len(image) != rank:
        raise RankMismatch(f"image {image} does not have length {rank}")
    acc: dict[tuple, int] = {}
    for m, c in p.items():
        e = tuple(m * x for x in image)
        acc[e] = acc.get(e, 0) + c
    return GroupRingElement(rank, acc)


def is_normalized_alexander(p: LaurentPolynomial) -> bool:
    return bool(p) and p == p.reflect() and p.evaluate(1) == 1


def normalize_alexander(p: LaurentPolynomial) -> LaurentPolynomial:
    """Return the symmetric representative ``±t^k p`` with value 1 at ``t = 1``."""
    value = p.evaluate(1) if p else 0
    if value not in (1, -1):
        raise NotUnitNormalizable(f"{p} evaluates to {value} at t=1")
    lo, hi = p.valuation, p.degree
    if (lo + hi) % 2:
        raise NonSymmetrizable(f"{p} has an exponent span of odd length")
    q = p.shift(-(lo + hi) // 2)
    if value == -1:
        q = -q
    if q != q.reflect():
        raise NonSymmetrizable(f"no unit multiple of {p} is palindromic")
    return q


# -- gcd in Z[t, t^-1] ------------------------------------------------------

def _dense(p: LaurentPolynomial) -> list[int]:
    lo = p.valuation
    out = [0] * (p.degree - lo + 1)
    for e, c in p.items():
        out[e - lo] = c
    return out


def _content(f: list[int]) -> int:
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def _primitive(f: list[int]) -> list[int]:
    g = _content(f)
    if f[-1] < 0:
        g = -g
    return [c // g for c in f]


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g over Z (dense lists, lowest degree first)."""
    f = list(f)
    lead = g[-1]
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1]
        shift = len(f) - 1 - dg
        f = [lead * x for x in f]
        for i, gc in enumerate(g):
            f[shift + i] -= c * gc
        _trim(f)
    return f


def laurent_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """A gcd in Z[t, t^-1], defined up to units; valuation 0, positive lead."""
    if not a or not b:
        nz = a or b
        if not nz:
            return LaurentPolynomial()
        f = _dense(nz)
        sign = 1 if f[-1] > 0 else -1
        return LaurentPolynomial.from_coeffs([sign * c for c in f])
    f, g = _dense(a), _dense(b)
    cont = gcd(_content(f), _content(g))
    f, g = _primitive(f), _primitive(g)
    if len(f) < len(g):
        f, g = g, f
    while g:
        r = _prem(f, g)
        f, g = g, (_primitive(r) if r else [])
    f = _primitive(f)
    return LaurentPolynomial.from_coeffs([cont * c for c in f])
