"""Seiberg-Witten bookkeeping for rim surgery.

A Seiberg-Witten invariant is stored as a group-ring element over the
second-homology lattice spanned by named basis classes: the term
``c * exp(beta)`` records ``SW(beta) = c``.  Rim surgery along a knot ``K``
multiplies the invariant of the fiber sum by ``Delta_K(exp(2T))`` where ``T``
is the rim torus class; everything here works at that algebraic level.
Gauge theory is not computed; base invariants come from presets or callers.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Sequence, Union

from .alexander import alexander
from .errors import (
    BadCharacteristics,
    DivisionNotExact,
    InconsistentInputs,
    InputError,
    NotAnSWPair,
    NotNormalized,
    NotSymplectic,
    RankMismatch,
    SignatureUnknown,
)
from .knot import BraidWord, KnotPresentation, torus_knot
from .laurent import (
    GroupRingElement,
    LaurentPolynomial,
    is_normalized_alexander,
    substitute_monomial,
)

__all__ = [
    "ManifoldCharacteristics",
    "SWInvariant",
    "PairDescriptor",
    "StandardPairData",
    "BasicClassCollection",
    "Verdict",
    "DistinguishReport",
    "ObstructionReport",
    "check_sw_symmetry",
    "blow_up",
    "fiber_sum_characteristics",
    "standard_pair",
    "rim_surgery_sw",
    "basic_class_collections",
    "distinguish",
    "symplectic_isotopy_obstruction",
    "preset_dir",
    "list_presets",
    "load_preset",
]


@dataclass(frozen=True)
class ManifoldCharacteristics:
    euler: int
    signature: int
    b_plus: int = 0

    def symmetry_sign(self) -> int:
        """``(-1)^((e + sign)/4)``, the sign relating SW(-beta) to SW(beta)."""
        total = self.euler + self.signature
        if total % 4:
            raise BadCharacteristics(
                f"e + sign = {total} is not divisible by 4 (e={self.euler}, sign={self.signature})"
            )
        return -1 if (total // 4) % 2 else 1

    def to_json(self) -> dict:
        return {"e": self.euler, "sign": self.signature, "b_plus": self.b_plus}

    @classmethod
    def from_json(cls, data) -> ManifoldCharacteristics:
        try:
            return cls(int(data["e"]), int(data["sign"]), int(data.get("b_plus", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad characteristics {data!r}") from exc


@dataclass(frozen=True)
class SWInvariant:
    classes: tuple[str, ...]
    value: GroupRingElement
    chars: ManifoldCharacteristics

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        if len(set(self.classes)) != len(self.classes):
            raise InputError(f"duplicate class labels in {self.classes}")
        if self.value.rank != len(self.classes):
            raise RankMismatch(f"value has rank {self.value.rank} but {len(self.classes)} classes are named")

    @property
    def rank(self) -> int:
        return len(self.classes)

    def index(self, label: str) -> int:
        try:
            return self.classes.index(label)
        except ValueError:
            raise RankMismatch(f"{label!r} is not one of the classes {self.classes}") from None

    def basic_classes(self) -> list[tuple[int, ...]]:
        return sorted(self.value.support())

    def format_class(self, exp: Sequence[int]) -> str:
        """Render an exponent vector as a combination of the named classes."""
        parts = []
        for label, k in zip(self.classes, exp):
            if k:
                parts.append(f"{k}{label}" if k not in (1, -1) else ("-" if k < 0 else "") + label)
        return " + ".join(parts).replace("+ -", "- ") or "0"

    def to_json(self) -> dict:
        return {"classes": list(self.classes), "chars": self.chars.to_json(), "value": self.value.to_json()}

    @classmethod
    def from_json(cls, data) -> SWInvariant:
        try:
            classes = tuple(data["classes"])
            chars = ManifoldCharacteristics.from_json(data["chars"])
            value = GroupRingElement.from_json(data["value"], rank=len(classes))
        except KeyError as exc:
            raise InputError(f"SW invariant is missing {exc}") from exc
        return cls(classes, value, chars)


@dataclass(frozen=True)
class PairDescriptor:
    """An (X, Sigma) setup: genus, self-intersection and the base invariant
    of the fiber sum with the standard pair."""

    genus: int
    self_intersection: int
    base_sw: SWInvariant
    rim_class: str
    symplectic: bool = False
    name: str = ""
    description: str = ""

    def __post_init__(self):
        if self.genus < 1:
            raise InputError(f"genus must be at least 1, got {self.genus}")
        if self.self_intersection < 0:
            raise InputError(f"self-intersection must be nonnegative, got {self.self_intersection}")
        self.base_sw.index(self.rim_class)

    @property
    def rim_index(self) -> int:
        return self.base_sw.index(self.rim_class)

    def is_sw_pair(self) -> bool:
        return self.base_sw.chars.b_plus > 1 and not self.base_sw.value.is_zero()

    def require_sw_pair(self) -> None:
        if self.base_sw.chars.b_plus <= 1:
            raise NotAnSWPair(f"b+ = {self.base_sw.chars.b_plus}; the fiber sum needs b+ > 1")
        if self.base_sw.value.is_zero():
            raise NotAnSWPair("the fiber sum has vanishing Seiberg-Witten invariant")

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "self_intersection": self.self_intersection,
            "rim_class": self.rim_class,
            "symplectic": self.symplectic,
        }
        if self.name:
            out["name"] = self.name
        if self.description:
            out["description"] = self.description
        out.update(self.base_sw.to_json())
        return out

    @classmethod
    def from_json(cls, data) -> PairDescriptor:
        try:
            return cls(
                genus=int(data["genus"]),
                self_intersection=int(data["self_intersection"]),
                base_sw=SWInvariant.from_json(data),
                rim_class=data["rim_class"],
                symplectic=bool(data.get("symplectic", False)),
                name=data.get("name", ""),
                description=data.get("description", ""),
            )
        except KeyError as exc:
            raise InputError(f"pair descriptor is missing {exc}") from exc


@dataclass(frozen=True)
class StandardPairData:
    genus: int
    knot: BraidWord
    monodromy_order: int
    chars: ManifoldCharacteristics
    section_square: int = -1


# -- characteristic numbers ------------------------------------------------------

def check_sw_symmetry(sw: SWInvariant) -> bool:
    """Does SW(-beta) = (-1)^((e+sign)/4) SW(beta) hold for every class?"""
    eps = sw.chars.symmetry_sign()
    value = sw.value
    return all(value.coefficient(tuple(-x for x in beta)) == eps * c for beta, c in value.items())


def blow_up(chars: ManifoldCharacteristics, n: int) -> ManifoldCharacteristics:
    """Characteristic numbers of ``X # n CP^2-bar``."""
    if n < 0:
        raise InputError("cannot blow up a negative number of times")
    return ManifoldCharacteristics(chars.euler + n, chars.signature - n, chars.b_plus)


def fiber_sum_characteristics(
    a: ManifoldCharacteristics, b: ManifoldCharacteristics, g: int
) -> ManifoldCharacteristics:
    """Fiber sum along genus-g surfaces.

    Euler numbers add with a correction of ``4g - 4`` (two copies of
    ``Sigma_g x D^2`` are removed and glued along ``Sigma_g x S^1``) and
    signatures add by Novikov additivity.  ``b_plus`` is recorded as
    ``b+(a) + b+(b) + 1``: a convention good enough for the ``b+ > 1`` gate,
    not a computed topological claim.
    """
    if g < 1:
        raise InputError(f"genus must be at least 1, got {g}")
    return ManifoldCharacteristics(
        a.euler + b.euler + 4 * g - 4,
        a.signature + b.signature,
        a.b_plus + b.b_plus + 1,
    )


def standard_pair(g: int, signature: int | None = None) -> StandardPairData:
    """The standard pair (Y_g, S_g) built from 4g+2 copies of the T(2, 2g+1)
    singular-fiber neighbourhood.

    Y_1 is the rational elliptic surface CP^2 # 9 CP^2-bar.  For g > 1 the
    signature is not determined here and must be supplied; b+ then follows
    from simple connectivity, ``b2 = e - 2``.
    """
    if g < 1:
        raise InputError(f"genus must be at least 1, got {g}")
    euler = 8 * g * g + 4
    if signature is None:
        if g != 1:
            raise SignatureUnknown(f"the signature of Y_{g} must be supplied")
        signature = -8
    b2 = euler - 2
    if (b2 + signature) % 2 or abs(signature) > b2:
        raise BadCharacteristics(f"signature {signature} is incompatible with b2 = {b2}")
    chars = ManifoldCharacteristics(euler, signature, (b2 + signature) // 2)
    return StandardPairData(g, torus_knot(2, 2 * g + 1), 4 * g + 2, chars, -1)


# -- rim surgery -------------------------------------------------------------------

def rim_surgery_sw(pair: PairDescriptor, delta: LaurentPolynomial) -> SWInvariant:
    """SW of the rim-surgered fiber sum: base * Delta(exp(2T))."""
    if not is_normalized_alexander(delta):
        raise NotNormalized(f"{delta} is not a symmetric Alexander polynomial with value 1 at t=1")
    base = pair.base_sw
    image = [0] * base.rank
    image[base.index(pair.rim_class)] = 2
    factor = substitute_monomial(delta, image, base.rank)
    return SWInvariant(base.classes, base.value * factor, base.chars)


@dataclass(frozen=True)
class BasicClassCollection:
    """Surgered basic classes ``b + 2mT`` sitting over one base class ``b``."""

    base_class: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    expected_size: int
    cancelled: bool = False
    shared: bool = False

    @property
    def size(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        key = lambda e: ",".join(map(str, e))  # noqa: E731
        return {
            "base_class": key(self.base_class),
            "classes": [key(c) for c in self.classes],
            "size": self.size,
            "expected_size": self.expected_size,
            "cancelled": self.cancelled,
            "shared": self.shared,
        }


def basic_class_collections(
    base: SWInvariant, surgered: SWInvariant, rim_class: str
) -> list[BasicClassCollection]:
    """Group the surgered basic classes into collections over the base classes.

    The Alexander factor is recovered as the exact quotient surgered/base and
    must be supported on multiples of ``2T``.  Collections report the honest
    post-cancellation support: ``cancelled`` marks a collection that lost a
    predicted class to coefficient cancellation, ``shared`` one that has a
    class in common with another collection.
    """
    if base.classes != surgered.classes:
        raise InconsistentInputs(f"class labels differ: {base.classes} vs {surgered.classes}")
    r = base.index(rim_class)
    if base.value.is_zero():
        if not surgered.value.is_zero():
            raise InconsistentInputs("nonzero surgered invariant over a vanishing base")
        return []
    try:
        quotient = surgered.value.exact_div(base.value)
    except DivisionNotExact:
        raise InconsistentInputs("surgered invariant is not a multiple of the base invariant") from None
    steps = []
    for exp, c in quotient.items():
        if any(x for i, x in enumerate(exp) if i != r) or exp[r] % 2:
            raise InconsistentInputs(f"surgered support leaves the lattice of multiples of 2{rim_class}")
        steps.append(exp[r] // 2)
    if not steps:
        raise InconsistentInputs("surgered invariant vanishes over a nonzero base")
    support = surgered.value.support()
    owners: dict[tuple, int] = {}
    raw = []
    for b in base.basic_classes():
        predicted = []
        for m in sorted(steps):
            cls = list(b)
            cls[r] += 2 * m
            predicted.append(tuple(cls))
        present = tuple(c for c in predicted if c in support)
        for c in present:
            owners[c] = owners.get(c, 0) + 1
        raw.append((b, present, len(predicted)))
    if set(owners) != support:
        raise InconsistentInputs("surgered classes not accounted for by any base class")
    return [
        BasicClassCollection(
            base_class=b,
            classes=present,
            expected_size=expected,
            cancelled=len(present) < expected,
            shared=any(owners[c] > 1 for c in present),
        )
        for b, present, expected in raw
    ]


# -- decision procedures -------------------------------------------------------------

class Verdict(str, Enum):
    DISTINGUISHED = "DISTINGUISHED"
    NOT_DISTINGUISHED_BY_ALEXANDER = "NOT_DISTINGUISHED_BY_ALEXANDER"
    OBSTRUCTED = "OBSTRUCTED"
    INCONCLUSIVE = "INCONCLUSIVE"


KnotInput = Union[KnotPresentation, Sequence[KnotPresentation], LaurentPolynomial]


def _delta(k: KnotInput) -> LaurentPolynomial:
    if isinstance(k, LaurentPolynomial):
        if not is_normalized_alexander(k):
            raise NotNormalized(f"{k} is not a normalized Alexander polynomial")
        return k
    if isinstance(k, (list, tuple)):
        return alexander(*k)
    return alexander(k)


@dataclass(frozen=True)
class DistinguishReport:
    verdict: Verdict
    delta1: LaurentPolynomial
    delta2: LaurentPolynomial
    sw1: SWInvariant
    sw2: SWInvariant
    pair: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "pair": self.pair,
            "alexander": [self.delta1.to_json(), self.delta2.to_json()],
            "surgered_sw": [self.sw1.to_json(), self.sw2.to_json()],
        }


def distinguish(pair: PairDescriptor, k1: KnotInput, k2: KnotInput) -> DistinguishReport:
    """Decide whether the Alexander polynomial separates (X, Sigma_K1) from (X, Sigma_K2).

    Different polynomials rule out a diffeomorphism of pairs.  Equal
    polynomials give no conclusion either way.
    """
    pair.require_sw_pair()
    d1, d2 = _delta(k1), _delta(k2)
    verdict = Verdict.DISTINGUISHED if d1 != d2 else Verdict.NOT_DISTINGUISHED_BY_ALEXANDER
    return DistinguishReport(verdict, d1, d2, rim_surgery_sw(pair, d1), rim_surgery_sw(pair, d2), pair.name)


@dataclass(frozen=True)
class ObstructionReport:
    verdict: Verdict
    delta: LaurentPolynomial
    surgered: SWInvariant
    collections: tuple[BasicClassCollection, ...]
    witness_sizes: tuple[int, ...]
    symplectic_hypothesis: bool = True
    pair: str = ""
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "pair": self.pair,
            "symplectic_hypothesis": self.symplectic_hypothesis,
            "alexander": self.delta.to_json(),
            "surgered_sw": self.surgered.to_json(),
            "collections": [c.to_json() for c in self.collections],
            "witness_sizes": list(self.witness_sizes),
            "notes": list(self.notes),
        }


def symplectic_isotopy_obstruction(pair: PairDescriptor, k: KnotInput) -> ObstructionReport:
    """Is Sigma_K obstructed from being isotopic to a symplectic surface?

    If Delta_K != 1 every collection ``{b + 2mT}`` has several basic classes,
    all pairing equally with the symplectic form, so no class can be the
    unique maximizer that a canonical class must be.  Requires the pair to be
    flagged as coming from a symplectic surface.
    """
    pair.require_sw_pair()
    if not pair.symplectic:
        raise NotSymplectic(f"pair {pair.name or '<unnamed>'} is not flagged as symplectic")
    delta = _delta(k)
    surgered = rim_surgery_sw(pair, delta)
    collections = tuple(basic_class_collections(pair.base_sw, surgered, pair.rim_class))
    sizes = tuple(c.size for c in collections)
    nontrivial = delta != 1
    spread = any(s > 1 for s in sizes)
    verdict = Verdict.OBSTRUCTED if nontrivial else Verdict.INCONCLUSIVE
    if not (nontrivial == spread == (verdict is Verdict.OBSTRUCTED)):
        raise InconsistentInputs(
            "coefficient cancellation broke the correspondence between Delta != 1 and collection sizes"
        )
    notes = []
    if any(c.cancelled for c in collections):
        notes.append("some predicted basic classes cancelled")
    if any(c.shared for c in collections):
        notes.append("some collections share classes")
    return ObstructionReport(verdict, delta, surgered, collections, sizes, True, pair.name, tuple(notes))


# -- presets -------------------------------------------------------------------------

def preset_dir() -> Path:
    """Directory holding pair presets; ``RIMCALC_DATA`` overrides the bundled one."""
    override = os.environ.get("RIMCALC_DATA")
    if override:
        return Path(override)
    return Path(str(resources.files("rimcalc") / "data" / "presets"))


def list_presets() -> list[str]:
    return sorted(p.stem for p in preset_dir().glob("*.json"))


def load_preset(name_or_path: str | Path) -> PairDescriptor:
    """Load a pair descriptor by preset name or from a JSON file path."""
    path = Path(name_or_path)
    if not path.is_file():
        path = preset_dir() / f"{name_or_path}.json"
    if not path.is_file():
        raise InputError(f"no preset {name_or_path!r} (looked in {preset_dir()})")
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from exc
    pair = PairDescriptor.from_json(data)
    if not pair.name:
        pair = PairDescriptor(**{**pair.__dict__, "name": path.stem})
    return pair
