import json
import random

import pytest

from oracles import brute_force_collections, brute_force_surgery, fibration_euler, random_pair
from rimcalc.errors import (
    BadCharacteristics,
    InconsistentInputs,
    InputError,
    NotAnSWPair,
    NotNormalized,
    NotSymplectic,
    RankMismatch,
    SignatureUnknown,
)
from rimcalc.jsonio import canonical_json
from rimcalc.knot import BraidWord, DTCode, mirror, torus_knot
from rimcalc.laurent import GroupRingElement, LaurentPolynomial as L
from rimcalc.swtheory import (
    ManifoldCharacteristics as MC,
    PairDescriptor,
    SWInvariant,
    Verdict,
    basic_class_collections,
    blow_up,
    check_sw_symmetry,
    distinguish,
    fiber_sum_characteristics,
    list_presets,
    load_preset,
    rim_surgery_sw,
    standard_pair,
    symplectic_isotopy_obstruction,
)

TREFOIL = BraidWord(2, (1, 1, 1))
FIGURE_EIGHT = BraidWord(3, (1, -2, 1, -2))
D_TREFOIL = L({-1: 1, 0: -1, 1: 1})
K3 = MC(24, -16, 3)


def sw1(value, chars=K3):
    return SWInvariant(("T",), GroupRingElement(1, {(k,): c for k, c in value.items()}), chars)


def pair1(value, chars=K3, **kw):
    kw.setdefault("symplectic", True)
    return PairDescriptor(1, 0, sw1(value, chars), "T", **kw)


# -- characteristics -----------------------------------------------------------

@pytest.mark.parametrize(
    "value,chars,ok",
    [
        ({0: 1}, MC(24, -16), True),
        ({2: 1, -2: 1, 0: -1}, MC(24, -16), True),
        ({2: 1}, MC(24, -16), False),
        ({2: 1}, MC(36, -24), False),
        ({1: 1, -1: -1}, MC(36, -24), True),
        ({1: 1, -1: 1}, MC(36, -24), False),
    ],
)
def test_symmetry(value, chars, ok):
    assert check_sw_symmetry(sw1(value, chars)) is ok


def test_symmetry_needs_divisible_characteristics():
    with pytest.raises(BadCharacteristics):
        check_sw_symmetry(sw1({0: 1}, MC(3, 0)))


def test_blow_up():
    assert blow_up(MC(4, 0), 0) == MC(4, 0)
    assert blow_up(MC(3, 1), 9) == MC(12, -8)
    c = MC(3, 1, 1)
    assert blow_up(blow_up(c, 4), 5) == blow_up(c, 9)
    with pytest.raises(InputError):
        blow_up(c, -1)


def test_fiber_sum():
    e1 = MC(12, -8, 1)
    assert fiber_sum_characteristics(e1, e1, 1) == MC(24, -16, 3)
    a, b = MC(36, -20, 2), MC(36, -28, 4)
    assert fiber_sum_characteristics(a, b, 2) == fiber_sum_characteristics(b, a, 2)
    assert fiber_sum_characteristics(a, b, 2).euler == 76
    with pytest.raises(InputError):
        fiber_sum_characteristics(a, b, 0)


def test_standard_pair_genus_one():
    sp = standard_pair(1)
    assert sp.knot == torus_knot(2, 3)
    assert sp.monodromy_order == 6
    assert sp.chars == MC(12, -8, 1) == blow_up(MC(3, 1, 1), 9)
    assert sp.section_square == -1


@pytest.mark.parametrize("g", [1, 2, 3, 4, 5])
def test_standard_pair_euler_matches_fibration_formula(g):
    sig = -8 if g == 1 else -(4 * g * g)  # any admissible value; the signature is an input
    sp = standard_pair(g, signature=sig)
    assert sp.chars.euler == fibration_euler(g)
    assert sp.knot == torus_knot(2, 2 * g + 1)
    assert sp.monodromy_order == 4 * g + 2
    assert sp.section_square == -1
    assert sp.chars.b_plus == (sp.chars.euler - 2 + sig) // 2


def test_standard_pair_needs_signature_beyond_genus_one():
    with pytest.raises(SignatureUnknown):
        standard_pair(2)
    with pytest.raises(BadCharacteristics):
        standard_pair(2, signature=-35)
    with pytest.raises(InputError):
        standard_pair(0)


# -- rim surgery -----------------------------------------------------------------

def test_rim_surgery_trefoil_on_trivial_base():
    out = rim_surgery_sw(pair1({0: 1}), D_TREFOIL)
    assert out.value.terms == {(2,): 1, (0,): -1, (-2,): 1}
    assert out.chars == K3


def test_rim_surgery_unknot_is_identity():
    for name in list_presets():
        pair = load_preset(name)
        assert rim_surgery_sw(pair, L({0: 1})) == pair.base_sw


def test_rim_surgery_composes():
    pair = load_preset("k3_fiber")
    d2 = L({-1: -1, 0: 3, 1: -1})
    once = rim_surgery_sw(pair, D_TREFOIL)
    twice = rim_surgery_sw(PairDescriptor(1, 0, once, "T"), d2)
    assert twice.value == rim_surgery_sw(pair, D_TREFOIL * d2).value


def test_rim_surgery_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        rim_surgery_sw(pair1({0: 1}), L({0: 1, 1: -1, 2: 1}))
    with pytest.raises(NotNormalized):
        rim_surgery_sw(pair1({0: 1}), L({-1: 1, 0: 1, 1: 1}))


def test_rim_class_must_be_a_label():
    with pytest.raises(RankMismatch):
        PairDescriptor(1, 0, sw1({0: 1}), "F")


def test_rim_surgery_matches_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        pair = random_pair(rng, rank=rng.randint(1, 3))
        delta = L({0: 1})
        for _ in range(rng.randint(0, 2)):
            a = rng.randint(1, 3)
            delta = delta * L({-1: a, 0: 1 - 2 * a, 1: a})
        out = rim_surgery_sw(pair, delta)
        r = pair.rim_index
        assert out.value.terms == brute_force_surgery(pair.base_sw.value.terms, delta.terms, r)
        assert check_sw_symmetry(out)


# -- collections ------------------------------------------------------------------

def test_collections_trefoil():
    pair = pair1({0: 1})
    out = rim_surgery_sw(pair, D_TREFOIL)
    (c,) = basic_class_collections(pair.base_sw, out, "T")
    assert c.base_class == (0,)
    assert c.classes == ((-2,), (0,), (2,))
    assert c.size == 3 and not c.cancelled and not c.shared


def test_collections_unknot_are_singletons():
    pair = load_preset("e3_fiber")
    cols = basic_class_collections(pair.base_sw, pair.base_sw, "T")
    assert [c.size for c in cols] == [1, 1, 1]


def test_collections_plus_minus_b():
    pair = load_preset("k3_fiber")
    delta = L({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    cols = basic_class_collections(pair.base_sw, rim_surgery_sw(pair, delta), "T")
    assert [c.size for c in cols] == [5, 5]
    assert [c.base_class for c in cols] == [(-1, 0), (1, 0)]


def test_collections_report_cancellation_honestly():
    # base 1 + u + u^-1 with u = exp(2T) times the trefoil gives u^2 + 1 + u^-2:
    # the classes +-2T cancel and 0 is hit from three base classes
    pair = pair1({0: 1, 2: 1, -2: 1})
    out = rim_surgery_sw(pair, D_TREFOIL)
    assert out.value.terms == {(4,): 1, (0,): 1, (-4,): 1}
    cols = {c.base_class: c for c in basic_class_collections(pair.base_sw, out, "T")}
    expected = brute_force_collections(pair.base_sw.value.terms, D_TREFOIL.terms, 0)
    assert {b: c.classes for b, c in cols.items()} == expected
    assert cols[(2,)].cancelled and cols[(2,)].shared
    assert cols[(0,)].size == 1
    report = symplectic_isotopy_obstruction(pair, D_TREFOIL)
    assert report.verdict is Verdict.OBSTRUCTED
    assert "some predicted basic classes cancelled" in report.notes


def test_collections_inconsistent_inputs():
    pair = pair1({0: 1})
    with pytest.raises(InconsistentInputs):
        basic_class_collections(pair.base_sw, sw1({1: 1, -1: 1}), "T")
    with pytest.raises(InconsistentInputs):
        basic_class_collections(pair.base_sw, SWInvariant(("F",), GroupRingElement(1, {(0,): 1}), K3), "T")
    with pytest.raises(InconsistentInputs):
        basic_class_collections(pair.base_sw, sw1({1: 1, 0: -1, -1: 1}), "T")


# -- distinguish ------------------------------------------------------------------

def test_distinguish():
    pair = load_preset("e1_fiber")
    assert distinguish(pair, TREFOIL, FIGURE_EIGHT).verdict is Verdict.DISTINGUISHED
    assert distinguish(pair, TREFOIL, mirror(TREFOIL)).verdict is Verdict.NOT_DISTINGUISHED_BY_ALEXANDER
    assert distinguish(pair, TREFOIL, TREFOIL).verdict is Verdict.NOT_DISTINGUISHED_BY_ALEXANDER
    assert distinguish(pair, [TREFOIL, DTCode((4, 6, 2))], D_TREFOIL).verdict is Verdict.NOT_DISTINGUISHED_BY_ALEXANDER


def test_distinguish_is_symmetric():
    pair = load_preset("k3_fiber")
    a = distinguish(pair, TREFOIL, FIGURE_EIGHT)
    b = distinguish(pair, FIGURE_EIGHT, TREFOIL)
    assert a.verdict == b.verdict
    assert (a.sw1, a.sw2) == (b.sw2, b.sw1)


def test_distinguish_requires_sw_pair():
    with pytest.raises(NotAnSWPair):
        distinguish(pair1({}), TREFOIL, FIGURE_EIGHT)
    with pytest.raises(NotAnSWPair):
        distinguish(pair1({0: 1}, MC(12, -8, 1)), TREFOIL, FIGURE_EIGHT)


# -- obstruction ----------------------------------------------------------------------

def test_obstruction():
    pair = load_preset("e1_fiber")
    r = symplectic_isotopy_obstruction(pair, BraidWord(2, (1,)))
    assert r.verdict is Verdict.INCONCLUSIVE and r.witness_sizes == (1,)
    r = symplectic_isotopy_obstruction(pair, TREFOIL)
    assert r.verdict is Verdict.OBSTRUCTED and r.witness_sizes == (3,)
    assert json.loads(json.dumps(r.to_json()))["verdict"] == "OBSTRUCTED"


def test_obstruction_knotted_but_trivial_alexander():
    pair = load_preset("e1_fiber")
    # Kinoshita-Terasaka knot 11n_42 has Delta = 1
    from rimcalc.knot import iter_table_knots, load_knot_table

    rows = dict(iter_table_knots(load_knot_table()))["11n_42"]
    r = symplectic_isotopy_obstruction(pair, [e.presentation() for e in rows])
    assert r.delta == 1 and r.verdict is Verdict.INCONCLUSIVE


def test_obstruction_needs_symplectic_flag():
    with pytest.raises(NotSymplectic):
        symplectic_isotopy_obstruction(pair1({0: 1}, symplectic=False), TREFOIL)


# -- presets & JSON ---------------------------------------------------------------------

def test_presets_are_valid_sw_pairs():
    names = list_presets()
    assert {"e1_fiber", "k3_fiber", "e3_fiber", "cp2_cubic"} <= set(names)
    for name in names:
        pair = load_preset(name)
        assert pair.name == name
        pair.require_sw_pair()
        assert check_sw_symmetry(pair.base_sw)
        assert PairDescriptor.from_json(pair.to_json()) == pair


def test_sw_json_schema():
    sw = load_preset("e1_fiber").base_sw
    assert canonical_json(sw.to_json()) == '{"chars":{"b_plus":3,"e":24,"sign":-16},"classes":["F","T"],"value":{"0,0":1}}'
    assert SWInvariant.from_json(sw.to_json()) == sw
    assert sw.format_class((2, -1)) == "2F - T"


def test_preset_directory_override(tmp_path, monkeypatch):
    data = load_preset("k3_fiber").to_json()
    data["name"] = ""
    (tmp_path / "custom.json").write_text(json.dumps(data))
    monkeypatch.setenv("RIMCALC_DATA", str(tmp_path))
    assert list_presets() == ["custom"]
    assert load_preset("custom").name == "custom"
    with pytest.raises(InputError):
        load_preset("k3_fiber")


def test_preset_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_preset(str(bad))
    missing = tmp_path / "missing.json"
    missing.write_text('{"genus": 1}')
    with pytest.raises(InputError):
        load_preset(str(missing))
