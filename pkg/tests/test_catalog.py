import numpy as np
import pytest

from classtwo.catalog import (
    CaseNotCovered,
    DivisibilityError,
    FormulaExpr,
    NonIntegerValue,
    ParseError,
    UnknownGenerator,
    get_catalog,
    parse_relator,
)
from classtwo.ffield import resolve_params
from classtwo.structure import wedge_pos


@pytest.fixture(scope="module")
def cat():
    return get_catalog()


def test_census(cat):
    assert cat.census() == {3: 1, 4: 1, 5: 3, 6: 7, 7: 15, 8: 43}
    assert len(cat.entries) == 70
    assert cat.gp.id == "Gp"


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_every_entry_instantiates_and_validates(cat, p):
    for entry in list(cat) + [cat.gp]:
        pres = cat.instantiate(entry.id, p)
        assert pres.validate().ok
        assert pres.order_exponent == entry.n
        assert pres.k == entry.k
        assert pres.m == entry.m


def test_unknown_entry(cat):
    with pytest.raises(KeyError):
        cat.entry("9.9.9")


# -- relator parsing ---------------------------------------------------------


def test_parse_single_commutator():
    vec = parse_relator("[c,a]", 3).resolve(resolve_params(5))
    expected = np.zeros(3, dtype=np.int64)
    expected[wedge_pos(0, 2, 3)] = -1 % 5
    assert (vec == expected).all()


def test_parse_equation_with_omega():
    params = resolve_params(5)  # omega = 2
    vec = parse_relator("[d,c]=[b,a]^omega", 4).resolve(params)
    expected = np.zeros(6, dtype=np.int64)
    expected[wedge_pos(2, 3, 4)] = -1 % 5
    expected[wedge_pos(0, 1, 4)] = 2
    assert (vec == expected).all()


def test_parse_product_relator():
    vec = parse_relator("[d,b][c,a]", 4).resolve(resolve_params(5))
    expected = np.zeros(6, dtype=np.int64)
    expected[wedge_pos(1, 3, 4)] = -1 % 5
    expected[wedge_pos(0, 2, 4)] = -1 % 5
    assert (vec == expected).all()


def test_parse_negative_exponent():
    vec = parse_relator("[d,c]=[b,a][d,a]^-1", 4).resolve(resolve_params(5))
    expected = np.zeros(6, dtype=np.int64)
    expected[wedge_pos(2, 3, 4)] = -1 % 5
    expected[wedge_pos(0, 1, 4)] = 1
    expected[wedge_pos(0, 3, 4)] = -1 % 5
    assert (vec == expected).all()


def test_parse_errors():
    with pytest.raises(UnknownGenerator):
        parse_relator("[e,a]", 4)
    with pytest.raises(ParseError):
        parse_relator("[a,a]", 3)
    with pytest.raises(ParseError):
        parse_relator("[a b]", 3)
    with pytest.raises(ParseError):
        parse_relator("[b,a]=", 3)


# -- formulas ----------------------------------------------------------------


@pytest.mark.parametrize(
    "entry_id,p,expected",
    [
        ("3.2.1", 3, 11),
        ("4.3.1", 3, 33),
        ("5.4.2", 3, 83),
        ("6.4.4", 5, 649),
        ("7.4.6", 3, 123),
        ("8.5.18", 3, 465),
    ],
)
def test_class_poly_examples(cat, entry_id, p, expected):
    assert cat.class_poly_eval(entry_id, p) == expected


def test_class_poly_rejects_gp(cat):
    with pytest.raises(ValueError):
        cat.class_poly_eval("Gp", 5)


@pytest.mark.parametrize(
    "entry_id,p,expected",
    [
        ("3.2.1", 3, 432),
        ("4.3.1", 3, 23328),
        ("8.5.9", 3, 4 * 4 * 3**16),
    ],
)
def test_aut_formula_examples(cat, entry_id, p, expected):
    assert cat.aut_formula_eval(entry_id, p) == expected


def test_gp_aut_cases(cat):
    gl25 = (25 - 1) * (25 - 5)
    assert cat.aut_formula_eval("Gp", 5) == gl25 * 4 * 5**18
    gl27 = (49 - 1) * (49 - 7)
    assert cat.aut_formula_eval("Gp", 7) == gl27 * 2 * 7**18
    gl211 = (121 - 1) * (121 - 11)
    assert cat.aut_formula_eval("Gp", 11) == gl211 * 6 * 11**18
    # p = 13 = 1 mod 12 picks a case through V_p
    gl213 = (169 - 1) * (169 - 13)
    assert cat.aut_formula_eval("Gp", 13, v_p=0) == gl213 * 4 * 13**18
    assert cat.aut_formula_eval("Gp", 13, v_p=6) == gl213 * 36 * 13**18
    with pytest.raises(CaseNotCovered):
        cat.aut_formula_eval("Gp", 3)


@pytest.mark.parametrize(
    "entry_id,p,expected",
    [("3.2.1", 3, 48), ("4.3.1", 3, 864), ("6.4.4", 3, 11520)],
)
def test_expected_B_order_examples(cat, entry_id, p, expected):
    assert cat.expected_B_order(entry_id, p) == expected


def test_expected_B_order_divides_gl(cat):
    from classtwo.autos import gl_order

    for p in (3, 5):
        for entry in cat:
            b = cat.expected_B_order(entry.id, p)
            assert gl_order(entry.k, p) % b == 0, entry.id


def test_expected_B_order_gp(cat):
    assert cat.expected_B_order("Gp", 5) == 1920
    assert cat.expected_B_order("Gp", 7) == 4032


def test_formula_divisibility_guard():
    f = FormulaExpr("(p+1)/3")
    with pytest.raises(NonIntegerValue):
        f.evaluate(3)
    assert f.evaluate(5) == 2


def test_formula_juxtaposition():
    assert FormulaExpr("2(p-1)(p+1)p^2").evaluate(3) == 2 * 2 * 4 * 9
    assert FormulaExpr("(p^2-1)(p^2-p)4p^18").evaluate(3) == 8 * 6 * 4 * 3**18


def test_product_form_entries_have_expected_derived_rank(cat):
    # central/direct product entries expand to the documented relator lists
    expectations = {"5.4.2": 1, "6.5.1": 1, "6.5.2": 1, "7.6.1": 1,
                    "7.6.2": 1, "7.6.3": 1, "8.7.1": 1, "8.7.2": 1, "8.7.3": 1}
    for entry_id, m in expectations.items():
        assert cat.entry(entry_id).m == m
        pres = cat.instantiate(entry_id, 3)
        assert pres.m == m


def test_cross_factor_commutators_trivial_in_products(cat):
    # direct-factor generators of the k=6 amalgam commute with everything
    # outside their factor
    P = cat.instantiate("7.6.3", 5)
    a, c, e = P.generator(0), P.generator(2), P.generator(4)
    assert P.commutator(a, c) == P.identity()
    assert P.commutator(a, e) == P.identity()
    assert P.commutator(c, e) == P.identity()
    # and the amalgamated commutators coincide
    b, d, f = P.generator(1), P.generator(3), P.generator(5)
    assert P.commutator(d, c) == P.commutator(b, a)
    assert P.commutator(f, e) == P.commutator(b, a)


def test_catalog_override_roundtrip(tmp_path, cat):
    import json
    from importlib import resources

    from classtwo.catalog import load_catalog

    raw = json.loads(
        resources.files("classtwo.data").joinpath("catalog.json").read_text()
    )
    raw["entries"] = raw["entries"][:3]
    path = tmp_path / "small.json"
    path.write_text(json.dumps(raw))
    small = load_catalog(path)
    assert len(small.entries) == 3
    assert small.instantiate("3.2.1", 3).order == 27
