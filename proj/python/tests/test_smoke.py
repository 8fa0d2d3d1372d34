from fractions import Fraction

import pytest
import sympy

import normforge as nf


def test_schema_and_splitting():
    r = nf.field_factor([1, 1, 1], 7)
    assert r["schema_version"] == nf.SCHEMA_VERSION == 1
    assert r["sum_ef"] == 2
    assert len(r["primes"]) == 2
    info = nf.field_info("Q(i)")
    assert info["field"]["degree"] == 2
    assert info["field"]["discriminant"] == "-4"
    assert info["real_embeddings"] == 0


def test_cyclic_and_trees():
    c = nf.cyclic_construct(3, 1)
    assert c["ell"] == 7
    assert c["poly_text"] == "x^3 + x^2 - 2x - 1"
    assert c["q_inert"] is True
    t = nf.tower_grow("five-power", 2, depth=3)
    assert [n["f"] for n in t["tree"]["nodes"][1:4]] == [4, 20, 100]
    cert = nf.tower_classify("five-power", 2, q=2, depth=3)["certificate"]
    assert cert["kind"] == "completelyQBounded"
    assert cert["bounding_order"] == 2


def test_verify_and_normeq():
    r = nf.verify_prop("badprime", "Q(zeta3)", 3, Fraction(1, 7), Fraction(1, 7), 82, prime={"p": 7, "index": 0})
    assert r["reports"][0]["status"] == "Verified"
    a = nf.normeq_analyze({"field": "Q(zeta3)", "q": 3, "x": "1/7", "b": "1/7", "c": "82"})
    assert a["verdict"] == "Unsolvable"
    b = nf.normeq_battery("Q(zeta3)", Fraction(1, 7), 3)
    assert b["passed"] is False
    assert b["prime"]["p"] == "7"
    assert nf.verify_sample("fixorder", "Q(i)", 2, seed=11) == nf.verify_sample("fixorder", "Q(i)", 2, seed=11)


def test_compiler():
    U1, U2, U3, C, Z = sympy.symbols("U1 U2 U3 C Z")
    n2 = sympy.sympify(nf.coordinate_norm_poly(2).replace("^", "**"))
    assert sympy.expand(n2 - (U1**2 - C * U2**2 - Z)) == 0
    # resultant of T^3 - C and U1 + U2 T + U3 T^2, computed independently
    T = sympy.symbols("T")
    res = sympy.resultant(T**3 - C, U1 + U2 * T + U3 * T**2, T)
    n3 = sympy.sympify(nf.coordinate_norm_poly(3).replace("^", "**"))
    assert sympy.expand(n3 - (res - Z)) == 0
    r = nf.compile_definition("eqB", 2, include_system=True)
    assert r["formula"]["existential_count"] == 16
    assert len(r["system"]["equations"]) == 8
    with pytest.raises(nf.CoreError) as e:
        nf.compile_definition("eqC", 2)
    assert e.value.code == "InvalidArgument"


def test_elliptic():
    r = nf.ec_mul({"a": 0, "c": -2}, {"x": 3, "y": 5}, 2)
    assert (r["result"]["x"], r["result"]["y"]) == ("129/100", "-383/1000")
    lem = nf.ec_lemmas({"a": 0, "c": -2}, {"x": 3, "y": 5}, {"A": 4, "m": 1})
    assert lem["anydivisor"]["k"] == 2
    assert lem["equiv"]["brute_force_holds"] is True


def test_cli_in_process():
    rc, report, _ = nf.run("cyclic", "construct", "--q", "2", "--m", "1")
    assert rc == 0 and report["ell"] == 5
    rc, report, _ = nf.run("field", "factor", "--p", "7", "--poly", "[1,1")
    assert rc == 2 and report["error"]["code"] == "ParseError"
