from __future__ import annotations

import pytest

from qecfail import gf2
from qecfail.codes import (
    CATALOG_NAMES,
    SINGLE_BLOCK,
    AdditiveCode,
    CapExceeded,
    CodeError,
    catalog,
    direct_sum,
    dual,
    enumerate_span,
    load_code,
    parameters,
    parse_code,
    span_packed,
)
from qecfail.gf4 import GF4Vector, swap_halves

G5_TEXT = """n 5 k 1 name G5
# the five-qubit code
wWWw0
0wWWw
w0wWW
Ww0wW
"""


def span_set(vectors):
    return {v.packed for v in enumerate_span(list(vectors))}


def test_parse_g5():
    code = parse_code(G5_TEXT)
    assert (code.n, code.k, code.name) == (5, 1, "G5")
    assert [str(g) for g in code.gens] == ["wWWw0", "0wWWw", "w0wWW", "Ww0wW"]
    assert all(g.weight == 4 for g in code.gens)


def test_parse_g4b():
    code = catalog("G4b")
    assert (code.n, code.k) == (4, 1)


@pytest.mark.parametrize(
    "text, message",
    [
        ("n 2 k 0 name x\nw1\nw1\n", "dependent rows"),
        ("n 2 k 0 name x\nwq\n0W\n", "malformed"),
        ("n 2 k 0 name x\nw1\n0WW\n", "inconsistent row lengths"),
        ("n 2 k 0 name x\nw 1\n0W\n", "whitespace"),
        ("n 2 k 0 name x\nw1\n", "rows"),
        ("size 2\nw1\n", "header"),
        ("", "empty"),
        ("n 2 k 0 name x\nw0\nW0\n", "rows 1 and 2"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(CodeError, match=message):
        parse_code(text)


def test_corrupted_g5_names_the_row_pair(tmp_path):
    bad = G5_TEXT.replace("Ww0wW", "Ww0w1")
    path = tmp_path / "bad.txt"
    path.write_text(bad)
    with pytest.raises(CodeError, match=r"self-orthogonality violated: rows \d and \d"):
        load_code(path)


def test_text_round_trip():
    for name in CATALOG_NAMES:
        code = catalog(name)
        again = parse_code(code.to_text())
        assert again == code


def test_dual_sizes_and_prefix():
    g5 = catalog("G5")
    d = dual(g5)
    assert len(d) == 6
    assert tuple(d[:4]) == g5.gens
    assert len(span_set(d)) == 64


def test_dual_annihilates_code():
    g7b = catalog("G7b")
    for y in enumerate_span(g7b.dual_gens):
        assert all(y.star(g) == 0 for g in g7b.gens)


@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES if catalog(n).n <= 8])
def test_code_and_dual_are_orthogonal_exhaustively(name):
    code = catalog(name)
    c = list(enumerate_span(code.gens))
    for y in enumerate_span(code.dual_gens):
        assert all(x.star(y) == 0 for x in c)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_double_dual_is_the_code(name):
    code = catalog(name)
    n = code.n
    rows = [swap_halves(h.packed, n) for h in code.dual_gens]
    back = gf2.kernel(rows, 2 * n)
    assert len(back) == n - code.k
    assert gf2.Echelon(back).canonical() == gf2.Echelon(g.packed for g in code.gens).canonical()


def test_self_dual_code_is_its_own_dual():
    two = direct_sum(SINGLE_BLOCK, SINGLE_BLOCK)
    assert two.k == 0
    assert span_set(two.dual_gens) == span_set(two.gens)


def test_span_counts():
    g5 = catalog("G5")
    assert len(list(enumerate_span(g5.gens))) == 16
    assert list(enumerate_span([], n=5)) == [GF4Vector.zero(5)]
    assert len(span_set(catalog("G9c").dual_gens)) == 1024
    assert next(enumerate_span(g5.gens)) == GF4Vector.zero(5)


def test_span_cap():
    g5 = catalog("G5")
    with pytest.raises(CapExceeded, match="cap"):
        list(enumerate_span(g5.dual_gens, cap=32))
    with pytest.raises(CapExceeded):
        span_packed(g5.dual_gens, cap=32)


def test_span_packed_lists_code_first():
    code = catalog("G6a")
    arr = span_packed(code.dual_gens)
    assert len(set(arr.tolist())) == len(arr)
    n_c = 1 << (code.n - code.k)
    inside = [code.contains(GF4Vector.from_packed(code.n, int(x))) for x in arr]
    assert all(inside[:n_c]) and not any(inside[n_c:])


@pytest.mark.parametrize(
    "name, label, pure",
    [
        ("G4a", "[[4,1,2]]", True),
        ("G4b", "[[4,1,2]]", True),
        ("G5", "[[5,1,3]]", True),
        ("G6a", "[[6,1,3]]", False),
        ("G6b", "[[6,1,3]]", False),
        ("G7a", "[[7,1,3]]", True),
        ("G7b", "[[7,1,3]]", True),
        ("G8a", "[[8,1,3]]", True),
        ("G8b", "[[8,1,3]]", True),
        ("G8c", "[[8,1,3]]", True),
        ("G9a", "[[9,1,3]]", True),
        ("G9b", "[[9,1,3]]", True),
        ("G9c", "[[9,1,3]]", False),
        ("G10", "[[10,1,4]]", True),
        ("G11", "[[11,1,5]]", True),
    ],
)
def test_catalog_parameters(name, label, pure):
    p = parameters(catalog(name))
    assert p.label() == label
    assert p.pure is pure


def test_parameter_display():
    assert str(parameters(catalog("G5"))) == "[[5,1,3]] pure"
    assert str(parameters(catalog("G9c"))) == "[[9,1,3]] impure"
    assert parameters(catalog("G11")).d_prime == 3
    assert parameters(catalog("G10")).d_prime == 2


def test_direct_sums():
    g5 = catalog("G5")
    g6b = direct_sum(SINGLE_BLOCK, g5)
    assert str(parameters(g6b)) == "[[6,1,3]] impure"
    assert span_set(g6b.gens) == span_set(catalog("G6b").gens)
    p = parameters(direct_sum(g5, g5))
    assert (p.n, p.k, p.d) == (10, 2, 3)
    two = direct_sum(SINGLE_BLOCK, SINGLE_BLOCK)
    assert (two.n, two.k) == (2, 0)
    assert {str(v) for v in enumerate_span(two.gens)} == {"00", "10", "01", "11"}


def test_unknown_catalog_name():
    with pytest.raises(KeyError, match="available: G4a"):
        catalog("G12")


@pytest.mark.parametrize("name", ["G5", "G7a", "G9c"])
def test_coset_representatives_carry_their_labels(name):
    code = catalog(name)
    for s in range(1 << len(code.gens)):
        for L in range(1 << (2 * code.k)):
            y = code.coset_rep(s, L)
            assert code.syndrome(y) == s
            assert code.logical_class(y) == L


def test_syndrome_reps_are_dual_to_generators():
    code = catalog("G8b")
    for i, t in enumerate(code.syndrome_reps):
        assert [t.star(g) for g in code.gens] == [int(i == j) for j in range(len(code.gens))]


def test_contains():
    g5 = catalog("G5")
    assert g5.contains(g5.gens[0] + g5.gens[2])
    assert not g5.contains(GF4Vector.parse("w0000"))


def test_constructor_validates():
    with pytest.raises(CodeError, match="generators"):
        AdditiveCode(3, 1, (GF4Vector.parse("www"),))
