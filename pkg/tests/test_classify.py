import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import GF as SymGF, Matrix, Poly, symbols

from ppbase import catalog as C
from ppbase import gfp
from ppbase.classify import (
    CoprimeProduct, ElementaryAbelian, ModuleAction, NotBpp, ScalarExtension,
    characteristic_polynomial, coprime_factorize, is_bpp_structural, minimal_polynomial,
    recognize_scalar_extension,
)
from ppbase.exceptions import FrattiniNotTrivial
from ppbase.structure import minimal_normal_subgroup_bits

x = symbols("x")


def test_minimal_polynomial_examples():
    assert minimal_polynomial(ModuleAction(5, 3, gfp.identity_matrix(3))) == [4, 1]  # x - 1
    assert minimal_polynomial(ModuleAction(2, 2, [[0, 1], [1, 1]])) == [1, 1, 1]
    assert minimal_polynomial(ModuleAction(3, 2, [[0, 1], [2, 0]])) == [1, 0, 1]


def test_minimal_polynomial_rejects_singular():
    with pytest.raises(ValueError):
        minimal_polynomial(ModuleAction(3, 2, [[1, 1], [1, 1]]))


def _sympy_charpoly(A, p):
    coeffs = Poly(Matrix(A).charpoly(x).as_expr(), x, modulus=p).all_coeffs()
    return gfp.trim([int(c) % p for c in reversed(coeffs)], p)


matrices = st.sampled_from([2, 3, 5, 7]).flatmap(
    lambda p: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
                           min_size=n, max_size=n).map(lambda A: (p, A))))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_charpoly_agrees_with_sympy(data):
    p, A = data
    assert gfp.charpoly(A, p) == _sympy_charpoly(A, p)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_minpoly_annihilates_and_divides_charpoly(data):
    p, A = data
    f = gfp.minimal_polynomial_of(A, p)
    n = len(A)
    assert gfp.mat_eval_poly(f, A, p) == [[0] * n for _ in range(n)]
    assert gfp.pmod(gfp.charpoly(A, p), f, p) == []
    assert f[-1] == 1
    # minimality: I, A, ..., A^(deg f - 1) are linearly independent
    powers, cur = [], gfp.identity_matrix(n)
    for _ in range(len(f) - 1):
        powers.append([v for row in cur for v in row])
        cur = gfp.mat_mul(cur, A, p)
    assert gfp.rank(powers, p) == len(f) - 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]).flatmap(
    lambda p: st.lists(st.integers(0, p - 1), min_size=2, max_size=6).map(lambda c: (p, c + [1]))))
def test_irreducibility_agrees_with_sympy(data):
    p, f = data
    expected = Poly(list(reversed(f)), x, domain=SymGF(p)).is_irreducible
    assert gfp.is_irreducible(f, p) == expected


def test_sym3_is_scalar_extension():
    d = recognize_scalar_extension(C.get("sym3"))
    assert isinstance(d, ScalarExtension)
    assert (d.p, d.q, d.dim) == (3, 2, 1)
    assert d.action.matrix == [[2]]


def test_simultaneous_inversion():
    d = recognize_scalar_extension(C.get("ea3_2:c2"))
    assert d.minpoly == [1, 1]
    assert d.charpoly == [1, 2, 1]
    assert d.multiplicity == 2


def test_sym4_is_not_scalar_extension():
    assert recognize_scalar_extension(C.get("sym4")) is None


def test_nonhomogeneous_module_rejected():
    assert recognize_scalar_extension(C.get("ea5_2:c4_nonhom")) is None
    assert recognize_scalar_extension(C.get("ea3_2:c2_nonhom")) is None


@pytest.mark.parametrize("name", ["c5:c4", "c7:c3", "ea3_2:c4", "ea3_2:c8", "ea2_3:c7", "ea2_4:c3",
                                  "ea2_4:c5", "ea5_2:c3", "ea5_2:c4", "ea7_2:c3", "agl1_8", "alt4"])
def test_scalar_extensions_recognized(name):
    G = C.get(name)
    d = recognize_scalar_extension(G)
    assert d is not None
    # every minimal normal subgroup inside P has order p^d
    for b in minimal_normal_subgroup_bits(G):
        assert b.bit_count() == d.p ** d.simple_dim


def test_basis_independence():
    G = C.get("ea2_4:c3")
    d = recognize_scalar_extension(G)
    p, A = d.p, d.action.matrix
    Pm = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]]
    assert gfp.is_invertible(Pm, p)
    inv = _inverse(Pm, p)
    B = gfp.mat_mul(gfp.mat_mul(inv, A, p), Pm, p)
    assert minimal_polynomial(ModuleAction(p, 4, B)) == d.minpoly
    assert characteristic_polynomial(ModuleAction(p, 4, B)) == d.charpoly


def _inverse(A, p):
    n = len(A)
    M = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    M, _ = gfp._echelon(M, p)
    return [row[n:] for row in M]


def test_coprime_factorize():
    assert sorted(F.order() for F in coprime_factorize(C.get("c6"))) == [2, 3]
    assert sorted(F.order() for F in coprime_factorize(C.get("sym3xc5"))) == [5, 6]
    assert [F.order() for F in coprime_factorize(C.get("sym3"))] == [6]
    assert sorted(F.order() for F in coprime_factorize(C.get("sym3xc5xc7"))) == [5, 6, 7]


def test_structural_examples():
    d = is_bpp_structural(C.get("ea2_2"))
    assert isinstance(d, ElementaryAbelian) and d.p == 2 and d.rank == 2
    d = is_bpp_structural(C.get("c7:c3xc2"))
    assert isinstance(d, CoprimeProduct)
    kinds = sorted((type(f).__name__, getattr(f, "p", None)) for f in d.factors)
    assert kinds == [("ElementaryAbelian", 2), ("ScalarExtension", 7)]
    d = is_bpp_structural(C.get("alt5"))
    assert isinstance(d, NotBpp) and d.reason == "non-solvable"
    assert is_bpp_structural(C.get("trivial")).verdict == "ElementaryAbelian"


def test_frattini_must_be_trivial():
    with pytest.raises(FrattiniNotTrivial):
        is_bpp_structural(C.get("c4"))
    with pytest.raises(FrattiniNotTrivial):
        coprime_factorize(C.get("q8"))


def test_descriptors_serialize():
    d = is_bpp_structural(C.get("c7:c3xc2")).to_dict()
    assert d["verdict"] == "CoprimeProduct"
    assert [f["verdict"] for f in d["factors"]] == ["ElementaryAbelian", "ScalarExtension"]
