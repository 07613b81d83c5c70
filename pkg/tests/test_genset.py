import pytest

from ppbase import catalog as C
from ppbase.exceptions import BudgetExceeded, NotInGroup
from ppbase.genset import (
    generates, genset_report, is_bpp_bruteforce, is_independent, m_of_frattini_quotient,
    max_independent_generating, max_pp_independent_generating, min_pp_generating, pp_base_convert,
)
from ppbase.perm import is_pp_element, parse_cycles

from oracle import as_tuples, m_value, pp_profile

SMALL = ["c2", "c4", "c6", "ea2_2", "ea2_3", "ea2_4", "sym3", "d8", "q8", "alt4", "d10", "d12", "c3:c4",
         "c2xsym3", "ea2_2xc3", "ea3_2:c2", "c5:c4", "c7:c3", "sym4", "sl2_3", "alt4xc2", "d20", "sym3xc5",
         "ea3_2:c4", "c2wrsym3"]

# (m, m_pp, smallest pp generating set), computed with the mask search and
# cross-checked where feasible against the subset oracle
FROZEN = {
    "alt5": (3, 3, 2), "sym5": (4, 4, 2), "psl2_7": (4, 4, 2), "pgl2_5": (4, 4, 2),
    "pgl2_7": (3, 3, 2), "psl2_8": (3, 3, 2), "psl2_9": (4, 4, 2), "alt6": (4, 4, 2),
    "sym6": (5, 5, 2), "pgl2_9": (3, 3, 2), "m10": (3, 3, 2), "alt5xc2": (4, 4, 2),
    "c2wrsym3": (4, 4, 2), "sym3wrsym2": (3, 3, 2), "c2xsym4": (4, 4, 2),
}


@pytest.mark.parametrize("name", SMALL)
def test_against_subset_oracle(name):
    G = C.get(name)
    E = as_tuples(G)
    lo, hi = pp_profile(E, G.degree)
    r = genset_report(G)
    assert (r.m, r.m_pp, r.min_pp) == (m_value(E, G.degree), hi, lo)
    assert r.is_bpp == (lo == hi)


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_values(name):
    r = genset_report(C.get(name))
    assert (r.m, r.m_pp, r.min_pp) == FROZEN[name]


@pytest.mark.parametrize("name", ["sym4", "sym5", "c2wrsym3", "ea3_2:c2", "q8"])
def test_witnesses_are_valid(name):
    G = C.get(name)
    r = genset_report(G)
    for X in (r.witness_max, r.witness_max_pp):
        assert generates(G, X) and is_independent(G, X)
    assert all(is_pp_element(x) for x in r.witness_max_pp + r.witness_min)
    assert generates(G, r.witness_min)
    assert len(r.witness_max) == r.m and len(r.witness_min) == r.min_pp


def test_sym_n_rank_is_n_minus_one():
    for n in (3, 4, 5, 6):
        assert max_independent_generating(C.sym(n))[0] == n - 1


def test_bpp_examples():
    assert is_bpp_bruteforce(C.get("sym3"))
    assert not is_bpp_bruteforce(C.get("sym4"))
    assert is_bpp_bruteforce(C.get("ea2_2"))


def test_is_independent_definition():
    S4 = C.get("sym4")
    X = [parse_cycles(s, 4) for s in ("(1,2)", "(2,3)", "(3,4)")]
    assert is_independent(S4, X)
    assert not is_independent(S4, X + [parse_cycles("(1,3)", 4)])
    # Frattini elements are never independent
    assert not is_independent(C.get("c4"), [parse_cycles("(1,3)(2,4)", 4)])
    with pytest.raises(NotInGroup):
        is_independent(C.get("alt4"), [parse_cycles("(1,2)", 4)])


def test_pp_base_convert_keeps_size():
    for name in ("sym4", "c6", "ea2_2xc3", "c2xsym3", "c30"):
        G = C.get(name)
        m, X = max_independent_generating(G)
        Y = pp_base_convert(G, X)
        assert all(is_pp_element(y) for y in Y)
        assert generates(G, Y) and is_independent(G, Y)
        assert len(Y) == m


def test_pp_base_convert_rejects_dependent_sets():
    G = C.get("sym3")
    with pytest.raises(ValueError):
        pp_base_convert(G, [parse_cycles("(1,2)", 3), parse_cycles("(1,3)", 3), parse_cycles("(2,3)", 3)])


@pytest.mark.parametrize("name", ["c4", "d8", "q8", "sl2_3", "c12", "c2xc4"])
def test_frattini_quotient_has_same_rank(name):
    G = C.get(name)
    assert m_of_frattini_quotient(G) == max_independent_generating(G)[0]


def test_trivial_group():
    G = C.get("trivial")
    assert max_independent_generating(G) == (0, [])
    assert min_pp_generating(G) == (0, [])
    assert max_pp_independent_generating(G) == (0, [])


def test_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        max_independent_generating(C.get("sym6"), budget=1e-9)


@pytest.mark.parametrize("name", [n for n in C.catalog_names() if C.get(n).order() <= 500])
def test_chief_deltas_add_up_to_m(name):
    from ppbase.genset import chief_delta
    from ppbase.structure import chief_series

    G = C.get(name)
    cs = chief_series(G)
    deltas = chief_delta(G, series=cs)
    assert sum(deltas) == max_independent_generating(G)[0]
    for d, f in zip(deltas, cs.factor_info):
        if f.is_abelian:
            assert d == (0 if f.is_frattini else 1)
        else:
            assert d >= 2


def test_chief_delta_of_monolithic_top():
    from ppbase.genset import chief_delta
    from ppbase.spread import monolithic_delta

    # Sym(5): 1 < Alt(5) < Sym(5), the Alt(5) factor carries m(G) - m(G/soc G)
    assert chief_delta(C.get("sym5")) == [1, monolithic_delta(C.get("sym5"))]
    assert chief_delta(C.get("pgammal2_9")) == [1, 1, 2]
