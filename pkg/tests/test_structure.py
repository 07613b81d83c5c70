import pytest

from ppbase import catalog as C
from ppbase.exceptions import CapExceeded
from ppbase.structure import (
    chief_counts, chief_series, frattini, is_frattini_free, is_monolithic, is_nilpotent,
    maximal_subgroup_bits, minimal_normal_subgroups, socle, subgroup_lattice,
)

from oracle import all_subgroups, as_tuples, frattini as naive_frattini, maximal_subgroups

# (subgroups, conjugacy classes of subgroups); well-known table values
LATTICE_SIZES = {
    "alt4": (10, 5), "sym4": (30, 11), "alt5": (59, 9), "sym5": (156, 19),
    "psl2_7": (179, 15), "sym6": (1455, 56),
}


@pytest.mark.parametrize("name", sorted(LATTICE_SIZES))
def test_lattice_sizes(name):
    L = subgroup_lattice(C.get(name))
    assert (len(L), L.class_count) == LATTICE_SIZES[name]


@pytest.mark.parametrize("name", ["sym3", "c6", "d8", "q8", "alt4", "sym4", "c2xsym3", "ea2_3", "sl2_3", "c3:c4"])
def test_lattice_matches_naive_enumeration(name):
    G = C.get(name)
    L = subgroup_lattice(G)
    T = L.table
    mine = {frozenset(tuple(T.perm(i).images) for i in T.members(b).tolist()) for b in L.bits}
    E = as_tuples(G)
    assert mine == all_subgroups(E, G.degree)
    maxes = {frozenset(tuple(T.perm(i).images) for i in T.members(b).tolist()) for b in maximal_subgroup_bits(G)}
    assert maxes == set(maximal_subgroups(E, G.degree))
    phi = {tuple(g.images) for g in frattini(G).elements()}
    assert phi == set(naive_frattini(E, G.degree))


def test_lattice_cap():
    with pytest.raises(CapExceeded):
        subgroup_lattice(C.get("sym7"))


@pytest.mark.parametrize("name,phi", [("c4", 2), ("c8", 4), ("q8", 2), ("d8", 2), ("sl2_3", 2),
                                      ("sym4", 1), ("c6", 1), ("c2xc4", 2), ("c2wrsym2", 2)])
def test_frattini_orders(name, phi):
    assert frattini(C.get(name)).order() == phi


def test_frattini_free_flags():
    assert is_frattini_free(C.get("sym3"))
    assert not is_frattini_free(C.get("c9"))


def test_chief_series_of_sym4():
    cs = chief_series(C.get("sym4"))
    assert [f.order for f in cs.factor_info] == [2, 3, 4]
    assert [t.order() for t in cs.terms] == [24, 12, 4, 1]
    assert cs.a == 3 and cs.b == 0


def test_chief_series_of_c4_has_frattini_factor():
    cs = chief_series(C.get("c4"))
    assert [(f.order, f.is_frattini) for f in cs.factor_info] == [(2, False), (2, True)]
    assert chief_counts(C.get("c4")) == (1, 0)


@pytest.mark.parametrize("name", ["sym4", "c2wrsym3", "alt4xc2", "sym3xsym3", "c12", "sl2_3"])
def test_chief_factor_multiset_independent_of_choice(name):
    G = C.get(name)
    assert chief_series(G, select="smallest").signature() == chief_series(G, select="largest").signature()


def test_headline_chief_counts():
    assert chief_counts(C.get("pgammal2_9")) == (3, 1)


def test_minimal_normal_and_socle():
    assert [N.order() for N in minimal_normal_subgroups(C.get("sym4"))] == [4]
    assert socle(C.get("sym5")).order() == 60
    assert socle(C.get("c6")).order() == 6
    assert is_monolithic(C.get("pgammal2_9"))
    assert not is_monolithic(C.get("c6"))


def test_nilpotent():
    assert is_nilpotent(C.get("q8"))
    assert is_nilpotent(C.get("c12"))
    assert not is_nilpotent(C.get("sym3"))


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_psl2_is_simple(q):
    G = C.psl2(q)
    T = G.table()
    assert T.normal_subgroups() == [1, T.full]
