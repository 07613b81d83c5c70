import json

import pytest

from ppbase import catalog as C
from ppbase.classify import recognize_scalar_extension
from ppbase.exceptions import GroupFileError


@pytest.mark.parametrize("name", C.catalog_names())
def test_closed_form_orders(name):
    spec = C.CATALOG[name]
    G = C.construct(spec)
    expected = C.closed_form_order(spec)
    if expected is not None:
        assert G.order() == expected


@pytest.mark.parametrize("name", C.catalog_names())
def test_bundled_file_matches_constructor(name):
    path = C.bundled_path(name)
    assert path is not None, f"{name} is not bundled"
    G = C.load_group(path)
    H = C.construct(C.CATALOG[name])
    assert G.cycle_strings() == H.cycle_strings()
    assert G.name == name


def test_constructor_examples():
    assert C.sym(4).order() == 24 and C.sym(4).degree == 4
    G = C.psl2(9)
    assert (G.order(), G.degree) == (360, 10)
    E = C.scalar_ext(2, 3, 1, 7)
    assert E.order() == 56
    assert recognize_scalar_extension(E) is not None


def test_products_and_wreaths():
    G = C.direct_product(C.cyclic(2), C.cyclic(3))
    assert G.order() == 6 and G.is_abelian()
    assert C.direct_product(C.sym(3), C.cyclic(5)).order() == 30
    A = C.sym(3)
    P = C.direct_product(A, C.cyclic(1))
    assert P.order() == 6 and P.degree == 4
    W = C.wreath_sym(C.cyclic(2), 2)
    assert W.order() == 8 and not W.is_abelian()
    assert C.wreath_sym(C.sym(3), 1).order() == 6
    assert C.wreath_sym(C.sym(3), 2).order() == 72
    with pytest.raises(ValueError):
        C.wreath_sym(C.sym(3), 0)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        C.construct(C.GroupSpec("psl2", {"q": 6}))
    with pytest.raises(ValueError):
        C.scalar_ext(3, 1, 1, 3)  # 3 does not divide 3 - 1
    with pytest.raises(ValueError):
        C.scalar_ext(5, 1, 1, 6)  # not a prime power


@pytest.mark.parametrize("name", ["c5:c4", "ea3_2:c2", "ea2_4:c3", "ea2_3:c7", "ea5_2:c4", "ea3_2:c8"])
def test_scalar_ext_always_recognized(name):
    assert recognize_scalar_extension(C.get(name)) is not None


def test_roundtrip(tmp_path):
    G = C.get("m10")
    p = tmp_path / "m10.json"
    C.save_group(G, p)
    H = C.load_group(p)
    assert H.cycle_strings() == G.cycle_strings()
    assert H.order() == 720


def test_file_examples():
    G = C.loads_group(json.dumps({"schema_version": 1, "name": "s3", "degree": 3,
                                  "generators": ["(1,2)", "(1,2,3)"]}))
    assert G.order() == 6
    T = C.loads_group('{"schema_version": 1, "name": "one", "degree": 3, "generators": []}')
    assert T.order() == 1


def test_malformed_cycle_position():
    text = '{\n  "schema_version": 1,\n  "degree": 3,\n  "generators": ["(1,2"]\n}'
    with pytest.raises(GroupFileError) as info:
        C.loads_group(text)
    assert info.value.line == 4
    assert info.value.column == len('  "generators": ["') + 4 + 1


def test_file_errors():
    with pytest.raises(GroupFileError):
        C.loads_group("{not json")
    with pytest.raises(GroupFileError):
        C.loads_group('{"degree": 3}')
    with pytest.raises(GroupFileError):
        C.loads_group('{"degree": 2, "generators": ["(1,3)"]}')


def test_index_two_subgroups_of_pgammal2_9():
    from ppbase.structure import subgroup_lattice

    G = C.get("pgammal2_9")
    L = subgroup_lattice(G)
    idx2 = [L.subgroup(i) for i, o in enumerate(L.orders) if o == 720]
    assert len(idx2) == 3
    # largest element orders: Sym(6) 6, M10 8, PGL(2,9) 10
    assert sorted(int(max(H.table().orders)) for H in idx2) == [6, 8, 10]
