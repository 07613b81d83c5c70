"""Constructors for the group families used throughout, and the group file format.

Group files are UTF-8 JSON::

    {"schema_version": 1, "name": "sym3", "degree": 3,
     "generators": ["(1,2)", "(1,2,3)"]}

with 1-based cycle notation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from itertools import product as iproduct
from math import factorial, gcd
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .exceptions import CycleParseError, DegreeMismatch, GroupFileError
from .fields import field as gf, prime_power
from .group import PermGroup
from .perm import Permutation, format_cycles, is_prime_power, parse_cycles

SCHEMA_VERSION = 1

KINDS = (
    "cyclic", "elem_abelian", "dihedral", "sym", "alt", "psl2", "pgl2", "pgammal2_9",
    "scalar_ext", "direct_product", "wreath_sym", "semidirect", "raw",
)


def _perm(images) -> Permutation:
    return Permutation(images)


def _cycle(points: Sequence[int], degree: int) -> Permutation:
    return Permutation.from_cycles([points], degree)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    gens = [_cycle(range(n), n)] if n > 1 else []
    return PermGroup(n, gens, name=f"c{n}")


def elem_abelian(p: int, k: int) -> PermGroup:
    """(C_p)^k acting on k disjoint blocks of p points."""
    if _prime_factors(p) != [p]:
        raise ValueError(f"{p} is not prime")
    deg = p * k
    gens = [_cycle(range(i * p, (i + 1) * p), deg) for i in range(k)]
    return PermGroup(deg, gens, name=f"ea{p}_{k}")


def _prime_factors(n: int) -> List[int]:
    from sympy import factorint

    return sorted(factorint(n))


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n (n >= 3) on n points."""
    if n < 3:
        raise ValueError("dihedral(n) needs n >= 3; use cyclic/elem_abelian for smaller cases")
    rot = _cycle(range(n), n)
    ref = _perm([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, ref], name=f"d{2 * n}")


def sym(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return PermGroup(1, [], name="sym1")
    gens = [_cycle([0, 1], n)]
    if n > 2:
        gens.append(_cycle(range(n), n))
    return PermGroup(n, gens, name=f"sym{n}")


def alt(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n < 3:
        return PermGroup(n, [], name=f"alt{n}")
    gens = [_cycle([0, 1, 2], n)]
    if n > 3:
        gens.append(_cycle(range(n) if n % 2 else range(1, n), n))
    return PermGroup(n, gens, name=f"alt{n}")


# projective line over GF(q): points 0..q-1 are field elements, q is infinity


def _mobius(F, a, b, c, d) -> Permutation:
    q = F.q
    inf = q
    images = []
    for z in range(q + 1):
        if z == inf:
            images.append(inf if c == 0 else F.mul(a, F.inv(c)))
            continue
        num = F.add(F.mul(a, z), b)
        den = F.add(F.mul(c, z), d)
        images.append(inf if den == 0 else F.mul(num, F.inv(den)))
    return _perm(images)


def _frobenius_map(F) -> Permutation:
    return _perm([F.frobenius(z) for z in range(F.q)] + [F.q])


def _psl2_gens(F) -> List[Permutation]:
    w = F.primitive
    one = 1
    minus_one = F.neg(1)
    gens = [
        _mobius(F, one, one, 0, one),  # z + 1
        _mobius(F, F.mul(w, w), 0, 0, one),  # w^2 z
        _mobius(F, 0, minus_one, one, 0),  # -1/z
    ]
    return [g for g in gens if not g.is_identity()]


def psl2(q: int) -> PermGroup:
    F = gf(q)
    return PermGroup(q + 1, _psl2_gens(F), name=f"psl2_{q}")


def pgl2(q: int) -> PermGroup:
    F = gf(q)
    gens = _psl2_gens(F) + [_mobius(F, F.primitive, 0, 0, 1)]
    return PermGroup(q + 1, gens, name=f"pgl2_{q}")


def pgammal2(q: int) -> PermGroup:
    F = gf(q)
    gens = _psl2_gens(F) + [_mobius(F, F.primitive, 0, 0, 1)]
    if F.d > 1:
        gens.append(_frobenius_map(F))
    return PermGroup(q + 1, gens, name=f"pgammal2_{q}")


def pgammal2_9() -> PermGroup:
    """PGammaL(2,9), the automorphism group of Alt(6), on 10 points."""
    G = pgammal2(9)
    G.name = "pgammal2_9"
    return G


def m10() -> PermGroup:
    """Mathieu group M10: PSL(2,9) extended by z -> w z^3."""
    F = gf(9)
    frob = _frobenius_map(F)
    scale = _mobius(F, F.primitive, 0, 0, 1)
    return PermGroup(10, _psl2_gens(F) + [frob * scale], name="m10")


# affine groups over GF(p)^dim


def _vec_index(v: Sequence[int], p: int) -> int:
    idx = 0
    for c in reversed(v):
        idx = idx * p + c
    return idx


def _all_vectors(p: int, dim: int) -> List[Tuple[int, ...]]:
    out = []
    for k in range(p**dim):
        v = []
        for _ in range(dim):
            v.append(k % p)
            k //= p
        out.append(tuple(v))
    return out


def affine(p: int, dim: int, matrices: Sequence[Sequence[Sequence[int]]], name: str = "") -> PermGroup:
    """Translations of GF(p)^dim extended by the given matrices (v -> v A).

    Points are vectors encoded base p, coordinate 0 least significant.
    """
    if _prime_factors(p) != [p]:
        raise ValueError(f"{p} is not prime")
    vecs = _all_vectors(p, dim)
    deg = p**dim
    gens = []
    for i in range(dim):
        gens.append(_perm([_vec_index(tuple((v[k] + (k == i)) % p for k in range(dim)), p) for v in vecs]))
    for A in matrices:
        if len(A) != dim or any(len(r) != dim for r in A):
            raise ValueError("matrix shape does not match dim")
        imgs = []
        for v in vecs:
            w = tuple(sum(v[r] * A[r][c] for r in range(dim)) % p for c in range(dim))
            imgs.append(_vec_index(w, p))
        g = _perm(imgs)  # raises if A is singular
        if not g.is_identity():
            gens.append(g)
    return PermGroup(deg, gens, name=name or f"affine{p}_{dim}")


def linear(p: int, dim: int, matrices: Sequence[Sequence[Sequence[int]]], name: str = "") -> PermGroup:
    """Matrix group acting on the nonzero vectors of GF(p)^dim."""
    vecs = [v for v in _all_vectors(p, dim) if any(v)]
    pos = {v: k for k, v in enumerate(vecs)}
    gens = []
    for A in matrices:
        imgs = []
        for v in vecs:
            w = tuple(sum(v[r] * A[r][c] for r in range(dim)) % p for c in range(dim))
            imgs.append(pos[w])
        gens.append(_perm(imgs))
    return PermGroup(len(vecs), gens, name=name or f"linear{p}_{dim}")


def scalar_ext(p: int, d: int, m: int, lam_order: int) -> PermGroup:
    """(GF(p^d))^m extended by scalar multiplication by an element of order ``lam_order``.

    ``lam_order`` must be a prime power > 1, coprime to p, dividing p^d - 1.
    The module is then a sum of ``m * d / deg`` copies of one simple module.
    """
    q = p**d
    F = gf(q)
    if m < 1:
        raise ValueError("multiplicity must be >= 1")
    if not is_prime_power(lam_order) or (q - 1) % lam_order or lam_order % p == 0:
        raise ValueError(f"lambda order {lam_order} must be a prime power dividing {q - 1}")
    lam = F.pow(F.primitive, (q - 1) // lam_order)
    vecs = list(iproduct(range(q), repeat=m))
    pos = {v: k for k, v in enumerate(vecs)}
    gens = []
    for i in range(m):
        for j in range(d):
            b = p**j  # the element x^j
            gens.append(_perm([pos[tuple(F.add(v[k], b) if k == i else v[k] for k in range(m))] for v in vecs]))
    gens.append(_perm([pos[tuple(F.mul(lam, c) for c in v)] for v in vecs]))
    return PermGroup(q**m, gens, name=f"scalar_ext_{p}_{d}_{m}_{lam_order}")


def direct_product(A: PermGroup, B: PermGroup, name: str = "") -> PermGroup:
    da, db = A.degree, B.degree
    deg = da + db
    gens = [_perm(list(g.images) + list(range(da, deg))) for g in A.generators]
    gens += [_perm(list(range(da)) + [da + i for i in g.images]) for g in B.generators]
    label = name or (f"{A.name}x{B.name}" if A.name and B.name else "")
    return PermGroup(deg, gens, name=label)


def wreath_sym(H: PermGroup, n: int, name: str = "") -> PermGroup:
    """H wr Sym(n) acting imprimitively on n blocks of size degree(H)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dh = H.degree
    if n == 1:
        return PermGroup(dh, H.generators, name=name or H.name)
    deg = dh * n
    gens = [_perm(list(g.images) + list(range(dh, deg))) for g in H.generators]

    def block_perm(sigma: Sequence[int]) -> Permutation:
        return _perm([sigma[i // dh] * dh + i % dh for i in range(deg)])

    gens.append(block_perm([1, 0] + list(range(2, n))))
    if n > 2:
        gens.append(block_perm([(i + 1) % n for i in range(n)]))
    return PermGroup(deg, gens, name=name or f"{H.name}wrsym{n}")


def raw(degree: int, generators: Sequence[Union[str, Permutation]], name: str = "") -> PermGroup:
    gens = [parse_cycles(g, degree) if isinstance(g, str) else g for g in generators]
    return PermGroup(degree, gens, name=name)


def quaternion8() -> PermGroup:
    return raw(8, ["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"], name="q8")


def dicyclic12() -> PermGroup:
    """C3 : C4 with the C4 acting by inversion."""
    return raw(7, ["(1,2,3)", "(2,3)(4,5,6,7)"], name="c3:c4")


def sl2_3() -> PermGroup:
    return linear(3, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], name="sl2_3")


# specs


@dataclass
class GroupSpec:
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    name: str = ""


def construct(spec: GroupSpec) -> PermGroup:
    k, a = spec.kind, spec.params
    if k == "cyclic":
        G = cyclic(a["n"])
    elif k == "elem_abelian":
        G = elem_abelian(a["p"], a["k"])
    elif k == "dihedral":
        G = dihedral(a["n"])
    elif k == "sym":
        G = sym(a["n"])
    elif k == "alt":
        G = alt(a["n"])
    elif k == "psl2":
        prime_power(a["q"])
        G = psl2(a["q"])
    elif k == "pgl2":
        prime_power(a["q"])
        G = pgl2(a["q"])
    elif k == "pgammal2_9":
        G = pgammal2_9()
    elif k == "scalar_ext":
        G = scalar_ext(a["p"], a.get("d", 1), a.get("m", 1), a["lam_order"])
    elif k == "semidirect":
        G = affine(a["p"], a["dim"], a["matrices"])
    elif k == "direct_product":
        parts = [construct(s) for s in a["factors"]]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H)
    elif k == "wreath_sym":
        G = wreath_sym(construct(a["base"]), a["n"])
    elif k == "raw":
        G = raw(a["degree"], a["generators"])
    else:
        raise ValueError(f"unknown group kind {k!r}")
    expected = closed_form_order(spec)
    if expected is not None and G.order() != expected:
        raise RuntimeError(f"{spec.name or k}: built order {G.order()} != expected {expected}")
    if spec.name:
        G.name = spec.name
    return G


def closed_form_order(spec: GroupSpec) -> Optional[int]:
    k, a = spec.kind, spec.params
    if k == "cyclic":
        return a["n"]
    if k == "elem_abelian":
        return a["p"] ** a["k"]
    if k == "dihedral":
        return 2 * a["n"]
    if k == "sym":
        return factorial(a["n"])
    if k == "alt":
        return max(1, factorial(a["n"]) // 2)
    if k in ("psl2", "pgl2"):
        q = a["q"]
        full = q * (q * q - 1)
        return full // gcd(2, q - 1) if k == "psl2" else full
    if k == "pgammal2_9":
        return 1440
    if k == "scalar_ext":
        return (a["p"] ** a.get("d", 1)) ** a.get("m", 1) * a["lam_order"]
    if k == "direct_product":
        out = 1
        for s in a["factors"]:
            o = closed_form_order(s)
            if o is None:
                return None
            out *= o
        return out
    if k == "wreath_sym":
        o = closed_form_order(a["base"])
        return None if o is None else o ** a["n"] * factorial(a["n"])
    return None


def spec_from_dict(d: Dict[str, Any]) -> GroupSpec:
    params = dict(d.get("params", {}))
    if "factors" in params:
        params["factors"] = [spec_from_dict(x) for x in params["factors"]]
    if "base" in params:
        params["base"] = spec_from_dict(params["base"])
    return GroupSpec(kind=d["kind"], params=params, name=d.get("name", ""))


# group files


def group_to_dict(G: PermGroup, name: Optional[str] = None) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "name": G.name if name is None else name,
        "degree": G.degree,
        "generators": [format_cycles(g) for g in G.generators],
    }


def dumps_group(G: PermGroup, name: Optional[str] = None) -> str:
    return json.dumps(group_to_dict(G, name), indent=2) + "\n"


def save_group(G: PermGroup, path: Union[str, Path], name: Optional[str] = None) -> None:
    Path(path).write_text(dumps_group(G, name), encoding="utf-8")


def _locate(text: str, needle: str, start: int = 0) -> Tuple[int, int, int]:
    pos = text.find(needle, start)
    if pos < 0:
        return 0, 0, start
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col, pos


def loads_group(text: str) -> PermGroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GroupFileError(e.msg, e.lineno, e.colno) from e
    if not isinstance(data, dict):
        raise GroupFileError("top level must be an object", 1, 1)
    for key in ("degree", "generators"):
        if key not in data:
            raise GroupFileError(f"missing field {key!r}", 1, 1)
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise GroupFileError(f"unsupported schema_version {version}", 1, 1)
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 0:
        raise GroupFileError("degree must be a non-negative integer", *_locate(text, '"degree"')[:2])
    gens = []
    cursor = 0
    for g in data["generators"]:
        line, col, cursor = _locate(text, json.dumps(g), cursor)
        if not isinstance(g, str):
            raise GroupFileError("generators must be cycle strings", line, col)
        try:
            gens.append(parse_cycles(g, degree))
        except CycleParseError as e:
            # +1 skips the opening quote
            raise GroupFileError(f"bad cycle {g!r}: offset {e.offset}", line, col + 1 + e.offset) from e
        except DegreeMismatch as e:
            raise GroupFileError(str(e), line, col) from e
        cursor += 1
    return PermGroup(degree, gens, name=data.get("name", ""))


def load_group(path: Union[str, Path]) -> PermGroup:
    return loads_group(Path(path).read_text(encoding="utf-8"))


# named catalog

_R = lambda degree, gens: GroupSpec("raw", {"degree": degree, "generators": gens})


def _S(kind, name, **params) -> GroupSpec:
    return GroupSpec(kind, params, name)


def _dp(name, *factors) -> GroupSpec:
    return GroupSpec("direct_product", {"factors": list(factors)}, name)


def _aff(name, p, dim, mats) -> GroupSpec:
    return GroupSpec("semidirect", {"p": p, "dim": dim, "matrices": mats}, name)


def _named() -> Dict[str, GroupSpec]:
    c = lambda n: _S("cyclic", f"c{n}", n=n)
    ea = lambda p, k: _S("elem_abelian", f"ea{p}_{k}", p=p, k=k)
    se = lambda name, p, d, m, o: _S("scalar_ext", name, p=p, d=d, m=m, lam_order=o)
    specs = [
        _S("cyclic", "trivial", n=1),
        c(2), c(3), c(4), c(5), c(6), c(7), c(8), c(9), c(10), c(12), c(15), c(30),
        ea(2, 2), ea(2, 3), ea(2, 4), ea(3, 2), ea(3, 3), ea(5, 2),
        _dp("c2xc4", c(2), c(4)),
        _dp("ea2_2xc3", ea(2, 2), c(3)),
        _dp("ea3_2xc2", ea(3, 2), c(2)),
        _S("sym", "sym3", n=3), _S("sym", "sym4", n=4), _S("sym", "sym5", n=5),
        _S("sym", "sym6", n=6), _S("sym", "sym7", n=7),
        _S("alt", "alt4", n=4), _S("alt", "alt5", n=5), _S("alt", "alt6", n=6),
        _S("dihedral", "d8", n=4), _S("dihedral", "d10", n=5), _S("dihedral", "d12", n=6),
        _S("dihedral", "d14", n=7), _S("dihedral", "d18", n=9), _S("dihedral", "d20", n=10),
        _S("dihedral", "d22", n=11),
        _S("psl2", "psl2_7", q=7), _S("psl2", "psl2_8", q=8), _S("psl2", "psl2_9", q=9),
        _S("pgl2", "pgl2_5", q=5), _S("pgl2", "pgl2_7", q=7), _S("pgl2", "pgl2_9", q=9),
        _S("pgammal2_9", "pgammal2_9"),
        se("c5:c4", 5, 1, 1, 4),
        se("c7:c3", 7, 1, 1, 3),
        se("c11:c5", 11, 1, 1, 5),
        se("c13:c3", 13, 1, 1, 3),
        se("c13:c4", 13, 1, 1, 4),
        se("ea3_2:c2", 3, 1, 2, 2),
        se("ea3_2:c4", 3, 2, 1, 4),
        se("ea3_2:c8", 3, 2, 1, 8),
        se("ea2_3:c7", 2, 3, 1, 7),
        se("ea2_4:c3", 2, 2, 2, 3),
        se("ea2_4:c5", 2, 4, 1, 5),
        se("ea5_2:c2", 5, 1, 2, 2),
        se("ea5_2:c3", 5, 2, 1, 3),
        se("ea5_2:c4", 5, 1, 2, 4),
        se("ea7_2:c3", 7, 1, 2, 3),
        _aff("ea5_2:c4_nonhom", 5, 2, [[[2, 0], [0, 3]]]),
        _aff("ea3_2:c2_nonhom", 3, 2, [[[2, 0], [0, 1]]]),
        _aff("c7:c6", 7, 1, [[[3]]]),
        _aff("agl1_8", 2, 3, [[[0, 1, 0], [0, 0, 1], [1, 1, 0]]]),
        _dp("sym3xc5", _S("sym", "sym3", n=3), c(5)),
        _dp("sym3xc7", _S("sym", "sym3", n=3), c(7)),
        _dp("sym3xc3", _S("sym", "sym3", n=3), c(3)),
        _dp("sym3xsym3", _S("sym", "sym3", n=3), _S("sym", "sym3", n=3)),
        _dp("c2xsym3", c(2), _S("sym", "sym3", n=3)),
        _dp("c2xsym4", c(2), _S("sym", "sym4", n=4)),
        _dp("d10xc3", _S("dihedral", "d10", n=5), c(3)),
        _dp("d14xc3", _S("dihedral", "d14", n=7), c(3)),
        _dp("c7:c3xc2", se("c7:c3", 7, 1, 1, 3), c(2)),
        _dp("c7:c3xc5", se("c7:c3", 7, 1, 1, 3), c(5)),
        _dp("alt4xc5", _S("alt", "alt4", n=4), c(5)),
        _dp("alt4xc2", _S("alt", "alt4", n=4), c(2)),
        _dp("alt4xc3", _S("alt", "alt4", n=4), c(3)),
        _dp("c5:c4xc3", se("c5:c4", 5, 1, 1, 4), c(3)),
        _dp("ea3_2:c2xc5", se("ea3_2:c2", 3, 1, 2, 2), c(5)),
        _dp("sym3xc5xc7", _S("sym", "sym3", n=3), c(5), c(7)),
        _dp("alt5xc2", _S("alt", "alt5", n=5), c(2)),
        _S("wreath_sym", "c2wrsym2", base=c(2), n=2),
        _S("wreath_sym", "c2wrsym3", base=c(2), n=3),
        _S("wreath_sym", "c3wrsym2", base=c(3), n=2),
        _S("wreath_sym", "sym3wrsym2", base=_S("sym", "sym3", n=3), n=2),
        GroupSpec("raw", {"degree": 8, "generators": ["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]}, "q8"),
        GroupSpec("raw", {"degree": 7, "generators": ["(1,2,3)", "(2,3)(4,5,6,7)"]}, "c3:c4"),
        # SL(2,3) on the 8 nonzero vectors of GF(3)^2
        GroupSpec("raw", {"degree": 8, "generators": [format_cycles(g) for g in sl2_3().generators]}, "sl2_3"),
        GroupSpec("raw", {"degree": 10, "generators": [format_cycles(g) for g in m10().generators]}, "m10"),
    ]
    return {s.name: s for s in specs}


CATALOG: Dict[str, GroupSpec] = _named()


def catalog_names() -> List[str]:
    return list(CATALOG)


_PATTERNS = [
    (r"c(\d+)", lambda m: GroupSpec("cyclic", {"n": int(m[1])}, m[0])),
    (r"sym(\d+)", lambda m: GroupSpec("sym", {"n": int(m[1])}, m[0])),
    (r"alt(\d+)", lambda m: GroupSpec("alt", {"n": int(m[1])}, m[0])),
    (r"d(\d+)", lambda m: GroupSpec("dihedral", {"n": int(m[1]) // 2}, m[0])),
    (r"ea(\d+)_(\d+)", lambda m: GroupSpec("elem_abelian", {"p": int(m[1]), "k": int(m[2])}, m[0])),
    (r"psl2_(\d+)", lambda m: GroupSpec("psl2", {"q": int(m[1])}, m[0])),
    (r"pgl2_(\d+)", lambda m: GroupSpec("pgl2", {"q": int(m[1])}, m[0])),
]


def named_spec(name: str) -> GroupSpec:
    if name in CATALOG:
        return CATALOG[name]
    for pat, make in _PATTERNS:
        m = re.fullmatch(pat, name)
        if m:
            return make(m)
    raise KeyError(f"unknown catalog group {name!r}")


def get(name: str) -> PermGroup:
    """Construct a catalog group by name (bundled file if present, else constructor)."""
    path = bundled_path(name)
    if path is not None:
        G = load_group(path)
        return G
    return construct(named_spec(name))


def bundled_dir() -> Path:
    return Path(str(resources.files("ppbase") / "data" / "catalog"))


def bundled_path(name: str) -> Optional[Path]:
    p = bundled_dir() / f"{_file_stem(name)}.json"
    return p if p.exists() else None


def _file_stem(name: str) -> str:
    return name.replace(":", "_by_")


def export_catalog(directory: Union[str, Path]) -> List[Path]:
    out = []
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for name, spec in CATALOG.items():
        G = construct(spec)
        p = d / f"{_file_stem(name)}.json"
        save_group(G, p, name)
        out.append(p)
    return out
