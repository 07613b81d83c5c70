"""Acceptance suite: one test per criterion, each printing a single pass/fail line."""

import time

from ppbase import catalog as C
from ppbase.classify import is_bpp_structural
from ppbase.genset import (
    generates, genset_report, is_bpp_bruteforce, is_independent, max_independent_generating,
    max_pp_independent_generating, pp_base_convert,
)
from ppbase.group import PermGroup, is_solvable, quotient
from ppbase.perm import is_pp_element, parse_cycles
from ppbase.spread import (
    fixed_point_ratio, is_k_generating, is_k_independent, spread_reports, t_H, transposition_lambda,
)
from ppbase.structure import chief_counts, frattini_bits, maximal_subgroup_bits, socle
from ppbase.zsigmondy import feit_case, feit_scan, primitive_prime_divisors


def catalog_groups(max_order):
    out = []
    for name in C.catalog_names():
        G = C.get(name)
        if G.order() <= max_order:
            out.append((name, G))
    return out


def test_criterion_1_headline_instance(criterion):
    t0 = time.monotonic()
    G = C.get("pgammal2_9")
    m = max_independent_generating(G)[0]
    a, b = chief_counts(G)
    elapsed = time.monotonic() - t0
    ok = G.order() == 1440 and (m, a, b) == (4, 3, 1) and elapsed <= 600
    criterion(1, ok, f"Aut(Alt(6)) order {G.order()}: m={m}, a={a}, b={b} in {elapsed:.1f}s")
    assert ok


def test_criterion_2_feit_scan(criterion):
    t0 = time.monotonic()
    found = set(feit_scan(100, 30))
    elapsed = time.monotonic() - t0
    expected = {(x, n) for x in range(2, 101) for n in range(2, 31) if feit_case(x, n)}
    listed = {(2, 4), (2, 6), (2, 10), (2, 12), (2, 18), (3, 4), (3, 6), (5, 6)}
    mersenne_like = {(x, 2) for s in range(8) for t in (0, 1) for x in [2**s * 3**t - 1]
                     if 2 <= x <= 100 and (t == 1 or s >= 2)}
    ok = found == expected and listed <= found and mersenne_like <= found and elapsed <= 30
    criterion(2, ok, f"{len(found)} pairs without a large ppd, equal to the four cases: {found == expected}, "
                     f"{elapsed:.2f}s")
    assert ok


def test_criterion_3_zsigmondy(criterion):
    t0 = time.monotonic()
    empty = {(x, n) for x in range(2, 101) for n in range(2, 31) if not primitive_prime_divisors(x, n)}
    elapsed = time.monotonic() - t0
    expected = {(2, 6)} | {(x, 2) for x in range(2, 101) if (x + 1) & x == 0}
    ok = empty == expected and elapsed <= 30
    criterion(3, ok, f"no ppd exactly at {sorted(empty)} in {elapsed:.2f}s")
    assert ok


def test_criterion_4_structural_equals_bruteforce(criterion):
    t0 = time.monotonic()
    checked, shapes, mismatches = [], set(), []
    for name, G in catalog_groups(300):
        if frattini_bits(G) != 1:
            continue
        d = is_bpp_structural(G)
        brute = is_bpp_bruteforce(G)
        shapes.add(d.verdict)
        checked.append(name)
        if brute != (d.verdict != "NotBpp"):
            mismatches.append(name)
    elapsed = time.monotonic() - t0
    required = {"sym4", "alt5", "c2xsym3"}
    ok = (not mismatches and len(checked) >= 25 and required <= set(checked)
          and {"ElementaryAbelian", "ScalarExtension", "CoprimeProduct", "NotBpp"} <= shapes
          and elapsed <= 1200)
    criterion(4, ok, f"{len(checked)} Frattini-free groups, mismatches {mismatches}, {elapsed:.1f}s")
    assert ok


def test_criterion_5_m_equals_m_pp(criterion):
    t0 = time.monotonic()
    bad = []
    groups = catalog_groups(200)
    for name, G in groups:
        m, X = max_independent_generating(G)
        mpp = max_pp_independent_generating(G)[0]
        Y = pp_base_convert(G, X)
        valid = all(is_pp_element(y) for y in Y) and generates(G, Y) and is_independent(G, Y)
        if m != mpp or len(Y) != m or not valid:
            bad.append(name)
    elapsed = time.monotonic() - t0
    ok = not bad and elapsed <= 600
    criterion(5, ok, f"{len(groups)} groups of order <= 200, failures {bad}, {elapsed:.1f}s")
    assert ok


def test_criterion_6_lower_bound(criterion):
    t0 = time.monotonic()
    bad = []
    groups = catalog_groups(500)
    for name, G in groups:
        m = max_independent_generating(G)[0]
        a, b = chief_counts(G)
        if m < a + b or (is_solvable(G) and m != a):
            bad.append((name, m, a, b))
    elapsed = time.monotonic() - t0
    ok = not bad and elapsed <= 1800
    criterion(6, ok, f"{len(groups)} groups of order <= 500, failures {bad}, {elapsed:.1f}s")
    assert ok


def test_criterion_7_t_H_small_q(criterion):
    t0 = time.monotonic()
    values = {}
    for name, S_name in (("pgl2_5", "alt5"), ("pgl2_7", "psl2_7"), ("pgammal2_9", "psl2_9")):
        H = C.get(name)
        S = socle(H)
        assert S.order() == C.get(S_name).order()
        values[name] = t_H(H, S)
    elapsed = time.monotonic() - t0
    ok = set(values.values()) == {1} and elapsed <= 900
    criterion(7, ok, f"t(H) = {values} in {elapsed:.1f}s")
    assert ok


def test_criterion_8_alternating_lambda(criterion):
    t0 = time.monotonic()
    rows = []
    ok = True
    for n in (5, 6, 7):
        H, S = C.sym(n), C.alt(n)
        K = PermGroup(n, [parse_cycles("(1,2)", n)])
        L = transposition_lambda(n)
        indep = is_k_generating(H, K, L) and is_k_independent(H, K, L)
        t = t_H(H, S)
        rows.append((n, len(L), indep, t))
        ok = ok and indep and len(L) == n - 2 and n - 2 > t
    elapsed = time.monotonic() - t0
    ok = ok and elapsed <= 300
    criterion(8, ok, "(n, |Lambda|, K-independent generating, t(H)) = "
                     f"{rows} in {elapsed:.1f}s")
    assert ok


def test_criterion_9_fixed_point_ratio_and_spread(criterion):
    t0 = time.monotonic()
    pairs = reports = 0
    ok = True
    for name in ("sym5", "pgl2_7"):
        H = C.get(name)
        T = H.table()
        for M in maximal_subgroup_bits(H):
            Mg = T.as_group(M)
            for r in T.class_reps:
                g = T.perm(int(r))
                mu = fixed_point_ratio(H, g, Mg)  # coset count and class count asserted equal
                cls = T.class_members(int(T.class_of[int(r)]))
                ok = ok and mu * len(cls) == sum(1 for x in cls.tolist() if (M >> x) & 1)
                pairs += 1
        for rep in spread_reports(H):
            ok = ok and 0 <= rep.P_value <= rep.bound_value
            reports += 1
    elapsed = time.monotonic() - t0
    ok = ok and elapsed <= 300
    criterion(9, ok, f"{pairs} (class, maximal) identities and {reports} spread inequalities, {elapsed:.1f}s")
    assert ok


def test_criterion_10_quotients_of_bpp_groups(criterion):
    t0 = time.monotonic()
    bad = []
    count = quotients = 0
    for name, G in catalog_groups(200):
        if not is_bpp_bruteforce(G):
            continue
        count += 1
        T = G.table()
        for N in T.normal_subgroups():
            Q, _ = quotient(G, T.as_group(N))
            quotients += 1
            if not genset_report(Q, with_m=False).is_bpp:
                bad.append((name, N.bit_count()))
    elapsed = time.monotonic() - t0
    ok = not bad and count > 0 and elapsed <= 600
    criterion(10, ok, f"{count} B_pp groups, {quotients} quotients, failures {bad}, {elapsed:.1f}s")
    assert ok
