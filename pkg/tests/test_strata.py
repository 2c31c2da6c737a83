"""Stratum codimensions, the Betti q-series identity, orbit decomposition."""
from __future__ import annotations

import itertools
import random

import pytest

import oracles
from quiverdt import (
    InconsistencyError,
    InvalidInputError,
    NotTypeAError,
    admissible_total_order,
    betti_identity_check,
    codim_additivity_check,
    codim_of_stratum,
    enumerate_partitions,
    inner_lists,
    kostant_partitions,
    kostant_series,
    make_partition,
    monomial_normal_form,
    poincare_series,
    series_from_inner_lists,
    stratum_orbit_decomposition,
)


def whole(q):
    return make_partition(q, [list(q.vertices)])


def test_normal_form_single_long_root(a2):
    """y_(1,1) = -v * (y_e1 y_e2), so the normalized form is (-1, 1)."""
    p = whole(a2)
    order = admissible_total_order(a2, p)
    m = series_from_inner_lists(a2, p, [[0, 1, 0]])
    nf = monomial_normal_form(a2, p, order, m)
    assert (nf.sign, nf.v_power) == (-1, 1)
    assert nf.gamma == a2.vector([1, 1])


def test_normal_form_single_simple_root(a2):
    p = whole(a2)
    order = admissible_total_order(a2, p)
    m = series_from_inner_lists(a2, p, [[1, 0, 0]])
    nf = monomial_normal_form(a2, p, order, m)
    assert (nf.sign, nf.v_power) == (1, 0)


def test_normal_form_worked_case(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    order = admissible_total_order(a3, p)
    m = series_from_inner_lists(a3, p, [[2], [1, 1, 2]])
    nf = monomial_normal_form(a3, p, order, m)
    assert (nf.sign, nf.v_power) == (-1, 11)
    assert nf.gamma == a3.vector([2, 3, 2])


def test_normal_form_invariant_under_block_permutation(a3, a4, d4, atilde2, rng):
    """The cross-block correction cancels however blocks are interleaved."""
    for q in (a3, a4, d4, atilde2):
        for p in enumerate_partitions(q, admissible_only=True):
            order = admissible_total_order(q, p)
            g = q.vector({v: rng.randint(0, 2) for v in q.vertices})
            for m in kostant_series(q, p, g):
                base = monomial_normal_form(q, p, order, m)
                by_block = {}
                for e in order.entries:
                    by_block.setdefault(e.block, []).append(e)
                for perm in itertools.permutations(sorted(by_block)):
                    entries = tuple(
                        e for j in perm for e in by_block[j]
                    )
                    shuffled = type(order)(q, order.partition, entries, "shuffled")
                    nf = monomial_normal_form(q, p, shuffled, m)
                    assert (nf.sign, nf.v_power) == (base.sign, base.v_power)


def test_normal_form_matches_every_literal_admissible_product(a3, a4, a3_source_mid):
    """Multiplying the factors literally, in any order that passes
    validation, lands on the same canonical (sign, v_power)."""
    from quiverdt import brute_force_valid_orders
    from quiverdt.strata import _product_form, _simple_monomial_form

    interleaved = 0
    for q in (a3, a4, a3_source_mid):
        for p in enumerate_partitions(q, admissible_only=True):
            try:
                orders = brute_force_valid_orders(q, p)
            except InvalidInputError:
                continue
            g = q.vector({v: 2 for v in q.vertices})
            for m in kostant_series(q, p, g):
                base = monomial_normal_form(q, p, admissible_total_order(q, p), m)
                for entries in orders:
                    factors = []
                    for e in entries:
                        jm = m.partition.block_index(p.blocks[e.block])
                        kp = m.per_block[jm]
                        local = e.root.restrict(m.partition.blocks[jm])
                        mult = kp.multiplicities[kp.root_set.index(local)]
                        if mult:
                            factors.append((e.root.values, mult))
                    sign, power, total = _product_form(q, factors)
                    s_sign, s_power = _simple_monomial_form(q, total)
                    assert (sign * s_sign, power - s_power) == (base.sign, base.v_power)
                    if [e.block for e in entries] != sorted(e.block for e in entries):
                        interleaved += 1
    assert interleaved > 100


def test_codim_a2_whole_gamma22(a2):
    p = whole(a2)
    want = {(0, 2, 0): (0, 0), (1, 1, 1): (1, 1), (2, 0, 2): (4, 0)}
    for lists, (codim, parity) in want.items():
        m = series_from_inner_lists(a2, p, [list(lists)])
        rep = codim_of_stratum(a2, p, m, a2.vector([2, 2]))
        assert (rep.codim, rep.sign_exponent_parity) == (codim, parity)


def test_codim_worked_case_matches_rank_locus(a3):
    """Rank-1 maps in Hom(C^2, C^3) drop codimension (2-1)(3-1) = 2."""
    p = make_partition(a3, [["1"], ["2", "3"]])
    m = series_from_inner_lists(a3, p, [[2], [1, 1, 2]])
    rep = codim_of_stratum(a3, p, m, a3.vector([2, 3, 2]))
    assert rep.codim == (2 - 1) * (3 - 1)
    assert rep.sign_exponent_parity == 1


def test_codim_singleton_partition_is_zero(a3):
    p = make_partition(a3, [["1"], ["2"], ["3"]])
    g = a3.vector([2, 2, 2])
    (m,) = kostant_series(a3, p, g)
    assert codim_of_stratum(a3, p, m, g).codim == 0


def test_codim_gamma_mismatch_rejected(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    m = series_from_inner_lists(a3, p, [[2], [1, 1, 2]])
    with pytest.raises(InvalidInputError):
        codim_of_stratum(a3, p, m, a3.vector([1, 1, 1]))


def test_codim_non_admissible_partition_block_route(atilde2):
    p = make_partition(atilde2, [["1", "3"], ["2"]])
    g = atilde2.vector([2, 2, 2])
    codims = sorted(
        codim_of_stratum(atilde2, p, m, g).codim for m in kostant_series(atilde2, p, g)
    )
    assert codims == [0, 1, 4]


def test_codim_parity_formula(a3, d4, rng):
    """Sign parity equals sum of mult * (height - 1) over the series."""
    for q in (a3, d4):
        for p in enumerate_partitions(q, admissible_only=True):
            g = q.vector({v: rng.randint(0, 2) for v in q.vertices})
            for m in kostant_series(q, p, g):
                rep = codim_of_stratum(q, p, m, g)
                want = sum(mult * (root.height - 1) for _, root, _, mult in m.entries())
                assert rep.sign_exponent_parity == want % 2


def test_additivity_worked_case(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    m = series_from_inner_lists(a3, p, [[2], [1, 1, 2]])
    v = codim_additivity_check(a3, p, m, a3.vector([2, 3, 2]))
    assert v.equal and v.block_codims == (0, 2) and v.total_codim == 2


def test_additivity_whole_partition_trivial(a3):
    p = whole(a3)
    g = a3.vector([1, 1, 1])
    for m in kostant_series(a3, p, g):
        v = codim_additivity_check(a3, p, m, g)
        assert v.equal and len(v.block_codims) == 1


def test_additivity_randomized(a2, a3, a4, d4, atilde2, rng):
    cases = 0
    quivers = (a2, a3, a4, d4, atilde2)
    while cases < 30:
        q = rng.choice(quivers)
        p = rng.choice(enumerate_partitions(q))
        g = q.vector({v: rng.randint(0, 3) for v in q.vertices})
        series = kostant_series(q, p, g)
        if not series:
            continue
        m = rng.choice(series)
        assert codim_additivity_check(q, p, m, g).equal
        cases += 1


def test_betti_a2_whole_frozen(a2):
    p = whole(a2)
    v = betti_identity_check(a2, p, a2.vector([2, 2]), 60)
    assert v.equal
    p2 = poincare_series(2, 60)
    assert v.lhs == p2 * p2
    got = {(t.codim, t.factors) for t in v.terms}
    assert got == {(0, (2,)), (1, (1, 1, 1)), (4, (2, 2))}


def test_betti_zero_gamma(a2):
    v = betti_identity_check(a2, whole(a2), a2.zero(), 20)
    assert v.equal and v.lhs.to_pairs() == [[0, 1]]


def test_betti_a3_worked_case(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    v = betti_identity_check(a3, p, a3.vector([2, 3, 2]), 40)
    assert v.equal
    got = {(t.codim, t.factors) for t in v.terms}
    assert got == {(0, (1, 2, 2)), (2, (1, 1, 2, 2)), (6, (2, 2, 3))}


def test_betti_non_admissible_partition(atilde2):
    p = make_partition(atilde2, [["1", "3"], ["2"]])
    v = betti_identity_check(atilde2, p, atilde2.vector([2, 2, 2]), 40)
    assert v.equal


def test_betti_cross_partition_consistency(a3):
    """Every partition reproduces the same left-hand product."""
    g = a3.vector([2, 2, 2])
    verdicts = [
        betti_identity_check(a3, p, g, 40) for p in enumerate_partitions(a3)
    ]
    assert all(v.equal for v in verdicts)
    assert len({tuple(map(tuple, v.lhs.to_pairs())) for v in verdicts}) == 1


def test_betti_sweep_small_gammas(a3_sink_mid, d4, rng):
    for q in (a3_sink_mid, d4):
        for p in enumerate_partitions(q, admissible_only=True):
            for _ in range(3):
                g = q.vector({v: rng.randint(0, 3) for v in q.vertices})
                assert betti_identity_check(q, p, g, 30).equal


def test_inner_lists_roundtrip(a3, rng):
    p = make_partition(a3, [["1"], ["2", "3"]])
    for _ in range(10):
        g = a3.vector({v: rng.randint(0, 3) for v in a3.vertices})
        for m in kostant_series(a3, p, g):
            lists = inner_lists(m)
            back = series_from_inner_lists(a3, p, lists)
            assert back.multiplicities() == m.multiplicities()


def test_series_from_inner_lists_validates(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    with pytest.raises(InvalidInputError):
        series_from_inner_lists(a3, p, [[2]])
    with pytest.raises(InvalidInputError):
        series_from_inner_lists(a3, p, [[2], [1, 1]])
    with pytest.raises(InvalidInputError):
        series_from_inner_lists(a3, p, [[2], [1, 1, -1]])


def test_orbit_decomposition_worked_case(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    g = a3.vector([2, 3, 2])
    m = series_from_inner_lists(a3, p, [[2], [1, 1, 2]])
    orbits = stratum_orbit_decomposition(a3, p, m, g)
    assert len(orbits) == 5
    for orb in orbits:
        assert orb.dimension_vector() == g


def test_orbit_decomposition_whole_partition_identity(a3):
    p = whole(a3)
    g = a3.vector([2, 3, 2])
    for m in kostant_series(a3, p, g):
        orbits = stratum_orbit_decomposition(a3, p, m, g)
        assert len(orbits) == 1
        assert tuple(orbits[0].multiplicities) == tuple(m.multiplicities())


def test_orbit_decomposition_partitions_everything(a3, a4):
    """Across all strata the orbit lists tile the full Kostant set."""
    for q, blocks in ((a3, [["1"], ["2", "3"]]), (a4, [["1", "2"], ["3", "4"]])):
        p = make_partition(q, blocks)
        g = q.vector({v: 2 for v in q.vertices})
        seen = []
        for m in kostant_series(q, p, g):
            for orb in stratum_orbit_decomposition(q, p, m, g):
                seen.append(tuple(orb.multiplicities))
        full = {tuple(kp.multiplicities) for kp in kostant_partitions(q, g)}
        assert len(seen) == len(full)
        assert set(seen) == full


def test_orbit_decomposition_rejects_non_type_a(d4):
    p = make_partition(d4, [["c", "1"], ["2"], ["3"]])
    g = d4.vector([1, 1, 1, 1])
    for m in kostant_series(d4, p, g):
        with pytest.raises(NotTypeAError):
            stratum_orbit_decomposition(d4, p, m, g)
        break
