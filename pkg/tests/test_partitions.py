"""Dynkin subquiver partitions: construction, admissibility, Kostant series."""
from __future__ import annotations

import pytest

import oracles
from quiverdt import (
    DynkinType,
    NotAdmissibleError,
    NotConnectedError,
    NotDynkinError,
    check_admissible,
    enumerate_partitions,
    kostant_series,
    make_partition,
    order_blocks,
)


def test_make_partition_a3_two_blocks(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    assert p.blocks == (("1",), ("2", "3"))
    assert p.types == (DynkinType("A", 1), DynkinType("A", 2))
    assert str(p) == "[1][2,3]"


def test_make_partition_rejects_disconnected_block(a3):
    with pytest.raises(NotConnectedError):
        make_partition(a3, [["1", "3"], ["2"]])


def test_make_partition_rejects_kronecker_block(kronecker):
    with pytest.raises(NotDynkinError) as exc:
        make_partition(kronecker, [["1", "2"]])
    assert exc.value.kind == "multi-edge"


def test_make_partition_rejects_cyclic_block(atilde2):
    with pytest.raises(NotDynkinError) as exc:
        make_partition(atilde2, [["1", "2", "3"]])
    assert exc.value.kind == "cycle"


def test_block_lookup(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    assert p.block_of("3") == 1
    assert p.block_index(["3", "2"]) == 1
    assert p.size == 2


def test_enumerate_a3_all_admissible(a3):
    ps = enumerate_partitions(a3)
    assert [str(p) for p in ps] == ["[1][2][3]", "[1][2,3]", "[1,2][3]", "[1,2,3]"]
    assert all(check_admissible(a3, p).admissible for p in ps)
    assert len(enumerate_partitions(a3, admissible_only=True)) == 4


def test_enumerate_kronecker(kronecker):
    assert [str(p) for p in enumerate_partitions(kronecker)] == ["[1][2]"]
    adm = enumerate_partitions(kronecker, admissible_only=True)
    assert [p.blocks for p in adm] == [(("1",), ("2",))]


def test_enumerate_single_vertex():
    q = oracles.build_quiver(["1"], [])
    assert len(enumerate_partitions(q)) == 1


def test_enumerate_atilde2(atilde2):
    ps = enumerate_partitions(atilde2)
    assert [str(p) for p in ps] == ["[1][2][3]", "[1][2,3]", "[1,2][3]", "[1,3][2]"]
    adm = enumerate_partitions(atilde2, admissible_only=True)
    assert [str(p) for p in adm] == ["[1][2][3]", "[1][2,3]", "[1,2][3]"]


def test_enumerate_d4_admissible_count(d4):
    adm = enumerate_partitions(d4, admissible_only=True)
    assert [str(p) for p in adm] == [
        "[c][1][2][3]",
        "[c,1][2][3]",
        "[c,2][1][3]",
        "[c,3][1][2]",
        "[c,1,2][3]",
        "[c,1,3][2]",
        "[c,2,3][1]",
        "[c,1,2,3]",
    ]


def test_admissible_verdict_atilde2_good(atilde2):
    v = check_admissible(atilde2, make_partition(atilde2, [["1"], ["2", "3"]]))
    assert v.admissible and v.witness is None and v.ordered


def test_admissible_verdict_atilde2_two_cycle(atilde2):
    v = check_admissible(atilde2, make_partition(atilde2, [["1", "3"], ["2"]]))
    assert not v.admissible
    assert v.witness == ("1+3", "2", "1+3")


def test_admissible_verdict_atilde2_loop_block(atilde2):
    """Raw-blocks diagnosis keeps the spanning forest and reports the loop."""
    v = check_admissible(atilde2, [["1", "2", "3"]])
    assert not v.admissible
    assert v.witness == ("1+2+3", "1+2+3")


def test_order_blocks_reorders(a3):
    p = make_partition(a3, [["2", "3"], ["1"]])
    assert str(order_blocks(a3, p)) == "[1][2,3]"


def test_order_blocks_idempotent(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    q = order_blocks(a3, p)
    assert q.blocks == p.blocks
    assert order_blocks(a3, q).blocks == q.blocks


def test_order_blocks_rejects_non_admissible(atilde2):
    p = make_partition(atilde2, [["1", "3"], ["2"]])
    with pytest.raises(NotAdmissibleError):
        order_blocks(atilde2, p)


def test_kostant_series_a3_worked_case(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    series = kostant_series(a3, p, a3.vector([2, 3, 2]))
    assert len(series) == 3
    for m in series:
        assert m.gamma() == a3.vector([2, 3, 2])


def test_kostant_series_singletons_unique(a3):
    p = make_partition(a3, [["1"], ["2"], ["3"]])
    series = kostant_series(a3, p, a3.vector([2, 2, 2]))
    assert len(series) == 1
    assert series[0].multiplicities() == [2, 2, 2]


def test_kostant_series_zero_gamma(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    series = kostant_series(a3, p, a3.zero())
    assert len(series) == 1 and series[0].gamma() == a3.zero()


def test_kostant_series_counts_product_of_blocks(a3, rng):
    """Series count factors as the product of per-block Kostant counts."""
    from quiverdt import kostant_partitions

    p = make_partition(a3, [["1"], ["2", "3"]])
    for _ in range(10):
        g = oracles.random_dim_vector(rng, a3, top=3)
        expect = 1
        for j, blk in enumerate(p.induced):
            expect *= len(kostant_partitions(blk, g.restrict(blk.vertices)))
        assert len(kostant_series(a3, p, g)) == expect


def test_kostant_series_entries_embed(a3):
    p = make_partition(a3, [["1"], ["2", "3"]])
    series = kostant_series(a3, p, a3.vector([2, 3, 2]))
    for m in series:
        total = a3.zero()
        for block_idx, local_root, embedded, mult in m.entries():
            assert embedded.vertices == a3.vertices
            assert embedded.restrict(p.blocks[block_idx]).values == local_root.values
            assert mult >= 0
            total = total + mult * embedded
        assert total == m.gamma()


def test_all_singletons_always_present_and_admissible(a2, a2_rev, a3, a4, d4,
                                                      atilde2, kronecker):
    for q in (a2, a2_rev, a3, a4, d4, atilde2, kronecker):
        found = enumerate_partitions(q)
        singles = [p for p in found if all(len(b) == 1 for b in p.blocks)]
        assert len(singles) == 1
        assert check_admissible(q, singles[0]).admissible


def test_witness_rewalks_as_contraction_cycle(atilde2):
    from quiverdt import contraction

    bad = make_partition(atilde2, [["1", "3"], ["2"]])
    verdict = check_admissible(atilde2, bad)
    witness = verdict.witness
    assert witness[0] == witness[-1] and len(witness) >= 2
    con = contraction(atilde2, bad.blocks)
    pairs = {(a.tail, a.head) for a in con.arrows}
    for tail, head in zip(witness, witness[1:]):
        assert (tail, head) in pairs

    loop = check_admissible(atilde2, [["1", "2", "3"]])
    assert loop.witness == ("1+2+3", "1+2+3")
    # a loop witness names one block holding more arrows than any tree could
    assert len(atilde2.arrows) >= atilde2.n


def test_whole_partition_series_match_kostant_partitions(a2, a3, d4):
    from quiverdt import kostant_partitions

    for q in (a2, a3, d4):
        p = make_partition(q, [list(q.vertices)])
        g = q.vector({v: 2 for v in q.vertices})
        series = kostant_series(q, p, g)
        direct = kostant_partitions(q, g)
        assert [m.multiplicities() for m in series] == [
            list(kp.multiplicities) for kp in direct
        ]
