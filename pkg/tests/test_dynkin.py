"""ADE recognition, positive root enumeration, Kostant partitions."""
from __future__ import annotations

import pytest

import oracles
from quiverdt import (
    DynkinType,
    EnumerationCapError,
    NotConnectedError,
    NotDynkin,
    classify_dynkin,
    euler_form,
    kostant_partitions,
    positive_roots,
)
from quiverdt.quiver import Arrow, Quiver


def star(legs):
    """Tree with legs of the given lengths hanging off a center c."""
    vertices = ["c"]
    arrows = []
    for i, length in enumerate(legs):
        prev = "c"
        for j in range(length):
            v = f"v{i}_{j}"
            vertices.append(v)
            arrows.append((f"a{i}_{j}", v, prev))
            prev = v
    return oracles.build_quiver(vertices, arrows)


def test_classify_a3(a3):
    assert classify_dynkin(a3) == DynkinType("A", 3)


def test_classify_single_vertex():
    q = oracles.build_quiver(["1"], [])
    assert classify_dynkin(q) == DynkinType("A", 1)


def test_classify_path_orientation_free(a3_source_mid, a3_sink_mid):
    assert classify_dynkin(a3_source_mid) == DynkinType("A", 3)
    assert classify_dynkin(a3_sink_mid) == DynkinType("A", 3)


def test_classify_kronecker_multi_edge(kronecker):
    out = classify_dynkin(kronecker)
    assert isinstance(out, NotDynkin) and out.kind == "multi-edge"


def test_classify_cycle(atilde2):
    out = classify_dynkin(atilde2)
    assert isinstance(out, NotDynkin) and out.kind == "cycle"


def test_classify_loop_on_contraction_quiver():
    q = Quiver(
        vertices=("x",),
        arrows=(Arrow("a", "x", "x"),),
        is_contraction=True,
    )
    out = classify_dynkin(q)
    assert isinstance(out, NotDynkin) and out.kind == "loop"


def test_classify_d4(d4):
    assert classify_dynkin(d4) == DynkinType("D", 4)


@pytest.mark.parametrize(
    "legs, family, rank",
    [
        ((1, 1, 2), "D", 5),
        ((1, 1, 4), "D", 7),
        ((1, 2, 2), "E", 6),
        ((1, 2, 3), "E", 7),
        ((1, 2, 4), "E", 8),
    ],
)
def test_classify_de_families(legs, family, rank):
    assert classify_dynkin(star(legs)) == DynkinType(family, rank)


@pytest.mark.parametrize("legs", [(1, 2, 5), (2, 2, 2), (1, 1, 1, 1)])
def test_classify_rejects_bad_stars(legs):
    out = classify_dynkin(star(legs))
    assert isinstance(out, NotDynkin) and out.kind == "branching"


def test_classify_rejects_two_branch_vertices():
    q = star((1, 1, 2))
    extra = oracles.build_quiver(
        list(q.vertices) + ["w"],
        [(a.name, a.tail, a.head) for a in q.arrows] + [("w0", "w", "v2_0")],
    )
    out = classify_dynkin(extra)
    assert isinstance(out, NotDynkin) and out.kind == "branching"


def test_classify_rejects_disconnected():
    q = oracles.build_quiver(["1", "2", "3"], [("a", "2", "1")])
    with pytest.raises(NotConnectedError):
        classify_dynkin(q)
    with pytest.raises(NotConnectedError):
        classify_dynkin(oracles.build_quiver([], []))


def test_positive_roots_a2(a2):
    rs = positive_roots(a2)
    assert rs.dynkin_type == DynkinType("A", 2)
    assert {r.values for r in rs.roots} == {(1, 0), (0, 1), (1, 1)}


def test_positive_roots_a3_has_six(a3):
    rs = positive_roots(a3)
    assert len(rs.roots) == 6
    assert (1, 1, 1) in {r.values for r in rs.roots}


def test_positive_roots_d4_has_twelve(d4):
    assert len(positive_roots(d4).roots) == 12


def test_positive_roots_sorted_by_height_then_values(a3):
    rs = positive_roots(a3)
    keys = [(r.height, r.values) for r in rs.roots]
    assert keys == sorted(keys)


def test_positive_roots_tits_form_is_one(d4):
    for r in positive_roots(d4).roots:
        assert euler_form(d4, r, r) == 1


def test_roots_match_reflection_closure():
    cases = [
        oracles.path_quiver(1),
        oracles.path_quiver(2),
        oracles.path_quiver(3, flips=(1,)),
        oracles.path_quiver(4),
        oracles.path_quiver(5, flips=(2,)),
        star((1, 1, 1)),
        star((1, 1, 2)),
        star((1, 2, 2)),
    ]
    for q in cases:
        got = {r.values for r in positive_roots(q).roots}
        assert got == oracles.reflection_closure_roots(q)


def test_root_count_type_a_formula():
    for n in range(1, 7):
        q = oracles.path_quiver(n)
        assert len(positive_roots(q).roots) == n * (n + 1) // 2


def test_root_count_type_d(d4):
    assert len(positive_roots(d4).roots) == 12
    assert len(positive_roots(star((1, 1, 2))).roots) == 20


def test_root_set_index_roundtrip(a3):
    rs = positive_roots(a3)
    for i, r in enumerate(rs.roots):
        assert rs.index(r) == i


def test_kostant_a2_gamma11(a2):
    parts = kostant_partitions(a2, a2.vector([1, 1]))
    assert len(parts) == 2
    assert {str(p) for p in parts} == {"1x(0,1) + 1x(1,0)", "1x(1,1)"}


def test_kostant_a2_gamma22(a2):
    parts = kostant_partitions(a2, a2.vector([2, 2]))
    assert [str(p) for p in parts] == [
        "2x(1,1)",
        "1x(0,1) + 1x(1,0) + 1x(1,1)",
        "2x(0,1) + 2x(1,0)",
    ]


def test_kostant_zero_vector(a2):
    parts = kostant_partitions(a2, a2.zero())
    assert len(parts) == 1 and parts[0].dimension_vector() == a2.zero()
    assert not parts[0].nonzero()


def test_kostant_sums_back_to_gamma(a3, rng):
    rs = positive_roots(a3)
    for _ in range(20):
        g = oracles.random_dim_vector(rng, a3, top=3)
        for p in kostant_partitions(a3, g):
            assert p.dimension_vector() == g
            assert len(p.multiplicities) == len(rs.roots)


def test_kostant_matches_brute_force(a3, d4, rng):
    for q in (a3, d4):
        roots = [r.values for r in positive_roots(q).roots]
        for _ in range(12):
            g = oracles.random_dim_vector(rng, q, top=3)
            got = {tuple(p.multiplicities) for p in kostant_partitions(q, g)}
            assert got == oracles.brute_kostant(roots, g.values)


def test_kostant_cap(d4):
    with pytest.raises(EnumerationCapError):
        kostant_partitions(d4, d4.vector([3, 3, 3, 3]), cap=5)


def test_kostant_partition_str_multiplicity(a2):
    parts = kostant_partitions(a2, a2.vector([2, 2]))
    assert str(parts[0]) == "2x(1,1)"
