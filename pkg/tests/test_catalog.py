import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modkit.catalog import (
    ade_graph,
    affine_ade,
    cyclic_quadratic_twists,
    gen_cyclic,
    gen_su2,
    graph_meta,
    list_catalog,
    mckay_marks,
    parse_ade_name,
)

COXETER = {"A1": 2, "A2": 3, "A8": 9, "A17": 18, "D4": 6, "D5": 8,
           "D10": 18, "E6": 12, "E7": 18, "E8": 30}
GROUP_ORDER = {"A1": 2, "A5": 6, "D4": 8, "D6": 16, "E6": 24, "E7": 48,
               "E8": 120}
EXPONENTS = {
    "A4": (1, 2, 3, 4),
    "D5": (1, 3, 4, 5, 7),
    "D10": (1, 3, 5, 7, 9, 9, 11, 13, 15, 17),
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
}
RANK = {"A5": 5, "D7": 7, "E6": 6, "E7": 7, "E8": 8}


def test_parse_names():
    assert parse_ade_name("A17") == ("A", 17)
    assert parse_ade_name("D10") == ("D", 10)
    assert parse_ade_name("E8") == ("E", 8)
    for bad in ("A0", "D3", "E5", "E9", "F4", "G2", "X1", ""):
        with pytest.raises(ValueError):
            parse_ade_name(bad)


def test_ordinary_shapes_and_symmetry():
    for name, rank in RANK.items():
        g = ade_graph(name)
        A = g.adjacency
        assert A.shape == (rank, rank)
        assert np.array_equal(A, A.T)
        assert not g.affine
        assert g.star is None


def test_coxeter_numbers():
    for name, h in COXETER.items():
        assert graph_meta(name).coxeter == h


def test_levels_are_coxeter_minus_two():
    for name in COXETER:
        meta = graph_meta(name)
        assert meta.level == meta.coxeter - 2


def test_exponents_table():
    for name, exps in EXPONENTS.items():
        assert tuple(graph_meta(name).exponents) == exps


def test_exponent_spectrum():
    # eigenvalues of the adjacency matrix are 2 cos(pi m / h)
    for name in ("A6", "D5", "E6", "E7", "E8"):
        meta = graph_meta(name)
        got = np.sort(np.linalg.eigvalsh(ade_graph(name).adjacency.astype(float)))
        want = np.sort([2 * np.cos(np.pi * m / meta.coxeter)
                        for m in meta.exponents])
        assert np.max(np.abs(got - want)) < 1e-9


def test_group_orders():
    for name, order in GROUP_ORDER.items():
        assert graph_meta(name).group_order == order


def test_affine_graphs():
    for name in ("A1", "A3", "D4", "D8", "E6", "E7", "E8"):
        g = affine_ade(name)
        A = g.adjacency
        n = RANK.get(name, parse_ade_name(name)[1]) + 1
        assert g.affine
        assert A.shape[0] == ade_graph(name).adjacency.shape[0] + 1
        assert np.array_equal(A, A.T)
        marks = mckay_marks(g)
        # marks span the eigenvalue-2 kernel of the affine adjacency
        assert np.array_equal(A @ marks, 2 * marks)
        assert marks[g.star] == 1
        assert int(np.sum(marks ** 2)) == graph_meta(name).group_order


def test_a1_affine_has_doubled_edge():
    A = affine_ade("A1").adjacency
    assert A.tolist() == [[0, 2], [2, 0]]


def test_star_is_extension_vertex():
    for name in ("D4", "E6", "E8"):
        g = affine_ade(name)
        # removing the star vertex leaves the ordinary graph
        keep = [i for i in range(g.adjacency.shape[0]) if i != g.star]
        sub = g.adjacency[np.ix_(keep, keep)]
        w_ord = np.sort(np.linalg.eigvalsh(ade_graph(name).adjacency.astype(float)))
        w_sub = np.sort(np.linalg.eigvalsh(sub.astype(float)))
        assert np.max(np.abs(w_ord - w_sub)) < 1e-9


def test_gen_su2_is_a_level_ring(su2):
    F = su2(3)
    # 2 x 2 = 0 + 2 at k=3 (truncation drops 4)
    assert F.N[2, 2].tolist() == [1, 0, 1, 0]
    assert F.N[3, 3].tolist() == [1, 0, 0, 0]


def test_gen_su2_rejects_bad_level():
    with pytest.raises(ValueError):
        gen_su2(0)
    with pytest.raises(ValueError):
        gen_su2(-3)


def test_cyclic_quadratic_twists_values():
    from fractions import Fraction
    assert cyclic_quadratic_twists(3, 3) == [Fraction(0), Fraction(1, 3),
                                             Fraction(1, 3)]
    assert cyclic_quadratic_twists(4, 8) == [Fraction(0), Fraction(1, 8),
                                             Fraction(1, 2), Fraction(1, 8)]


def test_list_catalog_mentions_all_families():
    cat = list_catalog()
    assert "E8" in cat["ordinary_graphs"]
    assert any(s.startswith("su2") for s in cat["systems"])
    assert "E8^" in cat["affine_graphs"]


@settings(deadline=None, max_examples=15)
@given(st.sampled_from(["A", "D", "E"]), st.integers(min_value=1, max_value=16))
def test_pf_eigenvalue_property(family, rank):
    if family == "D" and rank < 4:
        rank += 4
    if family == "E":
        rank = 6 + rank % 3
    name = f"{family}{rank}"
    meta = graph_meta(name)
    A = ade_graph(name).adjacency.astype(float)
    top = float(np.max(np.linalg.eigvalsh(A)))
    assert top == pytest.approx(2 * np.cos(np.pi / meta.coxeter), abs=1e-9)
