import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modkit.catalog import ade_graph, affine_ade, gen_su2, graph_meta
from modkit.modular_data import modular_data
from modkit.nimrep import (
    NimrepBuildError,
    build_nimrep_su2,
    spectrum_check,
    verify_nimrep,
)

from oracles import coupling_forms

GRAPHS = ("A3", "A17", "D4", "D5", "D10", "E6", "E7", "E8")


def test_build_at_matching_level():
    for name in GRAPHS:
        meta = graph_meta(name)
        g = ade_graph(name)
        nim = build_nimrep_su2(g, meta.level)
        assert len(nim.G) == meta.level + 1
        assert np.array_equal(nim.G[0], np.eye(g.adjacency.shape[0],
                                               dtype=np.int64))
        assert np.array_equal(nim.G[1], g.adjacency)


def test_wrong_levels_fail():
    for name in ("A5", "D6", "E6", "E7"):
        meta = graph_meta(name)
        for k in (meta.level - 1, meta.level + 1):
            if k < 1:
                continue
            with pytest.raises(NimrepBuildError):
                build_nimrep_su2(ade_graph(name), k)


def test_e7_wrong_level_reports_closure():
    with pytest.raises(NimrepBuildError) as exc:
        build_nimrep_su2(ade_graph("E7"), 17)
    assert exc.value.kind == "closure"


def test_affine_graph_rejected():
    with pytest.raises(ValueError):
        build_nimrep_su2(affine_ade("E7"), 16)


def test_verify_report(su2):
    for name, k in (("A7", 6), ("D10", 16), ("E8", 28)):
        nim = build_nimrep_su2(ade_graph(name), k)
        rep = verify_nimrep(nim, su2(k))
        assert rep.ok, f"{name}: {rep}"


def test_representation_property_exact(su2):
    F = su2(10)
    nim = build_nimrep_su2(ade_graph("E6"), 10)
    N = F.N
    for a in range(11):
        for b in range(11):
            lhs = nim.G[a] @ nim.G[b]
            rhs = sum(int(N[a, b, c]) * nim.G[c] for c in range(11))
            assert np.array_equal(lhs, rhs)


def test_top_matrix_is_permutation():
    for name, k in (("A9", 8), ("E6", 10), ("E7", 16)):
        nim = build_nimrep_su2(ade_graph(name), k)
        G_k = nim.G[k]
        assert set(np.unique(G_k)) <= {0, 1}
        assert (G_k.sum(axis=0) == 1).all() and (G_k.sum(axis=1) == 1).all()
        assert np.array_equal(G_k @ G_k.T, np.eye(G_k.shape[0],
                                                  dtype=np.int64))


def test_a_series_nimrep_is_the_fusion_ring(su2):
    k = 7
    F = su2(k)
    nim = build_nimrep_su2(ade_graph(f"A{k + 1}"), k)
    for a in range(k + 1):
        assert np.array_equal(nim.G[a], F.N[a])


def test_spectra_against_coupling_diagonals(md):
    pairs = [
        ("A17", 16, "diagonal"),
        ("D10", 16, "pair-blocks"),
        ("E7", 16, "height-18"),
        ("E6", 10, "height-12"),
        ("D7", 10, "conjugating-permutation"),
        ("E8", 28, "height-30"),
        ("D5", 6, "conjugating-permutation"),
    ]
    for name, k, form in pairs:
        nim = build_nimrep_su2(ade_graph(name), k)
        Z = coupling_forms(k)[form]
        rep = spectrum_check(nim, Z, md(k))
        assert rep.ok, f"{name} at {k}: {rep}"


def test_spectrum_mismatch_detected(md):
    nim = build_nimrep_su2(ade_graph("D10"), 16)
    Z = coupling_forms(16)["height-18"]
    rep = spectrum_check(nim, Z, md(16))
    assert not rep.ok  # tr Z = 7 but the graph has 10 vertices


def test_eigenvalues_are_exponent_ratios(md):
    # G_1 spectrum = 2 cos(pi m / h) over the exponents
    for name, k in (("E6", 10), ("E8", 28)):
        meta = graph_meta(name)
        nim = build_nimrep_su2(ade_graph(name), k)
        got = np.sort(np.linalg.eigvalsh(nim.G[1].astype(float)))
        want = np.sort([2 * np.cos(np.pi * m / meta.coxeter)
                        for m in meta.exponents])
        assert np.max(np.abs(got - want)) < 1e-9


@settings(deadline=None, max_examples=8)
@given(st.integers(min_value=2, max_value=10))
def test_a_series_property(n):
    # the A_n graph carries a nimrep exactly at level n - 1
    nim = build_nimrep_su2(ade_graph(f"A{n}"), n - 1)
    F = gen_su2(n - 1)
    assert verify_nimrep(nim, F).ok
