"""JSON interchange formats.

Every file is a single JSON object with "format" and "version" keys.
Serialisation goes through dumps_canonical (sorted keys, fixed indent,
trailing newline, no timestamps) so identical data produces identical
bytes.

formats:
  fusion-system      labels, sparse fusion quadruples, conjugation, twists
  modular-data       fusion-system fields plus S (split re/im), z, c
  graph              named adjacency matrix with affine marking
  coupling-matrix    one integer matrix Z
  invariant-catalog  header plus one record per coupling matrix
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .catalog import Graph
from .fusion_core import FusionSystem, make_fusion_system
from .modular_data import ModularData

FORMAT_VERSION = 1


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(path: str, obj: dict) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_canonical(obj))


def _read(path: str, expected_format: str) -> dict:
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or obj.get("format") != expected_format:
        raise ValueError(f"{path}: expected format {expected_format!r}, "
                         f"got {obj.get('format')!r}")
    if obj.get("version") != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported version {obj.get('version')!r}")
    return obj


def _twists_out(F: FusionSystem):
    if F.twists is None:
        return None
    return [[t.numerator, t.denominator] for t in F.twists]


def _twists_in(raw):
    if raw is None:
        return None
    return [Fraction(num, den) for num, den in raw]


def fusion_system_dict(F: FusionSystem) -> dict:
    a, b, c = np.nonzero(F.N)
    quads = [[int(i), int(j), int(k), int(F.N[i, j, k])]
             for i, j, k in zip(a, b, c)]
    return {
        "format": "fusion-system",
        "version": FORMAT_VERSION,
        "labels": list(F.labels),
        "rank": F.n,
        "fusion": quads,
        "conjugation": list(F.conj),
        "twists": _twists_out(F),
    }


def fusion_system_from_dict(obj: dict) -> FusionSystem:
    n = int(obj["rank"])
    labels = obj["labels"]
    if len(labels) != n:
        raise ValueError("rank does not match number of labels")
    N = np.zeros((n, n, n), dtype=np.int64)
    for i, j, k, v in obj["fusion"]:
        N[i, j, k] = v
    return make_fusion_system(labels, N, obj["conjugation"],
                              _twists_in(obj.get("twists")))


def save_fusion_system(F: FusionSystem, path: str) -> None:
    _write(path, fusion_system_dict(F))


def load_fusion_system(path: str) -> FusionSystem:
    return fusion_system_from_dict(_read(path, "fusion-system"))


def modular_data_dict(md: ModularData) -> dict:
    obj = fusion_system_dict(md.system)
    obj["format"] = "modular-data"
    obj["S_re"] = md.S.real.tolist()
    obj["S_im"] = md.S.imag.tolist()
    obj["z"] = [md.z.real, md.z.imag]
    obj["c"] = md.c
    return obj


def save_modular_data(md: ModularData, path: str) -> None:
    _write(path, modular_data_dict(md))


def load_modular_data(path: str) -> ModularData:
    import cmath
    import math

    from .modular_data import _snap_c

    obj = _read(path, "modular-data")
    obj2 = dict(obj)
    obj2["format"] = "fusion-system"
    F = fusion_system_from_dict(obj2)
    S = np.array(obj["S_re"]) + 1j * np.array(obj["S_im"])
    z = complex(obj["z"][0], obj["z"][1])
    c = float(obj["c"])
    omega = np.array([cmath.exp(2j * math.pi * float(t)) for t in F.twists])
    T = cmath.exp(-1j * math.pi * c / 12.0) * np.diag(omega)
    S.setflags(write=False)
    T.setflags(write=False)
    return ModularData(system=F, S=S, T=T, z=z, c=c, c_rational=_snap_c(c))


def graph_dict(g: Graph) -> dict:
    obj = {
        "format": "graph",
        "version": FORMAT_VERSION,
        "name": g.name,
        "adjacency": g.adjacency.tolist(),
        "affine": g.affine,
        "star": g.star,
        "iota": g.iota,
    }
    try:
        from .catalog import graph_meta
        meta = graph_meta(g.name)
    except ValueError:
        pass
    else:
        obj["meta"] = {
            "coxeter": meta.coxeter,
            "exponents": list(meta.exponents),
            "group_order": meta.group_order,
            "level": meta.level,
        }
    return obj


def save_graph(g: Graph, path: str) -> None:
    _write(path, graph_dict(g))


def load_graph(path: str) -> Graph:
    obj = _read(path, "graph")
    adj = np.array(obj["adjacency"], dtype=np.int64)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency must be a square matrix")
    if not np.array_equal(adj, adj.T):
        raise ValueError("adjacency must be symmetric")
    adj.setflags(write=False)
    star = obj["star"]
    return Graph(name=obj["name"], adjacency=adj, affine=bool(obj["affine"]),
                 star=None if star is None else int(star), iota=int(obj["iota"]))


def save_coupling_matrix(Z: np.ndarray, path: str) -> None:
    _write(path, {
        "format": "coupling-matrix",
        "version": FORMAT_VERSION,
        "Z": np.asarray(Z, dtype=np.int64).tolist(),
    })


def load_coupling_matrix(path: str) -> np.ndarray:
    obj = _read(path, "coupling-matrix")
    Z = np.array(obj["Z"], dtype=np.int64)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
        raise ValueError("Z must be a square matrix")
    Z.setflags(write=False)
    return Z


def catalog_dict(header: dict, records: list[dict]) -> dict:
    return {
        "format": "invariant-catalog",
        "version": FORMAT_VERSION,
        "header": dict(header),
        "invariants": list(records),
    }


def save_invariant_catalog(obj: dict, path: str) -> None:
    if obj.get("format") != "invariant-catalog":
        raise ValueError("not an invariant-catalog object")
    _write(path, obj)


def load_invariant_catalog(path: str) -> dict:
    return _read(path, "invariant-catalog")
