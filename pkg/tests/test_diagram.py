from __future__ import annotations

import json
from fractions import Fraction

import pytest

from vertexglue.amplitude import ONE, ZERO, Amplitude, TruncationConfig
from vertexglue.diagram import (DiagramError, Table, ToricDiagram, compare_tables, edge_weight,
                                fermionic_partition_function, partition_function, preset, vertex_table)
from vertexglue.fock import is_bogoliubov
from vertexglue.partition import Partition, conjugate, partitions_of
from vertexglue.scalar import Scalar, quantum_integer
from vertexglue.vertex import framed_vertex

E = Partition()


def single_vertex(framing=0):
    return {"vertices": [{"id": "v"}], "edges": [],
            "outer": [{"at": ["v", k], "framing": framing if k == 1 else 0, "label": f"x{k}"} for k in (1, 2, 3)]}


def series_exp(F, cfg, order):
    Z, term = ONE, ONE
    for k in range(1, order + 1):
        term = term.mul(F, cfg).scale(Scalar.from_int(Fraction(1, k)))
        Z = Z + term
    return Z


def series_log(Z, cfg, order):
    u, out, p = Z - ONE, ZERO, ONE
    for k in range(1, order + 1):
        p = p.mul(u, cfg)
        out = out + p.scale(Scalar.from_int(Fraction((-1) ** (k + 1), k)))
    return out


def test_validation_collects_every_problem():
    bad = {"vertices": [{"id": "v1"}, {"id": "v2"}],
           "edges": [{"from": ["v1", 3], "to": ["v9", 1], "kahler": "Q"}],
           "outer": [{"at": ["v1", 1]}, {"at": ["v1", 1]}],
           "identify": [["Q", "Z"]]}
    with pytest.raises(DiagramError) as err:
        ToricDiagram.from_dict(bad)
    text = " | ".join(err.value.problems)
    assert "unknown vertex 'v9'" in text
    assert "slot v1:1 used by both" in text
    assert "slot v1:2 is unused" in text
    assert "unknown Kahler symbol 'Z'" in text


def test_disconnected_and_malformed():
    d = {"vertices": [{"id": "a"}, {"id": "b"}], "edges": [],
         "outer": [{"at": [v, k]} for v in "ab" for k in (1, 2, 3)]}
    with pytest.raises(DiagramError, match="disconnected"):
        ToricDiagram.from_dict(d)
    with pytest.raises(DiagramError, match="malformed"):
        ToricDiagram.from_dict({"vertices": [{"name": "a"}]})


def test_json_roundtrip(tmp_path):
    d = preset("local-p2")
    path = tmp_path / "p2.json"
    path.write_text(json.dumps(d.to_dict()))
    again = ToricDiagram.load(path)
    assert again.to_dict() == d.to_dict()
    assert again.n_loops == 1
    path.write_text("{not json")
    with pytest.raises(DiagramError, match="invalid JSON"):
        ToricDiagram.load(path)


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("quintic")
    with pytest.raises(ValueError):
        preset("xp")


def test_single_vertex_table_is_the_vertex():
    cfg = TruncationConfig.of(energy=2, q_degree=0)
    d = ToricDiagram.from_dict(single_vertex(framing=1))
    T = partition_function(d, cfg, normalized=False)
    assert T.get([(1,), (), ()]) == Amplitude.const(framed_vertex((1,), E, E, (1, 0, 0)))
    assert T.get([(1,), (1,), ()]) == Amplitude.const(framed_vertex((1,), (1,), E, (1, 0, 0)))
    assert T.closed().is_one()


def test_edge_weight_examples():
    assert edge_weight(Partition([1]), 0, "Q") == Amplitude.monomial(-1, {"Q": 2})
    assert edge_weight(Partition([2]), 1, "Q") == Amplitude.monomial(Scalar.q_power(-1), {"Q": 4})


def test_conifold_closed_formula():
    # the same expansion with the single invariant n^0_1 = 1
    cfg = TruncationConfig.of(energy=0, q_degree=4)
    B = partition_function(preset("conifold"), cfg, normalized=False)
    F = ZERO
    for n in range(1, 5):
        F = F + Amplitude.monomial(-(quantum_integer(n) ** 2 * n).inv(), {"Q": 2 * n})
    assert B.closed() == series_exp(F, cfg, 4)


def test_conifold_first_order_by_hand():
    cfg = TruncationConfig.of(energy=2, q_degree=1)
    B = partition_function(preset("conifold"), cfg, normalized=False)
    for d in range(3):
        for mu in partitions_of(d):
            expected = Amplitude.const(framed_vertex(mu, E, E))
            nu = Partition([1])
            expected = expected + (Amplitude.const(framed_vertex(mu, E, nu) * framed_vertex(conjugate(nu), E, E))
                                   .mul(edge_weight(nu, 0, "Q")))
            assert B.get([mu, (), (), ()]) == expected


@pytest.mark.parametrize("p", [-3, -1, 0])
def test_both_bosonic_forms_agree(p):
    cfg = TruncationConfig.of(energy=2, q_degree=2)
    d = preset("xp", p)
    assert partition_function(d, cfg) == partition_function(d, cfg, form="framed")


@pytest.mark.parametrize("p", [-2, 1])
def test_xp_bosonic_matches_fermionic(p):
    cfg = TruncationConfig.of(energy=2, q_degree=2)
    d = preset("xp", p)
    R = fermionic_partition_function(d, cfg)
    assert compare_tables(partition_function(d, cfg), R.table, 2) == []
    assert is_bogoliubov(R.state, cfg).is_zero()
    assert R.loops == []


def test_local_p2_gopakumar_vafa_invariants():
    # log Z = sum n^g_d (1/k) (-[k]^2)^(g-1) Q^(kd) with n^0_1 = 3, n^0_2 = -6, n^0_3 = 27, n^1_3 = -10
    cfg = TruncationConfig.of(energy=0, q_degree=3)
    Z = partition_function(preset("local-p2"), cfg, normalized=False).closed()
    gv = {(0, 1): 3, (0, 2): -6, (0, 3): 27, (1, 3): -10}
    F = ZERO
    for (g, d), n in gv.items():
        for k in range(1, 4):
            if k * d <= 3:
                c = (-quantum_integer(k) ** 2) ** (g - 1) if g else -(quantum_integer(k) ** 2).inv()
                F = F + Amplitude.monomial(c * Fraction(n, k), {"Q1": 2 * k * d})
    assert series_log(Z, cfg, 3) == F


def test_local_p2_fermionic_loop_small():
    cfg = TruncationConfig.of(energy=1, q_degree=2)
    d = preset("local-p2")
    R = fermionic_partition_function(d, cfg)
    assert R.loops == ["T1"]
    assert compare_tables(partition_function(d, cfg), R.table, 1) == []
    assert is_bogoliubov(R.state, cfg).is_zero()


def test_compare_tables_reports_differences():
    a = Table(["x"], {(Partition([1]),): ONE})
    b = Table(["x"], {})
    (diff,) = compare_tables(a, b, 1)
    assert diff[0] == (Partition([1]),) and diff[2].is_zero()
    assert compare_tables(a, b, 0) == []
