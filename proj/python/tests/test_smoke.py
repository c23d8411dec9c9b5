import math
import os

import numpy as np
import pytest

import qglab


def test_builtins_validate():
    for name in qglab.builtin_names():
        g = qglab.builtin(name)
        rep = qglab.validate(g)
        assert rep["pass"], name
        assert rep["max_violation"] <= 1e-10


def test_group_operations():
    g = qglab.builtin("c_z2")
    assert g.dim == 2
    one = np.array([1.0, 1.0], dtype=complex)
    assert np.allclose(g.mul(one, one), one)
    assert abs(g.haar(one) - 1.0) < 1e-12
    assert abs(g.counit(one) - 1.0) < 1e-12
    assert g.is_commutative() and g.is_cocommutative()


def test_load_corpus_instance():
    src = os.environ.get("QGLAB_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", ".."))
    g = qglab.load_instance(os.path.join(src, "corpus", "kac_paljutkin.json"))
    assert g.dim == 8
    assert not g.is_commutative() and not g.is_cocommutative()
    assert qglab.from_json(g.to_json()).dim == 8


def test_duality():
    g = qglab.builtin("kac_paljutkin")
    assert qglab.pentagon_residual(g) <= 1e-10
    assert qglab.validate(qglab.dual(g))["pass"]
    assert qglab.biduality(g)["pass"]


def test_corepresentations():
    g = qglab.builtin("kac_paljutkin")
    v = qglab.random_invertible_corep(g, 2, seed=3)
    assert qglab.corep_violation(v) <= 1e-9
    res = qglab.unitarize(v)
    u = res["unitary"]
    assert qglab.isometry_residual(u) <= 1e-9
    assert qglab.coisometry_residual(u) <= 1e-9
    assert res["epsilon"] > 0


def test_free_symmetries():
    seq = qglab.free_symmetry_norms(4, 3)
    assert seq[0] == pytest.approx(2.0, abs=1e-8)
    assert seq[1] == pytest.approx(math.sqrt(7.0), abs=1e-7)
    assert all(b >= a - 1e-12 for a, b in zip(seq, seq[1:]))


def test_noncb_probe():
    p = qglab.noncb_probe(4, 3)
    assert p["cb_lower"] == pytest.approx(math.sqrt(5.0), abs=1e-6)
    assert p["multiplier_norm"] == pytest.approx(2.0, abs=1e-9)
    assert p["pi_search"] <= 6.0


def test_suite_report():
    rep = qglab.run_suite("validate", builtins=["c_z2"], with_runtime=False)
    assert rep["pass"]
    assert all("runtime_ms" not in r for r in rep["records"])
    with pytest.raises(qglab.StructuralError):
        qglab.run_suite("nope")


def test_budget_error():
    with pytest.raises(qglab.BudgetError):
        qglab.run_suite("noncb", copies=16, length=12)
