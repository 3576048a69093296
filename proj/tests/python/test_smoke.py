"""Smoke tests for the python bindings: the worked examples end to end."""

import json

import pytest

import fusalg


def test_z6_classification():
    ring = fusalg.cyclic_ring(6)
    assert ring.order == 6
    assert ring.mul(5, 5) == 1
    mod = fusalg.regular_module(ring)
    torsion, torsion_free = fusalg.torsion_partition(mod)
    assert torsion == [0, 2, 3, 4]
    assert torsion_free == [1, 5]
    report = fusalg.classify(mod)
    assert report["regular_fusible"] is True
    assert report["fusible"] is True
    assert report["non_zd"] == [1, 5]
    assert report["predicates"]["torsion_free"] is False
    assert report["witnesses"][2] == (1, 3, 5)  # 2*1 = 3 + 5


def test_4z8_not_regular_fusible():
    z8 = fusalg.cyclic_ring(8)
    mod = fusalg.submodule_as_module(fusalg.regular_module(z8), [0, 4])
    assert mod.order == 2
    assert fusalg.module_predicates(mod)["reduced"] is True
    ok, failing = fusalg.is_regular_fusible_module(mod)
    assert not ok and failing == [1]
    assert fusalg.regular_fusible_witness(mod, 1) is None


def test_pattern_ring_singularity_split():
    ring = fusalg.pattern_matrix_ring(2, 3, [[1, 0, 0], [0, 1, 0], [1, 1, 1]])
    assert ring.order == 32
    mod = fusalg.regular_module(ring)
    assert fusalg.singular_submodule(mod, side="right") == [0]
    assert 4 in fusalg.singular_submodule(mod, side="two_sided")  # E31


def test_product_submodules():
    prod = fusalg.product_module(
        fusalg.regular_module(fusalg.cyclic_ring(4)),
        fusalg.regular_module(fusalg.cyclic_ring(18)),
    )
    assert fusalg.is_regular_fusible_submodule(prod, [0, 9])
    assert not fusalg.is_regular_fusible_submodule(prod, [0, 3, 6, 9, 12, 15])
    assert not fusalg.is_regular_fusible_submodule(prod, [0, 9, 36, 45])


def test_localization_collapse():
    z6 = fusalg.cyclic_ring(6)
    loc = fusalg.localize_ring(z6, [1, 2, 4])
    assert loc["ring"].order == 3
    assert loc["canonical_map"] == [0, 1, 2, 0, 1, 2]
    q = fusalg.total_quotient(fusalg.regular_module(z6))
    assert q["module"].order == 6  # units only: nothing collapses


def test_trivial_extension():
    z2 = fusalg.cyclic_ring(2)
    ring, embed_ring, embed_module = fusalg.trivial_extension(fusalg.regular_bimodule(z2))
    assert ring.order == 4
    assert ring.mul(embed_module[1], embed_module[1]) == 0  # (0,1)^2 = 0
    preds = fusalg.ring_predicates(ring)
    assert not preds["left_fusible"]


def test_division_probe():
    probe = fusalg.division_ring_probe(fusalg.cyclic_ring(4))
    assert probe["verdict"] == "holds"
    assert probe["non_fusible_module"] == "Z4/ann(2)"


def test_suite_on_small_corpus():
    corpus = fusalg.generate_corpus(
        max_ring_order=12, max_cyclic_order=8, max_product_order=12, max_trivext_order=9,
        max_module_order=12, families=[],
    )
    assert len(corpus) > 40
    report = fusalg.run_suite(corpus)
    assert report["total"]["violations"] == 0
    assert len(report["statements"]) == 28


def test_search_finds_paper_counterexample():
    corpus = fusalg.generate_corpus()
    result = fusalg.search_counterexample("prop3", "none", corpus)
    assert result["found"] and result["instance"] == "fixture/pmat2-regular"


def test_spec_roundtrip_and_errors():
    mod = fusalg.module_from_spec(json.dumps({"kind": "regular_module", "ring": {"kind": "cyclic", "n": 6}}))
    assert mod.label == "Z6"
    report = fusalg.module_classify_report(mod)
    assert report["torsion"] == [0, 2, 3, 4]
    with pytest.raises(ValueError):
        fusalg.ring_from_spec(json.dumps({"kind": "cyclic", "n": 1}))
    with pytest.raises(ValueError):
        fusalg.cyclic_ring(0)
