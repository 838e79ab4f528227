"""End-to-end smoke tests for the python bindings."""

import numpy as np
import pytest

import drod


@pytest.fixture(scope="module")
def blobs():
    rng = np.random.default_rng(7)
    a = rng.normal((200.0, 200.0), 40.0, size=(240, 2))
    b = rng.normal((700.0, 500.0), 40.0, size=(160, 2))
    scatter = np.array(
        [
            [450.0, -100.0],
            [-150.0, 600.0],
            [950.0, 50.0],
            [0.0, 0.0],
            [450.0, 800.0],
            [1000.0, 900.0],
        ]
    )
    values = np.vstack([a, b, scatter])
    labels = np.r_[np.zeros(400, dtype=int), np.ones(6, dtype=int)]
    return values, labels


def test_detect_shapes_and_determinism(blobs):
    values, _ = blobs
    first = drod.detect(values, rounds=15, seed=3)
    again = drod.detect(values, rounds=15, seed=3)
    other = drod.detect(values, rounds=15, seed=4)

    assert len(first["scores"]) == len(values)
    assert first["rounds_run"] + first["rounds_skipped"] == 15
    assert max(first["inclusions"]) <= 15
    assert first["lambda_range"][0] >= 1
    assert first["scores"] == again["scores"]
    assert first["scores"] != other["scores"]


def test_detect_separates_outliers(blobs):
    values, labels = blobs
    result = drod.detect(values, rounds=60, seed=11, aggregate="mean")
    assert drod.auc(result["scores"], labels.tolist()) > 0.98
    assert drod.precision_at_s(result["scores"], labels.tolist()) >= 0.8


def test_detect_rejects_bad_config(blobs):
    values, _ = blobs
    with pytest.raises(drod.DrodError):
        drod.detect(values, eta=1.5)
    with pytest.raises(drod.DrodError):
        drod.detect(values, rounds=0)
    with pytest.raises(drod.DrodError):
        drod.detect(values, metric="cosine")


def test_natural_neighbors_graph_is_mutual(blobs):
    values, _ = blobs
    graph = drod.natural_neighbors(values)
    assert graph["lambda"] >= 1
    neighbors = graph["neighbors"]
    assert len(neighbors) == len(values)
    for i, row in enumerate(neighbors):
        assert len(row) == graph["counts"][i]
        for j in row:
            assert i in neighbors[j]


def test_auc_frozen_examples():
    assert drod.auc([3.0, 1.0, 2.0], [1, 0, 0]) == 1.0
    assert drod.auc([1.0, 2.0, 3.0], [1, 0, 0]) == 0.0
    assert drod.auc([1.0, 1.0], [1, 0]) == 0.5


def test_kmeans_and_dbi(blobs):
    values, _ = blobs
    clustering = drod.kmeans(values, 2, seed=5)
    assert sorted(set(clustering["labels"])) == [0, 1]
    assert clustering["centers"].shape == (2, 2)
    assert drod.dbi(values, clustering["labels"]) > 0.0


def test_removing_outliers_tightens_clusters(blobs):
    values, _ = blobs
    scores = drod.detect(values, rounds=30, seed=11)["scores"]
    delta = drod.remove_top_s_and_cluster(values, scores, 6, k=2, seed=5)
    assert delta["after"] < delta["before"]


def test_generate_counts_and_labels():
    rng = np.random.default_rng(0)
    base = rng.normal(50.0, 5.0, size=(400, 2))
    out = drod.generate(
        base,
        scatterliers=10,
        clusterliers=[(15, [10.0, 90.0], [1.0, 1.0])],
        seed=9,
    )
    assert out["values"].shape == (425, 2)
    assert sum(out["labels"]) == 25
    assert out["provenance"].count(-1) == 10
    assert out["provenance"].count(1) == 15

    with pytest.raises(drod.DrodError):
        drod.generate(base, clusterliers=[(200, [0.0, 0.0], [1.0, 1.0])], seed=9)
