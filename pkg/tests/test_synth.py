import numpy as np
import pytest

from cdtree import build_cdt, gen_noise, gen_random_bn, gen_single_edge, pamh, stratify
from cdtree.cdt import CausalDecisionTree, Leaf
from cdtree.render import parse_tree
from cdtree.synth import EvalReport, GroundTruth, eval_recall, logistic_contrast

from .test_cdt import _b


def same(d1, d2):
    return (d1.attribute_names == d2.attribute_names and np.array_equal(d1.X, d2.X)
            and np.array_equal(d1.y, d2.y) and np.array_equal(d1.weights, d2.weights))


def test_random_bn_shape():
    d, truth = gen_random_bn(20, 3, seed=4)
    assert d.m == 19 and d.n == 10_000
    assert len(truth.direct_causes) == 3
    assert truth.outcome == d.outcome_name
    assert truth.direct_causes <= set(d.attribute_names)


@pytest.mark.parametrize("degree", [3, 5, 7])
def test_random_bn_degrees(degree):
    _, truth = gen_random_bn(30, degree, seed=degree, n=200)
    assert len(truth.direct_causes) == degree


def test_random_bn_errors():
    with pytest.raises(ValueError):
        gen_random_bn(4, 5, seed=0)
    with pytest.raises(ValueError):
        gen_random_bn(20, 9, seed=0)


def test_generators_deterministic():
    assert same(gen_random_bn(15, 4, 9)[0], gen_random_bn(15, 4, 9)[0])
    assert same(gen_single_edge(10, 1.0, 3)[0], gen_single_edge(10, 1.0, 3)[0])
    assert same(gen_noise(5, 100, 2), gen_noise(5, 100, 2))
    assert not same(gen_noise(5, 100, 2), gen_noise(5, 100, 3))


def test_single_edge_truth():
    d, truth = gen_single_edge(20, 2.0, seed=0)
    assert truth.direct_causes == {"v1"} and truth.outcome == "v20"
    assert d.m == 19 and d.n == 10_000


@pytest.mark.parametrize("seed", range(5))
def test_single_edge_contrast(seed):
    d, _ = gen_single_edge(20, 2.0, seed)
    c = d.X[:, 0] == 1
    diff = d.y[c].mean() - d.y[~c].mean()
    assert abs(diff - logistic_contrast(2.0)) <= 0.03


def test_single_edge_null_effect():
    hits = 0
    for seed in range(20):
        d, _ = gen_single_edge(20, 0.0, seed)
        hits += pamh(stratify(d.view(), 0, [])).significant
    assert hits <= 2


def test_planted_context():
    d, truth = gen_single_edge(10, 2.0, seed=1, context_strength=3.0)
    assert truth.context_truths == (((("v1", 1),), frozenset({"v2"})),)
    tree = build_cdt(d, prune=False)
    assert d.attribute_names[tree.root.attribute] == "v1"
    assert d.attribute_names[tree.root.edge1.attribute] == "v2"


def test_noise_columns_balanced():
    d = gen_noise(10, 2000, seed=0)
    assert d.m == 10 and d.n == 2000
    means = np.column_stack([d.X, d.y]).mean(axis=0)
    assert ((means >= 0.45) & (means <= 0.55)).all()
    assert gen_noise(3, 1, seed=0).n == 1


def _tree(*attrs):
    node = Leaf(0, 1)
    for a in attrs:
        node = _b(a, node, Leaf(1, 1))
    return CausalDecisionTree(node, 0.05, 5, ("a", "b", "c", "d"))


def test_eval_recall():
    truth = GroundTruth("y", {"a", "b", "c"})
    r = eval_recall(_tree(0, 2, 3), truth)
    assert r.recall == pytest.approx(2 / 3)
    assert r.found == {"a", "c", "d"} and r.missed == {"b"}
    assert eval_recall(_tree(), truth).recall == 0.0
    assert eval_recall(_tree(0, 1, 2), truth).recall == 1.0
    with pytest.raises(ValueError):
        eval_recall(_tree(), GroundTruth("y", set()))


def test_eval_recall_monotone():
    truth = GroundTruth("y", {"a", "c"})
    prev = 0.0
    for k in range(5):
        r = eval_recall(_tree(*range(k if k < 4 else 4)), truth).recall
        assert r >= prev
        prev = r


def test_truth_json_roundtrip(tmp_path):
    t = GroundTruth("v20", {"v1"}, (((("v1", 1),), frozenset({"v2"})),))
    p = tmp_path / "t.json"
    t.save(p)
    assert GroundTruth.load(p) == t
