import math

import numpy as np
import pytest
from hypothesis import given, settings

from cdtree import BinaryDataset, Leaf, discriminative_score, gen_noise, info_gain_tree
from cdtree.baseline import GainBranch, entropy, information_gain
from cdtree.dataset import ContextView

from .conftest import datasets


def H(p):
    return 0.0 if p in (0, 1) else -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def test_discriminative_scores(fig2a):
    v = fig2a.view()
    assert discriminative_score(v, 0) == 1.0
    assert discriminative_score(v.restrict(0, 0), 1) == 1.0
    d = BinaryDataset.from_records(["a"], "y", [((1,), 1, 5), ((1,), 0, 5), ((0,), 1, 5), ((0,), 0, 5)])
    assert discriminative_score(d.view(), 0) == 0.0


def test_discriminative_no_support():
    d = BinaryDataset.from_records(["a"], "y", [((0,), 1, 3), ((0,), 0, 1)])
    assert discriminative_score(d.view(), 0) == 0.0


def test_information_gain_by_hand(fig2a):
    # 60 of 80 records have Y=1; B=1 holds 10 of 30, B=0 holds 50 of 50
    v = fig2a.view()
    assert entropy(v) == pytest.approx(H(0.75))
    assert information_gain(v, 1) == pytest.approx(H(0.75) - 30 / 80 * H(1 / 3))
    assert information_gain(v, 0) == pytest.approx(H(0.75) - 40 / 80 * H(0.5))


def test_fig2a_gain_tree_splits_on_b_first(fig2a):
    tree = info_gain_tree(fig2a)
    assert tree.root.attribute == 1
    assert tree.root.edge0 == Leaf(1, 50)
    assert tree.root.edge1.attribute == 0


def test_fig2a_discriminative_tree(fig2a):
    tree = info_gain_tree(fig2a, criterion="discriminative")
    assert tree.root == GainBranch(0, 1.0, GainBranch(1, 1.0, Leaf(1, 20), Leaf(0, 20)), Leaf(1, 40))


def test_pure_dataset_is_leaf():
    d = BinaryDataset.from_records(["a", "b"], "y", [((0, 1), 1, 3), ((1, 0), 1, 2)])
    assert info_gain_tree(d).root == Leaf(1, 5)


def test_noise_grows_a_tree():
    tree = info_gain_tree(gen_noise(10, 2000, seed=0), min_gain=0.0)
    assert isinstance(tree.root, GainBranch)


def test_min_gain_stops():
    tree = info_gain_tree(gen_noise(10, 2000, seed=0), min_gain=0.5)
    assert tree.is_empty


def test_errors(fig2a):
    with pytest.raises(ValueError):
        info_gain_tree(fig2a, h_max=0)
    with pytest.raises(ValueError):
        info_gain_tree(fig2a, min_gain=-1)


def walk(node, ctx=()):
    if isinstance(node, GainBranch):
        yield ctx, node
        for v in (0, 1):
            yield from walk(node.child(v), ctx + ((node.attribute, v),))


@given(datasets(max_m=6, max_rows=80))
@settings(max_examples=60, deadline=None)
def test_gain_tree_invariants(d):
    for min_gain in (0.0, 0.05):
        tree = info_gain_tree(d, h_max=3, min_gain=min_gain)
        assert tree.height() <= 3
        for ctx, b in walk(tree.root):
            attrs = [a for a, _ in ctx]
            assert b.attribute not in attrs
            assert b.gain > min_gain
            assert b.gain == pytest.approx(information_gain(ContextView(d, ctx), b.attribute))


@given(datasets(max_m=4, max_rows=40))
@settings(max_examples=60, deadline=None)
def test_entropy_and_gain_properties(d):
    v = d.view()
    zeros, ones = v.outcome_counts()
    assert (entropy(v) == 0.0) == (zeros == 0 or ones == 0)
    for a in range(d.m):
        assert information_gain(v, a) >= -1e-12
