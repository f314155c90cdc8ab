"""Causal decision trees: decision trees whose branches pass a
Mantel-Haenszel partial-association test in their context."""
from importlib.resources import files

from .baseline import PlainTree, discriminative_score, info_gain_tree
from .cdt import (Branch, CausalDecisionTree, Leaf, build_cdt, tree_construct,
                  tree_prune)
from .dataset import (BinarizationRule, BinaryDataset, ContextView, DataError,
                      load_csv, load_rules, majority_outcome, parse_rules, restrict)
from .render import parse_tree, render
from .stats import (chi2_critical, correlated_attributes, naive_ace, odds_ratio,
                    pamh, stratified_ace, stratify)
from .synth import eval_recall, gen_noise, gen_random_bn, gen_single_edge

__all__ = [
    "BinarizationRule", "BinaryDataset", "Branch", "CausalDecisionTree", "ContextView",
    "DataError", "Leaf", "PlainTree", "build_cdt", "chi2_critical",
    "correlated_attributes", "discriminative_score", "eval_recall", "fixture",
    "gen_noise", "gen_random_bn", "gen_single_edge", "info_gain_tree", "load_csv",
    "load_fixture", "load_rules", "majority_outcome", "naive_ace", "odds_ratio", "pamh",
    "parse_rules", "parse_tree", "render", "restrict", "stratified_ace", "stratify",
    "tree_construct", "tree_prune",
]

_FIXTURES = {"fig2a": "Y", "fig3a": "Y", "titanic": "survived"}


def fixture(name: str):
    """Path of a bundled data file, e.g. ``fixture("titanic.csv")``."""
    return files("cdtree") / "data" / name


def load_fixture(name: str) -> BinaryDataset:
    """Load one of the bundled weighted datasets: fig2a, fig3a or titanic."""
    return load_csv(fixture(f"{name}.csv"), _FIXTURES[name], weight_column="count")
