"""Optional checks against the public Adult census file (not bundled)."""
import os
from pathlib import Path

import pytest

from cdtree import build_cdt, fixture, load_csv, parse_rules

ADULT = os.environ.get("CDTREE_ADULT_CSV")
pytestmark = pytest.mark.skipif(not ADULT, reason="CDTREE_ADULT_CSV not set")


def test_age_marginal():
    rules = parse_rules("age<30 = age < 30\n>50K = income in {>50K, >50K.}\n")
    d = load_csv(Path(ADULT), ">50K", rules=rules)
    assert d.n == 48842
    assert int(d.weights[d.X[:, 0] == 1].sum()) == 14515


@pytest.mark.slow
def test_full_rules_build():
    rules = parse_rules(fixture("adult_rules.txt").read_text())
    d = load_csv(Path(ADULT), ">50K", rules=rules)
    assert d.m == 13
    tree = build_cdt(d)
    assert not tree.is_empty
