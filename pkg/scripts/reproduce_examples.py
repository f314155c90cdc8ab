#!/usr/bin/env python3
"""Build causal and baseline trees on the bundled fixtures and print them."""
import argparse

from cdtree import build_cdt, info_gain_tree, load_fixture, render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", default="text", choices=("text", "json", "dot"))
    args = ap.parse_args()
    for name in ("fig2a", "fig3a", "titanic"):
        d = load_fixture(name)
        print(f"== {name}: {d.n} records, {d.m} attributes")
        print(render(build_cdt(d), args.format))
        for crit in ("gain", "discriminative"):
            print(render(info_gain_tree(d, criterion=crit), args.format))


if __name__ == "__main__":
    main()
