"""Text, JSON and Graphviz DOT serialization of causal and baseline trees."""
from __future__ import annotations

import json
from typing import Union

from .baseline import GainBranch, PlainTree
from .cdt import Branch, CausalDecisionTree, Leaf, iter_branches
from .stats import PamhResult

FORMATS = ("text", "json", "dot")

Tree = Union[CausalDecisionTree, PlainTree]


def render(tree: Tree, fmt: str = "text") -> str:
    if fmt == "text":
        return to_text(tree)
    if fmt == "json":
        return to_json(tree)
    if fmt == "dot":
        return to_dot(tree)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _is_cdt(tree: Tree) -> bool:
    return isinstance(tree, CausalDecisionTree)


# --- text -------------------------------------------------------------------

def _describe(tree: Tree, node) -> str:
    names = tree.attribute_names
    if isinstance(node, Branch):
        t = node.test
        strat = ", ".join(names[i] for i in node.stratifying) or "none"
        return (f"{names[node.attribute]}  [PAMH={t.statistic:.3f} >= {t.critical_value:.3f}; "
                f"{node.strata} strata on {strat}]")
    label = "gain" if tree.criterion == "gain" else "score"
    return f"{names[node.attribute]}  [{label}={node.gain:.4f}]"


def to_text(tree: Tree) -> str:
    if _is_cdt(tree):
        head = f"causal decision tree for {tree.outcome_name} (alpha={tree.alpha:g}, h_max={tree.h_max})"
    else:
        head = (f"{tree.criterion} tree for {tree.outcome_name} "
                f"(h_max={tree.h_max}, min_gain={tree.min_gain:g})")
    lines = [head]
    if isinstance(tree.root, Leaf):
        lines.append(f"(no branches) {tree.outcome_name}={tree.root.label}  (support {tree.root.support})")
        return "\n".join(lines) + "\n"

    def walk(node, indent):
        pad = "  " * indent
        lines.append(pad + _describe(tree, node))
        name = tree.attribute_names[node.attribute]
        for v in (1, 0):
            child = node.child(v)
            if isinstance(child, Leaf):
                lines.append(f"{pad}  {name}={v} -> {tree.outcome_name}={child.label}  "
                             f"(support {child.support})")
            else:
                lines.append(f"{pad}  {name}={v}:")
                walk(child, indent + 2)

    walk(tree.root, 0)
    return "\n".join(lines) + "\n"


# --- json -------------------------------------------------------------------

def _node_doc(tree: Tree, node) -> dict:
    if isinstance(node, Leaf):
        return {"kind": "leaf", "label": node.label, "support": node.support}
    doc = {"kind": "branch", "attribute": tree.attribute_names[node.attribute]}
    if isinstance(node, Branch):
        t = node.test
        doc.update(statistic=t.statistic, alpha=t.alpha, critical_value=t.critical_value,
                   stratifying=[tree.attribute_names[i] for i in node.stratifying],
                   strata=node.strata, numerator_terms=list(t.numerator_terms),
                   variance_terms=list(t.variance_terms))
    else:
        doc["gain"] = node.gain
    doc["children"] = {"0": _node_doc(tree, node.edge0), "1": _node_doc(tree, node.edge1)}
    return doc


def to_json(tree: Tree) -> str:
    doc = {"tree": "cdt" if _is_cdt(tree) else "baseline",
           "outcome": tree.outcome_name,
           "attributes": list(tree.attribute_names),
           "h_max": tree.h_max}
    if _is_cdt(tree):
        doc["alpha"] = tree.alpha
    else:
        doc["min_gain"] = tree.min_gain
        doc["criterion"] = tree.criterion
    doc["root"] = _node_doc(tree, tree.root)
    return json.dumps(doc, indent=2) + "\n"


def parse_tree(text: str) -> Tree:
    """Inverse of :func:`to_json`."""
    doc = json.loads(text)
    names = tuple(doc["attributes"])
    index = {a: i for i, a in enumerate(names)}

    def node(d):
        if d["kind"] == "leaf":
            return Leaf(int(d["label"]), int(d["support"]))
        kids = [node(d["children"][k]) for k in ("0", "1")]
        attr = index[d["attribute"]]
        if "gain" in d:
            return GainBranch(attr, float(d["gain"]), kids[0], kids[1])
        test = PamhResult(d["statistic"], tuple(d["numerator_terms"]), tuple(d["variance_terms"]),
                          d["alpha"], d["critical_value"], True)
        return Branch(attr, test, tuple(index[s] for s in d["stratifying"]), int(d["strata"]),
                      kids[0], kids[1])

    root = node(doc["root"])
    if doc.get("tree", "cdt") == "cdt":
        return CausalDecisionTree(root, doc["alpha"], int(doc["h_max"]), names, doc["outcome"])
    return PlainTree(root, int(doc["h_max"]), names, doc["outcome"],
                     float(doc.get("min_gain", 0.0)), doc.get("criterion", "gain"))


# --- dot --------------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(tree: Tree) -> str:
    lines = ["digraph tree {", "  node [fontname=Helvetica];"]
    counter = 0

    def walk(node) -> str:
        nonlocal counter
        nid = f"n{counter}"
        counter += 1
        if isinstance(node, Leaf):
            lines.append(f"  {nid} [shape=ellipse, label={_quote(str(node.label))}];")
            return nid
        lines.append(f"  {nid} [shape=box, label={_quote(tree.attribute_names[node.attribute])}];")
        for v, tag in ((1, "y"), (0, "n")):
            child = walk(node.child(v))
            lines.append(f"  {nid} -> {child} [label={_quote(tag)}];")
        return nid

    walk(tree.root)
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- audit ------------------------------------------------------------------

AUDIT_HEADER = ("context", "attribute", "statistic", "critical_value", "significant",
                "stratifying", "strata")


def audit_report(tree: CausalDecisionTree) -> str:
    """Tab-separated row per branch with the test that admitted it."""
    names = tree.attribute_names
    rows = ["\t".join(AUDIT_HEADER)]
    for ctx, b in iter_branches(tree.root):
        context = ",".join(f"{names[a]}={v}" for a, v in ctx) or "-"
        rows.append("\t".join([
            context, names[b.attribute], repr(b.test.statistic), repr(b.test.critical_value),
            str(b.test.significant).lower(),
            ",".join(names[i] for i in b.stratifying) or "-", str(b.strata)]))
    return "\n".join(rows) + "\n"
