"""DOT export of a discourse tree with units shaded by salience score.

Propositions (merged units) collapse to one node each; satellite attachments
keep their arrowheads, nucleus and multinuc edges are drawn plain. Fills run
over a six-step white-yellow-orange-red ramp keyed to scores 0..5; score 0
stays white.
"""

from __future__ import annotations

from .propositions import PropositionSequence
from .rs3 import SPAN, RstTree

SCORE_RAMP = ("#FFFFFF", "#FFF7B2", "#FFE066", "#FFB347", "#FF7F50", "#E03C31")


def ramp_color(score: int, summary_count: int) -> str:
    """Map a 0..summary_count score onto the six-step ramp."""
    if score <= 0:
        return SCORE_RAMP[0]
    idx = max(1, round(5 * score / summary_count))
    return SCORE_RAMP[min(idx, 5)]


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _truncate(text: str, limit: int = 40) -> str:
    text = " ".join(text.split())
    if len(text) <= limit:
        return text
    return text[: limit - 1].rstrip() + "…"


def export_shaded_tree(tree: RstTree, seq: PropositionSequence, scores, summary_count: int) -> str:
    """Render the tree as DOT text with proposition fills keyed to salience."""
    prop_of_segment = {}
    for prop in seq:
        for sid in prop.segment_ids:
            prop_of_segment[sid] = prop.index

    def dot_id(node_id):
        if node_id in prop_of_segment:
            return f"p{prop_of_segment[node_id]}"
        return f"g{node_id}"

    lines = ["digraph rst {", '  rankdir=BT;', '  node [shape=box, style=filled];']
    for prop in seq:
        score = scores.score[prop.index]
        label = _escape(f"[{prop.index}] {_truncate(prop.text)}\\nscore {score}")
        lines.append(
            f'  p{prop.index} [label="{label}", fillcolor="{ramp_color(score, summary_count)}"];'
        )
    for group in tree.groups:
        shape = "ellipse" if group.kind == "group-multinuc" else "point"
        lines.append(f'  g{group.id} [label="", shape={shape}, fillcolor="#FFFFFF"];')

    seen_edges = set()
    for node in list(tree.segments) + list(tree.groups):
        if node.parent is None:
            continue
        child, parent = dot_id(node.id), dot_id(node.parent)
        if child == parent:
            continue  # merged same-unit parts share one proposition node
        relname = node.relname
        satellite = relname is not None and relname != SPAN and not tree.inventory.is_multinuc(relname)
        if satellite:
            edge = f'  {child} -> {parent} [label="{_escape(relname)}", arrowhead=normal];'
        else:
            label = "" if relname in (None, SPAN) else _escape(relname)
            edge = f'  {child} -> {parent} [label="{label}", arrowhead=none];'
        if edge not in seen_edges:
            seen_edges.add(edge)
            lines.append(edge)
    lines.append("}")
    return "\n".join(lines) + "\n"
