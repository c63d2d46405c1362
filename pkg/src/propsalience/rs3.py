"""Model, parser, serializer and validator for rs3 rhetorical structure trees.

The rs3 convention encoded here: a ``<segment>`` is an elementary discourse
unit carrying verbatim text; a ``<group>`` is an internal constituent of type
``span`` or ``multinuc``. A child whose ``relname`` is the reserved string
``span`` is the nucleus heading its (span-group) parent; a child attached to a
multinuc group by a multinuc-kind relation is a coordinate nucleus; any other
relname marks the child as a satellite of its parent. The single node without
a parent is the root constituent.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import InventoryError, Rs3ParseError, StructuralError

SPAN = "span"
ROOT_LABEL = "ROOT"

SEGMENT = "segment"
GROUP_SPAN = "group-span"
GROUP_MULTINUC = "group-multinuc"

REL_RST = "rst"
REL_MULTINUC = "multinuc"


@dataclass(frozen=True)
class RelationInventory:
    """Declared relation names mapped to their kind (rst or multinuc)."""

    entries: dict[str, str] = field(default_factory=dict)

    def kind_of(self, relname):
        return self.entries.get(relname)

    def is_multinuc(self, relname):
        return self.entries.get(relname) == REL_MULTINUC

    def is_rst(self, relname):
        return self.entries.get(relname) == REL_RST

    def __contains__(self, relname):
        return relname in self.entries


@dataclass(frozen=True)
class RstNode:
    id: int
    kind: str  # SEGMENT, GROUP_SPAN or GROUP_MULTINUC
    parent: int | None = None
    relname: str | None = None
    text: str = ""  # verbatim, segments only

    @property
    def is_segment(self):
        return self.kind == SEGMENT

    @property
    def is_group(self):
        return self.kind in (GROUP_SPAN, GROUP_MULTINUC)


@dataclass(frozen=True)
class Diagnostic:
    """One violated invariant, naming the offending node id(s)."""

    code: str
    node_ids: tuple[int, ...]
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class RstTree:
    doc_id: str
    inventory: RelationInventory
    nodes: dict[int, RstNode]

    def node(self, node_id):
        try:
            return self.nodes[node_id]
        except KeyError:
            raise StructuralError(f"{self.doc_id}: no node with id {node_id}") from None

    @property
    def segments(self):
        """Segment nodes in ascending id order (= document order)."""
        return [n for _, n in sorted(self.nodes.items()) if n.is_segment]

    @property
    def groups(self):
        return [n for _, n in sorted(self.nodes.items()) if n.is_group]

    @property
    def root(self):
        roots = [n for n in self.nodes.values() if n.parent is None]
        if len(roots) != 1:
            raise StructuralError(f"{self.doc_id}: tree has {len(roots)} roots")
        return roots[0]

    def children_of(self, node_id):
        return [n for _, n in sorted(self.nodes.items()) if n.parent == node_id]


def _byte_offset(data: bytes, line, column):
    # expat positions are 1-based lines / 0-based columns
    lines = data.split(b"\n")
    if line - 1 >= len(lines):
        return len(data)
    prefix = sum(len(l) + 1 for l in lines[: line - 1])
    return prefix + column


def parse_rs3(data: bytes, doc_id: str = "") -> RstTree:
    """Parse rs3 bytes into a validated RstTree.

    Raises Rs3ParseError on malformed XML (with byte offset), StructuralError
    on duplicate ids, dangling parents or other tree violations, and
    InventoryError when an edge uses an undeclared relation name.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        xml_root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        raise Rs3ParseError(
            f"malformed rs3 XML: {exc.msg if hasattr(exc, 'msg') else exc}",
            line=line,
            column=column,
            byte_offset=_byte_offset(data, line, column),
        ) from exc

    entries: dict[str, str] = {}
    for rel in xml_root.iter("rel"):
        name = rel.get("name", "").strip()
        kind = rel.get("type", "").strip()
        if not name:
            raise InventoryError(f"{doc_id}: relation declaration without a name")
        if kind not in (REL_RST, REL_MULTINUC):
            raise InventoryError(f"{doc_id}: relation {name!r} has unknown kind {kind!r}")
        if name in entries and entries[name] != kind:
            # rs3 technically allows double declaration; the toolkit models one
            # kind per name and rejects the ambiguity explicitly.
            raise InventoryError(f"{doc_id}: relation {name!r} declared as both rst and multinuc")
        entries[name] = kind
    inventory = RelationInventory(entries)

    nodes: dict[int, RstNode] = {}

    def add_node(element, kind, text=""):
        raw_id = element.get("id")
        if raw_id is None:
            raise StructuralError(f"{doc_id}: <{element.tag}> without id attribute")
        node_id = _parse_id(raw_id, doc_id)
        if node_id in nodes:
            raise StructuralError(f"{doc_id}: duplicate node id {node_id}")
        parent = element.get("parent")
        parent_id = _parse_id(parent, doc_id) if parent not in (None, "") else None
        relname = element.get("relname") or None
        if relname is not None and relname != SPAN and relname not in inventory:
            raise InventoryError(f"{doc_id}: node {node_id} uses undeclared relation {relname!r}")
        nodes[node_id] = RstNode(id=node_id, kind=kind, parent=parent_id, relname=relname, text=text)

    body = xml_root.find("body")
    if body is None:
        raise StructuralError(f"{doc_id}: rs3 document has no <body>")
    for element in body:
        if element.tag == "segment":
            add_node(element, SEGMENT, text=element.text or "")
        elif element.tag == "group":
            group_type = element.get("type", "")
            if group_type == "span":
                add_node(element, GROUP_SPAN)
            elif group_type == "multinuc":
                add_node(element, GROUP_MULTINUC)
            else:
                raise StructuralError(
                    f"{doc_id}: group {element.get('id')} has unknown type {group_type!r}"
                )

    if not nodes:
        raise StructuralError(f"{doc_id}: rs3 body contains no segments or groups")

    tree = RstTree(doc_id=doc_id, inventory=inventory, nodes=nodes)
    problems = validate(tree)
    if problems:
        raise StructuralError(f"{doc_id}: " + "; ".join(str(p) for p in problems))
    return tree


def _parse_id(raw, doc_id):
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise StructuralError(f"{doc_id}: non-integer node id {raw!r}") from None
    if value <= 0:
        raise StructuralError(f"{doc_id}: node id must be positive, got {value}")
    return value


def validate(tree: RstTree) -> list[Diagnostic]:
    """Check all tree invariants; returns an empty list iff the tree is valid."""
    problems = []
    nodes = tree.nodes

    roots = sorted(n.id for n in nodes.values() if n.parent is None)
    if not roots:
        problems.append(Diagnostic("no-root", (), "no node without a parent"))
    elif len(roots) > 1:
        problems.append(
            Diagnostic("multiple-roots", tuple(roots), f"nodes {roots} all lack a parent")
        )

    for node in nodes.values():
        if node.parent is not None and node.parent not in nodes:
            problems.append(
                Diagnostic(
                    "dangling-parent",
                    (node.id,),
                    f"node {node.id} points to missing parent {node.parent}",
                )
            )

    # cycle detection over the parent graph
    state: dict[int, int] = {}  # 0 in progress, 1 done
    for start in nodes:
        if start in state:
            continue
        chain = []
        current = start
        while current is not None and current in nodes and state.get(current) != 1:
            if state.get(current) == 0:
                cycle = chain[chain.index(current):]
                problems.append(
                    Diagnostic(
                        "cycle",
                        tuple(sorted(cycle)),
                        f"parent chain cycles through nodes {sorted(cycle)}",
                    )
                )
                break
            state[current] = 0
            chain.append(current)
            current = nodes[current].parent
        for visited in chain:
            state[visited] = 1

    children: dict[int, list[RstNode]] = {}
    for node in nodes.values():
        if node.parent is not None:
            children.setdefault(node.parent, []).append(node)

    for node in nodes.values():
        if node.relname == SPAN:
            parent = nodes.get(node.parent) if node.parent is not None else None
            if parent is None or parent.kind != GROUP_SPAN:
                problems.append(
                    Diagnostic(
                        "bad-span-parent",
                        (node.id,),
                        f"node {node.id} has relname 'span' but no group-span parent",
                    )
                )
        elif node.relname is not None and node.relname not in tree.inventory:
            problems.append(
                Diagnostic(
                    "unknown-relation",
                    (node.id,),
                    f"node {node.id} uses undeclared relation {node.relname!r}",
                )
            )

    for node in nodes.values():
        if not node.is_group:
            continue
        kids = children.get(node.id, [])
        if not kids:
            problems.append(Diagnostic("empty-group", (node.id,), f"group {node.id} has no children"))
            continue
        if node.kind == GROUP_MULTINUC:
            coord = [k for k in kids if k.relname is not None and tree.inventory.is_multinuc(k.relname)]
            if len(coord) < 2:
                problems.append(
                    Diagnostic(
                        "multinuc-children",
                        (node.id,),
                        f"multinuc group {node.id} has {len(coord)} coordinate children (need >= 2)",
                    )
                )
            elif len({k.relname for k in coord}) > 1:
                problems.append(
                    Diagnostic(
                        "multinuc-children",
                        (node.id,),
                        f"multinuc group {node.id} mixes relations "
                        f"{sorted({k.relname for k in coord})}",
                    )
                )
    return problems


def serialize_rs3(tree: RstTree) -> bytes:
    """Serialize a tree back to rs3 XML (UTF-8)."""
    rst = ET.Element("rst")
    header = ET.SubElement(rst, "header")
    relations = ET.SubElement(header, "relations")
    for name in sorted(tree.inventory.entries):
        ET.SubElement(relations, "rel", name=name, type=tree.inventory.entries[name])
    body = ET.SubElement(rst, "body")
    for node in tree.segments:
        attrs = {"id": str(node.id)}
        if node.parent is not None:
            attrs["parent"] = str(node.parent)
        if node.relname is not None:
            attrs["relname"] = node.relname
        segment = ET.SubElement(body, "segment", attrs)
        segment.text = node.text
    for node in tree.groups:
        attrs = {
            "id": str(node.id),
            "type": "span" if node.kind == GROUP_SPAN else "multinuc",
        }
        if node.parent is not None:
            attrs["parent"] = str(node.parent)
        if node.relname is not None:
            attrs["relname"] = node.relname
        ET.SubElement(body, "group", attrs)
    document = ET.ElementTree(rst)
    ET.indent(document, space="  ")
    return ET.tostring(rst, encoding="utf-8", xml_declaration=True)
