"""Labelled infinite binary trees T and U, their pruning, and L(n) / M(n).

Both trees share one shape. The m-th s-node has the (m-1)-st s-node as its
left child and a complete binary tree with m levels as its right child; the
first s-node has two leaves. Labels 1..n go in preorder starting at the
leftmost leaf. s-nodes hold nothing.

Model T: regular nodes hold 1 label; a leaf has two cells holding 1 and 2
labels. Model U(alpha, beta): regular nodes hold beta labels, leaves hold
alpha + beta.

Only whole s-node blocks up to the one holding label n are materialised.
Node lists keep s-node m just before its right subtree, so every
label-bearing node appears in true preorder.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

__all__ = [
    "TreeNode",
    "TreePrefix",
    "build_T",
    "build_U",
    "count_cells_L",
    "count_leaves_M",
    "left_right_counts",
    "L_sequence",
    "M_sequence",
    "label_position_T",
    "prune_T",
    "prune_U",
    "deletion_counts",
    "structure",
    "same_structure",
    "to_dot",
    "diff_string_D",
    "diff_string_F",
    "concat_D",
    "concat_F",
    "verify_diff_identity",
]

S_NODE, REGULAR, LEAF = "s", "regular", "leaf"


@dataclass
class TreeNode:
    kind: str
    height: int                      # 0 for leaves
    caps: tuple[int, ...]            # capacity of each cell
    cells: list[list[int]]
    parent: Optional[int] = None
    children: list[int] = field(default_factory=list)
    is_left: bool = False

    @property
    def labels(self) -> list[int]:
        return [x for c in self.cells for x in c]

    @property
    def capacity(self) -> int:
        return sum(self.caps)

    @property
    def nonempty(self) -> bool:
        return any(self.cells)


@dataclass
class TreePrefix:
    model: str                       # "T" or "U"
    alpha: int
    beta: int
    nodes: list[TreeNode]
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return sum(len(c) for node in self.nodes for c in node.cells)

    def leaves(self) -> Iterator[TreeNode]:
        return (x for x in self.nodes if x.kind == LEAF)

    def labelled(self) -> Iterator[TreeNode]:
        return (x for x in self.nodes if x.kind != S_NODE)

    def copy(self) -> "TreePrefix":
        nodes = [TreeNode(x.kind, x.height, x.caps, [list(c) for c in x.cells],
                          x.parent, list(x.children), x.is_left) for x in self.nodes]
        return TreePrefix(self.model, self.alpha, self.beta, nodes, list(self.notes))

    def relabel(self) -> None:
        """Renumber labels 1..n in preorder."""
        k = 0
        for node in self.nodes:
            for cell in node.cells:
                for i in range(len(cell)):
                    k += 1
                    cell[i] = k


def _caps(model: str, kind: str, alpha: int, beta: int) -> tuple[int, ...]:
    if kind == S_NODE:
        return ()
    if model == "T":
        return (1, 2) if kind == LEAF else (1,)
    return (alpha + beta,) if kind == LEAF else (beta,)


def _skeleton(model: str, alpha: int, beta: int, blocks: int) -> list[TreeNode]:
    nodes: list[TreeNode] = []

    def add(kind, height, parent, is_left):
        idx = len(nodes)
        caps = _caps(model, kind, alpha, beta)
        nodes.append(TreeNode(kind, height, caps, [[] for _ in caps], parent, [], is_left))
        if parent is not None:
            nodes[parent].children.append(idx)
        return idx

    def complete(height, parent, is_left):
        idx = add(LEAF if height == 0 else REGULAR, height, parent, is_left)
        if height > 0:
            complete(height - 1, idx, True)
            complete(height - 1, idx, False)
        return idx

    prev = add(S_NODE, 1, None, True)
    complete(0, prev, True)
    complete(0, prev, False)
    for m in range(2, blocks + 1):
        s = add(S_NODE, m, None, True)
        nodes[prev].parent = s
        nodes[s].children.append(prev)
        complete(m - 1, s, False)
        prev = s
    return nodes


def _block_capacity(model: str, alpha: int, beta: int, m: int) -> int:
    leaf = 3 if model == "T" else alpha + beta
    reg = 1 if model == "T" else beta
    if m == 1:
        return 2 * leaf
    return (2 ** (m - 1)) * leaf + (2 ** (m - 1) - 1) * reg


def _fill(nodes: list[TreeNode], n: int) -> None:
    k = 0
    for node in nodes:
        for cap, cell in zip(node.caps, node.cells):
            while len(cell) < cap and k < n:
                k += 1
                cell.append(k)
        if k >= n:
            return


def _build(model: str, alpha: int, beta: int, n: int) -> TreePrefix:
    if n < 0:
        raise ValueError("n must be nonnegative")
    blocks, total = 1, _block_capacity(model, alpha, beta, 1)
    while total < n:
        blocks += 1
        total += _block_capacity(model, alpha, beta, blocks)
    nodes = _skeleton(model, alpha, beta, blocks)
    _fill(nodes, n)
    return TreePrefix(model, alpha, beta, nodes)


def build_T(n: int) -> TreePrefix:
    """T(n): the tree T with labels 1..n."""
    return _build("T", 0, 0, n)


def _check_u(alpha: int, beta: int) -> None:
    if beta < 0 or alpha + beta <= 0 or alpha % 2:
        raise ValueError(f"U needs beta >= 0, alpha + beta > 0 and alpha even; got ({alpha},{beta})")


def build_U(alpha: int, beta: int, n: int) -> TreePrefix:
    """U(n) for the pair (alpha, beta)."""
    _check_u(alpha, beta)
    return _build("U", alpha, beta, n)


def count_cells_L(tree: TreePrefix) -> int:
    """Number of nonempty leaf cells."""
    return sum(1 for leaf in tree.leaves() for c in leaf.cells if c)


def count_leaves_M(tree: TreePrefix) -> int:
    """Number of nonempty leaves."""
    return sum(1 for leaf in tree.leaves() if leaf.nonempty)


def left_right_counts(tree: TreePrefix) -> tuple[int, int]:
    """(left, right) leaf counts: nonempty cells for T, nonempty leaves for U."""
    def weight(leaf):
        if tree.model == "T":
            return sum(1 for c in leaf.cells if c)
        return 1 if leaf.nonempty else 0

    left = sum(weight(x) for x in tree.leaves() if x.is_left)
    right = sum(weight(x) for x in tree.leaves() if not x.is_left)
    return left, right


def _count_sequence(tree: TreePrefix, per_cell: bool) -> list[int]:
    out = [0]
    for node in tree.nodes:
        for i, cell in enumerate(node.cells):
            for j, _ in enumerate(cell):
                step = node.kind == LEAF and j == 0 and (per_cell or i == 0)
                out.append(out[-1] + int(step))
    return out


def L_sequence(N: int) -> list[int]:
    """[L(0), L(1), ..., L(N)] from one labelling of T(N)."""
    return _count_sequence(build_T(N), per_cell=True)


def M_sequence(alpha: int, beta: int, N: int) -> list[int]:
    """[M(0), M(1), ..., M(N)] from one labelling of U(N)."""
    return _count_sequence(build_U(alpha, beta, N), per_cell=False)


def label_position_T(tree: TreePrefix, label: int) -> tuple[str, int]:
    """("regular", 1) or ("leaf", k) where k in 1..3 is the label's slot."""
    for node in tree.labelled():
        flat = node.labels
        if label in flat:
            return node.kind, flat.index(label) + 1
    raise KeyError(label)


def _lower(tree: TreePrefix) -> TreePrefix:
    """Drop the leaves and move every node one level down."""
    keep = [i for i, x in enumerate(tree.nodes) if x.kind != LEAF]
    remap = {old: new for new, old in enumerate(keep)}
    nodes = []
    for old in keep:
        x = tree.nodes[old]
        if x.kind == S_NODE and x.height > 1:
            kind = S_NODE
        elif x.height == 1:
            kind = LEAF
        else:
            kind = REGULAR
        caps = _caps(tree.model, kind, tree.alpha, tree.beta)
        nodes.append(TreeNode(kind, x.height - 1, caps, [list(c) for c in x.cells],
                              remap.get(x.parent), [remap[c] for c in x.children if c in remap],
                              x.is_left))
    for node in nodes:
        if node.kind == LEAF and len(node.cells) != len(node.caps):
            merged = [x for c in node.cells for x in c]
            node.cells = [merged] + [[] for _ in node.caps[1:]]
    return TreePrefix(tree.model, tree.alpha, tree.beta, nodes, list(tree.notes))


def _check_caps(tree: TreePrefix) -> None:
    for i, node in enumerate(tree.nodes):
        for cap, cell in zip(node.caps, node.cells):
            if len(cell) > cap:
                raise AssertionError(f"node {i} ({node.kind}) holds {len(cell)} > {cap} labels")


def prune_T(tree: TreePrefix) -> TreePrefix:
    """Prune T(n) into a tree with n - L(n-2) labels shaped like T(n - L(n-2)).

    Steps: label the first s-node with 0; delete one label from every
    nonempty leaf cell; give each penultimate node a second cell; lift
    leftover leaf labels into that cell and drop the leaves; correct by one
    label depending on where n sat. Labels are not renumbered.
    """
    if tree.model != "T":
        raise ValueError("prune_T needs a T tree")
    n = tree.n
    if n < 6:
        raise ValueError("pruning T(n) needs n >= 6")
    kind, slot = label_position_T(tree, n)
    t = tree.copy()
    s1 = t.nodes[0]
    s1.kind, s1.caps, s1.cells = REGULAR, (1,), [[0]]
    for leaf in t.leaves():
        for cell in leaf.cells:
            if cell:
                cell.pop(0)
    for node in t.nodes:
        if node.height == 1:
            own = [x for c in node.cells for x in c]
            node.caps, node.cells = (1, 2), [own, []]
    for leaf in t.leaves():
        if leaf.cells[0]:
            raise AssertionError("first leaf cell not emptied by deletion")
        t.nodes[leaf.parent].cells[1].extend(leaf.cells[1])
        leaf.cells[1] = []
    out = _lower(t)
    if kind == REGULAR:
        _remove_last(out, 1)
    elif slot == 2:
        _add_next(out, n + 1)
    _check_caps(out)
    return out


def _remove_last(tree: TreePrefix, count: int) -> None:
    for node in reversed(tree.nodes):
        for cell in reversed(node.cells):
            while cell and count:
                cell.pop()
                count -= 1
        if not count:
            return
    if count:
        raise AssertionError("not enough labels to remove")


def _add_next(tree: TreePrefix, label: int) -> None:
    slots = [(i, j) for i, node in enumerate(tree.nodes) for j in range(len(node.caps))]
    last = max((k for k, (i, j) in enumerate(slots) if tree.nodes[i].cells[j]), default=-1)
    for k in range(max(last, 0), len(slots)):
        i, j = slots[k]
        node = tree.nodes[i]
        if len(node.cells[j]) < node.caps[j]:
            if last >= 0 and i != slots[last][0]:
                tree.notes.append(f"correction label spilled into node {i}")
            node.cells[j].append(label)
            return
    raise AssertionError("no room for the correction label")


def deletion_counts(tree: TreePrefix) -> list[tuple[int, int, int]]:
    """For each nonempty leaf of U(n): (node index, labels deleted by
    definition, min(floor(d/2), p)) where d counts labels on or after it."""
    n = tree.n
    p = tree.alpha // 2 + tree.beta
    out = []
    for idx, node in enumerate(tree.nodes):
        if node.kind == LEAF and node.nonempty:
            first = min(node.labels)
            by_def = sum(1 for j in range(1, p + 1) if first <= n - 2 * j + 1)
            d = n - first + 1
            out.append((idx, by_def, min(d // 2, p)))
    return out


def prune_U(tree: TreePrefix) -> TreePrefix:
    """Prune U(n) into a tree shaped like U(n - sum_j M(n-2j+1)).

    Steps: give the first s-node beta labels; delete from each leaf one
    label per tree U(n-1), U(n-3), .., U(n-2p+1) in which it is nonempty,
    taking any shortfall from the parent; lift leftover leaf labels into
    the parent and drop the leaves; delete the last beta labels.
    """
    if tree.model != "U":
        raise ValueError("prune_U needs a U tree")
    alpha, beta = tree.alpha, tree.beta
    n = tree.n
    if n <= 4 * alpha + 5 * beta:
        raise ValueError(f"pruning U(n) needs n > 4*alpha + 5*beta = {4 * alpha + 5 * beta}")
    t = tree.copy()
    s1 = t.nodes[0]
    s1.kind, s1.caps, s1.cells = REGULAR, (beta,), [[-i for i in range(beta)][::-1]]
    for idx, count, _ in deletion_counts(tree):
        leaf = t.nodes[idx]
        held = leaf.cells[0]
        take = min(count, len(held))
        del held[len(held) - take:]
        deficit = count - take
        if deficit:
            if deficit > -alpha // 2:
                raise AssertionError(f"leaf {idx} has deficit {deficit} > -alpha/2")
            parent = t.nodes[leaf.parent].cells[0]
            if deficit > len(parent):
                raise AssertionError(f"parent of leaf {idx} cannot absorb a deficit of {deficit}")
            del parent[len(parent) - deficit:]
    for leaf in t.leaves():
        t.nodes[leaf.parent].cells[0].extend(leaf.cells[0])
        leaf.cells[0] = []
    for node in t.nodes:
        if node.height == 1:
            node.caps = (alpha + beta,)
    out = _lower(t)
    _remove_last(out, beta)
    _check_caps(out)
    return out


def structure(tree: TreePrefix) -> tuple:
    """Per-node (kind, height, cell sizes) for label-bearing nodes, trailing
    empty nodes trimmed. Label values are ignored."""
    sig = [(x.kind, x.height, tuple(len(c) for c in x.cells)) for x in tree.labelled()]
    while sig and not any(sig[-1][2]):
        sig.pop()
    return tuple(sig)


def same_structure(a: TreePrefix, b: TreePrefix) -> bool:
    return structure(a) == structure(b)


def to_dot(tree: TreePrefix, name: str = "tree") -> str:
    """Graphviz source; leaves show their cells, s-nodes are drawn empty."""
    lines = [f"digraph {name} {{", "  node [shape=box, fontname=monospace];"]
    for i, node in enumerate(tree.nodes):
        if node.kind == S_NODE:
            lines.append(f'  n{i} [label="s", shape=circle];')
            continue
        text = " | ".join(",".join(map(str, c)) or "-" for c in node.cells)
        shape = "record" if node.kind == LEAF and len(node.cells) > 1 else "box"
        lines.append(f'  n{i} [label="{text}", shape={shape}];')
    for i, node in enumerate(tree.nodes):
        for c in node.children:
            lines.append(f"  n{i} -> n{c};")
    lines.append("}")
    return "\n".join(lines)


# First-difference strings

def diff_string_D(k: int) -> str:
    """D_0 = 1, D_{k+1} = 0 D_k D_k."""
    d = "1"
    for _ in range(k):
        d = "0" + d + d
    return d


def diff_string_F(k: int) -> str:
    """F_1 = 110110, F_2 = 0 F_1, F_{k+1} = 0 F_k F_k for k >= 2."""
    if k < 1:
        raise ValueError("F_k is defined for k >= 1")
    f = "110110"
    if k >= 2:
        f = "0" + f
    for _ in range(k - 2):
        f = "0" + f + f
    return f


def concat_D(N: int) -> str:
    """First N bits of D_0 D_0 D_1 D_2 ..."""
    parts, size, k = ["1"], 1, 0
    while size < N:
        d = diff_string_D(k)
        parts.append(d)
        size += len(d)
        k += 1
    return "".join(parts)[:N]


def concat_F(N: int) -> str:
    """First N bits of F_1 F_2 F_3 ..."""
    parts, size, k = [], 0, 1
    while size < N:
        f = diff_string_F(k)
        parts.append(f)
        size += len(f)
        k += 1
    return "".join(parts)[:N]


def verify_diff_identity(N: int, conolly: Optional[list[int]] = None) -> bool:
    """The two concatenations agree on N bits and equal C(n) - C(n-1), C(0) = 0.

    ``conolly`` defaults to the engine's evaluation of <0;1:1;2>[1,2].
    """
    if conolly is None:
        from .engine import evaluate
        from .notation import parse

        conolly = evaluate(parse("<0;1:1;2>[1,2]"), N).values
    diffs = "".join(str(b - a) for a, b in zip([0] + conolly[: N - 1], conolly[:N]))
    return concat_D(N) == concat_F(N) == diffs
