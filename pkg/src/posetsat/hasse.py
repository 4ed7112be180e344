"""Cover relations of a family under inclusion and DOT export of the Hasse
diagram."""

from __future__ import annotations

from .core import SetFamily


def cover_edges(family: SetFamily) -> list[tuple[int, int]]:
    """Index pairs (i, j) into the canonical member list with member i
    covered by member j: a proper subset with no member strictly between."""
    bits = family.bit_list
    k = len(bits)
    edges = []
    for i in range(k):
        a = bits[i]
        for j in range(k):
            b = bits[j]
            if a == b or a & b != a:
                continue
            between = False
            for c in bits:
                if c != a and c != b and a & c == a and c & b == c:
                    between = True
                    break
            if not between:
                edges.append((i, j))
    return edges


def emit_hasse(family: SetFamily) -> str:
    """DOT digraph of the family's Hasse diagram: one node per member labeled
    with its elements, one edge per cover relation, deterministic order."""
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for idx, member in enumerate(family.members):
        lines.append(f'  s{idx} [label="{member}"];')
    for i, j in cover_edges(family):
        lines.append(f"  s{i} -> s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
