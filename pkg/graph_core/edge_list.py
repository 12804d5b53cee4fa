import json
from typing import List

from graph_core.graph import Edge, Graph
from util.errors import GraphFormatError
from util.types import ErrorCode


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Graph:
    """ One edge 'u v' per line, '#' starts a comment; |V| = max index + 1 """
    edges: List[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(ErrorCode.BAD_TOKEN, f"line {lineno}: expected 2 vertex indices, got {len(tokens)} tokens")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(ErrorCode.BAD_TOKEN, f"line {lineno}: non-integer token in {line!r}")
        if u < 0 or v < 0:
            raise GraphFormatError(ErrorCode.BAD_VERTEX, f"line {lineno}: negative vertex index")
        edges.append((u, v))
    if not edges:
        raise GraphFormatError(ErrorCode.EMPTY_GRAPH, "edge list has no edges")
    n = max(max(u, v) for u, v in edges) + 1
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def graph_to_json(g: Graph) -> dict:
    payload = {"n": g.n_vertices, "edges": [[u, v] for u, v in g.edges]}
    if g.labels is not None:
        payload["labels"] = list(g.labels)
    return payload


def graph_from_json(payload) -> Graph:
    try:
        if isinstance(payload, str):
            payload = json.loads(payload)
        n = int(payload["n"])
        edges = [(int(e[0]), int(e[1])) for e in payload["edges"]]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise GraphFormatError(ErrorCode.BAD_TOKEN, f"malformed graph JSON: {exc}")
    return Graph(n, edges, payload.get("labels"))
