"""Readers for the on-disk instance formats.

* graphs: edge-list text (``u v`` per line, ``vertex <label>`` for isolated
  vertices, ``#`` comments) or JSON ``{"vertices": [...], "edges": [[u, v], ...]}``
* activity / probability vectors: a scalar, or a JSON map ``{label: value}``
* partition classes: one class per line, whitespace-separated labels
* matrices: CSV of integers
* formulas: DIMACS CNF
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

from .applications.ksat import CnfFormula, _validate_clause
from .applications.latin import IntegerMatrix
from .applications.transversal import PartitionedGraph
from .errors import InvalidInputError
from .graph import DependencyGraph


class ParseError(InvalidInputError):
    def __init__(self, source: str, line: int | None, message: str):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


def parse_edge_list(text: str, source: str = "<graph>") -> DependencyGraph:
    """Vertices are ordered by first appearance in the file."""
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    seen: dict[frozenset, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2:
                raise ParseError(source, lineno, "expected 'vertex <label>'")
            vertices.append(parts[1])
            continue
        if len(parts) != 2:
            raise ParseError(source, lineno, f"expected two labels, got {len(parts)} fields")
        u, v = parts
        vertices += parts
        if u == v:
            raise ParseError(source, lineno, f"self-loop at {u!r}")
        key = frozenset((u, v))
        if key in seen:
            raise ParseError(source, lineno, f"duplicate edge {u} {v} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((u, v))
    return DependencyGraph.from_edges(edges, vertices)


def parse_graph_json(data: Any, source: str = "<graph>") -> DependencyGraph:
    if not isinstance(data, dict) or "edges" not in data:
        raise ParseError(source, None, "JSON graph needs an 'edges' list")
    try:
        edges = [tuple(e) for e in data["edges"]]
    except TypeError:
        raise ParseError(source, None, "edges must be pairs") from None
    for i, e in enumerate(edges):
        if len(e) != 2:
            raise ParseError(source, None, f"edge #{i} is not a pair")
    try:
        return DependencyGraph.from_edges(edges, data.get("vertices", ()))
    except InvalidInputError as exc:
        raise ParseError(source, None, str(exc)) from None


def read_graph(path: str | Path) -> DependencyGraph:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(path), exc.lineno, exc.msg) from None
        return parse_graph_json(data, str(path))
    return parse_edge_list(text, str(path))


def parse_values(text: str, g: DependencyGraph) -> float | dict:
    """A scalar, a JSON map keyed by label, or a path to a file holding either.

    A file may also be a previously emitted report; its ``"mu"`` map is used.
    """
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    if not text.startswith("{"):
        path = Path(text)
        if not path.exists():
            raise InvalidInputError(f"{text!r} is neither a number, a JSON map nor a file")
        text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("<values>", exc.lineno, exc.msg) from None
    if isinstance(data, (int, float)):
        return float(data)
    if isinstance(data, dict) and isinstance(data.get("mu"), dict):
        data = data["mu"]
    if not isinstance(data, dict):
        raise InvalidInputError("values must be a scalar or a JSON object")
    by_str = {str(lab): lab for lab in g.labels}
    out = {}
    for key, val in data.items():
        if key not in by_str:
            raise InvalidInputError(f"value given for unknown vertex {key!r}")
        out[by_str[key]] = float(val)
    return out


def read_classes(path: str | Path, g: DependencyGraph) -> PartitionedGraph:
    classes = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        labels = line.split()
        for lab in labels:
            if lab not in g._index:
                raise ParseError(str(path), lineno, f"unknown vertex {lab!r}")
        classes.append(labels)
    return PartitionedGraph.from_labels(g, classes)


def read_matrix(path: str | Path) -> IntegerMatrix:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            try:
                rows.append([int(c) for c in cells])
            except ValueError as exc:
                raise ParseError(str(path), lineno, f"non-integer entry ({exc})") from None
    try:
        return IntegerMatrix.from_rows(rows)
    except InvalidInputError as exc:
        raise ParseError(str(path), None, str(exc)) from None


def parse_dimacs(text: str, source: str = "<cnf>") -> CnfFormula:
    """DIMACS CNF; clauses may span lines and end with ``0``.

    Every clause must have the same number of distinct variables; duplicate
    literals and tautologies are rejected with the line the clause ends on.
    """
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError(source, lineno, "second problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(source, lineno, "expected 'p cnf <vars> <clauses>'")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(source, lineno, "non-integer counts in problem line") from None
            continue
        if header is None:
            raise ParseError(source, lineno, "clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(source, lineno, f"bad literal {tok!r}") from None
            if lit != 0:
                current.append(lit)
                continue
            clause = tuple(current)
            current = []
            try:
                _validate_clause(clause, header[0], f"clause {len(clauses) + 1}")
            except InvalidInputError as exc:
                raise ParseError(source, lineno, str(exc)) from None
            if width is None:
                width = len(clause)
            elif len(clause) != width:
                raise ParseError(
                    source, lineno, f"clause has {len(clause)} literals, expected k = {width}"
                )
            clauses.append(clause)
    if current:
        raise ParseError(source, None, "last clause is not terminated by 0")
    if header is None:
        raise ParseError(source, None, "missing 'p cnf' problem line")
    if len(clauses) != header[1]:
        raise ParseError(
            source, None, f"header declares {header[1]} clauses, found {len(clauses)}"
        )
    return CnfFormula(header[0], tuple(clauses))


def read_dimacs(path: str | Path) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(), str(path))


def write_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"
