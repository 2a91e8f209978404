"""The DSC line format, trace files, and OFF export.

A complex file is line oriented and self describing::

    DSC 1
    dim K
    oriented 0|1
    vertices N
    edges M
    u v                 (M lines)
    cells i C           (for each i in 2..K)
    v0 v1 .. | b0 b1 .. (C lines; boundary indexes edges for i=2,
                         otherwise the previous cell list)
    chain <name> <dim>
    i0 i1 ..            (cell indices at that dimension; vertex ids for 0)

A trace file embeds the complex it refers to, then the removal sequence.
Serialization is canonical: sorted edges, cells sorted by vertex tuple,
chains sorted by name, so loading and saving again is byte identical.
"""

from __future__ import annotations

import numpy as np

from .complexes import CellChain, DiscreteSpace, edge_key
from .errors import InputError
from .separation import ContractionTrace, Removal, replay

FORMAT_VERSION = 1


class ParseError(Exception):
    """Malformed file; carries the 1-based line number."""

    def __init__(self, message, line):
        super().__init__("line %d: %s" % (line, message))
        self.line = line


# -- saving ------------------------------------------------------------------


def save_complex(space: DiscreteSpace, chains: dict | None = None) -> str:
    lines = ["DSC %d" % FORMAT_VERSION,
             "dim %d" % space.top_dim,
             "oriented %d" % (1 if space.oriented else 0),
             "vertices %d" % space.n_vertices]
    edges = sorted(space.edges)
    lines.append("edges %d" % len(edges))
    lines.extend("%d %d" % e for e in edges)
    index: dict = {(1, e): i for i, e in enumerate(edges)}
    for d in range(2, space.top_dim + 1):
        cells = space.cells_of_dim(d)
        lines.append("cells %d %d" % (d, len(cells)))
        for i, cid in enumerate(cells):
            index[cid] = i
        for cid in cells:
            bnd = sorted(index[b] for b in space.cells[cid].boundary)
            lines.append("%s | %s" % (" ".join(map(str, cid[1])),
                                      " ".join(map(str, bnd))))
    for name in sorted(chains or {}):
        chain = chains[name]
        degenerate = chain.dim == 0 or (chain.dim == 1 and not chain.cells)
        lines.append("chain %s %d" % (name, 0 if degenerate else chain.dim))
        if degenerate:
            lines.append(" ".join(str(v) for v in sorted(chain.vertex_set())))
        elif chain.dim == 1:
            lines.append(" ".join(
                str(index[(1, e)]) for e in sorted(chain.edge_set())))
        else:
            lines.append(" ".join(
                str(index[cid]) for cid in sorted(chain.cells)))
    return "\n".join(lines) + "\n"


def save_trace(space: DiscreteSpace, s: CellChain,
               trace: ContractionTrace, chains: dict | None = None) -> str:
    chains = dict(chains or {})
    chains.setdefault("surface", s)
    body = save_complex(space, chains)
    k = space.top_dim
    top_index = {cid: i for i, cid in enumerate(space.cells_of_dim(k))}
    face_index = {cid: i for i, cid in enumerate(space.cells_of_dim(k - 1))}
    lines = ["DSCTRACE %d" % FORMAT_VERSION, body.rstrip("\n"),
             "trace %s %d" % (trace.direction, len(trace.removals)),
             "seed %d" % top_index[trace.seed]]
    for r in trace.removals:
        lines.append("step %d | %s | %s" % (
            top_index[r.cell],
            " ".join(str(face_index[f]) for f in sorted(r.replaced)),
            " ".join(str(face_index[f]) for f in sorted(r.replacement))))
    return "\n".join(lines) + "\n"


def save_deformation(space: DiscreteSpace, trace, chains: dict | None = None) -> str:
    """Serialize a curve deformation trace with its complex embedded."""
    body = save_complex(space, chains)
    cell_index = {cid: i for i, cid in enumerate(space.cells_of_dim(2))}
    lines = ["DSCPATHS %d" % FORMAT_VERSION, body.rstrip("\n"),
             "paths %s %d" % (trace.kind, len(trace.steps))]
    for step in trace.steps:
        lines.append("step %d %s" % (1 if step.closed else 0,
                                     " ".join(map(str, step.verts))))
    for move in trace.moves:
        lines.append("move %s" % " ".join(
            str(cell_index[c]) for c in sorted(move)))
    return "\n".join(lines) + "\n"


def load_deformation(text: str):
    """Parse a DSCPATHS document: (space, chains, DeformationTrace)."""
    from .deformation import DeformationTrace
    reader = _Reader(text)
    head = _expect(reader, "DSCPATHS")
    if head != [str(FORMAT_VERSION)]:
        raise ParseError("unsupported paths version %r" % (head,),
                         reader.line_no)
    space, chains = _load_complex_body(reader)
    kind, count = _expect(reader, "paths")
    count = int(count)
    two_cells = space.cells_of_dim(2)
    steps = []
    for _ in range(count):
        parts = _expect(reader, "step")
        closed = bool(int(parts[0]))
        verts = [int(v) for v in parts[1:]]
        if len(verts) == 1:
            steps.append(CellChain(1, (), ordered=True, closed=False,
                                   verts=(verts[0],)))
        else:
            steps.append(CellChain.path(space, verts, closed=closed))
    moves = []
    for _ in range(max(count - 1, 0)):
        parts = _expect(reader, "move")
        moves.append(frozenset(two_cells[int(i)] for i in parts))
    return space, chains, DeformationTrace(tuple(steps), tuple(moves), kind)


# -- loading -----------------------------------------------------------------


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self, what: str) -> str:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        if self.pos >= len(self.lines):
            raise ParseError("unexpected end of file, expected %s" % what,
                             len(self.lines))
        self.pos += 1
        return self.lines[self.pos - 1].strip()

    def peek(self) -> str | None:
        i = self.pos
        while i < len(self.lines) and not self.lines[i].strip():
            i += 1
        return self.lines[i].strip() if i < len(self.lines) else None

    @property
    def line_no(self) -> int:
        return self.pos


def _ints(text: str, reader: _Reader) -> list:
    try:
        return [int(t) for t in text.split()]
    except ValueError:
        raise ParseError("expected integers, got %r" % text, reader.line_no)


def load_complex(text: str):
    """Parse a DSC document into a space plus its named chains."""
    reader = _Reader(text)
    return _load_complex_body(reader)


def _expect(reader: _Reader, keyword: str) -> list:
    line = reader.next(keyword)
    parts = line.split()
    if not parts or parts[0] != keyword:
        raise ParseError("expected %r, got %r" % (keyword, line),
                         reader.line_no)
    return parts[1:]


def _load_complex_body(reader: _Reader):
    head = _expect(reader, "DSC")
    if head != [str(FORMAT_VERSION)]:
        raise ParseError("unsupported format version %r" % (head,),
                         reader.line_no)
    dim = int(_expect(reader, "dim")[0])
    oriented = bool(int(_expect(reader, "oriented")[0]))
    n = int(_expect(reader, "vertices")[0])
    m = int(_expect(reader, "edges")[0])
    edges = []
    for _ in range(m):
        vals = _ints(reader.next("an edge"), reader)
        if len(vals) != 2:
            raise ParseError("an edge needs two vertex ids", reader.line_no)
        edges.append(tuple(vals))

    cells_by_dim: dict = {}
    boundaries: dict = {}
    prev_ids = [(1, edge_key(*e)) for e in edges]
    for d in range(2, dim + 1):
        parts = _expect(reader, "cells")
        if int(parts[0]) != d:
            raise ParseError("expected cells of dimension %d" % d,
                             reader.line_no)
        count = int(parts[1])
        ids = []
        rows = []
        for _ in range(count):
            line = reader.next("a cell row")
            if "|" not in line:
                raise ParseError("cell rows are 'verts | boundary'",
                                 reader.line_no)
            left, right = line.split("|", 1)
            verts = tuple(sorted(_ints(left, reader)))
            bidx = _ints(right, reader)
            for i in bidx:
                if not (0 <= i < len(prev_ids)):
                    raise ParseError("boundary index %d out of range" % i,
                                     reader.line_no)
            rows.append((verts, tuple(prev_ids[i] for i in bidx)))
            ids.append((d, verts))
        cells_by_dim[d] = [verts for verts, _ in rows]
        for (verts, bnd) in rows:
            boundaries[(d, verts)] = bnd
        prev_ids = ids

    raw_chains = []
    while True:
        nxt = reader.peek()
        if nxt is None or not nxt.startswith("chain "):
            break
        parts = _expect(reader, "chain")
        if len(parts) != 2:
            raise ParseError("chain header is 'chain <name> <dim>'",
                             reader.line_no)
        name, cdim = parts[0], int(parts[1])
        idx = _ints(reader.next("chain indices"), reader)
        raw_chains.append((name, cdim, idx))

    try:
        space = DiscreteSpace(n, edges, cells_by_dim, boundaries,
                              oriented=oriented)
    except InputError:
        raise

    chains = {}
    by_dim = {d: space.cells_of_dim(d) for d in range(2, dim + 1)}
    edge_list = [edge_key(*e) for e in edges]
    for name, cdim, idx in raw_chains:
        if cdim == 0:
            if len(idx) != 1:
                raise InputError("chain %r: a 0-chain is one vertex" % name)
            chains[name] = CellChain(1, (), ordered=True, closed=False,
                                     verts=(idx[0],))
        elif cdim == 1:
            es = [edge_list[i] for i in idx]
            chains[name] = _edges_to_chain(space, es, name)
        else:
            cells = [by_dim[cdim][i] for i in idx]
            closed = _faces_even(space, cells)
            chains[name] = CellChain.of_cells(space, cdim, cells,
                                              closed=closed)
    return space, chains


def _faces_even(space: DiscreteSpace, cells) -> bool:
    count: dict = {}
    for cid in cells:
        for f in space.cells[cid].boundary:
            count[f] = count.get(f, 0) + 1
    return all(v == 2 for v in count.values())


def _edges_to_chain(space: DiscreteSpace, edges, name: str) -> CellChain:
    from .deformation import edges_to_curve
    chain = edges_to_curve(space, edges)
    if chain is None:
        raise InputError("chain %r is not a simple path or cycle" % name)
    return chain


def load_trace(text: str):
    """Parse a DSCTRACE document: (space, chains, trace)."""
    reader = _Reader(text)
    head = _expect(reader, "DSCTRACE")
    if head != [str(FORMAT_VERSION)]:
        raise ParseError("unsupported trace version %r" % (head,),
                         reader.line_no)
    space, chains = _load_complex_body(reader)
    if "surface" not in chains:
        raise ParseError("trace file lacks the 'surface' chain",
                         reader.line_no)
    parts = _expect(reader, "trace")
    direction, count = parts[0], int(parts[1])
    k = space.top_dim
    top = space.cells_of_dim(k)
    faces = space.cells_of_dim(k - 1)
    seed = top[int(_expect(reader, "seed")[0])]
    removals = []
    surface = frozenset((1, e) for e in chains["surface"].edge_set()) \
        if chains["surface"].dim == 1 else frozenset(chains["surface"].cells)
    surfaces = [surface]
    for _ in range(count):
        parts = _expect(reader, "step")
        row = " ".join(parts)
        bits = [b.strip() for b in row.split("|")]
        if len(bits) != 3:
            raise ParseError("step rows are 'step i | replaced | "
                             "replacement'", reader.line_no)
        cell = top[int(bits[0])]
        replaced = frozenset(faces[int(i)] for i in bits[1].split())
        replacement = frozenset(faces[int(i)] for i in bits[2].split())
        removals.append(Removal(cell, replaced, replacement))
        surface = (surface - replaced) | replacement
        surfaces.append(surface)
    trace = ContractionTrace(seed, tuple(removals), tuple(surfaces),
                             direction)
    replay(trace)
    return space, chains, trace


# -- OFF export ---------------------------------------------------------------


def spectral_layout(space: DiscreteSpace) -> np.ndarray:
    """Deterministic 3D coordinates from the graph Laplacian.

    The three eigenvectors after the constant one spread the vertices;
    each eigenvector's sign is fixed by making its first nonzero entry
    positive, so layouts are reproducible.
    """
    n = space.n_vertices
    lap = np.zeros((n, n))
    for u, v in sorted(space.edges):
        lap[u, u] += 1
        lap[v, v] += 1
        lap[u, v] -= 1
        lap[v, u] -= 1
    _, vecs = np.linalg.eigh(lap)
    coords = np.zeros((n, 3))
    for axis in range(min(3, n - 1)):
        col = vecs[:, axis + 1]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size and col[nz[0]] < 0:
            col = -col
        coords[:, axis] = col
    return np.round(coords, 6)


def off_snapshot(space: DiscreteSpace, cells, coords: np.ndarray) -> str:
    """An OFF document showing the given cells as faces.

    Cells of dimension 1 are written as degenerate two-vertex faces so a
    curve snapshot stays viewable.
    """
    faces = []
    for cid in sorted(cells):
        if cid[0] >= 2:
            faces.append(space.cells[cid].loop
                         if space.cells[cid].loop else cid[1])
        elif cid[0] == 1:
            faces.append(cid[1])
    lines = ["OFF", "%d %d 0" % (space.n_vertices, len(faces))]
    for v in range(space.n_vertices):
        lines.append("%.6f %.6f %.6f" % tuple(coords[v]))
    for f in faces:
        lines.append("%d %s" % (len(f), " ".join(map(str, f))))
    return "\n".join(lines) + "\n"
