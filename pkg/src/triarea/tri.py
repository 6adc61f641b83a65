"""Combinatorial triangulations of a square.

A triangulation is an oriented simplicial disk whose boundary consists of
exactly four vertices (the corners p, q, r, s in counterclockwise order) and
four edges.  Faces are stored as counterclockwise vertex triples; every
interior edge appears in two faces with opposite directions, every boundary
edge in one face, directed with the boundary cycle.

Enumeration works upward from the two-triangle square by vertex splits
(inverse edge contractions), deduplicating with a canonical code that is
invariant under the dihedral symmetry group of the square (order 8,
reflections reverse orientation).
"""

import json
from dataclasses import dataclass, field
from importlib import resources

CORNER_LABELS = "pqrs"


@dataclass(frozen=True)
class Triangulation:
    vertex_count: int
    corners: tuple
    faces: tuple
    name: str = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "corners", tuple(self.corners))
        object.__setattr__(
            self, "faces", tuple(_rotate_min(tuple(f)) for f in self.faces)
        )

    # -- derived structure --------------------------------------------------

    @property
    def interior_vertices(self):
        cs = set(self.corners)
        return [v for v in range(self.vertex_count) if v not in cs]

    @property
    def boundary_edges(self):
        c = self.corners
        return [frozenset((c[i], c[(i + 1) % 4])) for i in range(4)]

    def edges(self):
        """All undirected edges (frozensets)."""
        if "edges" not in self._cache:
            es = set()
            for a, b, c in self.faces:
                es.update((frozenset((a, b)), frozenset((b, c)), frozenset((c, a))))
            self._cache["edges"] = es
        return self._cache["edges"]

    def interior_edges(self):
        be = set(self.boundary_edges)
        return [e for e in self.edges() if e not in be]

    def directed_successor(self):
        """rot[v][a] = b when (v, a, b) is a face: the ccw walk around v."""
        if "rot" not in self._cache:
            rot = {v: {} for v in range(self.vertex_count)}
            for f in self.faces:
                for i in range(3):
                    v, a, b = f[i], f[(i + 1) % 3], f[(i + 2) % 3]
                    if a in rot[v]:
                        raise ValueError(f"directed edge ({v},{a}) used twice")
                    rot[v][a] = b
            self._cache["rot"] = rot
        return self._cache["rot"]

    def neighbors(self, v):
        rot = self.directed_successor()
        return set(rot[v]) | {a for a in rot if v in rot[a]}

    def link(self, v):
        """Neighbors of v in ccw order: a cycle for interior v, for a corner
        the path from its boundary successor to its boundary predecessor."""
        rot = self.directed_successor()[v]
        if v in self.corners:
            i = self.corners.index(v)
            start = self.corners[(i + 1) % 4]
        else:
            start = next(iter(rot))
        seq = [start]
        while True:
            nxt = rot.get(seq[-1])
            if nxt is None or nxt == start:
                break
            seq.append(nxt)
        return seq

    def face_set(self):
        if "fset" not in self._cache:
            self._cache["fset"] = {frozenset(f) for f in self.faces}
        return self._cache["fset"]

    def faces_of_edge(self, a, b):
        return [f for f in self.faces if a in f and b in f]

    def is_interior_edge(self, a, b):
        return frozenset((a, b)) in self.edges() and frozenset(
            (a, b)
        ) not in set(self.boundary_edges)

    def renamed(self, name):
        return Triangulation(self.vertex_count, self.corners, self.faces, name)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return (
            f"<Triangulation{tag}: {self.vertex_count} vertices, "
            f"{len(self.faces)} faces>"
        )


def _rotate_min(face):
    i = face.index(min(face))
    return face[i:] + face[:i]


# ---------------------------------------------------------------------------
# validation


def validate(t):
    """Check the disk/orientation/count invariants; returns a list of
    violation strings (empty means valid)."""
    problems = []
    n = t.vertex_count
    if len(t.corners) != 4 or len(set(t.corners)) != 4:
        return ["bad-boundary: need 4 distinct corners"]
    if any(not 0 <= v < n for v in t.corners):
        return ["bad-boundary: corner id out of range"]
    seen = set()
    for f in t.faces:
        if len(set(f)) != 3 or any(not 0 <= v < n for v in f):
            problems.append(f"non-simplicial: bad face {f}")
            return problems
        if frozenset(f) in seen:
            problems.append(f"non-simplicial: duplicate face {tuple(sorted(f))}")
        seen.add(frozenset(f))

    directed = {}
    for f in t.faces:
        for i in range(3):
            e = (f[i], f[(i + 1) % 3])
            if e in directed:
                problems.append(f"orientation: directed edge {e} used twice")
            directed[e] = f

    und = {}
    for a, b in directed:
        key = frozenset((a, b))
        und[key] = und.get(key, 0) + 1
    boundary = set(t.boundary_edges)
    for e, cnt in und.items():
        if e in boundary and cnt != 1:
            problems.append(f"bad-boundary: boundary edge {tuple(sorted(e))} in {cnt} faces")
        if e not in boundary and cnt != 2:
            problems.append(
                f"non-simplicial: interior edge {tuple(sorted(e))} in {cnt} face(s)"
            )
    for e in boundary:
        if e not in und:
            problems.append(f"bad-boundary: missing boundary edge {tuple(sorted(e))}")
    c = t.corners
    for i in range(4):
        if (c[i], c[(i + 1) % 4]) not in directed:
            if frozenset((c[i], c[(i + 1) % 4])) in und:
                problems.append(
                    f"orientation: boundary edge {c[i]}->{c[(i+1)%4]} runs against the faces"
                )
    if problems:
        return problems

    # vertex links: interior vertices have a full cycle, corners a path
    rot = {v: {} for v in range(n)}
    for f in t.faces:
        for i in range(3):
            rot[f[i]][f[(i + 1) % 3]] = f[(i + 2) % 3]
    for v in range(n):
        nbrs = set(rot[v]) | {a for a in rot if v in rot[a]}
        if not nbrs:
            problems.append(f"disk-topology: isolated vertex {v}")
            continue
        if v in t.corners:
            i = t.corners.index(v)
            start = t.corners[(i + 1) % 4]
            if start not in rot[v] and len(nbrs) > 1:
                problems.append(f"disk-topology: corner {v} link does not start at boundary")
                continue
            seq = [start]
            while seq[-1] in rot[v]:
                nxt = rot[v][seq[-1]]
                if nxt in seq:
                    problems.append(f"disk-topology: corner {v} link loops")
                    break
            else:
                nxt = None
            while nxt is not None:
                seq.append(nxt)
                nxt = rot[v].get(nxt)
                if nxt in seq:
                    problems.append(f"disk-topology: corner {v} link loops")
                    nxt = None
            if set(seq) != nbrs:
                problems.append(f"disk-topology: corner {v} link is not a single path")
        else:
            start = next(iter(rot[v]))
            seq = [start]
            while True:
                nxt = rot[v].get(seq[-1])
                if nxt is None:
                    problems.append(f"disk-topology: interior vertex {v} link is open")
                    break
                if nxt == start:
                    break
                if nxt in seq:
                    problems.append(f"disk-topology: interior vertex {v} link loops")
                    break
                seq.append(nxt)
            if set(seq) != nbrs:
                problems.append(f"disk-topology: interior vertex {v} link misses neighbors")

    k = n - 4
    if len(t.faces) != 2 * k + 2:
        problems.append(
            f"count: {len(t.faces)} faces for {k} interior vertices (want {2*k+2})"
        )
    nedges = len(und)
    if n - nedges + len(t.faces) != 1:
        problems.append("disk-topology: Euler characteristic is not 1")

    # connectivity
    if not problems:
        seen = {0}
        stack = [0]
        adj = {v: set(rot[v]) | {a for a in rot if v in rot[a]} for v in range(n)}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n:
            problems.append("disk-topology: not connected")
    return problems


def is_valid(t):
    return not validate(t)


# ---------------------------------------------------------------------------
# canonical codes and isomorphism


def _dihedral_variants(t):
    """The 8 corner relabelings; reflections reverse face orientation."""
    c = t.corners
    out = []
    for i in range(4):
        out.append((tuple(c[(i + j) % 4] for j in range(4)), False))
    rc = (c[0], c[3], c[2], c[1])
    for i in range(4):
        out.append((tuple(rc[(i + j) % 4] for j in range(4)), True))
    return out


def _traversal_code(nverts, faces, corners):
    """Deterministic BFS relabeling from corner p; returns a hashable code."""
    rot = {}
    for f in faces:
        for i in range(3):
            rot.setdefault(f[i], {})[f[(i + 1) % 3]] = f[(i + 2) % 3]
    cset = set(corners)
    bsucc = {corners[i]: corners[(i + 1) % 4] for i in range(4)}

    label = {corners[0]: 0}
    order = [corners[0]]
    pos = 0
    while pos < len(order):
        v = order[pos]
        pos += 1
        rv = rot.get(v, {})
        if v in cset:
            walk = [bsucc[v]]
        else:
            anchor = min((label[w] for w in rv if w in label), default=None)
            if anchor is None:
                # neighbors all unlabeled cannot happen for BFS-discovered v
                anchor_vertex = next(iter(rv))
            else:
                anchor_vertex = next(w for w in rv if label.get(w) == anchor)
            walk = [anchor_vertex]
        while True:
            nxt = rv.get(walk[-1])
            if nxt is None or nxt == walk[0]:
                break
            walk.append(nxt)
        for w in walk:
            if w not in label:
                label[w] = len(order)
                order.append(w)
    relabeled = sorted(
        _rotate_min((label[a], label[b], label[c])) for a, b, c in faces
    )
    return (nverts, tuple(label[x] for x in corners), tuple(relabeled))


def canonical_code(t):
    """Byte string equal for two triangulations iff they are isomorphic
    respecting the square's dihedral corner symmetry (reflections included)."""
    if "code" in t._cache:
        return t._cache["code"]
    best = None
    for corners, reflect in _dihedral_variants(t):
        faces = [(a, c, b) for (a, b, c) in t.faces] if reflect else list(t.faces)
        code = _traversal_code(t.vertex_count, faces, corners)
        if best is None or code < best:
            best = code
    out = repr(best).encode()
    t._cache["code"] = out
    return out


def automorphism_kinds(t):
    """Which dihedral ops fix t: returns a set of (rotation_steps, reflected)."""
    base = canonical_code(t)
    kinds = set()
    for idx, (corners, reflect) in enumerate(_dihedral_variants(t)):
        faces = [(a, c, b) for (a, b, c) in t.faces] if reflect else list(t.faces)
        code = _traversal_code(t.vertex_count, faces, corners)
        ident = _traversal_code(t.vertex_count, list(t.faces), t.corners)
        if code == ident:
            kinds.add((idx % 4, reflect))
    return kinds


# ---------------------------------------------------------------------------
# moves: vertex split, edge contraction, face subdivision


def vertex_splits(t):
    """All triangulations obtained by splitting one vertex (inverse edge
    contraction); the new vertex is interior and gets the highest id."""
    out = []
    y = t.vertex_count
    for v in range(t.vertex_count):
        link = t.link(v)
        m = len(link)
        if v in t.corners:
            pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
        else:
            pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
        for i, j in pairs:
            moved = []
            idx = i
            while idx % m != j % m:
                moved.append((v, link[idx % m], link[(idx + 1) % m]))
                idx += 1
            if not moved:
                continue
            movedset = {frozenset(f) for f in moved}
            faces = [f for f in t.faces if frozenset(f) not in movedset]
            faces += [(y, a, b) for (_, a, b) in moved]
            faces += [(v, link[i], y), (v, y, link[j % m])]
            out.append(
                Triangulation(t.vertex_count + 1, t.corners, faces)
            )
    return out


def contract_edge(t, edge):
    """Contract the interior edge {x, y} per the merge rule.

    Returns the contracted triangulation, or None exactly when the endpoints
    are part of a subdivision (the merge would not be simplicial).  Boundary
    edges and corner-corner edges raise ValueError.
    """
    x, y = tuple(edge)
    if frozenset((x, y)) not in t.edges():
        raise ValueError(f"{{{x},{y}}} is not an edge")
    if frozenset((x, y)) in set(t.boundary_edges):
        raise ValueError("cannot contract a boundary edge")
    if x in t.corners and y in t.corners:
        raise ValueError("cannot contract an edge joining two corners")
    if y in t.corners:
        x, y = y, x  # keep the corner
    elif x not in t.corners and y < x:
        x, y = y, x  # keep the smaller id
    both = t.faces_of_edge(x, y)
    apexes = {v for f in both for v in f} - {x, y}
    common = (t.neighbors(x) & t.neighbors(y)) - apexes
    if common:
        return None  # {x, y} is part of a subdivision
    dropped = {frozenset(f) for f in both}
    faces = []
    for f in t.faces:
        if frozenset(f) in dropped:
            continue
        faces.append(tuple(x if v == y else v for v in f))
    remap = {v: (v if v < y else v - 1) for v in range(t.vertex_count) if v != y}
    faces = [tuple(remap[v] for v in f) for f in faces]
    corners = tuple(remap[v] for v in t.corners)
    return Triangulation(t.vertex_count - 1, corners, faces)


def has_subdivision(t):
    """A vertex triple that is pairwise joined by edges but spans no face,
    or None."""
    edges = t.edges()
    n = t.vertex_count
    fset = t.face_set()
    for a in range(n):
        for b in range(a + 1, n):
            if frozenset((a, b)) not in edges:
                continue
            for c in range(b + 1, n):
                if (
                    frozenset((a, c)) in edges
                    and frozenset((b, c)) in edges
                    and frozenset((a, b, c)) not in fset
                ):
                    return (a, b, c)
    return None


def subdivide_triangle(t, tri_index, parts, edge=None):
    """Subdivide face `tri_index` into `parts` triangles.

    parts=3: a new interior vertex is joined to the three face corners.
    parts=2: a new vertex lands on an interior edge of the face (the lowest
    pair by default), splitting this face and its neighbor across that edge.
    """
    if not 0 <= tri_index < len(t.faces):
        raise ValueError(f"no face {tri_index}")
    if parts not in (2, 3):
        raise ValueError("parts must be 2 or 3")
    a, b, c = t.faces[tri_index]
    w = t.vertex_count
    if parts == 3:
        faces = [f for i, f in enumerate(t.faces) if i != tri_index]
        faces += [(a, b, w), (b, c, w), (c, a, w)]
        return Triangulation(w + 1, t.corners, faces)

    if edge is None:
        candidates = [
            e
            for e in (frozenset((a, b)), frozenset((b, c)), frozenset((c, a)))
            if e not in set(t.boundary_edges)
        ]
        if not candidates:
            raise ValueError("face has no interior edge to split")
        edge = min(candidates, key=sorted)
    e = frozenset(edge)
    if not e <= {a, b, c} or e in set(t.boundary_edges):
        raise ValueError(f"{tuple(sorted(e))} is not an interior edge of the face")
    u, v = sorted(e)
    # orient: this face carries one direction of (u, v), the neighbor the other
    f1 = t.faces[tri_index]
    f2 = next(f for f in t.faces_of_edge(u, v) if frozenset(f) != frozenset(f1))

    def split(face):
        i = face.index(u) if (face[(face.index(u) + 1) % 3] == v) else face.index(v)
        d0, d1 = face[i], face[(i + 1) % 3]
        apex = face[(i + 2) % 3]
        return [(d0, w, apex), (w, d1, apex)]

    dropped = {frozenset(f1), frozenset(f2)}
    faces = [f for f in t.faces if frozenset(f) not in dropped]
    faces += split(f1) + split(f2)
    return Triangulation(w + 1, t.corners, faces)


# ---------------------------------------------------------------------------
# constructions and enumeration


def diagonal_triangulation(k, name=None):
    """k interior vertices strung along the p-r diagonal; 2k+2 faces.

    Faces are listed in order around the square: the q-side fan from p to r,
    then the s-side fan back from r to p.
    """
    p, q, r, s = 0, 1, 2, 3
    if k == 0:
        return Triangulation(4, (p, q, r, s), [(p, q, r), (p, r, s)], name)
    chain = [p] + [4 + i for i in range(k)] + [r]
    top = []
    for i in range(len(chain) - 1):
        a, b = chain[i], chain[i + 1]
        if i == 0:
            top.append((p, q, b))
        elif i == len(chain) - 2:
            top.append((q, r, a))
        else:
            top.append((q, b, a))
    bot = [(chain[i], chain[i + 1], s) for i in range(len(chain) - 1)]
    return Triangulation(4 + k, (p, q, r, s), top + bot[::-1], name)


def pinwheel_triangulation(name=None):
    """Four interior vertices, one against each side, around a split inner
    quadrilateral; 10 faces."""
    p, q, r, s, u1, u2, u3, u4 = range(8)
    faces = [
        (p, q, u1),
        (q, u2, u1),
        (q, r, u2),
        (r, u3, u2),
        (r, s, u3),
        (s, u4, u3),
        (s, p, u4),
        (p, u1, u4),
        (u1, u2, u3),
        (u1, u3, u4),
    ]
    return Triangulation(8, (p, q, r, s), faces, name)


MAX_ENUM_INTERIOR = 5


def enumerate_triangulations(k):
    """All isomorphism classes with k interior vertices and no subdivision.

    Generated by repeated vertex splits from the two-face square with
    canonical-code dedup; subdivided classes are filtered at the end.
    Deterministic order (sorted by code).
    """
    if not 0 <= k <= MAX_ENUM_INTERIOR:
        raise ValueError(f"k must be in 0..{MAX_ENUM_INTERIOR}")
    level = {canonical_code(t0 := diagonal_triangulation(0)): t0}
    for _ in range(k):
        nxt = {}
        for t in level.values():
            for t2 in vertex_splits(t):
                code = canonical_code(t2)
                if code not in nxt:
                    nxt[code] = t2
        level = nxt
    survivors = [t for t in level.values() if has_subdivision(t) is None]
    return sorted(survivors, key=canonical_code)


# ---------------------------------------------------------------------------
# JSON and the named catalog


def to_json(t):
    obj = {
        "vertices": t.vertex_count,
        "corners": list(t.corners),
        "triangles": [list(f) for f in t.faces],
    }
    if t.name:
        obj["name"] = t.name
    return obj


def from_json(obj):
    return Triangulation(
        obj["vertices"],
        tuple(obj["corners"]),
        [tuple(f) for f in obj["triangles"]],
        obj.get("name"),
    )


CATALOG_NAMES = (
    "T_0",
    "T_1",
    "T_2",
    "T_3",
    "T_{2,1}",
    "T_4",
    "T_{3,1}",
    "T_{2,2,2,2}",
    "T_{3,1,3,1}",
    "T_{3,2,1,2}",
    "T_{3,2,2,1}",
)

_catalog_cache = None


def catalog():
    """The named table of the 11 subdivision-free triangulations with up to
    four interior vertices, keyed by name."""
    global _catalog_cache
    if _catalog_cache is None:
        out = {}
        for res in sorted(
            resources.files("triarea.catalog").iterdir(), key=lambda r: r.name
        ):
            if res.name.endswith(".json"):
                t = from_json(json.loads(res.read_text()))
                out[t.name] = t
        missing = set(CATALOG_NAMES) - set(out)
        if missing:
            raise RuntimeError(f"catalog data incomplete, missing {sorted(missing)}")
        _catalog_cache = out
    return _catalog_cache


def catalog_triangulation(name):
    cat = catalog()
    if name not in cat:
        raise KeyError(f"unknown catalog name {name!r}; have {sorted(cat)}")
    return cat[name]
