#!/usr/bin/env python3
"""Regenerates the fixture directories next to this script.

Group tables for the two non-abelian record groups follow the element order of
a polycyclic presentation f1^3 = f2, f2^3 = 1, f3^p = 1, f3^f1 = f3^t, with
elements f1^a f2^b f3^c sorted shortlex on the expanded word (length first,
then letters f1 < f2 < f3). Cage graphs are incidence graphs of the symplectic
quadrangle W(3) and the split Cayley hexagons H(3), H(5).

Requires networkx for graph6/sparse6 encoding.
"""
import hashlib
import itertools
import json
import os

import networkx as nx

HERE = os.path.dirname(os.path.abspath(__file__))


# ---------------------------------------------------------------- groups

def cyclic(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def dihedral(n):
    # rotations r_0..r_{n-1} then reflections s_0..s_{n-1}
    t = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(2 * n):
        for b in range(2 * n):
            i, j = a % n, b % n
            if a < n and b < n:
                t[a][b] = (i + j) % n
            elif a < n:
                t[a][b] = n + (i + j) % n
            elif b < n:
                t[a][b] = n + (i - j) % n
            else:
                t[a][b] = (i - j) % n
    return t


def product(a, b):
    na, nb = len(a), len(b)
    return [[a[x // nb][y // nb] * nb + b[x % nb][y % nb] for y in range(na * nb)]
            for x in range(na * nb)]


def pc_metacyclic(p, t):
    """C_p x| C_9 with the shortlex pc element order described above."""
    words = [(a, b, c) for a in range(3) for b in range(3) for c in range(p)]
    words.sort(key=lambda w: (sum(w), [1] * w[0] + [2] * w[1] + [3] * w[2]))

    def to_pair(w):
        a, b, c = w
        return ((a + 3 * b) % 9, c)

    def mul(x, y):
        return ((x[0] + y[0]) % 9, (x[1] * pow(t, y[0], p) + y[1]) % p)

    pairs = [to_pair(w) for w in words]
    index = {e: i for i, e in enumerate(pairs)}
    return [[index[mul(x, y)] for y in pairs] for x in pairs]


def group_text(name, table):
    lines = [f"group {name} {len(table)}"]
    lines += [" ".join(map(str, row)) for row in table]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- geometry

def proj_points(q, dim):
    out = []
    for v in itertools.product(range(q), repeat=dim):
        if any(v) and next(x for x in v if x) == 1:
            out.append(v)
    return out


def normalize(v, q):
    f = next(x for x in v if x % q)
    inv = pow(f, q - 2, q)
    return tuple((x * inv) % q for x in v)


def span_points(x, y, q, index):
    return frozenset(
        index[normalize(tuple(a * x[k] + b * y[k] for k in range(len(x))), q)]
        for a in range(q) for b in range(q) if (a, b) != (0, 0))


def incidence_graph(npoints, lines):
    g = nx.Graph()
    g.add_nodes_from(range(npoints + len(lines)))
    for j, line in enumerate(lines):
        for p in sorted(line):
            g.add_edge(p, npoints + j)
    return g


def symplectic_quadrangle(q):
    pts = proj_points(q, 4)
    index = {p: i for i, p in enumerate(pts)}
    lines = set()
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if (x[0] * y[2] - x[2] * y[0] + x[1] * y[3] - x[3] * y[1]) % q == 0:
                lines.add(span_points(x, y, q, index))
    return incidence_graph(len(pts), sorted(lines, key=sorted))


def split_cayley_hexagon(q):
    pts = [p for p in proj_points(q, 7)
           if (p[0] * p[4] + p[1] * p[5] + p[2] * p[6] - p[3] * p[3]) % q == 0]
    index = {p: i for i, p in enumerate(pts)}
    lines = set()
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            def pl(a, b):
                return (x[a] * y[b] - x[b] * y[a]) % q
            if (pl(1, 2) != pl(3, 4) or pl(5, 4) != pl(3, 2) or pl(2, 0) != pl(3, 5)
                    or pl(6, 5) != pl(3, 0) or pl(0, 1) != pl(3, 6) or pl(4, 6) != pl(3, 1)):
                continue
            form = (x[0] * y[4] + x[4] * y[0] + x[1] * y[5] + x[5] * y[1]
                    + x[2] * y[6] + x[6] * y[2] - 2 * x[3] * y[3]) % q
            if form == 0:
                lines.add(span_points(x, y, q, index))
    return incidence_graph(len(pts), sorted(lines, key=sorted))


# ---------------------------------------------------------------- writing

def write(dir_, name, text):
    os.makedirs(dir_, exist_ok=True)
    with open(os.path.join(dir_, name), "w", newline="\n") as f:
        f.write(text)


def sha256(path):
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def manifest(fid, description, files, expected, notes=None):
    d = os.path.join(HERE, fid)
    obj = {
        "id": fid,
        "description": description,
        "files": files,
        "sha256": {k: sha256(os.path.join(d, v)) for k, v in sorted(files.items())},
        "expected": expected,
    }
    if notes:
        obj["notes"] = notes
    write(d, "expect.json", json.dumps(obj, indent=2) + "\n")


def lift_fixture(fid, description, n, edges, group_name, table, expected, notes=None):
    """edges: list of (u, v, voltage) with v=None for a semi-edge; the voltage
    is attached to the forward dart u -> v."""
    d = os.path.join(HERE, fid)
    lines = [f"pregraph {n}"]
    volt = [f"volt {fid} {group_name}"]
    dart = 0
    for (u, v, a) in edges:
        if v is None:
            lines.append(f"{u} ;")
            if a:
                volt.append(f"dart {dart} {a}")
            dart += 1
        else:
            lines.append(f"{u} {v}")
            if a:
                volt.append(f"dart {dart} {a}")
            dart += 2
    write(d, "base.pg", "\n".join(lines) + "\n")
    write(d, "volt.txt", "\n".join(volt) + "\n")
    write(d, "group.tbl", group_text(group_name, table))
    manifest(fid, description,
             {"base": "base.pg", "group": "group.tbl", "volt": "volt.txt"},
             expected, notes)


def graph_fixture(fid, description, graph, expected, sparse=False):
    d = os.path.join(HERE, fid)
    os.makedirs(d, exist_ok=True)
    name = "graph.s6" if sparse else "graph.g6"
    path = os.path.join(d, name)
    if sparse:
        nx.write_sparse6(graph, path, header=False)
    else:
        nx.write_graph6(graph, path, header=False)
    manifest(fid, description, {"graph": name}, expected)


def main():
    lift_fixture(
        "petersen-dumbbell-c5", "Dumbbell graph over C5; lifts to the Petersen graph", 2,
        [(0, 1, 0), (0, 0, 2), (1, 1, 1)],
        "C5", cyclic(5),
        {"order": 10, "k": 3, "girth": 5, "bipartite": False, "lambda_v": 6, "lambda_e": 4})

    lift_fixture(
        "n4g9-c45", "6-vertex base over C45; 4-regular girth 9 on 270 vertices", 6,
        [(0, 1, 0), (0, 2, 0), (0, 3, 0), (0, 4, 0), (1, 5, 0), (4, 5, 1),
         (3, 3, 42), (2, 2, 28), (1, 1, 5), (4, 4, 38), (2, 5, 9), (3, 5, 24)],
        "C45", cyclic(45),
        {"order": 270, "k": 4, "girth": 9, "bipartite": False})

    c3c3d5 = product(cyclic(3), product(cyclic(3), dihedral(5)))

    def e90(a, b, d):
        return a * 30 + b * 10 + d
    r5 = lambda i: i
    s5 = lambda i: 5 + i
    lift_fixture(
        "n4g9-c3c3d5", "3-vertex base over C3 x C3 x D5; 4-regular girth 9 on 270 vertices", 3,
        [(1, 0, e90(1, 0, s5(0))), (0, 1, 0), (1, 2, e90(0, 1, s5(1))), (2, 1, 0),
         (0, 0, e90(0, 1, r5(1))), (2, 2, e90(1, 0, r5(1)))],
        "C3xC3xD5", c3c3d5,
        {"order": 270, "k": 4, "girth": 9, "bipartite": False},
        "element (a, b, x) of C3 x C3 x D5 has index 30a + 10b + x; "
        "D5 rotations r_i are 0..4, reflections s_i are 5..9")

    c5d4 = product(cyclic(5), dihedral(4))
    # Label reading for the D4 factor. The literal r_i = rotation by i reading
    # gives a girth-6 lift; this assignment of the drawn labels verifies.
    d4 = {"s0": 4, "s3": 5, "r1": 1, "r2": 7, "r3": 2}

    def e40(a, name):
        return a * 8 + d4[name]
    lift_fixture(
        "n4g10-c5d4", "8-vertex base over C5 x D4; bipartite 4-regular girth 10 on 320 vertices", 8,
        [(4, 4, e40(1, "s0")), (7, 7, e40(2, "r2")), (4, 0, 0), (1, 4, e40(3, "s3")),
         (0, 1, 0), (0, 2, 0), (0, 3, 0), (1, 2, e40(1, "r2")), (1, 3, e40(2, "r2")),
         (2, 5, 0), (2, 6, 0), (3, 5, e40(1, "r1")), (3, 6, e40(3, "r1")),
         (5, 6, e40(3, "s0")), (5, 7, 0), (6, 7, e40(1, "r3"))],
        "C5xD4", c5d4,
        {"order": 320, "k": 4, "girth": 10, "bipartite": True},
        "element (a, x) of C5 x D4 has index 8a + x; D4 rotations are 0..3, reflections "
        "4..7. Drawn labels map to D4 indices as s0->4, s3->5, r1->1, r2->7, r3->2; "
        "reading r_i as rotation by i forces a 6-cycle and cannot give a bipartite lift")

    lift_fixture(
        "n3g16-c13c9", "8-vertex cubic base over C13 x| C9; bipartite cubic girth 16 on 936 vertices", 8,
        [(0, 1, 13), (0, 3, 24), (2, 1, 105), (2, 3, 111), (4, 0, 0), (4, 2, 0),
         (5, 1, 0), (5, 3, 0), (4, 7, 0), (5, 6, 0), (7, 6, 1), (6, 7, 0)],
        "C13:C9", pc_metacyclic(13, 3),
        {"order": 936, "k": 3, "girth": 16, "bipartite": True},
        "pc element order with f3^f1 = f3^3 (see generate.py)")

    lift_fixture(
        "n5g9-c31c9", "4-vertex base over C31 x| C9; 5-regular girth 9 on 1116 vertices", 4,
        [(1, 0, 127), (1, 0, 230), (1, 0, 0), (2, 1, 220), (3, 1, 0), (0, 0, 221),
         (3, 2, 8), (3, 2, 163), (3, 2, 1), (3, 2, 0)],
        "C31:C9", pc_metacyclic(31, 25),
        {"order": 1116, "k": 5, "girth": 9, "bipartite": False},
        "pc element order with f3^f1 = f3^25 (see generate.py); the three labelled "
        "darts between vertices 2 and 3 are oriented 3 -> 2")

    graph_fixture("cage-4-8", "(4,8)-cage: incidence graph of W(3)", symplectic_quadrangle(3),
                  {"order": 80, "k": 4, "girth": 8, "bipartite": True})
    graph_fixture("cage-4-12", "(4,12)-cage: incidence graph of H(3)", split_cayley_hexagon(3),
                  {"order": 728, "k": 4, "girth": 12, "bipartite": True})
    graph_fixture("cage-6-12", "(6,12)-cage: incidence graph of H(5)", split_cayley_hexagon(5),
                  {"order": 7812, "k": 6, "girth": 12, "bipartite": True}, sparse=True)


if __name__ == "__main__":
    main()
