#!/usr/bin/env python3
"""Independent reference values for the C++ test suite.

Each oracle recomputes its values from first definitions with no code shared with the library:

  multipaths  brute force over path tuples in the concatenated network
  minors      sympy determinants of the block matrix and the characteristic polynomial
  scaling     mpmath singular values of the closed-form 2x2 instance
  locus       cvxpy quadratic programs, one per branch of the n = 2 octahedron fill

    oracles.py generate   rewrite frozen.json
    oracles.py check      recompute and compare against frozen.json (exit 1 on mismatch)
"""

import itertools
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent
FROZEN = HERE / "frozen.json"
EXAMPLE = HERE.parent.parent / "data" / "worked_networks.json"


# ---------------------------------------------------------------- networks


class Net:
    """DAG with (x, y) vertices; sources/sinks keyed by line label."""

    def __init__(self):
        self.pos = []
        self.out = []  # vertex -> [(head, weight)]
        self.sources = {}
        self.sinks = {}

    def vertex(self, x, y):
        self.pos.append((x, y))
        self.out.append([])
        return len(self.pos) - 1

    def edge(self, t, h, w):
        self.out[t].append((h, w))


def standard_network(n, weights):
    """Π_st(n) from its geometric description; weights: {(l, i): value} on essential edges."""
    net = Net()
    third = Fraction(3, 2)
    pts = {l: [] for l in range(1, n + 1)}
    slants = []
    for l in range(2, n + 1):
        for i in range(1, l):
            x0 = (n - l + 1) + third * (i - 1)
            pts[l].append(x0)
            pts[l - 1].append(x0 + Fraction(1, 2))
            slants.append((l, i, x0))
    end = Fraction(3 * n + 3)
    ids = {}
    for l in range(1, n + 1):
        xs = sorted(set([Fraction(0)] + pts[l] + [end]))
        for x in xs:
            ids[(x, l)] = net.vertex(x, l)
        for a, b in zip(xs, xs[1:]):
            w = weights.get((l, l), 0) if b == end else 0
            net.edge(ids[(a, l)], ids[(b, l)], w)
        net.sources[l] = ids[(xs[0], l)]
        net.sinks[l] = ids[(xs[-1], l)]
    for l, i, x0 in slants:
        net.edge(ids[(x0, l)], ids[(x0 + Fraction(1, 2), l - 1)], weights.get((l, i), 0))
    return net


def json_network(doc):
    net = Net()
    ids = {}
    for v in doc["vertices"]:
        ids[v["id"]] = net.vertex(Fraction(str(v["x"])), Fraction(str(v["y"])))
    for e in doc["edges"]:
        net.edge(ids[e["tail"]], ids[e["head"]], Fraction(str(e["weight"])))
    n = doc["rank"]
    for line in range(1, n + 1):
        on = [v for v in range(len(net.pos)) if net.pos[v][1] == line]
        net.sources[line] = min(on, key=lambda v: net.pos[v][0])
        net.sinks[line] = max(on, key=lambda v: net.pos[v][0])
    return net


def concatenate(nets):
    """Glue sinks of factor t to sources of factor t+1; returns (graph, seams) with seams[t][label]."""
    g = Net()
    seams = []
    prev = None
    for t, net in enumerate(nets):
        remap = {}
        if prev is not None:
            for label, v in net.sources.items():
                remap[v] = prev[label]
        for v in range(len(net.pos)):
            if v not in remap:
                remap[v] = g.vertex(*net.pos[v])
        for v in range(len(net.pos)):
            for h, w in net.out[v]:
                g.edge(remap[v], remap[h], w)
        if t == 0:
            g.sources = {label: remap[v] for label, v in net.sources.items()}
        prev = {label: remap[v] for label, v in net.sinks.items()}
        seams.append(prev)
    return g, seams


def paths_from(g, s):
    out = []

    def walk(v, verts, w):
        out.append((v, frozenset(verts), w))
        for h, ew in g.out[v]:
            walk(h, verts + [h], w + ew)

    walk(s, [s], 0)
    return out


def brute_m(nets, n):
    """m_α for every α in Δ^k(n): best total weight of vertex-disjoint paths from first-factor sources,
    α_t of which end on seam t."""
    k = len(nets)
    g, seams = concatenate(nets)
    end_seam = {}
    for t, seam in enumerate(seams):
        for v in seam.values():
            end_seam[v] = t
    per_source = []
    for label in range(1, n + 1):
        ps = [(end_seam[v], verts, w) for v, verts, w in paths_from(g, g.sources[label]) if v in end_seam]
        per_source.append(ps)
    best = {}

    def rec(idx, used, counts, w):
        key = tuple(counts)
        if key not in best or w > best[key]:
            best[key] = w
        if idx == n:
            return
        rec(idx + 1, used, counts, w)  # source unused
        for t, verts, pw in per_source[idx]:
            if used & verts:
                continue
            counts[t] += 1
            rec(idx + 1, used | verts, counts, w + pw)
            counts[t] -= 1

    rec(0, frozenset(), [0] * k, 0)
    return {key: best.get(key) for key in simplex(n, k)}


def simplex(n, k):
    return [a for a in itertools.product(range(n + 1), repeat=k) if sum(a) <= n]


def fr(x):
    return str(Fraction(x))


def oracle_multipaths():
    out = {}
    doc = json.loads(EXAMPLE.read_text())
    nets = [json_network(d) for d in doc["networks"]]
    m = brute_m(nets, 2)
    out["worked"] = {"".join(map(str, a)): fr(v) for a, v in m.items()}
    rng = random.Random(20240601)
    cases = []
    for n in (2, 2, 3, 3):
        labels = [(l, i) for l in range(1, n + 1) for i in range(1, l + 1)]
        ws = [{lab: rng.randint(-9, 9) for lab in labels} for _ in range(3)]
        mm = brute_m([standard_network(n, w) for w in ws], n)
        cases.append({
            "n": n,
            "weights": [[[l, i, w[(l, i)]] for (l, i) in labels] for w in ws],
            "m": [[list(a), fr(v)] for a, v in mm.items()],
        })
    out["random"] = cases
    return out


# ---------------------------------------------------------------- minors


def oracle_minors():
    import sympy as sp

    rng = random.Random(77)
    cases = []
    for n in (2, 3):
        while True:
            gs = [sp.Matrix(n, n, lambda i, j: rng.randint(-4, 4)) for _ in range(3)]
            if all(g.det() != 0 for g in gs):
                break
        prods = [sp.eye(n)]
        for g in gs:
            prods.append(prods[-1] * g)
        bold = sp.Matrix.hstack(*prods)
        x = sp.symbols("x0:4")
        poly = sp.Poly(sp.expand((x[0] * prods[0] + x[1] * prods[1] + x[2] * prods[2] + x[3] * prods[3]).det()), *x)
        M, Mt = [], []
        for a in simplex(n, 3):
            total = sum(a)
            cols = [c for c in range(1, n + 1) if c <= n - total]  # [1,n] minus [1,Σα]^op
            for t in range(3):
                cols += [(t + 1) * n + c for c in range(1, a[t] + 1)]
            M.append([list(a), str(bold.extract(list(range(n)), [c - 1 for c in cols]).det())])
            Mt.append([list(a), str(poly.coeff_monomial(x[0] ** (n - total) * x[1] ** a[0] * x[2] ** a[1] * x[3] ** a[2]))])
        cases.append({"n": n, "g": [[[int(v) for v in g.row(i)] for i in range(n)] for g in gs], "M": M, "Mtilde": Mt})
    return {"cases": cases}


# ---------------------------------------------------------------- scaling


def oracle_scaling():
    import mpmath as mp

    mp.mp.dps = 60
    rows = []
    for s in (1, 2, 5, 10, 20, 40):
        e = mp.e ** s
        A = mp.matrix([[e, 0], [e, 1]])
        sig = mp.svd_r(A, compute_uv=False)
        top = max(sig[0], sig[1])
        rows.append([s, mp.nstr(mp.log(top) / s - 1, 30)])
    return {"closed_form_gz_error": rows}


# ---------------------------------------------------------------- locus


def locus_model_n2():
    n = 2
    pts = [a for a in simplex(n, 3)]
    domain = [a for a in pts if (a[1] == 0 or sum(a) == n) and a != (0, 0, 0)]
    inside = set(domain) | {(0, 0, 0)}

    def bary(a):
        return (n - sum(a),) + tuple(a)

    def unbary(b):
        return tuple(b[1:])

    rhombi = set()
    for a in pts:
        y = bary(a)
        for ia in range(4):
            for ib, ic in itertools.combinations([q for q in range(4) if q != ia], 2):
                def shift(d):
                    v = list(y)
                    for q, dv in d.items():
                        v[q] += dv
                    return tuple(v)
                v1, v2 = shift({ia: -1, ib: 1}), shift({ia: -1, ic: 1})
                v3 = shift({ia: -2, ib: 1, ic: 1})
                quad = [y, v1, v2, v3]
                if any(min(v) < 0 for v in quad):
                    continue
                pq = [unbary(v) for v in quad]
                if all(p in inside for p in pq):
                    rhombi.add(((pq[0], pq[3]), tuple(sorted((pq[1], pq[2])))))
    return domain, sorted(rhombi)


def locus_distance_n2(h):
    import cvxpy as cp

    domain, rhombi = locus_model_n2()
    best = math.inf
    for branch in (0, 1):
        x = cp.Variable(len(domain))
        idx = {a: q for q, a in enumerate(domain)}

        def m(a):
            return 0 if a == (0, 0, 0) else x[idx[a]]

        first = m((0, 1, 1)) + m((1, 0, 0))
        second = m((0, 0, 1)) + m((1, 1, 0))
        m010 = (first if branch == 0 else second) - m((1, 0, 1))
        cons = [(first >= second) if branch == 0 else (second >= first)]
        for (l0, l1), (s0, s1) in rhombi:
            cons.append(m(s0) + m(s1) >= m(l0) + m(l1))
        bnd = [m((1, 0, 0)), m((2, 0, 0)),
               m((1, 1, 0)) - m((2, 0, 0)), m((0, 2, 0)) - m((2, 0, 0)),
               m((0, 1, 1)) - m((0, 2, 0)), m((0, 0, 2)) - m((0, 2, 0)),
               m010, m((0, 2, 0)),
               m((1, 0, 1)) - m((2, 0, 0)), m((0, 0, 2)) - m((2, 0, 0)),
               m((0, 0, 1)), m((0, 0, 2))]
        obj = cp.sum_squares(cp.hstack(bnd) - h)
        prob = cp.Problem(cp.Minimize(obj), cons)
        prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
        resid = [float(b.value) if hasattr(b, "value") else float(b) for b in bnd]
        best = min(best, math.sqrt(sum((r - t) ** 2 for r, t in zip(resid, h))))
    return best, len(rhombi)


def oracle_locus():
    rng = random.Random(5)
    cases = []
    # Example 3.3 boundary (in the locus), then one coordinate moved by 1, then random vectors
    ex = [2, 3, 1, 2, 2, 0, 3, 5, 3, 2, 4, 5]
    pert = list(ex)
    pert[1] += 1
    vecs = [ex, pert] + [[round(rng.gauss(0, 3), 6) for _ in range(12)] for _ in range(6)]
    nrh = 0
    for h in vecs:
        d, nrh = locus_distance_n2(h)
        cases.append([h, round(d, 9)])
    return {"n2_cone_rhombi": nrh, "cases": cases}


# ---------------------------------------------------------------- driver


def compute():
    return {
        "multipaths": oracle_multipaths(),
        "minors": oracle_minors(),
        "scaling": oracle_scaling(),
        "locus": oracle_locus(),
    }


def close(a, b, path=""):
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(close(a[k], b[k], path + "." + k) for k in a)
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(close(x, y, path) for x, y in zip(a, b))
    if isinstance(a, float) or isinstance(b, float):
        return abs(float(a) - float(b)) <= 1e-6 * max(1.0, abs(float(b)))
    if path.endswith("closed_form_gz_error"):
        return abs(float(a) - float(b)) <= 1e-25
    return a == b


def main():
    mode = sys.argv[1] if len(sys.argv) > 1 else "check"
    data = compute()
    if mode == "generate":
        FROZEN.write_text(json.dumps(data, indent=1) + "\n")
        print("wrote", FROZEN)
        return 0
    frozen = json.loads(FROZEN.read_text())
    ok = close(data, frozen)
    print("oracles match frozen values" if ok else "ORACLE MISMATCH against frozen.json")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
