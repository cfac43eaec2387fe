#include "hornlab/network.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

namespace hornlab {

namespace {

struct Pt {
    Rational x, y;
};

int orient(const Pt& a, const Pt& b, const Pt& c) {
    Rational v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sgn(v);
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_touch(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2) {
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2), o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}  // namespace

PlanarNetwork PlanarNetwork::build(int rank, std::vector<Vertex> vertices,
                                   const std::vector<std::pair<int, int>>& edges, std::vector<Rational> verticals,
                                   std::vector<std::optional<EssentialLabel>> labels) {
    if (rank < 1) fail(ErrorKind::Usage, "network rank must be positive");
    PlanarNetwork p;
    p.rank_ = rank;
    p.vertices_ = std::move(vertices);
    p.verticals_ = std::move(verticals);
    const int V = static_cast<int>(p.vertices_.size());
    std::unordered_map<int, int> index;
    for (int v = 0; v < V; ++v) {
        if (!index.emplace(p.vertices_[v].id, v).second)
            fail(ErrorKind::Usage, "duplicate vertex id " + std::to_string(p.vertices_[v].id));
        if (p.vertices_[v].y < 1 || p.vertices_[v].y > rank)
            fail(ErrorKind::Usage, "vertex " + std::to_string(p.vertices_[v].id) + " has y outside [1,n]");
    }
    p.out_.assign(V, {});
    p.in_.assign(V, {});
    for (const auto& [t, h] : edges) {
        auto it = index.find(t), ih = index.find(h);
        if (it == index.end() || ih == index.end()) fail(ErrorKind::Usage, "edge references unknown vertex");
        Edge e{it->second, ih->second};
        if (!(p.vertices_[e.tail].x < p.vertices_[e.head].x))
            fail(ErrorKind::Usage, "edge " + std::to_string(t) + "->" + std::to_string(h) + " is not left-to-right");
        p.out_[e.tail].push_back(static_cast<int>(p.edges_.size()));
        p.in_[e.head].push_back(static_cast<int>(p.edges_.size()));
        p.edges_.push_back(e);
    }
    if (labels.empty()) labels.assign(p.edges_.size(), std::nullopt);
    if (labels.size() != p.edges_.size()) fail(ErrorKind::Usage, "label vector size != edge count");
    p.labels_ = std::move(labels);

    // planarity: distinct edges meet only at shared endpoints
    const int E = p.num_edges();
    for (int a = 0; a < E; ++a) {
        const Edge& ea = p.edges_[a];
        Pt a1{p.vertices_[ea.tail].x, p.vertices_[ea.tail].y}, a2{p.vertices_[ea.head].x, p.vertices_[ea.head].y};
        for (int b = a + 1; b < E; ++b) {
            const Edge& eb = p.edges_[b];
            // cheap x-range rejection
            if (p.vertices_[eb.head].x < a1.x || a2.x < p.vertices_[eb.tail].x) continue;
            Pt b1{p.vertices_[eb.tail].x, p.vertices_[eb.tail].y}, b2{p.vertices_[eb.head].x, p.vertices_[eb.head].y};
            int shared = (ea.tail == eb.tail) + (ea.tail == eb.head) + (ea.head == eb.tail) + (ea.head == eb.head);
            if (shared >= 2) fail(ErrorKind::Usage, "parallel edges between the same vertices");
            if (shared == 1) {
                // only collinear overlap is a problem
                int c = ea.tail == eb.tail || ea.tail == eb.head ? ea.tail : ea.head;
                Pt s{p.vertices_[c].x, p.vertices_[c].y};
                const Pt& ao = (c == ea.tail) ? a2 : a1;
                const Pt& bo = (c == eb.tail) ? b2 : b1;
                if (orient(s, ao, bo) == 0 && ((ao.x - s.x) * (bo.x - s.x) > 0))
                    fail(ErrorKind::Usage, "overlapping collinear edges");
                continue;
            }
            if (segments_touch(a1, a2, b1, b2))
                fail(ErrorKind::Usage, "edges " + std::to_string(a) + " and " + std::to_string(b) + " cross");
        }
    }
    // a vertex may not sit inside an edge
    for (int v = 0; v < V; ++v) {
        Pt pv{p.vertices_[v].x, p.vertices_[v].y};
        for (int e = 0; e < E; ++e) {
            const Edge& ed = p.edges_[e];
            if (ed.tail == v || ed.head == v) continue;
            Pt a{p.vertices_[ed.tail].x, p.vertices_[ed.tail].y}, b{p.vertices_[ed.head].x, p.vertices_[ed.head].y};
            if (orient(a, b, pv) == 0 && on_segment(a, b, pv))
                fail(ErrorKind::Usage, "vertex " + std::to_string(p.vertices_[v].id) + " lies inside an edge");
        }
    }

    // sources / sinks
    Rational xmin = p.vertices_.at(0).x, xmax = p.vertices_.at(0).x;
    for (const auto& v : p.vertices_) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
    }
    auto collect = [&](const Rational& x) {
        std::vector<int> s;
        for (int v = 0; v < V; ++v)
            if (p.vertices_[v].x == x) s.push_back(v);
        std::sort(s.begin(), s.end(), [&](int a, int b) { return p.vertices_[a].y < p.vertices_[b].y; });
        return s;
    };
    p.sources_ = collect(xmin);
    p.sinks_ = collect(xmax);
    if (static_cast<int>(p.sources_.size()) != rank || static_cast<int>(p.sinks_.size()) != rank)
        fail(ErrorKind::Usage, "network must have exactly n sources and n sinks");
    p.source_label_.assign(V, 0);
    p.sink_label_.assign(V, 0);
    for (int i = 0; i < rank; ++i) {
        p.source_label_[p.sources_[i]] = i + 1;
        p.sink_label_[p.sinks_[i]] = i + 1;
    }
    p.topo_.resize(V);
    std::iota(p.topo_.begin(), p.topo_.end(), 0);
    std::stable_sort(p.topo_.begin(), p.topo_.end(),
                     [&](int a, int b) { return p.vertices_[a].x < p.vertices_[b].x; });
    return p;
}

int PlanarNetwork::essential_edge(int l, int i) const {
    for (int e = 0; e < num_edges(); ++e)
        if (labels_[e] && labels_[e]->l == l && labels_[e]->i == i) return e;
    return -1;
}

std::vector<int> PlanarNetwork::essential_edges() const {
    std::vector<std::pair<EssentialLabel, int>> v;
    for (int e = 0; e < num_edges(); ++e)
        if (labels_[e]) v.push_back({*labels_[e], e});
    std::sort(v.begin(), v.end());
    std::vector<int> out;
    for (auto& [lab, e] : v) out.push_back(e);
    return out;
}

PlanarNetwork standard_network(int n) {
    if (n < 1) fail(ErrorKind::Usage, "standard_network needs n >= 1");
    const Rational xend = ratio(3 * n, 2) - ratio(1, 2);
    auto slant_start = [&](int l, int i) -> Rational { return Rational(n - l + 1) + ratio(3 * (i - 1), 2); };
    // points on each line
    std::vector<std::vector<Rational>> xs(n + 1);
    for (int y = 1; y <= n; ++y) {
        std::set<Rational> pts{Rational(0), xend};
        for (int i = 1; i < y; ++i) pts.insert(slant_start(y, i));
        if (y < n)
            for (int i = 1; i < y + 1; ++i) pts.insert(slant_start(y + 1, i) + ratio(1, 2));
        xs[y].assign(pts.begin(), pts.end());
    }
    std::vector<Vertex> verts;
    std::map<std::pair<int, Rational>, int> id;
    for (int y = 1; y <= n; ++y)
        for (const auto& x : xs[y]) {
            int vid = static_cast<int>(verts.size());
            verts.push_back({vid, x, Rational(y)});
            id[{y, x}] = vid;
        }
    std::vector<std::pair<int, int>> edges;
    std::vector<std::optional<EssentialLabel>> labels;
    for (int y = 1; y <= n; ++y)
        for (size_t k = 0; k + 1 < xs[y].size(); ++k) {
            edges.push_back({id[{y, xs[y][k]}], id[{y, xs[y][k + 1]}]});
            labels.push_back(k + 2 == xs[y].size() ? std::optional<EssentialLabel>(EssentialLabel{y, y}) : std::nullopt);
        }
    for (int l = 2; l <= n; ++l)
        for (int i = 1; i < l; ++i) {
            Rational x = slant_start(l, i);
            edges.push_back({id[{l, x}], id[{l - 1, x + ratio(1, 2)}]});
            labels.push_back(EssentialLabel{l, i});
        }
    return PlanarNetwork::build(n, std::move(verts), edges, {}, std::move(labels));
}

NetworkPtr standard_network_ptr(int n) {
    static std::mutex mu;
    static std::map<int, NetworkPtr> nets;
    std::lock_guard<std::mutex> lock(mu);
    auto it = nets.find(n);
    if (it == nets.end()) it = nets.emplace(n, std::make_shared<const PlanarNetwork>(standard_network(n))).first;
    return it->second;
}

PlanarNetwork straight_network(int n) {
    std::vector<Vertex> verts;
    std::vector<std::pair<int, int>> edges;
    for (int y = 1; y <= n; ++y) {
        verts.push_back({2 * (y - 1), Rational(0), Rational(y)});
        verts.push_back({2 * (y - 1) + 1, Rational(1), Rational(y)});
        edges.push_back({2 * (y - 1), 2 * (y - 1) + 1});
    }
    return PlanarNetwork::build(n, std::move(verts), edges);
}

PlanarNetwork concatenate(const PlanarNetwork& p1, const PlanarNetwork& p2) {
    if (p1.rank() != p2.rank()) fail(ErrorKind::Usage, "concatenate: rank mismatch");
    const int n = p1.rank();
    const Rational seam = p1.vertices()[p1.sink(1)].x;
    const Rational shift = seam - p2.vertices()[p2.source(1)].x;
    for (int j = 1; j <= n; ++j)
        if (p1.vertices()[p1.sink(j)].y != p2.vertices()[p2.source(j)].y)
            fail(ErrorKind::Usage, "concatenate: sink/source heights differ");
    std::vector<Vertex> verts;
    for (int v = 0; v < p1.num_vertices(); ++v) verts.push_back({v, p1.vertices()[v].x, p1.vertices()[v].y});
    std::vector<int> map2(p2.num_vertices());
    for (int v = 0; v < p2.num_vertices(); ++v) {
        int lab = p2.source_label(v);
        if (lab) {
            map2[v] = p1.sink(lab);
        } else {
            map2[v] = static_cast<int>(verts.size());
            verts.push_back({map2[v], p2.vertices()[v].x + shift, p2.vertices()[v].y});
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : p1.edges()) edges.push_back({e.tail, e.head});
    for (const auto& e : p2.edges()) edges.push_back({map2[e.tail], map2[e.head]});
    std::vector<Rational> vert = p1.verticals();
    vert.push_back(seam);
    for (const auto& x : p2.verticals()) vert.push_back(x + shift);
    return PlanarNetwork::build(n, std::move(verts), edges, std::move(vert));
}

Truncation truncate(const PlanarNetwork& p, int l) {
    const int n = p.rank();
    if (l < 1 || l > n) fail(ErrorKind::Usage, "truncate: l out of range");
    const int V = p.num_vertices(), E = p.num_edges();
    std::vector<char> alive(E, 1);
    for (int e = 0; e < E; ++e) {
        const auto& ed = p.edges()[e];
        if (p.source_label(ed.tail) > l || p.sink_label(ed.head) > l) alive[e] = 0;
    }
    // prune edges not on a path from a kept source to a kept sink
    std::vector<char> fwd(V, 0), bwd(V, 0);
    for (int i = 1; i <= l; ++i) fwd[p.source(i)] = 1, bwd[p.sink(i)] = 1;
    for (int v : p.topo_order())
        if (fwd[v])
            for (int e : p.out_edges(v))
                if (alive[e]) fwd[p.edges()[e].head] = 1;
    for (auto it = p.topo_order().rbegin(); it != p.topo_order().rend(); ++it)
        if (bwd[*it])
            for (int e : p.in_edges(*it))
                if (alive[e]) bwd[p.edges()[e].tail] = 1;
    for (int e = 0; e < E; ++e)
        if (!(fwd[p.edges()[e].tail] && bwd[p.edges()[e].head])) alive[e] = 0;
    std::vector<int> indeg(V, 0), outdeg(V, 0);
    for (int e = 0; e < E; ++e)
        if (alive[e]) ++outdeg[p.edges()[e].tail], ++indeg[p.edges()[e].head];
    auto keep_vertex = [&](int v) {
        if ((p.source_label(v) && p.source_label(v) <= l) || (p.sink_label(v) && p.sink_label(v) <= l)) return true;
        return indeg[v] + outdeg[v] > 0;
    };
    // smooth collinear series vertices: in = out = 1 and both edges horizontal
    auto horizontal = [&](int e) { return p.vertices()[p.edges()[e].tail].y == p.vertices()[p.edges()[e].head].y; };
    auto series = [&](int v) {
        if (p.source_label(v) || p.sink_label(v) || indeg[v] != 1 || outdeg[v] != 1) return false;
        int ein = -1, eout = -1;
        for (int e : p.in_edges(v))
            if (alive[e]) ein = e;
        for (int e : p.out_edges(v))
            if (alive[e]) eout = e;
        return horizontal(ein) && horizontal(eout);
    };
    std::vector<Vertex> verts;
    std::vector<int> newid(V, -1);
    for (int v = 0; v < V; ++v)
        if (keep_vertex(v) && !series(v)) {
            newid[v] = static_cast<int>(verts.size());
            verts.push_back({newid[v], p.vertices()[v].x, p.vertices()[v].y});
        }
    Truncation t;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::optional<EssentialLabel>> labels;
    for (int e = 0; e < E; ++e) {
        if (!alive[e] || newid[p.edges()[e].tail] < 0) continue;
        std::vector<int> chain{e};
        int h = p.edges()[e].head;
        while (newid[h] < 0) {
            int nxt = -1;
            for (int f : p.out_edges(h))
                if (alive[f]) nxt = f;
            chain.push_back(nxt);
            h = p.edges()[nxt].head;
        }
        std::optional<EssentialLabel> lab;
        int cnt = 0;
        for (int f : chain)
            if (p.label(f)) lab = p.label(f), ++cnt;
        if (cnt > 1) lab.reset();
        edges.push_back({newid[p.edges()[e].tail], newid[h]});
        labels.push_back(lab);
        t.origin.push_back(chain);
    }
    t.net = PlanarNetwork::build(l, std::move(verts), edges, p.verticals(), std::move(labels));
    return t;
}

bool is_isomorphic(const PlanarNetwork& a, const PlanarNetwork& b) {
    auto signature = [](const PlanarNetwork& p) {
        std::vector<std::pair<Rational, int>> key(p.num_vertices());
        std::map<Rational, std::vector<int>> by_line;
        for (int v = 0; v < p.num_vertices(); ++v) by_line[p.vertices()[v].y].push_back(v);
        for (auto& [y, vs] : by_line) {
            std::sort(vs.begin(), vs.end(), [&](int u, int w) { return p.vertices()[u].x < p.vertices()[w].x; });
            for (size_t r = 0; r < vs.size(); ++r) key[vs[r]] = {y, static_cast<int>(r)};
        }
        std::vector<std::pair<std::pair<Rational, int>, std::pair<Rational, int>>> sig;
        for (const auto& e : p.edges()) sig.push_back({key[e.tail], key[e.head]});
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    return a.rank() == b.rank() && signature(a) == signature(b);
}

std::vector<std::vector<Path>> all_paths(const PlanarNetwork& net, StateBudget* budget) {
    std::vector<std::vector<Path>> out(net.rank());
    for (int s = 1; s <= net.rank(); ++s) {
        Path cur;
        cur.source_label = s;
        cur.vertices.push_back(net.source(s));
        std::function<void(int)> dfs = [&](int v) {
            if (budget) budget->tick();
            if (int t = net.sink_label(v)) {
                Path p = cur;
                p.sink_label = t;
                out[s - 1].push_back(std::move(p));
                return;
            }
            for (int e : net.out_edges(v)) {
                int h = net.edges()[e].head;
                cur.vertices.push_back(h);
                cur.edges.push_back(e);
                dfs(h);
                cur.vertices.pop_back();
                cur.edges.pop_back();
            }
        };
        dfs(net.source(s));
    }
    return out;
}

void for_each_family(const PlanarNetwork& net, const std::vector<std::vector<Path>>& paths, const IndexSet& I,
                     const IndexSet& J, const std::function<void(const std::vector<const Path*>&)>& fn,
                     StateBudget* budget) {
    if (I.size() != J.size()) fail(ErrorKind::Usage, "family: |I| != |J|");
    std::vector<char> used(net.num_vertices(), 0), sink_used(net.rank() + 1, 0), in_J(net.rank() + 1, 0);
    for (int j : J) in_J.at(j) = 1;
    std::vector<const Path*> chosen;
    std::function<void(size_t)> rec = [&](size_t r) {
        if (budget) budget->tick();
        if (r == I.size()) {
            fn(chosen);
            return;
        }
        for (const Path& p : paths.at(I[r] - 1)) {
            if (!in_J[p.sink_label] || sink_used[p.sink_label]) continue;
            bool ok = true;
            for (int v : p.vertices)
                if (used[v]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (int v : p.vertices) used[v] = 1;
            sink_used[p.sink_label] = 1;
            chosen.push_back(&p);
            rec(r + 1);
            chosen.pop_back();
            sink_used[p.sink_label] = 0;
            for (int v : p.vertices) used[v] = 0;
        }
    };
    rec(0);
}

}  // namespace hornlab
