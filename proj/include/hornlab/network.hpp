#pragma once

#include "hornlab/common.hpp"
#include "hornlab/trop.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace hornlab {

struct Vertex {
    int id = 0;
    Rational x, y;
};

struct Edge {
    int tail = 0;  // vertex index
    int head = 0;
};

// a_{l,i} label of an essential edge of a standard network.
struct EssentialLabel {
    int l = 0, i = 0;
    friend bool operator==(const EssentialLabel&, const EssentialLabel&) = default;
    friend auto operator<=>(const EssentialLabel&, const EssentialLabel&) = default;
};

class PlanarNetwork {
public:
    PlanarNetwork() = default;

    // Validates x-monotonicity, planarity and the n sources / n sinks.
    // `edges` are given by vertex id.
    static PlanarNetwork build(int rank, std::vector<Vertex> vertices, const std::vector<std::pair<int, int>>& edges,
                               std::vector<Rational> verticals = {},
                               std::vector<std::optional<EssentialLabel>> labels = {});

    int rank() const { return rank_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Rational>& verticals() const { return verticals_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }

    // Vertex index of source / sink with label 1..n (bottom to top).
    int source(int label) const { return sources_.at(label - 1); }
    int sink(int label) const { return sinks_.at(label - 1); }
    // 0 if v is not a source / sink.
    int source_label(int v) const { return source_label_.at(v); }
    int sink_label(int v) const { return sink_label_.at(v); }

    const std::vector<int>& out_edges(int v) const { return out_.at(v); }
    const std::vector<int>& in_edges(int v) const { return in_.at(v); }
    // Vertex indices in increasing x (a topological order).
    const std::vector<int>& topo_order() const { return topo_; }

    const std::optional<EssentialLabel>& label(int e) const { return labels_.at(e); }
    const std::vector<std::optional<EssentialLabel>>& labels() const { return labels_; }
    // -1 if absent.
    int essential_edge(int l, int i) const;
    std::vector<int> essential_edges() const;  // in (l,i)-lex order

private:
    int rank_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Rational> verticals_;
    std::vector<int> sources_, sinks_, source_label_, sink_label_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> topo_;
    std::vector<std::optional<EssentialLabel>> labels_;
};

using NetworkPtr = std::shared_ptr<const PlanarNetwork>;

// Π_st(n): lines y = 1..n; slant a_{l,i} (i < l) from line l at x = (n-l+1) + 3(i-1)/2
// down to line l-1 at x + 1/2; a_{l,l} is the sink-adjacent segment of line l.
PlanarNetwork standard_network(int n);
// Shared immutable Π_st(n), built once per n.
NetworkPtr standard_network_ptr(int n);
// n horizontal lines without slants.
PlanarNetwork straight_network(int n);

PlanarNetwork concatenate(const PlanarNetwork& p1, const PlanarNetwork& p2);

struct Truncation {
    PlanarNetwork net;
    // origin[e] = edges of the parent network merged into edge e of `net`.
    std::vector<std::vector<int>> origin;
};
Truncation truncate(const PlanarNetwork& p, int l);

// Combinatorial equality of embedded networks (vertices keyed by line and order along the line).
bool is_isomorphic(const PlanarNetwork& a, const PlanarNetwork& b);

// ---------------------------------------------------------------- semirings

struct TropicalSR {
    using value_type = Trop;
    static Trop zero() { return Trop::neg_inf(); }
    static Trop one() { return Trop(0); }
    static Trop add(const Trop& a, const Trop& b) { return trop_add(a, b); }
    static Trop mul(const Trop& a, const Trop& b) { return trop_mul(a, b); }
};

struct RationalSR {
    using value_type = Rational;
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static Rational add(const Rational& a, const Rational& b) { return a + b; }
    static Rational mul(const Rational& a, const Rational& b) { return a * b; }
};

template <class S>
struct Weighting {
    NetworkPtr net;
    std::vector<typename S::value_type> w;  // indexed by edge

    Weighting() = default;
    Weighting(NetworkPtr n, std::vector<typename S::value_type> values) : net(std::move(n)), w(std::move(values)) {
        if (static_cast<int>(w.size()) != net->num_edges()) fail(ErrorKind::Usage, "weighting size != edge count");
    }
    // Every edge at semiring one.
    static Weighting identity(NetworkPtr n) {
        std::vector<typename S::value_type> v(n->num_edges(), S::one());
        return Weighting(std::move(n), std::move(v));
    }
    const typename S::value_type& operator[](int e) const { return w.at(e); }
    typename S::value_type& operator[](int e) { return w.at(e); }
    // Essential edge a_{l,i}.
    typename S::value_type& at(int l, int i) {
        int e = net->essential_edge(l, i);
        if (e < 0) fail(ErrorKind::Usage, "no essential edge a_" + std::to_string(l) + std::to_string(i));
        return w[e];
    }
    const typename S::value_type& at(int l, int i) const { return const_cast<Weighting*>(this)->at(l, i); }
};

using TropWeighting = Weighting<TropicalSR>;
using RatWeighting = Weighting<RationalSR>;

template <class S>
Weighting<S> concatenate(const Weighting<S>& a, const Weighting<S>& b) {
    auto net = std::make_shared<const PlanarNetwork>(concatenate(*a.net, *b.net));
    std::vector<typename S::value_type> v = a.w;
    v.insert(v.end(), b.w.begin(), b.w.end());
    return Weighting<S>(net, std::move(v));
}

template <class S>
Weighting<S> concatenate_all(const std::vector<Weighting<S>>& ws) {
    if (ws.empty()) fail(ErrorKind::Usage, "empty concatenation");
    Weighting<S> acc = ws.front();
    for (size_t i = 1; i < ws.size(); ++i) acc = concatenate(acc, ws[i]);
    return acc;
}

template <class S>
Weighting<S> restrict_weighting(const Truncation& t, const Weighting<S>& parent) {
    std::vector<typename S::value_type> v;
    for (const auto& group : t.origin) {
        auto acc = S::one();
        for (int e : group) acc = S::mul(acc, parent.w.at(e));
        v.push_back(acc);
    }
    return Weighting<S>(std::make_shared<const PlanarNetwork>(t.net), std::move(v));
}

template <class S>
using SMatrix = std::vector<std::vector<typename S::value_type>>;

// Entry (i,j): semiring sum over paths source i -> sink j.
template <class S>
SMatrix<S> correspondence_matrix(const Weighting<S>& wt) {
    const PlanarNetwork& net = *wt.net;
    const int n = net.rank();
    SMatrix<S> M(n, std::vector<typename S::value_type>(n, S::zero()));
    std::vector<typename S::value_type> dist(net.num_vertices());
    for (int i = 1; i <= n; ++i) {
        std::fill(dist.begin(), dist.end(), S::zero());
        dist[net.source(i)] = S::one();
        for (int v : net.topo_order())
            for (int e : net.out_edges(v)) {
                int h = net.edges()[e].head;
                dist[h] = S::add(dist[h], S::mul(dist[v], wt.w[e]));
            }
        for (int j = 1; j <= n; ++j) M[i - 1][j - 1] = dist[net.sink(j)];
    }
    return M;
}

// ---------------------------------------------------------------- paths

struct Path {
    std::vector<int> vertices;
    std::vector<int> edges;
    int source_label = 0;
    int sink_label = 0;
};

// All source -> sink paths, grouped by source label (index label-1), deterministic order.
std::vector<std::vector<Path>> all_paths(const PlanarNetwork& net, StateBudget* budget = nullptr);

// Enumerates vertex-disjoint families with sources I and sinks J (|I| = |J|); the callback
// receives paths ordered like I.  Any bijection I -> J is allowed.
void for_each_family(const PlanarNetwork& net, const std::vector<std::vector<Path>>& paths, const IndexSet& I,
                     const IndexSet& J, const std::function<void(const std::vector<const Path*>&)>& fn,
                     StateBudget* budget = nullptr);

template <class S>
typename S::value_type path_weight(const Weighting<S>& wt, const Path& p) {
    auto acc = S::one();
    for (int e : p.edges) acc = S::mul(acc, wt.w[e]);
    return acc;
}

// Semiring sum over vertex-disjoint families I -> J of family weights.
template <class S>
typename S::value_type lindstrom_minor(const Weighting<S>& wt, const IndexSet& I, const IndexSet& J,
                                       StateBudget* budget = nullptr) {
    if (I.size() != J.size()) fail(ErrorKind::Usage, "lindstrom_minor: |I| != |J|");
    if (I.empty()) return S::one();
    auto paths = all_paths(*wt.net, budget);
    auto total = S::zero();
    for_each_family(*wt.net, paths, I, J,
                    [&](const std::vector<const Path*>& fam) {
                        auto acc = S::one();
                        for (const Path* p : fam) acc = S::mul(acc, path_weight(wt, *p));
                        total = S::add(total, acc);
                    },
                    budget);
    return total;
}

// Standard-network weighting that is `one` off the essential edges.
template <class S>
Weighting<S> essential_weighting(int n, const std::map<EssentialLabel, typename S::value_type>& values) {
    auto wt = Weighting<S>::identity(standard_network_ptr(n));
    for (const auto& [lab, v] : values) wt.at(lab.l, lab.i) = v;
    return wt;
}

}  // namespace hornlab
