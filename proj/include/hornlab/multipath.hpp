#pragma once

#include "hornlab/network.hpp"

#include <map>
#include <optional>

namespace hornlab {

using Alpha = std::vector<int>;

// Integer points of Δ^k(n), lexicographic.
std::vector<Alpha> simplex_points(int n, int k);
bool in_simplex(const Alpha& a, int n);
// Points with at most two nonzero barycentric coordinates (n - Σα, α_1, ..., α_k).
bool on_simplex_edges(const Alpha& a, int n);
std::string alpha_text(const Alpha& a);  // "101" for small entries, "(1,0,1)" otherwise

class MFunction {
public:
    MFunction() = default;
    MFunction(int n, int k);  // all zero

    int n() const { return n_; }
    int k() const { return k_; }
    const Trop& at(const Alpha& a) const;
    Trop& at(const Alpha& a);
    const Trop& operator()(int i, int j, int k) const { return at({i, j, k}); }
    Trop& operator()(int i, int j, int k) { return at({i, j, k}); }
    bool contains(const Alpha& a) const { return values_.count(a) > 0; }
    const std::map<Alpha, Trop>& values() const { return values_; }

    friend bool operator==(const MFunction&, const MFunction&) = default;

private:
    int n_ = 0, k_ = 0;
    std::map<Alpha, Trop> values_;
};

// Restriction to ∂Δ^k(n).
std::map<Alpha, Trop> boundary(const MFunction& m);

struct Multipath {
    IndexSet sources;                        // L_0, labels of the first factor
    std::vector<IndexSet> sinks;             // J_t: seam-t labels where the α_t paths end
    std::vector<IndexSet> through;           // L_t: seam-t labels of continuing paths (L_k = ∅)
    std::vector<std::vector<Path>> pieces;   // per factor, the path pieces inside it
    Trop weight;
};

// Optional restriction of sources / per-factor sinks.
struct MultipathConstraint {
    std::optional<IndexSet> sources;
    std::vector<std::optional<IndexSet>> sinks;  // empty = unconstrained
};

// Chain search over per-factor path families.  Families of each factor are enumerated once
// per (entering set, leaving set) and cached, so one engine serves a whole m_map.
class MultipathEngine {
public:
    explicit MultipathEngine(std::vector<TropWeighting> ws, std::uint64_t cap = default_state_cap());

    int rank() const { return n_; }
    int factors() const { return static_cast<int>(ws_.size()); }

    std::vector<Multipath> enumerate(const Alpha& alpha, const MultipathConstraint& c = {});
    // Maximal weight and a witness: among maximal multipaths the one with the smallest
    // (J_1, ..., J_k, L_0, ..., L_{k-1}); inside a factor the first maximal family found.
    std::pair<Trop, std::optional<Multipath>> best(const Alpha& alpha, const MultipathConstraint& c = {});

    std::uint64_t states_used() const { return budget_.used(); }

private:
    struct Family {
        Trop weight;
        std::vector<const Path*> paths;
    };
    const std::vector<Family>& families(int t, const IndexSet& in, const IndexSet& out);
    const Family* best_family(int t, const IndexSet& in, const IndexSet& out);
    void check_alpha(const Alpha& alpha) const;
    template <class F>
    void chains(const Alpha& alpha, const MultipathConstraint& c, F&& visit);

    int n_ = 0;
    std::vector<TropWeighting> ws_;
    std::vector<std::vector<std::vector<Path>>> paths_;  // per factor, by source
    std::map<std::tuple<int, IndexSet, IndexSet>, std::vector<Family>> cache_;
    std::map<std::tuple<int, IndexSet, IndexSet>, int> best_;  // index into cache_, -1 if none
    StateBudget budget_;
};

std::vector<std::pair<Multipath, Trop>> enumerate_multipaths(const std::vector<TropWeighting>& ws, const Alpha& alpha,
                                                             std::uint64_t cap = default_state_cap());
Trop m_alpha(const std::vector<TropWeighting>& ws, const Alpha& alpha, std::uint64_t cap = default_state_cap());
MFunction m_map(const std::vector<TropWeighting>& ws, std::uint64_t cap = default_state_cap());
MFunction m_map_serial(const std::vector<TropWeighting>& ws, std::uint64_t cap = default_state_cap());

// Determinant route: max over chains L_0 -> ... -> L_k of sums of tropical Lindström minors.
Trop m_alpha_by_minors(const std::vector<TropWeighting>& ws, const Alpha& alpha,
                       std::uint64_t cap = default_state_cap());

// λ_l = m_l - m_{l-1} with m_l the best l-family weight; once m_l = -inf every later λ is -inf.
std::vector<Trop> tropical_singular_values(const TropWeighting& w, std::uint64_t cap = default_state_cap());
// Partial sums m_1..m_n of the same data.
std::vector<Trop> family_maxima(const TropWeighting& w, std::uint64_t cap = default_state_cap());

// Weight of α_i^{(l)}: sources [l-i+1,l], sinks [1,i] of Π_st(n).
GZPattern calA(const TropWeighting& w);
// Essential weighting on Π_st(n) with calA(w) = p (finite entries).
TropWeighting calA_inverse(const GZPattern& p);
// Edges of α_i^{(l)} on Π_st(n), cached per n.
const std::vector<int>& alpha_family_edges(int n, int i, int l);

// Integer interlacing pattern: sorted top row in [lo, hi], lower rows uniform in their intervals.
GZPattern random_gz_pattern(int n, Rng& rng, long lo, long hi);
// Integer weights in [lo, hi] on every edge.
TropWeighting random_weighting(NetworkPtr net, Rng& rng, long lo, long hi);
// Integer weights in [lo, hi] on the essential edges of Π_st(n), 0 elsewhere.
TropWeighting random_essential_weighting(int n, Rng& rng, long lo, long hi);

struct MultiGZReport {
    bool ok = true;
    Alpha failing;  // first α where the constrained maximum falls short
    Trop constrained, unconstrained;
};
MultiGZReport check_multi_gz(const std::vector<TropWeighting>& ws, std::uint64_t cap = default_state_cap());

}  // namespace hornlab
