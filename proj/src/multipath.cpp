#include "hornlab/multipath.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hornlab {

std::vector<Alpha> simplex_points(int n, int k) {
    std::vector<Alpha> out;
    Alpha cur(k, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, n);
    return out;
}

bool in_simplex(const Alpha& a, int n) {
    int s = 0;
    for (int v : a) {
        if (v < 0 || v > n) return false;
        s += v;
    }
    return s <= n;
}

bool on_simplex_edges(const Alpha& a, int n) {
    int s = std::accumulate(a.begin(), a.end(), 0);
    int nz = (n - s) != 0;
    for (int v : a) nz += v != 0;
    return nz <= 2;
}

std::string alpha_text(const Alpha& a) {
    bool small = std::all_of(a.begin(), a.end(), [](int v) { return v >= 0 && v <= 9; });
    std::string s;
    if (small) {
        for (int v : a) s += static_cast<char>('0' + v);
        return s;
    }
    s = "(";
    for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

MFunction::MFunction(int n, int k) : n_(n), k_(k) {
    if (n < 0 || k < 1) fail(ErrorKind::Usage, "MFunction needs n >= 0, k >= 1");
    for (const auto& a : simplex_points(n, k)) values_.emplace(a, Trop(0));
}

const Trop& MFunction::at(const Alpha& a) const {
    auto it = values_.find(a);
    if (it == values_.end()) fail(ErrorKind::Usage, "index " + alpha_text(a) + " outside the simplex");
    return it->second;
}

Trop& MFunction::at(const Alpha& a) { return const_cast<Trop&>(static_cast<const MFunction*>(this)->at(a)); }

std::map<Alpha, Trop> boundary(const MFunction& m) {
    std::map<Alpha, Trop> out;
    for (const auto& [a, v] : m.values())
        if (on_simplex_edges(a, m.n())) out.emplace(a, v);
    return out;
}

// ---------------------------------------------------------------- engine

MultipathEngine::MultipathEngine(std::vector<TropWeighting> ws, std::uint64_t cap) : ws_(std::move(ws)), budget_(cap) {
    if (ws_.empty()) fail(ErrorKind::Usage, "need at least one weighting");
    n_ = ws_.front().net->rank();
    for (const auto& w : ws_) {
        if (w.net->rank() != n_) fail(ErrorKind::Usage, "weightings must share the rank");
        paths_.push_back(all_paths(*w.net, &budget_));
    }
}

const std::vector<MultipathEngine::Family>& MultipathEngine::families(int t, const IndexSet& in, const IndexSet& out) {
    auto key = std::make_tuple(t, in, out);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Family> fams;
    const auto& w = ws_[t];
    for_each_family(
        *w.net, paths_[t], in, out,
        [&](const std::vector<const Path*>& f) {
            Trop acc(0);
            for (const Path* p : f) acc = trop_mul(acc, path_weight(w, *p));
            fams.push_back({acc, f});
        },
        &budget_);
    return cache_.emplace(key, std::move(fams)).first->second;
}

const MultipathEngine::Family* MultipathEngine::best_family(int t, const IndexSet& in, const IndexSet& out) {
    auto key = std::make_tuple(t, in, out);
    auto it = best_.find(key);
    const auto& fams = families(t, in, out);
    if (it == best_.end()) {
        int b = -1;
        for (size_t i = 0; i < fams.size(); ++i)
            if (b < 0 || fams[i].weight > fams[b].weight) b = static_cast<int>(i);
        it = best_.emplace(key, b).first;
    }
    return it->second < 0 ? nullptr : &fams[it->second];
}

void MultipathEngine::check_alpha(const Alpha& alpha) const {
    if (static_cast<int>(alpha.size()) != factors())
        fail(ErrorKind::Usage, "alpha has " + std::to_string(alpha.size()) + " entries, expected " +
                                   std::to_string(factors()));
    if (!in_simplex(alpha, n_)) fail(ErrorKind::Usage, "alpha " + alpha_text(alpha) + " outside the simplex");
}

template <class F>
void MultipathEngine::chains(const Alpha& alpha, const MultipathConstraint& c, F&& visit) {
    const int k = factors();
    std::vector<int> rest(k + 1, 0);  // rest[t] = Σ_{s>t} α_s (1-based t)
    for (int t = k - 1; t >= 0; --t) rest[t] = rest[t + 1] + alpha[t];
    auto choices = [&](const std::optional<IndexSet>& fixed, int size) {
        if (fixed) {
            if (static_cast<int>(fixed->size()) != size) return std::vector<IndexSet>{};
            return std::vector<IndexSet>{*fixed};
        }
        return subsets(n_, size);
    };
    std::vector<IndexSet> L(k + 1), J(k + 1);
    std::function<void(int)> rec = [&](int t) {  // choose J_t, L_t for factor t (1-based)
        budget_.tick();
        if (t > k) {
            visit(L, J);
            return;
        }
        std::optional<IndexSet> fixedJ;
        if (static_cast<int>(c.sinks.size()) >= t) fixedJ = c.sinks[t - 1];
        for (const IndexSet& Jt : choices(fixedJ, alpha[t - 1])) {
            for (const IndexSet& Lt : subsets(n_, rest[t])) {
                if (!disjoint(Jt, Lt)) continue;
                IndexSet out = set_union(Jt, Lt);
                if (!best_family(t - 1, L[t - 1], out)) continue;
                J[t] = Jt;
                L[t] = Lt;
                rec(t + 1);
            }
        }
    };
    for (const IndexSet& L0 : choices(c.sources, rest[0])) {
        L[0] = L0;
        rec(1);
    }
}

std::vector<Multipath> MultipathEngine::enumerate(const Alpha& alpha, const MultipathConstraint& c) {
    check_alpha(alpha);
    const int k = factors();
    std::vector<Multipath> out;
    chains(alpha, c, [&](const std::vector<IndexSet>& L, const std::vector<IndexSet>& J) {
        std::vector<const std::vector<Family>*> per(k);
        for (int t = 1; t <= k; ++t) per[t - 1] = &families(t - 1, L[t - 1], set_union(J[t], L[t]));
        std::vector<size_t> idx(k, 0);
        while (true) {
            budget_.tick();
            Multipath mp;
            mp.sources = L[0];
            Trop wsum(0);
            for (int t = 1; t <= k; ++t) {
                mp.sinks.push_back(J[t]);
                mp.through.push_back(L[t]);
                const Family& f = (*per[t - 1])[idx[t - 1]];
                wsum = trop_mul(wsum, f.weight);
                std::vector<Path> pieces;
                for (const Path* p : f.paths) pieces.push_back(*p);
                mp.pieces.push_back(std::move(pieces));
            }
            mp.weight = wsum;
            out.push_back(std::move(mp));
            int t = k - 1;
            while (t >= 0 && ++idx[t] == per[t]->size()) idx[t--] = 0;
            if (t < 0) break;
        }
    });
    return out;
}

std::pair<Trop, std::optional<Multipath>> MultipathEngine::best(const Alpha& alpha, const MultipathConstraint& c) {
    check_alpha(alpha);
    const int k = factors();
    Trop bw = Trop::neg_inf();
    std::vector<IndexSet> bkey, bL, bJ;
    bool found = false;
    chains(alpha, c, [&](const std::vector<IndexSet>& L, const std::vector<IndexSet>& J) {
        Trop w(0);
        for (int t = 1; t <= k; ++t) w = trop_mul(w, best_family(t - 1, L[t - 1], set_union(J[t], L[t]))->weight);
        std::vector<IndexSet> key(J.begin() + 1, J.end());
        key.insert(key.end(), L.begin(), L.end() - 1);
        if (!found || w > bw || (w == bw && key < bkey)) {
            found = true;
            bw = w;
            bkey = key;
            bL = L;
            bJ = J;
        }
    });
    if (!found) return {Trop::neg_inf(), std::nullopt};
    Multipath mp;
    mp.sources = bL[0];
    mp.weight = bw;
    for (int t = 1; t <= k; ++t) {
        mp.sinks.push_back(bJ[t]);
        mp.through.push_back(bL[t]);
        std::vector<Path> pieces;
        for (const Path* p : best_family(t - 1, bL[t - 1], set_union(bJ[t], bL[t]))->paths) pieces.push_back(*p);
        mp.pieces.push_back(std::move(pieces));
    }
    return {bw, std::move(mp)};
}

std::vector<std::pair<Multipath, Trop>> enumerate_multipaths(const std::vector<TropWeighting>& ws, const Alpha& alpha,
                                                             std::uint64_t cap) {
    MultipathEngine eng(ws, cap);
    std::vector<std::pair<Multipath, Trop>> out;
    for (auto& mp : eng.enumerate(alpha)) {
        Trop w = mp.weight;
        out.emplace_back(std::move(mp), w);
    }
    return out;
}

Trop m_alpha(const std::vector<TropWeighting>& ws, const Alpha& alpha, std::uint64_t cap) {
    MultipathEngine eng(ws, cap);
    return eng.best(alpha).first;
}

MFunction m_map_serial(const std::vector<TropWeighting>& ws, std::uint64_t cap) {
    MultipathEngine eng(ws, cap);
    MFunction m(eng.rank(), eng.factors());
    for (const auto& a : simplex_points(eng.rank(), eng.factors())) m.at(a) = eng.best(a).first;
    return m;
}

MFunction m_map(const std::vector<TropWeighting>& ws, std::uint64_t cap) {
#ifdef _OPENMP
    if (omp_get_max_threads() > 1) {
        if (ws.empty()) fail(ErrorKind::Usage, "need at least one weighting");
        const int n = ws.front().net->rank(), k = static_cast<int>(ws.size());
        auto pts = simplex_points(n, k);
        std::vector<Trop> vals(pts.size());
        std::exception_ptr err;
#pragma omp parallel
        {
            try {
                MultipathEngine eng(ws, cap);
#pragma omp for schedule(static)
                for (long i = 0; i < static_cast<long>(pts.size()); ++i) vals[i] = eng.best(pts[i]).first;
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        MFunction m(n, k);
        for (size_t i = 0; i < pts.size(); ++i) m.at(pts[i]) = vals[i];
        return m;
    }
#endif
    return m_map_serial(ws, cap);
}

Trop m_alpha_by_minors(const std::vector<TropWeighting>& ws, const Alpha& alpha, std::uint64_t cap) {
    if (ws.empty()) fail(ErrorKind::Usage, "need at least one weighting");
    const int n = ws.front().net->rank(), k = static_cast<int>(ws.size());
    if (static_cast<int>(alpha.size()) != k || !in_simplex(alpha, n)) fail(ErrorKind::Usage, "bad alpha");
    StateBudget budget(cap);
    int total = std::accumulate(alpha.begin(), alpha.end(), 0);
    // frontier: L_{t} -> best value of the chain so far
    std::map<IndexSet, Trop> front;
    for (const auto& L0 : subsets(n, total)) front[L0] = Trop(0);
    int rest = total;
    for (int t = 0; t < k; ++t) {
        rest -= alpha[t];
        std::map<IndexSet, Trop> next;
        for (const auto& [Lin, v] : front)
            for (const auto& Jt : subsets(n, alpha[t]))
                for (const auto& Lt : subsets(n, rest)) {
                    if (!disjoint(Jt, Lt)) continue;
                    Trop minor = lindstrom_minor(ws[t], Lin, set_union(Jt, Lt), &budget);
                    Trop cand = trop_mul(v, minor);
                    auto it = next.find(Lt);
                    if (it == next.end())
                        next.emplace(Lt, cand);
                    else
                        it->second = trop_add(it->second, cand);
                }
        front = std::move(next);
    }
    auto it = front.find(IndexSet{});
    return it == front.end() ? Trop::neg_inf() : it->second;
}

std::vector<Trop> family_maxima(const TropWeighting& w, std::uint64_t cap) {
    const int n = w.net->rank();
    StateBudget budget(cap);
    auto paths = all_paths(*w.net, &budget);
    std::vector<Trop> m(n + 1, Trop::neg_inf());
    m[0] = Trop(0);
    for (int l = 1; l <= n; ++l)
        for (const auto& I : subsets(n, l))
            for (const auto& J : subsets(n, l))
                for_each_family(
                    *w.net, paths, I, J,
                    [&](const std::vector<const Path*>& f) {
                        Trop acc(0);
                        for (const Path* p : f) acc = trop_mul(acc, path_weight(w, *p));
                        m[l] = trop_add(m[l], acc);
                    },
                    &budget);
    return std::vector<Trop>(m.begin() + 1, m.end());
}

std::vector<Trop> tropical_singular_values(const TropWeighting& w, std::uint64_t cap) {
    auto m = family_maxima(w, cap);
    std::vector<Trop> lam;
    Trop prev(0);
    for (const Trop& v : m) {
        if (!v.finite() || !prev.finite())
            lam.push_back(Trop::neg_inf());
        else
            lam.push_back(Trop(Rational(v.value() - prev.value())));
        prev = v;
    }
    return lam;
}

// ---------------------------------------------------------------- calA

const std::vector<int>& alpha_family_edges(int n, int i, int l) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<int>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, i, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (!(1 <= i && i <= l && l <= n)) fail(ErrorKind::Usage, "alpha family index out of range");
    const PlanarNetwork& net = *standard_network_ptr(n);
    auto paths = all_paths(net);
    std::vector<int> edges;
    int count = 0;
    for_each_family(net, paths, interval(l - i + 1, l), interval(1, i), [&](const std::vector<const Path*>& f) {
        ++count;
        edges.clear();
        for (const Path* p : f) edges.insert(edges.end(), p->edges.begin(), p->edges.end());
    });
    if (count != 1) fail(ErrorKind::Domain, "alpha family is not unique");
    std::sort(edges.begin(), edges.end());
    return cache.emplace(key, edges).first->second;
}

namespace {
void require_standard(const PlanarNetwork& net) {
    auto ref = standard_network_ptr(net.rank());
    if (&net == ref.get()) return;
    if (net.num_edges() != ref->num_edges() || net.labels() != ref->labels())
        fail(ErrorKind::Usage, "weighting is not on the standard network");
}
}  // namespace

GZPattern calA(const TropWeighting& w) {
    require_standard(*w.net);
    const int n = w.net->rank();
    GZPattern p(n);
    for (int l = 1; l <= n; ++l)
        for (int i = 1; i <= l; ++i) {
            Trop acc(0);
            for (int e : alpha_family_edges(n, i, l)) acc = trop_mul(acc, w[e]);
            p.at(i, l) = acc;
        }
    return p;
}

TropWeighting calA_inverse(const GZPattern& p) {
    const int n = p.n();
    if (!p.all_finite()) fail(ErrorKind::Domain, "calA_inverse needs finite entries");
    auto net = standard_network_ptr(n);
    auto w = TropWeighting::identity(net);
    std::vector<char> set(net->num_edges(), 0);
    for (int l = 1; l <= n; ++l)
        for (int i = 1; i <= l; ++i) {
            int target = net->essential_edge(l, i);
            Rational v = p.at(i, l).value();
            for (int e : alpha_family_edges(n, i, l)) {
                if (e == target || !net->label(e)) continue;
                if (!set[e]) fail(ErrorKind::Domain, "calA is not triangular in (l,i)-lex order");
                v -= w[e].value();
            }
            w[target] = Trop(v);
            set[target] = 1;
        }
    return w;
}

MultiGZReport check_multi_gz(const std::vector<TropWeighting>& ws, std::uint64_t cap) {
    MultipathEngine eng(ws, cap);
    const int n = eng.rank(), k = eng.factors();
    MultiGZReport rep;
    for (const auto& a : simplex_points(n, k)) {
        int total = std::accumulate(a.begin(), a.end(), 0);
        if (total == 0) continue;
        MultipathConstraint c;
        c.sources = interval(n - total + 1, n);
        for (int t = 0; t < k; ++t) c.sinks.push_back(interval(1, a[t]));
        Trop full = eng.best(a).first;
        Trop con = eng.best(a, c).first;
        if (con != full) {
            rep.ok = false;
            rep.failing = a;
            rep.constrained = con;
            rep.unconstrained = full;
            return rep;
        }
    }
    return rep;
}

GZPattern random_gz_pattern(int n, Rng& rng, long lo, long hi) {
    std::vector<std::vector<long>> lam(n + 1);
    lam[n].assign(n + 1, 0);
    std::vector<long> top;
    for (int i = 0; i < n; ++i) top.push_back(rng.uniform_int(lo, hi));
    std::sort(top.rbegin(), top.rend());
    for (int i = 1; i <= n; ++i) lam[n][i] = top[i - 1];
    for (int l = n - 1; l >= 1; --l) {
        lam[l].assign(l + 1, 0);
        for (int i = 1; i <= l; ++i) lam[l][i] = rng.uniform_int(lam[l + 1][i + 1], lam[l + 1][i]);
    }
    GZPattern p(n);
    for (int l = 1; l <= n; ++l) {
        long s = 0;
        for (int i = 1; i <= l; ++i) {
            s += lam[l][i];
            p.at(i, l) = Trop(s);
        }
    }
    return p;
}

TropWeighting random_weighting(NetworkPtr net, Rng& rng, long lo, long hi) {
    std::vector<Trop> w;
    for (int e = 0; e < net->num_edges(); ++e) w.push_back(Trop(rng.uniform_int(lo, hi)));
    return TropWeighting(std::move(net), std::move(w));
}

TropWeighting random_essential_weighting(int n, Rng& rng, long lo, long hi) {
    auto w = TropWeighting::identity(standard_network_ptr(n));
    for (int e : w.net->essential_edges()) w[e] = Trop(rng.uniform_int(lo, hi));
    return w;
}

}  // namespace hornlab
