#include "hornlab/reconstruct.hpp"

#include <algorithm>
#include <mutex>

namespace hornlab {

namespace {

const Rational& fin(const TwoFaceData& x, const Alpha& a) {
    auto it = x.find(a);
    if (it == x.end()) fail(ErrorKind::Usage, "two-face data is missing m_" + alpha_text(a));
    if (!it->second.finite()) fail(ErrorKind::Domain, "two-face data must be finite (m_" + alpha_text(a) + ")");
    return it->second.value();
}

}  // namespace

std::vector<Alpha> two_face_domain(int n) {
    std::vector<Alpha> out;
    for (const auto& a : simplex_points(n, 3))
        if ((a[1] == 0 || a[0] + a[1] + a[2] == n) && a != Alpha{0, 0, 0}) out.push_back(a);
    return out;
}

TwoFaceData two_faces(const MFunction& m) {
    TwoFaceData x;
    x[{0, 0, 0}] = m(0, 0, 0);
    for (const auto& a : two_face_domain(m.n())) x[a] = m.at(a);
    return x;
}

int c_edge(const PlanarNetwork& net, int j, CPlacement placement) {
    int v = placement == CPlacement::SourceAdjacent ? net.source(j) : net.sink(j);
    const auto& es = placement == CPlacement::SourceAdjacent ? net.out_edges(v) : net.in_edges(v);
    for (int e : es) {
        const auto& ed = net.edges()[e];
        if (net.vertices()[ed.tail].y == net.vertices()[ed.head].y) return e;
    }
    fail(ErrorKind::Domain, "line " + std::to_string(j) + " has no horizontal end edge");
}

WeightTriple make_triple(const TropWeighting& a, const TropWeighting& b, const std::vector<Trop>& c,
                         CPlacement placement) {
    const int n = a.net->rank();
    if (static_cast<int>(c.size()) != n) fail(ErrorKind::Usage, "need n values for c");
    WeightTriple w{a, b, TropWeighting::identity(standard_network_ptr(n))};
    for (int j = 1; j <= n; ++j) w.c[c_edge(*w.c.net, j, placement)] = c[j - 1];
    return w;
}

std::vector<Trop> c_values(const WeightTriple& w, CPlacement placement) {
    std::vector<Trop> c;
    for (int j = 1; j <= w.c.net->rank(); ++j) c.push_back(w.c[c_edge(*w.c.net, j, placement)]);
    return c;
}

const Multipath& beta_multipath(int n, const Alpha& index) {
    static std::mutex mu;
    static std::map<std::pair<int, Alpha>, Multipath> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, index);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (index.size() != 3 || !in_simplex(index, n) || !(index[1] == 0 || index[0] + index[1] + index[2] == n))
        fail(ErrorKind::Usage, "beta index " + alpha_text(index) + " is not in the two-face domain");
    auto zero = TropWeighting::identity(standard_network_ptr(n));
    MultipathEngine eng({zero, zero, zero});
    const int total = index[0] + index[1] + index[2];
    MultipathConstraint c;
    c.sources = interval(n - total + 1, n);
    c.sinks = {interval(1, index[0]), interval(1, index[1]), interval(n - index[2] + 1, n)};
    auto all = eng.enumerate(index, c);
    if (all.size() != 1)
        fail(ErrorKind::Domain, "beta_" + alpha_text(index) + " has " + std::to_string(all.size()) + " multipaths");
    return cache.emplace(key, std::move(all.front())).first->second;
}

TwoFaceData beta_map(const WeightTriple& w) {
    const int n = w.a.net->rank();
    auto fs = w.factors();
    TwoFaceData x;
    x[{0, 0, 0}] = Trop(0);
    for (const auto& a : two_face_domain(n)) {
        const Multipath& mp = beta_multipath(n, a);
        Trop acc(0);
        for (int t = 0; t < 3; ++t)
            for (const Path& p : mp.pieces[t]) acc = trop_mul(acc, path_weight(fs[t], p));
        x[a] = acc;
    }
    return x;
}

WeightTriple beta_inverse(const TwoFaceData& x, CPlacement placement) {
    int n = -1;
    for (const auto& [a, v] : x) n = std::max(n, a[0] + a[1] + a[2]);
    if (n < 1) fail(ErrorKind::Usage, "two-face data is empty");
    auto X = [&](int i, int j, int k) -> Rational {
        if (i == 0 && j == 0 && k == 0) return 0;
        return fin(x, {i, j, k});
    };
    std::vector<Rational> c(n + 1), bd(n + 1), ad(n + 1);
    for (int j = 1; j <= n; ++j) {
        c[j] = X(0, j - 1, n - j + 1) - X(0, j, n - j);
        bd[j] = X(j - 1, 0, n - j + 1) - X(j, 0, n - j) - c[j];
        ad[j] = X(0, 0, n - j + 1) - X(0, 0, n - j) - bd[j] - c[j];
    }
    GZPattern pa(n), pb(n);
    for (int l = 1; l <= n; ++l) {
        Rational above_a = 0, above_b = 0, all_a = 0;
        for (int j = l + 1; j <= n; ++j) above_a += ad[j] + bd[j] + c[j], above_b += bd[j] + c[j];
        for (int j = 1; j <= n; ++j) all_a += ad[j];
        for (int i = 1; i <= l; ++i) {
            pa.at(i, l) = Trop(Rational(X(i, 0, n - l) - above_a));
            pb.at(i, l) = Trop(Rational(X(l - i, i, n - l) - all_a - above_b));
        }
    }
    std::vector<Trop> cv;
    for (int j = 1; j <= n; ++j) cv.push_back(Trop(c[j]));
    return make_triple(calA_inverse(pa), calA_inverse(pb), cv, placement);
}

std::vector<std::vector<Rational>> beta_matrix(int n, CPlacement placement) {
    auto net = standard_network_ptr(n);
    auto ess = net->essential_edges();
    const int E = static_cast<int>(ess.size());
    std::vector<int> col_a(net->num_edges(), -1), col_c(net->num_edges(), -1);
    for (int q = 0; q < E; ++q) col_a[ess[q]] = q;
    for (int j = 1; j <= n; ++j) col_c[c_edge(*net, j, placement)] = 2 * E + j - 1;
    std::vector<std::vector<Rational>> M;
    for (const auto& a : two_face_domain(n)) {
        std::vector<Rational> row(2 * E + n, Rational(0));
        const Multipath& mp = beta_multipath(n, a);
        for (int t = 0; t < 3; ++t)
            for (const Path& p : mp.pieces[t])
                for (int e : p.edges) {
                    if (t < 2 && col_a[e] >= 0) row[col_a[e] + t * E] += 1;
                    if (t == 2 && col_c[e] >= 0) row[col_c[e]] += 1;
                }
        M.push_back(std::move(row));
    }
    return M;
}

Reconstruction reconstruct_from_boundary(const TwoFaceData& x, CPlacement placement, std::uint64_t cap) {
    TwoFaceData full = x;
    full[{0, 0, 0}] = Trop(0);
    int n = 0;
    for (const auto& [a, v] : full) n = std::max(n, a[0] + a[1] + a[2]);
    for (const auto& a : two_face_domain(n)) fin(full, a);
    if (full.size() != two_face_domain(n).size() + 1) fail(ErrorKind::Usage, "values outside the two-face domain");
    auto bad = rhombus_check_partial(n, full);
    if (!bad.empty()) {
        std::string msg = std::to_string(bad.size()) + " rhombus inequalities fail on the two faces:";
        for (const auto& r : bad)
            msg += " [long " + alpha_text(r.longd[0]) + "+" + alpha_text(r.longd[1]) + " > short " +
                   alpha_text(r.shortd[0]) + "+" + alpha_text(r.shortd[1]) + "]";
        fail(ErrorKind::Precondition, msg);
    }
    Reconstruction r;
    r.w = beta_inverse(full, placement);
    r.a_gz = gz_check(calA(r.w.a)).ok;
    r.b_gz = gz_check(calA(r.w.b)).ok;
    r.c_gz = gz_check(calA(r.w.c)).ok;
    r.m = m_map(r.w.factors(), cap);
    r.faces_match = two_faces(r.m) == full;
    r.octahedron_ok = octahedron_check(r.m).empty();
    return r;
}

// ---------------------------------------------------------------- n = 2

namespace {
// Π_st(2) edges: 0 bottom-left, 1 a_{1,1}, 2 top-left, 3 a_{2,2}, 4 slant a_{2,1}.
TropWeighting rank2(const Trop& bottom_left, const Trop& slant, const Trop& top_right) {
    auto w = TropWeighting::identity(standard_network_ptr(2));
    const auto& net = *w.net;
    w[c_edge(net, 1, CPlacement::SourceAdjacent)] = bottom_left;
    w[net.essential_edge(2, 1)] = slant;
    w[net.essential_edge(2, 2)] = top_right;
    return w;
}
}  // namespace

std::vector<TropWeighting> n2_construct(const Rational& l1, const Rational& l2, const Rational& l3,
                                        const Rational& l12, const Rational& l23) {
    const Rational l123 = l1 - l2 + l3;
    std::vector<std::string> bad;
    const std::pair<const char*, Rational> vals[] = {{"l1", l1},   {"l2", l2},   {"l3", l3},
                                                     {"l12", l12}, {"l23", l23}, {"l123", l123}};
    for (const auto& [name, v] : vals)
        if (v < 0) bad.push_back(std::string(name) + " < 0");
    auto tri = [&](const char* name, const Rational& a, const Rational& b, const Rational& c) {
        if (c > a + b || a > b + c || b > a + c) bad.push_back(std::string("triangle ") + name);
    };
    tri("(1,2,12)", l1, l2, l12);
    tri("(12,3,123)", l12, l3, l123);
    tri("(1,23,123)", l1, l23, l123);
    tri("(2,3,23)", l2, l3, l23);
    if (l12 + l23 > l1 + l3) bad.push_back("l12 + l23 > l1 + l3");
    if (!bad.empty()) {
        std::string msg = "n2_construct preconditions fail:";
        for (const auto& b : bad) msg += " " + b + ";";
        fail(ErrorKind::Precondition, msg);
    }
    const Rational x = l12 - l2, z = l23 - l2;
    return {rank2(Trop(Rational(-x)), Trop(l1), Trop(x)), rank2(Trop(Rational(-l2)), Trop::neg_inf(), Trop(l2)),
            rank2(Trop(l3), Trop(z), Trop(Rational(-l3)))};
}

std::vector<TropWeighting> n2_realize(const MFunction& m) {
    if (m.n() != 2 || m.k() != 3) fail(ErrorKind::Usage, "n2_realize needs n = 2, k = 3");
    for (const auto& [a, v] : m.values())
        if (!v.finite()) fail(ErrorKind::Domain, "n2_realize needs finite values");
    if (!rhombus_check(m, RhombusScope::All).empty()) fail(ErrorKind::Precondition, "rhombus inequalities fail");
    if (!tetrahedron_check(m).empty()) fail(ErrorKind::Precondition, "tetrahedron equality fails");
    if (octahedron_check(m).empty()) {
        auto r = reconstruct_from_boundary(two_faces(m));
        return r.w.factors();
    }
    auto M = [&](int i, int j, int k) { return m(i, j, k).value(); };
    // shift m_{ijk} by (i+j+k)x1 + (j+k)x2 + k x3 to put the corners at 0
    const Rational x1 = M(2, 0, 0) / 2, x2 = (M(0, 2, 0) - M(2, 0, 0)) / 2, x3 = (M(0, 0, 2) - M(0, 2, 0)) / 2;
    auto N = [&](int i, int j, int k) -> Rational { return M(i, j, k) - (i + j + k) * x1 - (j + k) * x2 - k * x3; };
    auto ws = n2_construct(N(1, 0, 0), N(1, 1, 0), N(0, 1, 1), N(0, 1, 0), N(1, 0, 1));
    const Rational shift[3] = {x1, x2, x3};
    for (int t = 0; t < 3; ++t)
        for (int j = 1; j <= 2; ++j) {
            int e = c_edge(*ws[t].net, j, CPlacement::SinkAdjacent);
            ws[t][e] = trop_mul(ws[t][e], Trop(shift[t]));
        }
    return ws;
}

TwoFaceData random_cone_point(int n, Rng& rng, long range) {
    for (;;) {
        auto pa = random_gz_pattern(n, rng, -range, range);
        auto pb = random_gz_pattern(n, rng, -range, range);
        std::vector<long> cs;
        for (int j = 0; j < n; ++j) cs.push_back(rng.uniform_int(-range, range));
        std::sort(cs.begin(), cs.end());
        std::vector<Trop> c(cs.begin(), cs.end());
        auto x = beta_map(make_triple(calA_inverse(pa), calA_inverse(pb), c, CPlacement::SourceAdjacent));
        if (rhombus_check_partial(n, x).empty()) return x;
    }
}

}  // namespace hornlab
