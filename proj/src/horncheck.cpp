#include "hornlab/horncheck.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>

namespace hornlab {

const std::array<const char*, 6> kHornRowNames = {"A", "B", "C", "AB", "BC", "ABC"};

namespace {

Trop tsub(const Trop& a, const Trop& b) {
    if (!b.finite()) fail(ErrorKind::Domain, "subtracting -inf");
    if (!a.finite()) return a;
    return Trop(Rational(a.value() - b.value()));
}

void require_k3(const MFunction& m, const char* what) {
    if (m.k() != 3) fail(ErrorKind::Usage, std::string(what) + " needs k = 3");
}

}  // namespace

HornTuple horn_tuple(const MFunction& m) {
    require_k3(m, "horn_tuple");
    const int n = m.n();
    HornTuple t;
    t.n = n;
    for (int j = 1; j <= n; ++j) {
        t.rows[kA].push_back(m(j, 0, 0));
        t.rows[kAB].push_back(m(0, j, 0));
        t.rows[kABC].push_back(m(0, 0, j));
        t.rows[kB].push_back(tsub(m(n - j, j, 0), m(n, 0, 0)));
        t.rows[kBC].push_back(tsub(m(n - j, 0, j), m(n, 0, 0)));
        t.rows[kC].push_back(tsub(m(0, n - j, j), m(0, n, 0)));
    }
    return t;
}

bool trace_check(const HornTuple& t) {
    if (t.n == 0) return true;
    for (const auto& r : t.rows)
        if (static_cast<int>(r.size()) != t.n) fail(ErrorKind::Usage, "trace_check: rows must have length n");
    auto last = [&](HornRow r) { return t.rows[r].back(); };
    return trop_mul(last(kA), last(kB)) == last(kAB) && trop_mul(last(kB), last(kC)) == last(kBC) &&
           trop_mul(last(kAB), last(kC)) == last(kABC);
}

// ---------------------------------------------------------------- rhombi

namespace {

// Generator on a d-coordinate barycentric simplex; `embed` maps a barycentric point to an index.
template <class Embed>
void generate_rhombi(int n, int d, Embed embed, std::set<std::vector<Alpha>>& seen, std::vector<RhombusSpec>& out) {
    std::vector<int> y(d, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d - 1) {
            y[pos] = left;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    for (int c = b + 1; c < d; ++c) {
                        if (b == a || c == a) continue;
                        auto v1 = y, v2 = y, v3 = y;
                        v1[a] -= 1, v1[b] += 1;
                        v2[a] -= 1, v2[c] += 1;
                        v3[a] -= 2, v3[b] += 1, v3[c] += 1;
                        if (v3[a] < 0) continue;
                        RhombusSpec r;
                        r.longd[0] = embed(y);
                        r.longd[1] = embed(v3);
                        r.shortd[0] = embed(v1);
                        r.shortd[1] = embed(v2);
                        std::vector<Alpha> key{r.longd[0], r.longd[1], r.shortd[0], r.shortd[1]};
                        std::sort(key.begin(), key.end());
                        if (seen.insert(key).second) out.push_back(r);
                    }
            return;
        }
        for (int v = 0; v <= left; ++v) {
            y[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
}

}  // namespace

const std::vector<RhombusSpec>& enumerate_rhombi(int n, int k, RhombusScope scope) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<RhombusSpec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, k, static_cast<int>(scope));
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<RhombusSpec> out;
    std::set<std::vector<Alpha>> seen;
    if (scope == RhombusScope::All) {
        if (k != 3) fail(ErrorKind::Usage, "all-plane rhombi need k = 3");
        generate_rhombi(n, 4, [](const std::vector<int>& b) { return Alpha{b[1], b[2], b[3]}; }, seen, out);
    } else {
        if (k < 2) fail(ErrorKind::Usage, "face rhombi need k >= 2");
        for (int l = 0; l <= k - 2; ++l)
            generate_rhombi(
                n, 3,
                [&](const std::vector<int>& b) {
                    Alpha a(k, 0);
                    a[l] = b[1];
                    a[l + 1] = b[2];
                    return a;
                },
                seen, out);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

namespace {
bool evaluate(RhombusSpec& r, const std::function<const Trop*(const Alpha&)>& get) {
    const Trop *l0 = get(r.longd[0]), *l1 = get(r.longd[1]), *s0 = get(r.shortd[0]), *s1 = get(r.shortd[1]);
    if (!l0 || !l1 || !s0 || !s1) return true;  // not fully supported
    r.long_sum = trop_mul(*l0, *l1);
    r.short_sum = trop_mul(*s0, *s1);
    return !(r.short_sum < r.long_sum);
}
}  // namespace

std::vector<RhombusSpec> rhombus_check(const MFunction& m, RhombusScope scope) {
    std::vector<RhombusSpec> bad;
    for (RhombusSpec r : enumerate_rhombi(m.n(), m.k(), scope))
        if (!evaluate(r, [&](const Alpha& a) { return &m.at(a); })) bad.push_back(r);
    return bad;
}

std::vector<RhombusSpec> rhombus_check_partial(int n, const std::map<Alpha, Trop>& values) {
    std::vector<RhombusSpec> bad;
    for (RhombusSpec r : enumerate_rhombi(n, 3, RhombusScope::All))
        if (!evaluate(r, [&](const Alpha& a) -> const Trop* {
                auto it = values.find(a);
                return it == values.end() ? nullptr : &it->second;
            }))
            bad.push_back(r);
    return bad;
}

// ---------------------------------------------------------------- tetrahedra / octahedra

namespace {
template <class Pred>
std::vector<TetrahedronSpec> scan_tetrahedra(const MFunction& m, Pred violated) {
    require_k3(m, "tetrahedron scan");
    std::vector<TetrahedronSpec> bad;
    const int n = m.n();
    for (int i = 0; i + 2 <= n; ++i)
        for (int j = 0; i + j + 2 <= n; ++j)
            for (int k = 0; i + j + k + 2 <= n; ++k) {
                TetrahedronSpec t{i, j, k, trop_mul(m(i, j, k + 1), m(i + 1, j + 1, k)),
                                  trop_mul(m(i, j + 1, k), m(i + 1, j, k + 1)),
                                  trop_mul(m(i + 1, j, k), m(i, j + 1, k + 1))};
                if (violated(t)) bad.push_back(t);
            }
    return bad;
}
}  // namespace

std::vector<TetrahedronSpec> tetrahedron_check(const MFunction& m) {
    return scan_tetrahedra(m, [](const TetrahedronSpec& t) {
        Trop top = std::max({t.A, t.B, t.C});
        return (t.A == top) + (t.B == top) + (t.C == top) < 2;
    });
}

std::vector<TetrahedronSpec> octahedron_check(const MFunction& m) {
    return scan_tetrahedra(m, [](const TetrahedronSpec& t) { return t.B != trop_add(t.A, t.C); });
}

// ---------------------------------------------------------------- fill

bool in_fill_input(const Alpha& a, int n, FillDirection d) {
    const int s = a[0] + a[1] + a[2];
    if (d == FillDirection::FromJ0AndTop) return a[1] == 0 || s == n;
    return a[2] == 0 || a[0] == 0;
}

std::map<Alpha, Trop> fill_input_faces(const MFunction& m, FillDirection d) {
    require_k3(m, "fill_input_faces");
    std::map<Alpha, Trop> out;
    for (const auto& [a, v] : m.values())
        if (in_fill_input(a, m.n(), d)) out.emplace(a, v);
    return out;
}

MFunction octahedron_fill(int n, const std::map<Alpha, Trop>& faces, FillDirection d) {
    MFunction m(n, 3);
    for (const auto& a : simplex_points(n, 3)) {
        if (!in_fill_input(a, n, d)) continue;
        auto it = faces.find(a);
        if (it == faces.end()) fail(ErrorKind::Usage, "fill input is missing m_" + alpha_text(a));
        m.at(a) = it->second;
    }
    if (m.at({0, 0, 0}) != Trop(0)) fail(ErrorKind::Precondition, "m_000 must be 0");
    std::map<Alpha, Trop> given;
    for (const auto& [a, v] : m.values())
        if (in_fill_input(a, n, d)) given.emplace(a, v);
    auto bad = rhombus_check_partial(n, given);
    if (!bad.empty()) {
        std::string msg = "input faces violate " + std::to_string(bad.size()) + " rhombus inequalities, first: long {" +
                          alpha_text(bad[0].longd[0]) + "," + alpha_text(bad[0].longd[1]) + "} short {" +
                          alpha_text(bad[0].shortd[0]) + "," + alpha_text(bad[0].shortd[1]) + "}";
        fail(ErrorKind::Precondition, msg);
    }
    auto solve = [&](const Trop& a, const Trop& c, const Trop& div) {
        if (!div.finite()) fail(ErrorKind::Domain, "octahedron fill divides by -inf");
        return tsub(trop_add(a, c), div);
    };
    if (d == FillDirection::FromJ0AndTop) {
        // layer j+1 from layer j; inside a layer by decreasing i+k
        for (int j = 0; j + 2 <= n; ++j)
            for (int s = n - j - 2; s >= 0; --s)
                for (int i = 0; i <= s; ++i) {
                    int k = s - i;
                    Trop A = trop_mul(m(i, j, k + 1), m(i + 1, j + 1, k));
                    Trop C = trop_mul(m(i + 1, j, k), m(i, j + 1, k + 1));
                    m(i, j + 1, k) = solve(A, C, m(i + 1, j, k + 1));
                }
    } else {
        // by increasing i+k of the solved point
        for (int s = 0; s + 2 <= n; ++s)
            for (int i = 0; i <= s; ++i) {
                int k = s - i;
                for (int j = 0; i + j + k + 2 <= n; ++j) {
                    Trop A = trop_mul(m(i, j, k + 1), m(i + 1, j + 1, k));
                    Trop C = trop_mul(m(i + 1, j, k), m(i, j + 1, k + 1));
                    m(i + 1, j, k + 1) = solve(A, C, m(i, j + 1, k));
                }
            }
    }
    return m;
}

// ---------------------------------------------------------------- potentials

Trop trop_potential_phi_k(const MFunction& m) {
    const int n = m.n(), k = m.k();
    if (k < 2) fail(ErrorKind::Usage, "phi_k needs k >= 2");
    Trop best = Trop::neg_inf();
    for (int l = 0; l <= k - 2; ++l) {
        auto M = [&](int i, int j) -> const Rational& {
            Alpha a(k, 0);
            a[l] = i;
            a[l + 1] = j;
            const Trop& v = m.at(a);
            if (!v.finite()) fail(ErrorKind::Domain, "phi_k needs finite values (m_" + alpha_text(a) + " = -inf)");
            return v.value();
        };
        auto take = [&](const Rational& v) { best = trop_add(best, Trop(v)); };
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                if (j >= 1 && i + j + 1 <= n) take(M(i, j - 1) - M(i, j) + M(i + 1, j) - M(i + 1, j - 1));
                if (i >= 1 && j >= 1 && i + j <= n) take(M(i, j - 1) - M(i, j) + M(i - 1, j + 1) - M(i - 1, j));
                if (i >= 1 && i + j + 1 <= n) take(M(i - 1, j + 1) - M(i, j + 1) + M(i + 1, j) - M(i, j));
            }
    }
    return best;
}

Trop trop_potential_bk(const GZPattern& p) {
    auto lam = interlacing_values(p);
    const int n = p.n();
    Trop best = Trop::neg_inf();
    for (int i = 0; i <= n - 1; ++i)
        for (int j = 1; i + j < n; ++j) best = trop_add(best, Trop(Rational(lam[n - i - 1][j] - lam[n - i][j])));
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; i + j <= n; ++j) best = trop_add(best, Trop(Rational(lam[n - i + 1][j + 1] - lam[n - i][j])));
    return best;
}

CheckReport check_all(const MFunction& m, RhombusScope scope) {
    CheckReport r;
    r.trace = trace_check(horn_tuple(m));
    r.rhombi = rhombus_check(m, scope);
    if (m.n() >= 2) {
        r.tetrahedra = tetrahedron_check(m);
        r.octahedra = octahedron_check(m);
    }
    return r;
}

}  // namespace hornlab
