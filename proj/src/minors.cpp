#include "hornlab/minors.hpp"

#include <algorithm>
#include <numeric>

namespace hornlab {

RationalMatrix::RationalMatrix(int rows, int cols)
    : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
    if (rows < 0 || cols < 0) fail(ErrorKind::Usage, "negative matrix size");
}

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    RationalMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) fail(ErrorKind::Usage, "ragged matrix rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::Usage, "matrix product size mismatch");
    RationalMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int l = 0; l < a.cols(); ++l) {
            if (sgn(a(i, l)) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
        }
    return c;
}

RationalMatrix transpose(const RationalMatrix& a) {
    RationalMatrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

RationalMatrix inverse(const RationalMatrix& a) {
    if (!a.square()) fail(ErrorKind::Usage, "inverse of a non-square matrix");
    const int n = a.rows();
    RationalMatrix m = a, inv = RationalMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) fail(ErrorKind::Domain, "singular matrix");
        if (p != c)
            for (int j = 0; j < n; ++j) {
                std::swap(m(p, j), m(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = m(c, c);
        for (int j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(m(r, c)) == 0) continue;
            Rational f = m(r, c);
            for (int j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

RationalMatrix product(const std::vector<RationalMatrix>& gs) {
    if (gs.empty()) fail(ErrorKind::Usage, "empty product");
    RationalMatrix p = gs[0];
    for (std::size_t t = 1; t < gs.size(); ++t) p = p * gs[t];
    return p;
}

Rational determinant(const RationalMatrix& a) {
    if (!a.square()) fail(ErrorKind::Usage, "determinant of a non-square matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    // Clear denominators row by row, then run Bareiss over the integers.
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    mpz_class scale = 1;
    for (int i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (int j = 0; j < n; ++j) m[i][j] = a(i, j).get_num() * (l / a(i, j).get_den());
        scale *= l;
    }
    int sign = 1;
    mpz_class prev = 1;
    for (int c = 0; c < n - 1; ++c) {
        int p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            sign = -sign;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[c][c] - m[i][c] * m[c][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[c][c];
    }
    Rational d(mpz_class(sign * m[n - 1][n - 1]), scale);
    d.canonicalize();
    return d;
}

Rational minor(const RationalMatrix& g, const IndexSet& I, const IndexSet& J) {
    if (I.size() != J.size()) fail(ErrorKind::Usage, "minor: |I| != |J|");
    const int r = static_cast<int>(I.size());
    RationalMatrix s(r, r);
    for (int a = 0; a < r; ++a) {
        if (I[a] < 1 || I[a] > g.rows() || J[a] < 1 || J[a] > g.cols())
            fail(ErrorKind::Usage, "minor: index out of range");
        for (int b = 0; b < r; ++b) s(a, b) = g(I[a] - 1, J[b] - 1);
    }
    return determinant(s);
}

namespace {

void require_tuple(const std::vector<RationalMatrix>& gs) {
    if (gs.empty()) fail(ErrorKind::Usage, "need at least one matrix");
    const int n = gs[0].rows();
    for (const auto& g : gs)
        if (!g.square() || g.rows() != n) fail(ErrorKind::Usage, "matrices must be square of a common size");
}

void require_alpha(int n, int k, const Alpha& alpha) {
    if (static_cast<int>(alpha.size()) != k || !in_simplex(alpha, n))
        fail(ErrorKind::Usage, "index " + alpha_text(alpha) + " is not in the simplex");
}

Rational corner_minor_of_bold(const RationalMatrix& bold, int n, const Alpha& alpha) {
    IndexSet rows = interval(1, n);
    return minor(bold, rows, corner_columns(n, alpha));
}

Rational checked_div(const Rational& a, const Rational& b, const std::string& what) {
    if (sgn(b) == 0) fail(ErrorKind::Domain, "vanishing " + what);
    return a / b;
}

}  // namespace

RationalMatrix bold_g(const std::vector<RationalMatrix>& gs) {
    require_tuple(gs);
    const int n = gs[0].rows(), k = static_cast<int>(gs.size());
    RationalMatrix b(n, (k + 1) * n);
    RationalMatrix run = RationalMatrix::identity(n);
    for (int t = 0; t <= k; ++t) {
        if (t > 0) run = run * gs[t - 1];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, t * n + j) = run(i, j);
    }
    return b;
}

IndexSet corner_columns(int n, const Alpha& alpha) {
    const int sum = std::accumulate(alpha.begin(), alpha.end(), 0);
    IndexSet J = set_minus(interval(1, n), opposite(interval(1, sum), n));
    for (std::size_t t = 0; t < alpha.size(); ++t)
        J = set_union(J, shifted(interval(1, alpha[t]), static_cast<int>(t + 1) * n));
    return J;
}

Rational corner_minor(const RationalMatrix& g, int i) {
    const int n = g.rows();
    return minor(g, opposite(interval(1, i), n), interval(1, i));
}

Rational multi_corner_minor(const std::vector<RationalMatrix>& gs, const Alpha& alpha) {
    require_tuple(gs);
    const int n = gs[0].rows();
    require_alpha(n, static_cast<int>(gs.size()), alpha);
    return corner_minor_of_bold(bold_g(gs), n, alpha);
}

Rational cauchy_binet_expansion(const std::vector<RationalMatrix>& gs, const Alpha& alpha) {
    require_tuple(gs);
    const int n = gs[0].rows(), k = static_cast<int>(gs.size());
    require_alpha(n, k, alpha);
    int rest = std::accumulate(alpha.begin(), alpha.end(), 0);
    std::map<IndexSet, Rational> layer{{opposite(interval(1, rest), n), Rational(1)}};
    for (int t = 0; t < k; ++t) {
        rest -= alpha[t];
        const IndexSet Jt = interval(1, alpha[t]);
        const IndexSet free_rows = interval(alpha[t] + 1, n);
        std::map<IndexSet, Rational> next;
        for (const auto& [L, v] : layer) {
            for (const auto& pick : subsets(static_cast<int>(free_rows.size()), rest)) {
                IndexSet Lt;
                for (int p : pick) Lt.push_back(free_rows[p - 1]);
                Rational d = minor(gs[t], L, set_union(Jt, Lt));
                if (sgn(d) == 0) continue;
                next[Lt] += v * d;
            }
        }
        layer = std::move(next);
    }
    auto it = layer.find(IndexSet{});
    return it == layer.end() ? Rational(0) : it->second;
}

Rational m_tilde(const std::vector<RationalMatrix>& gs, const Alpha& alpha) {
    require_tuple(gs);
    const int n = gs[0].rows(), k = static_cast<int>(gs.size());
    require_alpha(n, k, alpha);
    const RationalMatrix bold = bold_g(gs);
    std::vector<int> left(k + 1);
    left[0] = n - std::accumulate(alpha.begin(), alpha.end(), 0);
    for (int t = 0; t < k; ++t) left[t + 1] = alpha[t];
    const IndexSet rows = interval(1, n);
    std::vector<int> col(n);  // bold-g column used at position c
    Rational total = 0;
    auto rec = [&](auto&& self, int c) -> void {
        if (c == n) {
            int inversions = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) inversions += col[a] > col[b];
            IndexSet J(col.begin(), col.end());
            std::sort(J.begin(), J.end());
            Rational d = minor(bold, rows, J);
            total += (inversions % 2) ? Rational(-d) : d;
            return;
        }
        for (int t = 0; t <= k; ++t) {
            if (left[t] == 0) continue;
            --left[t];
            col[c] = t * n + c + 1;
            self(self, c + 1);
            ++left[t];
        }
    };
    rec(rec, 0);
    return total;
}

std::map<Alpha, Rational> corner_minor_map(const std::vector<RationalMatrix>& gs) {
    require_tuple(gs);
    const int n = gs[0].rows(), k = static_cast<int>(gs.size());
    const RationalMatrix bold = bold_g(gs);
    std::map<Alpha, Rational> out;
    for (const auto& a : simplex_points(n, k)) out.emplace(a, corner_minor_of_bold(bold, n, a));
    return out;
}

bool is_unipotent_upper(const RationalMatrix& u) {
    if (!u.square()) return false;
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            if (u(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::vector<RationalMatrix> u_action(const std::vector<RationalMatrix>& us, const std::vector<RationalMatrix>& gs) {
    require_tuple(gs);
    if (us.size() != gs.size() + 1) fail(ErrorKind::Usage, "u_action needs k+1 unipotent factors");
    for (std::size_t t = 0; t < us.size(); ++t) {
        if (us[t].rows() != gs[0].rows() || !is_unipotent_upper(us[t]))
            fail(ErrorKind::Precondition, "u_" + std::to_string(t) + " is not unit upper-triangular");
    }
    std::vector<RationalMatrix> out;
    for (std::size_t t = 0; t < gs.size(); ++t) out.push_back(us[t] * gs[t] * inverse(us[t + 1]));
    return out;
}

Rational geometric_octahedron_residual(const std::vector<RationalMatrix>& gs, int i, int j, int k) {
    require_tuple(gs);
    if (gs.size() != 3) fail(ErrorKind::Usage, "the octahedron residual needs three factors");
    const int n = gs[0].rows();
    if (i < 0 || j < 0 || k < 0 || i + j + k + 2 > n)
        fail(ErrorKind::Usage, "octahedron index out of range");
    const RationalMatrix bold = bold_g(gs);
    auto M = [&](int a, int b, int c) -> Rational {
        Alpha al{a, b, c};
        return in_simplex(al, n) ? corner_minor_of_bold(bold, n, al) : Rational(0);
    };
    return M(i + 1, j, k + 1) * M(i, j + 1, k) - M(i, j + 1, k + 1) * M(i + 1, j, k) -
           M(i, j, k + 1) * M(i + 1, j + 1, k);
}

std::map<Alpha, Rational> geometric_fill(int n, const std::map<Alpha, Rational>& faces, FillDirection d) {
    std::map<Alpha, Rational> m;
    for (const auto& a : simplex_points(n, 3)) {
        if (!in_fill_input(a, n, d)) continue;
        auto it = faces.find(a);
        if (it == faces.end()) fail(ErrorKind::Usage, "fill input is missing M_" + alpha_text(a));
        m[a] = it->second;
    }
    auto M = [&](int a, int b, int c) -> Rational& { return m[Alpha{a, b, c}]; };
    auto solve = [&](int i, int j, int k, const Alpha& div) -> Rational {
        Rational num = M(i, j, k + 1) * M(i + 1, j + 1, k) + M(i + 1, j, k) * M(i, j + 1, k + 1);
        return checked_div(num, m[div], "divisor M_" + alpha_text(div) + " in the fill");
    };
    if (d == FillDirection::FromJ0AndTop) {
        for (int j = 0; j + 2 <= n; ++j)
            for (int s = n - j - 2; s >= 0; --s)
                for (int i = 0; i <= s; ++i) {
                    int k = s - i;
                    Rational v = solve(i, j, k, Alpha{i + 1, j, k + 1});
                    M(i, j + 1, k) = v;
                }
    } else {
        for (int s = 0; s + 2 <= n; ++s)
            for (int i = 0; i <= s; ++i) {
                int k = s - i;
                for (int j = 0; i + j + k + 2 <= n; ++j) {
                    Rational v = solve(i, j, k, Alpha{i, j + 1, k});
                    M(i + 1, j, k + 1) = v;
                }
            }
    }
    return m;
}

Rational phi_bk(const RationalMatrix& g) {
    if (!g.square()) fail(ErrorKind::Usage, "phi_bk needs a square matrix");
    const int n = g.rows();
    Rational total = 0;
    for (int i = 1; i <= n - 1; ++i) {
        IndexSet skip = set_minus(interval(1, i + 1), IndexSet{i});
        Rational den = minor(g, opposite(interval(1, i), n), interval(1, i));
        if (sgn(den) == 0)
            fail(ErrorKind::Domain, "phi_bk: corner minor for i = " + std::to_string(i) + " vanishes");
        total += (minor(g, opposite(skip, n), interval(1, i)) + minor(g, opposite(interval(1, i), n), skip)) / den;
    }
    return total;
}

Rational phi_k(const std::vector<RationalMatrix>& gs) {
    require_tuple(gs);
    if (gs.size() < 2) fail(ErrorKind::Usage, "phi_k needs k >= 2");
    Rational total = 0;
    for (const auto& g : gs) total += phi_bk(g);
    return total - phi_bk(product(gs));
}

Rational phi_k_by_corner_minors(const std::vector<RationalMatrix>& gs) {
    require_tuple(gs);
    const int n = gs[0].rows(), k = static_cast<int>(gs.size());
    if (k < 2) fail(ErrorKind::Usage, "phi_k needs k >= 2");
    const auto all = corner_minor_map(gs);
    Rational total = 0;
    for (int l = 0; l <= k - 2; ++l) {
        auto M = [&](int i, int j) -> const Rational& {
            Alpha a(k, 0);
            a[l] = i;
            a[l + 1] = j;
            return all.at(a);
        };
        auto mono = [&](int i1, int j1, int i2, int j2, int i3, int j3, int i4, int j4) -> Rational {
            Rational den = M(i2, j2) * M(i4, j4);
            return checked_div(M(i1, j1) * M(i3, j3), den, "corner minor in phi_k");
        };
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                if (j >= 1 && i + j + 1 <= n) total += mono(i, j - 1, i, j, i + 1, j, i + 1, j - 1);
                if (i >= 1 && j >= 1) total += mono(i, j - 1, i, j, i - 1, j + 1, i - 1, j);
                if (i >= 1 && i + j + 1 <= n) total += mono(i - 1, j + 1, i, j + 1, i + 1, j, i, j);
            }
    }
    return total;
}

GeoGZPattern::GeoGZPattern(int n) : n_(n), lam_(n + 1) {
    for (int l = 0; l <= n; ++l) lam_[l].assign(l + 1, Rational(1));
}

RationalMatrix theta_gz(const GeoGZPattern& p) {
    const int n = p.n();
    for (int l = 1; l <= n; ++l)
        for (int j = 1; j <= l; ++j)
            if (sgn(p.at(j, l)) == 0)
                fail(ErrorKind::Domain, "theta_gz: lambda_" + std::to_string(j) + "^(" + std::to_string(l) + ") is zero");
    RationalMatrix b(n, n);
    for (int r = 0; r < n; ++r) b(r, r) = p.at(n - r, n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Rational t = p.at(n + 1 - j, n + i - j) / p.at(n + 1 - j, n);
            const int q = j - i - 1;  // 0-based position of x_{-(j-i)}
            // right-multiply by [[1/t,0],[1,t]] on columns q, q+1
            for (int r = 0; r < n; ++r) {
                Rational c0 = b(r, q), c1 = b(r, q + 1);
                b(r, q) = c0 / t + c1;
                b(r, q + 1) = c1 * t;
            }
        }
    return b;
}

GeoGZPattern gz_pattern_of(const RationalMatrix& b) {
    if (!b.square()) fail(ErrorKind::Usage, "gz_pattern_of needs a square matrix");
    const int n = b.rows();
    GeoGZPattern p(n);
    for (int i = 0; i <= n - 1; ++i) {
        Rational prev = 1;
        for (int j = 1; i + j <= n; ++j) {
            Rational d = minor(b, opposite(interval(1, j), n), interval(i + 1, i + j));
            if (sgn(d) == 0)
                fail(ErrorKind::Domain, "gz_pattern_of: minor Delta_{" + std::to_string(i) + "," + std::to_string(j) +
                                            "} vanishes");
            p.at(j, n - i) = d / prev;
            prev = d;
        }
    }
    return p;
}

Rational phi_bk_of_pattern(const GeoGZPattern& p) {
    const int n = p.n();
    Rational total = 0;
    for (int i = 0; i <= n - 1; ++i)
        for (int j = 1; i + j < n; ++j) total += p.at(j, n - i - 1) / p.at(j, n - i);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; i + j <= n; ++j) total += p.at(j + 1, n - i + 1) / p.at(j, n - i);
    return total;
}

std::vector<Rational> hw(const RationalMatrix& g) {
    if (!g.square()) fail(ErrorKind::Usage, "hw needs a square matrix");
    const int n = g.rows();
    std::vector<Rational> M(n + 1, Rational(1));
    for (int i = 1; i <= n; ++i) {
        M[i] = corner_minor(g, i);
        if (sgn(M[i]) == 0) fail(ErrorKind::Domain, "hw: corner minor M_" + std::to_string(i) + " vanishes");
    }
    std::vector<Rational> out;
    for (int i = n; i >= 1; --i) out.push_back(M[i] / M[i - 1]);
    return out;
}

RationalMatrix random_matrix(int n, Rng& rng) {
    for (;;) {
        RationalMatrix g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.uniform_int(-9, 9);
        if (sgn(determinant(g)) != 0) return g;
    }
}

RationalMatrix random_unipotent(int n, Rng& rng) {
    RationalMatrix u = RationalMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) u(i, j) = rng.uniform_int(-9, 9);
    return u;
}

RationalMatrix random_positive_lower(int n, Rng& rng) {
    RationalMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) g(i, j) = rng.uniform_int(1, 9);
    return g;
}

std::vector<RationalMatrix> random_generic_tuple(int n, int k, Rng& rng) {
    for (;;) {
        std::vector<RationalMatrix> gs;
        for (int t = 0; t < k; ++t) gs.push_back(random_matrix(n, rng));
        auto all = corner_minor_map(gs);
        if (std::all_of(all.begin(), all.end(), [](const auto& kv) { return sgn(kv.second) != 0; })) return gs;
    }
}

std::string matrix_text(const RationalMatrix& g) {
    std::string s = "[";
    for (int i = 0; i < g.rows(); ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < g.cols(); ++j) s += (j ? "," : "") + rational_text(g(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace hornlab
