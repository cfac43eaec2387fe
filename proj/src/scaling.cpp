#include "hornlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hornlab {

namespace mp = boost::multiprecision;

namespace {

Real real_of(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

}  // namespace

// ---------------------------------------------------------------- matrices

ComplexMatrix::ComplexMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) fail(ErrorKind::Usage, "negative matrix size");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<std::complex<double>>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    ComplexMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) fail(ErrorKind::Usage, "ragged matrix rows");
        for (int j = 0; j < c; ++j) {
            const auto& z = rows[i][j];
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                fail(ErrorKind::Domain, "non-finite matrix entry");
            m(i, j) = Complex(z.real(), z.imag());
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rational(const RationalMatrix& g) {
    ComplexMatrix m(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            m(i, j) = Complex(real_of(g(i, j)));
    return m;
}

std::complex<double> ComplexMatrix::at_double(int i, int j) const {
    const Complex& z = (*this)(i, j);
    return {static_cast<double>(mp::real(z)), static_cast<double>(mp::imag(z))};
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) fail(ErrorKind::Usage, "matrix product size mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int l = 0; l < a.cols(); ++l)
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = mp::conj(a(i, j));
    return t;
}

ComplexMatrix leading_block(const ComplexMatrix& a, int l) {
    ComplexMatrix b(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) b(i, j) = a(i, j);
    return b;
}

Complex determinant(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) fail(ErrorKind::Usage, "determinant of a non-square matrix");
    const int n = a.rows();
    ComplexMatrix m = a;
    Complex det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        Real best = mp::abs(m(c, c));
        for (int r = c + 1; r < n; ++r)
            if (mp::abs(m(r, c)) > best) {
                best = mp::abs(m(r, c));
                p = r;
            }
        if (best == 0) return Complex(0);
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            Complex f = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

Real frobenius_norm(const ComplexMatrix& a) {
    Real s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += mp::norm(a(i, j));
    return mp::sqrt(s);
}

namespace {

ComplexMatrix submatrix(const ComplexMatrix& a, const IndexSet& I, const IndexSet& J) {
    ComplexMatrix s(static_cast<int>(I.size()), static_cast<int>(J.size()));
    for (std::size_t x = 0; x < I.size(); ++x)
        for (std::size_t y = 0; y < J.size(); ++y) s(static_cast<int>(x), static_cast<int>(y)) = a(I[x] - 1, J[y] - 1);
    return s;
}

}  // namespace

ComplexMatrix compound(const ComplexMatrix& a, int k) {
    auto rs = subsets(a.rows(), k), cs = subsets(a.cols(), k);
    ComplexMatrix c(static_cast<int>(rs.size()), static_cast<int>(cs.size()));
    for (std::size_t x = 0; x < rs.size(); ++x)
        for (std::size_t y = 0; y < cs.size(); ++y)
            c(static_cast<int>(x), static_cast<int>(y)) = determinant(submatrix(a, rs[x], cs[y]));
    return c;
}

// ---------------------------------------------------------------- m_s

std::complex<double> mu_s(double x, std::complex<double> phi, double s) {
    if (s == 0) fail(ErrorKind::Usage, "s must be nonzero");
    if (std::abs(s * x) > 700) fail(ErrorKind::Domain, "exponent s*x overflows");
    return std::exp(s * x) * phi;
}

void validate_angles(int n, const AngleAssignment& phi) {
    for (const auto& [lab, z] : phi) {
        if (!(1 <= lab.i && lab.i < lab.l && lab.l <= n))
            fail(ErrorKind::Usage, "angle on a non-slanted edge a_" + std::to_string(lab.l) + std::to_string(lab.i));
        if (std::abs(std::abs(z) - 1.0) > 1e-12) fail(ErrorKind::Domain, "angle is not of unit modulus");
    }
}

namespace {

struct ComplexSR {
    using value_type = Complex;
    static Complex zero() { return Complex(0); }
    static Complex one() { return Complex(1); }
    static Complex add(const Complex& a, const Complex& b) { return a + b; }
    static Complex mul(const Complex& a, const Complex& b) { return a * b; }
};

Complex scaled(double x, std::complex<double> phi, double s) {
    if (std::abs(s * x) > kMaxExponent)
        fail(ErrorKind::Domain, "exponent |s*x| exceeds " + std::to_string(static_cast<int>(kMaxExponent)) +
                                    "; rescale the weights");
    // renormalised at full precision: a double phase is off the unit circle by ~1e-17, which
    // would otherwise add a log|phi|/s floor to every scaled quantity
    Complex unit(phi.real(), phi.imag());
    unit /= mp::abs(unit);
    return mp::exp(Real(s) * Real(x)) * unit;
}

ComplexMatrix to_matrix(const SMatrix<ComplexSR>& m) {
    const int n = static_cast<int>(m.size());
    ComplexMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = m[i][j];
    return out;
}

std::complex<double> angle_of(const PlanarNetwork& net, int e, const AngleAssignment& phi) {
    const auto& lab = net.label(e);
    if (!lab || lab->i >= lab->l) return 1.0;
    auto it = phi.find(*lab);
    return it == phi.end() ? std::complex<double>(1.0) : it->second;
}

}  // namespace

namespace {

Weighting<ComplexSR> complex_weighting(const TropWeighting& w, const AngleAssignment& phi, double s) {
    if (s == 0) fail(ErrorKind::Usage, "s must be nonzero");
    validate_angles(w.net->rank(), phi);
    std::vector<Complex> v;
    for (int e = 0; e < w.net->num_edges(); ++e) {
        if (!w[e].finite())
            v.push_back(Complex(0));
        else
            v.push_back(scaled(w[e].to_double(), angle_of(*w.net, e, phi), s));
    }
    return Weighting<ComplexSR>(w.net, std::move(v));
}

}  // namespace

ComplexMatrix m_s(const TropWeighting& w, const AngleAssignment& phi, double s) {
    return to_matrix(correspondence_matrix(complex_weighting(w, phi, s)));
}

ComplexMatrix m_s(const RealStWeighting& w, const AngleAssignment& phi, double s) {
    if (s == 0) fail(ErrorKind::Usage, "s must be nonzero");
    validate_angles(w.n, phi);
    auto net = standard_network_ptr(w.n);
    std::vector<Complex> v;
    for (int e = 0; e < net->num_edges(); ++e) {
        const auto& lab = net->label(e);
        if (!lab) {
            v.push_back(Complex(1));
            continue;
        }
        auto it = w.w.find(*lab);
        if (it == w.w.end())
            fail(ErrorKind::Usage, "missing weight for a_" + std::to_string(lab->l) + std::to_string(lab->i));
        v.push_back(scaled(it->second, angle_of(*net, e, phi), s));
    }
    return to_matrix(correspondence_matrix(Weighting<ComplexSR>(net, std::move(v))));
}

RealStWeighting to_real(const TropWeighting& w) {
    RealStWeighting r;
    r.n = w.net->rank();
    for (int e = 0; e < w.net->num_edges(); ++e) {
        const auto& lab = w.net->label(e);
        if (!lab) {
            if (w[e] != Trop(0)) fail(ErrorKind::Precondition, "non-essential edge with nonzero weight");
            continue;
        }
        if (!w[e].finite()) fail(ErrorKind::Domain, "essential weight is -inf");
        r.w[*lab] = w[e].to_double();
    }
    return r;
}

// ---------------------------------------------------------------- spectra

std::vector<Real> hermitian_eigenvalues(const ComplexMatrix& h0) {
    if (h0.rows() != h0.cols()) fail(ErrorKind::Usage, "eigenvalues of a non-square matrix");
    const int n = h0.rows();
    const Real norm = frobenius_norm(h0);
    {
        Real asym = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) asym += mp::norm(h0(i, j) - mp::conj(h0(j, i)));
        if (mp::sqrt(asym) > Real("1e-10") * norm) fail(ErrorKind::Precondition, "matrix is not Hermitian");
    }
    ComplexMatrix h = h0;
    for (int i = 0; i < n; ++i) h(i, i) = Complex(mp::real(h(i, i)));
    const Real tol = Real("1e-40") * norm;
    for (int sweep = 0; sweep < 100; ++sweep) {
        Real off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (p != q) off += mp::norm(h(p, q));
        if (mp::sqrt(off) <= tol) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Real b = mp::abs(h(p, q));
                if (b == 0) continue;
                Complex e = h(p, q) / b;
                Complex ec = mp::conj(e);
                Real a = mp::real(h(p, p)), d = mp::real(h(q, q));
                Real theta = (d - a) / (2 * b);
                Real t = (theta >= 0 ? Real(1) : Real(-1)) / (mp::abs(theta) + mp::sqrt(theta * theta + 1));
                Real c = 1 / mp::sqrt(t * t + 1), s = t * c;
                // H <- H G with G = [[c, s], [-s conj(e), c conj(e)]] on (p, q)
                for (int k = 0; k < n; ++k) {
                    Complex hp = h(k, p), hq = h(k, q);
                    h(k, p) = c * hp - s * ec * hq;
                    h(k, q) = s * hp + c * ec * hq;
                }
                // H <- G* H
                for (int k = 0; k < n; ++k) {
                    Complex hp = h(p, k), hq = h(q, k);
                    h(p, k) = c * hp - s * e * hq;
                    h(q, k) = s * hp + c * e * hq;
                }
                h(p, q) = 0;
                h(q, p) = 0;
                h(p, p) = Complex(mp::real(h(p, p)));
                h(q, q) = Complex(mp::real(h(q, q)));
            }
    }
    std::vector<Real> ev;
    for (int i = 0; i < n; ++i) ev.push_back(mp::real(h(i, i)));
    std::sort(ev.begin(), ev.end(), [](const Real& x, const Real& y) { return x > y; });
    return ev;
}

std::vector<Real> singular_values(const ComplexMatrix& a) {
    if (mp::abs(determinant(a)) == 0) fail(ErrorKind::Domain, "singular matrix");
    auto ev = hermitian_eigenvalues(a * adjoint(a));
    for (auto& x : ev) x = mp::sqrt(x > 0 ? x : Real(0));
    return ev;
}

Real log_singular_prefix(const ComplexMatrix& a, int k) {
    if (k == 0) return 0;
    if (k == a.rows() && k == a.cols()) {
        Real d = mp::abs(determinant(a));
        if (d == 0) fail(ErrorKind::Domain, "singular matrix");
        return mp::log(d);
    }
    ComplexMatrix c = compound(a, k);
    Real top = hermitian_eigenvalues(c * adjoint(c)).front();
    if (top <= 0) fail(ErrorKind::Domain, "vanishing singular values");
    return mp::log(top) / 2;
}

RealGZPattern gz_s(const ComplexMatrix& a, double s) {
    if (s == 0) fail(ErrorKind::Usage, "s must be nonzero");
    const int n = a.rows();
    RealGZPattern p;
    p.n = n;
    p.m.assign(n + 1, {});
    p.m[0] = {0.0};
    for (int l = 1; l <= n; ++l) {
        ComplexMatrix b = leading_block(a, l);
        if (mp::abs(determinant(b)) == 0)
            fail(ErrorKind::Domain, "leading " + std::to_string(l) + "x" + std::to_string(l) + " block is singular");
        p.m[l].assign(l + 1, 0.0);
        for (int i = 1; i <= l; ++i) p.m[l][i] = static_cast<double>(log_singular_prefix(b, i) / Real(s));
    }
    return p;
}

GZPattern gz_trop(const TropWeighting& w, std::uint64_t cap) {
    const int n = w.net->rank();
    GZPattern p(n);
    for (int l = 1; l <= n; ++l) {
        std::vector<Trop> fm;
        if (l == n) {
            fm = family_maxima(w, cap);
        } else {
            auto t = truncate(*w.net, l);
            fm = family_maxima(restrict_weighting(t, w), cap);
        }
        for (int i = 1; i <= l; ++i) p.at(i, l) = fm[i - 1];
    }
    return p;
}

namespace {

// (1/s) log(σ_1 ⋯ σ_i) of every leading block, indexed [l][i].
std::vector<std::vector<Real>> network_gz(const TropWeighting& w, const AngleAssignment& phi, double s,
                                          std::uint64_t cap) {
    const int n = w.net->rank();
    auto cw = complex_weighting(w, phi, s);
    StateBudget budget(cap);
    std::vector<std::vector<Real>> out(n + 1);
    out[0] = {Real(0)};
    for (int l = 1; l <= n; ++l) {
        auto tw = l == n ? cw : restrict_weighting(truncate(*w.net, l), cw);
        auto paths = all_paths(*tw.net, &budget);
        out[l].assign(l + 1, Real(0));
        for (int i = 1; i <= l; ++i) {
            auto sets = subsets(l, i);
            const int m = static_cast<int>(sets.size());
            ComplexMatrix c(m, m);
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y) {
                    Complex total = 0;
                    for_each_family(
                        *tw.net, paths, sets[x], sets[y],
                        [&](const std::vector<const Path*>& fam) {
                            Complex acc = 1;
                            for (const Path* p : fam) acc *= path_weight(tw, *p);
                            total += acc;
                        },
                        &budget);
                    c(x, y) = total;
                }
            Real v;
            if (m == 1) {
                Real d = mp::abs(c(0, 0));
                if (d == 0) fail(ErrorKind::Domain, "leading " + std::to_string(l) + "x" + std::to_string(l) + " block is singular");
                v = mp::log(d);
            } else {
                Real top = hermitian_eigenvalues(c * adjoint(c)).front();
                if (!(top > 0)) fail(ErrorKind::Domain, "vanishing singular values");
                v = mp::log(top) / 2;
            }
            out[l][i] = v / Real(s);
        }
    }
    return out;
}

}  // namespace

RealGZPattern gz_s_network(const TropWeighting& w, const AngleAssignment& phi, double s, std::uint64_t cap) {
    auto v = network_gz(w, phi, s, cap);
    RealGZPattern p;
    p.n = w.net->rank();
    p.m.resize(v.size());
    for (std::size_t l = 0; l < v.size(); ++l)
        for (const Real& x : v[l]) p.m[l].push_back(static_cast<double>(x));
    return p;
}

// ---------------------------------------------------------------- zeta_s

Zeta zeta_s(const ComplexMatrix& b, double s) {
    if (s == 0) fail(ErrorKind::Usage, "s must be nonzero");
    if (b.rows() != b.cols()) fail(ErrorKind::Usage, "zeta_s needs a square matrix");
    const int n = b.rows();
    const Real tol = Real("1e-30") * frobenius_norm(b);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j)
            if (mp::abs(b(i, j)) > tol) fail(ErrorKind::Precondition, "zeta_s needs a lower-triangular matrix");
        if (!(mp::real(b(i, i)) > 0) || mp::abs(mp::imag(b(i, i))) > tol)
            fail(ErrorKind::Precondition, "zeta_s needs a positive real diagonal");
    }
    auto net = standard_network_ptr(n);
    std::vector<Real> wv(net->num_edges(), Real(0));
    std::vector<Complex> ph(net->num_edges(), Complex(1));
    Zeta z;
    z.w.n = n;
    for (int l = 1; l <= n; ++l)
        for (int i = 1; i <= l; ++i) {
            Complex d = determinant(submatrix(b, interval(l - i + 1, l), interval(1, i)));
            Real ad = mp::abs(d);
            if (ad == 0)
                fail(ErrorKind::Domain, "zeta_s: minor Delta_{" + to_string(interval(l - i + 1, l)) + "," +
                                            to_string(interval(1, i)) + "} vanishes");
            Real x = mp::log(ad) / Real(s);
            Complex phase = d / ad;
            const int target = net->essential_edge(l, i);
            for (int e : alpha_family_edges(n, i, l)) {
                if (e == target || !net->label(e)) continue;
                x -= wv[e];
                phase /= ph[e];
            }
            wv[target] = x;
            ph[target] = phase;
            z.w.w[{l, i}] = static_cast<double>(x);
            if (i < l) {
                std::complex<double> q(static_cast<double>(mp::real(phase)), static_cast<double>(mp::imag(phase)));
                z.phi[{l, i}] = q / std::abs(q);
            } else if (mp::abs(phase - Complex(1)) > Real("1e-20")) {
                fail(ErrorKind::Precondition, "zeta_s: diagonal edge with a nontrivial phase");
            }
        }
    return z;
}

// ---------------------------------------------------------------- Horn maps

std::vector<double> horn_s(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, double s) {
    if (s == 0) fail(ErrorKind::Usage, "s must be nonzero");
    const int n = a.rows();
    ComplexMatrix ab = a * b, bc = b * c, abc = ab * c;
    std::vector<double> out;
    for (const ComplexMatrix* x : std::array<const ComplexMatrix*, 6>{&a, &b, &c, &ab, &bc, &abc}) {
        if (x->rows() != n || x->cols() != n) fail(ErrorKind::Usage, "horn_s needs square matrices of one size");
        for (int j = 1; j <= n; ++j) out.push_back(static_cast<double>(log_singular_prefix(*x, j) / Real(s)));
    }
    return out;
}

HornTuple horn_trop(const std::vector<TropWeighting>& ws, std::uint64_t cap) {
    if (ws.size() != 3) fail(ErrorKind::Usage, "horn_trop needs three weightings");
    HornTuple t;
    t.n = ws[0].net->rank();
    std::vector<TropWeighting> xs = {ws[0],
                                     ws[1],
                                     ws[2],
                                     concatenate(ws[0], ws[1]),
                                     concatenate(ws[1], ws[2]),
                                     concatenate_all(ws)};
    for (int r = 0; r < 6; ++r) t.rows[r] = family_maxima(xs[r], cap);
    return t;
}

std::vector<double> horn_values(const HornTuple& t) {
    std::vector<double> out;
    for (const auto& row : t.rows)
        for (const Trop& v : row) {
            if (!v.finite()) fail(ErrorKind::Domain, "Horn tuple has a -inf entry");
            out.push_back(v.to_double());
        }
    return out;
}

// ---------------------------------------------------------------- genericity

std::optional<Rational> gz_min_slack(const GZPattern& p) {
    if (!p.all_finite()) fail(ErrorKind::Domain, "pattern has -inf entries");
    auto lam = interlacing_values(p);
    std::optional<Rational> best;
    auto take = [&](const Rational& v) {
        if (!best || v < *best) best = v;
    };
    for (int l = 1; l <= p.n() - 1; ++l)
        for (int i = 1; i <= l; ++i) {
            take(lam[l + 1][i] - lam[l][i]);
            take(lam[l][i] - lam[l + 1][i + 1]);
        }
    return best;
}

namespace {

bool strictly_above(const std::optional<Rational>& slack, const Rational& delta) { return !slack || *slack > delta; }

bool separated(std::vector<Trop> v, const Rational& delta) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!v[i].finite()) return false;  // two -inf
        if (!v[i - 1].finite()) continue;
        if (!(v[i].value() - v[i - 1].value() > delta)) return false;
    }
    return true;
}

bool families_separated(const TropWeighting& w, const Rational& delta, StateBudget& budget) {
    const int n = w.net->rank();
    auto paths = all_paths(*w.net, &budget);
    for (int k = 1; k <= n; ++k) {
        std::vector<Trop> weights;
        for (const auto& I : subsets(n, k))
            for (const auto& J : subsets(n, k))
                for_each_family(
                    *w.net, paths, I, J,
                    [&](const std::vector<const Path*>& f) {
                        Trop acc(0);
                        for (const Path* p : f) acc = trop_mul(acc, path_weight(w, *p));
                        weights.push_back(acc);
                    },
                    &budget);
        if (!separated(std::move(weights), delta)) return false;
    }
    return true;
}

}  // namespace

bool genericity_filter(const std::vector<TropWeighting>& ws, const Rational& delta, std::uint64_t cap) {
    StateBudget budget(cap);
    if (ws.size() == 1) {
        const TropWeighting& w = ws[0];
        auto g = gz_trop(w, cap);
        if (!g.all_finite() || !strictly_above(gz_min_slack(g), delta)) return false;
        const int n = w.net->rank();
        for (int l = 1; l <= n; ++l) {
            bool ok = l == n ? families_separated(w, delta, budget)
                             : families_separated(restrict_weighting(truncate(*w.net, l), w), delta, budget);
            if (!ok) return false;
        }
        return true;
    }
    if (ws.size() != 3) fail(ErrorKind::Usage, "genericity_filter takes one or three weightings");
    std::vector<Trop> ess;
    for (const auto& w : ws) {
        auto a = calA(w);
        if (!a.all_finite() || !strictly_above(gz_min_slack(a), delta)) return false;
        for (int e : w.net->essential_edges()) ess.push_back(w[e]);
    }
    for (const auto& prod : {concatenate(ws[0], ws[1]), concatenate(ws[1], ws[2]), concatenate_all(ws)}) {
        auto g = gz_trop(prod, cap);
        if (!g.all_finite() || !strictly_above(gz_min_slack(g), delta)) return false;
    }
    for (const Trop& v : ess)
        if (!v.finite()) return false;
    if (ess.size() > 40) fail(ErrorKind::Cap, "too many essential edges for the subset-separation check");
    const std::uint64_t count = std::uint64_t{1} << ess.size();
    budget.tick(count);
    std::vector<Rational> sums(count);
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        int low = __builtin_ctzll(mask);
        sums[mask] = sums[mask & (mask - 1)] + ess[low].value();
    }
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < sums.size(); ++i)
        if (!(sums[i] - sums[i - 1] > delta)) return false;
    return true;
}

// ---------------------------------------------------------------- convergence

double closed_form_error(double s) {
    const double eps = std::exp(-2 * s);
    return std::log((2 + eps + std::sqrt(4 + eps * eps)) / 2) / (2 * s);
}

TropWeighting closed_form_instance() {
    return essential_weighting<TropicalSR>(2, {{{1, 1}, Trop(1)}, {{2, 1}, Trop(0)}, {{2, 2}, Trop(0)}});
}

double fitted_log_slope(const std::vector<double>& s, const std::vector<double>& error) {
    if (s.size() != error.size() || s.size() < 2) fail(ErrorKind::Usage, "slope fit needs two or more points");
    const double k = static_cast<double>(s.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double y = std::log(std::max(error[i], std::numeric_limits<double>::min()));
        sx += s[i];
        sy += y;
        sxx += s[i] * s[i];
        sxy += s[i] * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergenceReport convergence_experiment(const TropWeighting& w, const AngleAssignment& phi,
                                         const std::vector<double>& s_list, std::uint64_t cap) {
    if (s_list.empty()) fail(ErrorKind::Usage, "empty s list");
    std::vector<double> ss = s_list;
    std::sort(ss.begin(), ss.end());
    GZPattern trop = gz_trop(w, cap);
    if (!trop.all_finite()) fail(ErrorKind::Domain, "gz^T has -inf entries");
    ConvergenceReport rep;
    for (double s : ss) {
        auto g = network_gz(w, phi, s, cap);
        Real err = 0;
        for (int l = 1; l < static_cast<int>(g.size()); ++l)
            for (int i = 1; i <= l; ++i) err = std::max(err, Real(mp::abs(g[l][i] - real_of(trop.at(i, l).value()))));
        rep.rows.push_back({s, static_cast<double>(err)});
    }
    rep.strictly_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].error < rep.rows[i - 1].error)) rep.strictly_decreasing = false;
    if (rep.rows.size() >= 2) {
        std::size_t half = std::max<std::size_t>(2, (rep.rows.size() + 1) / 2);
        std::vector<double> xs, ys;
        for (std::size_t i = rep.rows.size() - half; i < rep.rows.size(); ++i) {
            xs.push_back(rep.rows[i].s);
            ys.push_back(rep.rows[i].error);
        }
        rep.slope = fitted_log_slope(xs, ys);
    }
    return rep;
}

// ---------------------------------------------------------------- sampling

ComplexMatrix haar_unitary(int n, Rng& rng) {
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    // modified Gram-Schmidt on columns; positive R diagonal gives the Haar measure
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            Complex dot = 0;
            for (int r = 0; r < n; ++r) dot += mp::conj(g(r, i)) * g(r, j);
            for (int r = 0; r < n; ++r) g(r, j) -= dot * g(r, i);
        }
        Real norm = 0;
        for (int r = 0; r < n; ++r) norm += mp::norm(g(r, j));
        norm = mp::sqrt(norm);
        if (norm == 0) fail(ErrorKind::Domain, "degenerate Gaussian sample");
        for (int r = 0; r < n; ++r) g(r, j) /= norm;
    }
    return g;
}

ComplexMatrix sample_with_singular_values(const std::vector<double>& lambda, double s, Rng& rng) {
    const int n = static_cast<int>(lambda.size());
    ComplexMatrix u = haar_unitary(n, rng);
    ComplexMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(2 * s * lambda[i]) > 2 * kMaxExponent) fail(ErrorKind::Domain, "exponent 2*s*lambda too large");
        d(i, i) = mp::exp(Real(2 * s) * Real(lambda[i]));
    }
    ComplexMatrix h = u * d * adjoint(u);
    ComplexMatrix b(n, n);
    for (int j = 0; j < n; ++j) {
        Real diag = mp::real(h(j, j));
        for (int k = 0; k < j; ++k) diag -= mp::norm(b(j, k));
        if (!(diag > 0)) fail(ErrorKind::Domain, "Cholesky retraction failed");
        b(j, j) = Complex(mp::sqrt(diag));
        for (int i = j + 1; i < n; ++i) {
            Complex v = h(i, j);
            for (int k = 0; k < j; ++k) v -= b(i, k) * mp::conj(b(j, k));
            b(i, j) = v / b(j, j);
        }
    }
    return b;
}

// ---------------------------------------------------------------- n = 2

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

double f_trace(const Mat2& g) {
    std::complex<double> det = g[0] * g[3] - g[1] * g[2];
    double scale = std::max(1.0, std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]) + std::norm(g[3]));
    if (std::abs(det - 1.0) > 1e-9 * scale) fail(ErrorKind::Precondition, "f_trace needs determinant 1");
    return std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]) + std::norm(g[3]);
}

Mat2 random_unit_lower(Rng& rng) {
    double u = std::exp(4 * rng.uniform01() - 2);
    double scale = std::exp(4 * rng.uniform01() - 2);
    std::complex<double> v(rng.normal() * scale, rng.normal() * scale);
    return {u, 0.0, v, 1.0 / u};
}

bool N2Inequalities::ok(double tol) const {
    for (double x : slack)
        if (x < -tol) return false;
    return !defect || *defect <= *bound + tol;
}

N2Inequalities n2_inequalities(const Mat2& a, const Mat2& b, const Mat2& c, std::optional<double> s) {
    Mat2 ab = mul(a, b), bc = mul(b, c), abc = mul(ab, c);
    double fA = f_trace(a), fB = f_trace(b), fC = f_trace(c), fAB = f_trace(ab), fBC = f_trace(bc),
           fABC = f_trace(abc);
    N2Inequalities r;
    r.slack[0] = (2 * (fAB * fBC + fA * fC) - fB * fABC) / (fB * fABC);
    r.slack[1] = (2 * (fA * fC + fB * fABC) - fAB * fBC) / (fAB * fBC);
    r.slack[2] = (2 * (fB * fABC + fAB * fBC) - fA * fC) / (fA * fC);
    if (s) {
        if (*s <= 0) fail(ErrorKind::Usage, "s must be positive");
        auto x = [&](double f) { return std::log((f + std::sqrt(std::max(0.0, f * f - 4))) / 2) / *s; };
        double al = x(fA) + x(fC), be = x(fB) + x(fABC), ga = x(fAB) + x(fBC);
        r.alpha = al;
        r.beta = be;
        r.gamma = ga;
        r.defect = std::max({al - std::max(be, ga), be - std::max(al, ga), ga - std::max(al, be)});
        r.bound = std::log(16.0) / *s;
    }
    return r;
}

}  // namespace hornlab
