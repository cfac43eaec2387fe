#include "hornlab/trop.hpp"

#include <cmath>

namespace hornlab {

const Rational& Trop::value() const {
    if (!fin_) fail(ErrorKind::Domain, "value() of -inf");
    return v_;
}

double Trop::to_double() const { return fin_ ? v_.get_d() : -HUGE_VAL; }

std::string Trop::str() const { return fin_ ? rational_text(v_) : std::string("-inf"); }

Trop trop_add(const Trop& a, const Trop& b) { return a < b ? b : a; }

Trop trop_mul(const Trop& a, const Trop& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return Trop::neg_inf();
    return Trop(Rational(a.value() + b.value()));
}

TropPair trop_ops(const Trop& a, const Trop& b) { return {trop_add(a, b), trop_mul(a, b)}; }

GZPattern::GZPattern(int n) : n_(n), m_(n + 1) {
    if (n < 0) fail(ErrorKind::Usage, "negative pattern rank");
    for (int l = 0; l <= n; ++l) m_[l].assign(l + 1, Trop(0));
}

Trop& GZPattern::at(int i, int l) {
    if (l < 0 || l > n_ || i < 0 || i > l)
        fail(ErrorKind::Usage, "pattern index out of triangle: (" + std::to_string(i) + "," + std::to_string(l) + ")");
    return m_[l][i];
}

const Trop& GZPattern::at(int i, int l) const { return const_cast<GZPattern*>(this)->at(i, l); }

std::vector<Trop> GZPattern::row(int l) const { return m_.at(l); }

void GZPattern::set_row(int l, const std::vector<Trop>& values) {
    if (static_cast<int>(values.size()) != l + 1) fail(ErrorKind::Usage, "pattern row has wrong length");
    m_.at(l) = values;
}

bool GZPattern::all_finite() const {
    for (const auto& r : m_)
        for (const auto& v : r)
            if (!v.finite()) return false;
    return true;
}

GZReport gz_check(const GZPattern& p, const Rational& delta) {
    GZReport rep;
    if (!p.all_finite()) {
        rep.ok = false;
        rep.message = "non-finite entry";
        return rep;
    }
    const int n = p.n();
    auto m = [&](int i, int l) -> const Rational& { return p.at(i, l).value(); };
    for (int l = 1; l <= n - 1; ++l) {
        for (int i = 1; i <= l; ++i) {
            Rational s1 = m(i, l + 1) + m(i - 1, l) - m(i - 1, l + 1) - m(i, l);
            if (s1 < delta) rep.failures.push_back({1, i, l, s1});
            Rational s2 = m(i, l + 1) + m(i, l) - m(i + 1, l + 1) - m(i - 1, l);
            if (s2 < delta) rep.failures.push_back({2, i, l, s2});
        }
    }
    if (!rep.failures.empty()) {
        rep.ok = false;
        const auto& f = rep.failures.front();
        rep.message = (f.family == 1 ? "lambda_i^(l+1) >= lambda_i^(l)" : "lambda_i^(l) >= lambda_{i+1}^(l+1)");
        rep.message += " fails at i=" + std::to_string(f.i) + ", l=" + std::to_string(f.l) +
                       " (slack " + rational_text(f.slack) + ")";
    }
    return rep;
}

std::vector<std::vector<Rational>> interlacing_values(const GZPattern& p) {
    if (!p.all_finite()) fail(ErrorKind::Domain, "interlacing values need finite entries");
    std::vector<std::vector<Rational>> lam(p.n() + 1);
    for (int l = 0; l <= p.n(); ++l) {
        lam[l].assign(l + 1, Rational(0));
        for (int i = 1; i <= l; ++i) lam[l][i] = p.at(i, l).value() - p.at(i - 1, l).value();
    }
    return lam;
}

bool gz_check_real(const RealGZPattern& p, double delta, double tol) {
    for (int l = 1; l <= p.n - 1; ++l)
        for (int i = 1; i <= l; ++i) {
            double s1 = p.m[l + 1][i] + p.m[l][i - 1] - p.m[l + 1][i - 1] - p.m[l][i];
            double s2 = p.m[l + 1][i] + p.m[l][i] - p.m[l + 1][i + 1] - p.m[l][i - 1];
            if (s1 < delta - tol || s2 < delta - tol) return false;
        }
    return true;
}

}  // namespace hornlab
