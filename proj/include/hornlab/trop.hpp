#pragma once

#include "hornlab/common.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace hornlab {

// Element of R ∪ {-inf}.  Bottom is a tag, never a float sentinel.
class Trop {
public:
    Trop() = default;  // 0
    Trop(const Rational& v) : fin_(true), v_(v) {}
    Trop(long v) : fin_(true), v_(v) {}
    Trop(int v) : fin_(true), v_(v) {}
    static Trop neg_inf() {
        Trop t;
        t.fin_ = false;
        t.v_ = 0;
        return t;
    }

    bool finite() const { return fin_; }
    bool is_neg_inf() const { return !fin_; }
    // Precondition: finite().
    const Rational& value() const;
    double to_double() const;  // -inf maps to -HUGE_VAL

    friend bool operator==(const Trop& a, const Trop& b) {
        if (a.fin_ != b.fin_) return false;
        return !a.fin_ || a.v_ == b.v_;
    }
    friend std::strong_ordering operator<=>(const Trop& a, const Trop& b) {
        if (!a.fin_ || !b.fin_) return a.fin_ <=> b.fin_;
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const;

private:
    bool fin_ = true;
    Rational v_ = 0;
};

Trop trop_add(const Trop& a, const Trop& b);  // max
Trop trop_mul(const Trop& a, const Trop& b);  // +, bottom absorbing

struct TropPair {
    Trop sum;
    Trop product;
};
TropPair trop_ops(const Trop& a, const Trop& b);

// Triangular array m_i^{(l)}, 0 <= i <= l <= n, with m_0^{(l)} = 0.
class GZPattern {
public:
    GZPattern() = default;
    explicit GZPattern(int n);

    int n() const { return n_; }
    Trop& at(int i, int l);
    const Trop& at(int i, int l) const;
    // Row l (length l+1).
    std::vector<Trop> row(int l) const;
    void set_row(int l, const std::vector<Trop>& values);

    bool all_finite() const;
    friend bool operator==(const GZPattern&, const GZPattern&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<Trop>> m_;  // m_[l][i]
};

struct GZReport {
    bool ok = true;
    std::string message;  // first failure, human readable
    struct Failure {
        int family;  // 1: lambda_i^{(l+1)} >= lambda_i^{(l)}; 2: lambda_i^{(l)} >= lambda_{i+1}^{(l+1)}
        int i, l;
        Rational slack;
    };
    std::vector<Failure> failures;
    explicit operator bool() const { return ok; }
};

// Both interlacing families with slack >= delta, for 0 < i <= l <= n-1.
GZReport gz_check(const GZPattern& p, const Rational& delta = 0);

// lambda[l][i] = m_i^{(l)} - m_{i-1}^{(l)} for 1 <= i <= l (index 0 unused).
std::vector<std::vector<Rational>> interlacing_values(const GZPattern& p);

// Floating-point pattern used by the scaling layer.
struct RealGZPattern {
    int n = 0;
    std::vector<std::vector<double>> m;  // m[l][i]
};
// Same families as gz_check; inequalities may fail by at most `tol`.
bool gz_check_real(const RealGZPattern& p, double delta, double tol);

}  // namespace hornlab
