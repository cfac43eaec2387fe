#include "hornlab/common.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace hornlab {

void fail(ErrorKind kind, const std::string& msg) { throw HornError(kind, msg); }

IndexSet interval(int a, int b) {
    IndexSet r;
    for (int x = a; x <= b; ++x) r.push_back(x);
    return r;
}

IndexSet opposite(const IndexSet& I, int n) {
    IndexSet r;
    for (int a : I) r.push_back(n + 1 - a);
    std::sort(r.begin(), r.end());
    return r;
}

IndexSet shifted(const IndexSet& I, int b) {
    IndexSet r;
    for (int a : I) r.push_back(a + b);
    return r;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool disjoint(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r.empty();
}

std::vector<IndexSet> subsets(int n, int r) {
    std::vector<IndexSet> out;
    if (r < 0 || r > n) return out;
    IndexSet cur;
    // iterative lexicographic combinations
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(idx);
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::uint64_t default_state_cap() {
    const char* env = std::getenv("HORNLAB_MAX_STATES");
    if (env && *env) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        fail(ErrorKind::Usage, std::string("HORNLAB_MAX_STATES is not a positive integer: ") + env);
    }
    return 10000000ULL;
}

void StateBudget::tick(std::uint64_t k) {
    used_ += k;
    if (used_ > cap_)
        fail(ErrorKind::Cap, "enumeration cap exceeded (" + std::to_string(cap_) +
                                 " partial states); raise --cap or HORNLAB_MAX_STATES");
}

Rational ratio(long p, long q) {
    if (q == 0) fail(ErrorKind::Domain, "zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const IndexSet& I) {
    std::string s = "{";
    for (size_t i = 0; i < I.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(I[i]);
    }
    return s + "}";
}

std::string rational_text(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts integers, fractions "p/q" and finite decimals "-1.25" / "2e-3".
Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) fail(ErrorKind::Usage, "empty number");
    auto bad = [&]() { fail(ErrorKind::Usage, "not an exact rational: '" + text + "'"); };
    try {
        auto slash = t.find('/');
        if (slash != std::string::npos) {
            Rational q(mpz_class(t.substr(0, slash), 10), mpz_class(t.substr(slash + 1), 10));
            if (q.get_den() == 0) bad();
            q.canonicalize();
            return q;
        }
        std::string mant = t;
        long exp10 = 0;
        auto epos = t.find_first_of("eE");
        if (epos != std::string::npos) {
            mant = t.substr(0, epos);
            exp10 = std::stol(t.substr(epos + 1));
        }
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant = mant.substr(1);
        }
        auto dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            exp10 -= static_cast<long>(mant.size() - dot - 1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) bad();
        mpz_class num(digits, 10);
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        Rational q = exp10 >= 0 ? Rational(num * p10) : Rational(num, p10);
        q.canonicalize();
        return neg ? Rational(-q) : q;
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    fail(ErrorKind::Usage, "not an exact rational: '" + text + "'");
}

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng Rng::split(std::uint64_t stream) const {
    Rng child(state_ ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
    child.next();
    return Rng(child.next());
}

long Rng::uniform_int(long lo, long hi) {
    if (hi < lo) fail(ErrorKind::Usage, "empty integer range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} - span + 1) % span;  // 2^64 mod span
    for (;;) {
        std::uint64_t r = next();
        if (span == 0) return lo + static_cast<long>(r);
        if (r >= limit) return lo + static_cast<long>(r % span);
    }
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    double u1 = uniform01(), u2 = uniform01();
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace hornlab
