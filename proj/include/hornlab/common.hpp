#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornlab {

using Rational = mpq_class;

// Error taxonomy; the CLI maps each kind onto an exit code.
enum class ErrorKind { Usage, Domain, Precondition, Cap };

class HornError : public std::runtime_error {
public:
    HornError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

// Sorted 1-based index set.
using IndexSet = std::vector<int>;

IndexSet interval(int a, int b);                 // [a,b], empty if b < a
IndexSet opposite(const IndexSet& I, int n);     // {n+1-a}
IndexSet shifted(const IndexSet& I, int b);      // {a+b}
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_minus(const IndexSet& a, const IndexSet& b);
bool disjoint(const IndexSet& a, const IndexSet& b);
// All r-subsets of [1,n], lexicographic.
std::vector<IndexSet> subsets(int n, int r);

// Enumeration cap: default 10^7 partial states, overridable by HORNLAB_MAX_STATES.
std::uint64_t default_state_cap();

// Counts partial states of a combinatorial search and raises once over the cap.
class StateBudget {
public:
    explicit StateBudget(std::uint64_t cap = default_state_cap()) : cap_(cap) {}
    void tick(std::uint64_t k = 1);
    std::uint64_t used() const { return used_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_;
    std::uint64_t used_ = 0;
};

// Canonical p/q (mpq_class(p,q) alone is not canonicalized).
Rational ratio(long p, long q);

// SplitMix64: a counter-based generator; split(i) derives an independent stream, so
// per-trial streams do not depend on scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    Rng split(std::uint64_t stream) const;
    long uniform_int(long lo, long hi);  // inclusive, unbiased
    double uniform01();                  // [0,1), 53 bits
    double normal();                     // Box-Muller
    std::uint64_t seed() const { return state_; }

private:
    std::uint64_t state_;
};

std::string to_string(const IndexSet& I);

// Exact decimal-or-fraction text of a rational ("3", "-1/2").
std::string rational_text(const Rational& q);
Rational parse_rational(const std::string& text);

}  // namespace hornlab
