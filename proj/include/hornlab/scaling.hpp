#pragma once

#include "hornlab/horncheck.hpp"
#include "hornlab/minors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace hornlab {

// 50 decimal digits: singular values of products spread over e^{±300}.
using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    static ComplexMatrix identity(int n);
    // Rejects NaN / Inf.
    static ComplexMatrix from_rows(const std::vector<std::vector<std::complex<double>>>& rows);
    static ComplexMatrix from_rational(const RationalMatrix& g);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    std::complex<double> at_double(int i, int j) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix leading_block(const ComplexMatrix& a, int l);
Complex determinant(const ComplexMatrix& a);
Real frobenius_norm(const ComplexMatrix& a);
// k-th compound: k×k minors indexed by lexicographic k-subsets.
ComplexMatrix compound(const ComplexMatrix& a, int k);

// e^{sx} φ; |sx| > 700 is rejected.
std::complex<double> mu_s(double x, std::complex<double> phi, double s);

// Angles on the slanted edges a_{l,i} (i < l); absent slants carry angle 1.
using AngleAssignment = std::map<EssentialLabel, std::complex<double>>;
void validate_angles(int n, const AngleAssignment& phi);

// Real weights on the essential edges of Π_st(n); every other edge has weight 0.
struct RealStWeighting {
    int n = 0;
    std::map<EssentialLabel, double> w;
};
RealStWeighting to_real(const TropWeighting& w);  // Π_st(n) weighting, finite essential edges

// Exponents are capped at |s·x| <= 300.
inline constexpr double kMaxExponent = 300.0;

// Correspondence matrix of e^{s w} φ; −∞ edges carry 0.
ComplexMatrix m_s(const TropWeighting& w, const AngleAssignment& phi, double s);
ComplexMatrix m_s(const RealStWeighting& w, const AngleAssignment& phi, double s);

// Cyclic Jacobi; descending.
std::vector<Real> hermitian_eigenvalues(const ComplexMatrix& h);
std::vector<Real> singular_values(const ComplexMatrix& a);
// log(σ_1 ⋯ σ_k) via the top singular value of the k-th compound.
Real log_singular_prefix(const ComplexMatrix& a, int k);

// m_i^{(l)} = (1/s) log(σ_1 ⋯ σ_i) of the leading l×l block.
RealGZPattern gz_s(const ComplexMatrix& a, double s);
// m_i(Π^{(l)}) for the truncations of the network.
GZPattern gz_trop(const TropWeighting& w, std::uint64_t cap = default_state_cap());
// gz_s(m_s(w, φ, s), s) with the compound entries taken as Lindström sums over vertex-disjoint
// families: overlapping paths never cancel, so the result keeps full precision at large s.
RealGZPattern gz_s_network(const TropWeighting& w, const AngleAssignment& phi, double s,
                           std::uint64_t cap = default_state_cap());

struct Zeta {
    RealStWeighting w;
    AngleAssignment phi;
};
// Inverse of m_s on the lower-triangular matrices with positive diagonal.
Zeta zeta_s(const ComplexMatrix& b, double s);

// Rows A, B, C, AB, BC, ABC of partial sums, flattened (6n values).
std::vector<double> horn_s(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, double s);
HornTuple horn_trop(const std::vector<TropWeighting>& ws, std::uint64_t cap = default_state_cap());
std::vector<double> horn_values(const HornTuple& t);  // Domain error on −∞

// Single network: gz^T(w) δ-strictly interlacing and distinct families of each Π^{(l)}, P_k
// separated by more than δ.  Three factors on Π_st(n): calA(w_i) and gz^T of the products
// w1w2, w2w3, w1w2w3 δ-strict, and distinct subsets of essential edges separated by more than δ.
bool genericity_filter(const std::vector<TropWeighting>& ws, const Rational& delta,
                       std::uint64_t cap = default_state_cap());
// Smallest interlacing slack of a finite pattern; empty for n < 2.
std::optional<Rational> gz_min_slack(const GZPattern& p);

// (1/2s) log((2 + ε + sqrt(4 + ε²))/2), ε = e^{-2s}: the exact error of the n = 2 instance
// a11 = 1, a21 = a22 = 0.
double closed_form_error(double s);
TropWeighting closed_form_instance();

struct ConvergenceRow {
    double s = 0;
    double error = 0;  // sup-norm of gz_s∘m_s − gz^T
};
struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool strictly_decreasing = false;
    double slope = 0;  // least-squares slope of log(error) against s over the largest half of s
};
ConvergenceReport convergence_experiment(const TropWeighting& w, const AngleAssignment& phi,
                                         const std::vector<double>& s_list,
                                         std::uint64_t cap = default_state_cap());
double fitted_log_slope(const std::vector<double>& s, const std::vector<double>& error);

ComplexMatrix haar_unitary(int n, Rng& rng);
// Element of 𝓑 with singular values e^{sλ}: Cholesky factor of U diag(e^{2sλ}) U*, U Haar.
ComplexMatrix sample_with_singular_values(const std::vector<double>& lambda, double s, Rng& rng);

// ---------------------------------------------------------------- n = 2 inequalities

using Mat2 = std::array<std::complex<double>, 4>;  // row-major
Mat2 mul(const Mat2& a, const Mat2& b);
// Tr(g g*) for a unit-determinant lower-triangular g.
double f_trace(const Mat2& g);
// [[u, 0], [v, 1/u]], log u uniform in [-2, 2], v complex Gaussian with scale e^{U[-2,2]}.
Mat2 random_unit_lower(Rng& rng);

struct N2Inequalities {
    // (lhs - rhs) / rhs for
    //   2(f(AB)f(BC) + f(A)f(C)) >= f(B)f(ABC)
    //   2(f(A)f(C) + f(B)f(ABC)) >= f(AB)f(BC)
    //   2(f(B)f(ABC) + f(AB)f(BC)) >= f(A)f(C)
    std::array<double, 3> slack{};
    // With s: exponents x_X from f(X) = e^{s x} + e^{-s x}; α = x_A + x_C, β = x_B + x_ABC,
    // γ = x_AB + x_BC and defect = max of α - max(β,γ), β - max(α,γ), γ - max(α,β).
    std::optional<double> alpha, beta, gamma, defect, bound;
    bool ok(double tol = 1e-9) const;
};
N2Inequalities n2_inequalities(const Mat2& a, const Mat2& b, const Mat2& c, std::optional<double> s = {});

}  // namespace hornlab
