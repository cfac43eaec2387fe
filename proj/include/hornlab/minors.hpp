#pragma once

#include "hornlab/horncheck.hpp"

#include <map>
#include <vector>

namespace hornlab {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols);  // zero
    static RationalMatrix identity(int n);
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool square() const { return r_ == c_; }
    // 0-based
    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);
RationalMatrix inverse(const RationalMatrix& a);  // Domain error when singular
RationalMatrix product(const std::vector<RationalMatrix>& gs);

// Fraction-free (Bareiss) elimination with row pivoting.
Rational determinant(const RationalMatrix& a);
// Δ_{I,J}, 1-based sets; empty sets give 1.
Rational minor(const RationalMatrix& g, const IndexSet& I, const IndexSet& J);

// n × (k+1)n block matrix [Id, g_1, g_1 g_2, ..., g_1 ⋯ g_k].
RationalMatrix bold_g(const std::vector<RationalMatrix>& gs);
// J(α) = ([1,n] ∖ [1,Σα]^op) ∪ ([1,α_1]+n) ∪ ... ∪ ([1,α_k]+kn)
IndexSet corner_columns(int n, const Alpha& alpha);

Rational corner_minor(const RationalMatrix& g, int i);  // Δ_{[1,i]^op,[1,i]}
Rational multi_corner_minor(const std::vector<RationalMatrix>& gs, const Alpha& alpha);
// Sum over chains L_1, ..., L_{k-1} of Π_i Δ_{L_{i-1}, J_i ∪ L_i}(g_i).
Rational cauchy_binet_expansion(const std::vector<RationalMatrix>& gs, const Alpha& alpha);
// Coefficient of x_0^{n-Σα} x_1^{α_1} ⋯ x_k^{α_k} in det(x_0 Id + x_1 g_1 + ... + x_k g_1⋯g_k).
// Each column position c is taken from exactly one block, so the admissible J pick one column
// per position; the minor enters with the sign of the reordering by position.
Rational m_tilde(const std::vector<RationalMatrix>& gs, const Alpha& alpha);

// All M_α over Δ^k(n).
std::map<Alpha, Rational> corner_minor_map(const std::vector<RationalMatrix>& gs);

bool is_unipotent_upper(const RationalMatrix& u);
// (u_0 g_1 u_1^{-1}, ..., u_{k-1} g_k u_k^{-1})
std::vector<RationalMatrix> u_action(const std::vector<RationalMatrix>& us, const std::vector<RationalMatrix>& gs);

// M_{i+1,j,k+1} M_{i,j+1,k} - M_{i,j+1,k+1} M_{i+1,j,k} - M_{i,j,k+1} M_{i+1,j+1,k}; M = 0 outside Δ³(n).
Rational geometric_octahedron_residual(const std::vector<RationalMatrix>& gs, int i, int j, int k);
// Solves the recurrence from the input faces of `d` (same faces as the tropical fill).
std::map<Alpha, Rational> geometric_fill(int n, const std::map<Alpha, Rational>& faces, FillDirection d);

Rational phi_bk(const RationalMatrix& g);
Rational phi_k(const std::vector<RationalMatrix>& gs);
// Φ_k as the Laurent polynomial in the face minors M_{0^l,i,j,0^{k-2-l}}.
Rational phi_k_by_corner_minors(const std::vector<RationalMatrix>& gs);

// λ_j^{(l)}, 1 <= j <= l <= n.
class GeoGZPattern {
public:
    GeoGZPattern() = default;
    explicit GeoGZPattern(int n);  // all ones
    int n() const { return n_; }
    Rational& at(int j, int l) { return lam_[l][j]; }
    const Rational& at(int j, int l) const { return lam_[l][j]; }
    friend bool operator==(const GeoGZPattern&, const GeoGZPattern&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<Rational>> lam_;
};

// diag(λ_n^{(n)}, ..., λ_1^{(n)}) · Π_{i<j, lex} x_{-(j-i)}(t_ij), t_ij = λ_{n+1-j}^{(n+i-j)} / λ_{n+1-j}^{(n)}.
RationalMatrix theta_gz(const GeoGZPattern& p);
// λ_j^{(n-i)} = Δ_{i,j} / Δ_{i,j-1} with Δ_{i,j} = Δ_{[1,j]^op,[i+1,i+j]}.
GeoGZPattern gz_pattern_of(const RationalMatrix& b);
// Φ_BK ∘ θ_GZ as a Laurent polynomial in the λ's.
Rational phi_bk_of_pattern(const GeoGZPattern& p);

// (M_n/M_{n-1}, ..., M_2/M_1, M_1)
std::vector<Rational> hw(const RationalMatrix& g);

// Integer entries in [-9, 9]; nonsingular.
RationalMatrix random_matrix(int n, Rng& rng);
// Unit upper-triangular, integer entries in [-9, 9] above the diagonal.
RationalMatrix random_unipotent(int n, Rng& rng);
// Lower-triangular with entries in [1, 9] on and below the diagonal.
RationalMatrix random_positive_lower(int n, Rng& rng);
// k random matrices whose multi-corner minors are all nonzero.
std::vector<RationalMatrix> random_generic_tuple(int n, int k, Rng& rng);

std::string matrix_text(const RationalMatrix& g);

}  // namespace hornlab
