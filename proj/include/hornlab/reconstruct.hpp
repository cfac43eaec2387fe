#pragma once

#include "hornlab/horncheck.hpp"

namespace hornlab {

// Values on {j = 0} ∪ {i+j+k = n} of Δ³(n); m_000 = 0 may be present or omitted.
using TwoFaceData = std::map<Alpha, Trop>;

// The n(n+2) nontrivial points of the two-face domain, lexicographic.
std::vector<Alpha> two_face_domain(int n);
TwoFaceData two_faces(const MFunction& m);

// Where the n free weights of the third factor sit.
enum class CPlacement { SourceAdjacent, SinkAdjacent };

struct WeightTriple {
    TropWeighting a, b, c;  // on Π_st(n); a, b essential-only, c only on its n line edges
    std::vector<TropWeighting> factors() const { return {a, b, c}; }
};

// Edge of Π_st(n) carrying c_j.
int c_edge(const PlanarNetwork& net, int j, CPlacement placement);
WeightTriple make_triple(const TropWeighting& a, const TropWeighting& b, const std::vector<Trop>& c,
                         CPlacement placement);
std::vector<Trop> c_values(const WeightTriple& w, CPlacement placement);

// Unique multipath of Π_st(n)^3 with sources [n-Σα+1, n] and sinks ([1,α_1], [1,α_2], [n-α_3+1, n]).
const Multipath& beta_multipath(int n, const Alpha& index);

TwoFaceData beta_map(const WeightTriple& w);
WeightTriple beta_inverse(const TwoFaceData& x, CPlacement placement = CPlacement::SourceAdjacent);

// Coefficient matrix of beta_map: rows two_face_domain(n), columns a_{l,i} (lex), b_{l,i} (lex), c_1..c_n.
std::vector<std::vector<Rational>> beta_matrix(int n, CPlacement placement = CPlacement::SourceAdjacent);

// Rejection sampler for the two-face rhombus cone: β-image of random integer GZ data
// (patterns with entries in [-range, range], increasing c), kept when every rhombus inside the
// two faces holds.
TwoFaceData random_cone_point(int n, Rng& rng, long range = 9);

struct Reconstruction {
    WeightTriple w;
    MFunction m;
    bool a_gz = false, b_gz = false, c_gz = false;
    bool faces_match = false;
    bool octahedron_ok = false;
    bool ok() const { return a_gz && b_gz && c_gz && faces_match && octahedron_ok; }
};
Reconstruction reconstruct_from_boundary(const TwoFaceData& x, CPlacement placement = CPlacement::SourceAdjacent,
                                         std::uint64_t cap = default_state_cap());

// Rank-2 triple realizing prescribed tropical singular values on the λ(123)+λ(2) = λ(1)+λ(3) branch.
std::vector<TropWeighting> n2_construct(const Rational& l1, const Rational& l2, const Rational& l3,
                                        const Rational& l12, const Rational& l23);

// Rank-2 triple whose m-function equals m, for m in the cone of rhombus inequalities and tetrahedron
// equality: octahedron branch through reconstruct_from_boundary, the other branch through n2_construct
// after normalizing m_200 = m_020 = m_002 = 0.
std::vector<TropWeighting> n2_realize(const MFunction& m);

}  // namespace hornlab
