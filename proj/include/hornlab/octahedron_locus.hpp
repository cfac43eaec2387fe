#pragma once

#include "hornlab/reconstruct.hpp"
#include "hornlab/scaling.hpp"

#include <optional>
#include <vector>

namespace hornlab {

// Points of the locus are parameterized by two-face values x (two_face_domain(n) order, m_000 = 0)
// in the rhombus cone; the map x -> boundary fills the interior by the octahedron recurrence and
// reads the six partial-sum rows A, B, C, AB, BC, ABC (horn_values order, 6n entries).
int locus_dimension(int n);  // n(n+2)
std::vector<double> locus_boundary(int n, const std::vector<double>& x);
// Every rhombus inside the two faces holds up to `tol`.
bool in_two_face_cone(int n, const std::vector<double>& x, double tol = 1e-12);
std::vector<double> two_face_vector(const TwoFaceData& x);  // drops m_000

struct LocusOptions {
    int starts = 50;         // multistart count of the local search
    double step_tol = 1e-6;  // compass step at termination
    std::uint64_t seed = 1;  // random starting points
    bool exact = true;       // n = 2 active-set solver
    bool search = true;
};

struct LocusDistance {
    double distance = 0;          // best of the methods run
    std::optional<double> exact;  // n = 2 only
    std::optional<double> search;
    long evaluations = 0;  // boundary evaluations of the search
    int starts = 0;
    std::vector<double> argmin;  // two-face parameters of the best point
};

// Euclidean distance from a 6n boundary vector to the locus.  The exact method enumerates the
// branches of the fill and the active rhombus sets and solves each equality-constrained least
// squares problem; the search is a multistart compass search over ±e_i and ±e_i±e_j, each start
// polished by the least-squares solve on its active piece.
LocusDistance distance_to_octahedron_locus(const std::vector<double>& boundary, const LocusOptions& opt = {});

struct ConcentrationRow {
    double s = 0;
    int trials = 0;
    int failures = 0;  // sampling / numeric failures, excluded from the statistics
    double median = 0, mean = 0, q90 = 0, max = 0;
    std::vector<std::string> failure_messages;  // "trial <t>: <what>"
};
struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;  // in s_list order
    bool median_strictly_decreasing = false;
};

// Per trial t and each s: A, B, C from sample_with_singular_values(λ, μ, ν) with Rng(seed + t), then
// distance_to_octahedron_locus(horn_s(A, B, C, s)).  Trials are independent; the report does not
// depend on the thread count.
ConcentrationReport concentration_experiment(const std::vector<double>& lambda, const std::vector<double>& mu,
                                             const std::vector<double>& nu, const std::vector<double>& s_list,
                                             int trials, std::uint64_t seed, const LocusOptions& opt = {});

}  // namespace hornlab
