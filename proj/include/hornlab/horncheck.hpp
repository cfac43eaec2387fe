#pragma once

#include "hornlab/multipath.hpp"

#include <array>

namespace hornlab {

// Partial-sum rows (length n) for Π1, Π2, Π3, Π1Π2, Π2Π3, Π1Π2Π3.
struct HornTuple {
    int n = 0;
    std::array<std::vector<Trop>, 6> rows;
    friend bool operator==(const HornTuple&, const HornTuple&) = default;
};
enum HornRow { kA = 0, kB, kC, kAB, kBC, kABC };
extern const std::array<const char*, 6> kHornRowNames;

// Boundary of a k = 3 MFunction read as the six partial-sum rows.
HornTuple horn_tuple(const MFunction& m);

bool trace_check(const HornTuple& t);

enum class RhombusScope { Faces, All };

// Vertices y, y-f_a+f_b, y-f_a+f_c, y-2f_a+f_b+f_c in barycentric coordinates; the long diagonal
// joins y and y-2f_a+f_b+f_c.
struct RhombusSpec {
    Alpha longd[2];
    Alpha shortd[2];
    Trop long_sum, short_sum;  // filled by the checks; violation iff short_sum < long_sum
};

// k = 3 for All; Faces enumerates the planes F_l = (0^l, i, j, 0^{k-2-l}).
const std::vector<RhombusSpec>& enumerate_rhombi(int n, int k, RhombusScope scope);
// Violated rhombi (empty = pass).  -inf values compare tropically (-inf + x = -inf).
std::vector<RhombusSpec> rhombus_check(const MFunction& m, RhombusScope scope);
// Violated rhombi among those whose four vertices all lie in the keys of `values` (k = 3).
std::vector<RhombusSpec> rhombus_check_partial(int n, const std::map<Alpha, Trop>& values);

struct TetrahedronSpec {
    int i = 0, j = 0, k = 0;
    Trop A, B, C;
};
std::vector<TetrahedronSpec> tetrahedron_check(const MFunction& m);
std::vector<TetrahedronSpec> octahedron_check(const MFunction& m);

enum class FillDirection {
    FromJ0AndTop,  // known {j=0} ∪ {i+j+k=n}; solves for m_{i,j+1,k}
    FromK0AndI0,   // known {k=0} ∪ {i=0}; solves for m_{i+1,j,k+1}
};
bool in_fill_input(const Alpha& a, int n, FillDirection d);
std::map<Alpha, Trop> fill_input_faces(const MFunction& m, FillDirection d);
MFunction octahedron_fill(int n, const std::map<Alpha, Trop>& faces, FillDirection d);

Trop trop_potential_phi_k(const MFunction& m);
Trop trop_potential_bk(const GZPattern& p);

struct CheckReport {
    bool trace = true;
    std::vector<RhombusSpec> rhombi;
    std::vector<TetrahedronSpec> tetrahedra, octahedra;
    bool ok() const { return trace && rhombi.empty() && tetrahedra.empty() && octahedra.empty(); }
};
CheckReport check_all(const MFunction& m, RhombusScope scope);

}  // namespace hornlab
