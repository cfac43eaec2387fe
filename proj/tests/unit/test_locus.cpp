#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hornlab/octahedron_locus.hpp"
#include "support.hpp"

#include <cmath>

using namespace hornlab;
using namespace hornlab::test;

namespace {

MFunction gz_m(int n, Rng& rng) {
    std::vector<TropWeighting> ws;
    for (int f = 0; f < 3; ++f) ws.push_back(calA_inverse(random_gz_pattern(n, rng, -9, 9)));
    return m_map(ws);
}

std::vector<double> boundary_of(const MFunction& m) { return horn_values(horn_tuple(m)); }

}  // namespace

TEST_CASE("locus parameterization") {
    CHECK(locus_dimension(2) == 8);
    CHECK(locus_dimension(3) == 15);
    Rng rng(71);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < 20; ++t) {
            MFunction m = gz_m(n, rng);
            auto x = two_face_vector(two_faces(m));
            REQUIRE(static_cast<int>(x.size()) == locus_dimension(n));
            CHECK(in_two_face_cone(n, x));
            auto b = locus_boundary(n, x);
            auto want = boundary_of(m);
            REQUIRE(b.size() == want.size());
            for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(b[i] - want[i]) < 1e-12);
        }
    std::vector<double> bad(8, 0.0);
    bad[0] = 5;  // m_001 far above its neighbours
    CHECK_FALSE(in_two_face_cone(2, bad));
}

TEST_CASE("distance agrees with the convex-programming oracle") {
    for (const auto& c : frozen()["locus"]["cases"]) {
        std::vector<double> h = c[0].get<std::vector<double>>();
        const double ref = c[1].get<double>();
        LocusDistance d = distance_to_octahedron_locus(h);
        REQUIRE(d.exact);
        REQUIRE(d.search);
        CHECK(std::abs(*d.exact - ref) < 1e-5);
        CHECK(std::abs(*d.search - *d.exact) < 1e-3);
        CHECK(d.distance <= std::min(*d.exact, *d.search) + 1e-12);
        auto at = locus_boundary(2, d.argmin);
        double dist = 0;
        for (std::size_t i = 0; i < h.size(); ++i) dist += (at[i] - h[i]) * (at[i] - h[i]);
        CHECK(std::abs(std::sqrt(dist) - d.distance) < 1e-9);
    }
}

TEST_CASE("locus members and perturbations") {
    Rng rng(72);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < (n == 2 ? 10 : 3); ++t) {
            auto b = boundary_of(gz_m(n, rng));
            CHECK(distance_to_octahedron_locus(b).distance <= 1e-9);
            // a row total: every total sits in a trace identity (A_n + B_n = AB_n, ...), so this leaves the locus
            b[rng.uniform_int(0, 5) * n + n - 1] += 1;
            double dd = distance_to_octahedron_locus(b).distance;
            CHECK(dd > 0);
            CHECK(dd <= 1 + 1e-9);
        }
    CHECK(distance_to_octahedron_locus(std::vector<double>(12, 0.0)).distance == 0);
    CHECK_THROWS_AS(distance_to_octahedron_locus(std::vector<double>(7, 0.0)), HornError);
}

TEST_CASE("search-only and exact-only options") {
    std::vector<double> h{2, 4, 1, 2, 2, 0, 3, 5, 3, 2, 4, 5};
    LocusOptions only_exact;
    only_exact.search = false;
    auto a = distance_to_octahedron_locus(h, only_exact);
    CHECK_FALSE(a.search);
    LocusOptions only_search;
    only_search.exact = false;
    auto b = distance_to_octahedron_locus(h, only_search);
    CHECK_FALSE(b.exact);
    CHECK(b.starts == 50);
    CHECK(b.evaluations > 0);
    CHECK(std::abs(a.distance - b.distance) < 1e-3);
}

TEST_CASE("concentration proxy") {
    auto deg = concentration_experiment({0, 0}, {0, 0}, {0, 0}, {2, 5}, 5, 3);
    for (const auto& r : deg.rows) {
        CHECK(r.failures == 0);
        CHECK(r.max < 1e-9);
    }
    auto rep = concentration_experiment({1, -1}, {1, -1}, {1, -1}, {2, 5, 10}, 40, 11);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& r : rep.rows) {
        CHECK(r.trials == 40);
        CHECK(r.failures == 0);
        CHECK(r.median <= r.q90);
        CHECK(r.q90 <= r.max);
    }
    MESSAGE("medians " << rep.rows[0].median << " " << rep.rows[1].median << " " << rep.rows[2].median);
    auto again = concentration_experiment({1, -1}, {1, -1}, {1, -1}, {2, 5, 10}, 40, 11);
    for (std::size_t i = 0; i < 3; ++i) CHECK(again.rows[i].median == rep.rows[i].median);
}
