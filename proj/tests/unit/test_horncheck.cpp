#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace hornlab;
using namespace hornlab::test;

namespace {

MFunction example_m() {
    MFunction m(2, 3);
    const std::map<Alpha, long> v{{{0, 0, 0}, 0}, {{0, 0, 1}, 4}, {{0, 0, 2}, 5}, {{0, 1, 0}, 3}, {{0, 1, 1}, 7},
                                  {{0, 2, 0}, 5}, {{1, 0, 0}, 2}, {{1, 0, 1}, 6}, {{1, 1, 0}, 4}, {{2, 0, 0}, 3}};
    for (const auto& [a, x] : v) m.at(a) = Trop(x);
    return m;
}

std::vector<Trop> ints(std::initializer_list<long> v) {
    std::vector<Trop> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<TropWeighting> gz_triple(int n, Rng& rng) {
    std::vector<TropWeighting> ws;
    for (int f = 0; f < 3; ++f) ws.push_back(calA_inverse(random_gz_pattern(n, rng, -9, 9)));
    return ws;
}

long binom(long n, long r) {
    if (r < 0 || r > n) return 0;
    long b = 1;
    for (long i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
}

Rational max_face_excess(const MFunction& m) {
    bool first = true;
    Rational best;
    for (const auto& r : enumerate_rhombi(m.n(), m.k(), RhombusScope::Faces)) {
        Rational ex = m.at(r.longd[0]).value() + m.at(r.longd[1]).value() - m.at(r.shortd[0]).value() -
                      m.at(r.shortd[1]).value();
        if (first || ex > best) best = ex;
        first = false;
    }
    return best;
}

}  // namespace

TEST_CASE("example 3.3 passes every check") {
    MFunction m = example_m();
    CHECK(m == m_map(worked()));
    for (auto scope : {RhombusScope::Faces, RhombusScope::All}) CHECK(check_all(m, scope).ok());
    auto tets = tetrahedron_check(m);
    CHECK(tets.empty());
    HornTuple t = horn_tuple(m);
    CHECK(t.rows[kA] == ints({2, 3}));
    CHECK(t.rows[kB] == ints({1, 2}));
    CHECK(t.rows[kC] == ints({2, 0}));
    CHECK(t.rows[kAB] == ints({3, 5}));
    CHECK(t.rows[kBC] == ints({3, 2}));
    CHECK(t.rows[kABC] == ints({4, 5}));
    CHECK(trace_check(t));
    t.rows[kABC].back() = Trop(6);
    CHECK_FALSE(trace_check(t));
    HornTuple zero{2, {}};
    for (auto& r : zero.rows) r = ints({0, 0});
    CHECK(trace_check(zero));
}

TEST_CASE("rhombus violations are located") {
    MFunction m = example_m();
    m(1, 0, 0) = Trop(10);
    auto bad = rhombus_check(m, RhombusScope::All);
    REQUIRE_FALSE(bad.empty());
    bool found = false;
    for (const auto& r : bad) {
        std::set<Alpha> verts{r.longd[0], r.longd[1], r.shortd[0], r.shortd[1]};
        if (verts == std::set<Alpha>{{1, 0, 0}, {0, 2, 0}, {0, 1, 0}, {1, 1, 0}}) found = true;  // face j-plane, k = 0
        CHECK(r.short_sum < r.long_sum);
    }
    CHECK(found);
    CHECK(bad.size() == 2);
    CHECK(rhombus_check(m, RhombusScope::Faces).size() == 1);  // the other one lies in the plane j = 0
    CHECK(rhombus_check(MFunction(3, 3), RhombusScope::All).empty());
}

TEST_CASE("tetrahedron and octahedron verdicts") {
    auto tets = std::vector<TetrahedronSpec>{};
    MFunction one(2, 3);
    one(0, 0, 1) = Trop(1);  // A = 1, B = C = 0
    tets = tetrahedron_check(one);
    REQUIRE(tets.size() == 1);
    CHECK(tets[0].A == Trop(1));
    CHECK(tets[0].B == Trop(0));

    MFunction m = example_m();
    auto tm = tetrahedron_check(MFunction(2, 3));
    CHECK(tm.empty());
    m(1, 0, 1) = Trop(5);  // B = 8 with A = 8, C = 9
    auto oct = octahedron_check(m);
    REQUIRE(oct.size() == 1);
    CHECK(oct[0].A == Trop(8));
    CHECK(oct[0].B == Trop(8));
    CHECK(oct[0].C == Trop(9));
    CHECK(octahedron_check(MFunction(3, 3)).empty());
}

TEST_CASE("rhombus enumeration counts and shape") {
    for (int n = 1; n <= 5; ++n) {
        CHECK(static_cast<long>(enumerate_rhombi(n, 3, RhombusScope::All).size()) == 12 * binom(n + 1, 3));
        CHECK(static_cast<long>(enumerate_rhombi(n, 3, RhombusScope::Faces).size()) == 3L * n * (n - 1));
        for (const auto& r : enumerate_rhombi(n, 3, RhombusScope::All)) {
            for (int t = 0; t < 3; ++t) CHECK(r.longd[0][t] + r.longd[1][t] == r.shortd[0][t] + r.shortd[1][t]);
            int dist = 0;
            for (int t = 0; t < 3; ++t) dist += std::abs(r.longd[0][t] - r.longd[1][t]);
            CHECK(dist >= 2);
        }
    }
    CHECK(enumerate_rhombi(2, 4, RhombusScope::Faces).size() == 9);
    CHECK_THROWS_AS(enumerate_rhombi(2, 4, RhombusScope::All), HornError);
}

TEST_CASE("m-functions of random weightings satisfy rhombus and tetrahedron conditions") {
    Rng rng(31);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < 25; ++t) {
            std::vector<TropWeighting> ws;
            for (int f = 0; f < 3; ++f) ws.push_back(random_weighting(standard_network_ptr(n), rng, -9, 9));
            MFunction m = m_map(ws);
            CHECK(rhombus_check(m, RhombusScope::All).empty());
            CHECK(tetrahedron_check(m).empty());
            CHECK(trace_check(horn_tuple(m)));
        }
}

TEST_CASE("GZ weightings satisfy the octahedron recurrence and are filled back") {
    Rng rng(32);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < 25; ++t) {
            MFunction m = m_map(gz_triple(n, rng));
            CHECK(octahedron_check(m).empty());
            for (auto d : {FillDirection::FromJ0AndTop, FillDirection::FromK0AndI0})
                CHECK(octahedron_fill(n, fill_input_faces(m, d), d) == m);
        }
}

TEST_CASE("fill on example 3.3 recovers m_010") {
    MFunction m = example_m();
    auto faces = fill_input_faces(m, FillDirection::FromJ0AndTop);
    CHECK(faces.size() == 9);
    CHECK_FALSE(faces.count({0, 1, 0}));
    MFunction f = octahedron_fill(2, faces, FillDirection::FromJ0AndTop);
    CHECK(f(0, 1, 0) == Trop(3));
    CHECK(f == m);
    CHECK(octahedron_fill(3, fill_input_faces(MFunction(3, 3), FillDirection::FromK0AndI0),
                          FillDirection::FromK0AndI0) == MFunction(3, 3));
}

TEST_CASE("fill rejects bad faces") {
    MFunction m = example_m();
    auto faces = fill_input_faces(m, FillDirection::FromJ0AndTop);
    faces[{1, 0, 0}] = Trop(10);
    try {
        octahedron_fill(2, faces, FillDirection::FromJ0AndTop);
        FAIL("expected a precondition error");
    } catch (const HornError& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
    faces = fill_input_faces(m, FillDirection::FromJ0AndTop);
    faces.erase({0, 0, 2});
    CHECK_THROWS_AS(octahedron_fill(2, faces, FillDirection::FromJ0AndTop), HornError);
}

TEST_CASE("phi_k is the largest face-rhombus excess") {
    MFunction m = example_m();
    Trop phi = trop_potential_phi_k(m);
    CHECK(phi <= Trop(0));
    CHECK(phi == Trop(max_face_excess(m)));
    CHECK(trop_potential_phi_k(MFunction(3, 3)) == Trop(0));
    m(1, 0, 0) = Trop(10);
    CHECK(Trop(0) < trop_potential_phi_k(m));

    Rng rng(33);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + t % 2, k = 2 + t % 3;
        MFunction r(n, k);
        for (const auto& a : simplex_points(n, k))
            if (a != Alpha(k, 0)) r.at(a) = Trop(rng.uniform_int(-6, 6));
        Trop p = trop_potential_phi_k(r);
        CHECK(p == Trop(max_face_excess(r)));
        CHECK((p <= Trop(0)) == rhombus_check(r, RhombusScope::Faces).empty());
    }
    MFunction inf(2, 3);
    inf(1, 0, 0) = Trop::neg_inf();
    try {
        trop_potential_phi_k(inf);
        FAIL("expected a domain error");
    } catch (const HornError& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("trop_potential_bk detects interlacing") {
    GZPattern p(2);
    p.set_row(1, {Trop(0), Trop(2)});
    p.set_row(2, {Trop(0), Trop(3), Trop(4)});
    CHECK(trop_potential_bk(p) == Trop(-1));
    CHECK(trop_potential_bk(GZPattern(3)) == Trop(0));
    p.set_row(1, {Trop(0), Trop(0)});
    CHECK(trop_potential_bk(p) == Trop(1));

    Rng rng(34);
    int pos = 0, neg = 0;
    for (int t = 0; t < 500; ++t) {
        const int n = 2 + t % 3;
        GZPattern q(n);
        for (int l = 1; l <= n; ++l)
            for (int i = 1; i <= l; ++i) q.at(i, l) = Trop(rng.uniform_int(-4, 4) + (t % 2 ? 0 : 3 * i * (n - i)));
        bool ok = gz_check(q).ok;
        CHECK((trop_potential_bk(q) <= Trop(0)) == ok);
        (ok ? pos : neg)++;
    }
    for (int t = 0; t < 100; ++t) {
        GZPattern q = random_gz_pattern(2 + t % 3, rng, -9, 9);
        CHECK(trop_potential_bk(q) <= Trop(0));
    }
    CHECK(neg > 0);
}
