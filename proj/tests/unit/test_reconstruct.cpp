#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hornlab/reconstruct.hpp"
#include "support.hpp"

using namespace hornlab;
using namespace hornlab::test;

namespace {

MFunction example_m() { return m_map(worked()); }

TwoFaceData random_two_face(int n, Rng& rng) {
    TwoFaceData x{{{0, 0, 0}, Trop(0)}};
    for (const auto& a : two_face_domain(n)) x[a] = Trop(ratio(rng.uniform_int(-30, 30), rng.uniform_int(1, 3)));
    return x;
}

TwoFaceData add(const TwoFaceData& a, const TwoFaceData& b) {
    TwoFaceData c;
    for (const auto& [k, v] : a) c[k] = trop_mul(v, b.at(k));
    return c;
}

WeightTriple random_triple(int n, Rng& rng, CPlacement pl) {
    std::vector<Trop> c;
    for (int j = 0; j < n; ++j) c.emplace_back(rng.uniform_int(-9, 9));
    return make_triple(random_essential_weighting(n, rng, -9, 9), random_essential_weighting(n, rng, -9, 9), c, pl);
}

WeightTriple sum(const WeightTriple& x, const WeightTriple& y) {
    WeightTriple z = x;
    for (auto [p, q] : {std::pair{&z.a, &y.a}, std::pair{&z.b, &y.b}, std::pair{&z.c, &y.c}})
        for (int e = 0; e < p->net->num_edges(); ++e) (*p)[e] = trop_mul((*p)[e], (*q)[e]);
    return z;
}

// Sub-products the reconstruction must keep multi-GZ.
void check_subproducts(const WeightTriple& w) {
    auto f = w.factors();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j <= 3; ++j) {
            std::vector<TropWeighting> sub(f.begin() + i, f.begin() + j);
            CHECK(check_multi_gz(sub).ok);
        }
}

}  // namespace

TEST_CASE("two-face domain") {
    for (int n = 1; n <= 4; ++n) {
        auto d = two_face_domain(n);
        CHECK(static_cast<int>(d.size()) == n * (n + 2));
        for (const auto& a : d) {
            CHECK(in_simplex(a, n));
            CHECK((a[1] == 0 || a[0] + a[1] + a[2] == n));
            CHECK(a != Alpha{0, 0, 0});
        }
    }
    auto x = two_faces(example_m());
    CHECK(x.size() == 9);  // with m_000
    CHECK_FALSE(x.count({0, 1, 0}));
}

TEST_CASE("beta_matrix is unimodular") {
    for (int n = 1; n <= 4; ++n)
        for (auto pl : {CPlacement::SourceAdjacent, CPlacement::SinkAdjacent}) {
            auto rows = beta_matrix(n, pl);
            REQUIRE(static_cast<int>(rows.size()) == n * (n + 2));
            Rational det = determinant(RationalMatrix::from_rows(rows));
            CHECK(abs(det) == 1);
            for (const auto& r : rows)
                for (const auto& v : r) CHECK((v == 0 || v == 1));
        }
}

TEST_CASE("beta_map is linear and matches its matrix") {
    Rng rng(41);
    for (int n = 2; n <= 3; ++n)
        for (auto pl : {CPlacement::SourceAdjacent, CPlacement::SinkAdjacent})
            for (int t = 0; t < 10; ++t) {
                WeightTriple u = random_triple(n, rng, pl), v = random_triple(n, rng, pl);
                CHECK(beta_map(sum(u, v)) == add(beta_map(u), beta_map(v)));
                // row · (a, b, c) coordinates
                std::vector<Rational> coords;
                for (const auto* w : {&u.a, &u.b})
                    for (int e : w->net->essential_edges()) coords.push_back((*w)[e].value());
                for (const auto& cv : c_values(u, pl)) coords.push_back(cv.value());
                auto rows = beta_matrix(n, pl);
                auto dom = two_face_domain(n);
                auto img = beta_map(u);
                for (std::size_t r = 0; r < dom.size(); ++r) {
                    Rational acc = 0;
                    for (std::size_t c = 0; c < coords.size(); ++c) acc += rows[r][c] * coords[c];
                    CHECK(img.at(dom[r]) == Trop(acc));
                }
            }
}

TEST_CASE("beta_inverse inverts beta_map") {
    Rng rng(42);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 3;
        auto pl = t % 2 ? CPlacement::SinkAdjacent : CPlacement::SourceAdjacent;
        TwoFaceData x = random_two_face(n, rng);
        WeightTriple w = beta_inverse(x, pl);
        CHECK(beta_map(w) == x);
    }
    TwoFaceData zero;
    for (const auto& a : two_face_domain(3)) zero[a] = Trop(0);
    auto w = beta_inverse(zero);
    for (const auto* f : {&w.a, &w.b, &w.c})
        for (const auto& v : f->w) CHECK(v == Trop(0));
}

TEST_CASE("c is read off consecutive differences") {
    Rng rng(43);
    for (int t = 0; t < 20; ++t) {
        WeightTriple w = random_triple(2, rng, CPlacement::SourceAdjacent);
        auto x = beta_map(w);
        auto c = c_values(w, CPlacement::SourceAdjacent);
        CHECK(c[0] == Trop(Rational(x.at({0, 0, 2}).value() - x.at({0, 1, 1}).value())));
        CHECK(c[1] == Trop(Rational(x.at({0, 1, 1}).value() - x.at({0, 2, 0}).value())));
    }
    TwoFaceData x;
    for (const auto& a : two_face_domain(2)) x[a] = Trop(0);
    x[{0, 0, 2}] = Trop(5);
    x[{0, 1, 1}] = Trop(3);
    x[{0, 2, 0}] = Trop(2);
    auto c = c_values(beta_inverse(x), CPlacement::SourceAdjacent);
    CHECK(c[0] == Trop(2));
    CHECK(c[1] == Trop(1));
}

TEST_CASE("beta multipaths") {
    for (int n = 2; n <= 4; ++n) {
        const Multipath& full = beta_multipath(n, {n, 0, 0});
        CHECK(full.sources == interval(1, n));
        CHECK(full.sinks[0] == interval(1, n));
        CHECK(full.sinks[1].empty());
        CHECK(full.sinks[2].empty());
    }
    const Multipath& b011 = beta_multipath(2, {0, 1, 1});
    CHECK(b011.sources == IndexSet{1, 2});
    CHECK(b011.sinks[0].empty());
    CHECK(b011.sinks[1] == IndexSet{1});
    CHECK(b011.sinks[2] == IndexSet{2});
    const Multipath& b201 = beta_multipath(4, {2, 0, 1});
    CHECK(b201.sources == IndexSet{2, 3, 4});
    CHECK(b201.sinks[0] == IndexSet{1, 2});
    CHECK(b201.sinks[2] == IndexSet{4});
}

TEST_CASE("example 3.3 is reconstructed from its two faces") {
    MFunction m = example_m();
    Reconstruction r = reconstruct_from_boundary(two_faces(m));
    CHECK(r.ok());
    CHECK(r.m == m);
    CHECK(m_map(r.w.factors()) == m);
    check_subproducts(r.w);

    TwoFaceData zero;
    for (const auto& a : two_face_domain(2)) zero[a] = Trop(0);
    Reconstruction z = reconstruct_from_boundary(zero);
    CHECK(z.ok());
    CHECK(z.m == MFunction(2, 3));
}

TEST_CASE("random cone points are reconstructed exactly") {
    Rng rng(44);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < 20; ++t) {
            TwoFaceData x = random_cone_point(n, rng);
            Reconstruction r = reconstruct_from_boundary(x);
            CHECK(r.a_gz);
            CHECK(r.b_gz);
            CHECK(r.c_gz);
            CHECK(r.faces_match);
            CHECK(r.octahedron_ok);
            CHECK(rhombus_check(r.m, RhombusScope::All).empty());
            check_subproducts(r.w);
        }
}

TEST_CASE("reconstruction refuses points outside the cone") {
    TwoFaceData x = two_faces(example_m());
    x[{1, 0, 0}] = Trop(10);
    try {
        reconstruct_from_boundary(x);
        FAIL("expected a precondition error");
    } catch (const HornError& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
    x = two_faces(example_m());
    x[{1, 0, 0}] = Trop::neg_inf();
    CHECK_THROWS_AS(reconstruct_from_boundary(x), HornError);
}

TEST_CASE("n = 2 construction hits the prescribed values") {
    auto check = [](long l1, long l2, long l3, long l12, long l23) {
        MFunction m = m_map(n2_construct(l1, l2, l3, l12, l23));
        // the construction sits on the branch the octahedron recurrence does not cover
        CHECK(rhombus_check(m, RhombusScope::All).empty());
        CHECK(tetrahedron_check(m).empty());
        CHECK(trace_check(horn_tuple(m)));
        CHECK(m(1, 0, 0) == Trop(l1));
        CHECK(m(0, 1, 0) == Trop(l12));
        CHECK(m(0, 0, 1) == Trop(l1 - l2 + l3));
        CHECK(m(1, 1, 0) == trop_mul(m(2, 0, 0), Trop(l2)));
        CHECK(m(1, 0, 1) == trop_mul(m(2, 0, 0), Trop(l23)));
        CHECK(m(0, 1, 1) == trop_mul(m(0, 2, 0), Trop(l3)));
        return m;
    };
    MFunction a = check(1, 1, 1, 1, 1);
    MFunction b = check(1, 0, 1, 1, 1);
    CHECK(b(0, 0, 1) == Trop(2));
    MFunction z = check(0, 0, 0, 0, 0);
    CHECK(z == MFunction(2, 3));
    Rng rng(45);
    int built = 0;
    for (int t = 0; t < 400 && built < 50; ++t) {
        long l[5];
        for (auto& v : l) v = rng.uniform_int(0, 6);
        try {
            check(l[0], l[1], l[2], l[3], l[4]);
            ++built;
        } catch (const HornError& e) {
            CHECK(e.kind() == ErrorKind::Precondition);
        }
    }
    CHECK(built >= 20);
    CHECK_THROWS_AS(n2_construct(-1, 0, 0, 0, 0), HornError);
}

TEST_CASE("n = 2 realization covers the rhombus + tetrahedron cone") {
    Rng rng(46);
    int realized = 0, off_octahedron = 0;
    for (int t = 0; t < 200000 && realized < 60; ++t) {
        MFunction m(2, 3);
        for (const auto& a : simplex_points(2, 3))
            if (a != Alpha{0, 0, 0}) m.at(a) = Trop(rng.uniform_int(-4, 4));
        if (!rhombus_check(m, RhombusScope::All).empty() || !tetrahedron_check(m).empty()) continue;
        ++realized;
        off_octahedron += !octahedron_check(m).empty();
        CHECK(m_map(n2_realize(m)) == m);
    }
    CHECK(realized == 60);
    CHECK(off_octahedron > 0);
}
