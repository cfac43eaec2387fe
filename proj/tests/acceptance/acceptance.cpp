// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include "hornlab/cli.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace hornlab;
using namespace hornlab::test;

namespace {

// Everything a criterion computes goes into its transcript; criterion 10 compares transcripts.
struct Outcome {
    bool pass = true;
    std::string detail;
    std::ostringstream log;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = "first failure: " + what;
        pass = pass && ok;
    }
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<void(Outcome&)> run;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

// ---------------------------------------------------------------- 1

void example_reproduction(Outcome& o) {
    RunConfig c;
    c.cmd = "m_map";
    c.input = data_path("worked_networks.json");
    Report r = cmd_m_map(c);
    MFunction m = parse_mfunction(r.body.dump());
    const std::map<Alpha, long> want{{{0, 0, 0}, 0}, {{2, 0, 0}, 3}, {{0, 2, 0}, 5}, {{0, 0, 2}, 5},
                                     {{1, 0, 0}, 2}, {{0, 1, 0}, 3}, {{0, 0, 1}, 4}, {{1, 1, 0}, 4},
                                     {{1, 0, 1}, 6}, {{0, 1, 1}, 7}};
    for (const auto& [a, v] : want) o.require(m.at(a) == Trop(v), "m_" + alpha_text(a));
    o.require(m.values().size() == want.size(), "value count");
    o.require(r.body["tropical_singular_values"]["23"] == Json::array({"3", "-1"}), "lambda(23)");
    o.log << r.body.dump();
    if (o.pass) o.detail = "10 published values exact, lambda(23) = " + r.body["tropical_singular_values"]["23"].dump();
}

// ---------------------------------------------------------------- 2

void rhombus_tetrahedron_suite(Outcome& o) {
    Rng rng(2002);
    long rhombi = 0, tets = 0;
    const int count = 500;
    for (int t = 0; t < count; ++t) {
        const int n = 2 + t % 2;
        std::vector<TropWeighting> ws;
        for (int f = 0; f < 3; ++f) ws.push_back(random_weighting(standard_network_ptr(n), rng, -9, 9));
        MFunction m = m_map(ws);
        rhombi += static_cast<long>(rhombus_check(m, RhombusScope::All).size());
        tets += static_cast<long>(tetrahedron_check(m).size());
        o.log << mfunction_json(m).dump() << "\n";
    }
    o.require(rhombi == 0, std::to_string(rhombi) + " rhombus violations");
    o.require(tets == 0, std::to_string(tets) + " tetrahedron violations");
    if (o.pass) o.detail = std::to_string(count) + " weightings, 0 rhombus / 0 tetrahedron violations";
}

// ---------------------------------------------------------------- 3

void octahedron_suite(Outcome& o) {
    Rng rng(3003);
    const int count = 500;
    long draws = 0, oct = 0, sub_fail = 0;
    for (int t = 0; t < count; ++t) {
        const int n = 2 + t % 2;
        std::vector<TropWeighting> ws;
        while (ws.size() < 3) {
            ++draws;
            TropWeighting w = random_essential_weighting(n, rng, -9, 9);
            if (gz_check(calA(w)).ok) ws.push_back(w);  // rejection into Δ_GZ
        }
        MFunction m = m_map(ws);
        oct += static_cast<long>(octahedron_check(m).size());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j <= 3; ++j)
                if (!check_multi_gz(std::vector<TropWeighting>(ws.begin() + i, ws.begin() + j)).ok) ++sub_fail;
        o.log << mfunction_json(m).dump() << "\n";
    }
    o.require(oct == 0, std::to_string(oct) + " octahedron violations");
    o.require(sub_fail == 0, std::to_string(sub_fail) + " sub-products not multi-GZ");
    if (o.pass)
        o.detail = std::to_string(count) + " GZ triples (" + std::to_string(3 * count) + "/" + std::to_string(draws) +
                   " draws accepted), 0 octahedron violations, all sub-products multi-GZ";
}

// ---------------------------------------------------------------- 4

void reconstruction_roundtrip(Outcome& o) {
    Rng rng(4004);
    const int count = 200;
    int ok = 0;
    for (int t = 0; t < count; ++t) {
        const int n = 2 + t % 2;
        TwoFaceData x = random_cone_point(n, rng);
        Reconstruction r = reconstruct_from_boundary(x);
        MFunction m = m_map(r.w.factors());
        const bool faces = two_faces(m) == x;
        const bool oct = octahedron_check(m).empty();
        const bool gz = r.a_gz && r.b_gz && r.c_gz;
        ok += faces && oct && gz;
        o.log << mfunction_json(m).dump() << "\n";
    }
    o.require(ok == count, std::to_string(count - ok) + " cone points not reconstructed");
    if (o.pass) o.detail = std::to_string(count) + " cone points, exact face agreement and octahedron pass";
}

// ---------------------------------------------------------------- 5

void exact_identities(Outcome& o) {
    Rng rng(5005);
    const int count = 201;
    long residuals = 0, cb = 0, actions = 0, moved = 0;
    for (int t = 0; t < count; ++t) {
        const int n = 2 + t % 3;
        std::vector<RationalMatrix> gs;
        for (int f = 0; f < 3; ++f) gs.push_back(random_matrix(n, rng));
        for (int i = 0; i + 2 <= n; ++i)
            for (int j = 0; i + j + 2 <= n; ++j)
                for (int k = 0; i + j + k + 2 <= n; ++k) {
                    Rational r = geometric_octahedron_residual(gs, i, j, k);
                    residuals += r != 0;
                    o.log << r.get_str() << " ";
                }
        auto M = corner_minor_map(gs);
        for (const auto& [a, v] : M) cb += cauchy_binet_expansion(gs, a) != v;
        if (t < 120) {
            std::vector<RationalMatrix> us;
            for (int i = 0; i <= 3; ++i) us.push_back(random_unipotent(n, rng));
            ++actions;
            moved += corner_minor_map(u_action(us, gs)) != M;
        }
        for (const auto& [a, v] : M) o.log << v.get_str() << " ";
        o.log << "\n";
    }
    o.require(residuals == 0, std::to_string(residuals) + " nonzero octahedron residuals");
    o.require(cb == 0, std::to_string(cb) + " Cauchy-Binet mismatches");
    o.require(moved == 0, std::to_string(moved) + " unipotent actions changed M");
    if (o.pass)
        o.detail = std::to_string(count) + " triples (n = 2,3,4): residuals zero, Cauchy-Binet exact, " +
                   std::to_string(actions) + " unipotent actions leave M fixed";
}

// ---------------------------------------------------------------- 6

void potential_consistency(Outcome& o) {
    Rng rng(6006);
    int formula = 0, chart = 0;
    const int inputs = 120;
    for (int t = 0; t < inputs; ++t) {
        const int n = 2 + t % 2;
        GeoGZPattern p(n);
        for (int l = 1; l <= n; ++l)
            for (int j = 1; j <= l; ++j) p.at(j, l) = ratio(rng.uniform_int(1, 12), rng.uniform_int(1, 5));
        RationalMatrix g = theta_gz(p);
        formula += phi_bk(g) == phi_bk_of_pattern(p);
        chart += gz_pattern_of(g) == p;
        o.log << phi_bk(g).get_str() << " ";
    }
    o.require(formula == inputs, "phi_bk minor ratios differ from the pattern formula");
    o.require(chart == inputs, "gz_pattern_of does not invert theta_gz");

    int bk = 0, bk_neg = 0;
    const int patterns = 600;
    for (int t = 0; t < patterns; ++t) {
        const int n = 2 + t % 3;
        GZPattern q(n);
        for (int l = 1; l <= n; ++l)
            for (int i = 1; i <= l; ++i) q.at(i, l) = Trop(rng.uniform_int(-4, 4) + (t % 2 ? 0 : 3 * i * (n - i)));
        const bool ok = gz_check(q).ok;
        Trop p = trop_potential_bk(q);
        bk += (p <= Trop(0)) == ok;
        bk_neg += !ok;
        o.log << p.str() << " ";
    }
    int phik = 0, phik_neg = 0;
    const int mfs = 600;
    for (int t = 0; t < mfs; ++t) {
        const int n = 2 + t % 2, k = 2 + t % 3;
        MFunction m(n, k);
        if (t % 3 == 0) {
            std::vector<TropWeighting> ws;
            for (int f = 0; f < k; ++f) ws.push_back(random_essential_weighting(n, rng, -6, 6));
            m = m_map(ws);
        } else {
            for (const auto& a : simplex_points(n, k))
                if (a != Alpha(k, 0)) m.at(a) = Trop(rng.uniform_int(-6, 6));
        }
        const bool ok = rhombus_check(m, RhombusScope::Faces).empty();
        Trop p = trop_potential_phi_k(m);
        phik += (p <= Trop(0)) == ok;
        phik_neg += !ok;
        o.log << p.str() << " ";
    }
    o.require(bk == patterns, "trop_potential_bk <= 0 disagrees with gz_check");
    o.require(phik == mfs, "trop_potential_phi_k <= 0 disagrees with the faces rhombus check");
    o.require(bk_neg > 0 && bk_neg < patterns && phik_neg > 0 && phik_neg < mfs, "a biconditional side was never exercised");
    if (o.pass)
        o.detail = std::to_string(inputs) + " chart inputs exact; biconditionals on " + std::to_string(patterns) +
                   " patterns (" + std::to_string(bk_neg) + " non-GZ) and " + std::to_string(mfs) +
                   " m-functions (" + std::to_string(phik_neg) + " rhombus-violating)";
}

// ---------------------------------------------------------------- 7

void convergence_rates(Outcome& o) {
    auto rep = convergence_experiment(closed_form_instance(), {}, {5, 10, 20});
    double worst = 0;
    for (const auto& r : rep.rows) {
        const double dev = std::abs(r.error - std::log(2.0) / (2 * r.s));
        worst = std::max(worst, dev);
        o.log << num(r.s) << "," << num(r.error) << "\n";
    }
    o.require(worst <= 1e-4, "closed form off by " + num(worst));

    Rng rng(7007);
    const Rational delta = ratio(1, 2);
    int found = 0, draws = 0, steep = 0;
    double flattest = -1e300;
    while (found < 60 && draws < 200000) {
        ++draws;
        const int n = 2 + draws % 2;
        // errors fall like e^{-s·gap}; weights in [-5,5] keep the widest gaps above the
        // 50-digit floor at s = 20, where a fitted slope would measure nothing
        TropWeighting w = random_essential_weighting(n, rng, -5, 5);
        if (!genericity_filter({w}, delta)) continue;
        ++found;
        AngleAssignment phi;
        for (int l = 2; l <= n; ++l)
            for (int i = 1; i < l; ++i) phi[{l, i}] = std::polar(1.0, 0.37 * (l + 3 * i));
        auto r = convergence_experiment(w, phi, {5, 10, 20});
        flattest = std::max(flattest, r.slope);
        steep += r.slope <= -0.4;
        for (const auto& row : r.rows) o.log << num(row.error) << " ";
        o.log << num(r.slope) << "\n";
    }
    o.require(found >= 50, "only " + std::to_string(found) + " generic weightings");
    o.require(steep == found, std::to_string(found - steep) + " slopes above -0.4 (flattest " + num(flattest) + ")");
    if (o.pass) {
        std::ostringstream d;
        d << "closed form within " << std::scientific << std::setprecision(1) << worst << "; " << found
          << " generic weightings (" << draws << " draws), flattest slope " << std::fixed << std::setprecision(2)
          << flattest;
        o.detail = d.str();
    }
}

// ---------------------------------------------------------------- 8

void appendix_a(Outcome& o) {
    Rng rng(8008);
    const int triples = 100000;
    const double ss[] = {1, 5, 10};
    double worst = 1e300, worst_excess = -1e300;
    long bad = 0, over = 0;
    for (int t = 0; t < triples; ++t) {
        Mat2 a = random_unit_lower(rng), b = random_unit_lower(rng), c = random_unit_lower(rng);
        for (double s : ss) {
            auto r = n2_inequalities(a, b, c, s);
            if (s == 1) {
                for (double x : r.slack) worst = std::min(worst, x);
                bad += !r.ok();
            }
            const double excess = *r.defect - *r.bound;
            worst_excess = std::max(worst_excess, excess);
            over += excess > 1e-9;
        }
        if (t % 1000 == 0) o.log << num(worst) << " " << num(worst_excess) << "\n";
    }
    o.require(bad == 0 && worst >= -1e-9, "inequality slack " + num(worst));
    o.require(over == 0, std::to_string(over) + " defects above s^-1 log 16");
    if (o.pass) {
        std::ostringstream d;
        d << triples << " triples: min slack " << std::setprecision(3) << worst << ", max defect - bound "
          << worst_excess;
        o.detail = d.str();
    }
}

// ---------------------------------------------------------------- 9

void concentration(Outcome& o) {
    LocusOptions exact;
    exact.search = false;
    const std::vector<double> lam{1, -1};
    auto rep = concentration_experiment(lam, lam, lam, {2, 5, 10}, 2000, 9009, exact);
    bool clean = true;
    for (const auto& r : rep.rows) {
        clean = clean && r.failures == 0;
        o.log << num(r.s) << " " << num(r.median) << " " << num(r.mean) << " " << num(r.max) << "\n";
    }
    o.require(clean, "sampling failures");
    o.require(rep.median_strictly_decreasing, "median distance not strictly decreasing");

    // the search method must agree with the exact solver on a subsample
    double disagreement = 0;
    for (int t = 0; t < 5; ++t) {
        Rng rng(9009 + static_cast<std::uint64_t>(t));
        const double s = 2;
        auto h = horn_s(sample_with_singular_values(lam, s, rng), sample_with_singular_values(lam, s, rng),
                        sample_with_singular_values(lam, s, rng), s);
        auto d = distance_to_octahedron_locus(h);
        disagreement = std::max(disagreement, std::abs(*d.exact - *d.search));
    }
    o.require(disagreement <= 1e-3, "search and exact solver differ by " + num(disagreement));

    Rng rng(9010);
    double members = 0;
    for (int t = 0; t < 220; ++t) {
        const int n = t < 200 ? 2 : 3;
        std::vector<TropWeighting> ws;
        for (int f = 0; f < 3; ++f) ws.push_back(calA_inverse(random_gz_pattern(n, rng, -9, 9)));
        LocusOptions opt;
        opt.starts = n == 2 ? 50 : 10;
        members = std::max(members, distance_to_octahedron_locus(horn_values(horn_tuple(m_map(ws))), opt).distance);
    }
    o.log << num(members) << "\n";
    o.require(members <= 1e-9, "GZ boundary at distance " + num(members));
    if (o.pass) {
        std::ostringstream d;
        d << std::setprecision(3) << "medians";
        for (const auto& r : rep.rows) d << " " << r.median;
        d << " over 2000 trials; GZ boundaries within " << members << "; search vs exact " << disagreement;
        o.detail = d.str();
    }
}

std::vector<Criterion> criteria() {
    return {
        {1, "example reproduction", 1, example_reproduction},
        {2, "rhombus and tetrahedron suite", 60, rhombus_tetrahedron_suite},
        {3, "octahedron suite", 120, octahedron_suite},
        {4, "reconstruction round trip", 120, reconstruction_roundtrip},
        {5, "exact minor identities", 120, exact_identities},
        {6, "potential consistency", 120, potential_consistency},
        {7, "convergence rates", 600, convergence_rates},
        {8, "trace inequalities", 60, appendix_a},
        {9, "concentration proxy", 600, concentration},
    };
}

struct Run {
    bool pass;
    double seconds;
    std::string detail, transcript;
};

Run run_one(const Criterion& c) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        c.run(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
        o.detail += " (over the " + num(c.limit_s) + " s limit)";
        o.pass = false;
    }
    return {o.pass, secs, o.detail, o.log.str()};
}

void print(int id, const std::string& name, bool pass, double secs, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << name << "  ["
              << std::fixed << std::setprecision(2) << secs << " s]  " << detail << std::endl;
}

}  // namespace

int main() {
    bool all = true;
    std::vector<std::string> first;
    for (const auto& c : criteria()) {
        Run r = run_one(c);
        first.push_back(r.transcript);
        print(c.id, c.name, r.pass, r.seconds, r.detail);
        all = all && r.pass;
    }

    // 10: every criterion again, transcripts compared byte for byte
    const auto start = std::chrono::steady_clock::now();
    bool same = true;
    std::string which;
    std::ostringstream digests;
    auto cs = criteria();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Run again = run_one(cs[i]);
        if (again.transcript != first[i] || first[i].empty()) {
            same = false;
            which += " " + std::to_string(cs[i].id);
        }
        digests << " " << cs[i].id << ":" << std::hex << std::setw(4) << std::setfill('0')
                << (fnv1a(first[i]) & 0xffff) << std::dec << std::setfill(' ');
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print(10, "determinism", same, secs, same ? "identical transcripts, digests" + digests.str()
                                              : "transcripts differ for criteria" + which);
    all = all && same;
    return all ? 0 : 1;
}
