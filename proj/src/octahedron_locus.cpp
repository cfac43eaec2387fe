#include "hornlab/octahedron_locus.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace hornlab {

namespace {

// m_target = max(m_a1 + m_a2, m_c1 + m_c2) - m_div, ids into the simplex point list
struct FillStep {
    int target, a1, a2, c1, c2, div;
};

// Boundary coordinate m_plus - m_minus (minus = -1: none).
struct BoundaryCoord {
    int plus, minus;
};

struct LocusModel {
    int n = 0, d = 0;
    int npoints = 0;
    std::vector<int> param_point;  // parameter index -> point id
    int origin = -1;               // id of 000
    std::vector<std::array<int, 4>> cone;  // point ids: short0 + short1 - long0 - long1 >= 0
    std::vector<FillStep> steps;
    std::vector<BoundaryCoord> boundary;
    std::vector<int> param_of_point;  // point id -> parameter index or -1
};

std::shared_ptr<const LocusModel> build_model(int n) {
    auto m = std::make_shared<LocusModel>();
    m->n = n;
    auto pts = simplex_points(n, 3);
    std::map<Alpha, int> id;
    for (const auto& a : pts) id.emplace(a, static_cast<int>(id.size()));
    m->npoints = static_cast<int>(pts.size());
    m->origin = id.at({0, 0, 0});
    m->param_of_point.assign(m->npoints, -1);
    for (const auto& a : two_face_domain(n)) {
        m->param_of_point[id.at(a)] = static_cast<int>(m->param_point.size());
        m->param_point.push_back(id.at(a));
    }
    m->d = static_cast<int>(m->param_point.size());
    auto known = [&](const Alpha& a) { return a == Alpha{0, 0, 0} || m->param_of_point[id.at(a)] >= 0; };
    for (const auto& r : enumerate_rhombi(n, 3, RhombusScope::All))
        if (known(r.longd[0]) && known(r.longd[1]) && known(r.shortd[0]) && known(r.shortd[1]))
            m->cone.push_back({id.at(r.shortd[0]), id.at(r.shortd[1]), id.at(r.longd[0]), id.at(r.longd[1])});
    // same order as octahedron_fill(FromJ0AndTop)
    for (int j = 0; j + 2 <= n; ++j)
        for (int s = n - j - 2; s >= 0; --s)
            for (int i = 0; i <= s; ++i) {
                int k = s - i;
                m->steps.push_back({id.at({i, j + 1, k}), id.at({i, j, k + 1}), id.at({i + 1, j + 1, k}),
                                    id.at({i + 1, j, k}), id.at({i, j + 1, k + 1}), id.at({i + 1, j, k + 1})});
            }
    std::array<std::vector<BoundaryCoord>, 6> rows;
    for (int j = 1; j <= n; ++j) {
        rows[kA].push_back({id.at({j, 0, 0}), -1});
        rows[kAB].push_back({id.at({0, j, 0}), -1});
        rows[kABC].push_back({id.at({0, 0, j}), -1});
        rows[kB].push_back({id.at({n - j, j, 0}), id.at({n, 0, 0})});
        rows[kBC].push_back({id.at({n - j, 0, j}), id.at({n, 0, 0})});
        rows[kC].push_back({id.at({0, n - j, j}), id.at({0, n, 0})});
    }
    for (const auto& r : rows) m->boundary.insert(m->boundary.end(), r.begin(), r.end());
    return m;
}

std::shared_ptr<const LocusModel> model(int n) {
    if (n < 1) fail(ErrorKind::Usage, "rank must be positive");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const LocusModel>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = build_model(n);
    return slot;
}

int rank_of_boundary(std::size_t size) {
    if (size == 0 || size % 6 != 0) fail(ErrorKind::Usage, "boundary vector must have 6n entries");
    return static_cast<int>(size / 6);
}

// Point values from parameters; `branch[t]` records whether step t took its first term.
std::vector<double> fill_values(const LocusModel& m, const std::vector<double>& x, std::vector<char>* branch = nullptr) {
    std::vector<double> v(m.npoints, 0.0);
    for (int p = 0; p < m.d; ++p) v[m.param_point[p]] = x[p];
    if (branch) branch->assign(m.steps.size(), 1);
    for (std::size_t t = 0; t < m.steps.size(); ++t) {
        const auto& s = m.steps[t];
        double a = v[s.a1] + v[s.a2], c = v[s.c1] + v[s.c2];
        if (branch) (*branch)[t] = a >= c;
        v[s.target] = std::max(a, c) - v[s.div];
    }
    return v;
}

std::vector<double> boundary_of(const LocusModel& m, const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(m.boundary.size());
    for (const auto& b : m.boundary) out.push_back(v[b.plus] - (b.minus >= 0 ? v[b.minus] : 0.0));
    return out;
}

double cone_min_slack(const LocusModel& m, const std::vector<double>& v) {
    double best = HUGE_VAL;
    for (const auto& r : m.cone) best = std::min(best, v[r[0]] + v[r[1]] - v[r[2]] - v[r[3]]);
    return best;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// The piece of the fill with fixed branches: every point value is a linear form in x.
struct LinearPiece {
    Eigen::MatrixXd L;  // boundary = L x
    Eigen::MatrixXd G;  // constraints G x >= 0: cone rows, then branch rows
};

LinearPiece linearize(const LocusModel& m, const std::vector<char>& branch) {
    Eigen::MatrixXd forms = Eigen::MatrixXd::Zero(m.npoints, m.d);
    for (int p = 0; p < m.d; ++p) forms(m.param_point[p], p) = 1;
    LinearPiece lp;
    lp.G.resize(static_cast<Eigen::Index>(m.cone.size() + m.steps.size()), m.d);
    Eigen::Index row = 0;
    for (const auto& r : m.cone) lp.G.row(row++) = forms.row(r[0]) + forms.row(r[1]) - forms.row(r[2]) - forms.row(r[3]);
    for (std::size_t t = 0; t < m.steps.size(); ++t) {
        const auto& s = m.steps[t];
        Eigen::RowVectorXd a = forms.row(s.a1) + forms.row(s.a2), c = forms.row(s.c1) + forms.row(s.c2);
        lp.G.row(row++) = branch[t] ? Eigen::RowVectorXd(a - c) : Eigen::RowVectorXd(c - a);
        forms.row(s.target) = (branch[t] ? a : c) - forms.row(s.div);
    }
    lp.L.resize(static_cast<Eigen::Index>(m.boundary.size()), m.d);
    for (std::size_t i = 0; i < m.boundary.size(); ++i) {
        const auto& b = m.boundary[i];
        lp.L.row(static_cast<Eigen::Index>(i)) = forms.row(b.plus);
        if (b.minus >= 0) lp.L.row(static_cast<Eigen::Index>(i)) -= forms.row(b.minus);
    }
    return lp;
}

// argmin |h - L y| subject to G_S y = 0; among the minimizers the one closest to `ref`.
Eigen::VectorXd constrained_lsq(const LinearPiece& lp, const Eigen::VectorXd& h, const std::vector<int>& active,
                                const Eigen::VectorXd& ref) {
    const Eigen::Index d = lp.L.cols();
    Eigen::MatrixXd N;
    if (active.empty()) {
        N = Eigen::MatrixXd::Identity(d, d);
    } else {
        Eigen::MatrixXd GS(static_cast<Eigen::Index>(active.size()), d);
        for (std::size_t r = 0; r < active.size(); ++r) GS.row(static_cast<Eigen::Index>(r)) = lp.G.row(active[r]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(GS, Eigen::ComputeFullV);
        svd.setThreshold(1e-10);
        const Eigen::Index rank = svd.rank();
        if (rank == d) return Eigen::VectorXd::Zero(d);
        N = svd.matrixV().rightCols(d - rank);  // orthonormal null space
    }
    Eigen::VectorXd base = N * (N.transpose() * ref);
    Eigen::VectorXd z = (lp.L * N).completeOrthogonalDecomposition().solve(h - lp.L * base);
    return base + N * z;
}

bool feasible(const LinearPiece& lp, const Eigen::VectorXd& x) {
    const double tol = 1e-9 * (1.0 + x.cwiseAbs().maxCoeff());
    return (lp.G * x).minCoeff() >= -tol;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Every branch pattern times every active set; small models only.
std::optional<std::pair<double, std::vector<double>>> exact_distance(const LocusModel& m, const std::vector<double>& h) {
    const std::size_t rows = m.cone.size() + m.steps.size();
    if (m.steps.size() > 4 || rows > 12) return std::nullopt;
    Eigen::VectorXd hv = Eigen::Map<const Eigen::VectorXd>(h.data(), static_cast<Eigen::Index>(h.size()));
    double best = hv.squaredNorm();  // x = 0
    std::vector<double> arg(m.d, 0.0);
    for (unsigned b = 0; b < (1u << m.steps.size()); ++b) {
        std::vector<char> branch(m.steps.size());
        for (std::size_t t = 0; t < branch.size(); ++t) branch[t] = (b >> t) & 1u;
        LinearPiece lp = linearize(m, branch);
        for (unsigned mask = 0; mask < (1u << rows); ++mask) {
            std::vector<int> active;
            for (std::size_t r = 0; r < rows; ++r)
                if ((mask >> r) & 1u) active.push_back(static_cast<int>(r));
            Eigen::VectorXd x = constrained_lsq(lp, hv, active, Eigen::VectorXd::Zero(m.d));
            if (!feasible(lp, x)) continue;
            double f = (hv - lp.L * x).squaredNorm();
            if (f < best) {
                best = f;
                arg = to_std(x);
            }
        }
    }
    return std::make_pair(std::sqrt(best), arg);
}

std::vector<std::vector<double>> compass_directions(int d) {
    std::vector<std::vector<double>> dirs;
    for (int i = 0; i < d; ++i)
        for (double sg : {1.0, -1.0}) {
            std::vector<double> e(d, 0.0);
            e[i] = sg;
            dirs.push_back(std::move(e));
        }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (double si : {1.0, -1.0})
                for (double sj : {1.0, -1.0}) {
                    std::vector<double> e(d, 0.0);
                    e[i] = si;
                    e[j] = sj;
                    dirs.push_back(std::move(e));
                }
    return dirs;
}

struct SearchState {
    std::vector<double> x;
    double f = HUGE_VAL;  // squared distance
};

// Least squares on the piece and the active face at x, for several activity tolerances and both
// branches of near-tied fill steps; kept only if it is a genuine improvement.
void polish(const LocusModel& m, const std::vector<double>& h, SearchState& st, long& evals) {
    const std::vector<double> x0 = st.x;
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), m.d);
    Eigen::VectorXd hv = Eigen::Map<const Eigen::VectorXd>(h.data(), static_cast<Eigen::Index>(h.size()));
    const double scale = 1.0 + x.cwiseAbs().maxCoeff();
    auto v = fill_values(m, x0);
    for (double rel : {1e-9, 1e-7, 1e-5, 1e-3}) {
        const double tol = rel * scale;
        std::vector<char> base(m.steps.size());
        std::vector<std::size_t> ties;
        for (std::size_t t = 0; t < m.steps.size(); ++t) {
            const auto& s = m.steps[t];
            double a = v[s.a1] + v[s.a2], c = v[s.c1] + v[s.c2];
            base[t] = a >= c;
            if (std::abs(a - c) <= tol && ties.size() < 4) ties.push_back(t);
        }
        for (unsigned flip = 0; flip < (1u << ties.size()); ++flip) {
            std::vector<char> branch = base;
            for (std::size_t q = 0; q < ties.size(); ++q)
                if ((flip >> q) & 1u) branch[ties[q]] = !branch[ties[q]];
            LinearPiece lp = linearize(m, branch);
            Eigen::VectorXd slack = lp.G * x;
            std::vector<int> active;
            for (Eigen::Index r = 0; r < slack.size(); ++r)
                if (slack(r) <= tol) active.push_back(static_cast<int>(r));
            std::vector<double> y = to_std(constrained_lsq(lp, hv, active, x));
            auto w = fill_values(m, y);
            ++evals;
            if (cone_min_slack(m, w) < -1e-12) continue;
            double f = sq_dist(boundary_of(m, w), h);
            if (f < st.f) {
                st.x = std::move(y);
                st.f = f;
            }
        }
    }
}

SearchState compass_search(const LocusModel& m, const std::vector<double>& h, std::vector<double> x0, double step,
                           double step_tol, const std::vector<std::vector<double>>& dirs, long& evals) {
    SearchState st{std::move(x0), 0};
    st.f = sq_dist(boundary_of(m, fill_values(m, st.x)), h);
    ++evals;
    std::vector<double> y(m.d);
    while (step >= step_tol) {
        bool improved = false;
        for (const auto& e : dirs) {
            for (int i = 0; i < m.d; ++i) y[i] = st.x[i] + step * e[i];
            auto v = fill_values(m, y);
            if (cone_min_slack(m, v) < -1e-12) continue;
            double f = sq_dist(boundary_of(m, v), h);
            ++evals;
            if (f < st.f) {
                st.x = y;
                st.f = f;
                improved = true;
            }
        }
        if (!improved) step /= 2;
    }
    return st;
}

}  // namespace

int locus_dimension(int n) { return n * (n + 2); }

std::vector<double> locus_boundary(int n, const std::vector<double>& x) {
    auto m = model(n);
    if (static_cast<int>(x.size()) != m->d) fail(ErrorKind::Usage, "two-face vector must have n(n+2) entries");
    return boundary_of(*m, fill_values(*m, x));
}

bool in_two_face_cone(int n, const std::vector<double>& x, double tol) {
    auto m = model(n);
    if (static_cast<int>(x.size()) != m->d) fail(ErrorKind::Usage, "two-face vector must have n(n+2) entries");
    return cone_min_slack(*m, fill_values(*m, x)) >= -tol;
}

std::vector<double> two_face_vector(const TwoFaceData& x) {
    int n = 0;
    for (const auto& [a, v] : x) n = std::max(n, a[0] + a[1] + a[2]);
    std::vector<double> out;
    for (const auto& a : two_face_domain(n)) {
        auto it = x.find(a);
        if (it == x.end()) fail(ErrorKind::Usage, "two-face data is missing m_" + alpha_text(a));
        if (!it->second.finite()) fail(ErrorKind::Domain, "two-face data has -inf at m_" + alpha_text(a));
        out.push_back(it->second.to_double());
    }
    return out;
}

LocusDistance distance_to_octahedron_locus(const std::vector<double>& h, const LocusOptions& opt) {
    const int n = rank_of_boundary(h.size());
    for (double v : h)
        if (!std::isfinite(v)) fail(ErrorKind::Domain, "boundary vector has a non-finite entry");
    auto mp = model(n);
    const LocusModel& m = *mp;
    LocusDistance out;
    out.distance = HUGE_VAL;
    if (opt.exact) {
        if (auto ex = exact_distance(m, h)) {
            out.exact = ex->first;
            out.distance = ex->first;
            out.argmin = ex->second;
        }
    }
    if (opt.search) {
        double scale = 1.0;
        for (double v : h) scale = std::max(scale, std::abs(v));
        auto dirs = compass_directions(m.d);
        Rng rng(opt.seed);
        SearchState best;
        long evals = 0;
        for (int st = 0; st < opt.starts; ++st) {
            std::vector<double> x0(m.d, 0.0);
            if (st > 0) {
                auto v = two_face_vector(random_cone_point(n, rng));
                auto b = locus_boundary(n, v);
                double num = 0, den = 0;
                for (std::size_t i = 0; i < b.size(); ++i) {
                    num += b[i] * h[i];
                    den += b[i] * b[i];
                }
                double t = den > 0 ? std::max(0.0, num / den) : 0.0;
                for (int i = 0; i < m.d; ++i) x0[i] = t * v[i];
            }
            SearchState s = compass_search(m, h, std::move(x0), 0.5 * scale, opt.step_tol, dirs, evals);
            polish(m, h, s, evals);
            if (s.f < best.f) best = std::move(s);
        }
        out.evaluations = evals;
        out.starts = opt.starts;
        if (opt.starts > 0) {
            out.search = std::sqrt(best.f);
            if (*out.search < out.distance) {
                out.distance = *out.search;
                out.argmin = best.x;
            }
        }
    }
    if (!std::isfinite(out.distance)) fail(ErrorKind::Usage, "no distance method enabled");
    return out;
}

ConcentrationReport concentration_experiment(const std::vector<double>& lambda, const std::vector<double>& mu,
                                             const std::vector<double>& nu, const std::vector<double>& s_list,
                                             int trials, std::uint64_t seed, const LocusOptions& opt) {
    if (trials < 1) fail(ErrorKind::Usage, "trials must be >= 1");
    if (lambda.empty() || lambda.size() != mu.size() || lambda.size() != nu.size())
        fail(ErrorKind::Usage, "lambda, mu, nu must be n-tuples of one length");
    if (s_list.empty()) fail(ErrorKind::Usage, "empty s list");
    const int n = static_cast<int>(lambda.size());
    model(n);  // build the cache outside the parallel region
    ConcentrationReport rep;
    for (double s : s_list) {
        if (!(s > 0)) fail(ErrorKind::Usage, "s must be positive");
        std::vector<double> dist(trials, 0.0);
        std::vector<std::string> err(trials);
#pragma omp parallel for schedule(dynamic, 16)
        for (int t = 0; t < trials; ++t) {
            try {
                Rng rng(seed + static_cast<std::uint64_t>(t));
                ComplexMatrix a = sample_with_singular_values(lambda, s, rng);
                ComplexMatrix b = sample_with_singular_values(mu, s, rng);
                ComplexMatrix c = sample_with_singular_values(nu, s, rng);
                dist[t] = distance_to_octahedron_locus(horn_s(a, b, c, s), opt).distance;
            } catch (const std::exception& e) {
                err[t] = e.what();
            }
        }
        ConcentrationRow row;
        row.s = s;
        row.trials = trials;
        std::vector<double> ok;
        for (int t = 0; t < trials; ++t) {
            if (err[t].empty()) {
                ok.push_back(dist[t]);
            } else {
                ++row.failures;
                row.failure_messages.push_back("trial " + std::to_string(t) + ": " + err[t]);
            }
        }
        if (!ok.empty()) {
            std::sort(ok.begin(), ok.end());
            const std::size_t k = ok.size();
            row.median = (ok[(k - 1) / 2] + ok[k / 2]) / 2;
            double sum = 0;
            for (double v : ok) sum += v;
            row.mean = sum / static_cast<double>(k);
            row.q90 = ok[static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(k))) - 1];
            row.max = ok.back();
        }
        rep.rows.push_back(std::move(row));
    }
    rep.median_strictly_decreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].median < rep.rows[i - 1].median)) rep.median_strictly_decreasing = false;
    return rep;
}

}  // namespace hornlab
