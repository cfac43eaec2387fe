#include "hornlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hornlab {

namespace {

[[noreturn]] void structural(const std::string& msg) { throw ParseError(msg, 0, 0); }

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        int line = 1, col = 1;
        std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto pos = what.find("parse error");
        if (pos != std::string::npos) what = what.substr(pos);
        if (what.find("line ") == std::string::npos)
            what += " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")";
        throw ParseError("JSON " + what, line, col);
    }
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) structural(where + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) structural(where + ": missing \"" + key + "\"");
    return *it;
}

int int_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) structural(where + ": expected an integer");
    auto v = j.get<long long>();
    if (v < INT32_MIN || v > INT32_MAX) structural(where + ": integer out of range");
    return static_cast<int>(v);
}

double double_from_json(const Json& j, const std::string& where) {
    if (!j.is_number()) structural(where + ": expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) structural(where + ": not finite");
    return v;
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Usage, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json rational_json(const Rational& q) { return rational_text(q); }

Json trop_json(const Trop& t) { return t.str(); }

Rational rational_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
        if (j.is_number_float()) {
            double d = j.get<double>();
            if (!std::isfinite(d)) structural(where + ": not finite");
            char buf[64];
            auto res = std::to_chars(buf, buf + sizeof buf, d);  // shortest round-trip text
            return parse_rational(std::string(buf, res.ptr));
        }
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const ParseError&) {
        throw;
    } catch (const HornError& e) {
        structural(where + ": " + e.what());
    }
    structural(where + ": expected a number or an exact rational string");
}

Trop trop_from_json(const Json& j, const std::string& where) {
    if (j.is_string() && j.get<std::string>() == "-inf") return Trop::neg_inf();
    return Trop(rational_from_json(j, where));
}

// ---------------------------------------------------------------- networks

namespace {

NetworkDoc network_from_json(const Json& j, const std::string& where) {
    const int rank = int_from_json(member(j, "rank", where), where + ".rank");
    const Json& vs = member(j, "vertices", where);
    if (!vs.is_array()) structural(where + ".vertices: expected an array");
    std::vector<Vertex> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string w = where + ".vertices[" + std::to_string(i) + "]";
        vertices.push_back({int_from_json(member(vs[i], "id", w), w + ".id"),
                            rational_from_json(member(vs[i], "x", w), w + ".x"),
                            rational_from_json(member(vs[i], "y", w), w + ".y")});
    }
    const Json& es = member(j, "edges", where);
    if (!es.is_array()) structural(where + ".edges: expected an array");
    std::vector<std::pair<int, int>> edges;
    std::vector<Trop> weights;
    std::vector<std::optional<std::complex<double>>> angles;
    std::vector<std::optional<EssentialLabel>> labels;
    bool any_label = false;
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string w = where + ".edges[" + std::to_string(i) + "]";
        const Json& e = es[i];
        edges.emplace_back(int_from_json(member(e, "tail", w), w + ".tail"),
                           int_from_json(member(e, "head", w), w + ".head"));
        weights.push_back(e.contains("weight") ? trop_from_json(e["weight"], w + ".weight") : Trop(0));
        std::optional<std::complex<double>> ang;
        if (e.contains("angle")) {
            const Json& a = e["angle"];
            if (!a.is_array() || a.size() != 2) structural(w + ".angle: expected [re, im]");
            ang = std::complex<double>(double_from_json(a[0], w + ".angle[0]"), double_from_json(a[1], w + ".angle[1]"));
        }
        angles.push_back(ang);
        std::optional<EssentialLabel> lab;
        if (e.contains("label")) {
            const Json& l = e["label"];
            if (!l.is_array() || l.size() != 2) structural(w + ".label: expected [l, i]");
            lab = EssentialLabel{int_from_json(l[0], w + ".label[0]"), int_from_json(l[1], w + ".label[1]")};
            any_label = true;
        }
        labels.push_back(lab);
    }
    std::vector<Rational> verticals;
    if (j.contains("verticals")) {
        const Json& v = j["verticals"];
        if (!v.is_array()) structural(where + ".verticals: expected an array");
        for (std::size_t i = 0; i < v.size(); ++i)
            verticals.push_back(rational_from_json(v[i], where + ".verticals[" + std::to_string(i) + "]"));
    }
    if (!any_label) labels.clear();
    auto net = std::make_shared<const PlanarNetwork>(
        PlanarNetwork::build(rank, std::move(vertices), edges, std::move(verticals), std::move(labels)));
    NetworkDoc doc{TropWeighting(net, std::move(weights)), std::move(angles)};
    return doc;
}

}  // namespace

std::vector<NetworkDoc> parse_networks(const std::string& text) {
    Json j = parse_text(text);
    std::vector<NetworkDoc> out;
    if (j.is_object() && j.contains("networks")) {
        const Json& arr = j["networks"];
        if (!arr.is_array() || arr.empty()) structural("networks: expected a non-empty array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            out.push_back(network_from_json(arr[i], "networks[" + std::to_string(i) + "]"));
    } else {
        out.push_back(network_from_json(j, "network"));
    }
    for (const auto& d : out)
        if (d.w.net->rank() != out.front().w.net->rank()) structural("networks have different ranks");
    return out;
}

Json network_json(const TropWeighting& w) {
    const PlanarNetwork& net = *w.net;
    Json j;
    j["rank"] = net.rank();
    Json vs = Json::array();
    for (const auto& v : net.vertices()) vs.push_back({{"id", v.id}, {"x", rational_json(v.x)}, {"y", rational_json(v.y)}});
    j["vertices"] = vs;
    Json es = Json::array();
    for (int e = 0; e < net.num_edges(); ++e) {
        const Edge& ed = net.edges()[e];
        Json je{{"tail", net.vertices()[ed.tail].id}, {"head", net.vertices()[ed.head].id}, {"weight", trop_json(w[e])}};
        if (const auto& lab = net.label(e)) je["label"] = {lab->l, lab->i};
        es.push_back(je);
    }
    j["edges"] = es;
    Json vt = Json::array();
    for (const auto& x : net.verticals()) vt.push_back(rational_json(x));
    j["verticals"] = vt;
    return j;
}

AngleAssignment angle_assignment(const NetworkDoc& doc) {
    AngleAssignment phi;
    for (int e = 0; e < doc.w.net->num_edges(); ++e) {
        if (!doc.angles[e]) continue;
        const auto& lab = doc.w.net->label(e);
        if (!lab || lab->i >= lab->l)
            fail(ErrorKind::Usage, "angles are supported on labelled slanted edges only (edge " + std::to_string(e) + ")");
        phi[*lab] = *doc.angles[e];
    }
    validate_angles(doc.w.net->rank(), phi);
    return phi;
}

// ---------------------------------------------------------------- MFunction

MValues parse_mvalues(const std::string& text) {
    Json j = parse_text(text);
    if (j.is_object() && j.contains("mfunction")) j = j["mfunction"];
    MValues out;
    out.n = int_from_json(member(j, "n", "mfunction"), "mfunction.n");
    out.k = int_from_json(member(j, "k", "mfunction"), "mfunction.k");
    if (out.n < 1 || out.k < 1) structural("mfunction: n and k must be positive");
    const Json& vals = member(j, "values", "mfunction");
    if (!vals.is_array()) structural("mfunction.values: expected an array");
    if (vals.empty()) structural("mfunction.values: empty");
    for (std::size_t i = 0; i < vals.size(); ++i) {
        std::string w = "mfunction.values[" + std::to_string(i) + "]";
        const Json& a = member(vals[i], "alpha", w);
        if (!a.is_array() || static_cast<int>(a.size()) != out.k)
            structural(w + ".alpha: expected " + std::to_string(out.k) + " integers");
        Alpha alpha;
        for (std::size_t t = 0; t < a.size(); ++t) alpha.push_back(int_from_json(a[t], w + ".alpha"));
        if (!in_simplex(alpha, out.n)) structural(w + ".alpha " + alpha_text(alpha) + " is outside the simplex");
        if (!out.values.emplace(alpha, trop_from_json(member(vals[i], "m", w), w + ".m")).second)
            structural(w + ": duplicate alpha " + alpha_text(alpha));
    }
    return out;
}

MFunction parse_mfunction(const std::string& text) {
    MValues v = parse_mvalues(text);
    MFunction m(v.n, v.k);
    for (const auto& a : simplex_points(v.n, v.k)) {
        auto it = v.values.find(a);
        if (it == v.values.end()) structural("mfunction: missing value at alpha " + alpha_text(a));
        m.at(a) = it->second;
    }
    return m;
}

Json mfunction_json(const MFunction& m) {
    Json j;
    j["n"] = m.n();
    j["k"] = m.k();
    Json vals = Json::array();
    for (const auto& [a, v] : m.values()) vals.push_back({{"alpha", a}, {"m", trop_json(v)}});
    j["values"] = vals;
    return j;
}

std::string mfunction_table(const MFunction& m) {
    std::ostringstream os;
    if (m.k() == 3) {
        const int n = m.n();
        for (int j = 0; j <= n; ++j) {
            os << "j=" << j << "\n";
            for (int i = 0; i + j <= n; ++i) {
                os << "  i=" << i << ":";
                for (int k = 0; i + j + k <= n; ++k) os << " " << m(i, j, k).str();
                os << "\n";
            }
        }
    } else {
        for (const auto& [a, v] : m.values()) os << alpha_text(a) << " " << v.str() << "\n";
    }
    return os.str();
}

Json gz_pattern_json(const GZPattern& p) {
    Json rows = Json::array();
    for (int l = 1; l <= p.n(); ++l) {
        Json r = Json::array();
        for (int i = 1; i <= l; ++i) r.push_back(trop_json(p.at(i, l)));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hornlab
