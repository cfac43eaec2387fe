#pragma once

#include "hornlab/scaling.hpp"

#include <json.hpp>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace hornlab {

using Json = nlohmann::ordered_json;

// Malformed input; line and column are 1-based (0 when the problem is structural).
class ParseError : public HornError {
public:
    ParseError(const std::string& what, int line, int column)
        : HornError(ErrorKind::Usage, what), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

std::string read_text_file(const std::string& path);

// Rationals are written as exact strings ("3", "-1/2"); integers may be read as JSON numbers,
// decimals as numbers or strings.  -inf is the string "-inf".
Json rational_json(const Rational& q);
Json trop_json(const Trop& t);
Rational rational_from_json(const Json& j, const std::string& where);
Trop trop_from_json(const Json& j, const std::string& where);

// Network schema:
//   {"rank": n, "vertices": [{"id", "x", "y"}], "edges": [{"tail", "head", "weight",
//    "angle": [re, im] (optional), "label": [l, i] (optional)}], "verticals": [x, ...]}
// A file holds one network or {"networks": [...]} (left to right).
struct NetworkDoc {
    TropWeighting w;
    std::vector<std::optional<std::complex<double>>> angles;  // per edge
};
std::vector<NetworkDoc> parse_networks(const std::string& text);
Json network_json(const TropWeighting& w);
// Angles of a document as an assignment on labelled slanted edges.
AngleAssignment angle_assignment(const NetworkDoc& doc);

// MFunction schema: {"n", "k", "values": [{"alpha": [..], "m": number | string | "-inf"}]}.
// A report carrying an "mfunction" member is accepted as well.
MFunction parse_mfunction(const std::string& text);
// Same schema with any subset of the simplex present (e.g. two-face data).
struct MValues {
    int n = 0, k = 0;
    std::map<Alpha, Trop> values;
};
MValues parse_mvalues(const std::string& text);
Json mfunction_json(const MFunction& m);
// k = 3: one block per layer j of the tetrahedron, rows by i, columns by k; other k: one line per α.
std::string mfunction_table(const MFunction& m);

Json gz_pattern_json(const GZPattern& p);  // rows l = 1..n

}  // namespace hornlab
