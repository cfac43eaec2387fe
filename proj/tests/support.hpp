#pragma once

#include "hornlab/io.hpp"

#include <string>
#include <vector>

namespace hornlab::test {

inline std::string data_path(const std::string& name) { return std::string(HORNLAB_DATA_DIR) + "/" + name; }

inline const Json& frozen() {
    static const Json j = Json::parse(read_text_file(HORNLAB_ORACLE_JSON));
    return j;
}

inline std::vector<TropWeighting> worked() {
    std::vector<TropWeighting> ws;
    for (auto& d : parse_networks(read_text_file(data_path("worked_networks.json")))) ws.push_back(d.w);
    return ws;
}

inline Rational q(const Json& j) { return rational_from_json(j, "frozen"); }

}  // namespace hornlab::test
