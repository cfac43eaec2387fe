#pragma once

#include "hornlab/io.hpp"
#include "hornlab/octahedron_locus.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hornlab {

struct RunConfig {
    std::string cmd;
    std::string input, output;
    std::optional<int> n, k;
    std::uint64_t seed = 1;
    std::vector<double> s;  // empty: command default
    std::optional<int> trials;
    Rational delta = 0;
    std::optional<std::uint64_t> cap;  // overrides HORNLAB_MAX_STATES
    RhombusScope scope = RhombusScope::All;

    std::uint64_t state_cap() const { return cap ? *cap : default_state_cap(); }
};

struct Report {
    Json body;
    int exit_code = 0;  // 0 pass, 1 check failure
    std::string csv;    // experiment table, empty if none
};

// Commands: m_map, check, reconstruct, minors, scaling, concentration, appendix_a.
extern const std::vector<std::string> kCommands;

Report cmd_m_map(const RunConfig& c);
Report cmd_check(const RunConfig& c);
Report cmd_reconstruct(const RunConfig& c);
Report cmd_minors(const RunConfig& c);
Report cmd_scaling(const RunConfig& c);
Report cmd_concentration(const RunConfig& c);
Report cmd_appendix_a(const RunConfig& c);
Report run_command(const RunConfig& c);

// "5,10,20" -> {5, 10, 20}
std::vector<double> parse_s_list(const std::string& text);

// Exit codes: 0 pass, 1 check failure, 2 usage / parse / cap, 3 numeric domain or precondition.
int exit_code_for(ErrorKind kind);

// Full command line: the report goes to --output (or stdout), errors to `err` as a JSON object.
// An --output ending in ".csv" receives the experiment table instead and the report goes to `out`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hornlab
