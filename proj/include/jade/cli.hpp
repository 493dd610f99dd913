#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jade/fif.hpp"

namespace jade::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    fif::Config fif;
    bool truth_crossings = false;
    bool monotonic_segments = false;
    std::size_t min_section_length = 4;
    std::uint64_t seed = 1;
    std::optional<double> snr_db;
    std::optional<double> gamma;
    int seeds = 10;
    std::string method = "jade";
    std::string fixture;
    std::optional<double> sample_rate;

    void validate() const;
};

// "key = value" lines, '#' comments. Unknown keys and bad values throw UsageError.
std::map<std::string, std::string> parse_config(std::istream& in, const std::string& source = "<config>");
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
std::vector<std::string> config_keys();

// 0 success, 1 usage error, 2 data error.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace jade::cli
