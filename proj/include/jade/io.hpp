#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jade/bench.hpp"
#include "jade/core.hpp"
#include "jade/estimator.hpp"
#include "jade/fif.hpp"

namespace jade::io {

namespace fs = std::filesystem;

struct Table {
    std::vector<std::string> header;  // empty names when the file had no header
    std::vector<std::vector<double>> columns;
    std::vector<std::size_t> line_numbers;  // source line of each data row

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::optional<std::size_t> find(std::string_view name) const;
    const std::vector<double>& column(std::string_view name) const;
};

Table read_table(std::istream& in, const std::string& source = "<stdin>");
Table read_table(const fs::path& path);

// Uses columns "time"/"value" when named, otherwise (time, value) or a single
// value column. A sample rate overrides the time column.
Signal table_to_signal(const Table& t, std::optional<double> sample_rate = {}, std::string_view value_column = "value");
Signal read_csv(const fs::path& path, std::optional<double> sample_rate = {});

// value + truth_phase (cosine convention) [+ truth_frequency, truth_amplitude]
bench::Fixture table_to_fixture(const Table& t, std::string name, std::optional<double> sample_rate = {});
bench::Fixture read_fixture(const fs::path& path, std::optional<double> sample_rate = {});

struct WavFile {
    Signal signal;
    int channels = 1;
    int sample_rate = 0;
    std::vector<std::string> warnings;
};

WavFile read_wav(const fs::path& path);

// %.12g without locale.
std::string format_number(double v);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns);
std::string to_csv(const JadeResult& r);
std::string to_csv(const fif::Decomposition& d);
std::string to_csv(const bench::SweepReport& r);

// Writes to a temporary sibling and renames it into place.
void atomic_write(const fs::path& path, std::string_view contents);

void write_results(const JadeResult& r, const fs::path& path);
void write_results(const fif::Decomposition& d, const fs::path& path);
void write_results(const bench::SweepReport& r, const fs::path& path);

struct Series {
    std::string name;
    std::vector<double> values;
    int panel = -1;  // -1: a panel of its own; equal indices share a panel
};

struct PlotOptions {
    std::string title;
    std::vector<double> x;  // shared abscissa; sample index when empty
    std::string x_label = "sample";
    int width = 960;
    int panel_height = 200;
};

std::string render_svg(const std::vector<Series>& series, const PlotOptions& options = {});
void emit_plot(const std::vector<Series>& series, const fs::path& path, const PlotOptions& options = {});

}  // namespace jade::io
