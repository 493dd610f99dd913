#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "jade/io.hpp"

namespace jade::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

}  // namespace

std::optional<std::size_t> Table::find(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

const std::vector<double>& Table::column(std::string_view name) const {
    const auto i = find(name);
    if (!i) throw DataError("missing column '" + std::string(name) + "'");
    return columns[*i];
}

Table read_table(std::istream& in, const std::string& source) {
    Table t;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto cells = split(body);
        if (first) {
            first = false;
            if (!parse_number(cells.front())) {
                for (auto c : cells) t.header.emplace_back(c);
                t.columns.resize(cells.size());
                continue;
            }
            t.header.assign(cells.size(), "");
            t.columns.resize(cells.size());
        }
        if (cells.size() != t.columns.size())
            throw DataError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                            " columns, found " + std::to_string(cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v)
                throw DataError(source + ":" + std::to_string(lineno) + ", column " + std::to_string(c + 1) +
                                ": not a number '" + std::string(cells[c]) + "'");
            t.columns[c].push_back(*v);
        }
        t.line_numbers.push_back(lineno);
    }
    if (t.rows() == 0) throw DataError(source + ": no data rows");
    return t;
}

Table read_table(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_table(in, path.string());
}

Signal table_to_signal(const Table& t, std::optional<double> rate, std::string_view value_column) {
    auto vcol = t.find(value_column);
    auto tcol = t.find("time");
    if (!vcol) {
        if (t.columns.size() == 1) {
            vcol = 0;
        } else {
            if (!tcol) tcol = 0;
            vcol = *tcol == 0 ? 1 : 0;
        }
    }
    const auto& v = t.columns[*vcol];

    if (rate) {
        if (!(*rate > 0.0) || !std::isfinite(*rate)) throw std::invalid_argument("sample rate must be positive");
        return Signal(v, 1.0 / *rate);
    }
    if (!tcol) throw DataError("single-column input needs a sample rate");
    const auto& time = t.columns[*tcol];
    if (time.size() < 2) throw DataError("need at least 2 samples to infer the sample period");
    const double dt = (time.back() - time.front()) / static_cast<double>(time.size() - 1);
    if (!(dt > 0.0)) throw DataError("time column must increase");
    for (std::size_t k = 1; k < time.size(); ++k)
        if (std::abs((time[k] - time[k - 1]) - dt) > 1e-6 * dt)
            throw DataError("non-uniform sampling at line " + std::to_string(t.line_numbers[k]));
    return Signal(v, dt, time.front());
}

Signal read_csv(const fs::path& path, std::optional<double> rate) { return table_to_signal(read_table(path), rate); }

bench::Fixture table_to_fixture(const Table& t, std::string name, std::optional<double> rate) {
    auto s = table_to_signal(t, rate);
    synth::GroundTruth truth;
    truth.phase = t.column("truth_phase");
    if (auto f = t.find("truth_frequency"))
        truth.frequency = t.columns[*f];
    else
        truth.frequency.assign(s.size(), 0.0);
    if (auto a = t.find("truth_amplitude"))
        truth.amplitude = t.columns[*a];
    else
        truth.amplitude.assign(s.size(), 1.0);
    return {std::move(name), std::move(s), std::move(truth)};
}

bench::Fixture read_fixture(const fs::path& path, std::optional<double> rate) {
    return table_to_fixture(read_table(path), path.stem().string(), rate);
}

std::string format_number(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, p);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns) {
    if (header.size() != columns.size()) throw std::invalid_argument("header/column count mismatch");
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front()->size();
    for (auto* col : columns)
        if (col->size() != rows) throw std::invalid_argument("columns differ in length");
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_number((*columns[c])[r]);
        out << '\n';
    }
}

static std::vector<double> time_axis(std::size_t n, double ts, double t0) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = t0 + static_cast<double>(k) * ts;
    return t;
}

std::string to_csv(const JadeResult& r) {
    const auto t = time_axis(r.phase.values.size(), r.sample_period, r.start_time);
    std::ostringstream os;
    write_csv(os, {"time", "phase_rad", "if_hz", "amplitude", "mean", "phase_raw"},
              {&t, &r.phase.values, &r.frequency.values, &r.amplitude_function, &r.mean_function, &r.phase.raw});
    return os.str();
}

std::string to_csv(const fif::Decomposition& d) {
    const auto& rem = d.remainder;
    const auto t = time_axis(rem.size(), rem.sample_period(), rem.start_time());
    std::vector<std::string> header{"time"};
    std::vector<const std::vector<double>*> cols{&t};
    for (std::size_t i = 0; i < d.imfs.size(); ++i) {
        header.push_back("imf_" + std::to_string(i + 1));
        cols.push_back(&d.imfs[i].values());
    }
    header.push_back("remainder");
    cols.push_back(&rem.values());
    std::ostringstream os;
    if (d.imfs.empty()) {
        // nothing was extracted: header only
        const std::vector<double> none;
        write_csv(os, header, {&none, &none});
        return os.str();
    }
    write_csv(os, header, cols);
    return os.str();
}

std::string to_csv(const bench::SweepReport& r) {
    std::vector<double> snr, med, iqr, seeds, fails;
    for (const auto& row : r.rows) {
        snr.push_back(row.snr_db);
        med.push_back(row.epsilon_median);
        iqr.push_back(row.epsilon_iqr);
        seeds.push_back(row.seeds);
        fails.push_back(row.failures);
    }
    std::ostringstream os;
    write_csv(os, {"snr_db", "epsilon_median", "epsilon_iqr", "seeds", "failures"},
              {&snr, &med, &iqr, &seeds, &fails});
    return os.str();
}

void atomic_write(const fs::path& path, std::string_view contents) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + path.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw DataError("write failed for " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DataError("cannot rename into " + path.string());
    }
}

void write_results(const JadeResult& r, const fs::path& path) { atomic_write(path, to_csv(r)); }
void write_results(const fif::Decomposition& d, const fs::path& path) { atomic_write(path, to_csv(d)); }
void write_results(const bench::SweepReport& r, const fs::path& path) { atomic_write(path, to_csv(r)); }

}  // namespace jade::io
