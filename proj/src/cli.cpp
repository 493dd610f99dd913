#include "jade/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "jade/baselines.hpp"
#include "jade/bench.hpp"
#include "jade/estimator.hpp"
#include "jade/io.hpp"
#include "jade/synth.hpp"

namespace jade::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
    try {
        fif.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (min_section_length < 1) throw UsageError("min_section_length must be >= 1");
    if (seeds < 1) throw UsageError("seeds must be >= 1");
    if (gamma && !(*gamma >= 0.0 && std::isfinite(*gamma))) throw UsageError("gamma must be finite and >= 0");
    if (snr_db && !std::isfinite(*snr_db)) throw UsageError("snr_db must be finite");
    if (gamma && snr_db) throw UsageError("give either gamma or snr_db, not both");
    if (sample_rate && !(*sample_rate > 0.0 && std::isfinite(*sample_rate)))
        throw UsageError("sample_rate must be positive");
    try {
        bench::parse_method(method);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

namespace {

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw UsageError("bad value for " + key + ": '" + v + "'");
    return d;
}

long long to_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long d = 0;
    try {
        d = std::stoll(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw UsageError("bad value for " + key + ": '" + v + "'");
    return d;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw UsageError("bad value for " + key + ": '" + v + "'");
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string flag_for(const std::string& key) {
    std::string f = "--" + key;
    for (auto& c : f)
        if (c == '_') c = '-';
    return f;
}

}  // namespace

std::vector<std::string> config_keys() {
    return {"delta", "max_inner_iterations", "max_imfs", "xi", "extension_factor", "imf_energy_floor",
            "truth_crossings", "monotonic_segments", "min_section_length", "seed", "snr_db", "gamma",
            "seeds", "method", "fixture", "sample_rate"};
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& v) {
    if (key == "delta") c.fif.delta = to_double(key, v);
    else if (key == "max_inner_iterations") c.fif.max_inner_iterations = static_cast<int>(to_int(key, v));
    else if (key == "max_imfs") c.fif.max_imfs = static_cast<int>(to_int(key, v));
    else if (key == "xi") c.fif.xi = to_double(key, v);
    else if (key == "extension_factor") c.fif.extension_factor = static_cast<int>(to_int(key, v));
    else if (key == "imf_energy_floor") c.fif.imf_energy_floor = to_double(key, v);
    else if (key == "truth_crossings") c.truth_crossings = to_bool(key, v);
    else if (key == "monotonic_segments") c.monotonic_segments = to_bool(key, v);
    else if (key == "min_section_length") {
        const auto n = to_int(key, v);
        if (n < 1) throw UsageError("min_section_length must be >= 1");
        c.min_section_length = static_cast<std::size_t>(n);
    } else if (key == "seed") {
        const auto n = to_int(key, v);
        if (n < 0) throw UsageError("seed must be >= 0");
        c.seed = static_cast<std::uint64_t>(n);
    } else if (key == "snr_db") c.snr_db = to_double(key, v);
    else if (key == "gamma") c.gamma = to_double(key, v);
    else if (key == "seeds") c.seeds = static_cast<int>(to_int(key, v));
    else if (key == "method") c.method = v;
    else if (key == "fixture") c.fixture = v;
    else if (key == "sample_rate") c.sample_rate = to_double(key, v);
    else throw UsageError("unknown config key '" + key + "'");
}

std::map<std::string, std::string> parse_config(std::istream& in, const std::string& source) {
    std::map<std::string, std::string> kv;
    const auto keys = config_keys();
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw UsageError(source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        RunConfig probe;
        apply_setting(probe, key, value);
        kv[key] = value;
    }
    return kv;
}

namespace {

constexpr double pi = std::numbers::pi;

struct Input {
    Signal signal;
    std::optional<io::Table> table;
};

Input load_input(const std::string& path, const RunConfig& cfg, std::istream& in, std::ostream& err) {
    if (path != "-" && fs::path(path).extension() == ".wav") {
        auto w = io::read_wav(path);
        for (const auto& m : w.warnings) err << "warning: " << m << '\n';
        return {std::move(w.signal), std::nullopt};
    }
    auto t = path == "-" ? io::read_table(in) : io::read_table(fs::path(path));
    auto s = io::table_to_signal(t, cfg.sample_rate);
    return {std::move(s), std::move(t)};
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty() || output == "-")
        out << text;
    else
        io::atomic_write(output, text);
}

std::vector<double> times(const Signal& s) {
    std::vector<double> t(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) t[k] = s.time_at(k);
    return t;
}

// noise of the requested gamma or calibrated to snr_db, drawn from the seed
Signal noisy(const Signal& clean, const RunConfig& cfg, double default_gamma) {
    double gamma = cfg.gamma.value_or(default_gamma);
    if (cfg.snr_db) {
        const auto xi = GaussianStream(cfg.seed).draw(clean.size());
        gamma = l2_norm(clean.samples()) / (l2_norm(xi) * std::pow(10.0, *cfg.snr_db / 20.0));
    }
    return add_noise(clean, NoiseSpec{gamma, cfg.seed});
}

std::string synth_csv(const std::string& name, const RunConfig& cfg) {
    std::ostringstream os;
    if (name == "ex3") {
        auto g = bench::example3();
        const auto s = noisy(g.signal, cfg, 0.0);
        const auto t = times(s);
        const auto p1 = g.first_truth.cosine_phase(), p2 = g.second_truth.cosine_phase();
        io::write_csv(os,
                      {"time", "value", "x", "y", "truth_phase_x", "truth_phase_y", "truth_frequency_x",
                       "truth_frequency_y"},
                      {&t, &s.values(), &g.first.values(), &g.second.values(), &p1, &p2, &g.first_truth.frequency,
                       &g.second_truth.frequency});
        return os.str();
    }
    if (name == "duffing") {
        auto d = bench::duffing();
        const auto s = noisy(d.xdot, cfg, 0.0);
        const auto t = times(s);
        io::write_csv(os, {"time", "value", "x"}, {&t, &s.values(), &d.x.values()});
        return os.str();
    }
    if (name != "ex1" && name != "ex2" && name != "tone") throw UsageError("unknown fixture '" + name + "'");
    const auto fx = bench::make_fixture(name);
    const auto s = noisy(fx.clean, cfg, name == "tone" ? 0.0 : 0.05);
    const auto t = times(s);
    const auto phase = fx.truth.cosine_phase();
    io::write_csv(os, {"time", "value", "truth_phase", "truth_frequency", "truth_amplitude"},
                  {&t, &s.values(), &phase, &fx.truth.frequency, &fx.truth.amplitude});
    return os.str();
}

bench::Fixture resolve_fixture(const std::string& name, const RunConfig& cfg) {
    if (name.empty()) throw UsageError("--fixture is required");
    if (fs::exists(name)) return io::read_fixture(name, cfg.sample_rate);
    const auto names = bench::fixture_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown fixture '" + name + "' (not a file and not one of ex1, ex2, tone)");
    return bench::make_fixture(name);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"FIF decomposition and DTW-based instantaneous phase/frequency estimation", "jade"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    RunConfig cfg;
    std::string config_path, output, input = "-";

    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("-o,--output", output, "output file (default: standard output)");
    app.add_option("--seed", cfg.seed, "noise seed");
    app.add_option("--snr-db", cfg.snr_db, "calibrate noise to this SNR (dB)");
    app.add_option("--gamma", cfg.gamma, "noise scale");
    app.add_flag("--truth-crossings", cfg.truth_crossings, "use ground-truth crossings from the truth_phase column");
    app.add_flag("--monotonic-segments", cfg.monotonic_segments, "split at extrema instead of zero crossings");
    app.add_option("--min-section-length", cfg.min_section_length, "shortest section kept");
    app.add_option("--rate,--sample-rate", cfg.sample_rate, "sample rate (Hz) for single-column input");
    app.add_option("--xi", cfg.fif.xi, "filter length multiplier");
    app.add_option("--delta", cfg.fif.delta, "sift stopping threshold");
    app.add_option("--max-imfs", cfg.fif.max_imfs, "maximum number of IMFs");
    app.add_option("--max-inner-iterations", cfg.fif.max_inner_iterations, "sift iteration cap");
    app.add_option("--extension-factor", cfg.fif.extension_factor, "boundary extension in filter lengths");
    app.add_option("--imf-energy-floor", cfg.fif.imf_energy_floor, "relative norm below which sifting stops");

    std::string fixture_name;
    auto* synth_cmd = app.add_subcommand("synth", "generate a fixture signal as CSV");
    synth_cmd->add_option("fixture", fixture_name, "ex1 | ex2 | ex3 | duffing | tone")->required();
    synth_cmd->fallthrough();

    auto* decompose_cmd = app.add_subcommand("decompose", "FIF decomposition");
    decompose_cmd->add_option("input", input, "CSV or WAV file, '-' for standard input");
    decompose_cmd->fallthrough();

    std::vector<std::size_t> partition;
    auto* jade_cmd = app.add_subcommand("jade", "instantaneous phase and frequency");
    jade_cmd->add_option("input", input, "CSV or WAV file, '-' for standard input");
    jade_cmd->add_option("--partition", partition, "spline knots (sample indices)")->delimiter(',');
    jade_cmd->fallthrough();

    std::string baseline_name;
    auto* baseline_cmd = app.add_subcommand("baseline", "HT / NHT / DQ phase and frequency");
    baseline_cmd->add_option("method", baseline_name, "ht | nht | dq")
        ->required()
        ->check(CLI::IsMember({"ht", "nht", "dq"}));
    baseline_cmd->add_option("input", input, "CSV or WAV file, '-' for standard input");
    baseline_cmd->fallthrough();

    std::vector<std::size_t> imfs;
    auto* pipeline_cmd = app.add_subcommand("pipeline", "decompose, estimate and reconstruct");
    pipeline_cmd->add_option("input", input, "CSV or WAV file, '-' for standard input");
    pipeline_cmd->add_option("--imfs", imfs, "1-based IMF indices (default: all)")->delimiter(',');
    pipeline_cmd->fallthrough();

    auto* bench_cmd = app.add_subcommand("bench", "benchmarks");
    bench_cmd->require_subcommand(1);
    bench_cmd->fallthrough();
    std::vector<double> snrs;
    std::string csv_out;
    std::uint64_t base_seed = 1;
    unsigned threads = 0;
    auto* sweep_cmd = bench_cmd->add_subcommand("sweep", "phase error versus SNR");
    sweep_cmd->add_option("--fixture", cfg.fixture, "ex1 | ex2 | tone | CSV with truth_phase");
    sweep_cmd->add_option("--seeds", cfg.seeds, "noise realizations per SNR");
    sweep_cmd->add_option("--snrs", snrs, "target SNRs in dB")->delimiter(',');
    sweep_cmd->add_option("--method", cfg.method, "jade | ht | nht | dq");
    sweep_cmd->add_option("--base-seed", base_seed, "first seed");
    sweep_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
    sweep_cmd->add_option("--csv", csv_out, "also write the report as CSV");
    sweep_cmd->fallthrough();
    auto* compare_cmd = bench_cmd->add_subcommand("compare", "JADE against HT, NHT and DQ on one realization");
    compare_cmd->add_option("--fixture", cfg.fixture, "ex1 | ex2 | tone | CSV with truth_phase");
    compare_cmd->fallthrough();

    std::vector<std::string> columns;
    bool overlay = false;
    std::string title;
    auto* plot_cmd = app.add_subcommand("plot", "SVG plot of CSV columns");
    plot_cmd->add_option("input", input, "CSV file, '-' for standard input");
    plot_cmd->add_option("--columns", columns, "columns to plot (default: all but time)")->delimiter(',');
    plot_cmd->add_flag("--overlay", overlay, "draw all columns in one panel");
    plot_cmd->add_option("--title", title, "plot title");
    plot_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw UsageError("cannot open config file " + config_path);
            const auto kv = parse_config(f, config_path);
            auto given = [&](const std::string& key) {
                const auto flag = flag_for(key);
                for (const CLI::App* a : {&app, synth_cmd, decompose_cmd, jade_cmd, baseline_cmd, pipeline_cmd,
                                          bench_cmd, sweep_cmd, compare_cmd, plot_cmd})
                    if (auto* o = a->get_option_no_throw(flag); o && o->count() > 0) return true;
                return false;
            };
            for (const auto& [k, v] : kv)
                if (!given(k)) apply_setting(cfg, k, v);
        }
        cfg.validate();

        if (*synth_cmd) {
            emit(synth_csv(fixture_name, cfg), output, out);
        } else if (*decompose_cmd) {
            const auto x = load_input(input, cfg, in, err);
            const auto d = fif::decompose(x.signal, cfg.fif);
            err << "extracted " << d.imfs.size() << " IMF(s)\n";
            emit(io::to_csv(d), output, out);
        } else if (*jade_cmd) {
            const auto x = load_input(input, cfg, in, err);
            JadeOptions opt;
            opt.segmentation = cfg.monotonic_segments ? Segmentation::monotonic : Segmentation::zero_crossings;
            opt.min_section_length = cfg.min_section_length;
            if (!partition.empty()) opt.partition = partition;
            if (cfg.truth_crossings) {
                if (!x.table || !x.table->find("truth_phase"))
                    throw DataError("--truth-crossings needs a truth_phase column in the input");
                opt.crossings = bench::truth_crossings(x.table->column("truth_phase"));
            }
            const auto r = estimate(x.signal, opt);
            if (!r.monotonicity_violations.empty())
                err << "warning: phase decreases at " << r.monotonicity_violations.size()
                    << " sample(s) away from knots\n";
            emit(io::to_csv(r), output, out);
        } else if (*baseline_cmd) {
            const auto x = load_input(input, cfg, in, err);
            baselines::PhaseEstimate e;
            if (baseline_name == "ht") e = baselines::ht_phase_if(x.signal);
            else if (baseline_name == "nht") e = baselines::nht_phase_if(x.signal);
            else e = baselines::dq_phase_if(x.signal);
            const auto t = times(x.signal);
            std::ostringstream os;
            io::write_csv(os, {"time", "phase_rad", "if_hz"}, {&t, &e.phase, &e.frequency});
            emit(os.str(), output, out);
        } else if (*pipeline_cmd) {
            const auto x = load_input(input, cfg, in, err);
            std::vector<std::size_t> sel;
            for (auto i : imfs) {
                if (i < 1) throw UsageError("--imfs indices start at 1");
                sel.push_back(i - 1);
            }
            const auto p = bench::pipeline(x.signal, cfg.fif, sel);
            const auto t = times(x.signal);
            std::vector<std::string> header{"time", "input"};
            std::vector<const std::vector<double>*> cols{&t, &x.signal.values()};
            for (std::size_t j = 0; j < p.selection.size(); ++j) {
                const auto k = std::to_string(p.selection[j] + 1);
                header.push_back("imf_" + k);
                cols.push_back(&p.decomposition.imfs[p.selection[j]].values());
                header.push_back("recon_" + k);
                cols.push_back(&p.reconstructions[j].values());
                err << "imf " << k << ": reconstruction error " << p.imf_errors[j] << '\n';
            }
            header.push_back("composite");
            cols.push_back(&p.composite.values());
            err << "composite: correlation " << p.composite_correlation << ", relative error " << p.composite_error
                << " (interior 80%)\n";
            std::ostringstream os;
            io::write_csv(os, header, cols);
            emit(os.str(), output, out);
        } else if (*sweep_cmd) {
            const auto fx = resolve_fixture(cfg.fixture, cfg);
            bench::SweepOptions opt;
            const bool external = fs::exists(cfg.fixture);
            opt.snr_targets = snrs.empty() ? (external ? bench::table2_snrs() : bench::table1_snrs()) : snrs;
            opt.seeds = cfg.seeds;
            opt.method = bench::parse_method(cfg.method);
            opt.ground_truth_crossings = cfg.truth_crossings;
            opt.base_seed = base_seed;
            opt.threads = threads;
            const auto rep = bench::snr_sweep(fx, opt);
            if (!csv_out.empty()) io::write_results(rep, csv_out);
            emit(bench::format_table(rep), output, out);
        } else if (*compare_cmd) {
            if (cfg.fixture.empty()) cfg.fixture = "ex2";
            const auto fx = resolve_fixture(cfg.fixture, cfg);
            const bool paper_noise = cfg.fixture == "ex1" || cfg.fixture == "ex2";
            const auto s = noisy(fx.clean, cfg, paper_noise ? 0.05 : 0.0);
            const auto res = bench::compare_methods(s, fx.truth);
            std::ostringstream os;
            os << "method,epsilon,error\n";
            for (const auto& r : res)
                os << r.method << ',' << (r.epsilon ? io::format_number(*r.epsilon) : "nan") << ',' << r.error << '\n';
            emit(os.str(), output, out);
        } else if (*plot_cmd) {
            if (output.empty() || output == "-") throw UsageError("plot needs -o <file.svg>");
            const auto t = input == "-" ? io::read_table(in) : io::read_table(fs::path(input));
            std::vector<io::Series> series;
            std::vector<std::string> names = columns;
            if (names.empty())
                for (std::size_t c = 0; c < t.header.size(); ++c)
                    if (t.header[c] != "time") names.push_back(t.header[c].empty() ? "c" + std::to_string(c + 1) : t.header[c]);
            for (const auto& n : names) {
                std::optional<std::size_t> c = t.find(n);
                if (!c && n.size() > 1 && n[0] == 'c') c = std::stoul(n.substr(1)) - 1;
                if (!c || *c >= t.columns.size()) throw DataError("no column '" + n + "'");
                series.push_back({n, t.columns[*c], overlay ? 0 : -1});
            }
            io::PlotOptions po;
            po.title = title;
            if (auto tc = t.find("time")) {
                po.x = t.columns[*tc];
                po.x_label = "time";
            }
            io::emit_plot(series, output, po);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cin, std::cout, std::cerr); }

}  // namespace jade::cli
