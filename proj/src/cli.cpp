#include "ringdelay/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include "ringdelay/errors.hpp"
#include "ringdelay/scattering.hpp"
#include "ringdelay/series_io.hpp"
#include "ringdelay/sweep.hpp"

namespace ringdelay::cli {
namespace {

constexpr std::array<std::string_view, 13> kJobKeys = {
    "energy", "v1", "v3", "lb1", "lb3", "well", "phi", "from", "to", "steps", "step-h", "out", "threads",
};

struct Options {
    double energy = 1.0;
    double v1 = 0.0;
    double v3 = 0.0;
    double lb1 = 0.0;
    double lb3 = 0.0;
    double well = 0.0;
    double phi = 0.0;
    double from = 0.0;
    double to = 0.0;
    int steps = 201;
    std::optional<double> step_h;
    std::string out;
    unsigned threads = 1;

    RingSpec spec() const {
        RingSpec s = two_barrier_ring(energy, v1, v3, lb1, lb3, well, flux_to_phase(phi));
        return s;
    }
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// Job file: one `key = value` per line, '#' starts a comment.  Keys are the
// long flag names without the leading dashes.
std::vector<std::string> read_job(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open job file '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument(path + ":" + std::to_string(number) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (std::find(kJobKeys.begin(), kJobKeys.end(), key) == kJobKeys.end()) {
            throw InvalidArgument(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

// Splices the contents of --job into the argument list right after the
// subcommand, so flags given explicitly on the command line win.
std::vector<std::string> expand_job(const std::vector<std::string>& args) {
    std::vector<std::string> explicit_args;
    std::vector<std::string> job_args;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--job") {
            if (i + 1 >= args.size()) throw InvalidArgument("--job needs a file argument");
            path = args[++i];
        } else if (args[i].starts_with("--job=")) {
            path = args[i].substr(6);
        } else {
            explicit_args.push_back(args[i]);
            continue;
        }
        auto more = read_job(path);
        job_args.insert(job_args.end(), more.begin(), more.end());
    }
    if (job_args.empty()) return explicit_args;
    std::vector<std::string> merged;
    auto first = explicit_args.begin();
    if (first != explicit_args.end() && !first->starts_with("-")) merged.push_back(*first++);
    merged.insert(merged.end(), job_args.begin(), job_args.end());
    merged.insert(merged.end(), first, explicit_args.end());
    return merged;
}

void add_shared(CLI::App& sub, Options& o, bool sweep) {
    sub.add_option("--energy", o.energy, "Incident energy E")->capture_default_str();
    sub.add_option("--v1", o.v1, "Height of barrier 1")->capture_default_str();
    sub.add_option("--v3", o.v3, "Height of barrier 3")->capture_default_str();
    sub.add_option("--lb1", o.lb1, "Length of barrier 1")->capture_default_str();
    sub.add_option("--lb3", o.lb3, "Length of barrier 3")->capture_default_str();
    sub.add_option("--well", o.well, "Well width w")->capture_default_str();
    sub.add_option("--phi", o.phi, "Flux in units of the flux quantum")->capture_default_str();
    sub.add_option("--step-h", o.step_h, "Energy step for d Arg R / dE (default 1e-5 E)");
    sub.add_option("--out", o.out, "Output file (default: standard output)");
    sub.add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
    if (sweep) {
        sub.add_option("--from", o.from, "Start of the sweep range")->required();
        sub.add_option("--to", o.to, "End of the sweep range")->required();
        sub.add_option("--steps", o.steps, "Number of sweep points")->capture_default_str();
    }
    sub.add_option("--job", "Job file of key = value lines mirroring these flags");
    for (CLI::Option* opt : sub.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

Metadata spec_metadata(const std::string& command, const Options& o, const RingSpec& spec) {
    Metadata m = {
        {"command", command},
        {"energy", format_double(o.energy)},
        {"v1", format_double(o.v1)},
        {"v3", format_double(o.v3)},
        {"lb1", format_double(o.lb1)},
        {"lb3", format_double(o.lb3)},
        {"well", format_double(o.well)},
        {"phi", format_double(o.phi)},
        {"alpha", format_double(total_flux_phase(spec))},
        {"step-h", format_double(o.step_h.value_or(default_step(o.energy)))},
    };
    if (command != "point") {
        m.push_back({"from", format_double(o.from)});
        m.push_back({"to", format_double(o.to)});
        m.push_back({"steps", std::to_string(o.steps)});
    }
    return m;
}

std::string render(const std::string& command, const Options& o) {
    const RingSpec spec = o.spec();
    SweepOptions sweep;
    sweep.step = o.step_h;
    sweep.threads = o.threads;
    Metadata meta = spec_metadata(command, o, spec);
    std::ostringstream text;

    if (command == "point") {
        const PointResult p = point(spec, sweep);
        for (const auto& [k, v] : meta) text << "# " << k << '=' << v << '\n';
        text << "reflection_re=" << format_double(p.reflection.real()) << '\n'
             << "reflection_im=" << format_double(p.reflection.imag()) << '\n'
             << "abs_r=" << format_double(std::abs(p.reflection)) << '\n'
             << "arg_r=" << format_double(std::arg(p.reflection)) << '\n'
             << "tau=" << format_double(p.tau) << '\n'
             << "tau_error=" << format_double(p.tau_error) << '\n'
             << "residual=" << format_double(p.residual) << '\n'
             << "condition=" << format_double(p.condition) << '\n';
        return text.str();
    }

    SweepSeries series;
    if (command == "scan-length") {
        series = scan_length(spec, o.from, o.to, o.steps, sweep);
    } else if (command == "scan-flux") {
        FluxScan f = scan_flux(spec, o.from, o.to, o.steps, sweep);
        meta.push_back({"visibility", format_double(f.visibility)});
        meta.push_back({"mean_tau", format_double(f.mean_tau)});
        series = std::move(f.series);
    } else if (command == "scan-well") {
        WellScan w = scan_well(spec, o.from, o.to, o.steps, sweep);
        meta.push_back({"saturated_tau", format_double(w.saturated_tau)});
        series = std::move(w.series);
    } else {
        ResonanceScan r = scan_resonance(spec, o.from, o.to, o.steps, sweep);
        meta.push_back({"baseline", format_double(r.baseline)});
        meta.push_back({"peaks", std::to_string(r.peaks.size())});
        for (const ResonancePeak& p : r.peaks) {
            meta.push_back({"peak", format_double(p.location) + "," + format_double(p.height) + "," +
                                        format_double(p.fwhm)});
        }
        series = std::move(r.series);
    }
    meta.push_back({"param", series.parameter_name});
    write_csv(text, series, meta);
    return text.str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reflection phase delay of an Aharonov-Bohm ring with one lead", "ringdelay"};
    app.require_subcommand(1);
    Options opts;
    const std::array<std::pair<const char*, const char*>, 5> commands = {{
        {"point", "Reflection amplitude, delay time and residual at one configuration"},
        {"scan-length", "Delay time against circumference L of a single-barrier ring"},
        {"scan-flux", "Delay time against flux phi (units of the flux quantum)"},
        {"scan-well", "Delay time against lb1 for a two-barrier ring with a well"},
        {"scan-resonance", "Delay time against well width w with resonance detection"},
    }};
    for (const auto& [name, help] : commands) {
        add_shared(*app.add_subcommand(name, help), opts, std::string_view(name) != "point");
    }

    std::vector<std::string> args;
    try {
        args = expand_job(raw_args);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidArguments;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalidArguments;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const std::string text = render(command, opts);
        if (opts.out.empty()) {
            out << text;
        } else {
            std::ofstream file(opts.out, std::ios::binary);
            if (!file) throw InvalidArgument("cannot open output file '" + opts.out + "'");
            file << text;
            if (!file) throw InvalidArgument("failed writing '" + opts.out + "'");
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidArguments;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    return kExitOk;
}

}  // namespace ringdelay::cli
