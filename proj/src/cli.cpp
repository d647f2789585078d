#include "abeltomo/cli.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "abeltomo/io.hpp"
#include "abeltomo/random.hpp"
#include "abeltomo/verify.hpp"

namespace abeltomo::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Failure {
    int code;
    std::string message;
};

json metadata(const RunConfig& cfg) {
    json meta{{"tool", "tomoctl"}, {"command", cfg.command}, {"rng", Rng::kAlgorithm}};
    meta["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    return meta;
}

std::string csv_comment(const RunConfig& cfg) {
    std::string c = "tomoctl " + cfg.command + " rng=" + Rng::kAlgorithm + " seed=";
    c += cfg.seed ? std::to_string(*cfg.seed) : "none";
    return c;
}

fs::path out_path(const RunConfig& cfg, const std::string& name) { return fs::path(cfg.out) / name; }

void check_distinct(const RunConfig& cfg) {
    const fs::path out = fs::absolute(cfg.out).lexically_normal();
    for (const auto& p : {cfg.in, cfg.state}) {
        if (p && fs::absolute(*p).lexically_normal() == out) throw Failure{kInvalidInput, "input and output paths coincide"};
    }
    if (cfg.in && cfg.state && fs::absolute(*cfg.in).lexically_normal() == fs::absolute(*cfg.state).lexically_normal()) {
        throw Failure{kInvalidInput, "--in and --state coincide"};
    }
}

std::uint64_t require_seed(const RunConfig& cfg, const char* what) {
    if (!cfg.seed) throw Failure{kInvalidInput, std::string("--seed is required to generate a random ") + what};
    return *cfg.seed;
}

int require_dimension(const RunConfig& cfg) {
    if (!cfg.n) throw Failure{kInvalidInput, "--n is required when no input file is given"};
    if (*cfg.n < 2) throw Failure{kInvalidInput, "--n must be >= 2"};
    return *cfg.n;
}

void require_odd_prime(int n) {
    if (!is_prime(n) || n % 2 == 0) {
        throw Failure{kUnsupportedRegime, "n=" + std::to_string(n) + " is not an odd prime"};
    }
}

/// State from a file, else a seeded random pure state.
io::StateFile load_state(const RunConfig& cfg, const std::optional<std::string>& path) {
    if (path) {
        auto s = io::read_state(*path);
        if (cfg.n && *cfg.n != s.n) throw Failure{kInvalidInput, "--n disagrees with the state file"};
        return s;
    }
    const int n = require_dimension(cfg);
    Rng rng(require_seed(cfg, "state"));
    const CVectord f = random_state_vector(n, rng);
    return {n, "pure", projector(f), f};
}

int cmd_tomogram(const RunConfig& cfg, std::ostream& out) {
    const auto state = load_state(cfg, cfg.in);
    require_odd_prime(state.n);
    const CyclicGroup grp(state.n);
    const auto t = tomogram(state.rho, grp);

    json sidecar = metadata(cfg);
    sidecar["n"] = state.n;
    sidecar["char_function"] = io::char_json(phi(state.rho, grp));
    json bochner = json::array();
    for (int l = 0; l <= state.n; ++l) bochner.push_back(bochner_check(state.rho, l, grp));
    sidecar["bochner_min"] = bochner;

    io::atomic_write(out_path(cfg, "tomogram.csv"), io::tomogram_csv(t, csv_comment(cfg)));
    io::atomic_write(out_path(cfg, "tomogram.json"), io::dump(sidecar));
    out << "tomogram n=" << state.n << " written to " << cfg.out << "\n";
    return kSuccess;
}

int cmd_char(const RunConfig& cfg, std::ostream& out) {
    const auto state = load_state(cfg, cfg.in);
    const CyclicGroup grp(state.n);
    json doc = metadata(cfg);
    doc["n"] = state.n;
    doc["char_function"] = io::char_json(phi(state.rho, grp));
    doc["parseval_defect"] = parseval_defect(state.rho, grp);
    io::atomic_write(out_path(cfg, "char.json"), io::dump(doc));
    out << "characteristic function n=" << state.n << " written to " << cfg.out << "\n";
    return kSuccess;
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.in) throw Failure{kInvalidInput, "reconstruct needs --in TOMOGRAM.csv"};
    const auto t = io::read_tomogram(*cfg.in);
    const int n = t.n();
    if (cfg.n && *cfg.n != n) throw Failure{kInvalidInput, "--n disagrees with the tomogram"};
    require_odd_prime(n);
    const CyclicGroup grp(n);
    const CMatrixd rho = reconstruct_from_tomogram(t, grp);
    const auto defects = density_defects(rho);

    json report = metadata(cfg);
    report["n"] = n;
    report["trace_defect"] = defects.norm_or_trace;
    report["hermitian_defect"] = defects.hermitian;
    report["min_eigenvalue"] = defects.min_eigenvalue;
    report["is_state"] = is_density_matrix(rho, 1e-8, 1e-10, 1e-8);
    io::atomic_write(out_path(cfg, "state.json"), io::dump(io::state_json(rho)));
    io::atomic_write(out_path(cfg, "reconstruct.json"), io::dump(report));
    out << "reconstructed n=" << n << " state written to " << cfg.out << "\n";
    return kSuccess;
}

int cmd_channel(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::optional<WeylChannel<double>> ch;
    if (cfg.in) {
        ch = io::read_channel(*cfg.in);
    } else {
        const int n = require_dimension(cfg);
        Rng rng(require_seed(cfg, "channel") ^ 0xC4A77E1ULL);
        ch = random_channel(n, rng);
    }
    const int n = ch->n();
    if (cfg.n && *cfg.n != n) throw Failure{kInvalidInput, "--n disagrees with the channel file"};
    RunConfig state_cfg = cfg;
    state_cfg.n = n;
    const auto state = load_state(state_cfg, cfg.state);
    if (state.n != n) throw Failure{kInvalidInput, "state and channel dimensions differ"};
    require_odd_prime(n);

    const CyclicGroup grp(n);
    const CMatrixd rho_out = apply(*ch, state.rho, grp);
    const auto t_in = tomogram(state.rho, grp);
    const auto t_direct = tomogram(rho_out, grp);
    const auto t_conv = output_tomogram(*ch, t_in, grp);
    const double discrepancy = max_abs(t_direct.rows - t_conv.rows);
    const double char_discrepancy = max_abs(output_char(*ch, phi(state.rho, grp), grp).values - phi(rho_out, grp).values);
    const double tolerance = cfg.tol.value_or(1e-8);

    const auto marg = marginals(*ch);
    json report = metadata(cfg);
    report["n"] = n;
    report["channel"] = io::channel_json(*ch);
    json Q = json::array();
    for (int m = 0; m < n; ++m) {
        json row = json::array();
        for (int l = 0; l <= n; ++l) row.push_back(marg.Q(m, l));
        Q.push_back(std::move(row));
    }
    report["marginals"] = Q;
    json entropies = json::array();
    for (double h : marginal_entropies(*ch)) entropies.push_back(h);
    report["marginal_entropies"] = entropies;
    report["tomogram_discrepancy"] = discrepancy;
    report["char_discrepancy"] = char_discrepancy;
    report["tolerance"] = tolerance;

    const auto comment = csv_comment(cfg);
    io::atomic_write(out_path(cfg, "output_state.json"), io::dump(io::state_json(rho_out)));
    io::atomic_write(out_path(cfg, "tomogram_in.csv"), io::tomogram_csv(t_in, comment));
    io::atomic_write(out_path(cfg, "tomogram_direct.csv"), io::tomogram_csv(t_direct, comment));
    io::atomic_write(out_path(cfg, "tomogram_convolution.csv"), io::tomogram_csv(t_conv, comment));
    io::atomic_write(out_path(cfg, "channel_report.json"), io::dump(report));
    out << "channel n=" << n << " discrepancy=" << io::format_double(discrepancy) << "\n";
    if (!(discrepancy < tolerance)) {
        err << "convolution and direct tomograms differ by " << discrepancy << "\n";
        return kPropertyFailure;
    }
    return kSuccess;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    VerifyOptions opts;
    if (cfg.n) {
        if (*cfg.n < 2) throw Failure{kInvalidInput, "--n must be >= 2"};
        opts.dimensions = {*cfg.n};
    }
    opts.ensemble = cfg.ensemble;
    opts.seed = cfg.seed.value_or(1);
    opts.tolerance = cfg.tol;
    opts.inject_phase_fault = cfg.inject_fault;
    const auto report = run_verification(opts);
    io::atomic_write(out_path(cfg, "verify_report.json"), io::dump(report.to_json(opts)));
    for (const auto& p : report.properties) {
        out << (p.pass ? "PASS " : "FAIL ") << p.name << " max_defect=" << p.max_defect << " tol=" << p.tolerance
            << " ensemble=" << p.ensemble << "\n";
    }
    if (!report.all_pass()) {
        err << "property failure: " << report.failures() << "\n";
        return kPropertyFailure;
    }
    return kSuccess;
}

int cmd_optical(const RunConfig& cfg, std::ostream& out) {
    const auto f = cfg.in ? io::parse_grid_state(json::parse(io::read_file(*cfg.in), nullptr, false))
                          : oscillator_eigenstate<double>(cfg.order);
    const int num_t = cfg.grid.value_or(2048);
    const auto tom = optical_tomogram(f, cfg.phi, cfg.t_max, num_t);

    std::ostringstream csv;
    csv << "# " << csv_comment(cfg) << "\nX,density\n";
    for (Eigen::Index i = 0; i < tom.X.size(); ++i) {
        csv << io::format_double(tom.X(i)) << "," << io::format_double(tom.density(i)) << "\n";
    }
    json meta = metadata(cfg);
    meta["phi"] = cfg.phi;
    meta["t_max"] = cfg.t_max;
    meta["num_t"] = num_t;
    meta["dX"] = tom.dX;
    meta["mass"] = tom.mass;
    meta["min_before_clip"] = tom.min_before_clip;
    meta["char_tail"] = tom.char_tail;
    if (!cfg.in) meta["oscillator_order"] = cfg.order;
    io::atomic_write(out_path(cfg, "optical.csv"), csv.str());
    io::atomic_write(out_path(cfg, "optical.json"), io::dump(meta));
    out << "optical tomogram phi=" << cfg.phi << " mass=" << io::format_double(tom.mass) << "\n";
    return kSuccess;
}

int cmd_circle(const RunConfig& cfg, std::ostream& out) {
    std::optional<CircleState<double>> s;
    if (cfg.in) {
        s = io::parse_circle_state(json::parse(io::read_file(*cfg.in), nullptr, false));
    } else {
        Rng rng(require_seed(cfg, "circle state"));
        if (cfg.M < 0) throw Failure{kInvalidInput, "--M must be >= 0"};
        s = random_circle_state(cfg.M, rng);
    }
    const int num_x = cfg.grid.value_or(256);
    const auto star = circle_tomogram_star(*s);
    const auto line = circle_tomogram_line(*s, cfg.theta, num_x);

    const auto comment = "# " + csv_comment(cfg) + "\n";
    std::ostringstream star_csv;
    star_csv << comment << "m,mass\n";
    for (int m = -s->M(); m <= s->M(); ++m) star_csv << m << "," << io::format_double(star(m + s->M())) << "\n";
    std::ostringstream line_csv;
    line_csv << comment << "x,density\n";
    for (Eigen::Index j = 0; j < line.x.size(); ++j) {
        line_csv << io::format_double(line.x(j)) << "," << io::format_double(line.density(j)) << "\n";
    }
    json meta = metadata(cfg);
    meta["state"] = io::circle_json(*s);
    meta["theta"] = cfg.theta;
    meta["num_x"] = num_x;
    meta["line_mass"] = line.mass;
    meta["line_max_imag"] = line.max_imag;
    meta["line_min_before_clip"] = line.min_before_clip;
    io::atomic_write(out_path(cfg, "circle_star.csv"), star_csv.str());
    io::atomic_write(out_path(cfg, "circle_line.csv"), line_csv.str());
    io::atomic_write(out_path(cfg, "circle.json"), io::dump(meta));
    out << "circle tomogram M=" << s->M() << " theta=" << cfg.theta << "\n";
    return kSuccess;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check_distinct(cfg);
        if (cfg.command == "tomogram") return cmd_tomogram(cfg, out);
        if (cfg.command == "char") return cmd_char(cfg, out);
        if (cfg.command == "reconstruct") return cmd_reconstruct(cfg, out);
        if (cfg.command == "channel") return cmd_channel(cfg, out, err);
        if (cfg.command == "verify") return cmd_verify(cfg, out, err);
        if (cfg.command == "continuum-optical") return cmd_optical(cfg, out);
        if (cfg.command == "continuum-circle") return cmd_circle(cfg, out);
        err << "unknown command: " << cfg.command << "\n";
        return kInvalidInput;
    } catch (const Failure& f) {
        err << f.message << "\n";
        return f.code;
    } catch (const UnsupportedRegime& e) {
        err << e.what() << "\n";
        return kUnsupportedRegime;
    } catch (const DegenerateBasis& e) {
        err << e.what() << "\n";
        return kUnsupportedRegime;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return kPropertyFailure;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    } catch (const json::exception& e) {
        err << "invalid JSON: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const fs::filesystem_error& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum tomography on Z_n, R and the circle", "tomoctl"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"tomogram", "tomogram CSV + JSON sidecar of a state (odd prime n)"},
        {"char", "characteristic function of a state"},
        {"reconstruct", "state from a tomogram CSV (odd prime n)"},
        {"channel", "Weyl channel output state and tomogram by two routes"},
        {"verify", "run the invariant suite and write a JSON report"},
        {"continuum-optical", "optical tomogram of a grid wavefunction"},
        {"continuum-circle", "phase tomograms of a circle state"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--n", cfg.n, "dimension of Z_n");
        sub->add_option("--seed", cfg.seed, "64-bit RNG seed");
        sub->add_option("--in", cfg.in, "input file");
        sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "tolerance override");
        sub->add_option("--grid", cfg.grid, "grid size (num_t for optical, num_x for circle)");
        sub->add_option("--theta", cfg.theta, "circle line parameter");
        sub->add_option("--phi", cfg.phi, "quadrature angle");
        if (name == "channel") sub->add_option("--state", cfg.state, "input state file");
        if (name == "verify") {
            sub->add_option("--ensemble", cfg.ensemble, "random samples per dimension")->capture_default_str();
            sub->add_flag("--inject-fault", cfg.inject_fault, "perturb one cocycle phase");
        }
        if (name == "continuum-optical") {
            sub->add_option("--order", cfg.order, "oscillator eigenstate order when --in is absent");
            sub->add_option("--tmax", cfg.t_max, "characteristic-function cutoff")->capture_default_str();
        }
        if (name == "continuum-circle") sub->add_option("--M", cfg.M, "truncation order for random states");
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    std::vector<const char*> argv{"tomoctl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    }
    return run(cfg, out, err);
}

}  // namespace abeltomo::cli
