// Command-line front end: simulate, verify, transform.

#include "cmx/config.hpp"
#include "cmx/contact.hpp"
#include "cmx/io.hpp"
#include "cmx/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsage = 2;

int simulate(const std::string& config_path, const std::string& out_override, bool print_only) {
    cmx::ScenarioConfig cfg;
    try {
        cfg = cmx::load_config(config_path);
    } catch (const cmx::ConfigError& e) {
        for (const auto& m : e.messages()) std::cerr << config_path << ": " << m << '\n';
        return kUsage;
    }
    if (!out_override.empty()) cfg.output_directory = out_override;
    if (print_only) {
        std::cout << cmx::print_config(cfg);
        return kOk;
    }

    namespace fs = std::filesystem;
    const fs::path out = cfg.output_directory;
    fs::create_directories(out);
    {
        std::FILE* f = std::fopen((out / "config.txt").string().c_str(), "wb");
        if (!f) throw cmx::IoError("cannot write " + (out / "config.txt").string());
        const std::string text = cmx::print_config(cfg);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
    }

    const cmx::Scenario sc = cmx::build_scenario(cfg);
    cmx::ScenarioSinks sinks;
    sinks.snapshot_stride = cfg.snapshot_stride;
    sinks.on_snapshot = [&](const cmx::MaxwellState& s, long step) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06ld.cmx", step);
        cmx::write_snapshot(s, (out / name).string());
    };
    const auto result = cmx::run_scenario(sc.initial, sc.medium, sc.scheme, sinks);
    cmx::write_timeseries(result.series, (out / "timeseries.csv").string());

    const auto& last = result.series.back();
    std::cout << "steps " << cfg.steps << ", dt " << cmx::format_double(sc.scheme.dt) << ", final time "
              << cmx::format_double(last.time) << '\n'
              << "psi_total " << cmx::format_double(last.psi_total) << ", max div D "
              << cmx::format_double(last.div_D_max) << ", max div B " << cmx::format_double(last.div_B_max) << '\n'
              << "wrote " << (out / "timeseries.csv").string() << '\n';
    return kOk;
}

int verify(const std::string& suite, std::uint64_t seed) {
    cmx::VerifyOptions opts;
    opts.seed = seed;
    int failed = 0;
    const auto results = cmx::run_suite(suite, opts, [&](const cmx::CriterionResult& r) {
        std::cout << cmx::format_result(r) << std::endl;
        failed += r.passed ? 0 : 1;
    });
    std::cout << (failed == 0 ? "all " : "") << results.size() - static_cast<size_t>(failed) << " of "
              << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? kOk : kRuntimeFailure;
}

int transform(const std::vector<double>& coeffs, const std::vector<double>& p) {
    cmx::Vec c(6), pv(6);
    for (int i = 0; i < 6; ++i) {
        c[i] = coeffs[static_cast<size_t>(i)];
        pv[i] = p[static_cast<size_t>(i)];
    }
    if ((c.array() <= 0.0).any()) {
        std::cerr << "transform: --psi-quadratic coefficients must be positive (psi must be strictly convex)\n";
        return kUsage;
    }
    const cmx::Generator psi = cmx::quadratic_generator(cmx::GeneratorKind::XType, c.asDiagonal().toDenseMatrix());
    const cmx::LegendreResult r = cmx::legendre_transform(psi, pv);
    std::cout << "value = " << cmx::format_double(r.value) << '\n' << "argmax =";
    for (int i = 0; i < 6; ++i) std::cout << ' ' << cmx::format_double(r.argmax[i]);
    std::cout << '\n' << "iterations = " << r.iterations << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contact-geometric Maxwell solver and verification tool"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "Run a scenario from a config file");
    std::string config_path, out_dir;
    bool print_config = false;
    sim->add_option("--config", config_path, "Scenario config file")->required();
    sim->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    sim->add_flag("--print-config", print_config, "Print the resolved config and exit");

    auto* ver = app.add_subcommand("verify", "Run an acceptance suite");
    std::string suite;
    std::uint64_t seed = cmx::VerifyOptions{}.seed;
    ver->add_option("suite", suite, "contact | dec | fiber | dynamics | infogeo | io | all")
        ->required()
        ->check(CLI::IsMember(cmx::suite_names()));
    ver->add_option("--seed", seed, "Seed for randomized fixtures");

    auto* tr = app.add_subcommand("transform", "Legendre transform of a diagonal quadratic energy");
    std::vector<double> coeffs, pvals;
    tr->add_option("--psi-quadratic", coeffs, "Six coefficients c_i of psi = sum c_i x_i^2 / 2")
        ->required()
        ->expected(6);
    tr->add_option("--p", pvals, "Six dual coordinates")->required()->expected(6);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*sim) return simulate(config_path, out_dir, print_config);
        if (*ver) return verify(suite, seed);
        if (*tr) return transform(coeffs, pvals);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kUsage;
}
