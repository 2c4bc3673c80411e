#include "lacuna/carleson.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace lacuna;

namespace {

struct Flags {
    std::string config, out, probes, lacunarity, p;
    std::size_t n = 0, k = 0, trials = 0;
    double period = 0;
    std::uint64_t seed = 0;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--n", f.n, "grid size");
    cmd->add_option("--period", f.period, "torus period");
    cmd->add_option("--k", f.k, "largest lacunary direction count");
    cmd->add_option("--lacunarity", f.lacunarity, "normalized or theorem");
    cmd->add_option("--p", f.p, "exponent list, comma separated");
    cmd->add_option("--trials", f.trials, "trial count");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--out", f.out, "CSV output path (stdout if absent)");
    cmd->add_option("--probes", f.probes, "probe CSV output path (decay only)");
}

ExperimentConfig build_config(const std::string& name, CLI::App* cmd, const Flags& f) {
    ExperimentConfig cfg;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        cfg = parse_config(in, cfg);
    }
    cfg.experiment = name;
    const auto given = [&](const char* opt) { return cmd->count(opt) > 0; };
    if (given("--n")) cfg.n = f.n;
    if (given("--period")) cfg.period = f.period;
    if (given("--k")) cfg.k = f.k;
    if (given("--lacunarity")) cfg.lacunarity = f.lacunarity;
    if (given("--p")) cfg.set("p", f.p);
    if (given("--trials")) cfg.trials = f.trials;
    if (given("--seed")) cfg.seed = f.seed;
    if (given("--out")) cfg.out = f.out;
    return cfg;
}

int run(const std::string& name, CLI::App* cmd, const Flags& f) {
    const auto cfg = build_config(name, cmd, f);
    std::vector<ProbeRow> probes;
    const auto rep = run_experiment(cfg, &probes);
    if (cfg.out.empty()) {
        rep.write_csv(std::cout);
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw Error("cannot open " + cfg.out);
        rep.write_csv(out);
    }
    if (!f.probes.empty()) {
        std::ofstream out(f.probes);
        if (!out) throw Error("cannot open " + f.probes);
        write_probe_csv(out, probes);
    }
    std::size_t failed = 0;
    for (const auto& r : rep.rows)
        if (!r.pass) {
            ++failed;
            std::cerr << "FAIL " << r.experiment << ' ' << r.parameters << " value=" << r.value << " gate: " << r.gate << '\n';
        }
    std::cerr << name << ": " << rep.rows.size() - failed << '/' << rep.rows.size() << " rows pass\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lacuna: directional Hilbert transform and Carleson laboratory"};
    app.require_subcommand(1);

    std::vector<std::pair<std::string, Flags>> flags;
    flags.reserve(4);
    std::vector<CLI::App*> cmds;
    for (const auto& name : experiment_names()) {
        flags.emplace_back(name, Flags{});
        auto* cmd = app.add_subcommand(name, "run the " + name + " experiment");
        add_flags(cmd, flags.back().second);
        cmds.push_back(cmd);
    }

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "check a John-Nirenberg certificate file");
    verify->add_option("certificate", cert_path, "certificate file")->required()->check(CLI::ExistingFile);

    std::string weights_path, cert_out;
    double p = 1.0, eps = 0.05;
    std::size_t grid = 64;
    auto* certify = app.add_subcommand("certify", "build a John-Nirenberg certificate for a weight file");
    certify->add_option("weights", weights_path, "weight file (n1 n2 m1 m2 value)")->required()->check(CLI::ExistingFile);
    certify->add_option("--p", p, "exponent in (0, 2)");
    certify->add_option("--eps", eps, "epsilon in (0, 1/2)");
    certify->add_option("--grid", grid, "raster size");
    certify->add_option("--out", cert_out, "certificate path (stdout if absent)");

    CLI11_PARSE(app, argc, argv);
    try {
        for (std::size_t i = 0; i < cmds.size(); ++i)
            if (cmds[i]->parsed()) return run(flags[i].first, cmds[i], flags[i].second);
        if (verify->parsed()) {
            std::ifstream in(cert_path);
            const auto c = io::read_certificate(in);
            std::string why;
            if (!check_certificate(c, &why)) {
                std::cerr << "certificate inconsistent: " << why << '\n';
                return 1;
            }
            if (!c.valid) {
                std::cerr << "certificate consistent but records a failure at round " << c.failed_round << ": " << c.failure << '\n';
                return 1;
            }
            std::cout << "certificate valid: " << c.rounds.size() << " rounds, C = " << c.constant << '\n';
            return 0;
        }
        if (certify->parsed()) {
            std::ifstream in(weights_path);
            const auto c = jn_certificate(io::read_weights(in), p, eps, grid);
            if (cert_out.empty()) {
                io::write_certificate(std::cout, c);
            } else {
                std::ofstream out(cert_out);
                io::write_certificate(out, c);
            }
            if (!c.valid) std::cerr << "round " << c.failed_round << ": " << c.failure << '\n';
            return c.valid ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
