#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lacuna {

struct ExperimentConfig {
    std::string experiment;
    std::size_t n = 256;
    double period = 1.0;
    std::size_t k = 12;  // largest lacunary direction count
    std::string lacunarity = "normalized";
    std::vector<double> p{2.0};
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::string out;

    // One `key = value` line per field in a fixed order; the output path is excluded.
    std::string canonical() const;
    std::uint64_t hash() const;
    void set(const std::string& key, const std::string& value);
};

/// Applies `key = value` lines (blank lines and '#' comments allowed) on top of `base`.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});

std::uint64_t fnv1a(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);
/// Counter-mode seed for trial i, independent of evaluation order.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i) { return splitmix64(master + i); }

struct ResultRow {
    std::string experiment;
    std::string parameters;  // `key=value` pairs separated by ';'
    double value = 0.0;
    std::optional<double> oracle;
    std::string gate;  // human readable criterion, empty for report-only rows
    bool pass = true;
};

struct Report {
    std::uint64_t config_hash = 0;
    std::vector<ResultRow> rows;
    bool all_pass() const;
    void write_csv(std::ostream& out) const;
};

// Localization probe rows in the `probe,mu,ell,region,value,fit_exponent,seed` layout.
struct ProbeRow {
    std::string probe;
    double mu = 0;
    int ell = 0;
    std::string region;
    double value = 0;
    double fit_exponent = 0;
    std::uint64_t seed = 0;
};
void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);

class CarlesonWeight;
// Random weight with `count` distinct rectangles of side at least 2^{1-depth}, values in [0.1, 1).
CarlesonWeight random_weight(std::uint64_t seed, std::size_t count, int depth);
// Three-scale weight rescaled so the Journe hypothesis holds with the given eps.
CarlesonWeight journe_weight(std::uint64_t seed, double eps);

Report run_norm_growth(const ExperimentConfig& cfg);
Report run_reconstruction(const ExperimentConfig& cfg);
Report run_carleson_suite(const ExperimentConfig& cfg);
Report run_decay_suite(const ExperimentConfig& cfg, std::vector<ProbeRow>* probes = nullptr);
/// Dispatch on cfg.experiment: norm-growth, reconstruction, carleson, decay.
Report run_experiment(const ExperimentConfig& cfg, std::vector<ProbeRow>* probes = nullptr);

std::vector<std::string> experiment_names();

}  // namespace lacuna
