// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.
#include "support.hpp"

#include "lacuna/carleson.hpp"
#include "lacuna/combinatorics.hpp"
#include "lacuna/diagonal.hpp"
#include "lacuna/experiments.hpp"
#include "lacuna/operators.hpp"
#include "lacuna/packets.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace lacuna;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string csv(const Report& r) {
    std::ostringstream o;
    r.write_csv(o);
    return o.str();
}

// Rows of a report whose parameters contain `needle`; all must pass.
Outcome rows_pass(const Report& rep, const std::string& needle, std::string& detail) {
    std::size_t n = 0, bad = 0;
    for (const auto& r : rep.rows)
        if (r.parameters.find(needle) != std::string::npos && !r.gate.empty()) {
            ++n;
            if (!r.pass) {
                ++bad;
                detail += " [" + r.parameters + " = " + num(r.value) + " fails " + r.gate + "]";
            }
        }
    return {n > 0 && bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " gated rows"};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome multiplier_algebra() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = t % 2 == 0 ? 64 : 128;
        const auto f = test::random_field(n, 1000 + t);
        const double ang = 0.1 + 0.061 * t;
        const Direction v(std::cos(ang), std::sin(ang));
        const auto rhs = 0.5 * (f + cplx(0, 1.0 / kPi) * hilbert_dir(f, v));
        worst = std::max(worst, test::rel_diff(analytic_proj(f, v), rhs));
        const auto b = quadrant_proj(f);
        worst = std::max(worst, test::rel_diff(quadrant_proj(b), b));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 10.0, "max rel err " + num(worst) + ", " + num(secs) + " s"};
}

Outcome cone_trichotomy() {
    const std::size_t n = 128;
    const auto g = ShiftedGrid::base(n);
    const auto dirs = make_lacunary(8);
    double keep = 0, kill = 0;
    std::size_t counts[3] = {0, 0, 0}, intermediate = 0;
    for (int n1 : g.scales(0))
        for (int n2 : g.scales(1))
            for (long m1 = 0; m1 < g.positions(0, n1); ++m1)
                for (long m2 = 0; m2 < g.positions(1, n2); ++m2) {
                    const DyadicRectangle r{n1, n2, m1, m2, 0};
                    const auto s = packet_spectrum(g, r, 1);
                    for (double a : dirs.a) {
                        // P_v phi on the spectrum: 1 on v.k > 0, 1/2 on the line.
                        const auto v = Direction::cone(a);
                        double out = 0, in = 0;
                        for (std::size_t i = 0; i < n; ++i)
                            for (std::size_t j = 0; j < n; ++j) {
                                const double c = std::norm(s.raw(i, j));
                                if (c == 0) continue;
                                const int side = v.side(signed_frequency(i, n), signed_frequency(j, n));
                                const double w = side > 0 ? 1.0 : side == 0 ? 0.5 : 0.0;
                                in += w * w * c;
                                out += (1 - w) * (1 - w) * c;
                            }
                        const double dist_keep = std::sqrt(out), norm_pv = std::sqrt(in);
                        const auto label = cone_classify(a, r);
                        ++counts[static_cast<int>(label)];
                        if (label == ConeLabel::Keep) keep = std::max(keep, dist_keep);
                        if (label == ConeLabel::Kill) kill = std::max(kill, norm_pv);
                        if (label == ConeLabel::Transition && dist_keep > 1e-3 && norm_pv > 1e-3) ++intermediate;
                    }
                }
    return {keep <= 1e-10 && kill <= 1e-10 && intermediate >= 1,
            std::to_string(counts[0]) + " keep (max dist " + num(keep) + "), " + std::to_string(counts[1]) + " kill (max norm " +
                num(kill) + "), " + std::to_string(intermediate) + " intermediate transitions"};
}

Outcome mother_envelopes() {
    bool ok = true;
    double residual = 0;
    for (std::size_t n : {64u, 256u, 1024u}) {
        const auto m = build_mothers(n);
        ok = ok && m.report.phi1_envelope && m.report.phi2_positive && m.report.phi2_bound;
        residual = std::max(residual, m.report.truncation_residual);
    }
    return {ok && residual < 1e-14, "envelopes " + std::string(ok ? "hold" : "violated") + ", truncation residual " + num(residual)};
}

Outcome psd() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 1e300;
    for (int t = 0; t < 100; ++t) {
        auto f = test::random_field(64, 5000 + t);
        f *= 1.0 / l2_norm(f);
        const double lambda[2] = {std::exp2(u(rng)), std::exp2(u(rng))};
        const double y[2] = {u(rng), u(rng)};
        worst = std::min(worst, inner_product(plane_synthesis(f, 1, lambda, y), f).real());
    }
    return {worst >= -1e-12, "min <C f, f> / ||f||^2 = " + num(worst)};
}

Outcome psi_identity() {
    const auto psi = cross_correlation_psi();
    double err = 0;
    for (std::size_t i = 0; i < psi.spectrum.size(); ++i) {
        const double eta = signed_frequency(i, psi.spectrum.size()) / psi.width;
        err = std::max(err, std::abs(psi.spectrum[i] - phi1_hat(eta) * phi2_hat(eta)));
    }
    return {err <= 1e-10, "sup error " + num(err)};
}

Outcome combinatorics() {
    std::mt19937_64 rng(31);
    int energy_bad = 0, tested = 0;
    while (tested < 30) {
        const auto s = test::random_collection(rng, 10);
        if (test::maximal_count(s) > 6) continue;
        ++tested;
        const double e = energy(s), b = reference::energy(s);
        energy_bad += std::abs(e - b) > 1e-12 * std::max(1.0, b);
    }
    int chain_bad = 0;
    for (int t = 0; t < 30; ++t) {
        const auto s = test::random_collection(rng, 12);
        const auto chain = scale_chain(s, 5);
        chain_bad += !verify_chain(s, chain) || slope_levels(s).size() > 8;
        for (std::size_t v = 1; v < chain.levels.size(); ++v)
            chain_bad += brute_force_min_cuts(s, chain.levels[v - 1], static_cast<int>(v)) != chain.levels[v].size();
    }
    int audit_bad = 0;
    for (int t = 0; t < 100; ++t) {
        const auto s = test::random_collection(rng, 20);
        audit_bad += !audit_decomposition(charge_decompose(s, 6), s).ok();
    }
    return {energy_bad == 0 && chain_bad == 0 && audit_bad == 0,
            "energy mismatches " + std::to_string(energy_bad) + "/30, chain mismatches " + std::to_string(chain_bad) +
                ", failed audits " + std::to_string(audit_bad) + "/100"};
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    int failed = 0;
    const auto report = [&](int id, const char* title, const Outcome& o) {
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
        failed += !o.pass;
    };
    const auto timed = [](const std::function<Report()>& fn, double& secs) {
        const auto t0 = std::chrono::steady_clock::now();
        auto r = fn();
        secs = seconds_since(t0);
        return r;
    };

    report(1, "multiplier algebra", multiplier_algebra());
    report(2, "cone trichotomy", cone_trichotomy());
    report(3, "mother envelopes", mother_envelopes());

    ExperimentConfig rc;
    rc.experiment = "reconstruction";
    double rsecs = 0;
    const auto recon = timed([&] { return run_experiment(rc); }, rsecs);
    {
        std::string extra;
        auto o = rows_pass(recon, "", extra);
        o.pass = o.pass && rsecs < 300;
        report(4, "reconstruction", {o.pass, o.detail + ", " + num(rsecs) + " s" + extra});
    }

    report(5, "positive semidefiniteness", psd());
    report(6, "psi identity", psi_identity());
    report(7, "combinatorics oracles", combinatorics());

    ExperimentConfig cc;
    cc.experiment = "carleson";
    const auto carleson = run_experiment(cc);
    {
        std::string extra;
        auto a = rows_pass(carleson, "certificate", extra);
        auto b = rows_pass(carleson, "jn_ratio", extra);
        auto c = rows_pass(carleson, "jn constant", extra);
        report(8, "John-Nirenberg", {a.pass && b.pass && c.pass, "certificates " + a.detail + ", ratio " + b.detail + extra});
        std::string extra9;
        auto j = rows_pass(carleson, "journe", extra9);
        report(9, "Journe", {j.pass, j.detail + extra9});
    }

    ExperimentConfig nc;
    nc.experiment = "norm-growth";
    double nsecs = 0;
    const auto growth = timed([&] { return run_experiment(nc); }, nsecs);
    {
        std::string extra;
        auto o = rows_pass(growth, "", extra);
        double ratio = 0;
        for (const auto& r : growth.rows)
            if (r.parameters.find("ratio=") != std::string::npos) ratio = r.value;
        report(10, "norm growth", {o.pass && nsecs < 1800, o.detail + ", N(12)/N(4) = " + num(ratio) + ", " + num(nsecs) + " s" + extra});
    }

    ExperimentConfig dc;
    dc.experiment = "decay";
    const auto decay = run_experiment(dc);
    {
        std::string extra;
        auto o = rows_pass(decay, "", extra);
        report(11, "decay suite", {o.pass, o.detail + extra});
    }

    {
        const bool same = csv(run_experiment(rc)) == csv(recon) && csv(run_experiment(cc)) == csv(carleson);
        ExperimentConfig small = nc;
        small.n = 64;
        small.trials = 4;
        const bool same_growth = csv(run_experiment(small)) == csv(run_experiment(small));
        report(12, "reproducibility", {same && same_growth, same && same_growth ? "byte-identical CSV on re-run" : "CSV differs on re-run"});
    }
    return failed == 0 ? 0 : 1;
}
