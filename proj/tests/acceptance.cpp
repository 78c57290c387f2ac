// Acceptance gate: one check per criterion, each printing a PASS/FAIL
// line.  Usage: acceptance <cli-binary> <fixtures-dir>
//
// The randomized checks use fixed seeds so a failure is reproducible.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relayplan/config.hpp"
#include "relayplan/exponent.hpp"
#include "relayplan/feedback.hpp"
#include "relayplan/planner.hpp"

namespace fs = std::filesystem;
using namespace relayplan;

namespace {

struct Context {
    std::string cli;
    fs::path fixtures;
    fs::path tmp;
};

using LogDist = std::uniform_real_distribution<double>;

LogDist log_uniform() { return LogDist(std::log(0.1), std::log(10.0)); }

Network random_chain(std::mt19937_64& rng, std::size_t hops) {
    auto u = log_uniform();
    Network net;
    for (std::size_t i = 0; i < hops; ++i)
        net.hops.push_back({std::exp(u(rng)), 1.0, std::exp(u(rng))});
    return net;
}

Network symmetric_chain(std::size_t hops, double power = 1.0) {
    Network net;
    net.hops.assign(hops, Hop{1.0, 1.0, power});
    return net;
}

std::string describe_assignment(const SchemePlan& plan) {
    std::string s;
    for (const RelayMode m : plan.assignment) s += (m == RelayMode::AF ? 'A' : 'D');
    return s.empty() ? std::string("-") : s;
}

// ---- criterion 1: optimize == brute-force oracle --------------------------

bool oracle_equivalence(const Context&, std::string& detail) {
    const ReliabilityBudget budget{1000, 1e-6};
    for (std::size_t relays = 1; relays <= 12; ++relays) {
        std::mt19937_64 rng(20260819u + relays);
        for (int trial = 0; trial < 100; ++trial) {
            const Network net = random_chain(rng, relays + 1);
            const SchemePlan fast = optimize(net, budget);
            const SchemePlan slow = brute_force_oracle(net, budget);
            if (fast.assignment != slow.assignment) {
                std::ostringstream os;
                os << "H=" << relays << " trial=" << trial << ": plan "
                   << describe_assignment(fast) << " vs oracle " << describe_assignment(slow);
                detail = os.str();
                return false;
            }
            if (std::abs(fast.total_delay - slow.total_delay) > 1e-9 * slow.total_delay) {
                std::ostringstream os;
                os << "H=" << relays << " trial=" << trial << ": delay " << fast.total_delay
                   << " vs oracle " << slow.total_delay;
                detail = os.str();
                return false;
            }
        }
    }
    detail = "1200 random networks, H in 1..12";
    return true;
}

// ---- criterion 2: high-snr AF/DF delay ratio -------------------------------

bool high_snr_ratio_limit(const Context&, std::string& detail) {
    const Network net = symmetric_chain(5);  // 4 relays
    const ReliabilityBudget budget{1000, 1e-6};
    double prev_err = std::numeric_limits<double>::infinity();
    double last_ratio = 0.0;
    for (const double s : {1e2, 1e4, 1e6, 1e8}) {
        last_ratio = high_snr_ratio(net, budget, 2, s);
        const double err = std::abs(last_ratio - 0.5);
        if (!(err < prev_err)) {
            std::ostringstream os;
            os << "no monotone approach at s=" << s << " (|r-1/2|=" << err << ")";
            detail = os.str();
            return false;
        }
        prev_err = err;
    }
    std::ostringstream os;
    os << "ratio(1e8)=" << last_ratio;
    detail = os.str();
    return prev_err <= 0.025;
}

// ---- criterion 3: all-AF at high snr -------------------------------------

bool high_snr_all_af(const Context&, std::string& detail) {
    const ReliabilityBudget budget{1000, 1e-6};
    for (const double s : {1e6, 1e8}) {
        const SchemePlan plan = optimize(scale_powers(symmetric_chain(5), s), budget);
        if (plan.n_df != 1) {
            std::ostringstream os;
            os << "s=" << s << " returned N_DF=" << plan.n_df;
            detail = os.str();
            return false;
        }
    }
    detail = "N_DF=1 at s in {1e6, 1e8}";
    return true;
}

// ---- criterion 4: near-equal segments on symmetric chains -----------------

bool symmetric_near_equal(const Context&, std::string& detail) {
    const ReliabilityBudget budget{1000, 1e-6};
    for (std::size_t relays = 3; relays <= 10; ++relays) {
        for (const double p : {0.5, 1.0, 2.0, 5.0}) {
            const SchemePlan plan = optimize(symmetric_chain(relays + 1, p), budget);
            std::size_t lo = plan.segments[0].af_count, hi = lo;
            for (const Segment& s : plan.segments) {
                lo = std::min(lo, s.af_count);
                hi = std::max(hi, s.af_count);
            }
            if (hi - lo > 1) {
                std::ostringstream os;
                os << "H=" << relays << " P=" << p << ": AF counts spread " << (hi - lo);
                detail = os.str();
                return false;
            }
        }
    }
    detail = "H in 3..10, per-hop snr in {0.5,1,2,5}";
    return true;
}

// ---- criterion 5: single AF/DF crossing over a gain sweep ------------------

bool single_crossing(const Context&, std::string& detail) {
    const ReliabilityBudget budget{1000, 1e-6};
    int sign_changes = 0;
    bool df_first = false, af_last = false;
    for (int i = 0; i < 64; ++i) {
        const double t = i / 63.0;
        const double g = std::exp(std::log(0.1) * (1.0 - t) + std::log(10.0) * t);
        Network net;
        net.hops.assign(2, Hop{g, 1.0, 1.0});
        const double d_af = evaluate_assignment(net, {RelayMode::AF}, budget).total_delay;
        const double d_df = evaluate_assignment(net, {RelayMode::DF}, budget).total_delay;
        const bool af_better = d_af < d_df;
        if (i == 0)
            df_first = !af_better;
        else if (af_better != af_last)
            ++sign_changes;
        af_last = af_better;
    }
    std::ostringstream os;
    os << sign_changes << " crossing(s), DF low end: " << (df_first ? "yes" : "no")
       << ", AF high end: " << (af_last ? "yes" : "no");
    detail = os.str();
    return sign_changes == 1 && df_first && af_last;
}

// ---- criterion 6: threshold baseline strictly suboptimal -------------------

bool baseline_gap(const Context& ctx, std::string& detail) {
    const NetworkConfig cfg = parse_config((ctx.fixtures / "four_hop_baseline_gap.json").string());
    const ReliabilityBudget budget = cfg.budget();
    const double best = optimize(cfg.forward, budget).total_delay;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const double t = i / 99.0;
        const double thr = std::exp(std::log(1e-2) * (1.0 - t) + std::log(1e4) * t);
        const double d = baseline(cfg.forward, budget, thr).total_delay;
        min_gap = std::min(min_gap, (d - best) / best);
        if (!(d > best)) {
            std::ostringstream os;
            os << "threshold " << thr << " reaches the optimum";
            detail = os.str();
            return false;
        }
    }
    std::ostringstream os;
    os << "min gap over 100 thresholds: " << 100.0 * min_gap << "%";
    detail = os.str();
    return true;
}

// ---- criterion 7: feedback noise consistency --------------------------------

bool feedback_consistency(const Context&, std::string& detail) {
    std::mt19937_64 rng(20260819u);
    auto u = log_uniform();
    const double delta_e = 1e-6;
    for (int trial = 0; trial < 100; ++trial) {
        Network fwd, rev;
        for (int k = 0; k < 2; ++k) {
            fwd.hops.push_back({std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
            rev.hops.push_back({std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
        }
        const FeedbackSpec spec{fwd, rev};

        // Single-relay closed forms.
        const auto closed = [](const Network& chain) {
            const double beta = amplification_gain(chain.hops[0], chain.hops[1]);
            const double hs = chain.hops[0].gain, hr = chain.hops[1].gain;
            return chain.hops[0].noise_var / (hs * hs) +
                   chain.hops[1].noise_var / (hs * hr * beta * hs * hr * beta);
        };
        const double sf = equivalent_noise_forward(spec);
        const double sfb = equivalent_noise_feedback(spec);
        if (std::abs(sf - closed(fwd)) > 1e-12 * closed(fwd) ||
            std::abs(sfb - closed(rev)) > 1e-12 * closed(rev)) {
            detail = "general formula deviates from the single-relay closed form";
            return false;
        }

        const FeedbackExponent fb = feedback_exponent(spec, delta_e);
        const double e_manual = 2.0 * fwd.hops[0].power / fb.sigma_f_sq +
                                2.0 * rev.hops[0].power / fb.sigma_fb_sq;
        const double n_manual = std::log(1.0 / delta_e) / fb.exponent;
        if (fb.exponent != e_manual || fb.codelength != n_manual) {
            detail = "exponent/codelength identities not exact";
            return false;
        }
    }
    detail = "100 random draws, closed form within 1e-12, identities exact";
    return true;
}

// ---- criterion 8: feedback beats binary signaling ---------------------------

bool feedback_beats_binary(const Context&, std::string& detail) {
    std::mt19937_64 rng(20260820u);
    auto u = log_uniform();
    const double delta_e = 1e-5;
    int accepted = 0, attempts = 0;
    while (accepted < 100 && ++attempts < 10000) {
        const double p_end = std::exp(u(rng));
        Network fwd, rev;
        fwd.hops.push_back({std::exp(u(rng)), std::exp(u(rng)), p_end});
        fwd.hops.push_back({std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
        rev.hops.push_back({std::exp(u(rng)), std::exp(u(rng)), p_end});
        rev.hops.push_back({std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
        const FeedbackSpec spec{fwd, rev};
        if (equivalent_noise_forward(spec) < equivalent_noise_feedback(spec)) continue;
        ++accepted;
        if (!(feedback_exponent(spec, delta_e).codelength <
              no_feedback_binary_delay(spec, delta_e))) {
            detail = "a filtered draw had n_FB >= binary delay";
            return false;
        }
    }
    std::ostringstream os;
    os << accepted << " filtered draws in " << attempts << " attempts";
    detail = os.str();
    return accepted == 100;
}

// ---- criterion 9: cascade snr algebra ---------------------------------------

bool channel_algebra(const Context&, std::string& detail) {
    std::mt19937_64 rng(20260821u);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t hops = 3 + static_cast<std::size_t>(rng() % 7);  // 3..9
        const Network net = random_chain(rng, hops);
        const std::size_t p = rng() % (hops - 2);
        const std::size_t k = 1 + static_cast<std::size_t>(rng() % (hops - 2 - p));

        const double snr = cascade_snr(net, p, k).equiv_snr;
        const double harmonic = cascade_snr_high_snr(net, p, k);
        double bottleneck = std::numeric_limits<double>::infinity();
        for (std::size_t j = p; j <= p + k; ++j)
            bottleneck = std::min(bottleneck, per_hop_snr(net.hops[j]));

        if (!(snr <= bottleneck * (1.0 + 1e-12))) {
            detail = "snr exceeded the bottleneck hop";
            return false;
        }
        if (!(snr <= harmonic * (1.0 + 1e-12))) {
            detail = "snr exceeded the harmonic limit";
            return false;
        }
        if (!(cascade_snr(net, p, k + 1).equiv_snr < snr)) {
            detail = "snr did not degrade with an extra AF hop";
            return false;
        }
        const Network scaled = scale_powers(net, 1e6);
        const double snr_s = cascade_snr(scaled, p, k).equiv_snr;
        const double harmonic_s = cascade_snr_high_snr(scaled, p, k);
        if (!((harmonic_s - snr_s) / harmonic_s <= 0.01)) {
            detail = "gap to harmonic limit above 1% at s=1e6";
            return false;
        }
    }
    detail = "100 random segments";
    return true;
}

// ---- criterion 10: CLI determinism, round-trip, recomputation ---------------

int run_cli(const std::string& command) {
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool cli_determinism(const Context& ctx, std::string& detail) {
    fs::create_directories(ctx.tmp);
    const std::string quiet = " > /dev/null";

    // Byte-identical CSV across repeated runs.
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"plan_mixed", "plan --config \"" + (ctx.fixtures / "four_hop_mixed.json").string() + "\""},
        {"plan_sym", "plan --config \"" + (ctx.fixtures / "two_hop_symmetric.json").string() + "\""},
        {"sweep_sym", "sweep --config \"" + (ctx.fixtures / "two_hop_symmetric.json").string() +
                          "\" --parameter gain-scale --from 0.1 --to 10 --points 64 --log"},
        {"sweep_mixed", "sweep --config \"" + (ctx.fixtures / "four_hop_mixed.json").string() +
                            "\" --parameter power-scale --from 1 --to 1e6 --points 20 --log"},
    };
    for (const auto& [name, args] : runs) {
        const fs::path out1 = ctx.tmp / (name + "_1.csv");
        const fs::path out2 = ctx.tmp / (name + "_2.csv");
        for (const fs::path& out : {out1, out2}) {
            const int rc = run_cli("\"" + ctx.cli + "\" " + args + " --csv \"" + out.string() +
                                   "\"" + quiet);
            if (rc != 0) {
                detail = name + " exited with code " + std::to_string(rc);
                return false;
            }
        }
        if (slurp(out1) != slurp(out2) || slurp(out1).empty()) {
            detail = name + " CSV not byte-identical across runs";
            return false;
        }
    }

    // Round-trip idempotence on every committed fixture.
    std::size_t fixture_count = 0;
    for (const auto& entry : fs::directory_iterator(ctx.fixtures)) {
        if (entry.path().extension() != ".json") continue;
        ++fixture_count;
        const NetworkConfig cfg = parse_config(entry.path().string());
        const std::string once = serialize_config(cfg);
        const std::string twice = serialize_config(parse_config_text(once, "roundtrip"));
        if (once != twice) {
            detail = "round-trip not idempotent for " + entry.path().filename().string();
            return false;
        }
    }
    if (fixture_count < 5) {
        detail = "expected the committed fixtures, found " + std::to_string(fixture_count);
        return false;
    }

    // Reported CSV delays match a library recomputation.
    const NetworkConfig cfg = parse_config((ctx.fixtures / "four_hop_mixed.json").string());
    const SchemePlan plan = optimize(cfg.forward, cfg.budget());
    std::ifstream csv(ctx.tmp / "plan_mixed_1.csv");
    std::string line;
    std::getline(csv, line);  // header
    std::size_t row = 0;
    while (std::getline(csv, line)) {
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) {
            detail = "unexpected CSV row shape";
            return false;
        }
        const double snr = std::stod(fields[3]);
        const double n = std::stod(fields[5]);
        if (row >= plan.per_segment.size() ||
            std::abs(snr - plan.per_segment[row].snr_used) > 1e-9 * plan.per_segment[row].snr_used ||
            std::abs(n - plan.per_segment[row].codelength) >
                1e-9 * plan.per_segment[row].codelength) {
            detail = "CSV row " + std::to_string(row) + " deviates from recomputation";
            return false;
        }
        ++row;
    }
    if (row != plan.per_segment.size()) {
        detail = "CSV row count mismatch";
        return false;
    }

    std::ostringstream os;
    os << "4 CSV runs stable, " << fixture_count << " fixtures round-trip, recompute within 1e-9";
    detail = os.str();
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <cli-binary> <fixtures-dir>\n");
        return 2;
    }
    Context ctx;
    ctx.cli = argv[1];
    ctx.fixtures = argv[2];
    ctx.tmp = fs::temp_directory_path() / "relayplan_acceptance";

    struct Criterion {
        const char* name;
        std::function<bool(const Context&, std::string&)> check;
    };
    const std::vector<Criterion> criteria = {
        {"oracle equivalence on randomized networks", oracle_equivalence},
        {"high-snr AF/DF delay ratio reaches 1/N_DF", high_snr_ratio_limit},
        {"all-AF plan at high snr", high_snr_all_af},
        {"near-equal segments on symmetric chains", symmetric_near_equal},
        {"single AF/DF crossing over a gain sweep", single_crossing},
        {"threshold baseline strictly suboptimal on the gap fixture", baseline_gap},
        {"single-relay closed form matches general feedback noise", feedback_consistency},
        {"feedback beats binary signaling under its hypotheses", feedback_beats_binary},
        {"cascade snr algebra", channel_algebra},
        {"CLI determinism, round-trip, and recomputation", cli_determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].check(ctx, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %zu: %s (%.2fs%s%s)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, secs, detail.empty() ? "" : "; ",
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }

    if (failures == 0) {
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("%d acceptance criterion(s) failed\n", failures);
    return 1;
}
