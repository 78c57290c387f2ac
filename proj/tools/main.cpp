// relayplan: delay bounds and AF/DF planning for Gaussian relay chains.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relayplan/config.hpp"
#include "relayplan/exponent.hpp"
#include "relayplan/feedback.hpp"
#include "relayplan/planner.hpp"

namespace {

using namespace relayplan;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

const char* mode_name(RelayMode m) { return m == RelayMode::AF ? "AF" : "DF"; }

struct OutputTargets {
    std::ostream& human;
    std::ostream* csv = nullptr;  // non-null when a CSV sink was requested
};

// Scoped CSV sink: file when --csv <path> given, else none.
class CsvFile {
  public:
    explicit CsvFile(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ParseError(path + ": cannot open for writing");
            out_ = &file_;
        }
    }
    std::ostream* get() { return out_; }

  private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

void print_delay_line(std::ostream& os, const std::string& label, double channel_uses,
                      double symbol_rate) {
    os << label << ": " << fmt(channel_uses) << " channel uses";
    if (symbol_rate > 0.0)
        os << " (= " << fmt(channel_uses / symbol_rate) << " s at " << fmt(symbol_rate) << " Hz)";
    os << "\n";
}

void print_plan_report(std::ostream& os, const Network& net, const ReliabilityBudget& budget,
                       const SchemePlan& plan, double symbol_rate) {
    const std::size_t relays = net.relay_count();
    os << "chain: " << relays << " relay(s), " << net.hops.size() << " hop(s), B=" << budget.bits
       << " bits, delta_e=" << fmt(budget.delta_e) << "\n";
    os << "source: DF (trivially)\n";
    for (std::size_t r = 1; r <= relays; ++r)
        os << "relay " << r << ": " << mode_name(plan.assignment[r - 1]) << "\n";
    os << "segments (per-segment delta = " << fmt(budget.delta_e / static_cast<double>(plan.n_df))
       << ", N_DF = " << plan.n_df << "):\n";
    for (std::size_t i = 0; i < plan.segments.size(); ++i) {
        const Segment& s = plan.segments[i];
        const DelayBound& b = plan.per_segment[i];
        os << "  [" << i << "] start=" << s.start << " af=" << s.af_count
           << " snr=" << fmt(b.snr_used) << " rho=" << fmt(b.rho)
           << " n=" << fmt(b.codelength) << "\n";
    }
    print_delay_line(os, "total delay", plan.total_delay, symbol_rate);
}

void write_plan_csv(std::ostream& os, const SchemePlan& plan) {
    os << "segment,start,af_count,equiv_snr,rho,codelength\n";
    for (std::size_t i = 0; i < plan.segments.size(); ++i) {
        const Segment& s = plan.segments[i];
        const DelayBound& b = plan.per_segment[i];
        os << i << "," << s.start << "," << s.af_count << "," << fmt(b.snr_used) << ","
           << fmt(b.rho) << "," << fmt(b.codelength) << "\n";
    }
}

bool plans_agree(const SchemePlan& a, const SchemePlan& b) {
    return a.assignment == b.assignment && a.total_delay == b.total_delay;
}

int cmd_plan(const std::string& config_path, bool with_oracle,
             std::optional<double> baseline_threshold, const std::string& csv_path,
             double symbol_rate) {
    const NetworkConfig cfg = parse_config(config_path);
    const ReliabilityBudget budget = cfg.budget();
    const SchemePlan plan = optimize(cfg.forward, budget);

    print_plan_report(std::cout, cfg.forward, budget, plan, symbol_rate);

    if (with_oracle) {
        const SchemePlan oracle = brute_force_oracle(cfg.forward, budget);
        if (plans_agree(plan, oracle)) {
            std::cout << "oracle agrees (assignment and delay identical)\n";
        } else {
            std::cerr << "oracle disagrees: oracle delay " << fmt(oracle.total_delay)
                      << " vs plan delay " << fmt(plan.total_delay) << "\n";
            return 2;
        }
    }

    if (baseline_threshold.has_value()) {
        const SchemePlan base = baseline(cfg.forward, budget, *baseline_threshold);
        std::cout << "baseline (threshold=" << fmt(*baseline_threshold) << "):";
        if (base.assignment.empty()) std::cout << " no relays";
        for (std::size_t r = 1; r <= base.assignment.size(); ++r)
            std::cout << " relay" << r << "=" << mode_name(base.assignment[r - 1]);
        std::cout << "\n";
        print_delay_line(std::cout, "baseline delay", base.total_delay, symbol_rate);
        if (base.assignment == plan.assignment) {
            std::cout << "baseline matches the optimal plan\n";
        } else {
            const double excess = (base.total_delay - plan.total_delay) / plan.total_delay;
            std::cout << "optimal plan beats baseline by " << fmt(100.0 * excess) << "%\n";
        }
    }

    CsvFile csv(csv_path);
    if (csv.get()) write_plan_csv(*csv.get(), plan);
    return 0;
}

int cmd_oracle(const std::string& config_path, const std::string& csv_path, double symbol_rate) {
    const NetworkConfig cfg = parse_config(config_path);
    const ReliabilityBudget budget = cfg.budget();
    const SchemePlan oracle = brute_force_oracle(cfg.forward, budget);

    print_plan_report(std::cout, cfg.forward, budget, oracle, symbol_rate);
    const SchemePlan plan = optimize(cfg.forward, budget);
    if (plans_agree(plan, oracle)) {
        std::cout << "dynamic program agrees with the oracle\n";
    } else {
        std::cerr << "dynamic program disagrees: " << fmt(plan.total_delay) << " vs oracle "
                  << fmt(oracle.total_delay) << "\n";
        return 2;
    }
    CsvFile csv(csv_path);
    if (csv.get()) write_plan_csv(*csv.get(), oracle);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& parameter, double from,
              double to, std::size_t points, bool log_spaced, const std::string& csv_path) {
    const NetworkConfig cfg = parse_config(config_path);
    if (points < 1) throw ParseError("--points must be at least 1");
    if (log_spaced && (!(from > 0.0) || !(to > 0.0)))
        throw ParseError("--log needs positive --from/--to");

    std::vector<double> grid;
    grid.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        grid.push_back(log_spaced ? std::exp(std::log(from) * (1.0 - t) + std::log(to) * t)
                                  : from * (1.0 - t) + to * t);
    }

    CsvFile csv(csv_path);
    std::ostream& os = csv.get() ? *csv.get() : std::cout;
    os << "value,delay_all_af,delay_all_df,delay_optimal,n_df_optimal,ratio_af_df\n";

    const std::size_t relays = cfg.forward.relay_count();
    for (const double v : grid) {
        Network net = cfg.forward;
        ReliabilityBudget budget = cfg.budget();
        double value = v;
        if (parameter == "gain-scale") {
            if (!(v > 0.0)) throw std::domain_error("gain-scale must be positive");
            for (Hop& hop : net.hops) hop.gain *= v;
        } else if (parameter == "power-scale") {
            net = scale_powers(net, v);
        } else if (parameter == "delta_e") {
            budget.delta_e = v;
        } else {  // bits; the option validator restricts the set
            const long long b = std::llround(v);
            if (b < 1) throw std::domain_error("bits must be at least 1");
            budget.bits = static_cast<int>(b);
            value = static_cast<double>(b);
        }

        const double d_af =
            evaluate_assignment(net, std::vector<RelayMode>(relays, RelayMode::AF), budget)
                .total_delay;
        const double d_df =
            evaluate_assignment(net, std::vector<RelayMode>(relays, RelayMode::DF), budget)
                .total_delay;
        const SchemePlan best = optimize(net, budget);
        os << fmt(value) << "," << fmt(d_af) << "," << fmt(d_df) << ","
           << fmt(best.total_delay) << "," << best.n_df << "," << fmt(d_af / d_df) << "\n";
    }
    return 0;
}

int cmd_feedback(const std::string& config_path, const std::vector<double>& p2p_fwd,
                 const std::vector<double>& p2p_rev, const std::string& csv_path,
                 double symbol_rate) {
    const NetworkConfig cfg = parse_config(config_path);
    const FeedbackSpec fs = cfg.feedback_spec();
    const FeedbackExponent fb = feedback_exponent(fs, cfg.delta_e);
    const double n_plain = no_feedback_binary_delay(fs, cfg.delta_e);

    std::cout << "sigma_f_sq: " << fmt(fb.sigma_f_sq) << "\n";
    std::cout << "sigma_fb_sq: " << fmt(fb.sigma_fb_sq) << "\n";
    std::cout << "E_FB: " << fmt(fb.exponent) << "\n";
    print_delay_line(std::cout, "feedback delay n_FB", fb.codelength, symbol_rate);
    print_delay_line(std::cout, "no-feedback binary delay", n_plain, symbol_rate);
    std::cout << "feedback delay < no-feedback delay: "
              << (fb.codelength < n_plain ? "yes" : "no") << "\n";

    if (!p2p_fwd.empty() || !p2p_rev.empty()) {
        if (p2p_fwd.size() != 2 || p2p_rev.size() != 2)
            throw ParseError("--p2p-forward and --p2p-reverse each need GAIN NOISE_VAR");
        PointToPointRef ref{p2p_fwd[0], p2p_fwd[1], p2p_rev[0], p2p_rev[1]};
        std::cout << "relay chain beats point-to-point: "
                  << (relay_beats_p2p(fs, ref) ? "yes" : "no") << "\n";
        std::cout << "high-SNR gains-only condition: "
                  << (relay_beats_p2p_high_snr(fs, ref) ? "yes" : "no") << "\n";
    }

    CsvFile csv(csv_path);
    if (csv.get()) {
        *csv.get() << "sigma_f_sq,sigma_fb_sq,exponent,n_fb,n_no_feedback\n"
                   << fmt(fb.sigma_f_sq) << "," << fmt(fb.sigma_fb_sq) << ","
                   << fmt(fb.exponent) << "," << fmt(fb.codelength) << "," << fmt(n_plain)
                   << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reliability-constrained delay bounds and AF/DF planning for relay chains"};
    app.require_subcommand(1);

    std::string config_path;
    std::string csv_path;
    double symbol_rate = 0.0;

    auto add_common = [&](CLI::App* cmd, bool with_rate = true) {
        cmd->add_option("--config", config_path, "network description file (JSON)")
            ->required();
        cmd->add_option("--csv", csv_path, "write machine-readable CSV to this path");
        if (with_rate)
            cmd->add_option("--symbol-rate", symbol_rate,
                            "report delays also in seconds at this rate (Hz)")
                ->check(CLI::PositiveNumber);
    };

    bool with_oracle = false;
    double baseline_threshold = 0.0;
    CLI::App* plan_cmd = app.add_subcommand("plan", "optimal AF/DF assignment and delay bound");
    add_common(plan_cmd);
    plan_cmd->add_flag("--oracle", with_oracle, "cross-check against exhaustive enumeration");
    CLI::Option* thr_opt = plan_cmd->add_option("--baseline-threshold", baseline_threshold,
                                                "compare against the threshold policy");

    std::string parameter;
    double from = 0.0, to = 0.0;
    std::size_t points = 25;
    bool log_spaced = false;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter, emit CSV");
    add_common(sweep_cmd, false);
    sweep_cmd->add_option("--parameter", parameter, "one of: gain-scale, power-scale, delta_e, bits")
        ->required()
        ->check(CLI::IsMember({"gain-scale", "power-scale", "delta_e", "bits"}));
    sweep_cmd->add_option("--from", from, "first grid value")->required();
    sweep_cmd->add_option("--to", to, "last grid value")->required();
    sweep_cmd->add_option("--points", points, "grid size (default 25)");
    sweep_cmd->add_flag("--log", log_spaced, "log-spaced grid");

    std::vector<double> p2p_fwd, p2p_rev;
    CLI::App* fb_cmd = app.add_subcommand("feedback", "noisy-feedback exponent and delays");
    add_common(fb_cmd);
    fb_cmd->add_option("--p2p-forward", p2p_fwd,
                       "direct-link reference GAIN NOISE_VAR (forward)")
        ->expected(2);
    fb_cmd->add_option("--p2p-reverse", p2p_rev,
                       "direct-link reference GAIN NOISE_VAR (feedback)")
        ->expected(2);

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive plan (H <= 20)");
    add_common(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (plan_cmd->parsed()) {
            std::optional<double> thr;
            if (thr_opt->count() > 0) thr = baseline_threshold;
            return cmd_plan(config_path, with_oracle, thr, csv_path, symbol_rate);
        }
        if (sweep_cmd->parsed())
            return cmd_sweep(config_path, parameter, from, to, points, log_spaced, csv_path);
        if (fb_cmd->parsed()) return cmd_feedback(config_path, p2p_fwd, p2p_rev, csv_path, symbol_rate);
        if (oracle_cmd->parsed()) return cmd_oracle(config_path, csv_path, symbol_rate);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
