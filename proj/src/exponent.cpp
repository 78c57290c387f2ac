#include "relayplan/exponent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relayplan {

namespace {

constexpr double kRhoMin = 1e-6;  // rho -> 0 makes n blow up; stay away
constexpr int kGridPoints = 256;
constexpr double kRhoTol = 1e-10;

void validate_budget(const ReliabilityBudget& budget) {
    if (budget.bits < 1)
        throw std::domain_error("bits must be >= 1");
    if (!(budget.delta_e > 0.0) || !(budget.delta_e < 1.0))
        throw std::domain_error("delta_e must lie in (0,1)");
}

double codelength_at(double snr, double b_nats, double log_delta, double rho) {
    return (rho * b_nats - log_delta) / (rho * std::log1p(snr / (1.0 + rho)));
}

}  // namespace

double random_coding_exponent(double snr, double rate, double rho) {
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw std::domain_error("snr must be positive");
    if (rate < 0.0 || !std::isfinite(rate))
        throw std::domain_error("rate must be nonnegative");
    if (rho < 0.0 || rho > 1.0)
        throw std::domain_error("rho must lie in [0,1]");
    return rho * std::log1p(snr / (1.0 + rho)) - rho * rate;
}

DelayBound delay_bound(double snr, const ReliabilityBudget& budget) {
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw std::domain_error("snr must be positive");
    validate_budget(budget);

    const double b_nats = budget.bits * std::numbers::ln2;
    const double log_delta = std::log(budget.delta_e);

    double best_rho = 1.0;
    double best_n = std::numeric_limits<double>::infinity();
    const auto consider = [&](double rho) {
        const double n = codelength_at(snr, b_nats, log_delta, rho);
        if (n < best_n) {
            best_n = n;
            best_rho = rho;
        }
    };

    // Coarse grid over [kRhoMin, 1]; the lerp form lands on 1.0 exactly.
    int best_idx = 0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double t = static_cast<double>(i) / (kGridPoints - 1);
        const double rho = kRhoMin * (1.0 - t) + 1.0 * t;
        const double saved = best_n;
        consider(rho);
        if (best_n < saved) best_idx = i;
    }

    // Golden-section refinement on the interval bracketing the best
    // grid point.  Every evaluation competes against the running best,
    // so a multimodal n(rho) can never return worse than the grid.
    const auto grid_rho = [](int i) {
        const double t = static_cast<double>(i) / (kGridPoints - 1);
        return kRhoMin * (1.0 - t) + 1.0 * t;
    };
    double a = grid_rho(best_idx > 0 ? best_idx - 1 : 0);
    double b = grid_rho(best_idx < kGridPoints - 1 ? best_idx + 1 : kGridPoints - 1);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = codelength_at(snr, b_nats, log_delta, c);
    double fd = codelength_at(snr, b_nats, log_delta, d);
    if (fc < best_n) { best_n = fc; best_rho = c; }
    if (fd < best_n) { best_n = fd; best_rho = d; }
    while (b - a > kRhoTol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = codelength_at(snr, b_nats, log_delta, c);
            if (fc < best_n) { best_n = fc; best_rho = c; }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = codelength_at(snr, b_nats, log_delta, d);
            if (fd < best_n) { best_n = fd; best_rho = d; }
        }
    }

    DelayBound out;
    out.rho = best_rho;
    out.codelength = best_n;  // == codelength_at(best_rho) by construction
    out.snr_used = snr;
    out.delta_used = budget.delta_e;
    return out;
}

double df_chain_delay(const Network& net, const std::vector<Segment>& segments,
                      const ReliabilityBudget& budget) {
    validate_budget(budget);
    if (segments.empty())
        throw std::invalid_argument("segment list is empty");
    const std::size_t hop_count = net.hops.size();
    std::size_t expect = 0;
    for (const Segment& seg : segments) {
        if (seg.start != expect)
            throw std::invalid_argument("segments must tile the chain contiguously");
        expect = seg.start + seg.af_count + 1;
    }
    if (expect != hop_count)
        throw std::invalid_argument("segments do not cover every hop");

    ReliabilityBudget per_seg = budget;
    per_seg.delta_e = budget.delta_e / static_cast<double>(segments.size());
    double total = 0.0;
    for (const Segment& seg : segments)
        total += delay_bound(cascade_snr(net, seg).equiv_snr, per_seg).codelength;
    return total;
}

}  // namespace relayplan
