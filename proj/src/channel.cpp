#include "relayplan/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relayplan {

namespace {

void validate_hop(const Hop& hop) {
    if (hop.gain == 0.0 || !std::isfinite(hop.gain))
        throw std::domain_error("hop gain must be finite and nonzero");
    if (!(hop.noise_var > 0.0) || !std::isfinite(hop.noise_var))
        throw std::domain_error("hop noise_var must be positive and finite");
    if (!(hop.power > 0.0) || !std::isfinite(hop.power))
        throw std::domain_error("hop power must be positive and finite");
}

void validate_segment(const Network& net, std::size_t start, std::size_t af_count) {
    if (net.hops.empty())
        throw std::invalid_argument("network has no hops");
    // Segment spans hops start .. start+af_count inclusive.
    if (start >= net.hops.size() || af_count > net.hops.size() - 1 - start)
        throw std::out_of_range("segment exceeds network: start=" + std::to_string(start) +
                                " af_count=" + std::to_string(af_count));
}

// Hop counts above this use the log-domain recurrence; long cascades
// overflow the running noise product otherwise.
constexpr std::size_t kLogDomainHops = 30;

double log_add_exp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -INFINITY) return a;
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

double per_hop_snr(const Hop& hop) {
    validate_hop(hop);
    return hop.gain * hop.gain * hop.power / hop.noise_var;
}

double amplification_gain(const Hop& incoming, const Hop& outgoing) {
    validate_hop(incoming);
    validate_hop(outgoing);
    const double received = incoming.gain * incoming.gain * incoming.power + incoming.noise_var;
    return std::sqrt(outgoing.power / received);
}

CascadeResult cascade_snr(const Network& net, std::size_t start, std::size_t af_count) {
    validate_segment(net, start, af_count);
    for (std::size_t k = start; k <= start + af_count; ++k) validate_hop(net.hops[k]);

    const std::size_t hop_count = af_count + 1;
    CascadeResult res;

    if (hop_count <= kLogDomainHops) {
        double h_e = net.hops[start].gain;
        double var = net.hops[start].noise_var;
        for (std::size_t j = start + 1; j <= start + af_count; ++j) {
            const double beta = amplification_gain(net.hops[j - 1], net.hops[j]);
            const double a = beta * net.hops[j].gain;
            h_e *= a;
            var = a * a * var + net.hops[j].noise_var;
        }
        res.equiv_gain = h_e;
        res.equiv_noise_var = var;
        res.equiv_snr = h_e * h_e * net.hops[start].power / var;
        return res;
    }

    // Log-domain recurrence: track log(h_e^2) and log(var) so long
    // cascades neither overflow nor flush to zero.
    double log_he2 = std::log(net.hops[start].gain * net.hops[start].gain);
    double log_var = std::log(net.hops[start].noise_var);
    double sign = net.hops[start].gain < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = start + 1; j <= start + af_count; ++j) {
        const double beta = amplification_gain(net.hops[j - 1], net.hops[j]);
        const double a2 = beta * beta * net.hops[j].gain * net.hops[j].gain;
        log_he2 += std::log(a2);
        log_var = log_add_exp(std::log(a2) + log_var, std::log(net.hops[j].noise_var));
        if (net.hops[j].gain < 0.0) sign = -sign;
    }
    res.equiv_gain = sign * std::exp(0.5 * log_he2);
    res.equiv_noise_var = std::exp(log_var);
    res.equiv_snr = std::exp(log_he2 + std::log(net.hops[start].power) - log_var);
    return res;
}

CascadeResult cascade_snr(const Network& net, const Segment& seg) {
    return cascade_snr(net, seg.start, seg.af_count);
}

double cascade_snr_high_snr(const Network& net, std::size_t start, std::size_t af_count) {
    validate_segment(net, start, af_count);
    double inv_sum = 0.0;
    for (std::size_t k = start; k <= start + af_count; ++k)
        inv_sum += 1.0 / per_hop_snr(net.hops[k]);
    return 1.0 / inv_sum;
}

Network scale_powers(const Network& net, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::domain_error("power scale factor must be positive and finite");
    Network scaled = net;
    for (Hop& hop : scaled.hops) hop.power *= factor;
    return scaled;
}

}  // namespace relayplan
