#include "relayplan/feedback.hpp"

#include <cmath>
#include <stdexcept>

namespace relayplan {

namespace {

void validate_spec(const FeedbackSpec& fs) {
    if (fs.forward.hops.empty())
        throw std::invalid_argument("feedback spec has no forward hops");
    if (fs.reverse.hops.size() != fs.forward.hops.size())
        throw std::invalid_argument("reverse chain length must match forward chain");
}

// Noise of the whole AF cascade referred to the transmitter: with
// equivalent channel y = h_e x + z, this is Var(z)/h_e^2 = P_tx / snr.
double referred_noise(const Network& chain) {
    const CascadeResult cas = cascade_snr(chain, 0, chain.relay_count());
    const double s2 = chain.hops[0].power / cas.equiv_snr;
    if (!(s2 > 0.0) || !std::isfinite(s2))
        throw std::domain_error("degenerate chain: equivalent gain vanished");
    return s2;
}

void validate_delta(double delta_e) {
    if (!(delta_e > 0.0) || !(delta_e < 1.0))
        throw std::domain_error("delta_e must lie in (0,1)");
}

double inverse_square_gain_sum(const Network& chain) {
    double sum = 0.0;
    for (const Hop& hop : chain.hops) sum += 1.0 / (hop.gain * hop.gain);
    return sum;
}

}  // namespace

double equivalent_noise_forward(const FeedbackSpec& fs) {
    validate_spec(fs);
    return referred_noise(fs.forward);
}

double equivalent_noise_feedback(const FeedbackSpec& fs) {
    validate_spec(fs);
    return referred_noise(fs.reverse);
}

double feedback_exponent_value(double p_source, double sigma_f_sq,
                               double p_feedback, double sigma_fb_sq) {
    if (!(p_source > 0.0) || !(p_feedback > 0.0))
        throw std::domain_error("powers must be positive");
    if (!(sigma_f_sq > 0.0) || !(sigma_fb_sq > 0.0))
        throw std::domain_error("equivalent noise variances must be positive");
    return 2.0 * p_source / sigma_f_sq + 2.0 * p_feedback / sigma_fb_sq;
}

FeedbackExponent feedback_exponent(const FeedbackSpec& fs, double delta_e) {
    validate_delta(delta_e);
    FeedbackExponent out;
    out.sigma_f_sq = equivalent_noise_forward(fs);
    out.sigma_fb_sq = equivalent_noise_feedback(fs);
    out.exponent = feedback_exponent_value(fs.forward.hops[0].power, out.sigma_f_sq,
                                           fs.reverse.hops[0].power, out.sigma_fb_sq);
    out.codelength = std::log(1.0 / delta_e) / out.exponent;
    return out;
}

double no_feedback_binary_delay(const FeedbackSpec& fs, double delta_e) {
    validate_delta(delta_e);
    const double sigma_f_sq = equivalent_noise_forward(fs);
    return 2.0 * sigma_f_sq / fs.forward.hops[0].power * std::log(1.0 / delta_e);
}

bool relay_beats_p2p(const FeedbackSpec& fs, const PointToPointRef& p2p) {
    const double fwd_ref = p2p.noise_var_fwd / (p2p.gain_fwd * p2p.gain_fwd);
    const double rev_ref = p2p.noise_var_rev / (p2p.gain_rev * p2p.gain_rev);
    return equivalent_noise_forward(fs) < fwd_ref &&
           equivalent_noise_feedback(fs) < rev_ref;
}

bool relay_beats_p2p_high_snr(const FeedbackSpec& fs, const PointToPointRef& p2p) {
    validate_spec(fs);
    return inverse_square_gain_sum(fs.forward) < 1.0 / (p2p.gain_fwd * p2p.gain_fwd) &&
           inverse_square_gain_sum(fs.reverse) < 1.0 / (p2p.gain_rev * p2p.gain_rev);
}

}  // namespace relayplan
