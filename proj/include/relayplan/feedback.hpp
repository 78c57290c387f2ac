#pragma once

#include "relayplan/channel.hpp"

namespace relayplan {

// Forward chain plus the feedback chain running destination -> source.
// Both lists have one hop per link; reverse powers are the feedback
// transmit budgets (reverse.hops[0].power is the destination's).
struct FeedbackSpec {
    Network forward;
    Network reverse;
};

// Exponent and delay of the active-feedback scheme over an AF chain.
struct FeedbackExponent {
    double sigma_f_sq = 0.0;   // equivalent forward noise variance
    double sigma_fb_sq = 0.0;  // equivalent feedback noise variance
    double exponent = 0.0;     // E_FB = 2 P_S / s2_F + 2 P_D~ / s2_FB
    double codelength = 0.0;   // n_FB = ln(1/delta_e) / E_FB
};

// Reference point-to-point links for the relay-vs-direct comparison:
// the forward direct link (gain, receiver noise) and its feedback twin.
struct PointToPointRef {
    double gain_fwd = 1.0;
    double noise_var_fwd = 1.0;
    double gain_rev = 1.0;
    double noise_var_rev = 1.0;
};

// Equivalent end-to-end noise of the AF cascade, referred to the source:
// sigma_F^2 such that the chain behaves like y = x + z with
// Var(z) = sigma_F^2 under source power P_S.
double equivalent_noise_forward(const FeedbackSpec& fs);

// Same quantity for the reverse (feedback) chain.
double equivalent_noise_feedback(const FeedbackSpec& fs);

// E_FB from already-reduced parameters; exposed because the exponent is
// linear in the two powers, which is worth testing in isolation.
double feedback_exponent_value(double p_source, double sigma_f_sq,
                               double p_feedback, double sigma_fb_sq);

// Full feedback analysis for the channel pair at reliability delta_e.
FeedbackExponent feedback_exponent(const FeedbackSpec& fs, double delta_e);

// Delay of one-bit antipodal signaling over the forward chain without
// feedback: n = (2 sigma_F^2 / P_S) ln(1/delta_e).
double no_feedback_binary_delay(const FeedbackSpec& fs, double delta_e);

// Exact sufficient condition: the relay chain beats the direct link in
// both directions (strict inequalities on the equivalent noises).
bool relay_beats_p2p(const FeedbackSpec& fs, const PointToPointRef& p2p);

// High-SNR simplification of the same condition: unit-noise, gains only,
//   sum_k 1/h_k^2 < 1/h_pp^2   in each direction.
bool relay_beats_p2p_high_snr(const FeedbackSpec& fs, const PointToPointRef& p2p);

}  // namespace relayplan
