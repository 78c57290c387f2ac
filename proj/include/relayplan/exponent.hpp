#pragma once

#include <vector>

#include "relayplan/channel.hpp"

namespace relayplan {

// Reliability target: B message bits delivered with error probability
// at most delta_e.
struct ReliabilityBudget {
    int bits = 1;          // message size B, bits
    double delta_e = 0.5;  // error probability target, in (0,1)
};

// Codelength bound for one segment, with the rho that achieves it.
struct DelayBound {
    double codelength = 0.0;  // n, channel uses (real-valued)
    double rho = 1.0;         // optimizing rho in (0,1]
    double snr_used = 0.0;
    double delta_used = 0.0;
};

// Gaussian random-coding exponent lower bound, natural logs:
//   E_r(rho) = rho * ln(1 + snr/(1+rho)) - rho * rate
// with rate in nats per channel use.  May be negative when the rate
// exceeds the rho-dependent threshold.
double random_coding_exponent(double snr, double rate, double rho);

// Smallest codelength meeting the budget over a Gaussian channel at the
// given SNR:
//   n = min over rho in (0,1] of (rho*B*ln2 - ln delta) / (rho * ln(1 + snr/(1+rho)))
// The budget's delta_e field carries the per-segment target delta.
DelayBound delay_bound(double snr, const ReliabilityBudget& budget);

// Total delay of a decode-and-forward chain cut into the given segments.
// Segments must tile hops 0..H in order; the per-segment reliability is
// delta_e divided by the number of segments.
double df_chain_delay(const Network& net, const std::vector<Segment>& segments,
                      const ReliabilityBudget& budget);

}  // namespace relayplan
