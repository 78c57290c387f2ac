#pragma once

#include <cstddef>
#include <vector>

namespace relayplan {

// One hop of the relay chain.  Hop k carries the signal from node k to
// node k+1; noise_var is the noise variance at the receiving node and
// power is the transmit power budget of node k.
struct Hop {
    double gain = 1.0;       // amplitude gain h_k (sign allowed, never zero)
    double noise_var = 1.0;  // variance at the receiver of this hop
    double power = 1.0;      // transmit power of the sending node
};

// A chain of H+1 hops: node 0 is the source, nodes 1..H are relays,
// node H+1 is the destination.
struct Network {
    std::vector<Hop> hops;

    std::size_t relay_count() const {
        return hops.empty() ? 0 : hops.size() - 1;
    }
};

// A maximal run of amplify-and-forward hops: the transmission starts at
// node `start` and passes through `af_count` AF relays before the next
// decoding node.
struct Segment {
    std::size_t start = 0;     // index of the decoding node that transmits
    std::size_t af_count = 0;  // number of AF relays in between
};

// Equivalent point-to-point channel of an AF cascade.
struct CascadeResult {
    double equiv_gain = 0.0;       // h_e
    double equiv_noise_var = 0.0;  // variance of the accumulated noise
    double equiv_snr = 0.0;        // h_e^2 * P_start / equiv_noise_var
};

// SNR of hop k taken in isolation: gain^2 * power / noise_var.
double per_hop_snr(const Hop& hop);

// Amplification gain of an AF relay at its power constraint: the relay
// retransmits at exactly its power budget, so
//   beta^2 = P_relay / (h_prev^2 * P_prev + sigma_prev^2).
// `incoming` is the hop feeding the relay, `outgoing` the hop it drives.
double amplification_gain(const Hop& incoming, const Hop& outgoing);

// Equivalent channel of the AF cascade starting at node `start` and
// spanning af_count + 1 hops.  af_count == 0 degenerates to the single
// hop `start` and matches per_hop_snr exactly.
CascadeResult cascade_snr(const Network& net, std::size_t start, std::size_t af_count);
CascadeResult cascade_snr(const Network& net, const Segment& seg);

// High-SNR limit of the cascade SNR: the harmonic combination
//   (sum_k 1/snr_k)^-1 over the hops of the segment.
double cascade_snr_high_snr(const Network& net, std::size_t start, std::size_t af_count);

// Copy of `net` with every hop power multiplied by `factor`.
Network scale_powers(const Network& net, double factor);

}  // namespace relayplan
