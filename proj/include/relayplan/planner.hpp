#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "relayplan/channel.hpp"
#include "relayplan/exponent.hpp"

namespace relayplan {

enum class RelayMode { AF, DF };

// A full forwarding plan for the chain: one mode per relay, the induced
// segmentation, and its delay bound.
struct SchemePlan {
    std::vector<RelayMode> assignment;   // relays 1..H in order
    std::vector<Segment> segments;       // contiguous cover of hops 0..H
    std::size_t n_df = 1;                // decoding nodes incl. the source
    double total_delay = 0.0;            // channel uses
    std::vector<DelayBound> per_segment; // one bound per segment
};

// Thrown when an operation declines to run (cost guard), as opposed to
// being handed bad input.
struct RefusalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Delay bound of one segment: k_af AF hops after decoding node p, with
// per-segment reliability delta_seg.
DelayBound segment_cost(const Network& net, std::size_t p, std::size_t k_af,
                        int bits, double delta_seg);

// Plan for a fixed AF/DF assignment: derives the segmentation, splits
// delta_e uniformly across segments, sums the per-segment bounds.
SchemePlan evaluate_assignment(const Network& net, const std::vector<RelayMode>& assignment,
                               const ReliabilityBudget& budget);

// Minimum-delay plan over every assignment, by dynamic programming over
// segment boundaries for each candidate segment count.  Ties break to
// fewer decoding nodes, then to the earliest DF positions.
SchemePlan optimize(const Network& net, const ReliabilityBudget& budget);

// Exhaustive check of optimize: walks all 2^H assignments with the same
// cost function and tie-breaking.  Refuses chains with more than 20
// relays.
SchemePlan brute_force_oracle(const Network& net, const ReliabilityBudget& budget);

// D_AF / D_DF at power scale s: all-AF delay over the delay of the
// equal-split plan with n_df decoding nodes, both on the scaled network.
double high_snr_ratio(const Network& net, const ReliabilityBudget& budget,
                      std::size_t n_df, double scale);

// Most-equal integer split of the AF relays across n_df segments under
// sum(K_i) = H + 1 - n_df; any remainder goes to the trailing segments.
std::vector<std::size_t> symmetric_equal_split(std::size_t relay_count, std::size_t n_df);

// Common-practice policy: each relay amplifies iff the SNR of the signal
// it received (cascaded since the last decoding node) clears the
// threshold, otherwise it decodes.
SchemePlan baseline(const Network& net, const ReliabilityBudget& budget,
                    double snr_threshold);

}  // namespace relayplan
