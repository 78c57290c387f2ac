#include "relayplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace relayplan {

namespace {

constexpr std::size_t kOracleRelayLimit = 20;

void require_hops(const Network& net) {
    if (net.hops.empty())
        throw std::invalid_argument("network has no hops");
}

// Per-m cost triangle: cost[p][k] is the bound for a segment of k AF
// hops starting at node p, at per-segment reliability delta_e / m.
using CostTable = std::vector<std::vector<DelayBound>>;

CostTable build_cost_table(const Network& net, const ReliabilityBudget& budget,
                           std::size_t n_df) {
    const std::size_t n = net.hops.size();
    ReliabilityBudget seg = budget;
    seg.delta_e = budget.delta_e / static_cast<double>(n_df);
    CostTable cost(n);
    for (std::size_t p = 0; p < n; ++p) {
        cost[p].resize(n - p);
        for (std::size_t k = 0; p + k < n; ++k)
            cost[p][k] = delay_bound(cascade_snr(net, p, k).equiv_snr, seg);
    }
    return cost;
}

// Right-associated total of a segmentation, summed last segment first.
// The DP below accumulates its suffix values with the same expression,
// so equal plans land on bit-identical totals and exact ties are ties
// for both optimize and the oracle.
double right_sum(const std::vector<Segment>& segments, const CostTable& cost) {
    double total = cost[segments.back().start][segments.back().af_count].codelength;
    for (std::size_t i = segments.size() - 1; i-- > 0;)
        total = cost[segments[i].start][segments[i].af_count].codelength + total;
    return total;
}

std::vector<Segment> segments_from_starts(const std::vector<std::size_t>& starts,
                                          std::size_t hop_count) {
    std::vector<Segment> segs;
    segs.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : hop_count;
        segs.push_back({starts[i], end - starts[i] - 1});
    }
    return segs;
}

std::vector<RelayMode> assignment_from_starts(const std::vector<std::size_t>& starts,
                                              std::size_t relay_count) {
    std::vector<RelayMode> assign(relay_count, RelayMode::AF);
    for (std::size_t i = 1; i < starts.size(); ++i)
        assign[starts[i] - 1] = RelayMode::DF;
    return assign;
}

}  // namespace

DelayBound segment_cost(const Network& net, std::size_t p, std::size_t k_af,
                        int bits, double delta_seg) {
    ReliabilityBudget seg{bits, delta_seg};
    return delay_bound(cascade_snr(net, p, k_af).equiv_snr, seg);
}

SchemePlan evaluate_assignment(const Network& net, const std::vector<RelayMode>& assignment,
                               const ReliabilityBudget& budget) {
    require_hops(net);
    const std::size_t relays = net.relay_count();
    if (assignment.size() != relays)
        throw std::invalid_argument("assignment length must equal the relay count");

    SchemePlan plan;
    plan.assignment = assignment;
    std::size_t start = 0;
    for (std::size_t r = 1; r <= relays; ++r) {
        if (assignment[r - 1] == RelayMode::DF) {
            plan.segments.push_back({start, r - 1 - start});
            start = r;
        }
    }
    plan.segments.push_back({start, relays - start});
    plan.n_df = plan.segments.size();

    ReliabilityBudget seg = budget;
    seg.delta_e = budget.delta_e / static_cast<double>(plan.n_df);
    plan.total_delay = 0.0;
    for (const Segment& s : plan.segments) {
        plan.per_segment.push_back(delay_bound(cascade_snr(net, s).equiv_snr, seg));
        plan.total_delay += plan.per_segment.back().codelength;
    }
    return plan;
}

SchemePlan optimize(const Network& net, const ReliabilityBudget& budget) {
    require_hops(net);
    const std::size_t n = net.hops.size();  // hops 0..H, H = n-1 relays
    constexpr double inf = std::numeric_limits<double>::infinity();

    double best_total = inf;
    std::vector<std::size_t> best_starts;

    for (std::size_t m = 1; m <= n; ++m) {
        const CostTable cost = build_cost_table(net, budget, m);

        // suf[j][p]: cheapest cover of hops p..H by exactly j segments,
        // accumulated as cost(first segment) + suffix.
        std::vector<std::vector<double>> suf(m + 1, std::vector<double>(n, inf));
        for (std::size_t p = 0; p < n; ++p)
            suf[1][p] = cost[p][n - 1 - p].codelength;
        for (std::size_t j = 2; j <= m; ++j) {
            for (std::size_t p = 0; p + j <= n; ++p) {
                double best = inf;
                for (std::size_t q = p + 1; q + (j - 1) <= n; ++q) {
                    const double cand = cost[p][q - p - 1].codelength + suf[j - 1][q];
                    if (cand < best) best = cand;
                }
                suf[j][p] = best;
            }
        }

        const double total = suf[m][0];
        if (!(total < best_total)) continue;  // ties keep the smaller m
        best_total = total;

        // Reconstruct forward, taking the smallest next boundary that
        // achieves the optimum exactly: earliest DF positions.
        best_starts.assign(1, 0);
        std::size_t p = 0;
        for (std::size_t j = m; j >= 2; --j) {
            bool found = false;
            for (std::size_t q = p + 1; q + (j - 1) <= n; ++q) {
                if (cost[p][q - p - 1].codelength + suf[j - 1][q] == suf[j][p]) {
                    best_starts.push_back(q);
                    p = q;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw std::logic_error("segmentation reconstruction lost the optimum");
        }
    }

    return evaluate_assignment(net, assignment_from_starts(best_starts, n - 1), budget);
}

SchemePlan brute_force_oracle(const Network& net, const ReliabilityBudget& budget) {
    require_hops(net);
    const std::size_t relays = net.relay_count();
    if (relays > kOracleRelayLimit)
        throw RefusalError("oracle refuses " + std::to_string(relays) +
                           " relays (2^H enumeration, limit " +
                           std::to_string(kOracleRelayLimit) + ")");
    const std::size_t n = net.hops.size();

    std::vector<CostTable> cost_for_m(n + 1);
    for (std::size_t m = 1; m <= n; ++m)
        cost_for_m[m] = build_cost_table(net, budget, m);

    double best_total = std::numeric_limits<double>::infinity();
    std::size_t best_m = 0;
    std::vector<std::size_t> best_starts;

    std::vector<std::size_t> starts;
    for (std::size_t mask = 0; mask < (std::size_t{1} << relays); ++mask) {
        starts.assign(1, 0);
        for (std::size_t r = 1; r <= relays; ++r)
            if (mask & (std::size_t{1} << (r - 1))) starts.push_back(r);
        const std::size_t m = starts.size();
        const double total = right_sum(segments_from_starts(starts, n), cost_for_m[m]);

        bool better = false;
        if (total < best_total) {
            better = true;
        } else if (total == best_total) {
            if (m < best_m)
                better = true;
            else if (m == best_m && std::lexicographical_compare(starts.begin(), starts.end(),
                                                                 best_starts.begin(),
                                                                 best_starts.end()))
                better = true;
        }
        if (better) {
            best_total = total;
            best_m = m;
            best_starts = starts;
        }
    }

    return evaluate_assignment(net, assignment_from_starts(best_starts, relays), budget);
}

double high_snr_ratio(const Network& net, const ReliabilityBudget& budget,
                      std::size_t n_df, double scale) {
    require_hops(net);
    if (n_df < 1) throw std::domain_error("n_df must be at least 1");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::domain_error("scale must be positive and finite");

    const Network scaled = scale_powers(net, scale);
    const std::vector<RelayMode> all_af(scaled.relay_count(), RelayMode::AF);
    const double d_af = evaluate_assignment(scaled, all_af, budget).total_delay;

    const std::vector<std::size_t> split = symmetric_equal_split(scaled.relay_count(), n_df);
    std::vector<Segment> segs;
    std::size_t start = 0;
    for (std::size_t k : split) {
        segs.push_back({start, k});
        start += k + 1;
    }
    const double d_df = df_chain_delay(scaled, segs, budget);
    return d_af / d_df;
}

std::vector<std::size_t> symmetric_equal_split(std::size_t relay_count, std::size_t n_df) {
    if (n_df < 1 || n_df > relay_count + 1)
        throw std::domain_error("n_df must lie in [1, H+1]");
    const std::size_t total_af = relay_count + 1 - n_df;
    const std::size_t base = total_af / n_df;
    const std::size_t rem = total_af % n_df;
    std::vector<std::size_t> split(n_df, base);
    for (std::size_t i = n_df - rem; i < n_df; ++i) split[i] = base + 1;
    return split;
}

SchemePlan baseline(const Network& net, const ReliabilityBudget& budget,
                    double snr_threshold) {
    require_hops(net);
    if (!std::isfinite(snr_threshold))
        throw std::domain_error("snr threshold must be finite");

    const std::size_t relays = net.relay_count();
    std::vector<RelayMode> assign(relays, RelayMode::AF);
    std::size_t last_df = 0;
    for (std::size_t r = 1; r <= relays; ++r) {
        const double received = cascade_snr(net, last_df, r - 1 - last_df).equiv_snr;
        if (received >= snr_threshold) {
            assign[r - 1] = RelayMode::AF;
        } else {
            assign[r - 1] = RelayMode::DF;
            last_df = r;
        }
    }
    return evaluate_assignment(net, assign, budget);
}

}  // namespace relayplan
