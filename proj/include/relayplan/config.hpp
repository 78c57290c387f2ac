#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "relayplan/channel.hpp"
#include "relayplan/exponent.hpp"
#include "relayplan/feedback.hpp"

namespace relayplan {

// Config file problem: unreadable file, malformed syntax, missing or
// out-of-range field.  The message names the offending field.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed network description: forward chain, reliability target, and an
// optional reverse chain enabling the feedback analysis.
struct NetworkConfig {
    Network forward;
    int bits = 1;
    double delta_e = 0.5;
    std::optional<Network> feedback;

    ReliabilityBudget budget() const { return {bits, delta_e}; }

    // Throws ParseError when the config has no feedback section.
    FeedbackSpec feedback_spec() const;
};

// Load and validate a config file (JSON: hops, bits, delta_e, optional
// feedback).  Unknown keys are rejected.
NetworkConfig parse_config(const std::string& path);

// Same, from an in-memory document; `origin` labels error messages.
NetworkConfig parse_config_text(const std::string& text, const std::string& origin);

// Canonical form: reparsing the output reproduces the config exactly,
// and serializing again reproduces the bytes.
std::string serialize_config(const NetworkConfig& cfg);

}  // namespace relayplan
