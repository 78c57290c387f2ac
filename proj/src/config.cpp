#include "relayplan/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace relayplan {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ParseError(origin + ": " + what);
}

double number_field(const json& obj, const std::string& key, const std::string& where,
                    const std::string& origin) {
    if (!obj.contains(key)) fail(origin, where + " is missing field '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(origin, where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(origin, where + "." + key + " must be finite");
    return x;
}

Network parse_hop_list(const json& arr, const std::string& where, const std::string& origin) {
    if (!arr.is_array() || arr.empty())
        fail(origin, where + " must be a non-empty array of hops");
    Network net;
    net.hops.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string label = where + "[" + std::to_string(i) + "]";
        const json& h = arr.at(i);
        if (!h.is_object()) fail(origin, label + " must be an object");
        for (const auto& [key, value] : h.items()) {
            (void)value;
            if (key != "gain" && key != "noise_var" && key != "power")
                fail(origin, label + " has unknown field '" + key + "'");
        }
        Hop hop;
        hop.gain = number_field(h, "gain", label, origin);
        hop.noise_var = number_field(h, "noise_var", label, origin);
        hop.power = number_field(h, "power", label, origin);
        if (hop.gain == 0.0) fail(origin, label + ".gain must be nonzero");
        if (!(hop.noise_var > 0.0)) fail(origin, label + ".noise_var must be positive");
        if (!(hop.power > 0.0)) fail(origin, label + ".power must be positive");
        net.hops.push_back(hop);
    }
    return net;
}

}  // namespace

FeedbackSpec NetworkConfig::feedback_spec() const {
    if (!feedback.has_value())
        throw ParseError("config has no feedback section");
    return {forward, *feedback};
}

NetworkConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

NetworkConfig parse_config_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, e.what());
    }
    if (!doc.is_object()) fail(origin, "top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "hops" && key != "bits" && key != "delta_e" && key != "feedback")
            fail(origin, "unknown top-level field '" + key + "'");
    }

    NetworkConfig cfg;
    if (!doc.contains("hops")) fail(origin, "missing field 'hops'");
    cfg.forward = parse_hop_list(doc.at("hops"), "hops", origin);

    if (!doc.contains("bits")) fail(origin, "missing field 'bits'");
    if (!doc.at("bits").is_number_integer())
        fail(origin, "bits must be an integer");
    const long long bits = doc.at("bits").get<long long>();
    if (bits < 1) fail(origin, "bits must be at least 1");
    if (bits > std::numeric_limits<int>::max()) fail(origin, "bits is out of range");
    cfg.bits = static_cast<int>(bits);

    if (!doc.contains("delta_e")) fail(origin, "missing field 'delta_e'");
    if (!doc.at("delta_e").is_number()) fail(origin, "delta_e must be a number");
    cfg.delta_e = doc.at("delta_e").get<double>();
    if (!(cfg.delta_e > 0.0) || !(cfg.delta_e < 1.0))
        fail(origin, "delta_e must lie in (0,1)");

    if (doc.contains("feedback")) {
        Network rev = parse_hop_list(doc.at("feedback"), "feedback", origin);
        if (rev.hops.size() != cfg.forward.hops.size())
            fail(origin, "feedback must list exactly as many hops as 'hops' (" +
                             std::to_string(cfg.forward.hops.size()) + ")");
        cfg.feedback = std::move(rev);
    }
    return cfg;
}

std::string serialize_config(const NetworkConfig& cfg) {
    const auto hop_list = [](const Network& net) {
        json arr = json::array();
        for (const Hop& hop : net.hops)
            arr.push_back({{"gain", hop.gain}, {"noise_var", hop.noise_var}, {"power", hop.power}});
        return arr;
    };
    json doc;
    doc["hops"] = hop_list(cfg.forward);
    doc["bits"] = cfg.bits;
    doc["delta_e"] = cfg.delta_e;
    if (cfg.feedback.has_value()) doc["feedback"] = hop_list(*cfg.feedback);
    return doc.dump(2) + "\n";
}

}  // namespace relayplan
