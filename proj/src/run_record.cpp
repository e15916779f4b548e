#include "svmc/run_record.hpp"

#include <stdexcept>

#include "json.hpp"

namespace svmc {

std::string config_to_string(const SpinConfig& config) {
    std::string out;
    out.reserve(config.size());
    for (std::int8_t z : config) {
        out.push_back(z > 0 ? '+' : (z < 0 ? '-' : '.'));
    }
    return out;
}

SpinConfig config_from_string(const std::string& text) {
    SpinConfig config;
    config.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '+': config.push_back(1); break;
            case '-': config.push_back(-1); break;
            case '.': config.push_back(0); break;
            default: throw std::invalid_argument("bad spin character in config string");
        }
    }
    return config;
}

std::string run_record_to_json(const RunRecord& rec) {
    nlohmann::json j;
    j["seed"] = rec.seed;
    j["final_energy"] = rec.final_energy;
    j["success"] = rec.success;
    j["final_config"] = config_to_string(rec.final_config);
    j["final_theta"] = rec.final_theta;
    j["accepted"] = rec.accepted;
    j["proposed"] = rec.proposed;
    if (!rec.snapshots.empty()) {
        nlohmann::json snaps = nlohmann::json::array();
        for (const auto& [s, theta] : rec.snapshots) {
            snaps.push_back({{"s", s}, {"theta", theta}});
        }
        j["snapshots"] = std::move(snaps);
    }
    return j.dump();
}

RunRecord run_record_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunRecord rec;
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.final_energy = j.at("final_energy").get<double>();
    rec.success = j.at("success").get<bool>();
    rec.final_config = config_from_string(j.at("final_config").get<std::string>());
    rec.final_theta = j.at("final_theta").get<RotorState>();
    rec.accepted = j.at("accepted").get<std::uint64_t>();
    rec.proposed = j.at("proposed").get<std::uint64_t>();
    if (j.contains("snapshots")) {
        for (const auto& snap : j.at("snapshots")) {
            rec.snapshots.emplace_back(snap.at("s").get<double>(),
                                       snap.at("theta").get<RotorState>());
        }
    }
    return rec;
}

}  // namespace svmc
