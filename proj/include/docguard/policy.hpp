// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "docguard/common.hpp"
#include "docguard/context.hpp"
#include "docguard/prediction.hpp"

namespace docguard {

/// Secrecy levels in increasing order of sensitivity; the underlying values
/// carry the total order.
enum class SensitivityLevel { public_ = 0, privileged = 1, classified = 2, top_classified = 3 };

/// Remedial actions a policy can demand. Encrypt and Audit are recorded
/// decisions only; enforcement belongs to the caller.
enum class Action { allow, alert, block, quarantine, encrypt, audit };

inline std::string to_string(SensitivityLevel level) {
    switch (level) {
        case SensitivityLevel::public_: return "Public";
        case SensitivityLevel::privileged: return "Privileged";
        case SensitivityLevel::classified: return "Classified";
        case SensitivityLevel::top_classified: return "TopClassified";
    }
    throw Error("to_string: bad SensitivityLevel");
}

inline SensitivityLevel parse_sensitivity_level(const std::string& s) {
    if (s == "Public") return SensitivityLevel::public_;
    if (s == "Privileged") return SensitivityLevel::privileged;
    if (s == "Classified") return SensitivityLevel::classified;
    if (s == "TopClassified") return SensitivityLevel::top_classified;
    throw Error("unknown sensitivity level \"" + s +
                "\" (expected Public, Privileged, Classified or TopClassified)");
}

inline std::string to_string(Action action) {
    switch (action) {
        case Action::allow: return "Allow";
        case Action::alert: return "Alert";
        case Action::block: return "Block";
        case Action::quarantine: return "Quarantine";
        case Action::encrypt: return "Encrypt";
        case Action::audit: return "Audit";
    }
    throw Error("to_string: bad Action");
}

inline Action parse_action(const std::string& s) {
    if (s == "Allow") return Action::allow;
    if (s == "Alert") return Action::alert;
    if (s == "Block") return Action::block;
    if (s == "Quarantine") return Action::quarantine;
    if (s == "Encrypt") return Action::encrypt;
    if (s == "Audit") return Action::audit;
    throw Error("unknown action \"" + s +
                "\" (expected Allow, Alert, Block, Quarantine, Encrypt or Audit)");
}

/// One policy clause: fires when the document's level reaches min_level and
/// every present context constraint holds (constraints are conjunctive).
struct PolicyRule {
    SensitivityLevel min_level = SensitivityLevel::public_;
    std::optional<DataState> data_state;
    std::optional<ReceiverZone> receiver_zone;
    std::optional<std::string> format;
    std::optional<std::uint64_t> max_size_bytes;
    Action action = Action::allow;

    bool matches(SensitivityLevel level, const TransferContext& context) const {
        if (level < min_level) return false;
        if (data_state && context.data_state != *data_state) return false;
        if (receiver_zone && context.receiver_zone != *receiver_zone) return false;
        if (format && context.format != *format) return false;
        if (max_size_bytes && context.size_bytes > *max_size_bytes) return false;
        return true;
    }
};

/// Category-to-level mapping plus an ordered, first-match rule list. A
/// prediction whose margin falls below uncertain_margin short-circuits to
/// uncertain_action: a low-margin call is not trusted to route normally.
struct PolicyTable {
    std::map<std::string, SensitivityLevel> category_levels;
    std::vector<PolicyRule> rules;
    Action default_action = Action::allow;
    double uncertain_margin = 0.0;
    Action uncertain_action = Action::alert;
};

/// A single decision with its provenance: which rule fired (by index), or
/// "default" / "uncertain", or "error" for documents that could not be
/// processed at all.
struct Verdict {
    std::string document_id;
    std::string category;
    SensitivityLevel level = SensitivityLevel::public_;
    double margin = 0.0;
    Action action = Action::allow;
    std::string matched_rule;
    std::string timestamp;
    std::string error;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& obj, const std::string& key,
                                           const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw Error("policy: missing \"" + key + "\" in " + where);
    return *it;
}

inline std::string require_string(const nlohmann::json& value, const std::string& where) {
    if (!value.is_string()) throw Error("policy: " + where + " must be a string");
    return value.get<std::string>();
}

}  // namespace detail

/// Parses the JSON policy format:
///   {category_levels: {...}, default_action, rules: [...],
///    uncertain_margin?, uncertain_action?}
/// Unknown keys and unknown level/action tokens are rejected with the token
/// and its location in the file.
inline PolicyTable load_policy(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open policy file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("malformed policy file " + path + " at byte " + std::to_string(e.byte) + ": " +
                    e.what());
    }
    if (!j.is_object()) throw Error("policy: top level of " + path + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (key != "category_levels" && key != "rules" && key != "default_action" &&
            key != "uncertain_margin" && key != "uncertain_action")
            throw Error("policy: unknown key \"" + key + "\" at top level of " + path);
        (void)value;
    }

    PolicyTable table;
    const nlohmann::json& levels = detail::require_field(j, "category_levels", path);
    if (!levels.is_object()) throw Error("policy: category_levels must be an object");
    for (const auto& [category, value] : levels.items()) {
        const std::string where = "category_levels." + category;
        try {
            table.category_levels[category] =
                parse_sensitivity_level(detail::require_string(value, where));
        } catch (const Error& e) {
            throw Error("policy: " + where + ": " + e.what());
        }
    }

    try {
        table.default_action =
            parse_action(detail::require_string(detail::require_field(j, "default_action", path),
                                                "default_action"));
    } catch (const Error& e) {
        throw Error(std::string("policy: default_action: ") + e.what());
    }

    if (j.contains("uncertain_margin")) {
        if (!j["uncertain_margin"].is_number())
            throw Error("policy: uncertain_margin must be a number");
        table.uncertain_margin = j["uncertain_margin"].get<double>();
        if (table.uncertain_margin < 0.0) throw Error("policy: uncertain_margin must be >= 0");
    }
    if (j.contains("uncertain_action")) {
        try {
            table.uncertain_action =
                parse_action(detail::require_string(j["uncertain_action"], "uncertain_action"));
        } catch (const Error& e) {
            throw Error(std::string("policy: uncertain_action: ") + e.what());
        }
    }

    if (j.contains("rules")) {
        if (!j["rules"].is_array()) throw Error("policy: rules must be an array");
        std::size_t index = 0;
        for (const nlohmann::json& entry : j["rules"]) {
            const std::string where = "rules[" + std::to_string(index) + "]";
            if (!entry.is_object()) throw Error("policy: " + where + " must be an object");
            PolicyRule rule;
            try {
                for (const auto& [key, value] : entry.items()) {
                    if (key == "min_level") {
                        rule.min_level =
                            parse_sensitivity_level(detail::require_string(value, where + ".min_level"));
                    } else if (key == "action") {
                        rule.action = parse_action(detail::require_string(value, where + ".action"));
                    } else if (key == "data_state") {
                        rule.data_state =
                            parse_data_state(detail::require_string(value, where + ".data_state"));
                    } else if (key == "receiver_zone") {
                        rule.receiver_zone = parse_receiver_zone(
                            detail::require_string(value, where + ".receiver_zone"));
                    } else if (key == "format") {
                        rule.format = detail::require_string(value, where + ".format");
                    } else if (key == "max_size_bytes") {
                        if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                            throw Error("max_size_bytes must be a non-negative integer");
                        rule.max_size_bytes = value.get<std::uint64_t>();
                    } else {
                        throw Error("unknown key \"" + key + "\"");
                    }
                }
                if (!entry.contains("min_level")) throw Error("missing \"min_level\"");
                if (!entry.contains("action")) throw Error("missing \"action\"");
            } catch (const Error& e) {
                throw Error("policy: " + where + ": " + e.what());
            }
            table.rules.push_back(std::move(rule));
            ++index;
        }
    }
    return table;
}

/// Pure decision function (the timestamp aside): uncertainty gate first,
/// then first-match over the rule list, then the default action.
inline Verdict decide(const Prediction& prediction, const TransferContext& context,
                      const PolicyTable& policy, const std::string& document_id = "") {
    const auto level_it = policy.category_levels.find(prediction.category);
    if (level_it == policy.category_levels.end())
        throw Error("decide: category \"" + prediction.category + "\" has no sensitivity level");

    Verdict verdict;
    verdict.document_id = document_id;
    verdict.category = prediction.category;
    verdict.level = level_it->second;
    verdict.margin = prediction.margin;
    verdict.timestamp = rfc3339_utc(std::chrono::system_clock::now());

    if (prediction.margin < policy.uncertain_margin) {
        verdict.action = policy.uncertain_action;
        verdict.matched_rule = "uncertain";
        return verdict;
    }
    for (std::size_t i = 0; i < policy.rules.size(); ++i) {
        if (policy.rules[i].matches(verdict.level, context)) {
            verdict.action = policy.rules[i].action;
            verdict.matched_rule = std::to_string(i);
            return verdict;
        }
    }
    verdict.action = policy.default_action;
    verdict.matched_rule = "default";
    return verdict;
}

inline nlohmann::json verdict_to_json(const Verdict& verdict) {
    nlohmann::json j{{"document", verdict.document_id},
                     {"category", verdict.category},
                     {"level", to_string(verdict.level)},
                     {"margin", verdict.margin},
                     {"action", to_string(verdict.action)},
                     {"matched_rule", verdict.matched_rule},
                     {"timestamp", verdict.timestamp}};
    if (!verdict.error.empty()) j["error"] = verdict.error;
    return j;
}

}  // namespace docguard
