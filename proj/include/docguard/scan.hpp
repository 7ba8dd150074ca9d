// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "docguard/classifier.hpp"
#include "docguard/common.hpp"
#include "docguard/policy.hpp"

namespace docguard {

namespace detail {

inline std::string file_extension(const std::string& path) {
    const std::string ext = std::filesystem::path(path).extension().string();
    return ext.empty() ? ext : ext.substr(1);  // drop the leading dot
}

}  // namespace detail

/// Classifies each file and runs the verdict through the policy. The base
/// context supplies sender/receiver/state/zone; per file, size_bytes is the
/// file size and format falls back to the file extension when the base
/// leaves it empty. Unreadable files yield an Alert verdict marked "error"
/// instead of aborting the batch. When audit_log_path is non-empty, one
/// JSON line per verdict is appended, in input order.
inline std::vector<Verdict> scan(const std::vector<std::string>& paths, const AnyModel& model,
                                 const PolicyTable& policy, const TransferContext& base_context,
                                 const std::string& audit_log_path = "") {
    std::ofstream audit;
    if (!audit_log_path.empty()) {
        audit.open(audit_log_path, std::ios::binary | std::ios::app);
        if (!audit) throw Error("scan: cannot open audit log " + audit_log_path);
    }

    std::vector<Verdict> verdicts;
    verdicts.reserve(paths.size());
    for (const std::string& path : paths) {
        Verdict verdict;
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            verdict.document_id = path;
            verdict.action = Action::alert;
            verdict.matched_rule = "error";
            verdict.timestamp = rfc3339_utc(std::chrono::system_clock::now());
            verdict.error = "unreadable file";
        } else {
            std::ostringstream buffer;
            buffer << in.rdbuf();
            const std::string text = buffer.str();
            TransferContext context = base_context;
            context.size_bytes = text.size();
            if (context.format.empty()) context.format = detail::file_extension(path);
            verdict = decide(predict_text(model, text), context, policy, path);
        }
        if (audit.is_open()) {
            audit << verdict_to_json(verdict).dump() << '\n';
            if (!audit) throw Error("scan: write failed for audit log " + audit_log_path);
        }
        verdicts.push_back(std::move(verdict));
    }
    if (audit.is_open()) audit.flush();
    return verdicts;
}

/// True when at least one verdict demands Block or Quarantine — the
/// condition under which a scan run reports a leak-preventing exit status.
inline bool any_blocking(const std::vector<Verdict>& verdicts) {
    for (const Verdict& verdict : verdicts)
        if (verdict.action == Action::block || verdict.action == Action::quarantine) return true;
    return false;
}

}  // namespace docguard
