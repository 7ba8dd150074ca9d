// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <limits>
#include <map>
#include <string>

#include "docguard/common.hpp"

namespace docguard {

/// Classifier output: winning category, the full score map, and the gap
/// between the two best scores (0 when only one category exists).
struct Prediction {
    std::string category;
    std::map<std::string, double> scores;
    double margin = 0.0;
};

/// Top score minus second score over a score map; 0 for a single entry.
inline double score_margin(const std::map<std::string, double>& scores) {
    if (scores.size() < 2) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    double second = -std::numeric_limits<double>::infinity();
    for (const auto& [category, score] : scores) {
        if (score > best) {
            second = best;
            best = score;
        } else if (score > second) {
            second = score;
        }
    }
    return best - second;
}

/// Argmax with ties broken toward the lexicographically smallest category.
inline Prediction prediction_from_scores(std::map<std::string, double> scores) {
    if (scores.empty()) throw Error("prediction over an empty score map");
    auto best = scores.begin();
    for (auto it = std::next(scores.begin()); it != scores.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    Prediction p;
    p.category = best->first;
    p.margin = score_margin(scores);
    p.scores = std::move(scores);
    return p;
}

}  // namespace docguard
