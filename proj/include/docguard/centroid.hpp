// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "docguard/common.hpp"
#include "docguard/corpus.hpp"
#include "docguard/prediction.hpp"
#include "docguard/sparse_vector.hpp"
#include "docguard/vectorizer.hpp"

namespace docguard {

/// Scoring mode for the centroid classifier.
///
/// centroid_cosine: score(c) = cosine(v, centroid_c), the standard rule.
/// mean_cosine:     score(c) = dot(v_hat, centroid_c) with v_hat the unit
///                  test vector. Because the centroid is the arithmetic mean
///                  of the unit member vectors, this equals the mean cosine
///                  similarity between the test document and every member of
///                  class c. The two modes can rank categories differently:
///                  cosine to the centroid divides by the per-class centroid
///                  norm, mean similarity does not.
enum class CentroidMode { centroid_cosine, mean_cosine };

inline std::string to_string(CentroidMode m) {
    return m == CentroidMode::centroid_cosine ? "centroid-cosine" : "mean-cosine";
}

inline CentroidMode parse_centroid_mode(const std::string& token) {
    if (token == "centroid-cosine") return CentroidMode::centroid_cosine;
    if (token == "mean-cosine") return CentroidMode::mean_cosine;
    throw Error("unknown centroid mode token \"" + token + "\"");
}

struct CentroidModel {
    TfIdfModel tfidf;
    CentroidMode mode = CentroidMode::centroid_cosine;
    std::map<std::string, SparseVector> centroids;  // stored unnormalized

    Prediction predict_vector(const SparseVector& v) const {
        std::map<std::string, double> scores;
        if (mode == CentroidMode::centroid_cosine) {
            for (const auto& [category, centroid] : centroids)
                scores[category] = cosine_similarity(v, centroid);
        } else {
            SparseVector unit = v;
            unit.normalize();
            for (const auto& [category, centroid] : centroids)
                scores[category] = unit.dot(centroid);
        }
        return prediction_from_scores(std::move(scores));
    }

    Prediction predict(const std::vector<std::string>& tokens) const {
        return predict_vector(tfidf_vector(tokens, tfidf));
    }

    Prediction predict_text(const std::string& text) const { return predict(tokenize(text)); }

    /// Norm of a class centroid. A norm near 1 means the members point the
    /// same way (a tight class); near 0 means they are spread out.
    /// Diagnostic only, never used in scoring.
    double tightness(const std::string& category) const {
        auto it = centroids.find(category);
        if (it == centroids.end()) throw Error("tightness: unknown category \"" + category + "\"");
        return it->second.norm();
    }
};

/// Centroid of category c = arithmetic mean of the unit-normalized member
/// vectors. Labels must cover every vector; every category needs at least
/// one member.
inline CentroidModel train_centroid_from_vectors(const std::vector<SparseVector>& vectors,
                                                 const std::vector<std::string>& labels,
                                                 TfIdfModel tfidf,
                                                 CentroidMode mode = CentroidMode::centroid_cosine) {
    if (vectors.size() != labels.size()) throw Error("train_centroid: vectors/labels size mismatch");
    if (vectors.empty()) throw Error("train_centroid: no training documents");
    std::map<std::string, SparseVector> sums;
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (labels[i].empty()) throw Error("train_centroid: unlabeled document at position " + std::to_string(i));
        SparseVector unit = vectors[i];
        unit.normalize();
        sums[labels[i]].add(unit);
        ++counts[labels[i]];
    }
    CentroidModel model;
    model.tfidf = std::move(tfidf);
    model.mode = mode;
    for (auto& [category, sum] : sums) {
        sum.scale(1.0 / static_cast<double>(counts[category]));
        model.centroids.emplace(category, std::move(sum));
    }
    return model;
}

inline CentroidModel train_centroid(const TokenizedCorpus& corpus, TfIdfModel tfidf,
                                    CentroidMode mode = CentroidMode::centroid_cosine) {
    std::vector<SparseVector> vectors;
    vectors.reserve(corpus.docs.size());
    for (const TokenizedDocument& doc : corpus.docs) vectors.push_back(tfidf_vector(doc.tokens, tfidf));
    CentroidModel model = train_centroid_from_vectors(vectors, corpus.labels, std::move(tfidf), mode);
    for (const std::string& category : corpus.categories) {
        if (!model.centroids.count(category))
            throw Error("train_centroid: empty category \"" + category + "\"");
    }
    return model;
}

}  // namespace docguard
