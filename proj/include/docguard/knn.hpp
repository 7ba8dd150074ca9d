// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "docguard/common.hpp"
#include "docguard/corpus.hpp"
#include "docguard/prediction.hpp"
#include "docguard/sparse_vector.hpp"
#include "docguard/vectorizer.hpp"

namespace docguard {

/// k-nearest-neighbor classifier over unit TF-IDF vectors with cosine
/// similarity. Neighbor ties on similarity go to the smaller training index;
/// vote ties go to the larger summed similarity, then to the
/// lexicographically smaller category. The reported scores are the summed
/// similarities of the k neighbors per category, which ranks the vote
/// winner first in all but contrived vote-versus-similarity standoffs.
struct KnnModel {
    TfIdfModel tfidf;
    std::vector<SparseVector> stored;  // unit norm (or empty), training order
    std::vector<std::string> labels;   // parallel to stored
    std::vector<std::string> categories;
    int k = 5;

    Prediction predict_vector(const SparseVector& v) const {
        std::vector<std::size_t> order(stored.size());
        std::vector<double> sims(stored.size());
        for (std::size_t i = 0; i < stored.size(); ++i) {
            order[i] = i;
            sims[i] = cosine_similarity(v, stored[i]);
        }
        const std::size_t kk = static_cast<std::size_t>(k);
        std::partial_sort(order.begin(), order.begin() + kk, order.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (sims[a] != sims[b]) return sims[a] > sims[b];
                              return a < b;
                          });

        std::map<std::string, int> votes;
        std::map<std::string, double> summed;
        for (const std::string& category : categories) summed[category] = 0.0;
        for (std::size_t i = 0; i < kk; ++i) {
            const std::string& category = labels[order[i]];
            ++votes[category];
            summed[category] += sims[order[i]];
        }

        const std::string* best = nullptr;
        for (const auto& [category, count] : votes) {
            if (!best || count > votes.at(*best) ||
                (count == votes.at(*best) && summed.at(category) > summed.at(*best))) {
                best = &category;
            }
        }

        Prediction p;
        p.category = *best;
        p.margin = score_margin(summed);
        p.scores = std::move(summed);
        return p;
    }

    Prediction predict(const std::vector<std::string>& tokens) const {
        return predict_vector(tfidf_vector(tokens, tfidf));
    }

    Prediction predict_text(const std::string& text) const { return predict(tokenize(text)); }
};

inline KnnModel train_knn(const TokenizedCorpus& corpus, TfIdfModel tfidf, int k = 5) {
    if (k < 1) throw Error("train_knn: k must be >= 1");
    if (static_cast<std::size_t>(k) > corpus.docs.size())
        throw Error("train_knn: k = " + std::to_string(k) + " exceeds corpus size " +
                    std::to_string(corpus.docs.size()));
    KnnModel model;
    model.k = k;
    model.categories = corpus.categories;
    model.stored.reserve(corpus.docs.size());
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
        if (corpus.labels[i].empty())
            throw Error("train_knn: unlabeled document \"" + corpus.docs[i].id + "\"");
        SparseVector v = tfidf_vector(corpus.docs[i].tokens, tfidf);
        v.normalize();
        model.stored.push_back(std::move(v));
        model.labels.push_back(corpus.labels[i]);
    }
    model.tfidf = std::move(tfidf);
    return model;
}

}  // namespace docguard
