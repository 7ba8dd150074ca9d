// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "docguard/common.hpp"
#include "docguard/corpus.hpp"
#include "docguard/prediction.hpp"
#include "docguard/vectorizer.hpp"

namespace docguard {

/// Multinomial naive Bayes over raw token counts with additive smoothing.
/// The TfIdfModel member only supplies the vocabulary (and keeps the model
/// file format uniform across classifier kinds); its weighting configuration
/// plays no part in scoring.
struct NaiveBayesModel {
    TfIdfModel tfidf;
    double alpha = 1.0;
    std::map<std::string, double> log_priors;
    std::map<std::string, std::vector<double>> log_likelihoods;  // dense, |V| per category

    /// log prior(c) + sum over tokens of count * log likelihood(t|c);
    /// out-of-vocabulary tokens are skipped. Bag-of-words: token order is
    /// irrelevant.
    Prediction predict(const std::vector<std::string>& tokens) const {
        std::map<std::uint32_t, std::uint32_t> counts;
        for (const std::string& token : tokens) {
            if (auto idx = tfidf.vocabulary.index_of(token)) ++counts[*idx];
        }
        std::map<std::string, double> scores;
        for (const auto& [category, log_prior] : log_priors) {
            double score = log_prior;
            const std::vector<double>& ll = log_likelihoods.at(category);
            for (const auto& [index, count] : counts) score += count * ll[index];
            scores[category] = score;
        }
        return prediction_from_scores(std::move(scores));
    }

    Prediction predict_text(const std::string& text) const { return predict(tokenize(text)); }
};

/// prior(c) = docs_in_c / N; likelihood(t|c) = (count(t,c) + alpha) /
/// (total_tokens(c) + alpha * |V|), both stored as logs. total_tokens(c)
/// counts in-vocabulary tokens only, so the likelihoods over the vocabulary
/// sum to one per category.
inline NaiveBayesModel train_nb(const TokenizedCorpus& corpus, TfIdfModel tfidf, double alpha = 1.0) {
    if (alpha <= 0.0) throw Error("train_nb: alpha must be > 0");
    if (corpus.docs.empty()) throw Error("train_nb: no training documents");

    const Vocabulary& vocab = tfidf.vocabulary;
    const std::size_t vsize = vocab.size();

    std::map<std::string, std::vector<double>> term_counts;
    std::map<std::string, std::size_t> doc_counts;
    std::map<std::string, double> total_tokens;
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
        const std::string& category = corpus.labels[i];
        if (category.empty()) throw Error("train_nb: unlabeled document \"" + corpus.docs[i].id + "\"");
        auto [it, inserted] = term_counts.try_emplace(category, std::vector<double>(vsize, 0.0));
        std::vector<double>& counts = it->second;
        ++doc_counts[category];
        for (const std::string& token : corpus.docs[i].tokens) {
            if (auto idx = vocab.index_of(token)) {
                counts[*idx] += 1.0;
                total_tokens[category] += 1.0;
            }
        }
    }
    for (const std::string& category : corpus.categories) {
        if (!doc_counts.count(category)) throw Error("train_nb: empty category \"" + category + "\"");
    }

    NaiveBayesModel model;
    model.alpha = alpha;
    const double n = static_cast<double>(corpus.docs.size());
    for (const auto& [category, counts] : term_counts) {
        model.log_priors[category] = std::log(static_cast<double>(doc_counts[category]) / n);
        std::vector<double> ll(vsize);
        const double denom = total_tokens[category] + alpha * static_cast<double>(vsize);
        for (std::size_t t = 0; t < vsize; ++t) ll[t] = std::log((counts[t] + alpha) / denom);
        model.log_likelihoods.emplace(category, std::move(ll));
    }
    model.tfidf = std::move(tfidf);
    return model;
}

}  // namespace docguard
