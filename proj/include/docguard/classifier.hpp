// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "docguard/centroid.hpp"
#include "docguard/common.hpp"
#include "docguard/corpus.hpp"
#include "docguard/knn.hpp"
#include "docguard/naive_bayes.hpp"
#include "docguard/prediction.hpp"
#include "docguard/vectorizer.hpp"

namespace docguard {

enum class ClassifierKind { centroid, naive_bayes, knn };

inline std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::centroid: return "centroid";
        case ClassifierKind::naive_bayes: return "nb";
        case ClassifierKind::knn: return "knn";
    }
    throw Error("invalid ClassifierKind");
}

inline ClassifierKind parse_classifier_kind(const std::string& token) {
    if (token == "centroid") return ClassifierKind::centroid;
    if (token == "nb") return ClassifierKind::naive_bayes;
    if (token == "knn") return ClassifierKind::knn;
    throw Error("unknown classifier kind \"" + token + "\"");
}

/// Everything needed to train one classifier: the kind, its hyperparameters,
/// and the weighting configuration.
struct ClassifierConfig {
    ClassifierKind kind = ClassifierKind::centroid;
    CentroidMode mode = CentroidMode::centroid_cosine;  // centroid only
    int k = 5;                                          // knn only
    double alpha = 1.0;                                 // nb only
    TfVariant tf_variant = TfVariant::raw;
    IdfVariant idf_variant = IdfVariant::log;
    bool normalize = true;
};

using AnyModel = std::variant<CentroidModel, NaiveBayesModel, KnnModel>;

inline AnyModel train_classifier(const ClassifierConfig& config, const TokenizedCorpus& corpus) {
    TfIdfModel tfidf = fit_tfidf(corpus.docs, config.tf_variant, config.idf_variant, config.normalize);
    switch (config.kind) {
        case ClassifierKind::centroid:
            return train_centroid(corpus, std::move(tfidf), config.mode);
        case ClassifierKind::naive_bayes:
            return train_nb(corpus, std::move(tfidf), config.alpha);
        case ClassifierKind::knn:
            return train_knn(corpus, std::move(tfidf), config.k);
    }
    throw Error("invalid ClassifierKind");
}

inline ClassifierKind kind_of(const AnyModel& model) {
    if (std::holds_alternative<CentroidModel>(model)) return ClassifierKind::centroid;
    if (std::holds_alternative<NaiveBayesModel>(model)) return ClassifierKind::naive_bayes;
    return ClassifierKind::knn;
}

inline const TfIdfModel& tfidf_of(const AnyModel& model) {
    return std::visit([](const auto& m) -> const TfIdfModel& { return m.tfidf; }, model);
}

inline Prediction predict(const AnyModel& model, const std::vector<std::string>& tokens) {
    return std::visit([&](const auto& m) { return m.predict(tokens); }, model);
}

/// Tokenize and classify raw text. No stop-list is applied here: stop words
/// removed at training time are absent from the vocabulary, so they drop out
/// at vectorization either way.
inline Prediction predict_text(const AnyModel& model, const std::string& text) {
    return predict(model, tokenize(text));
}

}  // namespace docguard
