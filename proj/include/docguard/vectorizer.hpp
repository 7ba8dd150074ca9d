// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "docguard/common.hpp"
#include "docguard/corpus.hpp"
#include "docguard/sparse_vector.hpp"

namespace docguard {

/// Term frequency weighting: raw occurrence counts, or 1 + ln(count).
enum class TfVariant { raw, log };

/// Inverse document frequency weighting. `raw` is the plain ratio N/df;
/// `log` is ln(N/df); `smooth` is ln((1+N)/(1+df)) + 1. The raw ratio is the
/// literal textbook definition, but unbounded; log is the default.
enum class IdfVariant { raw, log, smooth };

inline std::string to_string(TfVariant v) { return v == TfVariant::raw ? "raw" : "log"; }

inline TfVariant parse_tf_variant(const std::string& token) {
    if (token == "raw") return TfVariant::raw;
    if (token == "log") return TfVariant::log;
    throw Error("unknown tf_variant token \"" + token + "\"");
}

inline std::string to_string(IdfVariant v) {
    switch (v) {
        case IdfVariant::raw: return "raw";
        case IdfVariant::log: return "log";
        case IdfVariant::smooth: return "smooth";
    }
    throw Error("invalid IdfVariant");
}

inline IdfVariant parse_idf_variant(const std::string& token) {
    if (token == "raw") return IdfVariant::raw;
    if (token == "log") return IdfVariant::log;
    if (token == "smooth") return IdfVariant::smooth;
    throw Error("unknown idf_variant token \"" + token + "\"");
}

/// Term <-> dense index mapping with per-term document frequencies. Indices
/// are assigned in lexicographic term order, so a vocabulary built from the
/// same documents is identical across runs.
class Vocabulary {
public:
    Vocabulary() = default;

    Vocabulary(std::vector<std::string> terms_sorted, std::vector<std::uint32_t> df,
               std::uint32_t corpus_size)
        : terms_(std::move(terms_sorted)), df_(std::move(df)), corpus_size_(corpus_size) {
        if (terms_.size() != df_.size()) throw Error("Vocabulary: terms/df size mismatch");
        for (std::size_t i = 0; i + 1 < terms_.size(); ++i) {
            if (!(terms_[i] < terms_[i + 1])) throw Error("Vocabulary: terms not strictly sorted");
        }
        for (std::size_t i = 0; i < df_.size(); ++i) {
            if (df_[i] < 1 || df_[i] > corpus_size_)
                throw Error("Vocabulary: document frequency out of range for term \"" + terms_[i] + "\"");
        }
        index_.reserve(terms_.size());
        for (std::uint32_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
    }

    std::optional<std::uint32_t> index_of(const std::string& term) const {
        auto it = index_.find(term);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& term(std::uint32_t index) const { return terms_.at(index); }
    std::uint32_t df(std::uint32_t index) const { return df_.at(index); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(terms_.size()); }
    std::uint32_t corpus_size() const { return corpus_size_; }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<std::uint32_t>& document_frequency() const { return df_; }

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<std::uint32_t> df_;
    std::uint32_t corpus_size_ = 0;
};

inline Vocabulary build_vocabulary(const std::vector<TokenizedDocument>& docs) {
    if (docs.empty()) throw Error("build_vocabulary: no documents");
    std::map<std::string, std::uint32_t> df;  // ordered: index assignment is lexicographic
    for (const TokenizedDocument& doc : docs) {
        std::set<std::string> distinct(doc.tokens.begin(), doc.tokens.end());
        for (const std::string& term : distinct) ++df[term];
    }
    std::vector<std::string> terms;
    std::vector<std::uint32_t> counts;
    terms.reserve(df.size());
    counts.reserve(df.size());
    for (const auto& [term, count] : df) {
        terms.push_back(term);
        counts.push_back(count);
    }
    return Vocabulary(std::move(terms), std::move(counts), static_cast<std::uint32_t>(docs.size()));
}

/// Per-term frequency of the in-vocabulary tokens. Out-of-vocabulary tokens
/// are ignored.
inline SparseVector term_frequency(const std::vector<std::string>& tokens, const Vocabulary& vocab,
                                   TfVariant variant = TfVariant::raw) {
    std::unordered_map<std::uint32_t, std::uint32_t> counts;
    for (const std::string& token : tokens) {
        if (auto idx = vocab.index_of(token)) ++counts[*idx];
    }
    std::vector<SparseVector::Entry> entries;
    entries.reserve(counts.size());
    for (const auto& [index, count] : counts) {
        const double w = variant == TfVariant::raw ? static_cast<double>(count)
                                                   : 1.0 + std::log(static_cast<double>(count));
        entries.emplace_back(index, w);
    }
    return SparseVector(std::move(entries));
}

inline std::vector<double> inverse_document_frequency(const Vocabulary& vocab,
                                                      IdfVariant variant = IdfVariant::log) {
    const double n = static_cast<double>(vocab.corpus_size());
    std::vector<double> idf(vocab.size());
    for (std::uint32_t i = 0; i < vocab.size(); ++i) {
        const double df = static_cast<double>(vocab.df(i));
        switch (variant) {
            case IdfVariant::raw: idf[i] = n / df; break;
            case IdfVariant::log: idf[i] = std::log(n / df); break;
            case IdfVariant::smooth: idf[i] = std::log((1.0 + n) / (1.0 + df)) + 1.0; break;
        }
    }
    return idf;
}

/// Fitted weighting model: vocabulary, per-index IDF weights, and the
/// configuration they were computed under.
struct TfIdfModel {
    Vocabulary vocabulary;
    std::vector<double> idf;
    TfVariant tf_variant = TfVariant::raw;
    IdfVariant idf_variant = IdfVariant::log;
    bool normalize = true;
};

inline TfIdfModel fit_tfidf(const std::vector<TokenizedDocument>& docs,
                            TfVariant tf = TfVariant::raw, IdfVariant idf = IdfVariant::log,
                            bool normalize = true) {
    TfIdfModel model;
    model.vocabulary = build_vocabulary(docs);
    model.idf = inverse_document_frequency(model.vocabulary, idf);
    model.tf_variant = tf;
    model.idf_variant = idf;
    model.normalize = normalize;
    return model;
}

/// tf(t,d) * idf(t) per in-vocabulary term; unit Euclidean length when the
/// model says to normalize (an all-zero vector stays as-is).
inline SparseVector tfidf_vector(const std::vector<std::string>& tokens, const TfIdfModel& model) {
    SparseVector tf = term_frequency(tokens, model.vocabulary, model.tf_variant);
    std::vector<SparseVector::Entry> entries;
    entries.reserve(tf.size());
    for (const auto& [index, weight] : tf.entries()) {
        const double w = weight * model.idf[index];
        if (w != 0.0) entries.emplace_back(index, w);
    }
    SparseVector v(std::move(entries));
    if (model.normalize) v.normalize();
    return v;
}

}  // namespace docguard
