// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "docguard/classifier.hpp"
#include "docguard/common.hpp"

namespace docguard {

inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline nlohmann::json sparse_to_json(const SparseVector& v) {
    nlohmann::json index = nlohmann::json::array();
    nlohmann::json weight = nlohmann::json::array();
    for (const auto& [i, w] : v.entries()) {
        index.push_back(i);
        weight.push_back(w);
    }
    return {{"index", std::move(index)}, {"weight", std::move(weight)}};
}

inline SparseVector sparse_from_json(const nlohmann::json& j) {
    const auto& index = j.at("index");
    const auto& weight = j.at("weight");
    if (index.size() != weight.size()) throw Error("model file: index/weight length mismatch");
    std::vector<SparseVector::Entry> entries;
    entries.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i)
        entries.emplace_back(index[i].get<std::uint32_t>(), weight[i].get<double>());
    return SparseVector(std::move(entries));
}

inline nlohmann::json tfidf_to_json(const TfIdfModel& model) {
    return {{"tf_variant", to_string(model.tf_variant)},
            {"idf_variant", to_string(model.idf_variant)},
            {"normalize", model.normalize},
            {"terms", model.vocabulary.terms()},
            {"df", model.vocabulary.document_frequency()},
            {"corpus_size", model.vocabulary.corpus_size()}};
}

inline TfIdfModel tfidf_from_json(const nlohmann::json& j) {
    TfIdfModel model;
    model.tf_variant = parse_tf_variant(j.at("tf_variant").get<std::string>());
    model.idf_variant = parse_idf_variant(j.at("idf_variant").get<std::string>());
    model.normalize = j.at("normalize").get<bool>();
    model.vocabulary = Vocabulary(j.at("terms").get<std::vector<std::string>>(),
                                  j.at("df").get<std::vector<std::uint32_t>>(),
                                  j.at("corpus_size").get<std::uint32_t>());
    // IDF weights are a pure function of the vocabulary and variant; they are
    // recomputed rather than stored so the two can never disagree.
    model.idf = inverse_document_frequency(model.vocabulary, model.idf_variant);
    return model;
}

}  // namespace detail

/// Serialize any trained model to a single JSON document:
///   {format_version, kind, tfidf: {tf_variant, idf_variant, normalize,
///    terms, df, corpus_size}, params: {...}}
/// The terms array order defines the vector-space indices.
inline nlohmann::json model_to_json(const AnyModel& model) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["kind"] = to_string(kind_of(model));
    if (const auto* m = std::get_if<CentroidModel>(&model)) {
        j["tfidf"] = detail::tfidf_to_json(m->tfidf);
        nlohmann::json centroids;
        for (const auto& [category, centroid] : m->centroids)
            centroids[category] = detail::sparse_to_json(centroid);
        j["params"] = {{"mode", to_string(m->mode)}, {"centroids", std::move(centroids)}};
    } else if (const auto* m = std::get_if<NaiveBayesModel>(&model)) {
        j["tfidf"] = detail::tfidf_to_json(m->tfidf);
        j["params"] = {{"alpha", m->alpha},
                       {"log_priors", m->log_priors},
                       {"log_likelihoods", m->log_likelihoods}};
    } else {
        const auto& k = std::get<KnnModel>(model);
        j["tfidf"] = detail::tfidf_to_json(k.tfidf);
        nlohmann::json stored = nlohmann::json::array();
        for (std::size_t i = 0; i < k.stored.size(); ++i) {
            nlohmann::json item = detail::sparse_to_json(k.stored[i]);
            item["category"] = k.labels[i];
            stored.push_back(std::move(item));
        }
        j["params"] = {{"k", k.k}, {"categories", k.categories}, {"stored", std::move(stored)}};
    }
    return j;
}

inline AnyModel model_from_json(const nlohmann::json& j) {
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw Error("model file: format_version " + std::to_string(version) + " not supported (expected " +
                    std::to_string(kModelFormatVersion) + ")");
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json& params = j.at("params");
    if (kind == "centroid") {
        CentroidModel m;
        m.tfidf = detail::tfidf_from_json(j.at("tfidf"));
        m.mode = parse_centroid_mode(params.at("mode").get<std::string>());
        for (const auto& [category, centroid] : params.at("centroids").items())
            m.centroids.emplace(category, detail::sparse_from_json(centroid));
        if (m.centroids.empty()) throw Error("model file: centroid model with no centroids");
        return m;
    }
    if (kind == "nb") {
        NaiveBayesModel m;
        m.tfidf = detail::tfidf_from_json(j.at("tfidf"));
        m.alpha = params.at("alpha").get<double>();
        m.log_priors = params.at("log_priors").get<std::map<std::string, double>>();
        m.log_likelihoods =
            params.at("log_likelihoods").get<std::map<std::string, std::vector<double>>>();
        for (const auto& [category, ll] : m.log_likelihoods) {
            if (ll.size() != m.tfidf.vocabulary.size())
                throw Error("model file: log_likelihoods length mismatch for \"" + category + "\"");
        }
        return m;
    }
    if (kind == "knn") {
        KnnModel m;
        m.tfidf = detail::tfidf_from_json(j.at("tfidf"));
        m.k = params.at("k").get<int>();
        m.categories = params.at("categories").get<std::vector<std::string>>();
        for (const auto& item : params.at("stored")) {
            m.stored.push_back(detail::sparse_from_json(item));
            m.labels.push_back(item.at("category").get<std::string>());
        }
        if (m.k < 1 || static_cast<std::size_t>(m.k) > m.stored.size())
            throw Error("model file: k out of range");
        return m;
    }
    throw Error("model file: unknown classifier kind \"" + kind + "\"");
}

inline void save_model(const AnyModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write model file: " + path.string());
    out << model_to_json(model).dump(2) << '\n';
    if (!out) throw Error("failed writing model file: " + path.string());
}

inline AnyModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("malformed model file " + path.string() + " at byte " + std::to_string(e.byte) +
                    ": " + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed model file " + path.string() + ": " + e.what());
    }
}

}  // namespace docguard
