// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "docguard/common.hpp"
#include "docguard/corpus.hpp"

namespace docguard {

/// Labeled corpus generator with a known signal structure: every category
/// owns a disjoint topic vocabulary, and each document position is filled
/// i.i.d. from the shared background pool with probability `noise`, from
/// the category's topic pool otherwise.
struct SyntheticSpec {
    int categories = 4;
    int docs_per_category = 25;
    int doc_length = 200;
    int topic_vocab_size = 50;
    int background_vocab_size = 100;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string zero_pad(std::size_t value, std::size_t width) {
    std::string s = std::to_string(value);
    return s.size() >= width ? s : std::string(width - s.size(), '0') + s;
}

inline std::size_t digits(std::size_t max_value) {
    std::size_t d = 1;
    while (max_value >= 10) {
        max_value /= 10;
        ++d;
    }
    return d;
}

inline void validate(const SyntheticSpec& spec) {
    if (spec.categories < 1) throw Error("generate_synthetic_corpus: categories must be >= 1");
    if (spec.docs_per_category < 1)
        throw Error("generate_synthetic_corpus: docs_per_category must be >= 1");
    if (spec.doc_length < 1) throw Error("generate_synthetic_corpus: doc_length must be >= 1");
    if (spec.topic_vocab_size < 1)
        throw Error("generate_synthetic_corpus: topic_vocab_size must be >= 1");
    if (spec.background_vocab_size < 1)
        throw Error("generate_synthetic_corpus: background_vocab_size must be >= 1");
    if (spec.noise < 0.0 || spec.noise > 1.0)
        throw Error("generate_synthetic_corpus: noise must be in [0,1]");
}

}  // namespace detail

/// Category names are fixed-width ("cat0".."cat3", or "cat00".. once ten or
/// more), so lexicographic order equals generation order and topic words
/// below are prefix-unambiguous.
inline std::vector<std::string> synthetic_category_names(const SyntheticSpec& spec) {
    detail::validate(spec);
    const std::size_t width = detail::digits(static_cast<std::size_t>(spec.categories) - 1);
    std::vector<std::string> names;
    for (int c = 0; c < spec.categories; ++c)
        names.push_back("cat" + detail::zero_pad(static_cast<std::size_t>(c), width));
    return names;
}

/// Topic words are "<category>t<j>": single alphanumeric tokens the
/// tokenizer keeps whole, disjoint across categories by the fixed-width
/// category prefix.
inline std::vector<std::string> synthetic_topic_pool(const SyntheticSpec& spec,
                                                     int category_index) {
    detail::validate(spec);
    if (category_index < 0 || category_index >= spec.categories)
        throw Error("synthetic_topic_pool: category index out of range");
    const std::string name = synthetic_category_names(spec)[static_cast<std::size_t>(category_index)];
    std::vector<std::string> pool;
    for (int j = 0; j < spec.topic_vocab_size; ++j) pool.push_back(name + "t" + std::to_string(j));
    return pool;
}

/// Background words "bg<j>" are shared by every category.
inline std::vector<std::string> synthetic_background_pool(const SyntheticSpec& spec) {
    detail::validate(spec);
    std::vector<std::string> pool;
    for (int j = 0; j < spec.background_vocab_size; ++j) pool.push_back("bg" + std::to_string(j));
    return pool;
}

/// Deterministic per seed; document ids follow the on-disk corpus layout
/// ("<category>/doc<index>.txt"), so a generated corpus written with
/// write_corpus_tree loads back with identical ids.
inline LabeledCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
    detail::validate(spec);
    const std::vector<std::string> categories = synthetic_category_names(spec);
    const std::vector<std::string> background = synthetic_background_pool(spec);
    const std::size_t doc_width = detail::digits(static_cast<std::size_t>(spec.docs_per_category) - 1);

    LabeledCorpus corpus;
    corpus.categories = categories;
    Rng rng(spec.seed);
    for (int c = 0; c < spec.categories; ++c) {
        const std::vector<std::string> topic = synthetic_topic_pool(spec, c);
        for (int d = 0; d < spec.docs_per_category; ++d) {
            std::string text;
            for (int w = 0; w < spec.doc_length; ++w) {
                const std::vector<std::string>& pool = rng.unit() < spec.noise ? background : topic;
                if (w > 0) text += ' ';
                text += pool[rng.index(pool.size())];
            }
            Document doc;
            doc.id = categories[static_cast<std::size_t>(c)] + "/doc" +
                     detail::zero_pad(static_cast<std::size_t>(d), doc_width) + ".txt";
            doc.text = std::move(text);
            doc.category = categories[static_cast<std::size_t>(c)];
            corpus.documents.push_back(std::move(doc));
        }
    }
    return corpus;
}

/// Writes one directory per category under root, one text file per document
/// (document text plus a trailing newline). Root may exist; files are
/// overwritten. The tree round-trips through load_corpus.
inline void write_corpus_tree(const LabeledCorpus& corpus, const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw Error("write_corpus_tree: cannot create " + root.string() + ": " + ec.message());
    for (const Document& doc : corpus.documents) {
        if (!doc.category) throw Error("write_corpus_tree: unlabeled document \"" + doc.id + "\"");
        const std::size_t slash = doc.id.find('/');
        const std::string filename =
            slash == std::string::npos ? doc.id + ".txt" : doc.id.substr(slash + 1);
        const fs::path dir = root / *doc.category;
        fs::create_directories(dir, ec);
        if (ec) throw Error("write_corpus_tree: cannot create " + dir.string() + ": " + ec.message());
        std::ofstream out(dir / filename, std::ios::binary);
        if (!out) throw Error("write_corpus_tree: cannot open " + (dir / filename).string());
        out << doc.text << '\n';
        if (!out) throw Error("write_corpus_tree: write failed for " + (dir / filename).string());
    }
}

}  // namespace docguard
