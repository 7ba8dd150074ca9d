// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "docguard/classifier.hpp"
#include "docguard/common.hpp"
#include "docguard/corpus.hpp"

namespace docguard {

enum class MutationOp { insert, delete_, exchange };
enum class MutationUnit { word, line, paragraph };

inline std::string to_string(MutationOp op) {
    switch (op) {
        case MutationOp::insert: return "insert";
        case MutationOp::delete_: return "delete";
        case MutationOp::exchange: return "exchange";
    }
    throw Error("to_string: bad MutationOp");
}

inline MutationOp parse_mutation_op(const std::string& s) {
    if (s == "insert") return MutationOp::insert;
    if (s == "delete") return MutationOp::delete_;
    if (s == "exchange") return MutationOp::exchange;
    throw Error("unknown mutation operation \"" + s + "\" (expected insert, delete or exchange)");
}

inline std::string to_string(MutationUnit unit) {
    switch (unit) {
        case MutationUnit::word: return "word";
        case MutationUnit::line: return "line";
        case MutationUnit::paragraph: return "paragraph";
    }
    throw Error("to_string: bad MutationUnit");
}

inline MutationUnit parse_mutation_unit(const std::string& s) {
    if (s == "word") return MutationUnit::word;
    if (s == "line") return MutationUnit::line;
    if (s == "paragraph") return MutationUnit::paragraph;
    throw Error("unknown mutation unit \"" + s + "\" (expected word, line or paragraph)");
}

/// Seeded document edit: ceil(rate x unit count) insertions, deletions, or
/// disjoint position swaps. Insertions draw uniformly from `pool`; an empty
/// pool falls back to duplicating the document's own units.
struct MutationSpec {
    MutationOp operation = MutationOp::exchange;
    double rate = 0.0;
    MutationUnit unit = MutationUnit::word;
    std::uint64_t seed = 0;
    std::vector<std::string> pool;
};

namespace detail {

inline std::vector<std::string> split_units(const std::string& text, MutationUnit unit) {
    std::vector<std::string> units;
    if (unit == MutationUnit::word) {
        std::string current;
        for (const char c : text) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                if (!current.empty()) units.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        if (!current.empty()) units.push_back(std::move(current));
        return units;
    }
    if (unit == MutationUnit::line) {
        std::string current;
        for (const char c : text) {
            if (c == '\n') {
                units.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(c);
            }
        }
        if (!current.empty()) units.push_back(std::move(current));
        return units;
    }
    // paragraph: blocks separated by one or more blank lines
    std::string current;
    std::size_t pending_newlines = 0;
    for (const char c : text) {
        if (c == '\n') {
            ++pending_newlines;
            continue;
        }
        if (pending_newlines >= 2 && !current.empty()) {
            units.push_back(std::move(current));
            current.clear();
        } else if (pending_newlines == 1 && !current.empty()) {
            current.push_back('\n');
        }
        pending_newlines = 0;
        current.push_back(c);
    }
    if (!current.empty()) units.push_back(std::move(current));
    return units;
}

inline std::string join_units(const std::vector<std::string>& units, MutationUnit unit) {
    const std::string sep = unit == MutationUnit::word ? " " : unit == MutationUnit::line ? "\n" : "\n\n";
    std::string out;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (i > 0) out += sep;
        out += units[i];
    }
    return out;
}

}  // namespace detail

/// Applies the mutation spec to the document text. Deterministic given spec.seed;
/// rate 0 and empty documents come back unchanged. Exchange swaps disjoint
/// pairs, so the pair count is additionally capped at floor(n / 2).
inline Document mutate_document(const Document& doc, const MutationSpec& spec) {
    if (spec.rate < 0.0 || spec.rate > 1.0)
        throw Error("mutate_document: rate must be in [0,1]");
    Document out = doc;
    std::vector<std::string> units = detail::split_units(doc.text, spec.unit);
    const std::size_t n = units.size();
    if (n == 0 || spec.rate == 0.0) return out;
    std::size_t m = static_cast<std::size_t>(std::ceil(spec.rate * static_cast<double>(n)));
    Rng rng(spec.seed);

    switch (spec.operation) {
        case MutationOp::insert: {
            const std::vector<std::string>& pool = spec.pool.empty() ? units : spec.pool;
            std::vector<std::string> additions;
            additions.reserve(m);
            for (std::size_t i = 0; i < m; ++i) additions.push_back(pool[rng.index(pool.size())]);
            for (std::string& addition : additions) {
                const std::size_t pos = rng.below(units.size() + 1);
                units.insert(units.begin() + static_cast<std::ptrdiff_t>(pos), std::move(addition));
            }
            break;
        }
        case MutationOp::delete_: {
            std::vector<std::size_t> victims = rng.sample_indices(n, m);
            std::sort(victims.begin(), victims.end(), std::greater<>());
            for (const std::size_t v : victims)
                units.erase(units.begin() + static_cast<std::ptrdiff_t>(v));
            break;
        }
        case MutationOp::exchange: {
            m = std::min(m, n / 2);
            std::vector<std::size_t> positions = rng.sample_indices(n, 2 * m);
            for (std::size_t i = 0; i < m; ++i)
                std::swap(units[positions[2 * i]], units[positions[2 * i + 1]]);
            break;
        }
    }
    out.text = detail::join_units(units, spec.unit);
    return out;
}

/// Fraction of documents whose predicted category survives the mutation.
/// Document i mutates under seed spec.seed + i, so per-document noise is
/// independent of corpus size and order of evaluation. An empty corpus is
/// vacuously stable.
inline double robustness(const AnyModel& model, const LabeledCorpus& corpus,
                         const MutationSpec& spec) {
    if (corpus.documents.empty()) return 1.0;
    std::size_t unchanged = 0;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        const Document& doc = corpus.documents[i];
        MutationSpec per_doc = spec;
        per_doc.seed = spec.seed + i;
        const Document mutated = mutate_document(doc, per_doc);
        if (predict_text(model, doc.text).category == predict_text(model, mutated.text).category)
            ++unchanged;
    }
    return static_cast<double>(unchanged) / static_cast<double>(corpus.documents.size());
}

}  // namespace docguard
