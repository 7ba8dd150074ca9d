// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "docguard/classifier.hpp"
#include "docguard/common.hpp"
#include "docguard/corpus.hpp"

namespace docguard {

/// Repeated train/test protocol: per run, per category, round(train_fraction
/// x category size) documents train (clamped so both sides are non-empty)
/// and the rest test. Run r draws its randomness from seed + r.
struct SplitPlan {
    double train_fraction = 0.8;
    int runs = 10;
    std::uint64_t seed = 0;
    bool stratified = true;
};

namespace detail {

inline std::size_t train_count(double fraction, std::size_t size) {
    auto n = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(size)));
    if (size >= 2) n = std::clamp<std::size_t>(n, 1, size - 1);
    return n;
}

}  // namespace detail

/// Deterministic given (plan.seed, run_index); document ids are sorted
/// before shuffling, so the partition does not depend on input order.
inline std::pair<LabeledCorpus, LabeledCorpus> split(const LabeledCorpus& corpus,
                                                     const SplitPlan& plan, int run_index) {
    if (plan.train_fraction <= 0.0 || plan.train_fraction >= 1.0)
        throw Error("split: train_fraction must be in (0,1)");
    Rng rng(plan.seed + static_cast<std::uint64_t>(run_index));

    std::vector<std::vector<const Document*>> groups;
    if (plan.stratified) {
        std::map<std::string, std::vector<const Document*>> by_category;
        for (const Document& doc : corpus.documents) {
            if (!doc.category) throw Error("split: unlabeled document \"" + doc.id + "\"");
            by_category[*doc.category].push_back(&doc);
        }
        for (auto& [category, docs] : by_category) {
            if (docs.size() < 2)
                throw Error("split: category \"" + category + "\" too small to stratify (" +
                            std::to_string(docs.size()) + " document)");
            groups.push_back(std::move(docs));
        }
    } else {
        std::vector<const Document*> all;
        for (const Document& doc : corpus.documents) all.push_back(&doc);
        if (all.size() < 2) throw Error("split: corpus too small to split");
        groups.push_back(std::move(all));
    }

    LabeledCorpus train, test;
    train.categories = corpus.categories;
    test.categories = corpus.categories;
    for (std::vector<const Document*>& docs : groups) {
        std::sort(docs.begin(), docs.end(),
                  [](const Document* a, const Document* b) { return a->id < b->id; });
        rng.shuffle(docs);
        const std::size_t n_train = detail::train_count(plan.train_fraction, docs.size());
        for (std::size_t i = 0; i < docs.size(); ++i)
            (i < n_train ? train : test).documents.push_back(*docs[i]);
    }
    auto by_id = [](const Document& a, const Document& b) { return a.id < b.id; };
    std::sort(train.documents.begin(), train.documents.end(), by_id);
    std::sort(test.documents.begin(), test.documents.end(), by_id);
    return {std::move(train), std::move(test)};
}

/// Fraction of exact category matches.
inline double accuracy(const std::vector<std::string>& predicted,
                       const std::vector<std::string>& truth) {
    if (predicted.size() != truth.size()) throw Error("accuracy: length mismatch");
    if (predicted.empty()) throw Error("accuracy: empty input");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

/// Mean over categories of TP / predicted-count; a category never predicted
/// contributes zero. Reported alongside accuracy, never used in comparisons.
inline double macro_precision(const std::vector<std::string>& predicted,
                              const std::vector<std::string>& truth,
                              const std::vector<std::string>& categories) {
    if (predicted.size() != truth.size()) throw Error("macro_precision: length mismatch");
    if (categories.empty()) throw Error("macro_precision: no categories");
    std::map<std::string, std::size_t> hit, total;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        ++total[predicted[i]];
        if (predicted[i] == truth[i]) ++hit[predicted[i]];
    }
    double sum = 0.0;
    for (const std::string& category : categories) {
        const auto t = total.find(category);
        if (t != total.end() && t->second > 0)
            sum += static_cast<double>(hit[category]) / static_cast<double>(t->second);
    }
    return sum / static_cast<double>(categories.size());
}

struct CellResult {
    std::vector<double> accuracies;  // one per run
    double mean_accuracy = 0.0;
    std::vector<double> macro_precisions;
    double mean_macro_precision = 0.0;
};

struct EvaluationReport {
    SplitPlan plan;
    std::vector<std::string> classifier_order;
    std::vector<std::string> dataset_order;
    std::map<std::string, ClassifierConfig> configs;
    std::map<std::string, std::map<std::string, CellResult>> cells;  // classifier -> dataset
};

/// Train/test every (classifier, dataset) cell over plan.runs seeded splits.
/// Vocabularies are rebuilt from each training split. Errors are annotated
/// with the cell and run they came from.
inline EvaluationReport run_experiment(
    const std::vector<std::pair<std::string, LabeledCorpus>>& corpora,
    const std::vector<std::pair<std::string, ClassifierConfig>>& classifiers, const SplitPlan& plan,
    const StopList& stoplist = {}) {
    if (corpora.empty()) throw Error("run_experiment: no corpora");
    if (classifiers.empty()) throw Error("run_experiment: no classifiers");
    if (plan.runs < 1) throw Error("run_experiment: runs must be >= 1");

    EvaluationReport report;
    report.plan = plan;
    for (const auto& [name, config] : classifiers) {
        report.classifier_order.push_back(name);
        report.configs[name] = config;
    }

    for (const auto& [dataset, corpus] : corpora) {
        report.dataset_order.push_back(dataset);

        // tokenize once per dataset; splits reuse the cache
        std::unordered_map<std::string, std::vector<std::string>> token_cache;
        token_cache.reserve(corpus.documents.size());
        for (const Document& doc : corpus.documents)
            token_cache.emplace(doc.id, tokenize(doc.text, stoplist));

        for (const auto& [name, config] : classifiers) {
            CellResult cell;
            for (int run = 0; run < plan.runs; ++run) {
                try {
                    auto [train_docs, test_docs] = split(corpus, plan, run);
                    TokenizedCorpus train;
                    train.categories = train_docs.categories;
                    for (const Document& doc : train_docs.documents) {
                        train.docs.push_back({doc.id, token_cache.at(doc.id)});
                        train.labels.push_back(*doc.category);
                    }
                    const AnyModel model = train_classifier(config, train);
                    std::vector<std::string> predicted, truth;
                    predicted.reserve(test_docs.documents.size());
                    for (const Document& doc : test_docs.documents) {
                        predicted.push_back(predict(model, token_cache.at(doc.id)).category);
                        truth.push_back(*doc.category);
                    }
                    cell.accuracies.push_back(accuracy(predicted, truth));
                    cell.macro_precisions.push_back(
                        macro_precision(predicted, truth, corpus.categories));
                } catch (const Error& e) {
                    throw Error("run_experiment: classifier \"" + name + "\", corpus \"" + dataset +
                                "\", run " + std::to_string(run) + ": " + e.what());
                }
            }
            cell.mean_accuracy = std::accumulate(cell.accuracies.begin(), cell.accuracies.end(), 0.0) /
                                 static_cast<double>(cell.accuracies.size());
            cell.mean_macro_precision =
                std::accumulate(cell.macro_precisions.begin(), cell.macro_precisions.end(), 0.0) /
                static_cast<double>(cell.macro_precisions.size());
            report.cells[name][dataset] = std::move(cell);
        }
    }
    return report;
}

/// Pairwise win/loss counts over datasets. wins(r,c) counts datasets where
/// the row classifier's mean strictly beats the column's; equal means count
/// as neither, so wins + losses never exceeds the dataset count and
/// wins(r,c) == losses(c,r) by construction.
struct ComparisonMatrix {
    std::vector<std::string> classifiers;
    std::map<std::string, std::map<std::string, int>> win_counts;

    int wins(const std::string& row, const std::string& col) const {
        return win_counts.at(row).at(col);
    }
    int losses(const std::string& row, const std::string& col) const {
        return win_counts.at(col).at(row);
    }
};

inline ComparisonMatrix compare(
    const std::map<std::string, std::map<std::string, double>>& mean_table,
    const std::vector<std::string>& classifier_order, const std::vector<std::string>& dataset_order) {
    ComparisonMatrix matrix;
    matrix.classifiers = classifier_order;
    for (const std::string& row : classifier_order) {
        const auto row_it = mean_table.find(row);
        if (row_it == mean_table.end()) throw Error("compare: missing classifier row \"" + row + "\"");
        for (const std::string& dataset : dataset_order) {
            if (!row_it->second.count(dataset))
                throw Error("compare: missing cell (" + row + ", " + dataset + ")");
        }
    }
    for (const std::string& row : classifier_order) {
        for (const std::string& col : classifier_order) {
            int wins = 0;
            if (row != col) {
                for (const std::string& dataset : dataset_order) {
                    if (mean_table.at(row).at(dataset) > mean_table.at(col).at(dataset)) ++wins;
                }
            }
            matrix.win_counts[row][col] = wins;
        }
    }
    return matrix;
}

inline ComparisonMatrix compare(const EvaluationReport& report) {
    std::map<std::string, std::map<std::string, double>> means;
    for (const auto& [name, row] : report.cells)
        for (const auto& [dataset, cell] : row) means[name][dataset] = cell.mean_accuracy;
    return compare(means, report.classifier_order, report.dataset_order);
}

// --- paired t-test annotation ------------------------------------------------

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double ibeta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double eps = 1e-15;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

inline double ibeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * ibeta_cf(a, b, x) / a;
    return 1.0 - front * ibeta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

/// Two-sided p-value of Student's t with `df` degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw Error("student_t_two_sided_p: df must be > 0");
    return detail::ibeta(df / 2.0, 0.5, df / (df + t * t));
}

/// Paired t-test per classifier pair over the per-run accuracies, pairing by
/// (dataset, run). Degenerate cases (fewer than two pairs, zero variance)
/// report p = 1. Annotation only; the comparison matrix stays plain
/// win/loss counts.
inline std::map<std::string, std::map<std::string, double>> paired_t_pvalues(
    const EvaluationReport& report) {
    std::map<std::string, std::map<std::string, double>> out;
    for (const std::string& row : report.classifier_order) {
        for (const std::string& col : report.classifier_order) {
            if (row == col) continue;
            std::vector<double> diffs;
            for (const std::string& dataset : report.dataset_order) {
                const CellResult& a = report.cells.at(row).at(dataset);
                const CellResult& b = report.cells.at(col).at(dataset);
                for (std::size_t i = 0; i < a.accuracies.size(); ++i)
                    diffs.push_back(a.accuracies[i] - b.accuracies[i]);
            }
            const std::size_t n = diffs.size();
            if (n < 2) {
                out[row][col] = 1.0;
                continue;
            }
            const double mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / n;
            double var = 0.0;
            for (const double d : diffs) var += (d - mean) * (d - mean);
            var /= static_cast<double>(n - 1);
            if (var == 0.0) {
                out[row][col] = mean == 0.0 ? 1.0 : 0.0;
                continue;
            }
            const double t = mean / std::sqrt(var / static_cast<double>(n));
            out[row][col] = student_t_two_sided_p(t, static_cast<double>(n - 1));
        }
    }
    return out;
}

// --- report serialization ------------------------------------------------

inline nlohmann::json classifier_config_to_json(const ClassifierConfig& config) {
    nlohmann::json j{{"kind", to_string(config.kind)},
                     {"tf_variant", to_string(config.tf_variant)},
                     {"idf_variant", to_string(config.idf_variant)},
                     {"normalize", config.normalize}};
    switch (config.kind) {
        case ClassifierKind::centroid: j["mode"] = to_string(config.mode); break;
        case ClassifierKind::naive_bayes: j["alpha"] = config.alpha; break;
        case ClassifierKind::knn: j["k"] = config.k; break;
    }
    return j;
}

/// Full JSON report: config echo, per-cell accuracies, win/loss matrix, and
/// t-test annotations. Serialization is deterministic, so identical inputs
/// produce byte-identical reports.
inline nlohmann::json report_to_json(const EvaluationReport& report, const ComparisonMatrix& matrix,
                                     const std::map<std::string, std::map<std::string, double>>& pvalues) {
    nlohmann::json j;
    j["config"] = {{"train_fraction", report.plan.train_fraction},
                   {"runs", report.plan.runs},
                   {"seed", report.plan.seed},
                   {"stratified", report.plan.stratified}};
    j["config"]["classifier_order"] = report.classifier_order;
    j["config"]["dataset_order"] = report.dataset_order;
    nlohmann::json configs;
    for (const auto& [name, config] : report.configs)
        configs[name] = classifier_config_to_json(config);
    j["config"]["classifiers"] = std::move(configs);

    nlohmann::json results;
    for (const auto& [name, row] : report.cells) {
        for (const auto& [dataset, cell] : row) {
            results[name][dataset] = {{"accuracies", cell.accuracies},
                                      {"mean_accuracy", cell.mean_accuracy},
                                      {"macro_precisions", cell.macro_precisions},
                                      {"mean_macro_precision", cell.mean_macro_precision}};
        }
    }
    j["results"] = std::move(results);

    nlohmann::json comparison;
    for (const std::string& row : matrix.classifiers) {
        for (const std::string& col : matrix.classifiers) {
            if (row == col) continue;
            comparison[row][col] = {{"wins", matrix.wins(row, col)},
                                    {"losses", matrix.losses(row, col)}};
            const auto r = pvalues.find(row);
            if (r != pvalues.end()) {
                const auto c = r->second.find(col);
                if (c != r->second.end()) comparison[row][col]["p_value"] = c->second;
            }
        }
    }
    j["comparison"] = std::move(comparison);
    return j;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace detail

/// Plain-text table of mean accuracies in percent: one row per classifier,
/// one column per dataset.
inline std::string accuracy_table_text(const EvaluationReport& report) {
    std::size_t name_width = std::string("algorithm").size();
    for (const std::string& name : report.classifier_order) name_width = std::max(name_width, name.size());
    std::vector<std::size_t> widths;
    for (const std::string& dataset : report.dataset_order) widths.push_back(std::max<std::size_t>(dataset.size(), 5));

    std::ostringstream out;
    out << detail::pad("algorithm", name_width);
    for (std::size_t c = 0; c < report.dataset_order.size(); ++c)
        out << " | " << detail::pad(report.dataset_order[c], widths[c]);
    out << "\n" << std::string(name_width, '-');
    for (std::size_t c = 0; c < report.dataset_order.size(); ++c)
        out << "-+-" << std::string(widths[c], '-');
    out << "\n";
    for (const std::string& name : report.classifier_order) {
        out << detail::pad(name, name_width);
        for (std::size_t c = 0; c < report.dataset_order.size(); ++c) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(1)
                 << 100.0 * report.cells.at(name).at(report.dataset_order[c]).mean_accuracy;
            out << " | " << detail::pad(cell.str(), widths[c]);
        }
        out << "\n";
    }
    return out.str();
}

/// Plain-text win/loss matrix; cell (row, col) reads "wins/losses" for the
/// row classifier against the column classifier.
inline std::string comparison_table_text(const ComparisonMatrix& matrix) {
    std::size_t name_width = 1;
    for (const std::string& name : matrix.classifiers) name_width = std::max(name_width, name.size());
    const std::size_t cell_width = std::max<std::size_t>(name_width, 5);

    std::ostringstream out;
    out << detail::pad("", name_width);
    for (const std::string& col : matrix.classifiers) out << " | " << detail::pad(col, cell_width);
    out << "\n" << std::string(name_width, '-');
    for (std::size_t c = 0; c < matrix.classifiers.size(); ++c) out << "-+-" << std::string(cell_width, '-');
    out << "\n";
    for (const std::string& row : matrix.classifiers) {
        out << detail::pad(row, name_width);
        for (const std::string& col : matrix.classifiers) {
            std::string cell = row == col ? "-"
                                          : std::to_string(matrix.wins(row, col)) + "/" +
                                                std::to_string(matrix.losses(row, col));
            out << " | " << detail::pad(cell, cell_width);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace docguard
