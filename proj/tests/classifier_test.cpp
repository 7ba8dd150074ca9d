// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "docguard/classifier.hpp"
#include "docguard/synthetic.hpp"
#include "oracles.hpp"

namespace dg = docguard;

namespace {

dg::TokenizedCorpus corpus_from(const std::vector<std::pair<std::string, std::string>>& items) {
    dg::TokenizedCorpus corpus;
    std::set<std::string> categories;
    for (std::size_t i = 0; i < items.size(); ++i) {
        corpus.docs.push_back({"doc" + std::to_string(i), dg::tokenize(items[i].second)});
        corpus.labels.push_back(items[i].first);
        categories.insert(items[i].first);
    }
    corpus.categories.assign(categories.begin(), categories.end());
    return corpus;
}

dg::TokenizedCorpus tokenize_synthetic(const dg::SyntheticSpec& spec) {
    return dg::tokenize_corpus(dg::generate_synthetic_corpus(spec));
}

dg::SparseVector vec(std::initializer_list<dg::SparseVector::Entry> entries) {
    return dg::SparseVector(std::vector<dg::SparseVector::Entry>(entries));
}

// random sparse vectors with non-negative weights (document-like)
dg::SparseVector random_vector(std::mt19937_64& gen, std::uint32_t dims, std::uint32_t max_fill) {
    std::vector<dg::SparseVector::Entry> entries;
    std::vector<std::uint32_t> indices(dims);
    for (std::uint32_t i = 0; i < dims; ++i) indices[i] = i;
    const std::uint32_t fill = 1 + gen() % max_fill;
    for (std::uint32_t i = 0; i < fill && i < dims; ++i) {
        std::swap(indices[i], indices[i + gen() % (dims - i)]);
        entries.emplace_back(indices[i], 0.05 + static_cast<double>(gen() % 1000) / 100.0);
    }
    return dg::SparseVector(std::move(entries));
}

oracle::DenseVector to_dense(const dg::SparseVector& v) {
    oracle::DenseVector out;
    for (const auto& [index, weight] : v.entries()) out["i" + std::to_string(index)] = weight;
    return out;
}

}  // namespace

// --- centroid ------------------------------------------------------------

TEST(Centroid, SingleDocCentroidIsUnitVector) {
    const dg::SparseVector v = vec({{0, 3.0}, {1, 4.0}});
    const auto model = dg::train_centroid_from_vectors({v}, {"only"}, dg::TfIdfModel{});
    const dg::SparseVector& centroid = model.centroids.at("only");
    EXPECT_NEAR(centroid.at(0), 0.6, 1e-12);
    EXPECT_NEAR(centroid.at(1), 0.8, 1e-12);
}

TEST(Centroid, MeanOfOrthogonalUnitDocs) {
    const auto model = dg::train_centroid_from_vectors({vec({{0, 1.0}}), vec({{1, 1.0}})},
                                                       {"cat", "cat"}, dg::TfIdfModel{});
    const dg::SparseVector& centroid = model.centroids.at("cat");
    EXPECT_DOUBLE_EQ(centroid.at(0), 0.5);
    EXPECT_DOUBLE_EQ(centroid.at(1), 0.5);
}

TEST(Centroid, ComponentsMatchBruteForceMean) {
    dg::SyntheticSpec spec;
    spec.seed = 41;
    spec.noise = 0.3;
    const auto corpus = tokenize_synthetic(spec);
    const auto tfidf = dg::fit_tfidf(corpus.docs);

    std::vector<dg::SparseVector> vectors;
    for (const auto& doc : corpus.docs) vectors.push_back(dg::tfidf_vector(doc.tokens, tfidf));
    const auto model = dg::train_centroid_from_vectors(vectors, corpus.labels, tfidf);

    for (const std::string& category : corpus.categories) {
        std::vector<oracle::DenseVector> members;
        for (std::size_t i = 0; i < vectors.size(); ++i)
            if (corpus.labels[i] == category) members.push_back(to_dense(vectors[i]));
        const oracle::DenseVector expected = oracle::centroid(members);
        const dg::SparseVector& actual = model.centroids.at(category);
        ASSERT_EQ(actual.size(), expected.size()) << category;
        for (const auto& [key, weight] : expected) {
            const auto index = static_cast<std::uint32_t>(std::stoul(key.substr(1)));
            EXPECT_NEAR(actual.at(index), weight, 1e-12) << category << " " << key;
        }
    }
}

TEST(Centroid, SelfCentroidScoresOne) {
    const auto model = dg::train_centroid_from_vectors(
        {vec({{0, 1.0}, {1, 1.0}}), vec({{2, 1.0}})}, {"aa", "bb"}, dg::TfIdfModel{});
    const auto p = model.predict_vector(model.centroids.at("aa"));
    EXPECT_EQ(p.category, "aa");
    EXPECT_NEAR(p.scores.at("aa"), 1.0, 1e-12);
}

TEST(Centroid, AllZeroVectorFallsBackToLexicographicTie) {
    const auto model = dg::train_centroid_from_vectors({vec({{0, 1.0}}), vec({{1, 1.0}})},
                                                       {"bb", "aa"}, dg::TfIdfModel{});
    const auto p = model.predict_vector(dg::SparseVector{});
    EXPECT_EQ(p.category, "aa");
    EXPECT_DOUBLE_EQ(p.margin, 0.0);
}

TEST(Centroid, MeanCosineEqualsBruteForcePairwiseMean) {
    // 50 random sparse vectors over 3 categories; identical check at both
    // the score level and against the dense-map reference.
    std::mt19937_64 gen(77);
    const std::vector<std::string> categories{"alpha", "beta", "gamma"};
    std::vector<dg::SparseVector> vectors;
    std::vector<std::string> labels;
    for (int i = 0; i < 50; ++i) {
        vectors.push_back(random_vector(gen, 30, 12));
        labels.push_back(categories[gen() % 3]);
    }
    const auto model =
        dg::train_centroid_from_vectors(vectors, labels, dg::TfIdfModel{}, dg::CentroidMode::mean_cosine);

    for (const dg::SparseVector& probe : vectors) {
        const auto p = model.predict_vector(probe);
        for (const std::string& category : categories) {
            std::vector<oracle::DenseVector> members;
            for (std::size_t i = 0; i < vectors.size(); ++i)
                if (labels[i] == category) members.push_back(to_dense(vectors[i]));
            const double expected = oracle::mean_pairwise_cosine(to_dense(probe), members);
            EXPECT_NEAR(p.scores.at(category), expected, 1e-9) << category;
        }
    }
}

TEST(Centroid, ArgmaxScaleInvariantInBothModes) {
    std::mt19937_64 gen(101);
    for (const auto mode : {dg::CentroidMode::centroid_cosine, dg::CentroidMode::mean_cosine}) {
        std::vector<dg::SparseVector> vectors;
        std::vector<std::string> labels;
        for (int i = 0; i < 30; ++i) {
            vectors.push_back(random_vector(gen, 20, 8));
            labels.push_back(i % 2 ? "one" : "two");
        }
        const auto model = dg::train_centroid_from_vectors(vectors, labels, dg::TfIdfModel{}, mode);
        for (int i = 0; i < 20; ++i) {
            const dg::SparseVector probe = random_vector(gen, 20, 8);
            dg::SparseVector scaled = probe;
            scaled.scale(7.25);
            EXPECT_EQ(model.predict_vector(probe).category, model.predict_vector(scaled).category);
        }
    }
}

TEST(Centroid, TightnessReflectsSpread) {
    const auto model = dg::train_centroid_from_vectors(
        {vec({{0, 1.0}}), vec({{0, 2.0}}), vec({{1, 1.0}}), vec({{2, 1.0}})},
        {"tight", "tight", "spread", "spread"}, dg::TfIdfModel{});
    EXPECT_NEAR(model.tightness("tight"), 1.0, 1e-12);   // same direction
    EXPECT_LT(model.tightness("spread"), 0.8);           // orthogonal members
    EXPECT_THROW(model.tightness("missing"), dg::Error);
}

TEST(Centroid, TrainValidatesShapes) {
    EXPECT_THROW(dg::train_centroid_from_vectors({vec({{0, 1.0}})}, {"a", "b"}, dg::TfIdfModel{}),
                 dg::Error);
    EXPECT_THROW(dg::train_centroid_from_vectors({}, {}, dg::TfIdfModel{}), dg::Error);
    EXPECT_THROW(dg::train_centroid_from_vectors({vec({{0, 1.0}})}, {""}, dg::TfIdfModel{}),
                 dg::Error);
}

TEST(Centroid, EmptyCategoryRejected) {
    auto corpus = corpus_from({{"aa", "wicket bowler"}, {"aa", "bowler crease"}});
    corpus.categories.push_back("bb");  // declared but memberless
    EXPECT_THROW(dg::train_centroid(corpus, dg::fit_tfidf(corpus.docs)), dg::Error);
}

// --- naive bayes -----------------------------------------------------------

TEST(NaiveBayes, LaplaceFormulaByHand) {
    // one category, vocabulary {aa,bb}, counts aa:3 bb:1, alpha 1
    // P(aa|c) = (3+1)/(4+1*2) = 4/6
    const auto corpus = corpus_from({{"c", "aa aa aa bb"}});
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs), 1.0);
    const auto aa = *model.tfidf.vocabulary.index_of("aa");
    const auto bb = *model.tfidf.vocabulary.index_of("bb");
    EXPECT_NEAR(std::exp(model.log_likelihoods.at("c")[aa]), 4.0 / 6.0, 1e-9);
    EXPECT_NEAR(std::exp(model.log_likelihoods.at("c")[bb]), 2.0 / 6.0, 1e-9);
}

TEST(NaiveBayes, SingleCategoryPriorIsOne) {
    const auto corpus = corpus_from({{"only", "aa bb"}, {"only", "bb cc"}});
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs));
    EXPECT_NEAR(std::exp(model.log_priors.at("only")), 1.0, 1e-12);
    EXPECT_EQ(model.predict({"zz"}).category, "only");
}

TEST(NaiveBayes, PriorsAndLikelihoodsAreDistributions) {
    dg::SyntheticSpec spec;
    spec.seed = 43;
    spec.noise = 0.4;
    spec.docs_per_category = 10;
    const auto corpus = tokenize_synthetic(spec);
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs));
    double prior_sum = 0.0;
    for (const auto& [category, log_prior] : model.log_priors) prior_sum += std::exp(log_prior);
    EXPECT_NEAR(prior_sum, 1.0, 1e-9);
    for (const auto& [category, ll] : model.log_likelihoods) {
        double sum = 0.0;
        for (const double l : ll) sum += std::exp(l);
        EXPECT_NEAR(sum, 1.0, 1e-9) << category;
    }
}

TEST(NaiveBayes, LikelihoodsMatchCountingOracle) {
    std::mt19937_64 gen(53);
    std::vector<std::pair<std::string, std::string>> items;
    std::vector<std::vector<std::string>> token_lists;
    std::vector<std::string> labels;
    for (int d = 0; d < 30; ++d) {
        std::string text;
        const std::size_t len = 3 + gen() % 15;
        for (std::size_t i = 0; i < len; ++i) text += "w" + std::to_string(gen() % 12) + " ";
        const std::string label = gen() % 2 ? "odd" : "even";
        items.emplace_back(label, text);
        token_lists.push_back(dg::tokenize(text));
        labels.push_back(label);
    }
    const auto corpus = corpus_from(items);
    const double alpha = 0.5;
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs), alpha);
    const oracle::NbOracle reference(token_lists, labels, alpha);

    for (const auto& [category, table] : reference.likelihoods) {
        for (const auto& [term, probability] : table) {
            const auto index = model.tfidf.vocabulary.index_of(term);
            ASSERT_TRUE(index.has_value()) << term;
            EXPECT_NEAR(std::exp(model.log_likelihoods.at(category)[*index]), probability, 1e-12)
                << category << " " << term;
        }
    }
    for (const auto& [category, prior] : reference.priors)
        EXPECT_NEAR(std::exp(model.log_priors.at(category)), prior, 1e-12) << category;
}

TEST(NaiveBayes, PredictionsMatchProductOracle) {
    dg::SyntheticSpec spec;
    spec.seed = 59;
    spec.noise = 0.5;
    spec.categories = 3;
    spec.docs_per_category = 17;
    spec.doc_length = 30;
    const auto corpus = tokenize_synthetic(spec);
    std::vector<std::vector<std::string>> token_lists;
    for (const auto& doc : corpus.docs) token_lists.push_back(doc.tokens);
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs));
    const oracle::NbOracle reference(token_lists, corpus.labels, 1.0);

    std::mt19937_64 gen(61);
    for (int round = 0; round < 60; ++round) {
        // short probe documents keep the oracle's probability product exact
        std::vector<std::string> probe;
        const std::size_t len = gen() % 20;
        const auto& source = token_lists[gen() % token_lists.size()];
        for (std::size_t i = 0; i < len && !source.empty(); ++i)
            probe.push_back(source[gen() % source.size()]);
        EXPECT_EQ(model.predict(probe).category, reference.predict(probe)) << "round " << round;
    }
}

TEST(NaiveBayes, EmptyTokenListFallsBackToPriors) {
    const auto corpus =
        corpus_from({{"big", "aa bb"}, {"big", "cc dd"}, {"big", "ee ff"}, {"small", "gg hh"}});
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs));
    EXPECT_EQ(model.predict({}).category, "big");
}

TEST(NaiveBayes, BagOfWordsOrderInvariance) {
    const auto corpus = corpus_from({{"aa", "xx yy xx"}, {"bb", "zz ww"}});
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs));
    const auto forward = model.predict({"xx", "yy", "zz"});
    const auto backward = model.predict({"zz", "yy", "xx"});
    EXPECT_EQ(forward.category, backward.category);
    EXPECT_EQ(forward.scores, backward.scores);
}

TEST(NaiveBayes, OovTokensDoNotShiftScores) {
    const auto corpus = corpus_from({{"aa", "xx yy"}, {"bb", "zz ww"}});
    const auto model = dg::train_nb(corpus, dg::fit_tfidf(corpus.docs));
    const auto plain = model.predict({"xx"});
    const auto with_oov = model.predict({"xx", "unseen", "tokens"});
    EXPECT_EQ(plain.scores, with_oov.scores);
}

TEST(NaiveBayes, RejectsNonPositiveAlpha) {
    const auto corpus = corpus_from({{"aa", "xx"}});
    const auto tfidf = dg::fit_tfidf(corpus.docs);
    EXPECT_THROW(dg::train_nb(corpus, tfidf, 0.0), dg::Error);
    EXPECT_THROW(dg::train_nb(corpus, tfidf, -1.0), dg::Error);
}

// --- knn -------------------------------------------------------------------

TEST(Knn, ExactMatchWinsAtKOne) {
    const auto corpus = corpus_from(
        {{"aa", "wicket bowler"}, {"bb", "racket serve"}, {"cc", "goal keeper"}});
    const auto model = dg::train_knn(corpus, dg::fit_tfidf(corpus.docs), 1);
    EXPECT_EQ(model.predict(dg::tokenize("racket serve")).category, "bb");
}

TEST(Knn, SymmetricVoteFallsBackToLexicographic) {
    const auto corpus = corpus_from({{"bb", "xx"}, {"aa", "yy"}});
    const auto model = dg::train_knn(corpus, dg::fit_tfidf(corpus.docs), 2);
    // equidistant from both stored docs: one vote each, equal summed
    const auto p = model.predict({"xx", "yy"});
    EXPECT_EQ(p.category, "aa");
    EXPECT_NEAR(p.margin, 0.0, 1e-12);
}

TEST(Knn, SimilarityTieGoesToSmallerTrainingIndex) {
    // two identical stored docs with different labels; k=1 must take index 0
    const auto corpus = corpus_from({{"zz_cat", "xx yy"}, {"aa_cat", "xx yy"}});
    const auto model = dg::train_knn(corpus, dg::fit_tfidf(corpus.docs), 1);
    EXPECT_EQ(model.predict({"xx", "yy"}).category, "zz_cat");
}

TEST(Knn, ScoresAreSummedSimilarities) {
    const auto corpus = corpus_from({{"aa", "xx"}, {"bb", "yy"}});
    const auto model = dg::train_knn(corpus, dg::fit_tfidf(corpus.docs), 2);
    const auto p = model.predict({"xx"});
    EXPECT_EQ(p.category, "aa");
    EXPECT_NEAR(p.scores.at("aa"), 1.0, 1e-12);
    EXPECT_NEAR(p.scores.at("bb"), 0.0, 1e-12);
    EXPECT_NEAR(p.margin, 1.0, 1e-12);
}

TEST(Knn, MatchesExhaustiveScanOracle) {
    dg::SyntheticSpec spec;
    spec.seed = 67;
    spec.noise = 0.5;
    spec.doc_length = 40;
    const auto corpus = tokenize_synthetic(spec);  // 4 x 25 documents
    const auto tfidf = dg::fit_tfidf(corpus.docs);
    const auto model = dg::train_knn(corpus, tfidf, 5);

    std::vector<oracle::DenseVector> stored;
    for (const auto& doc : corpus.docs) {
        dg::SparseVector v = dg::tfidf_vector(doc.tokens, tfidf);
        v.normalize();
        stored.push_back(to_dense(v));
    }
    for (const auto& doc : corpus.docs) {
        const auto probe_sparse = dg::tfidf_vector(doc.tokens, tfidf);
        const std::string expected =
            oracle::knn_predict(to_dense(probe_sparse), stored, corpus.labels, 5);
        EXPECT_EQ(model.predict(doc.tokens).category, expected) << doc.id;
    }
}

TEST(Knn, ValidatesK) {
    const auto corpus = corpus_from({{"aa", "xx"}, {"bb", "yy"}});
    const auto tfidf = dg::fit_tfidf(corpus.docs);
    EXPECT_THROW(dg::train_knn(corpus, tfidf, 0), dg::Error);
    EXPECT_THROW(dg::train_knn(corpus, tfidf, 3), dg::Error);
    EXPECT_NO_THROW(dg::train_knn(corpus, tfidf, 2));
}

// --- shared contract ---------------------------------------------------------

TEST(Classifier, AllThreeFitDisjointVocabulariesExactly) {
    dg::SyntheticSpec spec;
    spec.seed = 71;
    spec.noise = 0.0;
    const auto corpus = tokenize_synthetic(spec);
    for (const auto kind :
         {dg::ClassifierKind::centroid, dg::ClassifierKind::naive_bayes, dg::ClassifierKind::knn}) {
        dg::ClassifierConfig config;
        config.kind = kind;
        const dg::AnyModel model = dg::train_classifier(config, corpus);
        EXPECT_EQ(dg::kind_of(model), kind);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
            if (dg::predict(model, corpus.docs[i].tokens).category == corpus.labels[i]) ++correct;
        }
        EXPECT_EQ(correct, corpus.docs.size()) << dg::to_string(kind);
    }
}

TEST(Classifier, MarginIsTopMinusSecondAndNonNegative) {
    dg::SyntheticSpec spec;
    spec.seed = 73;
    spec.noise = 0.6;
    spec.docs_per_category = 8;
    const auto corpus = tokenize_synthetic(spec);
    for (const auto kind :
         {dg::ClassifierKind::centroid, dg::ClassifierKind::naive_bayes, dg::ClassifierKind::knn}) {
        dg::ClassifierConfig config;
        config.kind = kind;
        const dg::AnyModel model = dg::train_classifier(config, corpus);
        for (const auto& doc : corpus.docs) {
            const dg::Prediction p = dg::predict(model, doc.tokens);
            std::vector<double> scores;
            for (const auto& [category, score] : p.scores) scores.push_back(score);
            std::sort(scores.rbegin(), scores.rend());
            ASSERT_GE(scores.size(), 2u);
            EXPECT_NEAR(p.margin, scores[0] - scores[1], 1e-12);
            EXPECT_GE(p.margin, 0.0);
        }
    }
}

TEST(Classifier, ArgmaxTieBreakIsLexicographic) {
    const auto p = dg::prediction_from_scores({{"bb", 1.0}, {"aa", 1.0}, {"cc", 0.5}});
    EXPECT_EQ(p.category, "aa");
    EXPECT_DOUBLE_EQ(p.margin, 0.0);
}

TEST(Classifier, PredictTextMatchesPredictOnTokens) {
    const auto corpus = corpus_from({{"aa", "wicket bowler over"}, {"bb", "racket serve ace"}});
    dg::ClassifierConfig config;
    const dg::AnyModel model = dg::train_classifier(config, corpus);
    const std::string text = "The Bowler, wicket!";
    EXPECT_EQ(dg::predict_text(model, text).category,
              dg::predict(model, dg::tokenize(text)).category);
}
