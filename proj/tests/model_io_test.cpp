// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "docguard/classifier.hpp"
#include "docguard/model_io.hpp"
#include "docguard/synthetic.hpp"
#include "test_util.hpp"

namespace dg = docguard;
using testutil::TempDir;
using testutil::read_file;
using testutil::write_file;

namespace {

dg::TokenizedCorpus training_corpus() {
    dg::SyntheticSpec spec;
    spec.seed = 83;
    spec.noise = 0.4;
    spec.docs_per_category = 12;
    spec.doc_length = 60;
    return dg::tokenize_corpus(dg::generate_synthetic_corpus(spec));
}

std::vector<std::vector<std::string>> random_probes(const dg::TokenizedCorpus& corpus, int count) {
    std::mt19937_64 gen(89);
    std::vector<std::vector<std::string>> probes;
    for (int i = 0; i < count; ++i) {
        const auto& source = corpus.docs[gen() % corpus.docs.size()].tokens;
        std::vector<std::string> probe;
        const std::size_t len = 1 + gen() % 40;
        for (std::size_t j = 0; j < len; ++j) probe.push_back(source[gen() % source.size()]);
        if (gen() % 4 == 0) probe.push_back("outofvocabulary" + std::to_string(i));
        probes.push_back(std::move(probe));
    }
    return probes;
}

dg::ClassifierConfig config_for(dg::ClassifierKind kind) {
    dg::ClassifierConfig config;
    config.kind = kind;
    if (kind == dg::ClassifierKind::centroid) config.mode = dg::CentroidMode::mean_cosine;
    if (kind == dg::ClassifierKind::naive_bayes) config.alpha = 0.7;
    if (kind == dg::ClassifierKind::knn) config.k = 3;
    return config;
}

}  // namespace

TEST(ModelIo, RoundTripPreservesPredictionsForEveryKind) {
    const auto corpus = training_corpus();
    const auto probes = random_probes(corpus, 100);
    TempDir dir("model_io");
    for (const auto kind :
         {dg::ClassifierKind::centroid, dg::ClassifierKind::naive_bayes, dg::ClassifierKind::knn}) {
        const dg::AnyModel trained = dg::train_classifier(config_for(kind), corpus);
        const auto path = (dir / (dg::to_string(kind) + ".json")).string();
        dg::save_model(trained, path);
        const dg::AnyModel loaded = dg::load_model(path);
        EXPECT_EQ(dg::kind_of(loaded), kind);
        for (const auto& probe : probes) {
            const dg::Prediction a = dg::predict(trained, probe);
            const dg::Prediction b = dg::predict(loaded, probe);
            EXPECT_EQ(a.category, b.category);
            ASSERT_EQ(a.scores.size(), b.scores.size());
            for (const auto& [category, score] : a.scores)
                EXPECT_NEAR(b.scores.at(category), score, 1e-12) << dg::to_string(kind);
        }
    }
}

TEST(ModelIo, SavedFileIsByteStableAcrossResaves) {
    const auto corpus = training_corpus();
    TempDir dir("model_io");
    const dg::AnyModel model = dg::train_classifier(config_for(dg::ClassifierKind::centroid), corpus);
    dg::save_model(model, (dir / "a.json").string());
    dg::save_model(dg::load_model((dir / "a.json").string()), (dir / "b.json").string());
    EXPECT_EQ(read_file(dir / "a.json"), read_file(dir / "b.json"));
}

TEST(ModelIo, RetrainingIsByteIdentical) {
    const auto corpus = training_corpus();
    TempDir dir("model_io");
    for (const auto kind :
         {dg::ClassifierKind::centroid, dg::ClassifierKind::naive_bayes, dg::ClassifierKind::knn}) {
        dg::save_model(dg::train_classifier(config_for(kind), corpus), (dir / "x.json").string());
        dg::save_model(dg::train_classifier(config_for(kind), corpus), (dir / "y.json").string());
        EXPECT_EQ(read_file(dir / "x.json"), read_file(dir / "y.json")) << dg::to_string(kind);
    }
}

TEST(ModelIo, VersionMismatchIsRejected) {
    const auto corpus = training_corpus();
    TempDir dir("model_io");
    const auto path = (dir / "m.json").string();
    dg::save_model(dg::train_classifier(config_for(dg::ClassifierKind::naive_bayes), corpus), path);
    std::string text = read_file(path);
    const std::string needle = "\"format_version\": 1";
    const auto pos = text.find(needle);
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, needle.size(), "\"format_version\": 99");
    write_file(dir / "m.json", text);
    try {
        dg::load_model(path);
        FAIL() << "expected a version error";
    } catch (const dg::Error& e) {
        EXPECT_NE(std::string(e.what()).find("version"), std::string::npos) << e.what();
    }
}

TEST(ModelIo, TruncatedFileNamesByteOffset) {
    const auto corpus = training_corpus();
    TempDir dir("model_io");
    const auto path = (dir / "m.json").string();
    dg::save_model(dg::train_classifier(config_for(dg::ClassifierKind::centroid), corpus), path);
    const std::string text = read_file(path);
    write_file(dir / "m.json", text.substr(0, text.size() / 2));
    try {
        dg::load_model(path);
        FAIL() << "expected a malformed-file error";
    } catch (const dg::Error& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("malformed"), std::string::npos) << what;
        EXPECT_NE(what.find("byte"), std::string::npos) << what;
    }
}

TEST(ModelIo, UnknownKindIsRejected) {
    const auto corpus = training_corpus();
    TempDir dir("model_io");
    const auto path = (dir / "m.json").string();
    dg::save_model(dg::train_classifier(config_for(dg::ClassifierKind::knn), corpus), path);
    std::string text = read_file(path);
    const std::string needle = "\"kind\": \"knn\"";
    const auto pos = text.find(needle);
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, needle.size(), "\"kind\": \"c45\"");
    write_file(dir / "m.json", text);
    try {
        dg::load_model(path);
        FAIL() << "expected an unknown-kind error";
    } catch (const dg::Error& e) {
        EXPECT_NE(std::string(e.what()).find("c45"), std::string::npos) << e.what();
    }
}

TEST(ModelIo, MissingFileFails) {
    EXPECT_THROW(dg::load_model("/nonexistent/model.json"), dg::Error);
}
