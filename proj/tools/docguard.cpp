// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
//
// docguard CLI: train, evaluate, classify, scan, mutate, gen-corpus.
// Exit codes: 0 success, 1 operational failure, 2 usage error,
// 3 scan found a Block or Quarantine verdict.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "docguard/docguard.hpp"

namespace {

struct GlobalFlags {
    std::uint64_t seed = 0;
    bool quiet = false;
};

struct TrainFlags {
    std::string corpus;
    std::string out;
    std::string kind = "centroid";
    std::string mode = "centroid-cosine";
    int k = 5;
    double alpha = 1.0;
    std::string tf = "raw";
    std::string idf = "log";
    bool no_normalize = false;
    std::string stoplist;
    bool strict_utf8 = false;
};

docguard::ClassifierConfig classifier_config(const TrainFlags& flags) {
    docguard::ClassifierConfig config;
    config.kind = docguard::parse_classifier_kind(flags.kind);
    config.mode = docguard::parse_centroid_mode(flags.mode);
    config.k = flags.k;
    config.alpha = flags.alpha;
    config.tf_variant = docguard::parse_tf_variant(flags.tf);
    config.idf_variant = docguard::parse_idf_variant(flags.idf);
    config.normalize = !flags.no_normalize;
    return config;
}

docguard::StopList load_stoplist_if_set(const std::string& path) {
    return path.empty() ? docguard::StopList{} : docguard::load_stoplist(path);
}

int run_train(const GlobalFlags& global, const TrainFlags& flags) {
    const docguard::ClassifierConfig config = classifier_config(flags);
    const docguard::StopList stoplist = load_stoplist_if_set(flags.stoplist);
    std::vector<std::string> skipped;
    const docguard::LabeledCorpus corpus =
        docguard::load_corpus(flags.corpus, flags.strict_utf8, &skipped);
    for (const std::string& path : skipped)
        std::cerr << "docguard: skipping non-UTF-8 file " << path << "\n";

    const auto started = std::chrono::steady_clock::now();
    const docguard::TokenizedCorpus tokenized = docguard::tokenize_corpus(corpus, stoplist);
    const docguard::AnyModel model = docguard::train_classifier(config, tokenized);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);

    docguard::save_model(model, flags.out);
    if (!global.quiet) {
        std::cout << "model: " << flags.out << "\n"
                  << "kind: " << flags.kind << "\n"
                  << "documents: " << tokenized.docs.size() << "\n"
                  << "vocabulary: " << docguard::tfidf_of(model).vocabulary.terms().size() << "\n";
        std::cout << "categories:";
        for (const std::string& category : tokenized.categories) std::cout << ' ' << category;
        std::cout << "\ntraining time: " << elapsed.count() << " s\n";
    }
    return 0;
}

struct EvaluateFlags {
    std::vector<std::string> corpora;     // name=dir or dir
    std::string classifiers = "centroid,nb,knn";
    std::string mode = "centroid-cosine";
    int k = 5;
    double alpha = 1.0;
    std::string tf = "raw";
    std::string idf = "log";
    bool no_normalize = false;
    std::string stoplist;
    bool strict_utf8 = false;
    double train_fraction = 0.8;
    int runs = 10;
    std::string json_out;
    std::string tables_out;
};

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int run_evaluate(const GlobalFlags& global, const EvaluateFlags& flags) {
    const docguard::StopList stoplist = load_stoplist_if_set(flags.stoplist);

    std::vector<std::pair<std::string, docguard::LabeledCorpus>> corpora;
    for (const std::string& entry : flags.corpora) {
        const std::size_t eq = entry.find('=');
        std::string name, dir;
        if (eq == std::string::npos) {
            dir = entry;
            name = std::filesystem::path(entry).filename().string();
            if (name.empty()) name = entry;
        } else {
            name = entry.substr(0, eq);
            dir = entry.substr(eq + 1);
        }
        std::vector<std::string> skipped;
        corpora.emplace_back(name, docguard::load_corpus(dir, flags.strict_utf8, &skipped));
        for (const std::string& path : skipped)
            std::cerr << "docguard: skipping non-UTF-8 file " << path << "\n";
    }

    std::vector<std::pair<std::string, docguard::ClassifierConfig>> classifiers;
    for (const std::string& token : split_list(flags.classifiers)) {
        TrainFlags shared;
        shared.kind = token;
        shared.mode = flags.mode;
        shared.k = flags.k;
        shared.alpha = flags.alpha;
        shared.tf = flags.tf;
        shared.idf = flags.idf;
        shared.no_normalize = flags.no_normalize;
        classifiers.emplace_back(token, classifier_config(shared));
    }
    if (classifiers.empty()) throw docguard::Error("evaluate: no classifiers named");

    docguard::SplitPlan plan;
    plan.train_fraction = flags.train_fraction;
    plan.runs = flags.runs;
    plan.seed = global.seed;

    const docguard::EvaluationReport report =
        docguard::run_experiment(corpora, classifiers, plan, stoplist);
    const docguard::ComparisonMatrix matrix = docguard::compare(report);
    const auto pvalues = docguard::paired_t_pvalues(report);

    if (!flags.json_out.empty()) {
        std::ofstream out(flags.json_out, std::ios::binary);
        if (!out) throw docguard::Error("cannot open " + flags.json_out);
        out << docguard::report_to_json(report, matrix, pvalues).dump(2) << '\n';
        if (!out) throw docguard::Error("write failed for " + flags.json_out);
    }

    std::ostringstream tables;
    tables << "seed=" << plan.seed << " runs=" << plan.runs
           << " train_fraction=" << plan.train_fraction << "\n\n"
           << "mean accuracy (%)\n"
           << docguard::accuracy_table_text(report) << "\nwins/losses\n"
           << docguard::comparison_table_text(matrix);
    if (!flags.tables_out.empty()) {
        std::ofstream out(flags.tables_out, std::ios::binary);
        if (!out) throw docguard::Error("cannot open " + flags.tables_out);
        out << tables.str();
        if (!out) throw docguard::Error("write failed for " + flags.tables_out);
    }
    if (!global.quiet) std::cout << tables.str();
    return 0;
}

struct ClassifyFlags {
    std::string model;
    std::string path;
    bool json = false;
};

int run_classify(const GlobalFlags& global, const ClassifyFlags& flags) {
    const docguard::AnyModel model = docguard::load_model(flags.model);
    std::ifstream in(flags.path, std::ios::binary);
    if (!in) throw docguard::Error("cannot open " + flags.path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const docguard::Prediction prediction = docguard::predict_text(model, buffer.str());

    if (flags.json) {
        nlohmann::json j{{"document", flags.path},
                         {"category", prediction.category},
                         {"margin", prediction.margin},
                         {"scores", prediction.scores}};
        std::cout << j.dump(2) << '\n';
    } else if (!global.quiet) {
        std::cout << "category: " << prediction.category << "\n"
                  << "margin: " << prediction.margin << "\nscores:\n";
        for (const auto& [category, score] : prediction.scores)
            std::cout << "  " << category << ' ' << score << "\n";
    }
    return 0;
}

struct ScanFlags {
    std::string model;
    std::string policy;
    std::string audit;
    std::vector<std::string> paths;
    std::string sender;
    std::string receiver;
    std::string format;
    std::string data_state = "in_transit";
    std::string receiver_zone = "external";
};

int run_scan(const GlobalFlags& global, const ScanFlags& flags) {
    const docguard::AnyModel model = docguard::load_model(flags.model);
    const docguard::PolicyTable policy = docguard::load_policy(flags.policy);

    docguard::TransferContext context;
    context.sender = flags.sender;
    context.receiver = flags.receiver;
    context.format = flags.format;
    context.timestamp = std::chrono::system_clock::now();
    context.data_state = docguard::parse_data_state(flags.data_state);
    context.receiver_zone = docguard::parse_receiver_zone(flags.receiver_zone);

    const std::vector<docguard::Verdict> verdicts =
        docguard::scan(flags.paths, model, policy, context, flags.audit);
    std::size_t blocking = 0;
    for (const docguard::Verdict& verdict : verdicts) {
        if (verdict.action == docguard::Action::block ||
            verdict.action == docguard::Action::quarantine)
            ++blocking;
        if (!global.quiet) {
            std::cout << docguard::to_string(verdict.action) << '\t' << verdict.category << '\t'
                      << docguard::to_string(verdict.level) << '\t' << verdict.document_id;
            if (!verdict.error.empty()) std::cout << "\terror: " << verdict.error;
            std::cout << "\n";
        }
    }
    if (!global.quiet)
        std::cout << "scanned " << verdicts.size() << " file(s), " << blocking << " blocking\n";
    return docguard::any_blocking(verdicts) ? 3 : 0;
}

struct MutateFlags {
    std::string in;
    std::string out;
    std::string op = "exchange";
    std::string unit = "word";
    double rate = 0.0;
    std::string pool;
};

int run_mutate(const GlobalFlags& global, const MutateFlags& flags) {
    std::ifstream in(flags.in, std::ios::binary);
    if (!in) throw docguard::Error("cannot open " + flags.in);
    std::ostringstream buffer;
    buffer << in.rdbuf();

    docguard::MutationSpec spec;
    spec.operation = docguard::parse_mutation_op(flags.op);
    spec.unit = docguard::parse_mutation_unit(flags.unit);
    spec.rate = flags.rate;
    spec.seed = global.seed;
    if (!flags.pool.empty()) {
        std::ifstream pool_in(flags.pool, std::ios::binary);
        if (!pool_in) throw docguard::Error("cannot open " + flags.pool);
        std::ostringstream pool_buffer;
        pool_buffer << pool_in.rdbuf();
        spec.pool = docguard::detail::split_units(pool_buffer.str(), spec.unit);
    }

    docguard::Document doc;
    doc.id = flags.in;
    doc.text = buffer.str();
    const docguard::Document mutated = docguard::mutate_document(doc, spec);

    if (flags.out.empty()) {
        std::cout << mutated.text << '\n';
    } else {
        std::ofstream out(flags.out, std::ios::binary);
        if (!out) throw docguard::Error("cannot open " + flags.out);
        out << mutated.text << '\n';
        if (!out) throw docguard::Error("write failed for " + flags.out);
        if (!global.quiet)
            std::cerr << "mutated " << flags.in << " -> " << flags.out << " (op=" << flags.op
                      << " unit=" << flags.unit << " rate=" << flags.rate << " seed=" << spec.seed
                      << ")\n";
    }
    return 0;
}

struct GenCorpusFlags {
    std::string out;
    int categories = 4;
    int docs = 25;
    int doc_length = 200;
    int topic_vocab = 50;
    int background_vocab = 100;
    double noise = 0.0;
};

int run_gen_corpus(const GlobalFlags& global, const GenCorpusFlags& flags) {
    docguard::SyntheticSpec spec;
    spec.categories = flags.categories;
    spec.docs_per_category = flags.docs;
    spec.doc_length = flags.doc_length;
    spec.topic_vocab_size = flags.topic_vocab;
    spec.background_vocab_size = flags.background_vocab;
    spec.noise = flags.noise;
    spec.seed = global.seed;

    const docguard::LabeledCorpus corpus = docguard::generate_synthetic_corpus(spec);
    docguard::write_corpus_tree(corpus, flags.out);

    nlohmann::json manifest{{"categories", spec.categories},
                            {"docs_per_category", spec.docs_per_category},
                            {"doc_length", spec.doc_length},
                            {"topic_vocab_size", spec.topic_vocab_size},
                            {"background_vocab_size", spec.background_vocab_size},
                            {"noise", spec.noise},
                            {"seed", spec.seed}};
    std::ofstream out(std::filesystem::path(flags.out) / "manifest.json", std::ios::binary);
    if (!out) throw docguard::Error("cannot write manifest under " + flags.out);
    out << manifest.dump(2) << '\n';
    if (!global.quiet)
        std::cout << "wrote " << corpus.documents.size() << " documents under " << flags.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"document classification and leakage-prevention toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "read options from a config file");

    GlobalFlags global;
    app.add_option("--seed", global.seed, "seed for every random choice")->capture_default_str();
    app.add_flag("--quiet", global.quiet, "suppress informational output");

    // enum-valued flags are validated at parse time so a bad value is a
    // usage error (exit 2), not an operational failure
    const CLI::IsMember kinds({"centroid", "nb", "knn"});
    const CLI::IsMember modes({"centroid-cosine", "mean-cosine"});
    const CLI::IsMember tf_variants({"raw", "log"});
    const CLI::IsMember idf_variants({"raw", "log", "smooth"});

    TrainFlags train;
    CLI::App* cmd_train = app.add_subcommand("train", "train a classifier on a corpus tree");
    cmd_train->add_option("--corpus", train.corpus, "corpus root directory")->required();
    cmd_train->add_option("--out", train.out, "model file to write")->required();
    cmd_train->add_option("--kind", train.kind, "classifier kind: centroid, nb or knn")
        ->check(kinds)
        ->capture_default_str();
    cmd_train->add_option("--mode", train.mode, "centroid scoring: centroid-cosine or mean-cosine")
        ->check(modes)
        ->capture_default_str();
    cmd_train->add_option("--k", train.k, "neighbor count for knn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_train->add_option("--alpha", train.alpha, "Laplace smoothing for nb")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_train->add_option("--tf", train.tf, "term frequency variant: raw or log")
        ->check(tf_variants)
        ->capture_default_str();
    cmd_train->add_option("--idf", train.idf, "idf variant: raw, log or smooth")
        ->check(idf_variants)
        ->capture_default_str();
    cmd_train->add_flag("--no-normalize", train.no_normalize, "skip unit-length normalization");
    cmd_train->add_option("--stoplist", train.stoplist, "stop-word file, one word per line");
    cmd_train->add_flag("--strict-utf8", train.strict_utf8, "fail on non-UTF-8 corpus files");

    EvaluateFlags evaluate;
    CLI::App* cmd_evaluate =
        app.add_subcommand("evaluate", "run the repeated train/test protocol and compare");
    cmd_evaluate->add_option("--corpus", evaluate.corpora, "corpus as name=dir (repeatable)")
        ->required();
    cmd_evaluate->add_option("--classifiers", evaluate.classifiers, "comma list of kinds")
        ->capture_default_str();
    cmd_evaluate->add_option("--mode", evaluate.mode, "centroid scoring mode")
        ->check(modes)
        ->capture_default_str();
    cmd_evaluate->add_option("--k", evaluate.k, "neighbor count for knn")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_evaluate->add_option("--alpha", evaluate.alpha, "Laplace smoothing for nb")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_evaluate->add_option("--tf", evaluate.tf, "term frequency variant")
        ->check(tf_variants)
        ->capture_default_str();
    cmd_evaluate->add_option("--idf", evaluate.idf, "idf variant")
        ->check(idf_variants)
        ->capture_default_str();
    cmd_evaluate->add_flag("--no-normalize", evaluate.no_normalize, "skip unit normalization");
    cmd_evaluate->add_option("--stoplist", evaluate.stoplist, "stop-word file");
    cmd_evaluate->add_flag("--strict-utf8", evaluate.strict_utf8, "fail on non-UTF-8 corpus files");
    const CLI::Validator open_unit_interval(
        [](std::string& input) -> std::string {
            double value = 0.0;
            try {
                value = std::stod(input);
            } catch (...) {
                return "not a number: " + input;
            }
            if (value <= 0.0 || value >= 1.0) return "must be strictly between 0 and 1";
            return "";
        },
        "FLOAT in (0,1)", "OpenUnitInterval");
    cmd_evaluate
        ->add_option("--train-fraction", evaluate.train_fraction, "train share per category")
        ->check(open_unit_interval)
        ->capture_default_str();
    cmd_evaluate->add_option("--runs", evaluate.runs, "number of seeded repetitions")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_evaluate->add_option("--json-out", evaluate.json_out, "write the JSON report here");
    cmd_evaluate->add_option("--tables-out", evaluate.tables_out, "write the text tables here");

    ClassifyFlags classify;
    CLI::App* cmd_classify = app.add_subcommand("classify", "classify one document");
    cmd_classify->add_option("--model", classify.model, "model file")->required();
    cmd_classify->add_option("path", classify.path, "document to classify")->required();
    cmd_classify->add_flag("--json", classify.json, "print the prediction as JSON");

    ScanFlags scan;
    CLI::App* cmd_scan = app.add_subcommand("scan", "classify files and apply a policy");
    cmd_scan->add_option("--model", scan.model, "model file")->required();
    cmd_scan->add_option("--policy", scan.policy, "policy file")->required();
    cmd_scan->add_option("--audit", scan.audit, "append JSON-line verdicts to this log");
    cmd_scan->add_option("--sender", scan.sender, "transfer sender");
    cmd_scan->add_option("--receiver", scan.receiver, "transfer receiver");
    cmd_scan->add_option("--format", scan.format, "format override (default: file extension)");
    cmd_scan->add_option("--data-state", scan.data_state, "in_use, in_transit or at_rest")
        ->check(CLI::IsMember({"in_use", "in_transit", "at_rest"}))
        ->capture_default_str();
    cmd_scan->add_option("--receiver-zone", scan.receiver_zone, "internal or external")
        ->check(CLI::IsMember({"internal", "external"}))
        ->capture_default_str();
    cmd_scan->add_option("paths", scan.paths, "files to scan");

    MutateFlags mutate;
    CLI::App* cmd_mutate = app.add_subcommand("mutate", "apply a seeded document mutation");
    cmd_mutate->add_option("--in", mutate.in, "input document")->required();
    cmd_mutate->add_option("--out", mutate.out, "output document (default: stdout)");
    cmd_mutate->add_option("--op", mutate.op, "insert, delete or exchange")
        ->check(CLI::IsMember({"insert", "delete", "exchange"}))
        ->capture_default_str();
    cmd_mutate->add_option("--unit", mutate.unit, "word, line or paragraph")
        ->check(CLI::IsMember({"word", "line", "paragraph"}))
        ->capture_default_str();
    cmd_mutate->add_option("--rate", mutate.rate, "mutated fraction of units")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd_mutate->add_option("--pool", mutate.pool, "unit pool file for insertions");

    GenCorpusFlags gen;
    CLI::App* cmd_gen = app.add_subcommand("gen-corpus", "generate a synthetic labeled corpus");
    cmd_gen->add_option("--out", gen.out, "output directory")->required();
    cmd_gen->add_option("--categories", gen.categories, "category count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gen->add_option("--docs", gen.docs, "documents per category")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gen->add_option("--doc-length", gen.doc_length, "words per document")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gen->add_option("--topic-vocab", gen.topic_vocab, "topic words per category")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gen->add_option("--background-vocab", gen.background_vocab, "shared background words")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd_gen->add_option("--noise", gen.noise, "background-word probability")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_train->parsed()) return run_train(global, train);
        if (cmd_evaluate->parsed()) return run_evaluate(global, evaluate);
        if (cmd_classify->parsed()) return run_classify(global, classify);
        if (cmd_scan->parsed()) return run_scan(global, scan);
        if (cmd_mutate->parsed()) return run_mutate(global, mutate);
        if (cmd_gen->parsed()) return run_gen_corpus(global, gen);
    } catch (const std::exception& e) {
        std::cerr << "docguard: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
