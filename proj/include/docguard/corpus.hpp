// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "docguard/common.hpp"
#include "docguard/context.hpp"

namespace docguard {

/// One raw document. The category is present for training data and absent for
/// material that is only being classified; the transfer context rides along
/// when the document came in through the scanning path.
struct Document {
    std::string id;  // unique within a corpus
    std::string text;
    std::optional<std::string> category;
    std::optional<TransferContext> context;
};

struct TokenizedDocument {
    std::string id;
    std::vector<std::string> tokens;
};

/// Lowercase words removed during tokenization. Entries never contain
/// whitespace; insert() enforces both.
class StopList {
public:
    StopList() = default;

    void insert(std::string word) {
        for (char& c : word) {
            if (std::isspace(static_cast<unsigned char>(c)))
                throw Error("stop-list entry contains whitespace: \"" + word + "\"");
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
        if (!word.empty()) words_.insert(std::move(word));
    }

    bool contains(const std::string& word) const { return words_.count(word) != 0; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

private:
    std::unordered_set<std::string> words_;
};

struct LabeledCorpus {
    std::vector<Document> documents;
    std::vector<std::string> categories;  // sorted, distinct
};

/// Structural UTF-8 validation: correct continuation bytes, no overlong
/// encodings, no surrogates, nothing above U+10FFFF.
inline bool utf8_valid(std::string_view bytes) {
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        if (b0 < 0x80) {
            ++i;
            continue;
        }
        int len;
        std::uint32_t cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (int j = 1; j < len; ++j) {
            const unsigned char bj = static_cast<unsigned char>(bytes[i + j]);
            if ((bj & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (bj & 0x3F);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && cp < 0x10000) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        if (cp > 0x10FFFF) return false;
        i += len;
    }
    return true;
}

/// Lowercase the text, split on every non-alphanumeric byte, drop tokens
/// shorter than two characters and stop-list members. Order is preserved.
/// Alphanumeric means ASCII [a-z0-9]; anything else, multibyte sequences
/// included, acts as a separator.
inline std::vector<std::string> tokenize(std::string_view text, const StopList& stoplist = {}) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2 && !stoplist.contains(current)) tokens.push_back(current);
        current.clear();
    };
    for (const char ch : text) {
        const unsigned char c = static_cast<unsigned char>(ch);
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            current.push_back(ch);
        } else if (c >= 'A' && c <= 'Z') {
            current.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

/// Stop-list file format: one token per line, lines beginning with '#' and
/// blank lines ignored, tokens lowercased and deduplicated.
inline StopList load_stoplist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stop-list file: " + path.string());
    StopList list;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // trim surrounding whitespace (covers CRLF endings too)
        std::size_t b = 0, e = line.size();
        while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
        std::string token = line.substr(b, e - b);
        if (token.empty() || token.front() == '#') continue;
        for (const char c : token) {
            if (std::isspace(static_cast<unsigned char>(c)))
                throw Error(path.string() + ":" + std::to_string(line_no) +
                            ": stop-list token contains whitespace: \"" + token + "\"");
        }
        list.insert(std::move(token));
    }
    return list;
}

/// Load a corpus laid out as <root>/<category>/<file>. Every immediate
/// subdirectory names a category; every regular file inside becomes one
/// document with id "<category>/<filename>". Files must be UTF-8; offenders
/// are fatal when strict_utf8 is set, otherwise skipped and reported through
/// `skipped` when given.
inline LabeledCorpus load_corpus(const std::filesystem::path& root, bool strict_utf8 = false,
                                 std::vector<std::string>* skipped = nullptr) {
    namespace fs = std::filesystem;
    if (!fs::exists(root)) throw Error("corpus root does not exist: " + root.string());
    if (!fs::is_directory(root)) throw Error("corpus root is not a directory: " + root.string());

    std::vector<std::string> categories;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) categories.push_back(entry.path().filename().string());
    }
    if (categories.empty()) throw Error("empty corpus: no category directories under " + root.string());
    std::sort(categories.begin(), categories.end());

    LabeledCorpus corpus;
    corpus.categories = categories;
    for (const std::string& category : categories) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(root / category)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        std::size_t loaded = 0;
        for (const fs::path& file : files) {
            std::ifstream in(file, std::ios::binary);
            if (!in) throw Error("cannot open corpus file: " + file.string());
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string text = buf.str();
            if (!utf8_valid(text)) {
                if (strict_utf8) throw Error("not valid UTF-8: " + file.string());
                if (skipped) skipped->push_back(file.string());
                continue;
            }
            Document doc;
            doc.id = category + "/" + file.filename().string();
            doc.text = std::move(text);
            doc.category = category;
            corpus.documents.push_back(std::move(doc));
            ++loaded;
        }
        if (loaded == 0) throw Error("empty category \"" + category + "\" under " + root.string());
    }
    return corpus;
}

/// Tokenized, fully labeled view of a corpus, ready for training.
struct TokenizedCorpus {
    std::vector<TokenizedDocument> docs;
    std::vector<std::string> labels;      // parallel to docs
    std::vector<std::string> categories;  // sorted, distinct
};

inline TokenizedCorpus tokenize_corpus(const LabeledCorpus& corpus, const StopList& stoplist = {}) {
    TokenizedCorpus out;
    out.categories = corpus.categories;
    out.docs.reserve(corpus.documents.size());
    out.labels.reserve(corpus.documents.size());
    for (const Document& doc : corpus.documents) {
        if (!doc.category) throw Error("unlabeled document \"" + doc.id + "\"");
        out.docs.push_back({doc.id, tokenize(doc.text, stoplist)});
        out.labels.push_back(*doc.category);
    }
    return out;
}

}  // namespace docguard
