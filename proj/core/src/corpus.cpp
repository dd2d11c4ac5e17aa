#include "topicnet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "topicnet/textprep.hpp"

namespace topicnet {
namespace {

using nlohmann::json;

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Strips a trailing '#' comment and surrounding whitespace.
std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return trim(pos == std::string::npos ? line : line.substr(0, pos));
}

std::ifstream open_or_throw(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(std::string("corpus: cannot open ") + what +
                                 " file \"" + path + "\"");
    return in;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("unreadable file \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

std::vector<int> Corpus::years() const {
    std::vector<int> out;
    out.reserve(documents.size());
    for (const auto& d : documents) out.push_back(d.year);
    return out;
}

SynonymMap::SynonymMap(std::map<std::string, std::string> entries)
    : entries_(std::move(entries)) {
    for (const auto& [key, value] : entries_) {
        if (key == value) continue;
        auto it = entries_.find(value);
        if (it != entries_.end() && it->second != value)
            throw std::runtime_error(
                "corpus: synonym chain \"" + key + "\" -> \"" + value +
                "\" -> \"" + it->second + "\"; canonical forms must be fixed points");
    }
}

const std::string& SynonymMap::canonical(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? key : it->second;
}

Corpus load_corpus(const std::string& manifest_path) {
    std::ifstream in = open_or_throw(manifest_path, "manifest");
    auto base_dir = std::filesystem::path(manifest_path).parent_path();

    Corpus corpus;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("corpus: manifest line " +
                                     std::to_string(line_no) +
                                     " is not a valid record: " + e.what());
        }

        Document doc;
        if (!record.contains("id") || !record["id"].is_string())
            throw std::runtime_error("corpus: manifest line " +
                                     std::to_string(line_no) +
                                     " is missing a string \"id\"");
        doc.id = record["id"].get<std::string>();
        if (!record.contains("year") || !record["year"].is_number_integer())
            throw std::runtime_error("corpus: record \"" + doc.id +
                                     "\" is missing an integer year");
        doc.year = record["year"].get<int>();
        if (record.contains("title")) doc.title = record["title"].get<std::string>();

        if (record.contains("text")) {
            doc.body = record["text"].get<std::string>();
        } else if (record.contains("text_path")) {
            auto path = std::filesystem::path(record["text_path"].get<std::string>());
            if (path.is_relative()) path = base_dir / path;
            try {
                doc.body = read_file(path);
            } catch (const std::exception& e) {
                throw std::runtime_error("corpus: record \"" + doc.id +
                                         "\": " + e.what());
            }
        } else {
            throw std::runtime_error("corpus: record \"" + doc.id +
                                     "\" supplies neither text nor text_path");
        }
        if (trim(doc.body).empty())
            throw std::runtime_error("corpus: record \"" + doc.id +
                                     "\" has an empty body");

        if (record.contains("keywords")) {
            for (const auto& kw : record["keywords"])
                doc.keywords.push_back(kw.get<std::string>());
        }

        if (!seen_ids.insert(doc.id).second)
            throw std::runtime_error("corpus: duplicate document id \"" + doc.id +
                                     "\"");
        corpus.documents.push_back(std::move(doc));
    }

    if (corpus.documents.empty())
        throw std::runtime_error("corpus: manifest \"" + manifest_path +
                                 "\" contains no records");

    corpus.min_year = corpus.max_year = corpus.documents.front().year;
    for (const auto& d : corpus.documents) {
        corpus.min_year = std::min(corpus.min_year, d.year);
        corpus.max_year = std::max(corpus.max_year, d.year);
    }
    return corpus;
}

SynonymMap load_synonym_map(const std::string& path) {
    std::ifstream in = open_or_throw(path, "synonym map");
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string content = strip_comment(line);
        if (content.empty()) continue;
        auto tab = content.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("corpus: synonym map line " +
                                     std::to_string(line_no) +
                                     " is not two tab-separated columns");
        std::string surface = clean_keyword(content.substr(0, tab));
        std::string canonical = clean_keyword(content.substr(tab + 1));
        if (surface.empty() || canonical.empty())
            throw std::runtime_error("corpus: synonym map line " +
                                     std::to_string(line_no) + " has an empty column");
        entries[surface] = canonical;
    }
    return SynonymMap(std::move(entries));
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in = open_or_throw(path, "stopword");
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string word = strip_comment(line);
        if (!word.empty()) words.insert(to_lower(word));
    }
    return words;
}

TopicLabelMap load_topic_labels(const std::string& path) {
    std::ifstream in = open_or_throw(path, "topic label");
    TopicLabelMap labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string content = strip_comment(line);
        if (content.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            auto tab = content.find('\t', start);
            cols.push_back(trim(content.substr(start, tab - start)));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() != 4)
            throw std::runtime_error("corpus: topic label line " +
                                     std::to_string(line_no) +
                                     " must have 4 tab-separated columns");
        int topic;
        try {
            topic = std::stoi(cols[0]);
        } catch (const std::exception&) {
            throw std::runtime_error("corpus: topic label line " +
                                     std::to_string(line_no) +
                                     " has a non-integer topic id");
        }
        labels[topic] = TopicLabel{cols[1], cols[2], cols[3]};
    }
    return labels;
}

std::set<int> load_exclusion_list(const std::string& path) {
    std::ifstream in = open_or_throw(path, "topic exclusion");
    std::set<int> excluded;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string content = strip_comment(line);
        if (content.empty()) continue;
        try {
            excluded.insert(std::stoi(content));
        } catch (const std::exception&) {
            throw std::runtime_error("corpus: exclusion list line " +
                                     std::to_string(line_no) +
                                     " is not a topic index");
        }
    }
    return excluded;
}

}  // namespace topicnet
