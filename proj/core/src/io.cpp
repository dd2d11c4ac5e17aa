#include "topicnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace topicnet {

std::string format_number(double value) {
    // Shortest representation that round-trips, so text dumps are an exact
    // hand-off format between stages.
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer) {
    auto partial = path;
    partial += ".partial";
    {
        std::ofstream out(partial, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("io: cannot open \"" + partial.string() +
                                     "\" for writing");
        writer(out);
        out.flush();
        if (!out)
            throw std::runtime_error("io: write to \"" + partial.string() + "\" failed");
    }
    std::filesystem::rename(partial, path);
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void write_edge_csv(const std::filesystem::path& path, const WeightedGraph& g) {
    atomic_write(path, [&](std::ostream& out) {
        out << "source,target,weight\n";
        for (const auto& [u, v, w] : g.edges())
            out << csv_field(g.label(u)) << ',' << csv_field(g.label(v)) << ','
                << format_number(w) << '\n';
    });
}

void write_graphml(const std::filesystem::path& path, const WeightedGraph& g) {
    atomic_write(path, [&](std::ostream& out) {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
            << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
            << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
            << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
        for (int v = 0; v < g.num_nodes(); ++v)
            out << "    <node id=\"n" << v << "\"><data key=\"label\">"
                << xml_escape(g.label(v)) << "</data></node>\n";
        std::size_t edge_id = 0;
        for (const auto& [u, v, w] : g.edges())
            out << "    <edge id=\"e" << edge_id++ << "\" source=\"n" << u
                << "\" target=\"n" << v << "\"><data key=\"weight\">"
                << format_number(w) << "</data></edge>\n";
        out << "  </graph>\n</graphml>\n";
    });
}

namespace {

// Split one CSV record; handles quoted fields produced by csv_field.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

}  // namespace

WeightedGraph read_edge_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("io: cannot open edge list \"" + path.string() + "\"");
    WeightedGraph g;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3)
            throw std::runtime_error("io: malformed edge row \"" + line + "\"");
        g.add_edge(fields[0], fields[1], std::stod(fields[2]));
    }
    return g;
}

void write_dtm_tsv(const std::filesystem::path& path, const DocTermMatrix& matrix) {
    atomic_write(path, [&](std::ostream& out) {
        out << "# doc_id\tterm\tweight\n";
        for (std::size_t d = 0; d < matrix.row_ids.size(); ++d) {
            out << "# row\t" << matrix.row_ids[d] << '\t'
                << (d < matrix.row_years.size() ? matrix.row_years[d] : 0) << '\n';
        }
        // Full vocabulary, so columns whose weights were all dropped (df = N)
        // survive the round trip.
        for (int t = 0; t < matrix.vocab.size(); ++t)
            out << "# term\t" << matrix.vocab.terms[t] << '\t'
                << matrix.vocab.doc_freq[t] << '\n';
        // ColMajor storage; emit row-grouped in corpus order for readability.
        std::vector<std::vector<std::pair<int, double>>> rows(matrix.n_docs());
        for (int outer = 0; outer < matrix.weights.outerSize(); ++outer)
            for (Eigen::SparseMatrix<double>::InnerIterator it(matrix.weights, outer);
                 it; ++it)
                rows[it.row()].emplace_back(static_cast<int>(it.col()), it.value());
        for (Eigen::Index d = 0; d < matrix.n_docs(); ++d) {
            std::sort(rows[d].begin(), rows[d].end());
            for (const auto& [col, weight] : rows[d])
                out << matrix.row_ids[d] << '\t' << matrix.vocab.terms[col] << '\t'
                    << format_number(weight) << '\n';
        }
    });
}

DocTermMatrix read_dtm_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("io: cannot open matrix dump \"" + path.string() + "\"");

    DocTermMatrix matrix;
    std::map<std::string, int> row_index;
    std::vector<std::tuple<std::string, std::string, double>> entries;
    std::set<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream header(line.substr(1));
            std::string tag, id;
            int year;
            if (header >> tag && tag == "row" && header >> id >> year) {
                row_index.emplace(id, static_cast<int>(matrix.row_ids.size()));
                matrix.row_ids.push_back(id);
                matrix.row_years.push_back(year);
            }
            continue;
        }
        std::istringstream fields(line);
        std::string doc_id, term;
        double weight;
        if (!(std::getline(fields, doc_id, '\t') && std::getline(fields, term, '\t') &&
              fields >> weight))
            throw std::runtime_error("io: malformed matrix row \"" + line + "\"");
        if (!row_index.count(doc_id)) {
            row_index.emplace(doc_id, static_cast<int>(matrix.row_ids.size()));
            matrix.row_ids.push_back(doc_id);
            matrix.row_years.push_back(0);
        }
        terms.insert(term);
        entries.emplace_back(doc_id, term, weight);
    }
    if (matrix.row_ids.empty())
        throw std::runtime_error("io: matrix dump \"" + path.string() + "\" is empty");

    for (const auto& term : terms) {
        matrix.vocab.index.emplace(term, static_cast<int>(matrix.vocab.terms.size()));
        matrix.vocab.terms.push_back(term);
    }
    std::vector<std::set<std::string>> docs_with(matrix.vocab.terms.size());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(entries.size());
    for (const auto& [doc_id, term, weight] : entries) {
        int col = matrix.vocab.index.at(term);
        triplets.emplace_back(row_index.at(doc_id), col, weight);
        docs_with[col].insert(doc_id);
    }
    matrix.vocab.doc_freq.resize(matrix.vocab.terms.size());
    for (std::size_t t = 0; t < docs_with.size(); ++t)
        matrix.vocab.doc_freq[t] = static_cast<int>(docs_with[t].size());

    matrix.weights.resize(static_cast<Eigen::Index>(matrix.row_ids.size()),
                          static_cast<Eigen::Index>(matrix.vocab.terms.size()));
    matrix.weights.setFromTriplets(triplets.begin(), triplets.end());
    matrix.weights.makeCompressed();
    return matrix;
}

}  // namespace topicnet
