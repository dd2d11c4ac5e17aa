#ifndef TOPICNET_IO_HPP
#define TOPICNET_IO_HPP

#include <filesystem>
#include <functional>
#include <string>

#include "topicnet/dtm.hpp"
#include "topicnet/graph.hpp"

namespace topicnet {

/// Deterministic decimal rendering of a double ("%.12g").
std::string format_number(double value);

/// Writes content to "<path>.partial" and renames it into place on success,
/// so an aborted run never leaves a half-written final file.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& writer);

/// Edge list "source,target,weight", one row per undirected edge (u < v).
void write_edge_csv(const std::filesystem::path& path, const WeightedGraph& g);

/// GraphML with node labels and edge weights, undirected.
void write_graphml(const std::filesystem::path& path, const WeightedGraph& g);

/// Reconstructs a graph from an edge-list CSV (isolated nodes are not
/// representable in this format and are absent).
WeightedGraph read_edge_csv(const std::filesystem::path& path);

/// Matrix dump "doc_id <tab> term <tab> weight" with '#'-prefixed header
/// lines recording the full row order (including empty rows).
void write_dtm_tsv(const std::filesystem::path& path, const DocTermMatrix& matrix);

DocTermMatrix read_dtm_tsv(const std::filesystem::path& path);

/// Minimal XML text escaping for GraphML payloads.
std::string xml_escape(const std::string& text);

/// CSV field quoting (RFC-4180 style) applied only when needed.
std::string csv_field(const std::string& text);

}  // namespace topicnet

#endif  // TOPICNET_IO_HPP
