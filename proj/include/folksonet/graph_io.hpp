#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "folksonet/fdnet.hpp"
#include "folksonet/format.hpp"

namespace folksonet {

// Graph files under a shared prefix:
//   <prefix>.edges.tsv  one "a<TAB>b" node-index pair per line, a < b, sorted
//   <prefix>.nodes.csv  index,label,facet,exposition,resource
// An empty exposition field marks an unobserved tag (zero impressions).

inline std::string edges_path(const std::string& prefix) { return prefix + ".edges.tsv"; }
inline std::string nodes_path(const std::string& prefix) { return prefix + ".nodes.csv"; }

inline void write_graph(const TagGraph& graph, const std::string& prefix) {
  std::ofstream edges(edges_path(prefix));
  if (!edges) throw std::runtime_error("write_graph: cannot open " + edges_path(prefix));
  for (const auto& [a, b] : graph.edges) {
    edges << a << '\t' << b << '\n';
  }

  std::ofstream nodes(nodes_path(prefix));
  if (!nodes) throw std::runtime_error("write_graph: cannot open " + nodes_path(prefix));
  nodes << "index,label,facet,exposition,resource\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const FdTag& tag = graph.nodes[i];
    nodes << i << ',' << csv_field(tag.label) << ',' << csv_field(tag.facet) << ','
          << (tag.observed ? format_double(tag.exposition) : std::string())
          << ',' << csv_field(tag.resource) << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace detail

inline TagGraph read_graph(const std::string& prefix) {
  std::ifstream nodes_in(nodes_path(prefix));
  if (!nodes_in) throw std::runtime_error("read_graph: cannot open " + nodes_path(prefix));
  std::vector<FdTag> nodes;
  std::string line;
  std::getline(nodes_in, line);  // header
  while (std::getline(nodes_in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 5) throw std::runtime_error("read_graph: bad node row: " + line);
    FdTag tag;
    tag.label = fields[1];
    tag.facet = fields[2];
    if (fields[3].empty()) {
      tag.exposition = 0.0;
      tag.observed = false;
    } else {
      tag.exposition = std::stod(fields[3]);
      tag.observed = true;
    }
    tag.resource = fields[4];
    const auto index = static_cast<std::size_t>(std::stoull(fields[0]));
    if (index != nodes.size()) throw std::runtime_error("read_graph: node indices out of order");
    nodes.push_back(std::move(tag));
  }

  std::ifstream edges_in(edges_path(prefix));
  if (!edges_in) throw std::runtime_error("read_graph: cannot open " + edges_path(prefix));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (std::getline(edges_in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    if (!(row >> a >> b)) throw std::runtime_error("read_graph: bad edge row: " + line);
    edges.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
  }
  return TagGraph::from_edges(std::move(nodes), std::move(edges));
}

}  // namespace folksonet
