#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "folksonet/context.hpp"

namespace folksonet {

// Clickthrough rate in [0, 1]. A resource never displayed has no defined CTR;
// it carries value 0 with observed = false.
struct Exposition {
  double value = 0.0;
  bool observed = false;
};

inline Exposition exposition(std::uint64_t clicks, std::uint64_t impressions) {
  if (clicks > impressions) {
    throw std::invalid_argument("exposition: clicks exceed impressions");
  }
  if (impressions == 0) return {0.0, false};
  return {static_cast<double>(clicks) / static_cast<double>(impressions), true};
}

// A chosen tag bound to its context facet, time exposition and resource.
// Node identity in the tag network is (label, resource).
struct FdTag {
  std::string label;
  std::string facet;
  double exposition = 0.0;
  bool observed = false;
  std::string resource;
};

inline FdTag make_fd_tag(const ScoredTag& tag, const Article& article) {
  const Exposition e = exposition(article.clicks, article.impressions);
  return {tag.chunk.surface, tag.facet, e.value, e.observed, article.uri};
}

using FdTriple = std::tuple<std::string, double, std::string>;  // (c, e, r)

// The global Folksodriven tuple (C, E, R, X) with X ⊆ C × E × R.
struct FdTuple {
  std::set<std::string> contexts;
  std::set<double> expositions;
  std::set<std::string> resources;
  std::set<FdTriple> triples;

  void insert(const FdTag& tag) {
    contexts.insert(tag.facet);
    expositions.insert(tag.exposition);
    resources.insert(tag.resource);
    triples.insert({tag.facet, tag.exposition, tag.resource});
  }

  // Full-scan check of X ⊆ C × E × R.
  bool well_formed() const {
    for (const auto& [c, e, r] : triples) {
      if (contexts.count(c) == 0 || expositions.count(e) == 0 || resources.count(r) == 0) {
        return false;
      }
    }
    return true;
  }
};

// The article relation A(c, r): every triple of X matching the facet and the
// resource, with the exposition ranging free.
inline std::set<FdTriple> article_relation(const FdTuple& fd, const std::string& context,
                                           const std::string& resource) {
  std::set<FdTriple> result;
  for (const auto& triple : fd.triples) {
    if (std::get<0>(triple) == context && std::get<2>(triple) == resource) {
      result.insert(triple);
    }
  }
  return result;
}

// Undirected simple graph whose nodes are FD tags. Edges are canonical
// (a < b), sorted and unique; adjacency lists are sorted.
struct TagGraph {
  std::vector<FdTag> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::vector<std::uint32_t>> adjacency;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t edge_count() const { return edges.size(); }

  std::size_t degree(std::uint32_t node) const { return adjacency[node].size(); }

  bool has_edge(std::uint32_t a, std::uint32_t b) const {
    const auto& adj = adjacency[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  // Canonicalizes raw pairs into the simple-graph form: self loops dropped,
  // duplicates collapsed, adjacency rebuilt.
  static TagGraph from_edges(std::vector<FdTag> nodes,
                             std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges) {
    TagGraph graph;
    graph.nodes = std::move(nodes);
    const auto n = static_cast<std::uint32_t>(graph.nodes.size());
    for (auto& [a, b] : raw_edges) {
      if (a >= n || b >= n) throw std::invalid_argument("from_edges: endpoint out of range");
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      graph.edges.push_back({a, b});
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
    graph.adjacency.assign(n, {});
    for (const auto& [a, b] : graph.edges) {
      graph.adjacency[a].push_back(b);
      graph.adjacency[b].push_back(a);
    }
    for (auto& adj : graph.adjacency) std::sort(adj.begin(), adj.end());
    return graph;
  }
};

// Seam for external acquaintance sources (ontology adapters and the like).
// Returned pairs may be unordered or duplicated; build_network canonicalizes.
class RelationProvider {
 public:
  virtual ~RelationProvider() = default;
  virtual std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(
      const std::vector<FdTag>& tags) const = 0;
};

// One node per tag; edges are the union of provider edges and the default
// co-occurrence rule: two tags sharing a resource, or carrying the same
// (facet, label) pair when that pair is in the incidence relation.
inline TagGraph build_network(const std::vector<FdTag>& tags, const FormalContext& context,
                              const RelationProvider* provider = nullptr) {
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_resource;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_pair;
  std::set<std::pair<std::string, std::string>> identities;
  for (std::uint32_t i = 0; i < tags.size(); ++i) {
    const auto& tag = tags[i];
    if (!identities.insert({tag.label, tag.resource}).second) {
      throw std::invalid_argument("build_network: tags not deduplicated by (label, resource)");
    }
    by_resource[tag.resource].push_back(i);
    if (context.has_incidence(tag.facet, tag.label)) {
      by_pair[tag.facet + '\x1f' + tag.label].push_back(i);
    }
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw_edges;
  auto add_clique = [&raw_edges](const std::vector<std::uint32_t>& group) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        raw_edges.push_back({group[i], group[j]});
      }
    }
  };
  for (const auto& [resource, group] : by_resource) add_clique(group);
  for (const auto& [pair, group] : by_pair) add_clique(group);
  if (provider != nullptr) {
    for (const auto& edge : provider->edges(tags)) raw_edges.push_back(edge);
  }
  return TagGraph::from_edges(tags, std::move(raw_edges));
}

// Growth snapshots over a date-ordered article stream. Distinct tags (by
// label and resource) accumulate in arrival order; a snapshot is cut each
// time the node count crosses the next multiple of node_step, plus a final
// snapshot covering any tail. Node sets are monotone across snapshots.
inline std::vector<TagGraph> grow_snapshots(const std::vector<std::vector<FdTag>>& tags_per_article,
                                            const FormalContext& context,
                                            std::size_t node_step,
                                            const RelationProvider* provider = nullptr) {
  if (node_step < 1) throw std::invalid_argument("grow_snapshots: node_step must be >= 1");
  std::vector<TagGraph> snapshots;
  std::vector<FdTag> accumulated;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t next_boundary = node_step;
  for (const auto& article_tags : tags_per_article) {
    for (const auto& tag : article_tags) {
      if (seen.insert({tag.label, tag.resource}).second) {
        accumulated.push_back(tag);
      }
    }
    if (accumulated.size() >= next_boundary) {
      snapshots.push_back(build_network(accumulated, context, provider));
      while (next_boundary <= accumulated.size()) next_boundary += node_step;
    }
  }
  const std::size_t covered = snapshots.empty() ? 0 : snapshots.back().node_count();
  if (accumulated.size() > covered) {
    snapshots.push_back(build_network(accumulated, context, provider));
  }
  return snapshots;
}

}  // namespace folksonet
