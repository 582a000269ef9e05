#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folksonet/fdnet.hpp"
#include "folksonet/rng.hpp"

namespace folksonet {

namespace detail {

// Edges among the neighbors of `node`, counted by marking the neighborhood
// and scanning each neighbor's adjacency once. `marks` is scratch space of at
// least node_count() zeroed bytes and is left zeroed again on return.
inline std::uint64_t linked_neighbor_pairs(const TagGraph& graph, std::uint32_t node,
                                           std::vector<std::uint8_t>& marks) {
  const auto& neighbors = graph.adjacency[node];
  for (const std::uint32_t neighbor : neighbors) marks[neighbor] = 1;
  std::uint64_t pairs = 0;
  for (const std::uint32_t neighbor : neighbors) {
    for (const std::uint32_t other : graph.adjacency[neighbor]) {
      if (other > neighbor && marks[other]) ++pairs;
    }
  }
  for (const std::uint32_t neighbor : neighbors) marks[neighbor] = 0;
  return pairs;
}

}  // namespace detail

// Watts clustering of one node: connected neighbor pairs over k(k-1)/2.
// Undefined (nullopt) for degree < 2.
inline std::optional<double> watts_clustering(const TagGraph& graph, std::uint32_t node) {
  if (node >= graph.node_count()) {
    throw std::invalid_argument("watts_clustering: invalid node index");
  }
  const std::size_t k = graph.degree(node);
  if (k < 2) return std::nullopt;
  std::vector<std::uint8_t> marks(graph.node_count(), 0);
  const std::uint64_t linked = detail::linked_neighbor_pairs(graph, node, marks);
  return 2.0 * static_cast<double>(linked) /
         (static_cast<double>(k) * static_cast<double>(k - 1));
}

// Mean Watts clustering over nodes of degree >= 2, in ascending node order.
inline double graph_clustering(const TagGraph& graph) {
  double sum = 0.0;
  std::uint64_t eligible = 0;
  std::vector<std::uint8_t> marks(graph.node_count(), 0);
  for (std::uint32_t node = 0; node < graph.node_count(); ++node) {
    const std::size_t k = graph.degree(node);
    if (k < 2) continue;
    const std::uint64_t linked = detail::linked_neighbor_pairs(graph, node, marks);
    sum += 2.0 * static_cast<double>(linked) /
           (static_cast<double>(k) * static_cast<double>(k - 1));
    ++eligible;
  }
  if (eligible == 0) throw std::runtime_error("graph_clustering: clustering undefined");
  return sum / static_cast<double>(eligible);
}

struct DegreeHistogram {
  std::map<std::uint32_t, std::uint64_t> counts;
};

inline DegreeHistogram degree_histogram(const TagGraph& graph) {
  DegreeHistogram hist;
  for (std::uint32_t node = 0; node < graph.node_count(); ++node) {
    hist.counts[static_cast<std::uint32_t>(graph.degree(node))] += 1;
  }
  return hist;
}

namespace detail {

// Hurwitz zeta ζ(s, a) for s > 1, a >= 1: direct sum plus an Euler-Maclaurin
// tail. Accurate to well below the ternary-search tolerance used by the fit.
inline double hurwitz_zeta(double s, double a) {
  constexpr int direct_terms = 64;
  double sum = 0.0;
  for (int k = 0; k < direct_terms; ++k) {
    sum += std::pow(a + k, -s);
  }
  const double b = a + direct_terms;
  sum += std::pow(b, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(b, -s);
  sum += s * std::pow(b, -s - 1.0) / 12.0;
  sum -= s * (s + 1.0) * (s + 2.0) * std::pow(b, -s - 3.0) / 720.0;
  return sum;
}

}  // namespace detail

// Discrete maximum-likelihood power-law exponent over degrees >= min_degree:
// maximizes -γ·Σ ln k - N·ln ζ(γ, min_degree) by ternary search. Requires at
// least 10 tail nodes spread over at least two distinct degrees.
inline double powerlaw_exponent(const DegreeHistogram& hist, std::uint32_t min_degree = 2) {
  if (min_degree < 1) throw std::invalid_argument("powerlaw_exponent: min_degree must be >= 1");
  std::uint64_t tail_nodes = 0;
  std::size_t distinct = 0;
  double sum_log_k = 0.0;
  for (const auto& [degree, count] : hist.counts) {
    if (degree < min_degree) continue;
    tail_nodes += count;
    distinct += 1;
    sum_log_k += static_cast<double>(count) * std::log(static_cast<double>(degree));
  }
  if (tail_nodes < 10 || distinct < 2) {
    throw std::runtime_error("powerlaw_exponent: insufficient tail data");
  }
  const double n = static_cast<double>(tail_nodes);
  const double kmin = static_cast<double>(min_degree);
  auto log_likelihood = [&](double gamma) {
    return -gamma * sum_log_k - n * std::log(detail::hurwitz_zeta(gamma, kmin));
  };
  double lo = 1.000001;
  double hi = 16.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (log_likelihood(m1) < log_likelihood(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {

// Component id per node, plus the node list of the largest component (ties
// resolved toward the component discovered first).
inline std::vector<std::uint32_t> largest_component(const TagGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::int64_t> component(n, -1);
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> current;
  std::deque<std::uint32_t> queue;
  std::int64_t next_id = 0;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    current.clear();
    component[start] = next_id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::uint32_t node = queue.front();
      queue.pop_front();
      current.push_back(node);
      for (const std::uint32_t neighbor : graph.adjacency[node]) {
        if (component[neighbor] < 0) {
          component[neighbor] = next_id;
          queue.push_back(neighbor);
        }
      }
    }
    std::sort(current.begin(), current.end());
    if (current.size() > best.size()) best = current;
    ++next_id;
  }
  return best;
}

}  // namespace detail

// Mean shortest-path distance over the largest connected component, averaged
// over BFS runs from min(sample_size, component size) distinct sources drawn
// by the seeded generator. With sample_size >= component size every component
// node is a source and the value is the exact all-pairs mean. A single-node
// component yields 0.
inline double avg_path_length(const TagGraph& graph, std::size_t sample_size, std::uint64_t seed) {
  if (graph.node_count() == 0) {
    throw std::invalid_argument("avg_path_length: empty graph");
  }
  const std::vector<std::uint32_t> component = detail::largest_component(graph);
  std::vector<std::uint32_t> sources;
  if (component.size() <= sample_size) {
    sources = component;
  } else {
    SplitMix64 rng(seed);
    sources = sample_without_replacement(component, sample_size, rng);
  }

  std::vector<std::int32_t> distance(graph.node_count(), -1);
  std::vector<std::uint32_t> frontier;
  std::vector<std::uint32_t> next;
  std::uint64_t total_distance = 0;
  std::uint64_t pair_count = 0;
  for (const std::uint32_t source : sources) {
    std::fill(distance.begin(), distance.end(), -1);
    distance[source] = 0;
    frontier.assign(1, source);
    std::int32_t depth = 0;
    while (!frontier.empty()) {
      ++depth;
      next.clear();
      for (const std::uint32_t node : frontier) {
        for (const std::uint32_t neighbor : graph.adjacency[node]) {
          if (distance[neighbor] < 0) {
            distance[neighbor] = depth;
            total_distance += static_cast<std::uint64_t>(depth);
            ++pair_count;
            next.push_back(neighbor);
          }
        }
      }
      frontier.swap(next);
    }
  }
  if (pair_count == 0) return 0.0;
  return static_cast<double>(total_distance) / static_cast<double>(pair_count);
}

// Inputs of the per-resource context-exposition density ratio: the facets and
// occupied exposition bins around one tag, and the (facet, bin) cells those
// tags actually realize.
struct KrInput {
  std::set<std::string> contexts;
  std::set<int> exposition_bins;
  std::set<std::pair<std::string, int>> realized;
};

// Ten equal-width exposition bins over [0, 1]; 1.0 lands in the top bin.
inline int exposition_bin(double exposition) {
  if (exposition < 0.0 || exposition > 1.0) {
    throw std::invalid_argument("exposition_bin: value outside [0, 1]");
  }
  return std::min(9, static_cast<int>(exposition * 10.0));
}

// K_r = realized (facet, bin) cells over the full |C|·|E| grid, in (0, 1].
// Adding an exposition bin while the realized set stays fixed strictly
// shrinks the ratio.
inline double fd_clustering_kr(const KrInput& input) {
  if (input.contexts.empty() || input.exposition_bins.empty()) {
    throw std::invalid_argument("fd_clustering_kr: K_r undefined");
  }
  if (input.realized.empty()) {
    throw std::invalid_argument("fd_clustering_kr: K_r undefined");
  }
  for (const auto& [facet, bin] : input.realized) {
    if (input.contexts.count(facet) == 0 || input.exposition_bins.count(bin) == 0) {
      throw std::invalid_argument("fd_clustering_kr: realized pair outside C × E grid");
    }
  }
  return static_cast<double>(input.realized.size()) /
         (static_cast<double>(input.contexts.size()) *
          static_cast<double>(input.exposition_bins.size()));
}

// K_r input of one graph node: the node together with its same-resource
// neighbors, restricted to observed tags (an unobserved tag has no defined
// exposition bin). Undefined for unobserved nodes.
inline std::optional<KrInput> kr_input_for_node(const TagGraph& graph, std::uint32_t node) {
  if (node >= graph.node_count()) {
    throw std::invalid_argument("kr_input_for_node: invalid node index");
  }
  const FdTag& tag = graph.nodes[node];
  if (!tag.observed) return std::nullopt;
  KrInput input;
  auto add = [&input](const FdTag& member) {
    const int bin = exposition_bin(member.exposition);
    input.contexts.insert(member.facet);
    input.exposition_bins.insert(bin);
    input.realized.insert({member.facet, bin});
  };
  add(tag);
  for (const std::uint32_t neighbor : graph.adjacency[node]) {
    const FdTag& other = graph.nodes[neighbor];
    if (other.observed && other.resource == tag.resource) add(other);
  }
  return input;
}

struct KrSummary {
  double mean_kr = 0.0;
  double mean_bin_occupancy = 0.0;  // mean |E_r(i)| over defined nodes
  std::uint64_t defined_nodes = 0;
};

// Mean K_r over nodes where it is defined, in ascending node order.
inline std::optional<KrSummary> kr_summary(const TagGraph& graph) {
  KrSummary summary;
  double kr_sum = 0.0;
  double bin_sum = 0.0;
  for (std::uint32_t node = 0; node < graph.node_count(); ++node) {
    const auto input = kr_input_for_node(graph, node);
    if (!input) continue;
    kr_sum += fd_clustering_kr(*input);
    bin_sum += static_cast<double>(input->exposition_bins.size());
    ++summary.defined_nodes;
  }
  if (summary.defined_nodes == 0) return std::nullopt;
  summary.mean_kr = kr_sum / static_cast<double>(summary.defined_nodes);
  summary.mean_bin_occupancy = bin_sum / static_cast<double>(summary.defined_nodes);
  return summary;
}

}  // namespace folksonet
