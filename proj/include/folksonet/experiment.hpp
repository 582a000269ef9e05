#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "folksonet/fdnet.hpp"
#include "folksonet/format.hpp"
#include "folksonet/metrics.hpp"
#include "folksonet/rng.hpp"
#include "folksonet/store.hpp"
#include "folksonet/svg.hpp"

namespace folksonet {

struct ExperimentConfig {
  std::uint64_t realizations = 100;
  std::uint64_t runs = 20;
  std::uint64_t sample_size = 400;
  std::uint64_t ba_m = 2;
  std::uint64_t seed = 1;
  std::uint64_t snapshots = 20;
  std::uint64_t tags_per_article = 5;

  void validate() const {
    if (realizations < 1 || runs < 1 || sample_size < 1 || ba_m < 1 || snapshots < 1 ||
        tags_per_article < 1) {
      throw std::invalid_argument("ExperimentConfig: all counts must be >= 1");
    }
  }
};

// Config file: `key = value` lines, '#' comments. Keys: realizations, runs,
// sample_size, ba_m, seed, snapshots, and the optional tags_per_article.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw std::runtime_error("config line " + std::to_string(line_number) +
                                 ": expected key = value");
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t\r");
      const auto end = s.find_last_not_of(" \t\r");
      if (begin == std::string::npos) return std::string();
      return s.substr(begin, end - begin + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::uint64_t number = 0;
    try {
      number = std::stoull(value);
    } catch (const std::exception&) {
      throw std::runtime_error("config line " + std::to_string(line_number) +
                               ": value is not a non-negative integer");
    }
    if (key == "realizations") config.realizations = number;
    else if (key == "runs") config.runs = number;
    else if (key == "sample_size") config.sample_size = number;
    else if (key == "ba_m") config.ba_m = number;
    else if (key == "seed") config.seed = number;
    else if (key == "snapshots") config.snapshots = number;
    else if (key == "tags_per_article") config.tags_per_article = number;
    else throw std::runtime_error("config line " + std::to_string(line_number) +
                                  ": unknown key " + key);
  }
  config.validate();
  return config;
}

// Barabási–Albert preferential attachment: a seed clique on m+1 nodes, then
// each new node attaches m distinct edges to existing nodes with probability
// proportional to current degree (duplicate draws rejected). The result is a
// simple connected graph with m(m+1)/2 + m(n-m-1) edges, deterministic per
// seed.
inline TagGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("generate_ba: m must be >= 1");
  if (n <= m) throw std::invalid_argument("generate_ba: n must be at least m + 1");

  std::vector<FdTag> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].label = "n" + std::to_string(i);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(m * (m + 1) / 2 + m * (n - m - 1));
  // Every edge endpoint lands in this list, so a uniform draw from it is a
  // degree-proportional draw over nodes.
  std::vector<std::uint32_t> endpoints;
  endpoints.reserve(2 * edges.capacity());

  for (std::uint32_t a = 0; a + 1 < m + 1; ++a) {
    for (std::uint32_t b = a + 1; b < m + 1; ++b) {
      edges.push_back({a, b});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }

  SplitMix64 rng(seed);
  std::vector<std::uint32_t> picked;
  picked.reserve(m);
  for (std::uint32_t node = static_cast<std::uint32_t>(m + 1); node < n; ++node) {
    picked.clear();
    while (picked.size() < m) {
      const std::uint32_t target =
          endpoints[static_cast<std::size_t>(uniform_index(rng, endpoints.size()))];
      bool duplicate = false;
      for (const std::uint32_t p : picked) {
        if (p == target) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) picked.push_back(target);
    }
    for (const std::uint32_t target : picked) {
      edges.push_back({target, node});
      endpoints.push_back(target);
      endpoints.push_back(node);
    }
  }
  return TagGraph::from_edges(std::move(nodes), std::move(edges));
}

inline std::uint64_t ba_edge_count(std::uint64_t n, std::uint64_t m) {
  return m * (m + 1) / 2 + m * (n - m - 1);
}

// Smallest m >= 1 whose BA edge count best matches the target; used to pair
// each Folksodriven snapshot with a size-matched random graph.
inline std::uint64_t match_ba_m(std::uint64_t n, std::uint64_t target_edges) {
  std::uint64_t best_m = 1;
  std::uint64_t best_gap = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t m = 1; m + 1 <= n && m <= 256; ++m) {
    const std::uint64_t count = ba_edge_count(n, m);
    const std::uint64_t gap = count > target_edges ? count - target_edges : target_edges - count;
    if (gap < best_gap) {
      best_gap = gap;
      best_m = m;
    }
    if (count >= target_edges) break;  // edge count grows with m
  }
  return best_m;
}

enum class GraphKind { Folksodriven, BaRandom };

inline const char* graph_kind_name(GraphKind kind) {
  return kind == GraphKind::Folksodriven ? "folksodriven" : "ba-random";
}

struct MetricStat {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double sd = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t count = 0;
};

struct ReportRow {
  std::size_t snapshot = 0;
  GraphKind kind = GraphKind::Folksodriven;
  MetricStat nodes;
  MetricStat edges;
  MetricStat clustering;
  MetricStat kr;
  MetricStat kr_bins;  // mean occupied exposition bins |E_r(i)|
  MetricStat path_length;
  MetricStat gamma;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;  // snapshot ascending, folksodriven before ba-random
};

namespace detail {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct SnapshotSample {
  double nodes = kNan;
  double edges = kNan;
  double clustering = kNan;
  double kr = kNan;
  double kr_bins = kNan;
  double path_length = kNan;
  double gamma = kNan;
};

inline SnapshotSample measure_graph(const TagGraph& graph, std::uint64_t sample_size,
                                    std::uint64_t path_seed) {
  SnapshotSample sample;
  sample.nodes = static_cast<double>(graph.node_count());
  sample.edges = static_cast<double>(graph.edge_count());
  try {
    sample.clustering = graph_clustering(graph);
  } catch (const std::runtime_error&) {
  }
  if (const auto kr = kr_summary(graph)) {
    sample.kr = kr->mean_kr;
    sample.kr_bins = kr->mean_bin_occupancy;
  }
  if (graph.node_count() > 0) {
    sample.path_length = avg_path_length(graph, sample_size, path_seed);
  }
  try {
    sample.gamma = powerlaw_exponent(degree_histogram(graph));
  } catch (const std::exception&) {
  }
  return sample;
}

struct Accumulator {
  std::vector<double> values;

  void add(double value) {
    if (!std::isnan(value)) values.push_back(value);
  }

  MetricStat stat() const {
    MetricStat s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (const double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / static_cast<double>(values.size()));
    return s;
  }
};

}  // namespace detail

// The §5 protocol: per run j and realization r, grow Folksodriven snapshots
// from a corpus stream shuffled by seed(j, r), pair each snapshot with a BA
// graph matched on node count and closest edge count, measure both with the
// sampled-path rule, and aggregate mean/sd per (snapshot, kind) across every
// realization of every run. Realizations execute concurrently; aggregation
// is in task order, so the report is a pure function of (config, corpus).
inline ExperimentReport run_experiment(const ExperimentConfig& config, const Store& store,
                                       unsigned threads = 0) {
  config.validate();

  // Chosen tags per article come from the order-insensitive global context,
  // so they are computed once; only the growth order varies per realization.
  std::vector<std::vector<FdTag>> tags_per_article(store.articles.size());
  std::set<std::pair<std::string, std::string>> distinct;
  for (std::size_t i = 0; i < store.articles.size(); ++i) {
    const ArticleChunks chunks = chunk_article(store.articles[i], store.chunker);
    for (const auto& scored : suggest_tags(store.context, chunks, config.tags_per_article)) {
      FdTag tag = make_fd_tag(scored, store.articles[i]);
      distinct.insert({tag.label, tag.resource});
      tags_per_article[i].push_back(std::move(tag));
    }
  }
  if (distinct.empty()) {
    throw std::runtime_error("run_experiment: corpus too small to reach the first snapshot boundary");
  }
  const std::size_t node_step = std::max<std::size_t>(1, distinct.size() / config.snapshots);

  const std::size_t task_count = config.runs * config.realizations;
  std::vector<std::vector<std::pair<detail::SnapshotSample, detail::SnapshotSample>>> results(
      task_count);

  auto worker_body = [&](std::size_t task) {
    const std::uint64_t run = task / config.realizations;
    const std::uint64_t realization = task % config.realizations;
    const std::uint64_t task_seed = mix_seed(mix_seed(config.seed, run), realization);

    std::vector<std::size_t> order(store.articles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    SplitMix64 rng(task_seed);
    shuffle(order, rng);

    std::vector<std::vector<FdTag>> stream;
    stream.reserve(order.size());
    for (const std::size_t i : order) stream.push_back(tags_per_article[i]);

    const std::vector<TagGraph> snapshots = grow_snapshots(stream, store.context, node_step);
    auto& rows = results[task];
    rows.reserve(snapshots.size());
    for (std::size_t s = 0; s < snapshots.size(); ++s) {
      const TagGraph& fd = snapshots[s];
      const auto fd_sample =
          detail::measure_graph(fd, config.sample_size, mix_seed(task_seed, 1000 + s));
      detail::SnapshotSample ba_sample;
      const std::size_t n = fd.node_count();
      if (n >= 2) {
        const std::uint64_t m = match_ba_m(n, fd.edge_count());
        const TagGraph ba = generate_ba(n, m, mix_seed(task_seed, 2000 + s));
        ba_sample = detail::measure_graph(ba, config.sample_size, mix_seed(task_seed, 3000 + s));
      }
      rows.push_back({fd_sample, ba_sample});
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || task_count <= 1) {
    for (std::size_t task = 0; task < task_count; ++task) worker_body(task);
  } else {
    std::atomic<std::size_t> next_task{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t task = next_task.fetch_add(1);
          if (task >= task_count) return;
          worker_body(task);
        }
      });
    }
    for (auto& thread : pool) thread.join();
  }

  std::size_t snapshot_count = 0;
  for (const auto& rows : results) snapshot_count = std::max(snapshot_count, rows.size());

  ExperimentReport report;
  for (std::size_t s = 0; s < snapshot_count; ++s) {
    for (const GraphKind kind : {GraphKind::Folksodriven, GraphKind::BaRandom}) {
      detail::Accumulator nodes, edges, clustering, kr, kr_bins, path_length, gamma;
      for (const auto& rows : results) {
        if (s >= rows.size()) continue;
        const auto& sample = kind == GraphKind::Folksodriven ? rows[s].first : rows[s].second;
        nodes.add(sample.nodes);
        edges.add(sample.edges);
        clustering.add(sample.clustering);
        kr.add(sample.kr);
        kr_bins.add(sample.kr_bins);
        path_length.add(sample.path_length);
        gamma.add(sample.gamma);
      }
      ReportRow row;
      row.snapshot = s;
      row.kind = kind;
      row.nodes = nodes.stat();
      row.edges = edges.stat();
      row.clustering = clustering.stat();
      row.kr = kr.stat();
      row.kr_bins = kr_bins.stat();
      row.path_length = path_length.stat();
      row.gamma = gamma.stat();
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

inline std::string report_csv(const ExperimentReport& report) {
  std::string csv =
      "snapshot,kind,n_mean,n_sd,edges_mean,edges_sd,clustering_mean,clustering_sd,"
      "kr_mean,kr_sd,kr_bins_mean,kr_bins_sd,path_length_mean,path_length_sd,"
      "gamma_mean,gamma_sd\n";
  for (const auto& row : report.rows) {
    csv += std::to_string(row.snapshot);
    csv += ',';
    csv += graph_kind_name(row.kind);
    for (const auto* stat :
         {&row.nodes, &row.edges, &row.clustering, &row.kr, &row.kr_bins, &row.path_length,
          &row.gamma}) {
      csv += ',' + format_double(stat->mean) + ',' + format_double(stat->sd);
    }
    csv += '\n';
  }
  return csv;
}

// Writes report.csv plus the two figure files: clustering versus network size
// for both graph kinds, and K_r versus mean exposition-bin occupancy for the
// Folksodriven graphs. Re-emitting the same report is byte-identical.
inline void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "report.csv", std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot write report.csv");
    out << report_csv(report);
  }

  PlotSeries fd_clustering{"folksodriven", {}};
  PlotSeries ba_clustering{"ba-random", {}};
  PlotSeries fd_kr{"folksodriven", {}};
  for (const auto& row : report.rows) {
    auto& clustering = row.kind == GraphKind::Folksodriven ? fd_clustering : ba_clustering;
    if (!std::isnan(row.nodes.mean) && !std::isnan(row.clustering.mean)) {
      clustering.points.push_back({row.nodes.mean, row.clustering.mean});
    }
    if (row.kind == GraphKind::Folksodriven && !std::isnan(row.kr_bins.mean) &&
        !std::isnan(row.kr.mean)) {
      fd_kr.points.push_back({row.kr_bins.mean, row.kr.mean});
    }
  }
  {
    std::ofstream out(out_dir / "fig1_clustering.svgf", std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot write fig1_clustering.svgf");
    out << render_line_plot("Clustering coefficient vs network size", "nodes",
                            "mean clustering", {fd_clustering, ba_clustering});
  }
  {
    std::ofstream out(out_dir / "fig2_kr.svgf", std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot write fig2_kr.svgf");
    out << render_line_plot("K_r vs exposition bin occupancy", "mean occupied exposition bins",
                            "mean K_r", {fd_kr});
  }
}

}  // namespace folksonet
