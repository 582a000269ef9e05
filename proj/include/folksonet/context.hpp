#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folksonet/chunker.hpp"
#include "folksonet/corpus.hpp"

namespace folksonet {

// |A ∩ B| / |A ∪ B|; two empty sets are 0 by convention.
inline double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t intersection = 0;
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& token : small) {
    if (large.count(token) > 0) ++intersection;
  }
  const std::size_t unions = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(unions);
}

inline std::set<std::string> surface_tokens(const std::string& surface) {
  std::set<std::string> tokens;
  std::size_t begin = 0;
  while (begin < surface.size()) {
    std::size_t end = surface.find(' ', begin);
    if (end == std::string::npos) end = surface.size();
    if (end > begin) tokens.insert(surface.substr(begin, end - begin));
    begin = end + 1;
  }
  return tokens;
}

// Weight on one incidence pair: the pair's token-set Jaccard is a constant of
// the pair, so only the supporting-observation count accumulates.
struct IncidenceWeight {
  std::uint64_t frequency = 0;
  double jaccard = 0.0;
};

// Accumulated formal context (T, D, I) with I ⊆ T × D keyed by
// (title surface, description surface). title_counts ranks title chunks by
// how often the corpus produced them (the suggestion fallback order).
struct FormalContext {
  std::set<std::string> titles;
  std::set<std::string> descriptions;
  std::map<std::pair<std::string, std::string>, IncidenceWeight> incidence;
  std::map<std::string, std::uint64_t> title_counts;

  bool has_incidence(const std::string& t, const std::string& d) const {
    return incidence.count({t, d}) > 0;
  }

  // Full-scan check of I ⊆ T × D plus the weight bounds.
  bool well_formed() const {
    for (const auto& [key, weight] : incidence) {
      if (titles.count(key.first) == 0 || descriptions.count(key.second) == 0) return false;
      if (weight.frequency < 1) return false;
      if (weight.jaccard < 0.0 || weight.jaccard > 1.0) return false;
    }
    return true;
  }
};

struct ScoredTag {
  Chunk chunk;
  double score = 0.0;
  std::string facet;
};

struct ArticleChunks {
  std::vector<Chunk> title_chunks;
  std::vector<Chunk> description_chunks;
};

inline ArticleChunks chunk_article(const Article& article, const ChunkerConfig& config) {
  ArticleChunks chunks;
  chunks.title_chunks = chunk(tokenize(article.title), config, SourceField::Title);
  chunks.description_chunks =
      chunk(tokenize(article.description), config, SourceField::Description);
  return chunks;
}

// Picks the facet whose token set best overlaps the description chunk:
// argmax Jaccard, ties broken by lexicographically smaller facet surface.
inline const Chunk& disambiguate(const Chunk& description,
                                 const std::vector<Chunk>& candidate_facets) {
  if (candidate_facets.empty()) {
    throw std::invalid_argument("disambiguate: no facet available");
  }
  const std::set<std::string> d_tokens(description.tokens.begin(), description.tokens.end());
  const Chunk* best = nullptr;
  double best_score = -1.0;
  for (const auto& facet : candidate_facets) {
    const double score =
        jaccard(std::set<std::string>(facet.tokens.begin(), facet.tokens.end()), d_tokens);
    if (score > best_score || (score == best_score && facet.surface < best->surface)) {
      best = &facet;
      best_score = score;
    }
  }
  return *best;
}

// Folds one chunked article into the store. Title chunks extend T (and the
// fallback counts); description chunks extend D and, when the article has at
// least one title facet, bump the frequency of their disambiguated incidence
// pair. An article with no title chunks contributes no incidences and is
// reported via the returned diagnostic.
inline std::optional<Diagnostic> accumulate_context(FormalContext& store, const Article& article,
                                                    const ArticleChunks& chunks) {
  for (const auto& t : chunks.title_chunks) {
    store.titles.insert(t.surface);
    store.title_counts[t.surface] += 1;
  }
  for (const auto& d : chunks.description_chunks) {
    store.descriptions.insert(d.surface);
  }
  if (chunks.title_chunks.empty()) {
    return Diagnostic{0, DiagnosticCode::NoTitleChunks,
                      "article " + article.id + " has no title chunks"};
  }
  for (const auto& d : chunks.description_chunks) {
    const Chunk& facet = disambiguate(d, chunks.title_chunks);
    auto& weight = store.incidence[{facet.surface, d.surface}];
    weight.frequency += 1;
    weight.jaccard = jaccard(surface_tokens(facet.surface), surface_tokens(d.surface));
  }
  return std::nullopt;
}

// Ranked tag suggestions for one chunked article. Candidates are the
// article's description chunks whose disambiguated incidence pair exists in
// the store, scored frequency × jaccard; when fewer than k exist the
// article's title chunks pad the list, ranked by their corpus frequency in T.
// The returned list is sorted score-descending, ties lexicographic by surface.
inline std::vector<ScoredTag> suggest_tags(const FormalContext& store,
                                           const ArticleChunks& chunks, std::size_t k) {
  if (k == 0) return {};

  std::vector<ScoredTag> chosen;
  std::set<std::string> used_surfaces;

  if (!chunks.title_chunks.empty()) {
    std::vector<ScoredTag> candidates;
    for (const auto& d : chunks.description_chunks) {
      if (used_surfaces.count(d.surface) > 0) continue;
      const Chunk& facet = disambiguate(d, chunks.title_chunks);
      const auto it = store.incidence.find({facet.surface, d.surface});
      if (it == store.incidence.end()) continue;
      used_surfaces.insert(d.surface);
      candidates.push_back(
          {d, static_cast<double>(it->second.frequency) * it->second.jaccard, facet.surface});
    }
    std::sort(candidates.begin(), candidates.end(), [](const ScoredTag& a, const ScoredTag& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.chunk.surface < b.chunk.surface;
    });
    if (candidates.size() > k) candidates.resize(k);
    chosen = std::move(candidates);
  }

  if (chosen.size() < k) {
    std::vector<ScoredTag> padding;
    for (const auto& t : chunks.title_chunks) {
      if (used_surfaces.count(t.surface) > 0) continue;
      used_surfaces.insert(t.surface);
      const auto it = store.title_counts.find(t.surface);
      const double count = it == store.title_counts.end()
                               ? 0.0
                               : static_cast<double>(it->second);
      padding.push_back({t, count, t.surface});
    }
    std::sort(padding.begin(), padding.end(), [](const ScoredTag& a, const ScoredTag& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.chunk.surface < b.chunk.surface;
    });
    for (auto& tag : padding) {
      if (chosen.size() >= k) break;
      chosen.push_back(std::move(tag));
    }
  }

  std::sort(chosen.begin(), chosen.end(), [](const ScoredTag& a, const ScoredTag& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.chunk.surface < b.chunk.surface;
  });
  return chosen;
}

}  // namespace folksonet
