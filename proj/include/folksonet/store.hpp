#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "folksonet/context.hpp"
#include "folksonet/corpus.hpp"

namespace folksonet {

// The ingested store: the validated articles, the chunker configuration they
// were chunked with, and the accumulated formal context. Everything
// downstream (suggestion, network building, experiments) loads this.
struct Store {
  std::vector<Article> articles;
  ChunkerConfig chunker;
  FormalContext context;
};

struct BuildStoreResult {
  Store store;
  std::vector<Diagnostic> diagnostics;  // articles recorded with no incidences
};

inline BuildStoreResult build_store(std::vector<Article> articles, ChunkerConfig config) {
  BuildStoreResult result;
  result.store.chunker = std::move(config);
  result.store.articles = std::move(articles);
  for (const auto& article : result.store.articles) {
    const ArticleChunks chunks = chunk_article(article, result.store.chunker);
    if (auto diagnostic = accumulate_context(result.store.context, article, chunks)) {
      result.diagnostics.push_back(std::move(*diagnostic));
    }
  }
  return result;
}

inline constexpr const char* kStoreFormat = "folksonet-store/1";

// Single-document JSON serialization. Incidence weights persist as integer
// frequencies only; the Jaccard weight of a pair is a pure function of the
// two surfaces and is recomputed on load, which keeps the file exact.
inline void save_store(const Store& store, std::ostream& out) {
  nlohmann::json doc;
  doc["format"] = kStoreFormat;
  doc["chunker"]["max_chunk_tokens"] = store.chunker.max_chunk_tokens;
  doc["chunker"]["stopwords"] = store.chunker.stopwords;

  auto articles = nlohmann::json::array();
  for (const auto& article : store.articles) articles.push_back(article_to_json(article));
  doc["articles"] = std::move(articles);

  auto titles = nlohmann::json::array();
  for (const auto& surface : store.context.titles) {
    const auto it = store.context.title_counts.find(surface);
    const std::uint64_t count = it == store.context.title_counts.end() ? 0 : it->second;
    titles.push_back({{"surface", surface}, {"count", count}});
  }
  doc["context"]["titles"] = std::move(titles);
  doc["context"]["descriptions"] = store.context.descriptions;

  auto incidence = nlohmann::json::array();
  for (const auto& [key, weight] : store.context.incidence) {
    incidence.push_back({{"title", key.first},
                         {"description", key.second},
                         {"frequency", weight.frequency}});
  }
  doc["context"]["incidence"] = std::move(incidence);

  out << doc.dump(2) << '\n';
}

inline Store load_store(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || doc.value("format", "") != kStoreFormat) {
    throw std::runtime_error("load_store: not a folksonet store file");
  }
  Store store;
  store.chunker.max_chunk_tokens = doc.at("chunker").at("max_chunk_tokens").get<std::size_t>();
  store.chunker.stopwords =
      doc.at("chunker").at("stopwords").get<std::set<std::string>>();
  for (const auto& record : doc.at("articles")) {
    auto outcome = validate_article(record);
    if (auto* diagnostic = std::get_if<Diagnostic>(&outcome)) {
      throw std::runtime_error("load_store: invalid article in store: " + diagnostic->message);
    }
    store.articles.push_back(std::move(std::get<Article>(outcome)));
  }
  const auto& context = doc.at("context");
  for (const auto& entry : context.at("titles")) {
    const auto surface = entry.at("surface").get<std::string>();
    store.context.titles.insert(surface);
    const auto count = entry.at("count").get<std::uint64_t>();
    if (count > 0) store.context.title_counts[surface] = count;
  }
  store.context.descriptions = context.at("descriptions").get<std::set<std::string>>();
  for (const auto& entry : context.at("incidence")) {
    auto title = entry.at("title").get<std::string>();
    auto description = entry.at("description").get<std::string>();
    IncidenceWeight weight;
    weight.frequency = entry.at("frequency").get<std::uint64_t>();
    weight.jaccard = jaccard(surface_tokens(title), surface_tokens(description));
    store.context.incidence[{std::move(title), std::move(description)}] = weight;
  }
  if (!store.context.well_formed()) {
    throw std::runtime_error("load_store: incidence relation violates I ⊆ T × D");
  }
  return store;
}

}  // namespace folksonet
