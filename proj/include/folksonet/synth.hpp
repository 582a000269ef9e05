#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include "folksonet/corpus.hpp"
#include "folksonet/rng.hpp"

namespace folksonet {

// Deterministic synthetic corpus standing in for the paper's one-month crawl.
// Articles mix a Zipf-popular primary topic with a secondary topic: the title
// names both topic phrases, the description repeats exact phrase/keyword
// units, so recurring (facet, label) pairs knit articles of shared topics
// together. A fraction of articles re-observe an earlier URI with fresh
// impressions and clicks, which is what spreads a resource's tags over
// several exposition bins.
struct SynthConfig {
  std::size_t articles = 200;
  std::size_t topics = 30;
  std::size_t keywords_per_topic = 4;
  double zipf_exponent = 1.1;
  double reobserve_probability = 0.25;
  double zero_impression_probability = 0.05;
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string synth_word(std::size_t index) {
  static constexpr const char* syllables[] = {"ba", "ce", "di", "fo", "gu", "ha", "ki", "lo",
                                              "mu", "ne", "pi", "qo", "ru", "se", "ti", "vo",
                                              "wu", "xe", "yi", "zo", "bra", "cre", "dri", "flo"};
  constexpr std::size_t base = sizeof(syllables) / sizeof(syllables[0]);
  std::string word = syllables[index % base];
  word += syllables[(index / base) % base];
  word += syllables[(index / (base * base)) % base];
  return word;
}

// Zipf draw over ranks [0, n) with P(r) ∝ 1/(r+1)^s, via the precomputed CDF.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double s) : cdf_(n) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), s);
      cdf_[r] = total;
    }
    for (auto& value : cdf_) value /= total;
  }

  template <typename Rng>
  std::size_t operator()(Rng& rng) const {
    const double u = uniform_real01(rng);
    std::size_t lo = 0;
    std::size_t hi = cdf_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cdf_[mid] < u) lo = mid + 1;
      else hi = mid;
    }
    return lo;
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace detail

inline std::vector<Article> synth_corpus(const SynthConfig& config) {
  const std::size_t words_per_topic = 2 + config.keywords_per_topic;
  auto phrase = [&](std::size_t topic) {
    return detail::synth_word(topic * words_per_topic) + ' ' +
           detail::synth_word(topic * words_per_topic + 1);
  };
  auto keyword = [&](std::size_t topic, std::size_t j) {
    return detail::synth_word(topic * words_per_topic + 2 + j);
  };

  SplitMix64 rng(config.seed);
  detail::ZipfSampler zipf(config.topics, config.zipf_exponent);

  struct UriInfo {
    std::string uri;
    std::size_t primary;
    std::size_t secondary;
  };
  std::vector<UriInfo> uris;

  std::vector<Article> articles;
  articles.reserve(config.articles);
  for (std::size_t i = 0; i < config.articles; ++i) {
    std::size_t primary = 0;
    std::size_t secondary = 0;
    std::string uri;
    const bool reobserve =
        !uris.empty() && uniform_real01(rng) < config.reobserve_probability;
    if (reobserve) {
      const auto& info = uris[uniform_index(rng, uris.size())];
      uri = info.uri;
      primary = info.primary;
      secondary = info.secondary;
    } else {
      primary = zipf(rng);
      secondary = zipf(rng);
      for (int attempt = 0; attempt < 10 && secondary == primary; ++attempt) {
        secondary = zipf(rng);
      }
      char buffer[64];
      std::snprintf(buffer, sizeof(buffer), "http://news.example/%05zu", uris.size());
      uri = buffer;
      uris.push_back({uri, primary, secondary});
    }

    Article article;
    char id[32];
    std::snprintf(id, sizeof(id), "a%05zu", i);
    article.id = id;
    article.uri = uri;
    article.title = phrase(primary) + " and " + phrase(secondary);
    article.description = phrase(primary) + " of " + phrase(primary) + ' ' +
                          keyword(primary, uniform_index(rng, config.keywords_per_topic)) +
                          " and " + phrase(secondary) + ' ' +
                          keyword(secondary, uniform_index(rng, config.keywords_per_topic)) +
                          " with " +
                          keyword(primary, uniform_index(rng, config.keywords_per_topic));
    if (uniform_real01(rng) < config.zero_impression_probability) {
      article.impressions = 0;
      article.clicks = 0;
    } else {
      article.impressions = 20 + uniform_index(rng, 4981);
      article.clicks = static_cast<std::uint64_t>(
          static_cast<double>(article.impressions) * uniform_real01(rng) * 0.3);
    }
    char date[16];
    std::snprintf(date, sizeof(date), "2012-06-%02zu", 1 + i * 30 / config.articles);
    article.observed_at = date;
    articles.push_back(std::move(article));
  }
  return articles;
}

}  // namespace folksonet
