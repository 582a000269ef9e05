#pragma once

#include <cstddef>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace folksonet {

enum class SourceField { Title, Description };

// A flat, non-overlapping, non-recursive span of text tokens. The surface is
// the tokens joined by single spaces; the span holds half-open token offsets
// into the tokenized source text.
struct Chunk {
  std::string surface;
  std::vector<std::string> tokens;
  SourceField source_field = SourceField::Title;
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
};

struct ChunkerConfig {
  std::set<std::string> stopwords;
  std::size_t max_chunk_tokens = 4;
};

// Built-in English stopword list; data/stopwords.txt ships the same content
// for users who want to edit a copy (tests keep the two in sync).
inline const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",     "about",   "above", "after", "again",  "all",   "an",    "and",
      "any",   "are",     "as",    "at",    "be",     "been",  "before", "being",
      "below", "between", "both",  "but",   "by",     "for",   "from",  "had",
      "has",   "have",    "having", "he",   "her",    "here",  "hers",  "him",
      "his",   "how",     "i",     "if",    "in",     "into",  "is",    "it",
      "its",   "itself",  "just",  "me",    "more",   "most",  "my",    "no",
      "nor",   "not",     "now",   "of",    "off",    "on",    "once",  "only",
      "or",    "other",   "our",   "out",   "over",   "own",   "same",  "she",
      "so",    "some",    "such",  "than",  "that",   "the",   "their", "them",
      "then",  "there",   "these", "they",  "this",   "those", "through", "to",
      "too",   "under",   "until", "up",    "very",   "was",   "we",    "were",
      "what",  "when",    "where", "which", "while",  "who",   "whom",  "why",
      "will",  "with",    "you",   "your"};
  return words;
}

inline ChunkerConfig default_chunker_config() {
  return ChunkerConfig{default_stopwords(), 4};
}

// Stopword file: one token per line, '#' starts a comment, blank lines ignored.
// Tokens are normalized the same way tokenize() normalizes text.
inline std::set<std::string> parse_stopword_file(std::istream& in);

// Lowercased tokens split on non-alphanumeric boundaries, in input order.
// ASCII letters are case-folded; multi-byte UTF-8 sequences count as token
// characters and pass through unchanged.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char c : text) {
    const auto byte = static_cast<unsigned char>(c);
    if (byte >= 0x80) {
      current.push_back(c);
    } else if (byte >= 'a' && byte <= 'z') {
      current.push_back(c);
    } else if (byte >= 'A' && byte <= 'Z') {
      current.push_back(static_cast<char>(byte - 'A' + 'a'));
    } else if (byte >= '0' && byte <= '9') {
      current.push_back(c);
    } else {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// Chunks are maximal runs of consecutive non-stopword tokens; runs longer than
// max_chunk_tokens are split greedily left to right. The output is flat:
// spans are pairwise disjoint and never nested.
inline std::vector<Chunk> chunk(const std::vector<std::string>& tokens,
                                const ChunkerConfig& config, SourceField field) {
  if (config.max_chunk_tokens < 1) {
    throw std::invalid_argument("chunk: max_chunk_tokens must be >= 1");
  }
  std::vector<Chunk> chunks;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (config.stopwords.count(tokens[i]) > 0) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < tokens.size() && config.stopwords.count(tokens[run_end]) == 0) {
      ++run_end;
    }
    for (std::size_t begin = i; begin < run_end; begin += config.max_chunk_tokens) {
      const std::size_t end = std::min(begin + config.max_chunk_tokens, run_end);
      Chunk c;
      c.source_field = field;
      c.span_begin = begin;
      c.span_end = end;
      c.tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                      tokens.begin() + static_cast<std::ptrdiff_t>(end));
      for (std::size_t t = begin; t < end; ++t) {
        if (t > begin) c.surface.push_back(' ');
        c.surface += tokens[t];
      }
      chunks.push_back(std::move(c));
    }
    i = run_end;
  }
  return chunks;
}

inline std::set<std::string> parse_stopword_file(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (const auto& token : tokenize(line)) words.insert(token);
  }
  return words;
}

}  // namespace folksonet
