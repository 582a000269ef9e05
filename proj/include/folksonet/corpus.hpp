#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace folksonet {

// One web document. `observed_at` is an ISO-8601 calendar date (UTC); only its
// ordering is used, so it stays a validated string.
struct Article {
  std::string id;
  std::string uri;
  std::string title;
  std::string description;
  std::uint64_t impressions = 0;
  std::uint64_t clicks = 0;
  std::string observed_at;

  friend bool operator==(const Article&, const Article&) = default;
};

enum class DiagnosticCode {
  MalformedRecord,
  MissingUri,
  EmptyTitle,
  ClicksExceedImpressions,
  BadDate,
  DuplicateId,
  NoTitleChunks,
};

struct Diagnostic {
  std::size_t line = 0;  // 1-based input line; 0 when not tied to a line
  DiagnosticCode code = DiagnosticCode::MalformedRecord;
  std::string message;
};

struct ParseResult {
  std::vector<Article> articles;
  std::vector<Diagnostic> diagnostics;
};

// Line-delimited corpus records; JSON Lines is the only documented encoding.
enum class CorpusFormat { JsonLines };

namespace detail {

inline bool is_digits(std::string_view s, std::size_t from, std::size_t count) {
  for (std::size_t i = from; i < from + count; ++i) {
    if (i >= s.size() || s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

inline bool valid_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  if (!is_digits(s, 0, 4) || !is_digits(s, 5, 2) || !is_digits(s, 8, 2)) return false;
  const int year = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr int days_in_month[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int max_day = days_in_month[month - 1];
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  if (month == 2 && leap) max_day = 29;
  return day <= max_day;
}

inline bool get_string(const nlohmann::json& record, const char* key, std::string& out) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_string()) return false;
  out = it->get<std::string>();
  return true;
}

inline bool get_count(const nlohmann::json& record, const char* key, std::uint64_t& out) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_number_unsigned()) return false;
  out = it->get<std::uint64_t>();
  return true;
}

}  // namespace detail

// Checks one parsed record against the Article invariants. Returns the
// Article, or the diagnostic naming the first violated rule.
inline std::variant<Article, Diagnostic> validate_article(const nlohmann::json& record,
                                                          std::size_t line = 0) {
  auto fail = [line](DiagnosticCode code, std::string message) {
    return Diagnostic{line, code, std::move(message)};
  };
  if (!record.is_object()) return fail(DiagnosticCode::MalformedRecord, "record is not an object");

  Article a;
  if (!detail::get_string(record, "id", a.id) || a.id.empty()) {
    return fail(DiagnosticCode::MalformedRecord, "missing id");
  }
  if (!detail::get_string(record, "uri", a.uri) || a.uri.empty()) {
    return fail(DiagnosticCode::MissingUri, "missing uri");
  }
  if (!detail::get_string(record, "title", a.title) || a.title.empty()) {
    return fail(DiagnosticCode::EmptyTitle, "empty title");
  }
  if (!detail::get_string(record, "description", a.description)) {
    return fail(DiagnosticCode::MalformedRecord, "missing description");
  }
  if (!detail::get_count(record, "impressions", a.impressions)) {
    return fail(DiagnosticCode::MalformedRecord, "impressions is not a non-negative integer");
  }
  if (!detail::get_count(record, "clicks", a.clicks)) {
    return fail(DiagnosticCode::MalformedRecord, "clicks is not a non-negative integer");
  }
  if (a.clicks > a.impressions) {
    return fail(DiagnosticCode::ClicksExceedImpressions, "clicks exceed impressions");
  }
  if (!detail::get_string(record, "observed_at", a.observed_at) ||
      !detail::valid_iso_date(a.observed_at)) {
    return fail(DiagnosticCode::BadDate, "observed_at is not an ISO-8601 date");
  }
  return a;
}

// Parses a line-delimited corpus stream. Valid articles come back in input
// order; every rejected line yields exactly one diagnostic, so
// articles.size() + diagnostics.size() equals the number of non-empty lines.
inline ParseResult parse_corpus(std::istream& in, CorpusFormat format = CorpusFormat::JsonLines) {
  (void)format;  // JsonLines is the only encoding
  ParseResult result;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      result.diagnostics.push_back(
          {line_number, DiagnosticCode::MalformedRecord, "malformed record"});
      continue;
    }
    auto outcome = validate_article(record, line_number);
    if (auto* diag = std::get_if<Diagnostic>(&outcome)) {
      result.diagnostics.push_back(std::move(*diag));
      continue;
    }
    auto& article = std::get<Article>(outcome);
    if (!seen_ids.insert(article.id).second) {
      result.diagnostics.push_back(
          {line_number, DiagnosticCode::DuplicateId, "duplicate id: " + article.id});
      continue;
    }
    result.articles.push_back(std::move(article));
  }
  return result;
}

inline nlohmann::json article_to_json(const Article& a) {
  return nlohmann::json{{"id", a.id},
                        {"uri", a.uri},
                        {"title", a.title},
                        {"description", a.description},
                        {"impressions", a.impressions},
                        {"clicks", a.clicks},
                        {"observed_at", a.observed_at}};
}

// Canonical JSON Lines serialization; parse_corpus() round-trips it.
inline void serialize_corpus(const std::vector<Article>& articles, std::ostream& out) {
  for (const auto& article : articles) {
    out << article_to_json(article).dump() << '\n';
  }
}

inline const char* diagnostic_code_name(DiagnosticCode code) {
  switch (code) {
    case DiagnosticCode::MalformedRecord: return "malformed-record";
    case DiagnosticCode::MissingUri: return "missing-uri";
    case DiagnosticCode::EmptyTitle: return "empty-title";
    case DiagnosticCode::ClicksExceedImpressions: return "clicks-exceed-impressions";
    case DiagnosticCode::BadDate: return "bad-date";
    case DiagnosticCode::DuplicateId: return "duplicate-id";
    case DiagnosticCode::NoTitleChunks: return "no-title-chunks";
  }
  return "unknown";
}

}  // namespace folksonet
