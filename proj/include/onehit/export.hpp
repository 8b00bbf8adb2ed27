#pragma once

// Renderers for strategy tables and overall results, and a CSV reader for
// round-tripping exported tables.

#include <string>
#include <vector>

#include "onehit/overall.hpp"
#include "onehit/strategy.hpp"

namespace onehit {

enum class OutputFormat { Markdown, Csv, JsonLines };

OutputFormat parse_format(const std::string& text);  // "markdown", "csv", "json-lines"

// Markdown groups consecutive player rows with identical marks ("Hard 4 - 11").
// Two-up splits into hard-dealer and soft-dealer sections.
std::string table_markdown(const StrategyTable& table);
// One row per cell, exact fractions plus decimals.
std::string table_csv(const StrategyTable& table, int precision = 6);
std::string table_json_lines(const StrategyTable& table, int precision = 6);
std::string export_table(const StrategyTable& table, OutputFormat format, int precision = 6);

struct CsvCell {
  std::string player;  // HandState key
  std::string dealer;  // DealerInfo key
  Rational ev_hit;
  Rational ev_stand;
  Decision decision = Decision::Stand;
  bool asterisk = false;
};

// Throws std::invalid_argument on a malformed header or row.
std::vector<CsvCell> parse_table_csv(const std::string& text);
bool csv_matches(const std::vector<CsvCell>& cells, const StrategyTable& table);

std::string overall_report(const std::string& label, const OverallResult& result, OutputFormat format,
                           int precision = 6);

}  // namespace onehit
