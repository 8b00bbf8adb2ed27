#pragma once

// Checks computed results against the reference fixture file.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "onehit/cards.hpp"

namespace onehit {

struct FixtureOutcome {
  std::string suite;
  std::string id;
  bool passed = false;
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::vector<FixtureOutcome> outcomes;
  std::size_t passed() const;
  std::size_t failed() const;
};

nlohmann::json load_fixtures(const std::string& path);

// Variant block {"visibility","decks","dealer","payout"}; missing keys keep defaults.
VariantConfig variant_from_json(const nlohmann::json& j);

// Runs every fixture, or only those of `suite`. Throws std::invalid_argument
// for an unknown suite or fixture kind.
VerifyReport verify_fixtures(const nlohmann::json& fixtures, const std::optional<std::string>& suite = std::nullopt);

std::vector<std::string> fixture_suites(const nlohmann::json& fixtures);

}  // namespace onehit
