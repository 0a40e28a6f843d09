#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfister/sampling.hpp"

namespace pfister {

/// Verdict on one named identity.
struct IdentityCheck {
  std::string name;
  std::string statement;  // the identity in plain notation
  bool passed = false;
  std::optional<std::string> counterexample;
  std::optional<SamplingSummary> sampling;
};

struct Report {
  std::vector<IdentityCheck> identities;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<std::string> notes;

  bool all_passed() const;
  /// log10 of the worst Schwartz-Zippel bound over the sampled identities, if any were sampled.
  std::optional<double> log10_sz_bound() const;
  void append(const Report& other);
  void add(IdentityCheck check) { identities.push_back(std::move(check)); }
};

inline IdentityCheck sampled_check(std::string name, std::string statement, const SampledOutcome& outcome) {
  return {std::move(name), std::move(statement), outcome.passed, outcome.counterexample, outcome.summary};
}

/// {"identities": [...], "timings_ms": ..., "sz_bound"?: ..., "notes": [...]}.
/// Timings are measured wall-clock values and are emitted only on request so
/// that identical runs produce identical bytes.
nlohmann::ordered_json to_json(const Report& report, bool with_timings);
std::string to_text(const Report& report, bool with_timings);
/// Scientific notation for 10^log10_bound, valid far below the double range.
std::string format_bound(double log10_bound);

}  // namespace pfister
