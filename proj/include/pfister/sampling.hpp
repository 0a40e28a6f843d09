#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "pfister/domain.hpp"
#include "pfister/modular.hpp"

namespace pfister {

enum class Mode { symbolic, modular };

inline const char* to_string(Mode m) { return m == Mode::symbolic ? "symbolic" : "modular"; }

struct ModularOptions {
  std::uint64_t prime = kMersenne61;
  unsigned samples = 30;
  std::uint64_t seed = 0;
};

/// What a randomized run establishes.
struct SamplingSummary {
  std::uint64_t prime = 0;
  unsigned samples = 0;
  std::uint64_t seed = 0;
  unsigned resamples = 0;
  DegreeBound degree;          // worst degree bound over all checked identities
  // Schwartz-Zippel: log10 of (d / (p - d_den))^samples; kept as a logarithm
  // because the bound routinely underflows a double
  double log10_failure_bound = 0.0;
  std::optional<unsigned> failing_sample;
};

struct SampledOutcome {
  bool passed = false;
  SamplingSummary summary;
  std::optional<std::string> counterexample;
};

/// Runs `check` at `options.samples` independent points of a table with the
/// given parameter/indeterminate counts (plus `extra` trailing variables).
/// A check returns a counterexample description on failure. Points hitting a
/// pole (PoleError) are redrawn, up to kResampleCap times per sample index.
template <class Check>
SampledOutcome run_sampled(unsigned params, unsigned indeterminates, unsigned extra,
                           const ModularOptions& options, Check&& check) {
  const PointSampler sampler(std::size_t{params} + indeterminates + extra, options.prime, options.seed);
  SampledOutcome out;
  out.summary.prime = options.prime;
  out.summary.samples = options.samples;
  out.summary.seed = options.seed;
  if (options.samples == 0) throw UsageError("modular mode needs at least one sample");
  for (unsigned k = 0; k < options.samples; ++k) {
    bool done = false;
    for (unsigned attempt = 0; attempt < kResampleCap && !done; ++attempt) {
      auto point = std::make_shared<const ModularPoint>(sampler.draw(k, attempt));
      auto tracker = std::make_shared<DegreeTracker>();
      const ModularDomain dom(point, params, indeterminates, tracker);
      std::optional<std::string> failure;
      try {
        failure = check(dom);
      } catch (const PoleError&) {
        ++out.summary.resamples;
        continue;
      }
      done = true;
      out.summary.degree.num = std::max(out.summary.degree.num, tracker->worst.num);
      out.summary.degree.den = std::max(out.summary.degree.den, tracker->worst.den);
      if (failure) {
        out.summary.failing_sample = k;
        out.counterexample = "sample " + std::to_string(k) + ": " + *failure;
        out.summary.log10_failure_bound = 0.0;
        return out;
      }
    }
    if (!done) {
      out.summary.failing_sample = k;
      out.counterexample = "sample " + std::to_string(k) + ": resample cap of " +
                           std::to_string(kResampleCap) + " exceeded";
      return out;
    }
  }
  out.passed = true;
  out.summary.log10_failure_bound = log10_schwartz_zippel_bound(out.summary.degree, options.prime, options.samples);
  return out;
}

}  // namespace pfister
