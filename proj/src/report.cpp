#include "pfister/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace pfister {

bool Report::all_passed() const {
  return !identities.empty() &&
         std::all_of(identities.begin(), identities.end(), [](const IdentityCheck& c) { return c.passed; });
}

std::optional<double> Report::log10_sz_bound() const {
  std::optional<double> worst;
  for (const IdentityCheck& c : identities) {
    if (!c.sampling) continue;
    worst = worst ? std::max(*worst, c.sampling->log10_failure_bound) : c.sampling->log10_failure_bound;
  }
  return worst;
}

void Report::append(const Report& other) {
  identities.insert(identities.end(), other.identities.begin(), other.identities.end());
  timings_ms.insert(timings_ms.end(), other.timings_ms.begin(), other.timings_ms.end());
  for (const std::string& note : other.notes) {
    if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
  }
}

std::string format_bound(double log10_bound) {
  if (std::isinf(log10_bound)) return "0";
  double exponent = std::floor(log10_bound);
  double mantissa = std::pow(10.0, log10_bound - exponent);
  if (mantissa >= 9.995) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fe%+.0f", mantissa, exponent);
  return buf;
}

nlohmann::ordered_json to_json(const Report& report, bool with_timings) {
  using nlohmann::ordered_json;
  ordered_json ids = ordered_json::array();
  for (const IdentityCheck& c : report.identities) {
    ordered_json j;
    j["name"] = c.name;
    j["paper_ref"] = c.statement;
    j["verdict"] = c.passed ? "pass" : "fail";
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    if (c.sampling) {
      const SamplingSummary& s = *c.sampling;
      j["sampling"] = {{"prime", s.prime},
                       {"samples", s.samples},
                       {"seed", s.seed},
                       {"resamples", s.resamples},
                       {"degree_bound", s.degree.num},
                       {"pole_degree_bound", s.degree.den},
                       {"failure_bound", format_bound(s.log10_failure_bound)}};
    }
    ids.push_back(std::move(j));
  }
  ordered_json out;
  out["identities"] = std::move(ids);
  if (with_timings) {
    ordered_json t = ordered_json::object();
    for (const auto& [name, ms] : report.timings_ms) t[name] = std::round(ms * 1000.0) / 1000.0;
    out["timings_ms"] = std::move(t);
  } else {
    out["timings_ms"] = nullptr;
  }
  if (const auto bound = report.log10_sz_bound()) out["sz_bound"] = format_bound(*bound);
  out["notes"] = report.notes;
  return out;
}

std::string to_text(const Report& report, bool with_timings) {
  std::ostringstream os;
  for (const IdentityCheck& c : report.identities) {
    os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.statement << "]\n";
    if (c.sampling) {
      os << "      sampled " << c.sampling->samples << " points mod " << c.sampling->prime << ", degree bound "
         << c.sampling->degree.num << ", failure bound " << format_bound(c.sampling->log10_failure_bound) << "\n";
    }
    if (c.counterexample) os << "      counterexample: " << *c.counterexample << "\n";
  }
  if (with_timings) {
    for (const auto& [name, ms] : report.timings_ms) os << "time  " << name << ": " << ms << " ms\n";
  }
  if (const auto bound = report.log10_sz_bound()) os << "Schwartz-Zippel bound: " << format_bound(*bound) << "\n";
  for (const std::string& note : report.notes) os << "note: " << note << "\n";
  os << (report.all_passed() ? "ALL IDENTITIES VERIFIED" : "VERIFICATION FAILED") << "\n";
  return os.str();
}

}  // namespace pfister
