#include "pfister/tower.hpp"

#include <chrono>

namespace pfister {
namespace {

std::string scaling_statement(unsigned m) {
  const std::string ms = std::to_string(m);
  return "B(Theta^(" + ms + ") g_S, Theta^(" + ms + ") g_T) = psi_" + ms + " B(g_S, g_T) for all S, T in {1.." + ms +
         "}";
}

void check_range(unsigned n, unsigned m) {
  if (n < 1 || n > kMaxFold) throw UsageError("n must lie in 1.." + std::to_string(kMaxFold));
  if (m < 1 || m > n) throw UsageError("level must lie in 1.." + std::to_string(n));
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Report verify_norm_product(unsigned n, unsigned m, Mode mode, const ModularOptions& options) {
  check_range(n, m);
  const auto start = std::chrono::steady_clock::now();
  Report report;
  if (mode == Mode::symbolic) {
    const TowerAlgebra alg(SymbolicDomain::for_fold(n), n);
    for (auto& c : norm_product(alg, m).checks) report.add(std::move(c));
  } else {
    mod::require_verification_prime(options.prime);
    std::vector<std::string> names;
    std::vector<std::string> statements;
    const auto outcome = run_sampled(n, 1u << n, 0, options, [&](const ModularDomain& dom) -> std::optional<std::string> {
      const TowerAlgebra alg(dom, n);
      auto checks = norm_product(alg, m).checks;
      if (names.empty()) {
        for (const auto& c : checks) {
          names.push_back(c.name);
          statements.push_back(c.statement);
        }
      }
      for (const auto& c : checks) {
        if (!c.passed) return c.name + ": " + c.counterexample.value_or("mismatch");
      }
      return std::nullopt;
    });
    std::string statement;
    for (const auto& s : statements) statement += (statement.empty() ? "" : "; ") + s;
    report.add(sampled_check("norm_product_" + std::to_string(m), statement, outcome));
  }
  if (m >= 2) {
    report.notes.push_back("printed norm-product label psi1 read as psi2");
  }
  report.timings_ms.emplace_back("norm_product_" + std::to_string(m), elapsed_ms(start));
  return report;
}

Report verify_scaling(unsigned n, unsigned m, Mode mode, const ModularOptions& options) {
  check_range(n, m);
  const auto start = std::chrono::steady_clock::now();
  Report report;
  const std::string name = "scaling_" + std::to_string(m);
  const std::string drift = "omega_theta_" + std::to_string(m);
  const std::string drift_statement = "omega(Theta^(" + std::to_string(m) + ")) = psi_" + std::to_string(m);
  if (mode == Mode::symbolic) {
    const TowerAlgebra alg(SymbolicDomain::for_fold(n), n);
    const auto theta = alg.theta(m);
    const auto target = pfister_value(alg.domain(), m);
    const ScalingResult r = check_scaling(alg, theta, target, m);
    report.add({name, scaling_statement(m), r.passed(), r.counterexample, std::nullopt});
    const auto w = alg.omega(theta);
    const bool ok = alg.domain().equal(w, target);
    report.add({drift, drift_statement, ok,
                ok ? std::nullopt : std::optional<std::string>("omega = " + alg.domain().render(w)), std::nullopt});
  } else {
    mod::require_verification_prime(options.prime);
    const auto outcome = run_sampled(n, 1u << n, 0, options, [&](const ModularDomain& dom) -> std::optional<std::string> {
      const TowerAlgebra alg(dom, n);
      const auto theta = alg.theta(m);
      const auto target = pfister_value(dom, m);
      const ScalingResult r = check_scaling(alg, theta, target, m);
      if (!r.passed()) return r.counterexample;
      if (!dom.equal(alg.omega(theta), target)) return drift + " fails";
      return std::nullopt;
    });
    report.add(sampled_check(name, scaling_statement(m) + "; " + drift_statement, outcome));
  }
  report.timings_ms.emplace_back(name, elapsed_ms(start));
  return report;
}

Report verify_omega_not_multiplicative(const ModularOptions& options) {
  mod::require_verification_prime(options.prime);
  const unsigned n = 2;
  const PointSampler sampler(n + 4, options.prime, options.seed);
  Report report;
  IdentityCheck check{"omega_not_multiplicative",
                      "omega(x x) != omega(x)^2 for x = g_1 + g_2 in the 2-fold tower", false, std::nullopt,
                      std::nullopt};
  for (unsigned attempt = 0; attempt < kResampleCap && !check.passed; ++attempt) {
    auto point = std::make_shared<const ModularPoint>(sampler.draw(0, attempt));
    const ModularDomain dom(point, n, 4, nullptr);
    try {
      const TowerAlgebra alg(dom, n);
      const auto x = alg.add(alg.generator(1), alg.generator(2));
      const auto lhs = alg.omega(alg.mul(x, x));
      const auto w = alg.omega(x);
      const auto rhs = w * w;
      if (lhs.value() != rhs.value()) {
        check.passed = true;
        check.counterexample = "witness at seed " + std::to_string(options.seed) + ", attempt " +
                               std::to_string(attempt) + ": omega(x x) = " + dom.render(lhs) +
                               ", omega(x)^2 = " + dom.render(rhs);
      }
    } catch (const PoleError&) {
      continue;
    }
  }
  if (!check.passed) check.counterexample = "no witness point found";
  report.add(std::move(check));
  return report;
}

}  // namespace pfister
