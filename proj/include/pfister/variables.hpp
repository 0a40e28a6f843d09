#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pfister {

/// Upper bound on the number of variables a polynomial can mention.
inline constexpr std::size_t kMaxVariables = 72;

/// Largest fold count the engine accepts anywhere (modular mode).
inline constexpr unsigned kMaxFold = 6;

/// Ordered variable layout shared by every polynomial of a session:
/// parameters a1..an first, then indeterminates X1..Xm, then optional fresh Y1..Yk.
/// The order never changes after construction and also fixes the term order
/// (a1 < ... < an < X1 < ... < Xm < Y1 < ...).
class VariableTable {
 public:
  VariableTable(unsigned params, unsigned indeterminates, unsigned fresh = 0);

  /// Table for an n-fold form: n parameters and 2^n indeterminates.
  static std::shared_ptr<const VariableTable> for_fold(unsigned n, unsigned fresh = 0);

  unsigned params() const { return params_; }
  unsigned indeterminates() const { return indeterminates_; }
  unsigned fresh() const { return fresh_; }
  std::size_t size() const { return names_.size(); }

  // 1-based accessors; throw UsageError when out of range.
  std::size_t param_index(unsigned i) const;
  std::size_t x_index(unsigned j) const;
  std::size_t y_index(unsigned j) const;

  bool is_param(std::size_t v) const { return v < params_; }
  bool is_x(std::size_t v) const { return v >= params_ && v < params_ + indeterminates_; }

  const std::string& name(std::size_t v) const { return names_.at(v); }
  std::string latex_name(std::size_t v) const;
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const VariableTable& a, const VariableTable& b) {
    return a.params_ == b.params_ && a.indeterminates_ == b.indeterminates_ && a.fresh_ == b.fresh_;
  }

 private:
  unsigned params_;
  unsigned indeterminates_;
  unsigned fresh_;
  std::vector<std::string> names_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

}  // namespace pfister
