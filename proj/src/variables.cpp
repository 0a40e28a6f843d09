#include "pfister/variables.hpp"

#include "pfister/errors.hpp"

namespace pfister {

VariableTable::VariableTable(unsigned params, unsigned indeterminates, unsigned fresh)
    : params_(params), indeterminates_(indeterminates), fresh_(fresh) {
  if (std::size_t{params} + indeterminates + fresh > kMaxVariables) {
    throw UsageError("variable table exceeds " + std::to_string(kMaxVariables) + " variables");
  }
  names_.reserve(params + indeterminates + fresh);
  for (unsigned i = 1; i <= params; ++i) names_.push_back("a" + std::to_string(i));
  for (unsigned j = 1; j <= indeterminates; ++j) names_.push_back("X" + std::to_string(j));
  for (unsigned j = 1; j <= fresh; ++j) names_.push_back("Y" + std::to_string(j));
}

std::shared_ptr<const VariableTable> VariableTable::for_fold(unsigned n, unsigned fresh) {
  if (n < 1 || n > kMaxFold) {
    throw UsageError("fold count must lie in [1, " + std::to_string(kMaxFold) + "], got " +
                     std::to_string(n));
  }
  return std::make_shared<const VariableTable>(n, 1u << n, fresh);
}

std::size_t VariableTable::param_index(unsigned i) const {
  if (i < 1 || i > params_) throw UsageError("parameter a" + std::to_string(i) + " not in table");
  return i - 1;
}

std::size_t VariableTable::x_index(unsigned j) const {
  if (j < 1 || j > indeterminates_) {
    throw UsageError("indeterminate X" + std::to_string(j) + " not in table");
  }
  return params_ + j - 1;
}

std::size_t VariableTable::y_index(unsigned j) const {
  if (j < 1 || j > fresh_) throw UsageError("fresh variable Y" + std::to_string(j) + " not in table");
  return params_ + indeterminates_ + j - 1;
}

std::string VariableTable::latex_name(std::size_t v) const {
  const std::string& n = names_.at(v);
  return n.substr(0, 1) + "_{" + n.substr(1) + "}";
}

std::optional<std::size_t> VariableTable::find(std::string_view name) const {
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

}  // namespace pfister
