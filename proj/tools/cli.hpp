#pragma once

#include <iosfwd>
#include <optional>

#include "pfister/pfister_matrix.hpp"

namespace pfister::cli {

/// Test hooks; the shipped binary never sets them.
struct Hooks {
  std::optional<MatrixFault> fault;  // perturbs the constructed matrix before checks
};

/// Exit codes: 0 all identities verified, 1 an identity failed, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace pfister::cli
