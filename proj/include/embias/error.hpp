// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace embias {

/// Malformed input data: unparsable files, schema violations, OOV under a
/// strict policy. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical precondition failed (zero vector, vanishing residual,
/// non-converged eigen solve). The CLI maps these to exit code 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad command-line usage. Exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kComputation = 1;
inline constexpr int kData = 2;
inline constexpr int kUsage = 64;
}  // namespace exit_code

}  // namespace embias
