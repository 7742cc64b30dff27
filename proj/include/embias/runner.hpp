// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "embias/assoc.hpp"
#include "embias/error.hpp"
#include "embias/lexicon.hpp"

namespace embias {

enum class ErrorKind { data, computation };

inline const char* to_string(ErrorKind k) { return k == ErrorKind::data ? "data" : "computation"; }

struct TestError {
  ErrorKind kind = ErrorKind::data;
  std::string message;
};

/// One suite row: either a result or the error that stopped that test.
struct TestOutcome {
  std::string test_name;
  Category category = Category::BM;
  Variant variant = Variant::custom;
  std::optional<TestResult> result;
  std::optional<TestError> error;
};

using TestRunner = std::function<TestResult(const AssociationTest&)>;

/// Runs `run` on every test with up to `threads` workers. Outcomes are in
/// suite order regardless of scheduling.
inline std::vector<TestOutcome> run_tests(const std::vector<AssociationTest>& tests,
                                          const TestRunner& run, std::size_t threads = 1) {
  std::vector<TestOutcome> out(tests.size());
  auto one = [&](std::size_t i) {
    TestOutcome& o = out[i];
    o.test_name = tests[i].name;
    o.category = tests[i].category;
    o.variant = tests[i].variant;
    try {
      o.result = run(tests[i]);
    } catch (const DataError& e) {
      o.error = TestError{ErrorKind::data, e.what()};
    } catch (const ComputationError& e) {
      o.error = TestError{ErrorKind::computation, e.what()};
    }
  };

  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), tests.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tests.size(); ++i) one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tests.size(); i = next++) {
        try {
          one(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// 0 when every test ran, otherwise the exit code of the most severe error
/// (data errors outrank computation errors).
inline int exit_code_for(const std::vector<TestOutcome>& outcomes) {
  int code = exit_code::kOk;
  for (const auto& o : outcomes) {
    if (!o.error) continue;
    if (o.error->kind == ErrorKind::data) return exit_code::kData;
    code = exit_code::kComputation;
  }
  return code;
}

}  // namespace embias
