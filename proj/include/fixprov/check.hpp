#pragma once

// Randomized consistency checks over the vocabulary and universe of a
// problem, as run by `fixprov check`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixprov/formula.hpp"
#include "fixprov/interpretation.hpp"

namespace fixprov {

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::size_t skipped = 0;
  std::string first_failure;

  bool ok() const { return passed == total; }
};

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 50;
};

/// Suites: nnf-boolean, truth-preservation, fundamental-viterbi,
/// fundamental-posbool, strategy-bound, and model-compatible when the
/// problem's interpretation is model-compatible. `formula` joins the random
/// sentences when given.
std::vector<SuiteResult> run_checks(const Interpretation& pi, const std::optional<Formula>& formula,
                                    const CheckOptions& options);

}  // namespace fixprov
