#pragma once

// Provenance evaluation of fixed-point formulas.
//
// Least fixed points are computed by Kleene iteration from the all-zero table
// until exact stabilization. Greatest fixed points start at the top table;
// in S∞ the descending iteration is accelerated by widening exponents at a
// threshold B, and a candidate is accepted only if it is an exact fixed point
// and the run at 2B reproduces it.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fixprov/formula.hpp"
#include "fixprov/hom.hpp"
#include "fixprov/interpretation.hpp"
#include "fixprov/semiring.hpp"

namespace fixprov {

struct EvalConfig {
  std::size_t step_cap = 10000;
  std::uint32_t widen_b0 = 8;
  std::uint32_t widen_bmax = 64;
  /// Largest number of monomials an S∞ table may hold during iteration.
  std::size_t term_cap = 20000;
  std::ostream* trace = nullptr;  // per-step tables when set

  /// Defaults, with the step cap taken from FIXPROV_STEP_CAP if set.
  static EvalConfig from_env();
};

/// Total map A^arity -> K, tuples in `tuple_index` order.
struct ValuationTable {
  std::string relation;
  std::size_t arity = 0;
  std::vector<Value> entries;

  friend bool operator==(const ValuationTable& a, const ValuationTable& b) { return a.entries == b.entries; }
};

ValuationTable constant_table(const std::string& relation, std::size_t arity, const Universe& universe,
                              const Value& v);
/// "R(u)=x, R(v)=0"
std::string format_table(const ValuationTable& t, const Semiring& k, const Universe& universe);
/// Pointwise natural order.
bool table_leq(const ValuationTable& a, const ValuationTable& b, const Semiring& k);

enum class FixpointKind { Lfp, Gfp };

struct FixpointReport {
  FixpointKind kind = FixpointKind::Lfp;
  std::size_t steps = 0;
  std::optional<std::uint32_t> widening_threshold;
  bool verified = false;
  ValuationTable table;
};

using UpdateOperator = std::function<ValuationTable(const ValuationTable&)>;

/// F(g)(ā) = π[R ↦ g]⟦θ(ā)⟧ where θ's free variables are `params` and R is
/// its only free fixed-point variable.
UpdateOperator update_operator(const Formula& theta, const std::vector<std::string>& params, const std::string& relation,
                               const Interpretation& pi, const EvalConfig& config = {});

/// Throws IterationDiverged past the step cap.
FixpointReport lfp_iterate(const UpdateOperator& f, const std::string& relation, std::size_t arity,
                           const Universe& universe, const Semiring& k, const EvalConfig& config = {});

/// Throws GfpUnsupportedCarrier, WideningDiverged or IterationDiverged.
FixpointReport gfp_iterate_widened(const UpdateOperator& f, const std::string& relation, std::size_t arity,
                                   const Universe& universe, const Semiring& k, const EvalConfig& config = {});

/// Carriers admitting greatest fixed points here: fully continuous and
/// either absorptive or finite.
bool supports_gfp(const Semiring& k);

/// π⟦φ⟧ for a sentence. Negations are pushed to the literals first.
Value evaluate(const Formula& sentence, const Interpretation& pi, const EvalConfig& config = {});

/// h(P) for a value of a sorp/sorpdual carrier.
Value specialize(const Value& v, const Semiring& source, const TokenAssignment& h, const Semiring& target);

/// Classical truth by iteration over sets of tuples; works on the raw tree.
bool boolean_model_check(const Formula& sentence, const Structure& structure);

/// π⟦φ⟧ ≠ 0 for model-compatible π. Throws NotModelCompatible.
bool satisfiable_mod_pi(const Formula& sentence, const Interpretation& pi, const EvalConfig& config = {});
/// π⟦¬φ⟧ = 0 for model-compatible π. Throws NotModelCompatible.
bool valid_mod_pi(const Formula& sentence, const Interpretation& pi, const EvalConfig& config = {});

}  // namespace fixprov
