#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qbag/contribution.hpp"
#include "qbag/partitions.hpp"
#include "qbag/verdict.hpp"

namespace qbag {

// A set contribution function as seen by the checkers.
struct SetFunction {
  std::string name;
  std::function<double(ContributionContext&, const Mask&)> eval;
  // Single-argument counterpart; needed only by the generalization checker.
  std::function<double(const Qbag&, const SemanticsSpec&, const ArgumentId& x, const ArgumentId& a)> single;
};

SetFunction builtin_function(SetFunctionKind kind, const ShapleyOptions& opts = {});

struct CheckOptions {
  double tolerance = 1e-9;
  std::size_t max_subset_args = 12;     // |A \ {a}| for exhaustive subset checks
  std::size_t max_partition_args = 10;  // Bell(10) = 115975
  std::size_t max_pair_args = 7;        // consistency enumerates pairs of subsets
  std::size_t samples = 2000;           // used beyond the exhaustive bounds
  std::uint64_t seed = 1;
};

enum class QuantifierMode { All, Exists };

PrincipleVerdict check_generalization(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                      const CheckOptions& opts = {});
PrincipleVerdict check_contribution_existence(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                              const ArgumentId& a, const CheckOptions& opts = {});
PrincipleVerdict check_quantitative_contribution_existence(const SetFunction& fn, const Qbag& g,
                                                           const SemanticsSpec& spec, const ArgumentId& a,
                                                           QuantifierMode mode, const CheckOptions& opts = {});
PrincipleVerdict check_directionality(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                      const ArgumentId& a, const CheckOptions& opts = {});
PrincipleVerdict check_counterfactuality(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                         const ArgumentId& a, bool quantitative, const CheckOptions& opts = {});
PrincipleVerdict check_consistency(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                   const ArgumentId& a, const CheckOptions& opts = {});
PrincipleVerdict check_monotonicity(const SetFunction& fn, const Qbag& g, const SemanticsSpec& spec,
                                    const ArgumentId& a, const CheckOptions& opts = {});

// Dispatch. Stability and generalization ignore the topic.
PrincipleVerdict check_principle(PrincipleId principle, const SetFunction& fn, const Qbag& g,
                                 const SemanticsSpec& spec, const ArgumentId& a, const CheckOptions& opts = {});

// Recomputes the witness from scratch; true iff the stated violation still
// holds with margin above the tolerance.
bool replay_witness(PrincipleId principle, const SetFunction& fn, const SemanticsSpec& spec, const Witness& w,
                    const CheckOptions& opts = {});

std::vector<double> default_strength_grid();  // 0, 0.1, ..., 1

struct RandomGraphOptions {
  std::size_t min_arguments = 2;
  std::size_t max_arguments = 6;
  std::vector<double> strength_grid = default_strength_grid();
  std::vector<double> edge_probabilities{0.2, 0.4, 0.6};
};

// Ids a, b, c, ...; edges oriented along a random permutation.
Qbag random_qbag(std::mt19937_64& rng, const RandomGraphOptions& opts = {});
std::vector<Qbag> random_corpus(std::uint64_t seed, std::size_t count, const RandomGraphOptions& opts = {});

struct SearchConfig {
  std::size_t max_exhaustive_arguments = 6;
  std::size_t min_arguments = 2;
  std::size_t graph_count = 200;
  std::vector<double> strength_grid = default_strength_grid();
  std::uint64_t seed = 1;
  std::uint64_t evaluation_budget = default_evaluation_budget();
};

PrincipleVerdict search_counterexample(PrincipleId principle, const SetFunction& fn, const SemanticsSpec& spec,
                                       const SearchConfig& cfg, const CheckOptions& opts = {});

// Greedy argument deletion (never the topic) then edge deletion while the
// checker still reports a violation.
PrincipleVerdict minimize_violation(PrincipleId principle, const SetFunction& fn, const SemanticsSpec& spec,
                                    const Qbag& g, const ArgumentId& a, const CheckOptions& opts = {});

}  // namespace qbag
