#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbag/engine.hpp"
#include "qbag/graph.hpp"
#include "qbag/semantics.hpp"

namespace qbag {

struct SetContributor {
  IdSet members;
  ArgumentId topic;
};

using Partition = std::vector<IdSet>;

enum class GradientAggregator { Max, Min, MaxAbs };
enum class SingleKind { Removal, IntrinsicRemoval, Shapley, Gradient };
enum class SetFunctionKind { Removal, IntrinsicRemoval, Shapley, GradientMax, GradientMin, GradientMaxAbs };

const char* to_string(SingleKind k);
const char* to_string(SetFunctionKind k);  // CLI names: removal, intrinsic, shapley, gradient-max, ...
SetFunctionKind set_function_from_string(const std::string& name);
const std::vector<SetFunctionKind>& all_set_functions();

// 2^20 unless QBAG_EVAL_BUDGET is set.
std::uint64_t default_evaluation_budget();

struct ShapleyOptions {
  std::uint64_t budget = default_evaluation_budget();
  bool monte_carlo = false;  // permit sampling when exact enumeration exceeds the budget
  std::size_t samples = 20000;
  std::uint64_t seed = 20240601;
};

struct ContributionResult {
  double value = 0.0;
  std::string function;
  std::string semantics;
  IdSet contributor;
  ArgumentId topic;
  std::size_t evaluations = 0;
  std::optional<double> standard_error;  // set only by the sampling estimator
};

// Memoizes sigma(topic) over removal masks for one (graph, semantics, topic).
class ContributionContext {
 public:
  ContributionContext(const Qbag& g, const SemanticsSpec& spec, const ArgumentId& topic);

  const Engine& engine() const noexcept { return engine_; }
  std::size_t topic() const noexcept { return topic_; }
  const std::vector<std::size_t>& others() const noexcept { return others_; }
  // Contributor mask; rejects the topic and unknown ids.
  Mask contributor_mask(const IdSet& members) const;

  double sigma();
  double tau() const { return engine_.tau(topic_); }
  double sigma_without(const Mask& removed);
  double sigma_detached(const Mask& x);
  double gradient(std::size_t x);
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  Engine engine_;
  std::size_t topic_;
  std::vector<std::size_t> others_;
  std::unordered_map<Mask, double> memo_;
  std::vector<std::optional<double>> gradients_;
  std::size_t evaluations_ = 0;
};

// Mask-level set functions, shared by the public API and the principle checkers.
double removal(ContributionContext& ctx, const Mask& x);
double intrinsic_removal(ContributionContext& ctx, const Mask& x);
double shapley(ContributionContext& ctx, const Mask& x, const ShapleyOptions& opts = {},
               double* standard_error = nullptr);
double gradient(ContributionContext& ctx, const Mask& x, GradientAggregator psi);
double partition_shapley(ContributionContext& ctx, const std::vector<Mask>& blocks, std::size_t which,
                         const ShapleyOptions& opts = {}, double* standard_error = nullptr);
double set_contribution(SetFunctionKind kind, ContributionContext& ctx, const Mask& x,
                        const ShapleyOptions& opts = {});

ContributionResult sctrb_removal(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x);
ContributionResult sctrb_intrinsic_removal(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x);
ContributionResult sctrb_shapley(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x,
                                 const ShapleyOptions& opts = {});
ContributionResult sctrb_gradient(const Qbag& g, const SemanticsSpec& spec, const SetContributor& x,
                                  GradientAggregator psi);
ContributionResult sctrb(SetFunctionKind kind, const Qbag& g, const SemanticsSpec& spec, const SetContributor& x,
                         const ShapleyOptions& opts = {});
ContributionResult pctrb_shapley(const Qbag& g, const SemanticsSpec& spec, const IdSet& x, const Partition& p,
                                 const ArgumentId& a, const ShapleyOptions& opts = {});

// Single-argument definitions, computed without the set machinery above.
ContributionResult single_ctrb(SingleKind kind, const Qbag& g, const SemanticsSpec& spec, const ArgumentId& x,
                               const ArgumentId& a, const ShapleyOptions& opts = {});

inline constexpr double kSignTolerance = 1e-9;
int sign_of(double v, double tol = kSignTolerance);

struct SignMapRow {
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::vector<int> signs;
};
struct SignMap {
  std::vector<std::string> labels;
  std::vector<SignMapRow> rows;
  std::string csv() const;
};
std::string set_label(const IdSet& s);  // members joined by '+'

SignMap sign_map(const Qbag& g, const SemanticsSpec& spec, const ArgumentId& a, const std::vector<IdSet>& sets,
                 const ArgumentId& arg1, const ArgumentId& arg2, double step,
                 SetFunctionKind fn = SetFunctionKind::Removal);

}  // namespace qbag
