#pragma once

#include <cstddef>
#include <vector>

#include "qbag/dual.hpp"
#include "qbag/graph.hpp"
#include "qbag/semantics.hpp"

namespace qbag {

using Mask = std::vector<bool>;

// Index-based evaluator over one validated graph. Arguments are indexed in
// id order. Masks select arguments removed from the graph (restriction to the
// complement) and arguments whose incoming edges from outside the mask are
// dropped (detach_incoming).
class Engine {
 public:
  Engine(const Qbag& g, SemanticsSpec spec);

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t index(const ArgumentId& id) const;
  const ArgumentId& id(std::size_t i) const { return ids_[i]; }
  double tau(std::size_t i) const { return tau_[i]; }
  const SemanticsSpec& spec() const noexcept { return spec_; }
  const Qbag& graph() const noexcept { return graph_; }
  const std::vector<std::size_t>& order() const noexcept { return order_; }

  // Arguments with a path to `a`, including `a`.
  const Mask& ancestors(std::size_t a) const { return ancestors_[a]; }
  bool reaches(std::size_t x, std::size_t a) const { return ancestors_[a][x]; }

  Mask empty_mask() const { return Mask(size(), false); }
  Mask mask_of(const IdSet& ids) const;
  IdSet ids_of(const Mask& mask) const;

  std::vector<double> evaluate() const;
  double strength(std::size_t topic) const;
  double strength(std::size_t topic, const Mask& removed) const;
  double strength(std::size_t topic, const Mask& removed, const Mask& detached) const;
  // Same, with tau(x) overridden for one argument.
  double strength_with_tau(std::size_t topic, std::size_t x, double tau_x) const;

  std::vector<Dual> evaluate_dual(std::size_t seed) const;
  // Partial of sigma(topic) w.r.t. tau(seed) (sign of the seeding direction applied).
  double derivative(std::size_t topic, std::size_t seed) const;

  struct Parent {
    std::size_t index;
    int sign;  // -1 attack, +1 support
  };
  const std::vector<Parent>& parents(std::size_t i) const { return parents_[i]; }

 private:
  template <class T>
  void run(std::vector<T>& out, const std::vector<T>& w, const Mask* removed, const Mask* detached,
           const Mask* only) const;

  Qbag graph_;
  SemanticsSpec spec_;
  std::vector<ArgumentId> ids_;
  std::vector<double> tau_;
  std::vector<std::vector<Parent>> parents_;
  std::vector<std::size_t> order_;
  std::vector<Mask> ancestors_;
};

}  // namespace qbag
