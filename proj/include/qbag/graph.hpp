#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qbag/error.hpp"

namespace qbag {

class ArgumentId {
 public:
  ArgumentId() = default;
  ArgumentId(std::string value) : value_(std::move(value)) {}
  ArgumentId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend bool operator==(const ArgumentId&, const ArgumentId&) = default;
  friend std::strong_ordering operator<=>(const ArgumentId& l, const ArgumentId& r) {
    return l.value_ <=> r.value_;
  }

 private:
  std::string value_;
};

using IdSet = std::set<ArgumentId>;
using Edge = std::pair<ArgumentId, ArgumentId>;  // (source, target)
using EdgeSet = std::set<Edge>;

struct Argument {
  ArgumentId id;
  double initial_strength = 0.0;
  friend bool operator==(const Argument&, const Argument&) = default;
};

struct Violation {
  std::string rule;
  std::string message;
  std::vector<std::string> elements;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  std::string summary() const;
};

// Immutable value. Construction does not validate so that `validate` can
// describe broken candidates; every operation that needs a well-formed graph
// checks first.
class Qbag {
 public:
  Qbag() = default;
  Qbag(std::vector<Argument> arguments, EdgeSet attacks, EdgeSet supports);

  const std::vector<Argument>& arguments() const noexcept { return arguments_; }
  const EdgeSet& attacks() const noexcept { return attacks_; }
  const EdgeSet& supports() const noexcept { return supports_; }

  std::size_t size() const noexcept { return arguments_.size(); }
  bool contains(const ArgumentId& id) const;
  double initial_strength(const ArgumentId& id) const;
  std::vector<ArgumentId> ids() const;
  IdSet id_set() const;

  friend bool operator==(const Qbag&, const Qbag&) = default;

 private:
  std::vector<Argument> arguments_;  // sorted by id, duplicates kept for validate
  EdgeSet attacks_;
  EdgeSet supports_;
};

ValidationReport validate(const Qbag& g);
// Throws Error(Cycle) or Error(InvalidGraph) carrying the report summary.
void require_valid(const Qbag& g);

Qbag restrict(const Qbag& g, const IdSet& keep);
Qbag detach_incoming(const Qbag& g, const IdSet& x_set);
Qbag set_initial_strength(const Qbag& g, const ArgumentId& x, double eps);
Qbag remove_edge(const Qbag& g, const Edge& e);

std::vector<ArgumentId> topological_order(const Qbag& g);
bool can_reach(const Qbag& g, const ArgumentId& x, const ArgumentId& a);
IdSet influencers(const Qbag& g, const ArgumentId& a, bool include_topic);

// Consistent renaming; ids missing from the map keep their name.
Qbag relabel(const Qbag& g, const std::map<ArgumentId, ArgumentId>& mapping);

}  // namespace qbag
