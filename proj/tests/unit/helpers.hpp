#pragma once

#include <initializer_list>
#include <random>
#include <set>
#include <string>

#include "qbag/graph.hpp"
#include "qbag/semantics.hpp"

namespace th {

inline qbag::IdSet ids(std::initializer_list<const char*> xs) {
  qbag::IdSet s;
  for (const auto* x : xs) s.insert(qbag::ArgumentId(x));
  return s;
}

inline std::set<std::string> names(const qbag::IdSet& s) {
  std::set<std::string> out;
  for (const auto& id : s) out.insert(id.str());
  return out;
}

inline const char* const kPresets[] = {"QE", "DFQuAD", "SD-DFQuAD", "EB", "EBT"};

}  // namespace th
