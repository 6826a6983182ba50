#pragma once

// Algebra spec files. Grammar in docs/spec-format.md.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "proportia/algebra.hpp"

namespace proportia {

struct Registry {
  std::map<std::string, Language> languages;
  std::map<std::string, AlgebraPtr> algebras;
  // Algebra names in declaration order.
  std::vector<std::string> order;

  AlgebraPtr get(const std::string& name) const;
  bool empty() const { return algebras.empty(); }
};

Registry parse_spec(std::string_view text);
Registry load_spec(const std::string& path);

}  // namespace proportia
