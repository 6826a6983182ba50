#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "proportia/algebra.hpp"
#include "proportia/spec_file.hpp"

namespace proportia::testing {

inline const Registry& structures() {
  static const Registry reg = load_spec(PROPORTIA_DATA_DIR "/structures.alg");
  return reg;
}

inline AlgebraPtr structure(const std::string& name) { return structures().get(name); }

inline AlgebraPtr make(std::string_view kind, const BuiltinParams& params) {
  return std::make_shared<const PartialAlgebra>(builtin(kind, params, std::string(kind)));
}

struct RandomShape {
  std::size_t max_carrier = 4;
  // Ranks of the operations to draw, e.g. {2} or {1, 1}.
  std::vector<std::uint32_t> ranks = {2};
  std::size_t max_consts = 1;
  // Probability of an undefined table entry.
  double undefined = 0.0;
};

// Table algebra with carrier e0..e{n-1}, operations f0, f1, ... and constants
// c0, c1, ... pointing at random elements.
inline AlgebraPtr random_algebra(std::mt19937& rng, const RandomShape& shape,
                                 const std::string& name = "rnd") {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, shape.max_carrier)(rng);
  std::vector<std::string> literals;
  for (std::size_t i = 0; i < n; ++i) literals.push_back("e" + std::to_string(i));
  std::vector<FunctionSymbol> fns;
  std::vector<OpTable> ops;
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
  std::bernoulli_distribution hole(shape.undefined);
  for (std::size_t f = 0; f < shape.ranks.size(); ++f) {
    fns.push_back({"f" + std::to_string(f), shape.ranks[f]});
    OpTable t;
    t.rank = shape.ranks[f];
    for (std::size_t r = 0; r < point_count(n, t.rank); ++r)
      t.values.push_back(shape.undefined > 0 && hole(rng) ? kUndefined : pick(rng));
    ops.push_back(std::move(t));
  }
  const std::size_t nc = std::uniform_int_distribution<std::size_t>(0, shape.max_consts)(rng);
  std::vector<std::string> const_names;
  std::vector<Elem> consts;
  for (std::size_t c = 0; c < nc; ++c) {
    const_names.push_back("c" + std::to_string(c));
    consts.push_back(pick(rng));
  }
  return std::make_shared<const PartialAlgebra>(name, Language(fns, const_names), literals,
                                                std::move(ops), std::move(consts));
}

}  // namespace proportia::testing
