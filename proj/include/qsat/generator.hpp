// Copyright 2026 The qsat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random instances. Output depends only on the options: the raw
// mt19937_64 stream is reduced by modulo, never through the standard
// distributions, whose algorithms vary between library versions.
//
// Scalar parts are zero with probability 1/2, otherwise p/q with
// |p| <= 9 and 1 <= q <= 4.

#ifndef QSAT_GENERATOR_HPP
#define QSAT_GENERATOR_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

#include "qsat/classical2sat.hpp"
#include "qsat/exactfield.hpp"
#include "qsat/instance.hpp"

namespace qsat {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Weights for constraint ranks 1..4.
using RankDist = std::array<double, 4>;

/// Parses "1:0.5,2:0.3,3:0.15,4:0.05"; omitted ranks get weight 0.
RankDist parse_rank_dist(std::string_view spec);

struct GenOptions {
  std::size_t n = 2;
  std::size_t pairs = 1;
  RankDist rank_dist{1.0, 0.0, 0.0, 0.0};
  std::uint64_t seed = 0;
  /// One-qubit constraints drawn in addition to the pairs.
  std::size_t units = 0;
  /// Chance that a rank-1 constraint is a product covector.
  double product_fraction = 0.0;
};

Rational random_rational(Rng &rng);
Scalar random_scalar(Rng &rng);
Vec random_vec(Rng &rng, std::size_t dim);
ConstraintTensor random_tensor(Rng &rng, bool product = false);

QSatInstance generate_instance(const GenOptions &opts);

/// m random 2-literal clauses over n variables (tautologies are dropped).
Cnf2 random_cnf(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace qsat

#endif  // QSAT_GENERATOR_HPP
