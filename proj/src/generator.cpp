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

#include "qsat/generator.hpp"

#include <charconv>
#include <string>

namespace qsat {

RankDist parse_rank_dist(std::string_view spec) {
  RankDist dist{0.0, 0.0, 0.0, 0.0};
  double total = 0.0;
  while (!spec.empty()) {
    std::size_t comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("rank-dist entry '" + std::string(item) + "' lacks ':'");
    int r = 0;
    auto [p1, e1] = std::from_chars(item.data(), item.data() + colon, r);
    if (e1 != std::errc() || p1 != item.data() + colon || r < 1 || r > 4)
      throw ParseError("rank-dist: rank must be 1..4 in '" + std::string(item) + "'");
    double w = 0.0;
    try {
      std::size_t used = 0;
      std::string wtext(item.substr(colon + 1));
      w = std::stod(wtext, &used);
      if (used != wtext.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw ParseError("rank-dist: bad weight in '" + std::string(item) + "'");
    }
    if (w < 0.0) throw ParseError("rank-dist: negative weight");
    dist[static_cast<std::size_t>(r - 1)] = w;
    total += w;
  }
  if (total <= 0.0) throw ParseError("rank-dist: weights sum to zero");
  return dist;
}

Rational random_rational(Rng &rng) {
  if (rng.coin(0.5)) return 0;
  long num = static_cast<long>(rng.below(19)) - 9;
  long den = static_cast<long>(rng.below(4)) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Scalar random_scalar(Rng &rng) {
  Rational re = random_rational(rng);
  Rational im = random_rational(rng);
  return {re, im};
}

Vec random_vec(Rng &rng, std::size_t dim) {
  Vec v(dim);
  do {
    for (auto &x : v) x = random_scalar(rng);
  } while (is_zero(v));
  return v;
}

ConstraintTensor random_tensor(Rng &rng, bool product) {
  if (product) {
    Vec x = random_vec(rng, 2);
    Vec y = random_vec(rng, 2);
    return Mat::reshape(kron(x, y), 2, 2);
  }
  return Mat::reshape(random_vec(rng, 4), 2, 2);
}

QSatInstance generate_instance(const GenOptions &opts) {
  if (opts.n < 2 && opts.pairs > 0) throw ContractError("pair constraints need at least 2 qubits");
  Rng rng(opts.seed);
  QSatInstance inst(opts.n);
  double total = 0.0;
  for (double w : opts.rank_dist) total += w;
  for (std::size_t i = 0; i < opts.pairs; ++i) {
    QubitId a = rng.below(opts.n);
    QubitId b = rng.below(opts.n - 1);
    if (b >= a) ++b;
    double x = rng.unit() * total;
    std::size_t r = 1;
    while (r < 4 && x >= opts.rank_dist[r - 1]) x -= opts.rank_dist[r++ - 1];
    // the drawn tensors are almost surely independent; collisions only
    // lower the rank
    for (std::size_t k = 0; k < r; ++k) inst.insert_tensor(a, b, random_tensor(rng, r == 1 && rng.coin(opts.product_fraction)));
  }
  for (std::size_t i = 0; i < opts.units; ++i) inst.insert_unit(rng.below(opts.n), random_vec(rng, 2));
  return inst;
}

Cnf2 random_cnf(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  Cnf2 f(n);
  for (std::size_t i = 0; i < m; ++i) {
    Literal p{static_cast<std::uint32_t>(rng.below(n)), rng.coin(0.5)};
    Literal q{static_cast<std::uint32_t>(rng.below(n)), rng.coin(0.5)};
    f.add_clause(p, q);
  }
  return f;
}

}  // namespace qsat
