// Copyright 2026 The drsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drsc/rational.hpp"
#include "drsc/rng.hpp"

namespace drsc {

using symbol_t = uint32_t;

// A finite-alphabet memoryless source: exact rational pmf plus the total
// order the coder uses to lay symbol intervals side by side.  The order is a
// first-class citizen because interval geometry, and hence everything
// downstream, depends on it.
struct SourceModel {
  std::vector<std::string> tokens;  // one display token per symbol id
  std::vector<Rational> pmf;        // by symbol id; entries >= 0, sum == 1
  std::vector<symbol_t> order;      // order[pos] = symbol id
  std::vector<uint32_t> rank;       // symbol id -> position in order

  size_t size() const { return pmf.size(); }

  static SourceModel make(std::vector<std::string> tokens,
                          std::vector<Rational> pmf,
                          std::vector<symbol_t> order = {});
  static SourceModel uniform(unsigned k);

  Rational pmax() const;
  // Smallest positive mass; zero-probability symbols never occur and do not
  // constrain precision.
  Rational pmin_positive() const;
  bool all_dyadic() const;
  std::optional<symbol_t> find_token(const std::string& tok) const;
};

// Text format, one entry per line: "<token> <num>/<den>", '#' starts a
// comment.  Entries must sum to exactly 1.  Throws std::runtime_error with a
// line number on malformed input.
SourceModel parse_pmf(std::istream& in);
SourceModel load_pmf_file(const std::string& path);

double entropy_bits(const SourceModel& p);

// Order-alpha entropy, alpha > 0 and != 1.
double renyi_entropy_bits(const SourceModel& p, double alpha);

// Grid minimization of  alpha/(alpha-1) * D(q||p) + H(q)  over pmfs q with
// coordinates that are multiples of step.  For alpha > 1 the minimum equals
// the order-alpha entropy; the grid check is deliberately independent of the
// closed form.  Guarded to alphabet size <= 4; the grid grows as
// (1/step)^(K-1).
double renyi_variational_grid(const SourceModel& p, double alpha, double step);

// D(p||q) in bits; +infinity when p puts mass where q does not.
double kl_divergence_bits(const SourceModel& p, const SourceModel& q);

// Largest ratio p(x)/q(x) over symbols with p(x) > 0; nullopt means infinite.
std::optional<Rational> max_likelihood_ratio(const SourceModel& p,
                                             const SourceModel& q);

// Occurrence counts per symbol id.
std::vector<uint64_t> sequence_type(const SourceModel& p,
                                    std::span<const symbol_t> xs);

// Exact product probability of a sequence with the given type.
Rational iid_probability(const SourceModel& p,
                         const std::vector<uint64_t>& counts);

// Deterministic iid sampler.  Thresholds are the exact cumulative pmf scaled
// to 64 bits, so inversion of a draw is a pure integer comparison.
class Sampler {
 public:
  Sampler(const SourceModel& p, uint64_t seed);
  symbol_t next();

 private:
  std::vector<unsigned __int128> thresholds_;  // ceil(cum * 2^64), last omitted
  Xoshiro256 rng_;
};

std::vector<symbol_t> sample_iid(const SourceModel& p, size_t n, uint64_t seed);

}  // namespace drsc
