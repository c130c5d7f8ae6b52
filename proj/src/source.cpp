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

#include "drsc/source.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace drsc {

SourceModel SourceModel::make(std::vector<std::string> tokens,
                              std::vector<Rational> pmf,
                              std::vector<symbol_t> order) {
  SourceModel m;
  m.tokens = std::move(tokens);
  m.pmf = std::move(pmf);
  if (m.pmf.size() < 2) throw std::invalid_argument("SourceModel: need K >= 2");
  if (m.tokens.size() != m.pmf.size())
    throw std::invalid_argument("SourceModel: token/pmf size mismatch");
  Rational sum = 0;
  for (const Rational& p : m.pmf) {
    if (p < 0) throw std::invalid_argument("SourceModel: negative probability");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument("SourceModel: pmf must sum to 1");
  if (order.empty()) {
    m.order.resize(m.pmf.size());
    for (symbol_t i = 0; i < m.order.size(); ++i) m.order[i] = i;
  } else {
    m.order = std::move(order);
  }
  if (m.order.size() != m.pmf.size())
    throw std::invalid_argument("SourceModel: order size mismatch");
  m.rank.assign(m.pmf.size(), UINT32_MAX);
  for (uint32_t pos = 0; pos < m.order.size(); ++pos) {
    symbol_t s = m.order[pos];
    if (s >= m.pmf.size() || m.rank[s] != UINT32_MAX)
      throw std::invalid_argument("SourceModel: order must be a permutation");
    m.rank[s] = pos;
  }
  return m;
}

SourceModel SourceModel::uniform(unsigned k) {
  std::vector<std::string> toks;
  std::vector<Rational> pmf;
  for (unsigned i = 0; i < k; ++i) {
    std::string t;
    if (k <= 26) {
      t.push_back(static_cast<char>('a' + i));
    } else {
      t = "s" + std::to_string(i);
    }
    toks.push_back(t);
    pmf.push_back(make_rational(1, static_cast<long>(k)));
  }
  return make(std::move(toks), std::move(pmf));
}

Rational SourceModel::pmax() const {
  Rational m = 0;
  for (const Rational& p : pmf)
    if (p > m) m = p;
  return m;
}

Rational SourceModel::pmin_positive() const {
  Rational m = 2;
  for (const Rational& p : pmf)
    if (p > 0 && p < m) m = p;
  if (m > 1) throw std::logic_error("SourceModel: no positive mass");
  return m;
}

bool SourceModel::all_dyadic() const {
  for (const Rational& p : pmf)
    if (p > 0 && !is_dyadic(p)) return false;
  return true;
}

std::optional<symbol_t> SourceModel::find_token(const std::string& tok) const {
  for (symbol_t i = 0; i < tokens.size(); ++i)
    if (tokens[i] == tok) return i;
  return std::nullopt;
}

SourceModel parse_pmf(std::istream& in) {
  std::vector<std::string> tokens;
  std::vector<Rational> pmf;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ls(line);
    std::string tok, val;
    if (!(ls >> tok)) continue;  // blank line
    if (!(ls >> val))
      throw std::runtime_error("pmf line " + std::to_string(lineno) +
                               ": missing probability");
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error("pmf line " + std::to_string(lineno) +
                               ": trailing garbage '" + extra + "'");
    auto r = parse_rational(val);
    if (!r || *r < 0)
      throw std::runtime_error("pmf line " + std::to_string(lineno) +
                               ": bad probability '" + val + "'");
    for (const auto& t : tokens)
      if (t == tok)
        throw std::runtime_error("pmf line " + std::to_string(lineno) +
                                 ": duplicate token '" + tok + "'");
    tokens.push_back(tok);
    pmf.push_back(*r);
  }
  if (pmf.size() < 2) throw std::runtime_error("pmf: need at least 2 symbols");
  Rational sum = 0;
  for (const Rational& p : pmf) sum += p;
  if (sum != 1)
    throw std::runtime_error("pmf: probabilities sum to " + to_string(sum) +
                             ", expected exactly 1");
  return SourceModel::make(std::move(tokens), std::move(pmf));
}

SourceModel load_pmf_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open pmf file: " + path);
  return parse_pmf(f);
}

double entropy_bits(const SourceModel& p) {
  double h = 0;
  for (const Rational& q : p.pmf) {
    double d = to_double(q);
    if (d > 0) h -= d * std::log2(d);
  }
  return h;
}

double renyi_entropy_bits(const SourceModel& p, double alpha) {
  if (alpha <= 0 || alpha == 1)
    throw std::invalid_argument("renyi_entropy_bits: need alpha > 0, alpha != 1");
  double s = 0;
  for (const Rational& q : p.pmf) {
    double d = to_double(q);
    if (d > 0) s += std::pow(d, alpha);
  }
  return std::log2(s) / (1 - alpha);
}

double renyi_variational_grid(const SourceModel& p, double alpha, double step) {
  if (alpha <= 1)
    throw std::invalid_argument("renyi_variational_grid: need alpha > 1");
  if (p.size() > 4)
    throw std::invalid_argument("renyi_variational_grid: alphabet too large");
  if (step <= 0 || step > 0.5)
    throw std::invalid_argument("renyi_variational_grid: bad step");
  const long m = std::lround(1.0 / step);
  const size_t k = p.size();
  std::vector<double> logp(k);
  for (size_t i = 0; i < k; ++i) {
    double d = to_double(p.pmf[i]);
    logp[i] = d > 0 ? std::log2(d) : -std::numeric_limits<double>::infinity();
  }
  const double scale = alpha / (alpha - 1);
  double best = std::numeric_limits<double>::infinity();
  // Walk all compositions of m into k parts.
  std::vector<long> n(k, 0);
  n[0] = m;
  for (;;) {
    double div = 0, ent = 0;
    bool feasible = true;
    for (size_t i = 0; i < k && feasible; ++i) {
      if (n[i] == 0) continue;
      double q = static_cast<double>(n[i]) / static_cast<double>(m);
      double lq = std::log2(q);
      if (std::isinf(logp[i])) {
        feasible = false;  // q charges a zero-probability symbol
        break;
      }
      div += q * (lq - logp[i]);
      ent -= q * lq;
    }
    if (feasible) best = std::min(best, scale * div + ent);

    // Next composition in colex order.
    size_t i = 0;
    while (i + 1 < k && n[i] == 0) ++i;
    if (i + 1 == k) break;
    long head = n[i];
    n[i] = 0;
    n[0] = head - 1;
    n[i + 1] += 1;
  }
  return best;
}

double kl_divergence_bits(const SourceModel& p, const SourceModel& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("kl_divergence_bits: alphabet size mismatch");
  double d = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    double pi = to_double(p.pmf[i]);
    if (pi <= 0) continue;
    double qi = to_double(q.pmf[i]);
    if (qi <= 0) return std::numeric_limits<double>::infinity();
    d += pi * (std::log2(pi) - std::log2(qi));
  }
  return d;
}

std::optional<Rational> max_likelihood_ratio(const SourceModel& p,
                                             const SourceModel& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("max_likelihood_ratio: alphabet size mismatch");
  Rational best = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p.pmf[i] == 0) continue;
    if (q.pmf[i] == 0) return std::nullopt;
    Rational r = p.pmf[i] / q.pmf[i];
    if (r > best) best = r;
  }
  return best;
}

std::vector<uint64_t> sequence_type(const SourceModel& p,
                                    std::span<const symbol_t> xs) {
  std::vector<uint64_t> counts(p.size(), 0);
  for (symbol_t x : xs) {
    if (x >= p.size()) throw std::out_of_range("sequence_type: bad symbol id");
    ++counts[x];
  }
  return counts;
}

Rational iid_probability(const SourceModel& p,
                         const std::vector<uint64_t>& counts) {
  Rational prob = 1;
  for (size_t i = 0; i < counts.size(); ++i)
    if (counts[i] > 0)
      prob *= rational_pow(p.pmf[i], static_cast<unsigned long>(counts[i]));
  return prob;
}

Sampler::Sampler(const SourceModel& p, uint64_t seed) : rng_(seed) {
  Rational cum = 0;
  thresholds_.reserve(p.size() - 1);
  auto chunk32 = [](const Integer& v, unsigned shift) -> uint64_t {
    Integer c = (v >> shift) & Integer(0xffffffffUL);
    return mpz_get_ui(c.get_mpz_t());
  };
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    cum += p.pmf[i];
    // Exact test "u / 2^64 < cum" becomes "u < ceil(cum * 2^64)"; the
    // threshold can be 2^64 itself, hence 128-bit storage.
    Integer t;
    Integer num = cum.get_num() << 64;
    mpz_cdiv_q(t.get_mpz_t(), num.get_mpz_t(), cum.get_den_mpz_t());
    unsigned __int128 v = (static_cast<unsigned __int128>(chunk32(t, 64)) << 64) |
                          (chunk32(t, 32) << 32) | chunk32(t, 0);
    thresholds_.push_back(v);
  }
}

symbol_t Sampler::next() {
  uint64_t u = rng_.next();
  for (size_t i = 0; i < thresholds_.size(); ++i)
    if (u < thresholds_[i]) return static_cast<symbol_t>(i);
  return static_cast<symbol_t>(thresholds_.size());
}

std::vector<symbol_t> sample_iid(const SourceModel& p, size_t n, uint64_t seed) {
  Sampler s(p, seed);
  std::vector<symbol_t> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(s.next());
  return out;
}

}  // namespace drsc
