#pragma once

// MacWilliams duality, Pless power moments and the Griesmer bound.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracecode/code.hpp"
#include "tracecode/weights.hpp"

namespace tracecode {

namespace detail {

struct BigRing {
  using value_type = BigInt;
  using divisor_type = std::uint64_t;
  value_type from(std::int64_t v) const { return value_type{v}; }
  value_type scaled(const value_type& a, std::int64_t c) const { return a * c; }
  divisor_type divisor(std::uint64_t d) const { return d; }
  value_type divide(const value_type& a, divisor_type d) const {
    value_type q, r;
    boost::multiprecision::divide_qr(a, value_type{d}, q, r);
    if (r != 0) throw std::logic_error("Krawtchouk recurrence left a remainder");
    return q;
  }
  value_type product(const value_type& a, const value_type& b) const { return a * b; }
  value_type sum(const value_type& a, const value_type& b) const { return a + b; }
  value_type difference(const value_type& a, const value_type& b) const { return a - b; }
};

// Arithmetic modulo the Mersenne prime 2^bits - 1 (bits = 31 or 61).
struct MersenneRing {
  using value_type = std::uint64_t;
  using divisor_type = std::uint64_t;  // modular inverse
  unsigned bits = 61;

  std::uint64_t modulus() const { return (std::uint64_t{1} << bits) - 1; }

  value_type fold(unsigned __int128 x) const {
    const std::uint64_t P = modulus();
    x = (x & P) + (x >> bits);
    x = (x & P) + (x >> bits);
    auto r = static_cast<std::uint64_t>(x);
    return r >= P ? r - P : r;
  }
  value_type from(std::int64_t v) const {
    const auto P = static_cast<std::int64_t>(modulus());
    if (v >= 0 && v < P) return static_cast<value_type>(v);
    if (v < 0 && -v < P) return static_cast<value_type>(v + P);
    const std::int64_t r = v % P;
    return static_cast<value_type>(r < 0 ? r + P : r);
  }
  value_type product(value_type a, value_type b) const { return fold(static_cast<unsigned __int128>(a) * b); }
  value_type scaled(value_type a, std::int64_t c) const { return product(a, from(c)); }
  value_type sum(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= modulus() ? s - modulus() : s;
  }
  value_type difference(value_type a, value_type b) const { return a >= b ? a - b : a + modulus() - b; }
  value_type power(value_type b, std::uint64_t e) const {
    value_type r = 1;
    for (; e > 0; e >>= 1, b = product(b, b))
      if (e & 1u) r = product(r, b);
    return r;
  }
  value_type reduce_big(const BigInt& v) const {
    BigInt r = v % BigInt(modulus());
    if (r < 0) r += modulus();
    return static_cast<value_type>(r);
  }
  divisor_type divisor(std::uint64_t d) const { return power(from(static_cast<std::int64_t>(d)), modulus() - 2); }
  value_type divide(value_type a, divisor_type inv) const { return product(a, inv); }
};

}  // namespace detail

/// Evaluates S_j = sum_s c_s K_j(x_s) degree by degree, where K_j is the p-ary
/// Krawtchouk polynomial of length n, using the three-term recurrence
///   (j+1) K_{j+1}(x) = [(p-1)(n-j) + j - p x] K_j(x) - (p-1)(n-j+1) K_{j-1}(x).
template <class Ring>
class KrawtchoukSweep {
 public:
  using Value = typename Ring::value_type;

  KrawtchoukSweep(Ring ring, std::uint64_t n, unsigned p, std::vector<std::uint64_t> points, std::vector<Value> weights)
      : ring_(std::move(ring)), n_(n), p_(p), points_(std::move(points)), weights_(std::move(weights)) {
    prev_.assign(points_.size(), ring_.from(0));
    cur_.assign(points_.size(), ring_.from(1));
  }

  std::uint64_t degree() const { return j_; }

  /// Returns S_j for the current degree j, then advances to j + 1.
  Value next() {
    Value sum = ring_.from(0);
    for (std::size_t s = 0; s < points_.size(); ++s) sum = ring_.sum(sum, ring_.product(weights_[s], cur_[s]));
    advance();
    return sum;
  }

 private:
  void advance() {
    const auto n = static_cast<std::int64_t>(n_);
    const auto j = static_cast<std::int64_t>(j_);
    const auto p = static_cast<std::int64_t>(p_);
    const std::int64_t c_prev = (p - 1) * (n - j + 1);
    const auto div = ring_.divisor(j_ + 1);
    for (std::size_t s = 0; s < points_.size(); ++s) {
      const std::int64_t c_cur = (p - 1) * (n - j) + j - p * static_cast<std::int64_t>(points_[s]);
      Value diff = ring_.difference(ring_.scaled(cur_[s], c_cur), ring_.scaled(prev_[s], c_prev));
      prev_[s] = std::move(cur_[s]);
      cur_[s] = ring_.divide(diff, div);
    }
    ++j_;
  }

  Ring ring_;
  std::uint64_t n_;
  unsigned p_;
  std::vector<std::uint64_t> points_;
  std::vector<Value> weights_;
  std::vector<Value> prev_, cur_;
  std::uint64_t j_ = 0;
};

namespace detail {

inline KrawtchoukSweep<BigRing> exact_sweep(const WeightDistribution& wd) {
  std::vector<std::uint64_t> points;
  std::vector<BigInt> weights;
  for (const auto& [w, a] : wd.counts) {
    if (a == 0) continue;
    points.push_back(w);
    weights.push_back(a);
  }
  return KrawtchoukSweep<BigRing>(BigRing{}, wd.n, wd.p, std::move(points), std::move(weights));
}

inline BigInt exact_quotient(const BigInt& value, const BigInt& divisor) {
  BigInt q, r;
  boost::multiprecision::divide_qr(value, divisor, q, r);
  if (r != 0) throw std::domain_error("MacWilliams transform produced a non-integral coefficient");
  if (q < 0) throw std::domain_error("MacWilliams transform produced a negative coefficient");
  return q;
}

}  // namespace detail

/// First jmax + 1 dual weight multiplicities B_0..B_jmax.
inline std::vector<BigInt> dual_coefficients(const WeightDistribution& wd, std::uint64_t jmax) {
  check_consistency(wd);
  const BigInt size = big_pow(wd.p, wd.k);
  auto sweep = detail::exact_sweep(wd);
  std::vector<BigInt> out;
  for (std::uint64_t j = 0; j <= std::min(jmax, wd.n); ++j) out.push_back(detail::exact_quotient(sweep.next(), size));
  return out;
}

/// Exact weight distribution of the dual [n, n - k] code.
inline WeightDistribution macwilliams_dual(const WeightDistribution& wd) {
  const auto b = dual_coefficients(wd, wd.n);
  WeightDistribution dual;
  dual.p = wd.p;
  dual.m = wd.m;
  dual.n = wd.n;
  dual.k = wd.n - wd.k;
  for (std::uint64_t j = 0; j < b.size(); ++j)
    if (b[j] != 0) dual.counts[j] = b[j];
  if (dual.total() != big_pow(dual.p, dual.k)) throw std::domain_error("dual multiplicities do not sum to p^(n-k)");
  return dual;
}

/// Minimum distance of the dual code, or nothing when the dual is the zero code.
inline std::optional<std::uint64_t> dual_minimum_distance(const WeightDistribution& wd) {
  check_consistency(wd);
  const BigInt size = big_pow(wd.p, wd.k);
  auto sweep = detail::exact_sweep(wd);
  sweep.next();
  for (std::uint64_t j = 1; j <= wd.n; ++j)
    if (detail::exact_quotient(sweep.next(), size) != 0) return j;
  return std::nullopt;
}

/// Reduces the inverse transform of the (exact) dual distribution modulo a
/// Mersenne prime and compares with the original multiplicities.
inline bool macwilliams_inverse_matches_mod(const WeightDistribution& wd, const WeightDistribution& dual,
                                            unsigned mersenne_bits) {
  const detail::MersenneRing ring{mersenne_bits};
  std::vector<std::uint64_t> points;
  std::vector<std::uint64_t> weights;
  for (const auto& [j, b] : dual.counts) {
    points.push_back(j);
    weights.push_back(ring.reduce_big(b));
  }
  KrawtchoukSweep<detail::MersenneRing> sweep(ring, wd.n, wd.p, std::move(points), std::move(weights));
  const std::uint64_t scale = ring.power(ring.power(wd.p, dual.k), ring.modulus() - 2);
  for (std::uint64_t i = 0; i <= wd.n; ++i)
    if (ring.product(sweep.next(), scale) != ring.reduce_big(wd.count(i))) return false;
  return true;
}

/// Whether applying the MacWilliams transform twice returns wd. Exact for
/// n <= exact_limit; beyond that the second transform is checked modulo the
/// Mersenne primes 2^61 - 1 and 2^31 - 1.
inline bool macwilliams_involution_holds(const WeightDistribution& wd, std::uint64_t exact_limit = 600) {
  const WeightDistribution dual = macwilliams_dual(wd);
  if (wd.n <= exact_limit) return macwilliams_dual(dual) == wd;
  return macwilliams_inverse_matches_mod(wd, dual, 61) && macwilliams_inverse_matches_mod(wd, dual, 31);
}

struct PlessMoment {
  unsigned order = 0;
  bool checked = false;
  BigInt lhs;  // scaled sum of w^order A_w over nonzero weights
  BigInt rhs;
  BigInt residual() const { return lhs - rhs; }
};

struct PlessReport {
  std::optional<std::uint64_t> dual_distance;
  std::vector<PlessMoment> moments;
  bool passes = true;
  std::string error;  // set when the distribution has no valid MacWilliams transform
};

/// First three Pless power moments. Moment 1 needs d_dual >= 2 and moment 2
/// needs d_dual >= 3; moments whose hypothesis fails are reported unchecked.
/// Moments are compared after multiplying through by p^order to stay integral.
inline PlessReport pless_moments_check(const WeightDistribution& wd) {
  check_consistency(wd);
  PlessReport report;
  std::uint64_t dd = 0;
  try {
    report.dual_distance = dual_minimum_distance(wd);
    dd = report.dual_distance.value_or(wd.n + 1);
  } catch (const std::domain_error& e) {
    report.error = e.what();
    report.passes = false;
  }

  const BigInt pk = big_pow(wd.p, wd.k);
  const BigInt n = wd.n;
  const unsigned p = wd.p;
  BigInt s0 = 0, s1 = 0, s2 = 0;
  for (const auto& [w, a] : wd.counts) {
    if (w == 0) continue;
    s0 += a;
    s1 += a * w;
    s2 += a * w * w;
  }
  report.moments.push_back({0, true, s0, pk - 1});
  report.moments.push_back({1, dd >= 2, s1 * p, n * (p - 1) * pk});
  report.moments.push_back({2, dd >= 3, s2 * p * p, pk * (p - 1) * n * ((p - 1) * n + 1)});
  for (const auto& mo : report.moments)
    if (mo.checked && mo.residual() != 0) report.passes = false;
  return report;
}

struct GriesmerResult {
  std::uint64_t bound = 0;
  bool meets_bound = false;  // n >= bound
  bool tight = false;        // n == bound
};

/// n >= sum_{i<k} ceil(d / p^i).
inline GriesmerResult griesmer_check(std::uint64_t n, std::uint64_t k, std::uint64_t d, unsigned p) {
  if (k < 1 || d < 1) throw std::invalid_argument("griesmer_check needs k >= 1 and d >= 1");
  GriesmerResult r;
  std::uint64_t pi = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r.bound += (d + pi - 1) / pi;
    if (pi <= d) pi *= p;  // once p^i > d every further term is 1
  }
  r.meets_bound = n >= r.bound;
  r.tight = n == r.bound;
  return r;
}

struct DualDistanceCertificate {
  bool zero_free = false;
  bool projective = false;  // no two elements are GF(p)-proportional
  bool certified = false;   // both hold and |D| >= 3
};

/// Sufficient test for d_dual >= 3: 0 is not in D and no d_i = lambda d_j with lambda in GF(p)*.
inline DualDistanceCertificate dual_distance_at_least_3(const DefiningSet& D) {
  const FieldContext& f = D.field();
  DualDistanceCertificate c;
  c.zero_free = !D.contains(f.zero());
  // GF(p)* is the subgroup of index (q-1)/(p-1); proportional elements share log mod that index.
  const std::uint32_t index = (f.order() - 1) / (f.characteristic() - 1);
  std::vector<bool> seen(index, false);
  c.projective = true;
  for (FieldElement d : D.elements()) {
    if (d.is_zero()) continue;
    const std::uint32_t cls = *f.log(d) % index;
    if (seen[cls]) c.projective = false;
    seen[cls] = true;
  }
  c.certified = c.zero_free && c.projective && D.size() >= 3;
  return c;
}

struct CodeSummary {
  WeightDistribution distribution;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::optional<std::uint64_t> d_min;
  std::uint64_t dual_n_minus_k = 0;
  std::optional<std::uint64_t> dual_d;  // empty when the dual is the zero code
  std::optional<GriesmerResult> griesmer;
  std::vector<std::string> notes;
};

inline CodeSummary summarize(const WeightDistribution& wd) {
  CodeSummary s;
  s.distribution = wd;
  s.n = wd.n;
  s.k = wd.k;
  s.d_min = wd.min_nonzero_weight();
  s.dual_n_minus_k = wd.n - wd.k;
  s.dual_d = dual_minimum_distance(wd);
  if (s.k >= 1 && s.d_min) s.griesmer = griesmer_check(s.n, s.k, *s.d_min, wd.p);
  if (s.dual_d && *s.dual_d > 3) s.notes.push_back("dual distance exceeds 3");
  s.notes.push_back("optimality checked against the Griesmer bound only");
  return s;
}

inline CodeSummary summarize(const DefiningSet& D, unsigned threads = 0) {
  return summarize(build_code_weights(D, threads));
}

}  // namespace tracecode
