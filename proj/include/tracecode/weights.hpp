#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tracecode {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(unsigned base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

/// Exact weight distribution of an [n, k] code over GF(p); counts include weight 0.
struct WeightDistribution {
  unsigned p = 2;
  unsigned m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::map<std::uint64_t, BigInt> counts;

  BigInt count(std::uint64_t w) const {
    auto it = counts.find(w);
    return it == counts.end() ? BigInt{0} : it->second;
  }

  BigInt total() const {
    BigInt s = 0;
    for (const auto& [w, a] : counts) s += a;
    return s;
  }

  std::optional<std::uint64_t> min_nonzero_weight() const {
    for (const auto& [w, a] : counts)
      if (w > 0 && a != 0) return w;
    return std::nullopt;
  }

  std::optional<std::uint64_t> max_weight() const {
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
      if (it->first > 0 && it->second != 0) return it->first;
    return std::nullopt;
  }

  /// Number of distinct nonzero weights (t for a t-weight code).
  std::size_t nonzero_weight_count() const {
    std::size_t t = 0;
    for (const auto& [w, a] : counts) t += (w > 0 && a != 0);
    return t;
  }

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// Throws std::domain_error unless sum A_w = p^k, A_0 = 1 and every weight is at most n.
inline void check_consistency(const WeightDistribution& wd) {
  if (wd.count(0) != 1) throw std::domain_error("A_0 must equal 1");
  for (const auto& [w, a] : wd.counts) {
    if (w > wd.n) throw std::domain_error("weight exceeds code length");
    if (a < 0) throw std::domain_error("negative multiplicity");
  }
  if (wd.total() != big_pow(wd.p, wd.k)) throw std::domain_error("multiplicities do not sum to p^k");
}

/// "1+10z^4+16z^6+5z^8"; unit coefficients and exponents are omitted as in the usual notation.
inline std::string enumerator_string(const WeightDistribution& wd) {
  std::string out = "1";
  for (const auto& [w, a] : wd.counts) {
    if (w == 0 || a == 0) continue;
    out += '+';
    if (a != 1) out += a.str();
    out += 'z';
    if (w != 1) out += '^' + std::to_string(w);
  }
  return out;
}

}  // namespace tracecode
