#pragma once

// w_min / w_max suitability and minimal-codeword enumeration.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

#include "tracecode/code.hpp"
#include "tracecode/weights.hpp"

namespace tracecode {

using Rational = boost::rational<std::int64_t>;

enum class CodeFamily { Generic, TrCubic };

/// Which m-congruence row applies to the tr-cubic family, with its closed-form ratio.
struct CongruenceCase {
  std::string label;       // e.g. "m = 2 (mod 4), m >= 6"
  bool in_range = false;   // m satisfies the row's lower bound
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
};

struct RatioReport {
  std::uint64_t w_min = 0;
  std::uint64_t w_max = 0;
  Rational ratio;      // reduced
  Rational threshold;  // (p-1)/p
  bool passes = false;
  std::optional<CongruenceCase> m_congruence_case;

  std::string unreduced() const { return std::to_string(w_min) + "/" + std::to_string(w_max); }
};

inline CongruenceCase tr_cubic_case(unsigned m) {
  if (m < 3) throw std::invalid_argument("tr-cubic ratio rows need m >= 3");
  const std::uint64_t P = std::uint64_t{1} << (m - 2);
  CongruenceCase c;
  if (m % 2 == 0) {
    const std::uint64_t R = std::uint64_t{1} << ((m - 2) / 2), H = std::uint64_t{1} << (m / 2);
    if (m % 4 == 2) {
      c = {"m = 2 (mod 4), m >= 6", m >= 6, P - R, P + R};
    } else if (m % 8 == 4) {
      c = {"m = 4 (mod 8), m > 4", m > 4, P, P + H};
    } else {
      c = {"m = 0 (mod 8), m >= 8", m >= 8, P - H, P};
    }
  } else {
    const std::uint64_t S = std::uint64_t{1} << ((m - 1) / 2);
    if (m % 8 == 1 || m % 8 == 7) {
      c = {"m = +-1 (mod 8), m >= 7", m >= 7, P, P + S};
    } else {
      c = {"m = +-3 (mod 8), m > 5", m > 5, P - S, P};
    }
  }
  return c;
}

/// Exact comparison w_min / w_max > (p-1)/p.
inline RatioReport ratio_check(const WeightDistribution& wd, CodeFamily family = CodeFamily::Generic) {
  const auto lo = wd.min_nonzero_weight(), hi = wd.max_weight();
  if (!lo || !hi) throw std::invalid_argument("ratio check needs a nonzero weight");
  RatioReport r;
  r.w_min = *lo;
  r.w_max = *hi;
  r.ratio = Rational(static_cast<std::int64_t>(r.w_min), static_cast<std::int64_t>(r.w_max));
  r.threshold = Rational(wd.p - 1, wd.p);
  r.passes = BigInt(r.w_min) * wd.p > BigInt(r.w_max) * (wd.p - 1);
  if (family == CodeFamily::TrCubic) r.m_congruence_case = tr_cubic_case(wd.m);
  return r;
}

// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kMaxMinimalEnumeration = std::uint64_t{1} << 20;

struct MinimalCodewordReport {
  std::uint64_t nonzero_codewords = 0;
  std::uint64_t minimal_codewords = 0;  // counted with all nonzero scalar multiples
  std::uint64_t projective_codewords = 0;
  std::uint64_t projective_minimal = 0;
  std::uint64_t dealer_sets = 0;  // minimal codewords with a nonzero first coordinate, up to scalars
  std::vector<std::vector<std::uint8_t>> minimal_list;  // normalized: first nonzero coordinate is 1
  bool all_minimal() const { return projective_minimal == projective_codewords; }
};

namespace detail {

inline unsigned inverse_mod(unsigned a, unsigned p) {
  unsigned r = 1;
  for (unsigned e = p - 2, b = a; e; e >>= 1, b = b * b % p)
    if (e & 1u) r = r * b % p;
  return r;
}

struct Support {
  std::vector<std::uint64_t> bits;
  std::uint64_t size = 0;
  bool subset_of(const Support& o) const {
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i] & ~o.bits[i]) return false;
    return true;
  }
};

}  // namespace detail

/// dim of the GF(p)-span of D, which is the dimension of C_D.
inline unsigned span_dimension(const DefiningSet& D) {
  const FieldContext& f = D.field();
  const unsigned p = f.characteristic(), m = f.degree();
  std::vector<std::vector<unsigned>> basis;  // row b is monic at column pivots[b]
  std::vector<unsigned> pivots;
  for (FieldElement d : D.elements()) {
    auto v = f.coords(d);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const unsigned c = v[pivots[b]];
      if (c == 0) continue;
      for (unsigned i = 0; i < m; ++i) v[i] = (v[i] + (p - c) * basis[b][i]) % p;
    }
    auto it = std::find_if(v.begin(), v.end(), [](unsigned x) { return x != 0; });
    if (it == v.end()) continue;
    const unsigned inv = detail::inverse_mod(*it, p);
    for (auto& x : v) x = x * inv % p;
    pivots.push_back(static_cast<unsigned>(it - v.begin()));
    basis.push_back(std::move(v));
    if (basis.size() == m) break;
  }
  return static_cast<unsigned>(basis.size());
}

/// All nonzero codewords of C_D, normalized, with the minimal ones marked by pairwise support containment.
inline MinimalCodewordReport minimal_codewords(const DefiningSet& D, unsigned threads = 0, bool keep_list = true) {
  if (D.empty()) throw std::invalid_argument("defining set is empty");
  const FieldContext& f = D.field();
  const unsigned p = f.characteristic();
  if (big_pow(p, span_dimension(D)) > kMaxMinimalEnumeration) throw LimitError("p^k exceeds the minimal-codeword enumeration bound");

  std::set<std::vector<std::uint8_t>> seen;
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    auto c = codeword(D, FieldElement{x});
    auto lead = std::find_if(c.begin(), c.end(), [](std::uint8_t v) { return v != 0; });
    if (lead == c.end()) continue;
    const unsigned inv = detail::inverse_mod(*lead, p);
    for (auto& v : c) v = static_cast<std::uint8_t>(v * inv % p);
    seen.insert(std::move(c));
  }
  std::vector<std::vector<std::uint8_t>> words(seen.begin(), seen.end());
  const std::size_t words_per = (D.size() + 63) / 64;
  std::vector<detail::Support> supports(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    supports[i].bits.assign(words_per, 0);
    for (std::size_t j = 0; j < words[i].size(); ++j)
      if (words[i][j]) {
        supports[i].bits[j / 64] |= std::uint64_t{1} << (j % 64);
        ++supports[i].size;
      }
  }

  // normalized words are distinct projective points, so any other word with a contained support breaks minimality
  std::vector<std::uint8_t> minimal(words.size(), 1);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < words.size(); i = next++) {
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (j == i || supports[j].size > supports[i].size) continue;
        if (supports[j].subset_of(supports[i])) {
          minimal[i] = 0;
          break;
        }
      }
    }
  };
  const unsigned workers = detail::resolve_threads(threads, std::uint64_t{words.size()} * words.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  MinimalCodewordReport r;
  r.projective_codewords = words.size();
  r.nonzero_codewords = words.size() * (p - 1);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!minimal[i]) continue;
    ++r.projective_minimal;
    if (words[i][0] != 0) ++r.dealer_sets;
    if (keep_list) r.minimal_list.push_back(words[i]);
  }
  r.minimal_codewords = r.projective_minimal * (p - 1);
  return r;
}

struct SecretSharingReport {
  RatioReport ratio;
  MinimalCodewordReport minimal;
  /// ratio passes but some nonzero codeword is not minimal
  bool violation = false;
};

inline SecretSharingReport secret_sharing_report(const DefiningSet& D, CodeFamily family = CodeFamily::Generic,
                                                 unsigned threads = 0) {
  SecretSharingReport s;
  s.ratio = ratio_check(build_code_weights(D, threads), family);
  s.minimal = minimal_codewords(D, threads, false);
  s.violation = s.ratio.passes && !s.minimal.all_minimal();
  return s;
}

}  // namespace tracecode
