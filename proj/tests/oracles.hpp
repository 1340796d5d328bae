#pragma once

// Slow reference implementations used only by the tests. None of these touch
// the lookup tables of FieldContext; they work from the modulus alone.

#include <cstdint>
#include <map>
#include <vector>

#include "tracecode/field.hpp"
#include "tracecode/weights.hpp"

namespace oracle {

using tracecode::BigInt;
using tracecode::FieldContext;
using tracecode::FieldElement;

// Schoolbook multiplication of packed elements modulo the field modulus.
inline FieldElement mul(const FieldContext& f, FieldElement a, FieldElement b) {
  const unsigned p = f.characteristic(), m = f.degree();
  auto ca = f.coords(a), cb = f.coords(b);
  std::vector<unsigned> prod(2 * m, 0);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  auto mod = f.modulus();
  for (unsigned d = 2 * m - 1; d >= m; --d) {
    const unsigned c = prod[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + (p - c) * mod[i]) % p;
  }
  prod.resize(m);
  return f.from_coords(prod);
}

inline FieldElement add(const FieldContext& f, FieldElement a, FieldElement b) {
  auto ca = f.coords(a), cb = f.coords(b);
  for (unsigned i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % f.characteristic();
  return f.from_coords(ca);
}

inline FieldElement pow(const FieldContext& f, FieldElement a, std::uint64_t e) {
  FieldElement r{1};
  for (std::uint64_t i = 0; i < e; ++i) r = mul(f, r, a);
  return r;
}

// x + x^p + ... + x^(p^(m-1)).
inline unsigned trace(const FieldContext& f, FieldElement x) {
  FieldElement sum{0}, cur = x;
  for (unsigned i = 0; i < f.degree(); ++i) {
    sum = add(f, sum, cur);
    cur = pow(f, cur, f.characteristic());
  }
  return sum.packed;  // lies in GF(p)
}

inline std::uint64_t multiplicative_order(const FieldContext& f, FieldElement a) {
  FieldElement cur = a;
  std::uint64_t k = 1;
  while (cur.packed != 1) {
    cur = mul(f, cur, a);
    ++k;
  }
  return k;
}

// Weight histogram over all x with codewords counted once per x, via schoolbook arithmetic.
inline std::map<std::uint64_t, std::uint64_t> raw_weights(const FieldContext& f, const std::vector<FieldElement>& D) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    std::uint64_t w = 0;
    for (FieldElement d : D) w += trace(f, mul(f, {x}, d)) != 0;
    ++h[w];
  }
  return h;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// K_j(x) = sum_s (-1)^s (p-1)^(j-s) C(x, s) C(n-x, j-s).
inline BigInt krawtchouk(std::uint64_t n, unsigned p, std::uint64_t j, std::uint64_t x) {
  BigInt sum = 0;
  for (std::uint64_t s = 0; s <= j; ++s) {
    BigInt term = binomial(static_cast<std::int64_t>(x), static_cast<std::int64_t>(s)) *
                  binomial(static_cast<std::int64_t>(n - x), static_cast<std::int64_t>(j - s)) *
                  tracecode::big_pow(p - 1, j - s);
    sum += (s % 2) ? -term : term;
  }
  return sum;
}

// Dual multiplicities straight from the binomial-sum definition.
inline std::vector<BigInt> macwilliams(const tracecode::WeightDistribution& wd) {
  std::vector<BigInt> b(wd.n + 1, 0);
  const BigInt size = tracecode::big_pow(wd.p, wd.k);
  for (std::uint64_t j = 0; j <= wd.n; ++j) {
    BigInt s = 0;
    for (const auto& [i, a] : wd.counts) s += a * krawtchouk(wd.n, wd.p, j, i);
    b[j] = s / size;
  }
  return b;
}

// O(q^2) Walsh transform.
inline std::vector<std::int64_t> walsh(const FieldContext& f, const std::vector<std::uint8_t>& table) {
  std::vector<std::int64_t> out(f.order());
  for (std::uint32_t w = 0; w < f.order(); ++w) {
    std::int64_t s = 0;
    for (std::uint32_t x = 0; x < f.order(); ++x) s += ((table[x] ^ f.trace(f.mul({w}, {x}))) & 1u) ? -1 : 1;
    out[w] = s;
  }
  return out;
}

}  // namespace oracle
