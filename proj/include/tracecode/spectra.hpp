#pragma once

// Integer-valued character sums over GF(2^m). chi_1(v) is realised as (-1)^Tr(v).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tracecode/field.hpp"
#include "tracecode/sets.hpp"

namespace tracecode {

namespace detail {

inline void require_binary(const FieldContext& f) {
  if (f.characteristic() != 2) throw std::invalid_argument("character sums are implemented for p = 2 only");
}

inline std::int64_t sign_of(unsigned bit) { return (bit & 1u) ? -1 : 1; }

inline std::int64_t pow2(unsigned e) { return std::int64_t{1} << e; }

}  // namespace detail

struct WeilSumValue {
  FieldElement a;
  FieldElement b;
  std::int64_t value = 0;
};

/// S(a, b) = sum_x (-1)^Tr(a x^3 + b x), by direct summation.
inline std::int64_t weil_sum(const FieldContext& f, FieldElement a, FieldElement b) {
  detail::require_binary(f);
  std::int64_t s = 0;
  for (std::uint32_t v = 0; v < f.order(); ++v) {
    const FieldElement x{v};
    s += detail::sign_of(f.trace(f.mul(a, f.pow(x, 3))) ^ f.trace(f.mul(b, x)));
  }
  return s;
}

/// S(1, 1) for odd m: (-1)^((m^2-1)/8) 2^((m+1)/2).
inline std::int64_t carlitz_prediction(unsigned m) {
  if (m % 2 == 0) throw std::invalid_argument("Carlitz evaluation needs odd m");
  return detail::sign_of((m * m - 1) / 8 % 2) * detail::pow2((m + 1) / 2);
}

/// a = g^(3t) for some t.
inline bool is_cube(const FieldContext& f, FieldElement a) {
  if (a.is_zero()) return true;
  if ((f.order() - 1) % 3 != 0) return true;  // cubing permutes GF(q)*
  return *f.log(a) % 3 == 0;
}

/// S(a, 0) for even m and a != 0.
inline std::int64_t coulter_S_a0(const FieldContext& f, FieldElement a) {
  detail::require_binary(f);
  const unsigned m = f.degree();
  if (m % 2 != 0) throw std::invalid_argument("Coulter evaluation needs even m");
  if (a.is_zero()) throw std::invalid_argument("Coulter evaluation needs a != 0");
  const std::int64_t s = detail::sign_of((m / 2) % 2);
  return is_cube(f, a) ? -s * detail::pow2(m / 2 + 1) : s * detail::pow2(m / 2);
}

struct LinearizedSolution {
  std::optional<FieldElement> particular;
  std::vector<FieldElement> kernel_basis;
};

/// Solves a^2 x^4 + a x = rhs over GF(2^m) by elimination on the GF(2)-linear map.
inline LinearizedSolution solve_linearized_quartic(const FieldContext& f, FieldElement a, FieldElement rhs) {
  detail::require_binary(f);
  const unsigned m = f.degree();
  const FieldElement a2 = f.mul(a, a);
  struct Pivot {
    std::uint32_t vec = 0;
    std::uint32_t combo = 0;
  };
  std::vector<std::optional<Pivot>> pivots(m);
  LinearizedSolution sol;

  auto reduce = [&](std::uint32_t& vec, std::uint32_t& combo) {
    for (unsigned bit = m; bit-- > 0;)
      if ((vec >> bit & 1u) && pivots[bit]) {
        vec ^= pivots[bit]->vec;
        combo ^= pivots[bit]->combo;
      }
  };

  for (unsigned i = 0; i < m; ++i) {
    const FieldElement basis{std::uint32_t{1} << i};
    std::uint32_t vec = f.add(f.mul(a2, f.pow(basis, 4)), f.mul(a, basis)).packed;
    std::uint32_t combo = std::uint32_t{1} << i;
    reduce(vec, combo);
    if (vec == 0) {
      sol.kernel_basis.push_back({combo});
    } else {
      unsigned top = 31;
      while (!(vec >> top & 1u)) --top;
      pivots[top] = Pivot{vec, combo};
    }
  }
  std::uint32_t vec = rhs.packed, combo = 0;
  reduce(vec, combo);
  if (vec == 0) sol.particular = FieldElement{combo};
  return sol;
}

/// How the closed form treats a cube a whose quartic is solvable.
enum class CubeRule {
  Uniform,     ///< -(-1)^(m/2) 2^(m/2+1) chi(a x0^3) for every such a
  TraceSplit,  ///< as Uniform when Tr(a) = 0, but (-1)^(m/2) 2^(m/2) chi(a x0^3) when Tr(a) != 0
};

/// S(a, b) for even m, a != 0, b != 0, from the solution of a^2 x^4 + a x = b^2.
/// Throws std::logic_error if Tr(a x0^3) is not constant on the solution coset.
/// Only CubeRule::Uniform agrees with direct summation; TraceSplit is kept so the disagreement can be reproduced.
inline std::int64_t coulter_S_ab(const FieldContext& f, FieldElement a, FieldElement b,
                                 CubeRule rule = CubeRule::Uniform) {
  detail::require_binary(f);
  const unsigned m = f.degree();
  if (m % 2 != 0) throw std::invalid_argument("Coulter evaluation needs even m");
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("Coulter evaluation needs a, b != 0");
  const auto sol = solve_linearized_quartic(f, a, f.mul(b, b));
  if (!sol.particular) return 0;

  auto tr_ax3 = [&](FieldElement x) { return f.trace(f.mul(a, f.pow(x, 3))); };
  const unsigned t0 = tr_ax3(*sol.particular);
  const std::size_t dim = sol.kernel_basis.size();
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << dim); ++mask) {
    FieldElement x = *sol.particular;
    for (std::size_t i = 0; i < dim; ++i)
      if (mask >> i & 1u) x = f.add(x, sol.kernel_basis[i]);
    if (tr_ax3(x) != t0) throw std::logic_error("Tr(a x0^3) varies across solutions");
  }

  const std::int64_t s = detail::sign_of((m / 2) % 2);
  const std::int64_t chi = detail::sign_of(t0);
  if (!is_cube(f, a)) return s * detail::pow2(m / 2) * chi;
  if (rule == CubeRule::TraceSplit && f.trace(a) != 0) return s * detail::pow2(m / 2) * chi;
  return -s * detail::pow2(m / 2 + 1) * chi;
}

/// Closed-form S(a, b) for even m, covering a = 0 and b = 0.
inline std::int64_t coulter_prediction(const FieldContext& f, FieldElement a, FieldElement b,
                                       CubeRule rule = CubeRule::Uniform) {
  if (a.is_zero()) return b.is_zero() ? static_cast<std::int64_t>(f.order()) : 0;
  if (b.is_zero()) return coulter_S_a0(f, a);
  return coulter_S_ab(f, a, b, rule);
}

/// x^4 + x = 1 is solvable in GF(2^m), m even, iff m = 0 (mod 4).
inline bool quartic_solvable_at_one(unsigned m) {
  if (m % 2 != 0) throw std::invalid_argument("needs even m");
  return m % 4 == 0;
}

/// A root of x^4 + x + 1 found by scanning the field.
inline std::optional<FieldElement> quartic_root_at_one(const FieldContext& f) {
  detail::require_binary(f);
  for (std::uint32_t v = 0; v < f.order(); ++v) {
    const FieldElement x{v};
    if (f.add(f.pow(x, 4), x) == f.one()) return x;
  }
  return std::nullopt;
}

struct WalshSpectrum {
  std::vector<std::int64_t> values;  // indexed by FieldElement::packed of w
  std::uint64_t n_f = 0;
};

namespace detail {

inline void fast_walsh_hadamard(std::vector<std::int64_t>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t i = 0; i < v.size(); i += len << 1)
      for (std::size_t j = i; j < i + len; ++j) {
        const std::int64_t a = v[j], b = v[j + len];
        v[j] = a + b;
        v[j + len] = a - b;
      }
}

}  // namespace detail

/// f^(w) = sum_x (-1)^(f(x) + Tr(w x)) for every w, in O(q log q).
inline WalshSpectrum walsh_transform(const FieldContext& f, const TruthTable& table) {
  detail::require_binary(f);
  if (table.size() != f.order()) throw std::invalid_argument("truth table length must equal q");
  std::vector<std::int64_t> h(f.order());
  WalshSpectrum out;
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    h[x] = table[x] ? -1 : 1;
    out.n_f += table[x] != 0;
  }
  detail::fast_walsh_hadamard(h);

  // Tr(w x) = <u(w), x> with u(w)_i = Tr(w X^i).
  const unsigned m = f.degree();
  std::vector<std::uint32_t> u_of_basis(m, 0);
  for (unsigned k = 0; k < m; ++k)
    for (unsigned i = 0; i < m; ++i)
      u_of_basis[k] |= f.trace(f.mul({std::uint32_t{1} << k}, {std::uint32_t{1} << i})) << i;
  std::vector<std::uint32_t> u(f.order(), 0);
  out.values.assign(f.order(), 0);
  for (std::uint32_t w = 0; w < f.order(); ++w) {
    if (w) {
      const unsigned low = static_cast<unsigned>(__builtin_ctz(w));
      u[w] = u[w & (w - 1)] ^ u_of_basis[low];
    }
    out.values[w] = h[u[w]];
  }

  std::int64_t parseval = 0;
  for (std::int64_t v : out.values) parseval += v * v;
  const auto q = static_cast<std::int64_t>(f.order());
  if (parseval != q * q) throw std::logic_error("Parseval identity violated");
  if (out.values[0] != q - 2 * static_cast<std::int64_t>(out.n_f)) throw std::logic_error("f^(0) != q - 2 n_f");
  return out;
}

struct CubicCounts {
  std::int64_t n0_count = 0;  // |{x : Tr(x^3 + x) = 0}|
  std::int64_t n0_sum = 0;    // 2^(m-1) + S(1,1)/2
  std::int64_t nb_count = 0;  // |{x : Tr(x^3 + x) = 0, Tr(b x) = 0}|
  std::int64_t nb_sum = 0;    // (S(1,1) + S(1,b+1) + 2^m) / 4
  std::int64_t weight() const { return n0_count - nb_count; }
};

inline CubicCounts n0_and_Nb(const FieldContext& f, FieldElement b) {
  detail::require_binary(f);
  if (b.is_zero()) throw std::invalid_argument("needs b != 0");
  CubicCounts c;
  for (std::uint32_t v = 0; v < f.order(); ++v) {
    const FieldElement x{v};
    if ((f.trace(f.pow(x, 3)) ^ f.trace(x)) != 0) continue;
    ++c.n0_count;
    c.nb_count += f.trace(f.mul(b, x)) == 0;
  }
  const std::int64_t q = f.order();
  const std::int64_t s11 = weil_sum(f, f.one(), f.one());
  const std::int64_t s1b = weil_sum(f, f.one(), f.add(b, f.one()));
  if ((s11 % 2) != 0 || (s11 + s1b + q) % 4 != 0) throw std::logic_error("character sums not divisible as expected");
  c.n0_sum = q / 2 + s11 / 2;
  c.nb_sum = (s11 + s1b + q) / 4;
  return c;
}

}  // namespace tracecode
