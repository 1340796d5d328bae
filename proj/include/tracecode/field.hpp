#pragma once

// Exact arithmetic in GF(p^m) backed by dense log/antilog tables.
//
// Elements are stored packed: digit i (base p) of FieldElement::packed is the
// coefficient of X^i in the polynomial basis defined by the field modulus.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracecode {

/// Thrown when a requested computation exceeds a configured resource cap.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 24;

struct FieldElement {
  std::uint32_t packed = 0;

  constexpr bool is_zero() const { return packed == 0; }
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

struct FieldOptions {
  /// Monic modulus, constant term first, length m + 1. Must be irreducible.
  std::optional<std::vector<unsigned>> modulus;
  /// Generator coordinates, constant term first. Must be primitive.
  std::optional<std::vector<unsigned>> generator;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

using Poly = std::vector<unsigned>;  // constant term first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline unsigned inv_mod_p(unsigned a, unsigned p) {
  unsigned r = 1;
  for (unsigned e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1u) r = r * b % p;
  return r;
}

// Remainder of a modulo a monic divisor.
inline Poly poly_rem_monic(Poly a, const Poly& monic, unsigned p) {
  const std::size_t d = monic.size() - 1;
  trim(a);
  while (a.size() > d) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - d;
    for (std::size_t i = 0; i <= d; ++i)
      a[shift + i] = (a[shift + i] + (p - lead) * monic[i]) % p;
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..m/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<unsigned>(d));
    Poly divisor(d + 1, 0);
    divisor[d] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i, c /= p) divisor[i] = static_cast<unsigned>(c % p);
      if (poly_rem_monic(f, divisor, p).empty()) return false;
    }
  }
  return true;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modulus, unsigned p) {
  Poly prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  Poly r = poly_rem_monic(std::move(prod), modulus, p);
  r.resize(modulus.size() - 1, 0);
  return r;
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& modulus, unsigned p) {
  Poly result(modulus.size() - 1, 0);
  result[0] = 1;
  while (e > 0) {
    if (e & 1u) result = poly_mulmod(result, base, modulus, p);
    base = poly_mulmod(base, base, modulus, p);
    e >>= 1;
  }
  return result;
}

// Coefficient vector whose lexicographic rank (constant term compared first) is `rank`.
inline Poly lex_vector(std::uint64_t rank, unsigned p, unsigned len) {
  Poly v(len, 0);
  for (unsigned i = len; i-- > 0; rank /= p) v[i] = static_cast<unsigned>(rank % p);
  return v;
}

}  // namespace detail

/// Immutable description of GF(p^m) with all lookup tables precomputed.
class FieldContext {
 public:
  FieldContext(unsigned p, unsigned m, const FieldOptions& options = {}) : p_(p), m_(m) {
    if (!detail::is_prime(p) || p > 251) throw std::invalid_argument("field base must be a prime in [2, 251]");
    if (m < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
      q *= p;
      if (q > kMaxFieldOrder) throw LimitError("field order p^m exceeds 2^24");
    }
    q_ = static_cast<std::uint32_t>(q);
    digit_weight_.resize(m);
    for (unsigned i = 0; i < m; ++i) digit_weight_[i] = static_cast<std::uint32_t>(detail::ipow(p, i));

    choose_modulus(options.modulus);
    choose_generator(options.generator);
    build_tables();
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  std::span<const unsigned> modulus() const { return modulus_; }
  FieldElement generator() const { return generator_; }

  FieldElement zero() const { return {}; }
  FieldElement one() const { return {1}; }
  bool contains(FieldElement x) const { return x.packed < q_; }

  /// Embeds c in GF(p) as a constant polynomial.
  FieldElement constant(unsigned c) const { return {c % p_}; }

  FieldElement from_coords(std::span<const unsigned> coords) const {
    if (coords.size() != m_) throw std::invalid_argument("coordinate vector must have length m");
    std::uint32_t v = 0;
    for (unsigned i = 0; i < m_; ++i) {
      if (coords[i] >= p_) throw std::invalid_argument("coordinate digit out of range");
      v += coords[i] * digit_weight_[i];
    }
    return {v};
  }

  std::vector<unsigned> coords(FieldElement x) const {
    std::vector<unsigned> out(m_);
    std::uint32_t v = x.packed;
    for (unsigned i = 0; i < m_; ++i, v /= p_) out[i] = v % p_;
    return out;
  }

  /// Discrete log base the generator; empty for zero.
  std::optional<std::uint32_t> log(FieldElement x) const {
    if (x.is_zero()) return std::nullopt;
    return log_[x.packed];
  }

  /// generator^t.
  FieldElement exp(std::uint64_t t) const { return {exp_[t % (q_ - 1)]}; }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (p_ == 2) return {a.packed ^ b.packed};
    std::uint32_t x = a.packed, y = b.packed, r = 0;
    for (unsigned i = 0; i < m_; ++i, x /= p_, y /= p_) {
      unsigned s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      r += s * digit_weight_[i];
    }
    return {r};
  }

  FieldElement scale(FieldElement a, unsigned c) const {
    c %= p_;
    if (c == 0) return zero();
    if (p_ == 2) return a;
    std::uint32_t x = a.packed, r = 0;
    for (unsigned i = 0; i < m_; ++i, x /= p_) r += (x % p_) * c % p_ * digit_weight_[i];
    return {r};
  }

  FieldElement neg(FieldElement a) const { return scale(a, p_ - 1); }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    return {exp_[log_[a.packed] + log_[b.packed]]};
  }

  FieldElement inv(FieldElement a) const {
    if (a.is_zero()) throw std::domain_error("inversion of zero");
    const std::uint32_t l = log_[a.packed];
    return {exp_[l == 0 ? 0 : (q_ - 1) - l]};
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.is_zero()) return zero();
    const std::uint64_t n = q_ - 1;
    return {exp_[(std::uint64_t{log_[a.packed]} * (e % n)) % n]};
  }

  /// x^(p^i).
  FieldElement frobenius(FieldElement x, unsigned i = 1) const { return pow(x, frobenius_exponent(i)); }

  /// p^i reduced modulo q - 1 (exact value for the exponent arithmetic on nonzero elements).
  std::uint64_t frobenius_exponent(unsigned i) const {
    std::uint64_t e = 1;
    for (unsigned k = 0; k < i % m_; ++k) e *= p_;
    return e;
  }

  /// x^(p^ell + 1): Frobenius first, then one table multiplication.
  FieldElement gold_power(FieldElement x, unsigned ell) const { return mul(frobenius(x, ell), x); }

  unsigned trace(FieldElement x) const { return trace_[x.packed]; }

  /// Tr(generator^t) for 0 <= t < 2(q-1).
  unsigned trace_at_log(std::uint32_t t) const { return trace_by_log_[t]; }

  /// Canonical ordering key: 0 for zero, 1 + log for nonzero elements.
  std::uint32_t canonical_index(FieldElement x) const { return x.is_zero() ? 0 : log_[x.packed] + 1; }
  FieldElement from_canonical_index(std::uint32_t i) const { return i == 0 ? zero() : FieldElement{exp_[i - 1]}; }

 private:
  void choose_modulus(const std::optional<std::vector<unsigned>>& override_poly) {
    if (override_poly) {
      const auto& f = *override_poly;
      if (f.size() != m_ + 1 || f.back() != 1) throw std::invalid_argument("modulus override must be monic of degree m");
      if (std::any_of(f.begin(), f.end(), [&](unsigned c) { return c >= p_; }))
        throw std::invalid_argument("modulus coefficient out of range");
      if (!detail::is_irreducible(f, p_)) throw std::invalid_argument("modulus override is reducible");
      modulus_ = f;
      return;
    }
    for (std::uint64_t rank = 0; rank < q_; ++rank) {
      detail::Poly f = detail::lex_vector(rank, p_, m_);
      f.push_back(1);
      if (detail::is_irreducible(f, p_)) {
        modulus_ = std::move(f);
        return;
      }
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  bool is_primitive(const detail::Poly& g) const {
    if (std::all_of(g.begin(), g.end(), [](unsigned c) { return c == 0; })) return false;
    const std::uint64_t n = q_ - 1;
    detail::Poly one(m_, 0);
    one[0] = 1;
    if (detail::poly_powmod(g, n, modulus_, p_) != one) return false;
    for (std::uint64_t r : detail::prime_factors(n))
      if (detail::poly_powmod(g, n / r, modulus_, p_) == one) return false;
    return true;
  }

  void choose_generator(const std::optional<std::vector<unsigned>>& override_gen) {
    if (override_gen) {
      if (override_gen->size() != m_) throw std::invalid_argument("generator override must have m coordinates");
      if (!is_primitive(*override_gen)) throw std::invalid_argument("generator override is not primitive");
      generator_ = from_coords(*override_gen);
      return;
    }
    for (std::uint64_t rank = 1; rank < q_; ++rank) {
      detail::Poly g = detail::lex_vector(rank, p_, m_);
      if (is_primitive(g)) {
        generator_ = from_coords(g);
        return;
      }
    }
    throw std::logic_error("no primitive element found");
  }

  // v * generator via two half-width lookup tables.
  void build_tables() {
    const unsigned lo_digits = (m_ + 1) / 2;
    const std::uint32_t lo_size = static_cast<std::uint32_t>(detail::ipow(p_, lo_digits));
    const std::uint32_t hi_size = q_ / lo_size;
    const detail::Poly g = coords(generator_);
    std::vector<std::uint32_t> times_lo(lo_size), times_hi(hi_size);
    for (std::uint32_t v = 0; v < lo_size; ++v)
      times_lo[v] = from_coords(detail::poly_mulmod(coords({v}), g, modulus_, p_)).packed;
    for (std::uint32_t v = 0; v < hi_size; ++v)
      times_hi[v] = from_coords(detail::poly_mulmod(coords({v * lo_size}), g, modulus_, p_)).packed;

    const std::uint32_t n = q_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    log_.assign(q_, 0);
    std::vector<bool> seen(q_, false);
    std::uint32_t cur = 1;
    for (std::uint32_t t = 0; t < n; ++t) {
      if (seen[cur]) throw std::logic_error("generator is not primitive");
      seen[cur] = true;
      exp_[t] = exp_[t + n] = cur;
      log_[cur] = t;
      cur = add({times_lo[cur % lo_size]}, {times_hi[cur / lo_size]}).packed;
    }
    if (cur != 1) throw std::logic_error("generator order mismatch");

    // Tr is GF(p)-linear: tabulate it on the basis X^i, then extend.
    std::vector<unsigned> basis_trace(m_);
    for (unsigned i = 0; i < m_; ++i) {
      FieldElement x{digit_weight_[i]}, sum = zero();
      for (unsigned j = 0; j < m_; ++j) {
        sum = add(sum, x);
        x = pow(x, p_);
      }
      if (sum.packed >= p_) throw std::logic_error("trace does not land in the prime field");
      basis_trace[i] = sum.packed;
    }
    trace_.assign(q_, 0);
    std::vector<std::uint32_t> balance(p_, 0);
    for (std::uint32_t v = 0; v < q_; ++v) {
      unsigned t = 0;
      std::uint32_t x = v;
      for (unsigned i = 0; i < m_; ++i, x /= p_) t += (x % p_) * basis_trace[i];
      trace_[v] = static_cast<std::uint8_t>(t % p_);
      ++balance[trace_[v]];
    }
    for (std::uint32_t c : balance)
      if (c != q_ / p_) throw std::logic_error("trace is not balanced");

    trace_by_log_.resize(exp_.size());
    for (std::size_t t = 0; t < exp_.size(); ++t) trace_by_log_[t] = trace_[exp_[t]];
  }

  unsigned p_;
  unsigned m_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> digit_weight_;
  std::vector<unsigned> modulus_;
  FieldElement generator_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint8_t> trace_;
  std::vector<std::uint8_t> trace_by_log_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

inline FieldPtr make_field(unsigned p, unsigned m, const FieldOptions& options) {
  return std::make_shared<const FieldContext>(p, m, options);
}

inline FieldPtr make_field(unsigned p, unsigned m, std::optional<std::vector<unsigned>> modulus_override = std::nullopt) {
  FieldOptions options;
  options.modulus = std::move(modulus_override);
  return make_field(p, m, options);
}

/// Every element of the field in canonical order (zero, then ascending discrete log).
inline std::vector<FieldElement> canonical_elements(const FieldContext& f) {
  std::vector<FieldElement> out(f.order());
  for (std::uint32_t i = 0; i < f.order(); ++i) out[i] = f.from_canonical_index(i);
  return out;
}

}  // namespace tracecode
