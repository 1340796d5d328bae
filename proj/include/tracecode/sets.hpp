#pragma once

// Defining-set families and the set operators used by the structural results.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracecode/defining_set.hpp"

namespace tracecode {

inline DefiningSet full_field_set(FieldPtr field) {
  auto elems = canonical_elements(*field);
  return DefiningSet(std::move(field), std::move(elems), "full");
}

inline DefiningSet nonzero_set(FieldPtr field) {
  auto elems = canonical_elements(*field);
  elems.erase(elems.begin());
  return DefiningSet(std::move(field), std::move(elems), "nonzero");
}

/// {g^t : 0 <= t < (q-1)/(p-1)}: one representative per coset of GF(p)* in GF(q)*.
inline DefiningSet simplex_coset_reps(FieldPtr field) {
  const FieldContext& f = *field;
  if (f.order() <= f.characteristic()) throw std::invalid_argument("simplex set needs q > p");
  const std::uint32_t count = (f.order() - 1) / (f.characteristic() - 1);
  std::vector<FieldElement> elems;
  elems.reserve(count);
  for (std::uint32_t t = 0; t < count; ++t) elems.push_back(f.exp(t));
  return DefiningSet(std::move(field), std::move(elems), "simplex");
}

struct ProductResult {
  DefiningSet set;
  bool injective = false;  // |ED| == |E| |D|
};

/// ED = {e d : e in E, d in D} for a nonempty E inside GF(p)*.
inline ProductResult product_set(std::span<const unsigned> expansion, const DefiningSet& D) {
  const FieldContext& f = D.field();
  if (expansion.empty()) throw std::invalid_argument("expansion set E must be nonempty");
  std::vector<unsigned> E(expansion.begin(), expansion.end());
  std::sort(E.begin(), E.end());
  if (std::adjacent_find(E.begin(), E.end()) != E.end()) throw std::invalid_argument("expansion set has repeats");
  for (unsigned e : E)
    if (e == 0 || e >= f.characteristic()) throw std::invalid_argument("expansion set must lie in GF(p)*");

  std::vector<bool> seen(f.order(), false);
  std::vector<FieldElement> out;
  for (unsigned e : E)
    for (FieldElement d : D.elements()) {
      const FieldElement v = f.scale(d, e);
      if (!seen[v.packed]) out.push_back(v);
      seen[v.packed] = true;
    }
  std::string label = "product:";
  for (std::size_t i = 0; i < E.size(); ++i) label += (i ? "," : "") + std::to_string(E[i]);
  label += ":" + D.label();
  const bool injective = out.size() == E.size() * D.size();
  return {DefiningSet(D.field_ptr(), std::move(out), label), injective};
}

/// GF(q) \ D.
inline DefiningSet complement(const DefiningSet& D) {
  const FieldContext& f = D.field();
  const auto in = D.membership();
  std::vector<FieldElement> out;
  out.reserve(f.order() - D.size());
  for (FieldElement x : canonical_elements(f))
    if (!in[x.packed]) out.push_back(x);
  return DefiningSet(D.field_ptr(), std::move(out), "complement:" + D.label());
}

inline DefiningSet union_disjoint(const DefiningSet& a, const DefiningSet& b) {
  if (a.field_ptr() != b.field_ptr()) throw std::invalid_argument("sets live in different field contexts");
  std::vector<FieldElement> out(a.elements().begin(), a.elements().end());
  for (FieldElement x : b.elements()) {
    if (a.contains(x)) throw std::invalid_argument("sets are not disjoint");
    out.push_back(x);
  }
  return DefiningSet(a.field_ptr(), std::move(out), a.label() + "|" + b.label());
}

/// One term a x^(p^i + p^j) of a quadratic form.
struct QuadraticTerm {
  unsigned i = 0;
  unsigned j = 0;
  FieldElement coefficient;
};

struct QuadraticForm {
  std::vector<QuadraticTerm> terms;

  FieldElement evaluate(const FieldContext& f, FieldElement x) const {
    FieldElement sum = f.zero();
    for (const auto& t : terms)
      sum = f.add(sum, f.mul(t.coefficient, f.mul(f.frobenius(x, t.i), f.frobenius(x, t.j))));
    return sum;
  }

  /// x^(p^ell + 1).
  static QuadraticForm gold(unsigned ell) { return {{{ell, 0, FieldElement{1}}}}; }
};

namespace detail {

inline std::vector<FieldElement> form_values(const FieldContext& f, const QuadraticForm& form) {
  std::vector<FieldElement> v(f.order());
  for (std::uint32_t x = 0; x < f.order(); ++x) v[x] = form.evaluate(f, {x});
  return v;
}

}  // namespace detail

struct QuadraticImage {
  DefiningSet set;                                          // D(f) = f(GF(q)) \ {0}
  std::vector<std::pair<FieldElement, std::uint64_t>> fibers;  // u -> #{x in GF(q)* : f(x) = u}
};

inline QuadraticImage quadratic_form_image(FieldPtr field, const QuadraticForm& form, std::string label = "qf") {
  const FieldContext& f = *field;
  const auto values = detail::form_values(f, form);
  std::vector<std::uint64_t> fiber(f.order(), 0);
  for (std::uint32_t x = 1; x < f.order(); ++x) ++fiber[values[x].packed];
  std::vector<FieldElement> image;
  std::vector<std::pair<FieldElement, std::uint64_t>> profile;
  for (FieldElement u : canonical_elements(f)) {
    if (fiber[u.packed] == 0) continue;
    profile.emplace_back(u, fiber[u.packed]);
    if (!u.is_zero()) image.push_back(u);
  }
  return {DefiningSet(std::move(field), std::move(image), std::move(label)), std::move(profile)};
}

inline constexpr std::uint32_t kMaxRankScanOrder = std::uint32_t{1} << 16;

/// Codimension of V_f = {x : f(x+z) - f(x) - f(z) = 0 for all z}, by exhaustive scan.
inline unsigned quadratic_form_rank(const FieldContext& f, const QuadraticForm& form) {
  if (f.order() > kMaxRankScanOrder) throw LimitError("rank scan is quadratic in q; field too large");
  const auto values = detail::form_values(f, form);
  std::uint64_t radical = 0;
  for (std::uint32_t x = 0; x < f.order(); ++x) {
    bool in = true;
    for (std::uint32_t z = 0; z < f.order() && in; ++z) {
      const FieldElement s = f.add({x}, {z});
      in = f.sub(f.sub(values[s.packed], values[x]), values[z]).is_zero();
    }
    radical += in;
  }
  unsigned dim = 0;
  std::uint64_t r = radical;
  while (r % f.characteristic() == 0 && r > 1) {
    r /= f.characteristic();
    ++dim;
  }
  if (r != 1) throw std::domain_error("radical size is not a power of p");
  return f.degree() - dim;
}

/// e when f(0) = 0, f has no zero on GF(q)*, and every attained value has exactly e preimages in GF(q)*.
inline std::optional<std::uint64_t> is_e_to_one(const FieldContext& f, const QuadraticForm& form) {
  if (!form.evaluate(f, f.zero()).is_zero()) return std::nullopt;
  std::vector<std::uint64_t> fiber(f.order(), 0);
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    const FieldElement v = form.evaluate(f, {x});
    if (v.is_zero()) return std::nullopt;
    ++fiber[v.packed];
  }
  std::uint64_t e = 0;
  for (std::uint64_t c : fiber) {
    if (c == 0) continue;
    if (e != 0 && c != e) return std::nullopt;
    e = c;
  }
  return e;
}

/// Boolean function on GF(2^m) as a truth table indexed by FieldElement::packed.
using TruthTable = std::vector<std::uint8_t>;

template <class Fn>
TruthTable truth_table_of(const FieldContext& f, Fn&& fn) {
  TruthTable t(f.order());
  for (std::uint32_t x = 0; x < f.order(); ++x) t[x] = static_cast<std::uint8_t>(fn(FieldElement{x}) & 1u);
  return t;
}

/// D_f = {x : f(x) = 1}.
inline DefiningSet boolean_support(FieldPtr field, const TruthTable& table, std::string label = "bool") {
  if (field->characteristic() != 2) throw std::invalid_argument("Boolean supports need p = 2");
  if (table.size() != field->order()) throw std::invalid_argument("truth table length must equal q");
  std::vector<FieldElement> out;
  for (FieldElement x : canonical_elements(*field))
    if (table[x.packed]) out.push_back(x);
  return DefiningSet(std::move(field), std::move(out), std::move(label));
}

inline std::uint64_t hkm_exponent(unsigned h) {
  std::uint64_t a = 1;
  for (unsigned i = 0; i < h; ++i) a *= 3;
  return a * a - a + 1;
}

/// {g^t : Tr(g^t + g^(t l)) = 0, 0 <= t <= (q-3)/2} over GF(3^(3h)), l = 3^(2h) - 3^h + 1.
/// Even h is accepted only when `exploratory` is set.
inline DefiningSet hkm_set(FieldPtr field, bool exploratory = false) {
  const FieldContext& f = *field;
  if (f.characteristic() != 3 || f.degree() % 3 != 0) throw std::invalid_argument("HKM set needs GF(3^(3h))");
  const unsigned h = f.degree() / 3;
  if (h % 2 == 0 && !exploratory) throw std::invalid_argument("HKM set needs odd h");
  const std::uint64_t ell = hkm_exponent(h);
  const std::uint32_t n = f.order() - 1;
  std::vector<FieldElement> out;
  for (std::uint32_t t = 0; t <= (f.order() - 3) / 2; ++t) {
    const auto tl = static_cast<std::uint32_t>(std::uint64_t{t} * ell % n);
    if ((f.trace_at_log(t) + f.trace_at_log(tl)) % 3 == 0) out.push_back(f.exp(t));
  }
  return DefiningSet(std::move(field), std::move(out), "hkm:" + std::to_string(h));
}

inline FieldPtr hkm_field(unsigned h) {
  if (h == 0) throw std::invalid_argument("h must be positive");
  return make_field(3, 3 * h);
}

/// {x in GF(2^m)* : Tr(x^3 + x) = 0}.
inline DefiningSet tr_cubic_set(FieldPtr field) {
  const FieldContext& f = *field;
  if (f.characteristic() != 2) throw std::invalid_argument("tr-cubic set needs p = 2");
  if (f.degree() < 2) throw std::invalid_argument("tr-cubic set needs m >= 2");
  std::vector<FieldElement> out;
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    const FieldElement e{x};
    if ((f.trace(f.pow(e, 3)) ^ f.trace(e)) == 0) out.push_back(e);
  }
  return DefiningSet(std::move(field), std::move(out), "trcubic");
}

}  // namespace tracecode
