#pragma once

// Claim verification: closed-form predicted distributions against brute-force codes.
//
// Predictions never look at the constructed code of the claim they predict. Claims
// that transform a base code (expansion, combining, complement) consume the base
// code's distribution, which is computed separately from the code under test.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tracecode/code.hpp"
#include "tracecode/duality.hpp"
#include "tracecode/sets.hpp"
#include "tracecode/spectra.hpp"

namespace tracecode {

enum class Claim {
  Thm1Expansion,
  Cor1Simplex,
  Cor2OneWeight,
  Thm2Combine,
  Cor3Complement,
  Cor4QfOdd,
  Cor4QfEven,
  Cor5Boolean,
  Thm3Hkm,
  Thm4OddM,
  Thm5EvenM,
};

inline constexpr Claim kAllClaims[] = {Claim::Thm1Expansion, Claim::Cor1Simplex, Claim::Cor2OneWeight,
                                       Claim::Thm2Combine,   Claim::Cor3Complement, Claim::Cor4QfOdd,
                                       Claim::Cor4QfEven,    Claim::Cor5Boolean,  Claim::Thm3Hkm,
                                       Claim::Thm4OddM,      Claim::Thm5EvenM};

inline std::string_view claim_name(Claim c) {
  switch (c) {
    case Claim::Thm1Expansion: return "thm1";
    case Claim::Cor1Simplex: return "cor1";
    case Claim::Cor2OneWeight: return "cor2";
    case Claim::Thm2Combine: return "thm2";
    case Claim::Cor3Complement: return "cor3";
    case Claim::Cor4QfOdd: return "cor4-odd";
    case Claim::Cor4QfEven: return "cor4-even";
    case Claim::Cor5Boolean: return "cor5";
    case Claim::Thm3Hkm: return "thm3";
    case Claim::Thm4OddM: return "thm4";
    case Claim::Thm5EvenM: return "thm5";
  }
  return "?";
}

inline std::optional<Claim> parse_claim(std::string_view name) {
  for (Claim c : kAllClaims)
    if (claim_name(c) == name) return c;
  return std::nullopt;
}

enum class Verdict { Match, Mismatch, HypothesisNotMet };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::HypothesisNotMet: return "hypothesis-not-met";
  }
  return "?";
}

struct HypothesisCheck {
  std::string name;
  bool passed = false;
};

/// One instantiation of a claim. Parameter-only claims build their own field;
/// set-based claims (expansion, combining, complement) carry their sets.
struct ClaimInstance {
  Claim claim = Claim::Thm4OddM;
  unsigned p = 2;
  unsigned m = 0;
  unsigned h = 0;
  bool exploratory = false;
  std::vector<unsigned> expansion;  // E inside GF(p)*
  std::optional<QuadraticForm> form;
  std::optional<TruthTable> table;
  std::optional<DefiningSet> base;     // D (thm1, cor3) or D1 (thm2)
  std::optional<DefiningSet> partner;  // D2 (thm2)
  FieldOptions field_options;
  std::string label;
};

struct TheoremReport {
  Claim claim = Claim::Thm4OddM;
  std::string label;
  unsigned p = 0;
  unsigned m = 0;
  std::vector<HypothesisCheck> hypothesis_checks;
  std::vector<HypothesisCheck> claim_checks;  // extra assertions of the claim beyond the distribution
  std::optional<WeightDistribution> predicted;
  std::optional<WeightDistribution> computed;
  Verdict verdict = Verdict::Mismatch;
  std::optional<std::uint64_t> first_difference;  // smallest weight whose multiplicity differs
  /// When a hypothesis fails but the transformation can still be applied: whether it happens to hold.
  std::optional<bool> relation_observed;
  std::optional<std::uint64_t> dual_distance;
  bool pless_ok = true;
  std::vector<std::string> notes;
  double elapsed_ms = 0;

  bool hypotheses_met() const {
    return std::all_of(hypothesis_checks.begin(), hypothesis_checks.end(), [](const auto& c) { return c.passed; });
  }
};

// ---------------------------------------------------------------------------
// Instance builders.

namespace detail {

inline ClaimInstance instance(Claim claim, unsigned p, unsigned m, std::string label) {
  ClaimInstance c;
  c.claim = claim;
  c.p = p;
  c.m = m;
  c.label = std::move(label);
  return c;
}

inline std::string join_expansion(std::span<const unsigned> E) {
  std::string s;
  for (std::size_t i = 0; i < E.size(); ++i) s += (i ? "," : "") + std::to_string(E[i]);
  return s;
}

}  // namespace detail

inline ClaimInstance thm4_instance(unsigned m) {
  return detail::instance(Claim::Thm4OddM, 2, m, "trcubic m=" + std::to_string(m));
}

inline ClaimInstance thm5_instance(unsigned m) {
  return detail::instance(Claim::Thm5EvenM, 2, m, "trcubic m=" + std::to_string(m));
}

inline ClaimInstance thm3_instance(unsigned h, bool exploratory = false) {
  auto c = detail::instance(Claim::Thm3Hkm, 3, 3 * h, "complement:hkm:" + std::to_string(h));
  c.h = h;
  c.exploratory = exploratory;
  return c;
}

inline ClaimInstance cor1_instance(unsigned p, unsigned m) {
  return detail::instance(Claim::Cor1Simplex, p, m, "simplex");
}

inline ClaimInstance cor2_instance(unsigned p, unsigned m, std::vector<unsigned> expansion) {
  auto c = detail::instance(Claim::Cor2OneWeight, p, m, "product:" + detail::join_expansion(expansion) + ":simplex");
  c.expansion = std::move(expansion);
  return c;
}

inline ClaimInstance cor4_instance(unsigned p, unsigned m, QuadraticForm form, bool odd_rank) {
  auto c = detail::instance(odd_rank ? Claim::Cor4QfOdd : Claim::Cor4QfEven, p, m, "complement:qf");
  c.form = std::move(form);
  return c;
}

inline ClaimInstance cor5_instance(unsigned m, TruthTable table, std::string label = "complement:bool") {
  auto c = detail::instance(Claim::Cor5Boolean, 2, m, std::move(label));
  c.table = std::move(table);
  return c;
}

inline ClaimInstance thm1_instance(std::vector<unsigned> expansion, DefiningSet D) {
  auto c = detail::instance(Claim::Thm1Expansion, D.field().characteristic(), D.field().degree(),
                            "product:" + detail::join_expansion(expansion) + ":" + D.label());
  c.expansion = std::move(expansion);
  c.base = std::move(D);
  return c;
}

inline ClaimInstance thm2_instance(DefiningSet D1, DefiningSet D2) {
  auto c = detail::instance(Claim::Thm2Combine, D1.field().characteristic(), D1.field().degree(),
                            D1.label() + " + " + D2.label());
  c.base = std::move(D1);
  c.partner = std::move(D2);
  return c;
}

inline ClaimInstance cor3_instance(DefiningSet D) {
  auto c = detail::instance(Claim::Cor3Complement, D.field().characteristic(), D.field().degree(),
                            "complement:" + D.label());
  c.base = std::move(D);
  return c;
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace detail {

inline BigInt pow_big(unsigned base, std::int64_t e) {
  if (e < 0) throw std::domain_error("negative exponent in closed form");
  return big_pow(base, static_cast<std::uint64_t>(e));
}

inline WeightDistribution empty_distribution(unsigned p, unsigned m, const BigInt& n, std::uint64_t k) {
  if (n < 0) throw std::domain_error("closed-form length is negative");
  WeightDistribution wd;
  wd.p = p;
  wd.m = m;
  wd.n = static_cast<std::uint64_t>(n);
  wd.k = k;
  wd.counts[0] = 1;
  return wd;
}

inline void add_row(WeightDistribution& wd, const BigInt& weight, const BigInt& count) {
  if (weight < 0 || count < 0) throw std::domain_error("closed form gives a negative weight or multiplicity");
  if (count == 0) return;
  wd.counts[static_cast<std::uint64_t>(weight)] += count;
}

/// Exact a / b, or nullopt when b does not divide a.
inline std::optional<BigInt> exact_div(const BigInt& a, const BigInt& b) {
  if (b == 0 || a % b != 0) return std::nullopt;
  return a / b;
}

inline int sign_pow(std::uint64_t e) { return (e % 2) ? -1 : 1; }

}  // namespace detail

/// Weight table of the tr-cubic code for odd m >= 5.
inline WeightDistribution predict_thm4(unsigned m) {
  const BigInt s = detail::sign_pow((std::uint64_t{m} * m - 1) / 8);
  const BigInt P = detail::pow_big(2, m - 2), Q = detail::pow_big(2, (static_cast<std::int64_t>(m) - 3) / 2);
  auto wd = detail::empty_distribution(2, m, detail::pow_big(2, m - 1) - 1 + s * detail::pow_big(2, (m - 1) / 2), m);
  detail::add_row(wd, P + (s - 1) * Q, P + Q - (1 + s) / 2);
  detail::add_row(wd, P + s * Q, detail::pow_big(2, m - 1));
  detail::add_row(wd, P + (s + 1) * Q, P - Q + (s - 1) / 2);
  return wd;
}

/// Weight tables of the tr-cubic code for even m >= 4 (separate rows for m = 2 and m = 0 mod 4).
inline WeightDistribution predict_thm5(unsigned m) {
  const std::int64_t mm = m;
  const BigInt P = detail::pow_big(2, mm - 2), R = detail::pow_big(2, (mm - 2) / 2), T = detail::pow_big(2, (mm - 4) / 2);
  const BigInt half = detail::pow_big(2, mm - 3);
  if (m % 4 == 2) {
    auto wd = detail::empty_distribution(2, m, detail::pow_big(2, mm - 1) - 1, m);
    detail::add_row(wd, P, 3 * P - 1);
    detail::add_row(wd, P + R, half - T);
    detail::add_row(wd, P - R, half + T);
    return wd;
  }
  const BigInt t = detail::sign_pow(m / 4);
  auto wd = detail::empty_distribution(2, m, detail::pow_big(2, mm - 1) - 1 - t * detail::pow_big(2, mm / 2), m);
  detail::add_row(wd, P - t * R, 3 * P);
  detail::add_row(wd, P - (t + 1) * R, half + T + (t - 1) / 2);
  detail::add_row(wd, P - (t - 1) * R, half - T - (t + 1) / 2);
  return wd;
}

/// Ternary complement-of-HKM code, odd h.
inline WeightDistribution predict_thm3(unsigned h) {
  const std::int64_t hh = h;
  const BigInt W = 5 * detail::pow_big(3, 3 * hh - 2), U = detail::pow_big(3, 2 * hh - 2);
  auto wd = detail::empty_distribution(3, 3 * h, (5 * detail::pow_big(3, 3 * hh - 1) + 1) / 2, 3 * h);
  detail::add_row(wd, W + U, detail::pow_big(3, 2 * hh) + detail::pow_big(3, hh));
  detail::add_row(wd, W, detail::pow_big(3, 3 * hh) - 2 * detail::pow_big(3, 2 * hh) - 1);
  detail::add_row(wd, W - U, detail::pow_big(3, 2 * hh) - detail::pow_big(3, hh));
  return wd;
}

/// One-weight code [expansion_factor (q-1)/(p-1), m] with weight expansion_factor p^(m-1).
inline WeightDistribution predict_one_weight(unsigned p, unsigned m, unsigned expansion_factor) {
  const BigInt q = detail::pow_big(p, m);
  auto wd = detail::empty_distribution(p, m, expansion_factor * (q - 1) / (p - 1), m);
  detail::add_row(wd, expansion_factor * detail::pow_big(p, m - 1), q - 1);
  return wd;
}

/// Complement of the image of an e-to-1 quadratic form of rank r. Nothing when a closed-form value is not integral.
inline std::optional<WeightDistribution> predict_cor4(unsigned p, unsigned m, std::uint64_t e, unsigned rank) {
  const BigInt q = detail::pow_big(p, m), E = e;
  const auto n = detail::exact_div((E - 1) * q + 1, E);
  if (!n) return std::nullopt;
  auto wd = detail::empty_distribution(p, m, *n, m);
  if (rank % 2 == 1) {
    const auto w = detail::exact_div((E - 1) * (p - 1) * q, E * p);
    if (!w) return std::nullopt;
    detail::add_row(wd, *w, q - 1);
    return wd;
  }
  const BigInt shift = detail::pow_big(p, static_cast<std::int64_t>(m) - rank / 2);
  const auto w_lo = detail::exact_div((p - 1) * ((E - 1) * q - shift), E * p);
  const auto w_hi = detail::exact_div((p - 1) * ((E - 1) * q + shift), E * p);
  if (!w_lo || !w_hi) return std::nullopt;
  detail::add_row(wd, *w_lo, (q - 1) / 2);
  detail::add_row(wd, *w_hi, (q - 1) / 2);
  return wd;
}

/// {(2(q - n_f) - f^(w)) / 4 : w != 0} plus the zero word. Nothing when a value is not integral.
inline std::optional<WeightDistribution> predict_cor5(const WalshSpectrum& spectrum, unsigned m) {
  const std::int64_t q = static_cast<std::int64_t>(spectrum.values.size());
  const std::int64_t nbar = q - static_cast<std::int64_t>(spectrum.n_f);
  auto wd = detail::empty_distribution(2, m, nbar, m);
  for (std::size_t w = 1; w < spectrum.values.size(); ++w) {
    const std::int64_t num = 2 * nbar - spectrum.values[w];
    if (num % 4 != 0) return std::nullopt;
    detail::add_row(wd, num / 4, 1);
  }
  return wd;
}

/// Every weight multiplied by the expansion factor; length scales too.
inline WeightDistribution stretch(const WeightDistribution& base, unsigned factor) {
  WeightDistribution wd = base;
  wd.n = base.n * factor;
  wd.counts.clear();
  for (const auto& [w, a] : base.counts) wd.counts[w * factor] += a;
  return wd;
}

/// w -> total - w on nonzero weights, for a code of the given length.
inline std::optional<WeightDistribution> reflect(const WeightDistribution& base, std::uint64_t total, std::uint64_t length) {
  WeightDistribution wd = base;
  wd.n = length;
  wd.counts.clear();
  wd.counts[0] = 1;
  for (const auto& [w, a] : base.counts) {
    if (w == 0) continue;
    if (w > total) return std::nullopt;
    wd.counts[total - w] += a;
  }
  return wd;
}

/// Complement prediction from the base code; requires dimension m for the base.
inline std::optional<WeightDistribution> predict_complement(const WeightDistribution& base, std::uint64_t q) {
  const std::uint64_t top = static_cast<std::uint64_t>(base.p - 1) * (q / base.p);
  return reflect(base, top, q - base.n);
}

// ---------------------------------------------------------------------------
// Verification.

struct VerifyOptions {
  unsigned threads = 0;
  std::uint64_t max_q = kMaxFieldOrder;
};

namespace detail {

inline FieldPtr field_for(const ClaimInstance& inst, const VerifyOptions& opt) {
  if (inst.base) return inst.base->field_ptr();
  std::uint64_t q = 1;
  for (unsigned i = 0; i < inst.m; ++i) {
    q *= inst.p;
    if (q > opt.max_q) throw LimitError("field order exceeds the configured cap");
  }
  return make_field(inst.p, inst.m, inst.field_options);
}

inline void compare(TheoremReport& r) {
  if (!r.hypotheses_met()) {
    r.verdict = Verdict::HypothesisNotMet;
    return;
  }
  const bool checks_ok =
      std::all_of(r.claim_checks.begin(), r.claim_checks.end(), [](const auto& c) { return c.passed; });
  if (!r.predicted || !r.computed) {
    r.verdict = Verdict::Mismatch;
    return;
  }
  if (*r.predicted == *r.computed && checks_ok) {
    r.verdict = Verdict::Match;
    return;
  }
  r.verdict = Verdict::Mismatch;
  std::map<std::uint64_t, bool> keys;
  for (const auto& [w, a] : r.predicted->counts) keys[w] = true;
  for (const auto& [w, a] : r.computed->counts) keys[w] = true;
  for (const auto& [w, unused] : keys)
    if (r.predicted->count(w) != r.computed->count(w)) {
      r.first_difference = w;
      break;
    }
  if (!r.first_difference && (r.predicted->n != r.computed->n || r.predicted->k != r.computed->k))
    r.notes.push_back("length or dimension differs");
}

inline bool expansion_valid(std::span<const unsigned> E, unsigned p) {
  if (E.empty()) return false;
  std::vector<unsigned> sorted(E.begin(), E.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return std::all_of(sorted.begin(), sorted.end(), [p](unsigned e) { return e >= 1 && e < p; });
}

inline void verify_trcubic(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  const bool odd = inst.claim == Claim::Thm4OddM;
  r.hypothesis_checks.push_back({"p = 2", inst.p == 2});
  if (odd) {
    r.hypothesis_checks.push_back({"m odd", inst.m % 2 == 1});
    r.hypothesis_checks.push_back({"m >= 5", inst.m >= 5});
  } else {
    r.hypothesis_checks.push_back({"m even", inst.m % 2 == 0});
    r.hypothesis_checks.push_back({"m >= 4", inst.m >= 4});
  }
  if (!r.hypotheses_met()) return;
  r.predicted = odd ? predict_thm4(inst.m) : predict_thm5(inst.m);
  auto f = field_for(inst, opt);
  r.computed = build_code_weights(tr_cubic_set(f), opt.threads);
  const auto dd = dual_minimum_distance(*r.computed);
  r.claim_checks.push_back({"dual distance >= 3", dd && *dd >= 3});
}

inline void verify_hkm(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  r.hypothesis_checks.push_back({"h >= 1", inst.h >= 1});
  r.hypothesis_checks.push_back({"h odd", inst.h % 2 == 1});
  if (inst.h == 0) return;
  if (inst.h % 2 == 1) r.predicted = predict_thm3(inst.h);
  if (inst.h % 2 == 0 && !inst.exploratory) return;
  auto f = field_for(inst, opt);
  r.computed = build_code_weights(complement(hkm_set(f, inst.exploratory)), opt.threads);
  if (inst.h % 2 == 0)
    r.notes.push_back("even h: no predicted distribution; " + std::to_string(r.computed->nonzero_weight_count()) +
                      " nonzero weights observed");
}

inline void verify_one_weight(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  r.hypothesis_checks.push_back({"m >= 2", inst.m >= 2});
  std::vector<unsigned> E = inst.expansion;
  if (inst.claim == Claim::Cor1Simplex) E = {1};
  r.hypothesis_checks.push_back({"E nonempty subset of GF(p)*", expansion_valid(E, inst.p)});
  if (!r.hypotheses_met()) return;
  auto f = field_for(inst, opt);
  const auto product = product_set(E, simplex_coset_reps(f));
  r.hypothesis_checks.push_back({"|ED| = |E||D|", product.injective});
  r.predicted = predict_one_weight(inst.p, inst.m, static_cast<unsigned>(E.size()));
  r.computed = build_code_weights(product.set, opt.threads);
}

inline void verify_cor4(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  if (!inst.form) throw std::invalid_argument("quadratic-form claim needs a form");
  auto f = field_for(inst, opt);
  const auto e = is_e_to_one(*f, *inst.form);
  const unsigned rank = quadratic_form_rank(*f, *inst.form);
  const bool odd = inst.claim == Claim::Cor4QfOdd;
  r.hypothesis_checks.push_back({"f(0) = 0, f nonzero on GF(q)*, e-to-1", e.has_value()});
  r.hypothesis_checks.push_back({"e > 1", e && *e > 1});
  r.hypothesis_checks.push_back({odd ? "rank odd" : "rank even and >= 2", odd ? rank % 2 == 1 : (rank % 2 == 0 && rank >= 2)});
  r.notes.push_back("rank " + std::to_string(rank) + (e ? ", e = " + std::to_string(*e) : std::string{}));
  if (!r.hypotheses_met()) return;
  r.predicted = predict_cor4(inst.p, inst.m, *e, rank);
  if (!r.predicted) r.notes.push_back("closed form is not integral");
  r.computed = build_code_weights(complement(quadratic_form_image(f, *inst.form).set), opt.threads);
}

inline void verify_cor5(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  if (!inst.table) throw std::invalid_argument("Boolean claim needs a truth table");
  r.hypothesis_checks.push_back({"p = 2", inst.p == 2});
  if (inst.p != 2) return;
  auto f = field_for(inst, opt);
  const auto spectrum = walsh_transform(*f, *inst.table);
  const std::int64_t q = f->order(), nf = static_cast<std::int64_t>(spectrum.n_f);
  bool distinct = true;
  std::int64_t top = spectrum.values[0];
  for (std::size_t w = 1; w < spectrum.values.size(); ++w) {
    distinct = distinct && spectrum.values[w] != 2 * nf;
    top = std::max(top, spectrum.values[w]);
  }
  r.hypothesis_checks.push_back({"2 n_f != f^(w) for all w != 0", distinct});
  r.hypothesis_checks.push_back({"max f^(w) < 2 (2^m - n_f)", top < 2 * (q - nf)});
  r.notes.push_back("n_f = " + std::to_string(nf));
  if (!r.hypotheses_met()) return;
  r.predicted = predict_cor5(spectrum, inst.m);
  r.computed = build_code_weights(complement(boolean_support(f, *inst.table)), opt.threads);
}

inline void verify_expansion(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  const DefiningSet& D = *inst.base;
  r.hypothesis_checks.push_back({"E nonempty subset of GF(p)*", expansion_valid(inst.expansion, inst.p)});
  r.hypothesis_checks.push_back({"0 not in D", !D.contains(D.field().zero())});
  r.hypothesis_checks.push_back({"D nonempty", !D.empty()});
  if (!expansion_valid(inst.expansion, inst.p) || D.empty()) return;
  const auto product = product_set(inst.expansion, D);
  r.hypothesis_checks.push_back({"|ED| = |E||D|", product.injective});
  const auto base = build_code_weights(D, opt.threads);
  const auto expected = stretch(base, static_cast<unsigned>(inst.expansion.size()));
  r.computed = build_code_weights(product.set, opt.threads);
  if (r.hypotheses_met()) {
    r.predicted = expected;
  } else {
    r.relation_observed = expected == *r.computed;
  }
}

inline void verify_combine(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  const DefiningSet& D1 = *inst.base;
  const DefiningSet& D2 = *inst.partner;
  bool disjoint = D1.field_ptr() == D2.field_ptr();
  for (FieldElement x : D1.elements()) disjoint = disjoint && !D2.contains(x);
  r.hypothesis_checks.push_back({"D1 and D2 disjoint", disjoint});
  if (!disjoint || D1.empty() || D2.empty()) {
    r.hypothesis_checks.push_back({"D1 and D2 nonempty", !D1.empty() && !D2.empty()});
    return;
  }
  const auto whole = build_code_weights(union_disjoint(D1, D2), opt.threads);
  const auto c1 = build_code_weights(D1, opt.threads);
  r.computed = build_code_weights(D2, opt.threads);
  r.hypothesis_checks.push_back({"union code is one-weight", whole.nonzero_weight_count() == 1});
  r.hypothesis_checks.push_back({"all three dimensions equal", c1.k == whole.k && r.computed->k == whole.k});
  if (whole.nonzero_weight_count() != 1) return;
  auto expected = reflect(c1, *whole.max_weight(), D2.size());
  if (r.hypotheses_met()) {
    r.predicted = expected;
  } else {
    r.relation_observed = expected && *expected == *r.computed;
  }
}

inline void verify_complement(TheoremReport& r, const ClaimInstance& inst, const VerifyOptions& opt) {
  const DefiningSet& D = *inst.base;
  const FieldContext& f = D.field();
  r.hypothesis_checks.push_back({"D nonempty", !D.empty()});
  if (D.empty()) return;
  const auto base = build_code_weights(D, opt.threads);
  const std::uint64_t top = static_cast<std::uint64_t>(f.characteristic() - 1) * (f.order() / f.characteristic());
  r.hypothesis_checks.push_back({"dim C_D = m", base.k == f.degree()});
  r.hypothesis_checks.push_back({"max weight < (p-1) p^(m-1)", base.max_weight().value_or(0) < top});
  const auto expected = predict_complement(base, f.order());
  r.computed = build_code_weights(complement(D), opt.threads);
  if (r.hypotheses_met()) {
    r.predicted = expected;
  } else {
    r.relation_observed = expected && *expected == *r.computed;
  }
}

}  // namespace detail

/// Runs one claim instance. Throws LimitError when the field exceeds the cap.
inline TheoremReport verify(const ClaimInstance& inst, const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  TheoremReport r;
  r.claim = inst.claim;
  r.label = inst.label;
  r.p = inst.p;
  r.m = inst.m;
  switch (inst.claim) {
    case Claim::Thm4OddM:
    case Claim::Thm5EvenM: detail::verify_trcubic(r, inst, opt); break;
    case Claim::Thm3Hkm: detail::verify_hkm(r, inst, opt); break;
    case Claim::Cor1Simplex:
    case Claim::Cor2OneWeight: detail::verify_one_weight(r, inst, opt); break;
    case Claim::Cor4QfOdd:
    case Claim::Cor4QfEven: detail::verify_cor4(r, inst, opt); break;
    case Claim::Cor5Boolean: detail::verify_cor5(r, inst, opt); break;
    case Claim::Thm1Expansion:
      if (!inst.base) throw std::invalid_argument("expansion claim needs a base set");
      detail::verify_expansion(r, inst, opt);
      break;
    case Claim::Thm2Combine:
      if (!inst.base || !inst.partner) throw std::invalid_argument("combining claim needs two sets");
      detail::verify_combine(r, inst, opt);
      break;
    case Claim::Cor3Complement:
      if (!inst.base) throw std::invalid_argument("complement claim needs a base set");
      detail::verify_complement(r, inst, opt);
      break;
  }
  if (r.computed) {
    const auto pless = pless_moments_check(*r.computed);
    r.pless_ok = pless.passes;
    r.dual_distance = pless.dual_distance;
  }
  detail::compare(r);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Verifies every instance, concurrently, returning reports in input order.
inline std::vector<TheoremReport> scan(std::span<const ClaimInstance> instances, unsigned threads = 0) {
  std::vector<TheoremReport> out(instances.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads ? threads : std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(instances.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(instances.size());
  auto run = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        out[i] = verify(instances[i], {.threads = 1});
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Instances of a parameter-only claim over m in [lo, hi]. thm4 keeps odd m and thm5 even m;
/// thm3 treats the range as values of h.
inline std::vector<ClaimInstance> instances_in_range(Claim claim, unsigned p, unsigned lo, unsigned hi) {
  std::vector<ClaimInstance> out;
  for (unsigned v = lo; v <= hi; ++v) {
    switch (claim) {
      case Claim::Thm4OddM:
        if (v % 2 == 1) out.push_back(thm4_instance(v));
        break;
      case Claim::Thm5EvenM:
        if (v % 2 == 0) out.push_back(thm5_instance(v));
        break;
      case Claim::Thm3Hkm:
        if (v % 2 == 1) out.push_back(thm3_instance(v));
        break;
      case Claim::Cor1Simplex: out.push_back(cor1_instance(p, v)); break;
      case Claim::Cor2OneWeight: {
        // every nonempty E inside GF(p)*
        for (unsigned mask = 1; mask < (1u << (p - 1)); ++mask) {
          std::vector<unsigned> E;
          for (unsigned e = 1; e < p; ++e)
            if (mask >> (e - 1) & 1u) E.push_back(e);
          out.push_back(cor2_instance(p, v, E));
        }
        break;
      }
      default: throw std::invalid_argument("claim needs explicit sets or functions; it has no parameter range");
    }
  }
  return out;
}

struct ScanSummary {
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t hypothesis_failures = 0;
};

inline ScanSummary summarize_scan(std::span<const TheoremReport> reports) {
  ScanSummary s;
  for (const auto& r : reports) {
    switch (r.verdict) {
      case Verdict::Match: ++s.matches; break;
      case Verdict::Mismatch: ++s.mismatches; break;
      case Verdict::HypothesisNotMet: ++s.hypothesis_failures; break;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Seeded random instances for the set-based claims.

/// thm1: random D inside GF(q)* with random nonempty E; cor3: random D inside GF(q);
/// cor5: random truth tables. Same seed, same instances.
inline std::vector<ClaimInstance> random_instances(Claim claim, const FieldPtr& field, std::size_t count,
                                                   std::uint64_t seed) {
  const FieldContext& f = *field;
  std::mt19937_64 rng(seed);
  std::vector<ClaimInstance> out;
  auto elements = canonical_elements(f);
  auto random_subset = [&](bool allow_zero) {
    std::vector<FieldElement> pool(elements.begin() + (allow_zero ? 0 : 1), elements.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t size = 1 + rng() % (pool.size() - 1);
    pool.resize(size);
    return DefiningSet(field, std::move(pool), "random");
  };
  for (std::size_t i = 0; i < count; ++i) {
    switch (claim) {
      case Claim::Thm1Expansion: {
        std::vector<unsigned> E;
        while (E.empty())
          for (unsigned e = 1; e < f.characteristic(); ++e)
            if (rng() % 2) E.push_back(e);
        out.push_back(thm1_instance(std::move(E), random_subset(false)));
        break;
      }
      case Claim::Cor3Complement: out.push_back(cor3_instance(random_subset(true))); break;
      case Claim::Cor5Boolean: {
        TruthTable t(f.order());
        for (auto& v : t) v = static_cast<std::uint8_t>(rng() & 1u);
        out.push_back(cor5_instance(f.degree(), std::move(t), "complement:bool:random"));
        break;
      }
      default: throw std::invalid_argument("no random instances for this claim");
    }
    out.back().label += " #" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Randomised expansion checks.

struct ExpansionPropertyResult {
  std::size_t trials = 0;
  std::size_t hypothesis_met = 0;
  std::size_t stretch_verified = 0;       // hypothesis met and distributions agree
  std::size_t hypothesis_failed = 0;
  std::size_t relation_failed_without_hypothesis = 0;
  bool passes() const { return stretch_verified == hypothesis_met; }
};

/// Random D inside GF(q)* and nonempty E inside GF(p)*; whenever |ED| = |E||D| the code of ED must be the stretched code of D.
inline ExpansionPropertyResult thm1_property_test(const FieldPtr& field, std::size_t trials, std::uint64_t seed) {
  const FieldContext& f = *field;
  if (f.characteristic() < 3) throw std::invalid_argument("expansion property test needs p >= 3");
  std::mt19937_64 rng(seed);
  ExpansionPropertyResult res;
  auto nonzero = canonical_elements(f);
  nonzero.erase(nonzero.begin());
  for (std::size_t t = 0; t < trials; ++t) {
    std::shuffle(nonzero.begin(), nonzero.end(), rng);
    const std::size_t size = 1 + rng() % std::min<std::size_t>(nonzero.size(), 12);
    DefiningSet D(field, {nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(size)}, "random");
    std::vector<unsigned> E;
    while (E.empty())
      for (unsigned e = 1; e < f.characteristic(); ++e)
        if (rng() % 2) E.push_back(e);
    const auto report = verify(thm1_instance(E, D), {.threads = 1});
    ++res.trials;
    if (report.verdict == Verdict::HypothesisNotMet) {
      ++res.hypothesis_failed;
      if (report.relation_observed == false) ++res.relation_failed_without_hypothesis;
    } else {
      ++res.hypothesis_met;
      if (report.verdict == Verdict::Match) ++res.stretch_verified;
    }
  }
  return res;
}

/// A D with proportional elements for which the stretch relation fails; nothing if the search gives up.
inline std::optional<TheoremReport> thm1_counterexample(const FieldPtr& field, std::uint64_t seed,
                                                        std::size_t attempts = 500) {
  const FieldContext& f = *field;
  if (f.characteristic() < 3) throw std::invalid_argument("expansion counterexample needs p >= 3");
  std::mt19937_64 rng(seed);
  std::vector<unsigned> E;
  for (unsigned e = 1; e < f.characteristic(); ++e) E.push_back(e);
  auto nonzero = canonical_elements(f);
  nonzero.erase(nonzero.begin());
  for (std::size_t t = 0; t < attempts; ++t) {
    std::shuffle(nonzero.begin(), nonzero.end(), rng);
    const std::size_t size = 2 + rng() % std::min<std::size_t>(nonzero.size() - 1, 8);
    std::vector<FieldElement> elems(nonzero.begin(), nonzero.begin() + static_cast<std::ptrdiff_t>(size));
    // force one proportional pair
    const FieldElement partner = f.scale(elems[0], 2);
    if (std::find(elems.begin(), elems.end(), partner) == elems.end()) elems.back() = partner;
    if (std::count(elems.begin(), elems.end(), partner) != 1 || elems[0] == partner) continue;
    auto report = verify(thm1_instance(E, DefiningSet(field, elems, "proportional")), {.threads = 1});
    if (report.verdict == Verdict::HypothesisNotMet && report.relation_observed == false) return report;
  }
  return std::nullopt;
}

}  // namespace tracecode
