#pragma once

// Serialization (JSON, CSV, text tables) and parsers for selectors, moduli, elements and truth tables.

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tracecode/duality.hpp"
#include "tracecode/secret_sharing.hpp"
#include "tracecode/sets.hpp"
#include "tracecode/spectra.hpp"
#include "tracecode/theorems.hpp"

namespace tracecode::io {

using Json = nlohmann::ordered_json;

/// Malformed user input (selector, list, element, file).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Small parsers.

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc{} || ptr != end) throw ParseError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline std::vector<unsigned> parse_uint_list(std::string_view s, std::string_view what) {
  std::vector<unsigned> out;
  for (const auto& part : split(s, ',')) out.push_back(static_cast<unsigned>(parse_uint(part, what)));
  return out;
}

/// "lo..hi" or a single value.
inline std::pair<unsigned, unsigned> parse_range(std::string_view s) {
  const auto pos = s.find("..");
  if (pos == std::string_view::npos) {
    const auto v = static_cast<unsigned>(parse_uint(s, "range"));
    return {v, v};
  }
  const auto lo = static_cast<unsigned>(parse_uint(s.substr(0, pos), "range"));
  const auto hi = static_cast<unsigned>(parse_uint(s.substr(pos + 2), "range"));
  if (lo > hi) throw ParseError("empty range '" + std::string(s) + "'");
  return {lo, hi};
}

/// Modulus coefficients, constant term first: "1,0,1,1" is 1 + x^2 + x^3.
inline std::vector<unsigned> parse_modulus(std::string_view s) { return parse_uint_list(s, "modulus"); }

/// A field element: packed integer (base-p digits, constant term least significant) or "g^t".
inline FieldElement parse_element(const FieldContext& f, std::string_view s) {
  if (s.starts_with("g^")) return f.exp(parse_uint(s.substr(2), "exponent"));
  const auto v = parse_uint(s, "field element");
  if (v >= f.order()) throw ParseError("field element " + std::string(s) + " is outside GF(q)");
  return FieldElement{static_cast<std::uint32_t>(v)};
}

// ---------------------------------------------------------------------------
// Truth tables: one bit per element, bit i belongs to the element with canonical index i
// (0 for zero, t+1 for g^t). Written most significant bit first, as binary or 0x-hex.

inline TruthTable parse_truth_table(const FieldContext& f, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const std::size_t q = f.order();
  std::vector<std::uint8_t> bits;  // bits[i] = bit of weight 2^i
  if (s.starts_with("0x") || s.starts_with("0X")) {
    const std::string hex = s.substr(2);
    if (hex.size() * 4 < q || hex.size() != (q + 3) / 4) throw ParseError("hex truth table must have ceil(q/4) digits");
    bits.assign(hex.size() * 4, 0);
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[hex.size() - 1 - i])));
      unsigned v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
      else throw ParseError("bad hex digit in truth table");
      for (unsigned b = 0; b < 4; ++b) bits[4 * i + b] = (v >> b) & 1u;
    }
    for (std::size_t i = q; i < bits.size(); ++i)
      if (bits[i]) throw ParseError("hex truth table has bits beyond q");
  } else {
    if (s.size() != q) throw ParseError("binary truth table must have exactly q digits");
    bits.assign(q, 0);
    for (std::size_t i = 0; i < q; ++i) {
      const char c = s[q - 1 - i];
      if (c != '0' && c != '1') throw ParseError("binary truth table may only contain 0 and 1");
      bits[i] = c == '1';
    }
  }
  TruthTable t(q, 0);
  for (std::uint32_t i = 0; i < q; ++i) t[f.from_canonical_index(i).packed] = bits[i];
  return t;
}

inline std::string format_truth_table(const FieldContext& f, const TruthTable& t, bool hex = false) {
  const std::size_t q = f.order();
  if (t.size() != q) throw std::invalid_argument("truth table length must equal q");
  std::vector<std::uint8_t> bits(q);
  for (std::uint32_t i = 0; i < q; ++i) bits[i] = t[f.from_canonical_index(i).packed];
  std::string out;
  if (!hex) {
    for (std::size_t i = q; i-- > 0;) out += bits[i] ? '1' : '0';
    return out;
  }
  const std::size_t digits = (q + 3) / 4;
  out = "0x";
  for (std::size_t d = digits; d-- > 0;) {
    unsigned v = 0;
    for (unsigned b = 0; b < 4; ++b)
      if (4 * d + b < q && bits[4 * d + b]) v |= 1u << b;
    out += "0123456789abcdef"[v];
  }
  return out;
}

inline TruthTable read_truth_table_file(const FieldContext& f, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read truth table file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_truth_table(f, ss.str());
}

/// Named functions ("tr3" is Tr(x^3), "random:<seed>" is a seeded random table) or a truth-table file.
inline TruthTable resolve_function(const FieldContext& f, std::string_view name) {
  if (name == "tr3") return truth_table_of(f, [&](FieldElement x) { return f.trace(f.pow(x, 3)); });
  if (name.starts_with("random:")) {
    std::mt19937_64 rng(parse_uint(name.substr(7), "seed"));
    TruthTable t(f.order());
    for (auto& v : t) v = static_cast<std::uint8_t>(rng() & 1u);
    return t;
  }
  return read_truth_table_file(f, std::string(name));
}

// ---------------------------------------------------------------------------
// Quadratic forms: terms "i,j,a" joined by '+', meaning a x^(p^i + p^j).

inline QuadraticForm parse_quadratic_form(const FieldContext& f, std::string_view s) {
  QuadraticForm form;
  for (const auto& term : split(s, '+')) {
    const auto parts = split(term, ',');
    if (parts.size() != 3) throw ParseError("quadratic-form term must be i,j,a: '" + term + "'");
    form.terms.push_back({static_cast<unsigned>(parse_uint(parts[0], "exponent index")),
                          static_cast<unsigned>(parse_uint(parts[1], "exponent index")), parse_element(f, parts[2])});
  }
  if (form.terms.empty()) throw ParseError("empty quadratic form");
  return form;
}

// ---------------------------------------------------------------------------
// Set selectors:
//   simplex | trcubic | full | nonzero | hkm[:h] | elems:v1,v2,... | complement:<sel>
//   product:e1,e2,...:<sel> | qf:<form> | bool:<function>

inline DefiningSet parse_set(const FieldPtr& field, std::string_view sel) {
  const FieldContext& f = *field;
  if (sel == "simplex") return simplex_coset_reps(field);
  if (sel == "trcubic") return tr_cubic_set(field);
  if (sel == "full") return full_field_set(field);
  if (sel == "nonzero") return nonzero_set(field);
  if (sel == "hkm" || sel.starts_with("hkm:")) {
    if (sel.size() > 3) {
      const auto h = parse_uint(sel.substr(4), "h");
      if (f.characteristic() != 3 || f.degree() != 3 * h) throw ParseError("hkm:h needs p = 3 and m = 3h");
    }
    return hkm_set(field);
  }
  if (sel.starts_with("elems:")) {
    std::vector<FieldElement> elems;
    for (const auto& part : split(sel.substr(6), ',')) elems.push_back(parse_element(f, part));
    return DefiningSet(field, std::move(elems), std::string(sel), Ordering::AsGiven);
  }
  if (sel.starts_with("complement:")) {
    const auto inner = parse_set(field, sel.substr(11));
    return complement(inner);
  }
  if (sel.starts_with("product:")) {
    const auto rest = sel.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("product selector needs product:E:<set>");
    const auto E = parse_uint_list(rest.substr(0, colon), "expansion set");
    return product_set(E, parse_set(field, rest.substr(colon + 1))).set;
  }
  if (sel.starts_with("qf:")) return quadratic_form_image(field, parse_quadratic_form(f, sel.substr(3))).set;
  if (sel.starts_with("bool:")) return boolean_support(field, resolve_function(f, sel.substr(5)), std::string(sel));
  throw ParseError("unknown set selector '" + std::string(sel) + "'");
}

// ---------------------------------------------------------------------------
// JSON.

inline Json big_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::uint64_t>::max())) return static_cast<std::uint64_t>(v);
  return v.str();
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline Json field_json(const FieldContext& f) {
  return Json{{"p", f.characteristic()},
              {"m", f.degree()},
              {"q", f.order()},
              {"modulus", std::vector<unsigned>(f.modulus().begin(), f.modulus().end())},
              {"generator", f.coords(f.generator())}};
}

inline Json weights_json(const WeightDistribution& wd) {
  Json rows = Json::array();
  for (const auto& [w, a] : wd.counts)
    if (a != 0) rows.push_back({{"w", w}, {"count", big_json(a)}});
  return rows;
}

inline Json distribution_json(const WeightDistribution& wd) {
  return Json{{"n", wd.n}, {"k", wd.k}, {"weights", weights_json(wd)}, {"enumerator", enumerator_string(wd)}};
}

inline Json summary_json(const CodeSummary& s, std::string_view set_label) {
  const auto& wd = s.distribution;
  Json griesmer = nullptr;
  if (s.griesmer) griesmer = {{"bound", s.griesmer->bound}, {"meets", s.griesmer->meets_bound}, {"tight", s.griesmer->tight}};
  return Json{{"p", wd.p},
              {"m", wd.m},
              {"set", set_label},
              {"n", s.n},
              {"k", s.k},
              {"d_min", optional_json(s.d_min)},
              {"weights", weights_json(wd)},
              {"enumerator", enumerator_string(wd)},
              {"dual", {{"n", s.n}, {"n_minus_k", s.dual_n_minus_k}, {"d", optional_json(s.dual_d)}}},
              {"griesmer", griesmer},
              {"notes", s.notes}};
}

inline Json checks_json(const std::vector<HypothesisCheck>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}});
  return out;
}

inline Json report_json(const TheoremReport& r, bool timing = false) {
  Json j{{"claim", claim_name(r.claim)},
         {"label", r.label},
         {"p", r.p},
         {"m", r.m},
         {"verdict", verdict_name(r.verdict)},
         {"hypotheses", checks_json(r.hypothesis_checks)},
         {"claim_checks", checks_json(r.claim_checks)},
         {"predicted", r.predicted ? distribution_json(*r.predicted) : Json(nullptr)},
         {"computed", r.computed ? distribution_json(*r.computed) : Json(nullptr)},
         {"first_difference", optional_json(r.first_difference)},
         {"relation_observed", optional_json(r.relation_observed)},
         {"dual_distance", optional_json(r.dual_distance)},
         {"pless_ok", r.pless_ok},
         {"notes", r.notes}};
  if (timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline Json scan_json(Claim claim, const std::vector<TheoremReport>& reports, bool timing = false) {
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(report_json(r, timing));
  const auto s = summarize_scan(reports);
  return Json{{"claim", claim_name(claim)},
              {"reports", list},
              {"summary", {{"match", s.matches}, {"mismatch", s.mismatches}, {"hypothesis_not_met", s.hypothesis_failures}}}};
}

inline std::string rational_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Json ratio_json(const RatioReport& r) {
  Json c = nullptr;
  if (r.m_congruence_case)
    c = {{"label", r.m_congruence_case->label},
         {"in_range", r.m_congruence_case->in_range},
         {"closed_form", std::to_string(r.m_congruence_case->numerator) + "/" +
                             std::to_string(r.m_congruence_case->denominator)}};
  return Json{{"w_min", r.w_min},
              {"w_max", r.w_max},
              {"ratio", r.unreduced()},
              {"ratio_reduced", rational_string(r.ratio)},
              {"threshold", rational_string(r.threshold)},
              {"passes", r.passes},
              {"m_congruence_case", c}};
}

inline Json secret_sharing_json(const SecretSharingReport& s, std::string_view set_label, unsigned p, unsigned m) {
  return Json{{"p", p},
              {"m", m},
              {"set", set_label},
              {"ratio", ratio_json(s.ratio)},
              {"minimal",
               {{"nonzero_codewords", s.minimal.nonzero_codewords},
                {"minimal_codewords", s.minimal.minimal_codewords},
                {"all_minimal", s.minimal.all_minimal()},
                {"dealer_sets", s.minimal.dealer_sets}}},
              {"violation", s.violation}};
}

struct ExpSumResult {
  unsigned m = 0;
  FieldElement a, b;
  std::int64_t direct = 0;
  std::optional<std::int64_t> closed_form;
  std::string rule;  // which closed form was used
  bool agrees() const { return !closed_form || *closed_form == direct; }
};

/// Direct S(a, b) with the closed form that covers (m, a, b), if any.
inline ExpSumResult evaluate_expsum(const FieldContext& f, FieldElement a, FieldElement b, CubeRule rule = CubeRule::Uniform) {
  ExpSumResult r;
  r.m = f.degree();
  r.a = a;
  r.b = b;
  r.direct = weil_sum(f, a, b);
  if (f.degree() % 2 == 1) {
    if (a == f.one() && b == f.one()) {
      r.closed_form = carlitz_prediction(f.degree());
      r.rule = "carlitz";
    }
  } else {
    r.closed_form = coulter_prediction(f, a, b, rule);
    r.rule = rule == CubeRule::Uniform ? "coulter" : "coulter-trace-split";
  }
  return r;
}

inline Json expsum_json(const FieldContext& f, const ExpSumResult& r) {
  return Json{{"p", 2},
              {"m", r.m},
              {"a", r.a.packed},
              {"b", r.b.packed},
              {"direct", r.direct},
              {"closed_form", optional_json(r.closed_form)},
              {"rule", r.rule.empty() ? Json(nullptr) : Json(r.rule)},
              {"agrees", r.agrees()},
              {"field", field_json(f)}};
}

/// Value distribution {f^(w) : w}, plus the semibent test for odd m.
inline Json walsh_json(const FieldContext& f, const WalshSpectrum& s, std::string_view function) {
  std::map<std::int64_t, std::uint64_t> hist;
  for (auto v : s.values) ++hist[v];
  Json values = Json::array();
  for (const auto& [v, c] : hist) values.push_back({{"value", v}, {"count", c}});
  Json semibent = nullptr;
  if (f.degree() % 2 == 1) {
    const std::int64_t t = std::int64_t{1} << ((f.degree() + 1) / 2);
    bool ok = true;
    for (const auto& [v, c] : hist) ok = ok && (v == 0 || v == t || v == -t);
    semibent = ok;
  }
  return Json{{"p", 2}, {"m", f.degree()}, {"function", function}, {"n_f", s.n_f}, {"values", values}, {"semibent", semibent}};
}

// ---------------------------------------------------------------------------
// CSV and text.

inline std::string csv_header() { return "claim,p,m,n,k,w,A_w,verdict\n"; }

inline std::string csv_rows(std::string_view claim, const WeightDistribution& wd, std::string_view verdict) {
  std::string out;
  for (const auto& [w, a] : wd.counts) {
    if (a == 0) continue;
    out += std::string(claim) + "," + std::to_string(wd.p) + "," + std::to_string(wd.m) + "," + std::to_string(wd.n) +
           "," + std::to_string(wd.k) + "," + std::to_string(w) + "," + a.str() + "," + std::string(verdict) + "\n";
  }
  return out;
}

inline std::string csv_report(const TheoremReport& r) {
  const auto* wd = r.computed ? &*r.computed : (r.predicted ? &*r.predicted : nullptr);
  if (!wd) {
    return std::string(claim_name(r.claim)) + "," + std::to_string(r.p) + "," + std::to_string(r.m) + ",,,,," +
           std::string(verdict_name(r.verdict)) + "\n";
  }
  return csv_rows(claim_name(r.claim), *wd, verdict_name(r.verdict));
}

inline std::string text_table(const WeightDistribution& wd) {
  std::ostringstream os;
  os << "Weight w  Multiplicity A_w\n";
  for (const auto& [w, a] : wd.counts) {
    if (w == 0 || a == 0) continue;
    std::string ws = std::to_string(w);
    os << ws << std::string(ws.size() < 10 ? 10 - ws.size() : 1, ' ') << a << "\n";
  }
  return os.str();
}

inline std::string code_params(std::uint64_t n, std::uint64_t k, const std::optional<std::uint64_t>& d) {
  return "[" + std::to_string(n) + ", " + std::to_string(k) + ", " + (d ? std::to_string(*d) : std::string("-")) + "]";
}

inline std::string summary_text(const CodeSummary& s, std::string_view set_label) {
  std::ostringstream os;
  const auto& wd = s.distribution;
  os << code_params(s.n, s.k, s.d_min) << " over GF(" << wd.p << "), m = " << wd.m << ", set " << set_label << "\n";
  os << "enumerator " << enumerator_string(wd) << "\n";
  os << "dual " << code_params(s.n, s.dual_n_minus_k, s.dual_d) << "\n";
  if (s.griesmer) os << "griesmer bound " << s.griesmer->bound << (s.griesmer->meets_bound ? " (met)" : " (violated)") << "\n";
  os << text_table(wd);
  return os.str();
}

inline std::string report_text(const TheoremReport& r, bool timing = false) {
  std::ostringstream os;
  os << claim_name(r.claim) << " " << r.label << " (p = " << r.p << ", m = " << r.m << "): " << verdict_name(r.verdict)
     << "\n";
  for (const auto& c : r.hypothesis_checks) os << "  hypothesis " << c.name << ": " << (c.passed ? "ok" : "FAILED") << "\n";
  for (const auto& c : r.claim_checks) os << "  check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << "\n";
  if (r.predicted) os << "predicted " << code_params(r.predicted->n, r.predicted->k, r.predicted->min_nonzero_weight()) << "\n" << text_table(*r.predicted);
  if (r.computed) os << "computed " << code_params(r.computed->n, r.computed->k, r.computed->min_nonzero_weight()) << "\n" << text_table(*r.computed);
  if (r.first_difference) os << "first differing weight " << *r.first_difference << "\n";
  if (r.relation_observed) os << "relation observed without hypothesis: " << (*r.relation_observed ? "yes" : "no") << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  if (timing) os << "elapsed " << r.elapsed_ms << " ms\n";
  return os.str();
}

}  // namespace tracecode::io
