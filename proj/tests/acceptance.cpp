// Acceptance run: one PASS/FAIL line per criterion AC1-AC10.
// All comparisons are exact integers or exact rationals; time limits are wall clock.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tracecode/tracecode.hpp"

using namespace tracecode;

namespace {

constexpr double kExampleLimitS = 1.0;      // AC1, AC3 (h = 1)
constexpr double kTheoremSweepLimitS = 60.0;  // AC2
constexpr double kHkmLargeLimitS = 600.0;   // AC3 (h = 3)
constexpr std::uint64_t kSeed = 20240101;

using Clock = std::chrono::steady_clock;

VerifyOptions single_thread() {
  VerifyOptions o;
  o.threads = 1;
  return o;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

int failures = 0;

void report(const char* id, const std::string& title, Outcome& o) {
  std::printf("%s %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// Every code built during the run, for the AC9 property suites.
struct Built {
  std::string label;
  WeightDistribution wd;
  std::optional<DefiningSet> set;  // kept when small enough for the per-codeword checks
};
std::vector<Built> built;

void keep(const std::string& label, const WeightDistribution& wd, const DefiningSet* D = nullptr) {
  std::optional<DefiningSet> s;
  if (D && std::uint64_t{D->size()} * D->field().order() <= (std::uint64_t{1} << 22)) s = *D;
  built.push_back({label, wd, std::move(s)});
}

std::string params(const WeightDistribution& wd) {
  return "[" + std::to_string(wd.n) + "," + std::to_string(wd.k) + "," +
         std::to_string(wd.min_nonzero_weight().value_or(0)) + "]";
}

// ---------------------------------------------------------------------------

void ac1() {
  struct Example {
    unsigned m;
    std::uint64_t n, k, d;
    const char* enumerator;
    std::uint64_t dual_d;
  };
  const Example examples[] = {
      {5, 11, 5, 4, "1+10z^4+16z^6+5z^8", 3},        {7, 71, 7, 32, "1+35z^32+64z^36+28z^40", 3},
      {6, 31, 6, 12, "1+10z^12+47z^16+6z^20", 3},     {10, 511, 10, 240, "1+136z^240+767z^256+120z^272", 3},
      {4, 11, 4, 4, "1+2z^4+12z^6+z^8", 3},          {8, 111, 8, 48, "1+36z^48+192z^56+27z^64", 3},
  };
  Outcome o;
  double worst = 0;
  for (const auto& ex : examples) {
    const auto t0 = Clock::now();
    const auto D = tr_cubic_set(make_field(2, ex.m));
    const auto wd = build_code_weights(D);
    const auto dd = dual_minimum_distance(wd);
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    keep("trcubic m=" + std::to_string(ex.m), wd, &D);
    const std::string tag = "m=" + std::to_string(ex.m);
    if (wd.n != ex.n || wd.k != ex.k || wd.min_nonzero_weight() != ex.d) o.fail(tag + " got " + params(wd));
    if (enumerator_string(wd) != ex.enumerator) o.fail(tag + " enumerator " + enumerator_string(wd));
    if (dd != ex.dual_d) o.fail(tag + " dual distance " + std::to_string(dd.value_or(0)));
    if (dt >= kExampleLimitS) o.fail(tag + " took " + std::to_string(dt) + " s");
  }
  if (o.pass) o.detail << "6 examples exact incl. dual [n, n-k, 3]; slowest " << worst << " s (limit " << kExampleLimitS << " s)";
  report("AC1", "worked examples", o);
}

void ac2() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<ClaimInstance> instances;
  for (unsigned m : {5u, 7u, 9u, 11u, 13u}) instances.push_back(thm4_instance(m));
  for (unsigned m : {4u, 6u, 8u, 10u, 12u}) instances.push_back(thm5_instance(m));
  for (const auto& inst : instances) {
    const auto r = verify(inst);
    if (r.computed) keep(std::string(claim_name(r.claim)) + " m=" + std::to_string(r.m), *r.computed);
    if (r.verdict != Verdict::Match)
      o.fail(std::string(claim_name(r.claim)) + " m=" + std::to_string(r.m) + " " + std::string(verdict_name(r.verdict)));
  }
  const double dt = seconds_since(t0);
  if (dt >= kTheoremSweepLimitS) o.fail("took " + std::to_string(dt) + " s");
  if (o.pass) o.detail << "odd m 5..13 and even m 4..12 all match; " << dt << " s (limit " << kTheoremSweepLimitS << " s)";
  report("AC2", "tr-cubic tables", o);
}

void ac3() {
  Outcome o;
  auto t0 = Clock::now();
  const auto small = verify(thm3_instance(1));
  const double dt1 = seconds_since(t0);
  WeightDistribution expected{3, 3, 23, 3, {{0, 1}, {14, 6}, {15, 8}, {16, 12}}};
  if (small.verdict != Verdict::Match || !small.computed || *small.computed != expected) o.fail("h=1 mismatch");
  const auto small_set = complement(hkm_set(hkm_field(1)));
  if (small.computed) keep("complement hkm h=1", *small.computed, &small_set);
  if (dt1 >= kExampleLimitS) o.fail("h=1 took " + std::to_string(dt1) + " s");

  t0 = Clock::now();
  const auto large = verify(thm3_instance(3));
  const double dt3 = seconds_since(t0);
  if (large.verdict != Verdict::Match) o.fail("h=3 " + std::string(verdict_name(large.verdict)));
  if (!large.computed || large.computed->n != 16403) o.fail("h=3 length");
  if (large.computed) keep("complement hkm h=3", *large.computed);
  if (dt3 >= kHkmLargeLimitS) o.fail("h=3 took " + std::to_string(dt3) + " s");
  if (o.pass)
    o.detail << "h=1 [23,3,14] {14:6,15:8,16:12} in " << dt1 << " s; h=3 n=16403 matches in " << dt3 << " s (limits "
             << kExampleLimitS << " s, " << kHkmLargeLimitS << " s)";
  report("AC3", "ternary HKM complement", o);
}

void ac4() {
  Outcome o;
  std::uint64_t pairs = 0, trace_split_disagreements = 0;
  for (unsigned m = 1; m <= 13; m += 2) {
    auto f = make_field(2, m);
    const auto direct = weil_sum(*f, f->one(), f->one());
    if (direct != carlitz_prediction(m)) o.fail("Carlitz m=" + std::to_string(m));
    ++pairs;
  }
  auto check = [&](const FieldContext& f, FieldElement a, FieldElement b) {
    const auto direct = weil_sum(f, a, b);
    if (direct != coulter_prediction(f, a, b)) {
      o.fail("Coulter m=" + std::to_string(f.degree()) + " a=" + std::to_string(a.packed) + " b=" + std::to_string(b.packed));
    }
    trace_split_disagreements += direct != coulter_prediction(f, a, b, CubeRule::TraceSplit);
    ++pairs;
  };
  for (unsigned m : {4u, 6u, 8u}) {
    auto f = make_field(2, m);
    for (std::uint32_t a = 0; a < f->order(); ++a)
      for (std::uint32_t b = 0; b < f->order(); ++b) check(*f, {a}, {b});
  }
  std::mt19937_64 rng(kSeed);
  for (unsigned m : {10u, 12u}) {
    auto f = make_field(2, m);
    for (int i = 0; i < 1000; ++i)
      check(*f, {static_cast<std::uint32_t>(rng() % f->order())}, {static_cast<std::uint32_t>(rng() % f->order())});
  }
  if (o.pass)
    o.detail << pairs << " sums, zero discrepancies (uniform cube rule; the trace-split variant disagrees on "
             << trace_split_disagreements << ")";
  report("AC4", "exponential sums", o);
}

void ac5() {
  Outcome o;
  std::uint64_t checked = 0;
  for (unsigned m = 1; m <= 13; m += 2) {
    auto f = make_field(2, m);
    const auto t = truth_table_of(*f, [&](FieldElement x) { return f->trace(f->pow(x, 3)); });
    const auto s = walsh_transform(*f, t);
    const std::int64_t v = std::int64_t{1} << ((m + 1) / 2);
    for (auto x : s.values)
      if (x != 0 && x != v && x != -v) o.fail("m=" + std::to_string(m) + " value " + std::to_string(x));
    checked += s.values.size();
  }
  if (o.pass) o.detail << "Tr(x^3), odd m 1..13, " << checked << " Walsh values all in {0, +-2^((m+1)/2)}";
  report("AC5", "semibent spectrum", o);
}

void ac6() {
  Outcome o;
  std::size_t instances = 0;
  for (auto [p, m] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}}) {
    auto f = make_field(p, m);
    const auto simplex = verify(cor1_instance(p, m));
    if (simplex.verdict != Verdict::Match) o.fail("simplex p=" + std::to_string(p) + " m=" + std::to_string(m));
    for (const auto& inst : instances_in_range(Claim::Cor2OneWeight, p, m, m)) {
      ++instances;
      const auto r = verify(inst);
      const std::uint64_t ell = inst.expansion.size();
      std::uint64_t q = 1, top = 1;
      for (unsigned i = 0; i < m; ++i) q *= p;
      top = ell * (q / p);
      const std::string want = "1+" + std::to_string(q - 1) + "z^" + std::to_string(top);
      if (r.verdict != Verdict::Match || !r.computed || enumerator_string(*r.computed) != want)
        o.fail(inst.label + " p=" + std::to_string(p) + " m=" + std::to_string(m));
      const auto D = product_set(inst.expansion, simplex_coset_reps(f)).set;
      if (r.computed) keep(inst.label, *r.computed, &D);
    }
  }
  if (o.pass) o.detail << instances << " (p, m, E) instances one-weight with enumerator 1+(q-1)z^(l p^(m-1))";
  report("AC6", "one-weight expansions", o);
}

void ac7() {
  Outcome o;
  std::ostringstream counts;
  for (auto [p, m] : {std::pair{2u, 4u}, {3u, 3u}, {2u, 5u}}) {
    auto f = make_field(p, m);
    std::size_t accepted = 0, drawn = 0;
    std::uint64_t seed = kSeed + p * 100 + m;
    while (accepted < 100 && drawn < 100000) {
      for (const auto& inst : random_instances(Claim::Cor3Complement, f, 50, seed++)) {
        ++drawn;
        const auto r = verify(inst, single_thread());
        if (!r.hypotheses_met()) continue;
        ++accepted;
        if (r.verdict != Verdict::Match) o.fail(inst.label + " q=" + std::to_string(f->order()));
        const auto D = complement(*inst.base);
        keep("cor3 q=" + std::to_string(f->order()), *r.computed, &D);
        if (accepted == 100) break;
      }
    }
    if (accepted < 100) o.fail("only " + std::to_string(accepted) + " admissible sets for q=" + std::to_string(f->order()));
    counts << " q=" << f->order() << ": 100 of " << drawn << " drawn";
  }
  if (o.pass) o.detail << "complement prediction exact;" << counts.str();
  report("AC7", "complement property suite", o);
}

void ac8() {
  Outcome o;
  for (unsigned m : {5u, 7u}) {
    auto f = make_field(2, m);
    const auto r = verify(cor5_instance(m, truth_table_of(*f, [&](FieldElement x) { return f->trace(f->pow(x, 3)); })));
    if (r.verdict != Verdict::Match) o.fail("Tr(x^3) m=" + std::to_string(m) + " " + std::string(verdict_name(r.verdict)));
    if (r.computed) keep("cor5 tr3 m=" + std::to_string(m), *r.computed);
  }
  std::ostringstream counts;
  for (unsigned m : {4u, 5u, 6u}) {
    auto f = make_field(2, m);
    std::size_t accepted = 0, drawn = 0;
    std::uint64_t seed = kSeed + 1000 + m;
    while (accepted < 20 && drawn < 100000) {
      for (const auto& inst : random_instances(Claim::Cor5Boolean, f, 20, seed++)) {
        ++drawn;
        const auto r = verify(inst, single_thread());
        if (!r.hypotheses_met()) continue;
        ++accepted;
        if (r.verdict != Verdict::Match) o.fail("random m=" + std::to_string(m) + " " + inst.label);
        const auto D = complement(boolean_support(f, *inst.table));
        keep("cor5 random m=" + std::to_string(m), *r.computed, &D);
        if (accepted == 20) break;
      }
    }
    if (accepted < 20) o.fail("only " + std::to_string(accepted) + " admissible functions at m=" + std::to_string(m));
    counts << " m=" << m << ": 20 of " << drawn;
  }
  if (o.pass) o.detail << "Tr(x^3) at m=5,7 and 60 random functions match the Walsh multiset;" << counts.str();
  report("AC8", "Boolean-function complements", o);
}

// Next irreducible monic modulus after the default one, in the same lex order.
FieldPtr alternative_field(unsigned p, unsigned m) {
  const auto base = make_field(p, m);
  const std::vector<unsigned> def(base->modulus().begin(), base->modulus().end());
  std::uint64_t count = 1;
  for (unsigned i = 0; i < m; ++i) count *= p;
  for (std::uint64_t r = 0; r < count; ++r) {
    auto poly = detail::lex_vector(r, p, m);
    poly.push_back(1);
    if (poly == def || !detail::is_irreducible(poly, p)) continue;
    return make_field(p, m, poly);
  }
  return nullptr;
}

void ac9() {
  Outcome o;
  std::size_t involution = 0, pless = 0, two_path = 0, ordering = 0, modulus = 0;
  std::mt19937_64 rng(kSeed);
  for (const auto& b : built) {
    if (!macwilliams_involution_holds(b.wd)) o.fail("involution " + b.label);
    ++involution;
    if (!pless_moments_check(b.wd).passes) o.fail("pless " + b.label);
    ++pless;
    if (!b.set) continue;
    const DefiningSet& D = *b.set;
    const auto hist = raw_weight_histogram(D, 1);
    for (std::uint32_t x = 0; x < D.field().order(); ++x) {
      const auto direct = hamming_weight(codeword(D, FieldElement{x}));
      if (direct != weight_by_counting_oracle(D, FieldElement{x})) {
        o.fail("two-path " + b.label);
        break;
      }
    }
    std::vector<std::uint64_t> direct_hist(D.size() + 1, 0);
    for (std::uint32_t x = 0; x < D.field().order(); ++x) ++direct_hist[hamming_weight(codeword(D, FieldElement{x}))];
    if (direct_hist != hist) o.fail("two-path histogram " + b.label);
    ++two_path;
    std::vector<FieldElement> shuffled(D.elements().begin(), D.elements().end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if (build_code_weights(DefiningSet(D.field_ptr(), shuffled, "shuffled", Ordering::AsGiven), 1) != b.wd)
      o.fail("ordering " + b.label);
    ++ordering;
  }
  // modulus invariance: rebuild the intrinsic families under a second irreducible modulus
  for (unsigned m : {4u, 5u, 6u, 7u, 8u, 10u}) {
    auto alt = alternative_field(2, m);
    if (build_code_weights(tr_cubic_set(alt)) != build_code_weights(tr_cubic_set(make_field(2, m))))
      o.fail("modulus trcubic m=" + std::to_string(m));
    ++modulus;
  }
  {
    auto alt = alternative_field(3, 3);
    if (build_code_weights(complement(hkm_set(alt))) != build_code_weights(complement(hkm_set(hkm_field(1)))))
      o.fail("modulus hkm h=1");
    ++modulus;
  }
  for (auto [p, m] : {std::pair{3u, 2u}, {3u, 3u}, {5u, 2u}, {7u, 2u}}) {
    const std::vector<unsigned> E{1, p - 1};
    if (build_code_weights(product_set(E, simplex_coset_reps(alternative_field(p, m))).set) !=
        build_code_weights(product_set(E, simplex_coset_reps(make_field(p, m))).set))
      o.fail("modulus simplex p=" + std::to_string(p));
    ++modulus;
  }
  for (unsigned m : {5u, 7u}) {
    auto alt = alternative_field(2, m);
    auto tr3 = [](const FieldPtr& f) {
      return complement(boolean_support(f, truth_table_of(*f, [&](FieldElement x) { return f->trace(f->pow(x, 3)); })));
    };
    if (build_code_weights(tr3(alt)) != build_code_weights(tr3(make_field(2, m)))) o.fail("modulus cor5 m=" + std::to_string(m));
    ++modulus;
  }
  if (o.pass)
    o.detail << involution << " codes: involution and Pless green; " << two_path << " two-path, " << ordering
             << " ordering, " << modulus << " modulus checks green";
  report("AC9", "property suites", o);
}

void ac10() {
  Outcome o;
  struct Row {
    unsigned m;
    const char* ratio;
    bool passes;
  };
  std::ostringstream seen;
  for (Row row : {Row{6, "12/20", true}, Row{7, "32/40", true}, Row{8, "48/64", true}, Row{5, "4/8", false}}) {
    const auto D = tr_cubic_set(make_field(2, row.m));
    const auto r = ratio_check(build_code_weights(D), CodeFamily::TrCubic);
    if (r.unreduced() != row.ratio || r.passes != row.passes) o.fail("m=" + std::to_string(row.m) + " " + r.unreduced());
    const auto& c = *r.m_congruence_case;
    if (c.in_range && Rational(static_cast<std::int64_t>(c.numerator), static_cast<std::int64_t>(c.denominator)) != r.ratio)
      o.fail("closed form m=" + std::to_string(row.m));
    seen << " m=" << row.m << " " << r.unreduced() << (r.passes ? " pass" : " fail");
    if (row.m != 5) {
      const auto mc = minimal_codewords(D, 0, false);
      if (!mc.all_minimal()) o.fail("non-minimal codeword at m=" + std::to_string(row.m));
      seen << " (" << mc.minimal_codewords << "/" << mc.nonzero_codewords << " minimal)";
    }
  }
  if (tr_cubic_case(8).label != "m = 0 (mod 8), m >= 8" || tr_cubic_case(8).numerator != 48 || tr_cubic_case(8).denominator != 64)
    o.fail("m=8 congruence row");
  if (o.pass) o.detail << "exact rationals against 1/2:" << seen.str();
  report("AC10", "secret-sharing ratio", o);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  ac10();
  std::printf("%d of 10 criteria failed; total %.1f s\n", failures, seconds_since(t0));
  return failures ? 1 : 0;
}
