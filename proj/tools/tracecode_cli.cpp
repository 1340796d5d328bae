// tracecode: command-line front end.
//
// Exit status: 0 ok, 1 hypothesis not met, 2 mismatch or violation, 3 usage error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tracecode/tracecode.hpp"

namespace tc = tracecode;
using tc::io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kHypothesis = 1;
constexpr int kMismatch = 2;
constexpr int kUsage = 3;

struct RunConfig {
  unsigned p = 2;
  std::optional<unsigned> m;
  std::string m_range;
  std::optional<unsigned> h;
  std::string h_range;
  std::string set;
  std::string with;
  std::string claim;
  std::string field_poly;
  std::string format = "json";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::uint64_t max_q = tc::kMaxFieldOrder;
  std::size_t trials = 20;
  std::string a = "1";
  std::string b = "1";
  std::string f = "tr3";
  std::string E;
  std::string qf;
  std::string rule = "uniform";
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned require_m(const RunConfig& c) {
  if (!c.m) throw UsageError("--m is required");
  return *c.m;
}

tc::FieldOptions field_options(const RunConfig& c) {
  tc::FieldOptions opt;
  if (!c.field_poly.empty()) opt.modulus = tc::io::parse_modulus(c.field_poly);
  return opt;
}

// q is checked against the cap before any table is allocated
void check_cap(unsigned p, unsigned m, std::uint64_t max_q) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > max_q) throw tc::LimitError("field order " + std::to_string(p) + "^" + std::to_string(m) + " exceeds --max-q");
  }
}

tc::FieldPtr build_field(const RunConfig& c, unsigned p, unsigned m) {
  check_cap(p, m, c.max_q);
  return tc::make_field(p, m, field_options(c));
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void require_json_or_text(const RunConfig& c) {
  if (c.format == "csv") throw UsageError("csv output is only available for code, verify and scan");
}

int verdict_status(tc::Verdict v) {
  switch (v) {
    case tc::Verdict::Match: return kOk;
    case tc::Verdict::HypothesisNotMet: return kHypothesis;
    case tc::Verdict::Mismatch: return kMismatch;
  }
  return kMismatch;
}

std::vector<unsigned> expansion_or_all(const RunConfig& c, unsigned p) {
  if (!c.E.empty()) return tc::io::parse_uint_list(c.E, "expansion set");
  std::vector<unsigned> all;
  for (unsigned e = 1; e < p; ++e) all.push_back(e);
  return all;
}

// ---------------------------------------------------------------------------

int run_field(const RunConfig& c) {
  require_json_or_text(c);
  const auto f = build_field(c, c.p, require_m(c));
  if (c.format == "text") {
    std::cout << "GF(" << c.p << "^" << f->degree() << "), q = " << f->order() << "\nmodulus (constant first)";
    for (unsigned v : f->modulus()) std::cout << " " << v;
    std::cout << "\ngenerator (constant first)";
    for (unsigned v : f->coords(f->generator())) std::cout << " " << v;
    std::cout << "\n";
  } else {
    emit(tc::io::field_json(*f));
  }
  return kOk;
}

int run_code(const RunConfig& c) {
  if (c.set.empty()) throw UsageError("--set is required");
  const auto f = build_field(c, c.p, require_m(c));
  const auto D = tc::io::parse_set(f, c.set);
  const auto s = tc::summarize(tc::build_code_weights(D, c.threads));
  if (c.format == "csv") {
    std::cout << tc::io::csv_header() << tc::io::csv_rows("", s.distribution, "");
  } else if (c.format == "text") {
    std::cout << tc::io::summary_text(s, c.set);
  } else {
    emit(tc::io::summary_json(s, c.set));
  }
  return kOk;
}

tc::ClaimInstance make_instance(const RunConfig& c, tc::Claim claim) {
  using tc::Claim;
  auto field_for_sets = [&](unsigned p) { return build_field(c, p, require_m(c)); };
  tc::ClaimInstance inst;
  switch (claim) {
    case Claim::Thm4OddM: inst = tc::thm4_instance(require_m(c)); break;
    case Claim::Thm5EvenM: inst = tc::thm5_instance(require_m(c)); break;
    case Claim::Thm3Hkm:
      if (!c.h) throw UsageError("--h is required for thm3");
      inst = tc::thm3_instance(*c.h);
      break;
    case Claim::Cor1Simplex: inst = tc::cor1_instance(c.p, require_m(c)); break;
    case Claim::Cor2OneWeight: inst = tc::cor2_instance(c.p, require_m(c), expansion_or_all(c, c.p)); break;
    case Claim::Cor4QfOdd:
    case Claim::Cor4QfEven: {
      if (c.qf.empty()) throw UsageError("--qf is required for cor4");
      const auto f = field_for_sets(c.p);
      inst = tc::cor4_instance(c.p, *c.m, tc::io::parse_quadratic_form(*f, c.qf), claim == Claim::Cor4QfOdd);
      break;
    }
    case Claim::Cor5Boolean: {
      const auto f = field_for_sets(2);
      inst = tc::cor5_instance(*c.m, tc::io::resolve_function(*f, c.f), "complement:bool:" + c.f);
      break;
    }
    case Claim::Thm1Expansion: {
      if (c.set.empty()) throw UsageError("--set is required for thm1");
      const auto f = field_for_sets(c.p);
      inst = tc::thm1_instance(expansion_or_all(c, c.p), tc::io::parse_set(f, c.set));
      break;
    }
    case Claim::Thm2Combine: {
      if (c.set.empty() || c.with.empty()) throw UsageError("--set and --with are required for thm2");
      const auto f = field_for_sets(c.p);
      inst = tc::thm2_instance(tc::io::parse_set(f, c.set), tc::io::parse_set(f, c.with));
      break;
    }
    case Claim::Cor3Complement: {
      if (c.set.empty()) throw UsageError("--set is required for cor3");
      const auto f = field_for_sets(c.p);
      inst = tc::cor3_instance(tc::io::parse_set(f, c.set));
      break;
    }
  }
  inst.field_options = field_options(c);
  check_cap(inst.p, inst.m, c.max_q);
  return inst;
}

tc::Claim claim_of(const RunConfig& c) {
  const auto claim = tc::parse_claim(c.claim);
  if (!claim) throw UsageError("unknown claim '" + c.claim + "'");
  return *claim;
}

int run_verify(const RunConfig& c) {
  const auto claim = claim_of(c);
  const auto report = tc::verify(make_instance(c, claim), {.threads = c.threads, .max_q = c.max_q});
  if (c.format == "csv") {
    std::cout << tc::io::csv_header() << tc::io::csv_report(report);
  } else if (c.format == "text") {
    std::cout << tc::io::report_text(report, c.timing);
  } else {
    emit(tc::io::report_json(report, c.timing));
  }
  return verdict_status(report.verdict);
}

int run_scan(const RunConfig& c) {
  using tc::Claim;
  const auto claim = claim_of(c);
  std::vector<tc::ClaimInstance> instances;
  switch (claim) {
    case Claim::Thm3Hkm: {
      if (c.h_range.empty()) throw UsageError("--h range is required for thm3");
      const auto [lo, hi] = tc::io::parse_range(c.h_range);
      instances = tc::instances_in_range(claim, 3, lo, hi);
      break;
    }
    case Claim::Thm4OddM:
    case Claim::Thm5EvenM:
    case Claim::Cor1Simplex:
    case Claim::Cor2OneWeight: {
      if (c.m_range.empty()) throw UsageError("--m range is required");
      const auto [lo, hi] = tc::io::parse_range(c.m_range);
      instances = tc::instances_in_range(claim, claim == Claim::Thm4OddM || claim == Claim::Thm5EvenM ? 2 : c.p, lo, hi);
      break;
    }
    case Claim::Thm1Expansion:
    case Claim::Cor3Complement:
    case Claim::Cor5Boolean: {
      if (c.m_range.empty()) throw UsageError("--m is required");
      const auto [lo, hi] = tc::io::parse_range(c.m_range);
      const unsigned p = claim == Claim::Cor5Boolean ? 2 : c.p;
      for (unsigned m = lo; m <= hi; ++m) {
        auto batch = tc::random_instances(claim, build_field(c, p, m), c.trials, c.seed + m);
        instances.insert(instances.end(), batch.begin(), batch.end());
      }
      break;
    }
    default: throw UsageError("scan does not support claim '" + c.claim + "'; use verify");
  }
  for (auto& inst : instances) {
    check_cap(inst.p, inst.m, c.max_q);
    inst.field_options = field_options(c);
  }
  const auto reports = tc::scan(instances, c.threads);
  if (c.format == "csv") {
    std::cout << tc::io::csv_header();
    for (const auto& r : reports) std::cout << tc::io::csv_report(r);
  } else if (c.format == "text") {
    for (const auto& r : reports) std::cout << tc::io::report_text(r, c.timing);
  } else {
    emit(tc::io::scan_json(claim, reports, c.timing));
  }
  const auto s = tc::summarize_scan(reports);
  if (s.mismatches) return kMismatch;
  if (s.matches == 0 && s.hypothesis_failures) return kHypothesis;
  return kOk;
}

int run_expsum(const RunConfig& c) {
  require_json_or_text(c);
  const auto f = build_field(c, 2, require_m(c));
  tc::CubeRule rule;
  if (c.rule == "uniform") rule = tc::CubeRule::Uniform;
  else if (c.rule == "trace-split") rule = tc::CubeRule::TraceSplit;
  else throw UsageError("--rule must be uniform or trace-split");
  const auto r = tc::io::evaluate_expsum(*f, tc::io::parse_element(*f, c.a), tc::io::parse_element(*f, c.b), rule);
  if (c.format == "text") {
    std::cout << "S(" << r.a.packed << ", " << r.b.packed << ") over GF(2^" << r.m << ") = " << r.direct << "\n";
    if (r.closed_form) std::cout << r.rule << " closed form " << *r.closed_form << (r.agrees() ? " (agrees)" : " (DISAGREES)") << "\n";
  } else {
    emit(tc::io::expsum_json(*f, r));
  }
  return r.agrees() ? kOk : kMismatch;
}

int run_walsh(const RunConfig& c) {
  require_json_or_text(c);
  const auto f = build_field(c, 2, require_m(c));
  const auto s = tc::walsh_transform(*f, tc::io::resolve_function(*f, c.f));
  const auto j = tc::io::walsh_json(*f, s, c.f);
  if (c.format == "text") {
    std::cout << "Walsh spectrum of " << c.f << " over GF(2^" << f->degree() << "), n_f = " << s.n_f << "\n";
    for (const auto& row : j["values"]) std::cout << row["value"].get<std::int64_t>() << "  x" << row["count"].get<std::uint64_t>() << "\n";
  } else {
    emit(j);
  }
  return kOk;
}

int run_ssreport(const RunConfig& c) {
  require_json_or_text(c);
  const std::string sel = c.set.empty() ? "trcubic" : c.set;
  const auto f = build_field(c, c.p, require_m(c));
  const auto D = tc::io::parse_set(f, sel);
  const auto family = sel == "trcubic" ? tc::CodeFamily::TrCubic : tc::CodeFamily::Generic;
  const auto s = tc::secret_sharing_report(D, family, c.threads);
  if (c.format == "text") {
    std::cout << "w_min/w_max = " << s.ratio.unreduced() << (s.ratio.passes ? " > " : " <= ") << tc::io::rational_string(s.ratio.threshold)
              << "\nminimal codewords " << s.minimal.minimal_codewords << " of " << s.minimal.nonzero_codewords << "\n";
    if (s.violation) std::cout << "VIOLATION: ratio passes but not every nonzero codeword is minimal\n";
  } else {
    emit(tc::io::secret_sharing_json(s, sel, c.p, *c.m));
  }
  return s.violation ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace codes over GF(p^m): construction, weight distributions and claim verification"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--p", cfg.p, "characteristic");
    sub->add_option("--field-poly", cfg.field_poly, "modulus coefficients, constant term first, comma separated");
    sub->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_option("--max-q", cfg.max_q, "largest field order allowed");
    sub->add_option("--seed", cfg.seed, "seed for randomized instances");
  };

  auto* field = app.add_subcommand("field", "describe GF(p^m)");
  common(field);
  field->add_option("--m", cfg.m, "extension degree")->required();

  auto* code = app.add_subcommand("code", "build C_D and summarize it");
  common(code);
  code->add_option("--m", cfg.m, "extension degree")->required();
  code->add_option("--set", cfg.set, "defining-set selector")->required();

  auto* verify = app.add_subcommand("verify", "check one claim instance");
  common(verify);
  verify->add_option("--claim", cfg.claim, "claim name")->required();
  verify->add_option("--m", cfg.m, "extension degree");
  verify->add_option("--h", cfg.h, "HKM parameter");
  verify->add_option("--set", cfg.set, "defining set (thm1, thm2, cor3)");
  verify->add_option("--with", cfg.with, "second defining set (thm2)");
  verify->add_option("--E", cfg.E, "expansion set inside GF(p)*, comma separated");
  verify->add_option("--qf", cfg.qf, "quadratic form i,j,a+...");
  verify->add_option("--f", cfg.f, "Boolean function: tr3, random:<seed> or a truth-table file");
  verify->add_flag("--timing", cfg.timing, "include elapsed time");

  auto* scan = app.add_subcommand("scan", "check a claim over a parameter range");
  common(scan);
  scan->add_option("--claim", cfg.claim, "claim name")->required();
  scan->add_option("--m", cfg.m_range, "m or lo..hi");
  scan->add_option("--h", cfg.h_range, "h or lo..hi (thm3)");
  scan->add_option("--trials", cfg.trials, "random instances per m (thm1, cor3, cor5)");
  scan->add_flag("--timing", cfg.timing, "include elapsed time");

  auto* expsum = app.add_subcommand("expsum", "S(a, b) by summation and closed form");
  common(expsum);
  expsum->add_option("--m", cfg.m, "extension degree")->required();
  expsum->add_option("--a", cfg.a, "packed integer or g^t");
  expsum->add_option("--b", cfg.b, "packed integer or g^t");
  expsum->add_option("--rule", cfg.rule, "uniform or trace-split");

  auto* walsh = app.add_subcommand("walsh", "Walsh spectrum of a Boolean function");
  common(walsh);
  walsh->add_option("--m", cfg.m, "extension degree")->required();
  walsh->add_option("--f", cfg.f, "tr3, random:<seed> or a truth-table file");

  auto* ss = app.add_subcommand("ssreport", "w_min/w_max criterion and minimal codewords");
  common(ss);
  ss->add_option("--m", cfg.m, "extension degree")->required();
  ss->add_option("--set", cfg.set, "defining-set selector (default trcubic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*field) return run_field(cfg);
    if (*code) return run_code(cfg);
    if (*verify) return run_verify(cfg);
    if (*scan) return run_scan(cfg);
    if (*expsum) return run_expsum(cfg);
    if (*walsh) return run_walsh(cfg);
    if (*ss) return run_ssreport(cfg);
  } catch (const tc::LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    // internal consistency failures (Parseval, kernel size, ...) count as violations
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}
