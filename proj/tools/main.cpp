// coprime: batch front-end for the verification suites, exact formulas,
// density products, and brute-force censuses.
//
// One subcommand = one computation family. Every run emits a single Report,
// as JSON (lossless: rationals are numerator/denominator integer strings) or
// CSV (tabular hand-off; no timing, so identical configurations produce
// byte-identical files). Exit status: 0 on success with no failed checks,
// 1 when a verification check fails, 2 on bad parameters, 3 when an
// exhaustive enumeration hits the ceiling.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coprime/census.hpp"
#include "coprime/formulas.hpp"
#include "coprime/report.hpp"
#include "coprime/verify.hpp"

using namespace coprime;

namespace {

struct Common {
  std::string output = "json";
  std::string out_path;
  std::uint64_t ceiling = CensusOptions{}.ceiling;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  bool seed_given = false;
  bool samples_given = false;

  CensusOptions census_options() const {
    CensusOptions o;
    o.ceiling = ceiling;
    o.seed = seed;
    o.samples = samples;
    return o;
  }
};

void add_common_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--output", c.output, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out_path, "Write the report to a file instead of stdout");
  cmd->add_option("--ceiling", c.ceiling, "Exhaustive enumeration event cap")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Monte Carlo seed")
      ->each([&c](const std::string&) { c.seed_given = true; });
  cmd->add_option("--samples", c.samples, "Monte Carlo sample count")
      ->each([&c](const std::string&) { c.samples_given = true; });
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

void emit(Report& report, const Common& c, std::chrono::steady_clock::time_point t0) {
  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  const std::string text =
      c.output == "csv" ? report_to_csv(report) : report_to_json(report);
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + c.out_path);
  out << text;
}

ReportEntry entry(std::string name, Rat value, std::string mode) {
  ReportEntry e;
  e.name = std::move(name);
  e.value = std::move(value);
  e.mode = std::move(mode);
  return e;
}

void push_coeffs(Report& report, const AsymptoticCoeffs& ac) {
  for (const auto& term : ac.terms)
    report.results.push_back(entry("c" + std::to_string(term.exponent), term.coeff, "exact"));
  report.params["order"] = std::to_string(ac.order);
  if (ac.variable_power != 1)
    report.params["variable_power"] = std::to_string(ac.variable_power);
}

Graph make_graph(const std::string& name, int vertices) {
  if (name == "complete") return Graph::complete(vertices);
  if (name == "path") return Graph::path(vertices);
  if (name == "edgeless") return Graph::edgeless(vertices);
  if (name == "disjoint-edges") {
    if (vertices % 2 != 0)
      throw std::invalid_argument("disjoint-edges needs an even vertex count");
    return Graph::disjoint_edges(vertices / 2);
  }
  throw std::invalid_argument("unknown graph: " + name);
}

// W_j(N) without enumeration: the two-block closed form, extended upward by
// the rank recursion where the all-singular correction provably vanishes
// (m <= n-1 at every step, i.e. m <= 2 once three or more blocks appear).
Rat wj_chain_exact(int m, int N, std::uint64_t q, int j) {
  const Rat w2 = wj_exact_pair(m, q, j);
  if (N == 2) return w2;
  if (m > 2)
    throw std::domain_error(
        "the correction term is nonzero below three blocks for m > 2; "
        "use `census --wj` to brute-force it");
  std::vector<Rat> w = {Rat(1), Rat(1), w2};
  for (int n = 3; n <= N; ++n) w.push_back(wj_recursion(m, n, q, j, w, Rat(0)));
  return w.back();
}

void census_entries(Report& report, const CensusResult& r) {
  const char* mode = r.mode == CensusMode::montecarlo ? "montecarlo" : "exhaustive";
  ReportEntry prob = entry("probability", r.probability, mode);
  if (r.ci_low && r.ci_high) prob.ci = std::make_pair(*r.ci_low, *r.ci_high);
  report.results.push_back(std::move(prob));
  report.results.push_back(entry("hits", Rat(r.hits), mode));
  report.results.push_back(entry("total", Rat(r.total), mode));
  report.params["mode"] = mode;
  if (r.seed) report.params["seed"] = std::to_string(*r.seed);
  if (r.samples) report.params["samples"] = std::to_string(*r.samples);
}

int run_verify(const std::string& suite, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.command = "verify";
  report.params["suite"] = suite;
  report.params["ceiling"] = std::to_string(c.ceiling);
  auto results = verify_suite(suite, c.census_options());
  int failed = 0;
  for (const CheckResult& r : results) {
    report.results.push_back(entry(r.name, Rat(r.pass ? 1 : 0), r.pass ? "pass" : "fail"));
    if (!r.pass) {
      ++failed;
      report.params["fail." + r.name] = r.detail;
    }
  }
  report.params["failed"] = std::to_string(failed);
  emit(report, c, t0);
  return failed == 0 ? 0 : 1;
}

struct ProbabilityArgs {
  std::string lemma, thm;
  bool conclusion = false;
  int N = 0, m = 0, n1 = 0, j = 1;
  std::uint64_t q = 2;
};

int run_probability(const ProbabilityArgs& a, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.command = "probability";
  report.params["q"] = std::to_string(a.q);
  if (!a.lemma.empty()) {
    if (a.lemma != "coprime") throw std::invalid_argument("unknown --lemma: " + a.lemma);
    report.params["lemma"] = a.lemma;
    report.params["N"] = std::to_string(a.N);
    report.results.push_back(
        entry("setwise_coprime_prob", setwise_coprime_prob(a.N, a.q), "exact"));
  } else if (!a.thm.empty()) {
    report.params["thm"] = a.thm;
    // The uniform-ensemble expansions describe a sampling model this toolkit
    // evaluates but does not itself define.
    report.params["note"] = kExternalModelNote;
    if (a.thm == "pairwise-asym") {
      report.params["N"] = std::to_string(a.N);
      report.params["n1"] = std::to_string(a.n1);
      push_coeffs(report, pairwise_uniform_asymptotic(a.N, a.n1, a.q));
    } else if (a.thm == "mutual-asym") {
      report.params["m"] = std::to_string(a.m);
      report.params["N"] = std::to_string(a.N);
      push_coeffs(report, mutual_uniform_asymptotic(a.m, a.N));
    } else if (a.thm == "wj-asym") {
      report.params["m"] = std::to_string(a.m);
      report.params["N"] = std::to_string(a.N);
      report.params["j"] = std::to_string(a.j);
      push_coeffs(report, wj_asymptotic(a.m, a.N, a.j));
    } else {
      throw std::invalid_argument("unknown --thm: " + a.thm);
    }
  } else if (a.conclusion) {
    report.params["case"] = "square 2x2";
    auto [uniform, density] = conclusion_reference(a.q);
    report.results.push_back(entry("uniform_probability", uniform, "exact"));
    report.results.push_back(entry("natural_density", density, "exact"));
  } else {
    throw std::invalid_argument("pick one of --lemma, --thm, --conclusion");
  }
  emit(report, c, t0);
  return 0;
}

struct DensityArgs {
  bool pairwise = false, mutual = false, scan = false;
  int N = 2, m = 0, J = 0;
  std::uint64_t q = 2;
  std::vector<std::uint64_t> cutoffs;
  std::string event = "pairwise";
};

void scan_to_report(Report& report, const DensityScan& scan) {
  ReportTable table;
  table.header = {"n", "numerator", "denominator", "decimal"};
  for (const DensityPoint& p : scan.points) {
    const char* mode = p.mode == CensusMode::montecarlo ? "montecarlo" : "exhaustive";
    ReportEntry e = entry("M_" + std::to_string(p.cutoff), p.fraction, mode);
    if (p.ci_low && p.ci_high) e.ci = std::make_pair(*p.ci_low, *p.ci_high);
    report.results.push_back(std::move(e));
    table.rows.push_back({std::to_string(p.cutoff), numerator(p.fraction).str(),
                          denominator(p.fraction).str(), decimal_string(p.fraction, 9)});
  }
  report.params["model"] = scan.model;
  if (scan.seed) report.params["seed"] = std::to_string(*scan.seed);
  if (scan.samples) report.params["samples"] = std::to_string(*scan.samples);
  report.table = std::move(table);
}

int run_density(const DensityArgs& a, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.command = "density";
  report.params["q"] = std::to_string(a.q);
  if (a.pairwise) {
    if (a.J < 1) throw std::invalid_argument("--pairwise needs -J >= 1");
    report.params["N"] = std::to_string(a.N);
    report.params["J"] = std::to_string(a.J);
    TruncatedProduct tp = pairwise_density_truncated(a.N, a.q, a.J);
    ReportEntry e = entry("pairwise_density", tp.value, tp.exact ? "exact" : "sampled");
    e.tail_bound = tp.tail_bound;
    report.results.push_back(std::move(e));
  } else if (a.mutual) {
    if (a.J < 1) throw std::invalid_argument("--mutual needs -J >= 1");
    if (a.m < 2) throw std::invalid_argument("--mutual needs -m >= 2");
    report.params["m"] = std::to_string(a.m);
    report.params["N"] = std::to_string(a.N);
    report.params["J"] = std::to_string(a.J);
    TruncatedProduct tp = mutual_density_truncated(
        a.m, a.N, a.q, a.J,
        [&a](int j) { return WjValue{wj_chain_exact(a.m, a.N, a.q, j), true}; });
    ReportEntry e = entry("mutual_density", tp.value, tp.exact ? "exact" : "sampled");
    e.tail_bound = tp.tail_bound;
    report.results.push_back(std::move(e));
    // Per-degree table: each W_j with the running partial product.
    ReportTable table;
    table.header = {"j", "wj_num", "wj_den", "partial_product"};
    Rat partial(1);
    for (int j = 1; j <= a.J; ++j) {
      const Rat wj = wj_chain_exact(a.m, a.N, a.q, j);
      partial *= rpow(wj, static_cast<std::int64_t>(
                              static_cast<std::uint64_t>(irreducible_count(j, BigInt(a.q)))));
      table.rows.push_back({std::to_string(j), numerator(wj).str(),
                            denominator(wj).str(), decimal_string(partial, 9)});
    }
    report.table = std::move(table);
  } else if (a.scan) {
    if (a.cutoffs.empty()) throw std::invalid_argument("--scan needs --cutoffs");
    report.params["N"] = std::to_string(a.N);
    report.params["cutoffs"] = join_u64(a.cutoffs);
    if (a.m > 0) {
      report.params["m"] = std::to_string(a.m);
      scan_to_report(report, density_scan_matrices(a.m, a.N, a.q, a.cutoffs,
                                                   c.census_options()));
    } else {
      report.params["event"] = a.event;
      const DensityEvent ev = a.event == "setwise" ? DensityEvent::setwise_coprime
                                                   : DensityEvent::pairwise_coprime;
      scan_to_report(report, density_scan_polys(a.N, a.q, a.cutoffs, ev,
                                                c.census_options()));
    }
  } else {
    throw std::invalid_argument("pick one of --pairwise, --mutual, --scan");
  }
  emit(report, c, t0);
  return 0;
}

struct CensusArgs {
  bool wj = false, setwise = false, mc = false;
  std::string graph;
  int m = 1, N = 2, j = 1;
  std::uint64_t q = 2;
  std::vector<int> degrees;
};

int run_census(const CensusArgs& a, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report report;
  report.command = "census";
  report.params["q"] = std::to_string(a.q);
  report.params["ceiling"] = std::to_string(c.ceiling);
  CensusResult result;
  if (a.wj) {
    report.params["m"] = std::to_string(a.m);
    report.params["N"] = std::to_string(a.N);
    report.params["j"] = std::to_string(a.j);
    if (a.mc) {
      result = wj_montecarlo(a.m, a.N, a.q, a.j, c.samples, c.seed, c.census_options());
    } else {
      if (c.seed_given || c.samples_given)
        throw std::invalid_argument("--seed/--samples only apply with --mc");
      result = wj_bruteforce(a.m, a.N, a.q, a.j, c.census_options());
    }
  } else if (!a.graph.empty()) {
    if (a.degrees.empty()) throw std::invalid_argument("--graph needs --degrees");
    report.params["graph"] = a.graph;
    report.params["N"] = std::to_string(a.N);
    report.params["degrees"] = join_ints(a.degrees);
    result = count_graph_coprime(a.q, a.degrees, make_graph(a.graph, a.N),
                                 c.census_options());
  } else if (a.setwise) {
    if (a.degrees.empty()) throw std::invalid_argument("--setwise needs --degrees");
    report.params["degrees"] = join_ints(a.degrees);
    result = count_setwise_coprime(a.q, a.degrees, c.census_options());
  } else {
    throw std::invalid_argument("pick one of --wj, --graph, --setwise");
  }
  census_entries(report, result);
  emit(report, c, t0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coprimality probabilities, densities, and censuses "
               "for polynomials and polynomial matrices over finite fields"};
  app.require_subcommand(1);
  Common common;

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "Run a self-check suite");
  verify->add_option("suite", suite, "identities|oracles|recursion|density|all")
      ->check(CLI::IsMember({"identities", "oracles", "recursion", "density", "all"}))
      ->capture_default_str();
  add_common_flags(verify, common);

  ProbabilityArgs pa;
  CLI::App* probability =
      app.add_subcommand("probability", "Evaluate a closed-form or expansion");
  probability->add_option("--lemma", pa.lemma, "coprime");
  probability->add_option("--thm", pa.thm, "pairwise-asym|mutual-asym|wj-asym");
  probability->add_flag("--conclusion", pa.conclusion, "Square 2x2 reference values");
  probability->add_option("-N", pa.N, "Tuple length / block count");
  probability->add_option("-m", pa.m, "Matrix size");
  probability->add_option("--n1", pa.n1, "Number of degree-one entries");
  probability->add_option("-j", pa.j, "Extension degree")->capture_default_str();
  probability->add_option("-q", pa.q, "Field size")->capture_default_str();
  add_common_flags(probability, common);

  DensityArgs da;
  CLI::App* density =
      app.add_subcommand("density", "Truncated density products and cutoff scans");
  density->add_flag("--pairwise", da.pairwise, "Pairwise-coprimality density product");
  density->add_flag("--mutual", da.mutual, "Mutual-left-coprimality density product");
  density->add_flag("--scan", da.scan, "Fraction table over entry cutoffs");
  density->add_option("-N", da.N, "Tuple length / block count")->capture_default_str();
  density->add_option("-m", da.m, "Matrix size (scan: 0 means scalar polynomials)");
  density->add_option("-J", da.J, "Product truncation depth");
  density->add_option("-q", da.q, "Field size")->capture_default_str();
  density->add_option("--cutoffs", da.cutoffs, "Scan cutoffs n (entries range over 0..n)")
      ->delimiter(',');
  density->add_option("--event", da.event, "Scan event for scalar polynomials")
      ->check(CLI::IsMember({"pairwise", "setwise"}))
      ->capture_default_str();
  add_common_flags(density, common);

  CensusArgs ca;
  CLI::App* census =
      app.add_subcommand("census", "Exhaustive or Monte Carlo event counts");
  census->add_flag("--wj", ca.wj, "Full-row-rank block chain over GF(q^j)");
  census->add_option("--graph", ca.graph, "complete|path|disjoint-edges|edgeless");
  census->add_flag("--setwise", ca.setwise, "Setwise-coprime tuple census");
  census->add_flag("--mc", ca.mc, "Sample instead of enumerating (--wj only)");
  census->add_option("-m", ca.m, "Matrix size")->capture_default_str();
  census->add_option("-N", ca.N, "Tuple length / vertex count")->capture_default_str();
  census->add_option("-j", ca.j, "Extension degree")->capture_default_str();
  census->add_option("-q", ca.q, "Field size")->capture_default_str();
  census->add_option("--degrees", ca.degrees, "Per-polynomial degree bounds")
      ->delimiter(',');
  add_common_flags(census, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(suite, common);
    if (probability->parsed()) return run_probability(pa, common);
    if (density->parsed()) return run_density(da, common);
    return run_census(ca, common);
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what()
              << " (raise --ceiling, or use Monte Carlo via --mc / a matrix scan)\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
