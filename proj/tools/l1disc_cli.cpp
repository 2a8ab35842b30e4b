// l1disc: discrepancy norms, auxiliary functions, lemma checks and L1 lower-bound certificates.

#include "l1disc/auxiliary.hpp"
#include "l1disc/combinatorics.hpp"
#include "l1disc/discrepancy.hpp"
#include "l1disc/errors.hpp"
#include "l1disc/pointset.hpp"
#include "l1disc/report.hpp"
#include "l1disc/testfn.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace l1disc;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kResource = 3 };

struct Config {
  std::string command;
  bool json = false;
  std::uint64_t seed = 1;
  int precision = 12;
  std::optional<unsigned> max_level;
  std::string samples_text;
  std::string in;
};

std::size_t parse_samples(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1) || v != std::floor(v) || v > 1e12)
    throw CLI::ValidationError("--samples", "expected a positive integer such as 1e6, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::size_t samples_or(const Config& cfg, std::size_t fallback) {
  return cfg.samples_text.empty() ? fallback : parse_samples(cfg.samples_text);
}

Json config_json(const Config& cfg, std::size_t samples) {
  Json j;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed;
  j["samples"] = samples;
  j["max_level"] = cfg.max_level ? Json(*cfg.max_level) : Json("auto");
  j["precision"] = cfg.precision;
  if (!cfg.in.empty()) j["input"] = cfg.in;
  return j;
}

void print_header(const Config& cfg, std::size_t samples) {
  std::cout << "# l1disc " << cfg.command << " seed=" << cfg.seed << " samples=" << samples
            << " max_level=" << (cfg.max_level ? std::to_string(*cfg.max_level) : "auto")
            << " precision=" << cfg.precision;
  if (!cfg.in.empty()) std::cout << " input=" << cfg.in;
  std::cout << "\n";
}

void emit_json(const Config& cfg, std::size_t samples, Json body) {
  Json out;
  out["config"] = config_json(cfg, samples);
  for (auto& [key, value] : body.items()) out[key] = value;
  std::cout << out.dump(2) << "\n";
}

PointSet load(const Config& cfg) {
  if (cfg.in.empty()) throw PreconditionError("--in is required");
  return read_csv(std::filesystem::path(cfg.in));
}

int run_gen(const Config& cfg, const std::string& kind, unsigned m, std::size_t n, const std::string& out) {
  PointSet points;
  if (kind == "vdc") {
    points = van_der_corput(m);
  } else if (kind == "vdc-sym") {
    points = symmetrize(van_der_corput(m));
  } else if (kind == "random") {
    if (n == 0) throw PreconditionError("--n must be >= 1");
    points = random_uniform(n, cfg.seed);
  } else {
    throw CLI::ValidationError("--kind", "unknown kind '" + kind + "'");
  }
  if (out.empty()) {
    write_csv(points, std::cout);
    return kOk;
  }
  write_csv(points, std::filesystem::path(out));
  std::cout << "# l1disc gen kind=" << kind << " m=" << m << " n=" << n << " seed=" << cfg.seed << "\n"
            << "wrote " << points.size() << " points to " << out << "\n";
  return kOk;
}

int run_norms(const Config& cfg, const std::string& which, const std::string& method) {
  const PointSet points = load(cfg);
  const bool all = which == "all";
  if (method == "mc") {
    const std::size_t samples = samples_or(cfg, 1'000'000);
    Json body;
    body["n_points"] = points.size();
    std::vector<std::pair<std::string, NormKind>> kinds;
    if (all || which == "l1") kinds.emplace_back("l1", NormKind::l1);
    if (all || which == "l2") kinds.emplace_back("l2_sq", NormKind::l2);
    if (kinds.empty()) throw PreconditionError("--method mc supports --which l1, l2 or all");
    if (!cfg.json) print_header(cfg, samples);
    for (const auto& [name, kind] : kinds) {
      const MonteCarloEstimate est = monte_carlo_norm(points, kind, samples, cfg.seed);
      std::ostringstream value, err;
      value.precision(cfg.precision);
      err.precision(3);
      value << est.estimate;
      err << est.std_error;
      body[name] = {{"estimate", value.str()}, {"std_error", err.str()}};
      if (!cfg.json) std::cout << name << " ~ " << value.str() << " +- " << err.str() << " (1 s.e.)\n";
    }
    if (cfg.json) emit_json(cfg, samples, body);
    return kOk;
  }
  if (method != "exact") throw CLI::ValidationError("--method", "expected exact or mc");
  NormsReport report;
  report.n_points = points.size();
  if (all || which == "l1" || which == "dn") report.l1 = l1_norm_exact(points);
  if (all || which == "l2") report.l2_sq = l2_norm_sq(points);
  if (all || which == "linf") report.linf = linf_norm(points);
  if ((all || which == "dn") && points.size() >= 2) report.d_n = d_n(points, *report.l1);
  if (which == "dn" && points.size() < 2) throw DomainError("d_N needs N >= 2");
  if (cfg.json) {
    emit_json(cfg, 0, norms_json(report, cfg.precision));
    return kOk;
  }
  print_header(cfg, 0);
  std::cout << "n_points " << report.n_points << "\n";
  if (report.l1) {
    std::cout << "l1 " << report.l1->enclosure.mid_string(cfg.precision) << " +- "
              << format_mpfr(report.l1->error().hi(), 3, MPFR_RNDU);
    if (report.l1->exact()) std::cout << " (exact " << to_fraction_string(report.l1->rational_part) << ")";
    std::cout << "\n";
  }
  if (report.l2_sq) std::cout << "l2_sq " << to_fraction_string(*report.l2_sq) << "\n";
  if (report.linf) std::cout << "linf " << to_fraction_string(*report.linf) << "\n";
  if (report.d_n) std::cout << "d_n " << report.d_n->mid_string(cfg.precision) << "\n";
  return kOk;
}

int run_aux(const Config& cfg, std::optional<unsigned> only) {
  const PointSet points = load(cfg);
  const unsigned n = n_from_pointcount(points.size());
  Json trees = Json::array();
  for (unsigned i = 0; i <= n; ++i) {
    if (only && *only != i) continue;
    trees.push_back(tree_summary_json(points, build_tree(points, i, TreeOptions{cfg.max_level})));
  }
  if (only && *only > n) throw PreconditionError("--i exceeds n = " + std::to_string(n));
  if (cfg.json) {
    emit_json(cfg, 0, Json{{"n_points", points.size()}, {"n", n}, {"trees", trees}});
    return kOk;
  }
  print_header(cfg, 0);
  std::cout << "N=" << points.size() << " n=" << n << "\n";
  for (const Json& t : trees) {
    std::cout << "i=" << t["i"].get<unsigned>() << " stabilized=" << (t["stabilized"].get<bool>() ? "yes" : "no");
    if (!t["l_star"].is_null()) std::cout << " l*=" << t["l_star"].get<unsigned>();
    std::cout << " sum|R|^2=" << t["sum_area_sq"].get<std::string>()
              << " int D f_i=" << t["inner_product"].get<std::string>() << "\n";
    for (const Json& l : t["levels"]) std::cout << "  level " << l["l"] << ": nonempty " << l["nonempty"] << ", empty " << l["empty"] << "\n";
  }
  return kOk;
}

int run_lemmas(const Config& cfg, bool corrupt, unsigned product_level) {
  const PointSet points = load(cfg);
  LemmaOptions options;
  options.samples = samples_or(cfg, 2000);
  options.seed = cfg.seed;
  options.max_level = cfg.max_level;
  options.corrupt_tree = corrupt;
  options.product_level = product_level;
  const LemmaReport report = lemma_suite(points, options);
  if (cfg.json) {
    emit_json(cfg, options.samples, lemma_report_json(report));
  } else {
    print_header(cfg, options.samples);
    for (const LemmaCheck& c : report.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.lemma << " " << c.subject << ": " << c.witness << "\n";
    std::cout << (report.passed() ? "all checks passed" : "some checks FAILED") << "\n";
  }
  return report.passed() ? kOk : kCheckFailed;
}

int run_comb(const Config& cfg, unsigned n, unsigned k) {
  const OddCoefficientTable table = full_table(n, k);
  const Rational closed = a1(n, k);
  const Rational brute = a1_bruteforce(n, k);
  const FormalOddSeries series = generating_coefficients(n, k);
  const bool consistent = closed == brute && closed == Rational(series.at(k)) && closed == table.coefficient(1);
  const bool ok = consistent && table.reconstructed;
  if (cfg.json) {
    Json body = table_json(table);
    body["a1"] = closed.get_str();
    body["a1_bruteforce"] = brute.get_str();
    body["generating_coefficient"] = series.at(k).get_str();
    body["consistent"] = consistent;
    emit_json(cfg, 0, body);
  } else {
    print_header(cfg, 0);
    std::cout << "n=" << n << " k=" << k << "\n";
    for (const auto& [p, v] : table.coefficients) std::cout << "A_" << p << " = " << v.get_str() << "\n";
    std::cout << "A_1 closed form " << closed.get_str() << ", brute force " << brute.get_str() << ", series "
              << series.at(k).get_str() << "\n"
              << "reconstruction at all " << (std::uint64_t{1} << (n + 1)) << " sign vectors: "
              << (table.reconstructed ? "ok" : "FAILED") << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

int run_lin(const Config& cfg, unsigned n, unsigned order) {
  const FourierAtomFunction sine = FourierAtomFunction::sine();
  const Complex value = lin_n(sine, n);
  const Complex series = lin_series_crosscheck(sine, n, order);
  const Complex limit = lin_limit(sine);
  const ExtremalResult max = extremal_search();
  const ExtremalResult min = extremal_search(ExtremalOptions{.minimize = true});
  const SupNorm sup = sup_norm_via_coefficients(sine);
  const Real scaled = sqrt(Real(n)) * value.re;
  const Real gap = abs(value - series);
  const int d = cfg.precision;
  if (cfg.json) {
    emit_json(cfg, 0,
              Json{{"function", "sin"},
                   {"n", n},
                   {"order", order},
                   {"lin_n", to_string(value.re, d)},
                   {"sqrt_n_lin_n", to_string(scaled, d)},
                   {"series", to_string(series.re, d)},
                   {"series_gap", to_string(gap, 3)},
                   {"lin_limit", to_string(limit.re, d)},
                   {"argmax", to_string(max.omega, d)},
                   {"max", to_string(max.value, d)},
                   {"argmin", to_string(min.omega, d)},
                   {"min", to_string(min.value, d)},
                   {"sup_norm", to_string(sup.value, d)},
                   {"independence_verified", sup.independence_verified}});
    return kOk;
  }
  print_header(cfg, 0);
  std::cout << "T = sin, n = " << n << "\n"
            << "lin_n            " << to_string(value.re, d) << "\n"
            << "sqrt(n) lin_n    " << to_string(scaled, d) << "\n"
            << "series (K=" << order << ")    " << to_string(series.re, d) << "  gap " << to_string(gap, 3) << "\n"
            << "limit            " << to_string(limit.re, d) << "\n"
            << "max w e^-w^2/2   at " << to_string(max.omega, d) << " = " << to_string(max.value, d) << "\n"
            << "min w e^-w^2/2   at " << to_string(min.omega, d) << " = " << to_string(min.value, d) << "\n"
            << "sum |c_j|        " << to_string(sup.value, d)
            << (sup.independence_verified ? "" : " (frequency independence not verified)") << "\n";
  return kOk;
}

int run_certificate(const Config& cfg, bool factorial_cubic) {
  const PointSet points = load(cfg);
  CertificateOptions options;
  options.max_level = cfg.max_level;
  if (factorial_cubic) options.cubic_factor = 6;
  const BoundCertificate cert = certificate(points, options);
  const int d = cfg.precision;
  if (cfg.json) {
    emit_json(cfg, 0, certificate_json(cert, d));
    return kOk;
  }
  print_header(cfg, 0);
  std::cout << "N=" << cert.point_count << " n=" << cert.n << "\n"
            << "sum_i int D f_i = " << to_fraction_string(cert.inner_product_sum)
            << (cert.exact ? "" : " (upper end; error " + to_fraction_string(cert.inner_product_error) + ")") << "\n"
            << "cos^n sin       = " << plus_minus_string(cert.lin_coefficient, d) << "\n"
            << "main term      >= " << cert.main_term_abs.lower_string(d) << "\n"
            << "error bound    <= " << cert.error_bound.upper_string(d) << " (cubic factor "
            << to_fraction_string(cert.cubic_factor) << ")\n"
            << "||D_P||_1      >= " << cert.l1_lower_bound.lower_string(d) << "\n";
  if (cert.d_n_bound) std::cout << "d_N bound      >= " << cert.d_n_bound->lower_string(d) << "\n";
  else std::cout << "d_N bound omitted (ln N = 0)\n";
  return kOk;
}

int run_constants(const Config& cfg, unsigned first, unsigned last) {
  const auto table = constants_table();
  const AsymptoticTable asym = asymptotic_dn_table(first, last);
  bool ok = true;
  for (const ConstantEntry& c : table) ok = ok && c.matches_display();
  const int d = std::max(cfg.precision, 10);
  if (cfg.json) {
    emit_json(cfg, 0, Json{{"constants", constants_json(d)}, {"asymptotic", asymptotic_json(asym, d)}});
  } else {
    print_header(cfg, 0);
    for (const ConstantEntry& c : table)
      std::cout << c.name << " = " << to_string(c.value, d) << "  [" << c.formula << ", ~" << c.displayed
                << (c.external ? ", external" : "") << (c.matches_display() ? "" : ", MISMATCH") << "]\n";
    std::cout << "n   lower bound for d_{2^(n-1)}\n";
    for (const AsymptoticRow& r : asym.rows) std::cout << r.n << "  " << to_string(r.value, d) << "\n";
    std::cout << "limit " << to_string(asym.limit, d) << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact discrepancy norms, Roth auxiliary functions and L1 lower-bound certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  unsigned max_level = 0;
  app.add_flag("--json", cfg.json, "Machine-readable output");
  app.add_option("--seed", cfg.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--precision", cfg.precision, "Significant digits of decimal output")
      ->check(CLI::Range(3, 60))
      ->capture_default_str();
  auto* max_level_opt = app.add_option("--max-level", max_level, "Levels of the auxiliary trees")
                            ->check(CLI::Range(0u, kMaxTreeLevel));
  app.add_option("--samples", cfg.samples_text, "Monte-Carlo / sampling budget, e.g. 1e6");

  auto* gen = app.add_subcommand("gen", "Generate a point set as CSV");
  std::string kind, out;
  unsigned m = 0;
  std::size_t n_points = 0;
  gen->add_option("--kind", kind, "vdc | vdc-sym | random")->required();
  gen->add_option("--m", m, "van der Corput exponent (N = 2^m)");
  gen->add_option("--n", n_points, "number of random points");
  gen->add_option("--out", out, "output file (default stdout)");

  std::string which = "all", method = "exact";
  auto* norms = app.add_subcommand("norms", "L1 / L2 / Linf norms and d_N of a point set");
  norms->add_option("--in", cfg.in)->required();
  norms->add_option("--which", which)->check(CLI::IsMember({"l1", "l2", "linf", "dn", "all"}))->capture_default_str();
  norms->add_option("--method", method)->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();

  std::optional<unsigned> only_i;
  auto* aux = app.add_subcommand("aux", "Auxiliary rectangle families and integrals of D f_i");
  aux->add_option("--in", cfg.in)->required();
  aux->add_option("--i", only_i, "only this index");

  bool corrupt = false;
  unsigned product_level = 2;
  auto* lemmas = app.add_subcommand("lemmas", "Check the auxiliary-function lemmas");
  lemmas->add_option("--in", cfg.in)->required();
  lemmas->add_option("--product-level", product_level, "truncation level of product checks")->capture_default_str();
  lemmas->add_flag("--corrupt-tree", corrupt, "test hook: drop a nonempty rectangle before checking");

  unsigned comb_n = 1, comb_k = 3;
  auto* comb = app.add_subcommand("comb", "Coefficients A_p^n(k)");
  comb->add_option("--n", comb_n)->capture_default_str();
  comb->add_option("--k", comb_k)->capture_default_str();

  unsigned lin_n_value = 1, order = 41;
  auto* lin = app.add_subcommand("lin", "LIN_n(sin), its series form and limit");
  lin->add_option("--n", lin_n_value)->check(CLI::PositiveNumber)->capture_default_str();
  lin->add_option("--order", order, "odd series order <= 41")->capture_default_str();

  bool factorial_cubic = false;
  auto* cert = app.add_subcommand("certificate", "Lower-bound certificate for ||D_P||_1 with T = sin");
  cert->add_option("--in", cfg.in)->required();
  cert->add_flag("--factorial-cubic", factorial_cubic, "use the factor 3! on the cubic error term");

  unsigned first = 2, last = 64;
  auto* constants = app.add_subcommand("constants", "Constants of the asymptotic bounds");
  constants->add_option("--first", first)->capture_default_str();
  constants->add_option("--last", last)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (*max_level_opt) cfg.max_level = max_level;
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (*gen) return run_gen(cfg, kind, m, n_points, out);
    if (*norms) return run_norms(cfg, which, method);
    if (*aux) return run_aux(cfg, only_i);
    if (*lemmas) return run_lemmas(cfg, corrupt, product_level);
    if (*comb) return run_comb(cfg, comb_n, comb_k);
    if (*lin) return run_lin(cfg, lin_n_value, order);
    if (*cert) return run_certificate(cfg, factorial_cubic);
    if (*constants) return run_constants(cfg, first, last);
  } catch (const ResourceLimitError& e) {
    std::cerr << "l1disc: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "l1disc: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalError& e) {
    std::cerr << "l1disc: internal check failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "l1disc: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "l1disc: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
