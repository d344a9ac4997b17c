// divisum: command-line front end for the convolution-sum identities.
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divisum/divisum.hpp"

namespace {

using namespace divisum;
using nlohmann::json;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Config {
  long precision_bits = 256;
  long base_N = 20000;
  std::optional<int> levels;
  std::optional<int> extrap_terms;
  std::string format = "text";
  unsigned jobs = 0;
  bool deterministic = false;
  int digits = 30;

  Schedule schedule(const ConvolutionParams& p) const {
    Schedule s = default_schedule(p);
    s.base_N = base_N;
    if (levels) s.levels = *levels;
    if (extrap_terms) s.terms = *extrap_terms;
    if (s.levels <= s.terms) throw domain_error("--levels must exceed --extrap-terms");
    return s;
  }
  VerifyOptions options(double tol) const {
    VerifyOptions o;
    o.rel_tol = tol;
    o.sum.jobs = jobs;
    o.deterministic = deterministic;
    return o;
  }
  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(precision_bits); }
};

std::vector<long> parse_range(const std::string& s) {
  long a = 0, b = 0;
  const auto dots = s.find("..");
  try {
    std::size_t pos = 0;
    if (dots == std::string::npos) {
      a = b = std::stol(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
    } else {
      const std::string lo = s.substr(0, dots), hi = s.substr(dots + 2);
      a = std::stol(lo, &pos);
      if (pos != lo.size()) throw std::invalid_argument(s);
      b = std::stol(hi, &pos);
      if (pos != hi.size()) throw std::invalid_argument(s);
    }
  } catch (const std::logic_error&) {
    throw domain_error("bad range '" + s + "', expected a or a..b");
  }
  if (a > b) throw domain_error("empty range '" + s + "'");
  std::vector<long> out;
  for (long n = a; n <= b; ++n) {
    if (n == 0) throw domain_error("n = 0 is not supported");
    out.push_back(n);
  }
  return out;
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::logic_error&) {
      throw domain_error("bad list entry '" + item + "'");
    }
  }
  return out;
}

void emit_reports(const Config& cfg, const std::vector<VerificationReport>& reps, const json& extra = nullptr) {
  if (cfg.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      json j = to_json(reps[i], cfg.digits);
      if (extra.is_array()) j["identity"] = extra[i];
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    std::cout << csv_header() << '\n';
    for (const auto& r : reps) std::cout << to_csv(r, cfg.digits) << '\n';
  } else {
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::cout << to_text(reps[i]) << '\n';
      if (extra.is_array()) {
        const auto& e = extra[i];
        std::cout << "    printed: LHS*Gamma " << e["lhs"].get<std::string>() << "  printed RHS "
                  << e["printed_rhs"].get<std::string>() << "  rel.residual " << e["relative_residual"].get<std::string>()
                  << "  " << (e["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
      }
    }
  }
}

int cmd_theorem(const Config& cfg, long d, long r1, long r2, const std::string& range, double tol) {
  std::vector<VerificationReport> reps;
  bool ok = true;
  for (long n : parse_range(range)) {
    const ConvolutionParams p{d, r1, r2, n};
    p.validate();
    reps.push_back(verify_identity(p, cfg.schedule(p), cfg.prec(), cfg.options(tol)));
    ok = ok && reps.back().pass;
  }
  emit_reports(cfg, reps);
  return ok ? kPass : kFail;
}

int cmd_named(const Config& cfg, const std::string& name, const std::string& range) {
  const NamedIdentity id = named_identity(name);
  const NamedCheck chk = check_named(id, cfg.prec());
  const std::vector<long> ns = range.empty() ? parse_range(std::to_string(id.n_first) + ".." + std::to_string(id.n_last))
                                             : parse_range(range);
  if (cfg.format == "text") {
    std::cout << id.name << ": d=" << id.d << " r1=" << id.r1 << " r2=" << id.r2 << "  Gamma = " << chk.gamma.gamma
              << (chk.gamma.certified ? " (certified)" : " (NOT certified)") << '\n'
              << "  printed RHS: " << id.printed_text << '\n'
              << "  derived Z-part: " << chk.derived_z.str() << (chk.z_match ? "  [matches]" : "  [MISMATCH]") << '\n';
    for (std::size_t i = 0; i < chk.derived_cusp.size(); ++i)
      std::cout << "  cusp coefficient f_" << i + 1 << ": derived " << chk.derived_cusp[i].str(25) << "  printed "
                << chk.printed_cusp[i].str(25) << '\n';
    if (!chk.message.empty()) std::cout << "  " << chk.message << '\n';
  }
  std::vector<VerificationReport> reps;
  json extra = json::array();
  bool ok = chk.pass;
  for (long n : ns) {
    const ConvolutionParams p = id.params(n);
    NamedReport nr = verify_named(id, chk, n, cfg.schedule(p), cfg.prec(), cfg.options(id.rel_tol));
    ok = ok && nr.pass;
    reps.push_back(nr.theorem);
    extra.push_back({{"name", id.name},
                     {"gamma", chk.gamma.gamma.get_str()},
                     {"certified", chk.gamma.certified},
                     {"z_match", chk.z_match},
                     {"cusp_match", chk.cusp_match},
                     {"lhs", nr.lhs.str(cfg.digits)},
                     {"printed_rhs", nr.printed_rhs.str(cfg.digits)},
                     {"relative_residual", detail::ld_str(nr.relative_residual)},
                     {"pass", nr.pass}});
  }
  emit_reports(cfg, reps, extra);
  return ok ? kPass : kFail;
}

int cmd_physics(const Config& cfg, double tol) {
  const PhysicsReport r = physics_cancellation(cfg.prec(), tol);
  if (cfg.format == "json") {
    json j = {{"precision_bits", cfg.precision_bits},
              {"printed_route", r.printed.str(cfg.digits)},
              {"printed_route_err", detail::ld_str(r.printed.rad())},
              {"d_route", r.d_route.str(cfg.digits)},
              {"d_route_err", detail::ld_str(r.d_route.rad())},
              {"route_gap", detail::ld_str(r.route_gap)},
              {"perturbation_shift", detail::ld_str(r.shift)},
              {"vanishes", r.vanishes},
              {"routes_agree", r.routes_agree},
              {"detectable", r.detectable},
              {"above_floor", r.sensitive},
              {"tol", r.tol},
              {"pass", r.pass}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "printed L-monomial route: " << r.printed.str(cfg.digits) << " +/- " << r.printed.rad_str() << '\n'
              << "D(r1,r2,d) route:         " << r.d_route.str(cfg.digits) << " +/- " << r.d_route.rad_str() << '\n'
              << "route gap |printed + D|:  " << detail::ld_str(r.route_gap) << '\n'
              << "L(2) -> L(2)(1+1e-20) moves the value by " << detail::ld_str(r.shift) << " (floor "
              << r.shift_floor << ")\n"
              << "vanishes (tol " << r.tol << "): " << (r.vanishes ? "yes" : "no")
              << "  routes agree: " << (r.routes_agree ? "yes" : "no")
              << "  perturbation detectable: " << (r.detectable ? "yes" : "no")
              << "  above floor: " << (r.sensitive ? "yes" : "no") << '\n'
              << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  return r.pass ? kPass : kFail;
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + Rational(v[i]).get_str();
  return s + "]";
}

int cmd_table_q(const Config& cfg, long d, long alpha, long beta) {
  const QSecondKind q = q_construct(d, alpha, beta);
  if (cfg.format == "json") {
    json P = json::array(), R = json::array();
    for (const auto& c : q.P.coeffs()) P.push_back(c.get_str());
    for (const auto& c : q.R.coeffs()) R.push_back(c.get_str());
    std::cout << json{{"d", d}, {"alpha", alpha}, {"beta", beta}, {"P", P}, {"R", R}}.dump(2) << '\n';
  } else {
    std::cout << "P = " << join_rationals(q.P.coeffs()) << '\n' << "R = " << join_rationals(q.R.coeffs()) << '\n';
  }
  return kPass;
}

int cmd_table_z(const Config& cfg, long d, long alpha, long beta, long n) {
  const ZTerm z = z_term(d, alpha, beta, n);
  const PrecisionReal v = z.value(cfg.prec());
  if (cfg.format == "json")
    std::cout << json{{"d", d}, {"alpha", alpha}, {"beta", beta}, {"n", n}, {"expr", z.str()}, {"value", v.str(cfg.digits)},
                      {"err", detail::ld_str(v.rad())}}
                     .dump(2)
              << '\n';
  else
    std::cout << z.str() << " = " << v.str(cfg.digits) << " +/- " << v.rad_str() << '\n';
  return kPass;
}

int cmd_table_eigenforms(const Config& cfg, long k, long terms) {
  const auto forms = hecke_eigenforms(k, std::max(terms + 1, default_truncation(k, cfg.prec())), cfg.prec());
  json arr = json::array();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (cfg.format != "json") std::cout << "f_" << i + 1 << " (weight " << k << ")\n";
    json coeffs = json::array();
    for (long m = 1; m <= terms; ++m) {
      if (cfg.format == "json")
        coeffs.push_back(forms[i][m].str(cfg.digits));
      else
        std::cout << "  a_" << m << " = " << forms[i][m].str(cfg.digits) << " +/- " << forms[i][m].rad_str() << '\n';
    }
    arr.push_back({{"index", i + 1}, {"a", coeffs}});
  }
  if (forms.empty() && cfg.format != "json") std::cout << "no cusp forms of weight " << k << '\n';
  if (cfg.format == "json") std::cout << json{{"weight", k}, {"dim", dim_cusp(k)}, {"forms", arr}}.dump(2) << '\n';
  return kPass;
}

int cmd_table_lvalues(const Config& cfg, long k) {
  const auto forms = hecke_eigenforms(k, cfg.prec());
  json arr = json::array();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    json vals = json::array();
    if (cfg.format != "json") std::cout << "f_" << i + 1 << " (weight " << k << ")\n";
    for (long s = 1; s <= k - 1; ++s) {
      const PrecisionReal star = completed_L(forms[i], s, cfg.prec()).value;
      const PrecisionReal plain = l_value(forms[i], s, cfg.prec());
      if (cfg.format == "json")
        vals.push_back({{"s", s}, {"completed", star.str(cfg.digits)}, {"L", plain.str(cfg.digits)}});
      else
        std::cout << "  s=" << s << "  L*(f,s) = " << star.str(cfg.digits) << "  L(f,s) = " << plain.str(cfg.digits) << '\n';
    }
    arr.push_back({{"index", i + 1}, {"values", vals}});
  }
  if (forms.empty() && cfg.format != "json") std::cout << "no cusp forms of weight " << k << '\n';
  if (cfg.format == "json") std::cout << json{{"weight", k}, {"forms", arr}}.dump(2) << '\n';
  return kPass;
}

int cmd_cache_warm(const Config& cfg, const std::string& weights) {
  std::filesystem::create_directories(cache_directory());
  for (long k : parse_list(weights)) {
    const auto forms = hecke_eigenforms(k, cfg.prec());
    std::cout << "weight " << k << ": " << forms.size() << " eigenform(s) cached\n";
  }
  return kPass;
}

int cmd_cache_clear() {
  namespace fs = std::filesystem;
  const fs::path dir = cache_directory();
  long removed = 0;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir)) {
      const std::string name = e.path().filename().string();
      if (name.rfind("eigenforms_", 0) == 0 && e.path().extension() == ".json") removed += fs::remove(e.path());
    }
  std::cout << "removed " << removed << " cache file(s) from " << dir.string() << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify shifted convolution sums of divisor functions against cusp-form predictions"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Config cfg;
  app.add_option("--precision-bits", cfg.precision_bits, "Working precision in bits")->check(CLI::Range(64L, 1L << 20));
  app.add_option("--base-N", cfg.base_N, "Smallest truncation level")->check(CLI::PositiveNumber);
  app.add_option("--levels", cfg.levels, "Number of truncation levels (default depends on the parameters)");
  app.add_option("--extrap-terms", cfg.extrap_terms, "Correction terms in the tail fit");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads for the sums (0: all cores)");
  app.add_flag("--deterministic", cfg.deterministic, "Report wall_ms = 0 for byte-stable output");
  app.add_option("--digits", cfg.digits, "Significant digits in printed values")->check(CLI::Range(5, 2000));

  long d = 1, r1 = 0, r2 = 0, alpha = 0, beta = 0, n = 1, weight = 12, terms = 10;
  std::string range = "1", named_range, weights = "12,16,18,20,22,24,26";
  double tol = 1e-6;
  std::optional<double> phys_tol;

  auto* verify = app.add_subcommand("verify", "Check an identity numerically");
  verify->require_subcommand(1);
  auto* theorem = verify->add_subcommand("theorem", "General identity for given d, r1, r2");
  theorem->add_option("--d", d, "Parameter d >= 1")->required();
  theorem->add_option("--r1", r1, "Even r1 >= 0")->required();
  theorem->add_option("--r2", r2, "Even r2 >= 0")->required();
  theorem->add_option("--n", range, "n or a..b (inclusive)");
  theorem->add_option("--tol", tol, "Relative tolerance");
  std::vector<std::pair<std::string, CLI::App*>> named;
  for (const auto& id : named_identities()) {
    auto* sub = verify->add_subcommand(id.name, "Printed identity '" + id.name + "'");
    sub->add_option("--n", named_range, "n or a..b (default " + std::to_string(id.n_first) + ".." + std::to_string(id.n_last) + ")");
    named.emplace_back(id.name, sub);
  }

  auto* physics = app.add_subcommand("physics", "Weight-12 cusp cancellation");
  physics->require_subcommand(1);
  auto* cancel = physics->add_subcommand("cancellation", "Evaluate the combination by both routes");
  cancel->add_option("--tol", phys_tol, "Vanishing tolerance (default 1e-40 at >= 256 bits, 1e-30 at >= 128)");

  auto* table = app.add_subcommand("table", "Print reference tables");
  table->require_subcommand(1);
  auto* tq = table->add_subcommand("q", "Coefficients of P and R in Q = P log((x+1)/(x-1)) + R");
  tq->add_option("--d", d)->required();
  tq->add_option("--alpha", alpha)->required();
  tq->add_option("--beta", beta)->required();
  auto* tz = table->add_subcommand("z", "Boundary term Z");
  tz->add_option("--d", d)->required();
  tz->add_option("--alpha", alpha)->required();
  tz->add_option("--beta", beta)->required();
  tz->add_option("--n", n);
  auto* te = table->add_subcommand("eigenforms", "Hecke eigenform coefficients");
  te->add_option("--weight", weight)->required();
  te->add_option("--terms", terms, "Number of coefficients");
  auto* tl = table->add_subcommand("lvalues", "Critical L-values");
  tl->add_option("--weight", weight)->required();

  auto* cache = app.add_subcommand("cache", "Eigenform cache (DIVISUM_CACHE_DIR)");
  cache->require_subcommand(1);
  auto* warm = cache->add_subcommand("warm", "Compute and store eigenforms");
  warm->add_option("--weights", weights, "Comma-separated weights");
  auto* clear = cache->add_subcommand("clear", "Delete cached eigenforms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (theorem->parsed()) return cmd_theorem(cfg, d, r1, r2, range, tol);
    for (const auto& [name, sub] : named)
      if (sub->parsed()) return cmd_named(cfg, name, named_range);
    if (cancel->parsed())
      return cmd_physics(cfg, phys_tol.value_or(cfg.precision_bits >= 256 ? 1e-40 : cfg.precision_bits >= 128 ? 1e-30 : 1e-15));
    if (tq->parsed()) return cmd_table_q(cfg, d, alpha, beta);
    if (tz->parsed()) return cmd_table_z(cfg, d, alpha, beta, n);
    if (te->parsed()) return cmd_table_eigenforms(cfg, weight, terms);
    if (tl->parsed()) return cmd_table_lvalues(cfg, weight);
    if (warm->parsed()) return cmd_cache_warm(cfg, weights);
    if (clear->parsed()) return cmd_cache_clear();
  } catch (const divisum::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
