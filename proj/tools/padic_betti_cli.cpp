// padic-betti: command line front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <iostream>
#include <sstream>

#include "padicbetti/approximation.hpp"
#include "padicbetti/atiyah.hpp"
#include "padicbetti/cyclic_covers.hpp"
#include "padicbetti/fab_torsion.hpp"
#include "padicbetti/groups.hpp"
#include "padicbetti/oracles.hpp"
#include "padicbetti/registry.hpp"
#include "padicbetti/serialize.hpp"

using namespace padicbetti;

namespace {

struct ComputeArgs {
  std::string space, tower = "trivial", field = "Q";
  unsigned long p = 0;
  int betti = -1, torsion = -1;
  bool euler = false, strict = false, json = false;
  unsigned precision = 4, window = kDefaultWindow, max_level = 4;
};

struct KnotArgs {
  std::vector<std::string> deltas;
  std::uint64_t m = 1;
  unsigned long p = 0;
  bool json = false;
};

struct FabArgs {
  std::string matrix;
  unsigned long p = 0;
  unsigned precision = 4, levels = 3, window = 2;
  bool json = false;
};

struct AtiyahArgs {
  std::string file, lambda, field;
  unsigned long p = 0;
  unsigned depth = 3, precision = 3, window = 2;
  bool minors = false, json = false;
};

struct FrattiniArgs {
  std::string group;
  unsigned long p = 0;
  bool json = false;
};

std::string limit_text(const PAdicApprox& a) {
  std::ostringstream out;
  if (a.is_converged())
    out << a.residue() << " mod " << a.prime() << "^" << a.precision();
  else
    out << to_string(a.status());
  return out.str();
}

std::string yes_no(const std::optional<bool>& b) { return !b ? "n/a" : (*b ? "yes" : "NO"); }

void emit(bool json, const Json& input, const Json& result, const Json& checks, const std::string& table) {
  if (json)
    std::cout << dump_canonical(Json{{"input", input}, {"result", result}, {"checks", checks}});
  else
    std::cout << table;
}

int run_compute(const ComputeArgs& a) {
  const int kinds = (a.betti >= 0) + (a.torsion >= 0) + a.euler;
  if (kinds != 1) throw std::invalid_argument("choose exactly one of --betti J, --torsion J, --euler");
  if (a.precision < 1) throw std::invalid_argument("--precision must be at least 1");
  ChainComplexSpec c = build_space(a.space);
  QuotientTower tower = build_tower(a.tower, c, a.p, a.max_level);
  if (tower.size() > a.max_level) tower = tower.truncated(a.max_level);
  check_tower(tower);

  InvariantRequest req;
  InvariantSequence s;
  if (a.euler) {
    req.kind = InvariantKind::euler;
    s = euler_padic(c, tower, a.precision, a.window);
  } else {
    req.kind = a.betti >= 0 ? InvariantKind::betti : InvariantKind::torsion;
    req.degree = static_cast<std::size_t>(a.betti >= 0 ? a.betti : a.torsion);
    req.field = FieldSpec::parse(a.field);
    if (req.field.characteristic == tower.p) throw std::invalid_argument("field characteristic must differ from p");
    s = approximate(c, tower, req, a.precision, a.window);
  }

  Json input{{"space", a.space},       {"tower", a.tower},         {"p", tower.p},
             {"precision", a.precision}, {"window", a.window},     {"max_level", a.max_level}};
  Json result = to_json(s);
  std::ostringstream table;
  table << "space " << c.name << ", tower " << tower.name << ", p = " << tower.p << "\n";
  table << "  n  |Q_n|  value\n";
  for (const auto& l : s.levels) table << "  " << l.n << "  " << l.order << "  " << l.value << "\n";
  table << "limit: " << limit_text(s.limit) << "\n";
  table << "monotone: " << yes_no(s.monotone) << ", euler: " << yes_no(s.euler) << "\n";
  emit(a.json, input, result, result["checks"], table.str());
  if (a.strict && s.limit.status() == LimitStatus::growth_detected) return 2;
  return 0;
}

int run_knot(const KnotArgs& a) {
  require_prime(a.p);
  if (a.m == 0 || a.m % a.p == 0) throw std::invalid_argument("--m must be positive and coprime to p");
  std::vector<IntPoly> polys;
  Json per = Json::array();
  bool normalized = true;
  std::ostringstream table;
  for (const auto& text : a.deltas) {
    LaurentPoly lp = LaurentPoly::parse(text, 1, 0);
    if (lp.is_zero()) throw std::invalid_argument("--delta '" + text + "' is zero");
    // clear negative powers of t; roots of unity are unaffected
    int low = lp.terms().begin()->first[0];
    std::vector<Integer> coeffs;
    for (const auto& [e, coef] : lp.terms()) {
      std::size_t k = static_cast<std::size_t>(e[0] - low);
      if (coeffs.size() <= k) coeffs.resize(k + 1, 0);
      coeffs[k] = coef;
    }
    IntPoly f(coeffs);
    Integer at_one = abs(f.evaluate(1));
    normalized = normalized && at_one == 1;
    RootCountResult r = count_roots_mu(f, a.m, a.p);
    Json jr = to_json(r);
    jr["delta"] = f.to_string();
    jr["abs_delta_at_1"] = to_json(at_one);
    per.push_back(jr);
    table << "  " << f.to_string() << ": " << r.count << " roots in mu(" << a.m << "*" << a.p << "^inf), stable from n = "
          << r.stabilized_at << "\n";
    polys.push_back(std::move(f));
  }
  Integer b1 = knot_b1(polys, a.m, a.p);
  table << "b1 = " << b1 << "\n";
  if (!normalized) table << "note: some |Delta(1)| != 1\n";
  emit(a.json, Json{{"delta", a.deltas}, {"m", a.m}, {"p", a.p}}, Json{{"b1", to_json(b1)}, {"factors", per}},
       Json{{"abs_delta_at_1_is_1", normalized}}, table.str());
  return 0;
}

int run_fab(const FabArgs& a) {
  FabGroupSpec spec = make_fab_spec(parse_int_matrix(a.matrix), a.p);
  PAdicApprox closed = torsion_closed_form(spec, a.precision);
  InvariantSequence seq = torsion_approx(spec, a.levels, a.precision, a.window);
  const int eps = epsilon_sign(spec.a, spec.p);
  Json levels = Json::array();
  bool signs_ok = true;
  std::ostringstream table;
  table << "  n  |det(A^(p^n) - I)|_(p')  sign\n";
  for (unsigned n = 0; n <= a.levels; ++n) {
    Integer det = det_power_minus_identity(spec.a, spec.p, n);
    int sign = sgn(det);
    // the sign is only constrained once p^n is at least the exponent used by epsilon
    bool ok = (n == 0 && spec.p == 2) || sign == eps;
    signs_ok = signs_ok && ok;
    levels.push_back(Json{{"n", n}, {"value", to_json(abs(p_prime_part(det, spec.p)))}, {"sign", sign}, {"sign_matches_epsilon", ok}});
    table << "  " << n << "  " << abs(p_prime_part(det, spec.p)) << "  " << (sign > 0 ? "+" : "-") << "\n";
  }
  Json residuals = Json::array();
  bool log_ok = true;
  for (unsigned n = 1; n <= std::max(a.levels, 1u); ++n) {
    LogLimitResidual r = log_limit_check(spec.a, spec.p, n, a.precision + n + 2);
    log_ok = log_ok && r.valuation >= n;
    residuals.push_back(Json{{"n", n}, {"valuation", r.valuation}, {"precision", r.precision}, {"exact_zero", r.exact_zero}});
  }
  const bool agree = seq.limit.is_converged() && closed.is_converged() && seq.limit.agrees_with(closed) &&
                     seq.limit.precision() >= a.precision;
  table << "approximation limit: " << limit_text(seq.limit) << "\n";
  table << "closed form (eps * det(log A)_(p')): " << limit_text(closed) << ", eps = " << eps << "\n";
  table << "agreement mod " << spec.p << "^" << a.precision << ": " << (agree ? "yes" : "NO") << "\n";
  table << "signs: " << (signs_ok ? "yes" : "NO") << ", log limit: " << (log_ok ? "yes" : "NO") << "\n";
  Json result{{"levels", levels},  {"approximation", to_json(seq)}, {"closed_form", to_json(closed)},
              {"epsilon", eps},     {"log_limit", residuals}};
  emit(a.json, Json{{"matrix", a.matrix}, {"p", a.p}, {"precision", a.precision}, {"levels", a.levels}}, result,
       Json{{"dual_route_agree", agree}, {"signs_consistent", signs_ok}, {"log_limit", log_ok}}, table.str());
  return agree && signs_ok && log_ok ? 0 : 1;
}

int run_atiyah(const AtiyahArgs& a) {
  Json j = load_json_file(a.file);
  if (a.p != 0) j["p"] = a.p;
  if (!a.field.empty()) j["field"] = a.field;
  if (!a.lambda.empty()) {
    // "l11 l12; l21 l22": one row of d integers per extra variable
    Json rows = Json::array();
    std::stringstream ss(a.lambda);
    std::string row;
    while (std::getline(ss, row, ';')) {
      Json r = Json::array();
      std::stringstream rs(row);
      std::string tok;
      while (rs >> tok) r.push_back(to_json(parse_int_expression(tok)));
      rows.push_back(r);
    }
    j["lambda"] = rows;
  }
  AtiyahInstance inst = atiyah_from_json(j);
  AtiyahResult r = atiyah_kernel_dim(inst, a.depth, a.precision, a.window);
  std::optional<bool> minors;
  if (a.minors) minors = minors_formula_check(inst, a.depth);
  std::ostringstream table;
  table << inst.describe() << "\n";
  for (std::size_t i = 0; i < r.dims.size(); ++i) table << "  N = " << i + 1 << ": dim ker = " << r.dims[i] << "\n";
  table << "limit: " << limit_text(r.limit) << "\n";
  table << "monotone: " << (r.monotone ? "yes" : "NO") << ", eventually constant: " << (r.eventually_constant ? "yes" : "no")
        << ", integral: " << (r.integral ? "yes" : "no") << ", minors formula: " << yes_no(minors) << "\n";
  Json checks{{"monotone", r.monotone}, {"eventually_constant", r.eventually_constant}, {"integral", r.integral},
              {"minors_formula", minors ? Json(*minors) : Json(nullptr)}};
  emit(a.json, Json{{"file", a.file}, {"depth", a.depth}, {"p", inst.p}, {"field", inst.field.to_string()}},
       Json{{"dims", r.dims}, {"limit", to_json(r.limit)}}, checks, table.str());
  return 0;
}

unsigned long smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return q;
  return n;
}

int run_frattini(const FrattiniArgs& a) {
  auto g = small_group(a.group);
  unsigned long p = a.p != 0 ? a.p : smallest_prime_factor(g->order());
  if (g->order() == 1) throw std::invalid_argument("trivial group: pass --p");
  FrattiniRuleReport rep = frattini_rules_check(g, p, a.group);
  QuotientTower t = tower_frattini(greedy_generated_quotient(g, g->order()), p);
  std::vector<std::uint64_t> orders;
  for (const auto& q : t.levels) orders.push_back(q.order());
  std::ostringstream table;
  table << a.group << " (order " << g->order() << "): Frattini length " << rep.length << "\n";
  table << "  |G / Phi^n|:";
  for (auto o : orders) table << " " << o;
  table << "\n  quotient rule over " << rep.normal_checked << " normal subgroups: " << (rep.quotient_rule ? "yes" : "NO")
        << "\n  subgroup rule over " << rep.subgroups_checked << " subgroups: " << (rep.subgroup_rule ? "yes" : "NO") << "\n";
  for (const auto& f : rep.failures) table << "  failure: " << f << "\n";
  emit(a.json, Json{{"group", a.group}, {"p", p}},
       Json{{"length", rep.length}, {"order", g->order()}, {"series_orders", orders}},
       Json{{"quotient_rule", rep.quotient_rule}, {"subgroup_rule", rep.subgroup_rule},
            {"normal_subgroups_checked", rep.normal_checked}, {"subgroups_checked", rep.subgroups_checked},
            {"failures", rep.failures}},
       table.str());
  return rep.ok() ? 0 : 1;
}

int run_self_check() {
  auto reports = run_oracle_suite();
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // quantity -> (agree, total)
  for (const auto& r : reports) {
    auto& [ok, total] = tally[r.quantity];
    ++total;
    if (r.agree) ++ok;
    else std::cout << "MISMATCH " << r.quantity << ": main " << r.main_value << ", oracle " << r.oracle_value << "\n";
  }
  bool all = true;
  for (const auto& [q, t] : tally) {
    std::cout << q << ": " << t.first << "/" << t.second << " agree\n";
    all = all && t.first == t.second;
  }
  std::cout << (all ? "self-check passed" : "self-check FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic Betti numbers and torsion by exact approximation along towers of finite quotients"};
  bool self_check = false;
  app.add_flag("--self-check", self_check, "run the randomized oracle suite and exit");

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "per-level invariants of a space along a tower and their p-adic limit");
  compute->add_option("--space", ca.space, "space, e.g. torus:2, surface:2, free:2, wedge(circle,torus:2)")->required();
  compute->add_option("--tower", ca.tower, "tower, e.g. abelian:p=3,d=2 or frattini:C4^2,p=2")->capture_default_str();
  compute->add_option("--p", ca.p, "default prime for the tower");
  compute->add_option("--betti", ca.betti, "Betti number in degree J");
  compute->add_option("--torsion", ca.torsion, "torsion cardinality in degree J");
  compute->add_flag("--euler", ca.euler, "Euler characteristic");
  compute->add_option("--field", ca.field, "Q or F<l>")->capture_default_str();
  compute->add_option("--precision", ca.precision, "target p-adic precision")->capture_default_str();
  compute->add_option("--window", ca.window, "levels that must agree")->capture_default_str();
  compute->add_option("--max-level", ca.max_level, "tower depth")->capture_default_str();
  compute->add_flag("--json", ca.json, "JSON output");
  compute->add_flag("--strict", ca.strict, "exit 2 when growth is detected");

  KnotArgs ka;
  auto* knot = app.add_subcommand("knot", "b1 of the cyclic covers of a knot complement from Alexander polynomials");
  knot->add_option("--delta", ka.deltas, "Alexander polynomial, e.g. t^2-t+1 (repeatable)")->required();
  knot->add_option("--m", ka.m, "prime-to-p part of the cover degree")->capture_default_str();
  knot->add_option("--p", ka.p, "prime")->required();
  knot->add_flag("--json", ka.json, "JSON output");

  FabArgs fa;
  auto* fab = app.add_subcommand("fab-torsion", "torsion of Z^N x|_A Z by level approximation and by the log formula");
  fab->add_option("--matrix", fa.matrix, "A as \"a,b;c,d\"")->required();
  fab->add_option("--p", fa.p, "prime")->required();
  fab->add_option("--precision", fa.precision, "p-adic precision")->capture_default_str();
  fab->add_option("--levels", fa.levels, "largest level n")->capture_default_str();
  fab->add_option("--window", fa.window, "levels that must agree")->capture_default_str();
  fab->add_flag("--json", fa.json, "JSON output");

  AtiyahArgs aa;
  auto* atiyah = app.add_subcommand("atiyah", "kernel dimensions of a Laurent matrix along (Z/p^N)^d");
  atiyah->add_option("--matrix", aa.file, "instance file (JSON)")->required();
  atiyah->add_option("--lambda", aa.lambda, "rows \"a b; c d\" for the extra variables");
  atiyah->add_option("--p", aa.p, "prime (overrides the file)");
  atiyah->add_option("--field", aa.field, "Q or F<l> (overrides the file)");
  atiyah->add_option("--depth", aa.depth, "largest level N")->capture_default_str();
  atiyah->add_option("--precision", aa.precision, "p-adic precision")->capture_default_str();
  atiyah->add_option("--window", aa.window, "levels that must agree")->capture_default_str();
  atiyah->add_flag("--minors", aa.minors, "also compare with the minor-ideal count");
  atiyah->add_flag("--json", aa.json, "JSON output");

  FrattiniArgs ra;
  auto* frattini = app.add_subcommand("frattini", "Frattini length and the length rules for a small group");
  frattini->add_option("--group", ra.group, "C8, C4^2, C2xC4, D8, Q8, Heis3, ...")->required();
  frattini->add_option("--p", ra.p, "prime (default: smallest prime divisor of the order)");
  frattini->add_flag("--json", ra.json, "JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (self_check) return run_self_check();
    if (*compute) return run_compute(ca);
    if (*knot) return run_knot(ka);
    if (*fab) return run_fab(fa);
    if (*atiyah) return run_atiyah(aa);
    if (*frattini) return run_frattini(ra);
    std::cout << app.help();
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
