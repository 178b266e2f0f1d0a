#include "padicbetti/atiyah.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "padicbetti/characters.hpp"

namespace padicbetti {

namespace {

// q = l^r with l prime, or nullopt
std::optional<std::uint64_t> prime_base(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  auto f = prime_factors(q);
  if (f.size() != 1) return std::nullopt;
  return f[0];
}

}  // namespace

double CConstant::value() const {
  if (q == 0) return 1.0;
  return static_cast<double>(p) * std::log(static_cast<double>(q)) / std::log(static_cast<double>(p));
}

bool CConstant::bound_holds(const Integer& diff, unsigned n) const {
  // diff >= p^{n+1-c}  <=>  diff * p^c >= p^{n+1}, with p^c = p (Q) or q^p (F_q)
  const Integer rhs = ipow(p, n + 1);
  if (q == 0) return diff * p >= rhs;
  return diff * ipow(Integer(static_cast<unsigned long>(q)), p) >= rhs;
}

std::string CConstant::to_string() const {
  if (q == 0) return "1";
  std::ostringstream os;
  os << p << "*log_" << p << "(" << q << ")";
  return os.str();
}

CConstant c_constant(std::uint64_t q, unsigned long p) {
  require_prime(p);
  if (q == 0) return {p, 0};
  auto base = prime_base(q);
  if (!base) throw std::invalid_argument("field size must be a prime power");
  // F_p itself is excluded; other powers of p only feed the formula
  if (q == p) throw std::domain_error("coefficient characteristic must differ from p");
  return {p, q};
}

CConstant c_constant(FieldSpec k, unsigned long p) { return c_constant(k.characteristic, p); }

std::string_view to_string(GrowthMode mode) {
  switch (mode) {
    case GrowthMode::stabilized: return "stabilized";
    case GrowthMode::fast_growth: return "fast-growth";
    case GrowthMode::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

GrowthVerdict dichotomy_check(const InvariantSequence& seq, const Integer& b_limit, const CConstant& c,
                              unsigned window) {
  GrowthVerdict v;
  bool all_hold = !seq.levels.empty();
  for (const auto& l : seq.levels) {
    Integer diff = l.value - b_limit;
    bool holds = diff > 0 && c.bound_holds(diff, l.n);
    v.bound_checked.push_back({l.n, l.value, holds});
    all_hold = all_hold && holds;
  }
  window = std::max(window, 2u);
  if (seq.levels.size() < window) return v;
  bool stable = true;
  for (std::size_t i = seq.levels.size() - window; i < seq.levels.size(); ++i)
    stable = stable && seq.levels[i].value == b_limit;
  if (stable) {
    v.mode = GrowthMode::stabilized;
    v.stabilized_value = b_limit;
  } else if (all_hold) {
    v.mode = GrowthMode::fast_growth;
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<GroupElem> everything(const FiniteGroup& g) {
  std::vector<GroupElem> v(g.order());
  for (GroupElem x = 0; x < g.order(); ++x) v[x] = x;
  return v;
}

}  // namespace

FrattiniRuleReport frattini_rules_check(std::shared_ptr<const FiniteGroup> g, unsigned long p,
                                         const std::string& name) {
  FrattiniRuleReport r;
  r.group = name;
  // generic series computation, no abelian shortcut
  r.length = frattini_length_of_subgroup(*g, everything(*g), p);
  for (const auto& h : all_subgroups(*g)) {
    ++r.subgroups_checked;
    const unsigned fh = frattini_length_of_subgroup(*g, h, p);
    const unsigned idx = vp(Integer(static_cast<unsigned long>(g->order() / h.size())), p);
    if (r.length > fh + idx) {
      r.subgroup_rule = false;
      r.failures.push_back("subgroup of order " + std::to_string(h.size()) + " breaks F(G) <= F(H) + v_p|G:H|");
    }
    if (!is_normal(*g, h)) continue;
    ++r.normal_checked;
    auto quot = quotient_group(g, h);
    const unsigned fq = frattini_length_of_subgroup(*quot.group, everything(*quot.group), p);
    if (r.length > fh + fq) {
      r.quotient_rule = false;
      r.failures.push_back("normal subgroup of order " + std::to_string(h.size()) + " breaks F(G) <= F(N) + F(G/N)");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

void AtiyahInstance::validate() const {
  require_prime(p);
  if (field.characteristic == p) throw std::domain_error("coefficient characteristic must differ from p");
  if (d == 0) throw std::invalid_argument("atiyah instance needs d >= 1");
  if (a.size() != rows) throw std::invalid_argument("atiyah matrix: row count mismatch");
  for (const auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("atiyah matrix: column count mismatch");
    for (const auto& x : row)
      if (x.vars() != d + s) throw std::invalid_argument("atiyah matrix entries need d + s variables");
  }
  if (lambda.size() != s) throw std::invalid_argument("lambda needs s rows");
  for (const auto& row : lambda)
    if (row.size() != d) throw std::invalid_argument("lambda rows need d entries");
}

std::string AtiyahInstance::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols; ++j) os << (j ? ", " : "") << a[i][j].to_string();
  }
  os << "] d=" << d << " s=" << s;
  if (s > 0) {
    os << " lambda=";
    for (std::size_t i = 0; i < s; ++i) {
      os << (i ? ";" : "");
      for (std::size_t j = 0; j < d; ++j) os << (j ? "," : "") << lambda[i][j].get_str();
    }
  }
  os << " over " << field.to_string() << " p=" << p;
  return os.str();
}

std::vector<GroupElem> atiyah_images(const AtiyahInstance& inst, const AbelianGroup& level, unsigned N) {
  const Integer mod = ipow(inst.p, N);
  std::vector<GroupElem> out;
  for (std::size_t i = 0; i < inst.d; ++i) {
    std::vector<std::uint64_t> c(inst.d, 0);
    c[i] = 1 % mod.get_ui();
    out.push_back(level.index(c));
  }
  for (std::size_t i = 0; i < inst.s; ++i) {
    std::vector<std::uint64_t> c(inst.d);
    for (std::size_t j = 0; j < inst.d; ++j) c[j] = mod_floor(inst.lambda[i][j], mod).get_ui();
    out.push_back(level.index(c));
  }
  return out;
}

namespace {

AbelianGroup level_group(const AtiyahInstance& inst, unsigned N) {
  return AbelianGroup(std::vector<std::uint64_t>(inst.d, ipow(inst.p, N).get_ui()));
}

GroupElem monomial_image(const LaurentPoly::Exponent& e, const AbelianGroup& g, const std::vector<GroupElem>& images) {
  GroupElem x = 0;
  for (std::size_t v = 0; v < e.size(); ++v) {
    GroupElem y = e[v] >= 0 ? images[v] : g.inverse(images[v]);
    x = g.multiply(x, g.power(y, static_cast<std::uint64_t>(std::abs(e[v]))));
  }
  return x;
}

}  // namespace

std::uint64_t atiyah_level_dim(const AtiyahInstance& inst, unsigned N) {
  inst.validate();
  if (N == 0) throw std::invalid_argument("levels start at 1");
  const AbelianGroup g = level_group(inst, N);
  const auto images = atiyah_images(inst, g, N);
  const std::uint64_t n = g.order();
  const std::uint64_t ell = inst.field.characteristic;
  // P(h)[x, x h] = 1 blockwise
  auto fill = [&](auto&& add) {
    for (std::size_t i = 0; i < inst.rows; ++i)
      for (std::size_t m = 0; m < inst.cols; ++m)
        for (const auto& [e, c] : inst.a[i][m].terms()) {
          GroupElem h = monomial_image(e, g, images);
          for (GroupElem x = 0; x < n; ++x) add(i * n + x, m * n + g.multiply(x, h), c);
        }
  };
  std::size_t rank = 0;
  if (ell == 0) {
    IntMatrix mat(inst.rows * n, inst.cols * n);
    fill([&](std::size_t r, std::size_t c, const Integer& v) { mat(r, c) += v; });
    rank = rank_q(std::move(mat));
  } else {
    FpMatrix mat(ell, inst.rows * n, inst.cols * n);
    fill([&](std::size_t r, std::size_t c, const Integer& v) {
      mat.add(r, c, static_cast<std::int64_t>(mod_floor(v, Integer(static_cast<unsigned long>(ell))).get_ui()));
    });
    rank = rank_fp(std::move(mat));
  }
  // r(A): C(Q)^cols -> C(Q)^rows
  return inst.cols * n - rank;
}

AtiyahResult atiyah_kernel_dim(const AtiyahInstance& inst, unsigned depth, unsigned precision, unsigned window) {
  inst.validate();
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  AtiyahResult r;
  std::vector<Integer> seq;
  for (unsigned N = 1; N <= depth; ++N) {
    r.dims.push_back(atiyah_level_dim(inst, N));
    seq.push_back(Integer(static_cast<unsigned long>(r.dims.back())));
  }
  for (std::size_t i = 1; i < r.dims.size(); ++i) r.monotone = r.monotone && r.dims[i] >= r.dims[i - 1];
  r.limit = padic_limit(seq, inst.p, precision, window);
  if (r.dims.size() >= window) {
    r.eventually_constant = std::all_of(r.dims.end() - window, r.dims.end(),
                                        [&](std::uint64_t x) { return x == r.dims.back(); });
  }
  r.integral = r.limit.is_converged() && r.eventually_constant;
  return r;
}

std::uint64_t atiyah_minors_dim(const AtiyahInstance& inst, unsigned N) {
  inst.validate();
  const AbelianGroup g = level_group(inst, N);
  const auto images = atiyah_images(inst, g, N);
  CharacterTable table(g, inst.field.characteristic);
  auto minors = all_minors(inst.a);
  std::vector<std::vector<CharacterTable::Reduced>> reduced(minors.size());
  for (std::size_t i = 0; i < minors.size(); ++i)
    for (const auto& m : minors[i]) {
      auto red = table.reduce(m, images);
      if (!red.is_zero()) reduced[i].push_back(std::move(red));
    }
  std::uint64_t total = 0;
  table.for_each_orbit([&](const std::vector<std::uint64_t>& chi, std::uint64_t weight) {
    // i x i minors all vanish for i > rank at this character
    std::size_t vanishing = 0;
    for (std::size_t i = 1; i <= inst.cols; ++i) {
      bool all_zero = true;
      if (i <= reduced.size())
        for (const auto& m : reduced[i - 1])
          if (!table.vanishes(m, chi)) {
            all_zero = false;
            break;
          }
      if (all_zero) ++vanishing;
    }
    total += weight * vanishing;
  });
  return total;
}

bool minors_formula_check(const AtiyahInstance& inst, unsigned depth) {
  for (unsigned N = 1; N <= depth; ++N)
    if (atiyah_minors_dim(inst, N) != atiyah_level_dim(inst, N)) return false;
  return true;
}

AtiyahInstance random_atiyah_instance(std::uint64_t seed, std::size_t rows, std::size_t cols, std::size_t d,
                                      std::size_t s, unsigned long p, FieldSpec k, unsigned depth,
                                      unsigned max_degree, unsigned terms) {
  std::mt19937_64 rng(seed);
  const std::size_t vars = d + s;
  const std::uint64_t ell = k.characteristic;
  AtiyahInstance inst;
  inst.rows = rows;
  inst.cols = cols;
  inst.d = d;
  inst.s = s;
  inst.p = p;
  inst.field = k;
  auto coeff = [&]() -> Integer {
    if (ell != 0) return static_cast<unsigned long>(1 + rng() % (ell - 1));
    long c = static_cast<long>(rng() % 6) - 3;
    return c >= 0 ? c + 1 : c;
  };
  inst.a.assign(rows, std::vector<LaurentPoly>(cols, LaurentPoly(vars, ell)));
  for (auto& row : inst.a)
    for (auto& x : row) {
      const unsigned count = 1 + static_cast<unsigned>(rng() % terms);
      for (unsigned t = 0; t < count; ++t) {
        LaurentPoly::Exponent e(vars, 0);
        for (;;) {
          unsigned total = 0;
          for (auto& ev : e) {
            ev = static_cast<int>(rng() % (max_degree + 1));
            total += static_cast<unsigned>(ev);
          }
          if (total <= max_degree) break;
        }
        x.add_term(e, coeff());
      }
    }
  const Integer mod = ipow(p, depth);
  inst.lambda.assign(s, std::vector<Integer>(d));
  for (auto& row : inst.lambda)
    for (auto& l : row) l = mod_floor(Integer(static_cast<unsigned long>(rng() % mod.get_ui())), mod);
  return inst;
}

}  // namespace padicbetti
