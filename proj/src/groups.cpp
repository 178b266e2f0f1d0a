#include "padicbetti/groups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "padicbetti/padic.hpp"

namespace padicbetti {

GroupElem FiniteGroup::power(GroupElem a, std::uint64_t e) const {
  GroupElem result = 0;
  GroupElem base = a;
  while (e > 0) {
    if (e & 1U) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1U;
  }
  return result;
}

GroupElem FiniteGroup::commutator(GroupElem a, GroupElem b) const {
  return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
}

std::uint64_t FiniteGroup::element_order(GroupElem a) const {
  std::uint64_t k = 1;
  GroupElem x = a;
  while (x != 0) {
    x = multiply(x, a);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------

AbelianGroup::AbelianGroup(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)), order_(1) {
  for (auto m : moduli_) {
    if (m == 0) throw std::invalid_argument("AbelianGroup: modulus must be positive");
    if (order_ > (1ULL << 40) / m) throw std::invalid_argument("AbelianGroup: order too large");
    order_ *= m;
  }
}

GroupElem AbelianGroup::multiply(GroupElem a, GroupElem b) const {
  GroupElem out = 0;
  GroupElem scale = 1;
  for (auto m : moduli_) {
    std::uint64_t x = a % m;
    std::uint64_t y = b % m;
    a /= m;
    b /= m;
    std::uint64_t s = x + y;
    if (s >= m) s -= m;
    out += s * scale;
    scale *= m;
  }
  return out;
}

GroupElem AbelianGroup::inverse(GroupElem a) const {
  GroupElem out = 0;
  GroupElem scale = 1;
  for (auto m : moduli_) {
    std::uint64_t x = a % m;
    a /= m;
    out += (x == 0 ? 0 : m - x) * scale;
    scale *= m;
  }
  return out;
}

std::string AbelianGroup::describe() const {
  if (moduli_.empty()) return "1";
  std::string s;
  for (auto m : moduli_) {
    if (!s.empty()) s += " x ";
    s += "Z/" + std::to_string(m);
  }
  return s;
}

std::vector<std::uint64_t> AbelianGroup::coords(GroupElem a) const {
  std::vector<std::uint64_t> c(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    c[i] = a % moduli_[i];
    a /= moduli_[i];
  }
  return c;
}

GroupElem AbelianGroup::index(const std::vector<std::uint64_t>& coords) const {
  if (coords.size() != moduli_.size()) throw std::invalid_argument("AbelianGroup: coordinate count mismatch");
  GroupElem out = 0;
  for (std::size_t i = moduli_.size(); i-- > 0;) out = out * moduli_[i] + coords[i] % moduli_[i];
  return out;
}

GroupElem AbelianGroup::from_integers(const std::vector<Integer>& coords) const {
  if (coords.size() != moduli_.size()) throw std::invalid_argument("AbelianGroup: coordinate count mismatch");
  std::vector<std::uint64_t> c(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    c[i] = mod_floor(coords[i], Integer(static_cast<unsigned long>(moduli_[i]))).get_ui();
  }
  return index(c);
}

std::uint64_t AbelianGroup::exponent() const {
  std::uint64_t e = 1;
  for (auto m : moduli_) e = e / gcd_u64(e, m) * m;
  return e;
}

// ---------------------------------------------------------------------------

SemidirectGroup::SemidirectGroup(const IntMatrix& a, std::uint64_t q) : n_(a.rows()), q_(q) {
  if (!a.is_square()) throw std::invalid_argument("SemidirectGroup: square matrix required");
  if (q < 1) throw std::invalid_argument("SemidirectGroup: modulus must be positive");
  base_order_ = 1;
  for (std::size_t i = 0; i < n_; ++i) base_order_ *= q;
  order_ = base_order_ * q;
  Integer qq(static_cast<unsigned long>(q));
  std::vector<std::uint64_t> am(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) am[i * n_ + j] = mod_floor(a(i, j), qq).get_ui();
  std::vector<std::uint64_t> cur(n_ * n_, 0);
  for (std::size_t i = 0; i < n_; ++i) cur[i * n_ + i] = 1 % q;
  for (std::uint64_t k = 0; k < q; ++k) {
    powers_.push_back(cur);
    std::vector<std::uint64_t> next(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t l = 0; l < n_; ++l)
        for (std::size_t j = 0; j < n_; ++j) next[i * n_ + j] = (next[i * n_ + j] + cur[i * n_ + l] * am[l * n_ + j]) % q;
    cur = std::move(next);
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (cur[i * n_ + j] != (i == j ? 1 % q : 0)) {
        throw std::invalid_argument("SemidirectGroup: A^q is not the identity mod q");
      }
    }
}

GroupElem SemidirectGroup::make(const std::vector<std::uint64_t>& v, std::uint64_t i) const {
  GroupElem x = 0;
  for (std::size_t k = n_; k-- > 0;) x = x * q_ + v[k] % q_;
  return x + base_order_ * (i % q_);
}

std::pair<std::vector<std::uint64_t>, std::uint64_t> SemidirectGroup::split(GroupElem a) const {
  std::vector<std::uint64_t> v(n_);
  std::uint64_t i = a / base_order_;
  a %= base_order_;
  for (std::size_t k = 0; k < n_; ++k) {
    v[k] = a % q_;
    a /= q_;
  }
  return {v, i};
}

GroupElem SemidirectGroup::multiply(GroupElem a, GroupElem b) const {
  auto [v, i] = split(a);
  auto [w, j] = split(b);
  const auto& ai = powers_[i];
  std::vector<std::uint64_t> u(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    std::uint64_t s = v[r];
    for (std::size_t c = 0; c < n_; ++c) s = (s + ai[r * n_ + c] * w[c]) % q_;
    u[r] = s;
  }
  return make(u, (i + j) % q_);
}

GroupElem SemidirectGroup::inverse(GroupElem a) const {
  auto [v, i] = split(a);
  std::uint64_t ii = (q_ - i) % q_;
  const auto& ai = powers_[ii];
  std::vector<std::uint64_t> u(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < n_; ++c) s = (s + ai[r * n_ + c] * v[c]) % q_;
    u[r] = (q_ - s) % q_;
  }
  return make(u, ii);
}

std::string SemidirectGroup::describe() const {
  return "(Z/" + std::to_string(q_) + ")^" + std::to_string(n_) + " x| Z/" + std::to_string(q_);
}

// ---------------------------------------------------------------------------

TableGroup::TableGroup(std::uint64_t order, std::vector<std::uint32_t> table, std::string name)
    : order_(order), table_(std::move(table)), name_(std::move(name)) {
  if (order == 0 || table_.size() != order * order) throw std::invalid_argument("TableGroup: table size mismatch");
  inverse_.assign(order, 0);
  for (std::uint64_t a = 0; a < order; ++a) {
    if (table_[a] != a || table_[a * order] != a) throw std::invalid_argument("TableGroup: 0 is not the identity");
    std::vector<bool> seen(order, false);
    bool found_inverse = false;
    for (std::uint64_t b = 0; b < order; ++b) {
      std::uint32_t c = table_[a * order + b];
      if (c >= order || seen[c]) throw std::invalid_argument("TableGroup: rows are not permutations");
      seen[c] = true;
      if (c == 0) {
        inverse_[a] = static_cast<std::uint32_t>(b);
        found_inverse = true;
      }
    }
    if (!found_inverse) throw std::invalid_argument("TableGroup: missing inverse");
  }
  if (order <= 256) {
    for (std::uint64_t a = 0; a < order; ++a)
      for (std::uint64_t b = 0; b < order; ++b) {
        std::uint64_t ab = table_[a * order + b];
        for (std::uint64_t c = 0; c < order; ++c) {
          if (table_[ab * order + c] != table_[a * order + table_[b * order + c]]) {
            throw std::invalid_argument("TableGroup: multiplication is not associative");
          }
        }
      }
  }
}

std::shared_ptr<TableGroup> TableGroup::from_function(std::uint64_t order,
                                                      const std::function<GroupElem(GroupElem, GroupElem)>& mul,
                                                      std::string name) {
  std::vector<std::uint32_t> table(order * order);
  for (std::uint64_t a = 0; a < order; ++a)
    for (std::uint64_t b = 0; b < order; ++b) table[a * order + b] = static_cast<std::uint32_t>(mul(a, b));
  return std::make_shared<TableGroup>(order, std::move(table), std::move(name));
}

// ---------------------------------------------------------------------------

DirectProductGroup::DirectProductGroup(std::shared_ptr<const FiniteGroup> g, std::shared_ptr<const FiniteGroup> h)
    : g_(std::move(g)), h_(std::move(h)) {}

GroupElem DirectProductGroup::multiply(GroupElem a, GroupElem b) const {
  const auto n = g_->order();
  return g_->multiply(a % n, b % n) + n * h_->multiply(a / n, b / n);
}

GroupElem DirectProductGroup::inverse(GroupElem a) const {
  const auto n = g_->order();
  return g_->inverse(a % n) + n * h_->inverse(a / n);
}

std::shared_ptr<const FiniteGroup> direct_product(std::shared_ptr<const FiniteGroup> g,
                                                  std::shared_ptr<const FiniteGroup> h) {
  const auto* ag = g->as_abelian();
  const auto* ah = h->as_abelian();
  if (ag != nullptr && ah != nullptr) {
    std::vector<std::uint64_t> moduli = ag->moduli();
    moduli.insert(moduli.end(), ah->moduli().begin(), ah->moduli().end());
    return std::make_shared<AbelianGroup>(std::move(moduli));
  }
  return std::make_shared<DirectProductGroup>(std::move(g), std::move(h));
}

// ---------------------------------------------------------------------------

std::vector<GroupElem> FiniteQuotient::right_multiplication(GroupElem g) const {
  std::vector<GroupElem> out(order());
  for (GroupElem x = 0; x < order(); ++x) out[x] = group->multiply(x, g);
  return out;
}

std::uint64_t FiniteQuotient::generated_order() const {
  const std::uint64_t n = order();
  std::vector<bool> seen(n, false);
  std::vector<GroupElem> stack{0};
  seen[0] = true;
  std::uint64_t count = 1;
  while (!stack.empty()) {
    GroupElem x = stack.back();
    stack.pop_back();
    for (GroupElem g : images) {
      GroupElem y = group->multiply(x, g);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count;
}

FiniteQuotient trivial_quotient(std::size_t generators) {
  return FiniteQuotient{std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{}),
                        std::vector<GroupElem>(generators, 0)};
}

QuotientTower QuotientTower::truncated(std::size_t count) const {
  QuotientTower t = *this;
  count = std::min(count, levels.size());
  t.levels.resize(count);
  t.level_numbers.resize(count);
  return t;
}

QuotientTower QuotientTower::dropped(std::size_t count) const {
  QuotientTower t = *this;
  count = std::min(count, levels.size());
  t.levels.erase(t.levels.begin(), t.levels.begin() + static_cast<long>(count));
  t.level_numbers.erase(t.level_numbers.begin(), t.level_numbers.begin() + static_cast<long>(count));
  auto inner = project;
  t.project = [inner, count](std::size_t k, GroupElem x) { return inner(k + count, x); };
  if (p_kernel_from) t.p_kernel_from = *p_kernel_from > count ? *p_kernel_from - count : 0;
  return t;
}

void check_tower(const QuotientTower& tower) {
  for (std::size_t k = 0; k < tower.levels.size(); ++k) {
    const auto& q = tower.levels[k];
    if (!q.is_dense()) {
      throw std::invalid_argument("tower '" + tower.name + "': generator images do not generate level " +
                                  std::to_string(k));
    }
    if (k + 1 == tower.levels.size()) break;
    const auto& up = tower.levels[k + 1];
    if (up.images.size() != q.images.size()) throw std::invalid_argument("tower: generator count changes");
    if (up.order() % q.order() != 0) throw std::invalid_argument("tower: level orders are not divisible");
    for (std::size_t i = 0; i < q.images.size(); ++i) {
      if (tower.project(k, up.images[i]) != q.images[i]) {
        throw std::invalid_argument("tower '" + tower.name + "': projection does not map generator images");
      }
    }
    const std::uint64_t n = up.order();
    auto check_pair = [&](GroupElem a, GroupElem b) {
      if (tower.project(k, up.group->multiply(a, b)) !=
          q.group->multiply(tower.project(k, a), tower.project(k, b))) {
        throw std::invalid_argument("tower '" + tower.name + "': projection is not a homomorphism");
      }
    };
    if (n <= 256) {
      for (GroupElem a = 0; a < n; ++a)
        for (GroupElem b = 0; b < n; ++b) check_pair(a, b);
    } else {
      std::mt19937_64 rng(k + 17);
      for (int s = 0; s < 2000; ++s) check_pair(rng() % n, rng() % n);
    }
  }
}

namespace {

std::uint64_t upow(unsigned long p, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) r *= p;
  return r;
}

}  // namespace

QuotientTower tower_abelian(std::uint64_t m, std::size_t d, unsigned long p, unsigned depth,
                            const std::vector<std::vector<Integer>>& images) {
  require_prime(p);
  if (m == 0) throw std::invalid_argument("tower_abelian: m must be positive");
  if (gcd_u64(m, p) != 1) throw std::invalid_argument("m must be coprime to p");
  if (depth < 1) throw std::invalid_argument("tower_abelian: depth must be at least 1");
  const bool has_m = m > 1;
  QuotientTower t;
  t.p = p;
  t.name = "abelian(m=" + std::to_string(m) + ",d=" + std::to_string(d) + ",p=" + std::to_string(p) + ")";
  for (unsigned n = 1; n <= depth; ++n) {
    std::vector<std::uint64_t> moduli;
    if (has_m) moduli.push_back(m);
    for (std::size_t i = 0; i < d; ++i) moduli.push_back(upow(p, n));
    auto g = std::make_shared<AbelianGroup>(moduli);
    FiniteQuotient q{g, {}};
    for (const auto& img : images) {
      std::vector<Integer> c;
      if (img.size() == d + 1) {
        if (has_m) c.push_back(img[0]);
        c.insert(c.end(), img.begin() + 1, img.end());
      } else if (img.size() == d && !has_m) {
        c = img;
      } else {
        throw std::invalid_argument("tower_abelian: generator image has wrong length");
      }
      q.images.push_back(g->from_integers(c));
    }
    t.levels.push_back(std::move(q));
    t.level_numbers.push_back(n);
  }
  auto levels = t.levels;
  t.project = [levels](std::size_t k, GroupElem x) {
    const auto* hi = levels[k + 1].group->as_abelian();
    const auto* lo = levels[k].group->as_abelian();
    return lo->index(hi->coords(x));
  };
  t.p_kernel_from = 0;
  check_tower(t);
  return t;
}

QuotientTower tower_irrational_line(unsigned long p, unsigned depth, const std::vector<Integer>& omega_residues) {
  require_prime(p);
  if (omega_residues.size() < depth) throw std::invalid_argument("tower_irrational_line: need one residue per level");
  QuotientTower t;
  t.p = p;
  t.name = "line(p=" + std::to_string(p) + ")";
  for (unsigned n = 1; n <= depth; ++n) {
    Integer mod = ipow(p, n);
    if (n > 1 && mod_floor(omega_residues[n - 1] - omega_residues[n - 2], ipow(p, n - 1)) != 0) {
      throw std::invalid_argument("tower_irrational_line: omega residues are incompatible at level " +
                                  std::to_string(n));
    }
    auto g = std::make_shared<AbelianGroup>(std::vector<std::uint64_t>{upow(p, n)});
    FiniteQuotient q{g, {g->from_integers({omega_residues[n - 1]}), g->from_integers({Integer(1)})}};
    t.levels.push_back(std::move(q));
    t.level_numbers.push_back(n);
  }
  t.project = [p](std::size_t k, GroupElem x) { return x % upow(p, static_cast<unsigned>(k + 1)); };
  t.p_kernel_from = 0;
  check_tower(t);
  return t;
}

QuotientTower tower_semidirect(const IntMatrix& a, unsigned long p, unsigned depth) {
  require_prime(p);
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("tower_semidirect: square matrix required");
  Integer det = determinant(a);
  if (det != 1 && det != -1) throw std::invalid_argument("tower_semidirect: A must be unimodular (det = +-1)");
  const unsigned long q0 = p == 2 ? 4 : p;
  auto congruent_to_identity = [&](const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (mod_floor(m(i, j) - (i == j ? 1 : 0), Integer(q0)) != 0) return false;
    return true;
  };
  if (!congruent_to_identity(a)) {
    IntMatrix power = a;
    unsigned long e = 1;
    while (!congruent_to_identity(power) && e < 100000) {
      power = power * a;
      for (std::size_t i = 0; i < power.rows(); ++i)
        for (std::size_t j = 0; j < power.cols(); ++j) power(i, j) = mod_floor(power(i, j), Integer(q0));
      ++e;
    }
    throw std::invalid_argument("A is not congruent to I mod " + std::to_string(q0) +
                                "; replace A by a power A^e congruent to I mod " + std::to_string(q0) +
                                " (e = " + std::to_string(e) + " works)");
  }
  const std::size_t dim = a.rows();
  QuotientTower t;
  t.p = p;
  t.name = "semidirect(p=" + std::to_string(p) + ")";
  for (unsigned n = 1; n <= depth; ++n) {
    auto g = std::make_shared<SemidirectGroup>(a, upow(p, n));
    FiniteQuotient q{g, {}};
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<std::uint64_t> v(dim, 0);
      v[i] = 1;
      q.images.push_back(g->make(v, 0));
    }
    q.images.push_back(g->make(std::vector<std::uint64_t>(dim, 0), 1));
    t.levels.push_back(std::move(q));
    t.level_numbers.push_back(n);
  }
  auto levels = t.levels;
  t.project = [levels](std::size_t k, GroupElem x) {
    const auto* hi = static_cast<const SemidirectGroup*>(levels[k + 1].group.get());
    const auto* lo = static_cast<const SemidirectGroup*>(levels[k].group.get());
    auto [v, i] = hi->split(x);
    return lo->make(v, i);
  };
  t.p_kernel_from = 0;
  check_tower(t);
  return t;
}

QuotientTower tower_product(const QuotientTower& a, const QuotientTower& b) {
  if (a.p != b.p) throw std::invalid_argument("tower_product: towers for different primes");
  const std::size_t count = std::min(a.size(), b.size());
  QuotientTower t;
  t.p = a.p;
  t.name = a.name + " x " + b.name;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& qa = a.levels[k];
    const auto& qb = b.levels[k];
    FiniteQuotient q{direct_product(qa.group, qb.group), {}};
    for (auto x : qa.images) q.images.push_back(x);
    for (auto y : qb.images) q.images.push_back(qa.order() * y);
    t.levels.push_back(std::move(q));
    t.level_numbers.push_back(a.level_numbers[k]);
  }
  std::vector<std::uint64_t> orders_a;
  for (const auto& q : a.levels) orders_a.push_back(q.order());
  auto pa = a.project;
  auto pb = b.project;
  t.project = [orders_a, pa, pb](std::size_t k, GroupElem x) {
    GroupElem xa = x % orders_a[k + 1];
    GroupElem xb = x / orders_a[k + 1];
    return pa(k, xa) + orders_a[k] * pb(k, xb);
  };
  if (a.p_kernel_from && b.p_kernel_from) t.p_kernel_from = std::max(*a.p_kernel_from, *b.p_kernel_from);
  check_tower(t);
  return t;
}

QuotientTower tower_constant(const FiniteQuotient& q, unsigned long p, unsigned depth) {
  require_prime(p);
  QuotientTower t;
  t.p = p;
  t.name = "constant(" + q.group->describe() + ")";
  for (unsigned n = 1; n <= depth; ++n) {
    t.levels.push_back(q);
    t.level_numbers.push_back(n);
  }
  t.project = [](std::size_t, GroupElem x) { return x; };
  t.p_kernel_from = 0;
  check_tower(t);
  return t;
}

// ---------------------------------------------------------------------------

std::vector<GroupElem> subgroup_closure(const FiniteGroup& g, const std::vector<GroupElem>& gens) {
  std::set<GroupElem> seen{0};
  std::vector<GroupElem> stack{0};
  std::vector<GroupElem> useful;
  for (auto x : gens)
    if (x != 0) useful.push_back(x);
  while (!stack.empty()) {
    GroupElem x = stack.back();
    stack.pop_back();
    for (GroupElem s : useful) {
      GroupElem y = g.multiply(x, s);
      if (seen.insert(y).second) stack.push_back(y);
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_normal(const FiniteGroup& g, const std::vector<GroupElem>& subgroup) {
  std::set<GroupElem> members(subgroup.begin(), subgroup.end());
  for (GroupElem x = 0; x < g.order(); ++x) {
    GroupElem xi = g.inverse(x);
    for (GroupElem h : subgroup) {
      if (members.count(g.multiply(g.multiply(x, h), xi)) == 0) return false;
    }
  }
  return true;
}

bool is_p_group(const FiniteGroup& g, unsigned long p) {
  std::uint64_t n = g.order();
  while (n % p == 0) n /= p;
  return n == 1;
}

QuotientResult quotient_group(std::shared_ptr<const FiniteGroup> g, const std::vector<GroupElem>& normal) {
  const std::uint64_t n = g->order();
  if (n % normal.size() != 0) throw std::invalid_argument("quotient_group: subgroup order does not divide |G|");
  if (const auto* ab = g->as_abelian()) {
    // Box subgroups prod d_i Z/n_i keep the abelian encoding.
    std::vector<std::uint64_t> divs(ab->moduli());
    for (GroupElem x : normal) {
      auto c = ab->coords(x);
      for (std::size_t i = 0; i < c.size(); ++i) divs[i] = gcd_u64(divs[i], c[i]);
    }
    std::uint64_t box = 1;
    for (std::size_t i = 0; i < divs.size(); ++i) box *= ab->moduli()[i] / divs[i];
    if (box == normal.size()) {
      auto qg = std::make_shared<AbelianGroup>(divs);
      QuotientResult out{qg, std::vector<GroupElem>(n)};
      for (GroupElem x = 0; x < n; ++x) out.coset_of[x] = qg->index(ab->coords(x));
      return out;
    }
  }
  const std::uint64_t none = ~0ULL;
  std::vector<GroupElem> coset(n, none);
  std::vector<GroupElem> reps;
  for (GroupElem x = 0; x < n; ++x) {
    if (coset[x] != none) continue;
    GroupElem c = reps.size();
    reps.push_back(x);
    for (GroupElem h : normal) coset[g->multiply(x, h)] = c;
  }
  const std::uint64_t m = reps.size();
  if (m * normal.size() != n) throw std::invalid_argument("quotient_group: not a subgroup");
  std::vector<std::uint32_t> table(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) table[a * m + b] = static_cast<std::uint32_t>(coset[g->multiply(reps[a], reps[b])]);
  auto qg = std::make_shared<TableGroup>(m, std::move(table), "(" + g->describe() + ")/N");
  return QuotientResult{qg, std::move(coset)};
}

std::vector<GroupElem> frattini_of_subgroup(const FiniteGroup& g, const std::vector<GroupElem>& h, unsigned long p) {
  std::set<GroupElem> gens;
  for (GroupElem x : h) gens.insert(g.power(x, p));
  if (g.as_abelian() == nullptr) {
    for (GroupElem x : h)
      for (GroupElem y : h) gens.insert(g.commutator(x, y));
  }
  return subgroup_closure(g, {gens.begin(), gens.end()});
}

namespace {

void require_p_group(const FiniteGroup& g, unsigned long p) {
  require_prime(p);
  if (!is_p_group(g, p)) {
    throw std::invalid_argument("group of order " + std::to_string(g.order()) + " is not a " + std::to_string(p) +
                                "-group");
  }
}

std::vector<GroupElem> all_elements(const FiniteGroup& g) {
  std::vector<GroupElem> v(g.order());
  for (GroupElem x = 0; x < g.order(); ++x) v[x] = x;
  return v;
}

// For abelian p-groups in mixed-radix form, p^k G is a box subgroup.
std::vector<GroupElem> abelian_power_subgroup(const AbelianGroup& ab, unsigned long p, unsigned k) {
  std::vector<std::uint64_t> steps;
  for (auto m : ab.moduli()) steps.push_back(std::min<std::uint64_t>(m, upow(p, k)));
  std::vector<GroupElem> out;
  std::vector<std::uint64_t> c(steps.size(), 0);
  for (;;) {
    out.push_back(ab.index(c));
    std::size_t i = 0;
    for (; i < c.size(); ++i) {
      c[i] += steps[i];
      if (c[i] < ab.moduli()[i]) break;
      c[i] = 0;
    }
    if (i == c.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FrattiniResult frattini_subgroup(const FiniteQuotient& q, unsigned long p) {
  require_p_group(*q.group, p);
  std::vector<GroupElem> phi;
  if (const auto* ab = q.group->as_abelian()) {
    phi = abelian_power_subgroup(*ab, p, 1);
  } else {
    phi = frattini_of_subgroup(*q.group, all_elements(*q.group), p);
  }
  auto qr = quotient_group(q.group, phi);
  FiniteQuotient quotient{qr.group, {}};
  for (auto x : q.images) quotient.images.push_back(qr.coset_of[x]);
  return FrattiniResult{std::move(phi), std::move(quotient)};
}

unsigned frattini_length_of_subgroup(const FiniteGroup& g, const std::vector<GroupElem>& h, unsigned long p) {
  require_prime(p);
  std::uint64_t n = h.size();
  while (n % p == 0) n /= p;
  if (n != 1) throw std::invalid_argument("frattini_length: subgroup is not a p-group");
  std::vector<GroupElem> cur = h;
  unsigned len = 0;
  while (cur.size() > 1) {
    cur = frattini_of_subgroup(g, cur, p);
    ++len;
  }
  return len;
}

unsigned frattini_length(const FiniteGroup& g, unsigned long p) {
  require_p_group(g, p);
  if (const auto* ab = g.as_abelian()) {
    unsigned len = 0;
    for (auto m : ab->moduli()) len = std::max(len, vp(Integer(static_cast<unsigned long>(m)), p));
    return len;
  }
  return frattini_length_of_subgroup(g, all_elements(g), p);
}

QuotientTower tower_frattini(const FiniteQuotient& top, unsigned long p) {
  require_p_group(*top.group, p);
  if (!top.is_dense()) throw std::invalid_argument("tower_frattini: generator images do not generate the group");
  QuotientTower t;
  t.p = p;
  t.name = "frattini(" + top.group->describe() + ")";
  std::vector<std::vector<GroupElem>> coset_maps;  // per level: element of top -> level element
  if (const auto* ab = top.group->as_abelian()) {
    unsigned len = frattini_length(*top.group, p);
    for (unsigned n = 1; n <= len; ++n) {
      std::vector<std::uint64_t> moduli;
      for (auto m : ab->moduli()) moduli.push_back(std::min<std::uint64_t>(m, upow(p, n)));
      auto g = std::make_shared<AbelianGroup>(moduli);
      FiniteQuotient q{g, {}};
      for (auto x : top.images) q.images.push_back(g->index(ab->coords(x)));
      t.levels.push_back(std::move(q));
      t.level_numbers.push_back(n);
    }
    auto levels = t.levels;
    t.project = [levels](std::size_t k, GroupElem x) {
      const auto* hi = levels[k + 1].group->as_abelian();
      const auto* lo = levels[k].group->as_abelian();
      return lo->index(hi->coords(x));
    };
  } else {
    std::vector<GroupElem> cur = all_elements(*top.group);
    unsigned n = 0;
    while (cur.size() > 1) {
      cur = frattini_of_subgroup(*top.group, cur, p);
      ++n;
      auto qr = quotient_group(top.group, cur);
      FiniteQuotient q{qr.group, {}};
      for (auto x : top.images) q.images.push_back(qr.coset_of[x]);
      t.levels.push_back(std::move(q));
      t.level_numbers.push_back(n);
      coset_maps.push_back(std::move(qr.coset_of));
    }
    // project level k+1 -> k through a representative in the top group.
    std::vector<std::vector<GroupElem>> proj;
    for (std::size_t k = 0; k + 1 < coset_maps.size(); ++k) {
      std::vector<GroupElem> map(t.levels[k + 1].order(), 0);
      for (GroupElem x = 0; x < top.order(); ++x) map[coset_maps[k + 1][x]] = coset_maps[k][x];
      proj.push_back(std::move(map));
    }
    t.project = [proj](std::size_t k, GroupElem x) { return proj[k][x]; };
  }
  t.p_kernel_from = 0;
  check_tower(t);
  return t;
}

std::vector<std::vector<GroupElem>> all_subgroups(const FiniteGroup& g) {
  if (g.order() > 4096) throw std::invalid_argument("all_subgroups: group too large");
  std::set<std::vector<GroupElem>> found;
  std::deque<std::pair<std::vector<GroupElem>, std::vector<GroupElem>>> work;  // (elements, generators)
  std::vector<GroupElem> trivial{0};
  found.insert(trivial);
  work.emplace_back(trivial, std::vector<GroupElem>{});
  while (!work.empty()) {
    auto [elems, gens] = work.front();
    work.pop_front();
    std::set<GroupElem> members(elems.begin(), elems.end());
    for (GroupElem x = 1; x < g.order(); ++x) {
      if (members.count(x) != 0) continue;
      auto ng = gens;
      ng.push_back(x);
      auto sub = subgroup_closure(g, ng);
      if (found.insert(sub).second) work.emplace_back(sub, ng);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace padicbetti
