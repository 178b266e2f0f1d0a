#include "padicbetti/approximation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "padicbetti/characters.hpp"

namespace padicbetti {

FieldSpec FieldSpec::prime_field(std::uint64_t ell) {
  require_prime(ell, "field characteristic");
  return {ell};
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "Q" || text == "QQ") return rationals();
  if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'f')) {
    std::size_t used = 0;
    unsigned long long ell = 0;
    try {
      ell = std::stoull(text.substr(1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == text.size() - 1) return prime_field(ell);
  }
  throw std::invalid_argument("unknown field '" + text + "' (use Q or F<prime>)");
}

std::string FieldSpec::to_string() const { return characteristic == 0 ? "Q" : "F" + std::to_string(characteristic); }

unsigned engine_threads(const EngineOptions& options) {
  if (options.threads != 0) return options.threads;
  if (const char* env = std::getenv("PADIC_BETTI_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

// Large prime for the modular lower bound on ranks over Q.
constexpr std::uint64_t kProbePrime = 2147483647ULL;

void check_generators(const ChainComplexSpec& c, const FiniteQuotient& q) {
  if (q.images.size() != c.generator_count()) {
    throw std::invalid_argument("quotient has " + std::to_string(q.images.size()) + " generator images, complex has " +
                                std::to_string(c.generator_count()) + " generators");
  }
}

void check_field(FieldSpec k, unsigned long p) {
  if (k.characteristic != 0) require_prime(k.characteristic, "field characteristic");
  if (p != 0 && k.characteristic == p) throw std::domain_error("coefficient characteristic must differ from p");
}

std::optional<std::uint64_t> rank_by_characters(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k,
                                                std::size_t j, const EngineOptions& options) {
  if (!options.use_characters) return std::nullopt;
  const AbelianGroup* ab = q.group->as_abelian();
  if (ab == nullptr || q.order() > options.max_character_order) return std::nullopt;
  if (k.characteristic != 0 && q.order() % k.characteristic == 0) return std::nullopt;
  const std::size_t rows = c.ranks[j];
  const std::size_t cols = c.ranks[j - 1];
  if (rows > 20 || cols > 20) return std::nullopt;
  auto lm = abelianize(c.boundary(j), rows, cols, c.generator_count());
  return character_rank_sum(lm, rows, cols, *ab, q.images, k.characteristic);
}

void check_budget(const ChainComplexSpec& c, const FiniteQuotient& q, std::size_t j, const EngineOptions& options) {
  const std::uint64_t n = q.order();
  const std::uint64_t side = std::max(c.ranks[j], c.ranks[j - 1]) * n;
  if (side > options.max_dimension) {
    throw std::length_error("level of order " + std::to_string(n) + " needs a " + std::to_string(side) +
                            "-dimensional matrix, above the budget " + std::to_string(options.max_dimension));
  }
}

}  // namespace

bool factors_through(const ChainComplexSpec& c, const FiniteQuotient& q) {
  check_generators(c, q);
  for (std::size_t j = 1; j < c.dimension(); ++j) {
    const auto& lo = c.boundary(j);
    const auto& hi = c.boundary(j + 1);
    for (std::size_t i = 0; i < c.ranks[j + 1]; ++i)
      for (std::size_t m = 0; m < c.ranks[j - 1]; ++m) {
        std::map<GroupElem, Integer> acc;
        for (std::size_t k = 0; k < c.ranks[j]; ++k)
          for (const auto& [w1, c1] : hi[i][k].terms()) {
            const GroupElem g1 = word_image(w1, q);
            for (const auto& [w2, c2] : lo[k][m].terms()) acc[q.group->multiply(g1, word_image(w2, q))] += c1 * c2;
          }
        for (const auto& [g, v] : acc)
          if (v != 0) return false;
      }
  }
  return true;
}

void check_quotient_factorization(const ChainComplexSpec& c, const FiniteQuotient& q) {
  if (!factors_through(c, q)) {
    throw std::invalid_argument("generator images in " + q.group->describe() + " do not satisfy the relations of " +
                                c.name);
  }
}

std::uint64_t boundary_rank(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k, std::size_t j,
                            const EngineOptions& options) {
  check_generators(c, q);
  if (j == 0 || j > c.dimension()) return 0;
  if (c.ranks[j] == 0 || c.ranks[j - 1] == 0) return 0;
  if (auto r = rank_by_characters(c, q, k, j, options)) return *r;
  check_budget(c, q, j, options);
  const std::size_t rows = c.ranks[j];
  const std::size_t cols = c.ranks[j - 1];
  if (k.characteristic != 0) return rank_fp(reduce_matrix_fp(c.boundary(j), rows, cols, q, k.characteristic));
  IntMatrix m = reduce_matrix(c.boundary(j), rows, cols, q);
  // rank over F_l never exceeds rank over Q; a full modular rank settles it.
  const std::size_t lower = rank_fp(FpMatrix::reduce(m, kProbePrime));
  if (lower == std::min(m.rows(), m.cols())) return lower;
  return rank_q(std::move(m));
}

namespace {

void check_betti_degree(const ChainComplexSpec& c, std::size_t j) {
  const std::size_t d = c.dimension();
  if (c.complete ? j > d : j + 1 > d) {
    throw std::invalid_argument("betti degree " + std::to_string(j) + " is beyond the known skeleton of " + c.name +
                                (c.complete ? "" : " (only degrees below the top cell dimension are determined)"));
  }
}

std::uint64_t betti_from_ranks(const ChainComplexSpec& c, const FiniteQuotient& q, std::size_t j,
                               std::uint64_t rank_up, std::uint64_t rank_down) {
  const std::uint64_t dim = c.ranks[j] * q.order();
  if (rank_up + rank_down > dim) throw std::logic_error("boundary ranks exceed the cochain dimension");
  return dim - rank_up - rank_down;
}

}  // namespace

std::uint64_t betti_at_level(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k, std::size_t j,
                             unsigned long p, const EngineOptions& options) {
  check_field(k, p);
  check_quotient_factorization(c, q);
  check_betti_degree(c, j);
  const std::uint64_t up = boundary_rank(c, q, k, j + 1, options);
  const std::uint64_t down = boundary_rank(c, q, k, j, options);
  return betti_from_ranks(c, q, j, up, down);
}

Integer torsion_at_level(const ChainComplexSpec& c, const FiniteQuotient& q, unsigned long p, std::size_t j,
                         const EngineOptions& options) {
  require_prime(p);
  check_quotient_factorization(c, q);
  if (j > c.dimension()) throw std::invalid_argument("torsion degree beyond the complex dimension");
  if (j == 0 || c.ranks[j] == 0 || c.ranks[j - 1] == 0) return 1;
  check_budget(c, q, j, options);
  auto snf = smith_normal_form(reduce_matrix(c.boundary(j), c.ranks[j], c.ranks[j - 1], q));
  return torsion_card_pprime(snf.divisors, p);
}

std::vector<Integer> InvariantSequence::values() const {
  std::vector<Integer> out;
  out.reserve(levels.size());
  for (const auto& l : levels) out.push_back(l.value);
  return out;
}

namespace {

// Runs f(i) for i in [0, count) on up to `threads` workers; rethrows the first failure.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool euler_identity_holds(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k,
                          const EngineOptions& options) {
  const std::size_t d = c.dimension();
  std::vector<std::uint64_t> ranks(d + 2, 0);
  for (std::size_t j = 1; j <= d; ++j) ranks[j] = boundary_rank(c, q, k, j, options);
  Integer alt = 0;
  for (std::size_t j = 0; j <= d; ++j) {
    Integer b = Integer(static_cast<unsigned long>(betti_from_ranks(c, q, j, ranks[j + 1], ranks[j])));
    if (j % 2 == 0) alt += b; else alt -= b;
  }
  return alt == Integer(static_cast<unsigned long>(q.order())) * c.euler_characteristic();
}

}  // namespace

InvariantSequence approximate(const ChainComplexSpec& c, const QuotientTower& tower, const InvariantRequest& request,
                              unsigned precision, unsigned window, const EngineOptions& options, bool check_euler) {
  require_prime(tower.p);
  c.validate();
  if (tower.levels.empty()) throw std::invalid_argument("tower has no levels");
  for (const auto& q : tower.levels) check_quotient_factorization(c, q);
  const unsigned long p = tower.p;

  switch (request.kind) {
    case InvariantKind::betti:
      check_field(request.field, p);
      check_betti_degree(c, request.degree);
      break;
    case InvariantKind::torsion:
      if (request.degree > c.dimension()) throw std::invalid_argument("torsion degree beyond the complex dimension");
      break;
    case InvariantKind::euler:
      if (!c.complete) throw std::invalid_argument("Euler characteristic needs a complete complex");
      break;
  }
  if (check_euler && !c.complete) throw std::invalid_argument("Euler check needs a complete complex");

  InvariantSequence seq;
  seq.request = request;
  seq.levels.resize(tower.size());
  std::vector<char> euler_ok(tower.size(), 1);

  parallel_for(tower.size(), engine_threads(options), [&](std::size_t i) {
    const FiniteQuotient& q = tower.levels[i];
    LevelValue lv{tower.level_numbers.empty() ? static_cast<unsigned>(i + 1) : tower.level_numbers[i], q.order(), 0};
    switch (request.kind) {
      case InvariantKind::betti:
        lv.value = Integer(static_cast<unsigned long>(betti_at_level(c, q, request.field, request.degree, p, options)));
        break;
      case InvariantKind::torsion:
        lv.value = torsion_at_level(c, q, p, request.degree, options);
        break;
      case InvariantKind::euler:
        lv.value = Integer(static_cast<unsigned long>(q.order())) * c.euler_characteristic();
        break;
    }
    if (check_euler) {
      FieldSpec k = request.kind == InvariantKind::betti ? request.field : FieldSpec::rationals();
      euler_ok[i] = euler_identity_holds(c, q, k, options) ? 1 : 0;
    }
    seq.levels[i] = std::move(lv);
  });

  if (request.kind == InvariantKind::betti && tower.p_kernel_from) {
    for (std::size_t i = *tower.p_kernel_from + 1; i < seq.levels.size(); ++i) {
      if (seq.levels[i].value < seq.levels[i - 1].value) {
        throw std::logic_error("betti sequence decreased from level " + std::to_string(seq.levels[i - 1].n) +
                               " to level " + std::to_string(seq.levels[i].n) + " on a p-kernel tower");
      }
    }
    seq.monotone = true;
  }
  if (check_euler) seq.euler = std::all_of(euler_ok.begin(), euler_ok.end(), [](char ok) { return ok != 0; });

  auto vals = seq.values();
  seq.limit = padic_limit(vals, p, precision, window);
  return seq;
}

InvariantSequence euler_padic(const ChainComplexSpec& c, const QuotientTower& tower, unsigned precision,
                              unsigned window, const EngineOptions& options) {
  InvariantRequest req{InvariantKind::euler, 0, FieldSpec::rationals()};
  return approximate(c, tower, req, precision, window, options, true);
}

PAdicApprox wedge_predicted_b1(const std::vector<PAdicApprox>& b1_parts, const std::vector<PAdicIndex>& indices,
                               const PAdicApprox& order) {
  if (b1_parts.size() != indices.size()) throw std::invalid_argument("wedge: one index per summand required");
  const unsigned long p = order.prime();
  unsigned prec = order.precision();
  bool all = order.is_converged();
  auto absorb = [&](const PAdicApprox& a) {
    if (a.prime() != p) throw std::invalid_argument("wedge: mixed primes");
    all = all && a.is_converged();
    prec = std::min(prec, a.precision());
  };
  for (const auto& b : b1_parts) absorb(b);
  for (const auto& ix : indices) absorb(ix.value);
  if (!all) return PAdicApprox::insufficient_data(p);
  Integer v = 1 + order.residue();
  for (std::size_t i = 0; i < b1_parts.size(); ++i) {
    v -= indices[i].value.residue();
    v += indices[i].value.residue() * b1_parts[i].residue();
  }
  return PAdicApprox::converged(p, prec, mod_floor(v, ipow(p, prec)));
}

std::vector<Integer> subgroup_index_sequence(const QuotientTower& tower, const std::vector<std::size_t>& generators) {
  std::vector<Integer> out;
  for (const auto& q : tower.levels) {
    std::vector<GroupElem> gens;
    for (auto g : generators) {
      if (g >= q.images.size()) throw std::invalid_argument("subgroup generator out of range");
      gens.push_back(q.images[g]);
    }
    auto h = subgroup_closure(*q.group, gens);
    out.push_back(Integer(static_cast<unsigned long>(q.order() / h.size())));
  }
  return out;
}

std::vector<Integer> order_sequence(const QuotientTower& tower) {
  std::vector<Integer> out;
  for (const auto& q : tower.levels) out.push_back(Integer(static_cast<unsigned long>(q.order())));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kActionCheckLimit = 1ULL << 22;  // |Q| * |X| entries

bool is_permutation(const std::vector<std::size_t>& f, std::size_t n) {
  if (f.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (auto x : f) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

// pi_g for every g in Q reached from the identity; x.(g s) = (x.g).s.
void check_action(const FiniteQuotient& q, const GSetLevel& level) {
  const std::uint64_t n = q.order();
  if (n * std::max<std::size_t>(level.size, 1) > kActionCheckLimit) return;
  std::vector<std::vector<std::size_t>> pi(n);
  std::vector<std::size_t> id(level.size);
  for (std::size_t x = 0; x < level.size; ++x) id[x] = x;
  pi[0] = id;
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  std::deque<GroupElem> queue{0};
  while (!queue.empty()) {
    GroupElem g = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < q.images.size(); ++s) {
      GroupElem h = q.group->multiply(g, q.images[s]);
      std::vector<std::size_t> cand(level.size);
      for (std::size_t x = 0; x < level.size; ++x) cand[x] = level.actions[s][pi[g][x]];
      if (!seen[h]) {
        seen[h] = 1;
        pi[h] = std::move(cand);
        queue.push_back(h);
      } else if (pi[h] != cand) {
        throw std::invalid_argument("G-set action does not factor through the level quotient");
      }
    }
  }
}

}  // namespace

void check_gset_tower(const GSetTower& ts) {
  require_prime(ts.p);
  if (ts.quotients.size() != ts.levels.size()) throw std::invalid_argument("G-set tower: one quotient per level");
  for (std::size_t i = 0; i < ts.levels.size(); ++i) {
    const auto& level = ts.levels[i];
    const auto& q = ts.quotients[i];
    if (level.actions.size() != q.images.size()) throw std::invalid_argument("G-set level: one action per generator");
    for (const auto& a : level.actions)
      if (!is_permutation(a, level.size)) throw std::invalid_argument("G-set level: generator action is not a permutation");
    check_action(q, level);
    if (i == 0 || !level.inclusion) continue;
    const auto& prev = ts.levels[i - 1];
    const auto& inc = *level.inclusion;
    if (inc.size() != prev.size) throw std::invalid_argument("G-set inclusion: wrong domain size");
    std::vector<char> hit(level.size, 0);
    for (auto y : inc) {
      if (y >= level.size || hit[y]) throw std::invalid_argument("G-set inclusion is not injective");
      hit[y] = 1;
    }
    for (std::size_t s = 0; s < level.actions.size(); ++s)
      for (std::size_t x = 0; x < prev.size; ++x)
        if (inc[prev.actions[s][x]] != level.actions[s][inc[x]])
          throw std::invalid_argument("G-set inclusion is not equivariant");
  }
}

GSetTower gset_constant(const QuotientTower& tower, std::size_t size) {
  GSetTower ts{tower.p, tower.levels, {}};
  std::vector<std::size_t> id(size);
  for (std::size_t x = 0; x < size; ++x) id[x] = x;
  for (std::size_t i = 0; i < tower.size(); ++i) {
    GSetLevel level{size, std::vector<std::vector<std::size_t>>(tower.levels[i].images.size(), id), std::nullopt};
    if (i > 0) level.inclusion = id;
    ts.levels.push_back(std::move(level));
  }
  return ts;
}

GSetTower gset_regular(const QuotientTower& tower) {
  GSetTower ts{tower.p, tower.levels, {}};
  for (const auto& q : tower.levels) {
    GSetLevel level;
    level.size = q.order();
    for (auto g : q.images) {
      auto r = q.right_multiplication(g);
      level.actions.emplace_back(r.begin(), r.end());
    }
    ts.levels.push_back(std::move(level));
  }
  return ts;
}

namespace {

void require_same_levels(const GSetTower& a, const GSetTower& b) {
  if (a.p != b.p || a.levels.size() != b.levels.size()) throw std::invalid_argument("G-set towers over different towers");
  for (std::size_t i = 0; i < a.levels.size(); ++i)
    if (a.quotients[i].images != b.quotients[i].images || a.quotients[i].order() != b.quotients[i].order())
      throw std::invalid_argument("G-set towers over different quotients");
}

}  // namespace

GSetTower gset_disjoint_union(const GSetTower& a, const GSetTower& b) {
  require_same_levels(a, b);
  GSetTower ts{a.p, a.quotients, {}};
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    const auto& la = a.levels[i];
    const auto& lb = b.levels[i];
    GSetLevel level;
    level.size = la.size + lb.size;
    for (std::size_t s = 0; s < la.actions.size(); ++s) {
      std::vector<std::size_t> act(la.actions[s]);
      for (auto y : lb.actions[s]) act.push_back(la.size + y);
      level.actions.push_back(std::move(act));
    }
    if (i > 0 && la.inclusion && lb.inclusion) {
      std::vector<std::size_t> inc(*la.inclusion);
      for (auto y : *lb.inclusion) inc.push_back(la.size + y);
      level.inclusion = std::move(inc);
    }
    ts.levels.push_back(std::move(level));
  }
  return ts;
}

GSetTower gset_product(const GSetTower& a, const GSetTower& b) {
  require_same_levels(a, b);
  GSetTower ts{a.p, a.quotients, {}};
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    const auto& la = a.levels[i];
    const auto& lb = b.levels[i];
    GSetLevel level;
    level.size = la.size * lb.size;
    for (std::size_t s = 0; s < la.actions.size(); ++s) {
      std::vector<std::size_t> act(level.size);
      for (std::size_t y = 0; y < lb.size; ++y)
        for (std::size_t x = 0; x < la.size; ++x) act[x + la.size * y] = la.actions[s][x] + la.size * lb.actions[s][y];
      level.actions.push_back(std::move(act));
    }
    if (i > 0 && la.inclusion && lb.inclusion) {
      const auto& pa = a.levels[i - 1];
      const auto& pb = b.levels[i - 1];
      std::vector<std::size_t> inc(pa.size * pb.size);
      for (std::size_t y = 0; y < pb.size; ++y)
        for (std::size_t x = 0; x < pa.size; ++x) inc[x + pa.size * y] = (*la.inclusion)[x] + la.size * (*lb.inclusion)[y];
      level.inclusion = std::move(inc);
    }
    ts.levels.push_back(std::move(level));
  }
  return ts;
}

PAdicApprox padic_cardinality(const GSetTower& ts, unsigned long p, unsigned precision, unsigned window) {
  if (p != ts.p) throw std::invalid_argument("G-set tower belongs to a different prime");
  check_gset_tower(ts);
  std::vector<Integer> sizes;
  for (const auto& l : ts.levels) sizes.push_back(Integer(static_cast<unsigned long>(l.size)));
  return padic_limit(sizes, p, precision, window);
}

}  // namespace padicbetti
