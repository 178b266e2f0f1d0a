#include "padicbetti/oracles.hpp"

#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "padicbetti/finite_field.hpp"
#include "padicbetti/poly.hpp"

namespace padicbetti {

namespace {

// ---- cofactor determinants for the minor-gcd oracle

Integer cofactor_det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<Integer>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      sub.push_back(std::move(row));
    }
    Integer term = a[0][c] * cofactor_det(sub);
    if (c % 2 == 0) det += term; else det -= term;
  }
  return det;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

// ---- naive Gaussian elimination, generic over a field

template <class Elem, class Ops>
std::size_t naive_rank(std::vector<std::vector<Elem>> m, const Ops& ops) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && ops.is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    Elem inv = ops.inverse(m[rank][c]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || ops.is_zero(m[r][c])) continue;
      Elem f = ops.mul(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = ops.sub(m[r][k], ops.mul(f, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

struct RationalOps {
  bool is_zero(const Rational& x) const { return x == 0; }
  Rational inverse(const Rational& x) const { return 1 / x; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
};

struct ModOps {
  std::uint64_t ell;
  bool is_zero(std::uint64_t x) const { return x == 0; }
  std::uint64_t inverse(std::uint64_t x) const { return pow_mod_u64(x, ell - 2, ell); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % ell);
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + ell - b) % ell; }
};

struct GaloisOps {
  const GaloisField* f;
  bool is_zero(const GaloisField::Elem& x) const { return f->is_zero(x); }
  GaloisField::Elem inverse(const GaloisField::Elem& x) const { return f->inverse(x); }
  GaloisField::Elem mul(const GaloisField::Elem& a, const GaloisField::Elem& b) const { return f->mul(a, b); }
  GaloisField::Elem sub(const GaloisField::Elem& a, const GaloisField::Elem& b) const { return f->sub(a, b); }
};

// Q(zeta_M) as Q[x] / Phi_M.
struct CyclotomicOps {
  RatPoly modulus;
  RatPoly reduce(const RatPoly& a) const { return divmod(a, modulus).second; }
  bool is_zero(const RatPoly& x) const { return x.is_zero(); }
  RatPoly mul(const RatPoly& a, const RatPoly& b) const { return reduce(a * b); }
  RatPoly sub(const RatPoly& a, const RatPoly& b) const { return a - b; }
  RatPoly inverse(const RatPoly& a) const {
    // extended Euclid: s a + t modulus = 1
    RatPoly r0 = modulus, r1 = a, s0, s1 = RatPoly::monomial(1, 0);
    while (!r1.is_zero()) {
      auto [q, r] = divmod(r0, r1);
      RatPoly s2 = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw std::logic_error("cyclotomic inverse of a zero divisor");
    Rational c = r0.coeffs()[0];
    std::vector<Rational> v = s0.coeffs();
    for (auto& x : v) x /= c;
    return reduce(RatPoly(std::move(v)));
  }
};

}  // namespace

std::vector<Integer> oracle_snf_minor_gcd(const IntMatrix& m) {
  if (m.rows() > 5 || m.cols() > 5) throw std::invalid_argument("oracle_snf_minor_gcd: at most 5x5");
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    std::vector<std::size_t> rs, cs;
    subsets(m.rows(), k, 0, rs, [&](const std::vector<std::size_t>& rows) {
      subsets(m.cols(), k, 0, cs, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rows[i], cols[j]);
        g = gcd(g, cofactor_det(sub));
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

std::uint64_t oracle_cover_cohomology(const ChainComplexSpec& c, const FiniteQuotient& q, FieldSpec k, std::size_t j) {
  if (q.order() > 24) throw std::invalid_argument("oracle_cover_cohomology: |Q| <= 24");
  if (q.images.size() != c.generator_count()) throw std::invalid_argument("oracle: generator count mismatch");
  if (j > c.dimension()) throw std::invalid_argument("oracle: degree beyond the complex");
  const std::uint64_t n = q.order();
  auto eval = [&](const Word& w) {
    GroupElem g = 0;
    for (int letter : w) {
      GroupElem s = q.images[static_cast<std::size_t>(std::abs(letter)) - 1];
      g = q.group->multiply(g, letter > 0 ? s : q.group->inverse(s));
    }
    return g;
  };
  // cells (i, x) of degree i; d(i, x) = sum_m sum_w c_w (m, x w)
  auto cover_rank = [&](std::size_t deg) -> std::size_t {
    if (deg == 0 || deg > c.dimension()) return 0;
    const std::size_t er = c.ranks[deg], ec = c.ranks[deg - 1];
    if (er == 0 || ec == 0) return 0;
    const auto& a = c.boundary(deg);
    if (k.characteristic == 0) {
      std::vector<std::vector<Rational>> m(er * n, std::vector<Rational>(ec * n));
      for (std::size_t i = 0; i < er; ++i)
        for (std::size_t mm = 0; mm < ec; ++mm)
          for (const auto& [w, coef] : a[i][mm].terms()) {
            GroupElem g = eval(w);
            for (GroupElem x = 0; x < n; ++x) m[i * n + x][mm * n + q.group->multiply(x, g)] += coef;
          }
      return naive_rank(std::move(m), RationalOps{});
    }
    const std::uint64_t ell = k.characteristic;
    std::vector<std::vector<std::uint64_t>> m(er * n, std::vector<std::uint64_t>(ec * n, 0));
    for (std::size_t i = 0; i < er; ++i)
      for (std::size_t mm = 0; mm < ec; ++mm)
        for (const auto& [w, coef] : a[i][mm].terms()) {
          GroupElem g = eval(w);
          std::uint64_t cm = mod_floor(coef, Integer(static_cast<unsigned long>(ell))).get_ui();
          for (GroupElem x = 0; x < n; ++x) {
            auto& slot = m[i * n + x][mm * n + q.group->multiply(x, g)];
            slot = (slot + cm) % ell;
          }
        }
    return naive_rank(std::move(m), ModOps{ell});
  };
  return c.ranks[j] * n - cover_rank(j) - cover_rank(j + 1);
}

std::uint64_t oracle_character_kernel(const AtiyahInstance& inst, unsigned N) {
  inst.validate();
  const unsigned long p = inst.p;
  const std::uint64_t M = ipow(p, N).get_ui();
  // images of the variables as coordinate vectors in (Z/M)^d
  std::vector<std::vector<std::uint64_t>> img;
  for (std::size_t i = 0; i < inst.d; ++i) {
    std::vector<std::uint64_t> v(inst.d, 0);
    v[i] = 1 % M;
    img.push_back(v);
  }
  for (std::size_t i = 0; i < inst.s; ++i) {
    std::vector<std::uint64_t> v(inst.d);
    for (std::size_t j = 0; j < inst.d; ++j) v[j] = mod_floor(inst.lambda[i][j], Integer(static_cast<unsigned long>(M))).get_ui();
    img.push_back(v);
  }
  std::uint64_t characters = 1;
  for (std::size_t i = 0; i < inst.d; ++i) characters *= M;
  // exponent of zeta_M at character a for monomial e
  auto exponent = [&](const std::vector<std::uint64_t>& a, const LaurentPoly::Exponent& e) {
    std::int64_t k = 0;
    const auto m = static_cast<std::int64_t>(M);
    for (std::size_t v = 0; v < e.size(); ++v)
      for (std::size_t j = 0; j < inst.d; ++j)
        k = ((k + static_cast<std::int64_t>(e[v]) * static_cast<std::int64_t>(img[v][j] * a[j] % M)) % m + m) % m;
    return static_cast<std::uint64_t>(k);
  };
  std::uint64_t total = 0;
  std::vector<std::uint64_t> a(inst.d, 0);
  auto next = [&]() {
    for (std::size_t j = 0; j < inst.d; ++j) {
      if (++a[j] < M) return;
      a[j] = 0;
    }
  };
  if (inst.field.characteristic == 0) {
    CyclotomicOps ops{RatPoly(cyclotomic(M))};
    std::vector<RatPoly> zeta(M);
    for (std::uint64_t k = 0; k < M; ++k) zeta[k] = ops.reduce(RatPoly::monomial(1, k));
    for (std::uint64_t c = 0; c < characters; ++c, next()) {
      std::vector<std::vector<RatPoly>> m(inst.rows, std::vector<RatPoly>(inst.cols));
      for (std::size_t i = 0; i < inst.rows; ++i)
        for (std::size_t j = 0; j < inst.cols; ++j)
          for (const auto& [e, coef] : inst.a[i][j].terms())
            m[i][j] = m[i][j] + RatPoly::monomial(Rational(coef), 0) * zeta[exponent(a, e)];
      total += inst.cols - naive_rank(std::move(m), ops);
    }
    return total;
  }
  const std::uint64_t ell = inst.field.characteristic;
  GaloisField f = GaloisField::containing_roots_of_unity(ell, M);
  auto z = f.primitive_root_of_unity(M);
  std::vector<GaloisField::Elem> zeta(M);
  zeta[0] = f.one();
  for (std::uint64_t k = 1; k < M; ++k) zeta[k] = f.mul(zeta[k - 1], z);
  for (std::uint64_t c = 0; c < characters; ++c, next()) {
    std::vector<std::vector<GaloisField::Elem>> m(inst.rows, std::vector<GaloisField::Elem>(inst.cols, f.zero()));
    for (std::size_t i = 0; i < inst.rows; ++i)
      for (std::size_t j = 0; j < inst.cols; ++j)
        for (const auto& [e, coef] : inst.a[i][j].terms())
          m[i][j] = f.add(m[i][j], f.mul(f.from_int(coef), zeta[exponent(a, e)]));
    total += inst.cols - naive_rank(std::move(m), GaloisOps{&f});
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

std::string join(const std::vector<Integer>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << "]";
  return os.str();
}

IntMatrix random_int_matrix(std::mt19937_64& rng) {
  const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 13) - 6;
  // sometimes force dependencies
  if (r >= 2 && rng() % 3 == 0)
    for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = 2 * m(0, j) - m(1, j);
  if (rng() % 4 == 0)
    for (std::size_t i = 0; i < r; ++i) m(i, 0) *= 6;
  return m;
}

FieldSpec random_field(std::mt19937_64& rng, unsigned long avoid = 0) {
  static const std::uint64_t choices[] = {0, 2, 3, 5, 7};
  for (;;) {
    std::uint64_t c = choices[rng() % 5];
    if (c != avoid) return {c};
  }
}

}  // namespace

std::vector<OracleReport> run_oracle_suite(std::uint64_t seed, std::size_t per_pair) {
  std::vector<OracleReport> out;
  std::mt19937_64 rng(seed);

  for (std::size_t t = 0; t < per_pair; ++t) {
    IntMatrix m = random_int_matrix(rng);
    auto main = smith_normal_form(m).divisors;
    auto oracle = oracle_snf_minor_gcd(m);
    out.push_back({"snf " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()), join(main), join(oracle),
                   main == oracle});
  }

  const std::vector<std::function<ChainComplexSpec()>> spaces = {
      [] { return complex_circle(); },         [] { return complex_torus(2); },
      [] { return complex_torus(3); },         [] { return complex_surface(2); },
      [] { return complex_free(2); },          [] { return complex_trefoil(); },
      [] { return complex_klein_bottle(); },   [] { return complex_sphere(2); },
      [] { return complex_product(complex_circle(), complex_free(2)); }};
  const std::vector<std::string> groups = {"C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12",
                                           "C2xC2", "C2xC4", "C3xC3", "C2xC6", "C4xC4", "S3", "D8", "Q8",
                                           "C2xC2xC2", "D16", "Q16", "C2xD8", "C3xS3"};
  for (std::size_t t = 0; t < per_pair; ++t) {
    ChainComplexSpec c = spaces[rng() % spaces.size()]();
    auto g = small_group(groups[rng() % groups.size()]);
    if (g->order() > 24) g = small_group("D8");
    FiniteQuotient q{g, {}};
    // random images until the relations hold; the trivial map always works
    for (int attempt = 0; attempt < 64; ++attempt) {
      q.images.clear();
      for (std::size_t i = 0; i < c.generator_count(); ++i) q.images.push_back(rng() % g->order());
      if (factors_through(c, q)) break;
      q.images.assign(c.generator_count(), 0);
    }
    FieldSpec k = random_field(rng);
    const std::size_t top = c.complete ? c.dimension() : c.dimension() - 1;
    const std::size_t j = rng() % (top + 1);
    EngineOptions opts;
    opts.use_characters = (t % 2 == 0);
    auto main = betti_at_level(c, q, k, j, 0, opts);
    auto oracle = oracle_cover_cohomology(c, q, k, j);
    out.push_back({"cover b" + std::to_string(j) + " " + c.name + " / " + g->describe() + " over " + k.to_string(),
                   std::to_string(main), std::to_string(oracle), main == oracle});
  }

  for (std::size_t t = 0; t < per_pair; ++t) {
    const unsigned long p = (rng() % 2 == 0) ? 2 : 3;
    FieldSpec k = random_field(rng, p);
    const std::size_t d = 1 + rng() % 2;
    const std::size_t s = rng() % 2;
    const unsigned N = (d == 2 && p == 3) ? 1 : 1 + static_cast<unsigned>(rng() % 2);
    const std::size_t rows = 1 + rng() % 2, cols = 1 + rng() % 2;
    AtiyahInstance inst = random_atiyah_instance(rng(), rows, cols, d, s, p, k, N);
    auto main = atiyah_level_dim(inst, N);
    auto minors = atiyah_minors_dim(inst, N);
    auto oracle = oracle_character_kernel(inst, N);
    out.push_back({"character kernel N=" + std::to_string(N) + " " + inst.describe(),
                   std::to_string(main) + "/" + std::to_string(minors), std::to_string(oracle),
                   main == oracle && minors == oracle});
  }
  return out;
}

}  // namespace padicbetti
