#include "padicbetti/characters.hpp"

#include <map>
#include <stdexcept>

namespace padicbetti {

CharacterTable::CharacterTable(const AbelianGroup& group, std::uint64_t characteristic)
    : group_(group), characteristic_(characteristic), exponent_(group.exponent()) {
  if (characteristic != 0) {
    if (group.order() % characteristic == 0) {
      throw std::invalid_argument("CharacterTable: characteristic divides the group order");
    }
    field_ = std::make_shared<GaloisField>(GaloisField::containing_roots_of_unity(characteristic, exponent_));
    auto zeta = field_->primitive_root_of_unity(exponent_);
    zeta_powers_.reserve(exponent_);
    auto cur = field_->one();
    for (std::uint64_t k = 0; k < exponent_; ++k) {
      zeta_powers_.push_back(cur);
      cur = field_->mul(cur, zeta);
    }
  }
}

CharacterTable::Reduced CharacterTable::reduce(const LaurentPoly& f, const std::vector<GroupElem>& variable_images) const {
  if (variable_images.size() != f.vars()) throw std::invalid_argument("CharacterTable: variable count mismatch");
  const auto& moduli = group_.moduli();
  std::vector<std::vector<std::uint64_t>> image_coords;
  for (auto g : variable_images) image_coords.push_back(group_.coords(g));
  std::map<GroupElem, Integer> combined;
  std::vector<std::uint64_t> q(moduli.size());
  for (const auto& [e, c] : f.terms()) {
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      const auto n = static_cast<std::int64_t>(moduli[i]);
      std::int64_t s = 0;
      for (std::size_t v = 0; v < e.size(); ++v) {
        s = (s + static_cast<std::int64_t>(e[v]) % n * static_cast<std::int64_t>(image_coords[v][i])) % n;
      }
      if (s < 0) s += n;
      q[i] = static_cast<std::uint64_t>(s);
    }
    combined[group_.index(q)] += c;
  }
  Reduced out;
  for (const auto& [g, c] : combined) {
    Integer cc = c;
    if (characteristic_ != 0) cc = mod_floor(cc, Integer(static_cast<unsigned long>(characteristic_)));
    if (cc == 0) continue;
    auto coords = group_.coords(g);
    std::vector<std::uint64_t> w(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) w[i] = coords[i] * (exponent_ / moduli[i]) % exponent_;
    out.weights.push_back(std::move(w));
    out.coeffs.push_back(to_int64(cc));
  }
  return out;
}

std::uint64_t CharacterTable::order_of(const std::vector<std::uint64_t>& a) const {
  std::uint64_t o = 1;
  const auto& moduli = group_.moduli();
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::uint64_t oi = moduli[i] / gcd_u64(a[i], moduli[i]);
    o = o / gcd_u64(o, oi) * oi;
  }
  return o;
}

void CharacterTable::for_each_orbit(
    const std::function<void(const std::vector<std::uint64_t>&, std::uint64_t)>& visit) const {
  const std::uint64_t n = group_.order();
  const auto& moduli = group_.moduli();
  std::vector<bool> seen(n, false);
  std::vector<std::uint64_t> b(moduli.size());
  for (GroupElem idx = 0; idx < n; ++idx) {
    if (seen[idx]) continue;
    auto a = group_.coords(idx);
    const std::uint64_t o = order_of(a);
    std::uint64_t weight = 0;
    auto mark = [&](std::uint64_t u) {
      for (std::size_t i = 0; i < moduli.size(); ++i) b[i] = a[i] * (u % moduli[i]) % moduli[i];
      GroupElem j = group_.index(b);
      if (!seen[j]) {
        seen[j] = true;
        ++weight;
      }
    };
    if (characteristic_ == 0) {
      for (std::uint64_t u = 1; u <= o; ++u)
        if (gcd_u64(u, o) == 1) mark(u);
    } else {
      std::uint64_t u = 1 % o;
      do {
        mark(u == 0 ? o : u);
        u = u * (characteristic_ % o) % o;
      } while (u != 1 % o);
    }
    visit(a, weight);
  }
}

namespace {

bool divisible_by_cyclotomic(std::vector<std::int64_t>& v, std::uint64_t o) {
  if (o == 1) return v[0] == 0;
  auto primes = prime_factors(o);
  if (primes.size() == 1) {
    // Phi_o(x) = Phi_q(x^{o/q}): coefficients must be constant along each residue class mod o/q.
    const std::uint64_t q = primes[0];
    const std::uint64_t block = o / q;
    for (std::uint64_t r = 0; r < block; ++r)
      for (std::uint64_t i = 1; i < q; ++i)
        if (v[r + i * block] != v[r]) return false;
    return true;
  }
  const IntPoly& phi = cyclotomic(o);
  const auto deg = static_cast<std::size_t>(phi.degree());
  std::vector<Integer> w(v.begin(), v.end());
  for (std::size_t k = w.size(); k-- > deg;) {
    if (w[k] == 0) continue;
    Integer c = w[k];
    for (std::size_t i = 0; i <= deg; ++i) w[k - deg + i] -= c * phi.coeffs()[i];
  }
  for (std::size_t i = 0; i < deg; ++i)
    if (w[i] != 0) return false;
  return true;
}

}  // namespace

bool CharacterTable::vanishes(const Reduced& f, const std::vector<std::uint64_t>& a) const {
  if (f.is_zero()) return true;
  const std::size_t r = a.size();
  auto exponent_at = [&](std::size_t term) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < r; ++i) k = (k + a[i] * f.weights[term][i]) % exponent_;
    return k;
  };
  if (characteristic_ == 0) {
    const std::uint64_t o = order_of(a);
    const std::uint64_t step = exponent_ / o;
    std::vector<std::int64_t> v(o, 0);
    for (std::size_t t = 0; t < f.coeffs.size(); ++t) v[exponent_at(t) / step] += f.coeffs[t];
    return divisible_by_cyclotomic(v, o);
  }
  std::vector<std::uint64_t> folded(exponent_, 0);
  bool any = false;
  for (std::size_t t = 0; t < f.coeffs.size(); ++t) {
    auto& slot = folded[exponent_at(t)];
    slot = (slot + static_cast<std::uint64_t>(f.coeffs[t])) % characteristic_;
  }
  auto sum = field_->zero();
  for (std::uint64_t k = 0; k < exponent_; ++k) {
    if (folded[k] == 0) continue;
    any = true;
    sum = field_->add(sum, field_->scale(zeta_powers_[k], folded[k]));
  }
  return !any || field_->is_zero(sum);
}

std::optional<std::uint64_t> character_rank_sum(const LaurentMatrix& a, std::size_t rows, std::size_t cols,
                                                const AbelianGroup& group,
                                                const std::vector<GroupElem>& variable_images,
                                                std::uint64_t characteristic) {
  if (rows == 0 || cols == 0) return 0;
  if (characteristic != 0 && group.order() % characteristic == 0) return std::nullopt;
  if (rows > 20 || cols > 20) return std::nullopt;
  CharacterTable table(group, characteristic);
  auto minors = all_minors(a);
  std::vector<std::vector<CharacterTable::Reduced>> reduced(minors.size());
  for (std::size_t i = 0; i < minors.size(); ++i)
    for (const auto& m : minors[i]) {
      auto r = table.reduce(m, variable_images);
      if (!r.is_zero()) reduced[i].push_back(std::move(r));
    }
  std::uint64_t total = 0;
  table.for_each_orbit([&](const std::vector<std::uint64_t>& chi, std::uint64_t weight) {
    std::size_t rank = 0;
    for (std::size_t i = reduced.size(); i-- > 0 && rank == 0;) {
      for (const auto& m : reduced[i]) {
        if (!table.vanishes(m, chi)) {
          rank = i + 1;
          break;
        }
      }
    }
    total += weight * rank;
  });
  return total;
}

}  // namespace padicbetti
