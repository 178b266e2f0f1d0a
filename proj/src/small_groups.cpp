#include <array>
#include <functional>
#include <stdexcept>
#include <string>

#include "padicbetti/groups.hpp"
#include "padicbetti/padic.hpp"

namespace padicbetti {

namespace {

// Z/n x| Z/k with generator of Z/k acting by multiplication with r (r^k = 1 mod n).
std::shared_ptr<const FiniteGroup> metacyclic(std::uint64_t n, std::uint64_t k, std::uint64_t r, std::string name) {
  std::vector<std::uint64_t> rpow(k, 1);
  for (std::uint64_t i = 1; i < k; ++i) rpow[i] = rpow[i - 1] * r % n;
  if (rpow[k - 1] * r % n != 1) throw std::logic_error("metacyclic: bad action");
  return TableGroup::from_function(
      n * k,
      [=](GroupElem x, GroupElem y) {
        std::uint64_t a = x % n, b = x / n, c = y % n, d = y / n;
        return (a + rpow[b] * c) % n + n * ((b + d) % k);
      },
      std::move(name));
}

// Dicyclic group of order 4m: x of order 2m, y^2 = x^m, y x y^-1 = x^-1.
std::shared_ptr<const FiniteGroup> dicyclic(std::uint64_t m, std::string name) {
  const std::uint64_t n = 2 * m;
  return TableGroup::from_function(
      2 * n,
      [=](GroupElem x, GroupElem y) {
        std::uint64_t a = x % n, b = x / n, c = y % n, d = y / n;
        if (b == 0) return (a + c) % n + n * d;
        std::uint64_t e = (a + n - c) % n;
        if (d == 0) return e + n;
        return (e + m) % n;
      },
      std::move(name));
}

std::shared_ptr<const FiniteGroup> heisenberg(std::uint64_t p) {
  return TableGroup::from_function(
      p * p * p,
      [=](GroupElem x, GroupElem y) {
        std::uint64_t a = x % p, b = x / p % p, c = x / (p * p);
        std::uint64_t a2 = y % p, b2 = y / p % p, c2 = y / (p * p);
        return (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p);
      },
      "Heis" + std::to_string(p));
}

// (Z/4 x Z/2) x| Z/2 with c a c^-1 = a b; elements a^i b^j c^k.
std::shared_ptr<const FiniteGroup> c2sq_c4() {
  auto phi = [](std::uint64_t i, std::uint64_t j, std::uint64_t k) { return std::pair{i, k ? (j + i) % 2 : j}; };
  return TableGroup::from_function(
      16,
      [=](GroupElem x, GroupElem y) {
        std::uint64_t i = x % 4, j = x / 4 % 2, k = x / 8;
        auto [i2, j2] = phi(y % 4, y / 4 % 2, k);
        return (i + i2) % 4 + 4 * ((j + j2) % 2) + 8 * ((k + y / 8) % 2);
      },
      "C2^2:C4");
}

// Pauli group: i^k X^a Z^b with Z X = -X Z.
std::shared_ptr<const FiniteGroup> pauli() {
  return TableGroup::from_function(
      16,
      [](GroupElem x, GroupElem y) {
        std::uint64_t k = x % 4, a = x / 4 % 2, b = x / 8;
        std::uint64_t l = y % 4, c = y / 4 % 2, d = y / 8;
        return (k + l + 2 * b * c) % 4 + 4 * ((a + c) % 2) + 8 * ((b + d) % 2);
      },
      "C4oD8");
}

// (Z/3)^3 x| Z/3 by cyclic shift of coordinates.
std::shared_ptr<const FiniteGroup> wreath3() {
  return TableGroup::from_function(
      81,
      [](GroupElem x, GroupElem y) {
        static constexpr std::uint64_t pw[3] = {1, 3, 9};
        std::uint64_t k = x / 27, l = y / 27, out = 0;
        for (std::uint64_t i = 0; i < 3; ++i) {
          std::uint64_t v = x / pw[i] % 3, w = y / pw[(i + 3 - k) % 3] % 3;
          out += pw[i] * ((v + w) % 3);
        }
        return out + 27 * ((k + l) % 3);
      },
      "C3wrC3");
}

std::shared_ptr<const FiniteGroup> symmetric3() {
  // Permutations of {0,1,2} listed with the identity first.
  static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  auto index_of = [](const std::array<int, 3>& q) {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == q) return static_cast<GroupElem>(i);
    throw std::logic_error("S3: permutation not found");
  };
  return TableGroup::from_function(
      6,
      [&](GroupElem x, GroupElem y) {
        std::array<int, 3> c{};
        // (xy)(i) = x(y(i))
        for (int i = 0; i < 3; ++i) c[i] = perms[x][perms[y][i]];
        return index_of(c);
      },
      "S3");
}

}  // namespace

std::shared_ptr<const FiniteGroup> small_group(std::string_view name_view) {
  std::string name(name_view);
  if (name.find('x') != std::string::npos) {
    // Direct products "C2xC4", "C2xD8"; cyclic factors stay in abelian form.
    std::shared_ptr<const FiniteGroup> acc;
    std::size_t pos = 0;
    for (;;) {
      std::size_t next = name.find('x', pos);
      std::string part = name.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (part.empty()) throw std::invalid_argument("unknown group '" + name + "'");
      auto factor = small_group(part);
      acc = acc ? direct_product(acc, factor) : factor;
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return acc;
  }
  if (name == "D8") return metacyclic(4, 2, 3, "D8");
  if (name == "D16") return metacyclic(8, 2, 7, "D16");
  if (name == "SD16") return metacyclic(8, 2, 3, "SD16");
  if (name == "M16") return metacyclic(8, 2, 5, "M16");
  if (name == "C4:C4") return metacyclic(4, 4, 3, "C4:C4");
  if (name == "Q8") return dicyclic(2, "Q8");
  if (name == "Q16") return dicyclic(4, "Q16");
  if (name == "C9:C3") return metacyclic(9, 3, 4, "C9:C3");
  if (name == "C9:C9") return metacyclic(9, 9, 4, "C9:C9");
  if (name == "C27:C3") return metacyclic(27, 3, 10, "C27:C3");
  if (name == "C2^2:C4") return c2sq_c4();
  if (name == "C4oD8") return pauli();
  if (name == "C3wrC3") return wreath3();
  if (name == "S3") return symmetric3();
  if (name.rfind("Heis", 0) == 0) {
    unsigned long p = 0;
    try {
      p = std::stoul(name.substr(4));
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown group '" + name + "'");
    }
    require_prime(p);
    return heisenberg(p);
  }
  // Cyclic "C8" or homocyclic power "C3^2".
  if (name.size() < 2 || name[0] != 'C') throw std::invalid_argument("unknown group '" + name + "'");
  std::size_t caret = name.find('^');
  std::uint64_t n = 0;
  std::uint64_t reps = 1;
  try {
    n = std::stoull(name.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    if (caret != std::string::npos) reps = std::stoull(name.substr(caret + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("unknown group '" + name + "'");
  }
  if (n == 0) throw std::invalid_argument("unknown group '" + name + "'");
  return std::make_shared<AbelianGroup>(std::vector<std::uint64_t>(reps, n));
}

std::vector<std::vector<std::uint64_t>> abelian_p_group_types(unsigned long p, unsigned max_exponent) {
  require_prime(p);
  std::vector<std::vector<std::uint64_t>> out;
  // partitions of k into nonincreasing parts
  std::vector<unsigned> parts;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned maxpart) {
    if (remaining == 0) {
      std::vector<std::uint64_t> moduli;
      for (unsigned e : parts) {
        std::uint64_t m = 1;
        for (unsigned i = 0; i < e; ++i) m *= p;
        moduli.push_back(m);
      }
      out.push_back(moduli);
      return;
    }
    for (unsigned e = std::min(remaining, maxpart); e >= 1; --e) {
      parts.push_back(e);
      rec(remaining - e, e);
      parts.pop_back();
    }
  };
  for (unsigned k = 0; k <= max_exponent; ++k) rec(k, k);
  return out;
}

std::vector<std::string> nonabelian_small_group_names(unsigned long p) {
  if (p == 2) return {"D8", "Q8", "D16", "Q16", "SD16", "M16", "C4:C4", "C2xD8", "C2xQ8", "C2^2:C4", "C4oD8"};
  // order 81: five of the ten nonabelian groups
  if (p == 3) return {"Heis3", "C9:C3", "C9:C9", "C27:C3", "C3xHeis3", "C3xC9:C3", "C3wrC3"};
  return {};
}

}  // namespace padicbetti
