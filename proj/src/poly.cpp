#include "padicbetti/poly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace padicbetti {

namespace {

struct ParsedTerm {
  Integer coeff;
  std::vector<std::pair<std::string, long>> factors;  // variable name, exponent
};

[[noreturn]] void parse_error(std::string_view text, std::size_t pos, const std::string& what) {
  throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "' at position " +
                              std::to_string(pos) + ": " + what);
}

// Expanded sum of monomials: [sign] [coeff] [*] var[^exp] [*] var[^exp] ...
std::vector<ParsedTerm> parse_terms(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) parse_error(text, 0, "empty input");
  std::vector<ParsedTerm> out;
  std::size_t i = 0;
  auto read_int = [&](std::size_t& j) {
    std::size_t start = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return s.substr(start, j - start);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!out.empty()) {
      parse_error(text, i, "expected '+' or '-'");
    }
    ParsedTerm term;
    std::string digits = read_int(i);
    term.coeff = digits.empty() ? Integer(1) : Integer(digits);
    bool need_factor = digits.empty();
    if (i < s.size() && s[i] == '*') {
      ++i;
      need_factor = true;
    }
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      std::size_t start = i;
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      std::string name = s.substr(start, i - start);
      long exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          esign = s[i] == '-' ? -1 : 1;
          ++i;
        }
        if (i < s.size() && s[i] == '(') {
          ++i;
          if (i < s.size() && s[i] == '-') {
            esign = -esign;
            ++i;
          }
          std::string e = read_int(i);
          if (e.empty() || i >= s.size() || s[i] != ')') parse_error(text, i, "bad exponent");
          ++i;
          exponent = esign * std::stol(e);
        } else {
          std::string e = read_int(i);
          if (e.empty()) parse_error(text, i, "missing exponent");
          exponent = esign * std::stol(e);
        }
      }
      term.factors.emplace_back(name, exponent);
      need_factor = false;
      if (i < s.size() && s[i] == '*') {
        ++i;
        need_factor = true;
      }
    }
    if (need_factor) parse_error(text, i, "expected a term");
    term.coeff *= sign;
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t degree) {
  std::vector<Integer> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::parse(std::string_view text) {
  IntPoly out;
  for (const auto& term : parse_terms(text)) {
    long degree = 0;
    for (const auto& [name, e] : term.factors) {
      if (name != "t" && name != "x") {
        throw std::invalid_argument("polynomial '" + std::string(text) + "': unknown variable '" + name + "'");
      }
      degree += e;
    }
    if (degree < 0) throw std::invalid_argument("polynomial '" + std::string(text) + "': negative exponent");
    out = out + monomial(term.coeff, static_cast<std::size_t>(degree));
  }
  return out;
}

Integer IntPoly::evaluate(const Integer& x) const {
  Integer r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

IntPoly IntPoly::derivative() const {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return IntPoly(std::move(d));
}

namespace {

template <class C>
std::string render(const std::vector<C>& coeffs, char var) {
  if (coeffs.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const C& c = coeffs[k];
    if (c == 0) continue;
    bool neg = c < 0;
    C mag = neg ? C(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit = mag == 1;
    if (!unit || k == 0) out += mag.get_str();
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace

std::string IntPoly::to_string(char var) const { return render(coeffs_, var); }

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  normalize();
}

RatPoly::RatPoly(const IntPoly& p) {
  for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
}

RatPoly RatPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return RatPoly(std::move(v));
}

void RatPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  RatPoly out = *this;
  Rational lead = leading();
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return RatPoly(std::move(d));
}

IntPoly RatPoly::primitive() const {
  if (is_zero()) return IntPoly();
  Integer den = 1;
  for (const auto& c : coeffs_) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> v;
  Integer content = 0;
  for (const auto& c : coeffs_) {
    Integer x = c.get_num() * (den / c.get_den());
    content = gcd(content, x);
    v.push_back(x);
  }
  if (v.back() < 0) content = -content;
  for (auto& x : v) x /= content;
  return IntPoly(std::move(v));
}

std::string RatPoly::to_string(char var) const { return render(coeffs_, var); }

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RatPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {RatPoly(), a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto db = static_cast<std::size_t>(b.degree());
  const Rational& lead = b.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational q = rem[k + db] / lead;
    quo[k] = q;
    if (q == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= q * b.coeffs()[i];
  }
  rem.resize(db);
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a;
  RatPoly y = b;
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

RatPoly power_of_t_mod(const Integer& e, const RatPoly& f) {
  if (f.degree() < 1) throw std::invalid_argument("power_of_t_mod: modulus must have positive degree");
  RatPoly result = divmod(RatPoly::monomial(1, 0), f).second;
  RatPoly base = divmod(RatPoly::monomial(1, 1), f).second;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t k = bits; k-- > 0;) {
    result = divmod(result * result, f).second;
    if (mpz_tstbit(e.get_mpz_t(), k) != 0) result = divmod(result * base, f).second;
  }
  return result;
}

RatPoly radical(const RatPoly& f) {
  if (f.is_zero()) throw std::domain_error("radical of the zero polynomial");
  RatPoly g = poly_gcd(f, f.derivative());
  if (g.is_zero()) return f.monic();
  return divmod(f, g).first.monic();
}

const IntPoly& cyclotomic(std::uint64_t n) {
  static std::mutex mutex;
  static std::unordered_map<std::uint64_t, IntPoly> cache;
  if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
  RatPoly num(IntPoly::monomial(1, n) - IntPoly::constant(1));
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = divmod(num, RatPoly(cyclotomic(d))).first;
  }
  IntPoly phi = num.primitive();
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(phi)).first->second;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(std::size_t vars, const Integer& c, std::uint64_t characteristic) {
  LaurentPoly p(vars, characteristic);
  p.add_term(Exponent(vars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const Integer& c, std::uint64_t characteristic) {
  LaurentPoly p(e.size(), characteristic);
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(const Exponent& e, const Integer& c) {
  if (e.size() != vars_) throw std::invalid_argument("LaurentPoly: exponent length mismatch");
  Integer& slot = terms_[e];
  slot += c;
  if (char_ != 0) slot = mod_floor(slot, Integer(static_cast<unsigned long>(char_)));
  if (slot == 0) terms_.erase(e);
}

LaurentPoly LaurentPoly::parse(std::string_view text, std::size_t vars, std::uint64_t characteristic) {
  LaurentPoly out(vars, characteristic);
  for (const auto& term : parse_terms(text)) {
    Exponent e(vars, 0);
    for (const auto& [name, x] : term.factors) {
      std::size_t idx = 0;
      if (name == "t" && vars == 1) {
        idx = 0;
      } else if (name.size() > 1 && name[0] == 't') {
        idx = std::stoul(name.substr(1));
        if (idx < 1 || idx > vars) {
          throw std::invalid_argument("Laurent polynomial '" + std::string(text) + "': variable " + name +
                                      " out of range");
        }
        --idx;
      } else {
        throw std::invalid_argument("Laurent polynomial '" + std::string(text) + "': unknown variable '" + name + "'");
      }
      e[idx] += static_cast<int>(x);
    }
    out.add_term(e, term.coeff);
  }
  return out;
}

int LaurentPoly::spread() const {
  int best = 0;
  for (std::size_t v = 0; v < vars_; ++v) {
    int lo = 0;
    int hi = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first) {
        lo = hi = e[v];
        first = false;
      }
      lo = std::min(lo, e[v]);
      hi = std::max(hi, e[v]);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    bool neg = c < 0;
    Integer mag = abs(c);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (std::size_t v = 0; v < vars_; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_ == 1 ? std::string("t") : "t" + std::to_string(v + 1);
      if (e[v] != 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += mono;
    }
  }
  return out;
}

namespace {

void check_compatible(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.vars() != b.vars() || a.characteristic() != b.characteristic()) {
    throw std::invalid_argument("LaurentPoly: incompatible operands");
  }
}

}  // namespace

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  check_compatible(a, b);
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  check_compatible(a, b);
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
  return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_compatible(a, b);
  LaurentPoly out(a.vars_, a.char_);
  LaurentPoly::Exponent e(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < a.vars_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  return out;
}

std::vector<std::vector<LaurentPoly>> all_minors(const LaurentMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  if (rows > 20 || cols > 20) throw std::invalid_argument("all_minors: matrix too large");
  std::vector<std::vector<LaurentPoly>> out;
  if (rows == 0 || cols == 0) return out;
  const std::size_t vars = a[0][0].vars();
  const std::uint64_t ch = a[0][0].characteristic();
  // minors keyed by (row mask, col mask) of equal popcount
  std::map<std::pair<std::uint32_t, std::uint32_t>, LaurentPoly> prev;
  std::vector<LaurentPoly> level;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      prev[{1U << r, 1U << c}] = a[r][c];
      level.push_back(a[r][c]);
    }
  out.push_back(level);
  const std::size_t kmax = std::min(rows, cols);
  for (std::size_t k = 2; k <= kmax; ++k) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, LaurentPoly> cur;
    level.clear();
    for (std::uint32_t rm = 0; rm < (1U << rows); ++rm) {
      if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
      int top = __builtin_ctz(rm);
      std::uint32_t rest = rm & ~(1U << top);
      for (std::uint32_t cm = 0; cm < (1U << cols); ++cm) {
        if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
        // Expand along the first selected row.
        LaurentPoly det(vars, ch);
        int sign = 1;
        for (std::size_t c = 0; c < cols; ++c) {
          if ((cm & (1U << c)) == 0) continue;
          const LaurentPoly& entry = a[static_cast<std::size_t>(top)][c];
          if (!entry.is_zero()) {
            const LaurentPoly& sub = prev.at({rest, cm & ~(1U << c)});
            if (!sub.is_zero()) {
              LaurentPoly t = entry * sub;
              det = sign > 0 ? det + t : det - t;
            }
          }
          sign = -sign;
        }
        level.push_back(det);
        cur[{rm, cm}] = std::move(det);
      }
    }
    out.push_back(level);
    prev = std::move(cur);
  }
  return out;
}

}  // namespace padicbetti
