#include "padicbetti/complexes.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace padicbetti {

Word reduce_word(const Word& w) {
  Word out;
  for (int x : w) {
    if (x == 0) throw std::invalid_argument("word letter 0 is not a generator");
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce_word(out);
}

namespace {

std::string swap_case_first(std::string s) {
  if (s.empty()) return s;
  unsigned char c = static_cast<unsigned char>(s[0]);
  s[0] = static_cast<char>(std::isupper(c) ? std::tolower(c) : std::toupper(c));
  return s;
}

int lookup_letter(const std::string& token, const std::vector<std::string>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == token) return static_cast<int>(i + 1);
  std::string swapped = swap_case_first(token);
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == swapped) return -static_cast<int>(i + 1);
  return 0;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& generators) {
  std::vector<std::string> tokens;
  std::string s(text);
  bool spaced = s.find(' ') != std::string::npos;
  bool single_letters = std::all_of(generators.begin(), generators.end(), [](const std::string& g) { return g.size() == 1; });
  if (spaced || !single_letters) {
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  } else {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '^') {
        std::size_t j = i + 1;
        while (j < s.size() && (s[j] == '-' || std::isdigit(static_cast<unsigned char>(s[j])))) ++j;
        if (tokens.empty()) throw std::invalid_argument("word '" + s + "': exponent without generator");
        tokens.back() += s.substr(i, j - i);
        i = j - 1;
      } else {
        tokens.emplace_back(1, s[i]);
      }
    }
  }
  Word w;
  for (const auto& tok : tokens) {
    if (tok == "1") continue;
    std::string base = tok;
    long exponent = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      try {
        exponent = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("word '" + s + "': bad exponent in '" + tok + "'");
      }
    }
    int letter = lookup_letter(base, generators);
    if (letter == 0) throw std::invalid_argument("word '" + s + "': unknown generator '" + base + "'");
    if (exponent < 0) {
      letter = -letter;
      exponent = -exponent;
    }
    for (long k = 0; k < exponent; ++k) w.push_back(letter);
  }
  return reduce_word(w);
}

std::string word_to_string(const Word& w, const std::vector<std::string>& generators) {
  if (w.empty()) return "1";
  std::string out;
  for (int x : w) {
    if (!out.empty()) out += " ";
    const std::string& name = generators.at(static_cast<std::size_t>(std::abs(x)) - 1);
    out += x > 0 ? name : swap_case_first(name);
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupAlgebraElement GroupAlgebraElement::from_word(const Word& w, const Integer& c) {
  GroupAlgebraElement e;
  e.add(w, c);
  return e;
}

void GroupAlgebraElement::add(const Word& w, const Integer& c) {
  if (c == 0) return;
  Word r = reduce_word(w);
  Integer& slot = terms_[r];
  slot += c;
  if (slot == 0) terms_.erase(r);
}

GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out = a;
  for (const auto& [w, c] : b.terms_) out.add(w, c);
  return out;
}

GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out = a;
  for (const auto& [w, c] : b.terms_) out.add(w, -c);
  return out;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add(concat(wa, wb), ca * cb);
  return out;
}

GroupAlgebraElement operator*(const Integer& c, const GroupAlgebraElement& a) {
  GroupAlgebraElement out;
  for (const auto& [w, x] : a.terms_) out.add(w, c * x);
  return out;
}

std::string GroupAlgebraElement::to_string(const std::vector<std::string>& generators) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    bool neg = c < 0;
    Integer mag = abs(c);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (w.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "(" + word_to_string(w, generators) + ")";
    }
  }
  return out;
}

GroupAlgebraElement fox_derivative(const Word& w, int generator) {
  if (generator <= 0) throw std::invalid_argument("fox_derivative: generator index must be positive");
  GroupAlgebraElement out;
  Word prefix;
  for (int x : w) {
    if (x == generator) {
      out.add(prefix, 1);
    } else if (x == -generator) {
      Word q = prefix;
      q.push_back(x);
      out.add(q, -1);
    }
    prefix.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------

long ChainComplexSpec::euler_characteristic() const {
  long chi = 0;
  for (std::size_t j = 0; j < ranks.size(); ++j) chi += (j % 2 == 0 ? 1 : -1) * static_cast<long>(ranks[j]);
  return chi;
}

void ChainComplexSpec::validate() const {
  if (ranks.empty()) throw std::invalid_argument("complex '" + name + "': no ranks");
  if (boundaries.size() != ranks.size() - 1) {
    throw std::invalid_argument("complex '" + name + "': expected " + std::to_string(ranks.size() - 1) +
                                " boundary matrices, got " + std::to_string(boundaries.size()));
  }
  const int s = static_cast<int>(generators.size());
  for (std::size_t j = 1; j < ranks.size(); ++j) {
    const auto& a = boundaries[j - 1];
    if (a.size() != ranks[j]) {
      throw std::invalid_argument("complex '" + name + "': A_" + std::to_string(j) + " has wrong row count");
    }
    for (const auto& row : a) {
      if (row.size() != ranks[j - 1]) {
        throw std::invalid_argument("complex '" + name + "': A_" + std::to_string(j) + " has wrong column count");
      }
      for (const auto& e : row)
        for (const auto& [w, c] : e.terms())
          for (int x : w)
            if (std::abs(x) > s) {
              throw std::invalid_argument("complex '" + name + "': word uses an unknown generator");
            }
    }
  }
}

namespace {

GroupAlgebraElement gen_minus_one(int k) {
  GroupAlgebraElement e = GroupAlgebraElement::from_word({k}, 1);
  e.add({}, -1);
  return e;
}

GroupMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return GroupMatrix(rows, std::vector<GroupAlgebraElement>(cols));
}

Word shift_word(const Word& w, int offset) {
  Word out = w;
  for (int& x : out) x = x > 0 ? x + offset : x - offset;
  return out;
}

GroupAlgebraElement shift(const GroupAlgebraElement& e, int offset) {
  GroupAlgebraElement out;
  for (const auto& [w, c] : e.terms()) out.add(shift_word(w, offset), c);
  return out;
}

Word commutator_word(int a, int b) { return {a, b, -a, -b}; }

}  // namespace

ChainComplexSpec complex_from_presentation(const std::vector<std::string>& generators,
                                           const std::vector<Word>& relators, std::string name) {
  ChainComplexSpec c;
  c.name = std::move(name);
  c.generators = generators;
  const std::size_t s = generators.size();
  c.ranks = {1, s};
  GroupMatrix a1 = zero_matrix(s, 1);
  for (std::size_t i = 0; i < s; ++i) a1[i][0] = gen_minus_one(static_cast<int>(i + 1));
  c.boundaries.push_back(a1);
  if (!relators.empty()) {
    c.ranks.push_back(relators.size());
    GroupMatrix a2 = zero_matrix(relators.size(), s);
    for (std::size_t r = 0; r < relators.size(); ++r)
      for (std::size_t i = 0; i < s; ++i) a2[r][i] = fox_derivative(relators[r], static_cast<int>(i + 1));
    c.boundaries.push_back(a2);
  }
  c.validate();
  return c;
}

ChainComplexSpec complex_torus(std::size_t d) {
  if (d < 1) throw std::invalid_argument("complex_torus: dimension must be at least 1");
  if (d > 12) throw std::invalid_argument("complex_torus: dimension too large");
  ChainComplexSpec c;
  c.name = "torus:" + std::to_string(d);
  for (std::size_t i = 0; i < d; ++i) c.generators.push_back("t" + std::to_string(i + 1));
  // Basis of C_j: subsets of size j in increasing bitmask order.
  std::vector<std::vector<std::uint32_t>> basis(d + 1);
  for (std::uint32_t m = 0; m < (1U << d); ++m) basis[static_cast<std::size_t>(__builtin_popcount(m))].push_back(m);
  for (std::size_t j = 0; j <= d; ++j) c.ranks.push_back(basis[j].size());
  for (std::size_t j = 1; j <= d; ++j) {
    GroupMatrix a = zero_matrix(basis[j].size(), basis[j - 1].size());
    for (std::size_t r = 0; r < basis[j].size(); ++r) {
      std::uint32_t s = basis[j][r];
      int k = 0;
      for (std::size_t i = 0; i < d; ++i) {
        if ((s & (1U << i)) == 0) continue;
        std::uint32_t face = s & ~(1U << i);
        auto col = static_cast<std::size_t>(std::find(basis[j - 1].begin(), basis[j - 1].end(), face) - basis[j - 1].begin());
        GroupAlgebraElement e = gen_minus_one(static_cast<int>(i + 1));
        a[r][col] = (k % 2 == 0) ? e : Integer(-1) * e;
        ++k;
      }
    }
    c.boundaries.push_back(a);
  }
  c.validate();
  return c;
}

ChainComplexSpec complex_circle() {
  ChainComplexSpec c = complex_torus(1);
  c.name = "circle";
  c.generators = {"t"};
  return c;
}

ChainComplexSpec complex_point() {
  ChainComplexSpec c;
  c.name = "point";
  c.ranks = {1};
  return c;
}

ChainComplexSpec complex_sphere(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complex_sphere: dimension must be at least 2 (use complex_circle)");
  ChainComplexSpec c;
  c.name = "sphere:" + std::to_string(n);
  c.ranks.assign(n + 1, 0);
  c.ranks[0] = 1;
  c.ranks[n] = 1;
  for (std::size_t j = 1; j <= n; ++j) c.boundaries.push_back(zero_matrix(c.ranks[j], c.ranks[j - 1]));
  c.validate();
  return c;
}

ChainComplexSpec complex_surface(std::size_t genus) {
  if (genus < 1) throw std::invalid_argument("complex_surface: genus must be at least 1");
  std::vector<std::string> gens;
  Word rel;
  for (std::size_t i = 0; i < genus; ++i) {
    gens.push_back("a" + std::to_string(i + 1));
    gens.push_back("b" + std::to_string(i + 1));
    Word cw = commutator_word(static_cast<int>(2 * i + 1), static_cast<int>(2 * i + 2));
    rel.insert(rel.end(), cw.begin(), cw.end());
  }
  return complex_from_presentation(gens, {rel}, "surface:" + std::to_string(genus));
}

ChainComplexSpec complex_free(std::size_t rank) {
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back("g" + std::to_string(i + 1));
  return complex_from_presentation(gens, {}, "free:" + std::to_string(rank));
}

ChainComplexSpec complex_trefoil() {
  // <x, y | x y x = y x y>
  return complex_from_presentation({"x", "y"}, {{1, 2, 1, -2, -1, -2}}, "trefoil");
}

ChainComplexSpec complex_klein_bottle() {
  return complex_from_presentation({"a", "b"}, {{1, 2, 1, -2}}, "klein");
}

ChainComplexSpec complex_fab(const IntMatrix& a) {
  if (!a.is_square() || a.rows() == 0) throw std::invalid_argument("complex_fab: square matrix required");
  const std::size_t n = a.rows();
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back("x" + std::to_string(i + 1));
  gens.push_back("t");
  const int t = static_cast<int>(n + 1);
  std::vector<Word> rels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) rels.push_back(commutator_word(static_cast<int>(i + 1), static_cast<int>(j + 1)));
  for (std::size_t i = 0; i < n; ++i) {
    Word image;
    for (std::size_t k = 0; k < n; ++k) {
      long e = a(k, i).get_si();
      int letter = e >= 0 ? static_cast<int>(k + 1) : -static_cast<int>(k + 1);
      for (long r = 0; r < std::labs(e); ++r) image.push_back(letter);
    }
    Word rel{t, static_cast<int>(i + 1), -t};
    Word inv = inverse_word(image);
    rel.insert(rel.end(), inv.begin(), inv.end());
    rels.push_back(reduce_word(rel));
  }
  ChainComplexSpec c = complex_from_presentation(gens, rels, "fab");
  c.complete = false;
  return c;
}

ChainComplexSpec complex_wedge(const ChainComplexSpec& a, const ChainComplexSpec& b) {
  if (a.ranks.empty() || b.ranks.empty() || a.ranks[0] != 1 || b.ranks[0] != 1) {
    throw std::invalid_argument("wedge requires based complexes");
  }
  ChainComplexSpec c;
  c.name = "wedge(" + a.name + "," + b.name + ")";
  c.generators = a.generators;
  c.generators.insert(c.generators.end(), b.generators.begin(), b.generators.end());
  const int offset = static_cast<int>(a.generators.size());
  const std::size_t d = std::max(a.dimension(), b.dimension());
  auto rank_of = [](const ChainComplexSpec& x, std::size_t j) { return j < x.ranks.size() ? x.ranks[j] : 0; };
  c.ranks.push_back(1);
  for (std::size_t j = 1; j <= d; ++j) c.ranks.push_back(rank_of(a, j) + rank_of(b, j));
  for (std::size_t j = 1; j <= d; ++j) {
    GroupMatrix m = zero_matrix(c.ranks[j], c.ranks[j - 1]);
    const std::size_t ra = rank_of(a, j);
    const std::size_t ca = j == 1 ? 0 : rank_of(a, j - 1);
    if (j <= a.dimension()) {
      for (std::size_t r = 0; r < ra; ++r)
        for (std::size_t col = 0; col < rank_of(a, j - 1); ++col) m[r][col] = a.boundary(j)[r][col];
    }
    if (j <= b.dimension()) {
      for (std::size_t r = 0; r < rank_of(b, j); ++r)
        for (std::size_t col = 0; col < rank_of(b, j - 1); ++col) m[ra + r][ca + col] = shift(b.boundary(j)[r][col], offset);
    }
    c.boundaries.push_back(m);
  }
  c.complete = a.complete && b.complete;
  c.validate();
  return c;
}

ChainComplexSpec complex_product(const ChainComplexSpec& a, const ChainComplexSpec& b) {
  ChainComplexSpec c;
  c.name = "product(" + a.name + "," + b.name + ")";
  c.generators = a.generators;
  c.generators.insert(c.generators.end(), b.generators.begin(), b.generators.end());
  const int offset = static_cast<int>(a.generators.size());
  const std::size_t da = a.dimension();
  const std::size_t db = b.dimension();
  const std::size_t d = da + db;
  // Basis of C_n: (i, x, y) with i + j = n, ordered by i, then x, then y.
  struct Cell {
    std::size_t i, x, y;
  };
  std::vector<std::vector<Cell>> basis(d + 1);
  for (std::size_t n = 0; n <= d; ++n)
    for (std::size_t i = 0; i <= std::min(n, da); ++i) {
      std::size_t j = n - i;
      if (j > db) continue;
      for (std::size_t x = 0; x < a.ranks[i]; ++x)
        for (std::size_t y = 0; y < b.ranks[j]; ++y) basis[n].push_back({i, x, y});
    }
  for (std::size_t n = 0; n <= d; ++n) c.ranks.push_back(basis[n].size());
  for (std::size_t n = 1; n <= d; ++n) {
    GroupMatrix m = zero_matrix(basis[n].size(), basis[n - 1].size());
    auto find_cell = [&](std::size_t i, std::size_t x, std::size_t y) {
      for (std::size_t k = 0; k < basis[n - 1].size(); ++k) {
        const auto& cell = basis[n - 1][k];
        if (cell.i == i && cell.x == x && cell.y == y) return k;
      }
      throw std::logic_error("complex_product: missing cell");
    };
    for (std::size_t r = 0; r < basis[n].size(); ++r) {
      const Cell& cell = basis[n][r];
      const std::size_t j = n - cell.i;
      if (cell.i >= 1) {
        for (std::size_t x2 = 0; x2 < a.ranks[cell.i - 1]; ++x2) {
          const auto& e = a.boundary(cell.i)[cell.x][x2];
          if (e.is_zero()) continue;
          std::size_t col = find_cell(cell.i - 1, x2, cell.y);
          m[r][col] = m[r][col] + e;
        }
      }
      if (j >= 1) {
        for (std::size_t y2 = 0; y2 < b.ranks[j - 1]; ++y2) {
          const auto& e = b.boundary(j)[cell.y][y2];
          if (e.is_zero()) continue;
          std::size_t col = find_cell(cell.i, cell.x, y2);
          GroupAlgebraElement term = shift(e, offset);
          m[r][col] = cell.i % 2 == 0 ? m[r][col] + term : m[r][col] - term;
        }
      }
    }
    c.boundaries.push_back(m);
  }
  c.complete = a.complete && b.complete;
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------

GroupElem word_image(const Word& w, const FiniteQuotient& q) {
  GroupElem x = 0;
  for (int letter : w) {
    auto idx = static_cast<std::size_t>(std::abs(letter)) - 1;
    if (idx >= q.images.size()) throw std::invalid_argument("generator image missing for letter " + std::to_string(letter));
    GroupElem g = q.images[idx];
    x = q.group->multiply(x, letter > 0 ? g : q.group->inverse(g));
  }
  return x;
}

namespace {

// For each term of each entry: the permutation x -> x * w as a table.
template <class Emit>
void for_each_block_term(const GroupMatrix& a, std::size_t rows, std::size_t cols, const FiniteQuotient& q, Emit emit) {
  if (a.size() != rows) throw std::invalid_argument("reduce_matrix: row count mismatch");
  const std::uint64_t n = q.order();
  std::vector<std::vector<GroupElem>> gen_right;
  std::vector<std::vector<GroupElem>> gen_right_inv;
  for (GroupElem g : q.images) {
    gen_right.push_back(q.right_multiplication(g));
    gen_right_inv.push_back(q.right_multiplication(q.group->inverse(g)));
  }
  std::vector<GroupElem> perm(n);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw std::invalid_argument("reduce_matrix: column count mismatch");
    for (std::size_t m = 0; m < cols; ++m) {
      for (const auto& [w, c] : a[i][m].terms()) {
        for (GroupElem x = 0; x < n; ++x) perm[x] = x;
        for (int letter : w) {
          auto idx = static_cast<std::size_t>(std::abs(letter)) - 1;
          if (idx >= q.images.size()) {
            throw std::invalid_argument("generator image missing for letter " + std::to_string(letter));
          }
          const auto& step = letter > 0 ? gen_right[idx] : gen_right_inv[idx];
          for (GroupElem x = 0; x < n; ++x) perm[x] = step[perm[x]];
        }
        emit(i, m, c, perm);
      }
    }
  }
}

}  // namespace

IntMatrix reduce_matrix(const GroupMatrix& a, std::size_t rows, std::size_t cols, const FiniteQuotient& q) {
  const std::uint64_t n = q.order();
  IntMatrix out(rows * n, cols * n);
  for_each_block_term(a, rows, cols, q,
                      [&](std::size_t i, std::size_t m, const Integer& c, const std::vector<GroupElem>& perm) {
                        for (GroupElem x = 0; x < n; ++x) out(i * n + x, m * n + perm[x]) += c;
                      });
  return out;
}

FpMatrix reduce_matrix_fp(const GroupMatrix& a, std::size_t rows, std::size_t cols, const FiniteQuotient& q,
                          std::uint64_t ell) {
  const std::uint64_t n = q.order();
  FpMatrix out(ell, rows * n, cols * n);
  for_each_block_term(a, rows, cols, q,
                      [&](std::size_t i, std::size_t m, const Integer& c, const std::vector<GroupElem>& perm) {
                        Integer cm = mod_floor(c, Integer(static_cast<unsigned long>(ell)));
                        auto v = static_cast<std::int64_t>(cm.get_ui());
                        for (GroupElem x = 0; x < n; ++x) out.add(i * n + x, m * n + perm[x], v);
                      });
  return out;
}

LaurentPoly abelianize(const GroupAlgebraElement& x, std::size_t generators, std::uint64_t characteristic) {
  LaurentPoly out(generators, characteristic);
  for (const auto& [w, c] : x.terms()) {
    LaurentPoly::Exponent e(generators, 0);
    for (int letter : w) {
      auto idx = static_cast<std::size_t>(std::abs(letter)) - 1;
      if (idx >= generators) throw std::invalid_argument("abelianize: letter out of range");
      e[idx] += letter > 0 ? 1 : -1;
    }
    out.add_term(e, c);
  }
  return out;
}

LaurentMatrix abelianize(const GroupMatrix& a, std::size_t rows, std::size_t cols, std::size_t generators,
                         std::uint64_t characteristic) {
  LaurentMatrix out(rows, std::vector<LaurentPoly>(cols, LaurentPoly(generators, characteristic)));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[i][j] = abelianize(a[i][j], generators, characteristic);
  return out;
}

}  // namespace padicbetti
