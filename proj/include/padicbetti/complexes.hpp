#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "padicbetti/groups.hpp"
#include "padicbetti/integer.hpp"
#include "padicbetti/matrix.hpp"
#include "padicbetti/poly.hpp"

namespace padicbetti {

/// Word in generators g_1..g_s: entry k > 0 is g_k, entry -k is g_k^-1.
using Word = std::vector<int>;

Word reduce_word(const Word& w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);
// "a b A" style with capital letters for inverses, resolved against generator names.
Word parse_word(std::string_view text, const std::vector<std::string>& generators);
std::string word_to_string(const Word& w, const std::vector<std::string>& generators);

/// Finite Z-linear combination of reduced words.
class GroupAlgebraElement {
 public:
  GroupAlgebraElement() = default;
  static GroupAlgebraElement from_word(const Word& w, const Integer& c = 1);
  static GroupAlgebraElement scalar(const Integer& c) { return from_word({}, c); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Integer>& terms() const { return terms_; }
  void add(const Word& w, const Integer& c);

  friend GroupAlgebraElement operator+(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator-(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const Integer& c, const GroupAlgebraElement& a);
  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

  std::string to_string(const std::vector<std::string>& generators) const;

 private:
  std::map<Word, Integer> terms_;
};

/// Fox derivative d w / d g_i (generator index i >= 1).
GroupAlgebraElement fox_derivative(const Word& w, int generator);

using GroupMatrix = std::vector<std::vector<GroupAlgebraElement>>;

/// Cellular chain complex of the universal cover as free Z[Gamma]-modules:
/// ranks e_0..e_d and A_j (e_j x e_{j-1}) with d(x_i^(j)) = sum_m a_im x_m^(j-1).
struct ChainComplexSpec {
  std::string name;
  std::vector<std::string> generators;
  std::vector<std::size_t> ranks;
  std::vector<GroupMatrix> boundaries;  // boundaries[j - 1] = A_j
  // True when the complex is a whole finite CW complex, not a skeleton.
  bool complete = true;

  std::size_t dimension() const { return ranks.empty() ? 0 : ranks.size() - 1; }
  std::size_t generator_count() const { return generators.size(); }
  const GroupMatrix& boundary(std::size_t j) const { return boundaries.at(j - 1); }
  long euler_characteristic() const;
  // Shape consistency; throws std::invalid_argument.
  void validate() const;
};

ChainComplexSpec complex_from_presentation(const std::vector<std::string>& generators,
                                           const std::vector<Word>& relators, std::string name = "presentation");
ChainComplexSpec complex_torus(std::size_t d);
ChainComplexSpec complex_circle();
ChainComplexSpec complex_point();
ChainComplexSpec complex_sphere(std::size_t n);  // one 0-cell and one n-cell, n >= 2
ChainComplexSpec complex_surface(std::size_t genus);
ChainComplexSpec complex_free(std::size_t rank);
ChainComplexSpec complex_trefoil();
ChainComplexSpec complex_klein_bottle();
// Presentation 2-complex of Z^N x|_A Z; generators x1..xN, t.
ChainComplexSpec complex_fab(const IntMatrix& a);
ChainComplexSpec complex_wedge(const ChainComplexSpec& a, const ChainComplexSpec& b);
ChainComplexSpec complex_product(const ChainComplexSpec& a, const ChainComplexSpec& b);

GroupElem word_image(const Word& w, const FiniteQuotient& q);

/// Matrix of the right regular representation r(A) on C(Q)^cols, i.e. block
/// (i, m) is sum_w c_w P(w) with P(g)[x, x g] = 1. Shape (rows|Q|) x (cols|Q|).
IntMatrix reduce_matrix(const GroupMatrix& a, std::size_t rows, std::size_t cols, const FiniteQuotient& q);
FpMatrix reduce_matrix_fp(const GroupMatrix& a, std::size_t rows, std::size_t cols, const FiniteQuotient& q,
                          std::uint64_t ell);

/// Image of an element in the abelianization Z^s as a Laurent polynomial.
LaurentPoly abelianize(const GroupAlgebraElement& x, std::size_t generators, std::uint64_t characteristic = 0);
LaurentMatrix abelianize(const GroupMatrix& a, std::size_t rows, std::size_t cols, std::size_t generators,
                         std::uint64_t characteristic = 0);

}  // namespace padicbetti
