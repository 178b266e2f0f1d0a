#include "padicbetti/serialize.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace padicbetti {

Json to_json(const Integer& x) {
  if (fits_int64(x)) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j, std::string_view context) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw std::invalid_argument(std::string(context) + ": expected an integer");
}

Json to_json(const PAdicApprox& a) {
  return Json{{"p", a.prime()},
              {"precision", a.precision()},
              {"residue", to_json(a.residue())},
              {"status", std::string(to_string(a.status()))}};
}

namespace {

std::string kind_name(InvariantKind k) {
  switch (k) {
    case InvariantKind::betti: return "betti";
    case InvariantKind::torsion: return "torsion";
    case InvariantKind::euler: return "euler";
  }
  return "betti";
}

}  // namespace

Json to_json(const InvariantSequence& s) {
  Json levels = Json::array();
  for (const auto& l : s.levels)
    levels.push_back(Json{{"n", l.n}, {"order", l.order}, {"value", to_json(l.value)}});
  Json checks = Json::object();
  checks["monotone"] = s.monotone ? Json(*s.monotone) : Json(nullptr);
  checks["euler"] = s.euler ? Json(*s.euler) : Json(nullptr);
  Json out{{"kind", kind_name(s.request.kind)}, {"levels", levels}, {"limit", to_json(s.limit)}, {"checks", checks}};
  if (s.request.kind != InvariantKind::euler) out["degree"] = s.request.degree;
  if (s.request.kind == InvariantKind::betti) out["field"] = s.request.field.to_string();
  return out;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const RootCountResult& r) {
  return Json{{"count", r.count}, {"stabilized_at", r.stabilized_at}, {"witness_order", to_json(r.witness_order)}};
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> string_list(const Json& j, std::string_view context) {
  if (!j.is_array()) throw std::invalid_argument(std::string(context) + ": expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw std::invalid_argument(std::string(context) + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

const Json& field(const Json& j, const char* key, std::string_view context) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string(context) + ": missing field '" + key + "'");
  return j.at(key);
}

}  // namespace

ChainComplexSpec complex_from_json(const Json& j) {
  ChainComplexSpec c;
  c.name = j.value("name", std::string("complex"));
  c.generators = string_list(field(j, "generators", "complex"), "complex.generators");
  const Json& ranks = field(j, "ranks", "complex");
  if (!ranks.is_array() || ranks.empty()) throw std::invalid_argument("complex.ranks: expected a nonempty list");
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (!ranks[i].is_number_unsigned() && !(ranks[i].is_number_integer() && ranks[i].get<long>() >= 0))
      throw std::invalid_argument("complex.ranks[" + std::to_string(i) + "]: expected a nonnegative integer");
    c.ranks.push_back(ranks[i].get<std::size_t>());
  }
  c.complete = j.value("complete", true);
  const Json& bds = field(j, "boundaries", "complex");
  if (!bds.is_array() || bds.size() + 1 != c.ranks.size())
    throw std::invalid_argument("complex.boundaries: expected one matrix per positive degree");
  for (std::size_t d = 0; d < bds.size(); ++d) {
    const std::string ctx = "complex.boundaries[" + std::to_string(d) + "]";
    const Json& mat = bds[d];
    if (!mat.is_array() || mat.size() != c.ranks[d + 1])
      throw std::invalid_argument(ctx + ": expected " + std::to_string(c.ranks[d + 1]) + " rows");
    GroupMatrix gm;
    for (std::size_t r = 0; r < mat.size(); ++r) {
      if (!mat[r].is_array() || mat[r].size() != c.ranks[d])
        throw std::invalid_argument(ctx + "[" + std::to_string(r) + "]: expected " + std::to_string(c.ranks[d]) + " entries");
      std::vector<GroupAlgebraElement> row;
      for (std::size_t col = 0; col < mat[r].size(); ++col) {
        const std::string ectx = ctx + "[" + std::to_string(r) + "][" + std::to_string(col) + "]";
        GroupAlgebraElement x;
        for (const auto& term : mat[r][col]) {
          // [word, coefficient]; [coefficient, word] is accepted too
          if (!term.is_array() || term.size() != 2 || (!term[0].is_string() && !term[1].is_string()))
            throw std::invalid_argument(ectx + ": terms are [\"word\", coefficient] pairs");
          const bool word_first = term[0].is_string() && !term[1].is_string();
          const Json& word = word_first ? term[0] : term[1];
          const Json& coef = word_first ? term[1] : term[0];
          try {
            x.add(parse_word(word.get<std::string>(), c.generators), integer_from_json(coef, ectx));
          } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(ectx + ": " + e.what());
          }
        }
        row.push_back(std::move(x));
      }
      gm.push_back(std::move(row));
    }
    c.boundaries.push_back(std::move(gm));
  }
  c.validate();
  return c;
}

Json complex_to_json(const ChainComplexSpec& c) {
  Json bds = Json::array();
  for (const auto& m : c.boundaries) {
    Json mat = Json::array();
    for (const auto& row : m) {
      Json r = Json::array();
      for (const auto& x : row) {
        Json terms = Json::array();
        for (const auto& [w, coef] : x.terms()) terms.push_back(Json::array({word_to_string(w, c.generators), to_json(coef)}));
        r.push_back(terms);
      }
      mat.push_back(r);
    }
    bds.push_back(mat);
  }
  return Json{{"name", c.name}, {"generators", c.generators}, {"ranks", c.ranks}, {"complete", c.complete}, {"boundaries", bds}};
}

ChainComplexSpec presentation_from_json(const Json& j) {
  auto gens = string_list(field(j, "generators", "presentation"), "presentation.generators");
  auto rels = string_list(field(j, "relators", "presentation"), "presentation.relators");
  std::vector<Word> words;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    try {
      words.push_back(parse_word(rels[i], gens));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("presentation.relators[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return complex_from_presentation(gens, words, j.value("name", std::string("presentation")));
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Integer parse_int_expression(std::string_view text) {
  // sum of products of powers: "1+5^2", "-3*2"
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty integer expression");
  std::size_t i = 0;
  auto number = [&]() -> Integer {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw std::invalid_argument("bad integer expression '" + std::string(text) + "'");
    return Integer(s.substr(start, i - start));
  };
  auto power = [&]() -> Integer {
    Integer b = number();
    if (i < s.size() && s[i] == '^') {
      ++i;
      Integer e = number();
      if (!e.fits_ulong_p() || e > 4096) throw std::invalid_argument("exponent too large");
      b = ipow(b, e.get_ui());
    }
    return b;
  };
  Integer total = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    Integer term = power();
    while (i < s.size() && s[i] == '*') {
      ++i;
      term *= power();
    }
    total += sign * term;
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("bad integer expression '" + std::string(text) + "'");
  }
  return total;
}

IntMatrix parse_int_matrix(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::string s(text);
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    std::string row = s.substr(start, end - start);
    std::vector<Integer> r;
    std::size_t a = 0;
    while (a <= row.size()) {
      std::size_t b = row.find(',', a);
      if (b == std::string::npos) b = row.size();
      r.push_back(parse_int_expression(row.substr(a, b - a)));
      a = b + 1;
    }
    rows.push_back(std::move(r));
    start = end + 1;
  }
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw std::invalid_argument("matrix rows have different lengths");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

AtiyahInstance atiyah_from_json(const Json& j) {
  AtiyahInstance inst;
  inst.d = field(j, "d", "atiyah").get<std::size_t>();
  inst.s = j.value("s", std::size_t{0});
  inst.p = j.value("p", 2UL);
  inst.field = FieldSpec::parse(j.value("field", std::string("Q")));
  const Json& mat = field(j, "matrix", "atiyah");
  if (!mat.is_array() || mat.empty()) throw std::invalid_argument("atiyah.matrix: expected a nonempty list of rows");
  inst.rows = mat.size();
  inst.cols = mat[0].size();
  for (std::size_t r = 0; r < mat.size(); ++r) {
    auto row = string_list(mat[r], "atiyah.matrix[" + std::to_string(r) + "]");
    if (row.size() != inst.cols) throw std::invalid_argument("atiyah.matrix[" + std::to_string(r) + "]: wrong length");
    std::vector<LaurentPoly> prow;
    for (const auto& e : row) prow.push_back(LaurentPoly::parse(e, inst.d + inst.s, inst.field.characteristic));
    inst.a.push_back(std::move(prow));
  }
  if (j.contains("lambda")) {
    for (std::size_t r = 0; r < j["lambda"].size(); ++r) {
      std::vector<Integer> row;
      for (const auto& x : j["lambda"][r]) row.push_back(integer_from_json(x, "atiyah.lambda"));
      inst.lambda.push_back(std::move(row));
    }
  }
  inst.validate();
  return inst;
}

}  // namespace padicbetti
