#include "padicbetti/registry.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace padicbetti {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::size_t parse_count(const std::string& text, std::string_view what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument(std::string(what) + ": expected a nonnegative integer, got '" + text + "'");
  return std::stoul(text);
}

// "wedge(a,b)" -> {"a", "b"}; splits at the top-level comma.
std::pair<std::string, std::string> binary_args(std::string_view spec, std::size_t open) {
  if (spec.back() != ')') throw std::invalid_argument("missing ')' in '" + std::string(spec) + "'");
  std::string_view inner = spec.substr(open + 1, spec.size() - open - 2);
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) return {trim(inner.substr(0, i)), trim(inner.substr(i + 1))};
  }
  throw std::invalid_argument("expected two arguments in '" + std::string(spec) + "'");
}

// key=value list; "matrix=" swallows the rest of the string.
std::map<std::string, std::string> key_values(std::string_view text, std::string_view context) {
  std::map<std::string, std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t eq = text.find('=', i);
    if (eq == std::string_view::npos) throw std::invalid_argument(std::string(context) + ": expected key=value in '" + std::string(text.substr(i)) + "'");
    std::string key = trim(text.substr(i, eq - i));
    std::size_t end = key == "matrix" ? text.size() : std::min(text.find(',', eq), text.size());
    out[key] = trim(text.substr(eq + 1, end - eq - 1));
    i = end + 1;
  }
  return out;
}

unsigned long take_prime(std::map<std::string, std::string>& kv, unsigned long fallback, std::string_view context) {
  unsigned long p = fallback;
  if (auto it = kv.find("p"); it != kv.end()) {
    p = parse_count(it->second, std::string(context) + " p");
    kv.erase(it);
  }
  if (p == 0) throw std::invalid_argument(std::string(context) + ": no prime given (use p=... or --p)");
  require_prime(p);
  return p;
}

unsigned take_unsigned(std::map<std::string, std::string>& kv, const std::string& key, unsigned fallback,
                       std::string_view context) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  unsigned v = static_cast<unsigned>(parse_count(it->second, std::string(context) + " " + key));
  kv.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, std::string>& kv, std::string_view context) {
  if (!kv.empty()) throw std::invalid_argument(std::string(context) + ": unknown key '" + kv.begin()->first + "'");
}

std::vector<std::vector<Integer>> default_abelian_images(std::size_t generators, std::size_t d, std::uint64_t m) {
  std::vector<std::vector<Integer>> images;
  for (std::size_t i = 0; i < generators; ++i) {
    std::vector<Integer> v(d + (m > 1 ? 1 : 0), 0);
    if (m > 1) v[0] = 1;
    if (d > 0) v[(m > 1 ? 1 : 0) + i % d] = 1;
    images.push_back(std::move(v));
  }
  return images;
}

std::vector<std::vector<Integer>> parse_images(const std::string& text) {
  std::vector<std::vector<Integer>> images;
  std::stringstream groups(text);
  std::string item;
  while (std::getline(groups, item, '|')) {
    std::stringstream ss(item);
    std::string tok;
    std::vector<Integer> v;
    while (ss >> tok) v.push_back(parse_int_expression(tok));
    images.push_back(std::move(v));
  }
  return images;
}

std::vector<Integer> omega_residues(const Integer& omega, unsigned long p, unsigned depth) {
  std::vector<Integer> r;
  for (unsigned n = 1; n <= depth; ++n) r.push_back(mod_floor(omega, ipow(p, n)));
  return r;
}

void check_generator_count(const QuotientTower& t, std::size_t generators) {
  for (const auto& q : t.levels)
    if (q.images.size() != generators)
      throw std::invalid_argument("tower '" + t.name + "' has " + std::to_string(q.images.size()) +
                                  " generator images but the space has " + std::to_string(generators) + " generators");
}

}  // namespace

ChainComplexSpec build_space(std::string_view raw) {
  const std::string spec = trim(raw);
  if (spec.empty()) throw std::invalid_argument("empty space description");
  for (const char* op : {"wedge", "product"}) {
    const std::size_t len = std::char_traits<char>::length(op);
    if (spec.rfind(op, 0) == 0 && spec.size() > len && spec[len] == '(') {
      auto [a, b] = binary_args(spec, len);
      return std::string(op) == "wedge" ? complex_wedge(build_space(a), build_space(b))
                                        : complex_product(build_space(a), build_space(b));
    }
  }
  if (spec == "point") return complex_point();
  if (spec == "circle") return complex_circle();
  if (spec == "klein") return complex_klein_bottle();
  if (spec == "trefoil" || spec == "knot") return complex_trefoil();
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown space '" + spec + "'");
  const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
  if (kind == "torus") return complex_torus(parse_count(arg, "torus dimension"));
  if (kind == "surface") return complex_surface(parse_count(arg, "surface genus"));
  if (kind == "free") return complex_free(parse_count(arg, "free rank"));
  if (kind == "sphere") return complex_sphere(parse_count(arg, "sphere dimension"));
  if (kind == "fab") return complex_fab(parse_int_matrix(arg));
  if (kind == "presentation") return presentation_from_json(load_json_file(arg));
  if (kind == "complex") return complex_from_json(load_json_file(arg));
  throw std::invalid_argument("unknown space '" + spec + "'");
}

FiniteQuotient greedy_generated_quotient(std::shared_ptr<const FiniteGroup> g, std::size_t generators) {
  FiniteQuotient q{g, {}};
  std::vector<GroupElem> gens, closure{0};
  while (closure.size() < g->order()) {
    // the element enlarging the closure most; ties go to the smallest index
    GroupElem best = 0;
    std::vector<GroupElem> best_closure = closure;
    for (GroupElem x = 1; x < g->order(); ++x) {
      if (std::binary_search(closure.begin(), closure.end(), x)) continue;
      auto trial = gens;
      trial.push_back(x);
      auto cl = subgroup_closure(*g, trial);
      if (cl.size() > best_closure.size()) {
        best = x;
        best_closure = std::move(cl);
        if (best_closure.size() == g->order()) break;
      }
    }
    gens.push_back(best);
    closure = std::move(best_closure);
  }
  if (gens.size() > generators)
    throw std::invalid_argument(g->describe() + " needs " + std::to_string(gens.size()) + " generators but only " +
                                std::to_string(generators) + " are available");
  q.images = gens;
  q.images.resize(generators, 0);
  return q;
}

QuotientTower build_tower(std::string_view raw, const ChainComplexSpec& c, unsigned long default_p,
                          unsigned default_depth) {
  const std::string spec = trim(raw);
  const std::size_t gens = c.generator_count();
  const std::size_t colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  QuotientTower t;
  if (kind == "trivial") {
    unsigned long p = default_p == 0 ? 2 : default_p;
    t = tower_constant(trivial_quotient(gens), p, std::max(default_depth, 1u));
  } else if (kind == "abelian") {
    auto kv = key_values(rest, "abelian tower");
    unsigned long p = take_prime(kv, default_p, "abelian tower");
    unsigned depth = take_unsigned(kv, "depth", default_depth, "abelian tower");
    unsigned d = take_unsigned(kv, "d", 1, "abelian tower");
    unsigned m = take_unsigned(kv, "m", 1, "abelian tower");
    std::vector<std::vector<Integer>> images = default_abelian_images(gens, d, m);
    if (auto it = kv.find("images"); it != kv.end()) {
      images = parse_images(it->second);
      kv.erase(it);
    }
    reject_leftovers(kv, "abelian tower");
    t = tower_abelian(m, d, p, depth, images);
  } else if (kind == "line") {
    auto kv = key_values(rest, "line tower");
    unsigned long p = take_prime(kv, default_p, "line tower");
    unsigned depth = take_unsigned(kv, "depth", default_depth, "line tower");
    auto it = kv.find("omega");
    if (it == kv.end()) throw std::invalid_argument("line tower: omega=... is required");
    Integer omega = parse_int_expression(it->second);
    kv.erase(it);
    reject_leftovers(kv, "line tower");
    t = tower_irrational_line(p, depth, omega_residues(omega, p, depth));
  } else if (kind == "semidirect") {
    auto kv = key_values(rest, "semidirect tower");
    unsigned long p = take_prime(kv, default_p, "semidirect tower");
    unsigned depth = take_unsigned(kv, "depth", default_depth, "semidirect tower");
    auto it = kv.find("matrix");
    if (it == kv.end()) throw std::invalid_argument("semidirect tower: matrix=... is required (last)");
    IntMatrix a = parse_int_matrix(it->second);
    kv.erase(it);
    reject_leftovers(kv, "semidirect tower");
    t = tower_semidirect(a, p, depth);
  } else if (kind == "frattini") {
    const std::size_t comma = rest.find(',');
    const std::string group = trim(rest.substr(0, comma));
    auto kv = key_values(comma == std::string::npos ? "" : rest.substr(comma + 1), "frattini tower");
    unsigned long p = take_prime(kv, default_p, "frattini tower");
    reject_leftovers(kv, "frattini tower");
    t = tower_frattini(greedy_generated_quotient(small_group(group), gens), p);
  } else if (kind == "file") {
    t = tower_from_json(load_json_file(rest), gens);
  } else {
    throw std::invalid_argument("unknown tower '" + spec + "'");
  }
  check_generator_count(t, gens);
  return t;
}

QuotientTower tower_from_json(const Json& j, std::size_t generators) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("tower file: missing field 'kind'");
  const std::string kind = j["kind"];
  auto prime = [&]() {
    if (!j.contains("p")) throw std::invalid_argument("tower file: missing field 'p'");
    unsigned long p = j["p"].get<unsigned long>();
    require_prime(p);
    return p;
  };
  auto depth = [&]() { return j.value("depth", 3u); };
  auto int_rows = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array()) throw std::invalid_argument(std::string("tower file: missing list '") + key + "'");
    std::vector<std::vector<Integer>> rows;
    for (const auto& r : j[key]) {
      std::vector<Integer> row;
      for (const auto& x : r) row.push_back(integer_from_json(x, std::string("tower file: ") + key));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  auto element_images = [&](const FiniteGroup& g) {
    std::vector<GroupElem> imgs;
    for (const auto& x : j["generator_images"]) {
      auto v = x.get<std::uint64_t>();
      if (v >= g.order()) throw std::invalid_argument("tower file: generator image out of range");
      imgs.push_back(v);
    }
    if (imgs.size() != generators) throw std::invalid_argument("tower file: need one generator image per generator");
    return imgs;
  };

  if (kind == "abelian") {
    const std::uint64_t m = j.value("m", std::uint64_t{1});
    const std::size_t d = j.value("d", std::size_t{1});
    auto images = j.contains("generator_images") ? int_rows("generator_images") : default_abelian_images(generators, d, m);
    return tower_abelian(m, d, prime(), depth(), images);
  }
  if (kind == "line") {
    const unsigned long p = prime();
    return tower_irrational_line(p, depth(), omega_residues(integer_from_json(j.at("omega"), "tower file: omega"), p, depth()));
  }
  if (kind == "semidirect") {
    auto rows = int_rows("matrix");
    IntMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != a.cols()) throw std::invalid_argument("tower file: matrix rows have different lengths");
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = rows[r][c];
    }
    return tower_semidirect(a, prime(), depth());
  }
  if (kind == "frattini" || kind == "table") {
    std::shared_ptr<const FiniteGroup> g;
    if (j.contains("group")) {
      g = small_group(j["group"].get<std::string>());
    } else {
      const std::uint64_t order = j.at("order").get<std::uint64_t>();
      std::vector<std::uint32_t> table;
      for (const auto& x : j.at("table")) table.push_back(x.get<std::uint32_t>());
      g = std::make_shared<TableGroup>(order, std::move(table), j.value("name", std::string("table")));
    }
    FiniteQuotient q = j.contains("generator_images") ? FiniteQuotient{g, element_images(*g)}
                                                     : greedy_generated_quotient(g, generators);
    if (kind == "frattini") return tower_frattini(q, prime());
    return tower_constant(q, prime(), depth());
  }
  throw std::invalid_argument("tower file: unknown kind '" + kind + "'");
}

}  // namespace padicbetti
