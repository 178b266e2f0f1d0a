#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "padicbetti/approximation.hpp"
#include "padicbetti/atiyah.hpp"
#include "padicbetti/complexes.hpp"
#include "padicbetti/cyclic_covers.hpp"
#include "padicbetti/matrix.hpp"
#include "padicbetti/padic.hpp"

namespace padicbetti {

using Json = nlohmann::json;

// Integers that fit int64 become JSON numbers, larger ones strings.
Json to_json(const Integer& x);
Integer integer_from_json(const Json& j, std::string_view context);

Json to_json(const PAdicApprox& a);
Json to_json(const InvariantSequence& s);
Json to_json(const IntMatrix& m);
Json to_json(const RootCountResult& r);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const Json& j);

/// Complex files:
///   {"name": "...", "generators": ["x", "y"], "ranks": [1, 2, 1], "complete": true,
///    "boundaries": [ A_1, A_2, ... ]}
/// where A_j is a list of e_j rows of e_{j-1} entries, each entry a list of
/// ["word", coefficient] pairs (words as in "x y X", capitals are inverses).
/// Presentation files: {"generators": [...], "relators": ["x y X Y", ...]}.
ChainComplexSpec complex_from_json(const Json& j);
Json complex_to_json(const ChainComplexSpec& c);
ChainComplexSpec presentation_from_json(const Json& j);
Json load_json_file(const std::string& path);

/// "a,b;c,d" with entries like "1+25", "-3", "2^3".
IntMatrix parse_int_matrix(std::string_view text);
Integer parse_int_expression(std::string_view text);

/// Atiyah files: {"d": 1, "s": 0, "field": "F3", "p": 2,
///   "matrix": [["t1 - 1", "0"], ...], "lambda": [[5], ...]}.
AtiyahInstance atiyah_from_json(const Json& j);

}  // namespace padicbetti
