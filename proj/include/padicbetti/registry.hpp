#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "padicbetti/complexes.hpp"
#include "padicbetti/groups.hpp"
#include "padicbetti/serialize.hpp"

namespace padicbetti {

/// Space names understood by the CLI:
///   point, circle, klein, trefoil (alias knot), torus:d, surface:g, free:r, sphere:n,
///   fab:<matrix "a,b;c,d">, wedge(X,Y), product(X,Y), presentation:<file>, complex:<file>.
ChainComplexSpec build_space(std::string_view spec);

/// Tower descriptions (key=value lists; `matrix=` must come last):
///   trivial
///   abelian:p=3,d=2[,m=1][,depth=4][,images=1 0|0 1]   images per generator, separated by '|'
///   line:p=2,omega=12[,depth=4]                        Gamma = <s, t>, s -> omega, t -> 1
///   semidirect:p=5[,depth=3],matrix=26,5;5,1
///   frattini:C4^2[,p=2]                                images: a greedy generating set
///   file:<tower.json>
/// `p` and `depth` fall back to the given defaults. The generator count comes from c.
QuotientTower build_tower(std::string_view spec, const ChainComplexSpec& c, unsigned long default_p,
                          unsigned default_depth);

/// {"kind": "abelian"|"line"|"semidirect"|"frattini"|"table", ...}; see README for fields.
QuotientTower tower_from_json(const Json& j, std::size_t generators);

/// Sends generator i to the i-th element of a greedy generating set of g (identity once exhausted).
/// Throws when g needs more than `generators` elements this way.
FiniteQuotient greedy_generated_quotient(std::shared_ptr<const FiniteGroup> g, std::size_t generators);

}  // namespace padicbetti
