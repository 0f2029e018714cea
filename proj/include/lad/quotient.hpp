// The quotient by the subgroups generated by point stabilizers: local G(v)+
// data, the quotient diagram, the free product expression of G/G+ read off a
// graph of groups over the reversal-free subdivision, and the recognition of
// small permutation groups by catalog name.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lad/diagram.hpp"

namespace lad {

// v -> subgroup of G(v) generated by all point stabilizers.
std::vector<PermGroup> plus_local_actions(const LocalActionDiagram& d);

// Same graph; each colour set replaced by the set of G(origin)+ -orbits in it
// (class label = first colour of the class in X_v order); each local action
// replaced by the induced action of G(v) on the classes, a regular image of
// G(v)/G(v)+.  The result is always free, so the operation is idempotent up
// to isomorphism.
LocalActionDiagram plus_quotient_diagram(const LocalActionDiagram& d);

enum class NamingContext {
    LocalAction,   // table conventions: orbit-signature decorations, S_2 at degree <= 3
    QuotientGroup, // abstract-type conventions: order 2 is always C_2
};

struct GroupName {
    std::string name;
    PermGroup witness;
};

// Catalog naming for |g| <= 120: 1, S_2, C_2^-, C_2^+, C_n, V^-, V^+, V,
// C_{3+2}, S_3, S_3^*, S_{3+2}, D_8, D_10, A_4, GA(1,5), S_4, A_5, S_5,
// generic C_n / S_k / A_k / D_{2n}, fallback "G(order=n)".  Decorations
// (signs, {m+n} orbit splits) depend on the orbit-size signature and apply in
// the LocalAction context only.
GroupName recognize_group(const PermGroup& g, NamingContext context);

struct FreeProductExpr {
    std::vector<std::string> named_factors;  // sorted; never "1", "C_2" or "Z"
    std::vector<PermGroup> named_witnesses;  // aligned with named_factors
    int c2_count = 0;
    int free_rank = 0;

    // Named factors, then C_2^{*c2_count}, then Z^{*free_rank}, joined by
    // " * "; the empty product renders as "1".
    std::string render() const;
    // Abelianization of the free product: multiset of the factor
    // abelianization orders (ascending, trivial entries dropped) plus the
    // free rank.  Distinguishes C_2 * C_2 from C_2 * Z.
    std::pair<std::vector<std::uint64_t>, int> abelianization() const;
};

// Fundamental group of the graph of groups over the reversal-free subdivision
// of the quotient diagram's graph: quotient local actions at original
// vertices, C_2 at subdivision vertices, trivial edge groups; hence the free
// product of the vertex groups with a free group of rank
// (geometric edges) - (vertices) + 1 of the subdivision.  A vertex whose
// local action is free contributes its full local action under LocalAction
// naming; other vertices contribute their quotient class action under
// QuotientGroup naming.  Factors named C_2 (any decoration) merge into
// c2_count.
FreeProductExpr free_product_of_quotient(const LocalActionDiagram& d);

} // namespace lad
