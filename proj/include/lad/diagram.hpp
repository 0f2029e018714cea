// Local action diagrams: a connected graph whose arcs carry nonempty colour
// sets and whose vertices carry permutation groups, such that at each vertex
// the colour sets of the outgoing arcs are exactly the orbits of the group on
// X_v, the concatenation of those colour sets in arc order.  Colour labels
// are globally unique strings; the position of a colour inside X_v fixes the
// point it denotes for the local action.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lad/perm.hpp"
#include "lad/sgraph.hpp"

namespace lad {

class LocalActionDiagram {
public:
    LocalActionDiagram() = default;
    LocalActionDiagram(SerreGraph graph,
                       std::vector<std::vector<std::string>> arc_colours,
                       std::vector<PermGroup> local_actions);

    const SerreGraph& graph() const { return graph_; }
    const std::vector<std::string>& colours(int arc) const {
        return arc_colours_[static_cast<std::size_t>(arc)];
    }
    const PermGroup& local_action(int vertex) const {
        return local_actions_[static_cast<std::size_t>(vertex)];
    }

    // Size of X_v: sum of the colour set sizes over the out-arcs of v.
    int vertex_degree(int vertex) const;
    // X_v itself: colour labels in arc order, then colour order.
    std::vector<std::string> vertex_colours(int vertex) const;
    // Point index of `colour` within X_{origin(arc)}; the colour must belong
    // to the arc's colour set.
    int point_of(int arc, const std::string& colour) const;
    // Inverse direction: (arc, label) of a point of X_v.
    std::pair<int, std::string> point_info(int vertex, int point) const;
    // Arc carrying the given colour label (labels are globally unique).
    int arc_of_colour(const std::string& colour) const;

private:
    SerreGraph graph_;
    std::vector<std::vector<std::string>> arc_colours_;
    std::vector<PermGroup> local_actions_;
};

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> violations;
};

// Checks connectivity, nonempty colour sets, global label uniqueness, degree
// agreement, and that the orbit partition of each local action equals the
// partition of X_v into arc colour sets.
ValidationReport validate(const LocalActionDiagram& d);

struct DiagramIso {
    std::vector<int> vertex_map;              // domain vertex -> image vertex
    std::vector<int> arc_map;                 // domain arc -> image arc
    std::vector<std::vector<int>> colour_maps; // per domain arc: position -> position in image arc
};

struct IsoBudget {
    std::uint64_t max_steps = 20'000'000;
};

// Witnessed isomorphism: a graph isomorphism respecting origin and reversal,
// together with per-vertex colour bijections mapping each colour set onto the
// image colour set and conjugating the local action onto the image local
// action.  Throws BudgetError when the search exceeds the budget.
std::optional<DiagramIso> isomorphic(const LocalActionDiagram& d1,
                                     const LocalActionDiagram& d2,
                                     const IsoBudget& budget = {});

// Single-vertex diagram for a permutation group H on d points and an
// involutive pairing r of its orbit list (orbits sorted by least point).
// Orbit i becomes an arc with the orbit's 1-based points as colour labels;
// the arc is self-reversed when r fixes i.
LocalActionDiagram vt_diagram(const PermGroup& h, const Perm& orbit_pairing);

struct StarFactor {
    PermGroup group;    // G_i
    PermGroup subgroup; // U_i, a subgroup of G_i on the same points
};

// Star with centre v0 and one leaf per factor.  The centre carries a direct
// product of copies of Sym(3), one per leaf arc; leaf i carries the left
// translation action of G_i on the coset space G_i/U_i.  Preconditions (each
// reported individually): U_i proper and nontrivial, G_i generated by the
// conjugates of U_i, and the core of U_i in G_i trivial.
LocalActionDiagram star_diagram(const std::vector<StarFactor>& factors);

// Bipartite double of a single-vertex diagram whose quotient expression is
// exactly one C_2: two copies of the vertex, every arc becomes an arc pair
// between them, colour labels tagged ".0"/".1" per side.
LocalActionDiagram double_diagram(const LocalActionDiagram& d);

// Restriction to the subgraph induced on `vertices`, which must be a cotree:
// collapsing it to a single vertex leaves a tree, and every arc from outside
// oriented toward it has a singleton colour set.  Local actions are restricted
// to the retained points.
LocalActionDiagram restrict_to_cotree(const LocalActionDiagram& d,
                                      const std::vector<int>& vertices);

// Serialization; parsing round-trips bit-exactly through to_json.
std::string to_json(const LocalActionDiagram& d);
LocalActionDiagram diagram_from_json(const std::string& text);

// Minimal encoding over all vertex orderings and per-arc colour orderings;
// equal keys characterize isomorphic diagrams.  Throws BudgetError when the
// search space exceeds the budget.
std::string canonical_key(const LocalActionDiagram& d, const IsoBudget& budget = {});

} // namespace lad
