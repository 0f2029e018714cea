// Strongly confluent partial orientations (s.c.p.o.s) of a local action
// diagram, their attractors, and the geometric classification of the action
// of the associated universal group on its tree.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lad/diagram.hpp"

namespace lad {

// Arc index set, sorted ascending.  Invariants: every arc has a singleton
// colour set and is not self-reversed; no arc appears together with its
// reverse; at most one arc of O originates at any vertex; and when an arc of
// O originates at v, every arc terminating at v other than the reverse of
// that arc belongs to O.
using Scpo = std::vector<int>;

// All s.c.p.o.s of a valid diagram, by constraint propagation over the
// singleton-colour non-self-reversed arcs.  Always contains the empty
// orientation; deterministic order (sorted as sets).
std::vector<Scpo> enumerate_scpos(const LocalActionDiagram& d);

enum class ScpoKind {
    CotreeOrientation, // O points toward the subgraph induced on the attractor
    CycleOrientation,  // the attractor induces a cycle graph carrying O
};

struct ScpoClass {
    ScpoKind kind = ScpoKind::CotreeOrientation;
    std::vector<int> attractor; // vertices on periodic orbits of f_O, ascending
    // CycleOrientation only: the arcs of O around the attractor cycle, in
    // cyclic order starting from the least vertex.
    std::vector<int> cycle;
};

// Iterates f_O (follow the unique O-arc out of a vertex, else stay) to find
// the periodic vertices, then decides which branch of the trichotomy applies.
// The end-fixing branch cannot occur on a finite graph.  Throws ContractError
// when O is not an s.c.p.o. of d.
ScpoClass classify_scpo(const LocalActionDiagram& d, const Scpo& o);

enum class ActionType {
    FixedVertex,
    Inversion,
    Lineal,
    Focal,
    GeneralType,
};

struct ActionReport {
    bool irreducible = false;
    ActionType action_type = ActionType::GeneralType;
    int fixed_end_count = 0; // 2 for Lineal, 1 for Focal, 0 otherwise
    std::vector<int> minimal_cotree; // vertex indices, ascending
    bool is_free = false;            // every local action acts freely
    bool geometrically_dense = false; // equivalent to irreducible
    std::uint64_t scpo_count = 0;
};

// Classification precedence: FixedVertex when some single-vertex cotree with
// no arcs exists (minimal_cotree then lists all such vertices); else
// Inversion when the minimal cotree is one vertex whose only arc is a
// self-reversed singleton loop; else Lineal when some attractor cycle has
// singleton colours on all its arcs in both directions; else Focal when a
// cycle-type orientation remains; else GeneralType.  The minimal cotree in
// the non-FixedVertex cases is the attractor of the largest cotree-type
// s.c.p.o.
ActionReport analyze_action(const LocalActionDiagram& d);

std::string to_string(ActionType t);

} // namespace lad
