// Finite-radius balls of the tree associated with a local action diagram:
// vertices are non-backtracking coloured walks from a base vertex, arcs carry
// the colouring L, and the projection pi sends a walk to the diagram vertex
// it reaches.  Ball maps between two such balls model restrictions of
// elements of the universal group; counting the root-fixing ones uses a
// closed product formula cross-checked by explicit enumeration.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lad/diagram.hpp"

namespace lad {

struct BallOptions {
    // The construction picks one reverse colour per step; the deterministic
    // choice is the first colour of the reverse arc.  Randomizing instead
    // must yield an isomorphic ball (test hook).
    bool randomize_reverse_labels = false;
    std::uint64_t seed = 0;
};

struct BallBudget {
    std::uint64_t max_vertices = 200'000;
};

class DeltaTreeBall {
public:
    struct Node {
        int parent = -1;          // -1 at the root
        int depth = 0;
        std::string colour_in;    // L(parent -> this); empty at the root
        std::string colour_back;  // L(this -> parent); empty at the root
        int diagram_vertex = 0;   // pi(this)
        std::vector<int> children;
    };

    DeltaTreeBall(LocalActionDiagram diagram, int base_vertex, int radius,
                  std::vector<Node> nodes);

    const LocalActionDiagram& diagram() const { return diagram_; }
    int base_vertex() const { return base_vertex_; }
    int radius() const { return radius_; }
    // Breadth-first order; node 0 is the root.
    const std::vector<Node>& nodes() const { return nodes_; }
    int vertex_count() const { return static_cast<int>(nodes_.size()); }
    bool is_interior(int node) const { return nodes_[static_cast<std::size_t>(node)].depth < radius_; }

private:
    LocalActionDiagram diagram_;
    int base_vertex_ = 0;
    int radius_ = 0;
    std::vector<Node> nodes_;
};

// Ball of the given radius rooted at the empty walk over `base_vertex`.
// Children of a node are ordered by the position of their inbound colour in
// X_{pi(node)}.  Throws BudgetError with the predicted vertex count when it
// would exceed the budget.
DeltaTreeBall build_ball(const LocalActionDiagram& d, int base_vertex, int radius,
                         const BallOptions& options = {}, const BallBudget& budget = {});

// Predicted vertex count of the radius-`radius` ball (the count build_ball
// would produce), by the colour-degree recurrence; no construction happens.
std::uint64_t predict_ball_size(const LocalActionDiagram& d, int base_vertex, int radius);

// One line per vertex: depth, colour sequence, projection, backward colour.
std::string ball_to_text(const DeltaTreeBall& b);

// A ball map is a vertex bijection domain -> image given as a vector over
// domain nodes; it must send root to root, respect parent adjacency, depth,
// and projection.
using BallMap = std::vector<int>;

// The local action of g at interior node v: the permutation of X_{pi(v)}
// induced on inbound colours of the arcs below and above v.  Throws
// ContractError("boundary vertex") when v has depth == radius.
Perm local_action_at(const DeltaTreeBall& domain, const DeltaTreeBall& image,
                     const BallMap& g, int node);

// Root-fixing ball maps of b onto itself whose local action at every
// interior node lies in the local action group there; capped enumeration.
std::vector<BallMap> enumerate_ball_automorphisms(const DeltaTreeBall& b,
                                                  std::uint64_t max_count);

// |G(pi(root))| times the product over interior non-root nodes w of the
// order of the stabilizer of w's backward colour point in G(pi(w)).
// Cross-checked against enumerate_ball_automorphisms whenever the predicted
// count is at most 10^6.  radius >= 1.
std::uint64_t count_u_ball_automorphisms(const LocalActionDiagram& d, int base_vertex,
                                         int radius);

// Rooted pi-respecting isomorphism test between balls of equal radius over
// the same diagram (no local-action condition).
bool balls_isomorphic(const DeltaTreeBall& a, const DeltaTreeBall& b);

} // namespace lad
