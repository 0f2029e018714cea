// Graphs with an arc-reversal involution: arcs carry an origin map o and a
// bijection a -> reverse(a) with reverse(reverse(a)) = a; terminus(a) is
// origin(reverse(a)).  A loop may equal its own reverse (self-reversed) or
// not (orientable).  Vertex and arc identifiers are opaque strings; the
// prefix "_rfs_" is reserved for subdivision vertices and arcs.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lad/common.hpp"

namespace lad {

inline constexpr const char* kReservedIdPrefix = "_rfs_";

class SerreGraph {
public:
    struct ArcSpec {
        std::string id;
        std::string origin;
        std::string reverse; // arc id; equal to `id` for a self-reversed arc
    };

    // Validates identifier uniqueness, the reversal involution, and origin
    // totality.  Reserved-prefix identifiers are rejected unless
    // `allow_reserved` (used only by reversal_free_subdivision).
    static SerreGraph build(std::vector<std::string> vertex_ids,
                            std::vector<ArcSpec> arcs,
                            bool allow_reserved = false);

    int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
    int arc_count() const { return static_cast<int>(arc_ids_.size()); }

    const std::string& vertex_id(int v) const { return vertex_ids_[static_cast<std::size_t>(v)]; }
    const std::string& arc_id(int a) const { return arc_ids_[static_cast<std::size_t>(a)]; }
    int vertex_index(const std::string& id) const; // throws ContractError when unknown
    int arc_index(const std::string& id) const;

    int origin(int a) const { return origin_[static_cast<std::size_t>(a)]; }
    int reverse(int a) const { return reverse_[static_cast<std::size_t>(a)]; }
    int terminus(int a) const { return origin(reverse(a)); }
    bool is_self_reversed(int a) const { return reverse(a) == a; }
    bool is_loop(int a) const { return origin(a) == terminus(a); }

    // Arcs originating at v, ascending by arc index; degree(v) is their count.
    const std::vector<int>& out_arcs(int v) const { return out_arcs_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(out_arcs(v).size()); }

    int self_reversed_count() const;
    // Each self-reversed arc is one geometric edge; orientable arcs pair up.
    int geometric_edge_count() const;

    bool connected() const;

    // Subgraph induced on the given vertices: keeps every arc whose origin and
    // terminus both lie in the set (reverses are then kept automatically).
    SerreGraph induced_subgraph(const std::vector<int>& vertices) const;

private:
    std::vector<std::string> vertex_ids_;
    std::vector<std::string> arc_ids_;
    std::vector<int> origin_;
    std::vector<int> reverse_;
    std::vector<std::vector<int>> out_arcs_;
};

struct GraphReport {
    bool connected = false;
    bool simple = false; // no loops, no parallel geometric edges
    bool tree = false;
    // Present iff the graph is a cycle graph: connected, no self-reversed
    // arcs, every vertex of degree 2.  Order 1 is a vertex with an orientable
    // loop; order 2 is two vertices joined by two geometric edges.
    std::optional<int> cycle_order;
    std::vector<int> leaves; // vertices of degree 1, ascending
    int geometric_edge_count = 0;
};

GraphReport classify_graph(const SerreGraph& g);

// Replaces every self-reversed loop a at v by a geometric edge between v and
// a fresh vertex; all other arcs are unchanged.  Returns the new graph and
// the indices (in it) of the added vertices.
std::pair<SerreGraph, std::vector<int>> reversal_free_subdivision(const SerreGraph& g);

} // namespace lad
