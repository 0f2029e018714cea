#include "lad/sgraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lad {

namespace {

bool has_reserved_prefix(const std::string& id) {
    return id.rfind(kReservedIdPrefix, 0) == 0;
}

} // namespace

SerreGraph SerreGraph::build(std::vector<std::string> vertex_ids,
                             std::vector<ArcSpec> arcs,
                             bool allow_reserved) {
    SerreGraph g;
    std::map<std::string, int> vidx, aidx;
    for (const std::string& id : vertex_ids) {
        if (id.empty()) throw ContractError("empty vertex identifier");
        if (!allow_reserved && has_reserved_prefix(id))
            throw ContractError("vertex identifier uses the reserved prefix: " + id);
        if (!vidx.emplace(id, static_cast<int>(g.vertex_ids_.size())).second)
            throw ContractError("duplicate vertex identifier: " + id);
        g.vertex_ids_.push_back(id);
    }
    for (const ArcSpec& a : arcs) {
        if (a.id.empty()) throw ContractError("empty arc identifier");
        if (!allow_reserved && has_reserved_prefix(a.id))
            throw ContractError("arc identifier uses the reserved prefix: " + a.id);
        if (!aidx.emplace(a.id, static_cast<int>(g.arc_ids_.size())).second)
            throw ContractError("duplicate arc identifier: " + a.id);
        g.arc_ids_.push_back(a.id);
    }
    g.origin_.resize(arcs.size());
    g.reverse_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        auto vit = vidx.find(arcs[i].origin);
        if (vit == vidx.end())
            throw ContractError("arc " + arcs[i].id + " has unknown origin " + arcs[i].origin);
        g.origin_[i] = vit->second;
        auto ait = aidx.find(arcs[i].reverse);
        if (ait == aidx.end())
            throw ContractError("arc " + arcs[i].id + " has unknown reverse " + arcs[i].reverse);
        g.reverse_[i] = ait->second;
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        std::size_t r = static_cast<std::size_t>(g.reverse_[i]);
        if (g.reverse_[r] != static_cast<int>(i))
            throw ContractError("reversal is not an involution at arc " + g.arc_ids_[i]);
    }
    g.out_arcs_.resize(g.vertex_ids_.size());
    for (std::size_t i = 0; i < arcs.size(); ++i)
        g.out_arcs_[static_cast<std::size_t>(g.origin_[i])].push_back(static_cast<int>(i));
    return g;
}

int SerreGraph::vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertex_ids_.size(); ++i)
        if (vertex_ids_[i] == id) return static_cast<int>(i);
    throw ContractError("unknown vertex identifier: " + id);
}

int SerreGraph::arc_index(const std::string& id) const {
    for (std::size_t i = 0; i < arc_ids_.size(); ++i)
        if (arc_ids_[i] == id) return static_cast<int>(i);
    throw ContractError("unknown arc identifier: " + id);
}

int SerreGraph::self_reversed_count() const {
    int s = 0;
    for (int a = 0; a < arc_count(); ++a)
        if (is_self_reversed(a)) ++s;
    return s;
}

int SerreGraph::geometric_edge_count() const {
    int s = self_reversed_count();
    return s + (arc_count() - s) / 2;
}

bool SerreGraph::connected() const {
    if (vertex_count() == 0) return false;
    std::vector<bool> seen(static_cast<std::size_t>(vertex_count()), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int found = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int a : out_arcs(v)) {
            int w = terminus(a);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++found;
                stack.push_back(w);
            }
        }
    }
    return found == vertex_count();
}

SerreGraph SerreGraph::induced_subgraph(const std::vector<int>& vertices) const {
    std::set<int> keep(vertices.begin(), vertices.end());
    std::vector<std::string> vids;
    for (int v = 0; v < vertex_count(); ++v)
        if (keep.count(v)) vids.push_back(vertex_id(v));
    std::vector<ArcSpec> arcs;
    for (int a = 0; a < arc_count(); ++a)
        if (keep.count(origin(a)) && keep.count(terminus(a)))
            arcs.push_back({arc_id(a), vertex_id(origin(a)), arc_id(reverse(a))});
    return build(std::move(vids), std::move(arcs), true);
}

GraphReport classify_graph(const SerreGraph& g) {
    GraphReport r;
    r.connected = g.connected();
    r.geometric_edge_count = g.geometric_edge_count();
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 1) r.leaves.push_back(v);

    bool loopless = true;
    for (int a = 0; a < g.arc_count(); ++a)
        if (g.is_loop(a)) loopless = false;
    bool parallel = false;
    std::map<std::pair<int, int>, int> pair_edges;
    for (int a = 0; a < g.arc_count(); ++a) {
        if (g.is_loop(a)) continue;
        int u = g.origin(a), w = g.terminus(a);
        if (u > w) continue; // count each geometric edge once, from its lesser endpoint
        if (++pair_edges[{u, w}] > 1) parallel = true;
    }
    r.simple = loopless && !parallel;

    r.tree = r.connected && g.self_reversed_count() == 0 &&
             r.geometric_edge_count == g.vertex_count() - 1;

    bool cycle = r.connected && g.self_reversed_count() == 0;
    for (int v = 0; v < g.vertex_count() && cycle; ++v)
        if (g.degree(v) != 2) cycle = false;
    if (cycle && g.vertex_count() > 0) r.cycle_order = g.vertex_count();
    return r;
}

std::pair<SerreGraph, std::vector<int>> reversal_free_subdivision(const SerreGraph& g) {
    std::vector<std::string> vids;
    for (int v = 0; v < g.vertex_count(); ++v) vids.push_back(g.vertex_id(v));
    std::vector<SerreGraph::ArcSpec> arcs;
    std::vector<std::string> added;
    for (int a = 0; a < g.arc_count(); ++a) {
        if (!g.is_self_reversed(a)) {
            arcs.push_back({g.arc_id(a), g.vertex_id(g.origin(a)), g.arc_id(g.reverse(a))});
            continue;
        }
        // Self-reversed loop a at v becomes a geometric edge between v and a
        // fresh vertex; the outbound half keeps the arc's id.
        std::string fresh = std::string(kReservedIdPrefix) + "v_" + g.arc_id(a);
        std::string back = std::string(kReservedIdPrefix) + g.arc_id(a);
        vids.push_back(fresh);
        added.push_back(fresh);
        arcs.push_back({g.arc_id(a), g.vertex_id(g.origin(a)), back});
        arcs.push_back({back, fresh, g.arc_id(a)});
    }
    SerreGraph out = SerreGraph::build(std::move(vids), std::move(arcs), true);
    std::vector<int> added_idx;
    for (const std::string& id : added) added_idx.push_back(out.vertex_index(id));
    return {std::move(out), std::move(added_idx)};
}

} // namespace lad
