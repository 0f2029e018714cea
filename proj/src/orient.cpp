#include "lad/orient.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace lad {

namespace {

// chosen[v] is the O-arc originating at v, or -1.  Checks the two coupling
// conditions; the per-arc conditions (singleton, not self-reversed, one per
// origin) hold by construction of `chosen`.
bool coupling_conditions_hold(const SerreGraph& g, const std::vector<int>& chosen) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        int a = chosen[static_cast<std::size_t>(v)];
        if (a < 0) continue;
        int rev = g.reverse(a);
        if (chosen[static_cast<std::size_t>(g.origin(rev))] == rev) return false;
        // Strong confluence at v: every arc terminating at v other than the
        // reverse of a belongs to O.
        for (int b = 0; b < g.arc_count(); ++b) {
            if (g.terminus(b) != v || b == rev) continue;
            if (chosen[static_cast<std::size_t>(g.origin(b))] != b) return false;
        }
    }
    return true;
}

std::vector<int> chosen_to_scpo(const std::vector<int>& chosen) {
    std::vector<int> o;
    for (int a : chosen)
        if (a >= 0) o.push_back(a);
    std::sort(o.begin(), o.end());
    return o;
}

} // namespace

std::vector<Scpo> enumerate_scpos(const LocalActionDiagram& d) {
    const SerreGraph& g = d.graph();
    const int nv = g.vertex_count();
    std::vector<std::vector<int>> candidates(static_cast<std::size_t>(nv));
    for (int a = 0; a < g.arc_count(); ++a)
        if (d.colours(a).size() == 1 && !g.is_self_reversed(a))
            candidates[static_cast<std::size_t>(g.origin(a))].push_back(a);

    std::vector<Scpo> out;
    std::vector<int> chosen(static_cast<std::size_t>(nv), -1);
    std::function<void(int)> walk = [&](int v) {
        if (v == nv) {
            if (coupling_conditions_hold(g, chosen)) out.push_back(chosen_to_scpo(chosen));
            return;
        }
        chosen[static_cast<std::size_t>(v)] = -1;
        walk(v + 1);
        for (int a : candidates[static_cast<std::size_t>(v)]) {
            chosen[static_cast<std::size_t>(v)] = a;
            walk(v + 1);
        }
        chosen[static_cast<std::size_t>(v)] = -1;
    };
    walk(0);
    std::sort(out.begin(), out.end());
    return out;
}

ScpoClass classify_scpo(const LocalActionDiagram& d, const Scpo& o) {
    const SerreGraph& g = d.graph();
    const int nv = g.vertex_count();
    std::vector<int> chosen(static_cast<std::size_t>(nv), -1);
    std::set<int> oset;
    for (int a : o) {
        if (a < 0 || a >= g.arc_count())
            throw ContractError("not a strongly confluent partial orientation: arc index out of range");
        if (!oset.insert(a).second)
            throw ContractError("not a strongly confluent partial orientation: repeated arc");
        if (d.colours(a).size() != 1)
            throw ContractError("not a strongly confluent partial orientation: arc " + g.arc_id(a) +
                                " has a non-singleton colour set");
        if (g.is_self_reversed(a))
            throw ContractError("not a strongly confluent partial orientation: arc " + g.arc_id(a) +
                                " is self-reversed");
        int& slot = chosen[static_cast<std::size_t>(g.origin(a))];
        if (slot >= 0)
            throw ContractError("not a strongly confluent partial orientation: two arcs originate at " +
                                g.vertex_id(g.origin(a)));
        slot = a;
    }
    for (int a : o)
        if (oset.count(g.reverse(a)))
            throw ContractError("not a strongly confluent partial orientation: arc " + g.arc_id(a) +
                                " appears with its reverse");
    if (!coupling_conditions_hold(g, chosen))
        throw ContractError("not a strongly confluent partial orientation: strong confluence fails");

    auto f = [&](int v) {
        int a = chosen[static_cast<std::size_t>(v)];
        return a < 0 ? v : g.terminus(a);
    };
    ScpoClass result;
    for (int v = 0; v < nv; ++v) {
        int u = v;
        for (int m = 0; m < nv; ++m) {
            u = f(u);
            if (u == v) {
                result.attractor.push_back(v);
                break;
            }
        }
    }

    bool cycle = false;
    for (int v : result.attractor)
        if (chosen[static_cast<std::size_t>(v)] >= 0) cycle = true;
    if (!cycle) {
        result.kind = ScpoKind::CotreeOrientation;
        return result;
    }
    result.kind = ScpoKind::CycleOrientation;
    int start = result.attractor.front();
    int v = start;
    do {
        int a = chosen[static_cast<std::size_t>(v)];
        result.cycle.push_back(a);
        v = g.terminus(a);
    } while (v != start);
    return result;
}

ActionReport analyze_action(const LocalActionDiagram& d) {
    const SerreGraph& g = d.graph();
    ActionReport r;
    auto scpos = enumerate_scpos(d);
    r.scpo_count = scpos.size();
    r.irreducible = scpos.size() == 1;
    r.geometrically_dense = r.irreducible;

    r.is_free = true;
    for (int v = 0; v < g.vertex_count(); ++v)
        for (const auto& orbit : d.local_action(v).orbits())
            if (orbit.size() != d.local_action(v).order()) r.is_free = false;

    std::vector<ScpoClass> classes;
    classes.reserve(scpos.size());
    for (const auto& o : scpos) classes.push_back(classify_scpo(d, o));

    auto induced_arcs = [&](const std::vector<int>& vs) {
        std::set<int> vset(vs.begin(), vs.end());
        std::vector<int> arcs;
        for (int a = 0; a < g.arc_count(); ++a)
            if (vset.count(g.origin(a)) && vset.count(g.terminus(a))) arcs.push_back(a);
        return arcs;
    };

    // Fixed vertex: a single-vertex cotree with no arcs of its own.
    std::set<int> fixed_vertices;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].kind != ScpoKind::CotreeOrientation) continue;
        if (classes[i].attractor.size() != 1) continue;
        if (induced_arcs(classes[i].attractor).empty())
            fixed_vertices.insert(classes[i].attractor.front());
    }
    if (!fixed_vertices.empty()) {
        r.action_type = ActionType::FixedVertex;
        r.fixed_end_count = 0;
        r.minimal_cotree.assign(fixed_vertices.begin(), fixed_vertices.end());
        return r;
    }

    // Minimal cotree: attractor of the cotree-type orientation with the most
    // arcs; enumeration order breaks ties deterministically.
    std::size_t best = 0;
    bool have_best = false;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].kind != ScpoKind::CotreeOrientation) continue;
        if (!have_best || scpos[i].size() > scpos[best].size()) {
            best = i;
            have_best = true;
        }
    }
    r.minimal_cotree = classes[best].attractor;

    if (r.minimal_cotree.size() == 1) {
        auto arcs = induced_arcs(r.minimal_cotree);
        if (arcs.size() == 1 && g.is_self_reversed(arcs[0]) && d.colours(arcs[0]).size() == 1) {
            r.action_type = ActionType::Inversion;
            r.fixed_end_count = 0;
            return r;
        }
    }

    bool lineal = false, focal = false;
    for (const ScpoClass& c : classes) {
        if (c.kind != ScpoKind::CycleOrientation) continue;
        bool all_singleton = true;
        for (int a : induced_arcs(c.attractor))
            if (d.colours(a).size() != 1) all_singleton = false;
        (all_singleton ? lineal : focal) = true;
    }
    if (lineal) {
        r.action_type = ActionType::Lineal;
        r.fixed_end_count = 2;
    } else if (focal) {
        r.action_type = ActionType::Focal;
        r.fixed_end_count = 1;
    } else {
        r.action_type = ActionType::GeneralType;
        r.fixed_end_count = 0;
    }
    return r;
}

std::string to_string(ActionType t) {
    switch (t) {
        case ActionType::FixedVertex: return "FixedVertex";
        case ActionType::Inversion: return "Inversion";
        case ActionType::Lineal: return "Lineal";
        case ActionType::Focal: return "Focal";
        case ActionType::GeneralType: return "GeneralType";
    }
    return "GeneralType";
}

} // namespace lad
