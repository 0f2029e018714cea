#include "lad/quotient.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lad {

namespace {

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

bool acts_freely(const PermGroup& g) {
    for (const auto& orbit : g.orbits())
        if (orbit.size() != g.order()) return false;
    return true;
}

// Induced action of G(v) on the orbit classes of its plus subgroup, along
// with the class labels grouped by the out-arc carrying them.
struct ClassData {
    std::vector<std::vector<std::string>> arc_labels; // one list per out-arc slot
    PermGroup class_action{0, {}};
};

ClassData class_data_at(const LocalActionDiagram& d, int v, const PermGroup& plus) {
    const PermGroup& gv = d.local_action(v);
    auto classes = plus.orbits();
    const int nc = static_cast<int>(classes.size());
    std::vector<int> class_of(static_cast<std::size_t>(gv.degree()), -1);
    for (int i = 0; i < nc; ++i)
        for (int p : classes[static_cast<std::size_t>(i)]) class_of[static_cast<std::size_t>(p)] = i;

    ClassData data;
    auto xv = d.vertex_colours(v);
    const auto& out = d.graph().out_arcs(v);
    data.arc_labels.resize(out.size());
    // Classes are ordered by least point, so scanning them in order fills the
    // per-arc lists in X_v order.
    int pos = 0;
    std::vector<std::size_t> slot_of_point(static_cast<std::size_t>(gv.degree()));
    for (std::size_t s = 0; s < out.size(); ++s)
        for (std::size_t i = 0; i < d.colours(out[s]).size(); ++i)
            slot_of_point[static_cast<std::size_t>(pos++)] = s;
    for (int i = 0; i < nc; ++i) {
        int least = classes[static_cast<std::size_t>(i)].front();
        data.arc_labels[slot_of_point[static_cast<std::size_t>(least)]].push_back(
            xv[static_cast<std::size_t>(least)]);
    }

    std::vector<Perm> gens;
    for (const Perm& gen : gv.generators()) {
        std::vector<int> img(static_cast<std::size_t>(nc));
        for (int i = 0; i < nc; ++i)
            img[static_cast<std::size_t>(i)] = class_of[static_cast<std::size_t>(
                gen(classes[static_cast<std::size_t>(i)].front()))];
        gens.push_back(Perm::from_images(std::move(img)));
    }
    data.class_action = PermGroup(nc, std::move(gens));
    return data;
}

} // namespace

std::vector<PermGroup> plus_local_actions(const LocalActionDiagram& d) {
    std::vector<PermGroup> out;
    for (int v = 0; v < d.graph().vertex_count(); ++v)
        out.push_back(d.local_action(v).plus_subgroup());
    return out;
}

LocalActionDiagram plus_quotient_diagram(const LocalActionDiagram& d) {
    const SerreGraph& g = d.graph();
    std::vector<std::vector<std::string>> colours(static_cast<std::size_t>(g.arc_count()));
    std::vector<PermGroup> actions;
    for (int v = 0; v < g.vertex_count(); ++v) {
        ClassData data = class_data_at(d, v, d.local_action(v).plus_subgroup());
        const auto& out = g.out_arcs(v);
        for (std::size_t s = 0; s < out.size(); ++s)
            colours[static_cast<std::size_t>(out[s])] = data.arc_labels[s];
        actions.push_back(std::move(data.class_action));
    }
    return LocalActionDiagram(g, std::move(colours), std::move(actions));
}

GroupName recognize_group(const PermGroup& g, NamingContext context) {
    GroupName r{"", g};
    const std::uint64_t n = g.order();
    if (n == 1) {
        r.name = "1";
        return r;
    }
    if (n > 120) {
        r.name = "G(order=" + std::to_string(n) + ")";
        return r;
    }

    const auto& elems = g.elements();
    std::set<int> moved;
    std::map<int, int> order_histogram;
    int max_order = 1;
    for (const Perm& e : elems) {
        for (int p = 0; p < g.degree(); ++p)
            if (e(p) != p) moved.insert(p);
        int o = e.order();
        ++order_histogram[o];
        max_order = std::max(max_order, o);
    }
    std::vector<std::size_t> moved_orbit_sizes;
    for (const auto& orbit : g.orbits())
        if (orbit.size() >= 2) moved_orbit_sizes.push_back(orbit.size());
    std::sort(moved_orbit_sizes.begin(), moved_orbit_sizes.end());

    if (n == 2) {
        if (context == NamingContext::QuotientGroup) r.name = "C_2";
        else if (g.degree() <= 3) r.name = "S_2";
        else if (moved.size() == 2) r.name = "C_2^-";
        else if (moved.size() == 4) r.name = "C_2^+";
        else r.name = "C_2";
        return r;
    }
    if (static_cast<std::uint64_t>(max_order) == n) { // cyclic
        if (context == NamingContext::LocalAction && n == 6 &&
            moved_orbit_sizes == std::vector<std::size_t>{2, 3})
            r.name = "C_{3+2}";
        else
            r.name = "C_" + std::to_string(n);
        return r;
    }
    if (n == 4) { // noncyclic order 4: Klein group
        bool orbit4 = std::find(moved_orbit_sizes.begin(), moved_orbit_sizes.end(), 4) !=
                      moved_orbit_sizes.end();
        bool small = std::all_of(moved_orbit_sizes.begin(), moved_orbit_sizes.end(),
                                 [](std::size_t s) { return s <= 2; });
        if (context == NamingContext::QuotientGroup) r.name = "V";
        else if (orbit4) r.name = "V^+";
        else if (small) r.name = "V^-";
        else r.name = "V";
        return r;
    }
    if (n == factorial(moved.size())) { // the full symmetric group on its support
        r.name = "S_" + std::to_string(moved.size());
        return r;
    }
    if (moved.size() >= 3 && 2 * n == factorial(moved.size())) {
        bool all_even = std::all_of(elems.begin(), elems.end(),
                                    [](const Perm& e) { return e.is_even(); });
        if (all_even) {
            r.name = "A_" + std::to_string(moved.size());
            return r;
        }
    }
    if (n == 6) { // nonabelian: S_3 up to the orbit decoration
        if (context == NamingContext::LocalAction &&
            moved_orbit_sizes == std::vector<std::size_t>{2, 3})
            r.name = "S_3^*";
        else
            r.name = "S_3";
        return r;
    }
    if (n == 12 && context == NamingContext::LocalAction &&
        moved_orbit_sizes == std::vector<std::size_t>{2, 3}) {
        r.name = "S_{3+2}"; // Sym(3) x Sym(2) on a 3-orbit and a 2-orbit
        return r;
    }
    if (n == 20 && order_histogram == std::map<int, int>{{1, 1}, {2, 5}, {4, 10}, {5, 4}}) {
        r.name = "GA(1,5)";
        return r;
    }
    // Dihedral: a cyclic subgroup of index 2 inverted by an outside involution.
    if (n % 2 == 0 && n >= 8) {
        for (const Perm& x : elems) {
            if (static_cast<std::uint64_t>(x.order()) * 2 != n) continue;
            std::set<Perm> cyc;
            Perm c = x;
            cyc.insert(c);
            while (!c.is_identity()) {
                c = c * x;
                cyc.insert(c);
            }
            Perm xi = x.inverse();
            for (const Perm& t : elems) {
                if (cyc.count(t) || !(t * t).is_identity() || t.is_identity()) continue;
                if (t * x * t == xi) {
                    r.name = "D_" + std::to_string(n);
                    return r;
                }
            }
        }
    }
    r.name = "G(order=" + std::to_string(n) + ")";
    return r;
}

std::string FreeProductExpr::render() const {
    std::vector<std::string> parts = named_factors;
    if (c2_count == 1) parts.push_back("C_2");
    else if (c2_count > 1) parts.push_back("C_2^{*" + std::to_string(c2_count) + "}");
    if (free_rank == 1) parts.push_back("Z");
    else if (free_rank > 1) parts.push_back("Z^{*" + std::to_string(free_rank) + "}");
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " * " + parts[i];
    return out;
}

std::pair<std::vector<std::uint64_t>, int> FreeProductExpr::abelianization() const {
    std::vector<std::uint64_t> orders;
    for (const PermGroup& w : named_witnesses) {
        std::uint64_t ab = w.order() / w.derived_subgroup().order();
        if (ab > 1) orders.push_back(ab);
    }
    for (int i = 0; i < c2_count; ++i) orders.push_back(2);
    std::sort(orders.begin(), orders.end());
    return {orders, free_rank};
}

FreeProductExpr free_product_of_quotient(const LocalActionDiagram& d) {
    FreeProductExpr expr;
    auto [sub, added] = reversal_free_subdivision(d.graph());
    expr.free_rank = sub.geometric_edge_count() - sub.vertex_count() + 1;
    expr.c2_count = static_cast<int>(added.size());

    std::vector<std::pair<std::string, PermGroup>> named;
    for (int v = 0; v < d.graph().vertex_count(); ++v) {
        const PermGroup& gv = d.local_action(v);
        GroupName gn = acts_freely(gv)
                           ? recognize_group(gv, NamingContext::LocalAction)
                           : recognize_group(class_data_at(d, v, gv.plus_subgroup()).class_action,
                                             NamingContext::QuotientGroup);
        if (gn.name == "1") continue;
        if (gn.name == "C_2" || gn.name == "C_2^+" || gn.name == "C_2^-") {
            ++expr.c2_count;
            continue;
        }
        named.emplace_back(gn.name, gn.witness);
    }
    std::sort(named.begin(), named.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [name, witness] : named) {
        expr.named_factors.push_back(name);
        expr.named_witnesses.push_back(witness);
    }
    return expr;
}

} // namespace lad
