#include "lad/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "lad/quotient.hpp"

namespace lad {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::vector<int>> blocks_of(const LocalActionDiagram& d, int v) {
    std::vector<std::vector<int>> blocks;
    int pos = 0;
    for (int a : d.graph().out_arcs(v)) {
        std::vector<int> b(d.colours(a).size());
        std::iota(b.begin(), b.end(), pos);
        pos += static_cast<int>(b.size());
        blocks.push_back(std::move(b));
    }
    return blocks;
}

// Enumerates every bijection mu of 0..degree-1 with mu(dom_blocks[i]) =
// img_blocks[i] as sets.  Calls `sink` for each; a true return stops the
// enumeration.  Each candidate costs one step against the budget.
bool for_each_block_bijection(int degree, const std::vector<std::vector<int>>& dom_blocks,
                              const std::vector<std::vector<int>>& img_blocks,
                              std::uint64_t& steps, std::uint64_t max_steps,
                              const std::function<bool(const Perm&)>& sink) {
    std::vector<std::vector<int>> sorted = img_blocks;
    for (auto& s : sorted) std::sort(s.begin(), s.end());
    std::vector<std::vector<int>> current = sorted;
    std::vector<int> img(static_cast<std::size_t>(degree));
    while (true) {
        if (++steps > max_steps)
            throw BudgetError("diagram search exceeded its budget", steps, max_steps);
        for (std::size_t i = 0; i < dom_blocks.size(); ++i)
            for (std::size_t j = 0; j < dom_blocks[i].size(); ++j)
                img[static_cast<std::size_t>(dom_blocks[i][j])] = current[i][j];
        if (sink(Perm::from_images(img))) return true;
        std::size_t i = 0;
        for (; i < current.size(); ++i) {
            if (std::next_permutation(current[i].begin(), current[i].end())) break;
            current[i] = sorted[i];
        }
        if (i == current.size()) return false;
    }
}

// A block-respecting conjugator carrying g onto h (the i-th domain block to
// the i-th image block), or nothing.
std::optional<Perm> find_block_conjugator(const PermGroup& g, const PermGroup& h,
                                          const std::vector<std::vector<int>>& dom_blocks,
                                          const std::vector<std::vector<int>>& img_blocks,
                                          std::uint64_t& steps, std::uint64_t max_steps) {
    if (g.degree() != h.degree() || g.order() != h.order()) return std::nullopt;
    std::unordered_set<std::uint64_t> hset;
    for (const Perm& e : h.elements()) hset.insert(e.key());
    std::optional<Perm> found;
    for_each_block_bijection(g.degree(), dom_blocks, img_blocks, steps, max_steps,
                             [&](const Perm& mu) {
                                 Perm mi = mu.inverse();
                                 for (const Perm& gen : g.generators())
                                     if (!hset.count((mu * gen * mi).key())) return false;
                                 found = mu;
                                 return true;
                             });
    return found;
}

} // namespace

LocalActionDiagram::LocalActionDiagram(SerreGraph graph,
                                       std::vector<std::vector<std::string>> arc_colours,
                                       std::vector<PermGroup> local_actions)
    : graph_(std::move(graph)),
      arc_colours_(std::move(arc_colours)),
      local_actions_(std::move(local_actions)) {
    if (arc_colours_.size() != static_cast<std::size_t>(graph_.arc_count()))
        throw ContractError("one colour set per arc required");
    if (local_actions_.size() != static_cast<std::size_t>(graph_.vertex_count()))
        throw ContractError("one local action per vertex required");
}

int LocalActionDiagram::vertex_degree(int vertex) const {
    int n = 0;
    for (int a : graph_.out_arcs(vertex))
        n += static_cast<int>(arc_colours_[static_cast<std::size_t>(a)].size());
    return n;
}

std::vector<std::string> LocalActionDiagram::vertex_colours(int vertex) const {
    std::vector<std::string> out;
    for (int a : graph_.out_arcs(vertex))
        for (const std::string& c : arc_colours_[static_cast<std::size_t>(a)]) out.push_back(c);
    return out;
}

int LocalActionDiagram::point_of(int arc, const std::string& colour) const {
    int v = graph_.origin(arc);
    int pos = 0;
    for (int a : graph_.out_arcs(v)) {
        const auto& cs = arc_colours_[static_cast<std::size_t>(a)];
        if (a == arc) {
            for (std::size_t i = 0; i < cs.size(); ++i)
                if (cs[i] == colour) return pos + static_cast<int>(i);
            throw ContractError("colour " + colour + " not on arc " + graph_.arc_id(arc));
        }
        pos += static_cast<int>(cs.size());
    }
    throw ContractError("arc index out of range");
}

std::pair<int, std::string> LocalActionDiagram::point_info(int vertex, int point) const {
    int pos = 0;
    for (int a : graph_.out_arcs(vertex)) {
        const auto& cs = arc_colours_[static_cast<std::size_t>(a)];
        if (point < pos + static_cast<int>(cs.size()))
            return {a, cs[static_cast<std::size_t>(point - pos)]};
        pos += static_cast<int>(cs.size());
    }
    throw ContractError("point index out of range");
}

int LocalActionDiagram::arc_of_colour(const std::string& colour) const {
    for (int a = 0; a < graph_.arc_count(); ++a)
        for (const std::string& c : arc_colours_[static_cast<std::size_t>(a)])
            if (c == colour) return a;
    throw ContractError("unknown colour label: " + colour);
}

ValidationReport validate(const LocalActionDiagram& d) {
    ValidationReport r;
    const SerreGraph& g = d.graph();
    if (g.vertex_count() == 0) {
        r.violations.push_back("graph has no vertices");
        return r;
    }
    if (!g.connected()) r.violations.push_back("graph is not connected");

    std::map<std::string, int> label_owner;
    for (int a = 0; a < g.arc_count(); ++a) {
        const auto& cs = d.colours(a);
        if (cs.empty()) r.violations.push_back("empty colour set on arc " + g.arc_id(a));
        std::set<std::string> within;
        for (const std::string& c : cs) {
            if (c.empty()) r.violations.push_back("empty colour label on arc " + g.arc_id(a));
            if (!within.insert(c).second)
                r.violations.push_back("colour " + c + " repeated on arc " + g.arc_id(a));
            auto [it, fresh] = label_owner.emplace(c, a);
            if (!fresh && it->second != a)
                r.violations.push_back("colour " + c + " appears on more than one arc");
        }
    }

    for (int v = 0; v < g.vertex_count(); ++v) {
        const PermGroup& gv = d.local_action(v);
        int deg = d.vertex_degree(v);
        if (gv.degree() != deg) {
            r.violations.push_back("local action at vertex " + g.vertex_id(v) + " has degree " +
                                   std::to_string(gv.degree()) + ", expected " + std::to_string(deg));
            continue;
        }
        std::set<std::vector<int>> orbit_parts;
        for (const auto& o : gv.orbits()) orbit_parts.insert(o);
        const auto blocks = blocks_of(d, v);
        const auto& out = g.out_arcs(v);
        std::set<std::vector<int>> block_parts(blocks.begin(), blocks.end());
        if (orbit_parts != block_parts) {
            for (std::size_t i = 0; i < blocks.size(); ++i)
                if (!orbit_parts.count(blocks[i]))
                    r.violations.push_back("colour set not an orbit: arc " + g.arc_id(out[i]) +
                                           " at vertex " + g.vertex_id(v));
        }
    }
    r.ok = r.violations.empty();
    return r;
}

std::optional<DiagramIso> isomorphic(const LocalActionDiagram& d1, const LocalActionDiagram& d2,
                                     const IsoBudget& budget) {
    const SerreGraph& g1 = d1.graph();
    const SerreGraph& g2 = d2.graph();
    if (g1.vertex_count() != g2.vertex_count() || g1.arc_count() != g2.arc_count())
        return std::nullopt;
    const int nv = g1.vertex_count();
    const int na = g1.arc_count();
    std::uint64_t steps = 0;

    auto vertex_sig = [](const LocalActionDiagram& d, int v) {
        std::vector<std::size_t> sizes;
        for (int a : d.graph().out_arcs(v)) sizes.push_back(d.colours(a).size());
        std::sort(sizes.begin(), sizes.end());
        return std::make_tuple(d.graph().degree(v), d.local_action(v).order(), sizes);
    };

    std::vector<int> vmap(static_cast<std::size_t>(nv), -1);
    std::vector<bool> vused(static_cast<std::size_t>(nv), false);
    std::vector<int> amap(static_cast<std::size_t>(na), -1);
    std::vector<bool> aused(static_cast<std::size_t>(na), false);
    std::optional<DiagramIso> result;

    // Per-vertex conjugators for the completed vertex and arc maps; the
    // searches are independent, so one witness per vertex suffices.
    auto try_conjugators = [&]() -> bool {
        std::vector<Perm> lams;
        for (int v = 0; v < nv; ++v) {
            int w = vmap[static_cast<std::size_t>(v)];
            std::vector<std::vector<int>> dom = blocks_of(d1, v);
            auto img_blocks = blocks_of(d2, w);
            const auto& out2 = g2.out_arcs(w);
            std::vector<std::vector<int>> img;
            for (int a : g1.out_arcs(v)) {
                int b = amap[static_cast<std::size_t>(a)];
                std::size_t j = 0;
                while (out2[j] != b) ++j;
                img.push_back(img_blocks[j]);
            }
            auto lambda = find_block_conjugator(d1.local_action(v), d2.local_action(w), dom, img,
                                                steps, budget.max_steps);
            if (!lambda) return false;
            lams.push_back(*lambda);
        }
        DiagramIso iso;
        iso.vertex_map = vmap;
        iso.arc_map = amap;
        iso.colour_maps.resize(static_cast<std::size_t>(na));
        for (int a = 0; a < na; ++a) {
            const Perm& lambda = lams[static_cast<std::size_t>(g1.origin(a))];
            const auto& cs = d1.colours(a);
            int b = amap[static_cast<std::size_t>(a)];
            const auto& ct = d2.colours(b);
            std::vector<int> cmap(cs.size());
            for (std::size_t i = 0; i < cs.size(); ++i) {
                int q = lambda(d1.point_of(a, cs[i]));
                // lambda maps the block of a onto the block of b.
                std::string label = d2.point_info(g2.origin(b), q).second;
                for (std::size_t j = 0; j < ct.size(); ++j)
                    if (ct[j] == label) cmap[i] = static_cast<int>(j);
            }
            iso.colour_maps[static_cast<std::size_t>(a)] = std::move(cmap);
        }
        result = std::move(iso);
        return true;
    };

    std::function<bool(int)> assign_arcs = [&](int a) -> bool {
        if (a == na) return try_conjugators();
        if (amap[static_cast<std::size_t>(a)] >= 0) return assign_arcs(a + 1);
        for (int b = 0; b < na; ++b) {
            if (aused[static_cast<std::size_t>(b)]) continue;
            if (vmap[static_cast<std::size_t>(g1.origin(a))] != g2.origin(b)) continue;
            if (vmap[static_cast<std::size_t>(g1.terminus(a))] != g2.terminus(b)) continue;
            if (d1.colours(a).size() != d2.colours(b).size()) continue;
            if (g1.is_self_reversed(a) != g2.is_self_reversed(b)) continue;
            int ra = g1.reverse(a), rb = g2.reverse(b);
            if (d1.colours(ra).size() != d2.colours(rb).size()) continue;
            if (++steps > budget.max_steps)
                throw BudgetError("isomorphism search exceeded its budget", steps, budget.max_steps);
            bool rev_set = false;
            if (amap[static_cast<std::size_t>(ra)] < 0) {
                if (ra != a && aused[static_cast<std::size_t>(rb)]) continue;
                amap[static_cast<std::size_t>(a)] = b;
                aused[static_cast<std::size_t>(b)] = true;
                if (ra != a) {
                    amap[static_cast<std::size_t>(ra)] = rb;
                    aused[static_cast<std::size_t>(rb)] = true;
                    rev_set = true;
                }
            } else if (amap[static_cast<std::size_t>(ra)] == rb) {
                amap[static_cast<std::size_t>(a)] = b;
                aused[static_cast<std::size_t>(b)] = true;
            } else {
                continue;
            }
            if (assign_arcs(a + 1)) return true;
            amap[static_cast<std::size_t>(a)] = -1;
            aused[static_cast<std::size_t>(b)] = false;
            if (rev_set) {
                amap[static_cast<std::size_t>(ra)] = -1;
                aused[static_cast<std::size_t>(rb)] = false;
            }
        }
        return false;
    };

    std::function<bool(int)> assign_vertices = [&](int v) -> bool {
        if (v == nv) {
            std::fill(amap.begin(), amap.end(), -1);
            std::fill(aused.begin(), aused.end(), false);
            return assign_arcs(0);
        }
        for (int w = 0; w < nv; ++w) {
            if (vused[static_cast<std::size_t>(w)]) continue;
            if (vertex_sig(d1, v) != vertex_sig(d2, w)) continue;
            if (++steps > budget.max_steps)
                throw BudgetError("isomorphism search exceeded its budget", steps, budget.max_steps);
            vmap[static_cast<std::size_t>(v)] = w;
            vused[static_cast<std::size_t>(w)] = true;
            if (assign_vertices(v + 1)) return true;
            vmap[static_cast<std::size_t>(v)] = -1;
            vused[static_cast<std::size_t>(w)] = false;
        }
        return false;
    };

    assign_vertices(0);
    return result;
}

LocalActionDiagram vt_diagram(const PermGroup& h, const Perm& orbit_pairing) {
    auto orbits = h.orbits();
    const int k = static_cast<int>(orbits.size());
    if (orbit_pairing.degree() != k)
        throw ContractError("orbit pairing is on " + std::to_string(orbit_pairing.degree()) +
                            " points, expected the orbit count " + std::to_string(k));
    if (!(orbit_pairing * orbit_pairing).is_identity())
        throw ContractError("orbit pairing must be an involution on the orbit list");

    std::vector<std::string> vids{"v"};
    std::vector<SerreGraph::ArcSpec> arcs;
    for (int i = 0; i < k; ++i)
        arcs.push_back({"a" + std::to_string(i + 1), "v",
                        "a" + std::to_string(orbit_pairing(i) + 1)});
    SerreGraph g = SerreGraph::build(std::move(vids), std::move(arcs));

    std::vector<std::vector<std::string>> colours;
    std::vector<int> pos_to_global;
    for (const auto& orbit : orbits) {
        std::vector<std::string> cs;
        for (int p : orbit) {
            cs.push_back(std::to_string(p + 1));
            pos_to_global.push_back(p);
        }
        colours.push_back(std::move(cs));
    }

    std::vector<int> global_to_pos(static_cast<std::size_t>(h.degree()), -1);
    for (std::size_t i = 0; i < pos_to_global.size(); ++i)
        global_to_pos[static_cast<std::size_t>(pos_to_global[i])] = static_cast<int>(i);
    std::vector<Perm> gens;
    for (const Perm& gen : h.generators()) {
        std::vector<int> img(pos_to_global.size());
        for (std::size_t i = 0; i < pos_to_global.size(); ++i)
            img[i] = global_to_pos[static_cast<std::size_t>(gen(pos_to_global[i]))];
        gens.push_back(Perm::from_images(std::move(img)));
    }
    return LocalActionDiagram(std::move(g), std::move(colours),
                              {PermGroup(h.degree(), std::move(gens))});
}

LocalActionDiagram star_diagram(const std::vector<StarFactor>& factors) {
    const int n = static_cast<int>(factors.size());
    if (n == 0) throw ContractError("star needs at least one factor");
    for (int i = 0; i < n; ++i) {
        const PermGroup& gi = factors[static_cast<std::size_t>(i)].group;
        const PermGroup& ui = factors[static_cast<std::size_t>(i)].subgroup;
        const std::string tag = std::to_string(i + 1);
        if (!ui.is_subgroup_of(gi))
            throw ContractError("U_" + tag + " is not a subgroup of G_" + tag);
        if (ui.order() <= 1) throw ContractError("subgroup U_" + tag + " is trivial");
        if (ui.order() >= gi.order()) throw ContractError("subgroup U_" + tag + " is not proper");
        std::vector<Perm> conj_gens;
        for (const Perm& e : gi.elements()) {
            Perm ei = e.inverse();
            for (const Perm& u : ui.generators()) conj_gens.push_back(e * u * ei);
        }
        if (PermGroup::from_elements(gi.degree(), conj_gens).order() != gi.order())
            throw ContractError("G_" + tag + " is not generated by the conjugates of U_" + tag);
        // Trivial core: no nontrivial element lies in every conjugate of U_i.
        std::vector<Perm> core = ui.elements();
        for (const Perm& e : gi.elements()) {
            Perm ei = e.inverse();
            std::vector<Perm> next;
            for (const Perm& u : core)
                if (ui.contains(ei * u * e)) next.push_back(u);
            core = std::move(next);
            if (core.size() <= 1) break;
        }
        if (core.size() > 1)
            throw ContractError("core of U_" + tag + " in G_" + tag + " is not trivial");
    }

    std::vector<std::string> vids{"v0"};
    std::vector<SerreGraph::ArcSpec> arcs;
    for (int i = 1; i <= n; ++i) {
        vids.push_back("v" + std::to_string(i));
        arcs.push_back({"a" + std::to_string(i), "v0", "r" + std::to_string(i)});
    }
    for (int i = 1; i <= n; ++i)
        arcs.push_back({"r" + std::to_string(i), "v" + std::to_string(i), "a" + std::to_string(i)});
    SerreGraph g = SerreGraph::build(std::move(vids), std::move(arcs));

    std::vector<std::vector<std::string>> colours(static_cast<std::size_t>(g.arc_count()));
    for (int i = 1; i <= n; ++i) {
        std::vector<std::string> cs;
        for (int j = 0; j < 3; ++j) cs.push_back(std::to_string(3 * i + j));
        colours[static_cast<std::size_t>(g.arc_index("a" + std::to_string(i)))] = std::move(cs);
    }

    std::vector<PermGroup> actions;
    {
        // Centre: direct product of one Sym(3) per leaf arc.
        std::vector<Perm> gens;
        for (int i = 0; i < n; ++i) {
            std::vector<int> swap01(static_cast<std::size_t>(3 * n));
            std::vector<int> rot(static_cast<std::size_t>(3 * n));
            std::iota(swap01.begin(), swap01.end(), 0);
            std::iota(rot.begin(), rot.end(), 0);
            std::swap(swap01[static_cast<std::size_t>(3 * i)],
                      swap01[static_cast<std::size_t>(3 * i + 1)]);
            rot[static_cast<std::size_t>(3 * i)] = 3 * i + 1;
            rot[static_cast<std::size_t>(3 * i + 1)] = 3 * i + 2;
            rot[static_cast<std::size_t>(3 * i + 2)] = 3 * i;
            gens.push_back(Perm::from_images(swap01));
            gens.push_back(Perm::from_images(rot));
        }
        actions.emplace_back(3 * n, std::move(gens));
    }
    for (int i = 1; i <= n; ++i) {
        const PermGroup& gi = factors[static_cast<std::size_t>(i - 1)].group;
        const PermGroup& ui = factors[static_cast<std::size_t>(i - 1)].subgroup;
        // Left cosets eU in element order; the identity's coset comes first.
        const auto& elems = gi.elements();
        std::map<Perm, int> coset_of;
        std::vector<Perm> reps;
        for (const Perm& e : elems) {
            if (coset_of.count(e)) continue;
            int id = static_cast<int>(reps.size());
            reps.push_back(e);
            for (const Perm& u : ui.elements()) coset_of[e * u] = id;
        }
        const int m = static_cast<int>(reps.size());
        std::vector<std::string> cs;
        for (int j = 1; j <= m; ++j)
            cs.push_back("U" + std::to_string(i) + "." + std::to_string(j));
        colours[static_cast<std::size_t>(g.arc_index("r" + std::to_string(i)))] = std::move(cs);
        std::vector<Perm> gens;
        for (const Perm& gen : gi.generators()) {
            std::vector<int> img(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j)
                img[static_cast<std::size_t>(j)] =
                    coset_of.at(gen * reps[static_cast<std::size_t>(j)]);
            gens.push_back(Perm::from_images(std::move(img)));
        }
        actions.emplace_back(m, std::move(gens));
    }
    return LocalActionDiagram(std::move(g), std::move(colours), std::move(actions));
}

LocalActionDiagram double_diagram(const LocalActionDiagram& d) {
    if (d.graph().vertex_count() != 1)
        throw ContractError("double requires a single-vertex diagram");
    FreeProductExpr expr = free_product_of_quotient(d);
    if (!expr.named_factors.empty() || expr.c2_count != 1 || expr.free_rank != 0)
        throw ContractError("quotient is not C\xE2\x82\x82");

    const SerreGraph& g = d.graph();
    const std::string w = g.vertex_id(0);
    std::vector<std::string> vids{w + ".0", w + ".1"};
    std::vector<SerreGraph::ArcSpec> arcs;
    for (int a = 0; a < g.arc_count(); ++a)
        for (int e = 0; e < 2; ++e)
            arcs.push_back({g.arc_id(a) + "." + std::to_string(e),
                            vids[static_cast<std::size_t>(e)],
                            g.arc_id(g.reverse(a)) + "." + std::to_string(1 - e)});
    SerreGraph dg = SerreGraph::build(std::move(vids), std::move(arcs));

    std::vector<std::vector<std::string>> colours(static_cast<std::size_t>(dg.arc_count()));
    for (int a = 0; a < g.arc_count(); ++a)
        for (int e = 0; e < 2; ++e) {
            std::vector<std::string> cs;
            for (const std::string& c : d.colours(a)) cs.push_back(c + "." + std::to_string(e));
            colours[static_cast<std::size_t>(2 * a + e)] = std::move(cs);
        }
    // Out-arcs of each side keep the original arc order, so the original
    // generator images transfer unchanged.
    std::vector<PermGroup> actions{d.local_action(0), d.local_action(0)};
    return LocalActionDiagram(std::move(dg), std::move(colours), std::move(actions));
}

LocalActionDiagram restrict_to_cotree(const LocalActionDiagram& d, const std::vector<int>& vertices) {
    const SerreGraph& g = d.graph();
    std::set<int> keep(vertices.begin(), vertices.end());
    if (keep.empty()) throw ContractError("cotree vertex set is empty");
    for (int v : keep)
        if (v < 0 || v >= g.vertex_count()) throw ContractError("vertex index out of range");

    // Collapse test: contracting the set to one vertex must leave a tree.
    {
        std::vector<std::string> vids;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!keep.count(v)) vids.push_back(g.vertex_id(v));
        const std::string collapse = std::string(kReservedIdPrefix) + "collapse";
        vids.push_back(collapse);
        std::vector<SerreGraph::ArcSpec> arcs;
        for (int a = 0; a < g.arc_count(); ++a) {
            bool oin = keep.count(g.origin(a)) > 0;
            bool tin = keep.count(g.terminus(a)) > 0;
            if (oin && tin) continue;
            arcs.push_back({g.arc_id(a), oin ? collapse : g.vertex_id(g.origin(a)),
                            g.arc_id(g.reverse(a))});
        }
        SerreGraph collapsed = SerreGraph::build(std::move(vids), std::move(arcs), true);
        if (!classify_graph(collapsed).tree)
            throw ContractError("vertex set is not a cotree: collapsing it does not leave a tree");
    }
    for (int a = 0; a < g.arc_count(); ++a)
        if (!keep.count(g.origin(a)) && keep.count(g.terminus(a)) && d.colours(a).size() != 1)
            throw ContractError("vertex set is not a cotree: arc " + g.arc_id(a) +
                                " oriented toward it has a non-singleton colour set");

    std::vector<int> sorted_keep(keep.begin(), keep.end());
    SerreGraph sub = g.induced_subgraph(sorted_keep);
    std::vector<std::vector<std::string>> colours(static_cast<std::size_t>(sub.arc_count()));
    for (int a = 0; a < sub.arc_count(); ++a)
        colours[static_cast<std::size_t>(a)] = d.colours(g.arc_index(sub.arc_id(a)));

    std::vector<PermGroup> actions;
    for (int v = 0; v < sub.vertex_count(); ++v) {
        int old_v = g.vertex_index(sub.vertex_id(v));
        // Retained points in X order; kept arcs keep their relative order.
        std::vector<int> kept_points;
        int pos = 0;
        for (int a : g.out_arcs(old_v)) {
            bool kept = keep.count(g.terminus(a)) > 0;
            for (std::size_t i = 0; i < d.colours(a).size(); ++i, ++pos)
                if (kept) kept_points.push_back(pos);
        }
        std::vector<int> new_pos(static_cast<std::size_t>(d.vertex_degree(old_v)), -1);
        for (std::size_t i = 0; i < kept_points.size(); ++i)
            new_pos[static_cast<std::size_t>(kept_points[i])] = static_cast<int>(i);
        std::vector<Perm> gens;
        for (const Perm& gen : d.local_action(old_v).generators()) {
            std::vector<int> img(kept_points.size());
            for (std::size_t i = 0; i < kept_points.size(); ++i)
                img[i] = new_pos[static_cast<std::size_t>(gen(kept_points[i]))];
            gens.push_back(Perm::from_images(std::move(img)));
        }
        actions.emplace_back(static_cast<int>(kept_points.size()), std::move(gens));
    }
    return LocalActionDiagram(std::move(sub), std::move(colours), std::move(actions));
}

std::string to_json(const LocalActionDiagram& d) {
    const SerreGraph& g = d.graph();
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.vertex_id(v));
    j["arcs"] = ordered_json::array();
    for (int a = 0; a < g.arc_count(); ++a) {
        ordered_json ja;
        ja["id"] = g.arc_id(a);
        ja["origin"] = g.vertex_id(g.origin(a));
        ja["reverse"] = g.arc_id(g.reverse(a));
        ja["colours"] = d.colours(a);
        j["arcs"].push_back(std::move(ja));
    }
    j["local_actions"] = ordered_json::object();
    for (int v = 0; v < g.vertex_count(); ++v) {
        ordered_json jv;
        jv["points"] = d.vertex_colours(v);
        jv["generators"] = ordered_json::array();
        for (const Perm& gen : d.local_action(v).generators())
            jv["generators"].push_back(gen.images());
        j["local_actions"][g.vertex_id(v)] = std::move(jv);
    }
    return j.dump(2) + "\n";
}

LocalActionDiagram diagram_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ContractError(std::string("diagram JSON malformed: ") + e.what());
    }
    try {
        std::vector<std::string> vids = j.at("vertices").get<std::vector<std::string>>();
        std::vector<SerreGraph::ArcSpec> specs;
        std::vector<std::vector<std::string>> colours;
        for (const auto& ja : j.at("arcs")) {
            specs.push_back({ja.at("id").get<std::string>(), ja.at("origin").get<std::string>(),
                             ja.at("reverse").get<std::string>()});
            colours.push_back(ja.at("colours").get<std::vector<std::string>>());
        }
        SerreGraph g = SerreGraph::build(std::move(vids), std::move(specs), true);
        LocalActionDiagram shell(
            g, colours,
            std::vector<PermGroup>(static_cast<std::size_t>(g.vertex_count()), PermGroup(0, {})));
        std::vector<PermGroup> actions;
        const auto& la = j.at("local_actions");
        for (int v = 0; v < g.vertex_count(); ++v) {
            const auto& jv = la.at(g.vertex_id(v));
            auto points = jv.at("points").get<std::vector<std::string>>();
            if (points != shell.vertex_colours(v))
                throw ContractError("points list at vertex " + g.vertex_id(v) +
                                    " does not match the arc-order colour list");
            std::vector<Perm> gens;
            for (const auto& jg : jv.at("generators"))
                gens.push_back(Perm::from_images(jg.get<std::vector<int>>()));
            actions.emplace_back(static_cast<int>(points.size()), std::move(gens));
        }
        return LocalActionDiagram(std::move(g), std::move(colours), std::move(actions));
    } catch (const ContractError&) {
        throw;
    } catch (const std::exception& e) {
        throw ContractError(std::string("diagram JSON malformed: ") + e.what());
    }
}

std::string canonical_key(const LocalActionDiagram& d, const IsoBudget& budget) {
    const SerreGraph& g = d.graph();
    const int nv = g.vertex_count();
    const int na = g.arc_count();
    std::uint64_t steps = 0;

    std::vector<int> order(static_cast<std::size_t>(nv));
    std::iota(order.begin(), order.end(), 0);
    std::string best;

    // A candidate encoding fixes a vertex renumbering and an arc order; arcs
    // sort by a structural key and tied arcs are permuted exhaustively.  Per
    // vertex the local action contributes its minimal sorted rank vector over
    // bijections carrying its blocks onto the reordered block positions.
    do {
        std::vector<int> vnum(static_cast<std::size_t>(nv));
        for (int i = 0; i < nv; ++i)
            vnum[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

        auto arc_key = [&](int a) {
            return std::make_tuple(vnum[static_cast<std::size_t>(g.origin(a))],
                                   vnum[static_cast<std::size_t>(g.terminus(a))],
                                   static_cast<int>(d.colours(a).size()),
                                   g.is_self_reversed(a) ? 1 : 0);
        };
        std::vector<int> arrangement(static_cast<std::size_t>(na));
        std::iota(arrangement.begin(), arrangement.end(), 0);
        std::sort(arrangement.begin(), arrangement.end(), [&](int a, int b) {
            return arc_key(a) < arc_key(b) || (arc_key(a) == arc_key(b) && a < b);
        });
        std::vector<std::pair<std::size_t, std::size_t>> ties;
        for (std::size_t i = 0; i < arrangement.size();) {
            std::size_t jend = i + 1;
            while (jend < arrangement.size() &&
                   arc_key(arrangement[jend]) == arc_key(arrangement[i]))
                ++jend;
            if (jend - i > 1) ties.push_back({i, jend});
            i = jend;
        }

        while (true) {
            if (++steps > budget.max_steps)
                throw BudgetError("canonical key search exceeded its budget", steps,
                                  budget.max_steps);
            std::string enc = "V" + std::to_string(nv) + ";";
            std::vector<int> slot_of(static_cast<std::size_t>(na));
            for (std::size_t i = 0; i < arrangement.size(); ++i)
                slot_of[static_cast<std::size_t>(arrangement[i])] = static_cast<int>(i);
            for (int a : arrangement) {
                auto [o, t, sz, sr] = arc_key(a);
                enc += "A" + std::to_string(o) + ">" + std::to_string(t) + ":" +
                       std::to_string(sz) + (sr ? "s" : "o") + "R" +
                       std::to_string(slot_of[static_cast<std::size_t>(g.reverse(a))]) + ";";
            }
            for (int i = 0; i < nv; ++i) {
                int old_v = order[static_cast<std::size_t>(i)];
                const PermGroup& gv = d.local_action(old_v);
                auto dom = blocks_of(d, old_v);
                const auto& out = g.out_arcs(old_v);
                // New block positions: out-arcs ordered by arrangement slot.
                std::vector<std::size_t> by_slot(out.size());
                std::iota(by_slot.begin(), by_slot.end(), std::size_t{0});
                std::sort(by_slot.begin(), by_slot.end(), [&](std::size_t x, std::size_t y) {
                    return slot_of[static_cast<std::size_t>(out[x])] <
                           slot_of[static_cast<std::size_t>(out[y])];
                });
                std::vector<std::vector<int>> img(out.size());
                int pos = 0;
                for (std::size_t r = 0; r < by_slot.size(); ++r) {
                    std::size_t which = by_slot[r];
                    std::vector<int> blk(dom[which].size());
                    std::iota(blk.begin(), blk.end(), pos);
                    pos += static_cast<int>(blk.size());
                    img[which] = std::move(blk);
                }
                std::vector<std::uint32_t> min_vec;
                for_each_block_bijection(gv.degree(), dom, img, steps, budget.max_steps,
                                         [&](const Perm& mu) {
                                             Perm mi = mu.inverse();
                                             std::vector<std::uint32_t> cur;
                                             cur.reserve(gv.elements().size());
                                             for (const Perm& e : gv.elements())
                                                 cur.push_back((mu * e * mi).rank());
                                             std::sort(cur.begin(), cur.end());
                                             if (min_vec.empty() || cur < min_vec)
                                                 min_vec = std::move(cur);
                                             return false;
                                         });
                enc += "G";
                for (std::uint32_t r : min_vec) enc += std::to_string(r) + ",";
                enc += ";";
            }
            if (best.empty() || enc < best) best = std::move(enc);

            std::size_t t = 0;
            for (; t < ties.size(); ++t) {
                auto [lo, hi] = ties[t];
                if (std::next_permutation(arrangement.begin() + static_cast<std::ptrdiff_t>(lo),
                                          arrangement.begin() + static_cast<std::ptrdiff_t>(hi)))
                    break;
                std::sort(arrangement.begin() + static_cast<std::ptrdiff_t>(lo),
                          arrangement.begin() + static_cast<std::ptrdiff_t>(hi));
            }
            if (t == ties.size()) break;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace lad
