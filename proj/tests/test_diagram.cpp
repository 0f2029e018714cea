// Local action diagram tests: construction, validation, colour bookkeeping,
// serialization round-trips, witnessed isomorphism, canonical keys, and the
// derived constructions (single-vertex, double, star, cotree restriction).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lad/common.hpp"
#include "lad/diagram.hpp"
#include "random_diagrams.hpp"

using namespace lad;
using Arc = SerreGraph::ArcSpec;
using testgen::relabel_colours;

namespace {

LocalActionDiagram s3_vertex() {
    return vt_diagram(PermGroup::symmetric(3), Perm::identity(1));
}

// Two vertices, one orientable edge each way with 2 colours, local action
// Sym(2) on each side.
LocalActionDiagram edge_diagram() {
    SerreGraph g = SerreGraph::build({"u", "v"}, {{"uv", "u", "vu"}, {"vu", "v", "uv"}});
    std::vector<std::vector<std::string>> cols(2);
    cols[static_cast<std::size_t>(g.arc_index("uv"))] = {"a1", "a2"};
    cols[static_cast<std::size_t>(g.arc_index("vu"))] = {"b1", "b2"};
    return LocalActionDiagram(g, cols, {PermGroup::symmetric(2), PermGroup::symmetric(2)});
}

} // namespace

TEST_CASE("single-vertex construction and colour bookkeeping") {
    LocalActionDiagram d = s3_vertex();
    CHECK(d.graph().vertex_count() == 1);
    CHECK(d.graph().arc_count() == 1);
    CHECK(d.graph().is_self_reversed(0));
    CHECK(d.vertex_degree(0) == 3);
    CHECK(d.vertex_colours(0) == std::vector<std::string>{"1", "2", "3"});
    CHECK(validate(d).ok);

    for (int p = 0; p < 3; ++p) {
        auto [arc, label] = d.point_info(0, p);
        CHECK(d.point_of(arc, label) == p);
        CHECK(d.arc_of_colour(label) == arc);
    }
    CHECK_THROWS_AS(d.point_of(0, "nope"), ContractError);
    CHECK_THROWS_AS(d.arc_of_colour("nope"), ContractError);
}

TEST_CASE("vt_diagram splits orbits into arcs and honours the pairing") {
    PermGroup h(3, {Perm::parse_cycles("(2,3)", 3)});
    // Orbits {1} and {2,3}; the transposition pairs them.
    LocalActionDiagram paired = vt_diagram(h, Perm::parse_cycles("(1,2)", 2));
    CHECK(paired.graph().vertex_count() == 1);
    CHECK(paired.graph().arc_count() == 2);
    CHECK(!paired.graph().is_self_reversed(0));
    CHECK(paired.graph().reverse(0) == 1);
    CHECK(validate(paired).ok);
    CHECK(paired.colours(0).size() + paired.colours(1).size() == 3);

    LocalActionDiagram fixed = vt_diagram(h, Perm::identity(2));
    CHECK(fixed.graph().arc_count() == 2);
    CHECK(fixed.graph().is_self_reversed(0));
    CHECK(fixed.graph().is_self_reversed(1));
    CHECK(validate(fixed).ok);

    // Orbits of unequal size may be paired: the arc and its reverse then
    // carry colour sets of different sizes.
    PermGroup s2x1(3, {Perm::parse_cycles("(1,2)", 3)});
    LocalActionDiagram mixed = vt_diagram(s2x1, Perm::parse_cycles("(1,2)", 2));
    CHECK(validate(mixed).ok);
    CHECK(mixed.colours(0).size() != mixed.colours(mixed.graph().reverse(0)).size());
    // The pairing must be an involution on the orbit list.
    CHECK_THROWS_AS(vt_diagram(PermGroup::trivial(3), Perm::parse_cycles("(1,2,3)", 3)),
                    ContractError);
}

TEST_CASE("validation reports orbit mismatches") {
    // Sym(2) at u but the arc over it carries two singleton colour sets:
    // impossible through vt_diagram, so build by hand.
    SerreGraph g = SerreGraph::build({"u"}, {{"a", "u", "b"}, {"b", "u", "a"}});
    LocalActionDiagram bad(g, {{"x"}, {"y"}}, {PermGroup::symmetric(2)});
    ValidationReport r = validate(bad);
    CHECK(!r.ok);
    CHECK(!r.violations.empty());

    LocalActionDiagram good(g, {{"x"}, {"y"}}, {PermGroup::trivial(2)});
    CHECK(validate(good).ok);

    // Disconnected graphs are rejected.
    SerreGraph two = SerreGraph::build({"u", "v"}, {{"a", "u", "a"}, {"b", "v", "b"}});
    LocalActionDiagram disc(two, {{"x"}, {"y"}}, {PermGroup::trivial(1), PermGroup::trivial(1)});
    CHECK(!validate(disc).ok);

    // Duplicate colour labels across arcs are rejected.
    LocalActionDiagram dup(g, {{"x"}, {"x"}}, {PermGroup::trivial(2)});
    CHECK(!validate(dup).ok);
}

TEST_CASE("construction size mismatches fail loudly, content checks are validate's") {
    SerreGraph g = SerreGraph::build({"u"}, {{"a", "u", "a"}});
    CHECK_THROWS_AS(LocalActionDiagram(g, {}, {PermGroup::trivial(1)}), ContractError);
    CHECK_THROWS_AS(LocalActionDiagram(g, {{"x"}}, {}), ContractError);
    // Empty colour sets and degree mismatches construct but do not validate.
    CHECK(!validate(LocalActionDiagram(g, {{}}, {PermGroup::trivial(0)})).ok);
    CHECK(!validate(LocalActionDiagram(g, {{"x"}}, {PermGroup::trivial(2)})).ok);
}

TEST_CASE("json serialization round-trips bit-exactly") {
    for (const LocalActionDiagram& d : {s3_vertex(), edge_diagram()}) {
        std::string j = to_json(d);
        LocalActionDiagram back = diagram_from_json(j);
        CHECK(to_json(back) == j);
        CHECK(validate(back).ok);
        CHECK(isomorphic(d, back).has_value());
    }
    CHECK_THROWS_AS(diagram_from_json("not json"), ContractError);
    CHECK_THROWS_AS(diagram_from_json("{}"), ContractError);
    CHECK_THROWS_AS(diagram_from_json("[1,2]"), ContractError);
}

TEST_CASE("isomorphism finds witnesses and verifies them") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        LocalActionDiagram d = trial % 2 == 0 ? s3_vertex() : edge_diagram();
        LocalActionDiagram e = relabel_colours(d, rng);
        REQUIRE(validate(e).ok);
        auto iso = isomorphic(d, e);
        REQUIRE(iso.has_value());
        const SerreGraph& gd = d.graph();
        const SerreGraph& ge = e.graph();
        // The witness is a graph isomorphism respecting origin and reversal.
        std::set<int> vimg(iso->vertex_map.begin(), iso->vertex_map.end());
        CHECK(static_cast<int>(vimg.size()) == gd.vertex_count());
        for (int a = 0; a < gd.arc_count(); ++a) {
            int fa = iso->arc_map[static_cast<std::size_t>(a)];
            CHECK(iso->vertex_map[static_cast<std::size_t>(gd.origin(a))] == ge.origin(fa));
            CHECK(iso->arc_map[static_cast<std::size_t>(gd.reverse(a))] == ge.reverse(fa));
            // Colour maps are bijections onto the image colour set.
            const auto& cm = iso->colour_maps[static_cast<std::size_t>(a)];
            CHECK(cm.size() == d.colours(a).size());
            CHECK(e.colours(fa).size() == cm.size());
            std::set<int> seen(cm.begin(), cm.end());
            CHECK(seen.size() == cm.size());
        }
    }
}

TEST_CASE("non-isomorphic diagrams are rejected") {
    LocalActionDiagram a = s3_vertex();
    LocalActionDiagram b = vt_diagram(PermGroup::cyclic(3), Perm::identity(1));
    CHECK(!isomorphic(a, b).has_value());
    CHECK(!isomorphic(a, edge_diagram()).has_value());
    // Same graph and colour sizes, different pairing structure.
    PermGroup h(3, {Perm::parse_cycles("(2,3)", 3)});
    CHECK(!isomorphic(vt_diagram(h, Perm::identity(2)),
                      vt_diagram(h, Perm::parse_cycles("(1,2)", 2)))
               .has_value());
}

TEST_CASE("canonical keys characterize isomorphism") {
    std::mt19937_64 rng(321);
    LocalActionDiagram d = edge_diagram();
    LocalActionDiagram e = relabel_colours(d, rng);
    CHECK(canonical_key(d) == canonical_key(e));
    CHECK(canonical_key(s3_vertex()) !=
          canonical_key(vt_diagram(PermGroup::cyclic(3), Perm::identity(1))));
    // Key equality and isomorphic() agree pairwise on a mixed pool.
    std::vector<LocalActionDiagram> pool = {
        s3_vertex(),
        vt_diagram(PermGroup::cyclic(3), Perm::identity(1)),
        vt_diagram(PermGroup::trivial(2), Perm::identity(2)),
        vt_diagram(PermGroup::trivial(2), Perm::parse_cycles("(1,2)", 2)),
        edge_diagram(),
        relabel_colours(edge_diagram(), rng),
    };
    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t j = i + 1; j < pool.size(); ++j)
            CHECK((canonical_key(pool[i]) == canonical_key(pool[j])) ==
                  isomorphic(pool[i], pool[j]).has_value());
}

TEST_CASE("double diagram duplicates the vertex and validates") {
    LocalActionDiagram d = s3_vertex();
    LocalActionDiagram dd = double_diagram(d);
    CHECK(dd.graph().vertex_count() == 2);
    CHECK(dd.graph().arc_count() == 2);
    CHECK(dd.graph().self_reversed_count() == 0);
    CHECK(validate(dd).ok);
    for (int v = 0; v < 2; ++v) CHECK(dd.local_action(v).order() == 6);
}

TEST_CASE("star diagram enforces its preconditions") {
    PermGroup s3 = PermGroup::symmetric(3);
    PermGroup u = s3.point_stabilizer(0);
    StarFactor good{s3, u};
    LocalActionDiagram star = star_diagram({good, good});
    CHECK(validate(star).ok);
    CHECK(star.graph().vertex_count() == 3);
    // Leaf local actions are the coset actions of the factors.
    CHECK(star.graph().geometric_edge_count() == 2);

    // U trivial.
    CHECK_THROWS_AS(star_diagram({{s3, PermGroup::trivial(3)}}), ContractError);
    // U = G.
    CHECK_THROWS_AS(star_diagram({{s3, s3}}), ContractError);
    // Conjugates of U must generate G: A4 with a Sylow-3 subgroup fails
    // nothing (they do generate), but C4 with its order-2 subgroup is not
    // generated by conjugates (the subgroup is normal and proper).
    PermGroup c4 = PermGroup::cyclic(4);
    PermGroup c2(4, {Perm::parse_cycles("(1,3)(2,4)", 4)});
    CHECK_THROWS_AS(star_diagram({{c4, c2}}), ContractError);
}

TEST_CASE("cotree restriction keeps valid diagrams valid") {
    // Path u - v - w; the cotree {v, w} retains the v - w edge, and the arc
    // u -> v entering it carries a singleton colour set as required.
    SerreGraph g = SerreGraph::build({"u", "v", "w"}, {{"uv", "u", "vu"},
                                                       {"vu", "v", "uv"},
                                                       {"vw", "v", "wv"},
                                                       {"wv", "w", "vw"}});
    std::vector<std::vector<std::string>> cols(4);
    cols[static_cast<std::size_t>(g.arc_index("uv"))] = {"a1"};
    cols[static_cast<std::size_t>(g.arc_index("vu"))] = {"b1"};
    cols[static_cast<std::size_t>(g.arc_index("vw"))] = {"b2", "b3"};
    cols[static_cast<std::size_t>(g.arc_index("wv"))] = {"c1", "c2"};
    PermGroup at_v(3, {Perm::parse_cycles("(2,3)", 3)});
    LocalActionDiagram d(g, cols,
                         {PermGroup::trivial(1), at_v, PermGroup::symmetric(2)});
    REQUIRE(validate(d).ok);
    LocalActionDiagram r = restrict_to_cotree(d, {g.vertex_index("v"), g.vertex_index("w")});
    CHECK(validate(r).ok);
    CHECK(r.graph().vertex_count() == 2);
    CHECK(r.graph().geometric_edge_count() == 1);
    // The retained local action at v is the restriction to {b2, b3}.
    for (int v = 0; v < 2; ++v) CHECK(r.local_action(v).order() == 2);

    // The edge diagram's 2-colour inbound arc disqualifies {u} as a cotree.
    CHECK_THROWS_AS(restrict_to_cotree(edge_diagram(), {0}), ContractError);
}
