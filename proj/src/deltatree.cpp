#include "lad/deltatree.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace lad {

namespace {

int point_of_colour(const LocalActionDiagram& d, int v, const std::string& colour) {
    auto xs = d.vertex_colours(v);
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] == colour) return static_cast<int>(i);
    throw ContractError("colour " + colour + " not at vertex " + d.graph().vertex_id(v));
}

// Core DFS over root-fixing self-maps of b that have valid local actions at
// every interior node.  `on_complete` returns true to stop the enumeration.
void for_each_ball_automorphism(const DeltaTreeBall& b,
                                const std::function<bool(const BallMap&)>& on_complete) {
    const auto& nodes = b.nodes();
    const LocalActionDiagram& d = b.diagram();
    const int n = b.vertex_count();
    if (n == 0) return;

    std::vector<int> interior;
    for (int i = 0; i < n; ++i)
        if (b.is_interior(i)) interior.push_back(i);

    // Inbound colour position within X at the parent's projection.
    std::vector<int> in_point(static_cast<std::size_t>(n), -1);
    std::vector<int> in_arc(static_cast<std::size_t>(n), -1);
    std::vector<int> back_point(static_cast<std::size_t>(n), -1);
    for (int i = 1; i < n; ++i) {
        const auto& node = nodes[static_cast<std::size_t>(i)];
        int pv = nodes[static_cast<std::size_t>(node.parent)].diagram_vertex;
        in_point[static_cast<std::size_t>(i)] = point_of_colour(d, pv, node.colour_in);
        in_arc[static_cast<std::size_t>(i)] = d.arc_of_colour(node.colour_in);
        back_point[static_cast<std::size_t>(i)] =
            point_of_colour(d, node.diagram_vertex, node.colour_back);
    }

    BallMap g(static_cast<std::size_t>(n), -1);
    g[0] = 0;
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
        if (idx == interior.size()) return on_complete(g);
        int v = interior[idx];
        int w = g[static_cast<std::size_t>(v)];
        const auto& cv = nodes[static_cast<std::size_t>(v)].children;
        const auto& cw = nodes[static_cast<std::size_t>(w)].children;
        if (cv.size() != cw.size()) return false;
        const int pi_v = nodes[static_cast<std::size_t>(v)].diagram_vertex;
        const PermGroup& group = d.local_action(pi_v);
        const int deg = d.vertex_degree(pi_v);

        std::function<bool(std::size_t)> assign = [&](std::size_t j) -> bool {
            if (j == cv.size()) {
                std::vector<int> img(static_cast<std::size_t>(deg), -1);
                for (int u : cv)
                    img[static_cast<std::size_t>(in_point[static_cast<std::size_t>(u)])] =
                        in_point[static_cast<std::size_t>(g[static_cast<std::size_t>(u)])];
                if (v != 0)
                    img[static_cast<std::size_t>(back_point[static_cast<std::size_t>(v)])] =
                        back_point[static_cast<std::size_t>(w)];
                Perm sigma = Perm::from_images(std::move(img));
                if (!group.contains(sigma)) return false;
                return place(idx + 1);
            }
            int u = cv[j];
            for (int x : cw) {
                if (used[static_cast<std::size_t>(x)]) continue;
                // Local actions preserve arc blocks, so the inbound arcs match.
                if (in_arc[static_cast<std::size_t>(x)] != in_arc[static_cast<std::size_t>(u)])
                    continue;
                used[static_cast<std::size_t>(x)] = true;
                g[static_cast<std::size_t>(u)] = x;
                if (assign(j + 1)) return true;
                used[static_cast<std::size_t>(x)] = false;
                g[static_cast<std::size_t>(u)] = -1;
            }
            return false;
        };
        return assign(0);
    };
    place(0);
}

} // namespace

DeltaTreeBall::DeltaTreeBall(LocalActionDiagram diagram, int base_vertex, int radius,
                             std::vector<Node> nodes)
    : diagram_(std::move(diagram)), base_vertex_(base_vertex), radius_(radius),
      nodes_(std::move(nodes)) {
    if (base_vertex_ < 0 || base_vertex_ >= diagram_.graph().vertex_count())
        throw ContractError("base vertex out of range");
    if (radius_ < 0) throw ContractError("radius must be nonnegative");
    if (nodes_.empty() || nodes_[0].parent != -1)
        throw ContractError("node 0 must be the root");
}

std::uint64_t predict_ball_size(const LocalActionDiagram& d, int base_vertex, int radius) {
    const SerreGraph& g = d.graph();
    if (base_vertex < 0 || base_vertex >= g.vertex_count())
        throw ContractError("base vertex out of range");
    if (radius < 0) throw ContractError("radius must be nonnegative");
    constexpr std::uint64_t kCeiling = 1'000'000'000'000'000ULL;

    std::uint64_t total = 1;
    // per-arc counts of nodes entered through that arc at the current depth
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(g.arc_count()), 0);
    for (int k = 1; k <= radius; ++k) {
        std::vector<std::uint64_t> next(static_cast<std::size_t>(g.arc_count()), 0);
        if (k == 1) {
            for (int a : g.out_arcs(base_vertex))
                next[static_cast<std::size_t>(a)] = d.colours(a).size();
        } else {
            for (int barc = 0; barc < g.arc_count(); ++barc) {
                std::uint64_t cnt = cur[static_cast<std::size_t>(barc)];
                if (cnt == 0) continue;
                for (int c : g.out_arcs(g.terminus(barc))) {
                    std::uint64_t fan = d.colours(c).size();
                    if (c == g.reverse(barc)) --fan;
                    next[static_cast<std::size_t>(c)] += cnt * fan;
                }
            }
        }
        for (std::uint64_t x : next) {
            total += x;
            if (total > kCeiling) return kCeiling;
        }
        cur = std::move(next);
    }
    return total;
}

DeltaTreeBall build_ball(const LocalActionDiagram& d, int base_vertex, int radius,
                         const BallOptions& options, const BallBudget& budget) {
    std::uint64_t predicted = predict_ball_size(d, base_vertex, radius);
    if (predicted > budget.max_vertices)
        throw BudgetError("ball would have " + std::to_string(predicted) +
                              " vertices, over the budget of " +
                              std::to_string(budget.max_vertices),
                          predicted, budget.max_vertices);

    const SerreGraph& g = d.graph();
    std::mt19937_64 rng(options.seed);
    std::vector<DeltaTreeBall::Node> nodes;
    DeltaTreeBall::Node root;
    root.diagram_vertex = base_vertex;
    nodes.push_back(root);

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].depth >= radius) continue;
        const int v = nodes[i].diagram_vertex;
        const std::string skip = nodes[i].colour_back; // empty at the root
        for (int a : g.out_arcs(v)) {
            const auto& cs = d.colours(a);
            const auto& rev = d.colours(g.reverse(a));
            for (const std::string& c : cs) {
                if (c == skip) continue;
                DeltaTreeBall::Node child;
                child.parent = static_cast<int>(i);
                child.depth = nodes[i].depth + 1;
                child.colour_in = c;
                child.diagram_vertex = g.terminus(a);
                std::size_t pick = 0;
                if (options.randomize_reverse_labels)
                    pick = static_cast<std::size_t>(rng() % rev.size());
                child.colour_back = rev[pick];
                nodes[i].children.push_back(static_cast<int>(nodes.size()));
                nodes.push_back(std::move(child));
            }
        }
    }
    return DeltaTreeBall(d, base_vertex, radius, std::move(nodes));
}

std::string ball_to_text(const DeltaTreeBall& b) {
    const auto& nodes = b.nodes();
    std::string out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::vector<std::string> walk;
        for (int u = static_cast<int>(i); u != 0;
             u = nodes[static_cast<std::size_t>(u)].parent)
            walk.push_back(nodes[static_cast<std::size_t>(u)].colour_in);
        std::reverse(walk.begin(), walk.end());
        out += std::to_string(nodes[i].depth) + " [";
        for (std::size_t j = 0; j < walk.size(); ++j) {
            if (j) out += " ";
            out += walk[j];
        }
        out += "] " + b.diagram().graph().vertex_id(nodes[i].diagram_vertex) + " back=";
        out += nodes[i].colour_back.empty() ? "-" : nodes[i].colour_back;
        out += "\n";
    }
    return out;
}

Perm local_action_at(const DeltaTreeBall& domain, const DeltaTreeBall& image,
                     const BallMap& g, int node) {
    const auto& dn = domain.nodes();
    const auto& im = image.nodes();
    if (node < 0 || node >= domain.vertex_count()) throw ContractError("node out of range");
    if (!domain.is_interior(node)) throw ContractError("boundary vertex");
    if (g.size() != dn.size()) throw ContractError("ball map has the wrong length");
    int w = g[static_cast<std::size_t>(node)];
    if (w < 0 || w >= image.vertex_count()) throw ContractError("ball map image out of range");
    const LocalActionDiagram& d = domain.diagram();
    const int pi_v = dn[static_cast<std::size_t>(node)].diagram_vertex;
    if (im[static_cast<std::size_t>(w)].diagram_vertex != pi_v)
        throw ContractError("ball map does not respect the projection");

    std::vector<int> sigma(static_cast<std::size_t>(d.vertex_degree(pi_v)), -1);
    for (int u : dn[static_cast<std::size_t>(node)].children) {
        int x = g[static_cast<std::size_t>(u)];
        if (x < 0 || x >= image.vertex_count() ||
            im[static_cast<std::size_t>(x)].parent != w)
            throw ContractError("ball map does not respect parent adjacency");
        sigma[static_cast<std::size_t>(
            point_of_colour(d, pi_v, dn[static_cast<std::size_t>(u)].colour_in))] =
            point_of_colour(image.diagram(), pi_v, im[static_cast<std::size_t>(x)].colour_in);
    }
    if (node != 0) {
        sigma[static_cast<std::size_t>(
            point_of_colour(d, pi_v, dn[static_cast<std::size_t>(node)].colour_back))] =
            point_of_colour(image.diagram(), pi_v, im[static_cast<std::size_t>(w)].colour_back);
    }
    for (int x : sigma)
        if (x < 0) throw ContractError("ball map leaves part of the local star unmatched");
    return Perm::from_images(std::move(sigma));
}

std::vector<BallMap> enumerate_ball_automorphisms(const DeltaTreeBall& b,
                                                  std::uint64_t max_count) {
    std::vector<BallMap> out;
    for_each_ball_automorphism(b, [&](const BallMap& g) {
        out.push_back(g);
        return out.size() >= max_count;
    });
    return out;
}

std::uint64_t count_u_ball_automorphisms(const LocalActionDiagram& d, int base_vertex,
                                         int radius) {
    if (radius < 1) throw ContractError("radius must be at least 1");
    DeltaTreeBall ball = build_ball(d, base_vertex, radius);
    const auto& nodes = ball.nodes();

    std::uint64_t count = d.local_action(base_vertex).order();
    for (int i = 1; i < ball.vertex_count(); ++i) {
        if (!ball.is_interior(i)) continue;
        const auto& node = nodes[static_cast<std::size_t>(i)];
        int p = point_of_colour(d, node.diagram_vertex, node.colour_back);
        std::uint64_t stab = d.local_action(node.diagram_vertex).point_stabilizer(p).order();
        if (stab != 0 && count > UINT64_MAX / stab)
            throw BudgetError("ball automorphism count exceeds the 64-bit range", UINT64_MAX,
                              UINT64_MAX);
        count *= stab;
    }

    constexpr std::uint64_t kCrossCheckCap = 1'000'000;
    if (count <= kCrossCheckCap) {
        std::uint64_t seen = 0;
        for_each_ball_automorphism(ball, [&](const BallMap&) {
            ++seen;
            return seen > count;
        });
        if (seen != count)
            throw ContractError("ball automorphism count " + std::to_string(count) +
                                " disagrees with enumeration " + std::to_string(seen));
    }
    return count;
}

bool balls_isomorphic(const DeltaTreeBall& a, const DeltaTreeBall& b) {
    if (a.radius() != b.radius()) return false;
    // Rooted signature: projection plus the sorted child signatures.
    std::function<std::string(const DeltaTreeBall&, int)> sig =
        [&](const DeltaTreeBall& ball, int node) -> std::string {
        const auto& nd = ball.nodes()[static_cast<std::size_t>(node)];
        std::vector<std::string> kids;
        for (int u : nd.children) kids.push_back(sig(ball, u));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + std::to_string(nd.diagram_vertex);
        for (const std::string& k : kids) s += k;
        return s + ")";
    };
    return sig(a, 0) == sig(b, 0);
}

} // namespace lad
