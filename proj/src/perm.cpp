#include "lad/perm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <unordered_set>

namespace lad {

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

} // namespace

Perm::Perm(int degree) {
    if (degree < 0 || degree > kMaxPermDegree)
        throw ContractError("permutation degree out of range: " + std::to_string(degree));
    img_.resize(static_cast<std::size_t>(degree));
    std::iota(img_.begin(), img_.end(), 0);
}

Perm Perm::identity(int degree) { return Perm(degree); }

Perm Perm::from_images(std::vector<int> images) {
    const int d = static_cast<int>(images.size());
    if (d > kMaxPermDegree)
        throw ContractError("permutation degree out of range: " + std::to_string(d));
    std::vector<bool> seen(images.size(), false);
    for (int x : images) {
        if (x < 0 || x >= d || seen[static_cast<std::size_t>(x)])
            throw ContractError("image list is not a permutation");
        seen[static_cast<std::size_t>(x)] = true;
    }
    Perm p;
    p.img_ = std::move(images);
    return p;
}

Perm Perm::parse_cycles(const std::string& text, int degree) {
    Perm p(degree);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    std::vector<bool> used(static_cast<std::size_t>(degree), false);
    while (i < text.size()) {
        if (text[i] != '(') throw ContractError("cycle text: expected '(' in \"" + text + "\"");
        ++i;
        std::vector<int> cyc;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ContractError("cycle text: expected point in \"" + text + "\"");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            if (v < 1 || v > degree)
                throw ContractError("cycle text: point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
            cyc.push_back(v - 1);
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
        }
        if (i >= text.size()) throw ContractError("cycle text: unterminated cycle in \"" + text + "\"");
        ++i; // ')'
        skip_ws();
        for (int pt : cyc) {
            if (used[static_cast<std::size_t>(pt)])
                throw ContractError("cycle text: point repeated in \"" + text + "\"");
            used[static_cast<std::size_t>(pt)] = true;
        }
        if (cyc.size() > 1)
            for (std::size_t k = 0; k < cyc.size(); ++k)
                p.img_[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
    }
    return p;
}

Perm Perm::operator*(const Perm& g) const {
    if (degree() != g.degree()) throw ContractError("composing permutations of different degree");
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x)
        r.img_[x] = img_[static_cast<std::size_t>(g.img_[x])];
    return r;
}

Perm Perm::inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (std::size_t x = 0; x < img_.size(); ++x)
        r.img_[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
    return r;
}

bool Perm::is_identity() const {
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != static_cast<int>(x)) return false;
    return true;
}

int Perm::order() const {
    int n = 1;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t x = 0; x < img_.size(); ++x) {
        if (seen[x]) continue;
        int len = 0;
        std::size_t y = x;
        do {
            seen[y] = true;
            y = static_cast<std::size_t>(img_[y]);
            ++len;
        } while (y != x);
        n = std::lcm(n, len);
    }
    return n;
}

int Perm::moved_points() const {
    int n = 0;
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != static_cast<int>(x)) ++n;
    return n;
}

bool Perm::is_even() const {
    int cycles = 0;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t x = 0; x < img_.size(); ++x) {
        if (seen[x]) continue;
        ++cycles;
        std::size_t y = x;
        do {
            seen[y] = true;
            y = static_cast<std::size_t>(img_[y]);
        } while (y != x);
    }
    return (static_cast<int>(img_.size()) - cycles) % 2 == 0;
}

std::string Perm::cycle_string() const {
    std::string s;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t x = 0; x < img_.size(); ++x) {
        if (seen[x] || img_[x] == static_cast<int>(x)) { seen[x] = true; continue; }
        s += '(';
        std::size_t y = x;
        bool first = true;
        do {
            if (!first) s += ',';
            first = false;
            s += std::to_string(y + 1);
            seen[y] = true;
            y = static_cast<std::size_t>(img_[y]);
        } while (y != x);
        s += ')';
    }
    if (s.empty()) s = "()";
    return s;
}

std::uint32_t Perm::rank() const {
    const int d = degree();
    if (d > 12) throw ContractError("permutation rank needs degree <= 12");
    std::uint32_t r = 0;
    for (int i = 0; i < d; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < d; ++j)
            if (img_[static_cast<std::size_t>(j)] < img_[static_cast<std::size_t>(i)]) ++smaller;
        r = r * static_cast<std::uint32_t>(d - i) + static_cast<std::uint32_t>(smaller);
    }
    return r;
}

Perm Perm::from_rank(std::uint32_t rank, int degree) {
    if (degree > 12) throw ContractError("permutation rank needs degree <= 12");
    std::vector<int> lehmer(static_cast<std::size_t>(degree), 0);
    for (int i = degree - 1; i >= 0; --i) {
        lehmer[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::uint32_t>(degree - i));
        rank /= static_cast<std::uint32_t>(degree - i);
    }
    std::vector<int> pool(static_cast<std::size_t>(degree));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> img;
    img.reserve(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) {
        int k = lehmer[static_cast<std::size_t>(i)];
        img.push_back(pool[static_cast<std::size_t>(k)]);
        pool.erase(pool.begin() + k);
    }
    return from_images(std::move(img));
}

std::uint64_t Perm::key() const {
    std::uint64_t k = 0;
    for (std::size_t x = 0; x < img_.size(); ++x)
        k |= static_cast<std::uint64_t>(img_[x]) << (4 * x);
    return k | (static_cast<std::uint64_t>(img_.size()) << 60);
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators) : degree_(degree) {
    for (const Perm& g : generators) {
        if (g.degree() != degree)
            throw ContractError("generator degree mismatch");
        if (!g.is_identity()) gens_.push_back(g);
    }
}

PermGroup PermGroup::trivial(int degree) { return PermGroup(degree, {}); }

PermGroup PermGroup::symmetric(int degree) {
    std::vector<Perm> gens;
    if (degree >= 2) {
        std::vector<int> t(static_cast<std::size_t>(degree));
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[0], t[1]);
        gens.push_back(Perm::from_images(t));
    }
    if (degree >= 3) {
        std::vector<int> c(static_cast<std::size_t>(degree));
        for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % degree;
        gens.push_back(Perm::from_images(c));
    }
    return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::cyclic(int degree) {
    if (degree < 2) return trivial(degree);
    std::vector<int> c(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % degree;
    return PermGroup(degree, {Perm::from_images(c)});
}

PermGroup PermGroup::from_elements(int degree, const std::vector<Perm>& elements) {
    // Greedy generator selection: an element outside the current closure
    // strictly increases the order, so one pass yields generators for the
    // closure of the whole list without materializing it.
    PermGroup g = trivial(degree);
    for (const Perm& e : elements) {
        if (e.degree() != degree) throw ContractError("element degree mismatch");
        if (e.is_identity()) continue;
        std::vector<Perm> cand = g.gens_;
        cand.push_back(e);
        PermGroup bigger(degree, cand);
        if (bigger.order() > g.order()) g = std::move(bigger);
    }
    return g;
}

const std::vector<Perm>& PermGroup::elements() const {
    if (!elements_.empty()) return elements_;
    std::vector<Perm> elems{Perm::identity(degree_)};
    std::unordered_set<std::uint64_t> seen{elems[0].key()};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const Perm& g : gens_) {
            Perm h = g * elems[i];
            if (seen.insert(h.key()).second) {
                elems.push_back(std::move(h));
                if (elems.size() > kMaxGroupElements)
                    throw BudgetError("group element enumeration exceeds " +
                                          std::to_string(kMaxGroupElements) + " elements",
                                      elems.size(), kMaxGroupElements);
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    elements_ = std::move(elems);
    order_ = elements_.size();
    return elements_;
}

std::uint64_t PermGroup::order() const {
    if (order_ != 0) return order_;
    // Orbit-stabilizer recursion: |G| = |orbit(p)| * |Stab(p)| on the first
    // moved point; Schreier generators feed the recursive call.
    if (gens_.empty()) { order_ = 1; return order_; }
    int p = -1;
    for (int x = 0; x < degree_ && p < 0; ++x)
        for (const Perm& g : gens_)
            if (g(x) != x) { p = x; break; }
    if (p < 0) { order_ = 1; return order_; }
    PermGroup stab = point_stabilizer(p);
    order_ = static_cast<std::uint64_t>(orbit_of(p).size()) * stab.order();
    return order_;
}

bool PermGroup::contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    if (g.is_identity()) return true;
    // Sift down the orbit-stabilizer chain; falls back to no when the residue
    // moves a point whose orbit misses its image.
    PermGroup cur = *this;
    Perm h = g;
    for (int guard = 0; guard <= degree_; ++guard) {
        if (h.is_identity()) return true;
        int p = -1;
        for (int x = 0; x < degree_ && p < 0; ++x)
            if (h(x) != x) p = x;
        if (p < 0) return true;
        // transversal element u with u(p) = h(p), if any
        std::vector<int> from(static_cast<std::size_t>(degree_), -1);
        std::vector<Perm> tr(static_cast<std::size_t>(degree_), Perm::identity(degree_));
        from[static_cast<std::size_t>(p)] = p;
        std::vector<int> queue{p};
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (const Perm& s : cur.generators()) {
                int y = s(queue[i]);
                if (from[static_cast<std::size_t>(y)] < 0) {
                    from[static_cast<std::size_t>(y)] = queue[i];
                    tr[static_cast<std::size_t>(y)] = s * tr[static_cast<std::size_t>(queue[i])];
                    queue.push_back(y);
                }
            }
        int q = h(p);
        if (from[static_cast<std::size_t>(q)] < 0) return false;
        h = tr[static_cast<std::size_t>(q)].inverse() * h; // now fixes p
        cur = cur.point_stabilizer(p);
    }
    return false;
}

bool PermGroup::is_abelian() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
    return true;
}

bool PermGroup::is_transitive() const { return orbits().size() <= 1; }

bool PermGroup::is_free_action() const {
    const std::uint64_t n = order();
    for (const auto& orb : orbits())
        if (orb.size() != n) return false;
    return true;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
    for (int x = 0; x < degree_; ++x) {
        if (seen[static_cast<std::size_t>(x)]) continue;
        std::vector<int> orb{x};
        seen[static_cast<std::size_t>(x)] = true;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const Perm& g : gens_) {
                int y = g(orb[i]);
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = true;
                    orb.push_back(y);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<int> PermGroup::orbit_of(int p) const {
    std::vector<int> orb{p};
    std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
    seen[static_cast<std::size_t>(p)] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
        for (const Perm& g : gens_) {
            int y = g(orb[i]);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                orb.push_back(y);
            }
        }
    std::sort(orb.begin(), orb.end());
    return orb;
}

PermGroup PermGroup::point_stabilizer(int p) const {
    if (p < 0 || p >= degree_) throw ContractError("point outside domain");
    // Orbit with transversal, then Schreier generators u(gx)^-1 g u(x).
    std::vector<int> order_found{p};
    std::vector<Perm> tr(static_cast<std::size_t>(degree_), Perm::identity(degree_));
    std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
    seen[static_cast<std::size_t>(p)] = true;
    for (std::size_t i = 0; i < order_found.size(); ++i)
        for (const Perm& g : gens_) {
            int y = g(order_found[i]);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                tr[static_cast<std::size_t>(y)] = g * tr[static_cast<std::size_t>(order_found[i])];
                order_found.push_back(y);
            }
        }
    std::vector<Perm> schreier;
    std::unordered_set<std::uint64_t> keys;
    for (int x : order_found)
        for (const Perm& g : gens_) {
            Perm s = tr[static_cast<std::size_t>(g(x))].inverse() * g * tr[static_cast<std::size_t>(x)];
            if (!s.is_identity() && keys.insert(s.key()).second) schreier.push_back(std::move(s));
        }
    // Greedy reduction keeps the generating set small and deterministic.
    PermGroup stab = trivial(degree_);
    for (const Perm& s : schreier) {
        std::vector<Perm> cand = stab.gens_;
        cand.push_back(s);
        PermGroup bigger(degree_, cand);
        if (bigger.order() > stab.order()) stab = std::move(bigger);
    }
    return stab;
}

PermGroup PermGroup::point_stabilizer_by_filter(int p) const {
    if (p < 0 || p >= degree_) throw ContractError("point outside domain");
    std::vector<Perm> fixed;
    for (const Perm& e : elements())
        if (e(p) == p) fixed.push_back(e);
    return from_elements(degree_, fixed);
}

PermGroup PermGroup::pointwise_stabilizer(const std::vector<int>& pts) const {
    PermGroup g = *this;
    for (int p : pts) g = g.point_stabilizer(p);
    return g;
}

PermGroup PermGroup::plus_subgroup() const {
    std::vector<Perm> gens;
    for (int p = 0; p < degree_; ++p) {
        const PermGroup stab = point_stabilizer(p);
        for (const Perm& s : stab.generators()) gens.push_back(s);
    }
    return from_elements(degree_, gens);
}

PermGroup PermGroup::derived_subgroup() const {
    // Normal closure of the commutators of the generators.
    std::vector<Perm> work;
    for (const Perm& g : gens_)
        for (const Perm& h : gens_) {
            Perm c = g.inverse() * h.inverse() * g * h;
            if (!c.is_identity()) work.push_back(std::move(c));
        }
    PermGroup d = from_elements(degree_, work);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Perm& g : gens_)
            for (const Perm& s : d.generators()) {
                Perm c = g * s * g.inverse();
                if (!d.contains(c)) {
                    std::vector<Perm> bigger = d.generators();
                    bigger.push_back(c);
                    d = PermGroup(degree_, bigger);
                    grew = true;
                }
            }
    }
    return d;
}

bool PermGroup::same_group(const PermGroup& other) const {
    if (degree_ != other.degree_) return false;
    if (order() != other.order()) return false;
    for (const Perm& g : gens_)
        if (!other.contains(g)) return false;
    return true;
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
    if (degree_ != other.degree_) return false;
    for (const Perm& g : gens_)
        if (!other.contains(g)) return false;
    return true;
}

std::vector<std::uint32_t> PermGroup::canonical_encoding() const {
    const std::uint64_t n = factorial(degree_);
    const auto& elems = elements();
    std::vector<std::uint32_t> best;
    std::vector<std::uint32_t> cur(elems.size());
    for (std::uint64_t r = 0; r < n; ++r) {
        Perm s = Perm::from_rank(static_cast<std::uint32_t>(r), degree_);
        Perm si = s.inverse();
        for (std::size_t i = 0; i < elems.size(); ++i)
            cur[i] = (s * elems[i] * si).rank();
        std::sort(cur.begin(), cur.end());
        if (best.empty() || cur < best) best = cur;
    }
    return best;
}

std::vector<std::vector<int>> orbit_partition(const PermGroup& g) { return g.orbits(); }

std::uint64_t group_order(const PermGroup& g) { return g.order(); }

std::optional<Perm> conjugate_in_sym(const PermGroup& a, const PermGroup& b) {
    if (a.degree() != b.degree()) return std::nullopt;
    if (a.order() != b.order()) return std::nullopt;
    auto sizes = [](const PermGroup& g) {
        std::vector<std::size_t> v;
        for (const auto& o : g.orbits()) v.push_back(o.size());
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sizes(a) != sizes(b)) return std::nullopt;
    const int d = a.degree();
    std::unordered_set<std::uint64_t> bset;
    for (const Perm& e : b.elements()) bset.insert(e.key());
    const std::uint64_t n = factorial(d);
    for (std::uint64_t r = 0; r < n; ++r) {
        Perm s = Perm::from_rank(static_cast<std::uint32_t>(r), d);
        Perm si = s.inverse();
        bool ok = true;
        for (const Perm& g : a.generators())
            if (!bset.count((s * g * si).key())) { ok = false; break; }
        if (ok) return s;
    }
    return std::nullopt;
}

PermGroup normalizer_in_sym(const PermGroup& g, int degree_bound) {
    const int d = g.degree();
    if (d > degree_bound)
        throw ContractError("normalizer_in_sym: degree " + std::to_string(d) +
                            " exceeds bound " + std::to_string(degree_bound));
    std::unordered_set<std::uint64_t> gset;
    for (const Perm& e : g.elements()) gset.insert(e.key());
    std::vector<Perm> norm;
    const std::uint64_t n = factorial(d);
    for (std::uint64_t r = 0; r < n; ++r) {
        Perm s = Perm::from_rank(static_cast<std::uint32_t>(r), d);
        Perm si = s.inverse();
        bool ok = true;
        for (const Perm& h : g.generators())
            if (!gset.count((s * h * si).key())) { ok = false; break; }
        if (ok) norm.push_back(std::move(s));
    }
    return PermGroup::from_elements(d, norm);
}

namespace {

struct SubgroupClass {
    std::vector<std::uint64_t> bits; // element bitset indexed by rank
    std::vector<std::uint32_t> ranks;
    std::vector<Perm> gens;
    std::uint64_t order = 1;
};

bool bit_get(const std::vector<std::uint64_t>& bits, std::uint32_t i) {
    return (bits[i >> 6] >> (i & 63)) & 1;
}
void bit_set(std::vector<std::uint64_t>& bits, std::uint32_t i) {
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
}

} // namespace

std::vector<PermGroup> subgroup_classes(int degree, int degree_bound) {
    if (degree < 2 || degree > degree_bound)
        throw ContractError("subgroup_classes: degree " + std::to_string(degree) +
                            " outside 2.." + std::to_string(degree_bound));
    if (degree_bound > 8)
        throw ContractError("subgroup_classes: bound above 8 is not supported");
    const std::uint32_t n = static_cast<std::uint32_t>(factorial(degree));
    const std::size_t words = (n + 63) / 64;

    std::vector<Perm> all(n, Perm());
    for (std::uint32_t r = 0; r < n; ++r) all[r] = Perm::from_rank(r, degree);

    auto rank_of = [&](const Perm& p) { return p.rank(); };

    auto closure = [&](const std::vector<Perm>& gens) {
        SubgroupClass c;
        c.bits.assign(words, 0);
        std::vector<std::uint32_t> elems{Perm::identity(degree).rank()};
        bit_set(c.bits, elems[0]);
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (const Perm& g : gens) {
                std::uint32_t r = rank_of(g * all[elems[i]]);
                if (!bit_get(c.bits, r)) {
                    bit_set(c.bits, r);
                    elems.push_back(r);
                }
            }
        std::sort(elems.begin(), elems.end());
        c.ranks = std::move(elems);
        c.order = c.ranks.size();
        // Small deterministic generating set.
        PermGroup pg = PermGroup::trivial(degree);
        for (std::uint32_t r : c.ranks) {
            if (pg.order() == c.order) break;
            std::vector<Perm> cand = pg.generators();
            cand.push_back(all[r]);
            PermGroup bigger(degree, cand);
            if (bigger.order() > pg.order()) pg = std::move(bigger);
        }
        c.gens = pg.generators();
        return c;
    };

    auto fingerprint = [&](const SubgroupClass& c) {
        std::vector<std::size_t> orb_sizes;
        {
            PermGroup pg(degree, c.gens);
            for (const auto& o : pg.orbits()) orb_sizes.push_back(o.size());
            std::sort(orb_sizes.begin(), orb_sizes.end());
        }
        std::array<std::uint32_t, 13> order_hist{};
        for (std::uint32_t r : c.ranks) ++order_hist[static_cast<std::size_t>(all[r].order())];
        std::string f = std::to_string(c.order) + "|";
        for (std::size_t s : orb_sizes) f += std::to_string(s) + ",";
        f += "|";
        for (std::size_t i = 1; i < order_hist.size(); ++i)
            if (order_hist[i]) f += std::to_string(i) + ":" + std::to_string(order_hist[i]) + ",";
        return f;
    };

    // Conjugacy test on sets: s K s^-1 = C iff every generator of K maps in.
    auto conjugate_to = [&](const SubgroupClass& k, const SubgroupClass& c) {
        for (std::uint32_t r = 0; r < n; ++r) {
            const Perm& s = all[r];
            Perm si = s.inverse();
            bool ok = true;
            for (const Perm& g : k.gens)
                if (!bit_get(c.bits, rank_of(s * g * si))) { ok = false; break; }
            if (ok) return true;
        }
        return false;
    };

    std::vector<SubgroupClass> classes;
    std::map<std::string, std::vector<std::size_t>> by_fp;

    auto add_if_new = [&](SubgroupClass&& k) -> bool {
        std::string fp = fingerprint(k);
        for (std::size_t idx : by_fp[fp])
            if (conjugate_to(k, classes[idx])) return false;
        by_fp[fp].push_back(classes.size());
        classes.push_back(std::move(k));
        return true;
    };

    add_if_new(closure({}));

    // Every subgroup K equals <M, g> for some maximal M < K, so extending each
    // discovered class by one generator per double coset reaches every class;
    // induction on |K| gives completeness.
    for (std::size_t head = 0; head < classes.size(); ++head) {
        const SubgroupClass h = classes[head]; // copy: classes vector reallocates
        std::vector<std::uint64_t> covered = h.bits;
        for (std::uint32_t g = 0; g < n; ++g) {
            if (bit_get(covered, g)) continue;
            // Mark the double coset HgH via orbit expansion.
            std::vector<std::uint32_t> orbit{g};
            bit_set(covered, g);
            for (std::size_t i = 0; i < orbit.size(); ++i)
                for (const Perm& s : h.gens) {
                    std::uint32_t l = rank_of(s * all[orbit[i]]);
                    if (!bit_get(covered, l)) { bit_set(covered, l); orbit.push_back(l); }
                    std::uint32_t rr = rank_of(all[orbit[i]] * s);
                    if (!bit_get(covered, rr)) { bit_set(covered, rr); orbit.push_back(rr); }
                }
            std::vector<Perm> gens = h.gens;
            gens.push_back(all[g]);
            add_if_new(closure(gens));
        }
    }

    std::vector<PermGroup> out;
    out.reserve(classes.size());
    for (const auto& c : classes) out.emplace_back(degree, c.gens);
    std::vector<std::pair<std::vector<std::uint32_t>, std::size_t>> keys(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        keys[i] = {out[i].canonical_encoding(), i};
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        const std::uint64_t oa = out[a.second].order(), ob = out[b.second].order();
        if (oa != ob) return oa < ob;
        return a.first < b.first;
    });
    std::vector<PermGroup> sorted;
    sorted.reserve(out.size());
    for (const auto& [enc, i] : keys) sorted.push_back(out[i]);
    return sorted;
}

} // namespace lad
