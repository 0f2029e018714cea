#include "lad/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "lad/common.hpp"
#include "lad/sgraph.hpp"

namespace lad {

namespace {

constexpr int kCensusDegreeMax = 7;

// Runs fn(i) for i in [0, n) on `jobs` threads; the first exception wins and
// is rethrown after all threads join.  fn must write only to its own index.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(jobs, static_cast<int>(n));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Involutions on the orbit list of h, up to conjugacy by the action that the
// normalizer of h induces on the orbits.  Ascending element order; the least
// representative of each class is kept.
std::vector<Perm> pairings_for_class(const PermGroup& h) {
    const auto orbits = h.orbits();
    const int k = static_cast<int>(orbits.size());
    std::vector<int> point_to_orbit(static_cast<std::size_t>(h.degree()), -1);
    for (int i = 0; i < k; ++i)
        for (int p : orbits[static_cast<std::size_t>(i)])
            point_to_orbit[static_cast<std::size_t>(p)] = i;

    PermGroup norm = normalizer_in_sym(h);
    std::vector<Perm> induced;
    for (const Perm& g : norm.generators()) {
        std::vector<int> images(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            images[static_cast<std::size_t>(i)] =
                point_to_orbit[static_cast<std::size_t>(g(orbits[static_cast<std::size_t>(i)][0]))];
        induced.push_back(Perm::from_images(std::move(images)));
    }
    PermGroup r(k, std::move(induced));
    const auto& r_elems = r.elements();

    std::vector<Perm> kept;
    std::unordered_set<std::uint64_t> seen;
    const PermGroup sym_k = PermGroup::symmetric(k);
    for (const Perm& t : sym_k.elements()) {
        if (!(t * t).is_identity()) continue;
        if (seen.count(t.key())) continue;
        kept.push_back(t);
        for (const Perm& g : r_elems) seen.insert((g * t * g.inverse()).key());
    }
    return kept;
}

std::vector<VtAction> enumerate_with_jobs(int degree, int bound, int jobs) {
    if (degree < 2)
        throw ContractError("census enumeration requires degree at least 2, got " +
                            std::to_string(degree));
    if (degree > bound)
        throw ContractError("degree " + std::to_string(degree) + " exceeds the census bound " +
                            std::to_string(bound));
    std::vector<PermGroup> classes = subgroup_classes(degree, std::max(bound, degree));
    std::vector<std::vector<Perm>> per_class(classes.size());
    parallel_for(classes.size(), jobs,
                 [&](std::size_t i) { per_class[i] = pairings_for_class(classes[i]); });
    std::vector<VtAction> out;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (const Perm& pairing : per_class[i]) out.push_back({classes[i], pairing});
    return out;
}

std::string format_lpc(const std::vector<int>& primes) {
    std::string out = "{";
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(primes[static_cast<std::size_t>(i)]);
    }
    return out + "}";
}

const ReferenceRow* find_reference(int degree, const std::string& local_action,
                                   const std::string& pairing) {
    for (const ReferenceRow& row : reference_rows())
        if (row.degree == degree && local_action == row.local_action && pairing == row.pairing)
            return &row;
    return nullptr;
}

// A single-vertex diagram fixes an end exactly when the local action has two
// orbits, one of them a singleton, swapped by the pairing: the singleton arc
// is then the unique cycle-type orientation.
bool single_vertex_end_rule(const PermGroup& h, const Perm& pairing) {
    const auto orbits = h.orbits();
    if (orbits.size() != 2 || pairing.is_identity()) return false;
    return orbits[0].size() == 1 || orbits[1].size() == 1;
}

CensusRow classification_row(int degree, const VtAction& action) {
    LocalActionDiagram d = vt_diagram(action.local_action, action.pairing);
    ActionReport report = analyze_action(d);

    CensusRow row;
    row.degree = degree;
    row.local_action = recognize_group(action.local_action, NamingContext::LocalAction).name;
    row.pairing = pairing_label(action.local_action, action.pairing);
    std::vector<int> primes = local_prime_content(action.local_action);
    row.lpc = format_lpc(primes);
    row.fixed_end = report.fixed_end_count > 0 ? "Yes" : "No";
    row.quotient = free_product_of_quotient(d).render();
    row.plus_local =
        recognize_group(plus_local_actions(d)[0], NamingContext::LocalAction).name;

    if (primes.empty() != report.is_free)
        throw ContractError("local prime content disagrees with the free-action test at degree " +
                            std::to_string(degree) + " row " + row.local_action);
    if (single_vertex_end_rule(action.local_action, action.pairing) !=
        (report.fixed_end_count > 0))
        throw ContractError("fixed-end classification disagrees with the orbit-structure rule at "
                            "degree " +
                            std::to_string(degree) + " row " + row.local_action + " " +
                            row.pairing);

    if (report.is_free) row.flags.push_back("free");
    if (row.quotient == "C_2" && simplicity_report(double_diagram(d)).simple)
        row.flags.push_back("plus-simple");
    if (const ReferenceRow* ref = find_reference(degree, row.local_action, row.pairing))
        if (row.quotient != ref->quotient) row.flags.push_back("errata");
    return row;
}

// Degrees 0 and 1 have one action each: the trivial group with the empty
// pairing.  The end classification is vacuous there, so the column reads N/A.
CensusRow degenerate_row(int degree) {
    PermGroup h = PermGroup::trivial(degree);
    Perm pairing = Perm::identity(static_cast<int>(h.orbits().size()));
    LocalActionDiagram d = vt_diagram(h, pairing);
    ActionReport report = analyze_action(d);

    CensusRow row;
    row.degree = degree;
    row.local_action = "1";
    row.pairing = "id";
    row.lpc = "{}";
    row.fixed_end = "N/A";
    row.quotient = free_product_of_quotient(d).render();
    row.plus_local = recognize_group(plus_local_actions(d)[0], NamingContext::LocalAction).name;
    if (report.is_free) row.flags.push_back("free");
    return row;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += " ";
        out += flags[i];
    }
    return out;
}

} // namespace

std::vector<VtAction> enumerate_vt_actions(int degree, int bound) {
    return enumerate_with_jobs(degree, bound, 1);
}

std::string pairing_label(const PermGroup& h, const Perm& pairing) {
    if (pairing.is_identity()) return "id";
    const auto orbits = h.orbits();
    std::vector<std::string> tokens;
    for (int i = 0; i < pairing.degree(); ++i) {
        int j = pairing(i);
        if (j <= i) continue;
        std::size_t a = orbits[static_cast<std::size_t>(i)].size();
        std::size_t b = orbits[static_cast<std::size_t>(j)].size();
        if (a > b) std::swap(a, b);
        tokens.push_back(std::to_string(a) + std::to_string(b));
    }
    std::sort(tokens.begin(), tokens.end());
    std::string out = "[";
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ",";
        out += tokens[i];
    }
    return out + "]";
}

std::vector<int> local_prime_content(const PermGroup& h) {
    std::set<int> primes;
    for (int p = 0; p < h.degree(); ++p) {
        std::uint64_t n = h.point_stabilizer(p).order();
        for (std::uint64_t q = 2; q * q <= n; ++q)
            while (n % q == 0) {
                primes.insert(static_cast<int>(q));
                n /= q;
            }
        if (n > 1) primes.insert(static_cast<int>(n));
    }
    return std::vector<int>(primes.begin(), primes.end());
}

std::vector<CensusRow> census_rows(int degree, int jobs, int bound) {
    if (degree < 0) throw ContractError("degree must be nonnegative");
    if (degree > bound)
        throw ContractError("degree " + std::to_string(degree) + " exceeds the census bound " +
                            std::to_string(bound));
    if (degree <= 1) return {degenerate_row(degree)};
    std::vector<VtAction> actions = enumerate_with_jobs(degree, bound, jobs);
    std::vector<CensusRow> rows(actions.size());
    parallel_for(actions.size(), jobs,
                 [&](std::size_t i) { rows[i] = classification_row(degree, actions[i]); });
    return rows;
}

std::map<int, std::pair<std::uint64_t, std::uint64_t>> census_counts(int d_min, int d_max,
                                                                     int jobs) {
    if (d_min < 0 || d_max < d_min) throw ContractError("invalid census degree range");
    if (d_max > kCensusDegreeMax)
        throw ContractError("degree " + std::to_string(d_max) + " exceeds the census bound " +
                            std::to_string(kCensusDegreeMax));
    std::map<int, std::pair<std::uint64_t, std::uint64_t>> out;
    for (int d = d_min; d <= d_max; ++d) {
        if (d <= 1) {
            out[d] = {1, 1};
            continue;
        }
        std::uint64_t classes = subgroup_classes(d, std::max(kCensusDegreeMax, d)).size();
        std::uint64_t actions = enumerate_with_jobs(d, kCensusDegreeMax, jobs).size();
        out[d] = {classes, actions};
    }
    return out;
}

SimplicityReport simplicity_report(const LocalActionDiagram& d) {
    SimplicityReport rep;
    ActionReport analysis = analyze_action(d);
    const SerreGraph& g = d.graph();
    std::set<int> cotree(analysis.minimal_cotree.begin(), analysis.minimal_cotree.end());

    for (int v = 0; v < g.vertex_count(); ++v)
        if (!cotree.count(v) && !d.local_action(v).is_trivial())
            rep.reasons.push_back("local action at vertex " + g.vertex_id(v) +
                                  " off the minimal cotree is nontrivial");
    for (int v : analysis.minimal_cotree) {
        std::vector<int> retained;
        for (int a : g.out_arcs(v)) {
            if (!cotree.count(g.terminus(a))) continue;
            for (const std::string& c : d.colours(a)) retained.push_back(d.point_of(a, c));
        }
        if (!d.local_action(v).pointwise_stabilizer(retained).is_trivial())
            rep.reasons.push_back("pointwise stabilizer of the retained colours at vertex " +
                                  g.vertex_id(v) + " is nontrivial");
    }

    LocalActionDiagram restricted;
    try {
        restricted = restrict_to_cotree(d, analysis.minimal_cotree);
    } catch (const ContractError& e) {
        rep.reasons.push_back(std::string("restriction to the minimal cotree failed: ") +
                              e.what());
        return rep;
    }

    if (!analyze_action(restricted).irreducible)
        rep.reasons.push_back("restriction is not irreducible");

    GraphReport graph_report = classify_graph(restricted.graph());
    if (!graph_report.tree) {
        bool loop = false;
        for (int a = 0; a < restricted.graph().arc_count(); ++a)
            if (restricted.graph().is_loop(a)) loop = true;
        rep.reasons.push_back(loop ? "Γ is not a tree (loop present)"
                                   : "Γ is not a tree (cycle present)");
    }

    bool any_generated_nontrivial = false;
    for (int v = 0; v < restricted.graph().vertex_count(); ++v) {
        PermGroup plus = restricted.local_action(v).plus_subgroup();
        if (!plus.same_group(restricted.local_action(v)))
            rep.reasons.push_back("local action at vertex " + restricted.graph().vertex_id(v) +
                                  " not generated by point stabilizers");
        if (!plus.is_trivial()) any_generated_nontrivial = true;
    }
    if (!any_generated_nontrivial)
        rep.reasons.push_back("no nontrivial local action generated by point stabilizers");

    rep.simple = rep.reasons.empty();
    rep.in_class_s = rep.simple; // the cotree is finite here, so compact generation is automatic
    return rep;
}

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = {
        {0, "1", "id", "{}", "N/A", "1", "1"},
        {1, "1", "id", "{}", "N/A", "C_2", "1"},

        {2, "1", "id", "{}", "No", "C_2^{*2}", "1"},
        {2, "1", "[11]", "{}", "Yes", "Z", "1"},
        {2, "S_2", "id", "{}", "No", "S_2 * C_2", "1"},

        {3, "1", "id", "{}", "No", "C_2^{*3}", "1"},
        {3, "1", "[11]", "{}", "No", "C_2 * Z", "1"},
        {3, "S_2", "id", "{2}", "No", "C_2^{*2}", "S_2"},
        {3, "S_2", "[12]", "{2}", "Yes", "Z", "S_2"},
        {3, "C_3", "id", "{}", "No", "C_3 * C_2", "1"},
        {3, "S_3", "id", "{2}", "No", "C_2", "S_3"},

        {4, "1", "id", "{}", "No", "C_2^{*4}", "1"},
        {4, "1", "[11]", "{}", "No", "C_2^{*2} * Z", "1"},
        {4, "1", "[11,11]", "{}", "No", "Z^{*2}", "1"},
        {4, "C_2^-", "id", "{2}", "No", "C_2^{*3}", "C_2^-"},
        {4, "C_2^-", "[11]", "{2}", "No", "C_2 * Z", "C_2^-"},
        {4, "C_2^-", "[12]", "{2}", "No", "C_2 * Z", "C_2^-"},
        {4, "C_2^+", "id", "{}", "No", "C_2^{*2}", "1"},
        {4, "C_2^+", "[22]", "{}", "No", "Z", "1"},
        {4, "C_3", "id", "{3}", "No", "C_2^{*2}", "C_3"},
        {4, "C_3", "[13]", "{3}", "Yes", "Z", "C_3"},
        {4, "C_4", "id", "{}", "No", "C_4 * C_2", "1"},
        {4, "V^-", "id", "{2}", "No", "C_2^{*2}", "V^-"},
        {4, "V^-", "[22]", "{2}", "No", "Z", "V^-"},
        {4, "V^+", "id", "{}", "No", "V^+ * C_2", "1"},
        {4, "S_3", "id", "{2,3}", "No", "C_2^{*2}", "S_3"},
        {4, "S_3", "[13]", "{2,3}", "Yes", "Z", "S_3"},
        {4, "D_8", "id", "{2}", "No", "S_2 * Z", "V^-"},
        {4, "A_4", "id", "{3}", "No", "C_2", "A_4"},
        {4, "S_4", "id", "{2,3}", "No", "C_2", "S_4"},

        {5, "1", "id", "{}", "No", "C_2^{*5}", "1"},
        {5, "1", "[11]", "{}", "No", "C_2^{*3} * Z", "1"},
        {5, "1", "[11,11]", "{}", "No", "C_2 * Z^{*2}", "1"},
        {5, "C_2^-", "id", "{2}", "No", "C_2^{*4}", "C_2^-"},
        {5, "C_2^-", "[11]", "{2}", "No", "C_2^{*2} * Z", "C_2^-"},
        {5, "C_2^-", "[12]", "{2}", "No", "C_2^{*2} * Z", "C_2^-"},
        {5, "C_2^-", "[11,12]", "{2}", "No", "C_2 * Z^{*2}", "C_2^-"},
        {5, "C_2^+", "id", "{2}", "No", "C_2^{*3}", "C_2^+"},
        {5, "C_2^+", "[12]", "{2}", "No", "C_2 * Z", "C_2^+"},
        {5, "C_2^+", "[22]", "{2}", "No", "C_2 * Z", "C_2^+"},
        {5, "C_3", "id", "{3}", "No", "C_2^{*3}", "C_3"},
        {5, "C_3", "[11]", "{3}", "No", "C_2 * Z", "C_3"},
        {5, "C_3", "[13]", "{3}", "No", "C_2 * Z", "C_3"},
        {5, "C_4", "id", "{2}", "No", "C_2^{*2}", "C_4"},
        {5, "C_4", "[14]", "{2}", "Yes", "Z", "C_4"},
        {5, "V^-", "id", "{2}", "No", "C_2^{*3}", "V^-"},
        {5, "V^-", "[12]", "{2}", "No", "C_2 * Z", "V^-"},
        {5, "V^-", "[22]", "{2}", "No", "C_2 * Z", "V^-"},
        {5, "V^+", "id", "{2}", "No", "C_2^{*2}", "V^+"},
        {5, "V^+", "[14]", "{2}", "Yes", "Z", "V^+"},
        {5, "S_3", "id", "{2,3}", "No", "C_2^{*3}", "S_3"},
        {5, "S_3", "[11]", "{2,3}", "No", "C_2 * Z", "S_3"},
        {5, "S_3", "[13]", "{2,3}", "No", "C_2 * Z", "S_3"},
        {5, "D_8", "id", "{2}", "No", "C_2^{*2}", "D_8"},
        {5, "D_8", "[14]", "{2}", "Yes", "Z", "D_8"},
        {5, "A_4", "id", "{2,3}", "No", "C_2^{*2}", "A_4"},
        {5, "A_4", "[14]", "{2,3}", "Yes", "Z", "A_4"},
        {5, "S_4", "id", "{2,3}", "No", "C_2^{*2}", "S_4"},
        {5, "S_4", "[14]", "{2,3}", "Yes", "Z", "S_4"},
        {5, "C_{3+2}", "id", "{2,3}", "No", "C_2^{*2}", "C_{3+2}"},
        {5, "C_{3+2}", "[23]", "{2,3}", "No", "Z", "C_{3+2}"},
        {5, "S_3^*", "id", "{2,3}", "No", "C_2^{*2}", "S_3^*"},
        {5, "S_3^*", "[23]", "{2,3}", "No", "Z", "S_3^*"},
        {5, "S_{3+2}", "id", "{2,3}", "No", "C_2^{*2}", "S_{3+2}"},
        {5, "S_{3+2}", "[23]", "{2,3}", "No", "Z", "S_{3+2}"},
        {5, "C_5", "id", "{}", "No", "C_5 * Z", "1"},
        {5, "D_10", "id", "{2}", "No", "C_2", "D_10"},
        {5, "GA(1,5)", "id", "{2}", "No", "C_2", "GA(1,5)"},
        {5, "A_5", "id", "{2,3}", "No", "C_2", "A_5"},
        {5, "S_5", "id", "{2,3}", "No", "C_2", "S_5"},
    };
    return rows;
}

const std::map<int, std::pair<std::uint64_t, std::uint64_t>>& reference_counts() {
    static const std::map<int, std::pair<std::uint64_t, std::uint64_t>> counts = {
        {3, {4, 6}},        {4, {11, 19}},     {5, {19, 40}},   {6, {56, 125}},
        {7, {96, 285}},     {8, {296, 904}},   {9, {554, 2240}}, {10, {1593, 7213}},
        {11, {3094, 19326}},
    };
    return counts;
}

std::vector<ErratumEntry> errata_report(int jobs) {
    std::vector<ErratumEntry> out;
    for (int degree = 0; degree <= 5; ++degree)
        for (const CensusRow& row : census_rows(degree, jobs))
            if (std::find(row.flags.begin(), row.flags.end(), "errata") != row.flags.end()) {
                const ReferenceRow* ref = find_reference(degree, row.local_action, row.pairing);
                out.push_back({degree, row.local_action, row.pairing, ref->quotient,
                               row.quotient});
            }
    return out;
}

std::string census_csv(const std::vector<CensusRow>& rows) {
    std::string out = "degree,local_action,pairing,lpc,fixed_end,quotient,plus_local,flags\n";
    for (const CensusRow& row : rows) {
        out += std::to_string(row.degree);
        for (const std::string& field :
             {row.local_action, row.pairing, row.lpc, row.fixed_end, row.quotient,
              row.plus_local, join_flags(row.flags)})
            out += "," + csv_field(field);
        out += "\n";
    }
    return out;
}

std::string census_table(const std::vector<CensusRow>& rows) {
    const std::vector<std::string> header = {"degree",    "local_action", "pairing",
                                             "lpc",       "fixed_end",    "quotient",
                                             "plus_local", "flags"};
    std::vector<std::vector<std::string>> cells;
    for (const CensusRow& row : rows)
        cells.push_back({std::to_string(row.degree), row.local_action, row.pairing, row.lpc,
                         row.fixed_end, row.quotient, row.plus_local, join_flags(row.flags)});
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << "  ";
            out << row[c];
            if (c + 1 < row.size())
                out << std::string(width[c] - row[c].size(), ' ');
        }
        out << "\n";
    };
    emit(header);
    std::vector<std::string> rule;
    for (std::size_t c = 0; c < header.size(); ++c) rule.push_back(std::string(width[c], '-'));
    emit(rule);
    for (const auto& row : cells) emit(row);
    return out.str();
}

int jobs_from_env_or(int fallback) {
    if (const char* env = std::getenv("LAD_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    if (fallback > 0) return fallback;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace lad
