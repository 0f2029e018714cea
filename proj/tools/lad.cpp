// Command-line surface of the local action diagram toolkit.
//
// Exit codes: 0 success; 1 validation or analysis failure (for `iso`: the
// diagrams are not isomorphic); 2 usage error, including unreadable or
// unparseable input files; 3 refused by a computation budget.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lad/census.hpp"
#include "lad/common.hpp"
#include "lad/deltatree.hpp"
#include "lad/diagram.hpp"
#include "lad/orient.hpp"
#include "lad/quotient.hpp"

namespace {

struct ExitWith {
    int code;
};

struct UsageFailure : std::runtime_error {
    explicit UsageFailure(const std::string& msg) : std::runtime_error(msg) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageFailure("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

lad::LocalActionDiagram load_diagram(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return lad::diagram_from_json(text);
    } catch (const lad::ContractError& e) {
        throw UsageFailure(path + ": " + e.what());
    }
}

// Prints violations to the diagnostic stream and exits 1 when invalid.
void require_valid(const lad::LocalActionDiagram& d, const std::string& path) {
    lad::ValidationReport report = lad::validate(d);
    if (report.ok) return;
    for (const std::string& v : report.violations) std::cerr << path << ": " << v << "\n";
    throw ExitWith{1};
}

std::string digest_of(const lad::LocalActionDiagram& d) {
    const std::string text = lad::to_json(d);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << h;
    return ss.str();
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

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

int effective_jobs(int flag) { return flag > 0 ? flag : lad::jobs_from_env_or(0); }

void run_validate(const std::string& file) {
    lad::LocalActionDiagram d = load_diagram(file);
    lad::ValidationReport report = lad::validate(d);
    if (report.ok) {
        std::cout << "valid\n";
        return;
    }
    for (const std::string& v : report.violations) std::cout << v << "\n";
    throw ExitWith{1};
}

void run_analyze(const std::string& file, const std::string& format, int ball_radius) {
    lad::LocalActionDiagram d = load_diagram(file);
    require_valid(d, file);

    lad::ActionReport an = lad::analyze_action(d);
    lad::FreeProductExpr quotient = lad::free_product_of_quotient(d);
    lad::SimplicityReport simplicity = lad::simplicity_report(d);

    std::vector<std::string> cotree_ids;
    for (int v : an.minimal_cotree) cotree_ids.push_back(d.graph().vertex_id(v));

    bool with_ball = ball_radius > 0;
    std::uint64_t ball_size = 0, ball_autos = 0;
    if (with_ball) {
        ball_size = lad::predict_ball_size(d, 0, ball_radius);
        ball_autos = lad::count_u_ball_automorphisms(d, 0, ball_radius);
    }

    if (format == "json") {
        nlohmann::ordered_json j;
        j["digest"] = digest_of(d);
        j["valid"] = true;
        j["action_type"] = lad::to_string(an.action_type);
        j["irreducible"] = an.irreducible;
        j["geometrically_dense"] = an.geometrically_dense;
        j["is_free"] = an.is_free;
        j["scpo_count"] = an.scpo_count;
        j["fixed_end_count"] = an.fixed_end_count;
        j["minimal_cotree"] = cotree_ids;
        j["quotient"] = quotient.render();
        j["simple"] = simplicity.simple;
        j["in_class_s"] = simplicity.in_class_s;
        j["reasons"] = simplicity.reasons;
        if (with_ball) {
            j["ball"]["radius"] = ball_radius;
            j["ball"]["size"] = ball_size;
            j["ball"]["automorphisms"] = ball_autos;
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        std::cout << "digest,action_type,irreducible,geometrically_dense,is_free,scpo_count,"
                     "fixed_end_count,minimal_cotree,quotient,simple,in_class_s,reasons\n";
        std::vector<std::string> fields = {
            digest_of(d),
            lad::to_string(an.action_type),
            an.irreducible ? "true" : "false",
            an.geometrically_dense ? "true" : "false",
            an.is_free ? "true" : "false",
            std::to_string(an.scpo_count),
            std::to_string(an.fixed_end_count),
            join(cotree_ids, " "),
            quotient.render(),
            simplicity.simple ? "true" : "false",
            simplicity.in_class_s ? "true" : "false",
            join(simplicity.reasons, "; "),
        };
        std::vector<std::string> escaped;
        for (const std::string& f : fields) escaped.push_back(csv_field(f));
        std::cout << join(escaped, ",") << "\n";
        return;
    }
    std::cout << "digest=" << digest_of(d) << "\n";
    std::cout << "valid=true\n";
    std::cout << "action_type=" << lad::to_string(an.action_type) << "\n";
    std::cout << "irreducible=" << (an.irreducible ? "true" : "false") << "\n";
    std::cout << "geometrically_dense=" << (an.geometrically_dense ? "true" : "false") << "\n";
    std::cout << "is_free=" << (an.is_free ? "true" : "false") << "\n";
    std::cout << "scpo_count=" << an.scpo_count << "\n";
    std::cout << "fixed_end_count=" << an.fixed_end_count << "\n";
    std::cout << "minimal_cotree=" << join(cotree_ids, " ") << "\n";
    std::cout << "quotient=" << quotient.render() << "\n";
    std::cout << "simple=" << (simplicity.simple ? "true" : "false") << "\n";
    std::cout << "in_class_s=" << (simplicity.in_class_s ? "true" : "false") << "\n";
    for (const std::string& r : simplicity.reasons) std::cout << "reason=" << r << "\n";
    if (with_ball) {
        std::cout << "ball_radius=" << ball_radius << "\n";
        std::cout << "ball_size=" << ball_size << "\n";
        std::cout << "ball_automorphisms=" << ball_autos << "\n";
    }
}

void run_iso(const std::string& file1, const std::string& file2) {
    lad::LocalActionDiagram d1 = load_diagram(file1);
    lad::LocalActionDiagram d2 = load_diagram(file2);
    require_valid(d1, file1);
    require_valid(d2, file2);
    auto witness = lad::isomorphic(d1, d2);
    if (!witness) {
        std::cout << "not isomorphic\n";
        throw ExitWith{1};
    }
    std::cout << "isomorphic\n";
    for (int v = 0; v < d1.graph().vertex_count(); ++v)
        std::cout << "vertex " << d1.graph().vertex_id(v) << " -> "
                  << d2.graph().vertex_id(witness->vertex_map[static_cast<std::size_t>(v)])
                  << "\n";
}

void run_enumerate(int degree, int bound, bool rows, bool csv, int jobs) {
    if (csv) {
        std::cout << lad::census_csv(lad::census_rows(degree, jobs, bound));
        return;
    }
    if (rows) {
        std::cout << lad::census_table(lad::census_rows(degree, jobs, bound));
        return;
    }
    for (const lad::VtAction& a : lad::enumerate_vt_actions(degree, bound)) {
        std::string gens;
        for (const lad::Perm& g : a.local_action.generators()) {
            if (!gens.empty()) gens += "|";
            gens += g.cycle_string();
        }
        if (gens.empty()) gens = "()";
        std::string orbit_text = "[";
        const auto orbits = a.local_action.orbits();
        for (std::size_t i = 0; i < orbits.size(); ++i) {
            if (i) orbit_text += ",";
            orbit_text += "[";
            for (std::size_t k = 0; k < orbits[i].size(); ++k) {
                if (k) orbit_text += ",";
                orbit_text += std::to_string(orbits[i][k] + 1);
            }
            orbit_text += "]";
        }
        orbit_text += "]";
        std::cout << "group=" << gens << " orbits=" << orbit_text
                  << " pairing=" << a.pairing.cycle_string() << "\n";
    }
}

void run_census(int d_min, int d_max, int jobs) {
    auto counts = lad::census_counts(d_min, d_max, jobs);
    std::cout << "degree,subgroup_classes,vt_actions\n";
    for (const auto& [d, pair] : counts)
        std::cout << d << "," << pair.first << "," << pair.second << "\n";
}

void run_ball(const std::string& file, int radius, bool count, const std::string& base_id,
              bool randomize, std::uint64_t seed, std::uint64_t max_vertices) {
    lad::LocalActionDiagram d = load_diagram(file);
    require_valid(d, file);
    int base = base_id.empty() ? 0 : d.graph().vertex_index(base_id);
    lad::BallOptions options;
    options.randomize_reverse_labels = randomize;
    options.seed = seed;
    lad::BallBudget budget;
    if (max_vertices > 0) budget.max_vertices = max_vertices;
    lad::DeltaTreeBall ball = lad::build_ball(d, base, radius, options, budget);
    std::cout << lad::ball_to_text(ball);
    if (count)
        std::cout << "automorphisms=" << lad::count_u_ball_automorphisms(d, base, radius)
                  << "\n";
}

// SPEC grammar: factors separated by ';', each factor "degree:gens:subgens"
// with cycle-notation generators joined by '|' (e.g. "3:(1,2,3)|(1,2):(1,2)").
std::vector<lad::StarFactor> parse_star_spec(const std::string& spec) {
    std::vector<lad::StarFactor> factors;
    std::stringstream feed(spec);
    std::string part;
    while (std::getline(feed, part, ';')) {
        if (part.empty()) continue;
        std::vector<std::string> pieces;
        std::stringstream fp(part);
        std::string piece;
        while (std::getline(fp, piece, ':')) pieces.push_back(piece);
        if (pieces.size() != 3)
            throw UsageFailure("star factor must be degree:gens:subgens, got \"" + part + "\"");
        int degree = 0;
        try {
            degree = std::stoi(pieces[0]);
        } catch (const std::exception&) {
            throw UsageFailure("star factor degree is not a number: \"" + pieces[0] + "\"");
        }
        if (degree < 1) throw UsageFailure("star factor degree must be positive");
        auto parse_group = [&](const std::string& text) {
            std::vector<lad::Perm> gens;
            std::stringstream gp(text);
            std::string gen;
            while (std::getline(gp, gen, '|')) {
                if (gen.empty()) continue;
                try {
                    gens.push_back(lad::Perm::parse_cycles(gen, degree));
                } catch (const lad::ContractError& e) {
                    throw UsageFailure(std::string("bad generator \"") + gen + "\": " + e.what());
                }
            }
            return lad::PermGroup(degree, std::move(gens));
        };
        factors.push_back({parse_group(pieces[1]), parse_group(pieces[2])});
    }
    if (factors.empty()) throw UsageFailure("star spec is empty");
    return factors;
}

void run_combine(const std::string& spec) {
    std::cout << lad::to_json(lad::star_diagram(parse_star_spec(spec)));
}

void run_quotient(const std::string& file, bool dump_diagram) {
    lad::LocalActionDiagram d = load_diagram(file);
    require_valid(d, file);
    if (dump_diagram) {
        std::cout << lad::to_json(lad::plus_quotient_diagram(d));
        return;
    }
    lad::FreeProductExpr expr = lad::free_product_of_quotient(d);
    std::cout << "quotient=" << expr.render() << "\n";
    std::vector<lad::PermGroup> plus = lad::plus_local_actions(d);
    for (int v = 0; v < d.graph().vertex_count(); ++v)
        std::cout << "plus_local " << d.graph().vertex_id(v) << "="
                  << lad::recognize_group(plus[static_cast<std::size_t>(v)],
                                          lad::NamingContext::LocalAction)
                         .name
                  << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local action diagram toolkit"};
    app.require_subcommand(1);

    std::string file, file2, format = "text", base_id, spec;
    int degree = 3, bound = 6, radius = 1, d_min = 2, d_max = 5, jobs = 0, ball_radius = 0;
    bool rows = false, csv = false, count = false, randomize = false, dump_diagram = false;
    std::uint64_t seed = 0, max_vertices = 0;

    CLI::App* c_validate = app.add_subcommand("validate", "check a diagram file");
    c_validate->add_option("file", file)->required();
    c_validate->callback([&] { run_validate(file); });

    CLI::App* c_analyze = app.add_subcommand("analyze", "classify the action of a diagram");
    c_analyze->add_option("file", file)->required();
    c_analyze->add_option("--format", format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    c_analyze->add_option("--ball-radius", ball_radius, "include ball statistics");
    c_analyze->callback([&] { run_analyze(file, format, ball_radius); });

    CLI::App* c_iso = app.add_subcommand("iso", "test two diagram files for isomorphism");
    c_iso->add_option("file1", file)->required();
    c_iso->add_option("file2", file2)->required();
    c_iso->callback([&] { run_iso(file, file2); });

    CLI::App* c_enum = app.add_subcommand("enumerate", "vertex-transitive actions of a degree");
    c_enum->add_option("--degree", degree)->required();
    c_enum->add_option("--bound", bound, "census degree bound (raise to 7 to opt in)");
    c_enum->add_flag("--rows", rows, "emit the classification table");
    c_enum->add_flag("--csv", csv, "emit the classification table as CSV");
    c_enum->add_option("--jobs", jobs, "worker threads (default: LAD_JOBS, else cores)");
    c_enum->callback([&] { run_enumerate(degree, bound, rows, csv, effective_jobs(jobs)); });

    CLI::App* c_census = app.add_subcommand("census", "per-degree census counts");
    c_census->add_option("--min", d_min)->required();
    c_census->add_option("--max", d_max)->required();
    c_census->add_option("--jobs", jobs, "worker threads (default: LAD_JOBS, else cores)");
    c_census->callback([&] { run_census(d_min, d_max, effective_jobs(jobs)); });

    CLI::App* c_ball = app.add_subcommand("ball", "build a ball of the associated tree");
    c_ball->add_option("file", file)->required();
    c_ball->add_option("--radius", radius)->required();
    c_ball->add_flag("--count", count, "also count root-fixing ball automorphisms");
    c_ball->add_option("--base", base_id, "base vertex id (default: first vertex)");
    c_ball->add_flag("--randomize", randomize, "randomize reverse colour choices");
    c_ball->add_option("--seed", seed, "seed for --randomize");
    c_ball->add_option("--max-vertices", max_vertices, "ball vertex budget");
    c_ball->callback(
        [&] { run_ball(file, radius, count, base_id, randomize, seed, max_vertices); });

    CLI::App* c_combine = app.add_subcommand("combine", "star diagram from factor spec");
    c_combine->add_option("spec", spec, "factors \"degree:gens:subgens;...\"")->required();
    c_combine->callback([&] { run_combine(spec); });

    CLI::App* c_quotient = app.add_subcommand("quotient", "quotient by stabilizer subgroups");
    c_quotient->add_option("file", file)->required();
    c_quotient->add_flag("--diagram", dump_diagram, "emit the quotient diagram as JSON");
    c_quotient->callback([&] { run_quotient(file, dump_diagram); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ExitWith& e) {
        return e.code;
    } catch (const UsageFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const lad::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const lad::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
