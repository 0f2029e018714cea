// End-to-end tests of the command line binary: exit codes, output formats,
// determinism across repeated runs and worker counts, and the documented
// error channels (1 semantic, 2 usage, 3 budget).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "lad/diagram.hpp"
#include "lad/perm.hpp"

using namespace lad;

namespace {

struct RunResult {
    int code = -1;
    std::string out; // stdout and stderr combined
};

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(LAD_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "/tmp/lad_cli_" + name;
    std::ofstream(path) << content;
    return path;
}

std::string s3_path() {
    static std::string path = write_temp(
        "s3.json", to_json(vt_diagram(PermGroup::symmetric(3), Perm::identity(1))));
    return path;
}

std::string c3_path() {
    static std::string path = write_temp(
        "c3.json", to_json(vt_diagram(PermGroup::cyclic(3), Perm::identity(1))));
    return path;
}

std::string invalid_path() {
    // Constructs fine, fails validation: a 2-colour arc over a trivial group.
    static std::string path = [] {
        SerreGraph g = SerreGraph::build({"u"}, {{"a", "u", "b"}, {"b", "u", "a"}});
        LocalActionDiagram d(g, {{"x1", "x2"}, {"y1", "y2"}}, {PermGroup::trivial(4)});
        return write_temp("invalid.json", to_json(d));
    }();
    return path;
}

} // namespace

TEST_CASE("validate reports valid diagrams") {
    RunResult r = run("validate " + s3_path());
    CHECK(r.code == 0);
    CHECK(r.out == "valid\n");
}

TEST_CASE("validate lists violations and exits 1") {
    RunResult r = run("validate " + invalid_path());
    CHECK(r.code == 1);
    CHECK(r.out.find("valid\n") != 0);
    CHECK(count_lines(r.out) >= 1);
}

TEST_CASE("unreadable and unparseable files exit 2") {
    CHECK(run("validate /tmp/lad_cli_definitely_missing.json").code == 2);
    std::string junk = write_temp("junk.json", "not json at all");
    CHECK(run("validate " + junk).code == 2);
    CHECK(run("analyze " + junk).code == 2);
    std::string wrong = write_temp("wrong.json", "[1,2,3]");
    CHECK(run("validate " + wrong).code == 2);
}

TEST_CASE("analyze text output is stable and complete") {
    RunResult a = run("analyze " + s3_path());
    RunResult b = run("analyze " + s3_path());
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    for (const char* field :
         {"digest=", "valid=true", "action_type=GeneralType", "irreducible=true",
          "geometrically_dense=true", "is_free=false", "scpo_count=1", "fixed_end_count=0",
          "minimal_cotree=v", "quotient=C_2", "simple=false", "in_class_s=false"})
        CHECK(a.out.find(field) != std::string::npos);
}

TEST_CASE("analyze emits parseable json and csv") {
    RunResult j = run("analyze " + s3_path() + " --format json");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"digest\"") != std::string::npos);
    CHECK(j.out.find("\"quotient\": \"C_2\"") != std::string::npos);
    CHECK(j.out.front() == '{');

    RunResult c = run("analyze " + s3_path() + " --format csv");
    CHECK(c.code == 0);
    CHECK(count_lines(c.out) == 2);
    CHECK(c.out.rfind("digest,", 0) == 0);

    CHECK(run("analyze " + s3_path() + " --format yaml").code == 2);
}

TEST_CASE("analyze can attach ball data") {
    RunResult r = run("analyze " + s3_path() + " --ball-radius 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("ball_radius=2") != std::string::npos);
    CHECK(r.out.find("ball_size=10") != std::string::npos);
    CHECK(r.out.find("ball_automorphisms=48") != std::string::npos);
}

TEST_CASE("iso detects equality and distinguishes diagrams") {
    RunResult same = run("iso " + s3_path() + " " + s3_path());
    CHECK(same.code == 0);
    CHECK(same.out.rfind("isomorphic\n", 0) == 0);
    CHECK(same.out.find("vertex v -> v") != std::string::npos);

    RunResult diff = run("iso " + s3_path() + " " + c3_path());
    CHECK(diff.code == 1);
    CHECK(diff.out == "not isomorphic\n");
}

TEST_CASE("enumerate lists the degree-3 actions in published order") {
    RunResult r = run("enumerate --degree 3");
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 6);
    CHECK(r.out.rfind("group=() orbits=[[1],[2],[3]] pairing=()", 0) == 0);
    CHECK(r.out.find("group=(2,3)|(1,2) orbits=[[1,2,3]] pairing=()") != std::string::npos);
    CHECK(run("enumerate --degree 3").out == r.out);
}

TEST_CASE("enumerate csv and rows formats") {
    RunResult csv = run("enumerate --degree 4 --csv");
    CHECK(csv.code == 0);
    CHECK(count_lines(csv.out) == 20);
    CHECK(csv.out.rfind("degree,local_action,pairing,lpc,fixed_end,quotient,plus_local,flags\n",
                        0) == 0);
    CHECK(csv.out.find("4,A_4,id,{3},No,C_2,A_4,plus-simple") != std::string::npos);
    CHECK(csv.out.find("free errata") != std::string::npos);

    RunResult rows = run("enumerate --degree 4 --rows");
    CHECK(rows.code == 0);
    CHECK(count_lines(rows.out) == 21); // header, rule, 19 rows
}

TEST_CASE("enumerate rejects out-of-range degrees as semantic errors") {
    CHECK(run("enumerate --degree 1").code == 1);
    CHECK(run("enumerate --degree 7").code == 1); // beyond the default bound
    CHECK(run("enumerate").code == 2);            // missing required option
}

TEST_CASE("census emits the frozen counts") {
    RunResult r = run("census --min 2 --max 5");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "degree,subgroup_classes,vt_actions\n2,2,3\n3,4,6\n4,11,19\n5,19,40\n");
    CHECK(run("census --min 5 --max 2").code == 1);
}

TEST_CASE("worker environment variables do not change output") {
    RunResult one = run("census --min 2 --max 4", "LAD_JOBS=1");
    RunResult three = run("census --min 2 --max 4", "LAD_JOBS=3");
    CHECK(one.code == 0);
    CHECK(one.out == three.out);
    RunResult flag = run("enumerate --degree 4 --csv --jobs 2");
    CHECK(flag.out == run("enumerate --degree 4 --csv").out);
}

TEST_CASE("ball prints the walk tree and the automorphism count") {
    RunResult r = run("ball " + s3_path() + " --radius 1 --count");
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 5); // 4 vertices and the count line
    CHECK(r.out.find("automorphisms=6") != std::string::npos);

    RunResult r2 = run("ball " + s3_path() + " --radius 2 --count");
    CHECK(r2.out.find("automorphisms=48") != std::string::npos);

    RunResult rand1 = run("ball " + s3_path() + " --radius 2 --randomize --seed 7");
    RunResult det = run("ball " + s3_path() + " --radius 2");
    CHECK(rand1.code == 0);
    CHECK(count_lines(rand1.out) == count_lines(det.out));
}

TEST_CASE("ball budget overruns exit 3") {
    RunResult r = run("ball " + s3_path() + " --radius 20");
    CHECK(r.code == 3);
    CHECK(r.out.find("budget exceeded") != std::string::npos);

    // A radius-10 ball has 1 + 3(2^10 - 1) = 3070 vertices.
    CHECK(run("ball " + s3_path() + " --radius 10 --max-vertices 3000").code == 3);
    RunResult ok = run("ball " + s3_path() + " --radius 10 --max-vertices 4000");
    CHECK(ok.code == 0);
    CHECK(count_lines(ok.out) == 3070);
}

TEST_CASE("combine builds the star diagram") {
    RunResult r = run("combine \"3:(1,2,3)|(1,2):(1,2);3:(1,2,3)|(1,2):(1,2)\"");
    CHECK(r.code == 0);
    LocalActionDiagram d = diagram_from_json(r.out);
    CHECK(validate(d).ok);
    CHECK(d.graph().vertex_count() == 3);

    CHECK(run("combine junk").code == 2);
    CHECK(run("combine \"3:(1,2,3):(9,9)\"").code == 2);
    // Well-formed spec violating the star preconditions: a trivial subgroup.
    CHECK(run("combine \"3:(1,2,3)|(1,2):()\"").code == 1);
}

TEST_CASE("quotient prints the expression and the plus local actions") {
    RunResult r = run("quotient " + s3_path());
    CHECK(r.code == 0);
    CHECK(r.out.find("quotient=C_2") != std::string::npos);
    CHECK(r.out.find("plus_local v=S_3") != std::string::npos);

    RunResult diag = run("quotient " + c3_path() + " --diagram");
    CHECK(diag.code == 0);
    LocalActionDiagram q = diagram_from_json(diag.out);
    CHECK(validate(q).ok);
    for (int v = 0; v < q.graph().vertex_count(); ++v)
        CHECK(q.local_action(v).is_free_action());
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("analyze").code == 2);
    CHECK(run("analyze " + s3_path() + " --no-such-flag").code == 2);
}
