#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the installed binary through the shell; stderr is dropped so error
// path tests assert on the exit code alone.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + SINKLAB_CLI_PATH + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "sinklab_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const fs::path path = temp_dir() / name;
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}

const std::string kFamilyText =
    "kind: rational\ndims: 3 3\n1/5 1/5 3/5\n2/5 1/5 2/5\n3/5 1/5 1/5\n";
const std::string kScaledText =
    "kind: rational\ndims: 3 3\n1/6 1/3 1/2\n1/3 1/3 1/3\n1/2 1/3 1/6\n";
const std::string kGenericText = "kind: rational\ndims: 2 2\n1/2 1/3\n1/4 1/5\n";
const std::string kRowScaledPlantedText =
    "kind: rational\ndims: 3 3\n10/19 5/19 4/19\n5/19 10/19 4/19\n5/22 5/22 6/11\n";
const std::string kFloatText = "kind: float\ndims: 2 2\n0.3 0.7\n0.6 0.4\n";

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("generate emits the family matrix or a verification report") {
    const RunResult m = run_cli("generate --k 1 --ell 1 --n 3 --x 1/5 --z 3/5");
    CHECK(m.code == 0);
    CHECK(m.out == kFamilyText);

    const RunResult r = run_cli("generate --k 1 --ell 1 --n 3 --x 1/5 --z 3/5 --emit report");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "derived: y=2/5 w=1/5"));
    CHECK(contains(r.out, "scaling count one: yes (count 1)"));
    CHECK(contains(r.out, "determinant: 0 (formula3x3)"));
    CHECK(contains(r.out, "all checks pass: yes"));

    const RunResult seven = run_cli("generate --k 2 --ell 3 --n 7 --x 1/4 --z 1/8 --emit report");
    CHECK(seven.code == 0);
    CHECK(contains(seven.out, "determinant: 0 (duplicateColumns)"));
    CHECK(contains(seven.out, "all checks pass: yes"));
}

TEST_CASE("generate rejects out-of-range parameters with exit 1") {
    CHECK(run_cli("generate --k 1 --ell 1 --n 2 --x 1/5 --z 1/5").code == 1);
    CHECK(run_cli("generate --k 1 --ell 1 --n 3 --x 3/5 --z 3/5").code == 1);
    CHECK(run_cli("generate --k 1 --ell 1 --n 3 --x 1/3 --z 1/3").code == 1);
    CHECK(run_cli("generate --k 1 --ell 1 --n 3 --x nonsense --z 1/5").code == 1);
    CHECK(run_cli("generate --k 1 --ell 1 --n 3 --x 1/5").code == 1);

    const RunResult bypass =
        run_cli("generate --k 1 --ell 1 --n 3 --x 1/3 --z 1/3 --allow-degenerate-sum");
    CHECK(bypass.code == 0);
    CHECK(bypass.out == "kind: rational\ndims: 3 3\n1/3 1/3 1/3\n1/3 1/3 1/3\n1/3 1/3 1/3\n");
}

TEST_CASE("scale --exact reports the one-step trace bit for bit") {
    const std::string file = write_temp("family.mat", kFamilyText);
    const RunResult r = run_cli("scale --input " + file + " --exact");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "mode: exact\n"));
    CHECK(contains(r.out, "terminated: exactDoublyStochastic\n"));
    CHECK(contains(r.out, "scaling count: 1\n"));
    CHECK(contains(r.out, "step 1: row identity"));
    CHECK(contains(r.out, "step 2: column scaled"));
    CHECK(contains(r.out, "| diag 5/6 5/3 5/6"));
    CHECK(contains(r.out, "final:\n" + kScaledText));
}

TEST_CASE("scale default mode runs the float engine") {
    const std::string file = write_temp("family.mat", kFamilyText);
    const RunResult r = run_cli("scale --input " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "mode: float\n"));
    CHECK(contains(r.out, "terminated: convergedWithinTolerance\n"));

    const std::string ffile = write_temp("float.mat", kFloatText);
    CHECK(run_cli("scale --input " + ffile).code == 0);
    CHECK(run_cli("scale --input " + ffile + " --exact").code == 1);
    CHECK(run_cli("scale --input " + file + " --exact --tolerance 1e-9").code == 1);
}

TEST_CASE("scale reports a reached cap as undefined count") {
    const std::string file = write_temp("generic.mat", kGenericText);
    const RunResult r = run_cli("scale --input " + file + " --exact --max-steps 5");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "terminated: iterationCapReached\n"));
    CHECK(contains(r.out, "scaling count: undefined\n"));
    CHECK(contains(r.out, "steps: 5\n"));
}

TEST_CASE("scale --emit-intermediates includes every state") {
    const std::string file = write_temp("family.mat", kFamilyText);
    const RunResult r = run_cli("scale --input " + file + " --exact --emit-intermediates");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "initial:\n" + kFamilyText));
    CHECK(contains(r.out, "final:\n" + kScaledText));
}

TEST_CASE("check reports stochasticity flags and the determinant") {
    const std::string file = write_temp("family.mat", kFamilyText);
    const RunResult r = run_cli("check --input " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "scalar kind: rational\n"));
    CHECK(contains(r.out, "row stochastic: yes\n"));
    CHECK(contains(r.out, "column stochastic: no\n"));
    CHECK(contains(r.out, "max col deviation: 2/5\n"));
    CHECK(contains(r.out, "determinant: 0\n"));

    const std::string ffile = write_temp("float.mat", kFloatText);
    const RunResult f = run_cli("check --input " + ffile + " --tolerance 1e-9");
    CHECK(f.code == 0);
    CHECK(contains(f.out, "scalar kind: float\n"));
    CHECK(contains(f.out, "row stochastic: yes\n"));

    CHECK(run_cli("check --input " + file + " --tolerance 1e-9").code == 1);

    const std::string rect =
        write_temp("rect.mat", "kind: rational\ndims: 2 3\n1/2 1/4 1/4\n1/3 1/3 1/3\n");
    const RunResult rr = run_cli("check --input " + rect);
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "determinant: n/a (matrix not square)\n"));
}

TEST_CASE("check reads from stdin when the input is -") {
    const std::string file = write_temp("family.mat", kFamilyText);
    const RunResult r = run_cli("check --input - < " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "row stochastic: yes\n"));
}

TEST_CASE("pullback recovers the planted column stochastic matrix") {
    const std::string file = write_temp("rowscaled.mat", kRowScaledPlantedText);
    const RunResult r = run_cli("pullback --input " + file);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "z: 19/20 19/20 11/10\n"));
    CHECK(contains(r.out, "sign pattern: + + +\n"));
    CHECK(contains(r.out, "all positive: yes\n"));
    CHECK(contains(r.out, "B:\nkind: rational\ndims: 3 3\n"
                          "1/2 1/4 1/5\n1/4 1/2 1/5\n1/4 1/4 3/5\n"));
}

TEST_CASE("pullback chain probe reports links and the stop reason") {
    const std::string planted = write_temp(
        "planted.mat", "kind: rational\ndims: 3 3\n1/2 1/4 1/5\n1/4 1/2 1/5\n1/4 1/4 3/5\n");
    const RunResult r = run_cli("pullback --input " + planted + " --chain 8");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "links: 3\n"));
    CHECK(contains(r.out, "stop: nonPositiveDiagonal\n"));
    CHECK(contains(r.out, "link 1\nside: right\n"));

    const std::string family = write_temp("family.mat", kFamilyText);
    CHECK(run_cli("pullback --input " + family).code == 1);
    const RunResult chain = run_cli("pullback --input " + family + " --chain 3");
    CHECK(chain.code == 0);
    CHECK(contains(chain.out, "links: 0\n"));
    CHECK(contains(chain.out, "stop: singular\n"));
}

TEST_CASE("search renders the stable report") {
    const RunResult r = run_cli("search --bound 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("one-step search\nmode: exhaustive\nn: 3\ndenominator bound: 5\n") == 0);
    CHECK(contains(r.out, "one-step findings: 27\n"));
    CHECK(contains(r.out, "witnesses: 0\n"));
    CHECK(contains(r.out, "OPEN — no witness found up to bound 5\n"));

    const RunResult again = run_cli("search --bound 5 --workers 4");
    CHECK(again.out == r.out);

    const RunResult rand = run_cli("search --mode randomized --seed 9 --samples 50");
    CHECK(rand.code == 0);
    CHECK(contains(rand.out, "seed: 9\n"));
    CHECK(contains(rand.out, "samples: 50\n"));
}

TEST_CASE("search flag validation maps to exit 1") {
    CHECK(run_cli("search --mode randomized").code == 1);
    CHECK(run_cli("search --bound 5 --seed 3").code == 1);
    CHECK(run_cli("search --bound 5 --samples 10").code == 1);
    CHECK(run_cli("search --bound 2").code == 1);
    CHECK(run_cli("search --n 9").code == 1);
    CHECK(run_cli("search --predicate nonsense").code == 1);
}

TEST_CASE("json output carries rationals as p/q strings") {
    const RunResult gen = run_cli("--json generate --k 1 --ell 1 --n 3 --x 1/5 --z 3/5");
    CHECK(gen.code == 0);
    const json g = json::parse(gen.out);
    CHECK(g["params"]["y"] == "2/5");
    CHECK(g["matrix"]["kind"] == "rational");
    CHECK(g["matrix"]["entries"][0][2] == "3/5");

    const std::string file = write_temp("family.mat", kFamilyText);
    const RunResult sc = run_cli("--json scale --input " + file + " --exact");
    CHECK(sc.code == 0);
    const json s = json::parse(sc.out);
    CHECK(s["mode"] == "exact");
    CHECK(s["terminated"] == "exactDoublyStochastic");
    CHECK(s["scalingCount"] == 1);
    CHECK(s["steps"].size() == 2);
    CHECK(s["steps"][1]["diagonal"][1] == "5/3");
    CHECK(s["final"]["entries"][0][0] == "1/6");

    const RunResult pb = run_cli("--json pullback --input " +
                                 write_temp("rowscaled.mat", kRowScaledPlantedText));
    CHECK(pb.code == 0);
    const json p = json::parse(pb.out);
    CHECK(p["z"] == json::array({"19/20", "19/20", "11/10"}));
    CHECK(p["allPositive"] == true);

    const RunResult se = run_cli("--json search --bound 5");
    CHECK(se.code == 0);
    const json q = json::parse(se.out);
    CHECK(q["findings"].size() == 27);
    CHECK(q["witnesses"] == 0);
    CHECK(q["open"] == true);
    for (const json& f : q["findings"]) CHECK(f["det"] == "0");

    const RunResult ck = run_cli("--json check --input " + file);
    CHECK(ck.code == 0);
    const json c = json::parse(ck.out);
    CHECK(c["rowStochastic"] == true);
    CHECK(c["maxColDeviation"] == "2/5");
    CHECK(c["determinant"] == "0");
}

TEST_CASE("exit codes separate usage errors from missing or bad input") {
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("scale").code == 1);
    CHECK(run_cli("scale --input /nonexistent/matrix.txt").code == 1);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("scale --help").code == 0);

    const std::string bad = write_temp("bad.mat", "kind: rational\ndims: 2 2\n1/2 1/2\n");
    CHECK(run_cli("scale --input " + bad).code == 1);
    const std::string worse = write_temp("worse.mat", "not a matrix at all\n");
    CHECK(run_cli("check --input " + worse).code == 1);
}
