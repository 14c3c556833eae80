#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "oracle.hpp"
#include "vcsplp/io.hpp"
#include "vcsplp/lift.hpp"

using namespace vcsp;

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr merged
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("'") + VCSPLP_CLI_PATH + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult result;
    char buffer[4096];
    std::size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.output.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

// Writes every fixture file once; returns the scratch directory.
const fs::path& scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "vcsplp_cli_fixtures";
        fs::create_directories(d);

        write_text_file((d / "cut.json").string(),
                        serialize_language(oracle::cut_language()));
        write_text_file((d / "eq.json").string(),
                        serialize_language(oracle::eq_language()));
        write_text_file((d / "separable.json").string(),
                        serialize_language(oracle::separable_d3_language()));
        write_text_file((d / "eq3.json").string(),
                        serialize_language(oracle::eq3_language()));

        write_text_file((d / "seed.json").string(),
                        serialize_fpoly(oracle::min_max_seed()));

        const Operation first = operation_from(2, 2, [](const Labeling& a) {
            return a[0];
        });
        write_text_file(
            (d / "projection.json").string(),
            serialize_fpoly(make_fpoly(2, 1, {{Mapping{{first}}, make_rational(1)}})));

        write_text_file((d / "cyclic_pair.json").string(),
                        serialize_pair(oracle::cyclic_pair_d3()));
        write_text_file((d / "natural_pair.json").string(),
                        serialize_pair(oracle::natural_min_max_pair(3)));
        const Operation p0 = operation_from(3, 2, [](const Labeling& a) {
            return a[0];
        });
        const Operation p1 = operation_from(3, 2, [](const Labeling& a) {
            return a[1];
        });
        write_text_file((d / "projection_pair.json").string(),
                        serialize_pair({p0, p1}));

        write_text_file(
            (d / "eq_triangle.json").string(),
            serialize_instance(oracle::eq_language(), oracle::eq_triangle()));
        Instance path;
        path.node_count = 3;
        path.terms = {{0, {0, 1}}, {0, {1, 2}}};
        write_text_file((d / "cut_path.json").string(),
                        serialize_instance(oracle::cut_language(), path));

        write_text_file((d / "malformed.json").string(), "{не json");
        return d;
    }();
    return dir;
}

std::string arg(const char* name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("check-language accepts cut and emits a usable distribution") {
    const fs::path out = scratch() / "cut_fpoly_out.json";
    const auto r =
        run_cli("check-language " + arg("cut.json") + " --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "FEASIBLE"));
    CHECK(contains(r.output, "admits: true"));

    const auto rho = parse_fpoly(read_text_file(out.string()));
    CHECK(rho.arity_in == 2);
    CHECK(oracle::admits_brute(oracle::cut_language(), rho));
}

TEST_CASE("check-language rejects eq with a verified certificate") {
    const auto r = run_cli("check-language " + arg("eq.json"));
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "INFEASIBLE"));
    CHECK(contains(r.output, "farkas:"));
    CHECK(contains(r.output, "certificate: verified"));
}

TEST_CASE("check-language honours --arity") {
    const auto r = run_cli("check-language " + arg("cut.json") + " --arity 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "arity: 3"));
}

TEST_CASE("lift reproduces the threshold distributions") {
    const fs::path out = scratch() / "lift3_out.json";
    const auto r = run_cli("lift " + arg("cut.json") + " " + arg("seed.json") +
                           " --to 3 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "lifted arity: 3"));
    CHECK(contains(r.output, "admits: true"));

    const auto rho = parse_fpoly(read_text_file(out.string()));
    const auto direct = lift_to(oracle::cut_language(), oracle::min_max_seed(), 3);
    CHECK(serialize_fpoly(rho) == serialize_fpoly(direct));
}

TEST_CASE("lift refuses seeds that are not fully symmetric") {
    const auto r =
        run_cli("lift " + arg("cut.json") + " " + arg("projection.json") + " --to 3");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "symmetric"));
}

TEST_CASE("solve prints the relaxation optimum") {
    const auto r = run_cli("solve " + arg("eq_triangle.json") + " " + arg("eq.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "blp optimum: 0"));
}

TEST_CASE("solve --compare-brute-force reports gaps via the exit code") {
    const auto gap = run_cli("solve " + arg("eq_triangle.json") + " " +
                             arg("eq.json") + " --compare-brute-force");
    CHECK(gap.exit_code == 1);
    CHECK(contains(gap.output, "integral optimum: 1"));
    CHECK(contains(gap.output, "gap: 1"));
    CHECK(contains(gap.output, "verdict: GAP"));

    const auto tight = run_cli("solve " + arg("cut_path.json") + " " +
                               arg("cut.json") + " --compare-brute-force");
    CHECK(tight.exit_code == 0);
    CHECK(contains(tight.output, "verdict: TIGHT"));
}

TEST_CASE("stp-to-submodular flips the separable fixture") {
    const auto r = run_cli("stp-to-submodular " + arg("separable.json") + " " +
                           arg("cyclic_pair.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "flips: 1"));
    CHECK(contains(r.output, "flip: 2->0 witness 1"));
    CHECK(contains(r.output, "order: 0 1 2"));
}

TEST_CASE("stp-to-submodular reports zero flips for an acyclic pair") {
    const auto r = run_cli("stp-to-submodular " + arg("separable.json") + " " +
                           arg("natural_pair.json"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "flips: 0"));
    CHECK(contains(r.output, "order: 0 1 2"));
}

TEST_CASE("stp-to-submodular distinguishes non-admittance from bad input") {
    const auto rejected = run_cli("stp-to-submodular " + arg("eq3.json") + " " +
                                  arg("cyclic_pair.json"));
    CHECK(rejected.exit_code == 1);
    CHECK(contains(rejected.output, "admits: false"));
    CHECK(contains(rejected.output, "violated by:"));

    const auto invalid = run_cli("stp-to-submodular " + arg("separable.json") +
                                 " " + arg("projection_pair.json"));
    CHECK(invalid.exit_code == 2);
}

TEST_CASE("verify checks an explicit distribution against a language") {
    const fs::path omega3 = scratch() / "omega3_out.json";
    run_cli("lift " + arg("cut.json") + " " + arg("seed.json") + " --to 3 --out " +
            omega3.string());
    const auto good = run_cli("verify " + omega3.string() + " " + arg("cut.json"));
    CHECK(good.exit_code == 0);
    CHECK(contains(good.output, "admits: true"));

    const auto bad = run_cli("verify " + arg("projection.json") + " " + arg("eq.json"));
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.output, "admits: false"));
    CHECK(contains(bad.output, "violated by: eq"));
}

TEST_CASE("gen-instance is deterministic and parseable") {
    const std::string cmd = "gen-instance " + arg("cut.json") +
                            " --nodes 4 --terms 5 --seed 11";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    const Instance inst = parse_instance(oracle::cut_language(), first.output);
    CHECK(inst.node_count == 4);
    CHECK(inst.terms.size() == 5);

    const auto other = run_cli("gen-instance " + arg("cut.json") +
                               " --nodes 4 --terms 5 --seed 12");
    CHECK(other.output != first.output);
}

TEST_CASE("bad invocations exit with code 2") {
    CHECK(run_cli("check-language " + arg("malformed.json")).exit_code == 2);
    CHECK(run_cli("check-language /no/such/file.json").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("solve " + arg("eq_triangle.json") + " " + arg("cut.json"))
              .exit_code == 2);  // instance references functions absent here

    const auto malformed = run_cli("check-language " + arg("malformed.json"));
    CHECK(contains(malformed.output, "error:"));
    CHECK(contains(malformed.output, "not valid JSON"));
}

TEST_CASE("--help succeeds and lists the subcommands") {
    const auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    for (const char* name : {"check-language", "lift", "solve",
                             "stp-to-submodular", "verify", "gen-instance"})
        CHECK(contains(r.output, name));
}
