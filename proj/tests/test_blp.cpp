#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracle.hpp"
#include "vcsplp/blp.hpp"

using namespace vcsp;

namespace {

Instance cut_pair() {
    Instance inst;
    inst.node_count = 2;
    inst.terms = {{0, {0, 1}}};
    return inst;
}

}  // namespace

TEST_CASE("build_blp lays out variables and rows as documented") {
    const Language cut = oracle::cut_language();
    const auto relax = build_blp(cut, cut_pair());

    CHECK(relax.domain_size == 2);
    CHECK(relax.node_count == 2);
    REQUIRE(relax.term_offset.size() == 1);
    CHECK(relax.term_offset[0] == 0);
    CHECK(relax.node_offset == 4);
    CHECK(relax.term_var(0, 3) == 3);
    CHECK(relax.node_var(0, 1) == 5);
    CHECK(relax.node_var(1, 0) == 6);

    const LinearProgram& lp = relax.lp;
    // 4 term vars + 4 node vars; 1 + 2 normalization rows + 2*2 marginal rows.
    REQUIRE(lp.num_vars() == 8);
    REQUIRE(lp.num_rows() == 7);

    // Objective: the cost table on term variables, zero on node variables.
    const Vector expect_c{make_rational(0), make_rational(1), make_rational(1),
                          make_rational(0), make_rational(0), make_rational(0),
                          make_rational(0), make_rational(0)};
    CHECK(lp.c == expect_c);

    // Normalization rows sum each block to one; marginal rows are homogeneous.
    int ones = 0, zeros = 0;
    for (const auto& rhs : lp.b) {
        if (rhs == 1) ++ones;
        if (rhs == 0) ++zeros;
    }
    CHECK(ones == 3);
    CHECK(zeros == 4);

    // Every expected marginalization row appears: term mass with label a at
    // scope position p equals the node distribution at a.
    for (int p = 0; p < 2; ++p) {
        for (int a = 0; a < 2; ++a) {
            Vector row(8, make_rational(0));
            for (long long sigma = 0; sigma < 4; ++sigma) {
                const Labeling t = index_tuple(sigma, 2, 2);
                if (t[p] == a) row[relax.term_var(0, sigma)] = 1;
            }
            row[relax.node_var(p, a)] = -1;
            bool found = false;
            for (int r = 0; r < lp.num_rows(); ++r)
                if (lp.b[r] == 0 && lp.a[r] == row) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("repeated scope nodes get one marginal row per position") {
    const Language cut = oracle::cut_language();
    Instance inst;
    inst.node_count = 1;
    inst.terms = {{0, {0, 0}}};
    const auto relax = build_blp(cut, inst);
    // 4 term vars + 2 node vars; 1 + 1 normalization, 2*2 marginal rows.
    CHECK(relax.lp.num_vars() == 6);
    CHECK(relax.lp.num_rows() == 6);

    const auto sol = solve_blp(cut, inst);
    CHECK(sol.value == 0);
    const auto report = check_tightness(cut, inst);
    CHECK(report.tight);
}

TEST_CASE("the equality triangle has relaxation value 0 but minimum 1") {
    const Language eq = oracle::eq_language();
    const Instance inst = oracle::eq_triangle();

    const auto sol = solve_blp(eq, inst);
    CHECK(sol.value == 0);

    const auto report = check_tightness(eq, inst);
    CHECK(report.blp_value == 0);
    CHECK(report.integral_value == 1);
    CHECK(report.gap == 1);
    CHECK_FALSE(report.tight);

    CHECK_THROWS_AS(extract_labeling(eq, inst), InputError);
}

TEST_CASE("a cut path is tight and rounds to an optimal labeling") {
    const Language cut = oracle::cut_language();
    Instance inst;
    inst.node_count = 3;
    inst.terms = {{0, {0, 1}}, {0, {1, 2}}};

    const auto report = check_tightness(cut, inst);
    CHECK(report.tight);
    CHECK(report.blp_value == 0);

    const Labeling x = extract_labeling(cut, inst);
    CHECK(evaluate_instance(cut, inst, x) == 0);
}

TEST_CASE("unary pulls make the optimum nonzero but still tight") {
    const Language lang = oracle::cut_with_unaries();
    Instance inst;
    inst.node_count = 2;
    inst.terms = {{lang.find("u01"), {0}}, {lang.find("u10"), {1}}, {0, {0, 1}}};

    const auto report = check_tightness(lang, inst);
    CHECK(report.blp_value == 1);
    CHECK(report.integral_value == 1);
    CHECK(report.tight);

    const Labeling x = extract_labeling(lang, inst);
    CHECK(evaluate_instance(lang, inst, x) == 1);
}

TEST_CASE("degenerate instances solve to zero") {
    const Language cut = oracle::cut_language();

    Instance empty;
    empty.node_count = 0;
    CHECK(solve_blp(cut, empty).value == 0);

    Instance bare;
    bare.node_count = 2;
    CHECK(solve_blp(cut, bare).value == 0);
    CHECK(extract_labeling(cut, bare) == Labeling{0, 0});
}

TEST_CASE("variable caps are enforced") {
    const Language cut = oracle::cut_language();
    CHECK_THROWS_AS(build_blp(cut, cut_pair(), 3), CapError);
    CHECK_THROWS_AS(solve_blp(cut, cut_pair(), 3), CapError);
}

TEST_CASE("random instances over cut plus unaries are always tight") {
    const Language lang = oracle::cut_with_unaries();
    for (int seed = 1; seed <= 30; ++seed) {
        CAPTURE(seed);
        const int nodes = 2 + seed % 4;
        const int terms = 1 + (seed * 7) % 6;
        const Instance inst = random_instance(lang, nodes, terms,
                                              static_cast<std::uint64_t>(seed));
        const auto report = check_tightness(lang, inst);
        CHECK(report.gap >= 0);
        CHECK(report.tight);
        const Labeling x = extract_labeling(lang, inst);
        CHECK(evaluate_instance(lang, inst, x) == report.blp_value);
    }
}
