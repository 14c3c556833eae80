#include <doctest.h>

#include <random>
#include <vector>

#include "oracle.hpp"
#include "vcsplp/stp.hpp"

using namespace vcsp;

namespace {

bool same_pair(const MultimorphismPair& a, const MultimorphismPair& b) {
    return a.meet == b.meet && a.join == b.join;
}

// All complete tournaments on d labels, one per orientation bitmask.
std::vector<Tournament> all_tournaments(int d) {
    std::vector<std::pair<int, int>> arcs;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) arcs.push_back({a, b});
    std::vector<Tournament> out;
    for (unsigned mask = 0; mask < (1u << arcs.size()); ++mask) {
        Tournament t;
        t.domain_size = d;
        t.edge.assign(d, std::vector<bool>(d, false));
        for (std::size_t k = 0; k < arcs.size(); ++k) {
            const auto [a, b] = arcs[k];
            if (mask & (1u << k))
                t.edge[a][b] = true;
            else
                t.edge[b][a] = true;
        }
        out.push_back(std::move(t));
    }
    return out;
}

// Replays a flip sequence against its own validity conditions and returns
// the final tournament.
Tournament replay_flips(Tournament t, const std::vector<Flip>& flips) {
    for (const Flip& f : flips) {
        REQUIRE(t.edge[f.from][f.to]);
        REQUIRE(t.edge[f.to][f.witness]);
        REQUIRE(t.edge[f.witness][f.from]);
        t.edge[f.from][f.to] = false;
        t.edge[f.to][f.from] = true;
    }
    return t;
}

bool acyclic_under(const Tournament& t, const std::vector<Label>& order) {
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (!t.edge[order[i]][order[j]]) return false;
    return true;
}

}  // namespace

TEST_CASE("is_stp accepts commutative conservative pairs only") {
    CHECK(is_stp(oracle::natural_min_max_pair(2)));
    CHECK(is_stp(oracle::natural_min_max_pair(4)));
    CHECK(is_stp(oracle::cyclic_pair_d3()));

    // nand/nor: commutative but not conservative.
    const Operation nand = operation_from(2, 2, [](const Labeling& a) {
        return 1 - std::min(a[0], a[1]);
    });
    const Operation nor = operation_from(2, 2, [](const Labeling& a) {
        return 1 - std::max(a[0], a[1]);
    });
    CHECK_FALSE(is_stp({nand, nor}));

    // Projections: conservative but not commutative.
    const Operation first = operation_from(2, 2, [](const Labeling& a) {
        return a[0];
    });
    const Operation second = operation_from(2, 2, [](const Labeling& a) {
        return a[1];
    });
    CHECK_FALSE(is_stp({first, second}));
}

TEST_CASE("pair_to_tournament reads off the meet") {
    const Tournament nat = pair_to_tournament(oracle::natural_min_max_pair(3));
    CHECK(nat.edge[0][1]);
    CHECK(nat.edge[0][2]);
    CHECK(nat.edge[1][2]);
    CHECK_FALSE(nat.edge[1][0]);

    const Tournament cyc = pair_to_tournament(oracle::cyclic_pair_d3());
    CHECK(cyc.edge[0][1]);
    CHECK(cyc.edge[1][2]);
    CHECK(cyc.edge[2][0]);
}

TEST_CASE("tournament and pair representations are mutually inverse") {
    for (int d : {2, 3, 4}) {
        CAPTURE(d);
        for (const Tournament& t : all_tournaments(d)) {
            const MultimorphismPair pair = tournament_to_pair(t);
            CHECK(is_stp(pair));
            const Tournament back = pair_to_tournament(pair);
            CHECK(back.edge == t.edge);
        }
    }
}

TEST_CASE("validate_tournament rejects malformed orientations") {
    Tournament t;
    t.domain_size = 2;
    t.edge = {{false, true}, {false, false}};
    CHECK_NOTHROW(validate_tournament(t));

    Tournament self_loop = t;
    self_loop.edge[0][0] = true;
    CHECK_THROWS_AS(validate_tournament(self_loop), InputError);

    Tournament both = t;
    both.edge[1][0] = true;
    CHECK_THROWS_AS(validate_tournament(both), InputError);

    Tournament neither = t;
    neither.edge[0][1] = false;
    CHECK_THROWS_AS(validate_tournament(neither), InputError);

    Tournament ragged = t;
    ragged.edge[1] = {false};
    CHECK_THROWS_AS(validate_tournament(ragged), InputError);
}

TEST_CASE("admits_multimorphism on unary languages is unconditional") {
    Language lang;
    lang.domain = {3};
    lang.add("u", oracle::table_function(3, 1, {0, 7, 2}));
    for (const Tournament& t : all_tournaments(3)) {
        const auto pair = tournament_to_pair(t);
        CHECK(admits_multimorphism(lang, pair));
        CHECK(oracle::pair_holds_brute(lang, pair.meet, pair.join));
    }
}

TEST_CASE("admits_multimorphism separates eq from cut under min/max") {
    const auto pair = oracle::natural_min_max_pair(2);
    CHECK(admits_multimorphism(oracle::cut_language(), pair));

    MultimorphismWitness witness;
    REQUIRE_FALSE(admits_multimorphism(oracle::eq_language(), pair, &witness));
    CHECK(witness.function == 0);
    CHECK(witness.x == Labeling{0, 1});
    CHECK(witness.y == Labeling{1, 0});
    CHECK_FALSE(oracle::pair_holds_brute(oracle::eq_language(), pair.meet,
                                         pair.join));
}

TEST_CASE("the separable fixture admits the cyclic pair, eq3 does not") {
    const auto pair = oracle::cyclic_pair_d3();
    CHECK(admits_multimorphism(oracle::separable_d3_language(), pair));
    CHECK(oracle::pair_holds_brute(oracle::separable_d3_language(), pair.meet,
                                   pair.join));
    CHECK_FALSE(admits_multimorphism(oracle::eq3_language(), pair));
    CHECK_FALSE(oracle::pair_holds_brute(oracle::eq3_language(), pair.meet,
                                         pair.join));
}

TEST_CASE("admits_multimorphism respects the enumeration cap") {
    CHECK_THROWS_AS(admits_multimorphism(oracle::separable_d3_language(),
                                         oracle::cyclic_pair_d3(), nullptr, 8),
                    CapError);
}

TEST_CASE("flip_pair reverses one arc through an admitted intermediate") {
    const Language lang = oracle::separable_d3_language();
    const auto pair = oracle::cyclic_pair_d3();

    const FlipResult result = flip_pair(lang, pair, {2, 0, 1});

    // The intermediate treats {0, 2} as already flipped and is therefore not
    // commutative there, yet still admitted.
    CHECK(result.intermediate.meet(Labeling{2, 0}) == 2);
    CHECK(result.intermediate.meet(Labeling{0, 2}) == 0);
    CHECK(result.intermediate.join(Labeling{2, 0}) == 0);
    CHECK(result.intermediate.join(Labeling{0, 2}) == 2);
    CHECK(result.intermediate.meet(Labeling{0, 1}) == 0);
    CHECK(admits_multimorphism(lang, result.intermediate));

    // Flipping 2->0 on the rock-paper-scissors orientation yields the
    // transitive tournament of the natural order.
    CHECK(same_pair(result.flipped, oracle::natural_min_max_pair(3)));
    CHECK(oracle::pair_holds_brute(lang, result.flipped.meet,
                                   result.flipped.join));
}

TEST_CASE("flip_pair validates the cycle and the language") {
    const Language lang = oracle::separable_d3_language();
    const auto cyclic = oracle::cyclic_pair_d3();

    // (1, 0) is not even an arc of the cyclic orientation.
    CHECK_THROWS_AS(flip_pair(lang, cyclic, {1, 0, 2}), InputError);
    // The natural orientation is transitive: no 3-cycle exists.
    CHECK_THROWS_AS(flip_pair(lang, oracle::natural_min_max_pair(3), {0, 1, 2}),
                    InputError);
    // Labels outside the domain.
    CHECK_THROWS_AS(flip_pair(lang, cyclic, {5, 0, 1}), InputError);
    // Valid cycle, but the language does not admit the pair being flipped.
    CHECK_THROWS_AS(flip_pair(oracle::eq3_language(), cyclic, {2, 0, 1}),
                    InputError);
}

TEST_CASE("acyclify fixes the rock-paper-scissors orientation in one flip") {
    const auto result = acyclify(pair_to_tournament(oracle::cyclic_pair_d3()));
    REQUIRE(result.flips.size() == 1);
    CHECK(result.flips[0].from == 2);
    CHECK(result.flips[0].to == 0);
    CHECK(result.flips[0].witness == 1);
    CHECK(result.order == std::vector<Label>{0, 1, 2});
    CHECK(acyclic_under(result.tournament, result.order));
}

TEST_CASE("acyclify leaves transitive tournaments untouched") {
    const auto result = acyclify(pair_to_tournament(oracle::natural_min_max_pair(4)));
    CHECK(result.flips.empty());
    CHECK(result.order == std::vector<Label>{0, 1, 2, 3});
}

TEST_CASE("acyclify is valid and within budget on every small tournament") {
    for (int d : {2, 3, 4}) {
        CAPTURE(d);
        for (const Tournament& t : all_tournaments(d)) {
            const auto result = acyclify(t);
            CHECK(static_cast<int>(result.flips.size()) <= d * (d - 1) / 2);
            const Tournament replayed = replay_flips(t, result.flips);
            CHECK(replayed.edge == result.tournament.edge);
            CHECK(acyclic_under(result.tournament, result.order));
        }
    }
}

TEST_CASE("acyclify handles seeded five-label tournaments") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        Tournament t;
        t.domain_size = 5;
        t.edge.assign(5, std::vector<bool>(5, false));
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                if (gen() & 1)
                    t.edge[a][b] = true;
                else
                    t.edge[b][a] = true;
            }
        const auto result = acyclify(t);
        CHECK(static_cast<int>(result.flips.size()) <= 10);
        const Tournament replayed = replay_flips(t, result.flips);
        CHECK(replayed.edge == result.tournament.edge);
        CHECK(acyclic_under(result.tournament, result.order));
    }
}

TEST_CASE("stp_to_submodular converts the separable fixture end to end") {
    const Language lang = oracle::separable_d3_language();
    const auto conv = stp_to_submodular(lang, oracle::cyclic_pair_d3());
    CHECK(conv.flips.size() == 1);
    CHECK(conv.order == std::vector<Label>{0, 1, 2});
    CHECK(same_pair(conv.pair, oracle::natural_min_max_pair(3)));
    CHECK(oracle::pair_holds_brute(lang, conv.pair.meet, conv.pair.join));
}

TEST_CASE("stp_to_submodular rejects bad pairs and bad languages") {
    const Operation first = operation_from(3, 2, [](const Labeling& a) {
        return a[0];
    });
    const Operation second = operation_from(3, 2, [](const Labeling& a) {
        return a[1];
    });
    CHECK_THROWS_AS(
        stp_to_submodular(oracle::separable_d3_language(), {first, second}),
        InputError);
    CHECK_THROWS_AS(
        stp_to_submodular(oracle::eq3_language(), oracle::cyclic_pair_d3()),
        InputError);
}

TEST_CASE("stp_to_submodular works on a unary-only language") {
    Language lang;
    lang.domain = {3};
    lang.add("u", oracle::table_function(3, 1, {4, 0, 9}));
    const auto conv = stp_to_submodular(lang, oracle::cyclic_pair_d3());
    CHECK(conv.flips.size() == 1);
    CHECK(oracle::pair_holds_brute(lang, conv.pair.meet, conv.pair.join));
}
