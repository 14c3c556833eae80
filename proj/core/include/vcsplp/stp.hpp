#ifndef VCSPLP_STP_HPP
#define VCSPLP_STP_HPP

#include <vector>

#include "vcsplp/fpoly.hpp"

namespace vcsp {

// A pair of binary operations <meet, join>. The pair is an STP when both are
// commutative and together conservative ({a meet b, a join b} = {a, b}); it
// is submodular when additionally its tournament is acyclic, i.e. it is
// <min, max> under some total order.
struct MultimorphismPair {
    Operation meet;
    Operation join;
};

// Complete orientation of the label pairs: exactly one of (a,b), (b,a) per
// distinct pair. edge[a][b] holds the arc a -> b, meaning a meet b = a.
struct Tournament {
    int domain_size = 0;
    std::vector<std::vector<bool>> edge;
};

void validate_tournament(const Tournament& t);

// Exhaustively checks commutativity and conservativity of a binary pair.
bool is_stp(const MultimorphismPair& pair);

// Mutually inverse bijections between STP pairs and complete tournaments.
Tournament pair_to_tournament(const MultimorphismPair& pair);
MultimorphismPair tournament_to_pair(const Tournament& t);

struct MultimorphismWitness {
    int function = -1;
    Labeling x, y;
};

// True iff f(x meet y) + f(x join y) <= f(x) + f(y) for every function and
// every pair of labelings, checked exactly; fills the witness at the first
// violation. The pair need not be commutative, so the intermediate pairs of
// flip_pair can be checked with the same routine.
bool admits_multimorphism(const Language& lang, const MultimorphismPair& pair,
                          MultimorphismWitness* witness = nullptr,
                          long long cap = kDefaultEnumerationCap);

// Reversing the arc (from, to) of a tournament, valid only when the arc lies
// on a 3-cycle from -> to -> witness -> from.
struct Flip {
    Label from = 0;
    Label to = 0;
    Label witness = 0;
};

struct FlipResult {
    // The two-step construction behind the flip: first the non-commutative
    // pair that treats {from, to} as already flipped, then the STP pair of
    // the flipped tournament. Both are admitted whenever the input pair is.
    MultimorphismPair intermediate;
    MultimorphismPair flipped;
};

// Flips the arc (flip.from, flip.to) of the pair's tournament; requires the
// full 3-cycle (from,to), (to,witness), (witness,from) and that lang admits
// the pair. Admittance of both returned pairs is re-verified; a failure
// would contradict the flip's correctness proof and raises logic_error.
FlipResult flip_pair(const Language& lang, const MultimorphismPair& pair,
                     const Flip& flip, long long cap = kDefaultEnumerationCap);

struct AcyclifyResult {
    std::vector<Flip> flips;       // in application order; every flip valid
    Tournament tournament;         // final, acyclic
    std::vector<Label> order;      // unique topological order, minimum first
};

// Makes a tournament acyclic with valid flips only: labels are inserted in
// ascending order into a growing acyclic part, and each insertion repeatedly
// flips the lexicographically smallest 3-cycle through the new label.
AcyclifyResult acyclify(const Tournament& t);

struct StpConversion {
    std::vector<Flip> flips;
    std::vector<Label> order;      // total order making the pair <min, max>
    MultimorphismPair pair;        // the submodular pair under that order
};

// End-to-end conversion: acyclify the pair's tournament, replaying every
// flip through flip_pair so admittance is certified at each step. Requires
// is_stp(pair) and that lang admits the pair.
StpConversion stp_to_submodular(const Language& lang,
                                const MultimorphismPair& pair,
                                long long cap = kDefaultEnumerationCap);

}  // namespace vcsp

#endif
