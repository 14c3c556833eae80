#ifndef VCSPLP_BLP_HPP
#define VCSPLP_BLP_HPP

#include "vcsplp/core.hpp"
#include "vcsplp/ratlp.hpp"

namespace vcsp {

// Cap on the total variable count of an assembled relaxation.
inline constexpr long long kDefaultBlpVariableCap = 10'000;

// The local-distribution relaxation of an instance: one distribution over
// D^{n_t} per term and one over D per node, tied by marginalization. In any
// feasible point every distribution sums to 1, and for every term, scope
// position, and label, the term marginal equals the node distribution value.
// Variables are ordered terms first (tuples lexicographic), then nodes.
struct BlpRelaxation {
    LinearProgram lp;
    int domain_size = 0;
    int node_count = 0;
    std::vector<long long> term_offset;  // variable block start per term
    long long node_offset = 0;           // first node variable

    long long term_var(int t, long long sigma_index) const {
        return term_offset[t] + sigma_index;
    }
    long long node_var(int v, Label a) const {
        return node_offset + static_cast<long long>(v) * domain_size + a;
    }
};

BlpRelaxation build_blp(const Language& lang, const Instance& inst,
                        long long cap = kDefaultBlpVariableCap);

struct BlpSolution {
    Rational value;
    Vector mu;  // optimal point in build_blp's variable order
};

// Exact optimum of the relaxation; always at most the integral minimum.
BlpSolution solve_blp(const Language& lang, const Instance& inst,
                      long long cap = kDefaultBlpVariableCap);

struct TightnessReport {
    Rational blp_value;
    Rational integral_value;
    Rational gap;  // integral_value - blp_value, always >= 0
    bool tight = false;
};

// Compares the relaxation optimum against the exhaustive minimum.
TightnessReport check_tightness(const Language& lang, const Instance& inst,
                                long long blp_cap = kDefaultBlpVariableCap,
                                long long enum_cap = kDefaultEnumerationCap);

// Rounds a tight relaxation to an integral optimum by self-reduction: nodes
// are pinned one at a time (smallest label first) to a label that keeps the
// re-solved optimum unchanged. Throws InputError when no label does, which
// happens exactly when the instance is not tight.
Labeling extract_labeling(const Language& lang, const Instance& inst,
                          long long cap = kDefaultBlpVariableCap);

}  // namespace vcsp

#endif
