#ifndef VCSPLP_LIFT_HPP
#define VCSPLP_LIFT_HPP

#include <vector>

#include "vcsplp/fpoly.hpp"

namespace vcsp {

// Default cap on the number of generated mappings.
inline constexpr long long kDefaultMappingCap = 100'000;

// Permuted tuple: result[i] = alpha[pi[i]] with pi a permutation of 0..m-1.
Labeling tuple_permute(const Labeling& alpha, const std::vector<int>& pi);

// Component i of the result is s applied to alpha with its i-th entry
// removed; s must be an (m-1)-ary operation for an m-tuple alpha.
Labeling tuple_s(const Labeling& alpha, const Operation& s);

// For g = (g_1,...,g_m) of arity m -> m, the mapping whose i-th operation is
// alpha -> s(g_1(alpha),...,g_m(alpha) with the i-th value removed); equal to
// alpha -> tuple_s(g(alpha), s) pointwise.
Mapping mapping_s(const Mapping& g, const Operation& s);

// Closure of the identity mapping under g -> g^s over the support of a
// symmetric distribution omega of arity (m-1) -> 1, with aggregated edge
// weights: w(g, h) = sum of omega(s) over generators s with g^s = h, so
// every vertex has total out-weight exactly 1.
struct MappingGraph {
    int arity = 0;                     // m
    FractionalPolymorphism seed;       // omega
    std::vector<Mapping> vertices;     // breadth-first order; index 0 is the identity

    struct Edge {
        int source = 0;
        int target = 0;
        Rational weight;
        std::vector<int> generators;   // indices into seed.support realizing the edge
    };
    std::vector<Edge> edges;           // sorted by (source, target)
};

MappingGraph generate_V(const FractionalPolymorphism& omega, int m,
                        long long cap = kDefaultMappingCap);

// Strongly connected components split into sinks (no leaving edges) and the
// remaining transient vertices.
struct SinkDecomposition {
    std::vector<std::vector<int>> sinks;  // each sorted; ordered by first vertex
    std::vector<int> transient;           // sorted
};

SinkDecomposition sink_decomposition(const MappingGraph& graph);

// One application of the mass-transfer step: rho' = rho - w*X_g +
// w*sum_s omega(s)*X_{g^s} with w = rho(g), support merged.
FractionalPolymorphism single_step_transform(const FractionalPolymorphism& rho,
                                             const Mapping& g,
                                             const FractionalPolymorphism& omega);

// The limit of repeated mass transfers from the identity: absorption
// probability of each sink times the sink's unique stationary distribution,
// both computed by exact linear solves. Supported on the union of sinks.
FractionalPolymorphism limit_distribution(const MappingGraph& graph,
                                          const SinkDecomposition& dec);

// Feasible nonnegative weights for the in-flow/out-flow balance system over
// a sink H: for every vertex g of H and index i,
//
//   sum over in-edges (h,g) inside H of w(h,g)*lambda[h][i]
//     - sum_{j != i} lambda[g][j]/(m-1)  =  target(g, i)
//
// with target c_g = [g=v'] - [g=v''] (certifying that the averaged cost is
// constant across a sink's mappings) or target c_i*node_lambda[g] with
// c_i = [i=i'] - [i=i''] together with sum_g node_lambda[g] = 1 (certifying
// index-independence of the lambda-weighted cost).
struct SinkCertificate {
    std::vector<int> sink;      // the vertex set H, sorted
    int i_prime = 0;            // index pair the certificate serves
    int i_second = 1;
    Vector node_lambda;         // over H in sink order; empty for the mapping form
    Matrix io_lambda;           // |H| x m, row per sink vertex
};

// The mapping-pair form (target [g=v'] - [g=v'']); v_prime/v_second are
// vertex ids that must lie in the sink.
SinkCertificate sink_certificate_for_mappings(const MappingGraph& graph,
                                              const std::vector<int>& sink,
                                              int v_prime, int v_second);

// The index-pair form. Solved once for the pair (0,1); other pairs are
// derived by permuting the index coordinate, so node_lambda is shared across
// all pairs.
SinkCertificate sink_certificate_for_indices(const MappingGraph& graph,
                                             const std::vector<int>& sink,
                                             int i_prime, int i_second);

// The m labelings (x^{g,1},...,x^{g,m}) = g(x^1,...,x^m).
std::vector<Labeling> indexed_labelings(const Mapping& g,
                                        const std::vector<Labeling>& xs);

// sum over vertices g of the sink of lambda[g] * f(x^{g,i}).
Rational F_lambda(const CostFunction& f, const MappingGraph& graph,
                  const std::vector<int>& sink, const Vector& lambda, int i,
                  const std::vector<Labeling>& xs);

// The mapping that sorts every m-tuple ascending under the given total order
// (order[r] is the label of rank r); componentwise symmetric and idempotent.
Mapping sorting_map(int domain_size, int m, const std::vector<Label>& order);

// rho' = sum_g rho(g) * X_{p o g}: composing with a sorting map makes every
// support operation symmetric while preserving admittance.
FractionalPolymorphism symmetrize(const FractionalPolymorphism& rho,
                                  const Mapping& p);

// One arity step: from a symmetric distribution of arity q >= 2 admitted by
// lang to a symmetric distribution of arity q+1, via the mapping graph, its
// limit distribution, symmetrization, and flattening. The output is checked
// against lang with admits before returning.
FractionalPolymorphism lift_once(const Language& lang,
                                 const FractionalPolymorphism& omega,
                                 long long cap = kDefaultMappingCap);

// Any target arity m >= 2 from a symmetric seed of arity k >= 2: repeated
// lift_once for m >= k; for m < k, lift to the least multiple of m that is
// >= k and fold arguments down with reduce_arity.
FractionalPolymorphism lift_to(const Language& lang,
                               const FractionalPolymorphism& seed, int m,
                               long long cap = kDefaultMappingCap);

}  // namespace vcsp

#endif
