#ifndef VCSPLP_FPOLY_HPP
#define VCSPLP_FPOLY_HPP

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "vcsplp/core.hpp"
#include "vcsplp/ratlp.hpp"

namespace vcsp {

// Operation D^m -> D as a dense table in tuple_index order.
class Operation {
public:
    Operation(int domain_size, int arity, std::vector<Label> table);

    int domain_size() const { return domain_size_; }
    int arity() const { return arity_; }
    const std::vector<Label>& table() const { return table_; }

    Label operator()(std::span<const Label> args) const;
    Label value_at(long long index) const { return table_[index]; }

    auto operator<=>(const Operation&) const = default;

private:
    int domain_size_;
    int arity_;
    std::vector<Label> table_;
};

// Builds an operation table by evaluating fn on every argument tuple.
template <typename F>
Operation operation_from(int domain_size, int arity, F&& fn) {
    const long long count = checked_pow(domain_size, arity, kDefaultEnumerationCap);
    std::vector<Label> table(count);
    for (long long i = 0; i < count; ++i) {
        const Labeling args = index_tuple(i, arity, domain_size);
        table[i] = fn(args);
    }
    return Operation(domain_size, arity, std::move(table));
}

// Ordered sequence of k operations of a common arity m: a mapping D^m -> D^k.
struct Mapping {
    std::vector<Operation> ops;

    int size() const { return static_cast<int>(ops.size()); }
    int arity() const { return ops.front().arity(); }
    int domain_size() const { return ops.front().domain_size(); }

    auto operator<=>(const Mapping&) const = default;
};

void validate_mapping(const Mapping& g);

// The identity mapping: the m projections (a_1,...,a_m) -> (a_1,...,a_m).
Mapping identity_mapping(int domain_size, int arity);

// Probability distribution over mappings D^m -> D^k with rational weights.
struct FractionalPolymorphism {
    int arity_in = 0;   // m
    int arity_out = 0;  // k
    std::vector<std::pair<Mapping, Rational>> support;
};

// Canonicalizes a support list: drops zero weights, merges duplicates, sorts
// by table; validates weights positive with total exactly 1.
FractionalPolymorphism make_fpoly(
    int arity_in, int arity_out,
    std::vector<std::pair<Mapping, Rational>> support);

void validate_fpoly(const FractionalPolymorphism& rho);

// True iff g is invariant under every permutation of its arguments.
bool is_symmetric(const Operation& g);

// True iff g is invariant under cyclic shifts of its arguments.
bool is_cyclic(const Operation& g);

// True iff every operation of every support mapping is symmetric.
bool has_symmetric_support(const FractionalPolymorphism& rho);

// Componentwise application: output j, coordinate v is g_j(x^1_v,...,x^m_v).
std::vector<Labeling> apply_mapping(const Mapping& g,
                                    const std::vector<Labeling>& xs);

// Failure data for an admittance check: the function and the m-tuple of
// labelings at which the defining inequality is violated.
struct AdmitsWitness {
    int function = -1;
    std::vector<Labeling> labelings;
};

// True iff for every f in lang and every m-tuple of labelings over n = arity
// of f coordinates, sum_g rho(g) * f^k(g(x^1..x^m)) <= f^m(x^1..x^m), where
// f^k averages f over the k output labelings. Exhaustive and exact; per
// function the enumeration has size d^(n*m) and must stay within the cap.
bool admits(const Language& lang, const FractionalPolymorphism& rho,
            AdmitsWitness* witness = nullptr,
            long long cap = kDefaultEnumerationCap);

// Flattens an m->k distribution to an m->1 distribution: each support mapping
// donates weight rho(g)/k to each of its k component operations.
FractionalPolymorphism collapse(const FractionalPolymorphism& rho);

// Cap on the number of enumerated symmetric operations (the LP variable
// count) in find_symmetric_fpoly; d^C(d+m-1, m) grows quickly.
inline constexpr long long kDefaultSymmetricOpCap = 2048;

struct SymmetricSearch {
    std::optional<FractionalPolymorphism> fpoly;  // set when feasible
    std::optional<LpInfeasible> certificate;      // set when infeasible
    LinearProgram lp;  // the assembled feasibility LP, for auditing
};

// Decides whether lang admits a symmetric fractional polymorphism of arity m
// by LP feasibility over all symmetric m-ary operations as variables. The
// constraint rows are the admittance inequalities, deduplicated up to
// permutations of the labeling tuple, plus total weight 1.
SymmetricSearch find_symmetric_fpoly(const Language& lang, int m,
                                     long long cap_states = kDefaultSymmetricOpCap);

// From a symmetric distribution of arity p*m to one of arity m: each support
// operation g becomes g'(a_1,...,a_m) = g(a_1 repeated p times, ...).
FractionalPolymorphism reduce_arity(const FractionalPolymorphism& omega,
                                    int m);

}  // namespace vcsp

#endif
