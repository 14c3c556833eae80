#ifndef VCSPLP_CORE_HPP
#define VCSPLP_CORE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcsplp/rational.hpp"

namespace vcsp {

using Label = int;
using Labeling = std::vector<Label>;

// Finite domain {0, ..., size-1}.
struct Domain {
    int size = 0;
};

inline constexpr long long kDefaultEnumerationCap = 10'000'000;

// d^n with a cap; throws CapError when the power exceeds the cap.
long long checked_pow(int base, int exponent, long long cap);

// Lexicographic index of a tuple, first component most significant.
long long tuple_index(std::span<const Label> tuple, int domain_size);

// Inverse of tuple_index.
Labeling index_tuple(long long index, int length, int domain_size);

// Cost function D^n -> Q as a dense table in tuple_index order.
class CostFunction {
public:
    CostFunction(int domain_size, int arity, std::vector<Rational> table);

    int domain_size() const { return domain_size_; }
    int arity() const { return arity_; }
    const std::vector<Rational>& table() const { return table_; }

    const Rational& operator()(std::span<const Label> args) const;
    const Rational& value_at(long long index) const { return table_[index]; }

private:
    int domain_size_;
    int arity_;
    std::vector<Rational> table_;
};

struct Language {
    Domain domain;
    std::vector<std::string> names;
    std::vector<CostFunction> functions;

    // Index of the named function, or -1.
    int find(std::string_view name) const;
    void add(std::string name, CostFunction f);
};

// Checks name uniqueness and domain agreement; throws InputError.
void validate_language(const Language& lang);

struct Term {
    int function = -1;             // index into Language::functions
    std::vector<int> scope;        // node indices, repeats allowed
};

struct Instance {
    int node_count = 0;
    std::vector<Term> terms;
};

void validate_instance(const Language& lang, const Instance& inst);

// Sum of term costs at the labeling, exact.
Rational evaluate_instance(const Language& lang, const Instance& inst,
                           const Labeling& x);

// Exhaustive minimum over all d^|V| labelings; returns the minimum cost and
// the lexicographically smallest argmin.
std::pair<Rational, Labeling> brute_force_minimum(
    const Language& lang, const Instance& inst,
    long long cap = kDefaultEnumerationCap);

// (1/m) * sum_i f(x^i).
Rational average_cost(const CostFunction& f,
                      const std::vector<Labeling>& labelings);

// Deterministic for a fixed seed; scopes sampled uniformly with replacement.
Instance random_instance(const Language& lang, int node_count, int term_count,
                         std::uint64_t seed);

}  // namespace vcsp

#endif
