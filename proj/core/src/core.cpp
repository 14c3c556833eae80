#include "vcsplp/core.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace vcsp {

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw InputError("empty rational literal");
    std::string s(text);
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.find('/', slash + 1) != std::string::npos)
            throw InputError("malformed rational '" + s + "'");
        const std::string den = s.substr(slash + 1);
        if (den.empty() || den == "0" || den == "-0" ||
            den.find_first_not_of("0123456789-") != std::string::npos)
            throw InputError("malformed rational '" + s + "'");
    }
    try {
        Rational r(s);
        if (r.get_den() == 0) throw InputError("rational with zero denominator: '" + s + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw InputError("malformed rational '" + s + "'");
    }
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

long long checked_pow(int base, int exponent, long long cap) {
    long long result = 1;
    for (int i = 0; i < exponent; ++i) {
        if (result > cap / base)
            throw CapError("enumeration size " + std::to_string(base) + "^" +
                           std::to_string(exponent) + " exceeds cap " +
                           std::to_string(cap));
        result *= base;
    }
    if (result > cap)
        throw CapError("enumeration size exceeds cap " + std::to_string(cap));
    return result;
}

long long tuple_index(std::span<const Label> tuple, int domain_size) {
    long long index = 0;
    for (Label a : tuple) index = index * domain_size + a;
    return index;
}

Labeling index_tuple(long long index, int length, int domain_size) {
    Labeling tuple(length);
    for (int i = length - 1; i >= 0; --i) {
        tuple[i] = static_cast<Label>(index % domain_size);
        index /= domain_size;
    }
    return tuple;
}

CostFunction::CostFunction(int domain_size, int arity,
                           std::vector<Rational> table)
    : domain_size_(domain_size), arity_(arity), table_(std::move(table)) {
    if (domain_size_ < 1) throw InputError("domain size must be >= 1");
    if (arity_ < 1) throw InputError("cost function arity must be >= 1");
    long long expect = 1;
    for (int i = 0; i < arity_; ++i) expect *= domain_size_;
    if (static_cast<long long>(table_.size()) != expect)
        throw InputError("cost table has " + std::to_string(table_.size()) +
                         " entries, expected " + std::to_string(expect));
    for (auto& r : table_) r.canonicalize();
}

const Rational& CostFunction::operator()(std::span<const Label> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw InputError("cost function arity mismatch");
    for (Label a : args)
        if (a < 0 || a >= domain_size_)
            throw InputError("label out of domain");
    return table_[tuple_index(args, domain_size_)];
}

int Language::find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

void Language::add(std::string name, CostFunction f) {
    names.push_back(std::move(name));
    functions.push_back(std::move(f));
}

void validate_language(const Language& lang) {
    if (lang.domain.size < 1) throw InputError("domain size must be >= 1");
    if (lang.names.size() != lang.functions.size())
        throw InputError("language names/functions length mismatch");
    for (std::size_t i = 0; i < lang.functions.size(); ++i) {
        if (lang.functions[i].domain_size() != lang.domain.size)
            throw InputError("function '" + lang.names[i] +
                             "' disagrees with the language domain");
        for (std::size_t j = i + 1; j < lang.names.size(); ++j)
            if (lang.names[i] == lang.names[j])
                throw InputError("duplicate function name '" + lang.names[i] + "'");
    }
}

void validate_instance(const Language& lang, const Instance& inst) {
    if (inst.node_count < 0) throw InputError("negative node count");
    for (const Term& t : inst.terms) {
        if (t.function < 0 ||
            t.function >= static_cast<int>(lang.functions.size()))
            throw InputError("term references unknown function");
        const CostFunction& f = lang.functions[t.function];
        if (static_cast<int>(t.scope.size()) != f.arity())
            throw InputError("term scope length does not match function arity");
        for (int v : t.scope)
            if (v < 0 || v >= inst.node_count)
                throw InputError("term scope references node out of range");
    }
}

Rational evaluate_instance(const Language& lang, const Instance& inst,
                           const Labeling& x) {
    if (static_cast<int>(x.size()) != inst.node_count)
        throw InputError("labeling length does not match node count");
    for (Label a : x)
        if (a < 0 || a >= lang.domain.size)
            throw InputError("label out of domain");
    Rational total = 0;
    Labeling args;
    for (const Term& t : inst.terms) {
        args.clear();
        for (int v : t.scope) args.push_back(x[v]);
        total += lang.functions[t.function](args);
    }
    return total;
}

std::pair<Rational, Labeling> brute_force_minimum(const Language& lang,
                                                  const Instance& inst,
                                                  long long cap) {
    validate_instance(lang, inst);
    const int d = lang.domain.size;
    const int n = inst.node_count;
    const long long count = checked_pow(d, n, cap);

    Labeling x(n, 0);
    Rational best = evaluate_instance(lang, inst, x);
    Labeling best_x = x;
    for (long long i = 1; i < count; ++i) {
        // next labeling in lexicographic order
        for (int p = n - 1; p >= 0; --p) {
            if (++x[p] < d) break;
            x[p] = 0;
        }
        Rational cost = evaluate_instance(lang, inst, x);
        if (cost < best) {
            best = cost;
            best_x = x;
        }
    }
    return {best, best_x};
}

Rational average_cost(const CostFunction& f,
                      const std::vector<Labeling>& labelings) {
    if (labelings.empty()) throw InputError("average over zero labelings");
    Rational sum = 0;
    for (const Labeling& x : labelings) {
        if (static_cast<int>(x.size()) != f.arity())
            throw InputError("labeling length does not match function arity");
        sum += f(x);
    }
    return sum / Rational(static_cast<long>(labelings.size()));
}

Instance random_instance(const Language& lang, int node_count, int term_count,
                         std::uint64_t seed) {
    validate_language(lang);
    if (lang.functions.empty())
        throw InputError("cannot sample terms from an empty language");
    int max_arity = 0;
    for (const CostFunction& f : lang.functions)
        max_arity = std::max(max_arity, f.arity());
    if (node_count < max_arity)
        throw InputError("node count below the largest function arity");

    // mt19937_64 output is pinned by the standard, so instances are
    // reproducible across platforms.
    std::mt19937_64 gen(seed);
    Instance inst;
    inst.node_count = node_count;
    for (int t = 0; t < term_count; ++t) {
        Term term;
        term.function = static_cast<int>(gen() % lang.functions.size());
        const int arity = lang.functions[term.function].arity();
        for (int k = 0; k < arity; ++k)
            term.scope.push_back(static_cast<int>(gen() % node_count));
        inst.terms.push_back(std::move(term));
    }
    return inst;
}

}  // namespace vcsp
