#include "vcsplp/fpoly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <string>

namespace vcsp {

Operation::Operation(int domain_size, int arity, std::vector<Label> table)
    : domain_size_(domain_size), arity_(arity), table_(std::move(table)) {
    if (domain_size_ < 1) throw InputError("domain size must be >= 1");
    if (arity_ < 1) throw InputError("operation arity must be >= 1");
    long long expect = 1;
    for (int i = 0; i < arity_; ++i) expect *= domain_size_;
    if (static_cast<long long>(table_.size()) != expect)
        throw InputError("operation table has " + std::to_string(table_.size()) +
                         " entries, expected " + std::to_string(expect));
    for (Label v : table_)
        if (v < 0 || v >= domain_size_)
            throw InputError("operation table value out of domain");
}

Label Operation::operator()(std::span<const Label> args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw InputError("operation arity mismatch");
    for (Label a : args)
        if (a < 0 || a >= domain_size_)
            throw InputError("label out of domain");
    return table_[tuple_index(args, domain_size_)];
}

void validate_mapping(const Mapping& g) {
    if (g.ops.empty()) throw InputError("mapping with no operations");
    for (const Operation& op : g.ops) {
        if (op.arity() != g.ops.front().arity() ||
            op.domain_size() != g.ops.front().domain_size())
            throw InputError("mapping operations disagree on arity or domain");
    }
}

Mapping identity_mapping(int domain_size, int arity) {
    Mapping id;
    for (int i = 0; i < arity; ++i)
        id.ops.push_back(operation_from(
            domain_size, arity, [i](const Labeling& args) { return args[i]; }));
    return id;
}

FractionalPolymorphism make_fpoly(
    int arity_in, int arity_out,
    std::vector<std::pair<Mapping, Rational>> support) {
    std::map<Mapping, Rational> merged;
    for (auto& [g, w] : support) {
        w.canonicalize();
        if (w == 0) continue;
        merged[std::move(g)] += w;
    }
    FractionalPolymorphism rho;
    rho.arity_in = arity_in;
    rho.arity_out = arity_out;
    for (auto& [g, w] : merged)
        rho.support.emplace_back(g, w);
    validate_fpoly(rho);
    return rho;
}

void validate_fpoly(const FractionalPolymorphism& rho) {
    if (rho.support.empty())
        throw InputError("fractional polymorphism with empty support");
    Rational total = 0;
    for (std::size_t i = 0; i < rho.support.size(); ++i) {
        const auto& [g, w] = rho.support[i];
        validate_mapping(g);
        if (g.size() != rho.arity_out || g.arity() != rho.arity_in)
            throw InputError("support mapping arity disagrees with distribution");
        if (w <= 0) throw InputError("support weight must be positive");
        total += w;
        for (std::size_t j = i + 1; j < rho.support.size(); ++j)
            if (rho.support[j].first == g)
                throw InputError("duplicate mapping in support");
    }
    if (total != 1) throw InputError("support weights must sum to 1");
}

bool is_symmetric(const Operation& g) {
    // Sorting generates the full symmetric group, so comparing against the
    // sorted representative covers all permutations.
    const int d = g.domain_size();
    const long long count = static_cast<long long>(g.table().size());
    for (long long i = 0; i < count; ++i) {
        Labeling args = index_tuple(i, g.arity(), d);
        std::sort(args.begin(), args.end());
        if (g.value_at(i) != g.value_at(tuple_index(args, d))) return false;
    }
    return true;
}

bool is_cyclic(const Operation& g) {
    const int d = g.domain_size();
    const long long count = static_cast<long long>(g.table().size());
    for (long long i = 0; i < count; ++i) {
        Labeling args = index_tuple(i, g.arity(), d);
        std::rotate(args.begin(), args.begin() + 1, args.end());
        if (g.value_at(i) != g.value_at(tuple_index(args, d))) return false;
    }
    return true;
}

bool has_symmetric_support(const FractionalPolymorphism& rho) {
    for (const auto& [g, w] : rho.support)
        for (const Operation& op : g.ops)
            if (!is_symmetric(op)) return false;
    return true;
}

std::vector<Labeling> apply_mapping(const Mapping& g,
                                    const std::vector<Labeling>& xs) {
    validate_mapping(g);
    if (static_cast<int>(xs.size()) != g.arity())
        throw InputError("mapping applied to wrong number of labelings");
    const std::size_t n = xs.empty() ? 0 : xs.front().size();
    for (const Labeling& x : xs)
        if (x.size() != n) throw InputError("labelings of unequal length");

    std::vector<Labeling> out(g.size(), Labeling(n));
    Labeling column(xs.size());
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < xs.size(); ++i) column[i] = xs[i][v];
        for (int j = 0; j < g.size(); ++j) out[j][v] = g.ops[j](column);
    }
    return out;
}

namespace {

// Splits the flat index of an m-tuple of labelings (each of length n over d
// labels) into the m labelings, first labeling most significant.
std::vector<Labeling> decode_tuple_of_labelings(long long index, int m, int n,
                                                int d) {
    const long long per = checked_pow(d, n, kDefaultEnumerationCap);
    std::vector<Labeling> xs(m);
    for (int i = m - 1; i >= 0; --i) {
        xs[i] = index_tuple(index % per, n, d);
        index /= per;
    }
    return xs;
}

}  // namespace

bool admits(const Language& lang, const FractionalPolymorphism& rho,
            AdmitsWitness* witness, long long cap) {
    validate_fpoly(rho);
    const int d = lang.domain.size;
    const int m = rho.arity_in;
    const int k = rho.arity_out;
    for (const auto& [g, w] : rho.support)
        if (g.domain_size() != d)
            throw InputError("distribution domain disagrees with language");

    for (std::size_t fi = 0; fi < lang.functions.size(); ++fi) {
        const CostFunction& f = lang.functions[fi];
        const int n = f.arity();
        long long count;
        try {
            count = checked_pow(d, n * m, cap);
        } catch (const CapError&) {
            throw CapError("admittance check for '" + lang.names[fi] +
                           "' needs " + std::to_string(d) + "^" +
                           std::to_string(n * m) + " tuples, over the cap");
        }

        for (long long idx = 0; idx < count; ++idx) {
            const std::vector<Labeling> xs = decode_tuple_of_labelings(idx, m, n, d);
            Rational rhs = 0;
            for (const Labeling& x : xs) rhs += f(x);
            rhs /= m;

            Rational lhs = 0;
            for (const auto& [g, w] : rho.support) {
                const std::vector<Labeling> ys = apply_mapping(g, xs);
                Rational inner = 0;
                for (const Labeling& y : ys) inner += f(y);
                lhs += w * inner / k;
            }
            if (lhs > rhs) {
                if (witness) {
                    witness->function = static_cast<int>(fi);
                    witness->labelings = xs;
                }
                return false;
            }
        }
    }
    return true;
}

FractionalPolymorphism collapse(const FractionalPolymorphism& rho) {
    validate_fpoly(rho);
    const int k = rho.arity_out;
    std::vector<std::pair<Mapping, Rational>> support;
    for (const auto& [g, w] : rho.support)
        for (const Operation& op : g.ops)
            support.emplace_back(Mapping{{op}}, w / k);
    return make_fpoly(rho.arity_in, 1, std::move(support));
}

namespace {

// Non-decreasing m-tuples over {0..d-1} in lexicographic order: the multiset
// representatives that index a symmetric operation's table.
std::vector<Labeling> enumerate_multisets(int d, int m) {
    std::vector<Labeling> out;
    Labeling cur(m, 0);
    for (;;) {
        out.push_back(cur);
        int p = m - 1;
        while (p >= 0 && cur[p] == d - 1) --p;
        if (p < 0) break;
        const Label next = cur[p] + 1;
        for (int i = p; i < m; ++i) cur[i] = next;
    }
    return out;
}

// The t-th symmetric operation: digit j of t in base d is the value on the
// j-th multiset.
Operation symmetric_op_from_index(long long t, int d, int m,
                                  const std::vector<Labeling>& multisets,
                                  const std::map<Labeling, int>& multiset_index) {
    std::vector<Label> digits(multisets.size());
    for (std::size_t j = 0; j < multisets.size(); ++j) {
        digits[j] = static_cast<Label>(t % d);
        t /= d;
    }
    return operation_from(d, m, [&](const Labeling& args) {
        Labeling sorted = args;
        std::sort(sorted.begin(), sorted.end());
        return digits[multiset_index.at(sorted)];
    });
}

}  // namespace

SymmetricSearch find_symmetric_fpoly(const Language& lang, int m,
                                     long long cap_states) {
    validate_language(lang);
    if (m < 1) throw InputError("arity must be >= 1");
    const int d = lang.domain.size;

    const std::vector<Labeling> multisets = enumerate_multisets(d, m);
    std::map<Labeling, int> multiset_index;
    for (std::size_t j = 0; j < multisets.size(); ++j)
        multiset_index[multisets[j]] = static_cast<int>(j);

    long long op_count;
    try {
        op_count = checked_pow(d, static_cast<int>(multisets.size()), cap_states);
    } catch (const CapError&) {
        throw CapError("symmetric operation count " + std::to_string(d) + "^" +
                       std::to_string(multisets.size()) +
                       " exceeds the state cap " + std::to_string(cap_states));
    }

    std::vector<Operation> ops;
    ops.reserve(op_count);
    for (long long t = 0; t < op_count; ++t)
        ops.push_back(symmetric_op_from_index(t, d, m, multisets, multiset_index));

    // One inequality row per function per multiset of m labelings; the slack
    // columns convert them to equalities. The last row pins total weight 1.
    struct Row {
        Vector coeffs;
        Rational rhs;
    };
    std::vector<Row> inequalities;
    for (std::size_t fi = 0; fi < lang.functions.size(); ++fi) {
        const CostFunction& f = lang.functions[fi];
        const int n = f.arity();
        const long long per = checked_pow(d, n, kDefaultEnumerationCap);
        const long long count = checked_pow(d, n * m, kDefaultEnumerationCap);
        for (long long idx = 0; idx < count; ++idx) {
            // Keep one representative per multiset of labelings: symmetric
            // operations make permuted tuples yield identical rows.
            long long rest = idx;
            bool nondecreasing = true;
            long long prev = -1;
            std::vector<long long> parts(m);
            for (int i = m - 1; i >= 0; --i) {
                parts[i] = rest % per;
                rest /= per;
            }
            for (long long p : parts) {
                if (p < prev) {
                    nondecreasing = false;
                    break;
                }
                prev = p;
            }
            if (!nondecreasing) continue;

            std::vector<Labeling> xs(m);
            for (int i = 0; i < m; ++i) xs[i] = index_tuple(parts[i], n, d);

            Row row;
            row.rhs = 0;
            for (const Labeling& x : xs) row.rhs += f(x);
            row.rhs /= m;

            row.coeffs.resize(ops.size());
            Labeling column(m), y(n);
            for (std::size_t t = 0; t < ops.size(); ++t) {
                for (int v = 0; v < n; ++v) {
                    for (int i = 0; i < m; ++i) column[i] = xs[i][v];
                    y[v] = ops[t](column);
                }
                row.coeffs[t] = f(y);
            }
            inequalities.push_back(std::move(row));
        }
    }

    SymmetricSearch result;
    LinearProgram& lp = result.lp;
    const std::size_t vars = ops.size() + inequalities.size();
    lp.c.assign(vars, Rational(0));
    for (std::size_t r = 0; r < inequalities.size(); ++r) {
        Vector row(vars, Rational(0));
        for (std::size_t t = 0; t < ops.size(); ++t)
            row[t] = inequalities[r].coeffs[t];
        row[ops.size() + r] = 1;  // slack
        lp.a.push_back(std::move(row));
        lp.b.push_back(inequalities[r].rhs);
    }
    Vector ones(vars, Rational(0));
    for (std::size_t t = 0; t < ops.size(); ++t) ones[t] = 1;
    lp.a.push_back(std::move(ones));
    lp.b.push_back(1);

    LpOutcome outcome = solve(lp);
    if (auto* opt = std::get_if<LpOptimal>(&outcome)) {
        std::vector<std::pair<Mapping, Rational>> support;
        for (std::size_t t = 0; t < ops.size(); ++t)
            if (opt->x[t] > 0)
                support.emplace_back(Mapping{{ops[t]}}, opt->x[t]);
        result.fpoly = make_fpoly(m, 1, std::move(support));
        return result;
    }
    if (auto* inf = std::get_if<LpInfeasible>(&outcome)) {
        result.certificate = std::move(*inf);
        return result;
    }
    assert(false && "feasibility LP with zero objective cannot be unbounded");
    throw std::logic_error("feasibility LP reported unbounded");
}

FractionalPolymorphism reduce_arity(const FractionalPolymorphism& omega,
                                    int m) {
    validate_fpoly(omega);
    if (m < 1) throw InputError("target arity must be >= 1");
    if (omega.arity_in % m != 0)
        throw InputError("arity " + std::to_string(omega.arity_in) +
                         " is not divisible by " + std::to_string(m));
    const int p = omega.arity_in / m;
    const int d = omega.support.front().first.domain_size();

    std::vector<std::pair<Mapping, Rational>> support;
    for (const auto& [g, w] : omega.support) {
        Mapping reduced;
        for (const Operation& op : g.ops) {
            reduced.ops.push_back(operation_from(d, m, [&](const Labeling& args) {
                Labeling expanded;
                expanded.reserve(static_cast<std::size_t>(p) * m);
                for (Label a : args)
                    for (int r = 0; r < p; ++r) expanded.push_back(a);
                return op(expanded);
            }));
        }
        support.emplace_back(std::move(reduced), w);
    }
    return make_fpoly(m, omega.arity_out, std::move(support));
}

}  // namespace vcsp
