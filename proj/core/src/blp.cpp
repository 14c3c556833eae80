#include "vcsplp/blp.hpp"

#include <string>

namespace vcsp {

BlpRelaxation build_blp(const Language& lang, const Instance& inst,
                        long long cap) {
    validate_language(lang);
    validate_instance(lang, inst);
    const int d = lang.domain.size;

    BlpRelaxation relax;
    relax.domain_size = d;
    relax.node_count = inst.node_count;

    long long vars = 0;
    for (const Term& t : inst.terms) {
        relax.term_offset.push_back(vars);
        const int n = static_cast<int>(t.scope.size());
        vars += checked_pow(d, n, cap);
        if (vars > cap)
            throw CapError("relaxation needs " + std::to_string(vars) +
                           " variables, over the cap " + std::to_string(cap));
    }
    relax.node_offset = vars;
    vars += static_cast<long long>(inst.node_count) * d;
    if (vars > cap)
        throw CapError("relaxation needs " + std::to_string(vars) +
                       " variables, over the cap " + std::to_string(cap));

    LinearProgram& lp = relax.lp;
    lp.c.assign(vars, Rational(0));
    for (std::size_t t = 0; t < inst.terms.size(); ++t) {
        const CostFunction& f = lang.functions[inst.terms[t].function];
        const long long block = static_cast<long long>(f.table().size());
        for (long long s = 0; s < block; ++s)
            lp.c[relax.term_var(static_cast<int>(t), s)] = f.value_at(s);
    }

    const auto add_row = [&](Vector row, Rational rhs) {
        lp.a.push_back(std::move(row));
        lp.b.push_back(std::move(rhs));
    };

    // Normalization: every term distribution sums to 1, then every node
    // distribution sums to 1.
    for (std::size_t t = 0; t < inst.terms.size(); ++t) {
        Vector row(vars, Rational(0));
        const int n = static_cast<int>(inst.terms[t].scope.size());
        const long long block = checked_pow(d, n, cap);
        for (long long s = 0; s < block; ++s)
            row[relax.term_var(static_cast<int>(t), s)] = 1;
        add_row(std::move(row), 1);
    }
    for (int v = 0; v < inst.node_count; ++v) {
        Vector row(vars, Rational(0));
        for (Label a = 0; a < d; ++a) row[relax.node_var(v, a)] = 1;
        add_row(std::move(row), 1);
    }

    // Marginalization: for every term, scope position, and label, the mass
    // the term puts on tuples with that label at that position equals the
    // node distribution value. Repeated nodes in a scope get one row per
    // position.
    for (std::size_t t = 0; t < inst.terms.size(); ++t) {
        const Term& term = inst.terms[t];
        const int n = static_cast<int>(term.scope.size());
        const long long block = checked_pow(d, n, cap);
        for (int k = 0; k < n; ++k) {
            for (Label a = 0; a < d; ++a) {
                Vector row(vars, Rational(0));
                for (long long s = 0; s < block; ++s) {
                    const Labeling sigma = index_tuple(s, n, d);
                    if (sigma[k] == a)
                        row[relax.term_var(static_cast<int>(t), s)] = 1;
                }
                row[relax.node_var(term.scope[k], a)] = -1;
                add_row(std::move(row), 0);
            }
        }
    }
    return relax;
}

namespace {

BlpSolution solve_relaxation(const BlpRelaxation& relax) {
    LpOutcome outcome = solve(relax.lp);
    auto* opt = std::get_if<LpOptimal>(&outcome);
    if (!opt)
        throw std::logic_error(
            "the relaxation polytope is non-empty and bounded, yet the "
            "solver did not report an optimum");
    return BlpSolution{std::move(opt->value), std::move(opt->x)};
}

}  // namespace

BlpSolution solve_blp(const Language& lang, const Instance& inst,
                      long long cap) {
    return solve_relaxation(build_blp(lang, inst, cap));
}

TightnessReport check_tightness(const Language& lang, const Instance& inst,
                                long long blp_cap, long long enum_cap) {
    TightnessReport report;
    report.blp_value = solve_blp(lang, inst, blp_cap).value;
    report.integral_value = brute_force_minimum(lang, inst, enum_cap).first;
    report.gap = report.integral_value - report.blp_value;
    report.tight = report.gap == 0;
    return report;
}

Labeling extract_labeling(const Language& lang, const Instance& inst,
                          long long cap) {
    BlpRelaxation relax = build_blp(lang, inst, cap);
    const Rational target = solve_relaxation(relax).value;
    const int d = relax.domain_size;
    const long long vars = relax.lp.c.size();

    Labeling fixed;
    for (int v = 0; v < inst.node_count; ++v) {
        bool pinned = false;
        for (Label a = 0; a < d && !pinned; ++a) {
            Vector row(vars, Rational(0));
            row[relax.node_var(v, a)] = 1;
            relax.lp.a.push_back(std::move(row));
            relax.lp.b.push_back(1);

            LpOutcome outcome = solve(relax.lp);
            const auto* opt = std::get_if<LpOptimal>(&outcome);
            if (opt && opt->value == target) {
                fixed.push_back(a);
                pinned = true;  // the pin row stays for later nodes
            } else {
                relax.lp.a.pop_back();
                relax.lp.b.pop_back();
            }
        }
        if (!pinned)
            throw InputError("no label for node " + std::to_string(v) +
                             " preserves the relaxation optimum; the "
                             "instance is not tight");
    }

    if (evaluate_instance(lang, inst, fixed) != target)
        throw std::logic_error("pinned labeling does not match the optimum");
    return fixed;
}

}  // namespace vcsp
