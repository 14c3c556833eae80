#include "vcsplp/lift.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "vcsplp/ratlp.hpp"

namespace vcsp {

Labeling tuple_permute(const Labeling& alpha, const std::vector<int>& pi) {
    const int m = static_cast<int>(alpha.size());
    if (static_cast<int>(pi.size()) != m)
        throw InputError("permutation length does not match tuple length");
    std::vector<bool> seen(m, false);
    for (int p : pi) {
        if (p < 0 || p >= m || seen[p])
            throw InputError("not a permutation");
        seen[p] = true;
    }
    Labeling out(m);
    for (int i = 0; i < m; ++i) out[i] = alpha[pi[i]];
    return out;
}

Labeling tuple_s(const Labeling& alpha, const Operation& s) {
    const int m = static_cast<int>(alpha.size());
    if (s.arity() != m - 1)
        throw InputError("operation arity must be one below the tuple length");
    Labeling out(m);
    Labeling rest(m - 1);
    for (int i = 0; i < m; ++i) {
        int w = 0;
        for (int j = 0; j < m; ++j)
            if (j != i) rest[w++] = alpha[j];
        out[i] = s(rest);
    }
    return out;
}

Mapping mapping_s(const Mapping& g, const Operation& s) {
    validate_mapping(g);
    const int m = g.size();
    if (s.arity() != m - 1)
        throw InputError("generator arity must be one below the mapping width");
    if (s.domain_size() != g.domain_size())
        throw InputError("generator and mapping domains differ");

    const int d = g.domain_size();
    const long long count = checked_pow(d, g.arity(), kDefaultEnumerationCap);
    std::vector<std::vector<Label>> tables(m, std::vector<Label>(count));
    Labeling image(m), rest(m - 1);
    for (long long idx = 0; idx < count; ++idx) {
        for (int j = 0; j < m; ++j) image[j] = g.ops[j].value_at(idx);
        for (int i = 0; i < m; ++i) {
            int w = 0;
            for (int j = 0; j < m; ++j)
                if (j != i) rest[w++] = image[j];
            tables[i][idx] = s(rest);
        }
    }
    Mapping out;
    for (int i = 0; i < m; ++i)
        out.ops.emplace_back(d, g.arity(), std::move(tables[i]));
    return out;
}

MappingGraph generate_V(const FractionalPolymorphism& omega, int m,
                        long long cap) {
    validate_fpoly(omega);
    if (m < 2) throw InputError("mapping arity must be >= 2");
    if (omega.arity_out != 1)
        throw InputError("generator distribution must produce single labelings");
    if (omega.arity_in != m - 1)
        throw InputError("generator arity must be one below the target arity");
    if (!has_symmetric_support(omega))
        throw InputError("generator support must be symmetric");

    const int d = omega.support.front().first.domain_size();

    MappingGraph graph;
    graph.arity = m;
    graph.seed = omega;
    graph.vertices.push_back(identity_mapping(d, m));

    std::map<Mapping, int> index_of;
    index_of[graph.vertices.front()] = 0;

    std::map<std::pair<int, int>, std::pair<Rational, std::vector<int>>> agg;
    for (std::size_t v = 0; v < graph.vertices.size(); ++v) {
        for (std::size_t si = 0; si < omega.support.size(); ++si) {
            const Operation& s = omega.support[si].first.ops.front();
            Mapping h = mapping_s(graph.vertices[v], s);
            auto [it, inserted] =
                index_of.try_emplace(std::move(h), static_cast<int>(graph.vertices.size()));
            if (inserted) {
                if (static_cast<long long>(graph.vertices.size()) >= cap)
                    throw CapError("mapping count exceeds cap " + std::to_string(cap));
                graph.vertices.push_back(it->first);
            }
            auto& entry = agg[{static_cast<int>(v), it->second}];
            entry.first += omega.support[si].second;
            entry.second.push_back(static_cast<int>(si));
        }
    }
    for (auto& [key, val] : agg)
        graph.edges.push_back(
            {key.first, key.second, std::move(val.first), std::move(val.second)});
    return graph;
}

SinkDecomposition sink_decomposition(const MappingGraph& graph) {
    const int n = static_cast<int>(graph.vertices.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : graph.edges) adj[e.source].push_back(e.target);

    // Iterative Tarjan.
    std::vector<int> order(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int next_order = 0, comp_count = 0;
    for (int root = 0; root < n; ++root) {
        if (order[root] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> dfs{{root, 0}};
        while (!dfs.empty()) {
            const int v = dfs.back().first;
            std::size_t& child = dfs.back().second;
            if (child == 0) {
                order[v] = low[v] = next_order++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (child < adj[v].size()) {
                const int w = adj[v][child++];
                if (order[w] < 0)
                    dfs.emplace_back(w, 0);
                else if (on_stack[w])
                    low[v] = std::min(low[v], order[w]);
            } else {
                if (low[v] == order[v]) {
                    for (;;) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
                dfs.pop_back();
                if (!dfs.empty())
                    low[dfs.back().first] = std::min(low[dfs.back().first], low[v]);
            }
        }
    }

    std::vector<bool> is_sink(comp_count, true);
    for (const auto& e : graph.edges)
        if (comp[e.source] != comp[e.target]) is_sink[comp[e.source]] = false;

    std::vector<std::vector<int>> groups(comp_count);
    for (int v = 0; v < n; ++v) groups[comp[v]].push_back(v);

    std::vector<int> sink_comps;
    for (int c = 0; c < comp_count; ++c)
        if (is_sink[c]) sink_comps.push_back(c);
    std::sort(sink_comps.begin(), sink_comps.end(),
              [&](int a, int b) { return groups[a].front() < groups[b].front(); });

    SinkDecomposition dec;
    for (int c : sink_comps) dec.sinks.push_back(groups[c]);
    for (int v = 0; v < n; ++v)
        if (!is_sink[comp[v]]) dec.transient.push_back(v);
    return dec;
}

FractionalPolymorphism single_step_transform(const FractionalPolymorphism& rho,
                                             const Mapping& g,
                                             const FractionalPolymorphism& omega) {
    validate_fpoly(rho);
    validate_fpoly(omega);
    if (rho.arity_in != rho.arity_out)
        throw InputError("distribution must map m-tuples to m-tuples");
    if (omega.arity_out != 1 || omega.arity_in != rho.arity_in - 1)
        throw InputError("generator arity must be one below the distribution arity");

    Rational transfer = 0;
    bool found = false;
    std::vector<std::pair<Mapping, Rational>> support;
    for (const auto& [h, w] : rho.support) {
        if (h == g) {
            transfer = w;
            found = true;
        } else {
            support.emplace_back(h, w);
        }
    }
    if (!found) throw InputError("mapping not in the support");

    for (const auto& [s, ws] : omega.support)
        support.emplace_back(mapping_s(g, s.ops.front()), transfer * ws);
    return make_fpoly(rho.arity_in, rho.arity_out, std::move(support));
}

FractionalPolymorphism limit_distribution(const MappingGraph& graph,
                                          const SinkDecomposition& dec) {
    const int n = static_cast<int>(graph.vertices.size());
    std::vector<int> sink_of(n, -1), tpos(n, -1);
    for (std::size_t si = 0; si < dec.sinks.size(); ++si)
        for (int v : dec.sinks[si]) sink_of[v] = static_cast<int>(si);
    for (std::size_t ti = 0; ti < dec.transient.size(); ++ti)
        tpos[dec.transient[ti]] = static_cast<int>(ti);
    const int t = static_cast<int>(dec.transient.size());

    // Probability of ending in each sink when starting from the identity.
    Vector absorption(dec.sinks.size(), Rational(0));
    if (sink_of[0] >= 0) {
        // The identity lies in a sink, so the whole graph is that sink.
        absorption[sink_of[0]] = 1;
    } else {
        Matrix iq(t, Vector(t, Rational(0)));
        for (int i = 0; i < t; ++i) iq[i][i] = 1;
        for (const auto& e : graph.edges)
            if (tpos[e.source] >= 0 && tpos[e.target] >= 0)
                iq[tpos[e.source]][tpos[e.target]] -= e.weight;
        for (std::size_t si = 0; si < dec.sinks.size(); ++si) {
            Vector r(t, Rational(0));
            for (const auto& e : graph.edges)
                if (tpos[e.source] >= 0 && sink_of[e.target] == static_cast<int>(si))
                    r[tpos[e.source]] += e.weight;
            const auto u = linear_solve(iq, r);
            if (!u) throw std::logic_error("absorption system is singular");
            absorption[si] = (*u)[tpos[0]];
        }
    }

    std::vector<std::pair<Mapping, Rational>> support;
    for (std::size_t si = 0; si < dec.sinks.size(); ++si) {
        const std::vector<int>& sink = dec.sinks[si];
        const int h = static_cast<int>(sink.size());
        std::vector<int> hpos(n, -1);
        for (int k = 0; k < h; ++k) hpos[sink[k]] = k;

        // Unique stationary distribution of the sink's weights: the kernel
        // row of (W^T - I) normalized to total 1.
        Matrix a(h + 1, Vector(h, Rational(0)));
        for (int k = 0; k < h; ++k) a[k][k] = -1;
        for (const auto& e : graph.edges)
            if (hpos[e.source] >= 0 && hpos[e.target] >= 0)
                a[hpos[e.target]][hpos[e.source]] += e.weight;
        for (int k = 0; k < h; ++k) a[h][k] = 1;
        Vector rhs(h + 1, Rational(0));
        rhs[h] = 1;
        const auto pi = linear_solve(a, rhs);
        if (!pi) throw std::logic_error("stationary system is singular");

        for (int k = 0; k < h; ++k) {
            const Rational weight = absorption[si] * (*pi)[k];
            if (weight != 0)
                support.emplace_back(graph.vertices[sink[k]], weight);
        }
    }
    return make_fpoly(graph.arity, graph.arity, std::move(support));
}

namespace {

// Rows of the balance system shared by both certificate forms: for each sink
// vertex g (position gk) and index i, in-flow of lambda[.,i] along sink-
// internal edges into g minus the spread of lambda[g,.] over the other m-1
// indices. Column layout: variable (gk, i) at gk*m + i.
Matrix balance_rows(const MappingGraph& graph, const std::vector<int>& sink,
                    int extra_cols) {
    const int m = graph.arity;
    const int h = static_cast<int>(sink.size());
    std::vector<int> hpos(graph.vertices.size(), -1);
    for (int k = 0; k < h; ++k) hpos[sink[k]] = k;

    const Rational spread = Rational(1) / (m - 1);
    Matrix rows(static_cast<std::size_t>(h) * m,
                Vector(static_cast<std::size_t>(h) * m + extra_cols, Rational(0)));
    for (int gk = 0; gk < h; ++gk) {
        for (int i = 0; i < m; ++i) {
            Vector& row = rows[static_cast<std::size_t>(gk) * m + i];
            for (int j = 0; j < m; ++j)
                if (j != i) row[static_cast<std::size_t>(gk) * m + j] -= spread;
        }
    }
    for (const auto& e : graph.edges) {
        if (hpos[e.source] < 0 || hpos[e.target] < 0) continue;
        for (int i = 0; i < m; ++i)
            rows[static_cast<std::size_t>(hpos[e.target]) * m + i]
                [static_cast<std::size_t>(hpos[e.source]) * m + i] += e.weight;
    }
    return rows;
}

std::string farkas_to_string(const Vector& y) {
    std::string out = "[";
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i) out += ", ";
        out += rational_to_string(y[i]);
    }
    return out + "]";
}

Vector solve_certificate(LinearProgram&& lp, const char* what) {
    LpOutcome outcome = solve(lp);
    if (const auto* inf = std::get_if<LpInfeasible>(&outcome))
        throw std::logic_error(std::string(what) +
                               " system is infeasible; dual certificate " +
                               farkas_to_string(inf->y));
    return std::get<LpOptimal>(outcome).x;
}

int sink_position(const std::vector<int>& sink, int vertex, const char* what) {
    const auto it = std::find(sink.begin(), sink.end(), vertex);
    if (it == sink.end())
        throw InputError(std::string(what) + " vertex is not in the sink");
    return static_cast<int>(it - sink.begin());
}

}  // namespace

SinkCertificate sink_certificate_for_mappings(const MappingGraph& graph,
                                              const std::vector<int>& sink,
                                              int v_prime, int v_second) {
    const int m = graph.arity;
    const int h = static_cast<int>(sink.size());
    const int kp = sink_position(sink, v_prime, "first");
    const int ks = sink_position(sink, v_second, "second");

    LinearProgram lp;
    lp.a = balance_rows(graph, sink, 0);
    lp.b.assign(lp.a.size(), Rational(0));
    for (int i = 0; i < m; ++i) {
        lp.b[static_cast<std::size_t>(kp) * m + i] += 1;
        lp.b[static_cast<std::size_t>(ks) * m + i] -= 1;
    }
    lp.c.assign(lp.a.front().size(), Rational(0));

    const Vector x = solve_certificate(std::move(lp), "mapping-pair balance");
    SinkCertificate cert;
    cert.sink = sink;
    cert.io_lambda.assign(h, Vector(m));
    for (int gk = 0; gk < h; ++gk)
        for (int i = 0; i < m; ++i)
            cert.io_lambda[gk][i] = x[static_cast<std::size_t>(gk) * m + i];
    return cert;
}

SinkCertificate sink_certificate_for_indices(const MappingGraph& graph,
                                             const std::vector<int>& sink,
                                             int i_prime, int i_second) {
    const int m = graph.arity;
    const int h = static_cast<int>(sink.size());
    if (i_prime < 0 || i_prime >= m || i_second < 0 || i_second >= m ||
        i_prime == i_second)
        throw InputError("index pair must be two distinct indices below the arity");

    // Solve once for the pair (0, 1); variables are the h*m balance weights
    // followed by the h per-vertex weights.
    LinearProgram lp;
    lp.a = balance_rows(graph, sink, h);
    for (int gk = 0; gk < h; ++gk) {
        lp.a[static_cast<std::size_t>(gk) * m + 0]
            [static_cast<std::size_t>(h) * m + gk] -= 1;
        lp.a[static_cast<std::size_t>(gk) * m + 1]
            [static_cast<std::size_t>(h) * m + gk] += 1;
    }
    Vector total(static_cast<std::size_t>(h) * m + h, Rational(0));
    for (int gk = 0; gk < h; ++gk)
        total[static_cast<std::size_t>(h) * m + gk] = 1;
    lp.a.push_back(std::move(total));
    lp.b.assign(lp.a.size(), Rational(0));
    lp.b.back() = 1;
    lp.c.assign(lp.a.front().size(), Rational(0));

    const Vector x = solve_certificate(std::move(lp), "index-pair balance");

    SinkCertificate cert;
    cert.sink = sink;
    cert.i_prime = i_prime;
    cert.i_second = i_second;
    cert.node_lambda.resize(h);
    for (int gk = 0; gk < h; ++gk)
        cert.node_lambda[gk] = x[static_cast<std::size_t>(h) * m + gk];

    // Transport to the requested pair: pi maps i_prime to 0 and i_second to
    // 1 with the remaining indices kept in ascending order, and the new
    // weight at (g, i) is the solved weight at (g, pi(i)). The per-vertex
    // weights stay untouched, so they are shared across all index pairs.
    std::vector<int> pi(m);
    pi[i_prime] = 0;
    pi[i_second] = 1;
    int next = 2;
    for (int i = 0; i < m; ++i)
        if (i != i_prime && i != i_second) pi[i] = next++;

    cert.io_lambda.assign(h, Vector(m));
    for (int gk = 0; gk < h; ++gk)
        for (int i = 0; i < m; ++i)
            cert.io_lambda[gk][i] = x[static_cast<std::size_t>(gk) * m + pi[i]];
    return cert;
}

std::vector<Labeling> indexed_labelings(const Mapping& g,
                                        const std::vector<Labeling>& xs) {
    return apply_mapping(g, xs);
}

Rational F_lambda(const CostFunction& f, const MappingGraph& graph,
                  const std::vector<int>& sink, const Vector& lambda, int i,
                  const std::vector<Labeling>& xs) {
    if (lambda.size() != sink.size())
        throw InputError("weight vector length does not match the sink");
    if (i < 0 || i >= graph.arity) throw InputError("index out of range");
    Rational total = 0;
    for (std::size_t k = 0; k < sink.size(); ++k) {
        const std::vector<Labeling> ys =
            apply_mapping(graph.vertices[sink[k]], xs);
        total += lambda[k] * f(ys[i]);
    }
    return total;
}

Mapping sorting_map(int domain_size, int m, const std::vector<Label>& order) {
    if (static_cast<int>(order.size()) != domain_size)
        throw InputError("order must list every label once");
    std::vector<int> rank(domain_size, -1);
    for (int r = 0; r < domain_size; ++r) {
        const Label a = order[r];
        if (a < 0 || a >= domain_size || rank[a] >= 0)
            throw InputError("order must list every label once");
        rank[a] = r;
    }
    Mapping p;
    for (int j = 0; j < m; ++j)
        p.ops.push_back(operation_from(domain_size, m, [&](const Labeling& args) {
            Labeling sorted = args;
            std::sort(sorted.begin(), sorted.end(),
                      [&](Label a, Label b) { return rank[a] < rank[b]; });
            return sorted[j];
        }));
    return p;
}

namespace {

// outer(inner(alpha)) with both mappings m -> m.
Mapping compose(const Mapping& outer, const Mapping& inner) {
    const int d = inner.domain_size();
    const int m = inner.size();
    const long long count = checked_pow(d, inner.arity(), kDefaultEnumerationCap);
    std::vector<std::vector<Label>> tables(outer.size(),
                                           std::vector<Label>(count));
    Labeling image(m);
    for (long long idx = 0; idx < count; ++idx) {
        for (int j = 0; j < m; ++j) image[j] = inner.ops[j].value_at(idx);
        for (int j = 0; j < outer.size(); ++j) tables[j][idx] = outer.ops[j](image);
    }
    Mapping out;
    for (int j = 0; j < outer.size(); ++j)
        out.ops.emplace_back(d, inner.arity(), std::move(tables[j]));
    return out;
}

}  // namespace

FractionalPolymorphism symmetrize(const FractionalPolymorphism& rho,
                                  const Mapping& p) {
    validate_fpoly(rho);
    validate_mapping(p);
    if (rho.arity_in != rho.arity_out)
        throw InputError("distribution must map m-tuples to m-tuples");
    if (p.size() != rho.arity_out || p.arity() != rho.arity_in)
        throw InputError("sorting map arity disagrees with the distribution");

    std::vector<std::pair<Mapping, Rational>> support;
    for (const auto& [g, w] : rho.support)
        support.emplace_back(compose(p, g), w);
    return make_fpoly(rho.arity_in, rho.arity_out, std::move(support));
}

FractionalPolymorphism lift_once(const Language& lang,
                                 const FractionalPolymorphism& omega,
                                 long long cap) {
    validate_language(lang);
    validate_fpoly(omega);
    if (omega.arity_in < 2)
        throw InputError("seed arity must be >= 2");
    if (omega.arity_out != 1)
        throw InputError("seed must produce single labelings");
    if (!has_symmetric_support(omega))
        throw InputError("seed support must be fully symmetric");
    const int d = omega.support.front().first.domain_size();
    if (d != lang.domain.size)
        throw InputError("seed domain disagrees with the language");

    const int m = omega.arity_in + 1;
    const MappingGraph graph = generate_V(omega, m, cap);
    const SinkDecomposition dec = sink_decomposition(graph);
    const FractionalPolymorphism rho = limit_distribution(graph, dec);

    std::vector<Label> order(d);
    std::iota(order.begin(), order.end(), 0);
    const FractionalPolymorphism sym = symmetrize(rho, sorting_map(d, m, order));
    FractionalPolymorphism out = collapse(sym);
    if (!admits(lang, out))
        throw std::logic_error("lifted distribution failed its admittance check");
    return out;
}

FractionalPolymorphism lift_to(const Language& lang,
                               const FractionalPolymorphism& seed, int m,
                               long long cap) {
    validate_fpoly(seed);
    if (m < 2) throw InputError("target arity must be >= 2");
    if (seed.arity_in < 2) throw InputError("seed arity must be >= 2");
    if (seed.arity_out != 1)
        throw InputError("seed must produce single labelings");
    if (!has_symmetric_support(seed))
        throw InputError("seed support must be fully symmetric");

    FractionalPolymorphism cur = seed;
    if (m >= cur.arity_in) {
        while (cur.arity_in < m) cur = lift_once(lang, cur, cap);
        return cur;
    }
    const int target = (seed.arity_in + m - 1) / m * m;
    while (cur.arity_in < target) cur = lift_once(lang, cur, cap);
    cur = reduce_arity(cur, m);
    if (!admits(lang, cur))
        throw std::logic_error("reduced distribution failed its admittance check");
    return cur;
}

}  // namespace vcsp
