#include "vcsplp/stp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vcsp {

namespace {

void require_binary_pair(const MultimorphismPair& pair) {
    if (pair.meet.arity() != 2 || pair.join.arity() != 2)
        throw InputError("multimorphism pair operations must be binary");
    if (pair.meet.domain_size() != pair.join.domain_size())
        throw InputError("meet and join disagree on the domain");
}

Label op2(const Operation& op, Label a, Label b) {
    const Label args[2] = {a, b};
    return op(args);
}

std::string arc_name(Label a, Label b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

void validate_tournament(const Tournament& t) {
    const int d = t.domain_size;
    if (d < 1) throw InputError("domain size must be >= 1");
    if (static_cast<int>(t.edge.size()) != d)
        throw InputError("tournament has the wrong number of rows");
    for (const auto& row : t.edge)
        if (static_cast<int>(row.size()) != d)
            throw InputError("tournament has the wrong number of columns");
    for (int a = 0; a < d; ++a) {
        if (t.edge[a][a]) throw InputError("tournament has a self-loop");
        for (int b = a + 1; b < d; ++b)
            if (t.edge[a][b] == t.edge[b][a])
                throw InputError("tournament must orient every pair exactly once");
    }
}

bool is_stp(const MultimorphismPair& pair) {
    require_binary_pair(pair);
    const int d = pair.meet.domain_size();
    for (Label a = 0; a < d; ++a)
        for (Label b = 0; b < d; ++b) {
            const Label lo = op2(pair.meet, a, b);
            const Label hi = op2(pair.join, a, b);
            if (lo != op2(pair.meet, b, a)) return false;
            if (hi != op2(pair.join, b, a)) return false;
            if (std::minmax(lo, hi) != std::minmax(a, b)) return false;
        }
    return true;
}

Tournament pair_to_tournament(const MultimorphismPair& pair) {
    if (!is_stp(pair))
        throw InputError("pair is not commutative and conservative");
    const int d = pair.meet.domain_size();
    Tournament t;
    t.domain_size = d;
    t.edge.assign(d, std::vector<bool>(d, false));
    for (Label a = 0; a < d; ++a)
        for (Label b = a + 1; b < d; ++b) {
            if (op2(pair.meet, a, b) == a)
                t.edge[a][b] = true;
            else
                t.edge[b][a] = true;
        }
    return t;
}

MultimorphismPair tournament_to_pair(const Tournament& t) {
    validate_tournament(t);
    const int d = t.domain_size;
    return MultimorphismPair{
        operation_from(d, 2,
                       [&](const Labeling& ab) {
                           if (ab[0] == ab[1]) return ab[0];
                           return t.edge[ab[0]][ab[1]] ? ab[0] : ab[1];
                       }),
        operation_from(d, 2, [&](const Labeling& ab) {
            if (ab[0] == ab[1]) return ab[0];
            return t.edge[ab[0]][ab[1]] ? ab[1] : ab[0];
        })};
}

bool admits_multimorphism(const Language& lang, const MultimorphismPair& pair,
                          MultimorphismWitness* witness, long long cap) {
    require_binary_pair(pair);
    validate_language(lang);
    const int d = lang.domain.size;
    if (pair.meet.domain_size() != d)
        throw InputError("pair domain disagrees with language");

    for (std::size_t fi = 0; fi < lang.functions.size(); ++fi) {
        const CostFunction& f = lang.functions[fi];
        const int n = f.arity();
        long long per, count;
        try {
            per = checked_pow(d, n, cap);
            count = checked_pow(d, 2 * n, cap);
        } catch (const CapError&) {
            throw CapError("multimorphism check for '" + lang.names[fi] +
                           "' needs " + std::to_string(d) + "^" +
                           std::to_string(2 * n) + " labeling pairs, over the cap");
        }

        Labeling lo(n), hi(n);
        for (long long idx = 0; idx < count; ++idx) {
            const Labeling x = index_tuple(idx / per, n, d);
            const Labeling y = index_tuple(idx % per, n, d);
            for (int v = 0; v < n; ++v) {
                lo[v] = op2(pair.meet, x[v], y[v]);
                hi[v] = op2(pair.join, x[v], y[v]);
            }
            if (f(lo) + f(hi) > f(x) + f(y)) {
                if (witness) {
                    witness->function = static_cast<int>(fi);
                    witness->x = x;
                    witness->y = y;
                }
                return false;
            }
        }
    }
    return true;
}

FlipResult flip_pair(const Language& lang, const MultimorphismPair& pair,
                     const Flip& flip, long long cap) {
    const Tournament t = pair_to_tournament(pair);
    const int d = t.domain_size;
    const Label a = flip.from, b = flip.to, c = flip.witness;
    for (Label v : {a, b, c})
        if (v < 0 || v >= d) throw InputError("flip label out of domain");
    if (a == b || b == c || a == c)
        throw InputError("flip labels must be three distinct labels");
    if (!t.edge[a][b] || !t.edge[b][c] || !t.edge[c][a])
        throw InputError("arcs " + arc_name(a, b) + ", " + arc_name(b, c) +
                         ", " + arc_name(c, a) + " do not form a cycle of the "
                         "pair's tournament");
    if (!admits_multimorphism(lang, pair, nullptr, cap))
        throw InputError("language does not admit the pair being flipped");

    // Halfway point of the flip: on the ordered pairs (a,b) and (b,a) the
    // operations leave their arguments untouched, elsewhere they agree with
    // meet and join. Commutativity is given up, the defining inequality is
    // not.
    MultimorphismPair intermediate{
        operation_from(d, 2,
                       [&](const Labeling& xy) {
                           if ((xy[0] == a && xy[1] == b) ||
                               (xy[0] == b && xy[1] == a))
                               return xy[0];
                           return op2(pair.meet, xy[0], xy[1]);
                       }),
        operation_from(d, 2, [&](const Labeling& xy) {
            if ((xy[0] == a && xy[1] == b) || (xy[0] == b && xy[1] == a))
                return xy[1];
            return op2(pair.join, xy[0], xy[1]);
        })};

    Tournament reversed = t;
    reversed.edge[a][b] = false;
    reversed.edge[b][a] = true;
    MultimorphismPair flipped = tournament_to_pair(reversed);

    MultimorphismWitness w;
    if (!admits_multimorphism(lang, intermediate, &w, cap))
        throw std::logic_error(
            "flip of arc " + arc_name(a, b) +
            ": the intermediate pair lost admittance on '" +
            lang.names[w.function] + "'");
    if (!admits_multimorphism(lang, flipped, &w, cap))
        throw std::logic_error("flip of arc " + arc_name(a, b) +
                               ": the flipped pair lost admittance on '" +
                               lang.names[w.function] + "'");
    return FlipResult{std::move(intermediate), std::move(flipped)};
}

AcyclifyResult acyclify(const Tournament& t) {
    validate_tournament(t);
    const int d = t.domain_size;
    AcyclifyResult result;
    result.tournament = t;
    auto& edge = result.tournament.edge;

    // Grow an acyclic induced part one label at a time. After inserting c,
    // every remaining cycle through {0..c} yields a 3-cycle c -> x -> y -> c
    // with x, y already placed, and reversing (c, x) removes an out-arc of c
    // without touching the part already made acyclic. The smallest such
    // 3-cycle is flipped first, which fixes the flip sequence.
    for (Label c = 2; c < d; ++c) {
        for (;;) {
            Label x = -1, y = -1;
            for (Label i = 0; i < c && x < 0; ++i) {
                if (!edge[c][i]) continue;
                for (Label j = 0; j < c; ++j) {
                    if (j == i || !edge[i][j] || !edge[j][c]) continue;
                    x = i;
                    y = j;
                    break;
                }
            }
            if (x < 0) break;
            edge[c][x] = false;
            edge[x][c] = true;
            result.flips.push_back(Flip{c, x, y});
        }
    }

    // An acyclic tournament is transitive, so out-degrees are all distinct
    // and sorting by them descending is the topological order.
    std::vector<int> out_degree(d, 0);
    for (Label a = 0; a < d; ++a)
        for (Label b = 0; b < d; ++b)
            if (edge[a][b]) ++out_degree[a];
    result.order.resize(d);
    std::iota(result.order.begin(), result.order.end(), 0);
    std::sort(result.order.begin(), result.order.end(),
              [&](Label a, Label b) { return out_degree[a] > out_degree[b]; });
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!edge[result.order[i]][result.order[j]])
                throw std::logic_error("flip sequence left the tournament cyclic");
    return result;
}

StpConversion stp_to_submodular(const Language& lang,
                                const MultimorphismPair& pair, long long cap) {
    if (!is_stp(pair))
        throw InputError("pair is not commutative and conservative");
    if (!admits_multimorphism(lang, pair, nullptr, cap))
        throw InputError("language does not admit the pair");

    const AcyclifyResult plan = acyclify(pair_to_tournament(pair));
    StpConversion conv{plan.flips, plan.order, pair};
    for (const Flip& flip : conv.flips)
        conv.pair = flip_pair(lang, conv.pair, flip, cap).flipped;

    const MultimorphismPair expect = tournament_to_pair(plan.tournament);
    if (conv.pair.meet != expect.meet || conv.pair.join != expect.join)
        throw std::logic_error("replayed flips disagree with the planned result");
    return conv;
}

}  // namespace vcsp
