#include "vcsplp/ratlp.hpp"

#include <cassert>
#include <string>

namespace vcsp {

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("dot-product length mismatch");
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

namespace {

void check_dimensions(const Matrix& a, const Vector& b, std::size_t vars) {
    if (a.size() != b.size())
        throw InputError("constraint matrix and rhs row counts differ");
    for (const Vector& row : a)
        if (row.size() != vars)
            throw InputError("constraint row width does not match variable count");
}

// Simplex tableau in B^{-1}A | B^{-1}b form with an explicit basis map.
struct Tableau {
    Matrix rows;
    Vector rhs;
    std::vector<int> basis;  // basis[i] = column basic in row i
    int cols = 0;
};

void pivot(Tableau& t, int row, int col) {
    const Rational inv = 1 / t.rows[row][col];
    for (int j = 0; j < t.cols; ++j) t.rows[row][j] *= inv;
    t.rhs[row] *= inv;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (static_cast<int>(i) == row) continue;
        const Rational factor = t.rows[i][col];
        if (factor == 0) continue;
        for (int j = 0; j < t.cols; ++j)
            t.rows[i][j] -= factor * t.rows[row][j];
        t.rhs[i] -= factor * t.rhs[row];
    }
    t.basis[row] = col;
}

// Reduced costs r_j = cost_j - sum_i cost_{basis[i]} * T[i][j].
Vector reduced_costs(const Tableau& t, const Vector& cost) {
    Vector r = cost;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rational cb = cost[t.basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j < t.cols; ++j) r[j] -= cb * t.rows[i][j];
    }
    return r;
}

// Bland's rule iteration until optimal (returns -1) or, when the entering
// column has no positive entry, returns that column (unbounded direction).
int run_simplex(Tableau& t, const Vector& cost) {
    for (;;) {
        const Vector r = reduced_costs(t, cost);
        int entering = -1;
        for (int j = 0; j < t.cols; ++j) {
            if (r[j] < 0) {
                entering = j;
                break;
            }
        }
        if (entering < 0) return -1;

        int leaving_row = -1;
        Rational best_ratio;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            if (t.rows[i][entering] <= 0) continue;
            const Rational ratio = t.rhs[i] / t.rows[i][entering];
            if (leaving_row < 0 || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[i] < t.basis[leaving_row])) {
                leaving_row = static_cast<int>(i);
                best_ratio = ratio;
            }
        }
        if (leaving_row < 0) return entering;
        pivot(t, leaving_row, entering);
    }
}

struct Phase1Result {
    Tableau tableau;              // artificial columns already removed
    std::optional<Vector> farkas; // set when infeasible
};

// Phase 1 on A x = b with per-row sign flips making the rhs nonnegative.
// On infeasibility the Farkas vector is recovered from the reduced costs of
// the artificial columns and the sign flips are undone.
Phase1Result phase_one(const Matrix& a, const Vector& b, int vars) {
    const int m = static_cast<int>(a.size());

    std::vector<int> sign(m, 1);
    Tableau t;
    t.cols = vars + m;
    t.rows.assign(m, Vector(t.cols, Rational(0)));
    t.rhs.resize(m);
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0) sign[i] = -1;
        for (int j = 0; j < vars; ++j) t.rows[i][j] = sign[i] * a[i][j];
        t.rows[i][vars + i] = 1;
        t.rhs[i] = sign[i] * b[i];
        t.basis[i] = vars + i;
    }

    Vector cost(t.cols, Rational(0));
    for (int i = 0; i < m; ++i) cost[vars + i] = 1;

    const int direction = run_simplex(t, cost);
    assert(direction < 0 && "phase-1 objective is bounded below by zero");
    (void)direction;

    Rational value = 0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= vars) value += t.rhs[i];

    Phase1Result result;
    if (value > 0) {
        // Dual of phase 1: y_i = 1 - reduced cost of artificial i, giving
        // y.(SA) <= 0 and y.(Sb) > 0; multiplying by the sign flips yields
        // the certificate for the original rows.
        const Vector r = reduced_costs(t, cost);
        Vector y(m);
        for (int i = 0; i < m; ++i) y[i] = sign[i] * (1 - r[vars + i]);
        result.farkas = std::move(y);
        return result;
    }

    // Drive leftover artificials out of the basis; rows where no original
    // column can enter are redundant and dropped.
    std::vector<int> keep;
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < vars) {
            keep.push_back(i);
            continue;
        }
        int col = -1;
        for (int j = 0; j < vars && col < 0; ++j) {
            bool basic = false;
            for (int bi : t.basis) basic = basic || (bi == j);
            if (!basic && t.rows[i][j] != 0) col = j;
        }
        if (col >= 0) {
            pivot(t, i, col);
            keep.push_back(i);
        }
    }
    if (static_cast<int>(keep.size()) < m) {
        Tableau trimmed;
        trimmed.cols = t.cols;
        for (int i : keep) {
            trimmed.rows.push_back(std::move(t.rows[i]));
            trimmed.rhs.push_back(std::move(t.rhs[i]));
            trimmed.basis.push_back(t.basis[i]);
        }
        t = std::move(trimmed);
    }

    // Truncate the artificial columns.
    for (Vector& row : t.rows) row.resize(vars);
    t.cols = vars;
    result.tableau = std::move(t);
    return result;
}

Vector basic_solution(const Tableau& t, int vars) {
    Vector x(vars, Rational(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) x[t.basis[i]] = t.rhs[i];
    return x;
}

Matrix canonical_copy(const Matrix& a) {
    Matrix out = a;
    for (Vector& row : out)
        for (Rational& r : row) r.canonicalize();
    return out;
}

Vector canonical_copy(const Vector& v) {
    Vector out = v;
    for (Rational& r : out) r.canonicalize();
    return out;
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
    const Matrix a = canonical_copy(lp.a);
    const Vector b = canonical_copy(lp.b);
    const Vector c = canonical_copy(lp.c);
    const int vars = static_cast<int>(c.size());
    check_dimensions(a, b, c.size());

    Phase1Result phase1 = phase_one(a, b, vars);
    if (phase1.farkas) return LpInfeasible{std::move(*phase1.farkas)};

    Tableau& t = phase1.tableau;
    const int direction = run_simplex(t, c);
    if (direction >= 0) {
        Vector ray(vars, Rational(0));
        ray[direction] = 1;
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            ray[t.basis[i]] = -t.rows[i][direction];
        return LpUnbounded{std::move(ray)};
    }

    Vector x = basic_solution(t, vars);
    Rational value = dot(c, x);
    return LpOptimal{std::move(x), std::move(value)};
}

std::variant<Vector, LpInfeasible> feasible_point(const Matrix& a,
                                                  const Vector& b) {
    const Matrix ca = canonical_copy(a);
    const Vector cb = canonical_copy(b);
    const int vars = ca.empty() ? 0 : static_cast<int>(ca[0].size());
    check_dimensions(ca, cb, vars);

    Phase1Result phase1 = phase_one(ca, cb, vars);
    if (phase1.farkas) return LpInfeasible{std::move(*phase1.farkas)};
    return basic_solution(phase1.tableau, vars);
}

bool verify_outcome(const LinearProgram& lp, const LpOutcome& outcome) {
    const Matrix a = canonical_copy(lp.a);
    const Vector b = canonical_copy(lp.b);
    const Vector c = canonical_copy(lp.c);
    if (a.size() != b.size()) return false;
    for (const Vector& row : a)
        if (row.size() != c.size()) return false;

    if (const auto* opt = std::get_if<LpOptimal>(&outcome)) {
        if (opt->x.size() != c.size()) return false;
        for (const Rational& v : opt->x)
            if (v < 0) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (dot(a[i], opt->x) != b[i]) return false;
        return dot(c, opt->x) == opt->value;
    }
    if (const auto* inf = std::get_if<LpInfeasible>(&outcome)) {
        if (inf->y.size() != a.size()) return false;
        for (std::size_t j = 0; j < c.size(); ++j) {
            Rational column = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                column += inf->y[i] * a[i][j];
            if (column > 0) return false;
        }
        Rational yb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) yb += inf->y[i] * b[i];
        return yb > 0;
    }
    const auto& unb = std::get<LpUnbounded>(outcome);
    if (unb.ray.size() != c.size()) return false;
    for (const Rational& v : unb.ray)
        if (v < 0) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (dot(a[i], unb.ray) != 0) return false;
    return dot(c, unb.ray) < 0;
}

std::optional<Vector> linear_solve(const Matrix& m, const Vector& rhs) {
    if (m.size() != rhs.size())
        throw InputError("linear system row counts differ");
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    for (const Vector& row : m)
        if (static_cast<int>(row.size()) != cols)
            throw InputError("ragged linear system");

    Matrix work = canonical_copy(m);
    Vector r = canonical_copy(rhs);

    std::vector<int> pivot_row_of_col(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int p = -1;
        for (int i = rank; i < rows; ++i) {
            if (work[i][col] != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(work[p], work[rank]);
        std::swap(r[p], r[rank]);

        const Rational inv = 1 / work[rank][col];
        for (int j = col; j < cols; ++j) work[rank][j] *= inv;
        r[rank] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == rank || work[i][col] == 0) continue;
            const Rational factor = work[i][col];
            for (int j = col; j < cols; ++j)
                work[i][j] -= factor * work[rank][j];
            r[i] -= factor * r[rank];
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }

    for (int i = rank; i < rows; ++i)
        if (r[i] != 0) return std::nullopt;  // inconsistent
    for (int col = 0; col < cols; ++col)
        if (pivot_row_of_col[col] < 0) return std::nullopt;  // underdetermined

    Vector x(cols);
    for (int col = 0; col < cols; ++col) x[col] = r[pivot_row_of_col[col]];
    return x;
}

}  // namespace vcsp
