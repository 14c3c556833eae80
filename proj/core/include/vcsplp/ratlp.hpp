#ifndef VCSPLP_RATLP_HPP
#define VCSPLP_RATLP_HPP

#include <optional>
#include <variant>
#include <vector>

#include "vcsplp/rational.hpp"

namespace vcsp {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, dense

Rational dot(const Vector& a, const Vector& b);

// min c.x  subject to  A x = b,  x >= 0. Builders add slack variables for
// inequality rows before reaching this form.
struct LinearProgram {
    Matrix a;
    Vector b;
    Vector c;

    int num_rows() const { return static_cast<int>(a.size()); }
    int num_vars() const { return static_cast<int>(c.size()); }
};

struct LpOptimal {
    Vector x;
    Rational value;
};

// Farkas certificate of infeasibility: y.A <= 0 componentwise and y.b > 0.
struct LpInfeasible {
    Vector y;
};

// Improving ray: A.ray = 0, ray >= 0, c.ray < 0.
struct LpUnbounded {
    Vector ray;
};

using LpOutcome = std::variant<LpOptimal, LpInfeasible, LpUnbounded>;

// Exact two-phase simplex. Pivoting follows Bland's rule (entering: smallest
// variable index with negative reduced cost; leaving: smallest ratio, ties
// broken by smallest basic variable index), so the solve terminates and is
// deterministic. Throws InputError on dimension mismatch.
LpOutcome solve(const LinearProgram& lp);

// Phase-1 wrapper: any x >= 0 with A x = b, or the Farkas certificate.
std::variant<Vector, LpInfeasible> feasible_point(const Matrix& a,
                                                  const Vector& b);

// Re-checks the outcome invariants by direct arithmetic, no pivoting:
//   Optimal:    x >= 0, A x = b, c.x = value
//   Infeasible: y.A <= 0, y.b > 0
//   Unbounded:  ray >= 0, A ray = 0, c.ray < 0
bool verify_outcome(const LinearProgram& lp, const LpOutcome& outcome);

// Unique solution of M x = rhs by exact Gaussian elimination. Returns nullopt
// when the system is inconsistent or underdetermined. M may have more rows
// than columns.
std::optional<Vector> linear_solve(const Matrix& m, const Vector& rhs);

}  // namespace vcsp

#endif
