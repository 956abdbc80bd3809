#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coherent/rational.hpp"

namespace coherent {

/// Equality-constrained linear system with finite box bounds:
///   coeffs * u = rhs,  lower <= u <= upper.
struct BoundedSystem {
    std::vector<std::vector<Rational>> coeffs;  // one row per constraint
    std::vector<Rational> rhs;
    std::vector<Rational> lower;
    std::vector<Rational> upper;

    std::size_t num_rows() const { return coeffs.size(); }
    std::size_t num_vars() const { return lower.size(); }
};

/// Exact rational bounded-variable simplex.
///
/// phase1() minimizes the sum of artificial slack variables (one signed
/// pair per equality row), i.e. the total absolute constraint violation
/// reachable inside the box; its optimum is zero exactly when the system
/// is feasible, and otherwise measures the infeasibility. After a feasible
/// phase 1, minimize()/maximize() optimize a linear objective over the
/// feasible polytope, warm-starting from the current basis.
///
/// Entering variables follow Dantzig's rule until the objective stalls,
/// then Bland's rule until it strictly improves again, so the iteration
/// cannot cycle. All arithmetic is exact; there are no tolerances.
class SimplexSolver {
  public:
    explicit SimplexSolver(const BoundedSystem& system);

    /// Minimum total violation (the coherence defect for feasibility
    /// systems). Runs once; later calls return the cached value.
    const Rational& phase1();

    /// Dual vector certifying the phase-1 optimum. Satisfies |y_i| <= 1 and
    ///   y . rhs - sum_j [ upper_j * max(0, y.A_j) + lower_j * min(0, y.A_j) ]
    /// equal to phase1() exactly, which lower-bounds the violation of every
    /// point in the box and so proves the defect optimal.
    const std::vector<Rational>& phase1_dual();

    bool feasible() { return phase1().is_zero(); }

    /// Optimal value of cost . u over the feasible polytope.
    /// Requires phase1() == 0; throws std::logic_error otherwise.
    Rational minimize(const std::vector<Rational>& cost);
    Rational maximize(const std::vector<Rational>& cost);

    /// Current structural variable values (argmin of the last solve;
    /// after phase1() > 0 these attain the minimal violation).
    std::vector<Rational> solution() const;

  private:
    enum class Status : unsigned char { at_lower, at_upper, basic };

    std::size_t n_;  // structural variables
    std::size_t m_;  // rows
    // Stored block: current basis inverse applied to [A | I], m x (n + m).
    // Logical columns: [0, n) structural, [n, n+m) plus-artificials,
    // [n+m, n+2m) minus-artificials whose tableau column is the negated
    // plus column (never stored).
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> lower_, upper_;  // structural bounds
    std::vector<Rational> beta_;           // basic variable values
    std::vector<std::size_t> basis_;       // logical column per row
    std::vector<Status> status_;           // per logical column
    std::vector<Rational> cost_;           // per logical column
    std::vector<Rational> z_;              // reduced costs over the stored block
    bool artificials_fixed_ = false;
    std::optional<Rational> defect_;
    std::vector<Rational> phase1_dual_;  // captured at the phase-1 optimum

    std::size_t num_logical() const { return n_ + 2 * m_; }
    bool is_minus_artificial(std::size_t j) const { return j >= n_ + m_; }
    std::size_t stored_index(std::size_t j) const { return is_minus_artificial(j) ? j - m_ : j; }

    Rational tab_entry(std::size_t row, std::size_t j) const;
    Rational reduced_cost(std::size_t j) const;
    Rational lower_of(std::size_t j) const;
    // Artificials are unbounded above in phase 1 and fixed to zero afterwards.
    std::optional<Rational> upper_of(std::size_t j) const;
    bool is_fixed(std::size_t j) const;
    Rational nonbasic_value(std::size_t j) const;
    Rational objective() const;

    void rebuild_reduced_costs();
    void optimize();
    void pivot(std::size_t row, std::size_t entering, const std::vector<Rational>& column);
};

}  // namespace coherent
