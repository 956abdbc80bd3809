#include "coherent/simplex.hpp"

#include <stdexcept>

namespace coherent {

namespace {
constexpr std::size_t kStallLimit = 24;
constexpr std::size_t kIterationCap = 2'000'000;
const Rational& kZero() { static const Rational v; return v; }
const Rational& kOne() { static const Rational v(1); return v; }
}  // namespace

SimplexSolver::SimplexSolver(const BoundedSystem& system)
    : n_(system.num_vars()), m_(system.num_rows()) {
    if (system.rhs.size() != m_ || system.upper.size() != n_)
        throw std::invalid_argument("inconsistent system dimensions");
    for (std::size_t j = 0; j < n_; ++j)
        if (system.upper[j] < system.lower[j])
            throw std::invalid_argument("empty variable box");

    lower_ = system.lower;
    upper_ = system.upper;
    status_.assign(num_logical(), Status::at_lower);
    cost_.assign(num_logical(), kZero());
    for (std::size_t j = n_; j < num_logical(); ++j) cost_[j] = kOne();

    tab_.assign(m_, std::vector<Rational>(n_ + m_));
    beta_.assign(m_, kZero());
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
        const auto& row = system.coeffs[i];
        if (row.size() != n_) throw std::invalid_argument("ragged coefficient matrix");
        Rational residual = system.rhs[i];
        for (std::size_t j = 0; j < n_; ++j) {
            tab_[i][j] = row[j];
            if (!row[j].is_zero()) residual -= row[j] * lower_[j];
        }
        tab_[i][n_ + i] = kOne();
        if (residual.is_negative()) {
            // basic minus-artificial: stored block carries the negated row
            for (auto& v : tab_[i]) v = -v;
            basis_[i] = n_ + m_ + i;
            beta_[i] = -residual;
        } else {
            basis_[i] = n_ + i;
            beta_[i] = residual;
        }
        status_[basis_[i]] = Status::basic;
    }
}

Rational SimplexSolver::tab_entry(std::size_t row, std::size_t j) const {
    const Rational& v = tab_[row][stored_index(j)];
    return is_minus_artificial(j) ? -v : v;
}

Rational SimplexSolver::reduced_cost(std::size_t j) const {
    if (!is_minus_artificial(j)) return z_[j];
    // A_(a-) = -A_(a+), so z(a-) = c(a-) + c(a+) - z(a+).
    const std::size_t plus = j - m_;
    return cost_[j] + cost_[plus] - z_[plus];
}

Rational SimplexSolver::lower_of(std::size_t j) const { return j < n_ ? lower_[j] : kZero(); }

std::optional<Rational> SimplexSolver::upper_of(std::size_t j) const {
    if (j < n_) return upper_[j];
    if (artificials_fixed_) return kZero();
    return std::nullopt;
}

bool SimplexSolver::is_fixed(std::size_t j) const {
    auto up = upper_of(j);
    return up && *up == lower_of(j);
}

Rational SimplexSolver::nonbasic_value(std::size_t j) const {
    return status_[j] == Status::at_upper ? *upper_of(j) : lower_of(j);
}

Rational SimplexSolver::objective() const {
    Rational obj;
    for (std::size_t i = 0; i < m_; ++i)
        if (!cost_[basis_[i]].is_zero()) obj += cost_[basis_[i]] * beta_[i];
    for (std::size_t j = 0; j < num_logical(); ++j)
        if (status_[j] != Status::basic && !cost_[j].is_zero()) {
            const Rational v = nonbasic_value(j);
            if (!v.is_zero()) obj += cost_[j] * v;
        }
    return obj;
}

void SimplexSolver::rebuild_reduced_costs() {
    z_.assign(n_ + m_, kZero());
    for (std::size_t j = 0; j < n_ + m_; ++j) z_[j] = cost_[j];
    for (std::size_t i = 0; i < m_; ++i) {
        const Rational& cb = cost_[basis_[i]];
        if (cb.is_zero()) continue;
        const auto& row = tab_[i];
        for (std::size_t j = 0; j < n_ + m_; ++j)
            if (!row[j].is_zero()) z_[j] -= cb * row[j];
    }
}

void SimplexSolver::pivot(std::size_t row, std::size_t entering,
                          const std::vector<Rational>& column) {
    const Rational inv = kOne() / column[row];
    auto& prow = tab_[row];
    for (auto& v : prow)
        if (!v.is_zero()) v *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
        if (i == row || column[i].is_zero()) continue;
        const Rational& f = column[i];
        auto& trow = tab_[i];
        for (std::size_t j = 0; j < n_ + m_; ++j)
            if (!prow[j].is_zero()) trow[j] -= f * prow[j];
    }
    const Rational zq = reduced_cost(entering);
    if (!zq.is_zero())
        for (std::size_t j = 0; j < n_ + m_; ++j)
            if (!prow[j].is_zero()) z_[j] -= zq * prow[j];
}

void SimplexSolver::optimize() {
    std::size_t stall = 0;
    bool bland = false;
    Rational best_obj = objective();
    for (std::size_t iter = 0; iter < kIterationCap; ++iter) {
        // entering variable
        std::size_t entering = num_logical();
        Rational best_viol;
        for (std::size_t j = 0; j < num_logical(); ++j) {
            if (status_[j] == Status::basic || is_fixed(j)) continue;
            const Rational zj = reduced_cost(j);
            Rational viol;
            if (status_[j] == Status::at_lower && zj.is_negative())
                viol = -zj;
            else if (status_[j] == Status::at_upper && zj.is_positive())
                viol = zj;
            else
                continue;
            if (bland) {
                entering = j;
                break;
            }
            if (entering == num_logical() || viol > best_viol) {
                entering = j;
                best_viol = viol;
            }
        }
        if (entering == num_logical()) return;  // optimal

        const int step_sign = status_[entering] == Status::at_lower ? 1 : -1;
        std::vector<Rational> column(m_);
        for (std::size_t i = 0; i < m_; ++i) column[i] = tab_entry(i, entering);

        // ratio test: tightest limit among basic bounds and a bound flip
        std::optional<Rational> limit;
        std::size_t leave_row = m_;
        Status leave_to = Status::at_lower;
        if (auto up = upper_of(entering)) limit = *up - lower_of(entering);
        for (std::size_t i = 0; i < m_; ++i) {
            Rational d = step_sign > 0 ? column[i] : -column[i];
            if (d.is_zero()) continue;
            Rational cand;
            Status target;
            const std::size_t k = basis_[i];
            if (d.is_positive()) {
                cand = (beta_[i] - lower_of(k)) / d;
                target = Status::at_lower;
            } else {
                auto up = upper_of(k);
                if (!up) continue;
                cand = (*up - beta_[i]) / (-d);
                target = Status::at_upper;
            }
            const bool better =
                !limit || cand < *limit ||
                (cand == *limit && leave_row < m_ && bland && basis_[i] < basis_[leave_row]) ||
                (cand == *limit && leave_row == m_);
            if (better) {
                limit = cand;
                leave_row = i;
                leave_to = target;
            }
        }
        if (!limit) throw std::logic_error("unbounded direction in box-bounded program");
        const Rational& step = *limit;

        if (leave_row == m_) {
            // bound flip, basis unchanged
            status_[entering] =
                status_[entering] == Status::at_lower ? Status::at_upper : Status::at_lower;
            if (!step.is_zero())
                for (std::size_t i = 0; i < m_; ++i)
                    if (!column[i].is_zero())
                        beta_[i] -= Rational(step_sign) * column[i] * step;
        } else {
            const Rational entering_value = nonbasic_value(entering) + Rational(step_sign) * step;
            if (!step.is_zero())
                for (std::size_t i = 0; i < m_; ++i)
                    if (i != leave_row && !column[i].is_zero())
                        beta_[i] -= Rational(step_sign) * column[i] * step;
            status_[basis_[leave_row]] = leave_to;
            pivot(leave_row, entering, column);
            basis_[leave_row] = entering;
            status_[entering] = Status::basic;
            beta_[leave_row] = entering_value;
        }

        const Rational obj = objective();
        if (obj < best_obj) {
            best_obj = obj;
            stall = 0;
            bland = false;
        } else if (++stall > kStallLimit) {
            bland = true;
        }
    }
    throw std::logic_error("simplex iteration cap exceeded");
}

const Rational& SimplexSolver::phase1() {
    if (defect_) return *defect_;
    rebuild_reduced_costs();
    optimize();
    defect_ = objective();
    // y = c_B B^{-1}, read off the identity block; z(a+_i) = 1 - y_i and
    // z(a-_i) = 1 + y_i are both nonnegative at the optimum, so |y_i| <= 1
    phase1_dual_.assign(m_, kZero());
    for (std::size_t i = 0; i < m_; ++i) phase1_dual_[i] = kOne() - z_[n_ + i];
    return *defect_;
}

const std::vector<Rational>& SimplexSolver::phase1_dual() {
    phase1();
    return phase1_dual_;
}

Rational SimplexSolver::minimize(const std::vector<Rational>& cost) {
    if (cost.size() != n_) throw std::invalid_argument("objective length mismatch");
    if (!phase1().is_zero()) throw std::logic_error("system is infeasible");
    artificials_fixed_ = true;
    for (std::size_t j = 0; j < num_logical(); ++j) cost_[j] = j < n_ ? cost[j] : kZero();
    rebuild_reduced_costs();
    optimize();
    return objective();
}

Rational SimplexSolver::maximize(const std::vector<Rational>& cost) {
    std::vector<Rational> negated(cost.size());
    for (std::size_t j = 0; j < cost.size(); ++j) negated[j] = -cost[j];
    return -minimize(negated);
}

std::vector<Rational> SimplexSolver::solution() const {
    std::vector<Rational> u(n_);
    for (std::size_t j = 0; j < n_; ++j)
        if (status_[j] != Status::basic) u[j] = nonbasic_value(j);
    for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] < n_) u[basis_[i]] = beta_[i];
    return u;
}

}  // namespace coherent
