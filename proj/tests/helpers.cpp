#include "helpers.hpp"

#include <algorithm>
#include <stdexcept>

#include "coherent/linalg.hpp"

namespace testutil {

using coherent::RationalMatrix;

bool fourier_motzkin_feasible(std::vector<LinearInequality> ineqs) {
    // eliminate f2: combine every pair (a2 > 0, a2 < 0)
    std::vector<LinearInequality> uppers, lowers, free2;
    for (const auto& q : ineqs) {
        if (q.a2.is_positive()) uppers.push_back(q);        // f2 <= (c - a1 f1)/a2
        else if (q.a2.is_negative()) lowers.push_back(q);   // f2 >= (c - a1 f1)/a2
        else free2.push_back(q);
    }
    std::vector<LinearInequality> reduced = free2;  // a2 == 0 already
    for (const auto& up : uppers)
        for (const auto& lo : lowers) {
            // (c_lo - a1_lo f1)/a2_lo <= (c_up - a1_up f1)/a2_up  with a2_lo < 0 < a2_up
            // multiply both sides by a2_up * (-a2_lo) > 0
            LinearInequality q;
            q.a1 = lo.a1 * up.a2 - up.a1 * lo.a2;
            q.a2 = Rational(0);
            q.c = lo.c * up.a2 - up.c * lo.a2;
            reduced.push_back(q);
        }

    // now a 1-variable system: intersect the interval for f1
    std::optional<Rational> lo_bound, hi_bound;
    for (const auto& q : reduced) {
        if (q.a1.is_positive()) {
            const Rational b = q.c / q.a1;
            if (!hi_bound || b < *hi_bound) hi_bound = b;
        } else if (q.a1.is_negative()) {
            const Rational b = q.c / q.a1;
            if (!lo_bound || b > *lo_bound) lo_bound = b;
        } else if (q.c.is_negative()) {
            return false;  // 0 <= c with c < 0
        }
    }
    if (lo_bound && hi_bound) return *lo_bound <= *hi_bound;
    return true;
}

namespace {

struct ReducedSystem {
    bool inconsistent = false;
    std::size_t num_free = 0;
    std::vector<LinearInequality> box;  // box bounds over the free variables
};

// reduce the equality system and rewrite the box bounds over the (at most
// two) free variables; nullopt when there are more
std::optional<ReducedSystem> reduce_to_free_variables(const coherent::FeasibilitySystem& sys) {
    const std::size_t n = sys.lp.num_vars();
    const std::size_t m = sys.lp.num_rows();

    RationalMatrix aug(m, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = sys.lp.coeffs[i][j];
        aug[i][n] = sys.lp.rhs[i];
    }
    const auto pivots = coherent::reduced_row_echelon(aug);

    ReducedSystem red;
    // inconsistent equality system: pivot in the rhs column
    if (!pivots.empty() && pivots.back() == n) {
        red.inconsistent = true;
        return red;
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    if (free_cols.size() > 2) return std::nullopt;
    red.num_free = free_cols.size();

    // each variable is affine in the free variables: x_j = base_j + g1_j f1 + g2_j f2
    std::vector<Rational> base(n), g1(n), g2(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!free_cols.empty() && j == free_cols[0]) g1[j] = Rational(1);
        if (free_cols.size() > 1 && j == free_cols[1]) g2[j] = Rational(1);
    }
    for (std::size_t row = 0; row < pivots.size(); ++row) {
        const std::size_t pc = pivots[row];
        base[pc] = aug[row][n];
        if (!free_cols.empty()) g1[pc] = -aug[row][free_cols[0]];
        if (free_cols.size() > 1) g2[pc] = -aug[row][free_cols[1]];
    }

    for (std::size_t j = 0; j < n; ++j) {
        // x_j <= upper : g1 f1 + g2 f2 <= upper - base
        red.box.push_back({g1[j], g2[j], sys.lp.upper[j] - base[j]});
        // x_j >= lower : -g1 f1 - g2 f2 <= base - lower
        red.box.push_back({-g1[j], -g2[j], base[j] - sys.lp.lower[j]});
    }
    return red;
}

// [lo, hi] of the first free variable over the feasible region (eliminates
// the second variable first); unbounded sides come back empty
std::pair<std::optional<Rational>, std::optional<Rational>> first_variable_range(
    std::vector<LinearInequality> ineqs) {
    std::vector<LinearInequality> uppers, lowers, reduced;
    for (const auto& q : ineqs) {
        if (q.a2.is_positive()) uppers.push_back(q);
        else if (q.a2.is_negative()) lowers.push_back(q);
        else reduced.push_back(q);
    }
    for (const auto& up : uppers)
        for (const auto& lo : lowers)
            reduced.push_back({lo.a1 * up.a2 - up.a1 * lo.a2, Rational(0),
                               lo.c * up.a2 - up.c * lo.a2});
    std::optional<Rational> lo_bound, hi_bound;
    for (const auto& q : reduced) {
        if (q.a1.is_positive()) {
            const Rational b = q.c / q.a1;
            if (!hi_bound || b < *hi_bound) hi_bound = b;
        } else if (q.a1.is_negative()) {
            const Rational b = q.c / q.a1;
            if (!lo_bound || b > *lo_bound) lo_bound = b;
        }
    }
    return {lo_bound, hi_bound};
}

}  // namespace

std::optional<bool> interval_oracle_feasible(const coherent::FeasibilitySystem& sys) {
    const auto red = reduce_to_free_variables(sys);
    if (!red) return std::nullopt;
    if (red->inconsistent) return false;
    return fourier_motzkin_feasible(red->box);
}

std::optional<bool> interval_oracle_unique(const coherent::FeasibilitySystem& sys) {
    const auto red = reduce_to_free_variables(sys);
    if (!red) return std::nullopt;
    if (red->inconsistent || !fourier_motzkin_feasible(red->box)) return std::nullopt;
    if (red->num_free == 0) return true;

    auto degenerate = [](const std::vector<LinearInequality>& box) {
        const auto [lo, hi] = first_variable_range(box);
        return lo && hi && *lo == *hi;
    };
    if (!degenerate(red->box)) return false;
    if (red->num_free == 1) return true;
    std::vector<LinearInequality> swapped = red->box;
    for (auto& q : swapped) std::swap(q.a1, q.a2);
    return degenerate(swapped);
}

namespace {

// exact residual-network max flow (Edmonds-Karp)
class FlowNetwork {
  public:
    explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1) {}

    void add_edge(std::size_t from, std::size_t to, Rational capacity) {
        edges_.push_back({to, head_[from], std::move(capacity)});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], Rational(0)});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    Rational max_flow(std::size_t source, std::size_t sink) {
        Rational total;
        std::vector<int> via(head_.size());
        while (true) {
            std::fill(via.begin(), via.end(), -1);
            std::vector<std::size_t> queue{source};
            via[source] = -2;
            for (std::size_t qi = 0; qi < queue.size() && via[sink] == -1; ++qi) {
                const std::size_t v = queue[qi];
                for (int e = head_[v]; e != -1; e = edges_[e].next) {
                    if (via[edges_[e].to] != -1 || edges_[e].residual.is_zero()) continue;
                    via[edges_[e].to] = e;
                    queue.push_back(edges_[e].to);
                }
            }
            if (via[sink] == -1) return total;
            // bottleneck along the augmenting path
            std::optional<Rational> bottleneck;
            for (std::size_t v = sink; v != source;) {
                const int e = via[v];
                if (!bottleneck || edges_[e].residual < *bottleneck)
                    bottleneck = edges_[e].residual;
                v = edges_[e ^ 1].to;
            }
            for (std::size_t v = sink; v != source;) {
                const int e = via[v];
                edges_[e].residual -= *bottleneck;
                edges_[e ^ 1].residual += *bottleneck;
                v = edges_[e ^ 1].to;
            }
            total += *bottleneck;
        }
    }

  private:
    struct Edge {
        std::size_t to;
        int next;
        Rational residual;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

}  // namespace

Rational max_flow_defect(const DiscreteMeasure& m) {
    const coherent::Measure1D cols = coherent::marginal_x(m);
    const coherent::Measure1D rows = coherent::marginal_y(m);
    const std::size_t num_cols = cols.atoms().size(), num_rows = rows.atoms().size();

    auto col_index = [&](const Rational& a) {
        for (std::size_t i = 0; i < num_cols; ++i)
            if (cols.atoms()[i].first == a) return i;
        throw std::logic_error("column not found");
    };
    auto row_index = [&](const Rational& b) {
        for (std::size_t i = 0; i < num_rows; ++i)
            if (rows.atoms()[i].first == b) return i;
        throw std::logic_error("row not found");
    };

    const std::size_t source = 0, sink = 1 + num_cols + num_rows;
    FlowNetwork net(sink + 1);
    Rational target_total;
    for (std::size_t i = 0; i < num_cols; ++i) {
        const auto& [a, mass] = cols.atoms()[i];
        target_total += a * mass;
        net.add_edge(source, 1 + i, a * mass);
    }
    for (std::size_t i = 0; i < num_rows; ++i) {
        const auto& [b, mass] = rows.atoms()[i];
        target_total += b * mass;
        net.add_edge(1 + num_cols + i, sink, b * mass);
    }
    for (const auto& atom : m.atoms())
        net.add_edge(1 + col_index(atom.point.x), 1 + num_cols + row_index(atom.point.y),
                     atom.weight);

    return target_total - Rational(2) * net.max_flow(source, sink);
}

double simpson_integral(double (*f)(double, double), double param, double a, double b,
                        std::size_t panels) {
    if (a == b) return 0.0;
    const double h = (b - a) / static_cast<double>(panels);
    double sum = f(param, a) + f(param, b);
    for (std::size_t i = 1; i < panels; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(param, a + h * static_cast<double>(i));
    return sum * h / 3.0;
}

}  // namespace testutil
