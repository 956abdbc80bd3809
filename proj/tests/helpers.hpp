#pragma once

// Shared test utilities: seeded random generators for measures and expert
// models, plus independent oracles (quadrature, interval-arithmetic
// feasibility) kept free of the library code paths they check.

#include <optional>
#include <random>
#include <vector>

#include "coherent/coherence.hpp"
#include "coherent/measure.hpp"
#include "coherent/rational.hpp"

namespace testutil {

using coherent::DiscreteMeasure;
using coherent::ExpertModel;
using coherent::Point2;
using coherent::Rational;
using coherent::WeightedAtom;

inline Rational random_rational(std::mt19937_64& rng, long max_num = 16, long max_den = 16) {
    std::uniform_int_distribution<long> num(0, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    long d = den(rng);
    std::uniform_int_distribution<long> bounded_num(0, d);  // value in [0,1]
    (void)num;
    return Rational(bounded_num(rng), d);
}

inline Rational random_positive_rational(std::mt19937_64& rng, long max_num = 12,
                                         long max_den = 12) {
    std::uniform_int_distribution<long> num(1, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

inline DiscreteMeasure random_measure(std::mt19937_64& rng, std::size_t max_atoms = 6) {
    std::uniform_int_distribution<std::size_t> count(1, max_atoms);
    std::vector<WeightedAtom> atoms;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i)
        atoms.push_back({Point2(random_rational(rng), random_rational(rng)),
                         random_positive_rational(rng), coherent::AtomLabel::none});
    return DiscreteMeasure(std::move(atoms));
}

inline ExpertModel random_expert_model(std::mt19937_64& rng, std::size_t max_outcomes = 8) {
    std::uniform_int_distribution<std::size_t> count(1, max_outcomes);
    const std::size_t n = count(rng);

    ExpertModel em;
    for (std::size_t i = 0; i < n; ++i)
        em.weights.push_back(random_positive_rational(rng, 20, 20));

    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i)
        if (coin(rng)) em.event.push_back(i);

    auto random_partition = [&](std::size_t cells_hint) {
        std::uniform_int_distribution<std::size_t> cell_of(0, cells_hint - 1);
        std::vector<std::vector<std::size_t>> cells(cells_hint);
        for (std::size_t i = 0; i < n; ++i) cells[cell_of(rng)].push_back(i);
        std::vector<std::vector<std::size_t>> nonempty;
        for (auto& c : cells)
            if (!c.empty()) nonempty.push_back(std::move(c));
        return nonempty;
    };
    std::uniform_int_distribution<std::size_t> hint(1, n);
    em.partition1 = random_partition(hint(rng));
    em.partition2 = random_partition(hint(rng));
    return em;
}

// ---------------------------------------------------------------------------
// Interval-arithmetic feasibility oracle: eliminate the equality system
// exactly, express the box bounds as inequalities over the free variables,
// and decide nonemptiness by Fourier-Motzkin. Only supports systems whose
// reduced form has at most 2 free variables.
// ---------------------------------------------------------------------------

struct LinearInequality {
    // a1 * f1 + a2 * f2 <= c
    Rational a1, a2, c;
};

// feasibility of a set of <= constraints over (f1, f2)
bool fourier_motzkin_feasible(std::vector<LinearInequality> ineqs);

// exhaustive oracle for a coherence feasibility system; nullopt when the
// reduced system has more than 2 free variables
std::optional<bool> interval_oracle_feasible(const coherent::FeasibilitySystem& sys);

// uniqueness oracle along the same route: the solution set is a single
// point exactly when the projection of the feasible region onto every free
// variable is a degenerate interval; nullopt when more than 2 free
// variables or when the system is infeasible
std::optional<bool> interval_oracle_unique(const coherent::FeasibilitySystem& sys);

// ---------------------------------------------------------------------------
// Max-flow defect oracle. The feasibility system is a capacitated
// transportation problem: source -> column a with capacity a * column mass,
// atom edges with capacity m(p), row b -> sink with capacity b * row mass.
// The minimum total violation equals
//   sum(column targets) + sum(row targets) - 2 * maxflow,
// which gives an oracle for the phase-1 defect along a completely different
// algorithmic route (exact Edmonds-Karp augmentation).
// ---------------------------------------------------------------------------
Rational max_flow_defect(const DiscreteMeasure& m);

// ---------------------------------------------------------------------------
// Independent quadrature for the continuous-construction tests
// ---------------------------------------------------------------------------
double simpson_integral(double (*f)(double, double), double param, double a, double b,
                        std::size_t panels = 20'000);

}  // namespace testutil
