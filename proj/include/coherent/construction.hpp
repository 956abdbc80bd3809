#pragma once

#include <cstddef>
#include <iosfwd>

#include "coherent/dynamics.hpp"
#include "coherent/measure.hpp"

namespace coherent {

/// Normalizing constant of the continuous construction on [0,r]:
/// the mass of the unnormalized pair integrates to -log(1-r).
double c_r(double r);

/// CDF along the diagonal component: (-x - log(1-x)) / c_r, the closed form
/// of the integral of s/(1-s) over [0,x], normalized.
double mu_cdf(double r, double x);

/// CDF along the graph component: x / c_r (the density is constant).
double nu_cdf(double r, double x);

/// The continuous measure on [0,r]^2 split into a diagonal part (density
/// s/(1-s), normalized) and a graph part (uniform along the x-axis).
struct MrMeasure {
    double r;
    double log_constant;  // c_r

    explicit MrMeasure(double r_param);
    double diagonal_cdf(double x) const { return mu_cdf(r, x); }
    double graph_cdf(double x) const { return nu_cdf(r, x); }
};

/// Numerical verification of the defining weighted-marginal identity of the
/// continuous pair: over a grid of prefixes A = [0, x_j], both the
/// (1-x)-weighted diagonal marginal and the x-weighted graph marginal are
/// integrated by adaptive quadrature and compared against the common closed
/// form x^2 / (2 c_r). Also checks that the two CDFs sum to one at x = r.
struct RIdentityReport {
    double max_mu_error = 0.0;
    double max_nu_error = 0.0;
    double total_mass_error = 0.0;
    std::size_t grid = 0;
    double tolerance = 0.0;

    bool pass() const {
        return max_mu_error <= tolerance && max_nu_error <= tolerance;
    }
};

RIdentityReport verify_r_identities(double r, std::size_t grid, double tol);

/// Weighted cobweb diagram of t_r as an exact measure: after running the
/// orbit x_0..x_N, each interior diagonal point (x_n, x_n) carries weight
/// x_n/(1-x_n) and each graph point (x_{n-1}, x_n) carries weight 1;
/// repeated points merge by summing, zero weights are dropped, and the
/// result is normalized to total mass 1. The zero-weight endpoints are kept
/// as metadata only.
struct CobwebMeasure {
    Rational r;
    Rational start;
    std::size_t steps = 0;          // N
    DiscreteMeasure measure;        // normalized, diagonal/graph labels
    DiscreteMeasure diagonal_part;  // red component, normalized by the same total
    DiscreteMeasure graph_part;     // blue component; diagonal + graph = measure
    Point2 start_point, end_point;  // weight-zero endpoints
};

CobwebMeasure cobweb_measure(const Rational& r, const Rational& x0, std::size_t n_steps);

/// Grid discretization of the continuous measure: k equal cells on [0,r];
/// per cell one diagonal atom at the cell midpoint weighted by the
/// diagonal-CDF increment and one graph atom at (midpoint, t_r(midpoint))
/// weighted by the graph-CDF increment. Weights are rounded to the nearest
/// rational with denominator 10^12, then the total mass is renormalized
/// to exactly 1.
DiscreteMeasure discretize_mr(const Rational& r, std::size_t cells);

/// Plot data: "x,y,weight,label" rows (decimal), one per atom; for cobweb
/// measures the two endpoints are appended with weight 0 and label
/// "endpoint".
void write_plot_csv(std::ostream& out, const DiscreteMeasure& m);
void write_plot_csv(std::ostream& out, const CobwebMeasure& cw);

}  // namespace coherent
