#include "coherent/construction.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace coherent {

namespace {

const Rational& kZero() { static const Rational v; return v; }
const Rational& kOne() { static const Rational v(1); return v; }

void require_r(double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("parameter r outside (0,1)");
}

void require_x(double r, double x) {
    if (!(x >= 0.0 && x <= r)) throw std::domain_error("argument outside [0,r]");
}

// adaptive Simpson with absolute-error target
double simpson(double (*f)(double, double), double p, double a, double b) {
    return (b - a) / 6.0 * (f(p, a) + 4.0 * f(p, 0.5 * (a + b)) + f(p, b));
}

double adaptive_simpson(double (*f)(double, double), double p, double a, double b,
                        double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = simpson(f, p, a, mid);
    const double right = simpson(f, p, mid, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, p, a, mid, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, p, mid, b, right, 0.5 * tol, depth - 1);
}

double integrate(double (*f)(double, double), double p, double a, double b, double tol) {
    if (a == b) return 0.0;
    return adaptive_simpson(f, p, a, b, simpson(f, p, a, b), tol, 48);
}

// (1-x)-weighted diagonal density, written out as stated, not simplified
double weighted_diagonal_density(double cr, double s) {
    return (1.0 - s) * (s / (1.0 - s)) / cr;
}

// x-weighted graph density
double weighted_graph_density(double cr, double s) { return s * (1.0 / cr); }

}  // namespace

double c_r(double r) {
    require_r(r);
    return -std::log1p(-r);
}

double mu_cdf(double r, double x) {
    require_r(r);
    require_x(r, x);
    return (-x - std::log1p(-x)) / c_r(r);
}

double nu_cdf(double r, double x) {
    require_r(r);
    require_x(r, x);
    return x / c_r(r);
}

MrMeasure::MrMeasure(double r_param) : r(r_param), log_constant(c_r(r_param)) {}

RIdentityReport verify_r_identities(double r, std::size_t grid, double tol) {
    require_r(r);
    if (grid < 2) throw std::domain_error("grid must have at least two points");

    RIdentityReport report;
    report.grid = grid;
    report.tolerance = tol;
    const double cr = c_r(r);
    const double quad_tol = tol / 16.0;
    for (std::size_t j = 0; j <= grid; ++j) {
        const double xj = r * static_cast<double>(j) / static_cast<double>(grid);
        const double closed_form = xj * xj / (2.0 * cr);
        const double mu_side = integrate(weighted_diagonal_density, cr, 0.0, xj, quad_tol);
        const double nu_side = integrate(weighted_graph_density, cr, 0.0, xj, quad_tol);
        report.max_mu_error = std::max(report.max_mu_error, std::fabs(mu_side - closed_form));
        report.max_nu_error = std::max(report.max_nu_error, std::fabs(nu_side - closed_form));
    }
    report.total_mass_error = std::fabs(mu_cdf(r, r) + nu_cdf(r, r) - 1.0);
    return report;
}

CobwebMeasure cobweb_measure(const Rational& r, const Rational& x0, std::size_t n_steps) {
    if (n_steps < 2) throw std::domain_error("cobweb needs at least 2 steps");
    const Orbit orb = orbit(r, x0, n_steps);

    std::vector<WeightedAtom> red, blue;
    for (std::size_t n = 1; n < n_steps; ++n) {
        const Rational& xn = orb.points[n];
        if (xn.is_zero()) continue;  // weight x/(1-x) vanishes
        red.push_back({Point2(xn, xn), xn / (kOne() - xn), AtomLabel::diagonal});
    }
    for (std::size_t n = 1; n <= n_steps; ++n)
        blue.push_back({Point2(orb.points[n - 1], orb.points[n]), kOne(), AtomLabel::graph});

    DiscreteMeasure red_m{std::move(red)}, blue_m{std::move(blue)};
    const Rational total = red_m.total_mass() + blue_m.total_mass();
    const Rational inv = kOne() / total;

    CobwebMeasure cw;
    cw.r = r;
    cw.start = x0;
    cw.steps = n_steps;
    cw.diagonal_part = scale_add(inv, red_m, kZero(), DiscreteMeasure());
    cw.graph_part = scale_add(inv, blue_m, kZero(), DiscreteMeasure());
    cw.measure = scale_add(inv, red_m, inv, blue_m);
    cw.start_point = Point2(orb.points.front(), orb.points.front());
    cw.end_point = Point2(orb.points.back(), orb.points.back());
    return cw;
}

namespace {

// nearest rational with denominator 10^12; tiny negative rounding noise
// clamps to zero
Rational quantize_weight(double w) {
    constexpr double kDen = 1e12;
    const long long num = std::llround(w * kDen);
    if (num <= 0) return Rational();
    return Rational(static_cast<long>(num), 1'000'000'000'000L);
}

}  // namespace

DiscreteMeasure discretize_mr(const Rational& r, std::size_t cells) {
    if (cells == 0) throw std::domain_error("discretization needs at least one cell");
    const double rd = r.to_double();
    require_r(rd);

    const Rational num_cells(static_cast<long>(cells));
    std::vector<WeightedAtom> atoms;
    atoms.reserve(2 * cells);
    for (std::size_t i = 0; i < cells; ++i) {
        const Rational left = r * Rational(static_cast<long>(i)) / num_cells;
        const Rational right = r * Rational(static_cast<long>(i + 1)) / num_cells;
        const Rational mid = (left + right) / Rational(2);
        const Rational w_diag =
            quantize_weight(mu_cdf(rd, right.to_double()) - mu_cdf(rd, left.to_double()));
        const Rational w_graph =
            quantize_weight(nu_cdf(rd, right.to_double()) - nu_cdf(rd, left.to_double()));
        if (w_diag.is_positive()) atoms.push_back({Point2(mid, mid), w_diag, AtomLabel::diagonal});
        if (w_graph.is_positive())
            atoms.push_back({Point2(mid, tent_r(r, mid)), w_graph, AtomLabel::graph});
    }
    DiscreteMeasure m{std::move(atoms)};
    const Rational total = m.total_mass();
    if (!total.is_positive()) throw std::domain_error("discretization produced an empty measure");
    return scale_add(kOne() / total, m, kZero(), DiscreteMeasure());
}

namespace {

const char* label_name(AtomLabel label) {
    switch (label) {
        case AtomLabel::diagonal: return "diag";
        case AtomLabel::graph: return "graph";
        default: return "none";
    }
}

}  // namespace

void write_plot_csv(std::ostream& out, const DiscreteMeasure& m) {
    out << "x,y,weight,label\n";
    for (const auto& a : m.atoms())
        out << a.point.x.to_double() << ',' << a.point.y.to_double() << ','
            << a.weight.to_double() << ',' << label_name(a.label) << '\n';
}

void write_plot_csv(std::ostream& out, const CobwebMeasure& cw) {
    write_plot_csv(out, cw.measure);
    out << cw.start_point.x.to_double() << ',' << cw.start_point.y.to_double()
        << ",0,endpoint\n";
    out << cw.end_point.x.to_double() << ',' << cw.end_point.y.to_double() << ",0,endpoint\n";
}

}  // namespace coherent
