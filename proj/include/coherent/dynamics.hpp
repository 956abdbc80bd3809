#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "coherent/rational.hpp"

namespace coherent {

/// T_eta(x) = eta * min(x, 1-x) on [0,1], exact.
Rational tent(const Rational& eta, const Rational& x);

/// t_r(x) = 2 * min(x, r-x) on [0,r], exact. Satisfies
/// tent_r(r, x) = r * tent(2, x/r).
Rational tent_r(const Rational& r, const Rational& x);

/// Exact forward orbit of t_r. Rational starting points are eventually
/// periodic, so the first index whose value already occurred is flagged
/// (cycle_start is the index of that earlier occurrence).
struct Orbit {
    Rational r;
    Rational start;
    std::vector<Rational> points;  // n+1 values, points[k+1] = t_r(points[k])
    std::optional<std::size_t> first_repeat;
    std::optional<std::size_t> cycle_start;
};

Orbit orbit(const Rational& r, const Rational& x0, std::size_t n);

/// Finite union of disjoint closed intervals with rational endpoints,
/// kept sorted; touching or overlapping parts merge on construction.
class IntervalUnion {
  public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<std::pair<Rational, Rational>> intervals);

    const std::vector<std::pair<Rational, Rational>>& parts() const { return parts_; }
    Rational total_length() const;
    bool contains(const Rational& x) const;

  private:
    std::vector<std::pair<Rational, Rational>> parts_;
};

/// t_r-preimage of [a,b] in [0,r]: the two branch preimages
/// [a/2, b/2] and [r - b/2, r - a/2], merged when they meet at r/2.
/// Total length is exactly b - a.
IntervalUnion preimage_interval(const Rational& r, const Rational& a, const Rational& b);

/// Time average (1/n) * sum of the first n orbit points, accumulated in
/// floating point over the exact orbit.
double birkhoff_average(const Rational& r, const Rational& x0, std::size_t n);

/// Piecewise-constant density on [0, s] with k equal bins; bin values are
/// exact nonnegative rationals.
struct Histogram {
    Rational domain_length;        // s > 0
    std::vector<Rational> values;  // densities, one per bin

    std::size_t bins() const { return values.size(); }
    Rational bin_width() const;
    Rational integral() const;
    Rational l1_distance(const Histogram& other) const;

    static Histogram uniform(const Rational& s, std::size_t k, const Rational& total_mass);
};

/// Map parameters. The transfer operator is implemented for the full tent
/// shape only: eta = 2 on [0,1], or its rescaling t_r on [0,r].
struct TentParams {
    Rational eta;
    std::optional<Rational> r;  // set for the rescaled map

    static TentParams full_tent();                 // T_2 on [0,1]
    static TentParams rescaled(const Rational& r); // t_r on [0,r]
    Rational domain_length() const;
};

/// One transfer-operator step for the full tent map on [0, s]:
///  (Lf)(x) = (f(x/2) + f(s - x/2)) / 2,
/// evaluated exactly on the histogram grid. Needs an even bin count and
/// preserves the integral exactly.
Histogram transfer_step(const TentParams& params, const Histogram& h);

/// Iterates the transfer operator of t_r from h0 (bin count must be a power
/// of two, domain [0,r]) and returns the exact L1 distance to the invariant
/// uniform density after each step. The distance reaches exactly zero after
/// at most log2(bins) steps.
std::vector<Rational> ergodic_probe(const Rational& r, const Histogram& h0, std::size_t steps);

}  // namespace coherent
