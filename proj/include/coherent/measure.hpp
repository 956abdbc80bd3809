#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "coherent/rational.hpp"

namespace coherent {

/// Advisory tag carried by atoms of constructed measures (diagonal = red
/// mass on the main diagonal, graph = blue mass on the graph of the map).
/// Decision procedures never look at it.
enum class AtomLabel { none, diagonal, graph };

/// A point of the unit square.
struct Point2 {
    Rational x;
    Rational y;

    Point2() = default;
    Point2(Rational px, Rational py);

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    friend bool operator<(const Point2& a, const Point2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

struct WeightedAtom {
    Point2 point;
    Rational weight;
    AtomLabel label = AtomLabel::none;
};

/// Finitely supported nonnegative measure on [0,1]^2 with exact rational
/// atom positions and weights. Construction canonicalizes: atoms are sorted
/// by position, duplicates are merged by summing weights, and zero-weight
/// atoms are dropped, so the support is always well defined.
class DiscreteMeasure {
  public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<WeightedAtom> atoms);

    const std::vector<WeightedAtom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    Rational total_mass() const;

    /// Weight at an exact point (0 if the point carries no atom).
    Rational weight_at(const Point2& p) const;

    friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

  private:
    std::vector<WeightedAtom> atoms_;  // sorted by point, weights > 0
};

/// Finitely supported nonnegative measure on [0,1]; canonicalized like
/// DiscreteMeasure.
class Measure1D {
  public:
    Measure1D() = default;
    explicit Measure1D(std::vector<std::pair<Rational, Rational>> atoms);

    const std::vector<std::pair<Rational, Rational>>& atoms() const { return atoms_; }
    Rational total_mass() const;
    Rational weight_at(const Rational& x) const;

    friend bool operator==(const Measure1D& a, const Measure1D& b) { return a.atoms_ == b.atoms_; }

  private:
    std::vector<std::pair<Rational, Rational>> atoms_;  // sorted by position
};

/// Marginal onto the first coordinate: mass of a column x = a is the sum of
/// the weights of all atoms in that column. Total mass is preserved exactly.
Measure1D marginal_x(const DiscreteMeasure& m);

/// Marginal onto the second coordinate.
Measure1D marginal_y(const DiscreteMeasure& m);

/// a*m1 + b*m2 with a, b >= 0, merged atom-wise; exact.
DiscreteMeasure scale_add(const Rational& a, const DiscreteMeasure& m1,
                          const Rational& b, const DiscreteMeasure& m2);

/// True iff m2 <= m1 atom-wise on the union of supports (absent atom = 0).
bool dominates(const DiscreteMeasure& m1, const DiscreteMeasure& m2);

/// Error thrown by the measure text parser; carries the 1-based line number.
struct MeasureParseError : std::runtime_error {
    MeasureParseError(std::size_t line_number, const std::string& what);
    std::size_t line;
};

/// Measure text format: one atom per line, "x y w" with each token either a
/// decimal literal or "p/q"; an optional fourth token "diag" or "graph" sets
/// the label. '#' starts a comment line; blank lines are ignored.
DiscreteMeasure read_measure(std::istream& in);
DiscreteMeasure read_measure_file(const std::string& path);
void write_measure(std::ostream& out, const DiscreteMeasure& m);
void write_measure_file(const std::string& path, const DiscreteMeasure& m);

}  // namespace coherent
