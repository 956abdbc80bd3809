#include "coherent/measure.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace coherent {

namespace {
const Rational& kZero() { static const Rational v; return v; }
const Rational& kOne() { static const Rational v(1); return v; }
}  // namespace

Point2::Point2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
    if (x < kZero() || x > kOne() || y < kZero() || y > kOne())
        throw std::domain_error("point outside the unit square");
}

DiscreteMeasure::DiscreteMeasure(std::vector<WeightedAtom> atoms) {
    for (const auto& a : atoms)
        if (a.weight.is_negative()) throw std::invalid_argument("negative atom weight");
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const WeightedAtom& a, const WeightedAtom& b) { return a.point < b.point; });
    for (auto& a : atoms) {
        if (a.weight.is_zero()) continue;
        if (!atoms_.empty() && atoms_.back().point == a.point) {
            atoms_.back().weight += a.weight;
            if (atoms_.back().label != a.label) atoms_.back().label = AtomLabel::none;
        } else {
            atoms_.push_back(std::move(a));
        }
    }
}

Rational DiscreteMeasure::total_mass() const {
    Rational t;
    for (const auto& a : atoms_) t += a.weight;
    return t;
}

Rational DiscreteMeasure::weight_at(const Point2& p) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                               [](const WeightedAtom& a, const Point2& q) { return a.point < q; });
    if (it != atoms_.end() && it->point == p) return it->weight;
    return kZero();
}

bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.atoms_.size() != b.atoms_.size()) return false;
    for (std::size_t i = 0; i < a.atoms_.size(); ++i)
        if (a.atoms_[i].point != b.atoms_[i].point || a.atoms_[i].weight != b.atoms_[i].weight)
            return false;
    return true;
}

Measure1D::Measure1D(std::vector<std::pair<Rational, Rational>> atoms) {
    for (const auto& [x, w] : atoms) {
        if (w.is_negative()) throw std::invalid_argument("negative atom weight");
        if (x < kZero() || x > kOne()) throw std::domain_error("point outside the unit interval");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& a : atoms) {
        if (a.second.is_zero()) continue;
        if (!atoms_.empty() && atoms_.back().first == a.first)
            atoms_.back().second += a.second;
        else
            atoms_.push_back(std::move(a));
    }
}

Rational Measure1D::total_mass() const {
    Rational t;
    for (const auto& [x, w] : atoms_) t += w;
    return t;
}

Rational Measure1D::weight_at(const Rational& x) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                               [](const auto& a, const Rational& q) { return a.first < q; });
    if (it != atoms_.end() && it->first == x) return it->second;
    return kZero();
}

Measure1D marginal_x(const DiscreteMeasure& m) {
    std::vector<std::pair<Rational, Rational>> atoms;
    atoms.reserve(m.size());
    for (const auto& a : m.atoms()) atoms.emplace_back(a.point.x, a.weight);
    return Measure1D(std::move(atoms));
}

Measure1D marginal_y(const DiscreteMeasure& m) {
    std::vector<std::pair<Rational, Rational>> atoms;
    atoms.reserve(m.size());
    for (const auto& a : m.atoms()) atoms.emplace_back(a.point.y, a.weight);
    return Measure1D(std::move(atoms));
}

DiscreteMeasure scale_add(const Rational& a, const DiscreteMeasure& m1,
                          const Rational& b, const DiscreteMeasure& m2) {
    if (a.is_negative() || b.is_negative())
        throw std::invalid_argument("scale_add requires nonnegative coefficients");
    std::vector<WeightedAtom> atoms;
    atoms.reserve(m1.size() + m2.size());
    if (!a.is_zero())
        for (const auto& at : m1.atoms()) atoms.push_back({at.point, a * at.weight, at.label});
    if (!b.is_zero())
        for (const auto& at : m2.atoms()) atoms.push_back({at.point, b * at.weight, at.label});
    return DiscreteMeasure(std::move(atoms));
}

bool dominates(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
    for (const auto& a : m2.atoms())
        if (m1.weight_at(a.point) < a.weight) return false;
    return true;
}

MeasureParseError::MeasureParseError(std::size_t line_number, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
      line(line_number) {}

DiscreteMeasure read_measure(std::istream& in) {
    std::vector<WeightedAtom> atoms;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) {
            if (tok.front() == '#') break;
            tokens.push_back(tok);
        }
        if (tokens.empty()) continue;
        if (tokens.size() < 3 || tokens.size() > 4)
            throw MeasureParseError(lineno, "expected 'x y w [diag|graph]'");
        try {
            Point2 p(Rational::parse(tokens[0]), Rational::parse(tokens[1]));
            Rational w = Rational::parse(tokens[2]);
            AtomLabel label = AtomLabel::none;
            if (tokens.size() == 4) {
                if (tokens[3] == "diag")
                    label = AtomLabel::diagonal;
                else if (tokens[3] == "graph")
                    label = AtomLabel::graph;
                else
                    throw MeasureParseError(lineno, "unknown label '" + tokens[3] + "'");
            }
            if (w.is_negative()) throw MeasureParseError(lineno, "negative weight");
            atoms.push_back({p, std::move(w), label});
        } catch (const MeasureParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw MeasureParseError(lineno, e.what());
        }
    }
    return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure read_measure_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return read_measure(f);
}

void write_measure(std::ostream& out, const DiscreteMeasure& m) {
    for (const auto& a : m.atoms()) {
        out << a.point.x << ' ' << a.point.y << ' ' << a.weight;
        if (a.label == AtomLabel::diagonal) out << " diag";
        if (a.label == AtomLabel::graph) out << " graph";
        out << '\n';
    }
}

void write_measure_file(const std::string& path, const DiscreteMeasure& m) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_measure(f, m);
}

}  // namespace coherent
