#include "coherent/coherence.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "coherent/linalg.hpp"

namespace coherent {

namespace {

const Rational& kZero() { static const Rational v; return v; }
const Rational& kOne() { static const Rational v(1); return v; }

std::vector<Rational> sorted_distinct_x(const DiscreteMeasure& m) {
    std::set<Rational> s;
    for (const auto& a : m.atoms()) s.insert(a.point.x);
    return {s.begin(), s.end()};
}

std::vector<Rational> sorted_distinct_y(const DiscreteMeasure& m) {
    std::set<Rational> s;
    for (const auto& a : m.atoms()) s.insert(a.point.y);
    return {s.begin(), s.end()};
}

RepresentationPair representation_from_solution(const DiscreteMeasure& m,
                                                const std::vector<Rational>& u) {
    std::vector<WeightedAtom> mu_atoms, nu_atoms;
    const auto& atoms = m.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!u[i].is_zero()) mu_atoms.push_back({atoms[i].point, u[i], atoms[i].label});
        const Rational rest = atoms[i].weight - u[i];
        if (!rest.is_zero()) nu_atoms.push_back({atoms[i].point, rest, atoms[i].label});
    }
    return {DiscreteMeasure(std::move(mu_atoms)), DiscreteMeasure(std::move(nu_atoms))};
}

}  // namespace

bool satisfies_r_conditions(const RepresentationPair& rep) {
    const Measure1D mux = marginal_x(rep.mu), nux = marginal_x(rep.nu);
    const Measure1D muy = marginal_y(rep.mu), nuy = marginal_y(rep.nu);
    std::set<Rational> xs, ys;
    for (const auto& [x, w] : mux.atoms()) xs.insert(x);
    for (const auto& [x, w] : nux.atoms()) xs.insert(x);
    for (const auto& [y, w] : muy.atoms()) ys.insert(y);
    for (const auto& [y, w] : nuy.atoms()) ys.insert(y);
    for (const auto& a : xs)
        if ((kOne() - a) * mux.weight_at(a) != a * nux.weight_at(a)) return false;
    for (const auto& b : ys)
        if ((kOne() - b) * muy.weight_at(b) != b * nuy.weight_at(b)) return false;
    return true;
}

FeasibilitySystem build_system(const DiscreteMeasure& m) {
    if (m.empty()) throw std::invalid_argument("empty measure");

    FeasibilitySystem sys;
    sys.column_values = sorted_distinct_x(m);
    sys.row_values = sorted_distinct_y(m);
    const auto& atoms = m.atoms();
    const std::size_t n = atoms.size();
    for (const auto& a : atoms) {
        sys.atom_points.push_back(a.point);
        sys.lp.lower.push_back(kZero());
        sys.lp.upper.push_back(a.weight);
    }

    const Measure1D colmass = marginal_x(m);
    const Measure1D rowmass = marginal_y(m);
    for (const auto& a : sys.column_values) {
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < n; ++i)
            if (atoms[i].point.x == a) row[i] = kOne();
        sys.lp.coeffs.push_back(std::move(row));
        sys.lp.rhs.push_back(a * colmass.weight_at(a));
    }
    for (const auto& b : sys.row_values) {
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < n; ++i)
            if (atoms[i].point.y == b) row[i] = kOne();
        sys.lp.coeffs.push_back(std::move(row));
        sys.lp.rhs.push_back(b * rowmass.weight_at(b));
    }
    return sys;
}

CoherenceReport check_coherence(const DiscreteMeasure& m) {
    const FeasibilitySystem sys = build_system(m);
    SimplexSolver solver(sys.lp);
    CoherenceReport report;
    report.defect = solver.phase1();
    report.feasible = report.defect.is_zero();
    if (report.feasible) report.representation = representation_from_solution(m, solver.solution());
    return report;
}

Rational coherence_defect(const DiscreteMeasure& m) { return check_coherence(m).defect; }

UniquenessResult check_uniqueness(const DiscreteMeasure& m) {
    const FeasibilitySystem sys = build_system(m);
    SimplexSolver solver(sys.lp);
    if (!solver.feasible()) throw std::invalid_argument("not coherent");
    // same deterministic solve as check_coherence, so this matches the
    // primary representation reported there
    const std::vector<Rational> primary = solver.solution();

    const std::size_t n = sys.lp.num_vars();
    std::vector<Rational> objective(n);
    for (std::size_t i = 0; i < n; ++i) {
        objective[i] = kOne();
        const Rational lo = solver.minimize(objective);
        const std::vector<Rational> at_min = solver.solution();
        const Rational hi = solver.maximize(objective);
        const std::vector<Rational> at_max = solver.solution();
        objective[i] = kZero();
        if (lo != hi) {
            UniquenessResult res;
            res.unique = false;
            res.witness = representation_from_solution(
                m, primary[i] != at_max[i] ? at_max : at_min);
            return res;
        }
    }
    return {true, std::nullopt};
}

namespace {

/// Homogeneous marginal system over the supports of (mu, nu): variables are
/// mu-weights then nu-weights; rows are column then row conditions.
RationalMatrix minimality_matrix(const RepresentationPair& rep, std::size_t& num_vars) {
    const auto& mu_atoms = rep.mu.atoms();
    const auto& nu_atoms = rep.nu.atoms();
    const std::size_t nmu = mu_atoms.size(), nnu = nu_atoms.size();
    num_vars = nmu + nnu;

    std::set<Rational> xs, ys;
    for (const auto& a : mu_atoms) xs.insert(a.point.x), ys.insert(a.point.y);
    for (const auto& a : nu_atoms) xs.insert(a.point.x), ys.insert(a.point.y);

    RationalMatrix mat;
    for (const auto& a : xs) {
        std::vector<Rational> row(num_vars);
        for (std::size_t i = 0; i < nmu; ++i)
            if (mu_atoms[i].point.x == a) row[i] = kOne() - a;
        for (std::size_t i = 0; i < nnu; ++i)
            if (nu_atoms[i].point.x == a) row[nmu + i] = -a;
        mat.push_back(std::move(row));
    }
    for (const auto& b : ys) {
        std::vector<Rational> row(num_vars);
        for (std::size_t i = 0; i < nmu; ++i)
            if (mu_atoms[i].point.y == b) row[i] = kOne() - b;
        for (std::size_t i = 0; i < nnu; ++i)
            if (nu_atoms[i].point.y == b) row[nmu + i] = -b;
        mat.push_back(std::move(row));
    }
    return mat;
}

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    // both nonzero vectors of equal length
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

}  // namespace

MinimalityResult check_minimality(const RepresentationPair& rep) {
    if (rep.mu.empty() && rep.nu.empty())
        throw std::invalid_argument("not a representation");
    if (!satisfies_r_conditions(rep)) throw std::invalid_argument("not a representation");

    std::size_t num_vars = 0;
    RationalMatrix mat = minimality_matrix(rep, num_vars);
    const auto basis = null_space_basis(std::move(mat), num_vars);

    MinimalityResult res;
    res.null_space_dim = basis.size();
    res.minimal = basis.size() == 1;
    if (res.minimal || basis.empty()) return res;

    // the pair's own weight vector, in variable order
    const auto& mu_atoms = rep.mu.atoms();
    const auto& nu_atoms = rep.nu.atoms();
    std::vector<Rational> self(num_vars);
    for (std::size_t i = 0; i < mu_atoms.size(); ++i) self[i] = mu_atoms[i].weight;
    for (std::size_t i = 0; i < nu_atoms.size(); ++i) self[mu_atoms.size() + i] = nu_atoms[i].weight;

    for (const auto& dir : basis) {
        if (proportional(dir, self)) continue;
        // eps keeps ((mu,nu) + eps*dir)/2 strictly inside [0, (mu,nu)]
        std::optional<Rational> eps;
        for (std::size_t i = 0; i < num_vars; ++i) {
            if (dir[i].is_zero()) continue;
            const Rational cand = self[i] / abs(dir[i]);
            if (!eps || cand < *eps) eps = cand;
        }
        SignedPair witness;
        for (std::size_t i = 0; i < mu_atoms.size(); ++i)
            if (!dir[i].is_zero()) witness.mu_part.emplace_back(mu_atoms[i].point, dir[i]);
        for (std::size_t i = 0; i < nu_atoms.size(); ++i)
            if (!dir[mu_atoms.size() + i].is_zero())
                witness.nu_part.emplace_back(nu_atoms[i].point, dir[mu_atoms.size() + i]);
        res.witness_direction = std::move(witness);
        res.witness_epsilon = *eps / Rational(2);
        return res;
    }
    throw std::logic_error("null space of dimension >= 2 without independent direction");
}

ExtremalityReport check_extreme(const DiscreteMeasure& m) {
    if (m.empty()) throw std::invalid_argument("empty measure");
    const Rational mass = m.total_mass();
    const DiscreteMeasure normalized =
        mass == kOne() ? m : scale_add(kOne() / mass, m, kZero(), DiscreteMeasure());

    ExtremalityReport report;
    CoherenceReport coh = check_coherence(normalized);
    report.coherent = coh.feasible;
    report.defect = coh.defect;
    if (!coh.feasible) return report;
    report.representation = coh.representation;

    UniquenessResult uniq = check_uniqueness(normalized);
    report.unique = uniq.unique;
    report.witness_alt_representation = std::move(uniq.witness);

    MinimalityResult min = check_minimality(*coh.representation);
    report.minimal = min.minimal;
    report.null_space_dim = min.null_space_dim;
    report.witness_null_direction = std::move(min.witness_direction);
    report.witness_epsilon = std::move(min.witness_epsilon);

    report.extreme = report.coherent && report.unique && report.minimal;
    return report;
}

std::pair<DiscreteMeasure, RepresentationPair> from_expert_model(const ExpertModel& em) {
    const std::size_t n = em.weights.size();
    if (n == 0) throw std::invalid_argument("empty outcome space");
    for (const auto& w : em.weights)
        if (!w.is_positive()) throw std::invalid_argument("outcome weights must be positive");

    auto validate_partition = [n](const std::vector<std::vector<std::size_t>>& cells) {
        std::vector<bool> seen(n, false);
        for (const auto& cell : cells) {
            if (cell.empty()) throw std::invalid_argument("conditioning on null cell");
            for (std::size_t i : cell) {
                if (i >= n) throw std::invalid_argument("outcome index out of range");
                if (seen[i]) throw std::invalid_argument("partition cells overlap");
                seen[i] = true;
            }
        }
        for (bool s : seen)
            if (!s) throw std::invalid_argument("partition does not cover the outcome space");
    };
    validate_partition(em.partition1);
    validate_partition(em.partition2);

    std::vector<bool> in_event(n, false);
    for (std::size_t i : em.event) {
        if (i >= n) throw std::invalid_argument("event index out of range");
        in_event[i] = true;
    }

    Rational total;
    for (const auto& w : em.weights) total += w;

    // conditional probability of the event given the cell of each outcome
    auto conditionals = [&](const std::vector<std::vector<std::size_t>>& cells) {
        std::vector<Rational> cond(n);
        for (const auto& cell : cells) {
            Rational cell_mass, event_mass;
            for (std::size_t i : cell) {
                cell_mass += em.weights[i];
                if (in_event[i]) event_mass += em.weights[i];
            }
            const Rational p = event_mass / cell_mass;
            for (std::size_t i : cell) cond[i] = p;
        }
        return cond;
    };
    const std::vector<Rational> xs = conditionals(em.partition1);
    const std::vector<Rational> ys = conditionals(em.partition2);

    std::vector<WeightedAtom> all, mu_atoms, nu_atoms;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 p(xs[i], ys[i]);
        const Rational w = em.weights[i] / total;
        all.push_back({p, w, AtomLabel::none});
        (in_event[i] ? mu_atoms : nu_atoms).push_back({p, w, AtomLabel::none});
    }
    return {DiscreteMeasure(std::move(all)),
            {DiscreteMeasure(std::move(mu_atoms)), DiscreteMeasure(std::move(nu_atoms))}};
}

namespace {

std::vector<std::vector<std::size_t>> parse_cells(const std::string& text, std::size_t lineno) {
    std::vector<std::vector<std::size_t>> cells;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        if (text[pos] != '[') throw MeasureParseError(lineno, "expected '[' in partition");
        const auto close = text.find(']', pos);
        if (close == std::string::npos) throw MeasureParseError(lineno, "unterminated cell");
        std::istringstream cs(text.substr(pos + 1, close - pos - 1));
        std::vector<std::size_t> cell;
        long idx = 0;
        while (cs >> idx) {
            if (idx < 1) throw MeasureParseError(lineno, "outcome indices are 1-based");
            cell.push_back(static_cast<std::size_t>(idx - 1));
        }
        if (!cs.eof()) throw MeasureParseError(lineno, "bad cell contents");
        cells.push_back(std::move(cell));
        pos = close + 1;
    }
    return cells;
}

}  // namespace

ExpertModel read_expert_model(std::istream& in) {
    ExpertModel em;
    std::string line;
    std::size_t lineno = 0;
    int fields = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key.front() == '#') continue;
        if (key == "weights") {
            std::string tok;
            while (ls >> tok) em.weights.push_back(Rational::parse(tok));
            if (em.weights.empty()) throw MeasureParseError(lineno, "no weights");
        } else if (key == "event") {
            long idx = 0;
            while (ls >> idx) {
                if (idx < 1) throw MeasureParseError(lineno, "outcome indices are 1-based");
                em.event.push_back(static_cast<std::size_t>(idx - 1));
            }
            if (!ls.eof()) throw MeasureParseError(lineno, "bad event line");
        } else if (key == "partition1" || key == "partition2") {
            std::string rest;
            std::getline(ls, rest);
            auto cells = parse_cells(rest, lineno);
            (key == "partition1" ? em.partition1 : em.partition2) = std::move(cells);
        } else {
            throw MeasureParseError(lineno, "unknown directive '" + key + "'");
        }
        ++fields;
    }
    if (em.weights.empty() || em.partition1.empty() || em.partition2.empty())
        throw MeasureParseError(lineno, "model needs weights, partition1 and partition2");
    return em;
}

ExpertModel read_expert_model_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    return read_expert_model(f);
}

}  // namespace coherent
