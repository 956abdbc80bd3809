#include "coherent/dynamics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace coherent {

namespace {
const Rational& kZero() { static const Rational v; return v; }
const Rational& kOne() { static const Rational v(1); return v; }
const Rational& kTwo() { static const Rational v(2); return v; }

void require_unit_range(const Rational& x, const char* what) {
    if (x < kZero() || x > kOne()) throw std::domain_error(what);
}
}  // namespace

Rational tent(const Rational& eta, const Rational& x) {
    if (eta < kZero() || eta > kTwo()) throw std::domain_error("tent slope outside [0,2]");
    require_unit_range(x, "tent argument outside [0,1]");
    return eta * min(x, kOne() - x);
}

Rational tent_r(const Rational& r, const Rational& x) {
    if (r <= kZero() || r >= kOne()) throw std::domain_error("rescaling parameter outside (0,1)");
    if (x < kZero() || x > r) throw std::domain_error("tent_r argument outside [0,r]");
    return kTwo() * min(x, r - x);
}

Orbit orbit(const Rational& r, const Rational& x0, std::size_t n) {
    Orbit o;
    o.r = r;
    o.start = x0;
    o.points.reserve(n + 1);
    o.points.push_back(x0);
    std::map<Rational, std::size_t> seen;
    seen.emplace(x0, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        Rational next = tent_r(r, o.points.back());
        if (!o.first_repeat) {
            auto [it, inserted] = seen.emplace(next, i);
            if (!inserted) {
                o.first_repeat = i;
                o.cycle_start = it->second;
            }
        }
        o.points.push_back(std::move(next));
    }
    return o;
}

IntervalUnion::IntervalUnion(std::vector<std::pair<Rational, Rational>> intervals) {
    for (const auto& [a, b] : intervals)
        if (b < a) throw std::invalid_argument("interval with negative length");
    std::sort(intervals.begin(), intervals.end());
    for (auto& iv : intervals) {
        if (!parts_.empty() && iv.first <= parts_.back().second)
            parts_.back().second = max(parts_.back().second, iv.second);
        else
            parts_.push_back(std::move(iv));
    }
}

Rational IntervalUnion::total_length() const {
    Rational len;
    for (const auto& [a, b] : parts_) len += b - a;
    return len;
}

bool IntervalUnion::contains(const Rational& x) const {
    for (const auto& [a, b] : parts_)
        if (a <= x && x <= b) return true;
    return false;
}

IntervalUnion preimage_interval(const Rational& r, const Rational& a, const Rational& b) {
    if (r <= kZero() || r >= kOne()) throw std::domain_error("rescaling parameter outside (0,1)");
    if (a < kZero() || b < a || b > r) throw std::domain_error("interval outside [0,r]");
    const Rational half(1, 2);
    return IntervalUnion({{a * half, b * half}, {r - b * half, r - a * half}});
}

double birkhoff_average(const Rational& r, const Rational& x0, std::size_t n) {
    if (n == 0) throw std::domain_error("average over zero steps");
    Rational x = x0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += x.to_double();
        x = tent_r(r, x);
    }
    return sum / static_cast<double>(n);
}

Rational Histogram::bin_width() const {
    if (values.empty()) throw std::domain_error("histogram with no bins");
    return domain_length / Rational(static_cast<long>(values.size()));
}

Rational Histogram::integral() const {
    Rational sum;
    for (const auto& v : values) sum += v;
    return sum * bin_width();
}

Rational Histogram::l1_distance(const Histogram& other) const {
    if (other.values.size() != values.size() || other.domain_length != domain_length)
        throw std::invalid_argument("histograms on different grids");
    Rational sum;
    for (std::size_t i = 0; i < values.size(); ++i) sum += abs(values[i] - other.values[i]);
    return sum * bin_width();
}

Histogram Histogram::uniform(const Rational& s, std::size_t k, const Rational& total_mass) {
    if (s <= kZero()) throw std::domain_error("domain length must be positive");
    if (k == 0) throw std::domain_error("histogram with no bins");
    Histogram h;
    h.domain_length = s;
    h.values.assign(k, total_mass / s);
    return h;
}

TentParams TentParams::full_tent() { return {kTwo(), std::nullopt}; }

TentParams TentParams::rescaled(const Rational& r) {
    if (r <= kZero() || r >= kOne()) throw std::domain_error("rescaling parameter outside (0,1)");
    return {kTwo(), r};
}

Rational TentParams::domain_length() const { return r ? *r : kOne(); }

Histogram transfer_step(const TentParams& params, const Histogram& h) {
    if (params.eta != kTwo())
        throw std::invalid_argument("transfer operator implemented for the full tent shape only");
    if (h.domain_length != params.domain_length())
        throw std::invalid_argument("histogram domain does not match the map domain");
    const std::size_t k = h.values.size();
    if (k == 0 || k % 2 != 0) throw std::invalid_argument("transfer step needs an even bin count");
    for (const auto& v : h.values)
        if (v.is_negative()) throw std::invalid_argument("negative density");

    // bin j of the image pulls from bin floor(j/2) via the left branch and
    // from its mirror via the right branch, each with derivative 1/2
    Histogram out;
    out.domain_length = h.domain_length;
    out.values.resize(k);
    const Rational half(1, 2);
    for (std::size_t j = 0; j < k; ++j)
        out.values[j] = half * (h.values[j / 2] + h.values[k - 1 - j / 2]);
    return out;
}

std::vector<Rational> ergodic_probe(const Rational& r, const Histogram& h0, std::size_t steps) {
    const std::size_t k = h0.values.size();
    if (k == 0 || (k & (k - 1)) != 0)
        throw std::invalid_argument("ergodic probe needs a power-of-two bin count");
    if (h0.domain_length != r) throw std::invalid_argument("histogram not on [0,r]");

    const Histogram target = Histogram::uniform(r, k, h0.integral());
    const TentParams params = TentParams::rescaled(r);
    std::vector<Rational> distances;
    distances.reserve(steps);
    Histogram h = h0;
    for (std::size_t i = 0; i < steps; ++i) {
        h = transfer_step(params, h);
        distances.push_back(h.l1_distance(target));
    }
    return distances;
}

}  // namespace coherent
