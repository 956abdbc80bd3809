#include <doctest.h>

#include <random>
#include <sstream>

#include "coherent/construction.hpp"
#include "coherent/measure.hpp"
#include "helpers.hpp"

using namespace coherent;

namespace {
Rational R(long n, long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("construction canonicalizes atoms") {
    DiscreteMeasure m({{Point2(R(1, 2), R(0)), R(1, 2), AtomLabel::none},
                       {Point2(R(1, 2), R(0)), R(1, 4), AtomLabel::none},
                       {Point2(R(0), R(0)), R(0), AtomLabel::none}});
    REQUIRE(m.size() == 1);
    CHECK(m.atoms()[0].weight == R(3, 4));
    CHECK(m.total_mass() == R(3, 4));
    CHECK_THROWS_AS(DiscreteMeasure({{Point2(R(0), R(0)), R(-1), AtomLabel::none}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Point2(R(2), R(0)), std::domain_error);
}

TEST_CASE("marginals of point masses") {
    const DiscreteMeasure delta({{Point2(R(1, 4), R(3, 4)), R(1), AtomLabel::none}});
    CHECK(marginal_x(delta) == Measure1D({{R(1, 4), R(1)}}));
    CHECK(marginal_y(delta) == Measure1D({{R(3, 4), R(1)}}));
}

TEST_CASE("marginal collapses a column") {
    const DiscreteMeasure m({{Point2(R(1, 2), R(0)), R(1, 2), AtomLabel::none},
                             {Point2(R(1, 2), R(1)), R(1, 2), AtomLabel::none}});
    CHECK(marginal_x(m) == Measure1D({{R(1, 2), R(1)}}));
}

TEST_CASE("marginal collapses a row") {
    const DiscreteMeasure m({{Point2(R(0), R(1, 3)), R(1), AtomLabel::none},
                             {Point2(R(1), R(1, 3)), R(2), AtomLabel::none}});
    CHECK(marginal_y(m) == Measure1D({{R(1, 3), R(3)}}));
}

TEST_CASE("cobweb marginal, frozen column sums") {
    // orbit 1/5, 2/5, 1/5, 2/5; merged measure has mass 27/47 in the column
    // at 1/5 and 20/47 at 2/5
    const CobwebMeasure cw = cobweb_measure(R(1, 2), R(1, 5), 3);
    const Measure1D mx = marginal_x(cw.measure);
    REQUIRE(mx.atoms().size() == 2);
    CHECK(mx.weight_at(R(1, 5)) == R(27, 47));
    CHECK(mx.weight_at(R(2, 5)) == R(20, 47));
}

TEST_CASE("mass conservation under marginals") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const DiscreteMeasure m = testutil::random_measure(rng);
        CHECK(marginal_x(m).total_mass() == m.total_mass());
        CHECK(marginal_y(m).total_mass() == m.total_mass());
    }
}

TEST_CASE("scale_add basics") {
    const DiscreteMeasure m({{Point2(R(1, 3), R(2, 3)), R(5), AtomLabel::none}});
    CHECK(scale_add(R(1), m, R(0), DiscreteMeasure()) == m);

    const DiscreteMeasure d00({{Point2(R(0), R(0)), R(1), AtomLabel::none}});
    const DiscreteMeasure d11({{Point2(R(1), R(1)), R(1), AtomLabel::none}});
    const DiscreteMeasure mix = scale_add(R(1, 2), d00, R(1, 2), d11);
    REQUIRE(mix.size() == 2);
    CHECK(mix.atoms()[0].weight == R(1, 2));
    CHECK(mix.atoms()[1].weight == R(1, 2));

    CHECK_THROWS_AS(scale_add(R(-1), m, R(0), m), std::invalid_argument);
}

TEST_CASE("cobweb components add back to the measure") {
    const CobwebMeasure cw = cobweb_measure(R(1, 2), R(1, 5), 6);
    CHECK(scale_add(R(1), cw.diagonal_part, R(1), cw.graph_part) == cw.measure);
}

TEST_CASE("marginal is linear over scale_add") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const DiscreteMeasure m1 = testutil::random_measure(rng);
        const DiscreteMeasure m2 = testutil::random_measure(rng);
        const Rational a = testutil::random_positive_rational(rng);
        const Rational b = testutil::random_positive_rational(rng);
        const Measure1D lhs = marginal_x(scale_add(a, m1, b, m2));
        // combine the marginals by hand
        const Measure1D mx1 = marginal_x(m1), mx2 = marginal_x(m2);
        std::vector<std::pair<Rational, Rational>> atoms;
        for (const auto& [x, w] : mx1.atoms()) atoms.emplace_back(x, a * w);
        for (const auto& [x, w] : mx2.atoms()) atoms.emplace_back(x, b * w);
        CHECK(lhs == Measure1D(std::move(atoms)));
    }
}

TEST_CASE("dominates ordering") {
    std::mt19937_64 rng(13);
    const DiscreteMeasure m = testutil::random_measure(rng);
    CHECK(dominates(m, m));
    const DiscreteMeasure half = scale_add(R(1, 2), m, R(0), DiscreteMeasure());
    CHECK(dominates(m, half));
    CHECK_FALSE(dominates(half, m));

    const DiscreteMeasure d00({{Point2(R(0), R(0)), R(1), AtomLabel::none}});
    const DiscreteMeasure d11({{Point2(R(1), R(1)), R(1), AtomLabel::none}});
    CHECK_FALSE(dominates(d00, d11));
}

TEST_CASE("dominates is antisymmetric on random pairs") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 200; ++i) {
        const DiscreteMeasure m1 = testutil::random_measure(rng);
        const DiscreteMeasure m2 = testutil::random_measure(rng);
        if (dominates(m1, m2) && dominates(m2, m1)) CHECK(m1 == m2);
    }
}

TEST_CASE("text format round-trip") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 100; ++i) {
        const DiscreteMeasure m = testutil::random_measure(rng);
        std::stringstream buf;
        write_measure(buf, m);
        CHECK(read_measure(buf) == m);
    }
}

TEST_CASE("text format accepts decimals, fractions, comments and labels") {
    std::istringstream in(
        "# a comment\n"
        "\n"
        "0.5 0.5 1 diag\n"
        "1/4 3/4 0.25 graph\n"
        "1/4 3/4 1/4\n");
    const DiscreteMeasure m = read_measure(in);
    REQUIRE(m.size() == 2);
    CHECK(m.weight_at(Point2(R(1, 2), R(1, 2))) == R(1));
    CHECK(m.weight_at(Point2(R(1, 4), R(3, 4))) == R(1, 2));
    CHECK(m.atoms()[1].label == AtomLabel::diagonal);
    // merged atoms with different labels lose the label
    CHECK(m.atoms()[0].label == AtomLabel::none);
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream two_tokens("0.5 0.5 1\nx y\n");
    CHECK_THROWS_AS(read_measure(two_tokens), MeasureParseError);
    std::istringstream bad_line("0.5 0.5 1\nx y\n");
    try {
        read_measure(bad_line);
        FAIL("expected parse error");
    } catch (const MeasureParseError& e) {
        CHECK(e.line == 2);
    }
    std::istringstream bad_label("0 0 1 purple\n");
    CHECK_THROWS_AS(read_measure(bad_label), MeasureParseError);
    std::istringstream bad_weight("0 0 -1\n");
    CHECK_THROWS_AS(read_measure(bad_weight), MeasureParseError);
    std::istringstream off_square("0.5 2 1\n");
    CHECK_THROWS_AS(read_measure(off_square), MeasureParseError);
}

TEST_CASE("empty input parses to the empty measure") {
    std::istringstream in("# only comments\n\n");
    CHECK(read_measure(in).empty());
}
