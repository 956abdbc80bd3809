// coherent-lab: command-line surface for the coherence/extremality checks,
// the tent-map constructions, and the dynamics probes.
//
// Exit codes: 0 success (verification passed), 1 verification failure,
// 2 input error (bad flags, parse errors, domain violations).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "coherent/coherence.hpp"
#include "coherent/construction.hpp"
#include "coherent/dynamics.hpp"
#include "coherent/measure.hpp"
#include "coherent/report_json.hpp"

namespace {

using namespace coherent;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("COHERENT_LAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

Rational random_rational_in(std::mt19937_64& rng, const Rational& hi, long max_den = 4096) {
    std::uniform_int_distribution<long> den(1, max_den);
    const long d = den(rng);
    std::uniform_int_distribution<long> num(0, d);
    return hi * Rational(num(rng), d);
}

int cmd_check(const std::string& path) {
    const DiscreteMeasure m = read_measure_file(path);
    const CoherenceReport report = check_coherence(m);
    print_json(to_json(report));
    return report.feasible ? kOk : kVerificationFailure;
}

int cmd_extreme(const std::string& path) {
    const DiscreteMeasure m = read_measure_file(path);
    const ExtremalityReport report = check_extreme(m);
    print_json(to_json(report));
    return report.extreme ? kOk : kVerificationFailure;
}

int cmd_cobweb(const std::string& r_text, const std::string& x0_text, std::size_t steps,
               const std::string& out_path, const std::string& csv_path) {
    const Rational r = Rational::parse(r_text);
    const Rational x0 = Rational::parse(x0_text);
    const CobwebMeasure cw = cobweb_measure(r, x0, steps);
    write_measure_file(out_path, cw.measure);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
        write_plot_csv(csv, cw);
    }
    const Rational defect = coherence_defect(cw.measure);
    print_json({{"out", out_path},
                {"atoms", cw.measure.size()},
                {"steps", steps},
                {"defect", defect.str()}});
    return kOk;
}

int cmd_mr(const std::string& r_text, std::size_t cells, const std::string& out_path,
           const std::string& csv_path, bool verify, std::size_t grid, double tol) {
    const Rational r = Rational::parse(r_text);
    const DiscreteMeasure m = discretize_mr(r, cells);
    if (!out_path.empty()) write_measure_file(out_path, m);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
        write_plot_csv(csv, m);
    }
    nlohmann::json j{{"atoms", m.size()}, {"cells", cells}};
    if (!out_path.empty()) j["out"] = out_path;
    bool ok = true;
    if (verify) {
        const RIdentityReport report = verify_r_identities(r.to_double(), grid, tol);
        ok = report.pass() && report.total_mass_error <= 1e-12;
        j["identities"] = {{"max_mu_error", report.max_mu_error},
                           {"max_nu_error", report.max_nu_error},
                           {"total_mass_error", report.total_mass_error},
                           {"grid", report.grid},
                           {"tolerance", report.tolerance},
                           {"pass", ok}};
    }
    print_json(j);
    return ok ? kOk : kVerificationFailure;
}

int probe_invariance(const Rational& r, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    for (std::size_t i = 0; i < count; ++i) {
        Rational a = random_rational_in(rng, r);
        Rational b = random_rational_in(rng, r);
        if (b < a) std::swap(a, b);
        if (preimage_interval(r, a, b).total_length() != b - a) ++failures;
    }
    print_json({{"probe", "invariance"},
                {"r", r.str()},
                {"intervals", count},
                {"failures", failures}});
    return failures == 0 ? kOk : kVerificationFailure;
}

int probe_birkhoff(const Rational& r, const std::string& x0_text, std::size_t n) {
    const Rational x0 = Rational::parse(x0_text);
    const double average = birkhoff_average(r, x0, n);
    print_json({{"probe", "birkhoff"},
                {"r", r.str()},
                {"x0", x0.str()},
                {"steps", n},
                {"average", average},
                {"half_r", r.to_double() / 2.0}});
    return kOk;
}

int probe_transfer(const Rational& r, std::size_t bins, std::size_t steps, std::uint64_t seed) {
    if (bins == 0 || (bins & (bins - 1)) != 0)
        throw std::domain_error("bin count must be a power of two");
    std::size_t log2k = 0;
    while ((std::size_t{1} << log2k) < bins) ++log2k;
    if (steps == 0) steps = log2k + 1;

    Histogram h0{r, std::vector<Rational>(bins, Rational(0))};
    if (seed == 0) {
        h0.values[0] = Rational(1);  // corner indicator
    } else {
        std::mt19937_64 rng(seed);
        for (auto& v : h0.values) v = random_rational_in(rng, Rational(1), 64);
        h0.values[0] += Rational(1);  // keep the histogram nonzero
    }
    const auto distances = ergodic_probe(r, h0, steps);
    bool monotone = true;
    for (std::size_t i = 1; i < distances.size(); ++i)
        if (distances[i] > distances[i - 1]) monotone = false;
    const bool reaches_uniform =
        log2k == 0 || (distances.size() >= log2k && distances[log2k - 1].is_zero());
    nlohmann::json dist = nlohmann::json::array();
    for (const auto& d : distances) dist.push_back(d.str());
    print_json({{"probe", "transfer"},
                {"r", r.str()},
                {"bins", bins},
                {"l1_distances", dist},
                {"monotone", monotone},
                {"uniform_within_log2k", reaches_uniform}});
    return monotone && reaches_uniform ? kOk : kVerificationFailure;
}

int cmd_expert(const std::string& path, const std::string& out_path) {
    const ExpertModel em = read_expert_model_file(path);
    const auto [m, rep] = from_expert_model(em);
    if (!out_path.empty()) write_measure_file(out_path, m);
    const CoherenceReport report = check_coherence(m);
    nlohmann::json j{{"measure", to_json(m)},
                     {"representation", to_json(rep)},
                     {"coherent", report.feasible},
                     {"defect", report.defect.str()}};
    if (!out_path.empty()) j["out"] = out_path;
    print_json(j);
    return report.feasible ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent distributions: exact coherence and extremality checks, "
                 "tent-map constructions, ergodic probes"};
    app.require_subcommand(1);

    std::string path, out_path, csv_path;
    std::string r_text = "1/2", x0_text = "0";
    std::size_t steps = 2, cells = 2, count = 1000, bins = 8, orbit_len = 1000, grid = 100;
    double tol = 1e-10;
    bool verify = false;
    std::optional<std::uint64_t> seed;
    std::string probe;

    CLI::App* check = app.add_subcommand("check", "decide coherence of a measure file");
    check->add_option("file", path, "measure in the text format")->required();

    CLI::App* extreme =
        app.add_subcommand("extreme", "full extremality verdict for a measure file");
    extreme->add_option("file", path, "measure in the text format")->required();

    CLI::App* cobweb = app.add_subcommand("cobweb", "build a weighted cobweb measure");
    cobweb->add_option("--r", r_text, "rescaling parameter in (0,1)")->required();
    cobweb->add_option("--x0", x0_text, "starting point in [0,r]")->required();
    cobweb->add_option("--n", steps, "number of iterations (>= 2)")->required();
    cobweb->add_option("--out", out_path, "output measure file")->required();
    cobweb->add_option("--csv", csv_path, "plot-data CSV");

    CLI::App* mr = app.add_subcommand("mr", "discretize the continuous construction");
    mr->add_option("--r", r_text, "parameter in (0,1)")->required();
    mr->add_option("--k", cells, "number of cells")->required();
    mr->add_option("--out", out_path, "output measure file");
    mr->add_option("--csv", csv_path, "plot-data CSV");
    mr->add_flag("--verify", verify, "check the weighted-marginal identities");
    mr->add_option("--grid", grid, "verification grid points")->capture_default_str();
    mr->add_option("--tol", tol, "verification tolerance")->capture_default_str();

    CLI::App* dynamics = app.add_subcommand("dynamics", "run a dynamics probe");
    dynamics->add_option("--r", r_text, "rescaling parameter in (0,1)")->required();
    dynamics->add_option("--probe", probe, "invariance | birkhoff | transfer")->required();
    dynamics->add_option("--seed", seed, "probe seed (env COHERENT_LAB_SEED as fallback)");
    dynamics->add_option("--count", count, "intervals for the invariance probe")->capture_default_str();
    dynamics->add_option("--x0", x0_text, "starting point for the birkhoff probe");
    dynamics->add_option("--n", orbit_len, "steps for the birkhoff probe")->capture_default_str();
    dynamics->add_option("--k", bins, "bins for the transfer probe")->capture_default_str();
    dynamics->add_option("--steps", steps, "steps for the transfer probe (0 = log2 k + 1)");

    CLI::App* expert = app.add_subcommand("expert", "build the joint law of an expert model");
    expert->add_option("file", path, "expert model in the text format")->required();
    expert->add_option("--out", out_path, "output measure file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (check->parsed()) return cmd_check(path);
        if (extreme->parsed()) return cmd_extreme(path);
        if (cobweb->parsed()) return cmd_cobweb(r_text, x0_text, steps, out_path, csv_path);
        if (mr->parsed()) return cmd_mr(r_text, cells, out_path, csv_path, verify, grid, tol);
        if (dynamics->parsed()) {
            const Rational r = Rational::parse(r_text);
            if (probe == "invariance") return probe_invariance(r, count, resolve_seed(seed));
            if (probe == "birkhoff") return probe_birkhoff(r, x0_text, orbit_len);
            if (probe == "transfer") {
                if (!dynamics->count("--steps")) steps = 0;
                return probe_transfer(r, bins, steps, resolve_seed(seed));
            }
            std::cerr << "unknown probe '" << probe << "'\n";
            return kInputError;
        }
        if (expert->parsed()) return cmd_expert(path, out_path);
    } catch (const MeasureParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
