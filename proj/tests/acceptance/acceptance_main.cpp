// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/solver.hpp"
#include "volterra/stability.hpp"
#include "volterra/verify.hpp"

using namespace volterra;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::printf("criterion %2d %s: %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

Problem jung_problem(int n) {
    return Problem(KernelForm::state_only([](double s, double y) { return s * y; }),
                   make_grid(0.0, 2.0, n), 2.0);
}

Problem affine_problem(int n) {
    return Problem(KernelForm::state_only([](double, double y) { return y + 1.0; }),
                   make_grid(0.0, 1.0, n), 1.0);
}

Problem bilinear_problem(int n) {
    return Problem(KernelForm::bivariate([](double t, double s, double y) { return t * s * y; }),
                   make_grid(0.0, 1.0, n), 1.0);
}

const double kEtaStar = 1.0 + std::sqrt(2.0);

// 1. Homogeneous kernel on [0,2]: the classical product condition fails while
//    the certificate exists, with eta* and the factor pinned to the oracle.
void criterion_1() {
    const double L = 2.0;
    Grid grid = make_grid(0.0, 2.0, 1000);
    ClassicReport classic = check_classic_conditions(L, grid);

    const double eta = optimal_eta(L, grid.r());
    const double golden = oracles::golden_section_min(
        [L](double e) { return bound_factor(L, 2.0, e); }, L + 1e-6, 50.0);
    const double factor = bound_factor(L, 2.0, eta);
    const double factor_golden = bound_factor(L, 2.0, golden);

    bool cert_valid = false;
    try {
        Certificate cert = hu_bound(1.0, L, grid.r(), eta);
        ScalarField bound = cert.bound_on(grid);
        cert_valid = cert.factor() == factor && max_abs(bound) > 0.0;
        for (int i = 0; i <= grid.n() && cert_valid; ++i) cert_valid = bound[i] > 0.0;
    } catch (const std::exception&) {
        cert_valid = false;
    }

    const bool ok = classic.lr_product > 1.0 && !classic.hu_applicable &&
                    std::abs(eta - kEtaStar) <= 1e-9 &&
                    std::abs(factor - factor_golden) <= 1e-6 * factor_golden &&
                    std::abs(factor - 728.6) < 1.0 && cert_valid;
    std::ostringstream what;
    what << "homogeneous-kernel reproduction: L*r = " << classic.lr_product
         << " > 1, eta* = " << eta << ", factor = " << factor;
    report(1, ok, what.str());
}

// 2. Exponential weight: K = 1 admissible on the grid, K*L = 2 > 1, and the
//    weighted certificate still comes out valid.
void criterion_2() {
    const double L = 2.0;
    Grid grid = make_grid(0.0, 2.0, 1000);
    WeightFunction phi = WeightFunction::general([](double t) { return std::exp(t); });

    const double k_min = minimal_K(phi, grid);
    const double k_oracle = 1.0 - std::exp(-2.0);
    ClassicReport classic = check_classic_conditions(L, grid, phi);

    bool cert_valid = false;
    double factor = 0.0;
    try {
        Certificate cert = hur_bound(phi, L, grid, optimal_eta(L, grid.r()));
        factor = cert.factor();
        ScalarField bound = cert.bound_on(grid);
        cert_valid = factor > 1.0;
        for (int i = 0; i <= grid.n() && cert_valid; ++i) cert_valid = bound[i] > 0.0;
    } catch (const std::exception&) {
        cert_valid = false;
    }

    const bool ok = k_min <= 1.0 + 1e-9 && std::abs(k_min - k_oracle) <= 1e-4 &&
                    1.0 * L > 1.0 && classic.hur_applicable.has_value() &&
                    !*classic.hur_applicable && cert_valid;
    std::ostringstream what;
    what << "exponential-weight reproduction: K_min = " << k_min << " (oracle " << k_oracle
         << "), K*L = " << 1.0 * L << " > 1, factor = " << factor;
    report(2, ok, what.str());
}

// 3. Soundness sweep: at least 100 seeded admissible perturbations across the
//    three kernel families, zero bound violations allowed.
void criterion_3() {
    struct Family {
        Problem p;
        double eps;
        bool allow_hur;
    };
    std::vector<Family> families;
    families.push_back({jung_problem(800), 0.1, true});
    families.push_back({affine_problem(800), 0.1, false});
    families.push_back({bilinear_problem(300), 0.05, false});

    int cases = 0;
    int violations = 0;
    int inadmissible = 0;
    for (const auto& family : families) {
        const Problem& p = family.p;
        const double eta = optimal_eta(p.lipschitz(), p.grid().r());
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const bool use_hur = family.allow_hur && seed % 2 == 1;
            WeightFunction target =
                use_hur ? WeightFunction::general([](double t) { return std::exp(t); })
                        : WeightFunction::constant(family.eps);
            Certificate cert =
                use_hur ? hur_bound(target, p.lipschitz(), p.grid(), eta)
                        : hu_bound(family.eps, p.lipschitz(), p.grid().r(), eta);
            const PerturbationKind kind = seed % 3 == 0   ? PerturbationKind::ConstantDefect
                                          : seed % 3 == 1 ? PerturbationKind::RandomSmooth
                                                          : PerturbationKind::ScaledShape;
            const double magnitude = use_hur ? 1.0 : family.eps;

            SolveResult base = picard_solve(p, ScalarField::zeros(p.grid()), eta, target);
            ScalarField y = make_perturbation(p, base.solution, kind, magnitude, seed, target);
            VerifyReport rep = verify_stability(p, y, target, cert);
            ++cases;
            if (!rep.defect_admissible) ++inadmissible;
            if (!rep.bound_satisfied) ++violations;
        }
    }
    const bool ok = cases >= 300 && violations == 0 && inadmissible == 0;
    std::ostringstream what;
    what << "soundness sweep: " << cases << " admissible perturbations (100 per kernel family), "
         << violations << " bound violations, " << inadmissible << " inadmissible";
    report(3, ok, what.str());
}

// 4. Measured contraction factor at n = 2000 stays below L/eta with an
//    allowance no larger than 1e-4.
void criterion_4() {
    Problem p = jung_problem(2000);
    WeightFunction one = WeightFunction::constant(1.0);
    const double measured = estimate_contraction_factor(p, kEtaStar, one, 50, 2024);
    const double allowance = contraction_allowance(p, kEtaStar, one);
    const double lambda = p.lipschitz() / kEtaStar;
    const bool ok = measured <= lambda + allowance && allowance <= 1e-4;
    std::ostringstream what;
    what << "contraction measurement: max ratio " << measured << " <= " << lambda << " + "
         << allowance;
    report(4, ok, what.str());
}

// 5. Picard and the stepping oracle agree at n = 1000; stepping converges at
//    order two against the closed form for the affine kernel.
void criterion_5() {
    bool ok = true;
    std::ostringstream what;
    what << "oracle equivalence:";
    {
        Problem p = jung_problem(1000);
        SolveResult res = picard_solve(p, ScalarField::zeros(p.grid()), kEtaStar,
                                       WeightFunction::constant(1.0));
        const double gap = max_abs_diff(res.solution, stepping_solve(p, p.grid()));
        ok = ok && res.converged && gap <= 1e-6;
        what << " homogeneous gap " << gap;
    }
    {
        Problem p = affine_problem(1000);
        SolveResult res =
            picard_solve(p, ScalarField::zeros(p.grid()), 2.0, WeightFunction::constant(1.0));
        const double gap = max_abs_diff(res.solution, stepping_solve(p, p.grid()));
        ok = ok && res.converged && gap <= 1e-6;
        what << ", affine gap " << gap;
    }
    {
        Problem p = bilinear_problem(1000);
        SolveResult res = picard_solve(p, ScalarField::zeros(p.grid()), optimal_eta(1.0, 1.0),
                                       WeightFunction::constant(1.0));
        const double gap = max_abs_diff(res.solution, stepping_solve(p, p.grid()));
        ok = ok && res.converged && gap <= 1e-6;
        what << ", bivariate gap " << gap;
    }
    {
        // Inhomogeneous bivariate kernel so the cross-check compares a
        // nontrivial solution.
        Problem p(KernelForm::bivariate(
                      [](double t, double s, double y) { return t * s * y + 1.0; }),
                  make_grid(0.0, 1.0, 1000), 1.0);
        SolveResult res = picard_solve(p, ScalarField::zeros(p.grid()), optimal_eta(1.0, 1.0),
                                       WeightFunction::constant(1.0));
        const double gap = max_abs_diff(res.solution, stepping_solve(p, p.grid()));
        ok = ok && res.converged && gap <= 1e-6;
        what << ", inhomogeneous bivariate gap " << gap;
    }
    auto stepping_error = [](int n) {
        Problem p = affine_problem(n);
        ScalarField sol = stepping_solve(p, p.grid());
        double worst = 0.0;
        for (int i = 0; i <= n; ++i) {
            worst = std::max(worst, std::abs(sol[i] - (std::exp(p.grid().node(i)) - 1.0)));
        }
        return worst;
    };
    const double ratio = stepping_error(1000) / stepping_error(2000);
    ok = ok && ratio >= 3.5 && ratio <= 4.5;
    what << ", refinement ratio " << ratio;
    report(5, ok, what.str());
}

// 6. A-posteriori distance bound for 20 random fields.
void criterion_6() {
    Problem p = jung_problem(1000);
    WeightFunction one = WeightFunction::constant(1.0);
    const double lambda = p.lipschitz() / kEtaStar;
    const double c_h = contraction_allowance(p, kEtaStar, one);
    SolveResult fix = picard_solve(p, ScalarField::zeros(p.grid()), kEtaStar, one);

    std::mt19937_64 rng(606);
    bool ok = fix.converged;
    double worst_margin = -1e300;
    for (int rep = 0; rep < 20; ++rep) {
        ScalarField y = random_polynomial_field(p.grid(), rng);
        const double residual =
            bielecki_distance(apply_volterra_operator(p, y), y, kEtaStar, one);
        const double dist = bielecki_distance(y, fix.solution, kEtaStar, one);
        const double allowance =
            residual * (1.0 / (1.0 - lambda - c_h) - 1.0 / (1.0 - lambda)) +
            2.0 * fix.final_step_distance / (1.0 - lambda - c_h);
        const double margin = dist - residual / (1.0 - lambda) - allowance;
        worst_margin = std::max(worst_margin, margin);
        ok = ok && margin <= 0.0;
    }
    std::ostringstream what;
    what << "a-posteriori bound over 20 fields, worst margin " << worst_margin;
    report(6, ok, what.str());
}

// 7. Metric axioms over 200 random triples. Symmetry and identity are
//    bitwise; the triangle comparison gets only its own 4-eps IEEE rounding
//    boundary (real-number ties at a shared argmax node round both ways), no
//    numerical tolerance.
void criterion_7() {
    Grid g = make_grid(0.0, 2.0, 400);
    WeightFunction phi = WeightFunction::general([](double t) { return 1.0 + t; });
    const double eta = 1.5;
    std::mt19937_64 rng(707);
    bool ok = true;
    for (int rep = 0; rep < 200; ++rep) {
        ScalarField a = random_polynomial_field(g, rng);
        ScalarField b = random_polynomial_field(g, rng);
        ScalarField c = random_polynomial_field(g, rng);
        const double dab = bielecki_distance(a, b, eta, phi);
        ok = ok && dab == bielecki_distance(b, a, eta, phi);
        ok = ok && bielecki_distance(a, c, eta, phi) <=
                       (dab + bielecki_distance(b, c, eta, phi)) * (1.0 + 4.0 * DBL_EPSILON);
        ok = ok && bielecki_distance(a, a, eta, phi) == 0.0;
    }
    report(7, ok, "metric axioms (symmetry, triangle, identity) over 200 triples");
}

// 8. Weighted-integral inequality for three weights and three exponents.
void criterion_8() {
    Grid g = make_grid(0.0, 2.0, 1000);
    std::vector<std::pair<std::string, WeightFunction>> weights;
    weights.emplace_back("exp(t)",
                         WeightFunction::general([](double t) { return std::exp(t); }));
    weights.emplace_back("1", WeightFunction::constant(1.0));
    weights.emplace_back("1+t^2",
                         WeightFunction::general([](double t) { return 1.0 + t * t; }));
    bool ok = true;
    double worst_excess = -1e300;
    for (const auto& [name, phi] : weights) {
        for (double eta : {0.5, kEtaStar, 10.0}) {
            auto rep = check_weighted_integral_inequality(phi, eta, g);
            worst_excess = std::max(worst_excess, rep.max_violation - rep.allowance);
            ok = ok && rep.pass;
        }
    }
    std::ostringstream what;
    what << "weighted-integral inequality, worst violation minus allowance " << worst_excess;
    report(8, ok, what.str());
}

// 9. Stationarity identity for 50 random (L, r) pairs.
void criterion_9() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    bool ok = true;
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const double L = u(rng);
        const double r = u(rng);
        const double eta = optimal_eta(L, r);
        const double rel = std::abs(eta * (eta - L) - L / r) / (L / r);
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-10;
    }
    std::ostringstream what;
    what << "stationarity identity eta*(eta*-L) = L/r, worst relative error " << worst;
    report(9, ok, what.str());
}

// 10. Two CLI runs of `reproduce all --seed 0` produce byte-identical artifacts.
void criterion_10() {
#ifndef VOLTERRA_CLI_PATH
    report(10, false, "determinism: CLI path not configured");
#else
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "volterra-acceptance";
    const fs::path dir_a = base / "run-a";
    const fs::path dir_b = base / "run-b";
    fs::remove_all(base);
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);

    auto run = [&](const fs::path& dir) {
        std::ostringstream cmd;
        cmd << '"' << VOLTERRA_CLI_PATH << '"' << " reproduce all --seed 0 --n 600 --out "
            << dir << " > " << (dir / "stdout.txt") << " 2>&1";
        return std::system(cmd.str().c_str());
    };
    const int rc_a = run(dir_a);
    const int rc_b = run(dir_b);

    auto slurp = [](const fs::path& p) -> std::string {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    bool identical = rc_a == 0 && rc_b == 0;
    int compared = 0;
    for (const char* name :
         {"reproduce-example-3-1.json", "reproduce-example-3-1.csv",
          "reproduce-example-3-2.json", "reproduce-example-3-2.csv"}) {
        const std::string a = slurp(dir_a / name);
        const std::string b = slurp(dir_b / name);
        identical = identical && !a.empty() && a == b;
        ++compared;
    }
    std::ostringstream what;
    what << "determinism: " << compared << " artifacts byte-compared, exit codes " << rc_a
         << "/" << rc_b;
    report(10, identical, what.str());
#endif
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures == 0) {
        std::printf("all 10 acceptance criteria passed\n");
        return EXIT_SUCCESS;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return EXIT_FAILURE;
}
