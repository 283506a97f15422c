#include "svx/harness.hpp"

#include "svx/blockview.hpp"
#include "svx/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

namespace svx {

namespace {

struct Check {
    const char* name;
    std::function<bool()> run;
};

bool products_match()
{
    Rng rng(derive_seed(11, Stream::Trial));
    const Matrix a = rng.gaussian_matrix(150, 90);
    const Matrix x = rng.gaussian_matrix(90, 7);
    const Matrix y = rng.gaussian_matrix(150, 7);
    return kernels::multiply(a, x) == kernels::multiply_serial(a, x) &&
           kernels::multiply_adjoint(a, y) == kernels::multiply_adjoint_serial(a, y) &&
           (kernels::multiply_serial(a, x) - a * x).norm() <= 1e-12 * (a * x).norm();
}

bool jordan_wielandt()
{
    Rng rng(derive_seed(12, Stream::Trial));
    const Matrix a = rng.gaussian_matrix(9, 5);
    Matrix h = Matrix::Zero(14, 14);
    h.topRightCorner(9, 5) = a;
    h.bottomLeftCorner(5, 9) = a.transpose();
    Vector eig = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
    std::sort(eig.data(), eig.data() + eig.size(), std::greater<>());
    const Vector s = kernels::singular_values(a);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        worst = std::max(worst, std::abs(eig(k) - s(k)));
        worst = std::max(worst, std::abs(eig(eig.size() - 1 - k) + s(k)));
    }
    for (Eigen::Index k = s.size(); k < eig.size() - s.size(); ++k)
        worst = std::max(worst, std::abs(eig(k)));
    return worst <= 1e-10 * s(0);
}

bool exact_subspaces_reproduce()
{
    ExperimentConfig cfg;
    cfg.m = 120;
    cfg.n = 100;
    cfg.r = 10;
    cfg.subspaces = SubspaceSource::Exact;
    cfg.bounds = {};
    const ExperimentReport rep = run_experiment(cfg, {false});
    return std::all_of(rep.rows.begin(), rep.rows.end(), [](const ReportRow& row) {
        return !row.failed && row.abs_error <= 1e-12 * 1.0;
    });
}

bool hmt_matches_gn()
{
    const SyntheticMatrix t = assemble_synthetic(sv_profile(ProfileKind::Algebraic, 80), 100, 13);
    const SubspacePair s = sketch_subspaces(t.a, 12, 0, 1, 13);
    CountingMatrix c1(t.a);
    CountingMatrix c2(t.a);
    const Vector hmt = extract_hmt(c1, s).sigma_hat;
    const Vector gn = extract_gn(c2, hmt_pair(t.a, s)).sigma_hat;
    return ((hmt - gn).array().abs() <= 1e-10 * hmt.array().abs()).all();
}

bool sweep_is_sound()
{
    ExperimentConfig cfg;
    cfg.m = 150;
    cfg.n = 120;
    cfg.r = 15;
    cfg.trials = 2;
    cfg.bounds = {BoundColumn::Weyl, BoundColumn::Forward, BoundColumn::Backward,
                  BoundColumn::BackwardApprox};
    const ExperimentReport rep = run_experiment(cfg);
    return rep.violations.empty() && verify_pass_counts(rep);
}

bool right_perturbation_consistent()
{
    Rng rng(derive_seed(14, Stream::Trial));
    Block2x2 h{rng.gaussian_matrix(4, 3), 0.05 * rng.gaussian_matrix(4, 5),
               0.05 * rng.gaussian_matrix(6, 3), 0.1 * rng.gaussian_matrix(6, 5)};
    h.g1 += 3.0 * Matrix::Identity(4, 3);
    const Matrix f1 = 0.01 * rng.gaussian_matrix(4, 5);
    const Matrix f2 = 0.01 * rng.gaussian_matrix(6, 5);
    PerturbationBlocks f{Matrix::Zero(4, 3), f1, Matrix::Zero(6, 3), f2, 0.0};
    f.norm_f = kernels::spectral_norm(f.assemble());
    const Vector sv = kernels::singular_values(h.assemble());
    const std::span<const double> sigma(sv.data(), static_cast<std::size_t>(sv.size()));
    const BoundReport general = block2x2_bound(h, f, sigma);
    const BoundReport special = right_perturbation_bound(h, f1, f2, sigma);
    for (std::size_t i = 0; i < general.size(); ++i)
        if (general[i].bound != special[i].bound || general[i].applicable != special[i].applicable)
            return false;
    return true;
}

} // namespace

bool run_selftest(std::ostream& log)
{
    const Check checks[] = {
        {"parallel products match serial reference", products_match},
        {"Jordan-Wielandt spectrum", jordan_wielandt},
        {"exact subspaces reproduce singular values", exact_subspaces_reproduce},
        {"HMT equals GN on (V, orth(AV))", hmt_matches_gn},
        {"right perturbation agrees with block bound", right_perturbation_consistent},
        {"bounds sound and pass counts match", sweep_is_sound},
    };
    bool ok = true;
    for (const Check& c : checks) {
        bool pass = false;
        try {
            pass = c.run();
        } catch (const std::exception& e) {
            log << "  error: " << e.what() << '\n';
        }
        log << (pass ? "PASS " : "FAIL ") << c.name << '\n';
        ok = ok && pass;
    }
    return ok;
}

} // namespace svx
