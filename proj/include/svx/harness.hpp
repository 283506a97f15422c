#pragma once

#include "svx/bounds.hpp"
#include "svx/extract.hpp"
#include "svx/sketching.hpp"
#include "svx/synthgen.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svx {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class BoundColumn { Weyl, Forward, Backward, BackwardApprox, Improved };

std::string_view to_string(BoundColumn column);

struct ExperimentConfig {
    Eigen::Index m = 400;
    Eigen::Index n = 400;
    Eigen::Index r = 50;
    Eigen::Index ell = 0;
    ProfileKind decay = ProfileKind::Exponential;
    int q = 1;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::vector<Method> methods{Method::RR, Method::SVD, Method::GN, Method::HMT};
    std::vector<BoundColumn> bounds{BoundColumn::Weyl, BoundColumn::Forward};
    SubspaceSource subspaces = SubspaceSource::Sketched;

    /// n >= r >= 1, m >= max(n, r + ell), q >= 1, trials >= 1; throws ConfigError.
    void validate() const;
};

std::vector<Method> parse_methods(std::string_view list);
std::vector<BoundColumn> parse_bounds(std::string_view list);
ProfileKind parse_decay(std::string_view name);
SubspaceSource parse_subspaces(std::string_view name);

/// Applies one `key=value` setting; keys match the long CLI flags
/// (m, n, r, ell, decay, q, seed, trials, methods, bounds, subspaces).
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Flat key=value file. Blank lines and lines starting with '#' are skipped.
void apply_config_file(ExperimentConfig& cfg, std::istream& in);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// One CSV row. Optional fields are written as empty cells when absent.
struct ReportRow {
    std::size_t trial = 0;
    std::string method; ///< RR, SVD, GN, HMT, or "failed"
    std::size_t i = 0;  ///< 1-based; 0 on failed rows
    double sigma_exact = 0.0;
    double sigma_hat = 0.0;
    double abs_error = 0.0;
    std::optional<double> weyl, forward, backward, backward_approx, improved, tau;
    std::optional<bool> applicable;
    bool failed = false;
};

struct MethodRun {
    Method method = Method::RR;
    std::size_t passes = 0;
    std::size_t matmuls = 0;
    double seconds = 0.0;
};

struct TrialSummary {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string failure;
    std::vector<MethodRun> runs;
};

/// Error exceeding a bound on an applicable index (beyond tolerance and above
/// the machine-precision floor).
struct Violation {
    std::size_t trial = 0;
    Method method = Method::GN;
    std::size_t i = 0;
    BoundColumn bound = BoundColumn::Weyl;
    double error = 0.0;
    double value = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows; ///< sorted by (trial, method, i)
    std::vector<TrialSummary> trials;
    std::vector<Violation> violations;       ///< theorems that failed: should stay empty
    std::vector<Violation> heuristic_misses; ///< improved bound below the error
};

/// Absolute tolerance, relative to sigma_1, when checking a bound.
inline constexpr double kBoundSlack = 1e-10;
/// Errors below this multiple of eps * sigma_1 are roundoff, not approximation error.
inline constexpr double kPrecisionFloorFactor = 1e2;

double precision_floor(double sigma1);

struct RunOptions {
    bool parallel = true; ///< run trials concurrently with OpenMP
};

/// Deterministic per seed, and independent of `parallel`.
ExperimentReport run_experiment(const ExperimentConfig& cfg, RunOptions options = {});

inline constexpr std::string_view kCsvHeader =
    "trial,method,i,sigma_exact,sigma_hat,abs_error,weyl,forward,backward,backward_approx,"
    "improved,tau,applicable";

void write_csv(const ExperimentReport& report, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const ExperimentReport& report, const std::filesystem::path& path);
/// Parses the CSV schema; throws std::runtime_error naming the offending column.
std::vector<ReportRow> read_csv(std::istream& in);

/// True iff every method run reports the expected (passes, matmuls).
bool verify_pass_counts(const ExperimentReport& report);

struct FigurePreset {
    std::string name; ///< file stem, e.g. "fig2a"
    std::string figure; ///< fig1 .. fig5
    std::string description;
    ExperimentConfig config;
};

/// Named desk-scale (n = m = 400, r = 50) configurations used for plotting.
std::vector<FigurePreset> figure_presets(std::uint64_t seed = 1, std::size_t trials = 1);

/// Quick invariant checks; prints one PASS/FAIL line each.
bool run_selftest(std::ostream& log);

} // namespace svx
