#include "svx/harness.hpp"

#include "svx/blockview.hpp"
#include "svx/format.hpp"
#include "svx/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace svx {

std::string_view to_string(BoundColumn column)
{
    switch (column) {
    case BoundColumn::Weyl: return "weyl";
    case BoundColumn::Forward: return "forward";
    case BoundColumn::Backward: return "backward";
    case BoundColumn::BackwardApprox: return "backward_approx";
    case BoundColumn::Improved: return "improved";
    }
    return "?";
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

template <class T> T parse_integer(std::string_view key, std::string_view value)
{
    value = trim(value);
    T out{};
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(value) +
                          "'");
    return out;
}

} // namespace

std::vector<Method> parse_methods(std::string_view list)
{
    std::vector<Method> out;
    for (auto item : split(list, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        std::string up(item);
        std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
        Method m;
        if (up == "RR")
            m = Method::RR;
        else if (up == "SVD")
            m = Method::SVD;
        else if (up == "GN")
            m = Method::GN;
        else if (up == "HMT")
            m = Method::HMT;
        else
            throw ConfigError("unknown method '" + std::string(item) + "'");
        if (std::find(out.begin(), out.end(), m) == out.end())
            out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BoundColumn> parse_bounds(std::string_view list)
{
    std::vector<BoundColumn> out;
    for (auto item : split(list, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        BoundColumn b;
        if (item == "weyl")
            b = BoundColumn::Weyl;
        else if (item == "forward")
            b = BoundColumn::Forward;
        else if (item == "backward")
            b = BoundColumn::Backward;
        else if (item == "backward_approx")
            b = BoundColumn::BackwardApprox;
        else if (item == "improved")
            b = BoundColumn::Improved;
        else
            throw ConfigError("unknown bound '" + std::string(item) + "'");
        if (std::find(out.begin(), out.end(), b) == out.end())
            out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ProfileKind parse_decay(std::string_view name)
{
    name = trim(name);
    if (name == "exponential")
        return ProfileKind::Exponential;
    if (name == "algebraic")
        return ProfileKind::Algebraic;
    throw ConfigError("unknown decay '" + std::string(name) + "' (expected exponential|algebraic)");
}

SubspaceSource parse_subspaces(std::string_view name)
{
    name = trim(name);
    if (name == "sketched")
        return SubspaceSource::Sketched;
    if (name == "exact")
        return SubspaceSource::Exact;
    if (name == "random")
        return SubspaceSource::Random;
    throw ConfigError("unknown subspace source '" + std::string(name) +
                      "' (expected sketched|exact|random)");
}

void ExperimentConfig::validate() const
{
    if (r < 1)
        throw ConfigError("r must be at least 1");
    if (n < r)
        throw ConfigError("n must be at least r");
    if (n < 2)
        throw ConfigError("n must be at least 2");
    if (ell < 0)
        throw ConfigError("ell must be nonnegative");
    if (m < n || m < r + ell)
        throw ConfigError("m must be at least max(n, r + ell)");
    if (q < 1)
        throw ConfigError("q must be at least 1");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value)
{
    key = trim(key);
    if (key == "m")
        cfg.m = parse_integer<Eigen::Index>(key, value);
    else if (key == "n")
        cfg.n = parse_integer<Eigen::Index>(key, value);
    else if (key == "r")
        cfg.r = parse_integer<Eigen::Index>(key, value);
    else if (key == "ell")
        cfg.ell = parse_integer<Eigen::Index>(key, value);
    else if (key == "q")
        cfg.q = parse_integer<int>(key, value);
    else if (key == "seed")
        cfg.seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "trials")
        cfg.trials = parse_integer<std::size_t>(key, value);
    else if (key == "decay")
        cfg.decay = parse_decay(value);
    else if (key == "methods")
        cfg.methods = parse_methods(value);
    else if (key == "bounds")
        cfg.bounds = parse_bounds(value);
    else if (key == "subspaces")
        cfg.subspaces = parse_subspaces(value);
    else
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void apply_config_file(ExperimentConfig& cfg, std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        apply_setting(cfg, text.substr(0, eq), text.substr(eq + 1));
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    apply_config_file(cfg, in);
}

double precision_floor(double sigma1)
{
    return kPrecisionFloorFactor * std::numeric_limits<double>::epsilon() * sigma1;
}

namespace {

bool wants(const ExperimentConfig& cfg, BoundColumn b)
{
    return std::find(cfg.bounds.begin(), cfg.bounds.end(), b) != cfg.bounds.end();
}

struct TrialOutput {
    TrialSummary summary;
    std::vector<ReportRow> rows;
    std::vector<Violation> violations;
    std::vector<Violation> heuristic_misses;
};

SubspacePair make_subspaces(const ExperimentConfig& cfg, const SyntheticMatrix& truth,
                            std::uint64_t seed)
{
    switch (cfg.subspaces) {
    case SubspaceSource::Exact: return exact_subspaces(truth, cfg.r, cfg.ell);
    case SubspaceSource::Random: return random_subspaces(cfg.m, cfg.n, cfg.r, cfg.ell, seed);
    case SubspaceSource::Sketched: break;
    }
    return sketch_subspaces(truth.a, cfg.r, cfg.ell, cfg.q, seed);
}

void check_bound(TrialOutput& out, std::vector<Violation>& sink, Method method, std::size_t i,
                 BoundColumn column, double error, double value, double sigma1)
{
    if (error < precision_floor(sigma1))
        return;
    if (error > value + kBoundSlack * sigma1)
        sink.push_back({out.summary.trial, method, i, column, error, value});
}

TrialOutput run_trial(const ExperimentConfig& cfg, std::size_t trial)
{
    using clock = std::chrono::steady_clock;
    TrialOutput out;
    out.summary.trial = trial;
    out.summary.seed = derive_seed(cfg.seed, Stream::Trial, trial);
    const std::uint64_t seed = out.summary.seed;

    try {
        const SyntheticMatrix truth = assemble_synthetic(sv_profile(cfg.decay, cfg.n), cfg.m, seed);
        const SubspacePair pair = make_subspaces(cfg, truth, seed);
        const Vector& sigma = truth.sigma_true.values;
        const std::span<const double> sigma_span(sigma.data(), static_cast<std::size_t>(sigma.size()));
        const double sigma1 = sigma(0);

        const bool need_partition = !cfg.bounds.empty();
        std::optional<BlockPartition> partition;
        std::optional<BlockPartition> hmt_partition;
        if (need_partition)
            partition = block_transform(truth.a, pair);

        for (const Method method : cfg.methods) {
            CountingMatrix counted(truth.a);
            const auto start = clock::now();
            const ExtractionResult res = extract(method, counted, pair);
            const double seconds = std::chrono::duration<double>(clock::now() - start).count();
            out.summary.runs.push_back({method, res.pass_count, res.matmul_count, seconds});

            std::optional<BoundReport> forward;
            std::optional<BoundReport> backward;
            std::optional<BoundReport> backward_approx;
            std::optional<BoundReport> improved;
            if (wants(cfg, BoundColumn::Weyl) || wants(cfg, BoundColumn::Forward)) {
                if (method == Method::HMT) {
                    if (!hmt_partition)
                        hmt_partition = block_transform(truth.a, hmt_pair(truth.a, pair));
                    forward = forward_bound(*hmt_partition, method, sigma_span);
                } else {
                    forward = forward_bound(*partition, method, sigma_span);
                }
            }
            if (method == Method::GN && cfg.ell == 0) {
                const std::span<const double> gn(res.sigma_hat.data(),
                                                 static_cast<std::size_t>(res.sigma_hat.size()));
                if (wants(cfg, BoundColumn::Backward))
                    backward = backward_bound(*partition, gn, false);
                if (wants(cfg, BoundColumn::BackwardApprox))
                    backward_approx = backward_bound(*partition, gn, true);
            }
            if (method == Method::GN && cfg.ell > 0 && wants(cfg, BoundColumn::Improved))
                improved = improved_oversampling_bound(*partition, sigma_span);

            for (Eigen::Index k = 0; k < cfg.r; ++k) {
                const auto idx = static_cast<std::size_t>(k);
                ReportRow row;
                row.trial = trial;
                row.method = std::string(to_string(method));
                row.i = idx + 1;
                row.sigma_exact = sigma(k);
                row.sigma_hat = k < res.sigma_hat.size() ? res.sigma_hat(k) : 0.0;
                row.abs_error = std::abs(row.sigma_exact - row.sigma_hat);

                if (forward && wants(cfg, BoundColumn::Weyl)) {
                    row.weyl = forward->weyl;
                    check_bound(out, out.violations, method, row.i, BoundColumn::Weyl, row.abs_error,
                                forward->weyl, sigma1);
                }
                if (forward && wants(cfg, BoundColumn::Forward)) {
                    const IndexBound& e = (*forward)[idx];
                    row.forward = e.bound;
                    row.tau = e.tau;
                    row.applicable = e.applicable;
                    if (e.applicable)
                        check_bound(out, out.violations, method, row.i, BoundColumn::Forward,
                                    row.abs_error, e.bound, sigma1);
                }
                if (backward) {
                    const IndexBound& e = (*backward)[idx];
                    row.backward = e.bound;
                    if (e.applicable)
                        check_bound(out, out.violations, method, row.i, BoundColumn::Backward,
                                    row.abs_error, e.bound, sigma1);
                }
                if (backward_approx) {
                    const IndexBound& e = (*backward_approx)[idx];
                    row.backward_approx = e.bound;
                    if (e.applicable)
                        check_bound(out, out.violations, method, row.i, BoundColumn::BackwardApprox,
                                    row.abs_error, e.bound, sigma1);
                }
                if (improved) {
                    const IndexBound& e = (*improved)[idx];
                    row.improved = e.bound;
                    if (e.applicable)
                        check_bound(out, out.heuristic_misses, method, row.i, BoundColumn::Improved,
                                    row.abs_error, e.bound, sigma1);
                }
                out.rows.push_back(std::move(row));
            }
        }
    } catch (const RankDeficientCore& e) {
        out.summary.failed = true;
        out.summary.failure = e.what();
        out.rows.clear();
        out.violations.clear();
        out.heuristic_misses.clear();
        ReportRow row;
        row.trial = trial;
        row.method = "failed";
        row.failed = true;
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, RunOptions options)
{
    cfg.validate();
    ExperimentConfig sorted = cfg;
    std::sort(sorted.methods.begin(), sorted.methods.end());
    sorted.methods.erase(std::unique(sorted.methods.begin(), sorted.methods.end()), sorted.methods.end());

    std::vector<TrialOutput> outputs(cfg.trials);
    std::vector<std::exception_ptr> errors(cfg.trials);
    const auto count = static_cast<long>(cfg.trials);

#pragma omp parallel for schedule(dynamic, 1) if (options.parallel)
    for (long t = 0; t < count; ++t) {
        try {
            outputs[static_cast<std::size_t>(t)] = run_trial(sorted, static_cast<std::size_t>(t));
        } catch (...) {
            errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    ExperimentReport report;
    report.config = sorted;
    for (auto& o : outputs) {
        report.trials.push_back(std::move(o.summary));
        for (auto& row : o.rows)
            report.rows.push_back(std::move(row));
        for (auto& v : o.violations)
            report.violations.push_back(v);
        for (auto& v : o.heuristic_misses)
            report.heuristic_misses.push_back(v);
    }
    return report;
}

namespace {

void write_optional(std::ostream& out, const std::optional<double>& v)
{
    out << ',';
    if (v)
        out << format_double(*v);
}

} // namespace

void write_csv(const ExperimentReport& report, std::ostream& out)
{
    out << kCsvHeader << '\n';
    for (const ReportRow& row : report.rows) {
        out << row.trial << ',' << row.method << ',' << row.i;
        if (row.failed) {
            out << ",,,,,,,,,,\n";
            continue;
        }
        out << ',' << format_double(row.sigma_exact) << ',' << format_double(row.sigma_hat) << ','
            << format_double(std::abs(row.sigma_exact - row.sigma_hat));
        write_optional(out, row.weyl);
        write_optional(out, row.forward);
        write_optional(out, row.backward);
        write_optional(out, row.backward_approx);
        write_optional(out, row.improved);
        write_optional(out, row.tau);
        out << ',';
        if (row.applicable)
            out << (*row.applicable ? '1' : '0');
        out << '\n';
    }
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(report, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::vector<ReportRow> read_csv(std::istream& in)
{
    static const std::vector<std::string_view> columns = split(kCsvHeader, ',');
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split(line, ',');
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c >= header.size())
            throw std::runtime_error("csv: missing column '" + std::string(columns[c]) + "'");
        if (header[c] != columns[c])
            throw std::runtime_error("csv: column " + std::to_string(c + 1) + " is '" +
                                     std::string(header[c]) + "', expected '" +
                                     std::string(columns[c]) + "'");
    }
    if (header.size() != columns.size())
        throw std::runtime_error("csv: unexpected extra column '" +
                                 std::string(header[columns.size()]) + "'");

    std::vector<ReportRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != columns.size())
            throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(columns.size()) + " fields");
        auto field = [&](std::size_t c) -> double {
            try {
                return parse_double(cells[c]);
            } catch (const std::invalid_argument&) {
                throw std::runtime_error("csv line " + std::to_string(lineno) + ", column '" +
                                         std::string(columns[c]) + "': bad number '" +
                                         std::string(cells[c]) + "'");
            }
        };
        auto optional_field = [&](std::size_t c) -> std::optional<double> {
            if (cells[c].empty())
                return std::nullopt;
            return field(c);
        };
        ReportRow row;
        row.trial = parse_integer<std::size_t>("trial", cells[0]);
        row.method = std::string(cells[1]);
        row.i = parse_integer<std::size_t>("i", cells[2]);
        if (row.method == "failed") {
            row.failed = true;
            rows.push_back(std::move(row));
            continue;
        }
        row.sigma_exact = field(3);
        row.sigma_hat = field(4);
        row.abs_error = field(5);
        row.weyl = optional_field(6);
        row.forward = optional_field(7);
        row.backward = optional_field(8);
        row.backward_approx = optional_field(9);
        row.improved = optional_field(10);
        row.tau = optional_field(11);
        if (!cells[12].empty()) {
            if (cells[12] != "0" && cells[12] != "1")
                throw std::runtime_error("csv line " + std::to_string(lineno) +
                                         ", column 'applicable': expected 0 or 1");
            row.applicable = cells[12] == "1";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool verify_pass_counts(const ExperimentReport& report)
{
    for (const TrialSummary& t : report.trials) {
        if (t.failed)
            continue;
        for (const MethodRun& run : t.runs) {
            const AccessProfile want = expected_access(run.method);
            if (run.passes != want.passes || run.matmuls != want.matmuls)
                return false;
        }
    }
    return true;
}

std::vector<FigurePreset> figure_presets(std::uint64_t seed, std::size_t trials)
{
    auto base = [&](ProfileKind decay, Eigen::Index ell) {
        ExperimentConfig c;
        c.m = 400;
        c.n = 400;
        c.r = 50;
        c.ell = ell;
        c.decay = decay;
        c.q = 1;
        c.seed = seed;
        c.trials = trials;
        return c;
    };
    const Eigen::Index half = 25; // ell = r / 2
    std::vector<FigurePreset> out;

    {
        ExperimentConfig c = base(ProfileKind::Exponential, 0);
        c.methods = {Method::RR, Method::SVD, Method::GN};
        c.bounds = {};
        out.push_back({"fig1", "fig1", "single-pass methods, exponential decay, ell = 0", c});
    }
    for (const auto& [suffix, decay] : {std::pair{"a", ProfileKind::Exponential},
                                        std::pair{"b", ProfileKind::Algebraic}}) {
        ExperimentConfig c = base(decay, 0);
        c.methods = {Method::GN};
        c.bounds = {BoundColumn::Weyl, BoundColumn::Forward};
        out.push_back({std::string("fig2") + suffix, "fig2",
                       std::string("GN without oversampling, ") + std::string(to_string(decay)) + " decay", c});
    }
    for (const auto& [suffix, decay] : {std::pair{"a", ProfileKind::Exponential},
                                        std::pair{"b", ProfileKind::Algebraic}}) {
        ExperimentConfig c = base(decay, half);
        c.methods = {Method::GN};
        c.bounds = {BoundColumn::Weyl, BoundColumn::Forward, BoundColumn::Improved};
        out.push_back({std::string("fig3") + suffix, "fig3",
                       std::string("GN with ell = r/2, ") + std::string(to_string(decay)) + " decay", c});
    }
    for (const auto& [suffix, ell] : {std::pair{"a", Eigen::Index{0}}, std::pair{"b", half}}) {
        ExperimentConfig c = base(ProfileKind::Exponential, ell);
        c.methods = {Method::RR, Method::SVD, Method::GN, Method::HMT};
        c.bounds = {BoundColumn::Weyl, BoundColumn::Forward};
        out.push_back({std::string("fig4") + suffix, "fig4",
                       "all methods with their forward bounds, ell = " + std::to_string(ell), c});
    }
    for (const auto& [suffix, decay] : {std::pair{"a", ProfileKind::Exponential},
                                        std::pair{"b", ProfileKind::Algebraic}}) {
        ExperimentConfig c = base(decay, 0);
        c.methods = {Method::GN};
        c.bounds = {BoundColumn::Weyl, BoundColumn::Forward, BoundColumn::Backward,
                    BoundColumn::BackwardApprox};
        out.push_back({std::string("fig5") + suffix, "fig5",
                       std::string("computable GN bounds, ") + std::string(to_string(decay)) + " decay", c});
    }
    return out;
}

} // namespace svx
