#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmetro/bounds.hpp"
#include "qmetro/dynamics.hpp"

namespace qmetro {

enum class SweepEngine { ChannelExtension, ParityGhz, AnalyticPc, AnalyticDephasing };

struct SweepSpec {
    NoiseModel model;
    double omega0 = 1.0;
    std::vector<int> n_grid;           // strictly increasing, >= 6 entries for fitting
    double t_lo = 0.0, t_hi = 0.0;     // 0,0 selects the automatic window
    SweepEngine engine = SweepEngine::ChannelExtension;
    double total_time = 1.0;
    std::uint64_t seed = 12345;
    int workers = 1;
    int bound_restarts = 6;            // h-minimization restarts per (N, t)

    void validate() const;
};

struct SweepRow {
    int n_probes = 0;
    double t_opt = 0.0;
    double bound_times_t = 0.0;  // (MSE bound) * T
    bool boundary = false;
    bool valid = true;
};

// Geometric integer grid from n_min to n_max with ~points entries.
std::vector<int> geometric_n_grid(int n_min, int n_max, int points);

// One row per N; boundary-flagged optima are retried with a widened
// window (up to 3 widenings). Throws EngineModelMismatch for
// incompatible engine/model pairs and AllRowsInvalid when nothing
// usable survives.
std::vector<SweepRow> sweep(const SweepSpec& spec);

struct FitResult {
    double exponent = 0.0;
    double intercept = 0.0;
    int window_min = 0, window_max = 0;
    double residual = 0.0;  // RMS of the log-space fit residuals
};

// Least-squares slope of log(bound * T) against log N over the tail of
// the log-N range (tail_fraction of it). Requires >= 4 valid rows.
FitResult fit_exponent(const std::vector<SweepRow>& table, double tail_fraction = 0.5);

// Secondary fit of log t_opt against log N over the same tail.
FitResult fit_topt_exponent(const std::vector<SweepRow>& table, double tail_fraction = 0.5);

// CSV with a header row, 17 significant digits, LF line endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvData read_csv(const std::string& path);

std::vector<std::vector<double>> rows_from_sweep(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_rows(const std::vector<std::vector<double>>& rows);

}  // namespace qmetro
