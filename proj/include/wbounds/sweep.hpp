#pragma once

// Parameter sweeps over sigma, written as CSV tables.

#include "wbounds/roots.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace wbounds {

enum class SweepKind { UniversalWinsor, FixedCWinsor, Trunc, RatioUniversalOverFixed, RatioTruncOverWinsor };
enum class SweepScale { Log, Linear };

const char* to_string(SweepKind kind);
const char* to_string(SweepScale scale);
/// Accepts the CLI spellings (universal-winsor, fixed-c-winsor, trunc,
/// ratio-universal-over-fixed, ratio-trunc-over-winsor). Throws ValidationError.
SweepKind parse_sweep_kind(const std::string& text);
SweepScale parse_sweep_scale(const std::string& text);

/// True for kinds with one column per c value.
bool needs_c_values(SweepKind kind);

struct SweepSpec {
    SweepKind kind = SweepKind::UniversalWinsor;
    std::vector<double> c_values;
    double sigma_min = 0.1;
    double sigma_max = 100.0;
    std::size_t points = 200;
    SweepScale scale = SweepScale::Log;
    double cut = 1.0;

    /// Throws ValidationError on bad ranges, counts or c lists.
    void validate() const;
};

struct SweepTable {
    SweepKind kind = SweepKind::UniversalWinsor;
    double cut = 1.0;
    std::vector<double> c_values;  ///< empty for UniversalWinsor
    std::vector<double> sigma_values;
    std::vector<std::vector<double>> rows;  ///< rows[i][j]: column j at sigma_values[i]

    [[nodiscard]] std::vector<std::string> header() const;
};

/// Strictly increasing grid with exact endpoints sigma_min and sigma_max.
std::vector<double> sigma_grid(double sigma_min, double sigma_max, std::size_t points, SweepScale scale);

/// The values of one row; run_sweep is this applied to each sigma in order.
std::vector<double> sweep_row(SweepKind kind, const std::vector<double>& c_values, double sigma, double cut = 1.0,
                              const RootTolerances& tol = {});

/// Throws NumericalError if any value is not finite and positive.
SweepTable run_sweep(const SweepSpec& spec, const RootTolerances& tol = {});

/// Header `sigma,<columns>`, then one line per sigma, 17 significant digits,
/// '\n' line endings.
std::string to_csv(const SweepTable& table);

/// Writes to a temporary file beside `path`, then renames it into place.
void write_csv(const SweepTable& table, const std::filesystem::path& path);

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;  ///< including the sigma column
};

/// Parses a file produced by to_csv. Throws ValidationError on malformed input.
CsvData parse_csv(const std::string& text);
CsvData read_csv(const std::filesystem::path& path);

}  // namespace wbounds
