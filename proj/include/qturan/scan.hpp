#pragma once

#include "qturan/tails.hpp"
#include "qturan/turan.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qturan {

/// Invalid scan description (maps to exit code 64 in the CLI).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be written or read (maps to exit code 74 in the CLI).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rectangular (q, n, z) box. In alzer mode q is unused and z plays the role of x.
struct GridSpec {
    RemainderKind kind = RemainderKind::tail_i;
    bool alzer = false;
    double q_min = 0.05;
    double q_max = 0.95;
    int q_steps = 19;
    int n_min = 1;
    int n_max = 10;
    double z_min = 0.05;
    double z_max = 0.95;
    int z_steps = 19;
    double tol = 1e-12;
    bool log_z = false;

    /// Default desk-scale grid: z in 0.05..0.95 (19, linear) for kind I,
    /// 0.1..10 (25, geometric) for kind E and for the classical mode.
    static GridSpec defaults(RemainderKind kind, bool alzer = false);
};

/// Throws UsageError if the spec is empty, inverted or leaves the domain.
void validate(GridSpec const& spec);

std::vector<double> q_points(GridSpec const& spec);
std::vector<double> z_points(GridSpec const& spec);

struct ScanRecord {
    std::string kind; ///< "I", "E" or "alzer"
    double q = 0.0;   ///< 1 for alzer records
    int n = 0;
    double z = 0.0;
    double ratio = 0.0;
    double lower_constant = 0.0;
    double lower_margin = 0.0;
    double upper_margin = 0.0;
    double error_budget = 0.0;
    Outcome outcome = Outcome::indeterminate;

    bool operator==(ScanRecord const&) const = default;
};

struct GridLocation {
    double q = 0.0;
    int n = 0;
    double z = 0.0;
};

struct ScanSummary {
    std::size_t certified = 0;
    std::size_t violated = 0;
    std::size_t indeterminate = 0;
    double min_lower_margin = 0.0;
    GridLocation min_lower_at;
    double min_upper_margin = 0.0;
    GridLocation min_upper_at;

    [[nodiscard]] std::size_t total() const noexcept { return certified + violated + indeterminate; }
};

struct ScanResult {
    std::vector<ScanRecord> records; ///< q-major, then n, then z
    ScanSummary summary;
};

/// One verdict per grid point. Points are spread over `threads` workers; the
/// record order is fixed by the grid, never by completion order.
ScanResult scan(GridSpec const& spec, unsigned threads = 1);

ScanSummary summarize(std::span<ScanRecord const> records);

/// 0: nothing violated or indeterminate; 1: something violated; 2: only indeterminate points.
int exit_code_for(ScanSummary const& summary) noexcept;

inline constexpr char const* kCsvHeader
    = "kind,q,n,z,ratio,lower_constant,lower_margin,upper_margin,error_budget,outcome";

/// Shortest-safe text for a double: 17 significant digits.
std::string format_real(double value);

void write_csv(std::ostream& os, std::span<ScanRecord const> records);
void emit_csv(std::span<ScanRecord const> records, std::filesystem::path const& path);

/// Parses text produced by write_csv. Throws IoError on malformed input.
std::vector<ScanRecord> parse_csv(std::istream& is);

/// z,ratio,best_constant,deviation rows for the approach to the sharp constant.
SharpnessReport write_sharpness(std::ostream& os, RemainderKind kind, double q, int n,
                                std::span<double const> z_sequence);
SharpnessReport emit_sharpness(RemainderKind kind, double q, int n, std::span<double const> z_sequence,
                               std::filesystem::path const& path);

} // namespace qturan
