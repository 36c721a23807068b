#include "qturan/scan.hpp"

#include "qturan/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace qturan {

namespace {

void check_axis(char const* name, double lo, double hi, int steps)
{
    if (steps < 1) {
        throw UsageError(std::string(name) + " needs at least one step");
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw UsageError(std::string(name) + " range must be finite");
    }
    if (steps > 1 ? !(lo < hi) : !(lo <= hi)) {
        throw UsageError(std::string(name) + " range is empty (min must be below max)");
    }
}

std::vector<double> axis(double lo, double hi, int steps, bool geometric)
{
    std::vector<double> out(static_cast<std::size_t>(steps));
    if (steps == 1) {
        out[0] = lo;
        return out;
    }
    double const last = static_cast<double>(steps - 1);
    for (int i = 0; i < steps; ++i) {
        double const t = static_cast<double>(i) / last;
        out[static_cast<std::size_t>(i)]
            = geometric ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::string record_kind(GridSpec const& spec)
{
    if (spec.alzer) {
        return "alzer";
    }
    return std::string(1, kind_letter(spec.kind));
}

ScanRecord evaluate(GridSpec const& spec, std::string const& kind, double q, int n, double z)
{
    TuranVerdict const v = spec.alzer ? verify_alzer(z, n) : verify_turan(spec.kind, QDomain(q, z, n), spec.tol);
    return {kind, q, n, z, v.ratio, v.lower_constant, v.lower_margin, v.upper_margin, v.error_budget, v.outcome};
}

double parse_real(std::string_view text)
{
    double value = 0.0;
    auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw IoError("malformed real in CSV: '" + std::string(text) + "'");
    }
    return value;
}

Outcome parse_outcome(std::string_view text)
{
    for (auto o : {Outcome::certified, Outcome::violated, Outcome::indeterminate}) {
        if (text == to_string(o)) {
            return o;
        }
    }
    throw IoError("unknown outcome in CSV: '" + std::string(text) + "'");
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto const comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

} // namespace

GridSpec GridSpec::defaults(RemainderKind kind, bool alzer)
{
    GridSpec spec;
    spec.kind = kind;
    spec.alzer = alzer;
    if (alzer || kind == RemainderKind::tail_j) {
        spec.z_min = 0.1;
        spec.z_max = 10.0;
        spec.z_steps = 25;
        spec.log_z = true;
    }
    if (alzer) {
        spec.q_min = spec.q_max = 1.0;
        spec.q_steps = 1;
    }
    return spec;
}

void validate(GridSpec const& spec)
{
    if (!spec.alzer) {
        check_axis("q", spec.q_min, spec.q_max, spec.q_steps);
        if (!(spec.q_min > 0.0 && spec.q_max < 1.0)) {
            throw UsageError("q range must lie inside (0,1)");
        }
    }
    if (spec.n_min < 1) {
        throw UsageError("n_min must be >= 1");
    }
    if (spec.n_min > spec.n_max) {
        throw UsageError("n range is empty (n_min > n_max)");
    }
    check_axis("z", spec.z_min, spec.z_max, spec.z_steps);
    if (!(spec.z_min > 0.0)) {
        throw UsageError("z range must be positive");
    }
    if (!spec.alzer && spec.kind == RemainderKind::tail_i && !(spec.z_max < 1.0)) {
        throw UsageError("kind I needs z < 1");
    }
    if (!(spec.tol > 0.0)) {
        throw UsageError("tolerance must be positive");
    }
}

std::vector<double> q_points(GridSpec const& spec)
{
    if (spec.alzer) {
        return {1.0};
    }
    return axis(spec.q_min, spec.q_max, spec.q_steps, false);
}

std::vector<double> z_points(GridSpec const& spec)
{
    return axis(spec.z_min, spec.z_max, spec.z_steps, spec.log_z);
}

ScanResult scan(GridSpec const& spec, unsigned threads)
{
    validate(spec);
    auto const qs = q_points(spec);
    auto const zs = z_points(spec);
    auto const kind = record_kind(spec);
    std::size_t const n_count = static_cast<std::size_t>(spec.n_max - spec.n_min + 1);
    std::size_t const total = qs.size() * n_count * zs.size();

    ScanResult result;
    result.records.resize(total);
    auto point = [&](std::size_t idx) {
        std::size_t const iz = idx % zs.size();
        std::size_t const in = (idx / zs.size()) % n_count;
        std::size_t const iq = idx / (zs.size() * n_count);
        result.records[idx] = evaluate(spec, kind, qs[iq], spec.n_min + static_cast<int>(in), zs[iz]);
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < total; ++i) {
            point(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
                    try {
                        point(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next.store(total);
                        return;
                    }
                }
            });
        }
        pool.clear();
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    result.summary = summarize(result.records);
    return result;
}

ScanSummary summarize(std::span<ScanRecord const> records)
{
    ScanSummary s;
    bool first = true;
    for (auto const& r : records) {
        switch (r.outcome) {
        case Outcome::certified: ++s.certified; break;
        case Outcome::violated: ++s.violated; break;
        case Outcome::indeterminate: ++s.indeterminate; break;
        }
        if (first || r.lower_margin < s.min_lower_margin) {
            s.min_lower_margin = r.lower_margin;
            s.min_lower_at = {r.q, r.n, r.z};
        }
        if (first || r.upper_margin < s.min_upper_margin) {
            s.min_upper_margin = r.upper_margin;
            s.min_upper_at = {r.q, r.n, r.z};
        }
        first = false;
    }
    return s;
}

int exit_code_for(ScanSummary const& summary) noexcept
{
    if (summary.violated > 0) {
        return 1;
    }
    return summary.indeterminate > 0 ? 2 : 0;
}

std::string format_real(double value)
{
    char buf[64];
    auto const [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        throw IoError("failed to format real");
    }
    return {buf, ptr};
}

void write_csv(std::ostream& os, std::span<ScanRecord const> records)
{
    os << kCsvHeader << '\n';
    for (auto const& r : records) {
        os << r.kind << ',' << format_real(r.q) << ',' << r.n << ',' << format_real(r.z) << ','
           << format_real(r.ratio) << ',' << format_real(r.lower_constant) << ',' << format_real(r.lower_margin)
           << ',' << format_real(r.upper_margin) << ',' << format_real(r.error_budget) << ','
           << to_string(r.outcome) << '\n';
    }
}

void emit_csv(std::span<ScanRecord const> records, std::filesystem::path const& path)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_csv(file, records);
    file.flush();
    if (!file) {
        throw IoError("write to " + path.string() + " failed");
    }
}

std::vector<ScanRecord> parse_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw IoError("CSV header mismatch");
    }
    std::vector<ScanRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        auto const f = split_fields(line);
        if (f.size() != 10) {
            throw IoError("CSV row has " + std::to_string(f.size()) + " fields, expected 10");
        }
        ScanRecord r;
        r.kind = std::string(f[0]);
        r.q = parse_real(f[1]);
        auto const [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), r.n);
        if (ec != std::errc{} || ptr != f[2].data() + f[2].size()) {
            throw IoError("malformed n in CSV");
        }
        r.z = parse_real(f[3]);
        r.ratio = parse_real(f[4]);
        r.lower_constant = parse_real(f[5]);
        r.lower_margin = parse_real(f[6]);
        r.upper_margin = parse_real(f[7]);
        r.error_budget = parse_real(f[8]);
        r.outcome = parse_outcome(f[9]);
        records.push_back(std::move(r));
    }
    return records;
}

SharpnessReport write_sharpness(std::ostream& os, RemainderKind kind, double q, int n,
                                std::span<double const> z_sequence)
{
    auto report = sharpness_probe(kind, q, n, z_sequence);
    os << "z,ratio,best_constant,deviation\n";
    for (auto const& p : report.points) {
        os << format_real(p.z) << ',' << format_real(p.ratio) << ',' << format_real(p.best_constant) << ','
           << format_real(p.deviation) << '\n';
    }
    return report;
}

SharpnessReport emit_sharpness(RemainderKind kind, double q, int n, std::span<double const> z_sequence,
                               std::filesystem::path const& path)
{
    std::ostringstream buffer;
    auto report = write_sharpness(buffer, kind, q, n, z_sequence);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    file << buffer.str();
    file.flush();
    if (!file) {
        throw IoError("write to " + path.string() + " failed");
    }
    return report;
}

} // namespace qturan
