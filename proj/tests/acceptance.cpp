// Acceptance suite: each criterion runs at its stated tolerance and prints one
// PASS/FAIL line. Exit status is non-zero if any criterion fails.

#include "oracle.hpp"

#include "qturan/accumulate.hpp"
#include "qturan/cli.hpp"
#include "qturan/errors.hpp"
#include "qturan/exact.hpp"
#include "qturan/qexp.hpp"
#include "qturan/scan.hpp"
#include "qturan/tails.hpp"
#include "qturan/turan.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qturan;
using oracle::Big;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, std::string const& what)
    {
        if (!cond && ok) {
            detail = what;
        }
        ok = ok && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<double> unit_grid()
{
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i) {
        g.push_back(0.05 * i);
    }
    return g;
}

std::vector<double> big_z_grid() { return z_points(GridSpec::defaults(RemainderKind::tail_j)); }

std::string slurp(std::filesystem::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "qturan");
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(args, out, err);
}

// 1. Series and product routes agree.
Check dual_path()
{
    Check c;
    auto const start = Clock::now();
    double worst = 0.0;
    auto compare = [&](QExpKind kind, double q, double z) {
        QDomain const d(q, z, 0);
        auto const s = eval_qexp(kind, d, 1e-15, QExpMethod::series);
        auto const p = eval_qexp(kind, d, 1e-15, QExpMethod::product);
        double const diff = std::abs(s.value - p.value);
        worst = std::max(worst, diff / std::abs(p.value));
        c.require(diff <= s.abs_error + p.abs_error, "bounds exceeded at q=" + fmt(q) + " z=" + fmt(z));
        c.require(diff <= 1e-12 * std::abs(p.value), "relative gap above 1e-12 at q=" + fmt(q) + " z=" + fmt(z));
    };
    for (double q : unit_grid()) {
        for (double z : unit_grid()) {
            compare(QExpKind::small_e, q, z);
        }
        for (double z : big_z_grid()) {
            compare(QExpKind::big_e, q, z);
        }
    }
    double const t = seconds_since(start);
    c.require(t < 5.0, "runtime " + fmt(t) + " s");
    if (c.ok) {
        c.detail = "worst relative gap " + fmt(worst) + ", " + fmt(t) + " s";
    }
    return c;
}

// 2. e(q;z) E(q;-z) = 1.
Check euler_pairing()
{
    Check c;
    double worst = 0.0;
    for (double q : unit_grid()) {
        for (double z : unit_grid()) {
            double r = 1.0;
            try {
                r = euler_pair_residual(q, z, 1e-15);
            } catch (std::exception const& e) {
                c.require(false, e.what());
                continue;
            }
            worst = std::max(worst, std::abs(r));
            c.require(std::abs(r) < 1e-12, "residual " + fmt(r) + " at q=" + fmt(q) + " z=" + fmt(z));
        }
    }
    if (c.ok) {
        c.detail = "max |residual| " + fmt(worst);
    }
    return c;
}

// 3 and 4. Default scans.
Check default_scan(RemainderKind kind)
{
    Check c;
    auto const start = Clock::now();
    auto const path = std::filesystem::temp_directory_path()
                      / (std::string("qturan_accept_") + kind_letter(kind) + ".csv");
    int const code = run_cli({"--kind", std::string(1, kind_letter(kind)), "--tol", "1e-12", "--out", path.string()});
    double const t = seconds_since(start);
    std::ifstream in(path);
    std::vector<ScanRecord> records;
    try {
        records = parse_csv(in);
    } catch (std::exception const& e) {
        c.require(false, e.what());
        return c;
    }
    auto const s = summarize(records);
    auto const spec = GridSpec::defaults(kind);
    std::size_t const expected = static_cast<std::size_t>(spec.q_steps) * static_cast<std::size_t>(spec.n_max - spec.n_min + 1)
                                 * static_cast<std::size_t>(spec.z_steps);
    double const frac = s.total() ? static_cast<double>(s.certified) / static_cast<double>(s.total()) : 0.0;
    c.require(records.size() == expected, "record count " + std::to_string(records.size()));
    c.require(s.violated == 0, std::to_string(s.violated) + " violated points");
    c.require(frac >= 0.99, "certified fraction " + fmt(frac));
    c.require(code == 0 || code == 2, "exit code " + std::to_string(code));
    c.require(t < 30.0, "runtime " + fmt(t) + " s");
    if (c.ok) {
        c.detail = std::to_string(s.total()) + " points, " + std::to_string(s.certified) + " certified, "
                   + std::to_string(s.indeterminate) + " indeterminate, exit " + std::to_string(code) + ", "
                   + fmt(t) + " s";
    }
    return c;
}

// 5. Sharp constants are the z -> 0 limits, approached at first order.
Check sharpness_limits()
{
    Check c;
    double worst = 0.0;
    for (auto kind : {RemainderKind::tail_i, RemainderKind::tail_j}) {
        for (double q : {0.1, 0.5, 0.9}) {
            for (int n : {1, 2, 5}) {
                double const constant = best_constant(kind, q, n);
                auto const r = turan_ratio(kind, QDomain(q, 1e-6, n), 1e-15);
                double const dev = std::abs(r.value - constant);
                worst = std::max(worst, dev);
                c.require(dev < 1e-4, "ratio deviation " + fmt(dev) + " at q=" + fmt(q) + " n=" + std::to_string(n));
                std::array<double, 2> const zs{1e-3, 1e-6};
                auto const probe = sharpness_probe(kind, q, n, zs);
                c.require(probe.points[1].deviation < 1e-2 * probe.points[0].deviation,
                          "decay not first order at q=" + fmt(q) + " n=" + std::to_string(n));
            }
        }
    }
    if (c.ok) {
        c.detail = "max |ratio - c| at z=1e-6: " + fmt(worst);
    }
    return c;
}

// 6. Closed-form determinant series against extended-precision tail products.
Check determinant_oracle()
{
    Check c;
    double worst = 0.0;
    std::array<double, 5> const qs{0.1, 0.3, 0.5, 0.7, 0.9};
    std::array<int, 5> const ns{1, 2, 3, 5, 8};
    std::array<double, 5> const zi{0.05, 0.25, 0.5, 0.75, 0.95};
    std::array<double, 5> const ze{0.1, 0.5, 1.0, 5.0, 10.0};
    for (auto kind : {RemainderKind::tail_i, RemainderKind::tail_j}) {
        auto const fn = kind == RemainderKind::tail_i ? oracle::Fn::small_e : oracle::Fn::big_e;
        for (double q : qs) {
            for (int n : ns) {
                for (double z : kind == RemainderKind::tail_i ? zi : ze) {
                    auto const d = turan_determinant_series(kind, QDomain(q, z, n), 1e-15);
                    c.require(d.value < 0.0, "non-negative determinant at q=" + fmt(q) + " z=" + fmt(z));
                    if (std::abs(d.value) > 1e-30) {
                        double const rel = oracle::rel_diff(d.value, oracle::turan_difference(fn, q, z, n));
                        worst = std::max(worst, rel);
                        c.require(rel < 1e-8, "relative gap " + fmt(rel) + " at q=" + fmt(q) + " z=" + fmt(z)
                                                  + " n=" + std::to_string(n));
                    }
                }
            }
        }
    }
    if (c.ok) {
        c.detail = "250 points, worst relative gap " + fmt(worst);
    }
    return c;
}

// 7. q -> 1 limit of the E-kind Turán ratio.
Check classical_limit()
{
    Check c;
    std::array<double, 3> const qs{0.9, 0.99, 0.999};
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        for (int n = 1; n <= 5; ++n) {
            auto const report = q_limit_check(x, n, qs);
            double const last = report.points.back().deviation;
            worst = std::max(worst, last);
            c.require(report.monotone, "deviations not decreasing at x=" + fmt(x) + " n=" + std::to_string(n));
            c.require(last < 1e-2, "deviation " + fmt(last) + " at q=0.999");
            double const target = (n + 1.0) / (n + 2.0);
            c.require(std::abs(best_constant(RemainderKind::tail_j, 0.999, n) - target) < 1e-3,
                      "constant far from (n+1)/(n+2) at n=" + std::to_string(n));
        }
    }
    if (c.ok) {
        c.detail = "max deviation at q=0.999: " + fmt(worst);
    }
    return c;
}

// 8. Classical Alzer inequality.
Check alzer()
{
    Check c;
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        for (int n = 1; n <= 10; ++n) {
            auto const v = verify_alzer(x, n);
            c.require(v.outcome == Outcome::certified, "not certified at x=" + fmt(x) + " n=" + std::to_string(n));
        }
    }
    auto const v = verify_alzer(1.0, 1);
    double const ref = oracle::to_double(oracle::classical_ratio(1.0, 1));
    c.require(std::abs(v.ratio - ref) < 1e-13, "x=1 n=1 ratio differs from extended precision");
    c.require(std::abs(v.ratio - 0.727) < 5e-4, "x=1 n=1 ratio is not about 0.727");
    c.require(v.ratio > 2.0 / 3.0 && v.ratio < 1.0, "x=1 n=1 ratio outside (2/3, 1)");
    if (c.ok) {
        c.detail = "60 points certified; ratio(x=1,n=1) = " + std::to_string(v.ratio);
    }
    return c;
}

// 9. [k+1]_q <= k+1 in exact rationals.
Check q_integer_bound()
{
    Check c;
    for (auto const& q : {oracle::Rational(1, 10), oracle::Rational(1, 2), oracle::Rational(9, 10)}) {
        auto const ints = exact::q_integers(q, 1001);
        for (int k = 0; k <= 1000; ++k) {
            auto const& lhs = ints[static_cast<std::size_t>(k)];
            oracle::Rational const rhs = k + 1;
            c.require(lhs <= rhs, "bound fails at k=" + std::to_string(k));
            c.require((lhs == rhs) == (k == 0), "equality pattern wrong at k=" + std::to_string(k));
        }
    }
    if (c.ok) {
        c.detail = "3 x 1001 exact checks, equality only at k=0";
    }
    return c;
}

// 10. Index-shift recurrences over the default grids.
Check recurrences()
{
    Check c;
    std::size_t points = 0;
    std::size_t refused = 0;
    for (auto kind : {RemainderKind::tail_i, RemainderKind::tail_j}) {
        auto const spec = GridSpec::defaults(kind);
        for (double q : q_points(spec)) {
            for (double z : z_points(spec)) {
                for (int n = spec.n_min; n <= spec.n_max; ++n) {
                    QDomain const d(q, z, n);
                    auto const mid = remainder(kind, d, 1e-15);
                    auto const below = remainder(kind, d.with_n(n - 1), 1e-15);
                    auto const above = remainder(kind, d.with_n(n + 1), 1e-15);
                    double const down = shift_remainder(kind, d, mid.value, ShiftDirection::down);
                    // the shifts themselves round once each
                    double const round_down = 2 * kEps * down;
                    double const round_up = 2 * kEps * mid.value;
                    c.require(std::abs(down - below.value) <= mid.abs_error + below.abs_error + round_down,
                              "down-shift mismatch at q=" + fmt(q) + " z=" + fmt(z) + " n=" + std::to_string(n));
                    ++points;
                    try {
                        double const up = shift_remainder(kind, d, mid.value, ShiftDirection::up);
                        c.require(std::abs(up - above.value) <= mid.abs_error + above.abs_error + round_up,
                                  "up-shift mismatch at q=" + fmt(q) + " z=" + fmt(z) + " n=" + std::to_string(n));
                    } catch (ConsistencyError const&) {
                        // The neighbour is smaller than mid's own uncertainty, so a
                        // non-positive difference is the honest answer.
                        c.require(above.value <= mid.abs_error + round_up,
                                  "unjustified up-shift refusal at q=" + fmt(q) + " z=" + fmt(z));
                        ++refused;
                    }
                }
            }
        }
    }
    if (c.ok) {
        c.detail = std::to_string(points) + " points, both directions; " + std::to_string(refused)
                   + " up-shifts refused below resolution";
    }
    return c;
}

// 11. CLI determinism and exit codes.
Check cli_determinism()
{
    Check c;
    auto const dir = std::filesystem::temp_directory_path();
    auto const a = dir / "qturan_det_a.csv";
    auto const b = dir / "qturan_det_b.csv";
    auto const p = dir / "qturan_det_p.csv";
    std::vector<std::string> const base{"--kind", "E", "--q-max", "0.8", "--q-steps", "7", "--n-max", "6"};
    auto with = [&](std::filesystem::path const& path, std::string const& threads) {
        auto args = base;
        args.insert(args.end(), {"--out", path.string(), "--threads", threads});
        return run_cli(args);
    };
    int const ca = with(a, "1");
    int const cb = with(b, "1");
    int const cp = with(p, "4");
    c.require(ca == 0 && cb == 0 && cp == 0, "certified scan did not exit 0");
    c.require(!slurp(a).empty() && slurp(a) == slurp(b), "repeated serial scans differ");
    c.require(slurp(a) == slurp(p), "parallel scan differs from serial scan");

    c.require(run_cli({"--q-steps", "2", "--n-max", "1", "--z-min", "1e-15", "--z-max", "0.5", "--z-steps", "3",
                       "--log-z", "--out", (dir / "qturan_det_i.csv").string()})
                  == 2,
              "indeterminate scan did not exit 2");
    c.require(run_cli({"--q-min", "0.9", "--q-max", "0.1"}) == 64, "empty range did not exit 64");
    c.require(run_cli({"--q-steps", "1", "--n-max", "1", "--z-steps", "1", "--out", "/nonexistent-dir/x.csv"}) == 74,
              "unwritable path did not exit 74");
    ScanSummary violated;
    violated.violated = 1;
    violated.indeterminate = 3;
    c.require(exit_code_for(violated) == 1, "violated summary does not map to exit 1");
    if (c.ok) {
        c.detail = "byte-identical serial/serial/parallel CSV; exit codes 0/1/2/64/74";
    }
    return c;
}

} // namespace

int main()
{
    struct Criterion {
        char const* name;
        std::function<Check()> run;
    };
    std::vector<Criterion> const criteria{
        {"1  dual-path agreement", dual_path},
        {"2  Euler pairing", euler_pairing},
        {"3  Turán inequality, e(q;z) remainders", [] { return default_scan(RemainderKind::tail_i); }},
        {"4  Turán inequality, E(q;z) remainders", [] { return default_scan(RemainderKind::tail_j); }},
        {"5  sharpness limits", sharpness_limits},
        {"6  determinant closed forms", determinant_oracle},
        {"7  classical limit q -> 1", classical_limit},
        {"8  Alzer inequality", alzer},
        {"9  q-integer bound", q_integer_bound},
        {"10 recurrence suite", recurrences},
        {"11 CLI determinism and exit codes", cli_determinism},
    };

    int failures = 0;
    for (auto const& crit : criteria) {
        Check result;
        try {
            result = crit.run();
        } catch (std::exception const& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::cout << (result.ok ? "[PASS] " : "[FAIL] ") << crit.name << " : " << result.detail << std::endl;
        failures += result.ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
