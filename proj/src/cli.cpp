#include "qturan/cli.hpp"

#include "qturan/errors.hpp"
#include "qturan/scan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <thread>

namespace qturan::cli {

namespace {

void print_location(std::ostream& os, GridLocation const& at)
{
    os << "(q=" << format_real(at.q) << ", n=" << at.n << ", z=" << format_real(at.z) << ")";
}

void print_summary(std::ostream& os, ScanSummary const& s)
{
    os << "points: " << s.total() << "  certified: " << s.certified << "  violated: " << s.violated
       << "  indeterminate: " << s.indeterminate << '\n';
    if (s.total() == 0) {
        return;
    }
    os << "min lower margin: " << format_real(s.min_lower_margin) << " at ";
    print_location(os, s.min_lower_at);
    os << "\nmin upper margin: " << format_real(s.min_upper_margin) << " at ";
    print_location(os, s.min_upper_at);
    os << '\n';
}

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Scan and certify Turán-type inequalities for q-exponential remainders"};

    std::string kind_name = "I";
    double q_min = 0.0, q_max = 0.0, z_min = 0.0, z_max = 0.0, tol = 1e-12;
    int q_steps = 0, z_steps = 0, n_min = 0, n_max = 0;
    bool log_z = false, linear_z = false, sharpness = false, alzer = false;
    std::string out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    app.add_option("--kind", kind_name, "Remainder family: I (e(q;z) tails) or E (E(q;z) tails)")
        ->check(CLI::IsMember({"I", "E"}));
    auto* o_q_min = app.add_option("--q-min", q_min, "Smallest q");
    auto* o_q_max = app.add_option("--q-max", q_max, "Largest q");
    auto* o_q_steps = app.add_option("--q-steps", q_steps, "Number of q values");
    auto* o_n_min = app.add_option("--n-min", n_min, "Smallest n (>= 1)");
    auto* o_n_max = app.add_option("--n-max", n_max, "Largest n");
    auto* o_z_min = app.add_option("--z-min", z_min, "Smallest z (x in --alzer mode)");
    auto* o_z_max = app.add_option("--z-max", z_max, "Largest z (x in --alzer mode)");
    auto* o_z_steps = app.add_option("--z-steps", z_steps, "Number of z values");
    app.add_flag("--log-z", log_z, "Geometric z spacing");
    app.add_flag("--linear-z", linear_z, "Linear z spacing")->excludes("--log-z");
    app.add_option("--tol", tol, "Relative truncation tolerance");
    app.add_option("--out", out_path, "Write CSV here instead of stdout");
    app.add_flag("--sharpness", sharpness,
                 "Emit z,ratio,best_constant,deviation for decreasing z at q = q-min, n = n-min");
    app.add_flag("--alzer", alzer, "Classical exponential check over x instead of z");
    app.add_option("--threads", threads, "Worker threads for the grid scan")->check(CLI::PositiveNumber);

    std::vector<char const*> argv;
    argv.reserve(args.size());
    for (auto const& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    auto const kind = kind_name == "E" ? RemainderKind::tail_j : RemainderKind::tail_i;
    GridSpec spec = GridSpec::defaults(kind, alzer);
    auto set = [](CLI::Option const* opt, auto& field, auto value) {
        if (opt->count() > 0) {
            field = value;
        }
    };
    set(o_q_min, spec.q_min, q_min);
    set(o_q_max, spec.q_max, q_max);
    set(o_q_steps, spec.q_steps, q_steps);
    set(o_n_min, spec.n_min, n_min);
    set(o_n_max, spec.n_max, n_max);
    set(o_z_min, spec.z_min, z_min);
    set(o_z_max, spec.z_max, z_max);
    set(o_z_steps, spec.z_steps, z_steps);
    if (log_z) {
        spec.log_z = true;
    }
    if (linear_z) {
        spec.log_z = false;
    }
    spec.tol = tol;

    try {
        if (sharpness) {
            if (alzer) {
                throw UsageError("--sharpness and --alzer cannot be combined");
            }
            validate(spec);
            auto zs = z_points(spec);
            std::reverse(zs.begin(), zs.end());
            auto const report = out_path.empty() ? write_sharpness(out, kind, spec.q_min, spec.n_min, zs)
                                                 : emit_sharpness(kind, spec.q_min, spec.n_min, zs, out_path);
            err << "sharpness: " << report.points.size() << " points, empirical constant "
                << format_real(report.empirical_constant) << ", deviations "
                << (report.monotone ? "strictly decreasing" : "NOT strictly decreasing") << '\n';
            return report.monotone ? kExitOk : kExitIndeterminate;
        }

        auto const result = scan(spec, threads);
        if (out_path.empty()) {
            write_csv(out, result.records);
        } else {
            emit_csv(result.records, out_path);
        }
        print_summary(err, result.summary);
        return exit_code_for(result.summary);
    } catch (UsageError const& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (ArgumentError const& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (DomainError const& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (IoError const& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (std::exception const& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitSoftware;
    }
}

} // namespace qturan::cli
