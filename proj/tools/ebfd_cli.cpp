#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ebfd/harness.hpp"
#include "ebfd/timestepping.hpp"

namespace {

using namespace ebfd;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCertification = 4;

std::filesystem::path output_dir(const std::string& flag_value) {
    if (const char* env = std::getenv("EBFD_OUT_DIR")) return env;
    return flag_value;
}

Strategy parse_strategy(const std::string& s) {
    if (s == "mixed") return Strategy::Mixed;
    if (s == "rbf") return Strategy::Rbf;
    throw CLI::ValidationError("--strategy", "expected mixed or rbf");
}

Cycle parse_cycle(const std::string& s) {
    if (s == "V") return Cycle::V;
    if (s == "W") return Cycle::W;
    throw CLI::ValidationError("--cycle", "expected V or W");
}

void print_rows(const std::vector<ResultRow>& rows) {
    std::cout << csv_header() << '\n';
    for (const ResultRow& r : rows) {
        std::cout << csv_line(r);
        if (!r.error.empty()) std::cout << "  # error: " << r.error;
        std::cout << '\n';
    }
}

int rows_status(const std::vector<ResultRow>& rows) {
    for (const ResultRow& r : rows)
        if (!r.error.empty()) return kExitSolver;
    return 0;
}

void maybe_write(const std::string& out_flag, const std::string& name,
                 const std::vector<ResultRow>& rows) {
    if (out_flag.empty()) return;
    auto dir = output_dir(out_flag);
    std::filesystem::create_directories(dir);
    write_csv((dir / (name + ".csv")).string(), rows);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Embedded-boundary finite difference toolkit"};
    app.require_subcommand(1);

    std::string problem_name = "glass", strategy_s = "mixed", cycle_s = "W";
    std::string out_flag;
    std::vector<int> ns{50, 100, 200};
    double theta = 0.0, cfl = 0.7, periods = 10.2, t_final = 0.5;
    double qoi_lo = 0.5, qoi_hi = 2.0;
    int qoi_samples = 16, n_single = 200;
    bool rotated = false, dump_mask = false, export_matrix = false;
    bool require_certified = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--problem", problem_name, "named problem");
        cmd->add_option("--N", ns, "grid resolutions")->delimiter(',');
        cmd->add_option("--strategy", strategy_s, "mixed|rbf");
        cmd->add_option("--cycle", cycle_s, "V|W");
        cmd->add_option("--out", out_flag, "output directory for CSV files");
        cmd->add_flag("--dump-mask", dump_mask, "print the classification grid");
        cmd->add_flag("--export-matrix", export_matrix,
                      "write the operator in coordinate text format");
        cmd->add_flag("--require-certified", require_certified,
                      "fail when the positive definiteness check does not pass");
    };

    CLI::App* poisson = app.add_subcommand("poisson", "steady convergence sweep");
    add_common(poisson);
    CLI::App* heat = app.add_subcommand("heat", "Crank-Nicolson heat sweep");
    add_common(heat);
    heat->add_option("--T", t_final, "final time");
    CLI::App* wave = app.add_subcommand("wave", "theta-scheme wave sweep");
    add_common(wave);
    wave->add_option("--theta", theta, "scheme parameter");
    wave->add_option("--cfl", cfl, "dt / h");
    wave->add_option("--periods", periods, "standing-mode periods to evolve");
    CLI::App* helm = app.add_subcommand("helmholtz", "indefinite Helmholtz solve");
    add_common(helm);
    helm->add_option("--n-single", n_single, "grid resolution");
    CLI::App* qoi = app.add_subcommand("qoi", "geometry-parameter sweep");
    add_common(qoi);
    qoi->add_option("--lo", qoi_lo, "parameter range start");
    qoi->add_option("--hi", qoi_hi, "parameter range end");
    qoi->add_option("--samples", qoi_samples, "parameter samples");
    qoi->add_option("--n-single", n_single, "grid resolution");
    qoi->add_flag("--rotated", rotated, "rotated-ellipse family");
    CLI::App* spd = app.add_subcommand("spdcheck", "positive definiteness report");
    add_common(spd);
    CLI::App* eig = app.add_subcommand("eig", "extremal eigenvalues");
    add_common(eig);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        Strategy strategy = parse_strategy(strategy_s);
        Cycle cycle = parse_cycle(cycle_s);

        if (poisson->parsed()) {
            BenchmarkProblem p = make_problem(problem_name);
            auto rows = poisson_convergence(p, ns, strategy, cycle);
            print_rows(rows);
            maybe_write(out_flag, "poisson_" + problem_name, rows);
            if (dump_mask || export_matrix) {
                GridContext ctx = build_context(p.box, ns.front(), p.spec.geometry);
                if (dump_mask) std::cout << dump_classification(ctx.cls);
                if (export_matrix) {
                    OperatorSystem sys = assemble(p.spec, ctx, strategy);
                    std::cout << sys.a.to_coordinate_text();
                }
            }
            if (require_certified)
                for (const ResultRow& r : rows)
                    if (r.certified == "not_certified") return kExitCertification;
            return rows_status(rows);
        }
        if (heat->parsed()) {
            BenchmarkProblem p = make_problem(problem_name);
            auto rows = heat_convergence(p, ns, strategy, t_final);
            print_rows(rows);
            maybe_write(out_flag, "heat_" + problem_name, rows);
            return rows_status(rows);
        }
        if (wave->parsed()) {
            BenchmarkProblem p = make_problem(problem_name == "glass" ? "wave_disk"
                                                                      : problem_name);
            auto rows = wave_convergence(p, ns, theta, cfl, periods);
            print_rows(rows);
            maybe_write(out_flag, "wave", rows);
            return rows_status(rows);
        }
        if (helm->parsed()) {
            BenchmarkProblem p = make_problem(problem_name == "glass" ? "star"
                                                                      : problem_name);
            HelmholtzRun run = run_helmholtz(p, n_single, strategy);
            std::cout << "N=" << n_single << " iterations=" << run.iterations
                      << " max|u|=" << run.linf << '\n';
            return 0;
        }
        if (qoi->parsed()) {
            std::vector<double> params;
            for (int i = 0; i < qoi_samples; ++i)
                params.push_back(qoi_lo +
                                 (qoi_hi - qoi_lo) * i / (qoi_samples - 1.0));
            auto rows = rotated ? qoi_sweep_rotated(params, n_single, strategy, cycle)
                                : qoi_sweep_ellipse(params, n_single, strategy, cycle);
            std::vector<double> qs;
            for (const QoiRow& r : rows) qs.push_back(r.qoi_point);
            auto dq = central_difference(params, qs);
            std::cout << "param,qoi_point,qoi_integral,dqoi_dparam,E_linf\n";
            std::cout.precision(12);
            for (std::size_t i = 0; i < rows.size(); ++i)
                std::cout << rows[i].param << ',' << rows[i].qoi_point << ','
                          << rows[i].qoi_integral << ',' << dq[i] << ','
                          << rows[i].e_linf << '\n';
            return 0;
        }
        if (spd->parsed()) {
            BenchmarkProblem p = make_problem(problem_name);
            for (int n : ns) {
                GridContext ctx = build_context(p.box, n, p.spec.geometry);
                OperatorSystem sys = assemble(p.spec, ctx, strategy);
                CertificationReport rep = check_operator(sys);
                std::cout << "N=" << n << " segments_x=" << sys.seg_x.size()
                          << " segments_y=" << sys.seg_y.size() << " verdict=";
                switch (rep.verdict) {
                    case Certification::Certified: std::cout << "certified"; break;
                    case Certification::NotCertified:
                        std::cout << "not_certified";
                        break;
                    default: std::cout << "skipped";
                }
                std::cout << " diag_dominant=" << (rep.diag_dominant ? "yes" : "no")
                          << '\n';
                for (const auto& f : rep.x.failures)
                    std::cout << "  failing x-segment n=" << f.n << " a=" << f.a
                              << " b=" << f.b << '\n';
                for (const auto& f : rep.y.failures)
                    std::cout << "  failing y-segment n=" << f.n << " a=" << f.a
                              << " b=" << f.b << '\n';
                if (require_certified && rep.verdict != Certification::Certified)
                    return kExitCertification;
            }
            return 0;
        }
        if (eig->parsed()) {
            BenchmarkProblem p = make_problem(problem_name);
            std::cout << "N,n_comp,lambda_min,lambda_max,lambda_max_scaled\n";
            std::cout.precision(12);
            for (int n : ns) {
                EigReport rep = run_eig(p, n, strategy);
                std::cout << rep.n << ',' << rep.n_comp << ',' << rep.lambda_min << ','
                          << rep.lambda_max << ',' << rep.lambda_max_scaled << '\n';
            }
            return 0;
        }
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
