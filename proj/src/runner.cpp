#include "rgflow/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <thread>

#include "rgflow/diagnostics.hpp"
#include "rgflow/errors.hpp"
#include "rgflow/presets.hpp"

namespace fs = std::filesystem;

namespace rgflow {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void write_trace_csv(const fs::path& path,
                     const std::vector<TraceRecord>& trace) {
    std::ofstream out = open_out(path);
    const size_t nlam = trace.empty() ? 0 : trace.front().lambda_magnitudes.size();
    out << "n,alpha_n,beta_n,A_n,B_n,reldiff_L1,reldiff_Linf";
    for (size_t i = 1; i <= nlam; ++i) out << ",lambda_" << i;
    out << ",grid_count,substeps\n";
    for (const TraceRecord& r : trace) {
        out << r.n << ',' << fmt(r.alpha_n) << ',' << fmt(r.beta_n) << ','
            << fmt(r.A_n) << ',' << fmt(r.B_n) << ',' << fmt(r.reldiff_L1) << ','
            << fmt(r.reldiff_Linf);
        for (double l : r.lambda_magnitudes) out << ',' << fmt(l);
        out << ',' << r.grid_count << ',' << r.substeps << '\n';
    }
}

void write_profile_csv(const fs::path& path, const Field& f,
                       double x_scale = 1.0) {
    std::ofstream out = open_out(path);
    out << "x,value\n";
    for (int j = 0; j < f.grid.count; ++j) {
        out << fmt(f.grid.node(j) * x_scale) << ',' << fmt(f.values[j]) << '\n';
    }
}

void write_summary_csv(const fs::path& path, const RunOutcome& oc) {
    std::ofstream out = open_out(path);
    out << "status,iterations,alpha_star,A_star,sigma_fit,sigma_theory,"
           "fit_residual\n";
    const RunSummary& s = oc.summary;
    out << to_string(oc.status) << ',' << s.iterations << ','
        << fmt(s.alpha_star) << ',' << fmt(s.A_star) << ',' << fmt(s.sigma_fit)
        << ',' << fmt(s.sigma_theory) << ',' << fmt(s.fit_residual) << '\n';
}

RunSummary summary_from_partial_trace(const std::vector<TraceRecord>& trace) {
    RunSummary s;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.iterations = static_cast<int>(trace.size());
    s.alpha_star = nan;
    s.A_star = nan;
    s.sigma_fit = nan;
    s.sigma_theory = nan;
    s.fit_residual = nan;
    if (!trace.empty()) {
        const int k = std::min<int>(10, s.iterations);
        double acc = 0.0;
        for (int i = s.iterations - k; i < s.iterations; ++i) {
            acc += trace[i].alpha_n;
        }
        s.alpha_star = acc / k;
        s.A_star = trace.back().A_n;
    }
    return s;
}

// Runs a batch of independent jobs, at most hardware_concurrency at a time.
template <typename Job>
void run_parallel(std::vector<Job>& jobs) {
    const size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (size_t base = 0; base < jobs.size(); base += width) {
        const size_t end = std::min(jobs.size(), base + width);
        std::vector<std::future<void>> futs;
        futs.reserve(end - base);
        for (size_t i = base; i < end; ++i) {
            futs.push_back(std::async(std::launch::async, std::ref(jobs[i])));
        }
        for (auto& f : futs) f.get();
    }
}

void apply_overrides(RunConfig& cfg, const RunOverrides& ov) {
    if (ov.grid_count) cfg.grid_count = *ov.grid_count;
    if (ov.max_iter) cfg.max_iter = *ov.max_iter;
    if (ov.reldiff_tol) cfg.reldiff_tol = *ov.reldiff_tol;
    if (ov.ic_amplitude) cfg.ic_amplitude = *ov.ic_amplitude;
}

} // namespace

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Ok: return "ok";
        case RunStatus::BlowUp: return "blow_up";
        case RunStatus::DegenerateProfile: return "degenerate_profile";
        case RunStatus::DivergingCoefficient: return "diverging_coefficient";
        case RunStatus::Error: return "error";
    }
    return "error";
}

int exit_code(RunStatus status) {
    switch (status) {
        case RunStatus::Ok: return 0;
        case RunStatus::BlowUp: return 10;
        case RunStatus::DegenerateProfile: return 11;
        case RunStatus::DivergingCoefficient: return 12;
        case RunStatus::Error: return 14;
    }
    return 14;
}

RunOutcome execute_run(const RunConfig& cfg) {
    RunOutcome oc;
    try {
        const EquationSpec spec = build_equation(cfg);
        const Field f0 = build_initial_field(cfg);
        const BetaPolicy policy = build_policy(cfg);
        const StopRule stop = build_stop(cfg);
        auto observer = [&oc](const TraceRecord& r) { oc.trace.push_back(r); };
        RunResult res =
            run(spec, f0, policy, cfg.L, stop, cfg.stepper, observer);
        oc.summary = res.summary;
        oc.profile = std::move(res.final_profile);
    } catch (const RunError& e) {
        oc.message = e.what();
        oc.failed_iteration = e.iteration;
        switch (e.cls) {
            case ErrorClass::BlowUp: oc.status = RunStatus::BlowUp; break;
            case ErrorClass::DegenerateProfile:
                oc.status = RunStatus::DegenerateProfile;
                break;
            case ErrorClass::DivergingCoefficient:
                oc.status = RunStatus::DivergingCoefficient;
                break;
            default: oc.status = RunStatus::Error; break;
        }
        oc.summary = summary_from_partial_trace(oc.trace);
    } catch (const std::exception& e) {
        oc.message = e.what();
        oc.status = RunStatus::Error;
        oc.summary = summary_from_partial_trace(oc.trace);
    }

    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        if (cfg.write_trace) write_trace_csv(dir / "trace.csv", oc.trace);
        if (cfg.write_profile && oc.profile) {
            write_profile_csv(dir / "profile.csv", *oc.profile);
        }
        if (cfg.write_summary) write_summary_csv(dir / "summary.csv", oc);
    }
    return oc;
}

int cmd_run(const RunConfig& cfg) {
    const RunOutcome oc = execute_run(cfg);
    if (oc.status == RunStatus::Ok) {
        std::printf(
            "status=ok iterations=%d alpha_star=%.6f A_star=%.6f "
            "sigma_fit=%.6f sigma_theory=%.6f\n",
            oc.summary.iterations, oc.summary.alpha_star, oc.summary.A_star,
            oc.summary.sigma_fit, oc.summary.sigma_theory);
    } else {
        std::fprintf(stderr, "status=%s (%s)\n", to_string(oc.status).c_str(),
                     oc.message.c_str());
    }
    return exit_code(oc.status);
}

int cmd_table(const std::vector<int>& rows, const std::string& out_dir,
              const RunOverrides& ov) {
    struct Job {
        RunConfig cfg;
        RunOutcome oc;
        int row = 0;
        void operator()() { oc = execute_run(cfg); }
    };
    std::vector<Job> jobs;
    for (int row : rows) {
        Job j;
        j.row = row;
        j.cfg = table_preset(row);
        apply_overrides(j.cfg, ov);
        char sub[16];
        std::snprintf(sub, sizeof(sub), "sim_%02d", row);
        j.cfg.out_dir = (fs::path(out_dir) / sub).string();
        jobs.push_back(std::move(j));
    }
    run_parallel(jobs);

    fs::create_directories(out_dir);
    std::ofstream out = open_out(fs::path(out_dir) / "table_summary.csv");
    out << "row,status,iterations,alpha_star,A_star,sigma_fit,sigma_theory,"
           "fit_residual\n";
    int rc = 0;
    for (const Job& j : jobs) {
        const RunSummary& s = j.oc.summary;
        out << j.row << ',' << to_string(j.oc.status) << ',' << s.iterations
            << ',' << fmt(s.alpha_star) << ',' << fmt(s.A_star) << ','
            << fmt(s.sigma_fit) << ',' << fmt(s.sigma_theory) << ','
            << fmt(s.fit_residual) << '\n';
        if (j.oc.status != RunStatus::Ok) {
            std::fprintf(stderr, "row %d: %s (%s)\n", j.row,
                         to_string(j.oc.status).c_str(), j.oc.message.c_str());
            if (rc == 0) rc = exit_code(j.oc.status);
        }
    }
    return rc;
}

int cmd_sweep_barenblatt(const std::vector<double>& eps_list,
                         const std::string& out_dir, const RunOverrides& ov) {
    struct Job {
        RunConfig cfg;
        RunOutcome oc;
        double eps = 0.0;
        void operator()() { oc = execute_run(cfg); }
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < eps_list.size(); ++i) {
        Job j;
        j.eps = eps_list[i];
        j.cfg = table_preset(11); // heat-kernel initial data
        j.cfg.form = EquationForm::Barenblatt;
        j.cfg.epsilon = j.eps;
        apply_overrides(j.cfg, ov);
        char sub[24];
        std::snprintf(sub, sizeof(sub), "eps_%02zu", i);
        j.cfg.out_dir = (fs::path(out_dir) / sub).string();
        jobs.push_back(std::move(j));
    }
    run_parallel(jobs);

    fs::create_directories(out_dir);
    std::ofstream out = open_out(fs::path(out_dir) / "barenblatt_sweep.csv");
    out << "eps,status,alpha_star,first_order_prediction\n";
    int rc = 0;
    for (const Job& j : jobs) {
        out << fmt(j.eps) << ',' << to_string(j.oc.status) << ','
            << fmt(j.oc.summary.alpha_star) << ','
            << fmt(barenblatt_alpha_first_order(j.eps)) << '\n';
        if (j.oc.status != RunStatus::Ok && rc == 0) {
            rc = exit_code(j.oc.status);
        }
    }
    return rc;
}

int cmd_sweep_relevant(const std::vector<double>& a_list, double mu,
                       const std::string& g_name, const std::string& out_dir,
                       const RunOverrides& ov) {
    struct Job {
        RunConfig cfg;
        RunOutcome oc;
        double a = 0.0;
        void operator()() {
            oc = execute_run(cfg);
            if (oc.status == RunStatus::Ok && oc.profile && cfg.mu != 0.0) {
                // overlay against the mu = 0 profile: sample against x/sqrt(sigma)
                const double sigma =
                    harmonic_mean(build_equation(cfg).g, cfg.mu);
                write_profile_csv(fs::path(cfg.out_dir) / "profile_scaled.csv",
                                  *oc.profile, 1.0 / std::sqrt(sigma));
            }
        }
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < a_list.size(); ++i) {
        Job j;
        j.a = a_list[i];
        if (!(j.a > 1.0 && j.a < 3.0)) {
            std::fprintf(stderr, "a = %g outside (1, 3), skipping\n", j.a);
            continue;
        }
        j.cfg = table_preset(11);
        j.cfg.mu = mu;
        j.cfg.g_name = g_name;
        j.cfg.terms = {{-1.0, j.a, 0.0, 0.0}};
        apply_overrides(j.cfg, ov);
        char sub[24];
        std::snprintf(sub, sizeof(sub), "a_%02zu", i);
        j.cfg.out_dir = (fs::path(out_dir) / sub).string();
        jobs.push_back(std::move(j));
    }
    run_parallel(jobs);

    fs::create_directories(out_dir);
    std::ofstream out = open_out(fs::path(out_dir) / "relevant_sweep.csv");
    out << "a,status,alpha_star,alpha_theory,sigma_fit,sigma_theory\n";
    int rc = 0;
    for (const Job& j : jobs) {
        out << fmt(j.a) << ',' << to_string(j.oc.status) << ','
            << fmt(j.oc.summary.alpha_star) << ',' << fmt(relevant_alpha(j.a))
            << ',' << fmt(j.oc.summary.sigma_fit) << ','
            << fmt(j.oc.summary.sigma_theory) << '\n';
        if (j.oc.status != RunStatus::Ok && rc == 0) {
            rc = exit_code(j.oc.status);
        }
    }
    return rc;
}

int cmd_harmonic_mean(const std::string& g_name, double mu, double tol) {
    try {
        const PeriodicCoefficient g =
            g_name == "none" ? no_g() : builtin_g(g_name);
        std::printf("%.12f\n", harmonic_mean(g, mu, tol));
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "harmonic-mean: %s\n", e.what());
        return 2;
    }
}

namespace {

void write_script(const fs::path& path, const std::string& body) {
    std::ofstream out = open_out(path);
    out << "# gnuplot script (regenerated by 'rgflow plots')\n"
        << "set datafile separator ','\n"
        << "set terminal pngcairo size 900,600\n"
        << body;
}

} // namespace

int emit_plots(const std::string& run_dir) {
    const fs::path dir(run_dir);
    int written = 0;
    if (fs::exists(dir / "trace.csv")) {
        write_script(dir / "alpha_vs_n.gp",
                     "set output 'alpha_vs_n.png'\n"
                     "set xlabel 'n'\nset ylabel 'alpha_n'\n"
                     "plot 'trace.csv' every ::1 using 1:2 with lines "
                     "title 'alpha_n'\n");
        write_script(dir / "prefactor_vs_n.gp",
                     "set output 'prefactor_vs_n.png'\n"
                     "set xlabel 'n'\nset ylabel 'A_n'\n"
                     "plot 'trace.csv' every ::1 using 1:4 with lines "
                     "title 'A_n'\n");
        write_script(dir / "reldiff_vs_n.gp",
                     "set output 'reldiff_vs_n.png'\n"
                     "set xlabel 'n'\nset ylabel '|f_n - f_{n-1}| / |f_n|'\n"
                     "set logscale y\n"
                     "plot 'trace.csv' every ::1 using 1:6 with lines "
                     "title 'L1', 'trace.csv' every ::1 using 1:7 with lines "
                     "title 'Linf'\n");
        written += 3;
    }
    if (fs::exists(dir / "profile.csv")) {
        write_script(dir / "profile_loglog.gp",
                     "stats 'profile.csv' every ::1 using 2 nooutput\n"
                     "peak = STATS_max\n"
                     "set output 'profile_loglog.png'\n"
                     "set xlabel '-log phi_*'\nset ylabel '-log phi'\n"
                     "plot 'profile.csv' every ::1 "
                     "using ($1**2/4):(-log($2/peak)) with points pt 7 ps 0.4 "
                     "title 'computed profile', x title 'sigma = 1'\n");
        written += 1;
    }
    if (fs::exists(dir / "barenblatt_sweep.csv")) {
        write_script(dir / "alpha_vs_eps.gp",
                     "set output 'alpha_vs_eps.png'\n"
                     "set xlabel 'epsilon'\nset ylabel 'alpha'\n"
                     "plot 'barenblatt_sweep.csv' every ::1 using 1:3 "
                     "with points pt 7 title 'computed', "
                     "0.5 + x/sqrt(2*pi*exp(1)) title 'first order'\n");
        written += 1;
    }
    if (fs::exists(dir / "relevant_sweep.csv")) {
        write_script(dir / "alpha_vs_a.gp",
                     "set output 'alpha_vs_a.png'\n"
                     "set xlabel 'a'\nset ylabel 'alpha'\n"
                     "plot 'relevant_sweep.csv' every ::1 using 1:3 "
                     "with points pt 7 title 'computed', "
                     "1/(x-1) title 'theory'\n");
        written += 1;
    }
    if (written == 0) {
        std::fprintf(stderr, "plots: no artifacts found in '%s'\n",
                     run_dir.c_str());
        return 3;
    }
    std::printf("wrote %d plot scripts to %s\n", written, run_dir.c_str());
    return 0;
}

} // namespace rgflow
