#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>
#include <vector>

#include "svg.hpp"
#include "xycorr/cpscan.hpp"
#include "xycorr/version.hpp"
#include "xycorr/xymodel.hpp"

namespace xycorr::cli {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string join_doubles(const std::vector<double>& vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ',';
        out += fmt_g17(vs[i]);
    }
    return out;
}

std::string join_measures(const std::vector<MeasureKind>& ms) {
    std::string out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += ',';
        out += to_string(ms[i]);
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-" || path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << content;
}

/// Index-parallel map with deterministic error selection (lowest index wins).
template <class F>
void parallel_for(int n, int workers, F&& body) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::optional<std::pair<int, std::string>> first_error;
    auto run = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error || i < first_error->first) first_error = {i, e.what()};
            }
        }
    };
    std::vector<std::thread> pool;
    const int k = std::min(workers, n);
    pool.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    if (first_error) throw Error(first_error->second);
}

std::vector<double> sorted_unique(std::vector<double> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

void check_model_params(const RunConfig& cfg) {
    try {
        for (double g : cfg.gammas)
            for (double kt : cfg.kts) validate_params({g, std::max(0.0, cfg.lambda_min), kt});
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (cfg.lambda_min < 0.0) throw ConfigError("lambda must be >= 0");
}

std::string point_tag(double gamma, double kt, double lambda, int r) {
    std::ostringstream os;
    os << "gamma=" << gamma << " kt=" << kt << " lambda=" << lambda << " r=" << r;
    return os.str();
}

std::string header(const char* command, const RunConfig& cfg, const std::string& params) {
    std::ostringstream os;
    os << "# xycorr " << kVersion << " " << command << "\n";
    os << "# config: " << params << " seed=" << cfg.seed << "\n";
    return os.str();
}

int run_guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int cmd_sweep(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        const std::vector<MeasureKind> measures = cfg.measures();
        if (!(cfg.lambda_max >= cfg.lambda_min))
            throw ConfigError("lambda-max must be >= lambda-min");
        check_model_params(cfg);

        // Rows come out sorted by (gamma, kt, lambda, r, measure) whatever the
        // flag order or completion order.
        const std::vector<double> gammas = sorted_unique(cfg.gammas);
        const std::vector<double> kts = sorted_unique(cfg.kts);
        std::ostringstream body;
        for (double gamma : gammas) {
            for (double kt : kts) {
                const std::vector<double> grid =
                    uniform_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_step);
                const int n = static_cast<int>(grid.size());
                std::vector<std::vector<double>> values(
                    measures.size(), std::vector<double>(static_cast<std::size_t>(n)));

                parallel_for(n, cfg.workers, [&](int i) {
                    try {
                        const XState s =
                            reduced_state({gamma, grid[static_cast<std::size_t>(i)], kt}, cfg.r);
                        for (std::size_t m = 0; m < measures.size(); ++m)
                            values[m][static_cast<std::size_t>(i)] = evaluate(measures[m], s);
                    } catch (const Error& e) {
                        throw Error("at " + point_tag(gamma, kt, grid[static_cast<std::size_t>(i)],
                                                      cfg.r) +
                                    ": " + e.what());
                    }
                });

                // Derivative columns exist only when the stencils are defined.
                std::vector<std::vector<double>> d1(measures.size()), d2(measures.size());
                if (n >= 5) {
                    for (std::size_t m = 0; m < measures.size(); ++m) {
                        MeasureCurve c{gamma, kt, cfg.r, measures[m], grid, values[m]};
                        d1[m] = numeric_derivative(c, 1).values;
                        d2[m] = numeric_derivative(c, 2).values;
                    }
                }

                for (int i = 0; i < n; ++i) {
                    for (std::size_t m = 0; m < measures.size(); ++m) {
                        body << fmt_g17(gamma) << ',' << fmt_g17(grid[static_cast<std::size_t>(i)])
                             << ',' << fmt_g17(kt) << ',' << cfg.r << ','
                             << to_string(measures[m]) << ','
                             << fmt_g17(values[m][static_cast<std::size_t>(i)]) << ',';
                        if (n >= 5)
                            body << fmt_g17(d1[m][static_cast<std::size_t>(i)]) << ','
                                 << fmt_g17(d2[m][static_cast<std::size_t>(i)]);
                        else
                            body << ',';
                        body << '\n';
                    }
                }

                if (!cfg.svg.empty()) {
                    std::vector<SvgSeries> series;
                    for (std::size_t m = 0; m < measures.size(); ++m)
                        series.push_back({to_string(measures[m]), grid, values[m]});
                    char suffix[64];
                    std::snprintf(suffix, sizeof suffix, "_gamma%g_kt%g.svg", gamma, kt);
                    char title[96];
                    std::snprintf(title, sizeof title, "gamma=%g kT=%g r=%d", gamma, kt, cfg.r);
                    write_svg_panel(cfg.svg + suffix, title, "lambda", "measure", series);
                }
            }
        }

        std::ostringstream params;
        params << "gamma=" << join_doubles(cfg.gammas) << " kt=" << join_doubles(cfg.kts)
               << " lambda-min=" << fmt_g17(cfg.lambda_min)
               << " lambda-max=" << fmt_g17(cfg.lambda_max)
               << " lambda-step=" << fmt_g17(cfg.lambda_step) << " r=" << cfg.r
               << " measures=" << join_measures(measures);
        std::string out = header("sweep", cfg, params.str());
        out += "gamma,lambda,kt,r,measure,value,d1,d2\n";
        out += body.str();
        write_output(cfg.out, out);
        return 0;
    });
}

int cmd_cp(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        const std::vector<MeasureKind> measures = cfg.measures();
        if (cfg.window.size() != 2 || !(cfg.window[0] < cfg.window[1]))
            throw ConfigError("window must be two increasing values");
        for (double kt : cfg.kts)
            if (!(kt > 0.0)) throw ConfigError("cp requires kT > 0 (derivatives diverge at 0)");
        check_model_params(cfg);
        if ((cfg.window[1] - cfg.window[0]) / cfg.lambda_step + 1 < 5)
            throw ConfigError("window/step give fewer than 5 grid points");

        struct Task {
            double gamma, kt;
            MeasureKind measure;
        };
        std::vector<Task> tasks;
        for (double gamma : sorted_unique(cfg.gammas))
            for (double kt : sorted_unique(cfg.kts))
                for (MeasureKind m : measures) tasks.push_back({gamma, kt, m});

        struct Row {
            std::string lambda_hat, extremum, reason;
        };
        std::vector<Row> rows(tasks.size());
        parallel_for(static_cast<int>(tasks.size()), cfg.workers, [&](int i) {
            const Task& t = tasks[static_cast<std::size_t>(i)];
            CpScanOptions opt{cfg.window[0], cfg.window[1], cfg.lambda_step, cfg.deriv_order};
            try {
                const CpEstimate e = estimate_cp(t.gamma, t.kt, cfg.r, t.measure, opt);
                rows[static_cast<std::size_t>(i)] = {fmt_g17(e.lambda_hat),
                                                     fmt_g17(e.extremum_value), ""};
            } catch (const FlatCurve&) {
                rows[static_cast<std::size_t>(i)] = {"", "", "FlatCurve"};
            } catch (const Error& e) {
                throw Error("at " + point_tag(t.gamma, t.kt, cfg.window[0], cfg.r) + ": " +
                            e.what());
            }
        });

        std::ostringstream body;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            body << fmt_g17(tasks[i].gamma) << ',' << fmt_g17(tasks[i].kt) << ',' << cfg.r << ','
                 << to_string(tasks[i].measure) << ',' << rows[i].lambda_hat << ','
                 << cfg.deriv_order << ',' << rows[i].extremum << ',' << rows[i].reason << '\n';
        }

        std::ostringstream params;
        params << "gamma=" << join_doubles(cfg.gammas) << " kt=" << join_doubles(cfg.kts)
               << " window=" << fmt_g17(cfg.window[0]) << "," << fmt_g17(cfg.window[1])
               << " lambda-step=" << fmt_g17(cfg.lambda_step) << " r=" << cfg.r
               << " deriv-order=" << cfg.deriv_order << " measures=" << join_measures(measures);
        std::string out = header("cp", cfg, params.str());
        out += "gamma,kt,r,measure,lambda_hat,deriv_order,extremum_value,reason\n";
        out += body.str();
        write_output(cfg.out, out);
        return 0;
    });
}

int cmd_longrange(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        const std::vector<MeasureKind> measures = cfg.measures();
        if (cfg.rmax < 2) throw ConfigError("longrange requires rmax >= 2");
        check_model_params(cfg);

        struct Task {
            double gamma, kt, lambda;
        };
        std::vector<Task> tasks;
        const std::vector<double> grid =
            uniform_grid(cfg.lambda_min, cfg.lambda_max, cfg.lambda_step);
        for (double gamma : sorted_unique(cfg.gammas))
            for (double kt : sorted_unique(cfg.kts))
                for (double lambda : grid) tasks.push_back({gamma, kt, lambda});

        std::vector<std::vector<LongRangePoint>> results(tasks.size());
        parallel_for(static_cast<int>(tasks.size()), cfg.workers, [&](int i) {
            const Task& t = tasks[static_cast<std::size_t>(i)];
            try {
                results[static_cast<std::size_t>(i)] =
                    long_range_profile(t.gamma, t.kt, t.lambda, measures, cfg.rmax);
            } catch (const Error& e) {
                throw Error("at " + point_tag(t.gamma, t.kt, t.lambda, cfg.rmax) + ": " +
                            e.what());
            }
        });

        std::ostringstream body;
        for (std::size_t i = 0; i < tasks.size(); ++i)
            for (const LongRangePoint& p : results[i])
                body << fmt_g17(tasks[i].gamma) << ',' << fmt_g17(tasks[i].kt) << ','
                     << fmt_g17(tasks[i].lambda) << ',' << p.r << ',' << to_string(p.measure)
                     << ',' << fmt_g17(p.value) << '\n';

        std::ostringstream params;
        params << "gamma=" << join_doubles(cfg.gammas) << " kt=" << join_doubles(cfg.kts)
               << " lambda-min=" << fmt_g17(cfg.lambda_min)
               << " lambda-max=" << fmt_g17(cfg.lambda_max)
               << " lambda-step=" << fmt_g17(cfg.lambda_step) << " rmax=" << cfg.rmax
               << " measures=" << join_measures(measures);
        std::string out = header("longrange", cfg, params.str());
        out += "gamma,kt,lambda,r,measure,value\n";
        out += body.str();
        write_output(cfg.out, out);
        return 0;
    });
}

}  // namespace xycorr::cli
