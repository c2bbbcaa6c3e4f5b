// framelab command line: frame construction, dual frames, erasure-error
// averages, dual optimization and the validation suite.
//
// Exit codes: 0 ok, 1 check failure, 2 bad arguments, 3 I/O failure,
// 4 not a dual, 5 pattern budget exceeded.

#include <cstdint>
#include <ctime>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "framelab/checks.hpp"
#include "framelab/dual_chart.hpp"
#include "framelab/erasure.hpp"
#include "framelab/errors.hpp"
#include "framelab/io.hpp"
#include "framelab/optimizer.hpp"
#include "framelab/version.hpp"

namespace {

using namespace framelab;

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

Meta make_meta(const std::string& config, bool no_timestamp) {
    Meta meta;
    meta.config = config;
    if (!no_timestamp) meta.timestamp = utc_timestamp();
    return meta;
}

cxd parse_component(std::string text) {
    std::erase(text, ' ');
    if (text.empty()) throw InvalidDimensions("empty vector component");
    // forms: a | bi | a+bi | a-bi
    const std::size_t ipos = text.find('i');
    if (ipos == std::string::npos) return {std::stod(text), 0.0};
    if (ipos != text.size() - 1)
        throw InvalidDimensions("bad complex component: " + text);
    std::string body = text.substr(0, text.size() - 1);
    // split at the last +/- that is not a leading sign or an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (body.empty() || body == "+" || body == "-") body += "1";
        return {0.0, std::stod(body)};
    }
    std::string imag = body.substr(split);
    if (imag == "+" || imag == "-") imag += "1";
    return {std::stod(body.substr(0, split)), std::stod(imag)};
}

Frame parse_explicit_vectors(const std::string& text) {
    std::vector<std::vector<cxd>> rows;
    std::istringstream stream(text);
    std::string row_text;
    while (std::getline(stream, row_text, ';')) {
        std::vector<cxd> row;
        std::istringstream row_stream(row_text);
        std::string component;
        while (std::getline(row_stream, component, ',')) row.push_back(parse_component(component));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidDimensions("no vectors given");
    CMatrix v(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != v.cols())
            throw InvalidDimensions("vectors have inconsistent dimensions");
        for (std::size_t j = 0; j < v.cols(); ++j) v(i, j) = rows[i][j];
    }
    return Frame::from_vectors(std::move(v));
}

void print_frame_summary(const Frame& frame) {
    const FrameOperatorInfo info = frame_operator(frame);
    std::cout << "n = " << frame.dim() << ", N = " << frame.count() << "\n";
    std::cout << "frame bounds: A' = " << format_double(info.lower_bound)
              << ", B' = " << format_double(info.upper_bound) << "\n";
    std::cout << "tight: " << (is_tight(frame) ? "yes" : "no")
              << ", parseval: " << (is_parseval(frame) ? "yes" : "no")
              << ", uniform: " << (is_uniform(frame) ? "yes" : "no")
              << ", equiangular: " << (is_equiangular(frame) ? "yes" : "no") << "\n";
    std::cout << "n/N = " << format_double(frobenius_lower_bound(frame)) << "\n";
}

struct CommonFlags {
    bool no_timestamp = false;
};

int run_frame_gen(const std::string& kind, std::size_t dim, std::size_t count,
                  std::uint64_t seed, const std::string& vectors, const std::string& out_path,
                  bool no_timestamp) {
    Frame frame = [&] {
        if (kind == "mb" || kind == "mercedes-benz") return mercedes_benz();
        if (kind == "simplex") {
            if (dim == 0) throw InvalidDimensions("simplex needs --n");
            return simplex_frame(dim);
        }
        if (kind == "harmonic") {
            if (dim == 0 || count == 0) throw InvalidDimensions("harmonic needs --n and --N");
            return harmonic_frame(count, dim);
        }
        if (kind == "random") {
            if (dim == 0 || count == 0) throw InvalidDimensions("random needs --n and --N");
            return random_frame(count, dim, seed);
        }
        if (kind == "explicit") {
            if (vectors.empty()) throw InvalidDimensions("explicit needs --vectors");
            return parse_explicit_vectors(vectors);
        }
        throw InvalidDimensions("unknown kind: " + kind +
                                " (expected mb | simplex | harmonic | random | explicit)");
    }();
    print_frame_summary(frame);
    if (!out_path.empty()) {
        std::ostringstream config;
        config << "frame gen --kind " << kind;
        if (dim) config << " --n " << dim;
        if (count) config << " --N " << count;
        if (kind == "random") config << " --seed " << seed;
        if (!vectors.empty()) config << " --vectors " << vectors;
        save_text(out_path, frame_to_json(frame, make_meta(config.str(), no_timestamp)));
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int run_ae(const std::string& frame_path, const std::string& dual_path, bool canonical,
           const std::string& measure_text, std::size_t erasures, double p,
           const std::string& out_csv, const std::string& out_json, std::uint64_t cap,
           bool worst_case, bool no_timestamp) {
    if (canonical == !dual_path.empty())
        throw InvalidDimensions("choose exactly one of --canonical / --dual");
    if (!(p > 1.0)) throw InvalidDimensions("the exponent must satisfy p > 1");
    const Frame frame = load_frame(frame_path);
    const DualPair pair = canonical ? canonical_dual(frame)
                                    : make_dual_pair(frame, load_frame(dual_path));
    const AverageErrorSpec spec{measure_from_flag(measure_text), erasures, p};
    const bool keep = !out_csv.empty() || !out_json.empty();
    const ErrorReport report = average_error(pair, spec, cap, keep);
    std::cout << "average = " << format_double(report.average) << "\n";
    if (report.lower_bound)
        std::cout << "lower bound n/N = " << format_double(*report.lower_bound) << "\n";
    if (worst_case)
        std::cout << "worst case (max over patterns, outside the lp-average model) = "
                  << format_double(worst_case_error(pair, spec.measure, erasures, cap))
                  << "\n";
    std::ostringstream config;
    config << "ae " << (canonical ? "--canonical" : "--dual " + dual_path) << " --measure "
           << measure_text << " --m " << erasures << " --p " << format_double(p) << " "
           << frame_path;
    const Meta meta = make_meta(config.str(), no_timestamp);
    if (!out_csv.empty()) {
        save_text(out_csv, report_to_csv(report, meta));
        std::cout << "wrote " << out_csv << "\n";
    }
    if (!out_json.empty()) {
        save_text(out_json, report_to_json(report, meta));
        std::cout << "wrote " << out_json << "\n";
    }
    return 0;
}

int run_optimize(const std::string& frame_path, const std::string& measure_text,
                 std::size_t erasures, double p, const std::string& method_text,
                 std::size_t restarts, std::uint64_t seed, std::size_t max_iters,
                 double step_init, double grad_tol, bool nested, const std::string& out_dual,
                 const std::string& out_trace, const std::string& out_json,
                 bool no_timestamp) {
    if (!(p > 1.0)) throw InvalidDimensions("the exponent must satisfy p > 1");
    const Frame frame = load_frame(frame_path);
    const DualChart chart = make_chart(frame);

    OptimizeConfig config;
    config.spec = AverageErrorSpec{measure_from_flag(measure_text), erasures, p};
    config.method = method_text == "closed" ? OptMethod::closed_form : OptMethod::gradient;
    if (method_text != "closed" && method_text != "gradient")
        throw InvalidDimensions("unknown method: " + method_text +
                                " (expected closed | gradient)");
    config.restarts = restarts;
    config.seed = seed;
    config.max_iters = max_iters;
    config.step_init = step_init;
    config.grad_tol = grad_tol;
    config.nested_optimal = nested;

    const OptimizeResult result = optimize(chart, config);
    const double canonical_value =
        average_error(canonical_dual(frame), config.spec, config.pattern_cap, false).average;
    std::cout << "optimal value   = " << format_double(result.value) << "\n";
    std::cout << "canonical value = " << format_double(canonical_value) << "\n";
    if (erasures == 1)
        std::cout << "lower bound n/N = " << format_double(frobenius_lower_bound(frame))
                  << "\n";
    std::cout << "certificate     = " << certificate_name(result.certificate) << "\n";

    std::ostringstream config_text;
    config_text << "optimize " << frame_path << " --measure " << measure_text << " --m "
                << erasures << " --p " << format_double(p) << " --method " << method_text
                << " --restarts " << restarts << " --seed " << seed;
    if (nested) config_text << " --nested";
    const Meta meta = make_meta(config_text.str(), no_timestamp);
    if (!out_dual.empty()) {
        save_text(out_dual, frame_to_json(result.best.dual, meta));
        std::cout << "wrote " << out_dual << "\n";
    }
    if (!out_trace.empty()) {
        save_text(out_trace, trace_to_csv(result, meta));
        std::cout << "wrote " << out_trace << "\n";
    }
    if (!out_json.empty()) {
        save_text(out_json, optimize_result_to_json(result, config.spec, meta));
        std::cout << "wrote " << out_json << "\n";
    }
    return 0;
}

int run_verify(const std::string& check_id, bool all, std::uint64_t seed,
               const std::string& out_path, bool no_timestamp, bool list_only) {
    if (list_only) {
        for (const CheckInfo& info : check_registry())
            std::cout << info.id << "  --  " << info.claim << "\n";
        return 0;
    }
    if (!all && check_id.empty())
        throw InvalidDimensions("give a check id or --all");
    std::vector<CheckResult> results;
    if (all) {
        results = run_suite(seed);
    } else {
        if (!is_known_check(check_id)) throw UnknownCheckId("unknown check id: " + check_id);
        results.push_back(run_check(check_id, seed));
    }
    std::cout << suite_report_table(results);
    std::ostringstream config;
    config << "verify " << (all ? "--all" : check_id) << " --seed " << seed;
    if (!out_path.empty()) {
        save_text(out_path, suite_report_to_json(results, make_meta(config.str(), no_timestamp)));
        std::cout << "wrote " << out_path << "\n";
    }
    return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 " - finite frames, dual frames and erasure-error analysis"};
    app.require_subcommand(1);
    std::function<int()> action;

    // frame gen / frame info
    auto* frame_cmd = app.add_subcommand("frame", "construct and inspect frames");
    frame_cmd->require_subcommand(1);
    {
        auto* gen = frame_cmd->add_subcommand("gen", "generate a frame and write it as JSON");
        auto kind = std::make_shared<std::string>();
        auto dim = std::make_shared<std::size_t>(0);
        auto count = std::make_shared<std::size_t>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto vectors = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto nots = std::make_shared<bool>(false);
        gen->add_option("--kind", *kind, "mb | simplex | harmonic | random | explicit")
            ->required();
        gen->add_option("--n", *dim, "space dimension");
        gen->add_option("--N,--count", *count, "number of vectors");
        gen->add_option("--seed", *seed, "seed for random frames");
        gen->add_option("--vectors", *vectors, "explicit rows, e.g. \"1,0;0,1;1,1\"");
        gen->add_option("-o,--out", *out, "output frame JSON path");
        gen->add_flag("--no-timestamp", *nots, "omit the timestamp from output metadata");
        gen->callback([=, &action] {
            action = [=] {
                return run_frame_gen(*kind, *dim, *count, *seed, *vectors, *out, *nots);
            };
        });

        auto* info = frame_cmd->add_subcommand("info", "print a frame summary");
        auto path = std::make_shared<std::string>();
        info->add_option("frame", *path, "frame JSON path")->required();
        info->callback([=, &action] {
            action = [=] {
                print_frame_summary(load_frame(*path));
                return 0;
            };
        });
    }

    // dual canonical / from-param / verify
    auto* dual_cmd = app.add_subcommand("dual", "dual frames and the dual chart");
    dual_cmd->require_subcommand(1);
    {
        auto* canon = dual_cmd->add_subcommand("canonical", "write the canonical dual");
        auto path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto nots = std::make_shared<bool>(false);
        canon->add_option("frame", *path, "frame JSON path")->required();
        canon->add_option("-o,--out", *out, "output dual JSON path");
        canon->add_flag("--no-timestamp", *nots, "omit the timestamp");
        canon->callback([=, &action] {
            action = [=] {
                const Frame frame = load_frame(*path);
                const DualPair pair = canonical_dual(frame);
                std::cout << "duality residual = "
                          << format_double(duality_residual(pair.frame, pair.dual)) << "\n";
                if (!out->empty()) {
                    save_text(*out, frame_to_json(pair.dual,
                                                  make_meta("dual canonical " + *path, *nots)));
                    std::cout << "wrote " << *out << "\n";
                }
                return 0;
            };
        });

        auto* fromp = dual_cmd->add_subcommand("from-param", "map a chart parameter to a dual");
        auto fpath = std::make_shared<std::string>();
        auto ppath = std::make_shared<std::string>();
        auto out2 = std::make_shared<std::string>();
        auto nots2 = std::make_shared<bool>(false);
        fromp->add_option("frame", *fpath, "frame JSON path")->required();
        fromp->add_option("param", *ppath, "parameter JSON path")->required();
        fromp->add_option("-o,--out", *out2, "output dual JSON path");
        fromp->add_flag("--no-timestamp", *nots2, "omit the timestamp");
        fromp->callback([=, &action] {
            action = [=] {
                const Frame frame = load_frame(*fpath);
                const DualChart chart = make_chart(frame);
                const DualPair pair = dual_from_parameter(chart, load_parameter(*ppath));
                std::cout << "duality residual = "
                          << format_double(duality_residual(pair.frame, pair.dual)) << "\n";
                if (!out2->empty()) {
                    save_text(*out2,
                              frame_to_json(pair.dual,
                                            make_meta("dual from-param " + *fpath + " " + *ppath,
                                                      *nots2)));
                    std::cout << "wrote " << *out2 << "\n";
                }
                return 0;
            };
        });

        auto* check = dual_cmd->add_subcommand("verify", "check the reconstruction identity");
        auto fpath2 = std::make_shared<std::string>();
        auto gpath = std::make_shared<std::string>();
        check->add_option("frame", *fpath2, "frame JSON path")->required();
        check->add_option("dual", *gpath, "candidate dual JSON path")->required();
        check->callback([=, &action] {
            action = [=] {
                const Frame frame = load_frame(*fpath2);
                const Frame dual = load_frame(*gpath);
                const double residual = duality_residual(frame, dual);
                std::cout << "duality residual = " << format_double(residual)
                          << " (tolerance " << format_double(duality_tol(frame.dim()))
                          << ")\n";
                if (residual <= duality_tol(frame.dim())) return 0;
                std::cerr << "not a dual\n";
                return 4;
            };
        });
    }

    // ae
    {
        auto* ae = app.add_subcommand("ae", "lp-average erasure error");
        auto fpath = std::make_shared<std::string>();
        auto dual = std::make_shared<std::string>();
        auto canonical = std::make_shared<bool>(false);
        auto measure = std::make_shared<std::string>("fro");
        auto erasures = std::make_shared<std::size_t>(1);
        auto p = std::make_shared<double>(2.0);
        auto out_csv = std::make_shared<std::string>();
        auto out_json = std::make_shared<std::string>();
        auto cap = std::make_shared<std::uint64_t>(kDefaultPatternCap);
        auto worst = std::make_shared<bool>(false);
        auto nots = std::make_shared<bool>(false);
        ae->add_option("frame", *fpath, "frame JSON path")->required();
        ae->add_flag("--canonical", *canonical, "use the canonical dual");
        ae->add_option("--dual", *dual, "dual frame JSON path");
        ae->add_option("--measure", *measure, "fro | spec | num")->required();
        ae->add_option("--m", *erasures, "erasure count");
        ae->add_option("--p", *p, "exponent, must be > 1");
        ae->add_option("--out-csv", *out_csv, "per-pattern CSV path");
        ae->add_option("--out-json", *out_json, "report JSON path");
        ae->add_option("--cap", *cap, "pattern enumeration cap");
        ae->add_flag("--worst-case", *worst,
                     "also print the max over patterns (diagnostic)");
        ae->add_flag("--no-timestamp", *nots, "omit the timestamp");
        ae->callback([=, &action] {
            action = [=] {
                return run_ae(*fpath, *dual, *canonical, *measure, *erasures, *p, *out_csv,
                              *out_json, *cap, *worst, *nots);
            };
        });
    }

    // optimize
    {
        auto* opt = app.add_subcommand("optimize", "search the dual chart for a minimizer");
        auto fpath = std::make_shared<std::string>();
        auto measure = std::make_shared<std::string>("fro");
        auto erasures = std::make_shared<std::size_t>(1);
        auto p = std::make_shared<double>(2.0);
        auto method = std::make_shared<std::string>("gradient");
        auto restarts = std::make_shared<std::size_t>(4);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto max_iters = std::make_shared<std::size_t>(400);
        auto step_init = std::make_shared<double>(0.5);
        auto grad_tol = std::make_shared<double>(1e-9);
        auto nested = std::make_shared<bool>(false);
        auto out_dual = std::make_shared<std::string>();
        auto out_trace = std::make_shared<std::string>();
        auto out_json = std::make_shared<std::string>();
        auto nots = std::make_shared<bool>(false);
        opt->add_option("frame", *fpath, "frame JSON path")->required();
        opt->add_option("--measure", *measure, "fro | spec | num")->required();
        opt->add_option("--m", *erasures, "erasure count");
        opt->add_option("--p", *p, "exponent, must be > 1");
        opt->add_option("--method", *method, "closed | gradient");
        opt->add_option("--restarts", *restarts, "random restarts");
        opt->add_option("--seed", *seed, "seed for restarts");
        opt->add_option("--max-iters", *max_iters, "iteration budget per restart");
        opt->add_option("--step-init", *step_init, "initial line-search step");
        opt->add_option("--grad-tol", *grad_tol, "gradient norm stopping threshold");
        opt->add_flag("--nested", *nested, "restrict to lower-level optimal duals");
        opt->add_option("--out-dual", *out_dual, "optimal dual JSON path");
        opt->add_option("--out-trace", *out_trace, "iteration trace CSV path");
        opt->add_option("--out-json", *out_json, "full result JSON path");
        opt->add_flag("--no-timestamp", *nots, "omit the timestamp");
        opt->callback([=, &action] {
            action = [=] {
                return run_optimize(*fpath, *measure, *erasures, *p, *method, *restarts, *seed,
                                    *max_iters, *step_init, *grad_tol, *nested, *out_dual,
                                    *out_trace, *out_json, *nots);
            };
        });
    }

    // verify
    {
        auto* verify = app.add_subcommand("verify", "run the validation suite");
        auto check_id = std::make_shared<std::string>();
        auto all = std::make_shared<bool>(false);
        auto seed = std::make_shared<std::uint64_t>(20240501);
        auto out = std::make_shared<std::string>();
        auto nots = std::make_shared<bool>(false);
        auto list_only = std::make_shared<bool>(false);
        verify->add_option("check", *check_id, "check id (see --list)");
        verify->add_flag("--all", *all, "run every registered check");
        verify->add_option("--seed", *seed, "suite seed");
        verify->add_option("--out", *out, "report JSON path");
        verify->add_flag("--no-timestamp", *nots, "omit the timestamp");
        verify->add_flag("--list", *list_only, "list registered checks");
        verify->callback([=, &action] {
            action = [=] { return run_verify(*check_id, *all, *seed, *out, *nots, *list_only); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const NotADual& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const PatternBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const UnknownCheckId& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidDimensions& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
