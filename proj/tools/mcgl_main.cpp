#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mcgl/report.hpp"

namespace {

// Group spec arguments: each positional is one generator line; a single
// argument starting with '@' names a file with one line per generator.
std::string gather_spec(const std::vector<std::string>& args) {
    if (args.size() == 1 && !args[0].empty() && args[0][0] == '@') {
        std::ifstream in(args[0].substr(1));
        if (!in) throw mcgl::InputError("cannot open spec file " + args[0].substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::string joined;
    for (const std::string& a : args) joined += a + "\n";
    return joined;
}

void emit(const mcgl::Json& j, const std::string& path) {
    std::string text = mcgl::dump_json(j);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw mcgl::InputError("cannot write " + path);
    out << text;
}

std::vector<mcgl::Int> parse_order_list(const std::string& csv) {
    std::vector<mcgl::Int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(mcgl::Int(tok));
    return out;
}

mcgl::Strategy parse_strategy(const std::string& name) {
    if (name == "coefficient" || name == "coefficient-then-lex")
        return mcgl::Strategy::CoefficientThenLex;
    if (name == "lex") return mcgl::Strategy::LexForward;
    if (name == "lex-reverse") return mcgl::Strategy::LexReverse;
    throw mcgl::InputError("unknown strategy '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mcgl: exact SOD census of abelian quotient singularities via "
                 "lattice-fan terminalization"};
    app.require_subcommand(1);

    std::vector<std::string> spec_args;
    std::string json_path;
    std::string strategy_name = "coefficient";
    mcgl::JobOptions opt;

    auto add_common = [&](CLI::App* cmd, bool with_spec) {
        if (with_spec)
            cmd->add_option("spec", spec_args,
                            "group spec lines 'n; a/r,b/r,...' or one '@file'")
                ->required();
        cmd->add_option("--json", json_path, "write the JSON report to this path");
        cmd->add_option("--group-cap", opt.group_cap, "group closure cap")
            ->capture_default_str();
        cmd->add_option("--mmp-cap-mult", opt.mmp_cap_multiplier,
                        "MMP step cap multiplier")
            ->capture_default_str();
        cmd->add_option("--cutoff", opt.cutoff, "graded Hom degree cutoff")
            ->capture_default_str();
        cmd->add_option("--strategy", strategy_name,
                        "triangulation strategy: coefficient|lex|lex-reverse")
            ->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "full pipeline report");
    add_common(analyze, true);

    auto* terminalize =
        app.add_subcommand("terminalize", "maximal terminalization + MMP steps");
    add_common(terminalize, true);

    auto* census = app.add_subcommand("census", "SOD census report");
    add_common(census, false);
    std::vector<std::string> census_spec;
    census->add_option("spec", census_spec, "group spec (omit with --corpus)");
    bool corpus_flag = false;
    census->add_flag("--corpus", corpus_flag, "run the regression corpus table");
    std::int64_t corpus_cyclic = 30, corpus_two_gen = 50;
    census->add_option("--corpus-cyclic-max", corpus_cyclic)->capture_default_str();
    census->add_option("--corpus-two-gen-max", corpus_two_gen)->capture_default_str();

    auto* sod = app.add_subcommand("sod-verify", "case-1 SOD certificate");
    std::string r_list, s_list;
    sod->add_option("--r", r_list, "source orders, e.g. 2,1")->required();
    sod->add_option("--s", s_list, "target orders, e.g. 1,1")->required();
    sod->add_option("--json", json_path);
    sod->add_option("--cutoff", opt.cutoff)->capture_default_str();
    sod->add_option("--seed", opt.seed)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    std::string criteria, fault;
    verify->add_option("--criteria", criteria, "comma-separated ids, e.g. C1,C5");
    verify->add_option("--seed", opt.seed,
                       "seed for randomized property sampling (analysis results "
                       "never depend on it)")
        ->capture_default_str();
    verify->add_option("--inject-fault", fault,
                       "deliberately corrupt one value (harness self-test)");
    verify->add_option("--json", json_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        opt.strategy = parse_strategy(strategy_name);
        if (analyze->parsed()) {
            mcgl::GroupSpec spec = mcgl::parse_group_spec(gather_spec(spec_args));
            emit(mcgl::run_report(spec, opt), json_path);
        } else if (terminalize->parsed()) {
            mcgl::GroupSpec spec = mcgl::parse_group_spec(gather_spec(spec_args));
            mcgl::DiagonalGroup g =
                mcgl::generate_group(spec.generators, spec.n, opt.group_cap);
            mcgl::Analysis a = mcgl::analyze_group(g, opt);
            emit(mcgl::to_json(a.terminalization), json_path);
        } else if (census->parsed()) {
            if (corpus_flag) {
                auto entries = mcgl::regression_corpus(corpus_cyclic, corpus_two_gen);
                std::int64_t failures = 0;
                for (const auto& e : entries) {
                    std::string status = "PASS";
                    std::string detail;
                    try {
                        mcgl::Analysis a = mcgl::analyze_group(e.group, opt);
                        detail = "total_rank=" + a.census.total_rank.str();
                    } catch (const std::exception& ex) {
                        status = "FAIL";
                        detail = ex.what();
                        ++failures;
                    }
                    std::cout << status << "  " << e.name << "  " << detail << "\n";
                }
                std::cout << (failures ? "FAILURES: " + std::to_string(failures)
                                       : "ALL PASS")
                          << "\n";
                return failures ? 1 : 0;
            }
            mcgl::GroupSpec spec = mcgl::parse_group_spec(gather_spec(census_spec));
            mcgl::DiagonalGroup g =
                mcgl::generate_group(spec.generators, spec.n, opt.group_cap);
            mcgl::Analysis a = mcgl::analyze_group(g, opt);
            emit(mcgl::to_json(a.census), json_path);
        } else if (sod->parsed()) {
            mcgl::LocalCaseOneModel model;
            model.r = parse_order_list(r_list);
            model.s = parse_order_list(s_list);
            mcgl::CaseOneCertificate cert =
                mcgl::verify_case1_sod(model, opt.cutoff, opt.seed);
            emit(mcgl::to_json(cert), json_path);
            if (!cert.passed()) return 1;
        } else if (verify->parsed()) {
            mcgl::VerifySummary summary = mcgl::verify_suite(criteria, opt.seed, fault);
            std::cout << mcgl::format_verify_table(summary);
            if (!json_path.empty()) {
                mcgl::Json j = mcgl::Json::array();
                for (const auto& r : summary.results)
                    j.push_back({{"id", r.id},
                                 {"pass", r.pass},
                                 {"expected", r.expected},
                                 {"actual", r.actual},
                                 {"elapsed_ms", r.elapsed_ms}});
                emit(j, json_path);
            }
            if (!summary.all_pass) return 1;
        }
    } catch (const mcgl::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
