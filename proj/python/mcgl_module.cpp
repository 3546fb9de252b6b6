#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcgl/report.hpp"

namespace py = pybind11;

namespace {

mcgl::JobOptions make_options(std::int64_t group_cap, std::int64_t mmp_cap_mult,
                              int cutoff, const std::string& strategy) {
    mcgl::JobOptions opt;
    opt.group_cap = group_cap;
    opt.mmp_cap_multiplier = mmp_cap_mult;
    opt.cutoff = cutoff;
    if (strategy == "coefficient" || strategy == "coefficient-then-lex")
        opt.strategy = mcgl::Strategy::CoefficientThenLex;
    else if (strategy == "lex")
        opt.strategy = mcgl::Strategy::LexForward;
    else if (strategy == "lex-reverse")
        opt.strategy = mcgl::Strategy::LexReverse;
    else
        throw mcgl::InputError("unknown strategy '" + strategy + "'");
    return opt;
}

mcgl::DiagonalGroup group_from_spec(const std::string& spec, std::int64_t cap) {
    mcgl::GroupSpec parsed = mcgl::parse_group_spec(spec);
    return mcgl::generate_group(parsed.generators, parsed.n, cap);
}

}  // namespace

PYBIND11_MODULE(_mcgl, m) {
    m.doc() = "Exact SOD census of abelian quotient singularities via "
              "lattice-fan terminalization";

    py::register_exception<mcgl::InputError>(m, "InputError");
    py::register_exception<mcgl::ComputeError>(m, "ComputeError");

    m.def(
        "analyze_json",
        [](const std::string& spec, std::int64_t group_cap, std::int64_t mmp_cap_mult,
           int cutoff, const std::string& strategy) {
            mcgl::GroupSpec parsed = mcgl::parse_group_spec(spec);
            return mcgl::dump_json(mcgl::run_report(
                parsed, make_options(group_cap, mmp_cap_mult, cutoff, strategy)));
        },
        py::arg("spec"), py::arg("group_cap") = mcgl::DiagonalGroup::kDefaultCap,
        py::arg("mmp_cap_mult") = 10, py::arg("cutoff") = 8,
        py::arg("strategy") = "coefficient",
        "Full pipeline report as a JSON string.");

    m.def(
        "terminalize_json",
        [](const std::string& spec, const std::string& strategy) {
            mcgl::DiagonalGroup g =
                group_from_spec(spec, mcgl::DiagonalGroup::kDefaultCap);
            mcgl::Analysis a =
                mcgl::analyze_group(g, make_options(mcgl::DiagonalGroup::kDefaultCap,
                                                    10, 8, strategy));
            return mcgl::dump_json(mcgl::to_json(a.terminalization));
        },
        py::arg("spec"), py::arg("strategy") = "coefficient",
        "Maximal terminalization with MMP steps, as a JSON string.");

    m.def(
        "census_json",
        [](const std::string& spec) {
            mcgl::DiagonalGroup g =
                group_from_spec(spec, mcgl::DiagonalGroup::kDefaultCap);
            mcgl::Analysis a = mcgl::analyze_group(g, {});
            return mcgl::dump_json(mcgl::to_json(a.census));
        },
        py::arg("spec"), "SOD census report as a JSON string.");

    m.def(
        "sod_verify_json",
        [](const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& s,
           int cutoff, std::uint64_t seed) {
            mcgl::LocalCaseOneModel model;
            for (auto v : r) model.r.push_back(v);
            for (auto v : s) model.s.push_back(v);
            return mcgl::dump_json(
                mcgl::to_json(mcgl::verify_case1_sod(model, cutoff, seed)));
        },
        py::arg("r"), py::arg("s"), py::arg("cutoff") = 8, py::arg("seed") = 0,
        "Case-1 SOD certificate as a JSON string.");

    m.def(
        "candidate_coefficients",
        [](const std::string& spec) {
            mcgl::DiagonalGroup g =
                group_from_spec(spec, mcgl::DiagonalGroup::kDefaultCap);
            mcgl::QuotientPair pair = mcgl::QuotientPair::from_group(g);
            std::vector<std::pair<std::vector<std::string>, std::string>> out;
            for (const mcgl::CandidateRay& c : mcgl::candidate_rays(pair)) {
                std::vector<std::string> ray;
                for (const mcgl::Rat& q : c.ray) ray.push_back(mcgl::rat_str(q));
                out.emplace_back(ray, mcgl::rat_str(c.coefficient));
            }
            return out;
        },
        py::arg("spec"),
        "Candidate rays with coefficients, as exact 'p/q' strings.");

    m.def(
        "lambda_set",
        [](std::int64_t r1, std::int64_t s1) {
            std::vector<std::int64_t> out;
            for (const mcgl::Int& k : mcgl::lambda_set(r1, s1))
                out.push_back(k.convert_to<std::int64_t>());
            return out;
        },
        py::arg("r1"), py::arg("s1"));

    m.def(
        "verify",
        [](const std::string& criteria, std::uint64_t seed) {
            mcgl::VerifySummary s = mcgl::verify_suite(criteria, seed);
            return py::make_tuple(s.all_pass, mcgl::format_verify_table(s));
        },
        py::arg("criteria") = "", py::arg("seed") = 0,
        "Run the verification suite; returns (all_pass, table).");
}
