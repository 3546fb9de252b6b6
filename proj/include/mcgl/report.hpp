#pragma once

#include "mcgl/corpus.hpp"
#include "mcgl/serialize.hpp"

namespace mcgl {

struct JobOptions {
    std::int64_t group_cap = DiagonalGroup::kDefaultCap;
    std::int64_t mmp_cap_multiplier = 10;
    int cutoff = 8;
    Strategy strategy = Strategy::CoefficientThenLex;
    std::uint64_t seed = 0;
};

/// End-to-end pipeline state for one group: every stage the report needs.
struct Analysis {
    DiagonalGroup group;
    SlIntersection sl;
    BoundaryDivisor boundary;
    std::vector<FixedLocusRecord> fixed_locus;
    QuotientPair pair;
    TerminalizationResult terminalization;
    CensusReport census;
};

Analysis analyze_group(const DiagonalGroup& g, const JobOptions& opt = {});

/// Full deterministic JSON report: group -> lattice -> candidates ->
/// terminalization -> MMP -> census, with all certificates.
Json run_report(const GroupSpec& spec, const JobOptions& opt = {});

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::string expected;
    std::string actual;
    double elapsed_ms = 0;
    double limit_ms = 0;
};

struct VerifySummary {
    std::vector<CriterionResult> results;
    bool all_pass = true;
};

/// Runs the verification suite (the acceptance criteria of this library).
/// `selector` is empty for all, or comma-separated ids like "C1,C5".
/// `inject_fault` deliberately corrupts one value to prove the harness
/// detects failures ("" for none; "mutate-candidate-coefficient").
VerifySummary verify_suite(const std::string& selector = "",
                           std::uint64_t seed = 0,
                           const std::string& inject_fault = "");

std::string format_verify_table(const VerifySummary& s);

}  // namespace mcgl
