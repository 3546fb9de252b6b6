#include "mcgl/report.hpp"

#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>

namespace mcgl {

Analysis analyze_group(const DiagonalGroup& g, const JobOptions& opt) {
    Analysis a;
    a.group = g;
    a.sl = sl_intersection(g);
    a.boundary = boundary_divisor(g);
    a.fixed_locus = fixed_locus_census(g);
    a.pair = QuotientPair::from_group(g);
    TerminalizeOptions topt;
    topt.strategy = opt.strategy;
    topt.mmp_cap_multiplier = opt.mmp_cap_multiplier;
    a.terminalization = build_maximal_terminalization(a.pair, topt);
    a.census = sod_census(a.terminalization, a.pair, g);
    return a;
}

Json run_report(const GroupSpec& spec, const JobOptions& opt) {
    DiagonalGroup g = generate_group(spec.generators, spec.n, opt.group_cap);
    Analysis a = analyze_group(g, opt);
    Json j;
    j["schema"] = "mcgl-report-v1";
    Json input;
    Json gens = Json::array();
    for (const Vec& w : spec.generators) gens.push_back(to_json(w));
    input["generators"] = gens;
    input["n"] = spec.n;
    input["group_cap"] = opt.group_cap;
    input["mmp_cap_multiplier"] = opt.mmp_cap_multiplier;
    input["cutoff"] = opt.cutoff;
    input["strategy"] = to_string(opt.strategy);
    j["input"] = input;

    Json group;
    group["order"] = g.order();
    group["exponent"] = g.exponent().str();
    group["in_sl"] = g.subgroup_of_sl();
    if (g.order() <= 64) {
        Json elems = Json::array();
        for (const Vec& w : g.elements()) elems.push_back(to_json(w));
        group["elements"] = elems;
    }
    j["group"] = group;

    Json sl;
    sl["h_order"] = a.sl.h.order();
    sl["r"] = a.sl.r;
    sl["det_generator"] = to_json(a.sl.det_generator);
    j["sl_intersection"] = sl;

    Json boundary;
    Json coeffs = Json::array(), orders = Json::array();
    for (const Rat& b : a.boundary.coefficients) coeffs.push_back(rat_str(b));
    for (std::int64_t e : a.boundary.orders) orders.push_back(e);
    boundary["coefficients"] = coeffs;
    boundary["orders"] = orders;
    j["boundary_divisor"] = boundary;

    Json locus = Json::array();
    for (const FixedLocusRecord& r : a.fixed_locus) locus.push_back(to_json(r));
    j["fixed_locus"] = locus;

    j["lattice"] = {{"index", a.pair.lattice->index().str()}};
    j["terminalization"] = to_json(a.terminalization);
    j["census"] = to_json(a.census);
    if (g.order() <= 100)
        j["projective_collection"] = to_json(projective_collection(g.n(), g));
    return j;
}

// ---------------------------------------------------------------------------
// Verification suite: the acceptance criteria, each one timed and reported.
// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

struct Harness {
    VerifySummary summary;
    std::string fault;

    bool selected(const std::string& selector, const std::string& id) const {
        if (selector.empty()) return true;
        std::stringstream ss(selector);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (tok == id) return true;
        return false;
    }

    template <typename F>
    void run(const std::string& selector, const std::string& id,
             const std::string& title, double limit_ms, F&& body) {
        if (!selected(selector, id)) return;
        CriterionResult res;
        res.id = id;
        res.title = title;
        res.limit_ms = limit_ms;
        auto start = Clock::now();
        try {
            body(res);
        } catch (const std::exception& e) {
            res.pass = false;
            res.actual = std::string("exception: ") + e.what();
        }
        res.elapsed_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        if (limit_ms > 0 && res.elapsed_ms > limit_ms) {
            res.pass = false;
            res.actual += " [over time limit]";
        }
        if (!res.pass) summary.all_pass = false;
        summary.results.push_back(std::move(res));
    }
};

std::string coeff_multiset(const std::vector<CandidateRay>& cands) {
    std::vector<Rat> cs;
    for (const CandidateRay& c : cands) cs.push_back(c.coefficient);
    std::sort(cs.begin(), cs.end());
    std::string s = "{";
    for (size_t i = 0; i < cs.size(); ++i) {
        if (i) s += ",";
        s += rat_str(cs[i]);
    }
    return s + "}";
}

// Shared corpus pipeline results, computed once for C3/C4/C8/C9.
struct CorpusRun {
    std::vector<CorpusEntry> entries;
    std::vector<Analysis> analyses;
    std::string first_error;
    std::int64_t steps_total = 0;
    std::int64_t monotone_certificates = 0;
};

CorpusRun run_corpus(std::int64_t cyclic_max, std::int64_t two_gen_max) {
    CorpusRun run;
    run.entries = regression_corpus(cyclic_max, two_gen_max);
    for (const CorpusEntry& e : run.entries) {
        try {
            run.analyses.push_back(analyze_group(e.group, {}));
        } catch (const std::exception& ex) {
            if (run.first_error.empty())
                run.first_error = e.name + ": " + ex.what();
            run.analyses.push_back(Analysis{});
            continue;
        }
        const Analysis& a = run.analyses.back();
        for (const MMPStep& s : a.terminalization.steps) {
            ++run.steps_total;
            if (s.monotonicity == LogCanonicalOrder::Equal ||
                s.monotonicity == LogCanonicalOrder::AGreater)
                ++run.monotone_certificates;
        }
    }
    return run;
}

}  // namespace

VerifySummary verify_suite(const std::string& selector, std::uint64_t seed,
                           const std::string& inject_fault) {
    Harness h;
    h.fault = inject_fault;

    // The corpus backing C3, C4, C8, C9; built lazily on first use.
    std::optional<CorpusRun> corpus;
    auto corpus_run = [&]() -> CorpusRun& {
        if (!corpus) corpus = run_corpus(30, 50);
        return *corpus;
    };

    h.run(selector, "C1", "1/15(1,4) candidate coefficients", 1000,
          [&](CriterionResult& res) {
              DiagonalGroup g = cyclic_group(15, {1, 4});
              QuotientPair pair = QuotientPair::from_group(g);
              std::vector<CandidateRay> cands = candidate_rays(pair);
              if (h.fault == "mutate-candidate-coefficient" && !cands.empty())
                  cands[0].coefficient += 1;
              res.expected = "5 rays, {0/1,0/1,1/3,2/3,2/3}";
              res.actual = std::to_string(cands.size()) + " rays, " +
                           coeff_multiset(cands);
              res.pass = cands.size() == 5 &&
                         coeff_multiset(cands) == "{0/1,0/1,1/3,2/3,2/3}";
          });

    h.run(selector, "C2", "1/r(1,..,1) coefficient (r-n)/r", 30000,
          [&](CriterionResult& res) {
              res.pass = true;
              double worst_case_ms = 0;
              for (int n = 2; n <= 3; ++n) {
                  for (std::int64_t r = 2; r <= 12; ++r) {
                      if (n > r) continue;
                      auto t0 = Clock::now();
                      DiagonalGroup g =
                          cyclic_group(r, std::vector<std::int64_t>(n, 1));
                      QuotientPair pair = QuotientPair::from_group(g);
                      std::vector<CandidateRay> cands = candidate_rays(pair);
                      double ms = std::chrono::duration<double, std::milli>(
                                      Clock::now() - t0)
                                      .count();
                      worst_case_ms = std::max(worst_case_ms, ms);
                      bool ok = cands.size() == 1 &&
                                cands[0].coefficient == Rat(r - n, r) &&
                                ms < 1000;
                      if (!ok) {
                          res.pass = false;
                          res.actual = "failed at n=" + std::to_string(n) +
                                       " r=" + std::to_string(r) + " (" +
                                       std::to_string(cands.size()) + " candidates)";
                      }
                  }
              }
              res.expected = "unique candidate, coefficient (r-n)/r, <1s each";
              if (res.pass)
                  res.actual = "all 21 cases exact; worst case " +
                               std::to_string(worst_case_ms) + " ms";
          });

    h.run(selector, "C3", "BKR shadow for abelian G in SL(3), |G|<=30", 10000,
          [&](CriterionResult& res) {
              CorpusRun& run = corpus_run();
              std::int64_t cases = 0, failures = 0;
              std::string detail;
              for (size_t i = 0; i < run.entries.size(); ++i) {
                  const CorpusEntry& e = run.entries[i];
                  if (!e.group.subgroup_of_sl() || e.group.order() > 30) continue;
                  const Analysis& a = run.analyses[i];
                  if (a.group.order() == 0) {
                      ++failures;
                      continue;
                  }
                  ++cases;
                  bool ok = true;
                  for (const CandidateRay& c : a.terminalization.candidates)
                      if (c.coefficient != 0) ok = false;
                  for (const ConeCertificate& cert : a.terminalization.terminality)
                      if (cert.multiplicity != 1) ok = false;
                  if (Int(a.terminalization.y.cones().size()) != Int(e.group.order()))
                      ok = false;
                  if (!a.census.components.empty()) ok = false;
                  if (!ok) {
                      ++failures;
                      if (detail.empty()) detail = " first failure: " + e.name;
                  }
              }
              res.expected = "coefficients 0, unimodular cones, #cones=|G|, "
                             "empty census";
              res.actual = std::to_string(cases) + " SL groups, " +
                           std::to_string(failures) + " failures" + detail;
              res.pass = failures == 0 && cases > 0;
          });

    h.run(selector, "C4", "1/r(1,1,1) point components, 3<r<=12", 5000,
          [&](CriterionResult& res) {
              res.pass = true;
              for (std::int64_t r = 4; r <= 12; ++r) {
                  DiagonalGroup g = cyclic_group(r, {1, 1, 1});
                  Analysis a = analyze_group(g, {});
                  Int point_total = 0;
                  bool all_points = true;
                  for (const SODComponent& c : a.census.components) {
                      if (c.component_type == 0)
                          point_total += c.multiplicity;
                      else
                          all_points = false;
                  }
                  if (point_total != Int(r - 3) || !all_points ||
                      a.census.total_rank != Int(r)) {
                      res.pass = false;
                      res.actual = "failed at r=" + std::to_string(r) +
                                   ": points=" + point_total.str();
                  }
              }
              res.expected = "r-3 type-(0) components, total rank r";
              if (res.pass) res.actual = "r=4..12 exact";
          });

    h.run(selector, "C5", "ceiling identity exhaustive", 5000,
          [&](CriterionResult& res) {
              std::int64_t checked = 0, failed = 0;
              for (std::int64_t r = 1; r <= 12; ++r)
                  for (std::int64_t s = 1; s <= r; ++s)
                      for (std::int64_t a = -50; a <= 50; ++a)
                          for (std::int64_t b = -50; b <= 50; ++b) {
                              ++checked;
                              auto cdiv = [](std::int64_t x, std::int64_t y) {
                                  std::int64_t q = x / y;
                                  if (x % y != 0 && (x > 0) == (y > 0)) ++q;
                                  return q;
                              };
                              std::int64_t lhs = cdiv(a - b, s);
                              std::int64_t rhs =
                                  cdiv(cdiv(a * r, s) - cdiv(b * r, s), r);
                              if (lhs != rhs) ++failed;
                          }
              res.expected = "zero failures over m,m' in [-50,50], s<=r<=12";
              res.actual = std::to_string(checked) + " checked, " +
                           std::to_string(failed) + " failed";
              res.pass = failed == 0;
          });

    h.run(selector, "C6", "|Lambda| = r1-s1 up to 200", 1000,
          [&](CriterionResult& res) {
              std::int64_t checked = 0, failed = 0;
              for (std::int64_t r = 1; r <= 200; ++r)
                  for (std::int64_t s = 1; s <= r; ++s) {
                      ++checked;
                      // lambda_set verifies the brute-force period internally
                      // and the cardinality identity; count failures anyway.
                      try {
                          std::vector<Int> lam = lambda_set(Int(r), Int(s));
                          if (Int(lam.size()) != Int(r - s)) ++failed;
                      } catch (const std::exception&) {
                          ++failed;
                      }
                  }
              res.expected = "20100 pairs, zero failures";
              res.actual = std::to_string(checked) + " checked, " +
                           std::to_string(failed) + " failed";
              res.pass = failed == 0;
          });

    h.run(selector, "C7", "case-1 SOD certificates on random models", 60000,
          [&](CriterionResult& res) {
              std::uint64_t state = seed * 2862933555777941757ULL + 3037000493ULL;
              auto rnd = [&state](int lo, int hi) {
                  state = state * 2862933555777941757ULL + 3037000493ULL;
                  return lo + static_cast<int>(
                                  (state >> 33) %
                                  static_cast<std::uint64_t>(hi - lo + 1));
              };
              int failures = 0;
              for (int trial = 0; trial < 100; ++trial) {
                  int n = 2 + rnd(0, 1);
                  LocalCaseOneModel model;
                  for (int i = 0; i < n; ++i) {
                      int r = rnd(1, 6);
                      model.r.push_back(r);
                      model.s.push_back(i == 0 ? rnd(1, r) : r);
                  }
                  CaseOneCertificate cert = verify_case1_sod(model, 6, seed + trial);
                  if (!cert.passed()) ++failures;
              }
              res.expected = "100 random 2D/3D models pass (Hom shadow, "
                             "semiorthogonality, rank generation)";
              res.actual = std::to_string(failures) + " failures";
              res.pass = failures == 0;
          });

    h.run(selector, "C8", "monotone MMP certificates across corpus", 0,
          [&](CriterionResult& res) {
              CorpusRun& run = corpus_run();
              res.expected = "every step certified after >= before";
              res.actual = std::to_string(run.monotone_certificates) + "/" +
                           std::to_string(run.steps_total) + " steps certified" +
                           (run.first_error.empty() ? ""
                                                    : "; error: " + run.first_error);
              res.pass = run.first_error.empty() &&
                         run.monotone_certificates == run.steps_total &&
                         run.steps_total > 0;
          });

    h.run(selector, "C9", "Hochschild-rank additivity across corpus", 300000,
          [&](CriterionResult& res) {
              CorpusRun& run = corpus_run();
              std::int64_t checked = 0, failed = 0;
              for (size_t i = 0; i < run.analyses.size(); ++i) {
                  const Analysis& a = run.analyses[i];
                  if (a.group.order() == 0) {
                      ++failed;
                      continue;
                  }
                  ++checked;
                  if (a.census.total_rank != Int(a.group.order())) ++failed;
              }
              res.expected = "total rank = |G| on full corpus";
              res.actual = std::to_string(checked) + " groups, " +
                           std::to_string(failed) + " failures" +
                           (run.first_error.empty() ? ""
                                                    : "; error: " + run.first_error);
              res.pass = failed == 0 && checked > 0;
          });

    h.run(selector, "C10", "projective collection counts and vanishing", 30000,
          [&](CriterionResult& res) {
              std::int64_t cases = 0, failures = 0;
              auto check = [&](const DiagonalGroup& g) {
                  ++cases;
                  ProjectiveCollectionReport rep =
                      projective_collection(g.n(), g);
                  bool ok = rep.count == Int(g.n() + 1) * g.order() &&
                            rep.irrep_count == g.order() &&
                            rep.cohomology_vanishing_ok && rep.orthogonality_ok &&
                            rep.failures.empty();
                  if (!ok) ++failures;
              };
              for (const CorpusEntry& e : regression_corpus(20, 20))
                  if (e.group.order() <= 20) check(e.group);
              for (const CorpusEntry& e : corpus_cyclic2(20)) check(e.group);
              check(generate_group({}, 1));  // trivial group on P^1
              res.expected = "(n+1)|G| objects, all Hom vanishings";
              res.actual = std::to_string(cases) + " groups, " +
                           std::to_string(failures) + " failures";
              res.pass = failures == 0;
          });

    h.run(selector, "C11", "flop connection between terminalizations", 60000,
          [&](CriterionResult& res) {
              // First corpus case with two distinct maximal terminalizations
              // under different insertion strategies.
              res.pass = false;
              res.expected = "degree-0 wall exchange path between distinct Ys";
              for (const CorpusEntry& e : regression_corpus(12, 16)) {
                  QuotientPair pair = QuotientPair::from_group(e.group);
                  TerminalizeOptions o1, o2;
                  o1.decompose = false;
                  o2.decompose = false;
                  o1.strategy = Strategy::CoefficientThenLex;
                  o2.strategy = Strategy::LexReverse;
                  TerminalizationResult y1 = build_maximal_terminalization(pair, o1);
                  TerminalizationResult y2 = build_maximal_terminalization(pair, o2);
                  if (y1.y.same_fan(y2.y)) continue;
                  FlopPath path = flop_connect(y1, y2, pair);
                  bool zeros = true;
                  for (const FlopExchange& ex : path.exchanges)
                      if (ex.degree != 0) zeros = false;
                  res.actual = e.name + ": path of " +
                               std::to_string(path.exchanges.size()) +
                               " exchanges, all degree 0";
                  res.pass = path.found && zeros && !path.exchanges.empty();
                  return;
              }
              res.actual = "no corpus case with two distinct terminalizations";
          });

    return h.summary;
}

std::string format_verify_table(const VerifySummary& s) {
    std::ostringstream os;
    os << std::left << std::setw(5) << "id" << std::setw(6) << "state"
       << std::setw(10) << "time" << "detail\n";
    for (const CriterionResult& r : s.results) {
        std::ostringstream t;
        t << std::fixed << std::setprecision(0) << r.elapsed_ms << "ms";
        os << std::left << std::setw(5) << r.id << std::setw(6)
           << (r.pass ? "PASS" : "FAIL") << std::setw(10) << t.str() << r.title
           << " | expected: " << r.expected << " | actual: " << r.actual << "\n";
    }
    os << (s.all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";
    return os.str();
}

}  // namespace mcgl
