#include "mcgl/serialize.hpp"

namespace mcgl {

Json to_json(const Rat& q) { return rat_str(q); }

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (const Rat& q : v) a.push_back(rat_str(q));
    return a;
}

Json to_json(const FanModel& fan) {
    Json j;
    j["n"] = fan.dim();
    j["lattice_index"] = fan.lattice().index().str();
    Json basis = Json::array();
    for (const Vec& b : fan.lattice().lattice().basis()) basis.push_back(to_json(b));
    j["lattice_basis"] = basis;
    Json rays = Json::array();
    for (const Vec& r : fan.rays()) rays.push_back(to_json(r));
    j["rays"] = rays;
    Json cones = Json::array();
    for (const Cone& c : fan.cones()) cones.push_back(c);
    j["cones"] = cones;
    Json orders = Json::array();
    for (const Int& o : fan.boundary_orders()) orders.push_back(o.str());
    j["boundary_orders"] = orders;
    Json exc = Json::array();
    for (int i : fan.exceptional_ray_indices()) exc.push_back(i);
    j["exceptional_rays"] = exc;
    return j;
}

Json to_json(const CandidateRay& c) {
    Json j;
    j["ray"] = to_json(c.ray);
    j["coefficient"] = rat_str(c.coefficient);
    return j;
}

Json to_json(const MMPStep& s) {
    Json j;
    j["kind"] = to_string(s.kind);
    if (s.contracted_ray) j["contracted_ray"] = to_json(*s.contracted_ray);
    if (!s.wall_removed.empty()) {
        Json wr = Json::array();
        for (const Vec& v : s.wall_removed) wr.push_back(to_json(v));
        j["wall_removed"] = wr;
        Json wa = Json::array();
        for (const Vec& v : s.wall_added) wa.push_back(to_json(v));
        j["wall_added"] = wa;
    }
    j["degree"] = {{"eps0", rat_str(s.degree_eps0)}, {"eps1", rat_str(s.degree_eps1)}};
    j["monotonicity"] = to_string(s.monotonicity);
    j["after"] = to_json(s.after);
    return j;
}

Json to_json(const TerminalizationResult& t) {
    Json j;
    j["x"] = to_json(t.x);
    j["y"] = to_json(t.y);
    Json cands = Json::array();
    for (const CandidateRay& c : t.candidates) cands.push_back(to_json(c));
    j["candidates"] = cands;
    Json steps = Json::array();
    for (const MMPStep& s : t.steps) steps.push_back(to_json(s));
    j["steps"] = steps;
    Json cones = Json::array();
    for (const ConeCertificate& c : t.terminality) {
        Json cj;
        Json rays = Json::array();
        for (const Vec& r : c.cone_rays) rays.push_back(to_json(r));
        cj["rays"] = rays;
        cj["terminal"] = c.terminal;
        cj["multiplicity"] = c.multiplicity.str();
        cones.push_back(cj);
    }
    j["terminality_certificates"] = cones;
    j["certificate_ok"] = t.certificate_ok;
    return j;
}

Json to_json(const SODComponent& c) {
    Json j;
    j["type"] = c.component_type;
    j["center_kind"] = c.center_kind;
    j["center_subspace"] = c.center_subspace;
    j["multiplicity"] = c.multiplicity.str();
    j["rank_each"] = c.rank_each.str();
    j["provenance"] = c.provenance;
    return j;
}

Json to_json(const CensusReport& r) {
    Json j;
    Json comps = Json::array();
    for (const SODComponent& c : r.components) comps.push_back(to_json(c));
    j["components"] = comps;
    j["y_rank"] = r.y_rank.str();
    j["total_rank"] = r.total_rank.str();
    j["group_order"] = r.group_order.str();
    return j;
}

Json to_json(const ProjectiveCollectionReport& r) {
    Json j;
    j["count"] = r.count.str();
    j["irrep_count"] = r.irrep_count.str();
    j["cohomology_vanishing_ok"] = r.cohomology_vanishing_ok;
    j["orthogonality_ok"] = r.orthogonality_ok;
    j["hh0_rank"] = r.hh0_rank.str();
    j["hh_higher_vanish"] = r.hh_higher_vanish;
    j["failures"] = r.failures;
    return j;
}

Json to_json(const CaseOneCertificate& c) {
    Json j;
    j["fully_faithful_ok"] = c.fully_faithful_ok;
    j["ff_checked"] = c.ff_checked;
    j["semiorthogonality_ok"] = c.semiorthogonality_ok;
    j["so_checked"] = c.so_checked;
    j["generation"] = {{"level", "rank"},
                       {"ok", c.rank_generation_ok},
                       {"rank_source", c.rank_source.str()},
                       {"rank_target", c.rank_target.str()},
                       {"rank_center", c.rank_center.str()},
                       {"lambda_size", c.lambda_size.str()}};
    j["failures"] = c.failures;
    j["passed"] = c.passed();
    return j;
}

Json to_json(const FixedLocusRecord& r) {
    Json j;
    j["subspace"] = r.subspace;
    j["inertia_order"] = r.inertia.order();
    Json elems = Json::array();
    for (const Vec& w : r.inertia.elements()) elems.push_back(to_json(w));
    j["inertia_elements"] = elems;
    j["decomposition_order"] = r.decomposition_order;
    j["quotient_order"] = r.quotient_order;
    j["inertia_in_sl"] = r.inertia_in_sl;
    return j;
}

Rat rat_from_json(const Json& j) { return parse_rat(j.get<std::string>()); }

Vec vec_from_json(const Json& j) {
    Vec v;
    for (const auto& q : j) v.push_back(rat_from_json(q));
    return v;
}

FanModel fan_from_json(const Json& j) {
    const int n = j.at("n").get<int>();
    Mat weights;
    for (const auto& b : j.at("lattice_basis")) weights.push_back(vec_from_json(b));
    auto lattice = std::make_shared<OverLattice>(n, weights);
    std::vector<Int> orders;
    for (const auto& o : j.at("boundary_orders"))
        orders.push_back(Int(o.get<std::string>()));
    std::vector<Vec> rays;
    for (const auto& r : j.at("rays")) rays.push_back(vec_from_json(r));
    std::vector<Cone> cones;
    for (const auto& c : j.at("cones")) cones.push_back(c.get<Cone>());
    return FanModel::from_parts(std::move(lattice), std::move(orders), std::move(rays),
                                std::move(cones));
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace mcgl
