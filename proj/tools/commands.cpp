#include "commands.hpp"

#include "hk/apartment.hpp"
#include "hk/groupcoh.hpp"
#include "hk/koszul.hpp"
#include "hk/liecoh.hpp"
#include "hk/satake.hpp"

#include <sstream>

namespace hktool {

using nlohmann::json;

namespace {

template <class V>
json num_list(const V& v)
{
    json a = json::array();
    for (auto x : v) a.push_back(num(x));
    return a;
}

json weight_json(const hk::IntVec& c) { return num_list(c); }

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

json qvec_json(const hk::QVec& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(mpq_str(x));
    return a;
}

void add_check(CommandResult& r, const std::string& name, bool passed, const std::string& detail = "")
{
    r.checks.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
}

bool all_checks(const CommandResult& r)
{
    for (const auto& c : r.checks)
        if (!c["passed"].get<bool>()) return false;
    return true;
}

hk::Weight scenario_mu(const Scenario& s) { return hk::Weight{hk::IntVec(s.mu.begin(), s.mu.end())}; }

json verdict_json(const hk::ExactnessVerdict& v)
{
    return {{"dims", num_list(v.dims)},
            {"homology", num_list(v.homology)},
            {"failing_degrees", num_list(v.failing_degrees)},
            {"exact", v.exact}};
}

json subset_json(hk::Subset d, int rank)
{
    json a = json::array();
    for (int k = 0; k < rank; ++k)
        if (hk::contains(d, k)) a.push_back(num(k + 1));
    return a;
}

void certify(CommandResult& r, const hk::GroupRep& v)
{
    hk::IrreducibilityCertificate c = hk::irreducibility_check(v);
    std::ostringstream d;
    d << "dim V^N+ = " << c.invariants_dim << ", dim V_N- = " << c.coinvariants_dim << ", composite rank "
      << c.composite_rank;
    add_check(r, "irreducibility_certificate", c.passed, d.str());
}

// The bound s < p is only asserted for bottom-alcove modules.
void string_bound(CommandResult& r, const hk::GroupRep& v)
{
    hk::RootSystem rs('A', v.n - 1);
    const bool holds = hk::root_string_bound(v);
    if (rs.bottom_alcove_check(v.mu, static_cast<int>(v.p)))
        add_check(r, "root_string_bound", holds);
    else
        r.results["root_string_bound_outside_alcove"] = holds;
}

CommandResult check_koszul(const Scenario& s, ArtifactCache& cache)
{
    CommandResult r;
    const int n = s.n();
    hk::Coefficients coeff;
    switch (s.coeff) {
    case CoeffKind::TrivialQ: coeff = hk::Coefficients::trivial(n, 0); break;
    case CoeffKind::TrivialFp: coeff = hk::Coefficients::trivial(n, s.p); break;
    default: {
        hk::GroupRep v = cache.simple_module(n, s.p, scenario_mu(s));
        certify(r, v);
        coeff = hk::Coefficients::from_rep(v);
        bool idem = true;
        for (const auto& xi : coeff.xi) idem &= xi * xi == xi;
        add_check(r, "xi_idempotent", idem);
    }
    }
    hk::KoszulSpec spec = hk::KoszulSpec::standard(n, s.p, coeff);
    if (!s.subset.empty()) {
        spec.d = 0;
        for (int k : s.subset) spec.d |= hk::Subset{1} << (k - 1);
    }
    if (!s.order.empty())
        for (int i = 0; i < s.rank; ++i) spec.order[i] = s.order[i] - 1;

    hk::KoszulBuilder builder(spec);
    hk::KoszulComplex kc = builder.build();  // throws on d^2 != 0
    add_check(r, "d_squared_zero", true);
    hk::ExactnessVerdict v = hk::exactness_verdict(kc, hk::subset_size(spec.d));
    bool dims_ok = true;
    for (int j = 0; j <= hk::subset_size(spec.d); ++j)
        dims_ok &= v.dims[j] == hk::expected_dimension(n, s.p, spec.d, j, coeff.dim);
    add_check(r, "dimension_formula", dims_ok);
    r.results = verdict_json(v);
    r.results["field"] = coeff.field == 0 ? "Q" : "F_" + num(coeff.field);
    r.results["coefficient_dim"] = num(coeff.dim);
    r.verdict = v.exact ? "exact" : "not-exact";

    if (s.inheritance) {
        hk::InheritanceReport inh = hk::exactness_inheritance_check(spec);
        json rows = json::array();
        for (const auto& [d, dv] : inh.verdicts) {
            json row = verdict_json(dv);
            row["nabla_subset"] = subset_json(d, s.rank);
            rows.push_back(row);
        }
        r.results["inheritance"] = {{"full_exact", inh.full_exact}, {"consistent", inh.consistent}, {"subcomplexes", rows}};
        add_check(r, "exactness_inheritance", inh.consistent,
                  inh.full_exact ? "every K_D is exact" : "K_nabla is not exact; nothing to inherit");
    }
    return r;
}

json weight_table(const std::map<std::pair<int, hk::Weight>, std::size_t>& t)
{
    json a = json::array();
    for (const auto& [key, dim] : t)
        a.push_back({{"degree", num(key.first)}, {"weight", weight_json(key.second.c)}, {"dim", num(dim)}});
    return a;
}

CommandResult lie_cohomology(const Scenario& s, ArtifactCache& cache)
{
    CommandResult r;
    hk::GroupRep v = cache.simple_module(s.n(), s.p, scenario_mu(s));
    certify(r, v);
    string_bound(r, v);
    hk::LieCohomology h = hk::ce_cohomology(v);  // throws on d^2 != 0 or weight mixing
    add_check(r, "d_squared_zero", true);
    r.results.update({{"cochain_dims", num_list(h.cochain_dims)},
                      {"cohomology", num_list(h.total)},
                      {"observed", weight_table(h.observed)},
                      {"predicted", weight_table(h.predicted)},
                      {"in_bottom_alcove", h.in_bottom_alcove},
                      {"matches_prediction", h.matches}});
    if (h.in_bottom_alcove) {
        add_check(r, "kostant_weights", h.matches, "per-weight multiplicities against w.(w0 mu)");
        hk::CEComplex ce = hk::build_ce_complex(v);
        hk::RootSystem rs('A', s.rank);
        std::size_t good = 0;
        for (std::size_t w = 0; w < rs.weyl_order(); ++w) {
            hk::WitnessCheck c = hk::witness_cocycle(v, ce, w);
            good += c.closed && c.nonzero_class;
        }
        add_check(r, "witness_cocycles", good == rs.weyl_order(), num(good) + " of " + num(rs.weyl_order()));
    } else {
        add_check(r, "kostant_weights", true, "mu is outside the bottom alcove; comparison is informational");
    }
    r.verdict = all_checks(r) ? "pass" : "fail";
    return r;
}

CommandResult appendix(const Scenario& s)
{
    CommandResult r;
    hk::U3SuiteOptions opt;
    opt.seed = s.seed;
    opt.samples = s.samples;
    opt.zeta_non_coboundary = s.zeta_non_coboundary;
    hk::U3SuiteReport rep = hk::verify_u3_suite(s.p, s.m, opt);
    for (const auto& item : rep.items) add_check(r, item.name, item.passed, item.detail);
    r.results = {{"p", num(rep.p)}, {"m", num(rep.m)}, {"gamma2_on_n12_witness", num_list(rep.gamma2_on_n12_witness)}};
    r.verdict = rep.all_passed() ? "pass" : "fail";
    return r;
}

CommandResult apartment(const Scenario& s)
{
    CommandResult r;
    hk::ApartmentModel m(s.series, s.rank);
    const mpq_class radius(s.radius);
    hk::Basepoint bp = hk::generic_basepoint(m, radius);
    r.results["basepoint"] = {{"z0", qvec_json(bp.z0)},
                              {"denominator", num(bp.denominator)},
                              {"candidates_tried", num(bp.candidates_tried)}};

    // extremal property of sums w_lambda lambda, moved to the anticone
    const std::vector<hk::IntVec> window = m.lattice_ball(bp.z0, radius * radius);
    const hk::NablaSet all = (hk::NablaSet{1} << s.rank) - 1;
    std::size_t extremal_checks = 0, extremal_failures = 0;
    for (const auto& z : window) {
        const std::size_t w = hk::chamber_index(m, bp.z0, z);
        hk::QVec diff(s.rank);
        for (int i = 0; i < s.rank; ++i) diff[i] = mpq_class(z[i]) - bp.z0[i];
        const hk::QVec moved = m.act(m.roots().inverse(w), diff);
        for (hk::NablaSet q = 0; q <= all; ++q) {
            ++extremal_checks;
            extremal_failures += !hk::verify_extremal_sum(m, moved, q);
        }
    }
    add_check(r, "extremal_sum", extremal_failures == 0, num(extremal_checks) + " pairs (z, Q)");

    hk::PartitionReport part = hk::partition_check(m, bp.z0, radius);
    json sizes = json::object();
    for (auto [size, count] : part.block_sizes) sizes[num(size)] = num(count);
    r.results["partition"] = {{"window_pairs", num(part.window_pairs)},
                              {"blocks", num(part.blocks)},
                              {"value_mismatches", num(part.value_mismatches)},
                              {"cover_violations", num(part.cover_violations)},
                              {"margin_violations", num(part.margin_violations)},
                              {"maximizer_violations", num(part.maximizer_violations)},
                              {"monotonicity_violations", num(part.monotonicity_violations)},
                              {"chamber_violations", num(part.chamber_violations)},
                              {"block_sizes", sizes}};
    add_check(r, "partition", part.passed());
    add_check(r, "margin", part.margin_violations == 0, "guarded radius " + mpq_str(hk::guarded_radius(m, radius)));

    std::size_t blocks = 0, bij_fail = 0, wall_checks = 0;
    for (const auto& z : window) {
        hk::BijectionReport b = hk::graded_support_bijection(m, bp.z0, z);
        ++blocks;
        bij_fail += !(b.well_defined && b.bijective && b.wall_separation);
        wall_checks += b.wall_checks;
    }
    r.results["bijection"] = {{"blocks", num(blocks)}, {"failures", num(bij_fail)}, {"wall_checks", num(wall_checks)}};
    add_check(r, "support_bijection", bij_fail == 0);
    if (s.svg) {
        hk::IntVec origin(s.rank, 0);
        r.svg = hk::window_svg(m, bp.z0, radius, hk::block_of(m, bp.z0, origin));
    }
    r.verdict = all_checks(r) ? "pass" : "fail";
    return r;
}

CommandResult satake(const Scenario& s)
{
    CommandResult r;
    hk::RootSystem rs(s.series, s.rank);
    hk::SatakeAlgebra alg(rs);
    hk::CocycleReport cr = hk::gamma_cocycle_check(alg, s.radius);
    r.results["gamma_cocycle"] = {{"multiplicative_checks", num(cr.multiplicative_checks)},
                                  {"composition_checks", num(cr.composition_checks)},
                                  {"failures", num(cr.failures)}};
    add_check(r, "gamma_cocycle", cr.failures == 0);
    json products = json::array();
    std::size_t failures = 0;
    const auto box = hk::dominant_box(rs, s.max_coord);
    for (const auto& mu : box)
        for (const auto& nu : box) {
            hk::TriangularReport t = hk::triangular_product_check(alg, mu, nu);
            failures += !t.passed();
            json coeffs = json::array();
            for (const auto& [x, c] : t.expansion.coeffs)
                coeffs.push_back({{"mu", weight_json(x.c)}, {"coeff", hk::qpoly_str(c)}});
            products.push_back({{"mu", weight_json(mu.c)},
                                {"mu2", weight_json(nu.c)},
                                {"leading_is_one", t.leading_is_one},
                                {"lower_terms_strict", t.lower_terms_strict},
                                {"expansion", coeffs}});
        }
    r.results["products"] = products;
    add_check(r, "triangularity", failures == 0, num(box.size() * box.size()) + " products");
    r.verdict = all_checks(r) ? "pass" : "fail";
    return r;
}

CommandResult build_rep(const Scenario& s, ArtifactCache& cache)
{
    CommandResult r;
    hk::GroupRep v = cache.simple_module(s.n(), s.p, scenario_mu(s));
    certify(r, v);
    string_bound(r, v);
    std::map<hk::Weight, std::size_t> mult;
    for (const auto& w : v.weights) ++mult[w];
    json weights = json::array();
    for (const auto& [w, k] : mult) weights.push_back({{"weight", weight_json(w.c)}, {"multiplicity", num(k)}});
    json xi = json::array();
    bool idem = true;
    for (int k = 0; k < s.rank; ++k) {
        hk::XiMap x = hk::xi_map(v, k);
        idem &= x.matrix * x.matrix == x.matrix;
        xi.push_back({{"lambda", num(k + 1)}, {"rank", num(x.rank)}});
    }
    add_check(r, "xi_idempotent", idem);
    hk::RootSystem rs('A', s.rank);
    r.results.update({{"dim", num(v.dim)},
                      {"weights", weights},
                      {"xi", xi},
                      {"bottom_alcove", rs.bottom_alcove_check(v.mu, static_cast<int>(s.p))}});
    r.verdict = all_checks(r) ? "pass" : "fail";
    return r;
}

}  // namespace

json conventions()
{
    return {{"nabla_order", "Bourbaki: lambda_k = diag(p,..,p,1,..,1) with k entries p"},
            {"koszul_sign", "sigma(lambda, E) = (-1)^s, s = 1-based position of lambda in nabla - E"},
            {"gamma_sign", num(hk::kGammaSign)},
            {"gamma", "gamma(w, lambda) = q^(sign <rho, lambda - w lambda>)"},
            {"dot_action", "w.eta = w(eta - rho) + rho"},
            {"weights", "fundamental weight coordinates"}};
}

CommandResult run_command(const Scenario& s, ArtifactCache& cache)
{
    if (s.command == "check-koszul") return check_koszul(s, cache);
    if (s.command == "lie-cohomology") return lie_cohomology(s, cache);
    if (s.command == "appendix-cocycles") return appendix(s);
    if (s.command == "apartment-filtration") return apartment(s);
    if (s.command == "satake-triangularity") return satake(s);
    if (s.command == "build-rep") return build_rep(s, cache);
    throw SchemaError("unknown command " + s.command);
}

}  // namespace hktool
