#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyplab/fixpoint.hpp"
#include "hyplab/metrics.hpp"
#include "hyplab/report.hpp"
#include "hyplab/witness.hpp"

using nlohmann::json;
using namespace hyplab;

namespace {

struct Options {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "csv";
    std::size_t members = 100;
    std::size_t budget = 2000;
};

std::shared_ptr<const SpaceModel> make_model(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    int dim = j.value("dim", 1);
    if (kind == "euclidean") return std::make_shared<const SpaceModel>(SpaceModel::euclidean(dim));
    if (kind == "half_space")
        return std::make_shared<const SpaceModel>(SpaceModel::half_space(dim));
    if (kind == "l1") return std::make_shared<const SpaceModel>(SpaceModel::l1(dim));
    if (kind == "hyperboloid2") return std::make_shared<const SpaceModel>(SpaceModel::hyperboloid2());
    throw invalid_input("unknown model kind: " + kind);
}

Gauge make_gauge(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "log") return make_log_gauge();
    if (kind == "power") return make_power_gauge();
    if (kind == "psi") return make_psi_gauge(j.value("s", 2.0));
    throw invalid_input("unknown gauge kind: " + kind);
}

Point make_point(const json& j, const SpaceModel& m) {
    Point p(j.get<std::vector<double>>());
    m.require_valid(p);
    return p;
}

NonexpMap make_map(const json& j, const std::shared_ptr<const SpaceModel>& model) {
    std::string type = j.at("type").get<std::string>();
    if (type == "identity") return NonexpMap::identity(model);
    if (type == "constant") return NonexpMap::constant(model, make_point(j.at("value"), *model));
    if (type == "affine")
        return NonexpMap::affine(model, j.at("a").get<double>(),
                                 j.at("b").get<std::vector<double>>());
    if (type == "contract") {
        NonexpMap inner = make_map(j.at("of"), model);
        Point theta = j.contains("theta") ? make_point(j.at("theta"), *model) : model->origin();
        return contract_toward(inner, theta, j.at("gamma").get<double>());
    }
    if (type == "radial_collapse")
        return radial_collapse(model, make_point(j.at("z"), *model), j.at("R").get<double>(),
                               j.at("eps").get<double>());
    if (type == "compose") {
        NonexpMap outer = make_map(j.at("outer"), model);
        NonexpMap inner = make_map(j.at("inner"), model);
        double lip = outer.claimed_lip() * inner.claimed_lip();
        if (lip > 1.0 + kLipSlack) throw invalid_input("compose: Lipschitz budget exceeded");
        auto fn = [outer, inner](const Point& x) { return outer(inner(x)); };
        return NonexpMap::from_function(model, std::move(fn), lip, "compose");
    }
    throw invalid_input("unknown map type: " + type);
}

Report cmd_verify_axioms(const json& cfg, const Options& opt) {
    Report rep;
    rep.command = "verify-axioms";
    std::size_t samples = cfg.value("samples", std::size_t{10000});
    for (const json& mj : cfg.value("models", json::array())) {
        auto model = make_model(mj);
        AxiomReport ar = model->verify_hyperbolicity(samples, opt.seed);
        double tol = mj.value("tolerance", model->tolerance());
        ReportRow row;
        row.check = "hyperbolicity-axioms(" + model->name() + ")";
        row.claimed = tol;
        row.measured = ar.max_violation;
        row.margin = tol - ar.max_violation;
        row.pass = ar.max_violation <= tol;
        rep.rows.push_back(row);
    }
    return rep;
}

Report cmd_metric(const json& cfg, const Options& opt) {
    Report rep;
    rep.command = "metric";

    if (cfg.contains("divergence_demo")) {
        std::size_t n_max = cfg.at("divergence_demo").value("n_max", std::size_t{10});
        DivergenceReport dr = d_theta1_divergence_demo(n_max);
        for (const auto& row : dr.rows) {
            ReportRow r;
            r.check = "divergence-ratio(n=" + std::to_string(row.n) + ")";
            r.claimed = row.expected;
            r.measured = row.ratio_at_xn;
            r.margin = row.ratio_at_xn - 1.0 / 3.0;
            r.pass = row.ratio_at_xn >= 1.0 / 3.0 - 1e-12 &&
                     std::abs(row.ratio_at_xn - row.expected) <= 1e-9;
            rep.rows.push_back(r);
        }
        return rep;
    }

    auto model = make_model(cfg.at("model"));
    NonexpMap f = make_map(cfg.at("f"), model);
    NonexpMap g = make_map(cfg.at("g"), model);
    const json& mj = cfg.at("metric");
    std::string family = mj.at("family").get<std::string>();
    Point theta = cfg.contains("theta") ? make_point(cfg.at("theta"), *model) : model->origin();

    MetricValue v;
    if (family == "series") {
        Gauge gauge = make_gauge(mj.at("gauge"));
        v = series_metric(f, g, theta, gauge, mj.value("N", std::size_t{60}), opt.budget,
                          opt.seed);
    } else if (family == "weighted") {
        v = weighted_sup_metric(f, g, theta, mj.value("s", 2.0), opt.budget, opt.seed);
    } else if (family == "pointwise") {
        DenseSequence seq(model);
        v = pointwise_metric(f, g, seq, mj.value("N", std::size_t{60}));
    } else {
        throw invalid_input("unknown metric family: " + family);
    }

    ReportRow row;
    row.check = "metric-value(" + family + ")";
    row.measured = v.value;
    row.margin = v.tail_bound;
    row.pass = true;
    if (cfg.contains("expect_max")) {
        row.claimed = cfg.at("expect_max").get<double>();
        row.pass = v.value + v.tail_bound <= row.claimed + 1e-9;
        row.margin = row.claimed - v.value;
    }
    rep.rows.push_back(row);
    return rep;
}

Report cmd_witness(const json& cfg, const Options& opt) {
    Report rep;
    rep.command = "witness";
    auto model = make_model(cfg.at("model"));
    NonexpMap f = make_map(cfg.at("f"), model);
    Point theta = cfg.contains("theta") ? make_point(cfg.at("theta"), *model) : model->origin();
    std::string kind = cfg.at("kind").get<std::string>();

    Gauge gauge = cfg.contains("gauge") ? make_gauge(cfg.at("gauge")) : make_log_gauge();
    double s = cfg.value("s", 2.0);
    std::string family = cfg.value("family", std::string("series"));
    MetricFamily mf = family == "weighted" ? MetricFamily::WeightedSup : MetricFamily::Series;

    PorosityWitness w;
    if (kind == "ball-invariance") {
        w = ball_invariance_witness(f, cfg.at("r").get<double>(), theta, mf, gauge, s);
    } else if (kind == "rakotch") {
        w = rakotch_witness(f, cfg.at("r").get<double>(), cfg.at("n").get<std::size_t>(), theta,
                            mf, gauge, s);
    } else if (kind == "modcont") {
        w = modcont_witness(f, cfg.at("r").get<double>(), cfg.at("t0").get<double>(),
                            cfg.at("mu").get<double>(), theta, mf, gauge, s);
    } else if (kind == "shrink") {
        auto seq = std::make_shared<DenseSequence>(model);
        w = shrink_witness(f, make_point(cfg.at("x"), *model), make_point(cfg.at("y"), *model),
                           seq, cfg.value("gamma", 0.1), cfg.value("eps", 0.25));
    } else {
        throw invalid_input("unknown witness kind: " + kind);
    }

    WitnessReport wr = verify_witness(w, opt.members, opt.seed, opt.budget);

    ReportRow cd;
    cd.check = "center-distance-certified";
    cd.claimed = w.r;
    cd.measured = wr.center_distance_bound;
    cd.margin = w.r - wr.center_distance_bound;
    cd.pass = wr.center_certified;
    rep.rows.push_back(cd);

    for (const auto& row : wr.rows) {
        ReportRow r;
        r.check = "member-" + std::to_string(row.index) + "(" + row.construction + ")";
        r.claimed = w.radius;
        r.measured = row.measured;
        r.margin = row.margin;
        r.pass = row.passed && row.certified_distance <= w.radius;
        rep.rows.push_back(r);
    }
    return rep;
}

Report cmd_fixpoint(const json& cfg, const Options& opt) {
    Report rep;
    rep.command = "fixpoint";
    auto model = make_model(cfg.at("model"));
    NonexpMap f = make_map(cfg.at("f"), model);
    Point x0 = cfg.contains("x0") ? make_point(cfg.at("x0"), *model) : model->origin();
    double tol = cfg.value("tol", 1e-8);
    std::size_t max_iter = cfg.value("max_iter", std::size_t{1000000});

    FixedPointReport fr = iterate(f, x0, tol, max_iter);
    ReportRow conv;
    conv.check = "picard-converged";
    conv.claimed = cfg.value("expect_converged", true) ? 1.0 : 0.0;
    conv.measured = fr.converged ? 1.0 : 0.0;
    conv.margin = tol - fr.residual;
    conv.pass = conv.measured == conv.claimed;
    rep.rows.push_back(conv);

    ReportRow res;
    res.check = "final-residual";
    res.claimed = tol;
    res.measured = fr.residual;
    res.margin = tol - fr.residual;
    res.pass = !fr.converged || fr.residual <= tol;
    rep.rows.push_back(res);

    ReportRow it;
    it.check = "iterations";
    it.claimed = static_cast<double>(max_iter);
    it.measured = static_cast<double>(fr.iterations);
    it.margin = it.claimed - it.measured;
    it.pass = true;
    rep.rows.push_back(it);

    if (cfg.value("audit", false)) {
        Point theta = cfg.contains("theta") ? make_point(cfg.at("theta"), *model)
                                            : model->origin();
        RakotchGauge rg = rakotch_gauges(f, theta, cfg.value("gauge_n_max", std::size_t{8}),
                                         opt.budget, opt.seed);
        RakotchAuditReport ar = rakotch_convergence_audit(f, theta, x0, rg, tol);
        ReportRow sg;
        sg.check = "step-gauge-inequality";
        sg.claimed = tol;
        sg.measured = ar.worst_step_violation;
        sg.margin = tol - ar.worst_step_violation;
        sg.pass = ar.step_gauge_ok;
        rep.rows.push_back(sg);
        ReportRow uq;
        uq.check = "two-start-uniqueness";
        uq.claimed = 10.0 * tol;
        uq.measured = ar.limit_gap;
        uq.margin = 10.0 * tol - ar.limit_gap;
        uq.pass = ar.unique_limit;
        rep.rows.push_back(uq);
    }
    return rep;
}

Report cmd_lipschitz_profile(const json& cfg, const Options& opt) {
    Report rep;
    rep.command = "lipschitz-profile";
    auto model = make_model(cfg.at("model"));
    NonexpMap f = make_map(cfg.at("f"), model);
    Point theta = cfg.contains("theta") ? make_point(cfg.at("theta"), *model) : model->origin();
    double a = cfg.value("a", 0.5);
    double eps = cfg.value("eps", 0.5);

    std::vector<Point> cloud;
    if (cfg.contains("net_points")) {
        for (const json& pj : cfg.at("net_points")) cloud.push_back(make_point(pj, *model));
    } else {
        double R = cfg.value("cloud_radius", 10.0);
        std::size_t count = cfg.value("cloud_count", std::size_t{256});
        cloud = model->ball_sampler(theta, R, count, opt.seed);
    }
    if (cloud.empty()) throw invalid_input("lipschitz-profile: empty net cloud");
    SeparatedNet net = greedy_separated_net(*model, cloud, a);
    if (net.points.size() < 2)
        throw invalid_input("lipschitz-profile: net has fewer than two points");

    NonexpMap g = isometry_patch(f, net, a, eps, theta);
    double patch_r = eps * a / 32.0;
    std::size_t depth = cfg.value("radius_levels", std::size_t{4});

    for (std::size_t i = 0; i < net.points.size(); ++i) {
        LipEstimate le = local_lipschitz(g, net.points[i], patch_r, opt.budget, opt.seed + i);
        ReportRow r;
        r.check = "patched-local-lip(z=" + std::to_string(i) + ",r=patch)";
        r.claimed = 1.0;
        r.measured = le.value;
        r.margin = le.value - (1.0 - 1e-6);
        r.pass = le.value >= 1.0 - 1e-6;
        rep.rows.push_back(r);
        for (std::size_t k = 1; k <= depth; ++k) {
            double rad = patch_r * std::exp2(-static_cast<double>(k));
            LipEstimate lk = local_lipschitz(g, net.points[i], rad, opt.budget / 2, opt.seed + k);
            ReportRow rr;
            rr.check = "patched-local-lip(z=" + std::to_string(i) +
                       ",r=patch/" + std::to_string(std::size_t{1} << k) + ")";
            rr.claimed = 1.0;
            rr.measured = lk.value;
            rr.margin = lk.value - (1.0 - 1e-6);
            rr.pass = lk.value >= 1.0 - 1e-6;
            rep.rows.push_back(rr);
        }
    }
    return rep;
}

int run(const std::string& cmd, const Options& opt) {
    json cfg;
    {
        std::ifstream in(opt.config_path);
        if (!in) {
            std::cerr << "cannot open config: " << opt.config_path << "\n";
            return 2;
        }
        try {
            in >> cfg;
        } catch (const json::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return 2;
        }
    }

    Report rep;
    try {
        if (cmd == "verify-axioms")
            rep = cmd_verify_axioms(cfg, opt);
        else if (cmd == "metric")
            rep = cmd_metric(cfg, opt);
        else if (cmd == "witness")
            rep = cmd_witness(cfg, opt);
        else if (cmd == "fixpoint")
            rep = cmd_fixpoint(cfg, opt);
        else
            rep = cmd_lipschitz_profile(cfg, opt);
    } catch (const invalid_input& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    rep.seed = opt.seed;
    rep.config_echo = cfg.dump();
    std::string body = opt.format == "json" ? to_json(rep) : to_csv(rep);
    if (opt.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output: " << opt.out_path << "\n";
            return 2;
        }
        out << body;
    }
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for nonexpansive mappings on hyperbolic spaces"};
    app.require_subcommand(1);

    Options opt;
    const char* names[] = {"verify-axioms", "metric", "witness", "fixpoint", "lipschitz-profile"};
    for (const char* name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path)->required();
        sub->add_option("--seed", opt.seed);
        sub->add_option("--out", opt.out_path);
        sub->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--members", opt.members);
        sub->add_option("--budget", opt.budget);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(app.get_subcommands().front()->get_name(), opt);
}
