#include "ellkzb/cli.hpp"

#include <iostream>

#include "CLI11.hpp"
#include "ellkzb/gaugesolve.hpp"
#include "ellkzb/jsonio.hpp"
#include "ellkzb/special.hpp"
#include "ellkzb/verify.hpp"

namespace ellkzb {

namespace {

struct CommonOpts {
    std::string model = "nu-alg";
    int degree = 5;
    std::vector<std::string> fiber;
    std::string format = "text";
};

constexpr int kMaxDegree = 8;  // config ceiling for the truncation degree

Connection build_model(const CommonOpts& o) {
    if (o.degree < 1 || o.degree > kMaxDegree)
        throw CLI::ValidationError("--degree must be between 1 and " + std::to_string(kMaxDegree));
    Connection c = model_by_name(o.model, o.degree);
    if (!o.fiber.empty()) {
        if (c.family == Family::universal)
            throw CLI::ValidationError("--fiber applies to single-curve models only");
        return specialize_fiber_connection(c, rat_parse(o.fiber[0]), rat_parse(o.fiber[1]));
    }
    return c;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_model = true) {
    if (with_model)
        cmd->add_option("--model", o.model, "nu-naive|nu-alg|nu-reg|gauss-manin|omega-alg|omega-reg")
            ->default_val(o.model);
    cmd->add_option("--degree", o.degree, "truncation degree")->default_val(o.degree);
    cmd->add_option("--fiber", o.fiber, "curve coefficients u0 v0 (exact rationals)")->expected(2);
    cmd->add_option("--format", o.format, "json|text")->default_val(o.format);
}

int print_checks(const std::vector<CheckResult>& checks, const std::string& format, std::ostream& out) {
    if (format == "json") {
        Json j = Json::array();
        for (const auto& c : checks) {
            Json e;
            e["name"] = c.name;
            e["pass"] = c.pass;
            if (c.tol > 0) {
                e["deviation"] = c.deviation;
                e["tolerance"] = c.tol;
            }
            if (!c.detail.empty()) e["detail"] = c.detail;
            j.push_back(std::move(e));
        }
        out << j.dump(2) << "\n";
    } else {
        for (const auto& c : checks) {
            out << (c.pass ? "[ok]   " : "[FAIL] ") << c.name;
            if (c.tol > 0) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), " (deviation %.3e, tol %.1e)", c.deviation, c.tol);
                out << buf;
            }
            if (!c.detail.empty()) out << " -- " << c.detail;
            out << "\n";
        }
    }
    return all_pass(checks) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact elliptic KZB connection toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    // emit-connection
    auto emit_opts = std::make_shared<CommonOpts>();
    CLI::App* emit = app.add_subcommand("emit-connection", "construct a connection and print it");
    add_common(emit, *emit_opts);
    emit->callback([&, emit_opts] {
        Connection c = build_model(*emit_opts);
        if (emit_opts->format == "json") {
            out << to_json(c).dump(2) << "\n";
        } else {
            out << c.model << " (degree " << c.degree << ")\n";
            for (const auto& t : c.terms)
                out << "  " << t.label.to_string() << " : " << t.form.to_string() << "\n";
        }
    });

    // curvature
    auto curv_opts = std::make_shared<CommonOpts>();
    CLI::App* curv = app.add_subcommand("curvature", "curvature of a model connection");
    add_common(curv, *curv_opts);
    curv->callback([&, curv_opts] {
        Connection c = build_model(*curv_opts);
        Curvature2 f = curvature(c);
        bool flat = f.is_zero();
        if (curv_opts->format == "json") {
            Json j;
            j["model"] = c.model;
            j["degree"] = c.degree;
            j["flat"] = flat;
            out << j.dump(2) << "\n";
        } else {
            out << c.model << " curvature: " << (flat ? "0 (flat)" : "NONZERO") << "\n";
        }
        if (!flat) exit_code = 1;
    });

    // residue
    auto res_opts = std::make_shared<CommonOpts>();
    CLI::App* res = app.add_subcommand("residue", "residue and pole order at the identity");
    add_common(res, *res_opts);
    res->callback([&, res_opts] {
        Connection c = build_model(*res_opts);
        Derivation<CurveFun> r = residue_at_identity(c);
        int pole = pole_order_at_identity(c);
        if (res_opts->format == "json") {
            Json j;
            j["model"] = c.model;
            j["residue"] = derivation_pretty(r);
            j["pole_order"] = pole;
            out << j.dump(2) << "\n";
        } else {
            out << derivation_pretty(r) << "\n";
            out << "pole order: " << pole << "\n";
        }
    });

    // solve-gauge
    auto sg_opts = std::make_shared<CommonOpts>();
    auto sg_mode = std::make_shared<std::string>("inner");
    CLI::App* sg = app.add_subcommand("solve-gauge", "solve dg = g nu_naive - nu_alg g on a fiber");
    sg->add_option("--mode", *sg_mode, "inner|full")->default_val("inner");
    add_common(sg, *sg_opts, false);
    sg->callback([&, sg_opts, sg_mode] {
        if (sg_opts->fiber.empty()) throw CLI::ValidationError("solve-gauge requires --fiber u0 v0");
        GaugeProblem p;
        p.mode = (*sg_mode == "full") ? GaugeMode::full : GaugeMode::inner;
        if (*sg_mode != "full" && *sg_mode != "inner") throw CLI::ValidationError("--mode must be inner or full");
        p.degree = sg_opts->degree;
        p.u0 = rat_parse(sg_opts->fiber[0]);
        p.v0 = rat_parse(sg_opts->fiber[1]);
        SolveResult r = solve_gauge(p);
        if (sg_opts->format == "json") {
            Json j;
            j["mode"] = *sg_mode;
            j["degree"] = p.degree;
            j["fiber"] = Json::array({rat_str(p.u0), rat_str(p.v0)});
            if (r.obstruction) {
                j["status"] = "obstruction";
                j["obstruction_degree"] = r.obstruction->degree;
                Json cs = Json::array();
                for (const auto& c : r.obstruction->constraints) {
                    Json e;
                    e["constraint"] = c.text;
                    e["source"] = c.source;
                    cs.push_back(std::move(e));
                }
                j["constraints"] = std::move(cs);
            } else {
                j["status"] = "success";
                j["verified"] = r.success->verified;
                j["action_on_S"] = r.success->action_on_s.to_string();
                j["action_on_T"] = r.success->action_on_t.to_string();
                j["notes"] = r.success->notes;
            }
            out << j.dump(2) << "\n";
        } else if (r.obstruction) {
            out << "obstruction at degree " << r.obstruction->degree << "\n";
            for (const auto& c : r.obstruction->constraints)
                out << "  " << c.text << "   [" << c.source << "]\n";
        } else {
            out << "success (residual verified exactly: " << (r.success->verified ? "yes" : "NO") << ")\n";
            out << "  g(S) = " << r.success->action_on_s.to_string() << "\n";
            out << "  g(T) = " << r.success->action_on_t.to_string() << "\n";
            for (const auto& n : r.success->notes) out << "  " << n << "\n";
        }
        if (r.success && !r.success->verified) exit_code = 1;
    });

    // tables
    auto tb_what = std::make_shared<std::string>("qn");
    auto tb_max = std::make_shared<int>(4);
    auto tb_fmt = std::make_shared<std::string>("text");
    CLI::App* tb = app.add_subcommand("tables", "emit special-function tables");
    tb->add_option("--what", *tb_what, "qn|rn|pk|p2m")->default_val("qn");
    tb->add_option("--max", *tb_max, "largest index")->default_val(4);
    tb->add_option("--format", *tb_fmt, "json|text")->default_val("text");
    tb->callback([&, tb_what, tb_max, tb_fmt] {
        Json j;
        std::vector<std::pair<std::string, std::string>> rows;
        if (*tb_what == "qn") {
            for (int n = 2; n <= *tb_max; ++n)
                rows.emplace_back("q" + std::to_string(n), q_poly(n).to_string()),
                    j["q" + std::to_string(n)] = to_json(q_poly(n));
        } else if (*tb_what == "rn") {
            for (int n = 1; n <= *tb_max; ++n)
                rows.emplace_back("r" + std::to_string(n), r_fun(n).to_string()),
                    j["r" + std::to_string(n)] = to_json(r_fun(n));
        } else if (*tb_what == "pk") {
            for (int k = 2; k <= *tb_max; ++k)
                rows.emplace_back("P" + std::to_string(k), P_poly(k).to_string()),
                    j["P" + std::to_string(k)] = to_json(P_poly(k));
        } else if (*tb_what == "p2m") {
            for (int m = 4; m <= *tb_max; m += 2)
                rows.emplace_back("p" + std::to_string(m), p_poly(m).to_string()),
                    j["p" + std::to_string(m)] = to_json(p_poly(m));
        } else {
            throw CLI::ValidationError("--what must be one of qn|rn|pk|p2m");
        }
        if (*tb_fmt == "json")
            out << j.dump(2) << "\n";
        else
            for (const auto& [k, v] : rows) out << k << " = " << v << "\n";
    });

    // verify
    auto vf_suite = std::make_shared<std::string>("all");
    auto vf_opts = std::make_shared<CommonOpts>();
    auto vf_tol = std::make_shared<double>(0.0);
    CLI::App* vf = app.add_subcommand("verify", "run the verification suites");
    vf->add_option("--suite", *vf_suite, "symbolic|numeric|gauge|all")->default_val("all");
    vf->add_option("--tol", *vf_tol, "override tolerance for numeric checks");
    add_common(vf, *vf_opts, false);
    vf->callback([&, vf_suite, vf_opts, vf_tol] {
        std::vector<CheckResult> checks;
        if (*vf_suite == "symbolic" || *vf_suite == "all") {
            auto s = run_symbolic_suite(vf_opts->degree);
            checks.insert(checks.end(), s.begin(), s.end());
        }
        if (*vf_suite == "numeric" || *vf_suite == "all") {
            auto s = run_numeric_suite(*vf_tol);
            checks.insert(checks.end(), s.begin(), s.end());
        }
        if (*vf_suite == "gauge" || *vf_suite == "all") {
            auto s = run_gauge_suite(4, 1, vf_opts->degree);
            checks.insert(checks.end(), s.begin(), s.end());
        }
        if (*vf_suite != "symbolic" && *vf_suite != "numeric" && *vf_suite != "gauge" && *vf_suite != "all")
            throw CLI::ValidationError("--suite must be symbolic|numeric|gauge|all");
        exit_code = print_checks(checks, vf_opts->format, out);
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace ellkzb
