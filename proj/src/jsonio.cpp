#include "ellkzb/jsonio.hpp"

namespace ellkzb {

Json to_json(const Rat& r) { return rat_str(r); }

Json to_json(const CurvePoly& p) {
    Json arr = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["coeff"] = rat_str(c);
        t["expx"] = m.ex;
        t["expy"] = m.ey;
        t["expu"] = m.eu;
        t["expv"] = m.ev;
        arr.push_back(std::move(t));
    }
    return arr;
}

Json to_json(const CurveFun& f) {
    Json j;
    j["num"] = to_json(f.num());
    j["ypow"] = f.ypow();
    j["dpow"] = f.dpow();
    return j;
}

Json to_json(const DiffForm1& w) {
    Json j;
    j["dx"] = to_json(w.fx);
    j["du"] = to_json(w.fu);
    j["dv"] = to_json(w.fv);
    return j;
}

Json to_json(const DerLabel& l) {
    Json j;
    switch (l.kind) {
        case DerLabel::Kind::ad: j["kind"] = "ad"; break;
        case DerLabel::Kind::d_s: j["kind"] = "dS"; break;
        case DerLabel::Kind::d_t: j["kind"] = "dT"; break;
    }
    j["word"] = l.word;
    j["bracket"] = bracket_string(l.word);
    return j;
}

Json to_json(const Connection& c) {
    Json j;
    j["model"] = c.model;
    j["family"] = c.family == Family::universal ? "universal" : "single-curve";
    j["degree"] = c.degree;
    if (c.fiber) j["fiber"] = Json::array({rat_str(c.fiber->first), rat_str(c.fiber->second)});
    Json terms = Json::array();
    for (const auto& t : c.terms) {
        Json jt;
        jt["derivation_label"] = to_json(t.label);
        jt["form"] = to_json(t.form);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

Rat rat_from_json(const Json& j) { return rat_parse(j.get<std::string>()); }

CurvePoly poly_from_json(const Json& j) {
    RawPoly raw;
    for (const auto& t : j) {
        Mono m{t.at("expx").get<int>(), t.at("expy").get<int>(), t.at("expu").get<int>(),
               t.at("expv").get<int>()};
        raw[m] = raw[m] + rat_parse(t.at("coeff").get<std::string>());
    }
    return CurvePoly::normalize(raw);
}

CurveFun fun_from_json(const Json& j) {
    return CurveFun(poly_from_json(j.at("num")), j.at("ypow").get<int>(), j.at("dpow").get<int>());
}

DiffForm1 form_from_json(const Json& j) {
    DiffForm1 w;
    w.fx = fun_from_json(j.at("dx"));
    w.fu = fun_from_json(j.at("du"));
    w.fv = fun_from_json(j.at("dv"));
    return w;
}

DerLabel label_from_json(const Json& j) {
    DerLabel l;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ad")
        l.kind = DerLabel::Kind::ad;
    else if (kind == "dS")
        l.kind = DerLabel::Kind::d_s;
    else if (kind == "dT")
        l.kind = DerLabel::Kind::d_t;
    else
        throw std::invalid_argument("label_from_json: bad kind '" + kind + "'");
    l.word = j.at("word").get<std::string>();
    if (!is_lyndon(l.word)) throw std::invalid_argument("label_from_json: word is not Lyndon");
    return l;
}

Connection connection_from_json(const Json& j) {
    Family family = j.at("family").get<std::string>() == "universal" ? Family::universal : Family::single_curve;
    int degree = j.at("degree").get<int>();
    std::optional<std::pair<Rat, Rat>> fiber;
    if (j.contains("fiber"))
        fiber = std::make_pair(rat_parse(j["fiber"][0].get<std::string>()), rat_parse(j["fiber"][1].get<std::string>()));
    std::vector<ConnTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({label_from_json(t.at("derivation_label")), form_from_json(t.at("form"))});
    std::string model = j.contains("model") ? j["model"].get<std::string>() : "";
    return Connection::from_terms(family, degree, std::move(terms), fiber, model);
}

}  // namespace ellkzb
