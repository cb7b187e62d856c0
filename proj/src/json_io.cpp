#include "bk/json_io.hpp"

#include <algorithm>

#include "bk/errors.hpp"

namespace bk {

namespace {

int64_t imod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Json json_field(const FieldPtr& k) {
    Json j;
    j["p"] = k->p();
    j["m"] = k->m();
    j["modulus"] = k->modulus();
    j["generator_dlog_base"] = k->generator();
    return j;
}

Json json_fq(const FieldPtr& k, int32_t rep) {
    if (rep == 0) return nullptr;
    return k->dlog(rep);
}

Json json_weight(const SerreWeight& w) {
    Json j;
    j["r"] = w.r;
    j["w"] = w.w;
    return j;
}

Json json_weights_sorted(std::vector<SerreWeight> ws) {
    std::sort(ws.begin(), ws.end());
    Json arr = Json::array();
    for (const auto& w : ws) arr.push_back(json_weight(w));
    return arr;
}

const char* genre_name(Genre g) {
    switch (g) {
        case Genre::IEta: return "I_eta";
        case Genre::IEtaP: return "I_etap";
        case Genre::II: return "II";
    }
    return "?";
}

Json json_engeance(const Engeance& e, const FieldPtr& k) {
    Json j;
    Json gs = Json::array();
    for (const Genre g : e.genres) gs.push_back(genre_name(g));
    j["genres"] = gs;
    j["alpha"] = json_fq(k, e.alpha);
    j["alphaP"] = json_fq(k, e.alphaP);
    Json a = Json::array(), ap = Json::array();
    for (const int32_t v : e.a) a.push_back(json_fq(k, v));
    for (const int32_t v : e.ap) ap.push_back(json_fq(k, v));
    j["a"] = a;
    j["aP"] = ap;
    return j;
}

Json json_class(const ResidualClass& cls, const FieldPtr& k) {
    Json j;
    j["h"] = cls.h;
    j["delta"] = json_fq(k, cls.delta);
    return j;
}

Json json_ext_class(const Ext1Class& c, const FieldPtr& k) {
    const auto coord = [&](const std::map<int64_t, int32_t>& m) {
        Json arr = Json::array();
        for (const auto& [e, v] : m) {
            Json term;
            term["e"] = e;
            term["c"] = json_fq(k, v);
            arr.push_back(term);
        }
        return arr;
    };
    Json j;
    j["first"] = coord(c.first);
    j["second"] = coord(c.second);
    return j;
}

Json json_ring(const PresentedRing& r) {
    Json j;
    switch (r.kind) {
        case PresentedRing::Kind::Zero:
            j["kind"] = "zero";
            break;
        case PresentedRing::Kind::XYplusPk:
            j["kind"] = "xy_plus_p_k";
            j["pexp"] = r.pexp;
            j["extra_vars"] = r.extra_vars;
            break;
        case PresentedRing::Kind::StrictSubring:
            j["kind"] = "strict_subring";
            break;
    }
    return j;
}

Json json_calibration(const Calibration& cal, const FieldPtr& k) {
    Json j;
    j["kw"] = cal.kw;
    j["uw"] = json_fq(k, cal.uw);
    return j;
}

Json json_bm_report(const BMReport& r, const FieldPtr& k) {
    Json j;
    j["target"] = {{"c", r.target.c}, {"s", r.target.s}, {"theta", json_fq(k, r.target.theta.rep)}};
    j["nongeneric_case"] = r.ng.case_id;
    j["totally_nongeneric"] = r.ng.totally_nongeneric;
    j["weights"] = json_weights_sorted(r.weights);
    j["certified"] = json_weights_sorted(r.certified);
    j["uncovered"] = json_weights_sorted(r.uncovered);
    j["types_total"] = r.types_total;
    j["types_zero"] = r.types_zero;
    j["all_consistent"] = r.all_consistent;
    Json lines = Json::array();
    for (const auto& line : r.lines) {
        Json lj;
        lj["kEta"] = line.t.keta;
        lj["kEtaP"] = line.t.ketap;
        lj["common"] = json_weights_sorted(line.common);
        lj["ring"] = json_ring(line.ring);
        lj["mu"] = line.mu;
        lj["undetermined"] = line.undetermined;
        lj["consistent"] = line.consistent;
        lines.push_back(lj);
    }
    j["lines"] = lines;
    return j;
}

Json make_document(const std::string& command, Json config, Json results, Json calibration) {
    Json doc;
    doc["command"] = command;
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    doc["calibration"] = std::move(calibration);
    doc["version"] = kVersion;
    return doc;
}

Json figure1_table(int64_t p, int window_mult) {
    const FieldPtr k = field_make(p, 2);
    const Context ctx = Context::make(k, 2, window_mult);
    const Calibration cal = calibrate(ctx);
    const int64_t q = ctx.q;
    const std::vector<int64_t> theta_dlogs{0, 1, q - 2};

    Json rows = Json::array();
    for (const int64_t td : theta_dlogs) {
        const Fq theta{k, k->from_dlog(td)};
        const auto add_row = [&](int family, int row, const char* pname, int64_t param, int64_t c,
                                 int64_t keta, int64_t ketap, bool blue) {
            const TameType t = type_make(p, 2, keta, ketap);
            const InducedRep target = rep_make(p, 2, c, 0, theta);
            const ResidualClass cls = class_of_rep(target, cal);
            const auto shape = kisin_shape(enumerate_engeances(t, theta, ctx), cls, ctx);
            Json r;
            r["family"] = family;
            r["row"] = row;
            r["param_name"] = pname;
            r["param"] = param;
            r["c"] = imod(c, q * q - 1);
            r["kEta"] = t.keta;
            r["kEtaP"] = t.ketap;
            r["blue"] = blue;
            r["theta"] = td;
            r["class"] = json_class(cls, k);
            r["shape"] = shape.shape == Shape::Point    ? "point"
                         : shape.shape == Shape::ProjLine ? "line"
                                                          : "empty";
            Json es = Json::array();
            for (const auto& m : shape.members) es.push_back(json_engeance(m.e, k));
            r["engeances"] = es;
            rows.push_back(r);
        };
        for (int64_t r0 = 0; r0 <= p - 2; ++r0) add_row(1, 1, "r0", r0, 1 + r0, r0, -p, false);
        for (int64_t r0 = 1; r0 <= p - 2; ++r0) add_row(1, 2, "r0", r0, 1 + r0, r0 - p, 0, false);
        for (int64_t r0 = 0; r0 <= p - 3; ++r0)
            add_row(1, 3, "r0", r0, 1 + r0, 1 + r0 - p, -1, true);
        for (int64_t r1 = -1; r1 <= p - 3; ++r1)
            add_row(2, 4, "r1", r1, p * (2 + r1), p * (1 + r1), -1, false);
        for (int64_t r1 = 0; r1 <= p - 3; ++r1)
            add_row(2, 5, "r1", r1, p * (2 + r1), -1 + p * (1 + r1), 0, false);
        for (int64_t r1 = -1; r1 <= p - 4; ++r1)
            add_row(2, 6, "r1", r1, p * (2 + r1), -1 + p * (r1 + 2), -p, true);
    }

    Json config;
    config["p"] = p;
    config["f"] = 2;
    config["s"] = 0;
    config["thetas"] = theta_dlogs;
    config["field"] = json_field(k);
    Json results;
    results["rows"] = rows;
    return make_document("figure1", std::move(config), std::move(results),
                         json_calibration(cal, k));
}

Json figure3_table(int64_t p) {
    const FieldPtr k = field_make(p, 2);
    const Fq one{k, 1};
    const int64_t q = p * p;

    Json rows = Json::array();
    const auto add_row = [&](int family, int row, const char* pname, int64_t param, int64_t c,
                             int64_t keta, int64_t ketap, bool blue) {
        const TameType t = type_make(p, 2, keta, ketap);
        const InducedRep target = rep_make(p, 2, c, 0, one);
        const auto common = weights_intersect(weights_of_rep(target), weights_of_type_f2(t));
        Json r;
        r["family"] = family;
        r["row"] = row;
        r["param_name"] = pname;
        r["param"] = param;
        r["c"] = imod(c, q * q - 1);
        r["kEta"] = t.keta;
        r["kEtaP"] = t.ketap;
        r["blue"] = blue;
        r["weights"] = json_weights_sorted(common);
        rows.push_back(r);
    };
    for (int64_t r0 = 0; r0 <= p - 2; ++r0) add_row(1, 1, "r0", r0, 1 + r0, r0, -p, false);
    for (int64_t r0 = 1; r0 <= p - 2; ++r0) add_row(1, 2, "r0", r0, 1 + r0, r0 - p, 0, false);
    for (int64_t r0 = 0; r0 <= p - 3; ++r0) add_row(1, 3, "r0", r0, 1 + r0, 1 + r0 - p, -1, true);
    for (int64_t r1 = -1; r1 <= p - 3; ++r1)
        add_row(2, 4, "r1", r1, p * (2 + r1), p * (1 + r1), -1, false);
    for (int64_t r1 = 0; r1 <= p - 3; ++r1)
        add_row(2, 5, "r1", r1, p * (2 + r1), -1 + p * (1 + r1), 0, false);
    for (int64_t r1 = -1; r1 <= p - 4; ++r1)
        add_row(2, 6, "r1", r1, p * (2 + r1), -1 + p * (r1 + 2), -p, true);

    Json config;
    config["p"] = p;
    config["f"] = 2;
    config["s"] = 0;
    config["field"] = json_field(k);
    Json results;
    results["rows"] = rows;

    const FieldPtr kk = field_make(p, 2);
    const Context ctx = Context::make(kk, 2);
    return make_document("figure3", std::move(config), std::move(results),
                         json_calibration(calibrate(ctx), k));
}

Json nongeneric_table(int64_t p) {
    const FieldPtr k = field_make(p, 2);
    const Fq one{k, 1};
    const std::vector<int64_t> s_values{0, 7};

    Json entries = Json::array();
    const auto add_case = [&](int case_id, int64_t param, int64_t c) {
        for (const int64_t s : s_values) {
            const auto oracle = nongeneric_oracle(p, case_id, param, s);
            const auto computed = weights_of_rep(rep_make(p, 2, c, s, one));
            auto sorted_oracle = oracle;
            std::sort(sorted_oracle.begin(), sorted_oracle.end());
            auto sorted_computed = computed;
            std::sort(sorted_computed.begin(), sorted_computed.end());
            if (sorted_oracle != sorted_computed)
                throw InconsistentSystem("nongeneric list disagrees with the congruence scan");
            Json e;
            e["case"] = case_id;
            e["param"] = param;
            e["s"] = s;
            e["c"] = c;
            Json ws = Json::array();
            for (const auto& w : oracle) ws.push_back(json_weight(w));
            e["weights"] = ws;  // oracle order: the modified weight first
            entries.push_back(e);
        }
    };
    for (int64_t r0 = 1; r0 <= p - 2; ++r0) add_case(1, r0, 1 + r0);
    add_case(2, 0, 1);
    for (int64_t r1 = 0; r1 <= p - 3; ++r1) add_case(3, r1, p * (2 + r1));
    add_case(4, 0, p);

    Json config;
    config["p"] = p;
    config["f"] = 2;
    config["all_cases"] = true;
    config["s_values"] = s_values;
    config["field"] = json_field(k);
    Json results;
    results["entries"] = entries;

    const Context ctx = Context::make(field_make(p, 2), 2);
    return make_document("weights-rep", std::move(config), std::move(results),
                         json_calibration(calibrate(ctx), k));
}

std::string json_canonical(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace bk
