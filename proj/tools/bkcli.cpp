#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bk/errors.hpp"
#include "bk/json_io.hpp"

using namespace bk;

namespace {

struct Opts {
    int64_t p = 5;
    int f = 2;
    int64_t r0 = 1;
    int64_t r1 = -1;
    int64_t s = 0;
    int64_t theta = 0;  // dlog of the unramified twist
    int64_t keta = 0;
    int64_t ketap = 1;
    int precision = 1;
    bool json = false;
    bool verify = false;
    bool all_cases = false;
    std::string out;
    std::string golden_dir;
    std::string config_path;
};

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--p", o.p, "prime p");
    sub->add_option("--f", o.f, "degree of the unramified base (only 2 is supported)");
    sub->add_option("--precision", o.precision, "series window multiplier");
    sub->add_flag("--json", o.json, "emit the machine-readable document");
    sub->add_option("--out", o.out, "write output to this path instead of stdout");
    sub->add_option("--config", o.config_path, "JSON file with default parameter values");
}

void add_target(CLI::App* sub, Opts& o) {
    sub->add_option("--r0", o.r0, "first digit parameter of the target");
    sub->add_option("--r1", o.r1, "second digit parameter of the target");
    sub->add_option("--s", o.s, "determinant twist of the target");
    sub->add_option("--theta", o.theta, "dlog of the unramified twist");
}

void add_type(CLI::App* sub, Opts& o) {
    sub->add_option("--kEta", o.keta, "exponent of the first tame character");
    sub->add_option("--kEtaP", o.ketap, "exponent of the second tame character");
}

void add_verify(CLI::App* sub, Opts& o) {
    sub->add_flag("--verify", o.verify, "compare against the golden corpus");
    sub->add_option("--golden-dir", o.golden_dir, "directory holding the golden corpus");
}

void apply_config(CLI::App* sub, Opts& o) {
    if (o.config_path.empty()) return;
    std::ifstream f(o.config_path);
    if (!f) throw std::domain_error("cannot read config file " + o.config_path);
    const Json cfg = Json::parse(f);
    const auto apply = [&](const char* flag, const char* key, auto& var) {
        using T = std::decay_t<decltype(var)>;
        const auto* opt = sub->get_option_no_throw(flag);
        if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
    };
    apply("--p", "p", o.p);
    apply("--f", "f", o.f);
    apply("--r0", "r0", o.r0);
    apply("--r1", "r1", o.r1);
    apply("--s", "s", o.s);
    apply("--theta", "theta", o.theta);
    apply("--kEta", "kEta", o.keta);
    apply("--kEtaP", "kEtaP", o.ketap);
    apply("--precision", "precision", o.precision);
    apply("--json", "json", o.json);
    apply("--out", "out", o.out);
}

void write_text(const Opts& o, const std::string& text) {
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) throw std::domain_error("cannot write " + o.out);
        f << text;
    } else {
        std::cout << text;
    }
}

void emit(const Opts& o, const Json& doc, const std::string& human) {
    write_text(o, o.json ? json_canonical(doc) : human);
}

int verify_against(const Json& fresh, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::domain_error("missing golden file " + path);
    const Json golden = Json::parse(f);
    if (golden == fresh) {
        std::cout << "PASS " << path << "\n";
        return 0;
    }
    throw InconsistentSystem("regenerated table differs from " + path);
}

std::string fq_str(const FieldPtr& k, int32_t rep) {
    if (rep == 0) return "0";
    const int64_t d = k->dlog(rep);
    if (d == 0) return "1";
    return "g^" + std::to_string(d);
}

std::string weight_str(const SerreWeight& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.r.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w.r[i]);
    }
    return s + ") * det^" + std::to_string(w.w);
}

std::string weights_str(std::vector<SerreWeight> ws) {
    std::sort(ws.begin(), ws.end());
    std::string s;
    for (const auto& w : ws) s += "  " + weight_str(w) + "\n";
    return s;
}

std::string engeance_str(const Engeance& e, const FieldPtr& k) {
    std::string s = "(";
    for (size_t i = 0; i < e.genres.size(); ++i) {
        if (i) s += ", ";
        s += genre_name(e.genres[i]);
    }
    s += ")  alpha=" + fq_str(k, e.alpha) + " alphaP=" + fq_str(k, e.alphaP) + "  a=(";
    for (size_t i = 0; i < e.a.size(); ++i) s += (i ? "," : "") + fq_str(k, e.a[i]);
    s += ")  aP=(";
    for (size_t i = 0; i < e.ap.size(); ++i) s += (i ? "," : "") + fq_str(k, e.ap[i]);
    return s + ")";
}

std::string ring_str(const PresentedRing& r) {
    switch (r.kind) {
        case PresentedRing::Kind::Zero:
            return "0";
        case PresentedRing::Kind::StrictSubring:
            return "strict subring of O[[X,Y,T]]/(XY + p)";
        case PresentedRing::Kind::XYplusPk:
            break;
    }
    std::string vars = "X,Y";
    for (int i = 1; i <= r.extra_vars; ++i) vars += ",T" + std::to_string(i);
    return "O[[" + vars + "]] / (XY + p" + (r.pexp > 1 ? "^" + std::to_string(r.pexp) : "") + ")";
}

// target parameters (r0, r1) give the character exponent c = (1+r0) + p(1+r1)
int64_t target_c(const Opts& o) { return (1 + o.r0) + o.p * (1 + o.r1); }

struct Session {
    FieldPtr k;
    Context ctx;
    Fq theta;

    explicit Session(const Opts& o)
        : k(field_make(o.p, 2)),
          ctx(Context::make(k, 2, o.precision)),
          theta{k, k->from_dlog(o.theta)} {
        if (o.f != 2) throw std::domain_error("only the quadratic base f = 2 is supported");
    }
};

Json config_echo(const Opts& o, bool with_target, bool with_type) {
    Json c;
    c["p"] = o.p;
    c["f"] = o.f;
    if (with_target) {
        c["r0"] = o.r0;
        c["r1"] = o.r1;
        c["s"] = o.s;
        c["theta"] = o.theta;
        c["c"] = target_c(o);
    }
    if (with_type) {
        c["kEta"] = o.keta;
        c["kEtaP"] = o.ketap;
    }
    c["precision"] = o.precision;
    return c;
}

int cmd_weights_rep(const Opts& o) {
    if (o.all_cases) {
        const Json doc = nongeneric_table(o.p);
        if (o.verify)
            return verify_against(doc,
                                  o.golden_dir + "/nongeneric_lists_p" + std::to_string(o.p) +
                                      ".json");
        emit(o, doc, json_canonical(doc));
        return 0;
    }
    const Session S(o);
    const InducedRep target = rep_make(o.p, 2, target_c(o), o.s, S.theta);
    const auto ws = weights_of_rep(target);
    const auto ng = identify_nongeneric(target);

    Json results;
    results["c"] = target.c;
    results["weights"] = json_weights_sorted(ws);
    results["nongeneric_case"] = ng.case_id;
    results["totally_nongeneric"] = ng.totally_nongeneric;
    results["modified"] = ng.case_id ? json_weight(ng.modified) : Json(nullptr);
    const Json doc = make_document("weights-rep", config_echo(o, true, false), results,
                                   json_calibration(calibrate(S.ctx), S.k));

    std::string human = std::to_string(ws.size()) + " weights for c=" +
                        std::to_string(target.c) + ", s=" + std::to_string(target.s) + ":\n" +
                        weights_str(ws);
    if (ng.case_id)
        human += "nongeneric case " + std::to_string(ng.case_id) +
                 ", modified weight " + weight_str(ng.modified) + "\n";
    emit(o, doc, human);
    return 0;
}

int cmd_weights_type(const Opts& o) {
    const Session S(o);
    const TameType t = type_make(o.p, 2, o.keta, o.ketap);
    const auto ws = weights_of_type_f2(t);
    Json results;
    results["weights"] = json_weights_sorted(ws);
    const Json doc = make_document("weights-type", config_echo(o, false, true), results,
                                   json_calibration(calibrate(S.ctx), S.k));
    emit(o, doc,
         std::to_string(ws.size()) + " weights for the type (" + std::to_string(t.keta) + ", " +
             std::to_string(t.ketap) + "):\n" + weights_str(ws));
    return 0;
}

int cmd_intersect(const Opts& o) {
    const Session S(o);
    const InducedRep target = rep_make(o.p, 2, target_c(o), o.s, S.theta);
    const TameType t = type_make(o.p, 2, o.keta, o.ketap);
    const auto wr = weights_of_rep(target);
    const auto wt = weights_of_type_f2(t);
    const auto common = weights_intersect(wr, wt);
    Json results;
    results["weights_rep"] = json_weights_sorted(wr);
    results["weights_type"] = json_weights_sorted(wt);
    results["common"] = json_weights_sorted(common);
    const Json doc = make_document("intersect", config_echo(o, true, true), results,
                                   json_calibration(calibrate(S.ctx), S.k));
    emit(o, doc, std::to_string(common.size()) + " common weights:\n" + weights_str(common));
    return 0;
}

int cmd_engeances(const Opts& o) {
    const Session S(o);
    const TameType t = type_make(o.p, 2, o.keta, o.ketap);
    const auto census = enumerate_engeances(t, S.theta, S.ctx);
    Json results;
    results["count"] = census.size();
    Json arr = Json::array();
    std::string human = std::to_string(census.size()) + " engeances:\n";
    for (const auto& en : census) {
        Json item;
        item["engeance"] = json_engeance(en.e, S.k);
        item["class"] = json_class(class_canonical(en.cls, S.ctx.q), S.k);
        arr.push_back(item);
        human += "  " + engeance_str(en.e, S.k) + "\n";
    }
    results["engeances"] = arr;
    Json cfg = config_echo(o, false, true);
    cfg["theta"] = o.theta;
    const Json doc = make_document("engeances", std::move(cfg), results,
                                   json_calibration(calibrate(S.ctx), S.k));
    emit(o, doc, human);
    return 0;
}

int cmd_residual(const Opts& o) {
    const Session S(o);
    const Calibration cal = calibrate(S.ctx);
    const InducedRep target = rep_make(o.p, 2, target_c(o), o.s, S.theta);
    const TameType t = type_make(o.p, 2, o.keta, o.ketap);
    const ResidualClass cls = class_of_rep(target, cal);
    const auto shape = kisin_shape(enumerate_engeances(t, S.theta, S.ctx), cls, S.ctx);

    Json results;
    results["class"] = json_class(cls, S.k);
    results["canonical_class"] = json_class(class_canonical(cls, S.ctx.q), S.k);
    results["shape"] = shape.shape == Shape::Point      ? "point"
                       : shape.shape == Shape::ProjLine ? "line"
                                                        : "empty";
    Json members = Json::array();
    std::string human = "class h=" + std::to_string(cls.h) + " delta=" + fq_str(S.k, cls.delta) +
                        "\nshape: " + results["shape"].get<std::string>() + ", " +
                        std::to_string(shape.members.size()) + " member(s)\n";
    for (const auto& m : shape.members) {
        members.push_back(json_engeance(m.e, S.k));
        human += "  " + engeance_str(m.e, S.k) + "\n";
    }
    results["members"] = members;
    const Json doc = make_document("residual", config_echo(o, true, true), results,
                                   json_calibration(cal, S.k));
    emit(o, doc, human);
    return 0;
}

int cmd_ext_tangent(const Opts& o) {
    const Session S(o);
    const Calibration cal = calibrate(S.ctx);
    const InducedRep target = rep_make(o.p, 2, target_c(o), o.s, S.theta);
    const TameType t = type_make(o.p, 2, o.keta, o.ketap);
    const auto shape =
        kisin_shape(enumerate_engeances(t, S.theta, S.ctx), class_of_rep(target, cal), S.ctx);
    if (shape.shape != Shape::Point)
        throw std::domain_error("the fibre over this target is not a single point");

    const auto duals = point_directions(t, shape.members.front().e, S.ctx);
    const auto res = companion_reduce_dual(duals.front(), S.ctx).first;
    const auto classes = tangent_images(duals, S.ctx);
    const int rank = ext_rank(classes, S.k);

    Json results;
    results["h"] = res.h;
    results["delta"] = json_fq(S.k, res.delta);
    Json arr = Json::array();
    for (const auto& c : classes) arr.push_back(json_ext_class(c, S.k));
    results["classes"] = arr;
    results["rank"] = rank;
    results["independent"] = (rank == (int)classes.size());
    const Json doc = make_document("ext-tangent", config_echo(o, true, true), results,
                                   json_calibration(cal, S.k));

    std::string human = "companion h=" + std::to_string(res.h) + " delta=" +
                        fq_str(S.k, res.delta) + "\n";
    for (size_t i = 0; i < classes.size(); ++i) {
        human += "class " + std::to_string(i) + ": first:";
        for (const auto& [e, c] : classes[i].first)
            human += " " + fq_str(S.k, c) + " v^" + std::to_string(e);
        human += "  second:";
        for (const auto& [e, c] : classes[i].second)
            human += " " + fq_str(S.k, c) + " v^" + std::to_string(e);
        human += "\n";
    }
    human += "rank " + std::to_string(rank) + (rank == (int)classes.size() ? " (independent)\n"
                                                                           : " (dependent)\n");
    emit(o, doc, human);
    return 0;
}

int cmd_defring(const Opts& o) {
    const Session S(o);
    const Calibration cal = calibrate(S.ctx);
    const InducedRep target = rep_make(o.p, 2, target_c(o), o.s, S.theta);
    const TameType t = type_make(o.p, 2, o.keta, o.ketap);
    const PresentedRing ring = deformation_ring(target, t, S.ctx, cal, true);
    const auto common = weights_intersect(weights_of_rep(target), weights_of_type_f2(t));

    Json results;
    results["ring"] = json_ring(ring);
    results["theorem_ring"] = json_ring(theorem_ring(target, t));
    results["common_weights"] = json_weights_sorted(common);
    results["mu"] = ring.kind == PresentedRing::Kind::StrictSubring
                        ? Json(nullptr)
                        : Json(hs_multiplicity(ring));
    const Json doc = make_document("defring", config_echo(o, true, true), results,
                                   json_calibration(cal, S.k));
    std::string human = "ring: " + ring_str(ring) + "\ncommon weights:\n" + weights_str(common);
    emit(o, doc, human);
    return 0;
}

int cmd_bm_check(const Opts& o) {
    const Session S(o);
    const Calibration cal = calibrate(S.ctx);
    const InducedRep target = rep_make(o.p, 2, target_c(o), o.s, S.theta);
    const BMReport report = bm_check(target, S.ctx, cal);

    Json results;
    results["report"] = json_bm_report(report, S.k);
    const Json doc = make_document("bm-check", config_echo(o, true, false), results,
                                   json_calibration(cal, S.k));
    std::string human = "target c=" + std::to_string(target.c) + " s=" + std::to_string(target.s) +
                        ": " + std::to_string(report.lines.size()) + " contributing type(s), " +
                        (report.all_consistent ? "all consistent" : "INCONSISTENT") + "\n" +
                        "certified " + std::to_string(report.certified.size()) + "/" +
                        std::to_string(report.weights.size()) + " weights\n";
    if (!report.uncovered.empty()) human += "uncovered:\n" + weights_str(report.uncovered);
    emit(o, doc, human);
    return 0;
}

int cmd_figure(const Opts& o, int which) {
    const Json doc = which == 1 ? figure1_table(o.p, o.precision) : figure3_table(o.p);
    if (o.verify)
        return verify_against(doc, o.golden_dir + "/figure" + std::to_string(which) + "_p" +
                                       std::to_string(o.p) + ".json");
    emit(o, doc, json_canonical(doc));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Opts o;
    CLI::App app{
        "Exact computations of weights, engeances, extension classes and "
        "deformation-ring labels for induced representations over an unramified "
        "quadratic base"};
    app.require_subcommand(1);

    CLI::App* weights_rep = app.add_subcommand("weights-rep", "weights of an induced target");
    add_common(weights_rep, o);
    add_target(weights_rep, o);
    add_verify(weights_rep, o);
    weights_rep->add_flag("--all-cases", o.all_cases,
                          "emit the full nongeneric weight tables for this p");

    CLI::App* weights_type = app.add_subcommand("weights-type", "weights of a tame type");
    add_common(weights_type, o);
    add_type(weights_type, o);

    CLI::App* intersect = app.add_subcommand("intersect", "common weights of target and type");
    add_common(intersect, o);
    add_target(intersect, o);
    add_type(intersect, o);

    CLI::App* engeances = app.add_subcommand("engeances", "census of a tame type");
    add_common(engeances, o);
    add_type(engeances, o);
    engeances->add_option("--theta", o.theta, "dlog of the determinant unit");

    CLI::App* residual = app.add_subcommand("residual", "residual class and fibre of a target");
    add_common(residual, o);
    add_target(residual, o);
    add_type(residual, o);

    CLI::App* ext_tangent =
        app.add_subcommand("ext-tangent", "extension classes of a one-point fibre");
    add_common(ext_tangent, o);
    add_target(ext_tangent, o);
    add_type(ext_tangent, o);

    CLI::App* defring = app.add_subcommand("defring", "deformation-ring label of (target, type)");
    add_common(defring, o);
    add_target(defring, o);
    add_type(defring, o);

    CLI::App* bm = app.add_subcommand("bm-check", "multiplicity audit over every type");
    add_common(bm, o);
    add_target(bm, o);

    CLI::App* fig1 = app.add_subcommand("figure1", "the engeance table");
    add_common(fig1, o);
    add_verify(fig1, o);

    CLI::App* fig3 = app.add_subcommand("figure3", "the common-weight table");
    add_common(fig3, o);
    add_verify(fig3, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        apply_config(sub, o);
        if (o.verify && o.golden_dir.empty())
            throw std::domain_error("--verify needs --golden-dir");

        if (sub == weights_rep) return cmd_weights_rep(o);
        if (sub == weights_type) return cmd_weights_type(o);
        if (sub == intersect) return cmd_intersect(o);
        if (sub == engeances) return cmd_engeances(o);
        if (sub == residual) return cmd_residual(o);
        if (sub == ext_tangent) return cmd_ext_tangent(o);
        if (sub == defring) return cmd_defring(o);
        if (sub == bm) return cmd_bm_check(o);
        if (sub == fig1) return cmd_figure(o, 1);
        if (sub == fig3) return cmd_figure(o, 3);
        throw std::domain_error("unknown subcommand");
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return 3;
    }
}
