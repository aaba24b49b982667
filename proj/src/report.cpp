#include "varcount/report.hpp"

#include <json.hpp>

#include <sstream>

namespace varcount {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json mpz_list(const std::vector<mpz_class>& xs) {
    ordered_json a = ordered_json::array();
    for (const auto& x : xs) a.push_back(x.get_str());
    return a;
}

mpz_class mpz_from(const ordered_json& j, const char* what) {
    if (!j.is_string()) throw error(errc::syntax_error, std::string(what) + " must be a decimal string");
    try {
        return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw error(errc::syntax_error, std::string(what) + " is not a decimal integer");
    }
}

std::vector<mpz_class> mpz_list_from(const ordered_json& j, const char* what) {
    if (!j.is_array()) throw error(errc::syntax_error, std::string(what) + " must be an array");
    std::vector<mpz_class> out;
    for (const auto& x : j) out.push_back(mpz_from(x, what));
    return out;
}

}  // namespace

std::string report_to_json(const CountReport& rep) {
    const Field& F = *rep.field;
    ordered_json j;
    j["field"]["p"] = F.p();
    j["field"]["n"] = F.n();
    if (F.n() > 1) {
        ordered_json mod = ordered_json::array();
        for (uint32_t c : F.modulus()) mod.push_back(c);
        j["field"]["modulus"] = mod;
    }
    j["structure"]["m"] = rep.m;
    j["structure"]["t"] = rep.t;
    j["structure"]["r"] = rep.r;
    j["structure"]["n"] = rep.nvar;
    j["alpha"] = rep.alpha ? ordered_json(rep.alpha->str()) : ordered_json(nullptr);
    j["levels"] = ordered_json::array();
    for (const auto& lv : rep.levels) {
        ordered_json jl;
        jl["l"] = lv.l;
        jl["d"] = mpz_list(lv.snf.d);
        jl["s"] = lv.s;
        jl["gcds"] = mpz_list(lv.gcds);
        jl["S_sizes"] = mpz_list(lv.set_sizes);
        jl["N_l"] = lv.N.get_str();
        jl["term"] = lv.term.get_str();
        jl["path"] = level_path_name(lv.path);
        j["levels"].push_back(std::move(jl));
    }
    j["includes_zero_level"] = rep.includes_zero_level;
    j["zero_term"] = rep.zero_term.get_str();
    j["total"] = rep.total.get_str();
    ordered_json lvl_ns = ordered_json::array();
    for (const auto& lv : rep.levels) lvl_ns.push_back(std::to_string(lv.ns));
    j["timings"]["level_ns"] = lvl_ns;
    j["timings"]["total_ns"] = std::to_string(rep.total_ns);
    return j.dump(2) + "\n";
}

CountReport report_from_json(const std::string& text) try {
    ordered_json j = ordered_json::parse(text);
    auto need = [&](const ordered_json& o, const char* key) -> const ordered_json& {
        if (!o.is_object() || !o.contains(key))
            throw error(errc::syntax_error, std::string("missing key '") + key + "'");
        return o[key];
    };

    CountReport rep;
    const auto& jf = need(j, "field");
    std::optional<std::vector<long long>> modulus;
    if (jf.contains("modulus") && !jf["modulus"].is_null())
        modulus = jf["modulus"].get<std::vector<long long>>();
    rep.field = std::make_shared<const Field>(need(jf, "p").get<uint64_t>(),
                                              need(jf, "n").get<int>(), std::move(modulus));

    const auto& js = need(j, "structure");
    rep.m = need(js, "m").get<int>();
    rep.t = need(js, "t").get<int>();
    rep.r = need(js, "r").get<std::vector<int>>();
    rep.nvar = need(js, "n").get<std::vector<int>>();

    const auto& ja = need(j, "alpha");
    if (!ja.is_null()) rep.alpha = rep.field->parse_element(ja.get<std::string>());

    for (const auto& jl : need(j, "levels")) {
        LevelData lv;
        lv.l = need(jl, "l").get<int>();
        lv.snf.d = mpz_list_from(need(jl, "d"), "d");
        lv.s = need(jl, "s").get<int>();
        lv.gcds = mpz_list_from(need(jl, "gcds"), "gcds");
        lv.set_sizes = mpz_list_from(need(jl, "S_sizes"), "S_sizes");
        lv.N = mpz_from(need(jl, "N_l"), "N_l");
        lv.term = mpz_from(need(jl, "term"), "term");
        const std::string path = need(jl, "path").get<std::string>();
        if (path == "general") lv.path = LevelPath::general;
        else if (path == "closed_form") lv.path = LevelPath::closed_form;
        else throw error(errc::syntax_error, "unknown path '" + path + "'");
        rep.levels.push_back(std::move(lv));
    }

    rep.includes_zero_level = need(j, "includes_zero_level").get<bool>();
    rep.zero_term = mpz_from(need(j, "zero_term"), "zero_term");
    rep.total = mpz_from(need(j, "total"), "total");

    const auto& jt = need(j, "timings");
    const auto lvl_ns = mpz_list_from(need(jt, "level_ns"), "level_ns");
    if (lvl_ns.size() != rep.levels.size())
        throw error(errc::syntax_error, "level_ns length does not match levels");
    for (size_t i = 0; i < lvl_ns.size(); ++i) rep.levels[i].ns = lvl_ns[i].get_ui();
    rep.total_ns = mpz_from(need(jt, "total_ns"), "total_ns").get_ui();
    return rep;
} catch (const nlohmann::json::exception& e) {
    throw error(errc::syntax_error, e.what());
}

std::string report_to_text(const CountReport& rep) {
    const Field& F = *rep.field;
    std::ostringstream out;
    out << "field: F_" << F.q();
    if (F.n() > 1) {
        out << " = F_" << F.p() << "[x]/(";
        bool first = true;
        for (int i = F.n(); i >= 0; --i) {
            uint32_t c = F.modulus()[size_t(i)];
            if (c == 0) continue;
            if (!first) out << " + ";
            first = false;
            if (c != 1 || i == 0) out << c;
            if (i > 0) out << (c != 1 ? "*x" : "x");
            if (i > 1) out << "^" << i;
        }
        out << ")";
    }
    out << "\n";
    out << "structure: m=" << rep.m << " t=" << rep.t << " r=(";
    for (size_t i = 0; i < rep.r.size(); ++i) out << (i ? "," : "") << rep.r[i];
    out << ") n=(";
    for (size_t i = 0; i < rep.nvar.size(); ++i) out << (i ? "," : "") << rep.nvar[i];
    out << ")\n";
    if (rep.alpha) out << "alpha: " << rep.alpha->str() << "\n";
    for (const auto& lv : rep.levels) {
        out << "level " << lv.l << ": d=(";
        for (size_t i = 0; i < lv.snf.d.size(); ++i) out << (i ? "," : "") << lv.snf.d[i];
        out << ") s=" << lv.s << " gcds=(";
        for (size_t i = 0; i < lv.gcds.size(); ++i) out << (i ? "," : "") << lv.gcds[i];
        out << ") N_" << lv.l << "=" << lv.N << " term=" << lv.term << " ["
            << level_path_name(lv.path) << "]\n";
    }
    if (rep.includes_zero_level) out << "zero level term: " << rep.zero_term << "\n";
    out << "total = " << rep.total << "\n";
    return out.str();
}

}  // namespace varcount
