#include "nqg/json_io.hpp"

#include <algorithm>
#include <fstream>

namespace nqg {

namespace {

json point_to_json(const Point& p) {
    json a = json::array();
    for (Symbol c : p) a.push_back(static_cast<int>(c));
    return a;
}

Point point_from_json(const json& j) {
    Point p;
    for (const auto& c : j) p.push_back(static_cast<Symbol>(c.get<int>()));
    return p;
}

std::vector<Symbol> symbols_from_json(const json& j) {
    std::vector<Symbol> v;
    v.reserve(j.size());
    for (const auto& x : j) {
        const int s = x.get<int>();
        if (s < 0 || s > 255) throw usage_error("symbol out of range in input");
        v.push_back(static_cast<Symbol>(s));
    }
    return v;
}

}  // namespace

json to_json(const Hypercube& h) {
    json j;
    j["k"] = h.order();
    j["n"] = h.arity();
    j["values"] = json::array();
    for (Symbol v : h.values()) j["values"].push_back(static_cast<int>(v));
    return j;
}

Hypercube hypercube_from_json(const json& j) {
    return Hypercube(j.at("k").get<int>(), j.at("n").get<int>(), symbols_from_json(j.at("values")));
}

json to_json(const PartialQuasigroup& g) {
    json j;
    j["k"] = g.order();
    j["n"] = g.arity();
    if (g.is_box()) {
        const auto [a, b] = g.box_pair();
        j["domain"]["box"] = {static_cast<int>(a), static_cast<int>(b)};
    } else {
        json pts = json::array();
        for (const Point& p : g.points()) pts.push_back(point_to_json(p));
        j["domain"]["points"] = std::move(pts);
    }
    j["values"] = json::array();
    for (Symbol v : g.values()) j["values"].push_back(static_cast<int>(v));
    return j;
}

PartialQuasigroup partial_from_json(const json& j) {
    const int k = j.at("k").get<int>();
    const int n = j.at("n").get<int>();
    const auto& dom = j.at("domain");
    if (dom.contains("box")) {
        const auto& pr = dom.at("box");
        return PartialQuasigroup::box(k, n, static_cast<Symbol>(pr.at(0).get<int>()),
                                      static_cast<Symbol>(pr.at(1).get<int>()),
                                      symbols_from_json(j.at("values")));
    }
    std::vector<Point> pts;
    for (const auto& p : dom.at("points")) pts.push_back(point_from_json(p));
    return PartialQuasigroup::from_points(k, n, std::move(pts), symbols_from_json(j.at("values")));
}

json to_json(const Component& c) {
    json j;
    j["pair"] = {static_cast<int>(c.a), static_cast<int>(c.b)};
    j["points"] = json::array();
    for (const Point& p : c.points) j["points"].push_back(point_to_json(p));
    return j;
}

Component component_from_json(const json& j) {
    Component c;
    c.a = static_cast<Symbol>(j.at("pair").at(0).get<int>());
    c.b = static_cast<Symbol>(j.at("pair").at(1).get<int>());
    for (const auto& p : j.at("points")) c.points.push_back(point_from_json(p));
    std::sort(c.points.begin(), c.points.end());
    return c;
}

json to_json(const std::vector<Component>& cs) {
    json j = json::array();
    for (const auto& c : cs) j.push_back(to_json(c));
    return j;
}

std::vector<Component> components_from_json(const json& j) {
    std::vector<Component> cs;
    for (const auto& c : j) cs.push_back(component_from_json(c));
    return cs;
}

json to_json(const GammaReport& rep) {
    json j;
    j["k"] = rep.k;
    j["n"] = rep.n;
    json miss = json::array();
    for (std::size_t v = 0; v < rep.missing.size(); ++v)
        miss.push_back({{"point", point_to_json(rep.vertex_point(v))},
                        {"pair", {static_cast<int>(rep.missing[v].first),
                                  static_cast<int>(rep.missing[v].second)}}});
    j["missing"] = std::move(miss);
    json comps = json::array();
    for (const auto& comp : rep.components) {
        json verts = json::array();
        for (std::size_t v : comp) verts.push_back(point_to_json(rep.vertex_point(v)));
        comps.push_back(std::move(verts));
    }
    j["components"] = std::move(comps);
    j["choices"] = rep.choices;
    j["extension_count"] = decimal(rep.choice_product());
    return j;
}

json to_json(const CensusRecord& rec) {
    json j;
    j["n"] = rec.n;
    j["total"] = decimal(rec.total);
    j["semilinear"] = decimal(rec.semilinear);
    j["a_semilinear"] = {decimal(rec.a_semilinear[0]), decimal(rec.a_semilinear[1]),
                         decimal(rec.a_semilinear[2])};
    j["linear"] = decimal(rec.linear);
    j["reducible"] = decimal(rec.reducible);
    j["binary_root_total"] = decimal(rec.binary_root_total);
    const auto& roots = binary_loops_order4();
    json br = json::array();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        json e;
        e["root"] = to_json(roots[i])["values"];
        e["count"] = decimal(rec.binary_root[i]);
        br.push_back(std::move(e));
    }
    j["binary_root"] = std::move(br);
    j["higher_root"] = decimal(rec.higher_root);
    j["irreducible"] = decimal(rec.irreducible);
    j["irreducible_a_semilinear"] = {decimal(rec.irreducible_a_semilinear[0]),
                                     decimal(rec.irreducible_a_semilinear[1]),
                                     decimal(rec.irreducible_a_semilinear[2])};
    json asbr = json::array();
    for (int a = 0; a < 3; ++a) {
        json row = json::array();
        for (int r = 0; r < 4; ++r) row.push_back(decimal(rec.a_semilinear_binary_root[a][r]));
        asbr.push_back(std::move(row));
    }
    j["a_semilinear_binary_root"] = std::move(asbr);
    j["a_semilinear_higher_root"] = {decimal(rec.a_semilinear_higher_root[0]),
                                     decimal(rec.a_semilinear_higher_root[1]),
                                     decimal(rec.a_semilinear_higher_root[2])};
    j["violating"] = decimal(rec.violating);
    return j;
}

json to_json(const BoundsReport& rep) {
    json j;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["precision_bits"] = rep.precision_bits;
    if (rep.c_k) j["c_k"] = *rep.c_k;
    if (rep.upper_log2) j["upper_log2"] = *rep.upper_log2;
    if (rep.lower_log2_exponent) j["lower_log2_exponent"] = decimal(*rep.lower_log2_exponent);
    j["trd_upper"] = decimal(rep.trd_upper);
    if (rep.trd_lower) {
        j["trd_lower"] = decimal(*rep.trd_lower);
        j["trd_lower_generic"] = rep.trd_lower_generic;
    }
    return j;
}

json to_json(const AlphaReport& rep) {
    json j;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["k"] = rep.k;
    j["per_pair"] = rep.per_pair;
    j["alpha"] = rep.alpha;
    return j;
}

json recurrence_to_json(const std::vector<RecurrenceRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["n"] = r.n;
        j["ell_a"] = decimal(r.ell_a);
        j["r_a_star"] = decimal(r.r_a_star);
        j["r_a_0"] = decimal(r.r_a_0);
        j["r_star"] = decimal(r.r_star);
        j["r_0"] = decimal(r.r_0);
        j["p_a"] = decimal(r.p_a);
        j["p"] = decimal(r.p);
        j["Qprime"] = decimal(r.v);
        j["Q"] = decimal(r.q);
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string recurrence_to_csv(const std::vector<RecurrenceRow>& rows, bool intermediates) {
    std::string out = intermediates ? "n,ell_a,r_a_star,r_a_0,r_star,r_0,p_a,p,Qprime,Q\n"
                                    : "n,Qprime,Q\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + ',';
        if (intermediates)
            out += decimal(r.ell_a) + ',' + decimal(r.r_a_star) + ',' + decimal(r.r_a_0) + ',' +
                   decimal(r.r_star) + ',' + decimal(r.r_0) + ',' + decimal(r.p_a) + ',' +
                   decimal(r.p) + ',';
        out += decimal(r.v) + ',' + decimal(r.q) + '\n';
    }
    return out;
}

json family_report(const Hypercube& f, const std::vector<Component>& family,
                   FamilyStrategy strategy) {
    json j;
    switch (strategy) {
        case FamilyStrategy::pair_partition: j["strategy"] = "pair_partition"; break;
        case FamilyStrategy::greedy: j["strategy"] = "greedy"; break;
        case FamilyStrategy::exact: j["strategy"] = "exact"; break;
    }
    j["count"] = family.size();
    json sizes = json::array();
    for (const auto& c : family) sizes.push_back(c.points.size());
    j["sizes"] = std::move(sizes);
    // Universal cap: size-2^n members over k^n cells.
    j["limit"] = decimal(bigpow(BigCount(f.order()), static_cast<unsigned>(f.arity())) >>
                         static_cast<unsigned>(f.arity()));
    j["components"] = to_json(family);
    return j;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw usage_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

Hypercube load_hypercube(const std::string& path) {
    return hypercube_from_json(load_json(path));
}

}  // namespace nqg
