#include "ghcat/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ghcat {

Json scalar_to_json(const Scalar& s) {
    Json j = Json::array();
    for (const auto& [e, c] : s.terms()) j.push_back({rat_str(e), rat_str(c)});
    return j;
}

Scalar scalar_from_json(const Json& j) {
    if (!j.is_array()) fail(ErrKind::InputError, "scalar must be an array of pairs");
    std::vector<Scalar::Term> terms;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            fail(ErrKind::InputError, "scalar term must be [exponent, coefficient]");
        terms.push_back({rat_parse(p[0].get<std::string>()), rat_parse(p[1].get<std::string>())});
    }
    return Scalar::from_terms(std::move(terms));
}

Json combo_to_json(const Combo& x, const Category& C) {
    Json j = Json::array();
    for (const auto& [g, s] : x) j.push_back({C.gens[g].name, scalar_to_json(s)});
    return j;
}

Combo combo_from_json(const Json& j, const Category& C) {
    Combo x;
    for (const auto& p : j) {
        GenId g = C.find_gen(p[0].get<std::string>());
        if (g < 0) fail(ErrKind::InputError, "unknown generator '" + p[0].get<std::string>() + "'");
        Scalar s = scalar_from_json(p[1]);
        if (!s.is_zero()) x[g] = s;
    }
    return x;
}

Json barcode_to_json(const Barcode& b) {
    Json j = Json::array();
    for (const auto& e : b.entries) j.push_back(e ? rat_str(*e) : "inf");
    return j;
}

Barcode barcode_from_json(const Json& j) {
    std::vector<std::optional<Rat>> es;
    for (const auto& e : j) {
        std::string s = e.get<std::string>();
        if (s == "inf")
            es.push_back(std::nullopt);
        else
            es.push_back(rat_parse(s));
    }
    return Barcode::make(std::move(es));
}

std::string barcode_svg(const std::map<int, Barcode>& per_degree) {
    // scale: longest finite bar maps to 360px
    Rat longest(1);
    std::size_t rows = 0;
    for (const auto& [d, b] : per_degree) {
        rows += b.entries.size() + 1;
        for (const auto& e : b.entries)
            if (e && *e > longest) longest = *e;
    }
    double unit = 360.0 / longest.get_d();
    std::ostringstream out;
    int h = static_cast<int>(rows) * 18 + 30;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"460\" height=\"" << h << "\">\n";
    int y = 20;
    for (const auto& [d, b] : per_degree) {
        out << "  <text x=\"4\" y=\"" << y << "\" font-size=\"12\">degree " << d << "</text>\n";
        y += 18;
        for (const auto& e : b.entries) {
            double len = e ? e->get_d() * unit : 380.0;
            out << "  <line x1=\"70\" y1=\"" << y - 4 << "\" x2=\"" << 70 + len << "\" y2=\""
                << y - 4 << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
            if (!e) {
                out << "  <path d=\"M" << 70 + len << " " << y - 10 << " l10 6 l-10 6 z\"/>\n";
                out << "  <text x=\"" << 70 + len + 14 << "\" y=\"" << y << "\" font-size=\"11\">inf</text>\n";
            } else {
                out << "  <text x=\"" << 70 + len + 6 << "\" y=\"" << y << "\" font-size=\"11\">"
                    << rat_str(*e) << "</text>\n";
            }
            y += 18;
        }
    }
    out << "</svg>\n";
    return out.str();
}

Json complex_to_json(const FilteredComplex& c) {
    Json j;
    j["kind"] = "complex";
    j["energy_cap"] = rat_str(c.trunc.energy_cap);
    Json gens = Json::array();
    for (const auto& g : c.gens)
        gens.push_back({{"id", g.name}, {"degree", g.deg}, {"shift", rat_str(g.shift)}});
    j["generators"] = gens;
    Json diff = Json::array();
    for (const auto& [key, s] : c.diff)
        diff.push_back({c.gens[key.first].name, c.gens[key.second].name, scalar_to_json(s)});
    j["differential"] = diff;
    return j;
}

namespace {

int degree_from_json(const Json& j) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_string()) return std::stoi(j.get<std::string>());
    fail(ErrKind::InputError, "degree must be an integer or a numeric string");
}

} // namespace

FilteredComplex complex_from_json(const Json& j) {
    if (j.value("kind", "") != "complex") fail(ErrKind::InputError, "expected kind 'complex'");
    FilteredComplex c;
    c.trunc = Trunc::lambda0(rat_parse(j.value("energy_cap", "4")));
    for (const auto& g : j.at("generators"))
        c.gens.push_back({g.at("id").get<std::string>(), degree_from_json(g.at("degree")),
                          rat_parse(g.value("shift", "0"))});
    for (const auto& t : j.value("differential", Json::array())) {
        int src = c.find(t[0].get<std::string>());
        int dst = c.find(t[1].get<std::string>());
        if (src < 0 || dst < 0) fail(ErrKind::InputError, "differential names unknown generator");
        Scalar s = scalar_from_json(t[2]);
        if (!s.is_zero()) c.diff[{src, dst}] = s;
    }
    return c;
}

Json category_to_json(const Category& C) {
    Json j;
    j["kind"] = "category";
    j["objects"] = C.objects;
    j["grading_mod"] = C.grading_mod;
    j["arity_cap"] = C.arity_cap;
    j["energy_cap"] = rat_str(C.trunc.energy_cap);
    Json gens = Json::array();
    for (const auto& g : C.gens)
        gens.push_back({{"id", g.name},
                        {"src", C.objects[g.src]},
                        {"dst", C.objects[g.dst]},
                        {"degree", g.deg},
                        {"shift", rat_str(g.shift)}});
    j["generators"] = gens;
    Json ops = Json::array();
    for (const auto& [in, out] : C.ops) {
        Json o;
        o["arity"] = in.size();
        Json inputs = Json::array();
        for (GenId g : in) inputs.push_back(C.gens[g].name);
        o["inputs"] = inputs;
        Json outs = Json::array();
        for (const auto& [g, s] : out) outs.push_back({C.gens[g].name, scalar_to_json(s)});
        o["output"] = outs;
        ops.push_back(o);
    }
    j["ops"] = ops;
    if (!C.units.empty()) {
        Json u = Json::object();
        for (const auto& [c, e] : C.units) u[C.objects[c]] = C.gens[e].name;
        j["units"] = u;
    }
    if (!C.gap_monoid.empty()) {
        Json g = Json::array();
        for (const Rat& r : C.gap_monoid) g.push_back(rat_str(r));
        j["gap_monoid"] = g;
    }
    return j;
}

Category category_from_json(const Json& j) {
    if (j.value("kind", "") != "category") fail(ErrKind::InputError, "expected kind 'category'");
    Category C;
    C.trunc = Trunc::lambda0(rat_parse(j.value("energy_cap", "4")));
    C.grading_mod = j.value("grading_mod", 0);
    C.arity_cap = j.value("arity_cap", 4);
    for (const auto& o : j.at("objects")) C.add_object(o.get<std::string>());
    for (const auto& g : j.at("generators")) {
        ObId s = C.find_object(g.at("src").get<std::string>());
        ObId d = C.find_object(g.at("dst").get<std::string>());
        if (s < 0 || d < 0) fail(ErrKind::InputError, "generator names unknown object");
        C.add_gen(g.at("id").get<std::string>(), s, d, degree_from_json(g.at("degree")),
                  rat_parse(g.value("shift", "0")));
    }
    for (const auto& o : j.value("ops", Json::array())) {
        std::vector<GenId> in;
        for (const auto& nm : o.at("inputs")) {
            GenId g = C.find_gen(nm.get<std::string>());
            if (g < 0) fail(ErrKind::InputError, "op names unknown generator");
            in.push_back(g);
        }
        Combo out;
        for (const auto& p : o.at("output")) {
            GenId g = C.find_gen(p[0].get<std::string>());
            if (g < 0) fail(ErrKind::InputError, "op output names unknown generator");
            Scalar s = scalar_from_json(p[1]);
            if (!s.is_zero()) out[g] = s;
        }
        C.set_op(in, out);
    }
    if (j.contains("units"))
        for (auto it = j["units"].begin(); it != j["units"].end(); ++it) {
            ObId c = C.find_object(it.key());
            GenId e = C.find_gen(it.value().get<std::string>());
            if (c < 0 || e < 0) fail(ErrKind::InputError, "unit names unknown object/generator");
            C.units[c] = e;
        }
    for (const auto& g : j.value("gap_monoid", Json::array()))
        C.gap_monoid.push_back(rat_parse(g.get<std::string>()));
    return C;
}

Json functor_to_json(const Functor& f) {
    Json j;
    j["kind"] = "functor";
    j["loss"] = rat_str(f.loss);
    Json ob = Json::object();
    for (const auto& [a, b] : f.ob) ob[f.src->objects[a]] = f.dst->objects[b];
    j["objects"] = ob;
    Json comps = Json::array();
    for (const auto& [in, out] : f.comps) {
        Json c;
        Json inputs = Json::array();
        for (GenId g : in) inputs.push_back(f.src->gens[g].name);
        c["inputs"] = inputs;
        c["output"] = combo_to_json(out, *f.dst);
        comps.push_back(c);
    }
    j["components"] = comps;
    return j;
}

Functor functor_from_json(const Json& j, const Category& src, const Category& dst) {
    if (j.value("kind", "") != "functor") fail(ErrKind::InputError, "expected kind 'functor'");
    Functor f;
    f.src = &src;
    f.dst = &dst;
    f.loss = rat_parse(j.value("loss", "0"));
    for (auto it = j.at("objects").begin(); it != j.at("objects").end(); ++it) {
        ObId a = src.find_object(it.key());
        ObId b = dst.find_object(it.value().get<std::string>());
        if (a < 0 || b < 0) fail(ErrKind::InputError, "functor names unknown object");
        f.ob[a] = b;
    }
    for (const auto& c : j.value("components", Json::array())) {
        std::vector<GenId> in;
        for (const auto& nm : c.at("inputs")) {
            GenId g = src.find_gen(nm.get<std::string>());
            if (g < 0) fail(ErrKind::InputError, "component names unknown generator");
            in.push_back(g);
        }
        Combo out = combo_from_json(c.at("output"), dst);
        if (!combo_is_zero(out)) f.comps[in] = out;
    }
    return f;
}

Json witness_to_json(const Witness& w, const Category& C) {
    Json j;
    j["kind"] = "witness";
    j["c1"] = C.objects[w.c1];
    j["c2"] = C.objects[w.c2];
    j["t12"] = combo_to_json(w.t12, C);
    j["t21"] = combo_to_json(w.t21, C);
    j["s1"] = combo_to_json(w.s1, C);
    j["s2"] = combo_to_json(w.s2, C);
    j["eps1"] = rat_str(w.eps1);
    j["eps2"] = rat_str(w.eps2);
    return j;
}

Witness witness_from_json(const Json& j, const Category& C) {
    if (j.value("kind", "") != "witness") fail(ErrKind::InputError, "expected kind 'witness'");
    Witness w;
    ObId c1 = C.find_object(j.at("c1").get<std::string>());
    ObId c2 = C.find_object(j.at("c2").get<std::string>());
    if (c1 < 0 || c2 < 0) fail(ErrKind::InputError, "witness names unknown object");
    w.c1 = c1;
    w.c2 = c2;
    w.t12 = combo_from_json(j.value("t12", Json::array()), C);
    w.t21 = combo_from_json(j.value("t21", Json::array()), C);
    w.s1 = combo_from_json(j.value("s1", Json::array()), C);
    w.s2 = combo_from_json(j.value("s2", Json::array()), C);
    w.eps1 = rat_parse(j.value("eps1", "0"));
    w.eps2 = rat_parse(j.value("eps2", "0"));
    return w;
}

Json inf_witness_to_json(const InfWitness& w, const Category& C) {
    Json j;
    j["kind"] = "inf-witness";
    j["c1"] = C.objects[w.c1];
    j["c2"] = C.objects[w.c2];
    j["depth"] = w.depth();
    auto fam = [&](const std::vector<Combo>& f) {
        Json a = Json::array();
        for (const Combo& x : f) a.push_back(combo_to_json(x, C));
        return a;
    };
    j["t12"] = fam(w.t12);
    j["t21"] = fam(w.t21);
    j["s1"] = fam(w.s1);
    j["s2"] = fam(w.s2);
    j["eps1"] = rat_str(w.eps1);
    j["eps2"] = rat_str(w.eps2);
    return j;
}

InfWitness inf_witness_from_json(const Json& j, const Category& C) {
    if (j.value("kind", "") != "inf-witness")
        fail(ErrKind::InputError, "expected kind 'inf-witness'");
    InfWitness w;
    ObId c1 = C.find_object(j.at("c1").get<std::string>());
    ObId c2 = C.find_object(j.at("c2").get<std::string>());
    if (c1 < 0 || c2 < 0) fail(ErrKind::InputError, "witness names unknown object");
    w.c1 = c1;
    w.c2 = c2;
    auto fam = [&](const Json& a) {
        std::vector<Combo> f;
        for (const auto& x : a) f.push_back(combo_from_json(x, C));
        return f;
    };
    w.t12 = fam(j.at("t12"));
    w.t21 = fam(j.at("t21"));
    w.s1 = fam(j.at("s1"));
    w.s2 = fam(j.at("s2"));
    w.eps1 = rat_parse(j.value("eps1", "0"));
    w.eps2 = rat_parse(j.value("eps2", "0"));
    if (w.t21.size() != w.t12.size() || w.s1.size() != w.t12.size() ||
        w.s2.size() != w.t12.size())
        fail(ErrKind::InputError, "family depths disagree");
    return w;
}

Json report_to_json(const Report& r) {
    Json j;
    j["pass"] = r.pass();
    j["failures"] = r.failures();
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["what"] = c.what;
        e["ok"] = c.ok;
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(e);
    }
    j["checks"] = checks;
    return j;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrKind::InputError, "cannot open '" + path + "'");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) fail(ErrKind::InputError, "malformed JSON in '" + path + "'");
    return j;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrKind::InputError, "cannot open '" + path + "'");
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace ghcat
