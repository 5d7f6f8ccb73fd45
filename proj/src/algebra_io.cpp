#include "hopfinv/algebra_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hopfinv {

using json = nlohmann::ordered_json;

std::string algebra_to_json(const HopfAlgebra& H) {
    json j;
    j["name"] = H.name();
    j["dim"] = H.dim();
    j["cyclotomic_order"] = H.order();
    json par = json::array();
    for (int i = 0; i < H.dim(); ++i) par.push_back(H.parity(i));
    j["parity"] = par;
    json m = json::array(), c = json::array(), u = json::array(), e = json::array(), s = json::array();
    for (int a = 0; a < H.dim(); ++a) {
        for (int b = 0; b < H.dim(); ++b)
            for (auto& t : H.product(a, b)) m.push_back({a, b, t.index, t.c.to_string()});
        for (auto& t : H.coproduct(a)) c.push_back({a, t.left, t.right, t.c.to_string()});
        if (!H.unit()[a].is_zero()) u.push_back({a, H.unit()[a].to_string()});
        if (!H.counit()[a].is_zero()) e.push_back({a, H.counit()[a].to_string()});
        for (int k = 0; k < H.dim(); ++k)
            if (!H.antipode()[a][k].is_zero()) s.push_back({a, k, H.antipode()[a][k].to_string()});
    }
    j["mult"] = m;
    j["comult"] = c;
    j["unit"] = u;
    j["counit"] = e;
    j["antipode"] = s;
    // one entry per line keeps the files diffable
    std::ostringstream os;
    os << "{\n";
    bool first = true;
    for (auto& [k, v] : j.items()) {
        os << (first ? "" : ",\n") << "  " << json(k).dump() << ": ";
        first = false;
        if (v.is_array() && !v.empty() && v[0].is_array()) {
            os << "[\n";
            for (std::size_t i = 0; i < v.size(); ++i) os << "    " << v[i].dump() << (i + 1 < v.size() ? ",\n" : "\n");
            os << "  ]";
        } else {
            os << v.dump();
        }
    }
    os << "\n}\n";
    return os.str();
}

HopfAlgebra algebra_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        int dim = j.at("dim").get<int>();
        int order = j.at("cyclotomic_order").get<int>();
        if (order < 1) throw ParseError("cyclotomic_order must be positive");
        auto par = j.at("parity").get<std::vector<int>>();
        if (static_cast<int>(par.size()) != dim) throw ParseError("parity has the wrong length");
        std::vector<std::uint8_t> p;
        for (int x : par) {
            if (x != 0 && x != 1) throw ParseError("parity entries must be 0 or 1");
            p.push_back(static_cast<std::uint8_t>(x));
        }
        HopfAlgebra H(j.value("name", std::string("file")), order, p);
        auto idx = [&](const json& v) {
            int i = v.get<int>();
            if (i < 0 || i >= dim) throw ParseError("basis index " + std::to_string(i) + " out of range");
            return i;
        };
        auto sc = [&](const json& v) { return Scalar::parse(v.get<std::string>(), order); };
        for (auto& t : j.at("mult")) H.add_mult(idx(t.at(0)), idx(t.at(1)), idx(t.at(2)), sc(t.at(3)));
        for (auto& t : j.at("comult")) H.add_comult(idx(t.at(0)), idx(t.at(1)), idx(t.at(2)), sc(t.at(3)));
        for (auto& t : j.at("unit")) H.set_unit(idx(t.at(0)), sc(t.at(1)));
        for (auto& t : j.at("counit")) H.set_counit(idx(t.at(0)), sc(t.at(1)));
        for (auto& t : j.at("antipode")) H.set_antipode(idx(t.at(0)), idx(t.at(1)), sc(t.at(2)));
        H.finalize();
        return H;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

HopfAlgebra load_algebra(const std::string& path, bool verify) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    HopfAlgebra H = algebra_from_json(ss.str());
    if (verify) {
        auto rep = verify_axioms(H);
        if (!rep.ok()) throw Error("AxiomFailure", path + "\n" + rep.to_string());
    }
    return H;
}

void save_algebra(const HopfAlgebra& H, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << algebra_to_json(H);
}

}  // namespace hopfinv
