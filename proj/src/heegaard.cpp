#include "hopfinv/heegaard.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include <gmpxx.h>

#include "json.hpp"

namespace hopfinv {

using nlohmann::json;

bool Diagram::operator==(const Diagram& o) const {
    return genus == o.genus && framed == o.framed && upper == o.upper && lower == o.lower &&
           crossings == o.crossings;
}

Location locate(const Diagram& d, Side side, int id) {
    const auto& cs = d.circles(side);
    for (std::size_t c = 0; c < cs.size(); ++c)
        for (std::size_t k = 0; k < cs[c].crossings.size(); ++k)
            if (cs[c].crossings[k] == id) return {static_cast<int>(c), static_cast<int>(k)};
    return {};
}

std::string ValidationReport::to_string() const {
    if (problems.empty()) return "valid\n";
    std::string s;
    for (auto& p : problems) s += "  " + p + "\n";
    return s;
}

ValidationReport validate_diagram(const Diagram& d) {
    ValidationReport r;
    auto bad = [&](std::string s) { r.problems.push_back(std::move(s)); };
    if (d.genus < 0) bad("negative genus");
    if (static_cast<int>(d.upper.size()) != d.genus)
        bad("expected " + std::to_string(d.genus) + " upper circles, found " + std::to_string(d.upper.size()));
    if (static_cast<int>(d.lower.size()) != d.genus)
        bad("expected " + std::to_string(d.genus) + " lower circles, found " + std::to_string(d.lower.size()));

    for (Side side : {Side::Upper, Side::Lower}) {
        const char* tag = side == Side::Upper ? "upper" : "lower";
        std::map<int, int> seen;
        const auto& cs = d.circles(side);
        for (std::size_t c = 0; c < cs.size(); ++c)
            for (int id : cs[c].crossings) {
                if (!d.crossings.count(id))
                    bad(std::string(tag) + " circle " + std::to_string(c) + " references unknown crossing " +
                        std::to_string(id));
                if (seen.count(id))
                    bad("crossing " + std::to_string(id) + " appears twice on the " + tag + " side (circles " +
                        std::to_string(seen[id]) + " and " + std::to_string(c) + ")");
                seen[id] = static_cast<int>(c);
            }
        for (auto& [id, x] : d.crossings)
            if (!seen.count(id)) bad("crossing " + std::to_string(id) + " is on no " + tag + " circle");
    }

    std::set<int> tparity;
    for (auto* cs : {&d.upper, &d.lower})
        for (auto& c : *cs) tparity.insert(((c.theta2 % 2) + 2) % 2);
    if (tparity.size() > 1) bad("theta2 parity differs between circles");

    std::set<int> sparity;
    for (auto& [id, x] : d.crossings) {
        if (x.eps != 1 && x.eps != -1) bad("crossing " + std::to_string(id) + " has eps " + std::to_string(x.eps));
        sparity.insert(((x.s + (x.eps == 1 ? 0 : 1)) % 2 + 2) % 2);
    }
    if (sparity.size() > 1) bad("antipode exponent parity is not tied to the intersection sign uniformly");
    return r;
}

namespace {

const json& need(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<Circle> circles_from(const json& arr, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<Circle> out;
    for (auto& c : arr) {
        Circle x;
        x.theta2 = need(c, "theta2").get<int>();
        x.crossings = need(c, "crossings").get<std::vector<int>>();
        out.push_back(std::move(x));
    }
    return out;
}

json circles_to(const std::vector<Circle>& cs) {
    json a = json::array();
    for (auto& c : cs) a.push_back({{"theta2", c.theta2}, {"crossings", c.crossings}});
    return a;
}

}  // namespace

std::string diagram_to_json(const Diagram& d) {
    json j;
    if (!d.name.empty()) j["name"] = d.name;
    j["genus"] = d.genus;
    j["framed"] = d.framed;
    j["upper"] = circles_to(d.upper);
    j["lower"] = circles_to(d.lower);
    json cr = json::array();
    for (auto& [id, x] : d.crossings) cr.push_back({{"id", id}, {"s", x.s}, {"t", x.t}, {"eps", x.eps}});
    j["crossings"] = cr;
    return j.dump(2) + "\n";
}

Diagram diagram_from_json(const std::string& text) {
    Diagram d;
    try {
        json j = json::parse(text);
        if (j.contains("name")) d.name = j["name"].get<std::string>();
        d.genus = need(j, "genus").get<int>();
        d.framed = j.value("framed", false);
        d.upper = circles_from(need(j, "upper"), "upper");
        d.lower = circles_from(need(j, "lower"), "lower");
        for (auto& c : need(j, "crossings")) {
            int id = need(c, "id").get<int>();
            if (d.crossings.count(id)) throw ParseError("duplicate crossing id " + std::to_string(id));
            d.crossings[id] = {need(c, "s").get<int>(), c.value("t", 0), need(c, "eps").get<int>()};
        }
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    auto rep = validate_diagram(d);
    if (!rep.ok()) throw Error("InvalidDiagram", "\n" + rep.to_string());
    return d;
}

Diagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return diagram_from_json(ss.str());
}

void save_diagram(const Diagram& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << diagram_to_json(d);
}

std::vector<std::vector<long>> intersection_matrix(const Diagram& d) {
    std::vector<std::vector<long>> m(d.genus, std::vector<long>(d.genus, 0));
    for (auto& [id, x] : d.crossings) {
        auto l = locate(d, Side::Lower, id), u = locate(d, Side::Upper, id);
        m[l.circle][u.circle] += x.eps;
    }
    return m;
}

long integer_determinant(const std::vector<std::vector<long>>& m0) {
    // Bareiss, exact in every intermediate step
    int n = static_cast<int>(m0.size());
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = m0[i][j];
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    mpz_class det = m[n - 1][n - 1] * sign;
    return det.get_si();
}

namespace {

int permutation_sign(std::vector<int> key) {
    int sign = 1;
    for (std::size_t i = 0; i < key.size(); ++i)
        for (std::size_t j = i + 1; j < key.size(); ++j)
            if (key[i] > key[j]) sign = -sign;
    return sign;
}

int sort_sign(const std::vector<Circle>& cs) {
    std::vector<int> key;
    for (std::size_t c = 0; c < cs.size(); ++c)
        key.push_back(cs[c].crossings.empty() ? std::numeric_limits<int>::max() - static_cast<int>(cs.size()) +
                                                    static_cast<int>(c)
                                              : *std::min_element(cs[c].crossings.begin(), cs[c].crossings.end()));
    return permutation_sign(key);
}

}  // namespace

int canonical_sign(const Diagram& d) {
    long det = integer_determinant(intersection_matrix(d));
    if (det > 0) return 1;
    if (det < 0) return -1;
    // Degenerate pairing: the surface classes are not recoverable from the
    // crossing data, so fall back to ordering circles by their smallest
    // crossing id. Still odd under swaps of two circles.
    return sort_sign(d.upper) * sort_sign(d.lower);
}

// ---- conventions --------------------------------------------------------

const std::vector<std::string>& ConventionRecord::layouts() {
    static const std::vector<std::string> l{"lower_first", "upper_first", "lower_upper_pairs", "upper_lower_pairs"};
    return l;
}

std::string ConventionRecord::to_json() const {
    json j;
    j["a_inverse"] = hopf.a_inverse;
    j["mu_side"] = std::string(1, hopf.mu_side);
    j["mu_sign"] = hopf.mu_sign;
    j["e_side"] = std::string(1, hopf.e_side);
    j["e_sign"] = hopf.e_sign;
    j["theta_parity"] = theta_parity;
    j["s_parity"] = s_parity;
    j["spiral_direction"] = spiral_direction;
    j["reversal_sign"] = reversal_sign;
    j["sign_normalization"] = sign_normalization;
    return j.dump(2) + "\n";
}

ConventionRecord ConventionRecord::from_json(const std::string& text) {
    ConventionRecord r;
    try {
        json j = json::parse(text);
        r.hopf.a_inverse = need(j, "a_inverse").get<bool>();
        auto side = [&](const char* k) {
            auto s = need(j, k).get<std::string>();
            if (s != "L" && s != "R") throw ParseError(std::string(k) + " must be L or R");
            return s[0];
        };
        auto sign = [&](const char* k) {
            int v = need(j, k).get<int>();
            if (v != 1 && v != -1) throw ParseError(std::string(k) + " must be +1 or -1");
            return v;
        };
        auto bit = [&](const char* k) {
            int v = need(j, k).get<int>();
            if (v != 0 && v != 1) throw ParseError(std::string(k) + " must be 0 or 1");
            return v;
        };
        r.hopf.mu_side = side("mu_side");
        r.hopf.mu_sign = sign("mu_sign");
        r.hopf.e_side = side("e_side");
        r.hopf.e_sign = sign("e_sign");
        r.theta_parity = bit("theta_parity");
        r.s_parity = bit("s_parity");
        r.spiral_direction = sign("spiral_direction");
        r.reversal_sign = sign("reversal_sign");
        r.sign_normalization = need(j, "sign_normalization").get<std::string>();
        const auto& l = layouts();
        if (std::find(l.begin(), l.end(), r.sign_normalization) == l.end())
            throw ParseError("unknown sign_normalization '" + r.sign_normalization + "'");
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    } catch (const Error& e) {
        if (e.kind() == "ParseError") throw;
        throw ParseError(e.what());
    }
    return r;
}

ConventionRecord ConventionRecord::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ConventionUnpinned", "no convention record at " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

// ---- moves ---------------------------------------------------------------

namespace {

std::string circle_ref(Side side, int c) { return (side == Side::Upper ? "U" : "L") + std::to_string(c); }

}  // namespace

std::string Move::to_string() const {
    switch (kind) {
        case Kind::Reverse: return "reverse:" + circle_ref(side, circle);
        case Kind::Isotopy: return "isotopy:" + circle_ref(side, circle) + (dir < 0 ? ":-1" : "");
        case Kind::Spiral: return "spiral:" + circle_ref(side, circle) + (dir < 0 ? ":-1" : ":+1");
        case Kind::Slide:
            return "slide:" + circle_ref(side, circle) + ":" + circle_ref(side, over) + ":" + std::to_string(gap) +
                   ":" + std::to_string(band) + (rev ? ":rev" : "");
        case Kind::Stabilize: return "stabilize";
        case Kind::Destabilize:
            return "destabilize:" + circle_ref(Side::Upper, circle) + ":" + circle_ref(Side::Lower, over);
    }
    return {};
}

Move Move::parse(const std::string& spec) {
    std::vector<std::string> f;
    {
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ':')) f.push_back(part);
    }
    if (f.empty()) throw ParseError("empty move spec");
    auto fail = [&](const std::string& why) -> ParseError { return ParseError("move '" + spec + "': " + why); };
    static const std::regex circ("([UL])([0-9]+)");
    auto parse_circle = [&](const std::string& s, Side& side, int& c) {
        std::smatch m;
        if (!std::regex_match(s, m, circ)) throw fail("expected a circle like U0 or L1, got '" + s + "'");
        side = m[1] == "U" ? Side::Upper : Side::Lower;
        c = std::stoi(m[2]);
    };
    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t n = 0;
            int v = std::stoi(s, &n);
            if (n != s.size()) throw fail("bad integer '" + s + "'");
            return v;
        } catch (const std::logic_error&) {
            throw fail("bad integer '" + s + "'");
        }
    };
    auto parse_dir = [&](const std::string& s) {
        int v = parse_int(s);
        if (v != 1 && v != -1) throw fail("direction must be +1 or -1");
        return v;
    };
    Move m;
    const std::string& k = f[0];
    if (k == "reverse" && f.size() == 2) {
        m.kind = Kind::Reverse;
        parse_circle(f[1], m.side, m.circle);
    } else if (k == "isotopy" && (f.size() == 2 || f.size() == 3)) {
        m.kind = Kind::Isotopy;
        parse_circle(f[1], m.side, m.circle);
        if (f.size() == 3) m.dir = parse_dir(f[2]);
    } else if (k == "spiral" && (f.size() == 2 || f.size() == 3)) {
        m.kind = Kind::Spiral;
        parse_circle(f[1], m.side, m.circle);
        if (f.size() == 3) m.dir = parse_dir(f[2]);
    } else if (k == "slide" && (f.size() == 5 || f.size() == 6)) {
        m.kind = Kind::Slide;
        Side s2;
        parse_circle(f[1], m.side, m.circle);
        parse_circle(f[2], s2, m.over);
        if (s2 != m.side) throw fail("a circle slides over a circle of the same handlebody");
        m.gap = parse_int(f[3]);
        m.band = parse_int(f[4]);
        if (m.band != 1 && m.band != 2) throw fail("band side must be 1 or 2");
        if (f.size() == 6) {
            if (f[5] != "rev") throw fail("trailing field must be 'rev'");
            m.rev = true;
        }
    } else if (k == "stabilize" && f.size() == 1) {
        m.kind = Kind::Stabilize;
    } else if (k == "destabilize" && (f.size() == 1 || f.size() == 3)) {
        m.kind = Kind::Destabilize;
        m.circle = m.over = -1;
        if (f.size() == 3) {
            Side a, b;
            parse_circle(f[1], a, m.circle);
            parse_circle(f[2], b, m.over);
            if (a != Side::Upper || b != Side::Lower) throw fail("destabilize takes an upper then a lower circle");
        }
    } else {
        throw fail("unknown move or wrong number of fields");
    }
    return m;
}

namespace {

[[noreturn]] void not_applicable(const Move& m, const std::string& why) {
    throw Error("MoveNotApplicable", m.to_string() + ": " + why);
}

void check_circle(const Diagram& d, const Move& m, Side side, int c) {
    if (c < 0 || c >= static_cast<int>(d.circles(side).size())) not_applicable(m, "no circle " + circle_ref(side, c));
}

bool even(int x) { return x % 2 == 0; }

// Conjugating a crossing edge by a^k: S^{2k} T^{-k}.
void conj(Diagram& d, int id, int k) {
    auto& x = d.crossings.at(id);
    x.s += 2 * k;
    x.t -= k;
}

int next_id(const Diagram& d) { return d.crossings.empty() ? 0 : d.crossings.rbegin()->first + 1; }

// Base point of upper circle ui moves forward past its first crossing.
void rotate_upper(Diagram& d, int ui, int dir) {
    auto& u = d.upper[ui].crossings;
    const int A2 = d.upper[ui].theta2 - 1;  // 2A
    int p = dir > 0 ? u.front() : u.back();
    auto [li, j] = locate(d, Side::Lower, p);
    auto& l = d.lower[li].crossings;
    auto& th = d.lower[li].theta2;
    bool ev = even(d.crossings.at(p).s);
    if (dir > 0) {
        conj(d, p, A2 / 2);
        d.crossings.at(p).s += A2 % 2;  // only for an even theta parity
        if (ev) {
            for (std::size_t q = j; q < l.size(); ++q) conj(d, l[q], 1);
            th += 2;
        } else {
            for (std::size_t q = j + 1; q < l.size(); ++q) conj(d, l[q], -1);
            th -= 2;
        }
        std::rotate(u.begin(), u.begin() + 1, u.end());
    } else {
        if (ev) {
            for (std::size_t q = j; q < l.size(); ++q) conj(d, l[q], -1);
            th -= 2;
        } else {
            for (std::size_t q = j + 1; q < l.size(); ++q) conj(d, l[q], 1);
            th += 2;
        }
        conj(d, p, -(A2 / 2));
        d.crossings.at(p).s -= A2 % 2;
        std::rotate(u.rbegin(), u.rbegin() + 1, u.rend());
    }
}

void rotate_lower(Diagram& d, int li, int dir) {
    auto& l = d.lower[li].crossings;
    const int B2 = d.lower[li].theta2 + 1;  // 2B
    int p = dir > 0 ? l.front() : l.back();
    auto [ui, k] = locate(d, Side::Upper, p);
    auto& u = d.upper[ui].crossings;
    auto& th = d.upper[ui].theta2;
    bool ev = even(d.crossings.at(p).s);
    if (dir > 0) {
        conj(d, p, B2 / 2);
        d.crossings.at(p).s += B2 % 2;
        if (ev) {
            for (int q = 0; q <= k; ++q) conj(d, u[q], -1);
            th += 2;
        } else {
            for (int q = 0; q < k; ++q) conj(d, u[q], 1);
            th -= 2;
        }
        std::rotate(l.begin(), l.begin() + 1, l.end());
    } else {
        if (ev) {
            for (int q = 0; q <= k; ++q) conj(d, u[q], 1);
            th -= 2;
        } else {
            for (int q = 0; q < k; ++q) conj(d, u[q], -1);
            th += 2;
        }
        conj(d, p, -(B2 / 2));
        d.crossings.at(p).s -= B2 % 2;
        std::rotate(l.rbegin(), l.rbegin() + 1, l.rend());
    }
}

void slide_upper(Diagram& d, int u1, int u2, int g, int band, bool rev) {
    std::vector<int> blk;
    for (int p : std::vector<int>(d.upper[u2].crossings)) {
        const auto x = d.crossings.at(p);
        int n = next_id(d);
        d.crossings[n] = {x.s + (rev ? 1 : 0), x.t, rev ? -x.eps : x.eps};
        auto [li, j] = locate(d, Side::Lower, p);
        int fac = even(x.s) ? band : 3 - band;
        auto& l = d.lower[li].crossings;
        l.insert(l.begin() + (fac == 1 ? j : j + 1), n);
        blk.push_back(n);
    }
    if (rev) std::reverse(blk.begin(), blk.end());
    const int A2 = (d.upper[u2].theta2 - 1) / 2;
    int c = band == 2 ? A2 + 1 : A2;
    if (rev) c = -c;
    auto& u = d.upper[u1].crossings;
    u.insert(u.begin() + g, blk.begin(), blk.end());
    for (int q = 0; q < g; ++q) conj(d, u[q], -c);
    d.upper[u1].theta2 += 2 * c;
}

void slide_lower(Diagram& d, int l1, int l2, int g, int band, bool rev) {
    std::vector<int> blk;
    for (int p : std::vector<int>(d.lower[l2].crossings)) {
        const auto x = d.crossings.at(p);
        int n = next_id(d);
        d.crossings[n] = {x.s - (rev ? 1 : 0), x.t, rev ? -x.eps : x.eps};
        auto [ui, k] = locate(d, Side::Upper, p);
        bool after = (band == 2) == even(x.s);
        auto& u = d.upper[ui].crossings;
        u.insert(u.begin() + (after ? k + 1 : k), n);
        blk.push_back(n);
    }
    if (rev) std::reverse(blk.begin(), blk.end());
    const int B2 = (d.lower[l2].theta2 + 1) / 2;
    int c = band == 2 ? B2 : B2 - 1;
    if (rev) c = -c;
    auto& l = d.lower[l1].crossings;
    l.insert(l.begin() + g, blk.begin(), blk.end());
    for (std::size_t q = g; q < l.size(); ++q) conj(d, l[q], c);
    d.lower[l1].theta2 += 2 * c;
}

Circle standard_circle(Side side, const ConventionRecord& rec, std::vector<int> crossings) {
    // upper circles sit at theta2 = 1, lower at -1 (shifted for an even parity)
    int th = side == Side::Upper ? 1 : -1;
    if (rec.theta_parity == 0) th -= 1;
    return {th, std::move(crossings)};
}

CrossingData positive_crossing(const ConventionRecord& rec, int s_even) {
    return {s_even + rec.s_parity, 0, 1};
}

bool is_standard_handle(const Diagram& d, int ui, int li, const ConventionRecord& rec) {
    const auto& u = d.upper[ui];
    const auto& l = d.lower[li];
    if (u.crossings.size() != 1 || l.crossings.size() != 1 || u.crossings[0] != l.crossings[0]) return false;
    const auto& x = d.crossings.at(u.crossings[0]);
    return u == standard_circle(Side::Upper, rec, u.crossings) && l == standard_circle(Side::Lower, rec, l.crossings) &&
           x == positive_crossing(rec, 0);
}

}  // namespace

Diagram apply_move(const Diagram& d0, const Move& m, const ConventionRecord& rec) {
    Diagram d = d0;
    using K = Move::Kind;
    switch (m.kind) {
        case K::Reverse: {
            check_circle(d, m, m.side, m.circle);
            auto& c = d.circles(m.side)[m.circle];
            int shift = (m.side == Side::Lower ? -1 : 1) * rec.reversal_sign * c.theta2;
            for (int id : c.crossings) {
                auto& x = d.crossings.at(id);
                x.s += shift;
                x.eps = -x.eps;
            }
            std::reverse(c.crossings.begin(), c.crossings.end());
            c.theta2 = -c.theta2;
            break;
        }
        case K::Isotopy: {
            check_circle(d, m, m.side, m.circle);
            if (d.circles(m.side)[m.circle].crossings.empty()) not_applicable(m, "circle has no crossings");
            if (m.side == Side::Upper)
                rotate_upper(d, m.circle, m.dir);
            else
                rotate_lower(d, m.circle, m.dir);
            break;
        }
        case K::Spiral: {
            check_circle(d, m, m.side, m.circle);
            auto& c = d.circles(m.side)[m.circle];
            if (c.crossings.empty()) not_applicable(m, "circle has no crossings");
            for (int id : c.crossings) d.crossings.at(id).s += 2 * rec.spiral_direction * m.dir;
            break;
        }
        case K::Slide: {
            check_circle(d, m, m.side, m.circle);
            check_circle(d, m, m.side, m.over);
            if (m.circle == m.over) not_applicable(m, "a circle cannot slide over itself");
            const auto& cs = d.circles(m.side);
            if (cs[m.over].crossings.empty()) not_applicable(m, "the circle slid over has no crossings");
            if (m.gap < 0 || m.gap > static_cast<int>(cs[m.circle].crossings.size()))
                not_applicable(m, "gap outside 0.." + std::to_string(cs[m.circle].crossings.size()));
            if (m.side == Side::Upper)
                slide_upper(d, m.circle, m.over, m.gap, m.band, m.rev);
            else
                slide_lower(d, m.circle, m.over, m.gap, m.band, m.rev);
            break;
        }
        case K::Stabilize: {
            int n = next_id(d);
            d.crossings[n] = positive_crossing(rec, 0);
            d.upper.push_back(standard_circle(Side::Upper, rec, {n}));
            d.lower.push_back(standard_circle(Side::Lower, rec, {n}));
            ++d.genus;
            break;
        }
        case K::Destabilize: {
            int ui = m.circle, li = m.over;
            if (ui < 0) {
                // last standard handle pair
                for (int u = d.genus - 1; u >= 0 && ui < 0; --u)
                    for (int l = d.genus - 1; l >= 0; --l)
                        if (is_standard_handle(d, u, l, rec)) {
                            ui = u;
                            li = l;
                            break;
                        }
                if (ui < 0) not_applicable(m, "no standard once-crossing handle pair");
            } else {
                check_circle(d, m, Side::Upper, ui);
                check_circle(d, m, Side::Lower, li);
                if (!is_standard_handle(d, ui, li, rec))
                    not_applicable(m, "circles are not a standard once-crossing handle pair");
            }
            d.crossings.erase(d.upper[ui].crossings[0]);
            d.upper.erase(d.upper.begin() + ui);
            d.lower.erase(d.lower.begin() + li);
            --d.genus;
            break;
        }
    }
    return d;
}

std::vector<Move> applicable_moves(const Diagram& d) {
    std::vector<Move> out;
    using K = Move::Kind;
    for (Side side : {Side::Upper, Side::Lower}) {
        const auto& cs = d.circles(side);
        for (int c = 0; c < static_cast<int>(cs.size()); ++c) {
            Move m;
            m.side = side;
            m.circle = c;
            m.kind = K::Reverse;
            out.push_back(m);
            if (cs[c].crossings.empty()) continue;
            for (int dir : {1, -1}) {
                m.dir = dir;
                m.kind = K::Isotopy;
                out.push_back(m);
                m.kind = K::Spiral;
                out.push_back(m);
            }
            m.dir = 1;
        }
        for (int c = 0; c < static_cast<int>(cs.size()); ++c)
            for (int o = 0; o < static_cast<int>(cs.size()); ++o) {
                if (o == c || cs[o].crossings.empty()) continue;
                for (int g = 0; g <= static_cast<int>(cs[c].crossings.size()); ++g)
                    for (int band : {1, 2})
                        for (bool rev : {false, true}) {
                            Move m;
                            m.kind = K::Slide;
                            m.side = side;
                            m.circle = c;
                            m.over = o;
                            m.gap = g;
                            m.band = band;
                            m.rev = rev;
                            out.push_back(m);
                        }
            }
    }
    out.push_back(Move{});
    return out;
}

// ---- builtins ----------------------------------------------------------

std::vector<std::string> builtin_names() {
    std::vector<std::string> names{"S3_genus0", "S3_genus1", "S2xS1", "RP3_left", "RP3_right"};
    for (int p = 2; p <= 7; ++p)
        for (int q = 1; q < p; ++q)
            if (std::gcd(p, q) == 1) names.push_back("L(" + std::to_string(p) + "," + std::to_string(q) + ")");
    return names;
}

namespace {

Diagram genus_one(const std::string& name, const ConventionRecord& rec, int th_u, int th_l,
                  const std::vector<int>& upper_seq, int s_base, int eps) {
    Diagram d;
    d.name = name;
    d.genus = 1;
    int shift = rec.theta_parity == 0 ? -1 : 0;
    std::vector<int> lower_seq(upper_seq.size());
    std::iota(lower_seq.begin(), lower_seq.end(), 0);
    d.upper.push_back({th_u + shift, upper_seq});
    d.lower.push_back({th_l + shift, lower_seq});
    for (int id : lower_seq) d.crossings[id] = {s_base + rec.s_parity, 0, eps};
    return d;
}

}  // namespace

Diagram builtin_diagram(const std::string& name, const ConventionRecord& rec) {
    if (auto hash = name.find('#'); hash != std::string::npos) {
        Diagram d = connected_sum(builtin_diagram(name.substr(0, hash), rec),
                                  builtin_diagram(name.substr(hash + 1), rec));
        d.name = name;
        return d;
    }
    if (name == "S3_genus0") {
        Diagram d;
        d.name = name;
        return d;
    }
    if (name == "S3_genus1") return genus_one(name, rec, 1, -1, {0}, 0, 1);
    if (name == "S2xS1") return genus_one(name, rec, 1, -1, {}, 0, 1);
    // the two combings of the genus-one diagram with two positive crossings
    if (name == "RP3_left") return genus_one(name, rec, 1, 1, {0, 1}, 2, 1);
    if (name == "RP3_right") return genus_one(name, rec, 1, 1, {0, 1}, 1, -1);
    static const std::regex lens(R"(L\(([0-9]+),([0-9]+)\))");
    std::smatch m;
    if (std::regex_match(name, m, lens)) {
        int p = std::stoi(m[1]), q = std::stoi(m[2]);
        if (p >= 1 && p <= 7 && q >= 0 && std::gcd(p, q) == 1) {
            std::vector<int> seq;
            for (int i = 0; i < p; ++i) seq.push_back((i * q) % p);
            return genus_one(name, rec, 1, -1, seq, 0, 1);
        }
    }
    throw Error("UnknownName", "no builtin diagram '" + name + "'");
}

Diagram connected_sum(const Diagram& a, const Diagram& b) {
    Diagram d = a;
    d.name = (a.name.empty() ? "?" : a.name) + "#" + (b.name.empty() ? "?" : b.name);
    d.genus = a.genus + b.genus;
    d.framed = a.framed && b.framed;
    int off = next_id(a);
    auto shifted = [off](Circle c) {
        for (auto& id : c.crossings) id += off;
        return c;
    };
    for (auto& c : b.upper) d.upper.push_back(shifted(c));
    for (auto& c : b.lower) d.lower.push_back(shifted(c));
    for (auto& [id, x] : b.crossings) d.crossings[id + off] = x;
    return d;
}

}  // namespace hopfinv
