#include "hopfinv/calibration.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "hopfinv/algebrazoo.hpp"
#include "hopfinv/invariant.hpp"

namespace hopfinv {

namespace {

long count_roots(const GroupTable& G, int p) {
    long n = 0;
    for (int g = 0; g < G.n; ++g)
        if (G.power(g, p) == G.identity) ++n;
    return n;
}

}  // namespace

CalibrationSuite CalibrationSuite::standard() {
    CalibrationSuite s;
    s.zoo = {"group:Z2", "group:S3", "sweedler", "exterior:1", "uq_sl2:3"};
    for (auto& spec : s.zoo) {
        HopfAlgebra H = zoo_algebra(spec);
        int N = H.order();
        s.targets.push_back({spec, "S3_genus1", Scalar::one(N)});
        s.targets.push_back({spec, "RP3_left", trace_S_power(H, 1)});
        s.targets.push_back({spec, "RP3_right", trace_S_power(H, -1)});
    }
    for (std::string g : {"Z2", "S3"}) {
        GroupTable G = group_by_name(g);
        s.targets.push_back({"group:" + g, "S2xS1", Scalar(1, long(G.n))});
        for (int p = 2; p <= 5; ++p)
            s.targets.push_back({"group:" + g, "L(" + std::to_string(p) + ",1)", Scalar(1, count_roots(G, p))});
    }
    // |H_1| at genus 1, 2 and 3 pins the order of the odd integral nodes
    s.targets.push_back({"exterior:1", "L(5,2)", Scalar(1, 5L)});
    s.targets.push_back({"exterior:1", "L(5,2)#L(3,1)", Scalar(1, 15L)});
    s.targets.push_back({"exterior:1", "RP3_left#L(3,1)#L(5,2)", Scalar(1, 30L)});
    s.targets.push_back({"exterior:1", "L(3,1)#RP3_right#L(4,1)", Scalar(1, 24L)});

    for (std::string alg : {"uq_sl2:3", "sweedler"}) {
        for (std::string d : {"RP3_left", "RP3_right"}) {
            s.probes.push_back({alg, d, {"spiral:L0:+1"}});
            s.probes.push_back({alg, d, {"spiral:U0:-1"}});
            s.probes.push_back({alg, d, {"reverse:L0"}});
            s.probes.push_back({alg, d, {"reverse:U0"}});
            s.probes.push_back({alg, d, {"isotopy:L0", "isotopy:U0:-1"}});
        }
    }
    s.probes.push_back({"sweedler", "RP3_left", {"stabilize", "slide:U1:U0:0:1", "slide:L0:L1:1:2:rev"}});
    return s;
}

std::vector<ConventionRecord> CalibrationReport::survivors() const {
    std::vector<ConventionRecord> out;
    for (auto& o : outcomes)
        if (o.failure.empty()) out.push_back(o.record);
    return out;
}

std::string CalibrationReport::summary() const {
    std::map<std::string, int> why;
    for (auto& o : outcomes) why[o.failure.empty() ? "survived" : o.failure.substr(0, o.failure.find(':'))]++;
    std::ostringstream os;
    os << outcomes.size() << " candidates\n";
    for (auto& [k, n] : why) os << "  " << n << "  " << k << "\n";
    return os.str();
}

std::vector<HopfConventions> candidate_hopf_conventions() {
    std::vector<HopfConventions> out;
    for (bool inv : {false, true})
        for (char ms : {'L', 'R'})
            for (int mg : {1, -1})
                for (char es : {'L', 'R'})
                    for (int eg : {1, -1}) out.push_back({inv, ms, mg, es, eg});
    return out;
}

std::vector<ConventionRecord> candidate_records() {
    std::vector<ConventionRecord> out;
    for (auto& h : candidate_hopf_conventions())
        for (int tp : {0, 1})
            for (int sp : {0, 1})
                for (int sd : {1, -1})
                    for (int rs : {1, -1})
                        for (auto& l : ConventionRecord::layouts()) {
                            ConventionRecord r;
                            r.hopf = h;
                            r.theta_parity = tp;
                            r.s_parity = sp;
                            r.spiral_direction = sd;
                            r.reversal_sign = rs;
                            r.sign_normalization = l;
                            out.push_back(r);
                        }
    return out;
}

CalibrationReport run_calibration(const CalibrationSuite& suite) {
    std::map<std::string, HopfAlgebra> algebras;
    auto alg = [&](const std::string& spec) -> const HopfAlgebra& {
        auto it = algebras.find(spec);
        if (it == algebras.end()) it = algebras.emplace(spec, zoo_algebra(spec)).first;
        return it->second;
    };

    // the hopf part is cheap to reject on its own
    std::map<std::string, std::string> hopf_failure;
    for (auto& h : candidate_hopf_conventions()) {
        std::string why;
        for (auto& spec : suite.zoo)
            if (!conventions_consistent(alg(spec), h)) {
                why = "integral endpoints: " + spec;
                break;
            }
        hopf_failure[h.to_string()] = why;
    }

    CalibrationReport rep;
    for (auto& rec : candidate_records()) {
        CandidateOutcome o{rec, hopf_failure.at(rec.hopf.to_string())};
        if (o.failure.empty()) {
            for (auto& t : suite.targets) {
                try {
                    Scalar v = evaluate(builtin_diagram(t.diagram, rec), alg(t.algebra), rec).value;
                    if (v != t.expected)
                        o.failure = "target: " + t.algebra + " on " + t.diagram + " gave " + v.to_string();
                } catch (const Error& e) {
                    o.failure = "target: " + t.algebra + " on " + t.diagram + " raised " + e.kind();
                }
                if (!o.failure.empty()) break;
            }
        }
        if (o.failure.empty()) {
            for (auto& p : suite.probes) {
                try {
                    std::vector<Move> script;
                    for (auto& m : p.script) script.push_back(Move::parse(m));
                    auto cov = covariance_suite(alg(p.algebra), builtin_diagram(p.diagram, rec), script, rec);
                    if (!cov.ok()) o.failure = "covariance: " + p.algebra + " on " + p.diagram;
                } catch (const Error& e) {
                    o.failure = "covariance: " + p.algebra + " on " + p.diagram + " raised " + e.kind();
                }
                if (!o.failure.empty()) break;
            }
        }
        rep.outcomes.push_back(std::move(o));
    }
    return rep;
}

ConventionRecord calibrate_conventions(const CalibrationSuite& suite) {
    auto rep = run_calibration(suite);
    auto s = rep.survivors();
    if (s.empty()) throw Error("CalibrationImpossible", "no convention record passes\n" + rep.summary());
    if (s.size() > 1) {
        std::string list;
        for (auto& r : s) list += "\n" + r.to_json();
        throw Error("CalibrationAmbiguous", std::to_string(s.size()) + " records pass:" + list);
    }
    return s.front();
}

RecordCheck verify_record_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {false, "missing convention record " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    ConventionRecord rec;
    try {
        rec = calibrate_conventions();
    } catch (const Error& e) {
        return {false, e.what()};
    }
    if (ss.str() != rec.to_json()) return {false, path + " differs from the calibrated record:\n" + rec.to_json()};
    return {true, "convention record matches calibration"};
}

}  // namespace hopfinv
